use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use proptest::prelude::*;

use cyclocode::codegen::{construct, deltas, ConstructOptions, Construction, Part};
use cyclocode::distance::{
    exact_distance_exhaustive, multiplicative_shift_check, theorem_lower_bound, upper_bound_search,
    CyclicCode, SearchConfig,
};
use cyclocode::numtheory::{gcd, pow_mod};
use cyclocode::{Caps, Poly, TwoPrimeParams};

/// Wide enough that the classification layer runs on every instance below.
fn caps() -> Caps {
    Caps {
        field_bits: 512,
        max_m: 128,
        ..Caps::default()
    }
}

/// Valid instances with n below 600 and q a small prime.
fn instances() -> &'static [TwoPrimeParams] {
    static CELL: OnceLock<Vec<TwoPrimeParams>> = OnceLock::new();
    CELL.get_or_init(|| {
        let primes = [7u64, 13, 19, 31, 37, 43];
        let mut out = Vec::new();
        for &n1 in &primes {
            for &n2 in &primes {
                for p in [2u64, 3, 5, 7, 11, 13] {
                    if n1 * n2 < 600 {
                        if let Ok(pr) = TwoPrimeParams::with_caps(p, n1, n2, &caps()) {
                            out.push(pr);
                        }
                    }
                }
            }
        }
        out
    })
}

type Cache = Mutex<HashMap<(u64, u64, u64), Arc<Construction>>>;

fn built(pr: &TwoPrimeParams) -> Arc<Construction> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let key = (pr.p, pr.n1, pr.n2);
    if let Some(c) = CACHE
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .get(&key)
    {
        return c.clone();
    }
    let c = Arc::new(construct(pr, &caps(), ConstructOptions::default()).unwrap());
    CACHE.get().unwrap().lock().unwrap().insert(key, c.clone());
    c
}

fn ternary_133() -> Arc<Construction> {
    built(&TwoPrimeParams::new(3, 7, 19).unwrap())
}

fn instance() -> impl Strategy<Value = TwoPrimeParams> {
    prop::sample::select(instances().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn classification_matches_gcd_path(pr in instance()) {
        let c = built(&pr);
        let r = &c.report;
        prop_assert!(r.classification_layer.ran);
        let g = &r.generator;
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&Poly::x_pow_minus_one(pr.p, pr.n as usize)).unwrap());
        prop_assert_eq!(r.k + g.degree().unwrap() as u64, pr.n);
        let (d1, d2, d) = deltas(&pr);
        prop_assert_eq!(r.case.part, Part::from_deltas(d1, d2, d));
    }

    #[test]
    fn unit_substitution_preserves_weight(pr in instance(), r in 1u64..10_000, seed in any::<u64>()) {
        let c = built(&pr);
        prop_assume!(c.report.k > 0 && gcd(r, pr.n) == 1);
        let code = CyclicCode::from_report(&c.report).unwrap();
        let mut rng = cyclocode::rng::Xoshiro256StarStar::seed_from_u64(seed);
        let msg: Vec<u64> = (0..code.k).map(|_| rng.below(pr.p)).collect();
        let word = code.encode(&msg).unwrap();
        let image = word.substitute_power(r, pr.n as usize);
        prop_assert_eq!(image.weight(), word.weight());
        // r in W_0 maps the code onto itself.
        if c.classes.w_index(r % pr.n) == Some(0) {
            prop_assert!(image.rem(&code.generator).unwrap().is_zero());
        }
    }

    #[test]
    fn search_is_deterministic(pr in instance(), seed in any::<u64>()) {
        let c = built(&pr);
        prop_assume!(c.report.k > 0);
        let code = CyclicCode::from_report(&c.report).unwrap();
        let cfg = SearchConfig { seed, iterations: 20, width: 2 };
        let a = upper_bound_search(&code, &cfg).unwrap();
        let b = upper_bound_search(&code, &cfg).unwrap();
        prop_assert_eq!(&a, &b);
        let longer = upper_bound_search(&code, &SearchConfig { iterations: 40, ..cfg }).unwrap();
        prop_assert!(longer.weight <= a.weight);
        prop_assert!(a.weight >= theorem_lower_bound(&c.report.case, &pr).value);
    }

    #[test]
    fn exhaustive_respects_theorem_bound(pr in instance()) {
        let c = built(&pr);
        let code = CyclicCode::from_report(&c.report).unwrap();
        prop_assume!(code.k > 0);
        if let Ok(ex) = exact_distance_exhaustive(&code, 1 << 20) {
            prop_assert!(ex.distance >= theorem_lower_bound(&c.report.case, &pr).value);
            prop_assert_eq!(ex.codeword.iter().filter(|&&x| x != 0).count() as u64, ex.distance);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn multiplicative_shift_ternary_133(s in 0u64..18, class in 0u64..6, seed in any::<u64>()) {
        let cons = ternary_133();
        let pr = cons.report.params;
        let r = pow_mod(pr.g, s, pr.n) * pow_mod(pr.u, class, pr.n) % pr.n;
        let rep = multiplicative_shift_check(&cons, r, 100, seed).unwrap();
        prop_assert_eq!(rep.r_class as u64, class);
        prop_assert!(rep.holds(), "{:?}", rep);
    }
}
