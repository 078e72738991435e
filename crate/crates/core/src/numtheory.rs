//! Elementary number theory for the two-prime construction: primality,
//! factorization, multiplicative orders, primitive roots, discrete logs and
//! the Chinese remainder theorem, plus the validated parameter set
//! [`TwoPrimeParams`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};

/// Order of the Whiteman cyclotomy supported by this crate.
pub const ORDER: u64 = 6;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // Double-and-add; only reached for moduli above 2^64.
    let (mut a, mut b, mut acc) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = if acc >= m - a { acc - (m - a) } else { acc + a };
        }
        a = if a >= m - a { a - (m - a) } else { a + a };
        b >>= 1;
    }
    acc
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin over the first 20 primes. Deterministic below 3.3 * 10^24,
/// which covers every `u64`.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n == b {
            return true;
        }
        if n.is_multiple_of(b) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn pollard_brent(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mul_mod_u128(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u128, 1u64, 1u128, 1u128);
        let (mut x, mut ys) = (y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod_u128(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization, ascending primes with multiplicities.
pub fn factorize_u128(n: u128) -> Vec<(u128, u32)> {
    let mut primes = Vec::new();
    let mut rest = n;
    for p in 2u128..1000 {
        if rest == 1 {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    factorize_u128(n as u128)
        .into_iter()
        .map(|(p, e)| (p as u64, e))
        .collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Least `t >= 1` with `a^t = 1 (mod m)`.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    let mut order = euler_phi(m);
    for (r, _) in factorize(order) {
        while order.is_multiple_of(r) && pow_mod(a, order / r, m) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

pub fn is_primitive_root(g: u64, modulus: u64) -> bool {
    gcd(g % modulus, modulus) == 1
        && multiplicative_order(g, modulus)
            .map(|o| o == euler_phi(modulus))
            .unwrap_or(false)
}

/// Smallest `g >= 2` that is a primitive root modulo both primes.
pub fn find_common_primitive_root(n1: u64, n2: u64) -> Result<u64> {
    for p in [n1, n2] {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    if n1 == n2 {
        return Err(Error::EqualPrimes(n1));
    }
    (2..n1 * n2)
        .find(|&g| is_primitive_root(g, n1) && is_primitive_root(g, n2))
        .ok_or_else(|| {
            Error::verification(
                "primitive root",
                format!("no common primitive root of {n1} and {n2}"),
            )
        })
}

/// Solves `x = r1 (mod m1)`, `x = r2 (mod m2)` for coprime moduli; result in `[0, m1*m2)`.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<u64> {
    let m = m1 * m2;
    let inv = inv_mod(m1 % m2, m2)?;
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let diff = (r2 % m2 + m2 - r1 % m2) % m2;
    let t = mul_mod(diff, inv, m2);
    Ok((r1 % m1 + m1 * t) % m)
}

/// The `u` with `u = g (mod n1)` and `u = 1 (mod n2)`, normalized to `[1, n)`.
pub fn compute_u(n1: u64, n2: u64, g: u64) -> Result<u64> {
    let u = crt(g % n1, n1, 1, n2)?;
    Ok(if u == 0 { n1 * n2 } else { u })
}

/// Least `t >= 0` with `base^t = target (mod modulus)`, baby-step giant-step.
pub fn discrete_log(base: u64, target: u64, modulus: u64) -> Result<u64> {
    if !is_prime(modulus) {
        return Err(Error::NotPrime(modulus));
    }
    if !is_primitive_root(base, modulus) {
        return Err(Error::NotGenerator { base, modulus });
    }
    let target = target % modulus;
    if target == 0 {
        return Err(Error::NotInvertible {
            a: target,
            m: modulus,
        });
    }
    let group = modulus - 1;
    let step = (group as f64).sqrt().ceil() as u64 + 1;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut cur = 1u64;
    for j in 0..step {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, base, modulus);
    }
    let giant = pow_mod(inv_mod(base, modulus)?, step, modulus);
    let mut gamma = target;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return Ok((i * step + j) % group);
        }
        gamma = mul_mod(gamma, giant, modulus);
    }
    Err(Error::NotGenerator { base, modulus })
}

/// A validated instance (p, n1, n2) of the order-6 two-prime construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPrimeParams {
    /// Characteristic of the code alphabet; the code is over GF(p).
    pub p: u64,
    pub n1: u64,
    pub n2: u64,
    pub n: u64,
    /// gcd(n1 - 1, n2 - 1), always 6.
    pub d: u64,
    /// (n1 - 1)(n2 - 1) / d, the size of each class W_i.
    pub e: u64,
    /// Smallest common primitive root of n1 and n2.
    pub g: u64,
    pub u: u64,
}

impl TwoPrimeParams {
    pub fn new(p: u64, n1: u64, n2: u64) -> Result<Self> {
        Self::with_caps(p, n1, n2, &Caps::default())
    }

    pub fn with_caps(p: u64, n1: u64, n2: u64, caps: &Caps) -> Result<Self> {
        for v in [n1, n2] {
            if !is_prime(v) {
                return Err(Error::NotPrime(v));
            }
            if v == 2 {
                return Err(Error::EvenPrime(v));
            }
        }
        if n1 == n2 {
            return Err(Error::EqualPrimes(n1));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::CapExceeded {
                what: "p",
                value: p as u128,
                cap: 1 << 31,
            });
        }
        let n = n1.checked_mul(n2).ok_or(Error::CapExceeded {
            what: "n",
            value: n1 as u128 * n2 as u128,
            cap: caps.max_n as u128,
        })?;
        if n > caps.max_n {
            return Err(Error::CapExceeded {
                what: "n",
                value: n as u128,
                cap: caps.max_n as u128,
            });
        }
        let d = gcd(n1 - 1, n2 - 1);
        if d != ORDER {
            return Err(Error::UnsupportedOrder(d));
        }
        let common = gcd(n, p);
        if common != 1 {
            return Err(Error::NotCoprime { n, p, gcd: common });
        }
        let e = (n1 - 1) * (n2 - 1) / d;
        let g = find_common_primitive_root(n1, n2)?;
        let u = compute_u(n1, n2, g)?;
        let params = TwoPrimeParams {
            p,
            n1,
            n2,
            n,
            d,
            e,
            g,
            u,
        };
        let ord = multiplicative_order(g, n)?;
        if ord != e {
            return Err(Error::verification(
                "ord_n(g) = e",
                format!("ord_{n}({g}) = {ord}, e = {e}"),
            ));
        }
        Ok(params)
    }

    /// (n1 - 1)(n2 - 1) / 36; its parity decides which cyclotomic table applies.
    pub fn eta(&self) -> u64 {
        (self.n1 - 1) * (self.n2 - 1) / 36
    }

    /// Same instance with a different code characteristic.
    pub fn with_p(&self, p: u64) -> Result<Self> {
        Self::new(p, self.n1, self.n2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_order(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut t = 1;
        while x != 1 {
            x = x * a % m;
            t += 1;
        }
        t
    }

    fn brute_common_root(n1: u64, n2: u64) -> u64 {
        (2..)
            .find(|&g| {
                g % n1 != 0
                    && g % n2 != 0
                    && brute_order(g, n1) == n1 - 1
                    && brute_order(g, n2) == n2 - 1
            })
            .unwrap()
    }

    #[test]
    fn common_primitive_roots() {
        assert_eq!(find_common_primitive_root(13, 19).unwrap(), 2);
        assert_eq!(find_common_primitive_root(3, 5).unwrap(), 2);
        // ord_7(2) = 3, so the scan moves past 2.
        assert_eq!(brute_order(2, 7), 3);
        assert_eq!(
            find_common_primitive_root(7, 13).unwrap(),
            brute_common_root(7, 13)
        );
        assert_eq!(find_common_primitive_root(7, 13).unwrap(), 19);
        assert_eq!(find_common_primitive_root(7, 19).unwrap(), 3);
    }

    #[test]
    fn u_by_crt() {
        assert_eq!(compute_u(13, 19, 2).unwrap(), 210);
        assert_eq!(compute_u(3, 5, 2).unwrap(), 11);
        let g = find_common_primitive_root(7, 19).unwrap();
        let u = compute_u(7, 19, g).unwrap();
        assert_eq!(u % 7, g % 7);
        assert_eq!(u % 19, 1);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 247).unwrap(), 36);
        assert_eq!(multiplicative_order(1, 91).unwrap(), 1);
        assert_eq!(multiplicative_order(3, 133).unwrap(), brute_order(3, 133));
        assert_eq!(
            multiplicative_order(3, 133).unwrap(),
            lcm(brute_order(3, 7), brute_order(3, 19))
        );
        assert!(matches!(
            multiplicative_order(7, 91),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn discrete_logs() {
        assert_eq!(discrete_log(2, 1, 13).unwrap(), 0);
        assert_eq!(discrete_log(2, 2, 13).unwrap(), 1);
        for (g, m) in [(3u64, 7u64), (2, 13), (2, 19), (3, 31)] {
            let brute = (0..m).find(|&t| pow_mod(g, t, m) == 2).unwrap();
            assert_eq!(discrete_log(g, 2, m).unwrap(), brute);
        }
        assert!(matches!(
            discrete_log(2, 3, 7),
            Err(Error::NotGenerator { .. })
        ));
    }

    #[test]
    fn primality_and_factoring() {
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        let sieve: Vec<u64> = (0..200u64)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, sieve);
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert_eq!(
            factorize((1 << 36) - 1),
            vec![
                (3, 3),
                (5, 1),
                (7, 1),
                (13, 1),
                (19, 1),
                (37, 1),
                (73, 1),
                (109, 1)
            ]
        );
        let big = 5u128.pow(36) - 1;
        let f = factorize_u128(big);
        assert_eq!(f.iter().fold(1u128, |acc, &(p, e)| acc * p.pow(e)), big);
        assert!(f.iter().all(|&(p, _)| is_prime_u128(p)));
    }

    #[test]
    fn params_validation() {
        let prm = TwoPrimeParams::new(2, 13, 19).unwrap();
        assert_eq!((prm.n, prm.d, prm.e, prm.g, prm.u), (247, 6, 36, 2, 210));
        assert_eq!(
            TwoPrimeParams::new(2, 5, 7),
            Err(Error::UnsupportedOrder(2))
        );
        assert_eq!(TwoPrimeParams::new(2, 19, 25), Err(Error::NotPrime(25)));
        assert_eq!(
            TwoPrimeParams::new(7, 7, 13),
            Err(Error::NotCoprime {
                n: 91,
                p: 7,
                gcd: 7
            })
        );
        assert_eq!(TwoPrimeParams::new(2, 13, 13), Err(Error::EqualPrimes(13)));
        assert!(matches!(
            TwoPrimeParams::new(4, 7, 13),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn unit_group_covered_by_g_and_u() {
        for (n1, n2) in [(7u64, 13u64), (7, 19), (13, 19), (31, 7)] {
            let prm = TwoPrimeParams::new(2, n1, n2)
                .unwrap_or_else(|_| TwoPrimeParams::new(5, n1, n2).unwrap());
            let mut seen = std::collections::HashSet::new();
            for s in 0..prm.e {
                for i in 0..prm.d {
                    seen.insert(mul_mod(
                        pow_mod(prm.g, s, prm.n),
                        pow_mod(prm.u, i, prm.n),
                        prm.n,
                    ));
                }
            }
            assert_eq!(seen.len() as u64, euler_phi(prm.n));
            assert_eq!(brute_order(prm.g, prm.n), prm.e);
            // Re-deriving u from (g mod n1, 1 mod n2) is stable.
            assert_eq!(compute_u(n1, n2, prm.u % n1).unwrap(), prm.u);
        }
    }

    proptest! {
        #[test]
        fn crt_solves_both(r1 in 0u64..13, r2 in 0u64..19) {
            let x = crt(r1, 13, r2, 19).unwrap();
            prop_assert!(x < 247);
            prop_assert_eq!(x % 13, r1);
            prop_assert_eq!(x % 19, r2);
        }

        #[test]
        fn order_divides_phi(a in 1u64..1000, m in 2u64..1000) {
            prop_assume!(gcd(a, m) == 1);
            let o = multiplicative_order(a, m).unwrap();
            prop_assert_eq!(pow_mod(a, o, m), 1);
            prop_assert_eq!(euler_phi(m) % o, 0);
            prop_assert_eq!(o, brute_order(a, m));
        }
    }
}
