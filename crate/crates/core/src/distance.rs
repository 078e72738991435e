//! Minimum-distance bounds: theorem lower bounds, exhaustive distance for small
//! codes and a seeded information-set search for upper bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codegen::{
    generator_from_structure, Construction, CyclicCodeReport, GeneratorCase, Part,
};
use crate::error::{Error, Result};
use crate::gfpoly::Poly;
use crate::numtheory::{gcd, inv_mod, TwoPrimeParams};
use crate::rng::{derive_seed, Xoshiro256StarStar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerMethod {
    SqrtBound,
    QuadraticBound,
    ExactTheorem,
    Exhaustive,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperMethod {
    Exhaustive,
    ExactTheorem,
    Search { seed: u64, iterations: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBounds {
    pub lower: u64,
    pub lower_method: LowerMethod,
    pub upper: Option<u64>,
    pub upper_method: Option<UpperMethod>,
    /// Set for the zero code, which has no minimum distance.
    pub no_distance: bool,
}

/// A theorem bound with the data it was derived from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBound {
    pub value: u64,
    pub method: LowerMethod,
    /// B in d >= ceil(sqrt(B)), or the exact distance.
    pub base: Option<u64>,
    pub theorem: Option<String>,
}

impl DistanceBounds {
    pub fn from_theorem(bound: &TheoremBound, k: u64) -> DistanceBounds {
        if k == 0 {
            return DistanceBounds {
                lower: 1,
                lower_method: LowerMethod::None,
                upper: None,
                upper_method: None,
                no_distance: true,
            };
        }
        let exact = bound.method == LowerMethod::ExactTheorem;
        DistanceBounds {
            lower: bound.value,
            lower_method: bound.method,
            upper: exact.then_some(bound.value),
            upper_method: exact.then_some(UpperMethod::ExactTheorem),
            no_distance: false,
        }
    }

    /// Tightens the upper bound, keeping the smaller value.
    pub fn with_upper(mut self, value: u64, method: UpperMethod) -> DistanceBounds {
        if self.upper.is_none_or(|u| value < u) {
            self.upper = Some(value);
            self.upper_method = Some(method);
        }
        self
    }

    /// Records an exact distance.
    pub fn with_exact(self, value: u64) -> DistanceBounds {
        DistanceBounds {
            lower: value.max(self.lower),
            lower_method: LowerMethod::Exhaustive,
            upper: Some(value),
            upper_method: Some(UpperMethod::Exhaustive),
            no_distance: false,
        }
    }
}

/// Admissible omega pairs for the two-factor bounds.
pub const OMEGA_PAIRS: [(u8, u8); 12] = [
    (0, 1),
    (0, 2),
    (1, 2),
    (1, 3),
    (2, 3),
    (2, 4),
    (3, 4),
    (3, 5),
    (4, 0),
    (4, 5),
    (5, 0),
    (5, 1),
];

/// Admissible omega triples for the three-factor bounds.
pub const OMEGA_TRIPLES: [(u8, u8, u8); 8] = [
    (0, 4, 2),
    (0, 4, 5),
    (1, 5, 0),
    (2, 0, 1),
    (3, 1, 2),
    (4, 2, 3),
    (5, 3, 1),
    (5, 3, 4),
];

fn sorted(mut v: Vec<u8>) -> Vec<u8> {
    v.sort_unstable();
    v
}

/// Whether a removed omega set is covered by one of the bound theorems.
pub fn omega_set_admissible(omegas: &[u8]) -> bool {
    let s = sorted(omegas.to_vec());
    match s.len() {
        1 => true,
        2 => OMEGA_PAIRS.iter().any(|&(a, b)| sorted(vec![a, b]) == s),
        3 => OMEGA_TRIPLES
            .iter()
            .any(|&(a, b, c)| sorted(vec![a, b, c]) == s),
        _ => false,
    }
}

/// Smallest integer d with d * d >= b.
pub fn ceil_sqrt(b: u64) -> u64 {
    let mut d = (b as f64).sqrt() as u64;
    while d * d < b {
        d += 1;
    }
    while d > 0 && (d - 1) * (d - 1) >= b {
        d -= 1;
    }
    d
}

/// Smallest integer d with d^2 - d + 1 >= b.
pub fn quadratic_bound(b: u64) -> u64 {
    let mut d = 1;
    while d * d - d + 1 < b {
        d += 1;
    }
    d
}

fn none_bound() -> TheoremBound {
    TheoremBound {
        value: 1,
        method: LowerMethod::None,
        base: None,
        theorem: None,
    }
}

/// Lower bound from the generator's factor structure.
pub fn theorem_lower_bound(case: &GeneratorCase, params: &TwoPrimeParams) -> TheoremBound {
    let (n1, n2) = (params.n1, params.n2);
    let base = match case.part {
        Part::III => n2,
        Part::IV => n1,
        Part::V => n1.min(n2),
        Part::I | Part::II => return none_bound(),
    };
    let family = match case.part {
        Part::V => "lcm(x^n1-1,x^n2-1)",
        Part::III => "x^n1-1",
        _ => "x^n2-1",
    };
    if case.omega_count == 0 {
        return TheoremBound {
            value: base,
            method: LowerMethod::ExactTheorem,
            base: Some(base),
            theorem: Some(format!("exact distance, {family} removed")),
        };
    }
    if case.theorem != 2 {
        return none_bound();
    }
    let admissible = match &case.omegas {
        Some(w) => omega_set_admissible(w),
        None => case.omega_count == 1,
    };
    if !admissible || case.omega_count > 3 {
        return none_bound();
    }
    let theorem = Some(format!(
        "{} omega factor(s) with {family} removed",
        case.omega_count
    ));
    if params.eta().is_multiple_of(2) {
        TheoremBound {
            value: quadratic_bound(base),
            method: LowerMethod::QuadraticBound,
            base: Some(base),
            theorem,
        }
    } else {
        TheoremBound {
            value: ceil_sqrt(base),
            method: LowerMethod::SqrtBound,
            base: Some(base),
            theorem,
        }
    }
}

/// A cyclic code given by its generator polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    pub p: u64,
    pub n: usize,
    pub k: usize,
    pub generator: Poly,
}

impl CyclicCode {
    pub fn new(generator: Poly, n: usize) -> Result<CyclicCode> {
        let p = generator.p();
        if !generator.divides(&Poly::x_pow_minus_one(p, n))? {
            return Err(Error::InvalidArgument(
                "generator does not divide x^n - 1".into(),
            ));
        }
        let g = generator.monic();
        let k = n - g.degree().unwrap_or(0);
        Ok(CyclicCode {
            p,
            n,
            k,
            generator: g,
        })
    }

    pub fn from_report(report: &CyclicCodeReport) -> Result<CyclicCode> {
        CyclicCode::new(report.generator.clone(), report.n as usize)
    }

    /// Rows x^i g(x), i = 0..k.
    pub fn generator_rows(&self) -> Vec<Vec<u64>> {
        let g = self.generator.coeffs();
        (0..self.k)
            .map(|i| {
                let mut row = vec![0u64; self.n];
                row[i..i + g.len()].copy_from_slice(g);
                row
            })
            .collect()
    }

    /// Codeword m(x) g(x) for a message of length k.
    pub fn encode(&self, message: &[u64]) -> Result<Poly> {
        Poly::new(self.p, message.to_vec()).mul(&self.generator)
    }
}

/// Row arithmetic over GF(p) for a fixed length.
trait Rows: Sync {
    type Row: Clone + Send + Sync;
    fn row_from(&self, v: &[u64]) -> Self::Row;
    fn to_coeffs(&self, r: &Self::Row) -> Vec<u64>;
    fn get(&self, r: &Self::Row, i: usize) -> u64;
    /// dst += c * src.
    fn add_scaled(&self, dst: &mut Self::Row, src: &Self::Row, c: u64);
    fn scale(&self, r: &mut Self::Row, c: u64);
    fn weight(&self, r: &Self::Row) -> usize;
    /// Weight of a + c * b.
    fn combo_weight(&self, a: &Self::Row, b: &Self::Row, c: u64) -> usize;
}

struct Binary {
    n: usize,
}

impl Rows for Binary {
    type Row = Vec<u64>;

    fn row_from(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n.div_ceil(64)];
        for (i, &c) in v.iter().enumerate() {
            if c & 1 == 1 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }

    fn to_coeffs(&self, r: &Vec<u64>) -> Vec<u64> {
        (0..self.n).map(|i| self.get(r, i)).collect()
    }

    fn get(&self, r: &Vec<u64>, i: usize) -> u64 {
        r[i / 64] >> (i % 64) & 1
    }

    fn add_scaled(&self, dst: &mut Vec<u64>, src: &Vec<u64>, c: u64) {
        if c & 1 == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
    }

    fn scale(&self, r: &mut Vec<u64>, c: u64) {
        if c & 1 == 0 {
            r.iter_mut().for_each(|w| *w = 0);
        }
    }

    fn weight(&self, r: &Vec<u64>) -> usize {
        r.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn combo_weight(&self, a: &Vec<u64>, b: &Vec<u64>, c: u64) -> usize {
        if c & 1 == 0 {
            return self.weight(a);
        }
        a.iter()
            .zip(b)
            .map(|(x, y)| (x ^ y).count_ones() as usize)
            .sum()
    }
}

struct General {
    p: u32,
}

impl Rows for General {
    type Row = Vec<u32>;

    fn row_from(&self, v: &[u64]) -> Vec<u32> {
        v.iter().map(|&c| (c % self.p as u64) as u32).collect()
    }

    fn to_coeffs(&self, r: &Vec<u32>) -> Vec<u64> {
        r.iter().map(|&c| c as u64).collect()
    }

    fn get(&self, r: &Vec<u32>, i: usize) -> u64 {
        r[i] as u64
    }

    fn add_scaled(&self, dst: &mut Vec<u32>, src: &Vec<u32>, c: u64) {
        let p = self.p as u64;
        let c = c % p;
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = ((*d as u64 + c * s as u64) % p) as u32;
        }
    }

    fn scale(&self, r: &mut Vec<u32>, c: u64) {
        let p = self.p as u64;
        for v in r.iter_mut() {
            *v = ((*v as u64 * (c % p)) % p) as u32;
        }
    }

    fn weight(&self, r: &Vec<u32>) -> usize {
        r.iter().filter(|&&v| v != 0).count()
    }

    fn combo_weight(&self, a: &Vec<u32>, b: &Vec<u32>, c: u64) -> usize {
        let p = self.p as u64;
        a.iter()
            .zip(b)
            .filter(|&(&x, &y)| !(x as u64 + c * y as u64).is_multiple_of(p))
            .count()
    }
}

/// Exact minimum distance with a minimum-weight codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveResult {
    pub distance: u64,
    pub codeword: Vec<u64>,
    /// Nonzero messages enumerated, one per codeword up to scalar multiples.
    pub messages: u64,
}

fn exhaustive_with<R: Rows>(ops: &R, rows: &[R::Row], q: u64) -> ExhaustiveResult {
    let k = rows.len();
    let mut best = usize::MAX;
    let mut best_word = rows[0].clone();
    let mut messages = 0u64;
    for lead in 0..k {
        // Messages whose first nonzero digit is a 1 at position `lead`.
        let mut cw = rows[lead].clone();
        let tail = &rows[lead + 1..];
        let mut digits = vec![0u64; tail.len()];
        loop {
            messages += 1;
            let w = ops.weight(&cw);
            if w < best {
                best = w;
                best_word = cw.clone();
            }
            let mut j = 0;
            loop {
                if j == tail.len() {
                    break;
                }
                ops.add_scaled(&mut cw, &tail[j], 1);
                digits[j] += 1;
                if digits[j] == q {
                    digits[j] = 0;
                    j += 1;
                    continue;
                }
                break;
            }
            if j == tail.len() {
                break;
            }
        }
    }
    ExhaustiveResult {
        distance: best as u64,
        codeword: ops.to_coeffs(&best_word),
        messages,
    }
}

/// Minimum Hamming weight over all nonzero codewords; refuses when q^k exceeds `cap`.
pub fn exact_distance_exhaustive(code: &CyclicCode, cap: u64) -> Result<ExhaustiveResult> {
    if code.k == 0 {
        return Err(Error::ZeroCode);
    }
    let total = (code.p as u128)
        .checked_pow(code.k as u32)
        .unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            what: "q^k messages",
            value: total,
            cap: cap as u128,
        });
    }
    let raw = code.generator_rows();
    Ok(if code.p == 2 {
        let ops = Binary { n: code.n };
        let rows: Vec<_> = raw.iter().map(|r| ops.row_from(r)).collect();
        exhaustive_with(&ops, &rows, 2)
    } else {
        let ops = General { p: code.p as u32 };
        let rows: Vec<_> = raw.iter().map(|r| ops.row_from(r)).collect();
        exhaustive_with(&ops, &rows, code.p)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub iterations: u64,
    /// Maximum number of reduced rows combined, 1 to 3.
    pub width: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 1,
            iterations: 1000,
            width: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub weight: u64,
    pub codeword: Vec<u64>,
    /// First iteration attaining `weight`.
    pub iteration: u64,
    pub seed: u64,
    pub iterations: u64,
    pub width: usize,
}

/// Reduced echelon form on the columns in `order`; rows end up with a 1 in
/// their pivot column and 0 in every other pivot column.
fn reduce<R: Rows>(ops: &R, rows: &mut [R::Row], order: &[usize], p: u64) {
    let k = rows.len();
    let mut rank = 0;
    for &col in order {
        if rank == k {
            break;
        }
        let Some(piv) = (rank..k).find(|&r| ops.get(&rows[r], col) != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let lead = ops.get(&rows[rank], col);
        if lead != 1 {
            let inv = inv_mod(lead, p).expect("nonzero element of a prime field");
            ops.scale(&mut rows[rank], inv);
        }
        let (head, rest) = rows.split_at_mut(rank);
        let (pivot_row, tail) = rest.split_first_mut().expect("rank < k");
        for r in head.iter_mut().chain(tail.iter_mut()) {
            let c = ops.get(r, col);
            if c != 0 {
                ops.add_scaled(r, pivot_row, p - c);
            }
        }
        rank += 1;
    }
}

/// Lightest combination of at most `width` rows with nonzero coefficients,
/// the first row's coefficient fixed to 1.
fn scan<R: Rows>(ops: &R, rows: &[R::Row], p: u64, width: usize) -> (usize, R::Row) {
    let k = rows.len();
    let mut best = usize::MAX;
    let mut best_row: Option<R::Row> = None;
    let mut consider = |w: usize, make: &dyn Fn() -> R::Row| {
        if w < best {
            best = w;
            best_row = Some(make());
        }
    };
    for (i, r) in rows.iter().enumerate() {
        consider(ops.weight(r), &|| r.clone());
        if width < 2 {
            continue;
        }
        for j in i + 1..k {
            for c in 1..p {
                let w = ops.combo_weight(r, &rows[j], c);
                consider(w, &|| {
                    let mut t = r.clone();
                    ops.add_scaled(&mut t, &rows[j], c);
                    t
                });
            }
            if width < 3 {
                continue;
            }
            for c1 in 1..p {
                let mut t = r.clone();
                ops.add_scaled(&mut t, &rows[j], c1);
                for row in &rows[j + 1..k] {
                    for c2 in 1..p {
                        let w = ops.combo_weight(&t, row, c2);
                        consider(w, &|| {
                            let mut u = t.clone();
                            ops.add_scaled(&mut u, row, c2);
                            u
                        });
                    }
                }
            }
        }
    }
    (best, best_row.expect("at least one row"))
}

fn search_with<R: Rows>(
    ops: &R,
    base: &[R::Row],
    n: usize,
    p: u64,
    cfg: &SearchConfig,
) -> SearchResult {
    let run = |it: u64| {
        let mut rng = Xoshiro256StarStar::seed_from_u64(derive_seed(cfg.seed, it));
        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        let mut rows = base.to_vec();
        reduce(ops, &mut rows, &order, p);
        let (w, row) = scan(ops, &rows, p, cfg.width);
        (w, it, row)
    };
    let (w, it, row) = (0..cfg.iterations)
        .into_par_iter()
        .map(run)
        .min_by_key(|(w, it, _)| (*w, *it))
        .unwrap_or_else(|| {
            let (w, row) = scan(ops, base, p, cfg.width);
            (w, 0, row)
        });
    SearchResult {
        weight: w as u64,
        codeword: ops.to_coeffs(&row),
        iteration: it,
        seed: cfg.seed,
        iterations: cfg.iterations,
        width: cfg.width,
    }
}

/// Seeded information-set search. Iteration i permutes the coordinates with the
/// generator seeded by `derive_seed(seed, i)`, reduces the generator matrix on
/// that order and scans combinations of up to `width` rows. The result is the
/// lightest word over all iterations, ties broken by the smallest iteration.
pub fn upper_bound_search(code: &CyclicCode, cfg: &SearchConfig) -> Result<SearchResult> {
    if code.k == 0 {
        return Err(Error::ZeroCode);
    }
    if !(1..=3).contains(&cfg.width) {
        return Err(Error::InvalidArgument(format!(
            "search width {} outside 1..=3",
            cfg.width
        )));
    }
    let raw = code.generator_rows();
    Ok(if code.p == 2 {
        let ops = Binary { n: code.n };
        let rows: Vec<_> = raw.iter().map(|r| ops.row_from(r)).collect();
        search_with(&ops, &rows, code.n, 2, cfg)
    } else {
        let ops = General { p: code.p as u32 };
        let rows: Vec<_> = raw.iter().map(|r| ops.row_from(r)).collect();
        search_with(&ops, &rows, code.n, code.p, cfg)
    })
}

/// Whether a coefficient vector of length n is a codeword.
pub fn is_codeword(code: &CyclicCode, word: &[u64]) -> Result<bool> {
    Ok(Poly::new(code.p, word.to_vec())
        .rem(&code.generator)?
        .is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub r: u64,
    /// W class of r.
    pub r_class: usize,
    pub omegas: Vec<u8>,
    /// Indices (j - class(r)) mod 6 of the sibling code.
    pub sibling_omegas: Vec<u8>,
    pub samples: usize,
    pub weights_preserved: bool,
    pub in_sibling: bool,
}

impl ShiftReport {
    pub fn holds(&self) -> bool {
        self.weights_preserved && self.in_sibling
    }
}

/// Checks that c(x) -> c(x^r) maps sampled codewords into the sibling code with
/// shifted omega indices and keeps their weight.
pub fn multiplicative_shift_check(
    cons: &Construction,
    r: u64,
    samples: usize,
    seed: u64,
) -> Result<ShiftReport> {
    let report = &cons.report;
    let pr = &report.params;
    let factors = cons.omegas.as_ref().ok_or_else(|| {
        Error::InvalidArgument("omega factors unavailable (q outside W_0 or layer skipped)".into())
    })?;
    let omegas = report
        .case
        .omegas
        .clone()
        .ok_or_else(|| Error::InvalidArgument("omega indices unknown".into()))?;
    if gcd(r % pr.n, pr.n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "{r} is not a unit mod {}",
            pr.n
        )));
    }
    let r_class = cons
        .classes
        .w_index(r % pr.n)
        .expect("units lie in some W_k");
    let sibling_omegas: Vec<u8> = omegas
        .iter()
        .map(|&j| ((j as usize + 6 - r_class) % 6) as u8)
        .collect();
    let sibling = generator_from_structure(pr, report.case.part, &sibling_omegas, factors)?;
    let code = CyclicCode::from_report(report)?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let n = pr.n as usize;
    let mut weights_preserved = true;
    let mut in_sibling = true;
    for _ in 0..samples {
        let msg: Vec<u64> = (0..code.k).map(|_| rng.below(pr.p)).collect();
        let c = code.encode(&msg)?;
        let img = c.substitute_power(r, n);
        weights_preserved &= img.weight() == c.weight();
        in_sibling &= img.rem(&sibling)?.is_zero();
    }
    Ok(ShiftReport {
        r,
        r_class,
        omegas,
        sibling_omegas,
        samples,
        weights_preserved,
        in_sibling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: u64, n: usize, g: &[u64]) -> CyclicCode {
        CyclicCode::new(Poly::new(p, g.to_vec()), n).unwrap()
    }

    #[test]
    fn bounds_arithmetic() {
        assert_eq!(ceil_sqrt(19), 5);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(quadratic_bound(13), 4);
        assert_eq!(quadratic_bound(7), 3);
        assert_eq!(quadratic_bound(1), 1);
    }

    #[test]
    fn admissible_sets() {
        assert!(omega_set_admissible(&[3, 4, 2]));
        assert!(omega_set_admissible(&[0, 1, 2]));
        assert!(!omega_set_admissible(&[0, 3]));
        assert!(omega_set_admissible(&[4, 0]));
        assert!(!omega_set_admissible(&[0, 2, 3]));
        assert!(omega_set_admissible(&[5]));
    }

    #[test]
    fn repetition_code() {
        // (x^7 - 1)/(x - 1) over GF(2).
        let c = code(2, 7, &[1; 7]);
        assert_eq!(exact_distance_exhaustive(&c, 1 << 20).unwrap().distance, 7);
        let c = code(3, 5, &[1; 5]);
        assert_eq!(exact_distance_exhaustive(&c, 1 << 20).unwrap().distance, 5);
    }

    #[test]
    fn hamming_and_bch() {
        // Hamming [7,4,3] and the [15,7,5] BCH code with g = x^8+x^7+x^6+x^4+1.
        let h = code(2, 7, &[1, 1, 0, 1]);
        assert_eq!(exact_distance_exhaustive(&h, 1 << 20).unwrap().distance, 3);
        let bch = code(2, 15, &[1, 0, 0, 0, 1, 0, 1, 1, 1]);
        assert_eq!(bch.k, 7);
        let ex = exact_distance_exhaustive(&bch, 1 << 20).unwrap();
        assert_eq!(ex.distance, 5);
        assert_eq!(ex.messages, 127);
        assert!(is_codeword(&bch, &ex.codeword).unwrap());
        let s = upper_bound_search(
            &bch,
            &SearchConfig {
                seed: 3,
                iterations: 50,
                width: 2,
            },
        )
        .unwrap();
        assert_eq!(s.weight, 5);
        // Ternary Golay [11,6,5].
        let golay = code(3, 11, &[2, 0, 1, 2, 1, 1]);
        assert_eq!(
            exact_distance_exhaustive(&golay, 1 << 20).unwrap().distance,
            5
        );
    }

    #[test]
    fn zero_code_and_cap() {
        let z = code(2, 7, &[1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(z.k, 0);
        assert_eq!(
            exact_distance_exhaustive(&z, 1 << 20).unwrap_err(),
            Error::ZeroCode
        );
        assert_eq!(
            upper_bound_search(&z, &SearchConfig::default()).unwrap_err(),
            Error::ZeroCode
        );
        let h = code(2, 7, &[1, 1, 0, 1]);
        assert!(matches!(
            exact_distance_exhaustive(&h, 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn search_is_deterministic_and_monotone() {
        let golay = code(3, 11, &[2, 0, 1, 2, 1, 1]);
        let a = upper_bound_search(
            &golay,
            &SearchConfig {
                seed: 9,
                iterations: 20,
                width: 1,
            },
        )
        .unwrap();
        let b = upper_bound_search(
            &golay,
            &SearchConfig {
                seed: 9,
                iterations: 20,
                width: 1,
            },
        )
        .unwrap();
        assert_eq!(a, b);
        let mut last = u64::MAX;
        for it in [1, 2, 5, 10, 20] {
            let r = upper_bound_search(
                &golay,
                &SearchConfig {
                    seed: 9,
                    iterations: it,
                    width: 1,
                },
            )
            .unwrap();
            assert!(r.weight <= last);
            assert!(is_codeword(&golay, &r.codeword).unwrap());
            last = r.weight;
        }
    }
}
