//! Generator polynomial of the cyclic code defined by WGCS-II, by the gcd
//! formula and by the Theorem 1 / Theorem 2 classification, cross-validated.

use std::fmt;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cyclotomy::{build_classes, solve_diophantine, DiophantineParams, WhitemanClasses};
use crate::distance::{theorem_lower_bound, DistanceBounds};
use crate::error::{Error, Result};
use crate::gfpoly::{FieldElement, FieldSpec, Poly};
use crate::numtheory::{multiplicative_order, pow_mod, TwoPrimeParams};
use crate::sequence::{stu_polynomials, wgcs2, BinarySequence};

/// GF(p^m) with m = ord_n(p), a primitive n-th root of unity beta and its powers.
#[derive(Debug, Clone)]
pub struct FieldTower {
    field: FieldSpec,
    n: usize,
    beta: FieldElement,
    powers: Vec<FieldElement>,
}

/// ord_n(p), the degree of the splitting field of x^n - 1 over GF(p).
pub fn extension_degree(params: &TwoPrimeParams) -> Result<u64> {
    multiplicative_order(params.p, params.n)
}

impl FieldTower {
    /// beta = beta0^{u^j} with beta0 the root from the primitive element and
    /// j = `beta_class`; changing j relabels omega_i as omega_{i-j}.
    pub fn new(params: &TwoPrimeParams, caps: &Caps, beta_class: u8) -> Result<FieldTower> {
        let m = extension_degree(params)?;
        if m > caps.max_m as u64 {
            return Err(Error::CapExceeded {
                what: "extension degree m",
                value: m as u128,
                cap: caps.max_m as u128,
            });
        }
        let field = FieldSpec::make(params.p, m as u32, caps)?;
        if beta_class >= 6 {
            return Err(Error::InvalidArgument(format!(
                "beta class {beta_class} outside 0..6"
            )));
        }
        let root = field.primitive_nth_root(params.n)?;
        let beta = field.pow(
            &root,
            pow_mod(params.u, beta_class as u64, params.n) as u128,
        );
        let n = params.n as usize;
        let mut powers = Vec::with_capacity(n);
        let mut acc = field.one();
        for _ in 0..n {
            powers.push(acc.clone());
            acc = field.mul(&acc, &beta);
        }
        if acc != field.one() {
            return Err(Error::verification("beta^n = 1", "beta^n differs from 1"));
        }
        Ok(FieldTower {
            field,
            n,
            beta,
            powers,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    /// beta^i for any i, reduced mod n.
    pub fn power(&self, i: u64) -> &FieldElement {
        &self.powers[(i % self.n as u64) as usize]
    }

    /// sum over i in `exps` of beta^{i t}.
    pub fn sum_powers(&self, exps: &[usize], t: u64) -> FieldElement {
        let n = self.n as u64;
        let mut acc = self.field.zero();
        for &i in exps {
            self.field
                .add_assign(&mut acc, self.power((i as u64 % n) * (t % n)));
        }
        acc
    }
}

/// Minimal polynomial (x^n - 1) / gcd(x^n - 1, S^n(x)) of a periodic sequence over GF(q), monic.
pub fn minimal_polynomial(seq: &BinarySequence, q: u64) -> Result<Poly> {
    let xn = Poly::x_pow_minus_one(q, seq.len());
    let d = xn.gcd(&seq.to_poly(q))?;
    Ok(xn.div_exact(&d)?.monic())
}

/// Linear span n - deg gcd(x^n - 1, S^n(x)).
pub fn linear_span(seq: &BinarySequence, q: u64) -> Result<usize> {
    Ok(minimal_polynomial(seq, q)?.degree().unwrap_or(0))
}

/// sum_{i in W_j} beta^{i t} for j = 0..5 with t in P or Q; all six equal
/// -(n1 - 1)/6 (t in P) or -(n2 - 1)/6 (t in Q) mod p.
pub fn class_sums_at(
    classes: &WhitemanClasses,
    tower: &FieldTower,
    t: u64,
) -> Result<[FieldElement; 6]> {
    let pr = classes.params();
    let t = t % pr.n;
    let expected = if t != 0 && t.is_multiple_of(pr.n1) {
        -((pr.n1 as i128 - 1) / 6)
    } else if t != 0 && t.is_multiple_of(pr.n2) {
        -((pr.n2 as i128 - 1) / 6)
    } else {
        return Err(Error::InvalidArgument(format!("{t} is not in P or Q")));
    };
    let expected = tower.field.from_int(expected);
    let sums: [FieldElement; 6] = std::array::from_fn(|j| tower.sum_powers(classes.w(j), t));
    for (j, s) in sums.iter().enumerate() {
        if *s != expected {
            return Err(Error::verification(
                "class sums on P and Q",
                format!("t = {t}, j = {j}: {s:?} != {expected:?}"),
            ));
        }
    }
    Ok(sums)
}

/// Values of S, T, U at beta and the residues controlling the trivial factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalProfile {
    pub s_beta: FieldElement,
    pub t_beta: FieldElement,
    pub u_beta: FieldElement,
    pub delta1: u64,
    pub delta2: u64,
    pub delta: u64,
    /// Class index of q mod n.
    pub q_class: usize,
    /// Class index of -1 mod n.
    pub minus_one: usize,
}

/// (n1 + 1)/2, (n2 - 1)/2 and (n1 + 1)(n2 - 1)/2, each reduced mod p.
pub fn deltas(params: &TwoPrimeParams) -> (u64, u64, u64) {
    let p = params.p as u128;
    let d1 = (params.n1 as u128).div_ceil(2);
    let d2 = (params.n2 as u128 - 1) / 2;
    let d = (params.n1 as u128 + 1) * (params.n2 as u128 - 1) / 2;
    ((d1 % p) as u64, (d2 % p) as u64, (d % p) as u64)
}

/// Class index of q = p among W_0..W_5.
pub fn q_class(classes: &WhitemanClasses) -> Result<usize> {
    let pr = classes.params();
    classes.w_index(pr.p % pr.n).ok_or_else(|| {
        Error::verification("q class", format!("{} is not a unit mod {}", pr.p, pr.n))
    })
}

/// Source of X(beta^t) for t in W_k: (index into (S, T, U), whether the value is -(X + 1)).
const STU_TABLE: [[(usize, bool); 6]; 3] = [
    [
        (0, false),
        (1, true),
        (2, true),
        (0, true),
        (1, false),
        (2, false),
    ],
    [
        (1, false),
        (2, false),
        (0, false),
        (1, true),
        (2, true),
        (0, true),
    ],
    [
        (2, false),
        (0, false),
        (1, true),
        (2, true),
        (0, true),
        (1, false),
    ],
];

fn stu_transform(
    field: &FieldSpec,
    base: &[FieldElement; 3],
    which: usize,
    k: usize,
) -> FieldElement {
    let (src, negated) = STU_TABLE[which][k];
    if negated {
        field.neg(&field.add(&base[src], &field.one()))
    } else {
        base[src].clone()
    }
}

/// Value the evaluation table predicts for X(beta^t), X in (S, T, U).
fn stu_predicted(
    classes: &WhitemanClasses,
    field: &FieldSpec,
    base: &[FieldElement; 3],
    which: usize,
    t: u64,
) -> FieldElement {
    let pr = classes.params();
    let t = t % pr.n;
    if t == 0 {
        let (_, _, d) = deltas(pr);
        field.from_base(d)
    } else if t.is_multiple_of(pr.n1) {
        field.from_int(-((pr.n1 as i128 + 1) / 2))
    } else if t.is_multiple_of(pr.n2) {
        field.from_int((pr.n2 as i128 - 1) / 2)
    } else {
        stu_transform(
            field,
            base,
            which,
            classes.w_index(t).expect("unit lies in some W_k"),
        )
    }
}

/// S(beta), T(beta), U(beta) by Horner, the evaluation table checked for every t in Z_n.
pub fn eval_profile(classes: &WhitemanClasses, tower: &FieldTower) -> Result<EvalProfile> {
    let pr = classes.params();
    let field = &tower.field;
    let (s, t, u) = stu_polynomials(classes, pr.p);
    let base = [
        field.eval(&s, &tower.beta)?,
        field.eval(&t, &tower.beta)?,
        field.eval(&u, &tower.beta)?,
    ];
    let supports = [s.exponents_desc(), t.exponents_desc(), u.exponents_desc()];
    let bad = (0..pr.n).into_par_iter().find_first(|&tt| {
        (0..3).any(|which| {
            tower.sum_powers(&supports[which], tt)
                != stu_predicted(classes, field, &base, which, tt)
        })
    });
    if let Some(tt) = bad {
        return Err(Error::verification(
            "evaluation table",
            format!("mismatch at t = {tt}"),
        ));
    }
    let (delta1, delta2, delta) = deltas(pr);
    let [s_beta, t_beta, u_beta] = base;
    Ok(EvalProfile {
        s_beta,
        t_beta,
        u_beta,
        delta1,
        delta2,
        delta,
        q_class: q_class(classes)?,
        minus_one: classes.minus_one_class()?,
    })
}

impl EvalProfile {
    pub fn stu(&self) -> [FieldElement; 3] {
        [
            self.s_beta.clone(),
            self.t_beta.clone(),
            self.u_beta.clone(),
        ]
    }
}

/// Frobenius relations for q in W_k: X(beta)^{q^j} equals the table transform for
/// class jk mod 6 (j = 1, 2, 3); odd k gives X^{q^3} + X + 1 = 0; q outside W_0 keeps
/// S, T, U away from 0 and -1; q in W_0 fixes them.
pub fn check_frobenius(profile: &EvalProfile, tower: &FieldTower) -> Result<()> {
    let field = &tower.field;
    let base = profile.stu();
    let names = ["S", "T", "U"];
    let k = profile.q_class;
    let zero = field.zero();
    let minus_one = field.from_int(-1);
    for which in 0..3 {
        let mut img = base[which].clone();
        for j in 1..=3 {
            img = field.frobenius(&img);
            let want = stu_transform(field, &base, which, (j * k) % 6);
            if img != want {
                return Err(Error::verification(
                    "Frobenius relation",
                    format!("{}(beta)^(q^{j}) with q in W_{k}", names[which]),
                ));
            }
        }
        if k % 2 == 1 {
            let cubic = field.add(&field.add(&img, &base[which]), &field.one());
            if !field.is_zero(&cubic) {
                return Err(Error::verification(
                    "cubic relation",
                    format!("{0}^(q^3) + {0} + 1 != 0", names[which]),
                ));
            }
        }
        if k == 0 {
            if field.to_base(&base[which]).is_none() {
                return Err(Error::verification(
                    "base field values",
                    format!("{}(beta) not in GF(q)", names[which]),
                ));
            }
        } else if base[which] == zero || base[which] == minus_one {
            return Err(Error::verification(
                "q outside W_0",
                format!("{}(beta) in {{0, -1}} with q in W_{k}", names[which]),
            ));
        }
    }
    Ok(())
}

/// sum over P and over Q of beta^i is -1; sum over all W_j is 1.
pub fn check_sum_identities(classes: &WhitemanClasses, tower: &FieldTower) -> Result<()> {
    let field = &tower.field;
    let minus_one = field.from_int(-1);
    if tower.sum_powers(classes.p_set(), 1) != minus_one {
        return Err(Error::verification(
            "sum over P",
            "sum_{i in P} beta^i != -1",
        ));
    }
    if tower.sum_powers(classes.q_set(), 1) != minus_one {
        return Err(Error::verification(
            "sum over Q",
            "sum_{i in Q} beta^i != -1",
        ));
    }
    let mut total = field.zero();
    for j in 0..6 {
        field.add_assign(&mut total, &tower.sum_powers(classes.w(j), 1));
    }
    if total != field.one() {
        return Err(Error::verification(
            "sum over W",
            "sum_{i in W} beta^i != 1",
        ));
    }
    Ok(())
}

/// Paired class sums C_j = sum over W_j and W_{j+3}, and their differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkSums {
    pub c0: FieldElement,
    pub c1: FieldElement,
    pub c2: FieldElement,
    pub c2_minus_c0: FieldElement,
    pub c0_minus_c1: FieldElement,
    pub c1_minus_c2: FieldElement,
}

pub fn remark_sums(classes: &WhitemanClasses, tower: &FieldTower) -> Result<RemarkSums> {
    let field = &tower.field;
    let sigma: [FieldElement; 6] = std::array::from_fn(|j| tower.sum_powers(classes.w(j), 1));
    let c: [FieldElement; 3] = std::array::from_fn(|j| field.add(&sigma[j], &sigma[j + 3]));
    let total = field.add(&field.add(&c[0], &c[1]), &c[2]);
    if total != field.one() {
        return Err(Error::verification(
            "C0 + C1 + C2 = 1",
            format!("{total:?}"),
        ));
    }
    Ok(RemarkSums {
        c2_minus_c0: field.sub(&c[2], &c[0]),
        c0_minus_c1: field.sub(&c[0], &c[1]),
        c1_minus_c2: field.sub(&c[1], &c[2]),
        c0: c[0].clone(),
        c1: c[1].clone(),
        c2: c[2].clone(),
    })
}

/// Both sides of X(X + 1) = base + coefficient * difference for X in (S, T, U).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuProductReport {
    pub eta_odd: bool,
    pub column: u8,
    /// (n - 1)/4 for odd eta, -(n + 1)/4 for even eta.
    pub base: i64,
    /// Integer coefficient of the class-sum difference.
    pub coefficient: i64,
    pub lhs: [FieldElement; 3],
    pub rhs: [FieldElement; 3],
}

impl StuProductReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::verification(
            "integrality",
            format!("{what} = {num}/{den} is not an integer"),
        ));
    }
    Ok(num / den)
}

/// (base, coefficient, rotation) of the product identities; rotation r assigns
/// the difference list [C2-C0, C0-C1, C1-C2] starting at index r to (S, T, U).
pub fn stu_product_terms(n: u64, dio: &DiophantineParams) -> Result<(i64, i64, usize)> {
    let n = n as i64;
    let (x, y) = (dio.x, dio.y);
    let base = if dio.eta_odd {
        exact_div(n - 1, 4, "(n-1)/4")?
    } else {
        -exact_div(n + 1, 4, "(n+1)/4")?
    };
    let sign = if dio.eta_odd { -1 } else { 1 };
    let (coef, rot) = match dio.column {
        0 => (sign * exact_div(2 * y, 3, "2y/3")?, 0),
        1 => (-sign * exact_div(x + y, 3, "(x+y)/3")?, 2),
        _ => (sign * exact_div(x - y, 3, "(x-y)/3")?, 1),
    };
    Ok((base, coef, rot))
}

pub fn stu_product_check(
    profile: &EvalProfile,
    dio: &DiophantineParams,
    classes: &WhitemanClasses,
    tower: &FieldTower,
) -> Result<StuProductReport> {
    let field = &tower.field;
    let (base, coefficient, rot) = stu_product_terms(classes.params().n, dio)?;
    let rs = remark_sums(classes, tower)?;
    let diffs = [rs.c2_minus_c0, rs.c0_minus_c1, rs.c1_minus_c2];
    let vals = profile.stu();
    let lhs: [FieldElement; 3] =
        std::array::from_fn(|i| field.mul(&vals[i], &field.add(&vals[i], &field.one())));
    let rhs: [FieldElement; 3] = std::array::from_fn(|i| {
        let term = field.mul(&field.from_int(coefficient as i128), &diffs[(i + rot) % 3]);
        field.add(&field.from_int(base as i128), &term)
    });
    let report = StuProductReport {
        eta_odd: dio.eta_odd,
        column: dio.column,
        base,
        coefficient,
        lhs,
        rhs,
    };
    if !report.holds() {
        let which = (0..3).find(|&i| report.lhs[i] != report.rhs[i]).unwrap();
        return Err(Error::verification(
            "STU products",
            format!("{}(beta) side mismatch", ["S", "T", "U"][which]),
        ));
    }
    Ok(report)
}

/// Predicates of the corollary giving three removed omega factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub n_mod_12: u64,
    /// (n - 1)/4 when n = 1 mod 12, (n + 1)/4 when n = 7 mod 12.
    pub quarter: Option<i64>,
    pub quarter_mod_p: Option<u64>,
    pub column: u8,
    pub coefficient: i64,
    pub coefficient_mod_p: u64,
    /// n mod 12 and the quarter condition hold.
    pub applies: bool,
    /// `applies` and the coefficient vanishes mod p: S, T, U all lie in {0, -1}.
    pub triple_family: bool,
}

pub fn corollary_conditions(
    params: &TwoPrimeParams,
    dio: &DiophantineParams,
    p: u64,
) -> Result<CorollaryReport> {
    let n = params.n;
    let pi = p as i64;
    let quarter = match n % 12 {
        1 => Some(((n - 1) / 4) as i64),
        7 => Some(((n + 1) / 4) as i64),
        _ => None,
    };
    let quarter_mod_p = quarter.map(|v| v.rem_euclid(pi) as u64);
    let (_, coefficient, _) = stu_product_terms(n, dio)?;
    let coefficient_mod_p = coefficient.rem_euclid(pi) as u64;
    let applies = quarter_mod_p == Some(0);
    Ok(CorollaryReport {
        n_mod_12: n % 12,
        quarter,
        quarter_mod_p,
        column: dio.column,
        coefficient,
        coefficient_mod_p,
        applies,
        triple_family: applies && coefficient_mod_p == 0,
    })
}

/// Lifts a polynomial with coefficients in GF(q^m) to GF(q), checking each coefficient.
fn project(field: &FieldSpec, coeffs: &[FieldElement], what: &str) -> Result<Poly> {
    let mut out = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        out.push(field.to_base(c).ok_or_else(|| {
            Error::verification(
                "omega base field",
                format!("{what}: coefficient {i} outside GF(q)"),
            )
        })?);
    }
    Ok(Poly::new(field.p(), out))
}

/// omega_i(x) = prod_{j in W_i} (x - beta^j), i = 0..5, as polynomials over GF(q).
pub fn omega_factors(classes: &WhitemanClasses, tower: &FieldTower) -> Result<[Poly; 6]> {
    let qc = q_class(classes)?;
    if qc != 0 {
        return Err(Error::NotBaseFieldStable(qc));
    }
    let field = &tower.field;
    let pr = classes.params();
    let mut out: Vec<Poly> = Vec::with_capacity(6);
    for i in 0..6 {
        let mut acc = vec![field.one()];
        for &j in classes.w(i) {
            let root = tower.power(j as u64);
            let mut next = vec![field.zero(); acc.len() + 1];
            for (d, c) in acc.iter().enumerate() {
                field.add_assign(&mut next[d + 1], c);
                let t = field.mul(c, root);
                next[d] = field.sub(&next[d], &t);
            }
            acc = next;
        }
        let poly = project(field, &acc, &format!("omega_{i}"))?;
        if poly.degree() != Some(pr.e as usize) {
            return Err(Error::verification(
                "omega degree",
                format!("deg omega_{i} != e"),
            ));
        }
        out.push(poly);
    }
    let p = pr.p;
    let mut prod = Poly::x_pow_minus_one(p, pr.n1 as usize)
        .mul(&Poly::x_pow_minus_one(p, pr.n2 as usize))?
        .div_exact(&Poly::x_pow_minus_one(p, 1))?;
    for w in &out {
        prod = prod.mul(w)?;
    }
    if prod != Poly::x_pow_minus_one(p, pr.n as usize) {
        return Err(Error::verification(
            "omega product",
            "prod omega_i * lcm(x^n1 - 1, x^n2 - 1) != x^n - 1",
        ));
    }
    Ok(out.try_into().expect("six factors"))
}

/// Trivial-factor branch, selected by which of Delta1, Delta2, Delta vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    I,
    II,
    III,
    IV,
    V,
}

impl Part {
    pub fn from_deltas(delta1: u64, delta2: u64, delta: u64) -> Part {
        match (delta1 == 0, delta2 == 0, delta == 0) {
            (false, false, false) => Part::I,
            (false, false, true) => Part::II,
            (false, true, _) => Part::III,
            (true, false, _) => Part::IV,
            (true, true, _) => Part::V,
        }
    }

    fn roman(self) -> &'static str {
        match self {
            Part::I => "I",
            Part::II => "II",
            Part::III => "III",
            Part::IV => "IV",
            Part::V => "V",
        }
    }

    /// Applies the branch to g1: g1, g1/(x-1), g1/(x^n1-1), g1/(x^n2-1), g1(x-1)/((x^n1-1)(x^n2-1)).
    pub fn apply(self, g1: &Poly, params: &TwoPrimeParams) -> Result<Poly> {
        let p = params.p;
        let x1 = Poly::x_pow_minus_one(p, 1);
        let xn1 = Poly::x_pow_minus_one(p, params.n1 as usize);
        let xn2 = Poly::x_pow_minus_one(p, params.n2 as usize);
        match self {
            Part::I => Ok(g1.clone()),
            Part::II => g1.div_exact(&x1),
            Part::III => g1.div_exact(&xn1),
            Part::IV => g1.div_exact(&xn2),
            Part::V => g1.mul(&x1)?.div_exact(&xn1.mul(&xn2)?),
        }
    }

    /// Roots of x^n - 1 this branch removes beyond the omega factors.
    pub fn trivial_root_count(self, params: &TwoPrimeParams) -> u64 {
        match self {
            Part::I => 0,
            Part::II => 1,
            Part::III => params.n1,
            Part::IV => params.n2,
            Part::V => params.n1 + params.n2 - 1,
        }
    }
}

/// Value class of S(beta), T(beta) or U(beta).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Zero,
    MinusOne,
    Other,
}

/// How the classification was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseSource {
    /// Full evaluation in GF(q^m).
    Evaluated,
    /// q outside W_0: Theorem 1 needs only the Delta residues.
    Deltas,
    /// Extension field skipped: omega count read off the gcd degree, indices unknown.
    Inferred,
}

/// Structured classification tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCase {
    pub theorem: u8,
    pub part: Part,
    pub signs: Option<[Sign; 3]>,
    /// Removed omega indices in S, T, U order, when known.
    pub omegas: Option<Vec<u8>>,
    pub omega_count: usize,
    pub source: CaseSource,
}

fn subscript(i: u8) -> char {
    char::from_u32(0x2080 + i as u32).unwrap_or('?')
}

impl fmt::Display for GeneratorCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = if self.theorem == 1 {
            "(xⁿ−1)"
        } else {
            "g₁"
        };
        let body = match self.part {
            Part::I => g.to_string(),
            Part::II => format!("{g}/(x−1)"),
            Part::III => format!("{g}/(x^n₁−1)"),
            Part::IV => format!("{g}/(x^n₂−1)"),
            Part::V => format!("{g}(x−1)/((x^n₁−1)(x^n₂−1))"),
        };
        write!(f, "Theorem {}({}), {body}", self.theorem, self.part.roman())?;
        if self.theorem == 2 {
            match &self.omegas {
                Some(w) if w.is_empty() => write!(f, " with no ω removed")?,
                Some(w) => {
                    let mut sorted = w.clone();
                    sorted.sort_unstable();
                    let s: String = sorted.iter().flat_map(|&i| ['ω', subscript(i)]).collect();
                    write!(f, " with {s} removed")?
                }
                None => write!(f, " with {} ω factor(s) removed", self.omega_count)?,
            }
        }
        Ok(())
    }
}

/// Symbolic factors of x^n - 1 divided out of the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Factor {
    XMinusOne,
    XN1MinusOne,
    XN2MinusOne,
    /// (x^n1 - 1)(x^n2 - 1)/(x - 1).
    Lcm,
    Omega(u8),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::XMinusOne => write!(f, "x-1"),
            Factor::XN1MinusOne => write!(f, "x^n1-1"),
            Factor::XN2MinusOne => write!(f, "x^n2-1"),
            Factor::Lcm => write!(f, "lcm(x^n1-1,x^n2-1)"),
            Factor::Omega(i) => write!(f, "omega{i}"),
        }
    }
}

impl From<Factor> for String {
    fn from(f: Factor) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Factor {
    type Error = Error;

    fn try_from(s: String) -> Result<Factor> {
        Ok(match s.as_str() {
            "x-1" => Factor::XMinusOne,
            "x^n1-1" => Factor::XN1MinusOne,
            "x^n2-1" => Factor::XN2MinusOne,
            "lcm(x^n1-1,x^n2-1)" => Factor::Lcm,
            _ => match s.strip_prefix("omega").and_then(|d| d.parse::<u8>().ok()) {
                Some(i) if i < 6 => Factor::Omega(i),
                _ => return Err(Error::Parse(format!("unknown factor {s:?}"))),
            },
        })
    }
}

impl GeneratorCase {
    pub fn factors_removed(&self) -> Vec<Factor> {
        let mut out = match self.part {
            Part::I => vec![],
            Part::II => vec![Factor::XMinusOne],
            Part::III => vec![Factor::XN1MinusOne],
            Part::IV => vec![Factor::XN2MinusOne],
            Part::V => vec![Factor::Lcm],
        };
        if let Some(w) = &self.omegas {
            let mut w = w.clone();
            w.sort_unstable();
            out.extend(w.into_iter().map(Factor::Omega));
        }
        out
    }
}

fn sign_of(field: &FieldSpec, v: &FieldElement) -> Sign {
    if field.is_zero(v) {
        Sign::Zero
    } else if *v == field.from_int(-1) {
        Sign::MinusOne
    } else {
        Sign::Other
    }
}

/// Omega indices removed for a sign pattern: S = 0 -> 0, S = -1 -> 3, T = 0 -> 4,
/// T = -1 -> 1, U = 0 -> 5, U = -1 -> 2.
pub fn omegas_for_signs(signs: [Sign; 3]) -> Vec<u8> {
    const MAP: [(u8, u8); 3] = [(0, 3), (4, 1), (5, 2)];
    signs
        .iter()
        .zip(MAP)
        .filter_map(|(s, (zero, minus))| match s {
            Sign::Zero => Some(zero),
            Sign::MinusOne => Some(minus),
            Sign::Other => None,
        })
        .collect()
}

/// Generator (x^n - 1) / prod omega_i over the listed indices, then the trivial branch.
pub fn generator_from_structure(
    params: &TwoPrimeParams,
    part: Part,
    omegas: &[u8],
    factors: &[Poly; 6],
) -> Result<Poly> {
    let mut g1 = Poly::x_pow_minus_one(params.p, params.n as usize);
    for &i in omegas {
        g1 = g1.div_exact(&factors[i as usize])?;
    }
    part.apply(&g1, params)
}

/// Generator and case tag from the evaluation profile. Theorem 1 when q is
/// outside W_0, Theorem 2 with its sign table otherwise.
pub fn classify_generator(
    profile: &EvalProfile,
    params: &TwoPrimeParams,
    tower: &FieldTower,
    factors: Option<&[Poly; 6]>,
) -> Result<(Poly, GeneratorCase)> {
    let part = Part::from_deltas(profile.delta1, profile.delta2, profile.delta);
    if profile.q_class != 0 {
        let g = part.apply(&Poly::x_pow_minus_one(params.p, params.n as usize), params)?;
        let case = GeneratorCase {
            theorem: 1,
            part,
            signs: None,
            omegas: None,
            omega_count: 0,
            source: CaseSource::Evaluated,
        };
        return Ok((g, case));
    }
    let field = tower.field();
    let vals = profile.stu();
    let signs = [
        sign_of(field, &vals[0]),
        sign_of(field, &vals[1]),
        sign_of(field, &vals[2]),
    ];
    let omegas = omegas_for_signs(signs);
    let factors = factors.ok_or_else(|| {
        Error::InvalidArgument("omega factors required when q lies in W_0".into())
    })?;
    let g = generator_from_structure(params, part, &omegas, factors)?;
    let case = GeneratorCase {
        theorem: 2,
        part,
        signs: Some(signs),
        omega_count: omegas.len(),
        omegas: Some(omegas),
        source: CaseSource::Evaluated,
    };
    Ok((g, case))
}

/// Classification without the extension field. Exact for q outside W_0; for q
/// in W_0 the omega count is read from the gcd-path degree.
pub fn classify_without_field(
    params: &TwoPrimeParams,
    qc: usize,
    gcd_generator: &Poly,
) -> Result<(Poly, GeneratorCase)> {
    let (d1, d2, d) = deltas(params);
    let part = Part::from_deltas(d1, d2, d);
    let xn = Poly::x_pow_minus_one(params.p, params.n as usize);
    if qc != 0 {
        let g = part.apply(&xn, params)?;
        let case = GeneratorCase {
            theorem: 1,
            part,
            signs: None,
            omegas: None,
            omega_count: 0,
            source: CaseSource::Deltas,
        };
        return Ok((g, case));
    }
    let removed = params.n - gcd_generator.degree().unwrap_or(0) as u64;
    let trivial = part.trivial_root_count(params);
    let rest = removed
        .checked_sub(trivial)
        .filter(|r| r % params.e == 0 && r / params.e <= 3)
        .ok_or_else(|| {
            Error::verification(
                "generator structure",
                format!(
                    "{removed} removed roots do not fit part {} plus omega factors",
                    part.roman()
                ),
            )
        })?;
    let omega_count = (rest / params.e) as usize;
    // Every omega divides x^n - 1 exactly once, so the trivial part must divide
    // (x^n - 1)/g as well.
    let quotient = xn.div_exact(gcd_generator)?;
    let trivial_poly = xn.div_exact(&part.apply(&xn, params)?)?;
    quotient.div_exact(&trivial_poly)?;
    let case = GeneratorCase {
        theorem: 2,
        part,
        signs: None,
        omegas: if omega_count == 0 { Some(vec![]) } else { None },
        omega_count,
        source: CaseSource::Inferred,
    };
    Ok((gcd_generator.clone(), case))
}

/// Whether the GF(q^m) verification layer ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerStatus {
    pub ran: bool,
    pub reason: Option<String>,
}

/// The constructed code and its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCodeReport {
    pub params: TwoPrimeParams,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    /// j in beta = beta0^{u^j}; only the omega labels depend on it.
    pub beta_class: u8,
    pub generator: Poly,
    pub k: u64,
    pub case: GeneratorCase,
    pub label: String,
    pub factors_removed: Vec<Factor>,
    pub bounds: DistanceBounds,
    pub classification_layer: LayerStatus,
}

/// Default j in beta = beta0^{u^j}.
pub const DEFAULT_BETA_CLASS: u8 = 2;

#[derive(Debug, Clone, Copy)]
pub struct ConstructOptions {
    pub skip_verify: bool,
    pub beta_class: u8,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            skip_verify: false,
            beta_class: DEFAULT_BETA_CLASS,
        }
    }
}

/// Everything produced while constructing a code.
#[derive(Debug, Clone)]
pub struct Construction {
    pub report: CyclicCodeReport,
    pub classes: WhitemanClasses,
    pub tower: Option<FieldTower>,
    pub profile: Option<EvalProfile>,
    pub omegas: Option<[Poly; 6]>,
    pub warnings: Vec<String>,
}

/// Runs the gcd path and, unless skipped or capped, the GF(q^m) classification
/// layer; the two generators must agree.
pub fn construct(
    params: &TwoPrimeParams,
    caps: &Caps,
    opts: ConstructOptions,
) -> Result<Construction> {
    let classes = build_classes(params)?;
    let seq = wgcs2(&classes);
    let generator = minimal_polynomial(&seq, params.p)?;
    let m = extension_degree(params)?;
    let qc = q_class(&classes)?;
    let mut warnings = Vec::new();

    let tower = if opts.skip_verify {
        warnings.push("classification layer skipped on request".to_string());
        None
    } else {
        match FieldTower::new(params, caps, opts.beta_class) {
            Ok(t) => Some(t),
            Err(e @ Error::CapExceeded { .. }) => {
                warn!("classification layer skipped: {e}");
                warnings.push(format!("classification layer skipped: {e}"));
                None
            }
            Err(e) => return Err(e),
        }
    };

    let (class_gen, case, profile, omegas) = match &tower {
        Some(tower) => {
            let profile = eval_profile(&classes, tower)?;
            check_frobenius(&profile, tower)?;
            check_sum_identities(&classes, tower)?;
            let dio = solve_diophantine(&classes)?;
            stu_product_check(&profile, &dio, &classes, tower)?;
            let omegas = if qc == 0 {
                Some(omega_factors(&classes, tower)?)
            } else {
                None
            };
            let (g, case) = classify_generator(&profile, params, tower, omegas.as_ref())?;
            let cor = corollary_conditions(params, &dio, params.p)?;
            if cor.triple_family && case.omega_count != 3 {
                return Err(Error::verification(
                    "corollary",
                    format!(
                        "triple-omega conditions hold but {} omega factor(s) removed",
                        case.omega_count
                    ),
                ));
            }
            (g, case, Some(profile), omegas)
        }
        None => {
            let (g, case) = classify_without_field(params, qc, &generator)?;
            (g, case, None, None)
        }
    };

    if class_gen != generator {
        return Err(Error::verification(
            "gcd path vs classification",
            format!(
                "{case}: degrees {:?} vs {:?}",
                class_gen.degree(),
                generator.degree()
            ),
        ));
    }
    let xn = Poly::x_pow_minus_one(params.p, params.n as usize);
    if !generator.is_monic() || !generator.divides(&xn)? {
        return Err(Error::verification(
            "generator",
            "generator is not a monic divisor of x^n - 1",
        ));
    }
    let k = params.n - generator.degree().unwrap_or(0) as u64;
    let bound = theorem_lower_bound(&case, params);
    let report = CyclicCodeReport {
        params: *params,
        q: params.p,
        n: params.n,
        m,
        beta_class: opts.beta_class,
        k,
        label: case.to_string(),
        factors_removed: case.factors_removed(),
        bounds: DistanceBounds::from_theorem(&bound, k),
        classification_layer: LayerStatus {
            ran: tower.is_some(),
            reason: if tower.is_some() {
                None
            } else {
                warnings.last().cloned()
            },
        },
        case,
        generator,
    };
    Ok(Construction {
        report,
        classes,
        tower,
        profile,
        omegas,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64, n1: u64, n2: u64) -> (WhitemanClasses, FieldTower) {
        let pr = TwoPrimeParams::new(p, n1, n2).unwrap();
        let classes = build_classes(&pr).unwrap();
        let tower = FieldTower::new(&pr, &Caps::default(), 0).unwrap();
        (classes, tower)
    }

    #[test]
    fn constant_sequence_span() {
        let s = BinarySequence::from_support(crate::sequence::SequenceKind::WgcsII, 3, &[0, 1, 2]);
        assert_eq!(
            minimal_polynomial(&s, 2).unwrap(),
            Poly::x_pow_minus_one(2, 1)
        );
        assert_eq!(linear_span(&s, 2).unwrap(), 1);
    }

    #[test]
    fn linear_spans_of_examples() {
        let c = build_classes(&TwoPrimeParams::new(2, 13, 19).unwrap()).unwrap();
        assert_eq!(linear_span(&wgcs2(&c), 2).unwrap(), 138);
        let c = build_classes(&TwoPrimeParams::new(3, 7, 19).unwrap()).unwrap();
        assert_eq!(linear_span(&wgcs2(&c), 3).unwrap(), 72);
    }

    #[test]
    fn class_sums() {
        let (c, t) = setup(2, 13, 19);
        let s = class_sums_at(&c, &t, 13).unwrap();
        assert!(s.iter().all(|v| t.field().is_zero(v)));
        let (c, t) = setup(3, 7, 19);
        let s = class_sums_at(&c, &t, 19).unwrap();
        assert!(s.iter().all(|v| t.field().is_zero(v)));
        assert!(class_sums_at(&c, &t, 1).is_err());
    }

    #[test]
    fn binary_247_case() {
        let pr = TwoPrimeParams::new(2, 13, 19).unwrap();
        assert_eq!(deltas(&pr), (1, 1, 0));
        let cons = construct(&pr, &Caps::default(), ConstructOptions::default()).unwrap();
        let r = &cons.report;
        assert_eq!(r.k, 109);
        assert_eq!(r.label, "Theorem 2(II), g₁/(x−1) with ω₀ω₁ω₂ removed");
        let shifted = construct(
            &pr,
            &Caps::default(),
            ConstructOptions {
                beta_class: 0,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            shifted.report.label,
            "Theorem 2(II), g₁/(x−1) with ω₂ω₃ω₄ removed"
        );
        assert_eq!(shifted.report.generator, r.generator);
        assert!(r.classification_layer.ran);
        let omegas = cons.omegas.as_ref().unwrap();
        assert!(omegas.iter().all(|w| w.degree() == Some(36)));
    }

    #[test]
    fn ternary_133_case() {
        let pr = TwoPrimeParams::new(3, 7, 19).unwrap();
        let cons = construct(&pr, &Caps::default(), ConstructOptions::default()).unwrap();
        assert_eq!(cons.report.k, 61);
        assert_eq!(cons.report.case.part, Part::III);
        assert_eq!(cons.report.case.omegas, Some(vec![3, 4, 2]));
        let shifted = construct(
            &pr,
            &Caps::default(),
            ConstructOptions {
                beta_class: 0,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(shifted.report.case.omegas, Some(vec![0, 4, 5]));
        assert_eq!(cons.report.bounds.lower, 5);
    }

    #[test]
    fn skip_verify_matches() {
        let pr = TwoPrimeParams::new(3, 7, 19).unwrap();
        let full = construct(&pr, &Caps::default(), ConstructOptions::default()).unwrap();
        let skip = construct(
            &pr,
            &Caps::default(),
            ConstructOptions {
                skip_verify: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(full.report.generator, skip.report.generator);
        assert_eq!(skip.report.case.omega_count, 3);
        assert_eq!(skip.report.case.source, CaseSource::Inferred);
        assert!(!skip.report.classification_layer.ran);
    }

    #[test]
    fn part_selection() {
        assert_eq!(Part::from_deltas(1, 1, 1), Part::I);
        assert_eq!(Part::from_deltas(1, 1, 0), Part::II);
        assert_eq!(Part::from_deltas(1, 0, 0), Part::III);
        assert_eq!(Part::from_deltas(0, 1, 0), Part::IV);
        assert_eq!(Part::from_deltas(0, 0, 0), Part::V);
    }

    #[test]
    fn corollary_examples() {
        let (c, _) = setup(2, 13, 19);
        let dio = solve_diophantine(&c).unwrap();
        let r = corollary_conditions(c.params(), &dio, 2).unwrap();
        assert_eq!((r.n_mod_12, r.quarter), (7, Some(62)));
        assert!(r.applies);
        let (c, _) = setup(3, 7, 19);
        let dio = solve_diophantine(&c).unwrap();
        let r = corollary_conditions(c.params(), &dio, 3).unwrap();
        assert_eq!((r.n_mod_12, r.quarter), (1, Some(33)));
        assert!(r.applies);
    }

    #[test]
    fn remark_differences() {
        let (c, t) = setup(2, 13, 19);
        let r = remark_sums(&c, &t).unwrap();
        let f = t.field();
        assert_eq!(f.add(&f.add(&r.c0, &r.c1), &r.c2), f.one());
        let sum = f.add(&f.add(&r.c2_minus_c0, &r.c0_minus_c1), &r.c1_minus_c2);
        assert!(f.is_zero(&sum));
    }

    #[test]
    fn omega_needs_w0() {
        // 2 is not in W_0 for (7, 13).
        let (c, t) = setup(2, 7, 13);
        let qc = q_class(&c).unwrap();
        assert_ne!(qc, 0);
        assert_eq!(
            omega_factors(&c, &t).unwrap_err(),
            Error::NotBaseFieldStable(qc)
        );
    }
}
