//! Whiteman generalized cyclotomy of order 6 for n = n1 * n2: the classes
//! W_0..W_5, P and Q, cyclotomic numbers by direct count and by closed form,
//! the quadratic partition n = x^2 + 3y^2, and the parity lemmas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{discrete_log, mul_mod, TwoPrimeParams};

const LABEL_P: u8 = 6;
const LABEL_Q: u8 = 7;
const LABEL_ZERO: u8 = 8;
const UNLABELED: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    Zero,
    /// Nonzero multiples of n1.
    P,
    /// Nonzero multiples of n2.
    Q,
    W(u8),
}

/// Partition of Z_n into {0}, P, Q and W_0..W_5.
#[derive(Debug, Clone)]
pub struct WhitemanClasses {
    params: TwoPrimeParams,
    labels: Vec<u8>,
    w: [Vec<usize>; 6],
    p_set: Vec<usize>,
    q_set: Vec<usize>,
}

/// Index sets of the two sequences: WGCS-II has ones on `c1`, WGCS-I on `c1_star`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSupports {
    pub c0: Vec<usize>,
    pub c1: Vec<usize>,
    pub c0_star: Vec<usize>,
    pub c1_star: Vec<usize>,
}

pub fn build_classes(params: &TwoPrimeParams) -> Result<WhitemanClasses> {
    let n = params.n as usize;
    let mut labels = vec![UNLABELED; n];
    labels[0] = LABEL_ZERO;
    let mut p_set = Vec::with_capacity(params.n2 as usize - 1);
    let mut q_set = Vec::with_capacity(params.n1 as usize - 1);
    for k in 1..params.n2 {
        let t = (k * params.n1) as usize;
        labels[t] = LABEL_P;
        p_set.push(t);
    }
    for k in 1..params.n1 {
        let t = (k * params.n2) as usize;
        labels[t] = LABEL_Q;
        q_set.push(t);
    }
    let mut w: [Vec<usize>; 6] = Default::default();
    let mut ui = 1u64;
    for (i, class) in w.iter_mut().enumerate() {
        let mut t = ui;
        for _ in 0..params.e {
            let slot = &mut labels[t as usize];
            if *slot != UNLABELED {
                return Err(Error::verification(
                    "class partition",
                    format!("residue {t} reached twice (W_{i} and label {})", *slot),
                ));
            }
            *slot = i as u8;
            class.push(t as usize);
            t = mul_mod(t, params.g, params.n);
        }
        class.sort_unstable();
        ui = mul_mod(ui, params.u, params.n);
    }
    p_set.sort_unstable();
    q_set.sort_unstable();
    if let Some(t) = labels.iter().position(|&l| l == UNLABELED) {
        return Err(Error::verification(
            "class partition",
            format!("residue {t} is unlabeled"),
        ));
    }
    Ok(WhitemanClasses {
        params: *params,
        labels,
        w,
        p_set,
        q_set,
    })
}

impl WhitemanClasses {
    pub fn params(&self) -> &TwoPrimeParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, t: u64) -> ClassLabel {
        match self.labels[(t % self.params.n) as usize] {
            LABEL_ZERO => ClassLabel::Zero,
            LABEL_P => ClassLabel::P,
            LABEL_Q => ClassLabel::Q,
            i => ClassLabel::W(i),
        }
    }

    /// The i with t in W_i, if t is a unit.
    pub fn w_index(&self, t: u64) -> Option<usize> {
        let l = self.labels[(t % self.params.n) as usize];
        (l < 6).then_some(l as usize)
    }

    /// Raw dense label vector: 0..=5 for W_i, 6 for P, 7 for Q, 8 for zero.
    pub fn raw_labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn w(&self, i: usize) -> &[usize] {
        &self.w[i % 6]
    }

    pub fn p_set(&self) -> &[usize] {
        &self.p_set
    }

    pub fn q_set(&self) -> &[usize] {
        &self.q_set
    }

    pub fn supports(&self) -> SequenceSupports {
        let n = self.n();
        let pick = |ws: &[usize], with_p: bool| -> Vec<usize> {
            (0..n)
                .filter(|&t| match self.labels[t] {
                    LABEL_P => with_p,
                    LABEL_Q | LABEL_ZERO => !with_p,
                    l => ws.contains(&(l as usize)),
                })
                .collect()
        };
        SequenceSupports {
            c0: pick(&[0, 1, 2], false),
            c1: pick(&[3, 4, 5], true),
            c0_star: pick(&[0, 2, 4], false),
            c1_star: pick(&[1, 3, 5], true),
        }
    }

    /// (i, j)_6 = |(W_i + 1) ∩ W_j| for all i, j.
    pub fn cyclotomic_matrix(&self) -> [[u64; 6]; 6] {
        self.generalized_matrix(1)
    }

    pub fn cyclotomic_number_direct(&self, i: usize, j: usize) -> u64 {
        self.generalized_count(i, j, 1)
    }

    /// d(i, j; t) = |(W_i + t) ∩ W_j|.
    pub fn generalized_count(&self, i: usize, j: usize, t: u64) -> u64 {
        let n = self.params.n;
        self.w[i % 6]
            .iter()
            .filter(|&&a| self.labels[((a as u64 + t) % n) as usize] == (j % 6) as u8)
            .count() as u64
    }

    pub fn generalized_matrix(&self, t: u64) -> [[u64; 6]; 6] {
        let n = self.params.n;
        let mut out = [[0u64; 6]; 6];
        for (i, row) in out.iter_mut().enumerate() {
            for &a in &self.w[i] {
                let l = self.labels[((a as u64 + t) % n) as usize];
                if l < 6 {
                    row[l as usize] += 1;
                }
            }
        }
        out
    }

    /// Closed form of d(i, j; t) for t != 0: the explicit values for t in P or Q,
    /// and (i - k, j - k)_6 for t in W_k.
    pub fn generalized_count_formula(
        &self,
        i: usize,
        j: usize,
        t: u64,
        cyc: &[[u64; 6]; 6],
    ) -> Result<u64> {
        let (n1, n2) = (self.params.n1, self.params.n2);
        match self.label(t) {
            ClassLabel::Zero => Err(Error::InvalidArgument(
                "d(i,j;t) closed form needs t != 0".into(),
            )),
            ClassLabel::P | ClassLabel::Q if i % 6 != j % 6 => Ok((n1 - 1) * (n2 - 1) / 36),
            ClassLabel::P => Ok((n1 - 1) * (n2 - 7) / 36),
            ClassLabel::Q => Ok((n1 - 7) * (n2 - 1) / 36),
            ClassLabel::W(k) => {
                let k = k as usize;
                Ok(cyc[(i + 6 - k) % 6][(j + 6 - k) % 6])
            }
        }
    }

    /// The class index of -1.
    pub fn minus_one_class(&self) -> Result<usize> {
        let idx = self
            .w_index(self.params.n - 1)
            .ok_or_else(|| Error::verification("-1 class", "n - 1 is not in any W_i"))?;
        let expected = if self.params.eta() % 2 == 1 { 0 } else { 3 };
        if idx != expected {
            return Err(Error::verification(
                "-1 class",
                format!(
                    "-1 lies in W_{idx}, eta = {} predicts W_{expected}",
                    self.params.eta()
                ),
            ));
        }
        Ok(idx)
    }

    /// Checks r * W_j = W_{i + j} for every unit r in W_i, returning the first violation.
    pub fn class_shift_violation(&self) -> Option<(u64, usize)> {
        let n = self.params.n;
        for (i, class) in self.w.iter().enumerate() {
            for &r in class {
                for j in 0..6 {
                    let img = mul_mod(r as u64, self.w[j][0] as u64, n);
                    if self.w_index(img) != Some((i + j) % 6) {
                        return Some((r as u64, j));
                    }
                    let last = mul_mod(r as u64, *self.w[j].last().unwrap() as u64, n);
                    if self.w_index(last) != Some((i + j) % 6) {
                        return Some((r as u64, j));
                    }
                }
            }
        }
        None
    }
}

/// Quadratic-partition and relation parameters for the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiophantineParams {
    pub x: i64,
    pub y: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub dd: i64,
    /// ((n1 - 2)(n2 - 2) - 1) / 6.
    pub m: i64,
    /// g^rho = 2 (mod n1).
    pub rho: u64,
    /// g^varrho = 2 (mod n2).
    pub varrho: u64,
    /// (rho - varrho) mod 3.
    pub column: u8,
    pub eta_odd: bool,
}

/// (constant, x coefficient, y coefficient) of 36 (i,j)_6 - 6M, one triple per
/// column (rho - varrho) mod 3 = 0, 1, 2. Rows follow the representatives in
/// `EVEN_CLASSES` / `ODD_CLASSES`.
type TableRow = [(i64, i64, i64); 3];

const EVEN_TABLE: [TableRow; 10] = [
    [(10, -8, 0), (10, -2, 0), (10, -2, 0)],
    [(-2, -2, 12), (-2, 4, 0), (-2, -2, -12)],
    [(-2, -2, 12), (-2, -2, 12), (-2, -8, 12)],
    [(-2, 16, 0), (-2, 10, -12), (-2, 10, 12)],
    [(-2, -2, -12), (-2, -8, -12), (-2, -2, -12)],
    [(-2, -2, -12), (-2, -2, 12), (-2, 4, 0)],
    [(4, 4, 6), (4, -2, 6), (4, 4, 6)],
    [(4, 4, -6), (4, 4, -6), (4, -2, -6)],
    [(-2, -2, 0), (-2, 4, 0), (-2, 4, 0)],
    [(-2, -2, 0), (-2, -8, -12), (-2, -8, 12)],
];

const ODD_TABLE: [TableRow; 10] = [
    [(16, -20, 0), (16, -8, 6), (16, -8, -6)],
    [(4, 4, 18), (4, 4, 12), (4, 4, 6)],
    [(4, 4, 6), (4, 4, -6), (4, -8, 0)],
    [(4, 4, 0), (4, 4, -6), (4, 4, 6)],
    [(4, 4, -6), (4, -8, 0), (4, 4, 6)],
    [(4, 4, -18), (4, 4, -6), (4, 4, -12)],
    [(-2, -2, 0), (-2, -2, -6), (-2, -2, 6)],
    [(-2, -2, 0), (-2, -2, -6), (-2, -2, -12)],
    [(-2, -2, 0), (-2, -2, 12), (-2, -2, 6)],
    [(-2, -2, 0), (-2, 10, 6), (-2, 10, -6)],
];

/// Equal cyclotomic numbers; the first pair of each list is the representative.
pub const EVEN_CLASSES: [&[(usize, usize)]; 10] = [
    &[(0, 0), (3, 0), (3, 3)],
    &[(0, 1), (2, 5), (4, 3)],
    &[(0, 2), (1, 4), (5, 3)],
    &[(0, 3)],
    &[(0, 4), (1, 3), (5, 2)],
    &[(0, 5), (2, 3), (4, 1)],
    &[(1, 0), (2, 2), (3, 1), (3, 4), (4, 0), (5, 5)],
    &[(1, 1), (2, 0), (3, 2), (3, 5), (4, 4), (5, 0)],
    &[(1, 2), (1, 5), (2, 4), (4, 2), (5, 1), (5, 4)],
    &[(2, 1), (4, 5)],
];

pub const ODD_CLASSES: [&[(usize, usize)]; 10] = [
    &[(0, 0)],
    &[(0, 1), (1, 0), (5, 5)],
    &[(0, 2), (2, 0), (4, 4)],
    &[(0, 3), (3, 0), (3, 3)],
    &[(0, 4), (4, 0), (2, 2)],
    &[(0, 5), (5, 0), (1, 1)],
    &[(1, 2), (2, 1), (4, 5), (5, 4), (5, 1), (1, 5)],
    &[(1, 3), (2, 5), (3, 1), (3, 4), (4, 3), (5, 2)],
    &[(1, 4), (2, 3), (3, 2), (3, 5), (4, 1), (5, 3)],
    &[(2, 4), (4, 2)],
];

/// Row index of (i, j) in the table for the given parity.
pub fn representative_row(eta_odd: bool, i: usize, j: usize) -> usize {
    let classes = if eta_odd { &ODD_CLASSES } else { &EVEN_CLASSES };
    classes
        .iter()
        .position(|cl| cl.contains(&(i % 6, j % 6)))
        .expect("equality lists cover all 36 pairs")
}

/// 72 (i,j)_6 from the (a, b, c, dd) form, for the representative row.
fn seventy_two_form(dio: &DiophantineParams, row: usize) -> i64 {
    let DiophantineParams {
        m,
        a,
        b,
        c,
        dd: d,
        x,
        y,
        ..
    } = *dio;
    let m12 = 12 * m;
    if dio.eta_odd {
        match row {
            0 => m12 + 32 + 6 * a - 24 * x + 2 * c,
            1 => m12 + 8 + a + 3 * b + 8 * x + 24 * y - c + 9 * d,
            2 => m12 + 8 - 3 * a + 9 * b - c - 9 * d,
            3 => m12 + 8 - 2 * a + 8 * x + 2 * c,
            4 => m12 + 8 - 3 * a - c - 9 * b + 9 * d,
            5 => m12 + 8 + a - 3 * b + 8 * x - 24 * y - c - 9 * d,
            6 => m12 - 4 - 2 * a - 4 * x + 2 * c,
            7 => m12 - 4 + a + 3 * b - 4 * x - 12 * y - c + 9 * d,
            8 => m12 - 4 + a - 3 * b - 4 * x + 12 * y - c - 9 * d,
            _ => m12 - 4 + 6 * a + 12 * x + 2 * c,
        }
    } else {
        match row {
            0 => m12 + 20 - 8 * x - 2 * a + 2 * c,
            1 => m12 - 4 - 3 * a - 9 * b - c + 9 * d,
            2 => m12 - 4 - 8 * x + a - c + 24 * y - 3 * b - 9 * d,
            3 => m12 - 4 + 24 * x + 6 * a + 2 * c,
            4 => m12 - 4 - 8 * x + a - c - 24 * y + 3 * b + 9 * d,
            5 => m12 - 4 - 3 * a - c + 9 * b - 9 * d,
            6 => m12 + 8 + 4 * x + a - c + 12 * y + 3 * b + 9 * d,
            7 => m12 + 8 + 4 * x + a - c - 12 * y - 3 * b - 9 * d,
            8 => m12 - 4 + 4 * x - 2 * a + 2 * c,
            _ => m12 - 4 + 6 * a - 12 * x + 2 * c,
        }
    }
}

/// Which closed form to evaluate; `Corrupted` perturbs the (0,0) row for fault injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableMode {
    #[default]
    Faithful,
    Corrupted,
}

fn table_value(
    eta_odd: bool,
    column: u8,
    m: i64,
    x: i64,
    y: i64,
    (i, j): (usize, usize),
    mode: TableMode,
) -> i64 {
    let row = representative_row(eta_odd, i, j);
    let table = if eta_odd { &ODD_TABLE } else { &EVEN_TABLE };
    let (k, cx, cy) = table[row][column as usize];
    let bump = if mode == TableMode::Corrupted && row == 0 {
        36
    } else {
        0
    };
    6 * m + k + cx * x + cy * y + bump
}

/// (i,j)_6 from the order-6 tables; errors if 36 does not divide the table value.
pub fn cyclotomic_number_formula(dio: &DiophantineParams, i: usize, j: usize) -> Result<u64> {
    cyclotomic_number_formula_mode(dio, i, j, TableMode::Faithful)
}

pub fn cyclotomic_number_formula_mode(
    dio: &DiophantineParams,
    i: usize,
    j: usize,
    mode: TableMode,
) -> Result<u64> {
    let v = table_value(dio.eta_odd, dio.column, dio.m, dio.x, dio.y, (i, j), mode);
    if v < 0 || v % 36 != 0 {
        return Err(Error::verification(
            "table integrality",
            format!("36({i},{j})_6 = {v}"),
        ));
    }
    Ok((v / 36) as u64)
}

/// (i,j)_6 from the (a, b, c, dd) relations; errors if 72 does not divide the value.
pub fn cyclotomic_number_relation(dio: &DiophantineParams, i: usize, j: usize) -> Result<u64> {
    let v = seventy_two_form(dio, representative_row(dio.eta_odd, i, j));
    if v < 0 || v % 72 != 0 {
        return Err(Error::verification(
            "relation integrality",
            format!("72({i},{j})_6 = {v}"),
        ));
    }
    Ok((v / 72) as u64)
}

pub fn formula_matrix(dio: &DiophantineParams, mode: TableMode) -> Result<[[u64; 6]; 6]> {
    let mut out = [[0u64; 6]; 6];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = cyclotomic_number_formula_mode(dio, i, j, mode)?;
        }
    }
    Ok(out)
}

/// (a, b, c, dd) from (x, y) for the given parity and column.
pub fn relation_parameters(
    x: i64,
    y: i64,
    eta_odd: bool,
    column: u8,
) -> Result<(i64, i64, i64, i64)> {
    let third = |num: i64| -> Result<i64> {
        if num % 3 != 0 {
            return Err(Error::verification(
                "relation integrality",
                format!("{num}/3 is not an integer"),
            ));
        }
        Ok(num / 3)
    };
    Ok(match (eta_odd, column) {
        (false, 0) => (2 * x, -2 * y, -2 * x, third(2 * y)?),
        (false, 1) => (-x - 3 * y, -x + y, x - 3 * y, third(-x - y)?),
        (false, _) => (-x + 3 * y, x + y, x + 3 * y, third(x - y)?),
        (true, 0) => (-2 * x, 2 * y, -2 * x, third(2 * y)?),
        (true, 1) => (x + 3 * y, x - y, x - 3 * y, third(-x - y)?),
        (true, _) => (x - 3 * y, -x - y, x + 3 * y, third(x - y)?),
    })
}

/// All (x, y) with x^2 + 3 y^2 = n, both signs.
pub fn quadratic_partitions(n: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut y = 0u64;
    while 3 * y * y <= n {
        let r = n - 3 * y * y;
        let x = r.isqrt();
        if x * x == r {
            for sx in [x as i64, -(x as i64)] {
                for sy in [y as i64, -(y as i64)] {
                    if !out.contains(&(sx, sy)) {
                        out.push((sx, sy));
                    }
                }
            }
        }
        y += 1;
    }
    out
}

/// Resolves (x, y) by requiring every table representative to match the direct
/// counts. The match must be unique.
pub fn solve_diophantine(classes: &WhitemanClasses) -> Result<DiophantineParams> {
    let prm = classes.params();
    let eta_odd = prm.eta() % 2 == 1;
    let m = (((prm.n1 - 2) * (prm.n2 - 2) - 1) / 6) as i64;
    let rho = discrete_log(prm.g, 2, prm.n1)?;
    let varrho = discrete_log(prm.g, 2, prm.n2)?;
    let column = ((rho as i64 - varrho as i64).rem_euclid(3)) as u8;
    let direct = classes.cyclotomic_matrix();
    let classes_list = if eta_odd { &ODD_CLASSES } else { &EVEN_CLASSES };
    let partitions = quadratic_partitions(prm.n);
    if partitions.is_empty() {
        return Err(Error::verification(
            "quadratic partition",
            format!("{} is not x^2 + 3y^2", prm.n),
        ));
    }
    let mut matches = Vec::new();
    for &(x, y) in &partitions {
        let ok = classes_list.iter().all(|cl| {
            let (i, j) = cl[0];
            table_value(eta_odd, column, m, x, y, (i, j), TableMode::Faithful)
                == 36 * direct[i][j] as i64
        });
        if ok {
            matches.push((x, y));
        }
    }
    match matches.as_slice() {
        [(x, y)] => {
            let (a, b, c, dd) = relation_parameters(*x, *y, eta_odd, column)?;
            Ok(DiophantineParams {
                x: *x,
                y: *y,
                a,
                b,
                c,
                dd,
                m,
                rho,
                varrho,
                column,
                eta_odd,
            })
        }
        [] => Err(Error::verification(
            "sign resolution",
            format!(
                "no partition of {} among {partitions:?} reproduces the direct counts",
                prm.n
            ),
        )),
        many => Err(Error::verification(
            "sign resolution",
            format!("ambiguous partitions {many:?}"),
        )),
    }
}

/// The four statements of each parity lemma, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub eta: u64,
    pub minus_one_class: usize,
    /// [-1 in W_3, eta even, {n1, n2} = {1, 7} mod 12, n = 7 mod 12]
    pub even_statements: [bool; 4],
    /// [-1 in W_0, eta odd, n1 = n2 = 7 mod 12, n = 1 mod 12]
    pub odd_statements: [bool; 4],
}

impl ParityReport {
    pub fn consistent(&self) -> bool {
        let all_eq = |s: &[bool; 4]| s.iter().all(|&b| b == s[0]);
        all_eq(&self.even_statements)
            && all_eq(&self.odd_statements)
            && self.even_statements[0] != self.odd_statements[0]
    }
}

pub fn parity_conditions(classes: &WhitemanClasses) -> Result<ParityReport> {
    let prm = classes.params();
    let (n1, n2) = (prm.n1 % 12, prm.n2 % 12);
    let minus = classes
        .w_index(prm.n - 1)
        .ok_or_else(|| Error::verification("-1 class", "n - 1 is not a unit"))?;
    let eta = prm.eta();
    let report = ParityReport {
        eta,
        minus_one_class: minus,
        even_statements: [
            minus == 3,
            eta.is_multiple_of(2),
            (n1, n2) == (1, 7) || (n1, n2) == (7, 1),
            prm.n % 12 == 7,
        ],
        odd_statements: [
            minus == 0,
            eta % 2 == 1,
            (n1, n2) == (7, 7),
            prm.n % 12 == 1,
        ],
    };
    if !report.consistent() {
        return Err(Error::verification("parity lemmas", format!("{report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(n1: u64, n2: u64) -> WhitemanClasses {
        let p = [2u64, 3, 5, 11]
            .into_iter()
            .find(|p| !(n1 * n2).is_multiple_of(*p))
            .unwrap();
        build_classes(&TwoPrimeParams::new(p, n1, n2).unwrap()).unwrap()
    }

    #[test]
    fn class_sizes() {
        let c = classes(13, 19);
        for i in 0..6 {
            assert_eq!(c.w(i).len(), 36);
        }
        let c = classes(7, 13);
        assert_eq!(
            (c.w(0).len(), c.p_set().len(), c.q_set().len()),
            (12, 12, 6)
        );
        let c = classes(7, 19);
        assert_eq!(c.label(0), ClassLabel::Zero);
        for k in 1..19 {
            assert_eq!(c.label(7 * k), ClassLabel::P);
        }
    }

    #[test]
    fn supports_partition() {
        let c = classes(7, 13);
        let s = c.supports();
        let mut all: Vec<usize> = s.c0.iter().chain(&s.c1).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..91).collect::<Vec<_>>());
        let mut star: Vec<usize> = c.p_set().to_vec();
        for i in [1, 3, 5] {
            star.extend_from_slice(c.w(i));
        }
        star.sort_unstable();
        assert_eq!(s.c1_star, star);
        assert_eq!(s.c1.len(), 12 + 3 * 12);
    }

    #[test]
    fn minus_one() {
        assert_eq!(classes(13, 19).minus_one_class().unwrap(), 3);
        assert_eq!(classes(7, 13).minus_one_class().unwrap(), 3);
        assert_eq!(classes(7, 19).minus_one_class().unwrap(), 0);
    }

    #[test]
    fn parity() {
        let r = parity_conditions(&classes(13, 19)).unwrap();
        assert_eq!(r.even_statements, [true; 4]);
        let r = parity_conditions(&classes(7, 19)).unwrap();
        assert_eq!(r.odd_statements, [true; 4]);
        let r = parity_conditions(&classes(7, 13)).unwrap();
        assert_eq!(r.even_statements, [true; 4]);
    }

    #[test]
    fn m_and_partitions() {
        let dio = solve_diophantine(&classes(13, 19)).unwrap();
        assert_eq!(dio.m, 31);
        assert_eq!(dio.x * dio.x + 3 * dio.y * dio.y, 247);
        let parts = quadratic_partitions(91);
        assert!(parts.contains(&(-8, 3)) && parts.contains(&(4, 5)));
        let dio = solve_diophantine(&classes(7, 13)).unwrap();
        assert_eq!(dio.x * dio.x + 3 * dio.y * dio.y, 91);
    }

    #[test]
    fn table_examples() {
        // 36(0,0)_6 = 6M + 10 - 8x (even, column 0) and 6M + 16 - 20x (odd, column 0).
        assert_eq!(
            table_value(false, 0, 31, 2, -9, (0, 0), TableMode::Faithful),
            6 * 31 + 10 - 16
        );
        assert_eq!(
            table_value(true, 0, 10, 1, 1, (0, 0), TableMode::Faithful),
            60 + 16 - 20
        );
        assert_eq!(
            table_value(false, 1, 0, 1, 1, (2, 1), TableMode::Faithful),
            -2 - 8 - 12
        );
    }

    #[test]
    fn generalized_count_closed_forms() {
        let c = classes(7, 19);
        let cyc = c.cyclotomic_matrix();
        for t in 1..c.params().n {
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(
                        c.generalized_count(i, j, t),
                        c.generalized_count_formula(i, j, t, &cyc).unwrap(),
                        "d({i},{j};{t})"
                    );
                }
            }
        }
    }

    #[test]
    fn class_shift() {
        assert_eq!(classes(13, 19).class_shift_violation(), None);
    }

    #[test]
    fn corrupted_table_is_detected() {
        let c = classes(13, 19);
        let dio = solve_diophantine(&c).unwrap();
        assert_eq!(
            formula_matrix(&dio, TableMode::Faithful).unwrap(),
            c.cyclotomic_matrix()
        );
        assert_ne!(
            formula_matrix(&dio, TableMode::Corrupted).unwrap(),
            c.cyclotomic_matrix()
        );
    }
}
