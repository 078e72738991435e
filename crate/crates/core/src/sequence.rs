//! The two binary sequences of period n (WGCS-I and WGCS-II) and the
//! polynomials S(x), T(x), U(x) over GF(p).

use serde::{Deserialize, Serialize};

use crate::cyclotomy::WhitemanClasses;
use crate::gfpoly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceKind {
    #[serde(rename = "WGCS-I")]
    WgcsI,
    #[serde(rename = "WGCS-II")]
    WgcsII,
}

/// One period of a binary sequence, bit-packed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence {
    pub kind: SequenceKind,
    len: usize,
    words: Vec<u64>,
}

impl BinarySequence {
    pub fn from_support(kind: SequenceKind, len: usize, support: &[usize]) -> BinarySequence {
        let mut words = vec![0u64; len.div_ceil(64)];
        for &i in support {
            words[i / 64] |= 1 << (i % 64);
        }
        BinarySequence { kind, len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.bit(i)).collect()
    }

    /// s_0 s_1 ... s_{n-1} as '0'/'1' characters.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Maximal runs as (bit, length), in order.
    pub fn runs(&self) -> Vec<(u8, usize)> {
        let mut out: Vec<(u8, usize)> = Vec::new();
        for i in 0..self.len {
            let b = self.bit(i) as u8;
            match out.last_mut() {
                Some((last, count)) if *last == b => *count += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// s(x) = sum s_i x^i over GF(p).
    pub fn to_poly(&self, p: u64) -> Poly {
        Poly::from_support(p, self.support(), self.len)
    }
}

/// WGCS-II: ones exactly on C_1 = P ∪ W_3 ∪ W_4 ∪ W_5.
pub fn wgcs2(classes: &WhitemanClasses) -> BinarySequence {
    BinarySequence::from_support(SequenceKind::WgcsII, classes.n(), &classes.supports().c1)
}

/// WGCS-I: ones exactly on C_1* = P ∪ W_1 ∪ W_3 ∪ W_5.
pub fn wgcs1(classes: &WhitemanClasses) -> BinarySequence {
    BinarySequence::from_support(
        SequenceKind::WgcsI,
        classes.n(),
        &classes.supports().c1_star,
    )
}

/// Support of S(x), T(x) or U(x): P together with W_{k}, W_{k+1}, W_{k+2}.
fn stu_support(classes: &WhitemanClasses, first: usize) -> Vec<usize> {
    let mut s: Vec<usize> = classes.p_set().to_vec();
    for i in first..first + 3 {
        s.extend_from_slice(classes.w(i));
    }
    s.sort_unstable();
    s
}

/// (S, T, U) over GF(p) with supports P ∪ W_3 ∪ W_4 ∪ W_5, P ∪ W_1 ∪ W_2 ∪ W_3
/// and P ∪ W_2 ∪ W_3 ∪ W_4.
pub fn stu_polynomials(classes: &WhitemanClasses, p: u64) -> (Poly, Poly, Poly) {
    let n = classes.n();
    let mk = |first| Poly::from_support(p, stu_support(classes, first), n);
    (mk(3), mk(1), mk(2))
}
