//! Dense univariate polynomials over a prime field GF(p).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::inv_mod;

/// Polynomial over GF(p), ascending coefficients, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoly")]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

#[derive(Deserialize)]
struct RawPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl TryFrom<RawPoly> for Poly {
    type Error = Error;
    fn try_from(raw: RawPoly) -> Result<Poly> {
        if raw.p < 2 {
            return Err(Error::Parse(format!(
                "field characteristic {} is invalid",
                raw.p
            )));
        }
        if let Some(&c) = raw.coeffs.iter().find(|&&c| c >= raw.p) {
            return Err(Error::Parse(format!(
                "coefficient {c} is not reduced mod {}",
                raw.p
            )));
        }
        Ok(Poly::new(raw.p, raw.coeffs))
    }
}

impl Poly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Poly {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = Poly { p, coeffs };
        poly.trim();
        poly
    }

    /// Builds from signed integer coefficients, reducing each into [0, p).
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Poly {
        Poly::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Poly {
        Poly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Poly {
        Poly::new(p, vec![1])
    }

    /// The monomial c x^deg.
    pub fn monomial(p: u64, deg: usize, c: u64) -> Poly {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Poly::new(p, coeffs)
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(p: u64, n: usize) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = p - 1;
        coeffs[n] = 1;
        Poly::new(p, coeffs)
    }

    /// Sum of x^i over the given exponents, each below `n`.
    pub fn from_support(p: u64, support: impl IntoIterator<Item = usize>, n: usize) -> Poly {
        let mut coeffs = vec![0; n];
        for i in support {
            coeffs[i] = (coeffs[i] + 1) % p;
        }
        Poly::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Exponents with nonzero coefficient, descending.
    pub fn exponents_desc(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .rev()
            .filter(|&i| self.coeffs[i] != 0)
            .collect()
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Ok(Poly::new(self.p, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let p = self.p;
        Poly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Poly {
        let c = c % self.p;
        Poly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.p));
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        // Products are below 2^62, so u128 sums cannot overflow at any supported size.
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        Ok(Poly::new(
            self.p,
            acc.into_iter().map(|v| (v % p) as u64).collect(),
        ))
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        let lead_inv = inv_mod(divisor.leading(), p)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = ((c as u128 * lead_inv as u128) % p as u128) as u64;
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let sub = ((factor as u128 * d as u128) % p as u128) as u64;
                let slot = &mut rem[i - dd + j];
                *slot = (*slot + p - sub) % p;
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(p, quot), Poly::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        match r.degree() {
            None => Ok(q),
            Some(remainder_degree) => Err(Error::NotDivisible { remainder_degree }),
        }
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => self.scale(inv_mod(lead, self.p).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Value at a point of GF(p).
    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let x = x as u128 % p;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x + c as u128) % p) as u64
    }

    /// self^e mod modulus.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.p).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// c(x^r) reduced modulo x^n - 1, i.e. the coefficient at i moves to i*r mod n.
    pub fn substitute_power(&self, r: u64, n: usize) -> Poly {
        let mut coeffs = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = ((i as u128 * r as u128) % n as u128) as usize;
            coeffs[j] = (coeffs[j] + c) % self.p;
        }
        Poly::new(self.p, coeffs)
    }

    /// Ascending coefficients, space separated.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_text(p: u64, text: &str) -> Result<Poly> {
        let coeffs = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_i64(p, &coeffs))
    }

    /// Conventional descending rendering, e.g. `x^3 + 2x + 1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .exponents_desc()
            .into_iter()
            .map(|i| {
                let c = self.coeffs[i];
                let coef = if c == 1 && i > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match i {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64(p, c)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(poly(3, &[1, 0, 2, 0, 3]).coeffs(), &[1, 0, 2]);
        assert_eq!(Poly::zero(5).degree(), None);
        assert_eq!(Poly::one(5).degree(), Some(0));
        assert!(poly(2, &[0, 0, 2]).is_zero());
    }

    #[test]
    fn gcd_examples() {
        let g = poly(3, &[-1, 0, 1]).gcd(&poly(3, &[-1, 1])).unwrap();
        assert_eq!(g, poly(3, &[-1, 1]));
        let f = poly(2, &[1, 1, 0, 1]);
        assert_eq!(Poly::x_pow_minus_one(2, 7).gcd(&f).unwrap(), f);
        let h = poly(5, &[2, 4]);
        assert_eq!(h.gcd(&Poly::zero(5)).unwrap(), poly(5, &[3, 1]));
        assert!(Poly::zero(5).gcd(&Poly::zero(5)).unwrap().is_zero());
        assert!(matches!(
            h.gcd(&poly(3, &[1])),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let q = Poly::x_pow_minus_one(5, 4)
            .div_exact(&Poly::x_pow_minus_one(5, 2))
            .unwrap();
        assert_eq!(q, poly(5, &[1, 0, 1]));
        let geo = Poly::x_pow_minus_one(3, 10)
            .div_exact(&poly(3, &[-1, 1]))
            .unwrap();
        assert_eq!(geo.coeffs(), &[1; 10]);
        let q = Poly::x_pow_minus_one(2, 6)
            .div_exact(&poly(2, &[1, 1, 1]))
            .unwrap();
        assert_eq!(q, poly(2, &[1, 1, 0, 1, 1]));
        assert_eq!(
            poly(2, &[1, 0, 1]).div_exact(&poly(2, &[1, 1, 1])),
            Err(Error::NotDivisible {
                remainder_degree: 1
            })
        );
        assert_eq!(
            poly(2, &[1]).div_rem(&Poly::zero(2)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn text_round_trip() {
        let f = poly(3, &[1, 0, 2]);
        assert_eq!(f.to_text(), "1 0 2");
        assert_eq!(Poly::parse_text(3, "1 0 2").unwrap(), f);
        assert_eq!(Poly::parse_text(3, "1 0 -1").unwrap(), f);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"p":3,"coeffs":[1,0,2]}"#
        );
        let back: Poly = serde_json::from_str(r#"{"p":3,"coeffs":[1,0,2,0]}"#).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Poly>(r#"{"p":3,"coeffs":[5]}"#).is_err());
        assert_eq!(f.pretty(), "2x^2 + 1");
    }

    #[test]
    fn eval_and_substitution() {
        assert_eq!(poly(7, &[1, 1]).eval(1), 2);
        assert_eq!(Poly::x_pow_minus_one(7, 6).eval(3), 0);
        let c = poly(3, &[1, 2, 0, 1]);
        let shifted = c.substitute_power(2, 5);
        assert_eq!(shifted, poly(3, &[1, 1, 2, 0, 0]));
        assert_eq!(shifted.weight(), c.weight());
    }

    fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..p, 0..max_len).prop_map(move |c| Poly::new(p, c))
    }

    proptest! {
        #[test]
        fn mul_then_divexact(a in arb_poly(5, 20), b in arb_poly(5, 12)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).unwrap().div_exact(&b).unwrap(), a);
        }

        #[test]
        fn division_identity(a in arb_poly(7, 25), b in arb_poly(7, 10)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert!(r.degree() < b.degree());
            prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        }

        #[test]
        fn gcd_is_common_and_maximal(a in arb_poly(3, 10), b in arb_poly(3, 10), d in arb_poly(3, 5)) {
            prop_assume!(!d.is_zero());
            let (a, b) = (a.mul(&d).unwrap(), b.mul(&d).unwrap());
            let g = a.gcd(&b).unwrap();
            if !g.is_zero() {
                prop_assert!(g.is_monic());
                prop_assert!(g.divides(&a).unwrap());
                prop_assert!(g.divides(&b).unwrap());
                prop_assert!(d.degree() <= g.degree());
                prop_assert!(d.monic().divides(&g).unwrap());
            }
        }

        #[test]
        fn substitution_preserves_weight(a in arb_poly(3, 30), r in prop::sample::select(vec![1u64, 7, 11, 13, 17, 19, 23, 29])) {
            prop_assert_eq!(a.substitute_power(r, 30).weight(), a.weight());
        }
    }
}
