//! Extension fields GF(p^m) as GF(p)[x] modulo a fixed irreducible polynomial.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::numtheory::{factorize, factorize_u128, inv_mod, is_prime};

/// Element of GF(p^m): exactly `m` coefficients in [0, p), ascending powers of the
/// generator of the polynomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement(pub Vec<u64>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    m: u32,
    /// Monic, ascending, length m + 1.
    modulus: Vec<u64>,
    order: BigUint,
    /// Prime divisors of p^m - 1, known when it fits in 128 bits.
    group_primes: Option<Vec<u128>>,
}

/// Shared handle to a constructed field; cheap to clone and safe to share.
#[derive(Debug, Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldSpec {}

/// Whether a monic polynomial of degree m >= 1 is irreducible over GF(p), by
/// checking gcd(f, x^{p^k} - x) = 1 for k <= m / 2.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let m = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(m) => m,
    };
    let p = f.p();
    let x = Poly::monomial(p, 1, 1);
    let mut h = x.clone();
    for _ in 1..=m / 2 {
        h = h.pow_mod(p as u128, f)?;
        if f.gcd(&h.sub(&x)?)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically smallest monic irreducible of degree m over GF(p), with
/// coefficients compared from the constant term upward. Degree 1 gives `x`.
pub fn smallest_irreducible(p: u64, m: u32) -> Result<Poly> {
    let m = m as usize;
    if m == 1 {
        return Ok(Poly::monomial(p, 1, 1));
    }
    // digits[0] is the constant term and the most significant position.
    let mut digits = vec![0u64; m];
    digits[0] = 1;
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let cand = Poly::new(p, coeffs);
        if is_irreducible(&cand)? {
            return Ok(cand);
        }
        let mut pos = m - 1;
        loop {
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            if pos == 0 {
                return Err(Error::verification(
                    "irreducible search",
                    format!("none of degree {m} over GF({p})"),
                ));
            }
            pos -= 1;
        }
    }
}

impl FieldSpec {
    pub fn make(p: u64, m: u32, caps: &Caps) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be at least 1".into(),
            ));
        }
        let bits = (m as f64 * (p as f64).log2()).ceil() as u128;
        if m as f64 * (p as f64).log2() > caps.field_bits as f64 {
            return Err(Error::CapExceeded {
                what: "field bits",
                value: bits,
                cap: caps.field_bits as u128,
            });
        }
        let modulus = smallest_irreducible(p, m)?;
        let mut coeffs = modulus.into_coeffs();
        coeffs.resize(m as usize + 1, 0);
        let order = BigUint::from(p).pow(m);
        let group_primes = (&order - 1u32)
            .to_u128()
            .map(|g| factorize_u128(g).into_iter().map(|(r, _)| r).collect());
        Ok(FieldSpec(Arc::new(FieldInner {
            p,
            m,
            modulus: coeffs,
            order,
            group_primes,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Number of elements, p^m.
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    pub fn modulus(&self) -> Poly {
        Poly::new(self.0.p, self.0.modulus.clone())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.0.m as usize])
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    /// Image of c in GF(p) under the embedding GF(p) -> GF(p^m).
    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut v = vec![0; self.0.m as usize];
        v[0] = c % self.0.p;
        FieldElement(v)
    }

    /// Image of a signed integer.
    pub fn from_int(&self, c: i128) -> FieldElement {
        self.from_base(c.rem_euclid(self.0.p as i128) as u64)
    }

    /// The base-field value if `a` lies in GF(p).
    pub fn to_base(&self, a: &FieldElement) -> Option<u64> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    /// Element from its coefficient vector; entries are reduced mod p, length must be m.
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.0.m as usize {
            return Err(Error::InvalidArgument(format!(
                "element needs {} coefficients",
                self.0.m
            )));
        }
        Ok(FieldElement(
            coeffs.into_iter().map(|c| c % self.0.p).collect(),
        ))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn add_assign(&self, a: &mut FieldElement, b: &FieldElement) {
        let p = self.0.p;
        for (x, &y) in a.0.iter_mut().zip(&b.0) {
            *x = (*x + y) % p;
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let p = self.0.p as u128;
        FieldElement(
            a.0.iter()
                .map(|&x| ((x as u128 * c as u128) % p) as u64)
                .collect(),
        )
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.0.m as usize;
        let p = self.0.p as u128;
        let mut t = vec![0u128; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                t[i + j] += x as u128 * y as u128;
            }
        }
        let md = &self.0.modulus;
        for i in (m..2 * m - 1).rev() {
            let c = (t[i] % p) as u64;
            if c == 0 {
                continue;
            }
            // x^i = -sum_{j<m} md[j] x^{i-m+j}
            for j in 0..m {
                t[i - m + j] += c as u128 * ((p as u64 - md[j]) % p as u64) as u128;
            }
        }
        FieldElement(t[..m].iter().map(|&v| (v % p) as u64).collect())
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// a^p, the Frobenius image.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.0.p as u128)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.0.m == 1 {
            return Ok(self.from_base(inv_mod(a.0[0], self.0.p)?));
        }
        Ok(self.pow_big(a, &(&self.0.order - 2u32)))
    }

    fn group_factorization(&self) -> Result<(u128, &[u128])> {
        match &self.0.group_primes {
            Some(primes) => Ok((
                (&self.0.order - 1u32).to_u128().unwrap_or(u128::MAX),
                primes,
            )),
            None => Err(Error::CapExceeded {
                what: "group order factorization bits",
                value: self.0.order.bits() as u128,
                cap: 128,
            }),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FieldElement) -> Result<u128> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let one = self.one();
        let (mut ord, primes) = self.group_factorization()?;
        for &r in primes {
            while ord % r == 0 && self.pow(a, ord / r) == one {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Nonzero elements in lexicographic coefficient order with the constant term
    /// most significant.
    fn lexicographic(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let m = self.0.m as usize;
        let p = self.0.p;
        let mut digits = vec![0u64; m];
        std::iter::from_fn(move || {
            let mut pos = m - 1;
            loop {
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos = pos.checked_sub(1)?;
            }
            Some(FieldElement(digits.clone()))
        })
    }

    /// The first element in lexicographic order whose multiplicative order is p^m - 1.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        let one = self.one();
        let (n, primes) = self.group_factorization()?;
        Ok(self
            .lexicographic()
            .find(|cand| primes.iter().all(|&r| self.pow(cand, n / r) != one))
            .expect("a finite field has a primitive element"))
    }

    /// beta = gamma^{(p^m - 1)/n} for the primitive element gamma. When p^m - 1
    /// exceeds 128 bits, gamma is instead the first element in lexicographic
    /// order whose power gamma^{(p^m - 1)/n} has order exactly n.
    pub fn primitive_nth_root(&self, n: u64) -> Result<FieldElement> {
        let group = &self.0.order - 1u32;
        if n == 0 || (&group % n) != BigUint::ZERO {
            return Err(Error::NoRootOfUnity {
                p: self.0.p,
                m: self.0.m,
                n,
            });
        }
        let cofactor = group / n;
        if self.0.group_primes.is_some() {
            return Ok(self.pow_big(&self.primitive_element()?, &cofactor));
        }
        let one = self.one();
        let n_primes = factorize(n);
        Ok(self
            .lexicographic()
            .map(|cand| self.pow_big(&cand, &cofactor))
            .find(|b| {
                n_primes
                    .iter()
                    .all(|&(r, _)| self.pow(b, (n / r) as u128) != one)
            })
            .expect("the cyclic group has an element of order n"))
    }

    /// Horner evaluation of a base-field polynomial at an element.
    pub fn eval(&self, f: &Poly, x: &FieldElement) -> Result<FieldElement> {
        if f.p() != self.0.p {
            return Err(Error::FieldMismatch {
                left: f.p(),
                right: self.0.p,
            });
        }
        let mut acc = self.zero();
        for &c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc.0[0] = (acc.0[0] + c) % self.0.p;
        }
        Ok(acc)
    }
}
