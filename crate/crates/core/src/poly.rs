//! Dense univariate polynomials over ℚ with exact arithmetic.
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros, so the zero polynomial is the empty vector and `degree()` of a
//! nonzero polynomial is `coeffs.len() - 1`. Everything the recurrence
//! miner needs is here: ring operations, exact division with remainder,
//! gcd/lcm (gcd runs a primitive polynomial remainder sequence over ℤ to
//! keep intermediate coefficients small), monic normalization, and the
//! x-power stripping used to discard transient factors of minimal
//! polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial x^d.
    pub fn x_power(d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = BigRational::one();
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor). Panics on division by zero.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.coeffs.len();
        let lead_inv = BigRational::one() / divisor.leading();
        let mut quot = vec![BigRational::zero(); rem.len() - dn + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dn - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[i + j] -= t;
            }
            quot[i] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// True iff `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &Poly) -> bool {
        self.divmod(divisor).1.is_zero()
    }

    /// Monic gcd. Runs a primitive polynomial remainder sequence on the
    /// integer-normalized operands so coefficients stay small.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.to_primitive_int();
        let mut b = other.to_primitive_int();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = int_primitive_part(r);
        }
        Poly::from_bigints(&a).monic()
    }

    /// Monic lcm: self·other / gcd.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q.mul(other).monic()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = BigRational::one() / self.leading();
        self.scale(&inv)
    }

    /// Splits off the largest power of x dividing `self`: returns
    /// `(p, e)` with `self = p · x^e` and `p(0) ≠ 0`. The zero polynomial
    /// returns `(0, 0)`.
    pub fn strip_power_of_x(&self) -> (Poly, usize) {
        if self.is_zero() {
            return (Poly::zero(), 0);
        }
        let e = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("trimmed nonzero polynomial has a nonzero coefficient");
        (Poly::from_coeffs(self.coeffs[e..].to_vec()), e)
    }

    /// Integer-normalizes: clears denominators, divides out the content,
    /// and makes the leading coefficient positive. Empty vec for zero.
    fn to_primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &denom_lcm / c.denom())
            .collect();
        int_primitive_part(ints)
    }

    /// Exact integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    /// Renders as the on-disk format: ascending-degree integer
    /// coefficients, comma-separated. Errors if a coefficient is not an
    /// integer. The zero polynomial renders as "0".
    pub fn to_int_line(&self) -> Result<String, CoreError> {
        if self.is_zero() {
            return Ok("0".to_string());
        }
        let ints = self.integer_coeffs().ok_or_else(|| CoreError::GoldenData {
            name: "<output>".into(),
            problem: "polynomial has non-integer coefficients".into(),
        })?;
        Ok(ints
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(","))
    }

    /// Parses the on-disk format produced by [`Poly::to_int_line`].
    pub fn parse_int_line(line: &str) -> Result<Poly, CoreError> {
        let mut coeffs = Vec::new();
        for tok in line.trim().split(',') {
            let tok = tok.trim();
            let c = BigInt::from_str(tok).map_err(|e| CoreError::GoldenData {
                name: "<input>".into(),
                problem: format!("bad coefficient `{tok}`: {e}"),
            })?;
            coeffs.push(c);
        }
        Ok(Poly::from_bigints(&coeffs))
    }
}

/// Content-free copy of an integer polynomial with positive leading
/// coefficient; empty stays empty.
fn int_primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        return p;
    }
    let mut content = BigInt::zero();
    for c in &p {
        content = content.gcd(c);
    }
    if p.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut p {
        *c /= &content;
    }
    p
}

/// Pseudo-remainder of integer polynomials: the remainder of
/// lc(b)^(deg a − deg b + 1)·a by b, which stays in ℤ[x].
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = rem[da].clone();
        for x in rem.iter_mut() {
            *x *= &lead;
        }
        for j in 0..=db {
            rem[da - db + j] -= &c * &b[j];
        }
        while rem.last().map_or(false, |x| x.is_zero()) {
            rem.pop();
        }
        if rem.len() == da + 1 {
            // Leading term must cancel; if we get here the arithmetic is wrong.
            unreachable!("pseudo-remainder failed to reduce degree");
        }
    }
    rem
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trim_and_degree() {
        let p = Poly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(Poly::from_i64s(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), 0);
    }

    #[test]
    fn divmod_roundtrip() {
        let a = Poly::from_i64s(&[3, -2, 0, 7, 1, -5]);
        let b = Poly::from_i64s(&[1, 4, 2]);
        let (q, r) = a.divmod(&b);
        assert!(r.degree() < b.degree() || r.is_zero());
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_shared_factor() {
        // (x−1)(x+1) and (x+1)² share exactly x+1.
        let a = Poly::from_i64s(&[-1, 0, 1]);
        let b = Poly::from_i64s(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_i64s(&[1, 1]));
        // Coprime pair.
        let c = Poly::from_i64s(&[1, 1, 1]);
        let d = Poly::from_i64s(&[-1, 1]);
        assert!(c.gcd(&d).is_one());
    }

    #[test]
    fn lcm_of_factors() {
        let a = Poly::from_i64s(&[-1, 0, 1]); // (x−1)(x+1)
        let b = Poly::from_i64s(&[1, 2, 1]); // (x+1)²
        let l = a.lcm(&b);
        // lcm = (x−1)(x+1)² = x³+x²−x−1
        assert_eq!(l, Poly::from_i64s(&[-1, -1, 1, 1]));
    }

    #[test]
    fn strip_x_power() {
        let p = Poly::from_i64s(&[0, 0, 0, 4, 1]);
        let (stripped, e) = p.strip_power_of_x();
        assert_eq!(e, 3);
        assert_eq!(stripped, Poly::from_i64s(&[4, 1]));
        assert_eq!(Poly::zero().strip_power_of_x(), (Poly::zero(), 0));
    }

    #[test]
    fn int_line_roundtrip() {
        let p = Poly::from_i64s(&[-1, -1, 0, -1, 0, 0, 1]);
        let line = p.to_int_line().unwrap();
        assert_eq!(line, "-1,-1,0,-1,0,0,1");
        assert_eq!(Poly::parse_int_line(&line).unwrap(), p);
    }

    #[test]
    fn cyclotomic_like_identity() {
        // (x−1)(x⁴+x³+x²+x+1)(x⁶−x³−x−1) = x¹¹−x⁸−2x⁶−x⁵+x³+x+1
        let lhs = Poly::from_i64s(&[-1, 1])
            .mul(&Poly::from_i64s(&[1, 1, 1, 1, 1]))
            .mul(&Poly::from_i64s(&[-1, -1, 0, -1, 0, 0, 1]));
        let rhs = Poly::from_i64s(&[1, 1, 0, 1, 0, -1, -2, 0, -1, 0, 0, 1]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monic_normalizes_leading() {
        let p = Poly::from_i64s(&[2, 0, 4]).monic();
        assert!(p.leading().is_one());
        assert_eq!(p.coeff(0), BigRational::new(BigInt::from(1), BigInt::from(2)));
    }
}
