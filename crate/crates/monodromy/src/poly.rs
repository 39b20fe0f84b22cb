//! Exact univariate polynomial arithmetic over the integers and rationals:
//! dense integer polynomials, factored-form parsing and expansion, gcd by
//! modular images certified by exact division, and Yun squarefree
//! decomposition.
//!
//! The central invariant is canonical form: every [`ScaledPoly`] is a
//! rational constant times a primitive integer polynomial with positive
//! leading coefficient, so structural equality coincides with equality in
//! `Q[X]`.

mod gcd;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::CycleType;

pub use gcd::{poly_gcd, subresultant_gcd};
pub use parse::parse_factored;

/// Errors from polynomial parsing and validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("exponent {exponent} exceeds the supported maximum {max}")]
    ExponentTooLarge { exponent: u64, max: u64 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// A dense polynomial with integer coefficients, stored in ascending degree
/// order with no trailing zero coefficient. The zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `c * X^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Ascending coefficients (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::from_coeffs(coeffs)
    }

    /// Horner evaluation at a rational point.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits into `(c, prim)` with `self = c * prim`, `prim` primitive with
    /// positive leading coefficient. The zero polynomial yields
    /// `(0, zero)`.
    pub fn into_primitive(self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), self);
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        let coeffs = self.coeffs.iter().map(|a| a / &c).collect();
        (c, IntPoly { coeffs })
    }

    /// Exact division: returns `self / d` when the division leaves no
    /// remainder over the integers, `None` otherwise.
    pub fn divexact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        let lead = d.leading().unwrap();
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = std::mem::take(&mut rem[k + dn - 1]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().take(dn - 1).enumerate() {
                let prod = dc * &q;
                rem[k + i] -= prod;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::from_coeffs(quot))
        } else {
            None
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{self}]")
    }
}

/// A polynomial in `Q[X]` in canonical split form: a rational constant times
/// a primitive integer polynomial with positive leading coefficient.
///
/// The zero polynomial is `constant = 0`, `primitive = 0`. Structural
/// equality of the two fields is equality in `Q[X]`.
#[derive(Clone, PartialEq, Eq)]
pub struct ScaledPoly {
    constant: BigRational,
    primitive: IntPoly,
}

impl ScaledPoly {
    pub fn zero() -> Self {
        ScaledPoly {
            constant: BigRational::zero(),
            primitive: IntPoly::zero(),
        }
    }

    /// Canonicalizes `c * f`.
    pub fn new(c: BigRational, f: IntPoly) -> Self {
        if c.is_zero() || f.is_zero() {
            return ScaledPoly::zero();
        }
        let (cont, prim) = f.into_primitive();
        ScaledPoly {
            constant: c * BigRational::from_integer(cont),
            primitive: prim,
        }
    }

    pub fn from_int_poly(f: IntPoly) -> Self {
        ScaledPoly::new(BigRational::one(), f)
    }

    pub fn is_zero(&self) -> bool {
        self.primitive.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.primitive.degree()
    }

    /// The rational constant in front of the primitive part.
    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    /// The primitive positive-leading-coefficient integer part.
    pub fn primitive(&self) -> &IntPoly {
        &self.primitive
    }

    /// Leading coefficient as a rational number.
    pub fn leading(&self) -> BigRational {
        match self.primitive.leading() {
            None => BigRational::zero(),
            Some(lc) => &self.constant * BigRational::from_integer(lc.clone()),
        }
    }

    pub fn add(&self, other: &ScaledPoly) -> ScaledPoly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &ScaledPoly) -> ScaledPoly {
        self.combine(other, true)
    }

    fn combine(&self, other: &ScaledPoly, negate: bool) -> ScaledPoly {
        if self.is_zero() {
            let mut r = other.clone();
            if negate {
                r.constant = -r.constant;
            }
            return r;
        }
        if other.is_zero() {
            return self.clone();
        }
        // a1/b1 * P + a2/b2 * Q = (a1*(l/b1)*P + a2*(l/b2)*Q) / l,
        // l = lcm(b1, b2).
        let (a1, b1) = (self.constant.numer(), self.constant.denom());
        let (a2, b2) = (other.constant.numer(), other.constant.denom());
        let l = b1.lcm(b2);
        let s1 = a1 * (&l / b1);
        let mut s2 = a2 * (&l / b2);
        if negate {
            s2 = -s2;
        }
        let sum = self
            .primitive
            .mul_scalar(&s1)
            .add(&other.primitive.mul_scalar(&s2));
        ScaledPoly::new(
            BigRational::new(BigInt::one(), l),
            sum,
        )
    }

    pub fn mul(&self, other: &ScaledPoly) -> ScaledPoly {
        if self.is_zero() || other.is_zero() {
            return ScaledPoly::zero();
        }
        ScaledPoly {
            constant: &self.constant * &other.constant,
            primitive: self.primitive.mul(&other.primitive),
        }
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        &self.constant * self.primitive.evaluate(x)
    }
}

impl fmt::Display for ScaledPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.constant.is_one() {
            write!(f, "{}", self.primitive)
        } else {
            write!(f, "({}) * ({})", self.constant, self.primitive)
        }
    }
}

impl fmt::Debug for ScaledPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaledPoly[{self}]")
    }
}

/// A polynomial kept in the factored form it was written in: a rational
/// constant times a product of integer polynomials raised to powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub constant: BigRational,
    pub factors: Vec<(IntPoly, u32)>,
}

impl FactoredPoly {
    /// Multiplies the factored form out into canonical split form.
    pub fn expand(&self) -> ScaledPoly {
        let mut acc = IntPoly::one();
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        ScaledPoly::new(self.constant.clone(), acc)
    }

    /// Degree of the expanded polynomial (sum over factors), or `None` if
    /// some factor is zero.
    pub fn degree(&self) -> Option<usize> {
        if self.constant.is_zero() {
            return None;
        }
        let mut total = 0usize;
        for (f, e) in &self.factors {
            total += f.degree()? * *e as usize;
        }
        Some(total)
    }
}

/// One squarefree factor of a polynomial together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    /// Primitive, squarefree, positive leading coefficient.
    pub poly: IntPoly,
    pub multiplicity: u32,
}

/// Yun squarefree decomposition: returns `(c, parts)` with
/// `f = c * prod(part.poly ^ part.multiplicity)`, the parts squarefree,
/// pairwise coprime, primitive with positive leading coefficients, and
/// multiplicities strictly increasing.
///
/// Errors on the zero polynomial; a nonzero constant yields `(c, [])`.
pub fn squarefree_decomposition(f: &IntPoly) -> Result<(BigInt, Vec<SquarefreeFactor>), PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (content, p) = f.clone().into_primitive();
    if p.degree() == Some(0) {
        return Ok((content, Vec::new()));
    }
    let mut parts = Vec::new();
    let deriv = p.derivative();
    let g = poly_gcd(&p, &deriv);
    let exact = |a: &IntPoly, b: &IntPoly| -> IntPoly {
        a.divexact(b)
            .expect("squarefree decomposition divisions are exact")
    };
    if g.degree() == Some(0) {
        parts.push(SquarefreeFactor {
            poly: p,
            multiplicity: 1,
        });
        return Ok((content, parts));
    }
    let mut w = exact(&p, &g);
    let mut z = exact(&deriv, &g).sub(&w.derivative());
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let a = poly_gcd(&w, &z);
        if a.degree().unwrap_or(0) > 0 {
            parts.push(SquarefreeFactor {
                poly: a.clone(),
                multiplicity: i,
            });
        }
        w = exact(&w, &a);
        z = exact(&z, &a).sub(&w.derivative());
        i += 1;
    }
    Ok((content, parts))
}

/// The multiset of root multiplicities of `f` (over an algebraic closure),
/// as a partition of `deg f`: each squarefree factor of multiplicity `m`
/// and degree `d` contributes `d` parts equal to `m`.
pub fn multiplicity_multiset(f: &IntPoly) -> Result<CycleType, PolyError> {
    let (_, parts) = squarefree_decomposition(f)?;
    let mut mults = Vec::new();
    for part in &parts {
        let d = part.poly.degree().unwrap_or(0);
        let m = u16::try_from(part.multiplicity).map_err(|_| PolyError::ExponentTooLarge {
            exponent: part.multiplicity as u64,
            max: u16::MAX as u64,
        })?;
        mults.extend(std::iter::repeat(m).take(d));
    }
    // A nonzero constant has no roots and yields the empty partition.
    Ok(CycleType::from_parts(mults))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let a = ip(&[1, 2, 3]); // 3X^2 + 2X + 1
        let b = ip(&[-1, 1]); // X - 1
        assert_eq!(a.add(&b), ip(&[0, 3, 3]));
        assert_eq!(a.sub(&a), IntPoly::zero());
        assert_eq!(a.mul(&b), ip(&[-1, -1, -1, 3]));
        assert_eq!(a.degree(), Some(2));
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(a.derivative(), ip(&[2, 6]));
        assert_eq!(b.pow(2), ip(&[1, -2, 1]));
    }

    #[test]
    fn display_formats_descending() {
        assert_eq!(ip(&[-1, 0, 2]).to_string(), "2*X^2 - 1");
        assert_eq!(ip(&[0, 1]).to_string(), "X");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(ip(&[5]).to_string(), "5");
        assert_eq!(ip(&[1, -1]).to_string(), "-X + 1");
    }

    #[test]
    fn evaluate_rational() {
        let a = ip(&[1, 2, 3]);
        let x = BigRational::new(BigInt::from(1), BigInt::from(2));
        // 3/4 + 1 + 1 = 11/4.
        assert_eq!(
            a.evaluate(&x),
            BigRational::new(BigInt::from(11), BigInt::from(4))
        );
    }

    #[test]
    fn content_and_primitive() {
        let a = ip(&[-6, -12, -18]);
        let (c, p) = a.into_primitive();
        assert_eq!(c, BigInt::from(-6));
        assert_eq!(p, ip(&[1, 2, 3]));
        assert!(p.leading().unwrap() > &BigInt::zero());
        let (c0, p0) = IntPoly::zero().into_primitive();
        assert!(c0.is_zero() && p0.is_zero());
    }

    #[test]
    fn divexact_detects_non_divisibility() {
        let d = ip(&[1, 3]); // 3X + 1
        let q = ip(&[2, 1]); // X + 2
        let f = d.mul(&q);
        assert_eq!(f.divexact(&d), Some(q.clone()));
        assert_eq!(f.divexact(&q), Some(d.clone()));
        assert_eq!(f.add(&IntPoly::one()).divexact(&d), None);
        assert_eq!(ip(&[1, 1]).divexact(&ip(&[0, 0, 1])), None);
        assert_eq!(IntPoly::zero().divexact(&d), Some(IntPoly::zero()));
        // Non-monic exact division.
        let d2 = ip(&[3, 6]);
        let f2 = d2.mul(&ip(&[-5, 7]));
        assert_eq!(f2.divexact(&d2), Some(ip(&[-5, 7])));
    }

    #[test]
    fn scaled_poly_canonical_form() {
        let f = ip(&[-4, 0, -8]); // -8X^2 - 4 = -4 * (2X^2 + 1)
        let s = ScaledPoly::from_int_poly(f);
        assert_eq!(s.constant(), &BigRational::from_integer(BigInt::from(-4)));
        assert_eq!(s.primitive(), &ip(&[1, 0, 2]));
        // add / sub are exact and canonical.
        let a = ScaledPoly::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            ip(&[1, 1]),
        );
        let b = ScaledPoly::new(
            BigRational::new(BigInt::from(1), BigInt::from(3)),
            ip(&[1, 1]),
        );
        let sum = a.add(&b);
        // 1/2 + 1/3 = 5/6 times (X+1).
        assert_eq!(
            sum.constant(),
            &BigRational::new(BigInt::from(5), BigInt::from(6))
        );
        assert_eq!(sum.primitive(), &ip(&[1, 1]));
        assert_eq!(a.sub(&a), ScaledPoly::zero());
        // p = q + r identity style check.
        let q = ScaledPoly::from_int_poly(ip(&[1, 2]));
        let r = ScaledPoly::from_int_poly(ip(&[3, 0, 7]));
        let p = q.add(&r);
        assert_eq!(p.sub(&q), r);
    }

    #[test]
    fn squarefree_decomposition_reconstructs() {
        // f = 6 * (X+1)^2 * (X^2+2)^3
        let f = ip(&[6])
            .mul(&ip(&[1, 1]).pow(2))
            .mul(&ip(&[2, 0, 1]).pow(3));
        let (c, parts) = squarefree_decomposition(&f).unwrap();
        let mut rebuilt = IntPoly::constant(c);
        for part in &parts {
            rebuilt = rebuilt.mul(&part.poly.pow(part.multiplicity));
        }
        assert_eq!(rebuilt, f);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].multiplicity, 2);
        assert_eq!(parts[0].poly, ip(&[1, 1]));
        assert_eq!(parts[1].multiplicity, 3);
        assert_eq!(parts[1].poly, ip(&[2, 0, 1]));
    }

    #[test]
    fn squarefree_decomposition_squarefree_input() {
        let f = ip(&[1, 1]).mul(&ip(&[3, 1]));
        let (c, parts) = squarefree_decomposition(&f).unwrap();
        assert_eq!(c, BigInt::one());
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].multiplicity, 1);
        assert_eq!(parts[0].poly, f);
        // Constants decompose to no parts.
        let (c, parts) = squarefree_decomposition(&ip(&[-7])).unwrap();
        assert_eq!(c, BigInt::from(-7));
        assert!(parts.is_empty());
        assert!(squarefree_decomposition(&IntPoly::zero()).is_err());
    }

    #[test]
    fn multiplicity_multiset_partitions_degree() {
        // (X+1)^8 * (2X^2-8X-1)^8 * (2X^2+1)^4 * (6X^2+4X+1)^8: the
        // degree-52 map's branch data over 1 before the infinite part.
        let f = ip(&[1, 1])
            .pow(8)
            .mul(&ip(&[-1, -8, 2]).pow(8))
            .mul(&ip(&[1, 0, 2]).pow(4))
            .mul(&ip(&[1, 4, 6]).pow(8));
        let m = multiplicity_multiset(&f).unwrap();
        assert_eq!(m.to_string(), "8^5.4^2");
        assert_eq!(m.total(), 48);
    }
}
