//! Exact arithmetic kernel: arbitrary-precision rationals, dense univariate
//! polynomials over the rationals, and truncated power series in `z` whose
//! coefficients are polynomials in `x`.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so all of this is safe to share across threads. There is no
//! floating point anywhere: equality checks downstream are exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The scalar of every computation: an arbitrary-precision rational kept in
/// canonical form (reduced, positive denominator) by `num-rational`.
pub type Rational = num_rational::BigRational;

/// Errors from the arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("series truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series of order {order} needs {expected} coefficients, got {got}")]
    CoefficientCount {
        order: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid rational {input:?}: {reason}")]
    InvalidRational { input: String, reason: String },
}

/// Shorthand for a rational from an integer pair. Panics on a zero
/// denominator; intended for literals in code and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the exchange format `"p/q"` (or `"p"` when the denominator is 1).
/// The sign goes on the numerator; the result is canonical.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    Rational::from_str(s).map_err(|e| ExactError::InvalidRational {
        input: s.to_owned(),
        reason: e.to_string(),
    })
}

/// Univariate polynomial in `x` with rational coefficients, stored densely in
/// ascending degree order. The highest-index coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyX {
    coeffs: Vec<Rational>,
}

impl PolyX {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros to restore the canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyX::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        PolyX::from_coeffs(vec![value])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        PolyX::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return PolyX::zero();
        }
        PolyX {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division by a nonzero scalar. Panics on zero: callers are
    /// expected to have excluded it.
    pub fn div_scalar(&self, k: &Rational) -> Self {
        assert!(!k.is_zero(), "division of polynomial by zero scalar");
        PolyX {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    /// Multiplication by `x` (degree shift by one).
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { coeffs }
    }

    /// `p(-x)`: negates odd-degree coefficients.
    pub fn reflect(&self) -> Self {
        PolyX {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    }
}

impl Add for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        PolyX::from_coeffs(coeffs)
    }
}

impl Sub for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        PolyX::from_coeffs(coeffs)
    }
}

impl Mul for &PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        // No trailing zero possible: leading product of nonzero leads.
        PolyX { coeffs }
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyX({})", self)
    }
}

/// Canonical text rendering, highest degree first: `x^3 - 3*x`, `x^2 - 1/2`,
/// `0` for the zero polynomial.
impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
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
            let unit = magnitude.is_one();
            match deg {
                0 => write!(f, "{}", magnitude)?,
                1 => {
                    if unit {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{}*x", magnitude)?;
                    }
                }
                _ => {
                    if unit {
                        write!(f, "x^{}", deg)?;
                    } else {
                        write!(f, "{}*x^{}", magnitude, deg)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Power series in `z`, truncated at an explicit order `N`: terms `z^0..z^N`
/// are retained, each with a `PolyX` coefficient. Mixed-order arithmetic is an
/// error rather than a silent re-truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesZ {
    order: usize,
    coeffs: Vec<PolyX>,
}

impl SeriesZ {
    /// Builds a series from exactly `order + 1` coefficients.
    pub fn from_coeffs(order: usize, coeffs: Vec<PolyX>) -> Result<Self, ExactError> {
        if coeffs.len() != order + 1 {
            return Err(ExactError::CoefficientCount {
                order,
                expected: order + 1,
                got: coeffs.len(),
            });
        }
        Ok(SeriesZ { order, coeffs })
    }

    /// The series whose only term is a constant polynomial at `z^0`.
    pub fn constant(order: usize, value: PolyX) -> Self {
        let mut coeffs = vec![PolyX::zero(); order + 1];
        coeffs[0] = value;
        SeriesZ { order, coeffs }
    }

    pub fn one(order: usize) -> Self {
        SeriesZ::constant(order, PolyX::one())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^n`; `n` must be within the truncation order.
    pub fn coeff(&self, n: usize) -> &PolyX {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[PolyX] {
        &self.coeffs
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, rhs: &SeriesZ) -> Result<SeriesZ, ExactError> {
        if self.order != rhs.order {
            return Err(ExactError::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        let mut coeffs = vec![PolyX::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > self.order {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(SeriesZ {
            order: self.order,
            coeffs,
        })
    }

    /// Multiplies by the fixed quadratic `x·z - alpha·z^2`, truncating at the
    /// series order: the coefficient of `z^n` becomes
    /// `x·self[n-1] - alpha·self[n-2]`.
    fn mul_quadratic_arg(&self, alpha: &Rational) -> SeriesZ {
        let mut coeffs = vec![PolyX::zero(); self.order + 1];
        for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let mut term = self.coeffs[n - 1].mul_x();
            if n >= 2 {
                term = &term - &self.coeffs[n - 2].scale(alpha);
            }
            *slot = term;
        }
        SeriesZ {
            order: self.order,
            coeffs,
        }
    }
}

/// Expands `sum_k c[k] (x·z - alpha·z^2)^k` truncated at `z^order`, by Horner
/// evaluation over the series ring: repeated multiplication by the fixed
/// quadratic with running accumulation. No binomial coefficients, no
/// factorials; O(order^3) scalar work.
///
/// Requires `c.len() >= order + 1` and `c[0] = 1`.
pub fn substitute_quadratic(c: &[Rational], alpha: &Rational, order: usize) -> SeriesZ {
    assert!(
        c.len() > order,
        "need {} coefficients for order {}, got {}",
        order + 1,
        order,
        c.len()
    );
    assert!(c[0].is_one(), "coefficient sequence must start with 1");
    let mut acc = SeriesZ::constant(order, PolyX::constant(c[order].clone()));
    for k in (0..order).rev() {
        acc = acc.mul_quadratic_arg(alpha);
        // The quadratic has no z^0 term, so slot 0 is free for the constant.
        acc.coeffs[0] = PolyX::constant(c[k].clone());
    }
    acc
}
