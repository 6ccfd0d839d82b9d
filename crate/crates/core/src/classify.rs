//! The classifier: decides from a coefficient rule (or from a fitted
//! recursion) whether the family generated by `F(xz - alpha z^2)` is
//! orthogonal, and names it.
//!
//! Only three outcomes are possible when the answer is yes: rescaled
//! ultraspherical (`b > 0`, `lambda = a/b > -1/2`, `lambda != 0`), rescaled
//! Chebyshev of the first kind (`a = 0`, `b > 0`), or rescaled Hermite
//! (`b = 0`, `a > 0`). Everything is decided over exact rationals; rejections
//! come back as structured [`Verdict::Rejected`] values, and `Err` is
//! reserved for malformed input.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{int, rat, Rational};
use crate::favard::Recursion;
use crate::genfun::{coeffs_from_rule, CoeffRule, GenFunError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("classification needs order >= {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("recursion needs at least {need} omegas, got {got}")]
    RecursionTooShort { need: usize, got: usize },
    #[error("degenerate parameter pair: omega_{0} has a zero denominator")]
    DegenerateParameters(usize),
    #[error(transparent)]
    Rule(#[from] GenFunError),
}

/// Structured reasons a coefficient rule or recursion fails to define an
/// orthogonal family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// `c_n = 0` makes `P_n` undefined.
    ZeroCoefficient(usize),
    /// `n d_n` is not linear in `n`: first violated index.
    NonlinearDn(usize),
    /// `omega_n <= 0` (or fails the branch's omega law) at this index.
    NonpositiveOmega(usize),
    /// A nonzero `beta_n`: the recursion cannot come from `F(xz - alpha z^2)`.
    NonzeroBeta(usize),
    /// Classification requires `alpha > 0`.
    AlphaNonpositive,
    /// `lambda = a/b` outside `(-1/2, 0) U (0, inf)`, or undefined.
    LambdaOutOfRange,
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::ZeroCoefficient(n) => write!(f, "zero coefficient c_{n}"),
            RejectReason::NonlinearDn(n) => write!(f, "n*d_n not linear at n = {n}"),
            RejectReason::NonpositiveOmega(n) => write!(f, "omega_{n} not positive"),
            RejectReason::NonzeroBeta(n) => write!(f, "beta_{n} nonzero"),
            RejectReason::AlphaNonpositive => write!(f, "alpha not positive"),
            RejectReason::LambdaOutOfRange => write!(f, "lambda out of range"),
        }
    }
}

/// Classification outcome. Accepted verdicts carry the branch parameters and
/// the squared rescaling factor (`a/(2 alpha)` for Hermite, `b/(4 alpha)`
/// otherwise), kept squared so it stays rational. The free parameter `c`
/// never appears: the shift transform shows it cannot affect the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Hermite {
        a: Rational,
        scale_sq: Rational,
    },
    Ultraspherical {
        lambda: Rational,
        b: Rational,
        scale_sq: Rational,
    },
    ChebyshevT {
        b: Rational,
        scale_sq: Rational,
    },
    Rejected(RejectReason),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        !matches!(self, Verdict::Rejected(_))
    }
}

/// Solves `n d_n = a + b (n - 1)` for `(a, b)` from `n = 2, 3`, where
/// `d_n = c_n / c_{n-1}`, then verifies every further index against the
/// line. Needs at least five coefficients so that one consistency index
/// exists beyond the two solving equations.
pub fn fit_linear_dn(c: &[Rational]) -> Result<(Rational, Rational), RejectReason> {
    assert!(c.len() >= 5, "need at least 5 coefficients, got {}", c.len());
    for (n, cn) in c.iter().enumerate() {
        if cn.is_zero() {
            return Err(RejectReason::ZeroCoefficient(n));
        }
    }
    let d = |n: usize| &c[n] / &c[n - 1];
    // 2 d_2 = a + b, 3 d_3 = a + 2b
    let two_d2 = d(2) * int(2);
    let three_d3 = d(3) * int(3);
    let b = &three_d3 - &two_d2;
    let a = two_d2 - &b;
    for n in 4..c.len() {
        if d(n) * int(n as i64) != &a + &b * int(n as i64 - 1) {
            return Err(RejectReason::NonlinearDn(n));
        }
    }
    Ok((a, b))
}

/// The recursion coefficient forced by a linear ratio rule `n d_n = a + b(n-1)`:
/// `omega_n = alpha n ((n-1) b + 2a) / (((n-1) b + a)(n b + a))`.
///
/// At `n = 1` the closed form has a removable factor of `a`; the resolved
/// value `2 alpha / (a + b)` is used so the `a = 0` branch stays defined.
pub fn omega_formula(
    a: &Rational,
    b: &Rational,
    alpha: &Rational,
    n: usize,
) -> Result<Rational, ClassifyError> {
    assert!(n >= 1, "omega is indexed from 1");
    if n == 1 {
        let denom = a + b;
        if denom.is_zero() {
            return Err(ClassifyError::DegenerateParameters(1));
        }
        return Ok(alpha * int(2) / denom);
    }
    let n_rat = int(n as i64);
    let lower = b * (&n_rat - int(1)) + a;
    let upper = b * &n_rat + a;
    if lower.is_zero() || upper.is_zero() {
        return Err(ClassifyError::DegenerateParameters(n));
    }
    let numer = alpha * &n_rat * (b * (&n_rat - int(1)) + a * int(2));
    Ok(numer / (lower * upper))
}

/// Double-checks every `omega_n` for `1 <= n < order` positive before
/// handing back an accepted verdict.
fn accept_checked(
    verdict: Verdict,
    a: &Rational,
    b: &Rational,
    alpha: &Rational,
    order: usize,
) -> Verdict {
    for n in 1..order {
        match omega_formula(a, b, alpha, n) {
            Ok(w) if w.is_positive() => {}
            Ok(_) => return Verdict::Rejected(RejectReason::NonpositiveOmega(n)),
            Err(_) => return Verdict::Rejected(RejectReason::LambdaOutOfRange),
        }
    }
    verdict
}

/// Dispatch on the recovered `(a, b)` pair.
fn dispatch(a: &Rational, b: &Rational, alpha: &Rational, order: usize) -> Verdict {
    let half = rat(1, 2);
    if b.is_zero() {
        if a.is_positive() {
            let verdict = Verdict::Hermite {
                a: a.clone(),
                scale_sq: a / (alpha * int(2)),
            };
            accept_checked(verdict, a, b, alpha, order)
        } else {
            // omega_n = (2 alpha / a) n < 0 from the start
            Verdict::Rejected(RejectReason::NonpositiveOmega(1))
        }
    } else if a.is_zero() {
        if b.is_positive() {
            let verdict = Verdict::ChebyshevT {
                b: b.clone(),
                scale_sq: b / (alpha * int(4)),
            };
            accept_checked(verdict, a, b, alpha, order)
        } else {
            Verdict::Rejected(RejectReason::NonpositiveOmega(1))
        }
    } else {
        let lambda = a / b;
        if b.is_positive() && lambda > -&half {
            let verdict = Verdict::Ultraspherical {
                lambda,
                b: b.clone(),
                scale_sq: b / (alpha * int(4)),
            };
            accept_checked(verdict, a, b, alpha, order)
        } else if lambda == -half {
            // omega_2 = 0 exactly on the boundary
            Verdict::Rejected(RejectReason::LambdaOutOfRange)
        } else {
            // Exhibit a nonpositive omega within the horizon if one exists;
            // otherwise the lambda constraint is the decisive failure.
            for n in 1..order {
                match omega_formula(a, b, alpha, n) {
                    Ok(w) if !w.is_positive() => {
                        return Verdict::Rejected(RejectReason::NonpositiveOmega(n))
                    }
                    Ok(_) => {}
                    Err(_) => return Verdict::Rejected(RejectReason::LambdaOutOfRange),
                }
            }
            Verdict::Rejected(RejectReason::LambdaOutOfRange)
        }
    }
}

/// Classifies the family generated by `F(xz - alpha z^2)` for the given
/// coefficient rule, certified up to the supplied order (`>= 5`).
///
/// `Abc` and `Named` rules dispatch on their parameters directly; `Explicit`
/// sequences first pass through [`fit_linear_dn`], which recovers `(a, b)` or
/// pins down the index where the sequence leaves the admissible shape.
pub fn classify(
    rule: &CoeffRule,
    alpha: &Rational,
    order: usize,
) -> Result<Verdict, ClassifyError> {
    rule.validate()?;
    if order < 5 {
        return Err(ClassifyError::OrderTooSmall { min: 5, got: order });
    }
    if !alpha.is_positive() {
        return Ok(Verdict::Rejected(RejectReason::AlphaNonpositive));
    }
    let (a, b) = match rule.abc_parameters() {
        Some((a, b, _c)) => (a, b),
        None => {
            let c = coeffs_from_rule(rule, order)?;
            match fit_linear_dn(&c) {
                Ok(ab) => ab,
                Err(reason) => return Ok(Verdict::Rejected(reason)),
            }
        }
    };
    Ok(dispatch(&a, &b, alpha, order))
}

/// The inverse direction: given recursion coefficients and `alpha`, decide
/// whether they are those of a family generated by some `F(xz - alpha z^2)`,
/// and name it. Requires all `beta_n = 0` and all `omega_n > 0`; branches on
/// the scale-free ratio `rho = omega_2 / omega_1` and then verifies every
/// remaining `omega_n` against [`omega_formula`], reporting the first
/// mismatch index as `NonlinearDn`.
pub fn identify_from_recursion(
    rec: &Recursion,
    alpha: &Rational,
) -> Result<Verdict, ClassifyError> {
    if rec.omegas().len() < 3 {
        return Err(ClassifyError::RecursionTooShort {
            need: 3,
            got: rec.omegas().len(),
        });
    }
    if let Some(i) = rec.betas().iter().position(|beta| !beta.is_zero()) {
        return Ok(Verdict::Rejected(RejectReason::NonzeroBeta(i)));
    }
    if !alpha.is_positive() {
        return Ok(Verdict::Rejected(RejectReason::AlphaNonpositive));
    }
    if let Some(n) = rec.first_nonpositive_omega() {
        return Ok(Verdict::Rejected(RejectReason::NonpositiveOmega(n)));
    }

    let omega_1 = rec.omega(1);
    let rho = rec.omega(2) / omega_1;
    let half = rat(1, 2);

    let (a, b, verdict) = if rho == int(2) {
        // omega_n = (2 alpha / a) n
        let a = alpha * int(2) / omega_1;
        let verdict = Verdict::Hermite {
            scale_sq: &a / (alpha * int(2)),
            a: a.clone(),
        };
        (a, Rational::zero(), verdict)
    } else if rho == half {
        // omega_1 = 2 alpha / b, omega_n = alpha / b thereafter
        let b = alpha * int(2) / omega_1;
        let verdict = Verdict::ChebyshevT {
            scale_sq: &b / (alpha * int(4)),
            b: b.clone(),
        };
        (Rational::zero(), b, verdict)
    } else {
        // rho = (1 + 2 lambda) / (2 + lambda), inverted
        if rho > int(2) {
            return Ok(Verdict::Rejected(RejectReason::LambdaOutOfRange));
        }
        let lambda = (&rho * int(2) - int(1)) / (int(2) - &rho);
        if lambda <= -half {
            return Ok(Verdict::Rejected(RejectReason::LambdaOutOfRange));
        }
        // omega_1 = (alpha / b) 2 / (1 + lambda)
        let b = alpha * int(2) / (omega_1 * (&lambda + int(1)));
        let a = &lambda * &b;
        let verdict = Verdict::Ultraspherical {
            scale_sq: &b / (alpha * int(4)),
            lambda,
            b: b.clone(),
        };
        (a, b, verdict)
    };

    for n in 1..=rec.omegas().len() {
        let expected = match omega_formula(&a, &b, alpha, n) {
            Ok(w) => w,
            Err(_) => return Ok(Verdict::Rejected(RejectReason::LambdaOutOfRange)),
        };
        if rec.omega(n) != &expected {
            return Ok(Verdict::Rejected(RejectReason::NonlinearDn(n)));
        }
    }
    Ok(verdict)
}
