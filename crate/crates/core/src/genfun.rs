//! Coefficient rules for the outer series `F`, expansion of `F(xz - alpha z^2)`
//! into a monic polynomial family, the shift transform on rules, and
//! independent closed-form series for cross-checking the coefficient rules.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{substitute_quadratic, PolyX, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFunError {
    #[error("invalid coefficient rule: {0}")]
    InvalidRule(String),
    #[error("explicit rule supplies {got} coefficients but order {order} needs {need}")]
    ExplicitTooShort { order: usize, need: usize, got: usize },
    #[error("c_{0} = 0, so P_{0} is undefined")]
    ZeroCoefficient(usize),
    #[error("shift factor must be nonzero")]
    ZeroShift,
    #[error("alpha must be nonzero for expansion")]
    ZeroAlpha,
    #[error("expansion order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("family member {0} is not monic of degree {0}")]
    NotMonic(usize),
    #[error("family must start with P_0 = 1")]
    BadConstantTerm,
}

/// Sugar for the three canonical series shapes. Each desugars to an `Abc`
/// rule: `exp` to `(a, 0, a)`, `geometric` to `(b, b, b)`, `log` to `(0, b, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedRule {
    /// `F(z) = e^(a z)`
    Exp { a: Rational },
    /// `F(z) = 1/(1 - b z)`
    Geometric { b: Rational },
    /// `F(z) = 1 + ln(1/(1 - b z))` scaled so that `c_1 = b`
    Log { b: Rational },
}

impl NamedRule {
    pub fn desugar(&self) -> (Rational, Rational, Rational) {
        match self {
            NamedRule::Exp { a } => (a.clone(), Rational::zero(), a.clone()),
            NamedRule::Geometric { b } => (b.clone(), b.clone(), b.clone()),
            NamedRule::Log { b } => (Rational::zero(), b.clone(), b.clone()),
        }
    }
}

/// A rule producing the coefficient sequence `c_0 = 1, c_1, c_2, ...` of the
/// outer series `F(z) = sum c_n z^n`.
///
/// The `Abc` form encodes `c_1 = c` and `c_n = ((a + (n-1) b) / n) c_{n-1}`;
/// `Explicit` carries an arbitrary sequence (useful for negative tests);
/// `Named` is sugar for the three canonical shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffRule {
    Abc {
        a: Rational,
        b: Rational,
        c: Rational,
    },
    Explicit(Vec<Rational>),
    Named(NamedRule),
}

impl CoeffRule {
    pub fn abc(a: Rational, b: Rational, c: Rational) -> Self {
        CoeffRule::Abc { a, b, c }
    }

    pub fn validate(&self) -> Result<(), GenFunError> {
        match self {
            CoeffRule::Abc { a, b, c } => {
                if c.is_zero() {
                    return Err(GenFunError::InvalidRule("c must be nonzero".into()));
                }
                if a.is_zero() && b.is_zero() {
                    return Err(GenFunError::InvalidRule(
                        "a and b cannot both be zero".into(),
                    ));
                }
                Ok(())
            }
            CoeffRule::Explicit(values) => {
                if values.first().is_none_or(|v| !v.is_one()) {
                    return Err(GenFunError::InvalidRule(
                        "explicit rule must start with c_0 = 1".into(),
                    ));
                }
                Ok(())
            }
            CoeffRule::Named(named) => {
                let param_zero = match named {
                    NamedRule::Exp { a } => a.is_zero(),
                    NamedRule::Geometric { b } | NamedRule::Log { b } => b.is_zero(),
                };
                if param_zero {
                    Err(GenFunError::InvalidRule(
                        "named rule parameter must be nonzero".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The `(a, b, c)` triple when the rule is structurally an `Abc` rule
    /// (directly or via `Named` sugar); `None` for `Explicit`.
    pub fn abc_parameters(&self) -> Option<(Rational, Rational, Rational)> {
        match self {
            CoeffRule::Abc { a, b, c } => Some((a.clone(), b.clone(), c.clone())),
            CoeffRule::Named(named) => Some(named.desugar()),
            CoeffRule::Explicit(_) => None,
        }
    }
}

/// A generating-function request: coefficient rule, the quadratic parameter
/// `alpha`, and the truncation order. `alpha` may be negative here; whether it
/// admits an orthogonal family is the classifier's concern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFSpec {
    rule: CoeffRule,
    alpha: Rational,
    order: usize,
}

impl GFSpec {
    pub fn new(rule: CoeffRule, alpha: Rational, order: usize) -> Result<Self, GenFunError> {
        rule.validate()?;
        if alpha.is_zero() {
            return Err(GenFunError::ZeroAlpha);
        }
        if order < 2 {
            return Err(GenFunError::OrderTooSmall(order));
        }
        Ok(GFSpec { rule, alpha, order })
    }

    pub fn rule(&self) -> &CoeffRule {
        &self.rule
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Monic polynomials `P_0..P_N` with `P_0 = 1` and `deg P_n = n` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicFamily {
    polys: Vec<PolyX>,
}

impl MonicFamily {
    pub fn new(polys: Vec<PolyX>) -> Result<Self, GenFunError> {
        if polys.first() != Some(&PolyX::one()) {
            return Err(GenFunError::BadConstantTerm);
        }
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) || !p.leading().is_some_and(One::is_one) {
                return Err(GenFunError::NotMonic(n));
            }
        }
        Ok(MonicFamily { polys })
    }

    /// Highest degree present, i.e. `len - 1`.
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &PolyX {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[PolyX] {
        &self.polys
    }

    /// The family truncated to `P_0..P_order`.
    pub fn truncate(&self, order: usize) -> MonicFamily {
        assert!(order < self.polys.len(), "truncation past family length");
        MonicFamily {
            polys: self.polys[..=order].to_vec(),
        }
    }
}

/// Materializes `c_0..c_n_max` from a rule. The result always has `c_0 = 1`.
pub fn coeffs_from_rule(rule: &CoeffRule, n_max: usize) -> Result<Vec<Rational>, GenFunError> {
    rule.validate()?;
    match rule {
        CoeffRule::Explicit(values) => {
            if values.len() < n_max + 1 {
                return Err(GenFunError::ExplicitTooShort {
                    order: n_max,
                    need: n_max + 1,
                    got: values.len(),
                });
            }
            Ok(values[..=n_max].to_vec())
        }
        _ => {
            let (a, b, c) = rule.abc_parameters().expect("non-explicit rule");
            let mut out = Vec::with_capacity(n_max + 1);
            out.push(Rational::one());
            if n_max >= 1 {
                out.push(c);
            }
            for n in 2..=n_max {
                let factor = (&a + &b * crate::exact::int(n as i64 - 1)) / crate::exact::int(n as i64);
                let next = &out[n - 1] * factor;
                out.push(next);
            }
            Ok(out)
        }
    }
}

/// Expands `F(xz - alpha z^2)` and divides the coefficient of `z^n` by `c_n`,
/// yielding the monic family of the generating-function identity. Fails with
/// `ZeroCoefficient(n)` when some `c_n = 0` makes `P_n` undefined.
pub fn expand(spec: &GFSpec) -> Result<MonicFamily, GenFunError> {
    let order = spec.order();
    let c = coeffs_from_rule(spec.rule(), order)?;
    for (n, cn) in c.iter().enumerate().skip(1) {
        if cn.is_zero() {
            return Err(GenFunError::ZeroCoefficient(n));
        }
    }
    let series = substitute_quadratic(&c, spec.alpha(), order);
    let polys = series
        .coeffs()
        .iter()
        .zip(&c)
        .map(|(poly, cn)| poly.div_scalar(cn))
        .collect();
    MonicFamily::new(polys)
}

/// The shift transform `F -> 1 + C (F - 1)`, i.e. `c_n -> C c_n` for `n >= 1`.
/// It rescales the outer series without changing the polynomial family.
pub fn shift_rule(rule: &CoeffRule, shift: &Rational) -> Result<CoeffRule, GenFunError> {
    if shift.is_zero() {
        return Err(GenFunError::ZeroShift);
    }
    rule.validate()?;
    Ok(match rule {
        CoeffRule::Abc { a, b, c } => CoeffRule::Abc {
            a: a.clone(),
            b: b.clone(),
            c: c * shift,
        },
        CoeffRule::Named(named) => {
            let (a, b, c) = named.desugar();
            CoeffRule::Abc { a, b, c: &c * shift }
        }
        CoeffRule::Explicit(values) => CoeffRule::Explicit(
            values
                .iter()
                .enumerate()
                .map(|(n, v)| if n == 0 { v.clone() } else { v * shift })
                .collect(),
        ),
    })
}

/// Taylor coefficients of the closed forms
/// `1 + (c/a)((1 - bz)^(-a/b) - 1)` (both parameters nonzero),
/// `1 + (c/b) ln(1/(1 - bz))` (`a = 0`), and
/// `1 + (c/a)(e^(az) - 1)` (`b = 0`),
/// each computed through its own series term recurrence. This is an
/// independent route to the same sequence as [`coeffs_from_rule`].
pub fn closed_form_coeffs(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    n_max: usize,
) -> Result<Vec<Rational>, GenFunError> {
    if c.is_zero() {
        return Err(GenFunError::InvalidRule("c must be nonzero".into()));
    }
    if a.is_zero() && b.is_zero() {
        return Err(GenFunError::InvalidRule(
            "a and b cannot both be zero".into(),
        ));
    }
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Rational::one());
    if n_max == 0 {
        return Ok(out);
    }
    if b.is_zero() {
        // Exponential series: u_n = a^n / n!, c_n = (c/a) u_n.
        let mut u = a.clone();
        let scale = c / a;
        for n in 1..=n_max {
            out.push(&scale * &u);
            u = u * a / crate::exact::int(n as i64 + 1);
        }
    } else if a.is_zero() {
        // Logarithmic series: u_n = b^n / n, c_n = (c/b) u_n.
        let mut u = b.clone();
        let scale = c / b;
        for n in 1..=n_max {
            out.push(&scale * &u);
            u = u * b * crate::exact::int(n as i64) / crate::exact::int(n as i64 + 1);
        }
    } else {
        // Binomial series with rational exponent lambda = a/b:
        // u_n = [z^n](1 - bz)^(-lambda) = u_{n-1} * b (lambda + n - 1) / n.
        let lambda = a / b;
        let scale = c / a;
        let mut u = Rational::one();
        for n in 1..=n_max {
            u = u * b * (&lambda + crate::exact::int(n as i64 - 1)) / crate::exact::int(n as i64);
            out.push(&scale * &u);
        }
    }
    Ok(out)
}
