//! JSON wire formats. Every rational crosses the boundary as a `"p/q"`
//! string (`"p"` when the denominator is 1), never as floating point, and
//! field order is fixed by the struct declarations so serialized payloads
//! are byte-stable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{RejectReason, Verdict};
use crate::exact::{parse_rational, ExactError, PolyX, Rational};
use crate::families::FamilyId;
use crate::favard::{FavardError, Recursion};
use crate::genfun::{CoeffRule, GFSpec, GenFunError, MonicFamily, NamedRule};
use crate::orthocheck::OrthReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error(transparent)]
    Rational(#[from] ExactError),
    #[error("unknown named rule {0:?}")]
    UnknownNamedRule(String),
    #[error("named rule {name} requires field {field}")]
    MissingRuleField { name: String, field: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family \"ultraspherical\" requires a lambda")]
    MissingLambda,
    #[error(transparent)]
    Rule(#[from] GenFunError),
    #[error(transparent)]
    Recursion(#[from] FavardError),
}

fn rat_string(r: &Rational) -> String {
    r.to_string()
}

fn rat_strings(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(rat_string).collect()
}

fn parse_all(strings: &[String]) -> Result<Vec<Rational>, SchemaError> {
    strings
        .iter()
        .map(|s| parse_rational(s).map_err(SchemaError::from))
        .collect()
}

/// Coefficient rule: `{"kind": "abc", "a": ..}`, `{"kind": "explicit",
/// "values": [..]}`, or `{"kind": "named", "name": "exp"|"geometric"|"log",
/// "a"/"b": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleWire {
    Abc {
        a: String,
        b: String,
        c: String,
    },
    Explicit {
        values: Vec<String>,
    },
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<String>,
    },
}

impl From<&CoeffRule> for RuleWire {
    fn from(rule: &CoeffRule) -> Self {
        match rule {
            CoeffRule::Abc { a, b, c } => RuleWire::Abc {
                a: rat_string(a),
                b: rat_string(b),
                c: rat_string(c),
            },
            CoeffRule::Explicit(values) => RuleWire::Explicit {
                values: rat_strings(values),
            },
            CoeffRule::Named(named) => match named {
                NamedRule::Exp { a } => RuleWire::Named {
                    name: "exp".into(),
                    a: Some(rat_string(a)),
                    b: None,
                },
                NamedRule::Geometric { b } => RuleWire::Named {
                    name: "geometric".into(),
                    a: None,
                    b: Some(rat_string(b)),
                },
                NamedRule::Log { b } => RuleWire::Named {
                    name: "log".into(),
                    a: None,
                    b: Some(rat_string(b)),
                },
            },
        }
    }
}

impl TryFrom<&RuleWire> for CoeffRule {
    type Error = SchemaError;

    fn try_from(wire: &RuleWire) -> Result<Self, SchemaError> {
        let rule = match wire {
            RuleWire::Abc { a, b, c } => CoeffRule::Abc {
                a: parse_rational(a)?,
                b: parse_rational(b)?,
                c: parse_rational(c)?,
            },
            RuleWire::Explicit { values } => CoeffRule::Explicit(parse_all(values)?),
            RuleWire::Named { name, a, b } => {
                let need = |field: &Option<String>, key: &str| {
                    field
                        .as_deref()
                        .ok_or_else(|| SchemaError::MissingRuleField {
                            name: name.clone(),
                            field: key.into(),
                        })
                        .and_then(|s| parse_rational(s).map_err(SchemaError::from))
                };
                match name.as_str() {
                    "exp" => CoeffRule::Named(NamedRule::Exp { a: need(a, "a")? }),
                    "geometric" => CoeffRule::Named(NamedRule::Geometric { b: need(b, "b")? }),
                    "log" => CoeffRule::Named(NamedRule::Log { b: need(b, "b")? }),
                    other => return Err(SchemaError::UnknownNamedRule(other.into())),
                }
            }
        };
        rule.validate()?;
        Ok(rule)
    }
}

/// Generating-function request: `{"alpha": "1/2", "order": 12, "rule": {..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFSpecWire {
    pub alpha: String,
    pub order: usize,
    pub rule: RuleWire,
}

impl From<&GFSpec> for GFSpecWire {
    fn from(spec: &GFSpec) -> Self {
        GFSpecWire {
            alpha: rat_string(spec.alpha()),
            order: spec.order(),
            rule: RuleWire::from(spec.rule()),
        }
    }
}

impl TryFrom<&GFSpecWire> for GFSpec {
    type Error = SchemaError;

    fn try_from(wire: &GFSpecWire) -> Result<Self, SchemaError> {
        let rule = CoeffRule::try_from(&wire.rule)?;
        Ok(GFSpec::new(rule, parse_rational(&wire.alpha)?, wire.order)?)
    }
}

/// Recursion coefficients: `{"betas": ["0", ..], "omegas": ["1", ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionWire {
    pub betas: Vec<String>,
    pub omegas: Vec<String>,
}

impl From<&Recursion> for RecursionWire {
    fn from(rec: &Recursion) -> Self {
        RecursionWire {
            betas: rat_strings(rec.betas()),
            omegas: rat_strings(rec.omegas()),
        }
    }
}

impl TryFrom<&RecursionWire> for Recursion {
    type Error = SchemaError;

    fn try_from(wire: &RecursionWire) -> Result<Self, SchemaError> {
        Ok(Recursion::new(
            parse_all(&wire.betas)?,
            parse_all(&wire.omegas)?,
        )?)
    }
}

/// Monic family as produced by `expand`: `{"order": N, "polys": [[..], ..]}`
/// where each polynomial is its ascending-degree coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPolysWire {
    pub order: usize,
    pub polys: Vec<Vec<String>>,
}

impl From<&MonicFamily> for FamilyPolysWire {
    fn from(family: &MonicFamily) -> Self {
        FamilyPolysWire {
            order: family.order(),
            polys: family
                .polys()
                .iter()
                .map(|p| rat_strings(p.coeffs()))
                .collect(),
        }
    }
}

impl TryFrom<&FamilyPolysWire> for MonicFamily {
    type Error = SchemaError;

    fn try_from(wire: &FamilyPolysWire) -> Result<Self, SchemaError> {
        let polys = wire
            .polys
            .iter()
            .map(|coeffs| Ok(PolyX::from_coeffs(parse_all(coeffs)?)))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        Ok(MonicFamily::new(polys)?)
    }
}

fn reason_parts(reason: &RejectReason) -> (&'static str, Option<usize>) {
    match reason {
        RejectReason::ZeroCoefficient(n) => ("zero_coefficient", Some(*n)),
        RejectReason::NonlinearDn(n) => ("nonlinear_dn", Some(*n)),
        RejectReason::NonpositiveOmega(n) => ("nonpositive_omega", Some(*n)),
        RejectReason::NonzeroBeta(n) => ("nonzero_beta", Some(*n)),
        RejectReason::AlphaNonpositive => ("alpha_nonpositive", None),
        RejectReason::LambdaOutOfRange => ("lambda_out_of_range", None),
    }
}

/// Classification verdict, e.g. `{"family":"ultraspherical","lambda":"1/2",
/// "b":"1","scale_sq":"1"}` or `{"family":"rejected","reason":"nonlinear_dn",
/// "index":4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictWire {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale_sq: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

impl From<&Verdict> for VerdictWire {
    fn from(verdict: &Verdict) -> Self {
        let empty = VerdictWire {
            family: String::new(),
            a: None,
            lambda: None,
            b: None,
            scale_sq: None,
            reason: None,
            index: None,
        };
        match verdict {
            Verdict::Hermite { a, scale_sq } => VerdictWire {
                family: "hermite".into(),
                a: Some(rat_string(a)),
                scale_sq: Some(rat_string(scale_sq)),
                ..empty
            },
            Verdict::Ultraspherical {
                lambda,
                b,
                scale_sq,
            } => VerdictWire {
                family: "ultraspherical".into(),
                lambda: Some(rat_string(lambda)),
                b: Some(rat_string(b)),
                scale_sq: Some(rat_string(scale_sq)),
                ..empty
            },
            Verdict::ChebyshevT { b, scale_sq } => VerdictWire {
                family: "chebyshev_t".into(),
                b: Some(rat_string(b)),
                scale_sq: Some(rat_string(scale_sq)),
                ..empty
            },
            Verdict::Rejected(reason) => {
                let (tag, index) = reason_parts(reason);
                VerdictWire {
                    family: "rejected".into(),
                    reason: Some(tag.into()),
                    index,
                    ..empty
                }
            }
        }
    }
}

impl TryFrom<&VerdictWire> for Verdict {
    type Error = SchemaError;

    fn try_from(wire: &VerdictWire) -> Result<Self, SchemaError> {
        let field = |value: &Option<String>, key: &str| {
            value
                .as_deref()
                .ok_or_else(|| SchemaError::MissingRuleField {
                    name: wire.family.clone(),
                    field: key.into(),
                })
                .and_then(|s| parse_rational(s).map_err(SchemaError::from))
        };
        match wire.family.as_str() {
            "hermite" => Ok(Verdict::Hermite {
                a: field(&wire.a, "a")?,
                scale_sq: field(&wire.scale_sq, "scale_sq")?,
            }),
            "ultraspherical" => Ok(Verdict::Ultraspherical {
                lambda: field(&wire.lambda, "lambda")?,
                b: field(&wire.b, "b")?,
                scale_sq: field(&wire.scale_sq, "scale_sq")?,
            }),
            "chebyshev_t" => Ok(Verdict::ChebyshevT {
                b: field(&wire.b, "b")?,
                scale_sq: field(&wire.scale_sq, "scale_sq")?,
            }),
            "rejected" => {
                let tag = wire.reason.as_deref().unwrap_or_default();
                let index = wire.index;
                let need_index = || {
                    index.ok_or_else(|| SchemaError::MissingRuleField {
                        name: "rejected".into(),
                        field: "index".into(),
                    })
                };
                let reason = match tag {
                    "zero_coefficient" => RejectReason::ZeroCoefficient(need_index()?),
                    "nonlinear_dn" => RejectReason::NonlinearDn(need_index()?),
                    "nonpositive_omega" => RejectReason::NonpositiveOmega(need_index()?),
                    "nonzero_beta" => RejectReason::NonzeroBeta(need_index()?),
                    "alpha_nonpositive" => RejectReason::AlphaNonpositive,
                    "lambda_out_of_range" => RejectReason::LambdaOutOfRange,
                    other => return Err(SchemaError::UnknownNamedRule(other.into())),
                };
                Ok(Verdict::Rejected(reason))
            }
            other => Err(SchemaError::UnknownFamily(other.into())),
        }
    }
}

/// Orthogonality report: `{"pass":true,"order":8,"diagonal":[..]}` or
/// `{"pass":false,"first_failure":[0,2],"value":"1"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportWire {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl From<&OrthReport> for ReportWire {
    fn from(report: &OrthReport) -> Self {
        if report.pass {
            ReportWire {
                pass: true,
                order: Some(report.order),
                diagonal: Some(rat_strings(&report.diagonal)),
                first_failure: None,
                value: None,
            }
        } else {
            ReportWire {
                pass: false,
                order: None,
                diagonal: None,
                first_failure: report.first_failure,
                value: report.value.as_ref().map(rat_string),
            }
        }
    }
}

/// Family identifier: `{"family": "ultraspherical", "lambda": "3/2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyIdWire {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

impl From<&FamilyId> for FamilyIdWire {
    fn from(id: &FamilyId) -> Self {
        let (family, lambda) = match id {
            FamilyId::Hermite => ("hermite", None),
            FamilyId::Charlier => ("charlier", None),
            FamilyId::Legendre => ("legendre", None),
            FamilyId::Ultraspherical { lambda } => ("ultraspherical", Some(rat_string(lambda))),
            FamilyId::ChebyshevT => ("chebyshev_t", None),
            FamilyId::ChebyshevU => ("chebyshev_u", None),
        };
        FamilyIdWire {
            family: family.into(),
            lambda,
        }
    }
}

impl TryFrom<&FamilyIdWire> for FamilyId {
    type Error = SchemaError;

    fn try_from(wire: &FamilyIdWire) -> Result<Self, SchemaError> {
        match wire.family.as_str() {
            "hermite" => Ok(FamilyId::Hermite),
            "charlier" => Ok(FamilyId::Charlier),
            "legendre" => Ok(FamilyId::Legendre),
            "ultraspherical" => {
                let lambda = wire.lambda.as_deref().ok_or(SchemaError::MissingLambda)?;
                Ok(FamilyId::Ultraspherical {
                    lambda: parse_rational(lambda)?,
                })
            }
            "chebyshev_t" => Ok(FamilyId::ChebyshevT),
            "chebyshev_u" => Ok(FamilyId::ChebyshevU),
            other => Err(SchemaError::UnknownFamily(other.into())),
        }
    }
}

/// Reference-table payload: recursion, polynomials, and moments of a named
/// family at one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableWire {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub order: usize,
    pub betas: Vec<String>,
    pub omegas: Vec<String>,
    pub polys: Vec<Vec<String>>,
    pub moments: Vec<String>,
}

/// Moment list helper for payload assembly.
pub fn moment_strings(moments: &[Rational]) -> Vec<String> {
    rat_strings(moments)
}
