//! Exact-arithmetic toolkit for polynomial families defined by generating
//! functions with a quadratic argument, `F(xz - alpha z^2)`.
//!
//! The pipeline: a coefficient rule describes the outer series `F`; `genfun`
//! expands the composite series into a monic polynomial family; `favard` fits
//! (or refutes) the three-term recursion that orthogonality demands;
//! `classify` names the family — rescaled ultraspherical, Chebyshev of the
//! first kind, or Hermite are the only possibilities — or explains the
//! rejection; `orthocheck` certifies orthogonality through exact moment
//! sequences and Gram matrices; `families` supplies the classical reference
//! data everything is checked against.
//!
//! All arithmetic is over arbitrary-precision rationals. Every check in this
//! crate is an exact equality; there are no tolerances.

pub mod classify;
pub mod exact;
pub mod families;
pub mod favard;
pub mod genfun;
pub mod orthocheck;
pub mod schema;

pub use classify::{RejectReason, Verdict};
pub use exact::{PolyX, Rational, SeriesZ};
pub use families::FamilyId;
pub use favard::Recursion;
pub use genfun::{CoeffRule, GFSpec, MonicFamily, NamedRule};
pub use orthocheck::MomentSeq;
