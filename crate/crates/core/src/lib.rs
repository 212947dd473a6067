//! Exact cohomology computations on Hilbert schemes of points on a K3
//! surface, and the classification of Lagrangian 4-plane classes in
//! eightfolds of `K3^[4]`-type.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`], [`linalg`], [`series`], [`upoly`]: exact arithmetic.
//! * [`frobenius`]: the Frobenius algebra `H*(K3)[2]`.
//! * [`perm`], [`hilb`]: the Lehn–Sorger algebra `A{S_n}` and its
//!   invariant part `H*(S^[n])`.
//! * [`invariants`]: named invariant classes (δ, θ, W…Z, A…H, c₂, α) and
//!   their product tables.
//! * [`localization`], [`fujiki`]: Bott localization on toric surfaces,
//!   the universal series `A(z)`, `B(z)` and the Fujiki constants.
//! * [`plane`]: the intersection matrix `M(λ)` and the Lagrangian plane
//!   class.
//! * [`diophantine`]: the quartic, its elliptic family, sieves and the
//!   verification of listed curve points.
//! * [`pipeline`], [`report`], [`cli`]: cached end-to-end computation and
//!   the command line surface.
//!
//! Everything is exact; no floating point is used anywhere.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod diophantine;
pub mod frobenius;
pub mod fujiki;
pub mod hilb;
pub mod invariants;
pub mod linalg;
pub mod localization;
pub mod perm;
pub mod pipeline;
pub mod plane;
pub mod rational;
pub mod report;
pub mod selfcheck;
pub mod series;
pub mod upoly;

pub use rational::Q;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("not in span: {0}")]
    NotInSpan(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Fails with [`Error::CheckFailed`] naming `anchor` when `cond` is false.
pub(crate) fn ensure(cond: bool, anchor: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CheckFailed(anchor()))
    }
}
