//! Arbitrary-precision evaluation and cross-verification of multiple zeta
//! values, multiple t-values, and multiple Hurwitz zeta values.
//!
//! Everything of interest here is an equality between two independently
//! computable quantities: a nested sum, a rational zeta series built on the
//! cotangent expansion, a closed form in powers of pi and odd zeta values, a
//! Clausen-function expression, or an exact power-series coefficient. The
//! crate provides each route separately and a verification layer that
//! evaluates both sides of every registered identity to a requested number of
//! decimal digits and reports how many digits agree.
//!
//! Module map:
//!
//! * [`numerics`] — precision contexts, the arbitrary-precision [`Real`]
//!   type, exact rationals, Bernoulli numbers, integer zeta and Dirichlet
//!   beta values, and the persistent constant cache.
//! * [`oracle`] — ground truth by direct nested summation with certified
//!   tail bounds.
//! * [`series`] — exact rational power series: arcsin powers, elementary
//!   symmetric sums, Wallis integrals, truncated pFq evaluation.
//! * [`zeta_series`] — rational zeta series with the `zeta(2n)/4^n`
//!   coefficient: the cotangent expansion, the single- and double-factor
//!   closed forms, and both conjectured multi-factor extensions.
//! * [`clausen`] — Clausen functions, their special values, and the closed
//!   form for the cotangent moment integral, with a quadrature cross-check.
//! * [`quadrature`] — composite Gauss-Legendre integration at context
//!   precision.
//! * [`identities`] — Zagier coefficients, closed forms, the dimension-bound
//!   recurrence, and the verification catalog.

pub mod clausen;
pub mod identities;
pub mod numerics;
pub mod oracle;
pub mod quadrature;
pub mod series;
pub mod zeta_series;

pub use identities::{run_verification, VerificationReport, VerificationStatus};
pub use numerics::{constants, ConstantCache, PiPowerValue, PrecisionContext, Rational, Real};
pub use oracle::{Composition, ShiftVector};
pub use series::PowerSeries;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A summation or quadrature could not certify the requested accuracy
    /// within its term budget. Never silently returns a wrong answer.
    #[error("accuracy not reached: target {target}, achieved about {achieved} within budget {budget}")]
    AccuracyNotReached {
        target: String,
        achieved: String,
        budget: u64,
    },
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
