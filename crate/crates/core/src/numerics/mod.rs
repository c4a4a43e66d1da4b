//! Arbitrary-precision arithmetic, exact rationals, fundamental constants,
//! and integer zeta / Dirichlet beta values backed by a persistent cache.

mod cache;
mod context;
mod pi_power;
mod rational;
mod real;
mod zeta;

pub use cache::{constants, ConstantCache, CACHE_FORMAT_HEADER};
pub use context::PrecisionContext;
pub use pi_power::PiPowerValue;
pub use rational::{bernoulli, binomial, factorial, rational_from_i64, Rational};
pub use real::Real;
pub use zeta::{beta_dirichlet, zeta_even_exact, zeta_int};

pub(crate) use rational::floor_log10;
pub(crate) use zeta::tail_zeta;
