//! Exact values of the form (rational) * pi^m.

use std::fmt;

use num_traits::One;

use crate::numerics::{PrecisionContext, Rational, Real};

/// An exact closed-form value `coefficient * pi^pi_exponent`, e.g.
/// `pi^4/120` or `3*pi/16`. The coefficient is kept in lowest terms by the
/// rational type itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiPowerValue {
    coefficient: Rational,
    pi_exponent: u32,
}

impl PiPowerValue {
    pub fn new(coefficient: Rational, pi_exponent: u32) -> Self {
        PiPowerValue {
            coefficient,
            pi_exponent,
        }
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn pi_exponent(&self) -> u32 {
        self.pi_exponent
    }

    /// Numeric rendering at context precision.
    pub fn to_real(&self, ctx: &PrecisionContext) -> Real {
        let c = ctx.from_rational(&self.coefficient);
        if self.pi_exponent == 0 {
            return c;
        }
        &c * &ctx.pi().powi(self.pi_exponent)
    }
}

impl fmt::Display for PiPowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exponent {
            0 => write!(f, "{}", self.coefficient),
            1 if self.coefficient.is_one() => write!(f, "pi"),
            1 => write!(f, "({})*pi", self.coefficient),
            m if self.coefficient.is_one() => write!(f, "pi^{m}"),
            m => write!(f, "({})*pi^{m}", self.coefficient),
        }
    }
}
