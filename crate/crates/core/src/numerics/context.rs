//! Precision contexts: the single knob every computation hangs off.

use crate::numerics::real::{self, Real};
use crate::numerics::Rational;
use crate::{Error, Result};

/// Default number of guard digits appended to the target precision.
pub const DEFAULT_GUARD_DIGITS: u32 = 10;

/// Working precision for a computation: binary precision in bits, derived
/// from a decimal digit target plus guard digits.
///
/// Immutable once created. Every [`Real`] carries the bit precision of the
/// context that produced it, and arithmetic between values from mismatched
/// contexts panics rather than silently mixing precisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    bits: u32,
    target_digits: u32,
    guard_digits: u32,
}

/// The arithmetic backend requires whole-word precisions; round up so the
/// declared precision always equals the effective mantissa length.
fn round_to_word(bits: u32) -> u32 {
    let w = astro_float::WORD_BIT_SIZE as u32;
    bits.div_ceil(w) * w
}

fn bits_for(decimal_digits: u32) -> u32 {
    round_to_word((decimal_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32)
}

impl PrecisionContext {
    /// Context for `target_digits` decimal digits with the default ten guard
    /// digits. Rejects a zero digit target.
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, DEFAULT_GUARD_DIGITS)
    }

    /// Context with an explicit guard digit count.
    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidArgument(
                "target_digits must be at least 1".into(),
            ));
        }
        Ok(PrecisionContext {
            bits: bits_for(target_digits + guard_digits),
            target_digits,
            guard_digits,
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Same digit target, at least `extra` additional bits of working
    /// precision. Used internally when a summation needs headroom for
    /// accumulation.
    pub(crate) fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            bits: round_to_word(self.bits + extra),
            target_digits: self.target_digits,
            guard_digits: self.guard_digits,
        }
    }

    pub fn zero(&self) -> Real {
        real::from_i64(0, self.bits)
    }

    pub fn one(&self) -> Real {
        real::from_i64(1, self.bits)
    }

    pub fn int(&self, n: i64) -> Real {
        real::from_i64(n, self.bits)
    }

    pub fn uint(&self, n: u64) -> Real {
        real::from_u64(n, self.bits)
    }

    pub fn from_f64(&self, x: f64) -> Real {
        real::from_f64(x, self.bits)
    }

    pub fn from_rational(&self, q: &Rational) -> Real {
        real::from_rational(q, self.bits)
    }

    /// pi at context precision, correctly rounded.
    pub fn pi(&self) -> Real {
        real::pi(self.bits)
    }

    /// log 2 at context precision, correctly rounded.
    pub fn ln2(&self) -> Real {
        real::ln2(self.bits)
    }

    /// Parses a decimal string (`-1.25e-3`, `0.5`, `42`).
    pub fn parse_decimal(&self, s: &str) -> Result<Real> {
        real::parse_decimal(s, self.bits)
    }

    /// 10^(-(target_digits + guard_digits)): the truncation threshold used by
    /// every geometrically convergent series in the crate.
    pub fn series_epsilon(&self) -> Real {
        let one = self.one();
        let ten = self.uint(10).powi(self.target_digits + self.guard_digits);
        &one / &ten
    }
}
