//! Arbitrary-precision real numbers tied to a precision context.
//!
//! Backed by `astro_float::BigFloat`. Every value carries the bit precision
//! it was created with; arithmetic between values of different precision is a
//! programming error and panics. Conversions to and from decimal strings go
//! through exact big-rational arithmetic so that rendering and parsing are
//! correctly rounded and fully deterministic.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::numerics::rational::{floor_log10, Rational};
use crate::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// An arbitrary-precision binary floating-point number together with the bit
/// precision of the context that produced it.
#[derive(Clone, Debug)]
pub struct Real {
    x: BigFloat,
    bits: u32,
}

pub(crate) fn from_i64(n: i64, bits: u32) -> Real {
    Real {
        x: BigFloat::from_i64(n, bits as usize),
        bits,
    }
}

pub(crate) fn from_u64(n: u64, bits: u32) -> Real {
    Real {
        x: BigFloat::from_u64(n, bits as usize),
        bits,
    }
}

pub(crate) fn from_f64(v: f64, bits: u32) -> Real {
    Real {
        x: BigFloat::from_f64(v, bits as usize),
        bits,
    }
}

pub(crate) fn pi(bits: u32) -> Real {
    Real {
        x: with_consts(|cc| cc.pi(bits as usize, RM)),
        bits,
    }
}

pub(crate) fn ln2(bits: u32) -> Real {
    Real {
        x: with_consts(|cc| cc.ln_2(bits as usize, RM)),
        bits,
    }
}

/// Exact conversion of a big unsigned integer into a `BigFloat`.
fn biguint_to_bigfloat(u: &BigUint) -> BigFloat {
    if u.is_zero() {
        return BigFloat::from_i8(0, astro_float::WORD_BIT_SIZE);
    }
    let bits = u.bits();
    let words = bits.div_ceil(astro_float::WORD_BIT_SIZE as u64);
    let shift = words * astro_float::WORD_BIT_SIZE as u64 - bits;
    let shifted = u << shift;
    let mut digits = shifted.to_u64_digits();
    digits.resize(words as usize, 0);
    BigFloat::from_words(&digits, Sign::Pos, bits as Exponent)
}

pub(crate) fn from_rational(q: &Rational, bits: u32) -> Real {
    if q.is_zero() {
        return from_i64(0, bits);
    }
    let num = biguint_to_bigfloat(q.numer().magnitude());
    let den = biguint_to_bigfloat(q.denom().magnitude());
    let mut x = num.div(&den, bits as usize, RM);
    if q.is_negative() {
        x.inv_sign();
    }
    Real { x, bits }
}

/// Parses a plain decimal string (optional sign, optional fraction, optional
/// `e`/`E` exponent) exactly, then rounds once to `bits`.
pub(crate) fn parse_decimal(s: &str, bits: u32) -> Result<Real> {
    let bad = || Error::InvalidArgument(format!("malformed decimal number `{s}`"));
    let t = s.trim();
    let (mantissa_part, exp_part) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], Some(&t[i + 1..])),
        None => (t, None),
    };
    let exp: i64 = match exp_part {
        Some(e) => e.parse().map_err(|_| bad())?,
        None => 0,
    };
    let (sign, digits_part) = match mantissa_part.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa_part.strip_prefix('+').unwrap_or(mantissa_part)),
    };
    let (int_part, frac_part) = match digits_part.find('.') {
        Some(i) => (&digits_part[..i], &digits_part[i + 1..]),
        None => (digits_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mantissa: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let q = if scale >= 0 {
        Rational::from(mantissa * ten.pow(scale as u32))
    } else {
        Rational::new(mantissa, ten.pow((-scale) as u32))
    };
    Ok(from_rational(&(q * BigInt::from(sign)), bits))
}

impl Real {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative()
    }

    pub fn abs(&self) -> Real {
        let mut x = self.x.clone();
        x.set_sign(Sign::Pos);
        Real { x, bits: self.bits }
    }

    pub fn recip(&self) -> Real {
        Real {
            x: self.x.reciprocal(self.bits as usize, RM),
            bits: self.bits,
        }
    }

    pub fn powi(&self, n: u32) -> Real {
        Real {
            x: self.x.powi(n as usize, self.bits as usize, RM),
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Real {
        Real {
            x: self.x.sqrt(self.bits as usize, RM),
            bits: self.bits,
        }
    }

    pub fn ln(&self) -> Real {
        Real {
            x: with_consts(|cc| self.x.ln(self.bits as usize, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn sin(&self) -> Real {
        Real {
            x: with_consts(|cc| self.x.sin(self.bits as usize, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn cos(&self) -> Real {
        Real {
            x: with_consts(|cc| self.x.cos(self.bits as usize, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn asin(&self) -> Real {
        Real {
            x: with_consts(|cc| self.x.asin(self.bits as usize, RM, cc)),
            bits: self.bits,
        }
    }

    /// Rounds to a different bit precision. Widening keeps the value exact.
    pub fn to_bits(&self, bits: u32) -> Real {
        let mut x = self.x.clone();
        x.set_precision(bits as usize, RM)
            .expect("set_precision on finite value");
        Real { x, bits }
    }

    /// Exact value as a big rational (mantissa times a power of two).
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let (words, _, sign, e, _) = self.x.as_raw_parts().expect("finite value");
        let mut m = BigUint::zero();
        for w in words.iter().rev() {
            m = (m << 64u32) | BigUint::from(*w);
        }
        let shift = e as i64 - 64 * words.len() as i64;
        let num = BigInt::from(m) * if sign == Sign::Neg { -1 } else { 1 };
        if shift >= 0 {
            Rational::from(num << shift as u64)
        } else {
            Rational::new(num, BigInt::from(1u8) << (-shift) as u64)
        }
    }

    /// floor(log10(|self|)); must be nonzero.
    pub fn floor_log10_abs(&self) -> i64 {
        floor_log10(&self.to_rational().abs())
    }

    fn decimal_digits(&self, significant: u32) -> (bool, String, i64) {
        let q = self.to_rational();
        let neg = q.is_negative();
        let q = q.abs();
        let t = floor_log10(&q);
        let ten = BigInt::from(10u32);
        // digits = round_half_even(q * 10^(significant - 1 - t))
        let s = significant as i64 - 1 - t;
        let (num, den) = if s >= 0 {
            (q.numer() * ten.pow(s as u32), q.denom().clone())
        } else {
            (q.numer().clone(), q.denom() * ten.pow((-s) as u32))
        };
        let mut quot = &num / &den;
        let rem = &num % &den;
        let twice: BigInt = &rem * 2;
        let round_up = match twice.cmp(&den) {
            Ordering::Greater => true,
            Ordering::Equal => &quot % 2 != BigInt::zero(),
            Ordering::Less => false,
        };
        if round_up {
            quot += 1;
        }
        let mut t = t;
        let cap = ten.pow(significant);
        if quot == cap {
            quot = ten.pow(significant - 1);
            t += 1;
        }
        let digits = quot.to_string();
        debug_assert_eq!(digits.len(), significant as usize);
        (neg, digits, t)
    }

    /// Correctly rounded scientific notation with `significant` digits,
    /// e.g. `1.20205690e+0`. Used for cache records and reports.
    pub fn to_decimal_sci(&self, significant: u32) -> String {
        assert!(significant >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let (neg, digits, t) = self.decimal_digits(significant);
        let sign = if neg { "-" } else { "" };
        let exp = if t >= 0 {
            format!("e+{t}")
        } else {
            format!("e-{}", -t)
        };
        if digits.len() == 1 {
            format!("{sign}{digits}{exp}")
        } else {
            format!("{sign}{}.{}{exp}", &digits[..1], &digits[1..])
        }
    }

    /// Correctly rounded fixed-point rendering with `frac_digits` digits
    /// after the decimal point. Used by the CLI `eval` output.
    pub fn to_decimal_fixed(&self, frac_digits: u32) -> String {
        let q = self.to_rational();
        let neg = q.is_negative();
        let q = q.abs();
        let ten = BigInt::from(10u32);
        let num = q.numer() * ten.pow(frac_digits);
        let den = q.denom().clone();
        let mut quot = &num / &den;
        let rem = &num % &den;
        let twice: BigInt = &rem * 2;
        let round_up = match twice.cmp(&den) {
            Ordering::Greater => true,
            Ordering::Equal => &quot % 2 != BigInt::zero(),
            Ordering::Less => false,
        };
        if round_up {
            quot += 1;
        }
        let digits = quot.to_string();
        let sign = if neg && !quot.is_zero() { "-" } else { "" };
        if frac_digits == 0 {
            return format!("{sign}{digits}");
        }
        let f = frac_digits as usize;
        if digits.len() <= f {
            format!("{sign}0.{:0>width$}", digits, width = f)
        } else {
            let (int_part, frac_part) = digits.split_at(digits.len() - f);
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    fn cmp_inner(&self, other: &Real) -> Ordering {
        let c = self.x.cmp(&other.x).expect("NaN in Real comparison");
        c.cmp(&0)
    }
}

fn check_bits(a: &Real, b: &Real) {
    assert_eq!(
        a.bits, b.bits,
        "precision context mismatch: {} bits vs {} bits",
        a.bits, b.bits
    );
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $bf:ident) => {
        impl $trait for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                check_bits(self, rhs);
                Real {
                    x: self.x.$bf(&rhs.x, self.bits as usize, RM),
                    bits: self.bits,
                }
            }
        }
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            x: self.x.clone().neg(),
            bits: self.bits,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_inner(other) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_inner(other))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2).ceil() as u32;
        write!(f, "{}", self.to_decimal_sci(digits.max(1)))
    }
}
