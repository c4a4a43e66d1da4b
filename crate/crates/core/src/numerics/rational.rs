//! Exact rational arithmetic: the coefficient domain for every series
//! identity in the crate, plus factorials, binomials, and Bernoulli numbers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number in lowest terms with positive denominator.
///
/// `num_rational::BigRational` already maintains both invariants on every
/// operation, so it is used directly rather than wrapped.
pub type Rational = num_rational::BigRational;

pub fn rational_from_i64(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Bernoulli number B_n with the B_1 = -1/2 convention, computed exactly by
/// the defining recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0 and memoized.
pub fn bernoulli(n: u32) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut values = cache.lock().expect("bernoulli cache poisoned");
    while values.len() <= n as usize {
        let m = values.len() as u32;
        let mut acc = Rational::zero();
        for (k, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(binomial(m + 1, k as u32)) * b;
            }
        }
        let b_m = -acc / Rational::from(BigInt::from(m as u64 + 1));
        values.push(b_m);
    }
    values[n as usize].clone()
}

/// Exact floor(log10(q)) for a positive rational.
pub(crate) fn floor_log10(q: &Rational) -> i64 {
    assert!(q.is_positive(), "floor_log10 needs a positive argument");
    let num_bits = q.numer().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    // log10(q) is close to (bits(num) - bits(den)) * log10(2); correct the
    // estimate by exact comparison against powers of ten.
    let mut e = (((num_bits - den_bits) as f64) * std::f64::consts::LOG10_2).floor() as i64 - 1;
    let ten = BigInt::from(10u32);
    loop {
        // q >= 10^(e+1) ?
        let next = e + 1;
        let ge_next = if next >= 0 {
            q.numer().abs() >= q.denom() * ten.pow(next as u32)
        } else {
            q.numer().abs() * ten.pow((-next) as u32) >= *q.denom()
        };
        if ge_next {
            e += 1;
        } else {
            let ge_e = if e >= 0 {
                q.numer().abs() >= q.denom() * ten.pow(e as u32)
            } else {
                q.numer().abs() * ten.pow((-e) as u32) >= *q.denom()
            };
            if ge_e {
                return e;
            }
            e -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), rational_from_i64(-1, 2));
        assert_eq!(bernoulli(2), rational_from_i64(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(12), rational_from_i64(-691, 2730));
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(2, 4), BigInt::zero());
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(52, 5), BigInt::from(2598960u64));
    }

    #[test]
    fn floor_log10_exact() {
        assert_eq!(floor_log10(&rational_from_i64(1, 1)), 0);
        assert_eq!(floor_log10(&rational_from_i64(999, 1)), 2);
        assert_eq!(floor_log10(&rational_from_i64(1000, 1)), 3);
        assert_eq!(floor_log10(&rational_from_i64(1, 1000)), -3);
        assert_eq!(floor_log10(&rational_from_i64(999, 1000)), -1);
        assert_eq!(floor_log10(&rational_from_i64(1, 999)), -3);
    }
}
