//! Exact rational formal power series and the arcsin-power expansions.
//!
//! Every identity between power series in this crate is checked as exact
//! coefficient equality over the rationals, never in floating point, so a
//! comparison either holds or pinpoints the first differing degree.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numerics::{binomial, factorial, PiPowerValue, PrecisionContext, Rational, Real};
use crate::{Error, Result};

/// Dense polynomial truncation of a power series: coefficient of x^i at
/// index i, for i < order. Arithmetic never reads beyond the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        PowerSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "order must be positive");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, degree: usize) -> &Rational {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Truncated Cauchy product. Both inputs must have the same order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), other.order(), "order mismatch");
        let n = self.order();
        let mut out = PowerSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Integer power by repeated squaring of truncated products.
    pub fn pow(&self, m: u32) -> PowerSeries {
        let mut result = PowerSeries::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<PowerSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "series with zero constant term has no inverse".into(),
            ));
        }
        let n = self.order();
        let c0 = self.coeffs[0].recip();
        let mut out = PowerSeries::zero(n);
        out.coeffs[0] = c0.clone();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out.coeffs[k - j];
                }
            }
            out.coeffs[k] = -acc * &c0;
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), other.order(), "order mismatch");
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Degree of the first differing coefficient, if any.
    pub fn first_mismatch(&self, other: &PowerSeries) -> Option<usize> {
        assert_eq!(self.order(), other.order(), "order mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

/// Taylor series of arcsin x: coefficient of x^(2n+1) is
/// C(2n,n) / (4^n (2n+1)); even coefficients vanish.
pub fn ps_arcsin(order: usize) -> PowerSeries {
    let mut s = PowerSeries::zero(order);
    let mut n = 0u32;
    loop {
        let deg = 2 * n as usize + 1;
        if deg >= order {
            break;
        }
        let den = (BigInt::one() << (2 * n as u64)) * BigInt::from(2 * n as u64 + 1);
        s.coeffs[deg] = Rational::new(binomial(2 * n, n), den);
        n += 1;
    }
    s
}

/// Table of elementary symmetric sums e_j(1, 1/2^2, ..., 1/(n-1)^2) for
/// j <= r_max and n <= n_max: table[j][n]. Built with the recurrence
/// e_j(n) = e_j(n-1) + e_{j-1}(n-1)/(n-1)^2.
fn esym_table(r_max: u32, n_max: u64) -> Vec<Vec<Rational>> {
    let rows = r_max as usize + 1;
    let cols = n_max as usize + 1;
    let mut table = vec![vec![Rational::zero(); cols]; rows];
    for n in 1..cols {
        table[0][n] = Rational::one();
    }
    for j in 1..rows {
        for n in 2..cols {
            let m = (n - 1) as u64;
            let prev = &table[j - 1][n - 1];
            let step = if prev.is_zero() {
                Rational::zero()
            } else {
                prev / Rational::from(BigInt::from(m * m))
            };
            table[j][n] = &table[j][n - 1] + step;
        }
    }
    table
}

/// e_r(1, 1/2^2, ..., 1/(n-1)^2), exactly.
pub fn esym_values(r: u32, n: u64) -> Rational {
    assert!(n >= 1, "n must be positive");
    esym_table(r, n)[r as usize][n as usize].clone()
}

/// Right-hand side of the even-power arcsin expansion:
/// (2r)!/4^r sum_n [4^n/(n^2 C(2n,n))] x^(2n) e_{r-1}(1,...,1/(n-1)^2),
/// which must equal arcsin(x)^(2r) exactly.
pub fn arcsin_even_rhs(r: u32, order: usize) -> PowerSeries {
    assert!(r >= 1);
    let mut s = PowerSeries::zero(order);
    let n_max = (order.saturating_sub(1) / 2) as u64;
    if n_max == 0 {
        return s;
    }
    let table = esym_table(r - 1, n_max);
    let prefactor = Rational::new(factorial(2 * r), BigInt::one() << (2 * r as u64));
    for n in 1..=n_max {
        let inner = &table[(r - 1) as usize][n as usize];
        if inner.is_zero() {
            continue;
        }
        let num = BigInt::one() << (2 * n);
        let den = BigInt::from(n * n) * binomial(2 * n as u32, n as u32);
        s.coeffs[2 * n as usize] = &prefactor * Rational::new(num, den) * inner;
    }
    s
}

/// Odd elementary symmetric sums over squared odd reciprocals:
/// o_j(n) = sum over 0 <= n_1 < ... < n_j < n of prod (2 n_i + 1)^(-2).
fn odd_esym_table(r_max: u32, n_max: u64) -> Vec<Vec<Rational>> {
    let rows = r_max as usize + 1;
    let cols = n_max as usize + 1;
    let mut table = vec![vec![Rational::zero(); cols]; rows];
    for n in 0..cols {
        table[0][n] = Rational::one();
    }
    for j in 1..rows {
        for n in 1..cols {
            let m = 2 * (n as u64 - 1) + 1;
            let prev = &table[j - 1][n - 1];
            let step = if prev.is_zero() {
                Rational::zero()
            } else {
                prev / Rational::from(BigInt::from(m * m))
            };
            table[j][n] = &table[j][n - 1] + step;
        }
    }
    table
}

/// Right-hand side of the odd-power arcsin expansion:
/// (2r+1)! sum_n [C(2n,n)/((2n+1) 4^n)] x^(2n+1) o_r(n),
/// which must equal arcsin(x)^(2r+1) exactly.
pub fn arcsin_odd_rhs(r: u32, order: usize) -> PowerSeries {
    let mut s = PowerSeries::zero(order);
    if order < 2 {
        return s;
    }
    let n_max = ((order - 2) / 2) as u64;
    let table = odd_esym_table(r, n_max);
    let prefactor = Rational::from(factorial(2 * r + 1));
    for n in 0..=n_max {
        let inner = &table[r as usize][n as usize];
        if inner.is_zero() {
            continue;
        }
        let num = binomial(2 * n as u32, n as u32);
        let den = BigInt::from(2 * n + 1) * (BigInt::one() << (2 * n));
        s.coeffs[2 * n as usize + 1] = &prefactor * Rational::new(num, den) * inner;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallisParity {
    Even,
    Odd,
}

/// Wallis integral over [0, pi/2] of sin^m t, with m = 2n (even) or
/// m = 2n+1 (odd), as an exact pi-power value.
pub fn wallis_integral(n: u32, parity: WallisParity) -> PiPowerValue {
    match parity {
        WallisParity::Even => {
            // pi C(2n,n) / 2^(2n+1)
            let den = BigInt::one() << (2 * n as u64 + 1);
            PiPowerValue::new(Rational::new(binomial(2 * n, n), den), 1)
        }
        WallisParity::Odd => {
            // 2^(2n) / ((2n+1) C(2n,n))
            let num = BigInt::one() << (2 * n as u64);
            let den = BigInt::from(2 * n as u64 + 1) * binomial(2 * n, n);
            PiPowerValue::new(Rational::new(num, den), 0)
        }
    }
}

/// Truncated generalized hypergeometric partial sum together with the
/// magnitude of the last added term.
pub struct TruncatedSum {
    pub value: Real,
    pub last_term_abs: Real,
}

/// Partial sum of pFq(upper; lower; x) over `terms` terms.
///
/// Rejects configurations that cannot converge: more than q+1 upper
/// parameters, a non-positive-integer lower parameter, or |x| >= 1.
pub fn pfq_truncated(
    upper: &[Rational],
    lower: &[Rational],
    x: &Real,
    ctx: &PrecisionContext,
    terms: u32,
) -> Result<TruncatedSum> {
    if upper.len() > lower.len() + 1 {
        return Err(Error::InvalidArgument(
            "pFq with p > q+1 diverges for nonzero x".into(),
        ));
    }
    for b in lower {
        if b.is_integer() && !b.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "lower parameter {b} is a non-positive integer"
            )));
        }
    }
    if x.abs() >= ctx.one().to_bits(x.bits()) {
        return Err(Error::InvalidArgument("pFq needs |x| < 1".into()));
    }
    let x = x.to_bits(ctx.bits());
    let mut term = ctx.one();
    let mut value = ctx.zero();
    let mut last = ctx.zero();
    for n in 0..terms as u64 {
        value = &value + &term;
        last = term.abs();
        if term.is_zero() {
            break;
        }
        // term_{n+1} = term_n * prod(a_i + n) / prod(b_j + n) * x / (n + 1)
        let mut ratio = Rational::one();
        for a in upper {
            ratio *= a + Rational::from(BigInt::from(n));
        }
        for b in lower {
            ratio /= b + Rational::from(BigInt::from(n));
        }
        ratio /= Rational::from(BigInt::from(n + 1));
        term = &(&term * &ctx.from_rational(&ratio)) * &x;
    }
    Ok(TruncatedSum {
        value,
        last_term_abs: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational_from_i64;
    use proptest::prelude::*;

    #[test]
    fn arcsin_leading_coefficients() {
        let s = ps_arcsin(8);
        assert_eq!(*s.coeff(1), Rational::one());
        assert_eq!(*s.coeff(2), Rational::zero());
        assert_eq!(*s.coeff(3), rational_from_i64(1, 6));
        assert_eq!(*s.coeff(5), rational_from_i64(3, 40));
        assert_eq!(*s.coeff(7), rational_from_i64(15, 336));
    }

    #[test]
    fn arcsin_squared_has_unit_x2_coefficient() {
        let s2 = ps_arcsin(12).pow(2);
        assert_eq!(*s2.coeff(2), Rational::one());
        // next coefficient of arcsin^2: 2^(2n-1)/(n^2 C(2n,n)) at n=2 -> 8/(4*6) = 1/3
        assert_eq!(*s2.coeff(4), rational_from_i64(1, 3));
    }

    #[test]
    fn arcsin_fourth_power_leading_term() {
        let s4 = ps_arcsin(12).pow(4);
        assert_eq!(*s4.coeff(4), Rational::one());
    }

    #[test]
    fn pow_one_is_identity() {
        let a = ps_arcsin(10);
        assert_eq!(a.pow(1), a);
    }

    #[test]
    fn esym_values_match_direct_expansion() {
        assert_eq!(esym_values(0, 5), Rational::one());
        assert_eq!(esym_values(1, 3), rational_from_i64(5, 4));
        // e_2 over {1, 1/4, 1/9}: 1/4 + 1/9 + 1/36 = 7/18
        assert_eq!(esym_values(2, 4), rational_from_i64(7, 18));
        // empty argument list
        assert_eq!(esym_values(1, 1), Rational::zero());
    }

    #[test]
    fn even_rhs_matches_powers() {
        for r in 1..=3u32 {
            let rhs = arcsin_even_rhs(r, 24);
            let pow = ps_arcsin(24).pow(2 * r);
            assert_eq!(rhs.first_mismatch(&pow), None, "r={r}");
        }
    }

    #[test]
    fn odd_rhs_matches_powers() {
        assert_eq!(arcsin_odd_rhs(0, 25), ps_arcsin(25));
        for r in 1..=2u32 {
            let rhs = arcsin_odd_rhs(r, 25);
            let pow = ps_arcsin(25).pow(2 * r + 1);
            assert_eq!(rhs.first_mismatch(&pow), None, "r={r}");
        }
    }

    #[test]
    fn wallis_values() {
        assert_eq!(
            wallis_integral(0, WallisParity::Even),
            PiPowerValue::new(rational_from_i64(1, 2), 1)
        );
        assert_eq!(
            wallis_integral(0, WallisParity::Odd),
            PiPowerValue::new(rational_from_i64(1, 1), 0)
        );
        assert_eq!(
            wallis_integral(2, WallisParity::Even),
            PiPowerValue::new(rational_from_i64(3, 16), 1)
        );
    }

    #[test]
    fn dimension_series_inverse() {
        // 1/(1 - x^2 - x^3) starts 1, 0, 1, 1, 1, 2, 2, 3, 4
        let x2x3 = PowerSeries::from_coeffs({
            let mut v = vec![Rational::zero(); 9];
            v[2] = Rational::one();
            v[3] = Rational::one();
            v
        });
        let den = PowerSeries::one(9).sub(&x2x3);
        let inv = den.inverse().unwrap();
        let want = [1i64, 0, 1, 1, 1, 2, 2, 3, 4];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(*inv.coeff(k), rational_from_i64(*w, 1), "k={k}");
        }
    }

    #[test]
    fn pfq_examples() {
        let ctx = PrecisionContext::new(20).unwrap();
        // 2F1(1/2, -1/2; 1/2; x^2) at x = 0 is the empty product term.
        let r = pfq_truncated(
            &[rational_from_i64(1, 2), rational_from_i64(-1, 2)],
            &[rational_from_i64(1, 2)],
            &ctx.zero(),
            &ctx,
            10,
        )
        .unwrap();
        assert_eq!(r.value, ctx.one());

        // cos(2 arcsin 0.3) = 1 - 2*0.09 = 0.82 via 2F1(1, -1; 1/2; 0.09)
        let x2 = ctx.parse_decimal("0.09").unwrap();
        let r = pfq_truncated(
            &[rational_from_i64(1, 1), rational_from_i64(-1, 1)],
            &[rational_from_i64(1, 2)],
            &x2,
            &ctx,
            16,
        )
        .unwrap();
        assert!(
            (&r.value - &ctx.parse_decimal("0.82").unwrap()).abs()
                < ctx.parse_decimal("1e-25").unwrap()
        );

        // sin(arcsin x)/x = 1 at lambda = 1: 2F1(1, 0; 1/2; x^2) = 1
        let x2 = ctx.parse_decimal("0.25").unwrap();
        let r = pfq_truncated(
            &[rational_from_i64(1, 1), rational_from_i64(0, 1)],
            &[rational_from_i64(1, 2)],
            &x2,
            &ctx,
            16,
        )
        .unwrap();
        assert_eq!(r.value, ctx.one());
    }

    #[test]
    fn pfq_matches_cos_of_scaled_arcsin() {
        // 2F1(lambda/2, -lambda/2; 1/2; x^2) = cos(lambda arcsin x), checked
        // to 12 digits across a small grid.
        let ctx = PrecisionContext::new(25).unwrap();
        let tol = ctx.parse_decimal("1e-12").unwrap();
        for lambda in 1i64..=3 {
            for x_str in ["0.1", "0.3", "0.5"] {
                let x = ctx.parse_decimal(x_str).unwrap();
                let x2 = &x * &x;
                let sum = pfq_truncated(
                    &[rational_from_i64(lambda, 2), rational_from_i64(-lambda, 2)],
                    &[rational_from_i64(1, 2)],
                    &x2,
                    &ctx,
                    120,
                )
                .unwrap();
                let want = (&ctx.int(lambda) * &x.asin()).cos();
                let diff = (&sum.value - &want).abs();
                assert!(diff <= tol, "lambda={lambda}, x={x_str}: diff {diff}");
                assert!(sum.last_term_abs <= ctx.parse_decimal("1e-12").unwrap());
            }
        }
    }

    #[test]
    fn pfq_rejects_bad_configurations() {
        let ctx = PrecisionContext::new(10).unwrap();
        let half = rational_from_i64(1, 2);
        let x = ctx.parse_decimal("0.5").unwrap();
        // p > q + 1
        assert!(pfq_truncated(
            &[half.clone(), half.clone(), half.clone()],
            &[half.clone()],
            &x,
            &ctx,
            4
        )
        .is_err());
        // non-positive integer lower parameter
        assert!(pfq_truncated(&[half.clone()], &[rational_from_i64(-2, 1)], &x, &ctx, 4).is_err());
        // |x| >= 1
        assert!(pfq_truncated(&[half.clone()], &[half], &ctx.one(), &ctx, 4).is_err());
    }

    proptest! {
        #[test]
        fn mul_commutes(seed_a in prop::collection::vec(-9i64..9, 6), seed_b in prop::collection::vec(-9i64..9, 6)) {
            let a = PowerSeries::from_coeffs(seed_a.iter().map(|&v| rational_from_i64(v, 1)).collect());
            let b = PowerSeries::from_coeffs(seed_b.iter().map(|&v| rational_from_i64(v, 1)).collect());
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn pow_splits_multiplicatively(seed in prop::collection::vec(-5i64..5, 5), m in 0u32..5) {
            let a = PowerSeries::from_coeffs(seed.iter().map(|&v| rational_from_i64(v, 3)).collect());
            prop_assert_eq!(a.pow(m + 1), a.pow(m).mul(&a));
        }

        #[test]
        fn inverse_is_two_sided(c0 in 1i64..9, rest in prop::collection::vec(-9i64..9, 5)) {
            let mut coeffs = vec![rational_from_i64(c0, 1)];
            coeffs.extend(rest.iter().map(|&v| rational_from_i64(v, 2)));
            let a = PowerSeries::from_coeffs(coeffs);
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv), PowerSeries::one(6));
        }
    }
}
