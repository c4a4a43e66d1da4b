//! Integer zeta values and Dirichlet beta values.
//!
//! Even zeta values come from the exact Bernoulli closed form; odd values
//! from an Euler-Maclaurin accelerated direct sum; beta values from the
//! Cohen-Rodriguez Villegas-Zagier alternating-series acceleration. Results
//! are memoized in the process-wide constant cache keyed by bit precision.

use num_bigint::BigInt;
use num_traits::One;

use crate::numerics::cache::constants;
use crate::numerics::rational::{bernoulli, factorial, rational_from_i64, Rational};
use crate::numerics::{PiPowerValue, PrecisionContext, Real};
use crate::{Error, Result};

/// zeta(2m) = (-1)^(m+1) B_2m (2 pi)^2m / (2 (2m)!) as an exact pi-power
/// value; m = 0 gives zeta(0) = -1/2.
pub fn zeta_even_exact(m: u32) -> PiPowerValue {
    if m == 0 {
        return PiPowerValue::new(rational_from_i64(-1, 2), 0);
    }
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let two_pow = BigInt::one() << (2 * m as u64);
    let coeff = Rational::new(
        BigInt::from(sign) * two_pow * bernoulli(2 * m).numer(),
        BigInt::from(2) * factorial(2 * m) * bernoulli(2 * m).denom(),
    );
    PiPowerValue::new(coeff, 2 * m)
}

/// Rising factorial k (k+1) ... (k+len-1) as an exact integer.
fn rising(k: u32, len: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..len as u64 {
        acc *= k as u64 + i;
    }
    acc
}

/// Euler-Maclaurin tail sum_{m > from_n} (m + a)^(-k) for k >= 2, evaluated
/// at the precision of `eps`. Returns the tail value and a rigorous bound on
/// its error (the magnitude of the first omitted correction term). The
/// returned bound may exceed `eps` if the expansion stalls; callers react by
/// enlarging `from_n`.
pub(crate) fn tail_zeta(k: u32, a: &Rational, from_n: u64, ctx: &PrecisionContext, eps: &Real) -> (Real, Real) {
    assert!(k >= 2, "tail_zeta needs a convergent exponent");
    let x = ctx.from_rational(&(a + Rational::from(BigInt::from(from_n))));
    let inv_x = x.recip();
    let inv_xk = x.powi(k).recip();
    // integral from N to infinity: (N+a)^(1-k) / (k-1)
    let integral = &(&inv_xk * &x) / &ctx.int(k as i64 - 1);
    let half = &inv_xk / &ctx.int(2);
    let mut value = &integral - &half;
    let inv_x2 = &inv_x * &inv_x;
    // first correction term has exponent -(k+1)
    let mut xpow = &inv_xk * &inv_x;
    let mut prev_mag: Option<Real> = None;
    for j in 1..=64u32 {
        let coeff = bernoulli(2 * j) * Rational::new(rising(k, 2 * j - 1), factorial(2 * j));
        let term = &ctx.from_rational(&coeff) * &xpow;
        let mag = term.abs();
        if &mag <= eps {
            return (value, mag);
        }
        if let Some(p) = &prev_mag {
            if &mag >= p {
                // Divergent regime of the asymptotic expansion; report the
                // bound before this term was added.
                return (value, mag);
            }
        }
        value = &value + &term;
        prev_mag = Some(mag);
        xpow = &xpow * &inv_x2;
    }
    let bound = prev_mag.unwrap_or_else(|| ctx.one());
    (value, bound)
}

/// Direct sum plus Euler-Maclaurin tail for sum_{n>=1} (n + a)^(-k), k >= 2.
/// Doubles the cutoff until the tail is certified below `eps`.
pub(crate) fn shifted_zeta_em(
    k: u32,
    a: &Rational,
    ctx: &PrecisionContext,
    eps: &Real,
    budget: u64,
) -> Result<Real> {
    let mut n = (2 * ctx.target_digits() as u64).max(32).max(k as u64);
    loop {
        let (tail, err) = tail_zeta(k, a, n, ctx, eps);
        if &err <= eps {
            let mut s = ctx.zero();
            for m in 1..=n {
                let d = ctx.from_rational(&(a + Rational::from(BigInt::from(m))));
                s = &s + &d.powi(k).recip();
            }
            return Ok(&s + &tail);
        }
        if n >= budget {
            return Err(Error::AccuracyNotReached {
                target: format!("{eps}"),
                achieved: format!("{err}"),
                budget,
            });
        }
        n = (n * 2).min(budget);
    }
}

/// zeta(n) for integer n >= 0, n != 1, correct to context precision.
///
/// zeta(0) = -1/2 (the n = 0 term of the cotangent expansion); even n use
/// the exact Bernoulli route; odd n >= 3 use the Euler-Maclaurin sum.
/// Negative arguments are unrepresentable by the argument type.
pub fn zeta_int(n: u32, ctx: &PrecisionContext) -> Result<Real> {
    if n == 1 {
        return Err(Error::InvalidArgument("zeta(1) is a pole".into()));
    }
    if n == 0 {
        return Ok(ctx.from_rational(&rational_from_i64(-1, 2)));
    }
    let name = format!("zeta_{n}");
    let value = constants().get_or_compute(&name, ctx, || {
        let wide = ctx.widened(16);
        let v = if n % 2 == 0 {
            zeta_even_exact(n / 2).to_real(&wide)
        } else {
            let eps = &wide.series_epsilon() / &wide.uint(100);
            shifted_zeta_em(n, &Rational::from(BigInt::from(0)), &wide, &eps, 1 << 24)
                .expect("zeta EM converges for n >= 2")
        };
        v.to_bits(ctx.bits())
    });
    Ok(value)
}

/// Dirichlet beta beta(n) = sum_{k>=0} (-1)^k / (2k+1)^n for n >= 1, via
/// alternating-series acceleration.
pub fn beta_dirichlet(n: u32, ctx: &PrecisionContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "beta requires a positive exponent".into(),
        ));
    }
    let name = format!("beta_{n}");
    Ok(constants().get_or_compute(&name, ctx, || {
        let wide = ctx.widened(16);
        let digits = ctx.target_digits() + ctx.guard_digits() + 2;
        let terms = (digits as f64 * 1.31).ceil() as u64 + 8;
        // d = (3 + sqrt 8)^terms, averaged with its reciprocal
        let base = &wide.int(3) + &(&wide.int(2) * &wide.int(2).sqrt());
        let d0 = base.powi(terms as u32);
        let d = &(&d0 + &d0.recip()) / &wide.int(2);
        let mut b = -wide.one();
        let mut c = -d.clone();
        let mut s = wide.zero();
        for k in 0..terms {
            c = &b - &c;
            let a_k = wide.uint(2 * k + 1).powi(n).recip();
            s = &s + &(&c * &a_k);
            // b *= (k+terms)(k-terms) / ((k+1/2)(k+1))
            let num = 2 * (k + terms) as i64 * (k as i64 - terms as i64);
            let den = (2 * k + 1) as i64 * (k + 1) as i64;
            b = &(&b * &wide.int(num)) / &wide.int(den);
        }
        (&s / &d).to_bits(ctx.bits())
    }))
}
