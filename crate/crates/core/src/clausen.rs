//! Clausen functions, their special values, and the closed form for the
//! cotangent moment integral over [0, pi z], cross-checked by quadrature.
//!
//! Cl_2 is evaluated from the zeta(2n)-coefficient expansion
//! `Cl_2(theta)/theta = 1 - log theta + sum zeta(2n)/(n(2n+1)) (theta/2pi)^(2n)`,
//! which converges geometrically for theta < 2 pi. Higher orders come from
//! repeated exact term-wise integration, which preserves the
//! polynomial-plus-log structure and fixes constants with
//! Cl_{2m+1}(0) = zeta(2m+1). No Fourier partial sums are involved.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::numerics::{beta_dirichlet, factorial, zeta_int, PrecisionContext, Rational, Real};
use crate::quadrature::integrate_adaptive;
use crate::{Error, Result};

/// Order of a Clausen function, m >= 2, with the parity convention: even
/// orders are the sine series, odd orders the cosine series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClausenOrder {
    m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClausenKind {
    SineType,
    CosineType,
}

impl ClausenOrder {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(
                "Clausen order must be at least 2".into(),
            ));
        }
        Ok(ClausenOrder { m })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn kind(&self) -> ClausenKind {
        if self.m % 2 == 0 {
            ClausenKind::SineType
        } else {
            ClausenKind::CosineType
        }
    }
}

/// Cl_1(theta) = -log(2 sin(theta/2)) for 0 < theta < 2 pi. Singular at the
/// endpoints; admitted only as the k = 0 term of the cotangent moment.
pub(crate) fn clausen_one(theta: &Real, ctx: &PrecisionContext) -> Real {
    let half = &theta.to_bits(ctx.bits()) / &ctx.int(2);
    -(&ctx.int(2) * &half.sin()).ln()
}

/// Function of the form poly(theta) + logpoly(theta) log(theta)
///   + sum_{n>=1} zeta(2n) sig[n-1] theta^(2n+offset) / (2 pi)^(2n).
/// Closed under integration from 0, which is how the Clausen ladder climbs.
struct LogPolySeries {
    poly: Vec<Real>,
    logpoly: Vec<Real>,
    sig: Vec<Rational>,
    offset: u32,
}

impl LogPolySeries {
    /// Cl_2 with `terms` sigma coefficients.
    fn cl2(terms: usize, ctx: &PrecisionContext) -> Self {
        let sig = (1..=terms as u64)
            .map(|n| Rational::new(BigInt::one(), BigInt::from(n * (2 * n + 1))))
            .collect();
        LogPolySeries {
            poly: vec![ctx.zero(), ctx.one()],
            logpoly: vec![ctx.zero(), -ctx.one()],
            sig,
            offset: 1,
        }
    }

    /// Integral from 0 to theta, term by term:
    /// x^j -> x^(j+1)/(j+1), x^j log x -> x^(j+1) log x/(j+1) - x^(j+1)/(j+1)^2.
    fn integrate(&self, ctx: &PrecisionContext) -> Self {
        let deg = self.poly.len();
        let mut poly = vec![ctx.zero(); deg + 1];
        let mut logpoly = vec![ctx.zero(); deg + 1];
        for (j, c) in self.poly.iter().enumerate() {
            if !c.is_zero() {
                poly[j + 1] = &poly[j + 1] + &(c / &ctx.int(j as i64 + 1));
            }
        }
        for (j, c) in self.logpoly.iter().enumerate() {
            if !c.is_zero() {
                let jp1 = ctx.int(j as i64 + 1);
                logpoly[j + 1] = &logpoly[j + 1] + &(c / &jp1);
                poly[j + 1] = &poly[j + 1] - &(c / &(&jp1 * &jp1));
            }
        }
        let sig = self
            .sig
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let n = i as u64 + 1;
                q / Rational::from(BigInt::from(2 * n + self.offset as u64 + 1))
            })
            .collect();
        LogPolySeries {
            poly,
            logpoly,
            sig,
            offset: self.offset + 1,
        }
    }

    fn negate(&mut self) {
        for c in self.poly.iter_mut().chain(self.logpoly.iter_mut()) {
            *c = -&*c;
        }
        for q in self.sig.iter_mut() {
            *q = -q.clone();
        }
    }

    fn eval(&self, theta: &Real, ctx: &PrecisionContext) -> Real {
        let mut acc = ctx.zero();
        let mut pow = ctx.one();
        for c in &self.poly {
            if !c.is_zero() {
                acc = &acc + &(c * &pow);
            }
            pow = &pow * theta;
        }
        let log_theta = theta.ln();
        let mut pow = ctx.one();
        for c in &self.logpoly {
            if !c.is_zero() {
                acc = &acc + &(&(c * &pow) * &log_theta);
            }
            pow = &pow * theta;
        }
        // sigma part: sum zeta(2n) sig[n-1] (theta/2pi)^(2n) theta^offset
        let ratio = (theta / &(&ctx.pi() * &ctx.int(2))).powi(2);
        let theta_off = theta.powi(self.offset);
        let mut rpow = ctx.one();
        let mut sig_acc = ctx.zero();
        for (i, q) in self.sig.iter().enumerate() {
            rpow = &rpow * &ratio;
            let z = zeta_int(2 * (i as u32 + 1), ctx).expect("even zeta");
            sig_acc = &sig_acc + &(&(&ctx.from_rational(q) * &z) * &rpow);
        }
        &acc + &(&sig_acc * &theta_off)
    }
}

/// Number of sigma terms needed for the tail (theta/2pi)^(2n) to clear the
/// context epsilon, with a convergence-rate check.
fn sigma_terms(theta: &Real, ctx: &PrecisionContext) -> Result<usize> {
    let two_pi = &ctx.pi() * &ctx.int(2);
    let ratio = (&theta.abs() / &two_pi).powi(2);
    debug_assert!(ratio < ctx.one());
    // digits * ln 10 / -ln(ratio), via f64 on the exponent estimate
    let digits = (ctx.target_digits() + ctx.guard_digits() + 4) as f64;
    let r64: f64 = ratio.to_decimal_sci(17).parse::<f64>().unwrap_or(0.25);
    let needed = (digits * std::f64::consts::LN_10 / -r64.ln()).ceil() as usize + 4;
    if needed > 1_000_000 {
        return Err(Error::AccuracyNotReached {
            target: format!("{}", ctx.series_epsilon()),
            achieved: "theta too close to 2 pi".into(),
            budget: 1_000_000,
        });
    }
    Ok(needed)
}

/// Cl_m(theta) for m >= 2 and 0 < theta < 2 pi, correct to context
/// precision. Reduction into the principal window is the caller's concern.
pub fn clausen_eval(m: u32, theta: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let order = ClausenOrder::new(m)?;
    let wide = ctx.widened(16);
    let theta = theta.to_bits(wide.bits());
    if theta <= wide.zero() || theta >= &wide.pi() * &wide.int(2) {
        return Err(Error::InvalidArgument(
            "clausen_eval needs 0 < theta < 2 pi".into(),
        ));
    }
    let terms = sigma_terms(&theta, &wide)?;
    let mut f = LogPolySeries::cl2(terms, &wide);
    for k in 3..=order.order() {
        f = f.integrate(&wide);
        if k % 2 == 1 {
            // integral of Cl_{even} from 0: zeta(k) - Cl_k, so flip and shift
            f.negate();
            f.poly[0] = &f.poly[0] + &zeta_int(k, &wide).expect("odd zeta");
        }
    }
    Ok(f.eval(&theta, &wide).to_bits(ctx.bits()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialPoint {
    Pi,
    HalfPi,
}

/// Exact-formula route for Cl_m at pi and pi/2:
/// Cl_{2m}(pi) = 0, Cl_{2m+1}(pi) = -(4^m - 1) zeta(2m+1) / 4^m,
/// Cl_{2m}(pi/2) = beta(2m), Cl_{2m+1}(pi/2) = -(4^m - 1) zeta(2m+1) / 2^(4m+1).
pub fn clausen_special(m: u32, point: SpecialPoint, ctx: &PrecisionContext) -> Result<Real> {
    ClausenOrder::new(m)?;
    let wide = ctx.widened(8);
    let value = if m % 2 == 0 {
        match point {
            SpecialPoint::Pi => wide.zero(),
            SpecialPoint::HalfPi => beta_dirichlet(m, &wide)?,
        }
    } else {
        let half_m = (m - 1) / 2;
        let four_m = BigInt::one() << (2 * half_m as u64);
        let z = zeta_int(m, &wide)?;
        let coeff = match point {
            SpecialPoint::Pi => Rational::new(BigInt::one() - &four_m, four_m),
            SpecialPoint::HalfPi => Rational::new(
                BigInt::one() - &four_m,
                BigInt::one() << (4 * half_m as u64 + 1),
            ),
        };
        &wide.from_rational(&coeff) * &z
    };
    Ok(value.to_bits(ctx.bits()))
}

fn validate_z(z: &Rational) -> Result<()> {
    if !z.is_positive() || *z >= Rational::one() {
        return Err(Error::InvalidArgument("z must lie in (0, 1)".into()));
    }
    Ok(())
}

/// Closed form for the cotangent moment integral:
/// int_0^(pi z) x^p cot x dx =
///   (pi z)^p sum_{k=0}^{p} p! (-1)^floor((k+3)/2) / ((p-k)! (2 pi z)^k) Cl_{k+1}(2 pi z)
///   + [p even] p! (-1)^(p/2) zeta(p+1) / 2^p,
/// with Cl_1(2 pi z) = -log(2 sin(pi z)).
pub fn orr_rhs(p: u32, z: &Rational, ctx: &PrecisionContext) -> Result<Real> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    validate_z(z)?;
    let wide = ctx.widened(16);
    let theta = &wide.pi() * &wide.from_rational(&(z * Rational::from(BigInt::from(2))));
    let pi_z = &wide.pi() * &wide.from_rational(z);
    let p_fact = factorial(p);
    let mut sum = wide.zero();
    let mut theta_pow = wide.one(); // theta^k
    for k in 0..=p {
        let cl = if k == 0 {
            clausen_one(&theta, &wide)
        } else {
            clausen_eval(k + 1, &theta, &wide)?
        };
        let sign = if ((k + 3) / 2) % 2 == 1 { -1 } else { 1 };
        let coeff = Rational::new(BigInt::from(sign) * &p_fact, factorial(p - k));
        sum = &sum + &(&(&wide.from_rational(&coeff) * &cl) / &theta_pow);
        theta_pow = &theta_pow * &theta;
    }
    let mut total = &pi_z.powi(p) * &sum;
    if p % 2 == 0 {
        let sign = if (p / 2) % 2 == 1 { -1 } else { 1 };
        let coeff = Rational::new(BigInt::from(sign) * &p_fact, BigInt::one() << p as u64);
        total = &total + &(&wide.from_rational(&coeff) * &zeta_int(p + 1, &wide)?);
    }
    Ok(total.to_bits(ctx.bits()))
}

/// The same integral from the cotangent expansion:
/// -2 sum_{n>=0} zeta(2n) (pi z)^(2n+p) / (pi^(2n) (2n+p)), geometric in z^2.
pub fn cot_moment_via_series(p: u32, z: &Rational, ctx: &PrecisionContext) -> Result<Real> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    validate_z(z)?;
    let wide = ctx.widened(16);
    let eps = wide.series_epsilon();
    let z2 = z * z;
    let one_minus_z2 = Rational::one() - &z2;
    let mut zpow = Rational::one(); // z^(2n)
    let mut sum = wide.zero();
    let mut n = 0u32;
    loop {
        let coeff = &zpow / Rational::from(BigInt::from((2 * n + p) as u64));
        let z_even = zeta_int(2 * n, &wide)?;
        sum = &sum + &(&wide.from_rational(&coeff) * &z_even);
        // tail <= 2 z^(2n+2) / ((2n+2+p)(1 - z^2))
        zpow *= &z2;
        n += 1;
        let bound = &zpow * Rational::new(BigInt::from(2), BigInt::from((2 * n + p) as u64))
            / &one_minus_z2;
        if wide.from_rational(&bound) < eps {
            break;
        }
    }
    let pi_z = &wide.pi() * &wide.from_rational(z);
    Ok((&(&wide.int(-2) * &pi_z.powi(p)) * &sum).to_bits(ctx.bits()))
}

/// Independent check of the closed form: adaptive Gauss-Legendre quadrature
/// of int_0^(pi z) x^p cot x dx. The integrand extends analytically to 0
/// (x^p cot x ~ x^(p-1)), so panel doubling converges geometrically.
pub fn cot_moment_via_quadrature(p: u32, z: &Rational, ctx: &PrecisionContext) -> Result<Real> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    validate_z(z)?;
    let wide = ctx.widened(8);
    let upper = &wide.pi() * &wide.from_rational(z);
    let target = wide.series_epsilon();
    let v = integrate_adaptive(
        |x| &x.powi(p) * &(&x.cos() / &x.sin()),
        &wide.zero(),
        &upper,
        &wide,
        &target,
    )?;
    Ok(v.to_bits(ctx.bits()))
}
