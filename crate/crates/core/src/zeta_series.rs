//! Rational zeta series built on the cotangent expansion
//! `u cot u = -2 sum_{n>=0} zeta(2n) (u/pi)^(2n)`.
//!
//! The series `sum_{n>=0} zeta(2n) / [(2n+p)(2n+p+1)...(2n+p+s)] / 4^n`
//! converges geometrically with ratio 1/4; with `zeta(2n) < 2` for n >= 1
//! the truncation index for a given digit target is known in advance, so
//! every evaluation here is fast and certified. The even zeta coefficients
//! come from the exact Bernoulli route through the constant cache.

use num_bigint::BigInt;
use num_traits::One;

use crate::numerics::{factorial, zeta_int, PrecisionContext, Rational, Real};
use crate::{Error, Result};

/// The series sum_{n>=0} zeta(2n) / prod_{j=0}^{s} (2n+p+j) / 2^(2n),
/// scaled by `scale`. `p` is the first factor offset and `s` the number of
/// extra consecutive factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalZetaSeriesSpec {
    pub p: u32,
    pub s: u32,
    pub scale: Rational,
}

impl RationalZetaSeriesSpec {
    pub fn new(p: u32, s: u32, scale: Rational) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("offset p must be positive".into()));
        }
        Ok(RationalZetaSeriesSpec { p, s, scale })
    }
}

/// Partial sum of -2 sum_{n=0}^{terms-1} zeta(2n) (u/pi)^(2n); converges to
/// u cot u for |u| < pi, with geometric tail (u/pi)^(2 terms).
pub fn cot_partial(u: &Real, ctx: &PrecisionContext, terms: u32) -> Result<Real> {
    let wide = ctx.widened(16);
    let u = u.to_bits(wide.bits());
    if u.abs() >= wide.pi() {
        return Err(Error::InvalidArgument("cot expansion needs |u| < pi".into()));
    }
    let ratio = (&u / &wide.pi()).powi(2);
    let mut power = wide.one();
    let mut s = wide.zero();
    for n in 0..terms {
        let z = zeta_int(2 * n, &wide)?;
        s = &s + &(&z * &power);
        power = &power * &ratio;
    }
    Ok((&s * &wide.int(-2)).to_bits(ctx.bits()))
}

/// Evaluates a rational zeta series spec to context precision. The cutoff
/// uses the bound zeta(2n) < 2, giving a tail below
/// (8/3) * 4^(-(N+1)) / (2N+2+p)^(s+1) once that clears the series epsilon.
pub fn rzs_eval(spec: &RationalZetaSeriesSpec, ctx: &PrecisionContext) -> Real {
    let wide = ctx.widened(16);
    let eps = wide.series_epsilon();
    let mut s = wide.zero();
    let mut pow4 = BigInt::one(); // 4^n
    let mut n = 0u32;
    loop {
        let mut den = pow4.clone();
        for j in 0..=spec.s {
            den *= BigInt::from((2 * n + spec.p + j) as u64);
        }
        let z = zeta_int(2 * n, &wide).expect("even zeta");
        let term = &z * &wide.from_rational(&Rational::new(BigInt::one(), den));
        s = &s + &term;
        // Geometric tail bound after term n, using zeta(2m) < 2 for m > n.
        let next_bound = wide.from_rational(&Rational::new(
            BigInt::from(4u32),
            &pow4 * BigInt::from(4u32) * BigInt::from((2 * n + 2 + spec.p) as u64).pow(spec.s + 1),
        ));
        if next_bound < eps && n >= 1 {
            break;
        }
        pow4 *= 4;
        n += 1;
    }
    (&s * &wide.from_rational(&spec.scale)).to_bits(ctx.bits())
}

/// Closed form for -2 sum zeta(2n)/((2n+p) 4^n):
/// log 2 + sum_{k=1}^{floor(p/2)} p! (-1)^k (4^k - 1) zeta(2k+1) / ((p-2k)! (2 pi)^(2k))
///       + [p even] p! (-1)^(p/2) zeta(p+1) / pi^p.
pub fn lemma26_rhs(p: u32, ctx: &PrecisionContext) -> Real {
    assert!(p >= 1, "p must be positive");
    let wide = ctx.widened(16);
    let pi = wide.pi();
    let mut s = wide.ln2();
    let p_fact = factorial(p);
    for k in 1..=p / 2 {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let four_k_minus_1 = (BigInt::one() << (2 * k as u64)) - 1;
        // (2 pi)^(2k) = 4^k pi^(2k): keep the 4^k with the rational part.
        let coeff = Rational::new(
            BigInt::from(sign) * &p_fact * four_k_minus_1,
            factorial(p - 2 * k) * (BigInt::one() << (2 * k as u64)),
        );
        let term = &(&wide.from_rational(&coeff) * &zeta_int(2 * k + 1, &wide).expect("odd zeta"))
            / &pi.powi(2 * k);
        s = &s + &term;
    }
    if p % 2 == 0 {
        let sign = if (p / 2) % 2 == 1 { -1 } else { 1 };
        let coeff = Rational::from(BigInt::from(sign) * &p_fact);
        let term =
            &(&wide.from_rational(&coeff) * &zeta_int(p + 1, &wide).expect("zeta")) / &pi.powi(p);
        s = &s + &term;
    }
    s.to_bits(ctx.bits())
}

/// Apery's constant via the 1775 rational zeta series:
/// zeta(3) = -2 pi^2 sum_{n>=0} zeta(2n) / ((2n+2)(2n+3) 2^(2n)).
pub fn euler1775(ctx: &PrecisionContext) -> Real {
    let wide = ctx.widened(16);
    let spec = RationalZetaSeriesSpec::new(2, 1, Rational::one()).expect("p >= 1");
    let series = rzs_eval(&spec, &wide);
    (&(&series * &wide.pi().powi(2)) * &wide.int(-2)).to_bits(ctx.bits())
}

/// H(r,0) = zeta({2}^r, 3) as the rational zeta series
/// -4 (2r+3) sum_n zeta(2n)/((2n+2r+2)(2n+2r+3) 4^n) * zeta({2}^(r+1)),
/// with zeta({2}^(r+1)) = pi^(2r+2)/(2r+3)!.
pub fn h_series(r: u32, ctx: &PrecisionContext) -> Real {
    let wide = ctx.widened(16);
    let spec = RationalZetaSeriesSpec::new(2 * r + 2, 1, Rational::one()).expect("p >= 1");
    let series = rzs_eval(&spec, &wide);
    let coeff = Rational::new(
        BigInt::from(-4i64 * (2 * r as i64 + 3)),
        factorial(2 * r + 3),
    );
    (&(&wide.from_rational(&coeff) * &series) * &wide.pi().powi(2 * r + 2)).to_bits(ctx.bits())
}

/// T(r) = t({2}^r, 3) as the rational zeta series
/// -4 (r+1) sum_n zeta(2n)/((2n+2r+1)(2n+2r+2) 4^n) * t({2}^(r+1)),
/// with t({2}^(r+1)) = pi^(2r+2)/(2^(2r+2) (2r+2)!).
pub fn t_series(r: u32, ctx: &PrecisionContext) -> Real {
    let wide = ctx.widened(16);
    let spec = RationalZetaSeriesSpec::new(2 * r + 1, 1, Rational::one()).expect("p >= 1");
    let series = rzs_eval(&spec, &wide);
    let coeff = Rational::new(
        BigInt::from(-4i64 * (r as i64 + 1)),
        factorial(2 * r + 2) * (BigInt::one() << (2 * r as u64 + 2)),
    );
    (&(&wide.from_rational(&coeff) * &series) * &wide.pi().powi(2 * r + 2)).to_bits(ctx.bits())
}

/// Conjectured closed series for H(r,s):
/// (-4 pi^(2r+2s+2) / (2r+2)!) sum_n zeta(2n) / [(2n+2r+2)...(2n+2r+2s+3) 4^n].
/// Returns a value only; callers report "supported to D digits", never proof.
pub fn h_conjecture_rhs(r: u32, s: u32, ctx: &PrecisionContext) -> Real {
    let wide = ctx.widened(16);
    // factors run from offset 2r+2 through 2r+2s+3: 2s+2 consecutive factors
    let spec = RationalZetaSeriesSpec::new(2 * r + 2, 2 * s + 1, Rational::one()).expect("p >= 1");
    let series = rzs_eval(&spec, &wide);
    let coeff = Rational::new(BigInt::from(-4), factorial(2 * r + 2));
    (&(&wide.from_rational(&coeff) * &series) * &wide.pi().powi(2 * r + 2 * s + 2))
        .to_bits(ctx.bits())
}

/// Conjectured closed series for T(r,s):
/// (-2/(2r+1)!) (pi/2)^(2r+2s+2) sum_n zeta(2n) / [(2n+2r+1)...(2n+2r+2s+2) 4^n].
pub fn t_conjecture_rhs(r: u32, s: u32, ctx: &PrecisionContext) -> Real {
    let wide = ctx.widened(16);
    let spec = RationalZetaSeriesSpec::new(2 * r + 1, 2 * s + 1, Rational::one()).expect("p >= 1");
    let series = rzs_eval(&spec, &wide);
    let m = 2 * r + 2 * s + 2;
    let coeff = Rational::new(
        BigInt::from(-2),
        factorial(2 * r + 1) * (BigInt::one() << m as u64),
    );
    (&(&wide.from_rational(&coeff) * &series) * &wide.pi().powi(m)).to_bits(ctx.bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational_from_i64;

    fn ctx(digits: u32) -> PrecisionContext {
        PrecisionContext::new(digits).unwrap()
    }

    fn assert_close(got: &Real, want: &str, tolerance: &str, c: &PrecisionContext) {
        let w = c.parse_decimal(want).unwrap();
        let t = c.parse_decimal(tolerance).unwrap();
        let diff = (got - &w).abs();
        assert!(diff <= t, "got {got}, want {want}, diff {diff}");
    }

    #[test]
    fn cot_partial_at_zero_is_one() {
        let c = ctx(20);
        let v = cot_partial(&c.zero(), &c, 5).unwrap();
        assert_eq!(v, c.one());
    }

    #[test]
    fn cot_partial_matches_cot_one() {
        // u cot u at u = 1, against direct trigonometric evaluation
        let c = ctx(25);
        let u = c.one();
        let v = cot_partial(&u, &c, 200).unwrap();
        assert_close(&v, "0.642092615934330703006419986594", "1e-24", &c);
        let trig = &u.cos() / &u.sin();
        assert!((&v - &trig).abs() <= c.parse_decimal("1e-24").unwrap());
    }

    #[test]
    fn cot_partial_rejects_large_u() {
        let c = ctx(10);
        assert!(cot_partial(&c.int(4), &c, 8).is_err());
    }

    #[test]
    fn cot_partial_geometric_convergence() {
        // Error shrinks by about (u/pi)^2 per extra term.
        let c = ctx(30);
        for u_str in ["0.5", "1.0", "1.3"] {
            let u = c.parse_decimal(u_str).unwrap();
            let exact = &u * &(&u.cos() / &u.sin());
            let ratio = (&u / &c.pi()).powi(2);
            let mut prev: Option<Real> = None;
            for terms in [10u32, 11, 12, 13] {
                let err = (&cot_partial(&u, &c, terms).unwrap() - &exact).abs();
                if let Some(p) = prev {
                    // allow 30% slop around the geometric rate
                    let bound = &(&p * &ratio) * &c.parse_decimal("1.3").unwrap();
                    assert!(err <= bound, "u={u_str}, terms={terms}: {err} > {bound}");
                }
                prev = Some(err);
            }
        }
    }

    #[test]
    fn rzs_p1_is_log2() {
        let c = ctx(30);
        let spec = RationalZetaSeriesSpec::new(1, 0, rational_from_i64(-2, 1)).unwrap();
        let v = rzs_eval(&spec, &c);
        assert_close(&v, "0.693147180559945309417232121458", "1e-29", &c);
        // and it equals the closed form at p = 1 (empty sum, odd p)
        let rhs = lemma26_rhs(1, &c);
        assert!((&v - &rhs).abs() <= c.parse_decimal("1e-29").unwrap());
    }

    #[test]
    fn rzs_p2_matches_lemma_closed_form() {
        let c = ctx(30);
        let spec = RationalZetaSeriesSpec::new(2, 0, rational_from_i64(-2, 1)).unwrap();
        let v = rzs_eval(&spec, &c);
        // log 2 - (7/2) zeta(3) / pi^2
        assert_close(&v, "0.266868781742439518493710694862", "1e-29", &c);
        let rhs = lemma26_rhs(2, &c);
        assert!((&v - &rhs).abs() <= c.parse_decimal("1e-29").unwrap());
    }

    #[test]
    fn lemma_holds_across_offsets() {
        // This is the lemma itself, at 30 digits, for p = 1..12.
        let c = ctx(30);
        let tol = c.parse_decimal("1e-30").unwrap();
        for p in 1..=12u32 {
            let spec = RationalZetaSeriesSpec::new(p, 0, rational_from_i64(-2, 1)).unwrap();
            let series = rzs_eval(&spec, &c);
            let closed = lemma26_rhs(p, &c);
            let diff = (&series - &closed).abs();
            assert!(diff <= tol, "p={p}: diff {diff}");
        }
    }

    #[test]
    fn partial_fraction_splitting() {
        // 1/((2n+p)(2n+p+1)) = 1/(2n+p) - 1/(2n+p+1) carries over to sums.
        let c = ctx(30);
        let tol = c.parse_decimal("1e-38").unwrap();
        for p in [1u32, 3, 6] {
            let double = rzs_eval(
                &RationalZetaSeriesSpec::new(p, 1, Rational::one()).unwrap(),
                &c,
            );
            let a = rzs_eval(
                &RationalZetaSeriesSpec::new(p, 0, Rational::one()).unwrap(),
                &c,
            );
            let b = rzs_eval(
                &RationalZetaSeriesSpec::new(p + 1, 0, Rational::one()).unwrap(),
                &c,
            );
            let diff = (&double - &(&a - &b)).abs();
            assert!(diff <= tol, "p={p}: diff {diff}");
        }
    }

    #[test]
    fn euler_formula_reproduces_zeta3() {
        let c = ctx(30);
        let v = euler1775(&c);
        assert_close(&v, "1.20205690315959428539973816151", "1e-29", &c);
        let z3 = zeta_int(3, &c).unwrap();
        assert!((&v - &z3).abs() <= c.parse_decimal("1e-29").unwrap());
    }

    #[test]
    fn euler_first_term_is_zeta2() {
        // The n = 0 term alone: -2 pi^2 * (-1/2)/(2*3) = pi^2/6.
        let c = ctx(20);
        let first =
            &(&(&c.int(-2) * &c.pi().powi(2)) * &c.parse_decimal("-0.5").unwrap()) / &c.int(6);
        assert_close(&first, "1.6449340668482264", "1e-15", &c);
    }

    #[test]
    fn h_series_examples() {
        let c = ctx(30);
        // r = 0 is zeta(3)
        assert_close(
            &h_series(0, &c),
            "1.20205690315959428539973816151",
            "1e-29",
            &c,
        );
        // r = 1 is zeta(2,3)
        assert_close(
            &h_series(1, &c),
            "0.228810397603353759768746148943",
            "1e-28",
            &c,
        );
    }

    #[test]
    fn t_series_examples() {
        let c = ctx(30);
        // r = 0 is t(3) = (7/8) zeta(3)
        assert_close(
            &t_series(0, &c),
            "1.05179979026464499972477089132",
            "1e-29",
            &c,
        );
    }

    #[test]
    fn theorem_statement_matches_proof_prefactor() {
        // The statement multiplies the series by zeta({2}^(r+1)); the proof
        // derives the prefactor pi^(2r)/(2r)! with two extra factors from the
        // double integration. Both spellings give the same number.
        let c = ctx(25);
        for r in 0..=3u32 {
            let spec = RationalZetaSeriesSpec::new(2 * r + 2, 1, Rational::one()).unwrap();
            let series = rzs_eval(&spec, &c);
            let statement = h_series(r, &c);
            let proof_form = &(&(&c.int(-4) * &series)
                * &c.from_rational(&Rational::new(
                    BigInt::one(),
                    factorial(2 * r) * BigInt::from((2 * r as u64 + 1) * (2 * r as u64 + 2)),
                )))
                * &c.pi().powi(2 * r + 2);
            let diff = (&statement - &proof_form).abs();
            assert!(diff <= c.parse_decimal("1e-30").unwrap(), "r={r}");
        }
    }

    #[test]
    fn conjecture_series_reduce_to_theorems_at_s_zero() {
        let c = ctx(30);
        let tol = c.parse_decimal("1e-33").unwrap();
        for r in 0..=3u32 {
            let h0 = h_conjecture_rhs(r, 0, &c);
            let hs = h_series(r, &c);
            assert!((&h0 - &hs).abs() <= tol, "H r={r}");
            let t0 = t_conjecture_rhs(r, 0, &c);
            let ts = t_series(r, &c);
            assert!((&t0 - &ts).abs() <= tol, "T r={r}");
        }
    }
}
