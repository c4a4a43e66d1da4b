//! Ground truth by direct nested summation.
//!
//! Values are computed from the defining series
//! `sum over 0 < n_1 < ... < n_r of prod (n_i + a_i)^(-k_i)`
//! with the innermost-to-outermost partial-sum recursion
//! `P_0(n) = 1, P_j(n) = sum_{m<n} P_{j-1}(m) / (m + a_j)^{k_j}`,
//! which costs O(N r) time and O(r) space. The outermost tail is bracketed:
//! below by the last inner partial sum times the Euler-Maclaurin tail of the
//! outer factor, above by a certified upper bound on the inner limit times
//! the same tail. The midpoint is returned and half the bracket width plus
//! all Euler-Maclaurin and roundoff slack is the error certificate. If the
//! certificate cannot be pushed under the requested error within the term
//! budget, evaluation fails explicitly rather than returning an uncertified
//! answer.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::numerics::{tail_zeta, PrecisionContext, Rational, Real};
use crate::{Error, Result};

/// Default cap on the number of outer summation terms.
pub const DEFAULT_TERM_BUDGET: u64 = 1 << 22;

/// Exponent tuple (k_1, ..., k_r) of a multiple zeta / t / Hurwitz value.
/// The last exponent is attached to the largest summation index and must be
/// at least 2 for convergence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    exponents: Vec<u32>,
}

impl Composition {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidArgument("empty composition".into()));
        }
        if exponents.iter().any(|&k| k == 0) {
            return Err(Error::InvalidArgument(
                "composition exponents must be positive".into(),
            ));
        }
        if *exponents.last().unwrap() < 2 {
            return Err(Error::InvalidArgument(
                "last exponent must be at least 2 for convergence".into(),
            ));
        }
        Ok(Composition { exponents })
    }

    /// {2}^r, r >= 1.
    pub fn twos(r: u32) -> Result<Self> {
        Self::new(vec![2; r as usize])
    }

    /// {2}^r, 3, {2}^s — the Hoffman family.
    pub fn twos_three_twos(r: u32, s: u32) -> Self {
        let mut v = vec![2u32; r as usize];
        v.push(3);
        v.extend(std::iter::repeat(2).take(s as usize));
        Composition { exponents: v }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    pub fn weight(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// Per-coordinate rational shifts (a_1, ..., a_r); each must exceed -1 so
/// every summand denominator is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVector {
    shifts: Vec<Rational>,
}

impl ShiftVector {
    pub fn new(shifts: Vec<Rational>) -> Result<Self> {
        let minus_one = Rational::from(BigInt::from(-1));
        if shifts.iter().any(|a| *a <= minus_one) {
            return Err(Error::InvalidArgument(
                "shifts must be greater than -1".into(),
            ));
        }
        Ok(ShiftVector { shifts })
    }

    pub fn zeros(r: usize) -> Self {
        ShiftVector {
            shifts: vec![Rational::zero(); r],
        }
    }

    /// All shifts -1/2: the multiple t-value lattice.
    pub fn neg_half(r: usize) -> Self {
        ShiftVector {
            shifts: vec![Rational::new(BigInt::from(-1), BigInt::from(2)); r],
        }
    }

    pub fn shifts(&self) -> &[Rational] {
        &self.shifts
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }
}

/// Weight function (n + a)^(-k) with the two hot shift cases special-cased.
struct Factor {
    k: u32,
    a: Rational,
    kind: FactorKind,
}

enum FactorKind {
    ZeroShift,
    HalfDown, // a = -1/2
    General,
}

impl Factor {
    fn new(k: u32, a: Rational) -> Self {
        let kind = if a.is_zero() {
            FactorKind::ZeroShift
        } else if a == Rational::new(BigInt::from(-1), BigInt::from(2)) {
            FactorKind::HalfDown
        } else {
            FactorKind::General
        };
        Factor { k, a, kind }
    }

    fn weight(&self, n: u64, ctx: &PrecisionContext, half: &Real) -> Real {
        let base = match self.kind {
            FactorKind::ZeroShift => ctx.uint(n),
            FactorKind::HalfDown => &ctx.uint(2 * n - 1) * half,
            FactorKind::General => {
                ctx.from_rational(&(&self.a + Rational::from(BigInt::from(n))))
            }
        };
        base.powi(self.k).recip()
    }
}

struct Evaluation {
    value: Real,
    width: Real,
}

/// Core summation loop shared by all oracle entry points. Always returns the
/// best bracketed value at the point the driver stopped.
fn nested_sum(
    comp: &Composition,
    shifts: &ShiftVector,
    wide: &PrecisionContext,
    target: &Real,
    budget: u64,
) -> Evaluation {
    let r = comp.depth();
    let factors: Vec<Factor> = comp
        .exponents()
        .iter()
        .zip(shifts.shifts())
        .map(|(&k, a)| Factor::new(k, a.clone()))
        .collect();

    let half = &wide.one() / &wide.int(2);
    let eps_t = target / &wide.uint(4096);
    // Headroom for accumulated rounding over the whole run; the working
    // precision carries at least 48 extra bits over the caller's context.
    let slack = wide.int(2).powi(wide.bits() - 38).recip();

    // p[j] holds P_j(n+1) once term n has been processed; p[0] = 1 always.
    let mut p = vec![wide.zero(); r];
    p[0] = wide.one();
    let mut s = wide.zero();
    let mut n_done = 0u64;
    let mut n_target = 1024u64.min(budget);

    loop {
        for n in n_done + 1..=n_target {
            let w_outer = factors[r - 1].weight(n, wide, &half);
            if r == 1 {
                s = &s + &w_outer;
            } else {
                s = &s + &(&p[r - 1] * &w_outer);
                for j in (1..r).rev() {
                    let w = if comp.exponents()[j - 1] == comp.exponents()[r - 1]
                        && shifts.shifts()[j - 1] == shifts.shifts()[r - 1]
                    {
                        w_outer.clone()
                    } else {
                        factors[j - 1].weight(n, wide, &half)
                    };
                    p[j] = &p[j] + &(&p[j - 1] * &w);
                }
            }
        }
        n_done = n_target;

        // Bracket the tail. T_j is the Euler-Maclaurin tail of level j;
        // b[j] certifies an upper bound on lim_n P_j(n).
        let mut em_err = wide.zero();
        let mut b = wide.one();
        for (j, f) in factors.iter().enumerate().take(r - 1) {
            let (t_j, e_j) = tail_zeta(f.k, &f.a, n_done, wide, &eps_t);
            em_err = &em_err + &e_j;
            b = &p[j + 1] + &(&b * &(&t_j + &e_j));
        }
        let (t_r, e_r) = tail_zeta(factors[r - 1].k, &factors[r - 1].a, n_done, wide, &eps_t);
        em_err = &em_err + &e_r;
        let lower = &s + &(&p[r - 1] * &(&t_r - &e_r));
        let upper = &s + &(&b * &(&t_r + &e_r));
        let value = &(&lower + &upper) / &wide.int(2);
        let b_scale = if b > wide.one() { b.clone() } else { wide.one() };
        let width = &(&(&upper - &lower) / &wide.int(2))
            + &(&(&em_err * &wide.int(2 * r as i64 + 2)) * &b_scale)
            + &slack;

        if &width <= target || n_done >= budget {
            return Evaluation { value, width };
        }
        n_target = (n_done * 2).min(budget);
    }
}

fn validate(comp: &Composition, shifts: &ShiftVector) -> Result<()> {
    if comp.depth() != shifts.len() {
        return Err(Error::InvalidArgument(format!(
            "composition depth {} does not match shift count {}",
            comp.depth(),
            shifts.len()
        )));
    }
    // Inner exponents of 1 give log-growing inner partial sums, for which the
    // bounded-by-limit tail certificate is invalid.
    if comp.exponents()[..comp.depth() - 1]
        .iter()
        .any(|&k| k == 1)
    {
        return Err(Error::InvalidArgument(
            "inner exponent 1 is not supported by the tail certificate".into(),
        ));
    }
    Ok(())
}

/// Multiple Hurwitz zeta value by direct nested summation, with an explicit
/// term budget.
pub fn hurwitz_mzv_direct_with_budget(
    comp: &Composition,
    shifts: &ShiftVector,
    ctx: &PrecisionContext,
    target_abs_error: &Real,
    budget: u64,
) -> Result<Real> {
    validate(comp, shifts)?;
    if target_abs_error.is_zero() || target_abs_error.is_negative() {
        return Err(Error::InvalidArgument(
            "target_abs_error must be positive".into(),
        ));
    }
    let wide = ctx.widened(48);
    let target = target_abs_error.to_bits(wide.bits());
    let eval = nested_sum(comp, shifts, &wide, &target, budget);
    if eval.width > target {
        return Err(Error::AccuracyNotReached {
            target: format!("{target}"),
            achieved: format!("{}", eval.width),
            budget,
        });
    }
    Ok(eval.value.to_bits(ctx.bits()))
}

/// Multiple Hurwitz zeta value with the default term budget.
pub fn hurwitz_mzv_direct(
    comp: &Composition,
    shifts: &ShiftVector,
    ctx: &PrecisionContext,
    target_abs_error: &Real,
) -> Result<Real> {
    hurwitz_mzv_direct_with_budget(comp, shifts, ctx, target_abs_error, DEFAULT_TERM_BUDGET)
}

/// Multiple zeta value: all shifts zero. Same code path as the Hurwitz case.
pub fn mzv_direct(comp: &Composition, ctx: &PrecisionContext, target_abs_error: &Real) -> Result<Real> {
    hurwitz_mzv_direct(comp, &ShiftVector::zeros(comp.depth()), ctx, target_abs_error)
}

/// Multiple t-value: the sum over odd denominators, evaluated as
/// 2^(-weight) times the Hurwitz value with all shifts -1/2.
pub fn tvalue_direct(
    comp: &Composition,
    ctx: &PrecisionContext,
    target_abs_error: &Real,
) -> Result<Real> {
    let weight = comp.weight();
    let wide = ctx.widened(8);
    let scale = wide.int(2).powi(weight);
    let scaled_target = &target_abs_error.to_bits(wide.bits()) * &scale;
    let hur = hurwitz_mzv_direct(
        comp,
        &ShiftVector::neg_half(comp.depth()),
        &wide,
        &scaled_target,
    )?;
    Ok((&hur / &scale).to_bits(ctx.bits()))
}

/// Value plus certified error bound at a forced budget; never errors on an
/// unreached target. Used by the tail-soundness tests.
pub fn hurwitz_mzv_certificate(
    comp: &Composition,
    shifts: &ShiftVector,
    ctx: &PrecisionContext,
    target_abs_error: &Real,
    budget: u64,
) -> Result<(Real, Real)> {
    validate(comp, shifts)?;
    let wide = ctx.widened(48);
    let target = target_abs_error.to_bits(wide.bits());
    let eval = nested_sum(comp, shifts, &wide, &target, budget);
    Ok((eval.value, eval.width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational_from_i64;

    fn ctx(digits: u32) -> PrecisionContext {
        PrecisionContext::new(digits).unwrap()
    }

    fn tol(ctx: &PrecisionContext, s: &str) -> Real {
        ctx.parse_decimal(s).unwrap()
    }

    fn assert_close(got: &Real, want: &str, eps: &str, c: &PrecisionContext) {
        let w = c.parse_decimal(want).unwrap();
        let diff = (&got.to_bits(c.bits()) - &w).abs();
        assert!(diff <= tol(c, eps), "got {got}, want {want}, diff {diff}");
    }

    #[test]
    fn depth_one_is_zeta_two() {
        let c = ctx(25);
        let v = mzv_direct(&Composition::twos(1).unwrap(), &c, &tol(&c, "1e-25")).unwrap();
        assert_close(&v, "1.64493406684822643647241516665", "1e-24", &c);
    }

    #[test]
    fn depth_one_is_zeta_three() {
        let c = ctx(25);
        let v = mzv_direct(&Composition::new(vec![3]).unwrap(), &c, &tol(&c, "1e-25")).unwrap();
        assert_close(&v, "1.20205690315959428539973816151", "1e-24", &c);
    }

    #[test]
    fn double_twos() {
        // zeta(2,2) = pi^4/120
        let c = ctx(15);
        let v = mzv_direct(&Composition::twos(2).unwrap(), &c, &tol(&c, "1e-11")).unwrap();
        assert_close(&v, "0.811742425283353643637002772406", "1e-11", &c);
    }

    #[test]
    fn triple_twos_is_pi6_over_5040() {
        let c = ctx(15);
        let v = mzv_direct(&Composition::twos(3).unwrap(), &c, &tol(&c, "1e-11")).unwrap();
        assert_close(&v, "0.190751824122084213696472111836", "1e-11", &c);
    }

    #[test]
    fn two_three() {
        // zeta(2,3) = 3 zeta(2) zeta(3) - 11/2 zeta(5)
        let c = ctx(15);
        let v = mzv_direct(
            &Composition::new(vec![2, 3]).unwrap(),
            &c,
            &tol(&c, "1e-12"),
        )
        .unwrap();
        assert_close(&v, "0.228810397603353759768746148943", "1e-12", &c);
    }

    #[test]
    fn hurwitz_shift_minus_half_depth_one() {
        // sum (n - 1/2)^(-3) = 7 zeta(3)
        let c = ctx(20);
        let comp = Composition::new(vec![3]).unwrap();
        let shifts = ShiftVector::neg_half(1);
        let v = hurwitz_mzv_direct(&comp, &shifts, &c, &tol(&c, "1e-20")).unwrap();
        assert_close(&v, "8.41439832211715999779816713058", "1e-19", &c);
    }

    #[test]
    fn t_values() {
        let c = ctx(15);
        // t(2) = pi^2/8
        let v = tvalue_direct(&Composition::twos(1).unwrap(), &c, &tol(&c, "1e-13")).unwrap();
        assert_close(&v, "1.23370055013616982735431137498", "1e-13", &c);
        // t(3) = (7/8) zeta(3)
        let v = tvalue_direct(&Composition::new(vec![3]).unwrap(), &c, &tol(&c, "1e-13")).unwrap();
        assert_close(&v, "1.05179979026464499972477089132", "1e-13", &c);
        // t(2,3) by direct summation
        let v = tvalue_direct(
            &Composition::new(vec![2, 3]).unwrap(),
            &c,
            &tol(&c, "1e-11"),
        )
        .unwrap();
        assert_close(&v, "0.0538549671216170693686851801432", "1e-11", &c);
    }

    #[test]
    fn stuffle_product() {
        // zeta(2)^2 = 2 zeta(2,2) + zeta(4), at several context precisions.
        for digits in [15u32, 25, 40] {
            let c = ctx(digits);
            let e = tol(&c, "1e-11");
            let z2 = mzv_direct(&Composition::twos(1).unwrap(), &c, &e).unwrap();
            let z22 = mzv_direct(&Composition::twos(2).unwrap(), &c, &e).unwrap();
            let z4 = crate::numerics::zeta_int(4, &c).unwrap();
            let lhs = &z2 * &z2;
            let rhs = &(&c.int(2) * &z22) + &z4;
            let diff = (&lhs - &rhs).abs();
            assert!(diff <= tol(&c, "1e-10"), "digits={digits}: diff {diff}");
        }
    }

    #[test]
    fn t_scaling_identity() {
        // tvalue_direct = 2^(-weight) * hurwitz(all shifts -1/2)
        let c = ctx(15);
        let comp = Composition::new(vec![2, 3]).unwrap();
        let e = tol(&c, "1e-11");
        let t = tvalue_direct(&comp, &c, &e).unwrap();
        let h = hurwitz_mzv_direct(&comp, &ShiftVector::neg_half(2), &c, &e).unwrap();
        let scaled = &h / &c.int(2).powi(comp.weight());
        assert!((&t - &scaled).abs() <= tol(&c, "1e-11"));
    }

    #[test]
    fn zero_shift_reduction_is_same_path() {
        let c = ctx(15);
        let comp = Composition::new(vec![2, 3]).unwrap();
        let e = tol(&c, "1e-10");
        let a = mzv_direct(&comp, &c, &e).unwrap();
        let b = hurwitz_mzv_direct(&comp, &ShiftVector::zeros(2), &c, &e).unwrap();
        assert_eq!(a.to_rational(), b.to_rational());
    }

    #[test]
    fn tail_certificate_is_sound() {
        // |S_N - S_next| must stay within the width certified at N.
        let c = ctx(20);
        let comp = Composition::twos(2).unwrap();
        let shifts = ShiftVector::zeros(2);
        let e = tol(&c, "1e-30"); // unreachable at these budgets
        let (v1, w1) = hurwitz_mzv_certificate(&comp, &shifts, &c, &e, 1 << 12).unwrap();
        let (v2, _) = hurwitz_mzv_certificate(&comp, &shifts, &c, &e, 1 << 16).unwrap();
        let diff = (&v1 - &v2).abs();
        assert!(diff <= w1, "diff {diff} exceeds certified width {w1}");
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let c = ctx(20);
        let comp = Composition::twos(2).unwrap();
        let err = hurwitz_mzv_direct_with_budget(
            &comp,
            &ShiftVector::zeros(2),
            &c,
            &tol(&c, "1e-25"),
            4096,
        );
        assert!(matches!(err, Err(Error::AccuracyNotReached { .. })));
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![2, 1]).is_err()); // k_r = 1 diverges
        assert!(Composition::new(vec![0, 2]).is_err());
        assert!(ShiftVector::new(vec![rational_from_i64(-1, 1)]).is_err());
        assert!(ShiftVector::new(vec![rational_from_i64(-3, 2)]).is_err());

        let c = ctx(10);
        let comp = Composition::new(vec![1, 2]).unwrap(); // inner 1: valid composition,
        let e = tol(&c, "1e-8"); // but not certifiable by this oracle
        assert!(mzv_direct(&comp, &c, &e).is_err());

        let comp2 = Composition::new(vec![2, 2]).unwrap();
        assert!(hurwitz_mzv_direct(&comp2, &ShiftVector::zeros(1), &c, &e).is_err());
    }

    #[test]
    fn general_rational_shift() {
        // depth-2 with mixed shifts, checked against a 10x larger budget run
        let c = ctx(15);
        let comp = Composition::new(vec![2, 2]).unwrap();
        let shifts =
            ShiftVector::new(vec![rational_from_i64(1, 3), rational_from_i64(-1, 4)]).unwrap();
        let e = tol(&c, "1e-10");
        let v = hurwitz_mzv_direct(&comp, &shifts, &c, &e).unwrap();
        let v2 = hurwitz_mzv_direct(&comp, &shifts, &c, &tol(&c, "1e-12")).unwrap();
        assert!((&v - &v2).abs() <= tol(&c, "3e-10"));
    }
}
