//! Assembly of the exact formula for pod2(n) from the Kloosterman sums and
//! integral kernels, the classical exact formula for p(n) as a calibration
//! of the shared machinery (multiplier, Bessel, summation), and numeric
//! checks of the modular transformation laws that the derivation rests on.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{
    bessel_i1, bessel_i32, integral_i_final, integral_j_final, mordell_i, mordell_j, Complex,
    QuadratureConfig,
};
use crate::kloosterman::{classical_a, kloosterman_closed, Family, KloostermanSpec};
use crate::modular::{canonical_inverse, omega_multiplier, GcdClass, UnitPhase};
use crate::qseries::{eval_product_log, f_mock_series, omega_mock_series, IntSeries};

/// When to declare the infinite k-sum converged: hard cap `k_max`, and the
/// last `tail_window` per-k blocks of every family must each be smaller
/// than `tail_threshold` in absolute value.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPolicy {
    pub k_max: i64,
    pub tail_window: usize,
    pub tail_threshold: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        // Per-k blocks at k near 100 still carry magnitudes around 1e-3
        // for small n; 1e-2 is the tightest threshold the default k_max
        // reliably satisfies while the estimate is already well within
        // rounding distance.
        TruncationPolicy { k_max: 100, tail_window: 5, tail_threshold: 1e-2 }
    }
}

/// Contribution of one of the four contributing families, with the per-k
/// blocks (in increasing k) kept for diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyContribution {
    pub family: u16,
    pub total_re: f64,
    pub total_im: f64,
    /// `(k, |block|)` in increasing k.
    pub per_k: Vec<(i64, f64)>,
}

/// Full outcome of one evaluation of the exact formula.
#[derive(Debug, Clone, Serialize)]
pub struct ExactResult {
    pub n: i64,
    pub estimate: f64,
    pub imag_residual: f64,
    pub rounded: i64,
    pub per_family: Vec<FamilyContribution>,
    pub k_max: i64,
    pub quad_tol: f64,
    pub converged: bool,
}

fn family_ks(class: GcdClass, k_max: i64) -> Vec<i64> {
    (1..=k_max).filter(|&k| GcdClass::of(k) == class).collect()
}

struct BlockOutcome {
    k: i64,
    value: Complex,
    quad_ok: bool,
}

/// The exact-formula estimate of pod2(n). Four families contribute:
/// gcd(k,6)=6 and one gcd(k,6)=2 series through the integrals
/// `I_{b,k,v}(n)` with b = sqrt(6) and 3 sqrt(2), a second gcd(k,6)=2
/// series through the plain Bessel kernel, and the gcd(k,6)=1 series
/// through `J_{k,v}(n)` with the literal prefactor 5 pi i/72. The total is
/// real up to quadrature error; `estimate` is its real part and
/// `imag_residual` the leftover imaginary magnitude.
pub fn pod2_exact(n: i64, policy: &TruncationPolicy, cfg: &QuadratureConfig) -> ExactResult {
    assert!(n >= 0);
    let s = n as f64 + 0.5;
    let root3s = (3.0 * s).sqrt();
    let sqrt6 = 6.0f64.sqrt();
    let b32 = 3.0 * 2.0f64.sqrt();

    // Family 621, gcd(k,6) = 6.
    let fam_621 = run_family(Family::K621.code(), family_ks(GcdClass::Six, policy.k_max), |k| {
        let mut acc = Complex::new(0.0, 0.0);
        let mut ok = true;
        for v in 0..k / 2 {
            let kl = kloosterman_closed(&KloostermanSpec::with_v(Family::K621, k, v, n)).unwrap();
            let integral = integral_i_final(sqrt6, k, v, n, cfg);
            ok &= integral.converged;
            let sign = if v % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * kl.value * integral.value;
        }
        (acc * PI / (3.0 * root3s) / (k * k) as f64, ok)
    });

    // Family 221, gcd(k,6) = 2, through I with b = 3 sqrt(2).
    let fam_221 = run_family(Family::K221.code(), family_ks(GcdClass::Two, policy.k_max), |k| {
        let mut acc = Complex::new(0.0, 0.0);
        let mut ok = true;
        for v in 0..k / 2 {
            let kl = kloosterman_closed(&KloostermanSpec::with_v(Family::K221, k, v, n)).unwrap();
            let integral = integral_i_final(b32, k, v, n, cfg);
            ok &= integral.converged;
            let sign = if v % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * kl.value * integral.value;
        }
        (acc * PI / (9.0 * root3s) / (k * k) as f64, ok)
    });

    // Family 231, gcd(k,6) = 2, plain Bessel kernel; no quadrature at all.
    let root2n1 = (2.0 * n as f64 + 1.0).sqrt();
    let fam_231 = run_family(Family::K231.code(), family_ks(GcdClass::Two, policy.k_max), |k| {
        let kl = kloosterman_closed(&KloostermanSpec::new(Family::K231, k, n)).unwrap();
        let bessel = bessel_i1(2.0 * PI * root2n1 / (3.0 * k as f64));
        (kl.value * bessel * PI / (3.0 * root2n1) / k as f64, true)
    });

    // Family 121, gcd(k,6) = 1, through J; prefactor carries the literal i.
    let pref_121 = Complex::new(0.0, 5.0 * PI / 72.0) / root3s;
    let fam_121 = run_family(Family::K121.code(), family_ks(GcdClass::One, policy.k_max), |k| {
        let mut acc = Complex::new(0.0, 0.0);
        let mut ok = true;
        for v in 0..k {
            let kl = kloosterman_closed(&KloostermanSpec::with_v(Family::K121, k, v, n)).unwrap();
            let integral = integral_j_final(k, v, n, cfg);
            ok &= integral.converged;
            acc += kl.value * integral.value;
        }
        (acc * pref_121 / (k * k) as f64, ok)
    });

    let families = vec![fam_621, fam_221, fam_231, fam_121];
    let total: Complex = families.iter().map(|f| Complex::new(f.0.total_re, f.0.total_im)).sum();
    let quad_ok = families.iter().all(|f| f.1);
    let tail_ok = families.iter().all(|f| {
        let blocks = &f.0.per_k;
        blocks.len() >= policy.tail_window
            && blocks[blocks.len() - policy.tail_window..]
                .iter()
                .all(|&(_, mag)| mag < policy.tail_threshold)
    });

    let estimate = total.re;
    let imag_residual = total.im.abs();
    let rounded = estimate.round() as i64;
    let converged =
        quad_ok && tail_ok && imag_residual < 1e-6 && (estimate - rounded as f64).abs() < 0.4;
    ExactResult {
        n,
        estimate,
        imag_residual,
        rounded,
        per_family: families.into_iter().map(|f| f.0).collect(),
        k_max: policy.k_max,
        quad_tol: cfg.abs_tol,
        converged,
    }
}

/// Evaluate one family's blocks in parallel over k, reducing in increasing
/// k for a deterministic result.
fn run_family(
    code: u16,
    ks: Vec<i64>,
    block: impl Fn(i64) -> (Complex, bool) + Sync,
) -> (FamilyContribution, bool) {
    let outcomes: Vec<BlockOutcome> = ks
        .par_iter()
        .map(|&k| {
            let (value, quad_ok) = block(k);
            BlockOutcome { k, value, quad_ok }
        })
        .collect();
    let mut total = Complex::new(0.0, 0.0);
    let mut per_k = Vec::with_capacity(outcomes.len());
    let mut ok = true;
    for o in &outcomes {
        total += o.value;
        per_k.push((o.k, o.value.norm()));
        ok &= o.quad_ok;
    }
    (FamilyContribution { family: code, total_re: total.re, total_im: total.im, per_k }, ok)
}

/// The classical exact formula for p(n), rounded. This exercises the
/// multiplier, the Kloosterman-style summation and the Bessel kernel on a
/// formula with a century of independent verification behind it.
pub fn p_exact(n: i64, k_max: i64) -> i64 {
    p_exact_estimate(n, k_max).round() as i64
}

pub fn p_exact_estimate(n: i64, k_max: i64) -> f64 {
    assert!(n >= 1 && k_max >= 1);
    let x = 24.0 * n as f64 - 1.0;
    let mut acc = 0.0;
    for k in 1..=k_max {
        let a = classical_a(k, n);
        acc += a.value.re / k as f64 * bessel_i32(PI * x.sqrt() / (6.0 * k as f64));
    }
    2.0 * PI * x.powf(-0.75) * acc
}

// ---------------------------------------------------------------------------
// Numeric transformation checks.
// ---------------------------------------------------------------------------

/// Shared sample-point data for one (h, k, z) configuration.
struct TransformPoint {
    /// log-point of q: q = e^w, w = 2 pi i (h + i z)/k
    w: Complex,
    /// log-point of q_1
    w1: Complex,
    h_prime: i64,
    k_prime: i64,
}

impl TransformPoint {
    fn new(h: i64, k: i64, z: Complex) -> Self {
        assert!(z.re > 0.0);
        let inv = canonical_inverse(h, k, GcdClass::of(k)).expect("coprime sample point");
        let i2pi = Complex::new(0.0, 2.0 * PI);
        let w = i2pi * (Complex::new(h as f64, 0.0) + Complex::new(0.0, 1.0) * z) / k as f64;
        let w1 = i2pi * (Complex::new(inv.h_prime as f64, 0.0) + Complex::new(0.0, 1.0) / z)
            / k as f64;
        TransformPoint { w, w1, h_prime: inv.h_prime, k_prime: inv.k_prime }
    }

    /// `P(q^r)` on the left-hand side.
    fn p_q(&self, r: f64, tol: f64) -> Complex {
        eval_product_log(r, self.w, tol).expect("|q^r| < 1 at sample points")
    }

    /// `P(q_1^r)`, fractional r meant as exp of the scaled log-point.
    fn p_q1(&self, r: f64, tol: f64) -> Complex {
        eval_product_log(r, self.w1, tol).expect("|q_1^r| < 1 at sample points")
    }

    fn omega_phase(&self, a: i64, c: i64) -> Complex {
        omega_multiplier(a, c).expect("coprime").to_complex()
    }
}

/// `e^{pi i r}` for exact rational r, as a complex number.
fn phase_pi(num: i64, den: i64) -> Complex {
    UnitPhase::from_half_turns(BigRational::new(BigInt::from(num), BigInt::from(den))).to_complex()
}

/// Numeric value of a truncated integer series at a complex point, by
/// Horner evaluation. The fixed order is generous for the sample points
/// used here (|u| <= 0.65, so the order-400 tail is far below 1e-12).
fn eval_series(series: &IntSeries, u: Complex) -> Complex {
    let mut acc = Complex::new(0.0, 0.0);
    for c in series.coeffs().iter().rev() {
        acc = acc * u + c.to_f64().expect("coefficient fits f64 range");
    }
    acc
}

const SERIES_ORDER: usize = 400;
const PRODUCT_TOL: f64 = 1e-13;

/// Residual of the P-transformation:
/// `P(q) = omega_{h,k} z^{1/2} e^{pi (1/z - z)/(12k)} P(q_1)`.
pub fn transform_check_p(h: i64, k: i64, z: Complex) -> f64 {
    let pt = TransformPoint::new(h, k, z);
    let lhs = pt.p_q(1.0, PRODUCT_TOL);
    let rhs = pt.omega_phase(h, k)
        * z.sqrt()
        * ((1.0 / z - z) * PI / (12.0 * k as f64)).exp()
        * pt.p_q1(1.0, PRODUCT_TOL);
    (lhs - rhs).norm()
}

/// Which eta-quotient a zeta check targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaVariant {
    Zeta1,
    Zeta2,
}

/// Residual of the zeta transformation for the gcd(k,6)-class of k; all
/// eight transformation laws (four classes, two quotients).
pub fn transform_check_zeta(variant: ZetaVariant, h: i64, k: i64, z: Complex) -> f64 {
    let pt = TransformPoint::new(h, k, z);
    let tol = PRODUCT_TOL;
    let kf = k as f64;
    let lhs = match variant {
        ZetaVariant::Zeta1 => pt.p_q(6.0, tol) * pt.p_q(1.0, tol) / pt.p_q(3.0, tol),
        ZetaVariant::Zeta2 => {
            pt.p_q(3.0, tol) * pt.p_q(2.0, tol) * pt.p_q(1.0, tol) / pt.p_q(6.0, tol).powi(3)
        }
    };
    let rhs = match (GcdClass::of(k), variant) {
        (GcdClass::Six, ZetaVariant::Zeta1) => {
            pt.omega_phase(h, k / 6) * pt.omega_phase(h, k) / pt.omega_phase(h, k / 3)
                * z.sqrt()
                * ((1.0 / z - z) * PI / (3.0 * kf)).exp()
                * (pt.p_q1(6.0, tol) * pt.p_q1(1.0, tol) / pt.p_q1(3.0, tol))
        }
        (GcdClass::Two, ZetaVariant::Zeta1) => {
            pt.omega_phase(3 * h, k / 2) * pt.omega_phase(h, k) / pt.omega_phase(3 * h, k)
                * z.sqrt()
                * (PI / (9.0 * kf * z) - PI * z / (3.0 * kf)).exp()
                * (pt.p_q1(1.0, tol) * pt.p_q1(2.0 / 3.0, tol) / pt.p_q1(1.0 / 3.0, tol))
        }
        (GcdClass::Three, ZetaVariant::Zeta1) => {
            2.0f64.sqrt()
                * pt.omega_phase(2 * h, k / 3) * pt.omega_phase(h, k) / pt.omega_phase(h, k / 3)
                * z.sqrt()
                * (-PI / (24.0 * kf * z) - PI * z / (3.0 * kf)).exp()
                * (pt.p_q1(1.0, tol) * pt.p_q1(1.5, tol) / pt.p_q1(3.0, tol))
        }
        (GcdClass::One, ZetaVariant::Zeta1) => {
            2.0f64.sqrt()
                * pt.omega_phase(6 * h, k) * pt.omega_phase(h, k) / pt.omega_phase(3 * h, k)
                * z.sqrt()
                * (5.0 * PI / (72.0 * kf * z) - PI * z / (3.0 * kf)).exp()
                * (pt.p_q1(1.0, tol) * pt.p_q1(1.0 / 6.0, tol) / pt.p_q1(1.0 / 3.0, tol))
        }
        (GcdClass::Six, ZetaVariant::Zeta2) => {
            pt.omega_phase(h, k / 3) * pt.omega_phase(h, k / 2) * pt.omega_phase(h, k)
                / pt.omega_phase(h, k / 6).powi(3)
                * (-(1.0 / z - z) * PI / kf).exp()
                * (pt.p_q1(3.0, tol) * pt.p_q1(2.0, tol) * pt.p_q1(1.0, tol)
                    / pt.p_q1(6.0, tol).powi(3))
        }
        (GcdClass::Two, ZetaVariant::Zeta2) => {
            1.0 / 3.0
                * pt.omega_phase(3 * h, k) * pt.omega_phase(h, k / 2) * pt.omega_phase(h, k)
                / pt.omega_phase(3 * h, k / 2).powi(3)
                * (PI / (9.0 * kf * z) + PI * z / kf).exp()
                * (pt.p_q1(1.0 / 3.0, tol) * pt.p_q1(2.0, tol) * pt.p_q1(1.0, tol)
                    / pt.p_q1(2.0 / 3.0, tol).powi(3))
        }
        (GcdClass::Three, ZetaVariant::Zeta2) => {
            0.5 * pt.omega_phase(h, k / 3) * pt.omega_phase(2 * h, k) * pt.omega_phase(h, k)
                / pt.omega_phase(2 * h, k / 3).powi(3)
                * (PI * z / kf).exp()
                * (pt.p_q1(3.0, tol) * pt.p_q1(0.5, tol) * pt.p_q1(1.0, tol)
                    / pt.p_q1(1.5, tol).powi(3))
        }
        (GcdClass::One, ZetaVariant::Zeta2) => {
            1.0 / 6.0
                * pt.omega_phase(3 * h, k) * pt.omega_phase(2 * h, k) * pt.omega_phase(h, k)
                / pt.omega_phase(6 * h, k).powi(3)
                * (PI / (9.0 * kf * z) + PI * z / kf).exp()
                * (pt.p_q1(1.0 / 3.0, tol) * pt.p_q1(0.5, tol) * pt.p_q1(1.0, tol)
                    / pt.p_q1(1.0 / 6.0, tol).powi(3))
        }
    };
    (lhs - rhs).norm()
}

/// Residual of the even-k transformation of the mock theta function omega:
/// omega(q) against omega(q_1) plus a mu-shifted sum of Mordell integrals.
pub fn transform_check_omega_even(h: i64, k: i64, z: Complex, cfg: &QuadratureConfig) -> f64 {
    assert!(k % 2 == 0);
    let pt = TransformPoint::new(h, k, z);
    let (hp, kp) = (pt.h_prime, pt.k_prime);
    let kf = k as f64;
    let omega_series = omega_mock_series(SERIES_ORDER);
    let lhs = eval_series(&omega_series, pt.w.exp());

    // i (-1)^{(h'+1)/2} e^{-3 pi i h'k'/2 + 3 pi i (h'-h)/(2k)}
    let sign = phase_pi((hp + 1) / 2, 1);
    let pref1 = Complex::new(0.0, 1.0)
        * sign
        * phase_pi(-3 * hp * kp, 2)
        * phase_pi(3 * (hp - h), 2 * k);
    let term1 = pref1
        * pt.omega_phase(h, k / 2)
        * z.sqrt().inv()
        * (-4.0 * PI / (3.0 * kf * z) + 4.0 * PI * z / (3.0 * kf)).exp()
        * eval_series(&omega_series, pt.w1.exp());

    let pref2 = -2.0 / kf
        * sign
        * phase_pi(-3 * hp * kp, 2)
        * phase_pi(-3 * h, 2 * k)
        * pt.omega_phase(h, k / 2)
        * z.sqrt()
        * (4.0 * PI * z / (3.0 * kf)).exp();
    let mut msum = Complex::new(0.0, 0.0);
    for v in 0..k / 2 {
        // e^{-6 pi i h' mu^2/k + 2 pi i h' mu/k} with mu = v + 1/2 equals
        // e^{2 pi i h' (mu - 3 mu^2)/k}; mu - 3 mu^2 = -(12v^2 + 8v + 1)/4.
        let shift = UnitPhase::from_turns(BigRational::new(
            BigInt::from(-hp as i128 * (12 * v as i128 * v as i128 + 8 * v as i128 + 1)),
            BigInt::from(4 * k as i128),
        ))
        .to_complex();
        let sgn = if v % 2 == 0 { 1.0 } else { -1.0 };
        msum += sgn * shift * mordell_i(k, v, z, cfg).value;
    }
    (lhs - term1 - pref2 * msum).norm()
}

/// Residual of the odd-k transformation of omega: omega(q) against
/// f(q_1^{1/2}) plus a sum of Mordell J integrals.
pub fn transform_check_omega_odd(h: i64, k: i64, z: Complex, cfg: &QuadratureConfig) -> f64 {
    assert!(k % 2 == 1);
    let pt = TransformPoint::new(h, k, z);
    let hp = pt.h_prime;
    let kf = k as f64;
    let lhs = eval_series(&omega_mock_series(SERIES_ORDER), pt.w.exp());

    let common = phase_pi((k - 1) / 2, 1)
        * phase_pi(3 * h * k, 2)
        * phase_pi(-3 * h, 2 * k)
        * pt.omega_phase(2 * h, k);
    let term1 = 1.0 / (2.0 * 2.0f64.sqrt())
        * z.sqrt().inv()
        * common
        * (PI / (24.0 * kf * z) + 4.0 * PI * z / (3.0 * kf)).exp()
        * eval_series(&f_mock_series(SERIES_ORDER), (0.5 * pt.w1).exp());

    let pref2 = Complex::new(0.0, 1.0)
        * common
        * (4.0 * PI * z / (3.0 * kf)).exp()
        / kf
        * (2.0 * z).sqrt();
    let mut msum = Complex::new(0.0, 0.0);
    for v in 0..k {
        // e^{-3 pi i h' v^2/(2k) + pi i h' v/(2k)} = e^{pi i h' (v - 3v^2)/(2k)}
        let shift = UnitPhase::from_half_turns(BigRational::new(
            BigInt::from(hp as i128 * (v as i128 - 3 * v as i128 * v as i128)),
            BigInt::from(2 * k as i128),
        ))
        .to_complex();
        msum += shift * mordell_j(k, v, z, cfg).value;
    }
    (lhs - term1 - pref2 * msum).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{partition_series, pod2_count_batch};

    fn z(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn p_exact_matches_oracle_spot() {
        let p = partition_series(1, 100);
        for (n, k_max) in [(10i64, 10i64), (50, 30), (100, 40)] {
            let want = p.coeff(n as usize).to_i64().unwrap();
            assert_eq!(p_exact(n, k_max), want, "n={n}");
        }
    }

    #[test]
    fn transform_p_samples() {
        assert!(transform_check_p(0, 1, z(1.0)) < 1e-8);
        assert!(transform_check_p(1, 2, z(1.0)) < 1e-8);
        assert!(transform_check_p(1, 3, z(0.8)) < 1e-8);
        assert!(transform_check_p(2, 5, Complex::new(0.9, 0.2)) < 1e-8);
    }

    #[test]
    fn transform_zeta_samples() {
        let cases: &[(ZetaVariant, i64, i64, f64)] = &[
            (ZetaVariant::Zeta1, 1, 6, 1.0),
            (ZetaVariant::Zeta1, 1, 2, 1.0),
            (ZetaVariant::Zeta1, 1, 3, 1.0),
            (ZetaVariant::Zeta1, 0, 1, 1.0),
            (ZetaVariant::Zeta2, 1, 6, 1.0),
            (ZetaVariant::Zeta2, 1, 2, 1.0),
            (ZetaVariant::Zeta2, 1, 3, 1.0),
            (ZetaVariant::Zeta2, 0, 1, 1.0),
        ];
        for &(variant, h, k, zr) in cases {
            let r = transform_check_zeta(variant, h, k, z(zr));
            assert!(r < 1e-8, "variant {variant:?} h={h} k={k}: residual {r}");
        }
    }

    #[test]
    fn transform_omega_even_samples() {
        let cfg = QuadratureConfig::default();
        for &(h, k) in &[(1i64, 2i64), (1, 6)] {
            let r = transform_check_omega_even(h, k, z(1.0), &cfg);
            assert!(r < 1e-6, "h={h} k={k}: residual {r}");
        }
    }

    #[test]
    fn transform_omega_odd_samples() {
        let cfg = QuadratureConfig::default();
        let cases: &[(i64, i64, f64)] = &[(0, 1, 1.0), (1, 3, 1.0), (2, 5, 0.9)];
        for &(h, k, zr) in cases {
            let r = transform_check_omega_odd(h, k, z(zr), &cfg);
            assert!(r < 1e-6, "h={h} k={k}: residual {r}");
        }
    }

    #[test]
    fn pod2_exact_first_values() {
        let policy = TruncationPolicy { k_max: 60, ..Default::default() };
        let cfg = QuadratureConfig::default();
        let oracle = pod2_count_batch(6);
        for n in [0i64, 4, 6] {
            let r = pod2_exact(n, &policy, &cfg);
            assert_eq!(
                r.rounded,
                oracle[n as usize].to_i64().unwrap(),
                "n={n}: estimate {} residual {}",
                r.estimate,
                r.imag_residual
            );
            assert!(r.imag_residual < 1e-6);
        }
    }

    #[test]
    fn family_231_block_hand_assembled() {
        // The k=2 block of family 231 must equal prefactor * K * I_1 exactly.
        let n = 3i64;
        let policy = TruncationPolicy { k_max: 10, ..Default::default() };
        let r = pod2_exact(n, &policy, &QuadratureConfig::default());
        let fam = r.per_family.iter().find(|f| f.family == 231).unwrap();
        let (k2, mag) = fam.per_k[0];
        assert_eq!(k2, 2);
        let kl = kloosterman_closed(&KloostermanSpec::new(Family::K231, 2, n)).unwrap();
        let root = (2.0 * n as f64 + 1.0).sqrt();
        let expect = kl.value * bessel_i1(2.0 * PI * root / 6.0) * PI / (3.0 * root) / 2.0;
        assert!((expect.norm() - mag).abs() < 1e-12);
    }
}
