//! Numerical kernels: modified Bessel functions, complex hyperbolic tangent,
//! adaptive Gauss–Legendre quadrature on finite intervals, the final-formula
//! integrals `I_{b,k,v}(n)` and `J_{k,v}(n)`, and the Mordell-type integrals
//! over the real line.
//!
//! Everything here is plain `f64` double precision. The integrands are smooth
//! on the integration paths (the tanh kernels are pole-free there by
//! construction), but can be sharply peaked near `x = 0` when the imaginary
//! part of the tanh argument approaches a multiple of pi; adaptive bisection
//! concentrates points where needed.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

pub type Complex = num_complex::Complex64;

/// Settings for the adaptive quadrature driver.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Absolute error target for one full integral.
    pub abs_tol: f64,
    /// Maximum bisection depth before giving up on a panel.
    pub max_depth: u32,
    /// Gauss–Legendre points per panel.
    pub panel_order: usize,
    /// Evaluate the [-1,1] integrals through the substitution `x = cos t`
    /// (stress-testing aid; the default direct path is accurate enough).
    pub cos_substitution: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-10, max_depth: 40, panel_order: 15, cos_substitution: false }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig { abs_tol, ..Default::default() }
    }
}

/// Result of one adaptive quadrature: the estimate, the accumulated error
/// estimate, and whether every panel met its share of the tolerance before
/// hitting the depth limit. Non-convergence is a flag, never a silent value.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex,
    pub error_estimate: f64,
    pub converged: bool,
}

/// Modified Bessel function `I_1` by its ascending power series
/// `sum_m (x/2)^{2m+1} / (m! (m+1)!)`; arguments in this crate stay modest
/// (a few hundred at most for the k=1 terms of large n).
pub fn bessel_i1(x: f64) -> f64 {
    assert!(x >= 0.0, "bessel_i1 requires x >= 0, got {x}");
    let half = x / 2.0;
    let x2 = half * half;
    let mut term = half; // m = 0
    let mut sum = term;
    let mut m = 0.0f64;
    loop {
        m += 1.0;
        term *= x2 / (m * (m + 1.0));
        sum += term;
        if term <= sum.abs() * 1e-17 {
            return sum;
        }
        assert!(m < 1e4, "bessel_i1 series failed to converge for x={x}");
    }
}

/// Modified Bessel function `I_0` (ascending series); used as a cross-check
/// for `I_1` via the derivative relation `I_0' = I_1`.
pub fn bessel_i0(x: f64) -> f64 {
    assert!(x >= 0.0);
    let half = x / 2.0;
    let x2 = half * half;
    let mut term = 1.0f64;
    let mut sum = term;
    let mut m = 0.0f64;
    loop {
        m += 1.0;
        term *= x2 / (m * m);
        sum += term;
        if term <= sum.abs() * 1e-17 {
            return sum;
        }
        assert!(m < 1e4);
    }
}

/// `I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)` in closed form.
pub fn bessel_i32(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_i32 requires x > 0, got {x}");
    if x < 0.05 {
        // cosh x - sinh x / x = x^2/3 + x^4/30 + x^6/840 + ...; the direct
        // difference loses ~x^2 digits to cancellation, so use the Taylor
        // polynomial (relative truncation error below 1e-13 at x = 0.05).
        let x2 = x * x;
        return (2.0 / (PI * x)).sqrt() * (x2 / 3.0) * (1.0 + x2 / 10.0 + x2 * x2 / 280.0);
    }
    (2.0 / (PI * x)).sqrt() * (x.cosh() - x.sinh() / x)
}

/// Complex hyperbolic tangent, stable for large `|Re w|` where the naive
/// ratio would overflow. Panics if the argument sits within 1e-14 of a pole
/// (odd multiple of i*pi/2); the integral specs guarantee this cannot happen
/// on the integration paths.
pub fn complex_tanh(w: Complex) -> Complex {
    let x = w.re;
    let y = w.im;
    if x.abs() > 20.0 {
        // tanh(x+iy) = sgn(x) + O(e^{-2|x|}); the correction is below 1e-17.
        return Complex::new(x.signum(), 0.0);
    }
    let denom = (2.0 * x).cosh() + (2.0 * y).cos();
    assert!(
        denom.abs() > 1e-14,
        "complex_tanh evaluated within 1e-14 of a pole: w = {w}"
    );
    Complex::new((2.0 * x).sinh() / denom, (2.0 * y).sin() / denom)
}

/// Gauss–Legendre nodes and weights on [-1,1], computed by Newton iteration
/// on the Legendre polynomial and cached per order.
fn gauss_legendre(order: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&order) {
        return Arc::clone(v);
    }
    let n = order;
    let mut table = Vec::with_capacity(n);
    for i in 1..=n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        table.push((x, w));
    }
    let arc = Arc::new(table);
    guard.insert(order, Arc::clone(&arc));
    arc
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn panel<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64, rule: &[(f64, f64)]) -> Complex {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex::new(0.0, 0.0);
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    acc * half
}

fn adapt<F: Fn(f64) -> Complex>(
    f: &F,
    a: f64,
    b: f64,
    whole: Complex,
    tol: f64,
    depth: u32,
    rule: &[(f64, f64)],
) -> (Complex, f64, bool) {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid, rule);
    let right = panel(f, mid, b, rule);
    let refined = left + right;
    let err = (refined - whole).norm();
    // Large integrands (the Bessel factor reaches 1e5 and beyond for big n)
    // cannot be resolved below their own roundoff floor; accepting at a
    // machine-relative threshold is convergence, not failure.
    let floor = 1e-14 * (left.norm() + right.norm());
    if err <= tol.max(floor) {
        return (refined, err, true);
    }
    if depth == 0 {
        return (refined, err, false);
    }
    let (lv, le, lc) = adapt(f, a, mid, left, 0.5 * tol, depth - 1, rule);
    let (rv, re, rc) = adapt(f, mid, b, right, 0.5 * tol, depth - 1, rule);
    (lv + rv, le + re, lc && rc)
}

/// Adaptive quadrature of `f` over `[a, b]`.
pub fn quad_interval<F: Fn(f64) -> Complex>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> QuadResult {
    assert!(a.is_finite() && b.is_finite() && a < b);
    let rule = gauss_legendre(cfg.panel_order);
    let whole = panel(&f, a, b, &rule);
    let (value, error_estimate, converged) = adapt(&f, a, b, whole, cfg.abs_tol, cfg.max_depth, &rule);
    assert!(value.re.is_finite() && value.im.is_finite(), "quadrature produced NaN/inf");
    QuadResult { value, error_estimate, converged }
}

/// Adaptive quadrature of `f` over `[-1, 1]`.
pub fn quad_finite<F: Fn(f64) -> Complex>(f: F, cfg: &QuadratureConfig) -> QuadResult {
    if cfg.cos_substitution {
        // x = cos t maps [0, pi] onto [-1, 1] and absorbs the endpoint
        // square-root of the weights into a smooth factor.
        quad_interval(move |t| f(t.cos()) * t.sin(), 0.0, PI, cfg)
    } else {
        quad_interval(f, -1.0, 1.0, cfg)
    }
}

/// The weight common to both final-formula integrals at a given point:
/// `sqrt(1-x^2) * I_1(c * sqrt(1-x^2))`.
fn bessel_weight(x: f64, c: f64) -> f64 {
    let s2 = (1.0 - x * x).max(0.0);
    let s = s2.sqrt();
    s * bessel_i1(c * s)
}

/// `I_{b,k,v}(n)`: integral over [-1,1] of
/// `sqrt(1-x^2) I_1(4 pi sqrt((n+1/2)(1-x^2)) / (b k)) /
///  tanh(pi i (6v+2)/(3k) - 2 pi x/(sqrt(3) b k))`.
pub fn integral_i_final(b: f64, k: i64, v: i64, n: i64, cfg: &QuadratureConfig) -> QuadResult {
    assert!(b > 0.0 && k >= 1 && n >= 0);
    let c = 4.0 * PI * ((n as f64 + 0.5).sqrt()) / (b * k as f64);
    let theta = PI * (6 * v + 2) as f64 / (3.0 * k as f64);
    let slope = 2.0 * PI / (3.0f64.sqrt() * b * k as f64);
    quad_finite(
        move |x| bessel_weight(x, c) / complex_tanh(Complex::new(-slope * x, theta)),
        cfg,
    )
}

/// `J_{k,v}(n)`: integral over [-1,1] of
/// `sqrt(1-x^2) I_1(pi sqrt(5(n+1/2)(1-x^2)) / (3k)) /
///  tanh(pi i (v-1/6)/k - sqrt(5) pi x/(6 sqrt(3) k))`.
pub fn integral_j_final(k: i64, v: i64, n: i64, cfg: &QuadratureConfig) -> QuadResult {
    assert!(k >= 1 && n >= 0);
    let c = PI * (5.0 * (n as f64 + 0.5)).sqrt() / (3.0 * k as f64);
    let theta = PI * (v as f64 - 1.0 / 6.0) / k as f64;
    let slope = 5.0f64.sqrt() * PI / (6.0 * 3.0f64.sqrt() * k as f64);
    quad_finite(
        move |x| bessel_weight(x, c) / complex_tanh(Complex::new(-slope * x, theta)),
        cfg,
    )
}

/// Truncation radius for the Mordell integrals: beyond `X` the Gaussian
/// factor is below `abs_tol / 10` in modulus.
fn mordell_radius(k: i64, z: Complex, tol: f64) -> f64 {
    (k as f64 * (10.0 / tol).ln() / (6.0 * PI * z.re)).sqrt()
}

fn mordell_common(k: i64, theta: f64, z: Complex, cfg: &QuadratureConfig) -> QuadResult {
    assert!(z.re > 0.0, "Mordell integrals need Re(z) > 0, got {z}");
    let kf = k as f64;
    let x_max = mordell_radius(k, z, cfg.abs_tol);
    quad_interval(
        move |x| {
            let gauss = (-6.0 * PI * z * x * x / kf).exp();
            let arg = Complex::new(0.0, theta) - 2.0 * PI * z * x / kf;
            gauss / complex_tanh(arg)
        },
        -x_max,
        x_max,
        cfg,
    )
}

/// Mordell-type integral `I_{k,v}(z)`: Gaussian weight `e^{-6 pi z x^2 / k}`
/// against `1/tanh(pi i (6v+2)/(3k) - 2 pi z x / k)`, over the real line.
pub fn mordell_i(k: i64, v: i64, z: Complex, cfg: &QuadratureConfig) -> QuadResult {
    mordell_common(k, PI * (6 * v + 2) as f64 / (3.0 * k as f64), z, cfg)
}

/// Mordell-type integral `J_{k,v}(z)`: same Gaussian against
/// `1/tanh(pi i (v - 1/6)/k - 2 pi z x / k)`.
pub fn mordell_j(k: i64, v: i64, z: Complex, cfg: &QuadratureConfig) -> QuadResult {
    mordell_common(k, PI * (v as f64 - 1.0 / 6.0) / k as f64, z, cfg)
}
