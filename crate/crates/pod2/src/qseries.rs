//! Exact integer q-series: Pochhammer products, eta-quotients, the three
//! third-order mock theta functions used here (rho, omega, f), the pod2
//! generating function via two independent routes, and a direct
//! combinatorial counting oracle.
//!
//! All identity testing happens on exact `BigInt` coefficients; floating
//! point enters only through [`eval_product_num`] / [`eval_product_log`],
//! the numeric product evaluators used by the transformation checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::analytic::Complex;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("series is not invertible: constant term {0} is not a unit")]
    NotInvertible(BigInt),
    #[error("point has modulus {0} >= 1; infinite products diverge")]
    PointOutsideDisk(f64),
}

/// A truncated power series in q with exact integer coefficients;
/// `coeffs[i]` is the coefficient of `q^i` and the truncation order is
/// `coeffs.len() - 1`. Products truncate to the smaller order of the two
/// operands; nothing is ever extended silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        IntSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntSeries::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        IntSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Truncate (or keep) to the given order; panics if asked to extend.
    pub fn truncated(&self, order: usize) -> IntSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        IntSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        let n = self.order().min(other.order());
        IntSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        let n = self.order().min(other.order());
        IntSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> IntSeries {
        let c = BigInt::from(c);
        IntSeries { coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Multiply by `q^s` (shift exponents up), dropping overflow past the order.
    pub fn shifted(&self, s: usize) -> IntSeries {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for i in s..=n {
            coeffs[i] = self.coeffs[i - s].clone();
        }
        IntSeries { coeffs }
    }
}

/// Truncated Cauchy product, carried to the smaller of the two orders.
pub fn series_mul(a: &IntSeries, b: &IntSeries) -> IntSeries {
    let n = a.order().min(b.order());
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=n - i {
            if !b.coeffs[j].is_zero() {
                coeffs[i + j] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
    }
    IntSeries { coeffs }
}

/// Multiplicative inverse of a series with unit constant term.
pub fn series_inv(a: &IntSeries) -> Result<IntSeries, SeriesError> {
    let c0 = &a.coeffs[0];
    if !(c0 == &BigInt::one() || c0 == &(-BigInt::one())) {
        return Err(SeriesError::NotInvertible(c0.clone()));
    }
    let n = a.order();
    let mut inv = vec![BigInt::zero(); n + 1];
    inv[0] = c0.clone(); // 1/c0 = c0 for c0 = +-1
    for i in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=i {
            if !a.coeffs[j].is_zero() {
                acc += &a.coeffs[j] * &inv[i - j];
            }
        }
        inv[i] = -acc * c0;
    }
    Ok(IntSeries { coeffs: inv })
}

/// `(q^r; q^r)_inf` truncated at the given order.
pub fn pochhammer_series(r: usize, order: usize) -> IntSeries {
    assert!(r >= 1);
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    let mut j = 1;
    while r * j <= order {
        let step = r * j;
        // Multiply in place by (1 - q^step).
        for i in (step..=order).rev() {
            let t = coeffs[i - step].clone();
            coeffs[i] -= t;
        }
        j += 1;
    }
    IntSeries { coeffs }
}

/// `P(q^r) = 1/(q^r; q^r)_inf`; for r = 1 the coefficients are the
/// unrestricted partition numbers p(n).
pub fn partition_series(r: usize, order: usize) -> IntSeries {
    series_inv(&pochhammer_series(r, order)).expect("Pochhammer has constant term 1")
}

/// Generic mock-theta-style sum: `sum_n q^{offset(n)} / denom(n)` where
/// `denom(n)` is the exact polynomial denominator of the n-th term and the
/// sum runs while `offset(n) <= order`.
fn mock_theta_sum(
    order: usize,
    offset: impl Fn(usize) -> usize,
    denom_factor: impl Fn(usize, usize) -> IntSeries,
) -> IntSeries {
    let mut total = IntSeries { coeffs: vec![BigInt::zero(); order + 1] };
    let mut denom = IntSeries::one(order);
    let mut n = 0usize;
    while offset(n) <= order {
        denom = series_mul(&denom, &denom_factor(n, order));
        let term = series_inv(&denom).expect("denominator has constant term 1");
        total = total.add(&term.shifted(offset(n)));
        n += 1;
    }
    total
}

/// A sparse polynomial `1 + sum_i c_i q^{e_i}` at the given order.
fn sparse_poly(order: usize, terms: &[(usize, i64)]) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for &(e, c) in terms {
        if e <= order {
            coeffs[e] += BigInt::from(c);
        }
    }
    IntSeries { coeffs }
}

/// Ramanujan's third-order mock theta function
/// `rho(q) = sum_n q^{2n(n+1)} / prod_{j=0}^{n} (1 + q^{2j+1} + q^{4j+2})`.
pub fn rho_series(order: usize) -> IntSeries {
    mock_theta_sum(
        order,
        |n| 2 * n * (n + 1),
        |n, ord| sparse_poly(ord, &[(2 * n + 1, 1), (4 * n + 2, 1)]),
    )
}

/// Third-order `omega(q) = sum_n q^{2n(n+1)} / ((q; q^2)_{n+1})^2`;
/// the denominator factor at step n is `(1 - q^{2n+1})^2`.
pub fn omega_mock_series(order: usize) -> IntSeries {
    mock_theta_sum(
        order,
        |n| 2 * n * (n + 1),
        |n, ord| {
            let f = sparse_poly(ord, &[(2 * n + 1, -1)]);
            series_mul(&f, &f)
        },
    )
}

/// Third-order `f(q) = sum_n q^{n^2} / ((-q; q)_n)^2`; the denominator
/// factor at step n >= 1 is `(1 + q^n)^2`.
pub fn f_mock_series(order: usize) -> IntSeries {
    mock_theta_sum(
        order,
        |n| n * n,
        |n, ord| {
            if n == 0 {
                IntSeries::one(ord)
            } else {
                let f = sparse_poly(ord, &[(n, 1)]);
                series_mul(&f, &f)
            }
        },
    )
}

/// `zeta_1 = P(q^6) P(q) / P(q^3) = (q^3;q^3)_inf / ((q^6;q^6)_inf (q;q)_inf)`.
pub fn zeta1_series(order: usize) -> IntSeries {
    let num = pochhammer_series(3, order);
    let den = series_mul(&pochhammer_series(6, order), &pochhammer_series(1, order));
    series_mul(&num, &series_inv(&den).unwrap())
}

/// `zeta_2 = P(q^3) P(q^2) P(q) / P(q^6)^3 = (q^6;q^6)^3 / ((q^3;q^3)(q^2;q^2)(q;q))`.
pub fn zeta2_series(order: usize) -> IntSeries {
    let p6 = pochhammer_series(6, order);
    let num = series_mul(&series_mul(&p6, &p6), &p6);
    let den = series_mul(
        &series_mul(&pochhammer_series(3, order), &pochhammer_series(2, order)),
        &pochhammer_series(1, order),
    );
    series_mul(&num, &series_inv(&den).unwrap())
}

/// The pod2 generating function as the product `zeta_1 * rho`.
pub fn pod2_series_identity(order: usize) -> IntSeries {
    series_mul(&zeta1_series(order), &rho_series(order))
}

/// The pod2 generating function via the decomposition
/// `-1/2 zeta_1 omega + 3/2 zeta_2`. The halves must cancel exactly; a
/// non-integral coefficient is an implementation bug and panics.
pub fn pod2_series_decomposition(order: usize) -> IntSeries {
    let a = series_mul(&zeta1_series(order), &omega_mock_series(order));
    let b = zeta2_series(order);
    let coeffs = (0..=order)
        .map(|i| {
            let t = BigInt::from(3) * b.coeff(i) - a.coeff(i);
            let (q, r) = num_integer::Integer::div_rem(&t, &BigInt::from(2));
            assert!(r.is_zero(), "decomposition coefficient {i} is not integral: {t}/2");
            q
        })
        .collect();
    IntSeries::from_coeffs(coeffs)
}

/// Right-hand side of the rho-omega identity:
/// `2 rho + omega = 3 (q^6;q^6)^4 / ((q^3;q^3)^2 (q^2;q^2))`.
pub fn rho_omega_eta_quotient(order: usize) -> IntSeries {
    let p6 = pochhammer_series(6, order);
    let p6_2 = series_mul(&p6, &p6);
    let num = series_mul(&p6_2, &p6_2);
    let p3 = pochhammer_series(3, order);
    let den = series_mul(&series_mul(&p3, &p3), &pochhammer_series(2, order));
    series_mul(&num, &series_inv(&den).unwrap()).scale(3)
}

/// `pod2(n)` for all `0 <= n <= max` by dynamic programming. Parts are
/// introduced smallest-first; even parts are unrestricted, odd parts carry
/// the multiplicity cap 2 (factor `1 + q^b + q^{2b}`). After an even part b
/// enters, every partition of `n - b` into parts <= b extends to a counted
/// partition with largest part exactly b.
pub fn pod2_count_batch(max: usize) -> Vec<BigInt> {
    let mut counted = vec![BigInt::zero(); max + 1];
    counted[0] = BigInt::one(); // empty partition, by convention
    // d[m] = partitions of m into parts <= b with the odd-part cap.
    let mut d = vec![BigInt::zero(); max + 1];
    d[0] = BigInt::one();
    for b in 1..=max {
        if b % 2 == 0 {
            for m in b..=max {
                let t = d[m - b].clone();
                d[m] += t;
            }
            for m in b..=max {
                let t = d[m - b].clone();
                counted[m] += t;
            }
        } else {
            let mut next = d.clone();
            for m in b..=max {
                next[m] += &d[m - b];
                if m >= 2 * b {
                    next[m] += &d[m - 2 * b];
                }
            }
            d = next;
        }
    }
    counted
}

/// `pod2(n)` for a single n.
pub fn pod2_count_oracle(n: usize) -> BigInt {
    pod2_count_batch(n).pop().unwrap()
}

/// Numeric `P(t^r) = prod_{j>=1} (1 - t^{rj})^{-1}` at a complex point with
/// `|t| < 1`, via the principal branch of `t^r`. Truncation stops when the
/// remaining tail is below `tol`.
pub fn eval_product_num(r: f64, t: Complex, tol: f64) -> Result<Complex, SeriesError> {
    assert!(r > 0.0 && tol > 0.0);
    if t.norm() >= 1.0 {
        return Err(SeriesError::PointOutsideDisk(t.norm()));
    }
    if t.norm() == 0.0 {
        return Ok(Complex::new(1.0, 0.0));
    }
    let u = t.powf(r);
    if u.norm() >= 1.0 {
        return Err(SeriesError::PointOutsideDisk(u.norm()));
    }
    Ok(product_from_ratio(u, tol))
}

/// Numeric `prod_{j>=1} (1 - e^{r j w})^{-1}` for a log-point `w` with
/// `Re(r w) < 0`. This sidesteps principal-branch ambiguity entirely: the
/// fractional power `q_1^r` of the transformation formulas means
/// `e^{r * (log-point)}` with the specific logarithm `w = 2 pi i (h' + i/z)/k`,
/// not a principal power of the complex value `q_1`.
pub fn eval_product_log(r: f64, w: Complex, tol: f64) -> Result<Complex, SeriesError> {
    assert!(r > 0.0 && tol > 0.0);
    let u = (r * w).exp();
    if u.norm() >= 1.0 {
        return Err(SeriesError::PointOutsideDisk(u.norm()));
    }
    Ok(product_from_ratio(u, tol))
}

fn product_from_ratio(u: Complex, tol: f64) -> Complex {
    let mut prod = Complex::new(1.0, 0.0);
    let mut upow = u;
    let abs_u = u.norm();
    loop {
        prod *= 1.0 - upow;
        let next = upow * u;
        // Tail bound: |log prod_{j>n}(1-u^j)| <= sum |u|^j = |u|^{n+1}/(1-|u|).
        if next.norm() / (1.0 - abs_u) < tol * 0.01 {
            break;
        }
        upow = next;
    }
    1.0 / prod
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_i64(s: &IntSeries) -> Vec<i64> {
        use num_traits::ToPrimitive;
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn pochhammer_prefixes() {
        assert_eq!(coeffs_i64(&pochhammer_series(1, 7)), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        assert_eq!(coeffs_i64(&pochhammer_series(2, 2)), vec![1, 0, -1]);
        assert_eq!(coeffs_i64(&pochhammer_series(1, 0)), vec![1]);
    }

    #[test]
    fn partition_prefixes() {
        assert_eq!(coeffs_i64(&partition_series(1, 6)), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(coeffs_i64(&partition_series(3, 2)), vec![1, 0, 0]);
        assert_eq!(coeffs_i64(&partition_series(1, 0)), vec![1]);
    }

    #[test]
    fn mul_and_inv_basics() {
        let a = IntSeries::from_i64(&[1, 1]);
        let b = IntSeries::from_i64(&[1, -1]);
        assert_eq!(coeffs_i64(&series_mul(&a, &b)), vec![1, 0]);
        let geo = series_inv(&IntSeries::from_i64(&[1, -1, 0, 0, 0])).unwrap();
        assert_eq!(coeffs_i64(&geo), vec![1, 1, 1, 1, 1]);
        let n = 40;
        let prod = series_mul(&pochhammer_series(1, n), &partition_series(1, n));
        assert_eq!(prod, IntSeries::one(n));
        assert!(series_inv(&IntSeries::from_i64(&[2, 1])).is_err());
    }

    #[test]
    fn inv_is_involutive_and_mul_commutes() {
        let a = partition_series(2, 30);
        assert_eq!(series_inv(&series_inv(&a).unwrap()).unwrap(), a);
        let b = zeta1_series(30);
        let c = rho_series(30);
        assert_eq!(series_mul(&a, &b), series_mul(&b, &a));
        assert_eq!(
            series_mul(&series_mul(&a, &b), &c),
            series_mul(&a, &series_mul(&b, &c))
        );
    }

    #[test]
    fn mock_theta_prefixes() {
        assert_eq!(coeffs_i64(&rho_series(1)), vec![1, -1]);
        assert_eq!(coeffs_i64(&omega_mock_series(4)), vec![1, 2, 3, 4, 6]);
        assert_eq!(coeffs_i64(&f_mock_series(4)), vec![1, 1, -2, 3, -3]);
    }

    #[test]
    fn rho_omega_identity() {
        let n = 200;
        let lhs = rho_series(n).scale(2).add(&omega_mock_series(n));
        assert_eq!(lhs, rho_omega_eta_quotient(n));
    }

    #[test]
    fn zeta_prefixes() {
        let z1 = zeta1_series(4);
        assert_eq!(z1.coeff(0), &BigInt::from(1));
        assert_eq!(z1.coeff(1), &BigInt::from(1));
        assert_eq!(zeta2_series(4).coeff(0), &BigInt::from(1));
    }

    #[test]
    fn pod2_routes_agree_with_oracle() {
        let n = 200;
        let ident = pod2_series_identity(n);
        let decomp = pod2_series_decomposition(n);
        assert_eq!(ident, decomp);
        let oracle = pod2_count_batch(n);
        assert_eq!(ident.coeffs(), &oracle[..]);
    }

    #[test]
    fn pod2_small_values() {
        let v = pod2_count_batch(6);
        let got: Vec<i64> = v.iter().map(|c| num_traits::ToPrimitive::to_i64(c).unwrap()).collect();
        assert_eq!(got, vec![1, 0, 1, 1, 3, 2, 5]);
        assert_eq!(pod2_count_oracle(4), BigInt::from(3));
    }

    #[test]
    fn pod2_positive_at_even_n() {
        let v = pod2_count_batch(100);
        for n in (2..=100).step_by(2) {
            assert!(v[n] >= BigInt::one(), "pod2({n}) = {}", v[n]);
        }
        assert!(v[1].is_zero());
    }

    #[test]
    fn eval_product_matches_series() {
        // Compare against exact partition coefficients at a real point.
        let t = Complex::new(0.1, 0.0);
        let val = eval_product_num(1.0, t, 1e-14).unwrap();
        let p = partition_series(1, 40);
        let series_val: f64 = (0..=40)
            .map(|i| num_traits::ToPrimitive::to_f64(p.coeff(i)).unwrap() * 0.1f64.powi(i as i32))
            .sum();
        assert!((val.re - series_val).abs() < 1e-12);
        assert!((val.re - 1.1235827548486525).abs() < 1e-12);
        assert_eq!(eval_product_num(1.0, Complex::new(0.0, 0.0), 1e-12).unwrap(), Complex::new(1.0, 0.0));
        assert!(eval_product_num(1.0, Complex::new(1.0, 0.1), 1e-12).is_err());
    }

    #[test]
    fn eval_product_conjugation() {
        let t = Complex::new(0.3, 0.4);
        let a = eval_product_num(1.0, t.conj(), 1e-13).unwrap();
        let b = eval_product_num(1.0, t, 1e-13).unwrap().conj();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn eval_product_log_matches_num_for_integer_r() {
        // For integer r on the principal strip the two evaluators agree.
        let w = Complex::new(-0.5, 1.3); // t = e^w, |t| < 1
        let t = w.exp();
        for r in [1.0, 2.0, 3.0] {
            let a = eval_product_log(r, w, 1e-13).unwrap();
            let b = eval_product_num(r, t, 1e-13).unwrap();
            assert!((a - b).norm() < 1e-11, "r={r}");
        }
    }
}
