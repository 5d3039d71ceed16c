//! End-to-end acceptance gate: nine criteria, one test (and one printed
//! pass/fail line) each. Run with `--nocapture` to see the lines and
//! timings even on success.

use std::f64::consts::PI;
use std::time::Instant;

use num_integer::Integer;
use num_traits::ToPrimitive;

use pod2::analytic::{
    bessel_i1, bessel_i32, integral_i_final, integral_j_final, mordell_i, mordell_j, quad_finite,
    Complex, QuadratureConfig,
};
use pod2::kloosterman::{
    bound_ratio, identity_3_1_check, kloosterman_closed, kloosterman_definition,
    kloosterman_sum_shifted, Family, KloostermanSpec, Route, ALL_FAMILIES,
};
use pod2::modular::{dedekind_phase, omega_multiplier};
use pod2::qseries::{
    pod2_count_batch, pod2_count_oracle, pod2_series_decomposition, pod2_series_identity,
    rho_omega_eta_quotient, rho_series,
};
use pod2::rademacher::{p_exact, pod2_exact, TruncationPolicy};

fn report(criterion: u32, name: &str, started: Instant) {
    println!("PASS criterion {criterion} ({name}) in {:.2?}", started.elapsed());
}

#[test]
fn criterion_1_oracle_ground_truth() {
    let t = Instant::now();
    let expected = [(0usize, 1i64), (2, 1), (3, 1), (4, 3), (5, 2), (6, 5)];
    for (n, want) in expected {
        assert_eq!(pod2_count_oracle(n).to_i64().unwrap(), want, "pod2({n})");
    }
    assert!(t.elapsed().as_secs() < 1, "criterion 1 runtime");
    report(1, "oracle ground truth", t);
}

#[test]
fn criterion_2_identity_suite() {
    let t = Instant::now();
    let order = 200;
    let via_identity = pod2_series_identity(order);
    let via_decomposition = pod2_series_decomposition(order);
    let oracle = pod2_count_batch(order);
    for i in 0..=order {
        assert_eq!(via_identity.coeff(i), via_decomposition.coeff(i), "n={i}");
        assert_eq!(*via_identity.coeff(i), oracle[i], "n={i} vs oracle");
    }
    // rho-omega identity: 2 rho + omega equals an eta quotient.
    let lhs = rho_series(order).scale(2).add(&pod2::qseries::omega_mock_series(order));
    let rhs = rho_omega_eta_quotient(order);
    for i in 0..=order {
        assert_eq!(lhs.coeff(i), rhs.coeff(i), "rho-omega n={i}");
    }
    assert!(t.elapsed().as_secs() < 30, "criterion 2 runtime");
    report(2, "identity suite exact through N=200", t);
}

#[test]
fn criterion_3_multiplier_suite() {
    let t = Instant::now();
    for k in 1..=60i64 {
        for h in 0..k {
            if h.gcd(&k) != 1 {
                continue;
            }
            assert_eq!(
                omega_multiplier(h, k).unwrap(),
                dedekind_phase(h, k).unwrap(),
                "h={h} k={k}"
            );
        }
    }
    assert!(t.elapsed().as_secs() < 10, "criterion 3 runtime");
    report(3, "multiplier equals Dedekind phase for k <= 60", t);
}

#[test]
fn criterion_4_kloosterman_suite() {
    let t = Instant::now();
    let mut cases = 0usize;
    for family in ALL_FAMILIES {
        let class = family.gcd_class().as_i64();
        for k in 1..=36i64 {
            if k.gcd(&6) != class {
                continue;
            }
            let vs: Vec<Option<i64>> = if family.has_v() {
                let top = if k % 2 == 0 { k / 2 } else { k };
                (0..top).map(Some).collect()
            } else {
                vec![None]
            };
            for n in [0i64, 1, 2, 5] {
                for m in [0i64, 1, 2, 5] {
                    for v in &vs {
                        let spec = match v {
                            Some(v) => KloostermanSpec::with_v(family, k, *v, n),
                            None => KloostermanSpec::new(family, k, n),
                        }
                        .with_m(m);
                        let a = kloosterman_definition(&spec).unwrap().value;
                        let b = kloosterman_closed(&spec).unwrap().value;
                        assert!(
                            (a - b).norm() < 1e-10,
                            "family {} k={k} n={n} m={m} v={v:?}: {a} vs {b}",
                            family.code()
                        );
                        cases += 1;
                    }
                }
            }
        }
    }
    // The 111 = -131 identity on odd k coprime to 3.
    for k in (1..=49i64).step_by(2) {
        if k % 3 == 0 {
            continue;
        }
        assert!(identity_3_1_check(k, 3, 1).unwrap(), "identity at k={k}");
    }
    // Invariance under the choice of h' representative.
    for family in ALL_FAMILIES {
        let class = family.gcd_class().as_i64();
        let k = (1..=36).find(|k: &i64| k.gcd(&6) == class && *k > 4).unwrap();
        let spec = if family.has_v() {
            KloostermanSpec::with_v(family, k, 1, 2)
        } else {
            KloostermanSpec::new(family, k, 2)
        }
        .with_m(1);
        let base = kloosterman_definition(&spec).unwrap().value;
        for shift in [1i64, -1, 3] {
            let shifted = kloosterman_sum_shifted(&spec, Route::Definition, shift).unwrap().value;
            assert!(
                (base - shifted).norm() < 1e-10,
                "family {} shift {shift}",
                family.code()
            );
        }
    }
    assert!(t.elapsed().as_secs() < 60, "criterion 4 runtime");
    println!("criterion 4 cross-form cases: {cases}");
    report(4, "Kloosterman cross-form, negation identity, h' invariance", t);
}

#[test]
fn criterion_5_bound_monitor() {
    let t = Instant::now();
    let mut max_ratio = 0.0f64;
    for family in ALL_FAMILIES {
        let class = family.gcd_class().as_i64();
        for k in 1..=36i64 {
            if k.gcd(&6) != class {
                continue;
            }
            let spec = if family.has_v() {
                KloostermanSpec::with_v(family, k, 0, 3)
            } else {
                KloostermanSpec::new(family, k, 3)
            };
            let r = bound_ratio(&spec).unwrap();
            assert!(r.is_finite(), "family {} k={k}", family.code());
            max_ratio = max_ratio.max(r);
        }
    }
    println!("criterion 5 max bound ratio observed: {max_ratio:.4}");
    report(5, "bound ratio finite and reported", t);
}

#[test]
fn criterion_6_analytic_suite() {
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    // Semicircle area.
    let q = quad_finite(|x| Complex::new((1.0 - x * x).sqrt(), 0.0), &cfg);
    assert!((q.value.re - PI / 2.0).abs() < 1e-10);
    assert!(q.value.im.abs() < 1e-12);
    // Final-form and Mordell integrals are purely imaginary for real data.
    for (k, v, n) in [(6i64, 0i64, 2i64), (12, 2, 5), (2, 0, 1)] {
        let a = integral_i_final(6.0f64.sqrt(), k.max(6), v, n, &cfg);
        assert!(a.value.re.abs() < 10.0 * cfg.abs_tol, "I re k={k}");
        let b = integral_j_final(2 * k + 1, v, n, &cfg);
        assert!(b.value.re.abs() < 10.0 * cfg.abs_tol, "J re k={k}");
        let z = Complex::new(1.0, 0.0);
        let mi = mordell_i(k.max(2), v, z, &cfg);
        assert!(mi.value.re.abs() < 10.0 * cfg.abs_tol, "mordell I re k={k}");
        let mj = mordell_j(2 * k + 1, v, z, &cfg);
        assert!(mj.value.re.abs() < 10.0 * cfg.abs_tol, "mordell J re k={k}");
    }
    // Bessel spot values against independently computed references.
    assert!((bessel_i1(2.0) - 1.590636854637329) .abs() < 1e-9);
    assert!((bessel_i32(1.0) - 0.2935253263474798).abs() < 1e-9);
    let x = 0.7f64;
    let closed = (2.0 / (PI * x)).sqrt() * (x.cosh() - x.sinh() / x);
    assert!((bessel_i32(x) - closed).abs() < 1e-12);
    report(6, "quadrature, imaginary-part structure, Bessel", t);
}

#[test]
fn criterion_7_calibration() {
    let t = Instant::now();
    let p = pod2::qseries::partition_series(1, 200);
    for n in 1..=200i64 {
        let k_max = 10.max((4.0 * (n as f64).sqrt()).ceil() as i64);
        let want = p.coeff(n as usize).to_i64().unwrap();
        assert_eq!(p_exact(n, k_max), want, "p({n})");
    }
    assert_eq!(p_exact(100, 40), 190569292);
    assert!(t.elapsed().as_secs() < 60, "criterion 7 runtime");
    report(7, "p(n) calibration for n <= 200", t);
}

#[test]
fn criterion_8_transformation_suite() {
    use pod2::rademacher::{
        transform_check_omega_even, transform_check_omega_odd, transform_check_p,
        transform_check_zeta, ZetaVariant,
    };
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    let z = |re: f64| Complex::new(re, 0.0);
    for &(h, k, zr) in &[(0i64, 1i64, 1.0), (1, 2, 1.0), (1, 3, 0.8)] {
        let r = transform_check_p(h, k, z(zr));
        assert!(r < 1e-8, "P h={h} k={k}: {r}");
    }
    for variant in [ZetaVariant::Zeta1, ZetaVariant::Zeta2] {
        for &(h, k) in &[(1i64, 6i64), (1, 2), (1, 3), (0, 1)] {
            let r = transform_check_zeta(variant, h, k, z(1.0));
            assert!(r < 1e-8, "zeta {variant:?} h={h} k={k}: {r}");
        }
    }
    for &(h, k) in &[(1i64, 2i64), (1, 6)] {
        let r = transform_check_omega_even(h, k, z(1.0), &cfg);
        assert!(r < 1e-6, "omega even h={h} k={k}: {r}");
    }
    for &(h, k, zr) in &[(0i64, 1i64, 1.0), (1, 3, 1.0), (2, 5, 0.9)] {
        let r = transform_check_omega_odd(h, k, z(zr), &cfg);
        assert!(r < 1e-6, "omega odd h={h} k={k}: {r}");
    }
    assert!(t.elapsed().as_secs() < 120, "criterion 8 runtime");
    report(8, "transformation residuals at the sample grid", t);
}

#[test]
fn criterion_9_end_to_end() {
    let t = Instant::now();
    let policy = TruncationPolicy { k_max: 100, ..Default::default() };
    let cfg = QuadratureConfig::with_tol(1e-10);
    let oracle = pod2_count_batch(40);
    let mut failures = Vec::new();
    for n in 0..=40i64 {
        let r = pod2_exact(n, &policy, &cfg);
        let want = oracle[n as usize].to_i64().unwrap();
        let ok = r.rounded == want
            && (r.estimate - r.rounded as f64).abs() < 0.4
            && r.imag_residual < 1e-6;
        if !ok {
            // The diagnostic artifact: per-family, per-k contribution table.
            println!(
                "FAIL n={n}: estimate {} rounded {} expected {want} imag {}",
                r.estimate, r.rounded, r.imag_residual
            );
            for f in &r.per_family {
                println!("  family {}: total {} + {}i", f.family, f.total_re, f.total_im);
                for (k, mag) in &f.per_k {
                    println!("    k={k:<4} |block|={mag:.6e}");
                }
            }
            failures.push(n);
        }
    }
    assert!(failures.is_empty(), "end-to-end failures at n = {failures:?}");
    assert!(t.elapsed().as_secs() < 600, "criterion 9 runtime");
    report(9, "exact formula rounds to the count for 0 <= n <= 40", t);
}
