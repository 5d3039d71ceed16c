//! The twelve complete Kloosterman-sum families, each computed along two
//! independent routes:
//!
//! * the *definition* route — a quotient of eta-multipliers `omega_{a,c}`
//!   times explicit exponential factors, summed over admissible residues h;
//! * the *closed* route — the rewritten pure exponential sums obtained by
//!   evaluating the multiplier quotients symbolically.
//!
//! Every summand is assembled as an exact [`UnitPhase`] (a rational number
//! mod 1) and converted to a complex number only once, so the cross-route
//! comparison is a genuine consistency check of the multiplier algebra and
//! not of floating-point luck. Also here: the classical `A_k(n)` sums and
//! the cancellation identity `K^[111] = -K^[131]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::analytic::Complex;
use crate::modular::{canonical_inverse, omega_multiplier, GcdClass, UnitPhase};
use num_integer::Integer;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KloostermanError {
    #[error("family {family} requires gcd(k,6) = {expected}, but k = {k}")]
    ClassMismatch { family: u16, k: i64, expected: i64 },
    #[error("family {0} requires the shift argument v")]
    MissingV(u16),
    #[error("family {0} does not take a shift argument v")]
    UnexpectedV(u16),
    #[error("v = {v} out of range for family {family} with k = {k}")]
    VOutOfRange { family: u16, v: i64, k: i64 },
    #[error("unknown family code {0}")]
    UnknownFamily(u16),
}

/// The three-digit family labels. The first digit is gcd(k,6); the middle
/// digit names the circle-method integral the sum belongs to; families x21
/// carry the extra shift argument v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    K611,
    K621,
    K631,
    K211,
    K221,
    K231,
    K311,
    K321,
    K331,
    K111,
    K121,
    K131,
}

pub const ALL_FAMILIES: [Family; 12] = [
    Family::K611,
    Family::K621,
    Family::K631,
    Family::K211,
    Family::K221,
    Family::K231,
    Family::K311,
    Family::K321,
    Family::K331,
    Family::K111,
    Family::K121,
    Family::K131,
];

impl Family {
    pub fn code(self) -> u16 {
        match self {
            Family::K611 => 611,
            Family::K621 => 621,
            Family::K631 => 631,
            Family::K211 => 211,
            Family::K221 => 221,
            Family::K231 => 231,
            Family::K311 => 311,
            Family::K321 => 321,
            Family::K331 => 331,
            Family::K111 => 111,
            Family::K121 => 121,
            Family::K131 => 131,
        }
    }

    pub fn from_code(code: u16) -> Result<Family, KloostermanError> {
        ALL_FAMILIES
            .into_iter()
            .find(|f| f.code() == code)
            .ok_or(KloostermanError::UnknownFamily(code))
    }

    pub fn gcd_class(self) -> GcdClass {
        match self.code() / 100 {
            6 => GcdClass::Six,
            2 => GcdClass::Two,
            3 => GcdClass::Three,
            _ => GcdClass::One,
        }
    }

    /// Families x21 take the shift argument v.
    pub fn has_v(self) -> bool {
        matches!(self, Family::K621 | Family::K221 | Family::K321 | Family::K121)
    }
}

/// A fully specified sum: family, modulus k (with matching gcd(k,6)),
/// frequency arguments n and m, and the shift v for the x21 families.
/// The range of v is `0 <= v < k/2` for even k and `0 <= v < k` for odd k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KloostermanSpec {
    pub family: Family,
    pub k: i64,
    pub n: i64,
    pub m: i64,
    pub v: Option<i64>,
}

impl KloostermanSpec {
    pub fn new(family: Family, k: i64, n: i64) -> Self {
        KloostermanSpec { family, k, n, m: 0, v: None }
    }

    pub fn with_v(family: Family, k: i64, v: i64, n: i64) -> Self {
        KloostermanSpec { family, k, n, m: 0, v: Some(v) }
    }

    pub fn with_m(mut self, m: i64) -> Self {
        self.m = m;
        self
    }

    pub fn validate(&self) -> Result<(), KloostermanError> {
        let code = self.family.code();
        let expected = self.family.gcd_class().as_i64();
        if self.k < 1 || self.k.gcd(&6) != expected {
            return Err(KloostermanError::ClassMismatch { family: code, k: self.k, expected });
        }
        match (self.family.has_v(), self.v) {
            (true, None) => return Err(KloostermanError::MissingV(code)),
            (false, Some(_)) => return Err(KloostermanError::UnexpectedV(code)),
            (true, Some(v)) => {
                let bound = if self.k % 2 == 0 { self.k / 2 } else { self.k };
                if v < 0 || v >= bound {
                    return Err(KloostermanError::VOutOfRange { family: code, v, k: self.k });
                }
            }
            (false, None) => {}
        }
        Ok(())
    }
}

/// A computed sum value with its trivial-size metadata: every summand is a
/// root of unity, so `|value| <= term_count` always.
#[derive(Debug, Clone, Copy)]
pub struct SumValue {
    pub value: Complex,
    pub term_count: usize,
    pub max_term_modulus: f64,
}

fn rat(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `e^{pi i r}`.
fn phase_pi(r: BigRational) -> UnitPhase {
    UnitPhase::from_half_turns(r)
}

/// `e^{2 pi i r}`.
fn phase_tau(r: BigRational) -> UnitPhase {
    UnitPhase::from_turns(r)
}

fn omega(a: i64, c: i64) -> UnitPhase {
    omega_multiplier(a, c).expect("coprime by construction")
}

/// The multiplier quotient of a family's definition, for the literal
/// arguments the definitions use (3h, 2h, 6h are not reduced here; the
/// multiplier itself is h-periodic so this is only cosmetic).
fn definition_quotient(family: Family, h: i64, k: i64) -> UnitPhase {
    match family {
        Family::K611 | Family::K621 => omega(h, k / 6)
            .mul(&omega(h, k / 2))
            .mul(&omega(h, k))
            .div(&omega(h, k / 3)),
        Family::K631 => omega(h, k / 3)
            .mul(&omega(h, k / 2))
            .mul(&omega(h, k))
            .div(&omega(h, k / 6).pow(3)),
        Family::K211 | Family::K221 => omega(3 * h, k / 2)
            .mul(&omega(h, k / 2))
            .mul(&omega(h, k))
            .div(&omega(3 * h, k)),
        Family::K231 => omega(3 * h, k)
            .mul(&omega(h, k / 2))
            .mul(&omega(h, k))
            .div(&omega(3 * h, k / 2).pow(3)),
        Family::K311 | Family::K321 => omega(2 * h, k / 3)
            .mul(&omega(2 * h, k))
            .mul(&omega(h, k))
            .div(&omega(h, k / 3)),
        Family::K331 => omega(h, k / 3)
            .mul(&omega(2 * h, k))
            .mul(&omega(h, k))
            .div(&omega(2 * h, k / 3).pow(3)),
        Family::K111 | Family::K121 => omega(6 * h, k)
            .mul(&omega(2 * h, k))
            .mul(&omega(h, k))
            .div(&omega(3 * h, k)),
        Family::K131 => omega(3 * h, k)
            .mul(&omega(2 * h, k))
            .mul(&omega(h, k))
            .div(&omega(6 * h, k).pow(3)),
    }
}

/// One summand of the definition route: multiplier quotient times the
/// family's explicit exponential factors, as an exact phase.
fn definition_term(spec: &KloostermanSpec, h: i64, hp: i64, kp: i64) -> UnitPhase {
    let k = spec.k as i128;
    let (h_l, hp_l, kp_l) = (h as i128, hp as i128, kp as i128);
    let (n, m) = (spec.n as i128, spec.m as i128);
    let v = spec.v.unwrap_or(0) as i128;
    let quotient = definition_quotient(spec.family, h, spec.k);
    // e^{2 pi i (-n h + m h'/d) / k}, with d the class divisor of h'.
    let d = spec.family.gcd_class().divisibility() as i128;
    let freq = phase_tau(rat(-n * h_l * d + m * hp_l, d * k));
    let extra = match spec.family {
        Family::K611 | Family::K211 => {
            // e^{pi i (1 + h' - 3 h' k')/2} e^{3 pi i (h' - h)/(2k)}
            phase_pi(rat(1 + hp_l - 3 * hp_l * kp_l, 2)).mul(&phase_pi(rat(3 * (hp_l - h_l), 2 * k)))
        }
        Family::K621 | Family::K221 => {
            // e^{pi i (1 + h' - 3 h' k')/2} e^{-3 pi i h/(2k)}
            //   e^{2 pi i h' (mu - 3 mu^2)/k},  mu = v + 1/2,
            // and mu - 3 mu^2 = -(12 v^2 + 8 v + 1)/4.
            phase_pi(rat(1 + hp_l - 3 * hp_l * kp_l, 2))
                .mul(&phase_pi(rat(-3 * h_l, 2 * k)))
                .mul(&phase_tau(rat(-hp_l * (12 * v * v + 8 * v + 1), 4 * k)))
        }
        Family::K311 | Family::K111 => {
            // (-1)^{(k+1)/2} e^{3 pi i h k/2} e^{-3 pi i h/(2k)}
            phase_pi(rat((k + 1) / 2, 1))
                .mul(&phase_pi(rat(3 * h_l * k, 2)))
                .mul(&phase_pi(rat(-3 * h_l, 2 * k)))
        }
        Family::K321 | Family::K121 => {
            // (-1)^{(k+1)/2} e^{3 pi i h k/2} e^{pi i (h'(v - 3v^2) - 3h)/(2k)}
            phase_pi(rat((k + 1) / 2, 1))
                .mul(&phase_pi(rat(3 * h_l * k, 2)))
                .mul(&phase_pi(rat(hp_l * (v - 3 * v * v) - 3 * h_l, 2 * k)))
        }
        Family::K631 | Family::K231 | Family::K331 | Family::K131 => UnitPhase::one(),
    };
    quotient.mul(&extra).mul(&freq)
}

/// One summand of the closed route (without the h-independent prefactor).
fn closed_term(spec: &KloostermanSpec, h: i64, hp: i64) -> UnitPhase {
    let k = spec.k as i128;
    let (h_l, hp_l) = (h as i128, hp as i128);
    let (n, m) = (spec.n as i128, spec.m as i128);
    let v = spec.v.unwrap_or(0) as i128;
    let k2 = k * k;
    // Each arm gives (coefficient of -h, its denominator, coefficient of
    // h'/d, its denominator); the h' coefficient multiplies the integer
    // quotient h'/d of the class divisibility.
    let (ch, dh, cp, dp) = match spec.family {
        Family::K611 => (36 * n + 18 - 9 * k - 4 * k2, 36, 36 * m + 18 + 9 * k + 2 * k2, 36),
        Family::K621 => (
            36 * n + 18 - 9 * k - 4 * k2,
            36,
            36 * m - 18 + 9 * k + 2 * k2 - 108 * v * v - 72 * v,
            36,
        ),
        Family::K631 => (18 * n + 9 - 2 * k2, 18, 18 * m + 9 + k2, 18),
        Family::K211 => (36 * n + 18 - 9 * k, 36, 12 * m + 22 + 9 * k + 2 * k2, 12),
        Family::K221 => {
            (36 * n + 18 - 9 * k, 36, 12 * m - 14 + 9 * k + 2 * k2 - 108 * v * v - 72 * v, 12)
        }
        Family::K231 => (18 * n + 9 + 9 * k, 18, 6 * m - 1 + k2, 6),
        Family::K311 => (36 * n + 18 - 22 * k2, 36, 18 * m + 2 * k2, 18),
        Family::K321 => (36 * n + 18 - 22 * k2, 36, 18 * m + 2 * k2 - 27 * v * v + 9 * v, 18),
        Family::K331 => (18 * n + 9 + k2, 18, 9 * m + k2, 9),
        Family::K111 => (36 * n + 18 - 18 * k2, 36, 6 * m - 2 + 2 * k2, 6),
        Family::K121 => (36 * n + 18 - 18 * k2, 36, 6 * m - 2 + 2 * k2 - 27 * v * v + 9 * v, 6),
        Family::K131 => (2 * n + 1 - k2, 2, 3 * m - 1 + k2, 3),
    };
    let d = spec.family.gcd_class().divisibility() as i128;
    let hp_over_d = hp_l / d;
    debug_assert_eq!(hp_l % d, 0);
    phase_tau(rat(-h_l * ch, dh * k) + rat(hp_over_d * cp, dp * k))
}

/// The h-independent prefactor of the closed route. `(-1)^{1/2}` and
/// `(-1)^{3/2}` are read on the principal branch: i and -i respectively.
fn closed_prefactor(spec: &KloostermanSpec) -> UnitPhase {
    match spec.family {
        Family::K611 | Family::K621 => phase_pi(rat(3, 2)), // (-1)^{3/2} = -i
        Family::K211 | Family::K221 => phase_pi(rat(1, 2)), // (-1)^{1/2} = i
        Family::K231 | Family::K111 | Family::K121 => UnitPhase::minus_one(),
        Family::K331 => UnitPhase::minus_one().mul(&phase_pi(rat(-(spec.k as i128), 3))),
        Family::K631 | Family::K311 | Family::K321 | Family::K131 => UnitPhase::one(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Definition,
    Closed,
}

/// Evaluate a family sum along either route. `hp_shift` adds that many
/// class moduli to every canonical h' (with k' recomputed); the sums are
/// invariant under this and the shifted variant exists for exactly that
/// test.
pub fn kloosterman_sum_shifted(
    spec: &KloostermanSpec,
    route: Route,
    hp_shift: i64,
) -> Result<SumValue, KloostermanError> {
    spec.validate()?;
    let class = spec.family.gcd_class();
    let k = spec.k;
    let mut value = Complex::new(0.0, 0.0);
    let mut term_count = 0usize;
    for h in 0..k.max(1) {
        if k > 1 && h.gcd(&k) != 1 {
            continue;
        }
        if k == 1 && h != 0 {
            continue;
        }
        let inv = canonical_inverse(h, k, class).expect("h coprime to k");
        let hp = inv.h_prime + hp_shift * class.full_modulus(k);
        let kp = -(1 + h * hp) / k;
        debug_assert_eq!(h * hp + k * kp, -1);
        let phase = match route {
            Route::Definition => definition_term(spec, h, hp, kp),
            Route::Closed => closed_prefactor(spec).mul(&closed_term(spec, h, hp)),
        };
        value += phase.to_complex();
        term_count += 1;
    }
    Ok(SumValue { value, term_count, max_term_modulus: 1.0 })
}

/// Definition route: multiplier quotients times explicit exponentials.
pub fn kloosterman_definition(spec: &KloostermanSpec) -> Result<SumValue, KloostermanError> {
    kloosterman_sum_shifted(spec, Route::Definition, 0)
}

/// Closed route: the rewritten pure exponential sums.
pub fn kloosterman_closed(spec: &KloostermanSpec) -> Result<SumValue, KloostermanError> {
    kloosterman_sum_shifted(spec, Route::Closed, 0)
}

/// The classical Rademacher sum `A_k(n) = sum_h omega_{h,k} e^{-2 pi i n h/k}`
/// from the exact formula for p(n).
pub fn classical_a(k: i64, n: i64) -> SumValue {
    assert!(k >= 1);
    let mut value = Complex::new(0.0, 0.0);
    let mut term_count = 0usize;
    for h in 0..k.max(1) {
        if k > 1 && h.gcd(&k) != 1 {
            continue;
        }
        if k == 1 && h != 0 {
            continue;
        }
        let phase = omega(h, k).mul(&phase_tau(rat(-(n as i128) * h as i128, k as i128)));
        value += phase.to_complex();
        term_count += 1;
    }
    SumValue { value, term_count, max_term_modulus: 1.0 }
}

/// The cancellation identity `K^[111](n,m) = -K^[131](n,m)`; this is what
/// removes the two leftover principal parts from the final formula.
pub fn identity_3_1_check(k: i64, n: i64, m: i64) -> Result<bool, KloostermanError> {
    let a = kloosterman_closed(&KloostermanSpec::new(Family::K111, k, n).with_m(m))?;
    let b = kloosterman_closed(&KloostermanSpec::new(Family::K131, k, n).with_m(m))?;
    Ok((a.value + b.value).norm() < 1e-10)
}

/// Monitoring statistic `|K| / (n^{1/3} k^{2/3})` for the square-root-type
/// bound; reported, never asserted (the implied constant is unspecified).
pub fn bound_ratio(spec: &KloostermanSpec) -> Result<f64, KloostermanError> {
    assert!(spec.n >= 1, "bound_ratio normalizes by n^(1/3); need n >= 1");
    let s = kloosterman_closed(spec)?;
    Ok(s.value.norm() / ((spec.n as f64).powf(1.0 / 3.0) * (spec.k as f64).powf(2.0 / 3.0)))
}

/// Valid v values for a spec template (empty-of-v families get the single
/// placeholder `None`).
pub fn v_range(family: Family, k: i64) -> Vec<Option<i64>> {
    if family.has_v() {
        let bound = if k % 2 == 0 { k / 2 } else { k };
        (0..bound).map(Some).collect()
    } else {
        vec![None]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, k: i64, v: Option<i64>, n: i64, m: i64) -> KloostermanSpec {
        KloostermanSpec { family, k, n, m, v }
    }

    fn assert_routes_agree(s: &KloostermanSpec) {
        let d = kloosterman_definition(s).unwrap();
        let c = kloosterman_closed(s).unwrap();
        assert!(
            (d.value - c.value).norm() < 1e-10,
            "family {} k={} v={:?} n={} m={}: definition {} vs closed {}",
            s.family.code(),
            s.k,
            s.v,
            s.n,
            s.m,
            d.value,
            c.value
        );
    }

    #[test]
    fn k1_single_term_values() {
        for n in 0..4 {
            let d = kloosterman_definition(&spec(Family::K121, 1, Some(0), n, 0)).unwrap();
            assert!((d.value - Complex::new(-1.0, 0.0)).norm() < 1e-14);
            let c = kloosterman_closed(&spec(Family::K121, 1, Some(0), n, 0)).unwrap();
            assert!((c.value - Complex::new(-1.0, 0.0)).norm() < 1e-14);
            let d = kloosterman_definition(&spec(Family::K131, 1, None, n, 0)).unwrap();
            assert!((d.value - Complex::new(1.0, 0.0)).norm() < 1e-14);
            let c = kloosterman_closed(&spec(Family::K131, 1, None, n, 0)).unwrap();
            assert!((c.value - Complex::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn cross_form_small_k() {
        let cases: &[(Family, i64)] = &[
            (Family::K611, 6),
            (Family::K621, 6),
            (Family::K631, 6),
            (Family::K611, 12),
            (Family::K211, 2),
            (Family::K221, 2),
            (Family::K231, 2),
            (Family::K221, 4),
            (Family::K311, 3),
            (Family::K321, 3),
            (Family::K331, 3),
            (Family::K321, 9),
            (Family::K111, 1),
            (Family::K121, 5),
            (Family::K131, 5),
            (Family::K111, 7),
        ];
        for &(family, k) in cases {
            for v in v_range(family, k) {
                for n in 0..2 {
                    for m in 0..2 {
                        assert_routes_agree(&spec(family, k, v, n, m));
                    }
                }
            }
        }
    }

    #[test]
    fn term_counts_are_euler_phi() {
        let s = kloosterman_closed(&spec(Family::K611, 12, None, 0, 0)).unwrap();
        assert_eq!(s.term_count, 4); // phi(12)
        assert!(s.value.norm() <= s.term_count as f64 + 1e-12);
        let s = kloosterman_closed(&spec(Family::K131, 7, None, 3, 1)).unwrap();
        assert_eq!(s.term_count, 6);
    }

    #[test]
    fn hp_representative_invariance() {
        let cases: &[(Family, i64)] =
            &[(Family::K621, 6), (Family::K221, 4), (Family::K321, 9), (Family::K121, 5), (Family::K331, 3)];
        for &(family, k) in cases {
            for v in v_range(family, k) {
                let s = spec(family, k, v, 2, 1);
                for route in [Route::Definition, Route::Closed] {
                    let base = kloosterman_sum_shifted(&s, route, 0).unwrap();
                    for shift in [1, 2, -1] {
                        let moved = kloosterman_sum_shifted(&s, route, shift).unwrap();
                        assert!(
                            (base.value - moved.value).norm() < 1e-12,
                            "family {} k={k} v={v:?} route {route:?} shift {shift}",
                            family.code()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classical_a_basics() {
        for n in 0..6 {
            assert!((classical_a(1, n).value - Complex::new(1.0, 0.0)).norm() < 1e-14);
            let want = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((classical_a(2, n).value - Complex::new(want, 0.0)).norm() < 1e-14);
        }
        for k in 1..=20 {
            for n in 0..=10 {
                let a = classical_a(k, n);
                assert!(a.value.im.abs() < 1e-10, "A_{k}({n}) not real: {}", a.value);
            }
        }
    }

    #[test]
    fn principal_parts_cancel() {
        for k in [1i64, 5, 7, 11, 25] {
            for n in 0..4 {
                assert!(identity_3_1_check(k, n, 0).unwrap(), "k={k} n={n}");
            }
        }
        assert!(identity_3_1_check(25, 7, 0).unwrap());
    }

    #[test]
    fn bound_ratio_baseline() {
        let r = bound_ratio(&spec(Family::K121, 1, Some(0), 1, 0)).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        // Trivial bound: |K| <= phi(k), so the ratio stays finite.
        for k in [2i64, 8, 16, 26] {
            let r = bound_ratio(&spec(Family::K221, k, Some(0), 1, 0)).unwrap();
            assert!(r.is_finite());
        }
    }

    #[test]
    fn spec_validation() {
        assert!(spec(Family::K231, 3, None, 0, 0).validate().is_err()); // gcd(3,6) != 2
        assert!(spec(Family::K621, 6, None, 0, 0).validate().is_err()); // missing v
        assert!(spec(Family::K611, 6, Some(0), 0, 0).validate().is_err()); // stray v
        assert!(spec(Family::K621, 6, Some(3), 0, 0).validate().is_err()); // v >= k/2
        assert!(spec(Family::K121, 5, Some(4), 0, 0).validate().is_ok());
        assert_eq!(Family::from_code(221).unwrap(), Family::K221);
        assert!(Family::from_code(999).is_err());
    }
}
