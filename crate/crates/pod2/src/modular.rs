//! Exact modular arithmetic: Kronecker symbols, Dedekind sums, the eta-type
//! multiplier `omega_{h,k}` as an exact root of unity, canonical modular
//! inverses per gcd(k,6)-class, and Farey sequence utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::TAU;
use thiserror::Error;

use crate::analytic::Complex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("h={h} and k={k} are not coprime")]
    NotCoprime { h: i64, k: i64 },
    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(i64),
    #[error("{h}/{k} is not a member of the Farey sequence of order {n}")]
    NotInFarey { h: i64, k: i64, n: i64 },
    #[error("k' = -(1+h*h')/k is not an integer for h={h}, k={k}, h'={h_prime}")]
    InexactKPrime { h: i64, k: i64, h_prime: i64 },
}

/// An exact point on the unit circle, `e^{2*pi*i*r}` with `r` a reduced
/// rational in `[0, 1)`. Multiplication of phases is addition of rationals
/// mod 1, carried out exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitPhase {
    r: BigRational,
}

impl UnitPhase {
    pub fn one() -> Self {
        UnitPhase { r: BigRational::zero() }
    }

    pub fn minus_one() -> Self {
        UnitPhase::from_frac(1, 2)
    }

    /// The imaginary unit, `e^{pi i / 2}`.
    pub fn i() -> Self {
        UnitPhase::from_frac(1, 4)
    }

    /// `e^{2*pi*i*r}`.
    pub fn from_turns(r: BigRational) -> Self {
        UnitPhase { r: normalize(r) }
    }

    /// `e^{pi*i*x}`.
    pub fn from_half_turns(x: BigRational) -> Self {
        UnitPhase::from_turns(x / BigRational::from_integer(2.into()))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        UnitPhase::from_turns(BigRational::new(num.into(), den.into()))
    }

    /// `(-1)^e` as a phase.
    pub fn from_sign_power(e: i64) -> Self {
        if e.rem_euclid(2) == 0 { UnitPhase::one() } else { UnitPhase::minus_one() }
    }

    /// Normalized rational exponent in `[0, 1)`.
    pub fn turns(&self) -> &BigRational {
        &self.r
    }

    pub fn mul(&self, other: &UnitPhase) -> UnitPhase {
        UnitPhase::from_turns(&self.r + &other.r)
    }

    pub fn conj(&self) -> UnitPhase {
        UnitPhase::from_turns(-&self.r)
    }

    pub fn pow(&self, e: i64) -> UnitPhase {
        UnitPhase::from_turns(&self.r * BigRational::from_integer(e.into()))
    }

    pub fn div(&self, other: &UnitPhase) -> UnitPhase {
        self.mul(&other.conj())
    }

    pub fn to_complex(&self) -> Complex {
        let t = self.r.to_f64().expect("phase fits in f64");
        Complex::new((TAU * t).cos(), (TAU * t).sin())
    }
}

fn normalize(r: BigRational) -> BigRational {
    let f = r.floor();
    r - f
}

/// Kronecker symbol `(a|n)` with the standard extended conventions for
/// `n <= 0` and even `n`.
pub fn kronecker_symbol(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            match a.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n % 8 {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 { result } else { 0 }
}

/// Dedekind sum `s(h,k) = sum_{mu=1}^{k-1} ((mu/k))((h mu/k))` as an exact
/// rational. Serves as the independent oracle for the multiplier: the
/// classical relation is `omega_{h,k} = e^{pi i s(h,k)}`.
pub fn dedekind_sum(h: i64, k: i64) -> Result<BigRational, ModularError> {
    if k <= 0 {
        return Err(ModularError::NonPositiveDenominator(k));
    }
    if h.rem_euclid(k).gcd(&k) != 1 && k != 1 {
        return Err(ModularError::NotCoprime { h, k });
    }
    let kb = BigInt::from(k);
    let two = BigInt::from(2);
    let mut acc = BigRational::zero();
    for mu in 1..k {
        let r = (h * mu).rem_euclid(k);
        if r == 0 {
            continue; // sawtooth vanishes at integers
        }
        // ((mu/k)) = mu/k - 1/2, ((h mu/k)) = r/k - 1/2 for 0 < mu, r < k.
        let a = BigRational::new(BigInt::from(2 * mu) - &kb, &two * &kb);
        let b = BigRational::new(BigInt::from(2 * r) - &kb, &two * &kb);
        acc += a * b;
    }
    Ok(acc)
}

/// gcd(k,6)-class of a denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcdClass {
    One,
    Two,
    Three,
    Six,
}

impl GcdClass {
    pub fn of(k: i64) -> GcdClass {
        match k.gcd(&6) {
            1 => GcdClass::One,
            2 => GcdClass::Two,
            3 => GcdClass::Three,
            6 => GcdClass::Six,
            _ => unreachable!(),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            GcdClass::One => 1,
            GcdClass::Two => 2,
            GcdClass::Three => 3,
            GcdClass::Six => 6,
        }
    }

    /// Congruence modulus for `h h' == -1` in this class.
    pub fn congruence_modulus(self, k: i64) -> i64 {
        match self {
            GcdClass::Six => 36 * k,
            GcdClass::Two => 4 * k,
            GcdClass::Three | GcdClass::One => k,
        }
    }

    /// Required divisor of `h'` in this class.
    pub fn divisibility(self) -> i64 {
        match self {
            GcdClass::Six => 1,
            GcdClass::Two => 3,
            GcdClass::Three => 2,
            GcdClass::One => 6,
        }
    }

    /// Combined CRT modulus: `h'` is unique mod this value.
    pub fn full_modulus(self, k: i64) -> i64 {
        self.congruence_modulus(k) * self.divisibility()
    }
}

/// Canonical `(h', k')` for a coprime pair `(h, k)`: the smallest nonnegative
/// `h'` with `h h' == -1` (mod the class congruence modulus) and the class
/// divisibility condition, and `k' = -(1 + h h')/k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InverseData {
    pub h: i64,
    pub k: i64,
    pub gcd_class: GcdClass,
    pub h_prime: i64,
    pub k_prime: i64,
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = i64::extended_gcd(&a.rem_euclid(m), &m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

pub fn canonical_inverse(h: i64, k: i64, class: GcdClass) -> Result<InverseData, ModularError> {
    if k <= 0 {
        return Err(ModularError::NonPositiveDenominator(k));
    }
    debug_assert_eq!(class, GcdClass::of(k));
    let m = class.congruence_modulus(k);
    let d = class.divisibility();
    let inv = mod_inverse(h, m).ok_or(ModularError::NotCoprime { h, k })?;
    let base = (-inv).rem_euclid(m); // h * base == -1 (mod m)
    // CRT against h' == 0 (mod d); gcd(m, d) = 1 in every class.
    let h_prime = if d == 1 {
        base
    } else {
        let m_inv_d = mod_inverse(m.rem_euclid(d), d).expect("class moduli coprime");
        let t = ((-base).rem_euclid(d) * m_inv_d).rem_euclid(d);
        base + m * t
    };
    let num = -(1 + h * h_prime);
    if num % k != 0 {
        return Err(ModularError::InexactKPrime { h, k, h_prime });
    }
    Ok(InverseData { h, k, gcd_class: class, h_prime, k_prime: num / k })
}

/// The multiplier `omega_{h,k}` of the eta-type transformation of
/// `P(q) = 1/(q;q)_inf`, evaluated as an exact `24k`-th root of unity.
///
/// The two-branch formula (Kronecker symbol times an explicit exponential)
/// is used verbatim; when `k` is odd the k-odd branch is taken, otherwise
/// `h` must be odd and the h-odd branch applies. The result does not depend
/// on the choice of inverse `h'` used internally.
pub fn omega_multiplier(h: i64, k: i64) -> Result<UnitPhase, ModularError> {
    if k <= 0 {
        return Err(ModularError::NonPositiveDenominator(k));
    }
    if h.gcd(&k) != 1 {
        return Err(ModularError::NotCoprime { h, k });
    }
    // The multiplier depends on h only through its residue mod k (it equals
    // e^{pi i s(h,k)} and the Dedekind sum is k-periodic), so arguments like
    // the literal 3h or 6h of the Kloosterman quotients can be normalized.
    let h = h.rem_euclid(k);
    let h_prime = (-mod_inverse(h, k).ok_or(ModularError::NotCoprime { h, k })?).rem_euclid(k);
    let hb = BigInt::from(h);
    let hp = BigInt::from(h_prime);
    let kb = BigInt::from(k);
    // (1/12)(k - 1/k)(2h - h' + h^2 h')
    let common = BigRational::new(&kb * &kb - BigInt::one(), 12 * &kb)
        * BigRational::from_integer(2 * &hb - &hp + &hb * &hb * &hp);
    let quarter = |n: BigInt| BigRational::new(n, 4.into());
    let (sign, exponent) = if k % 2 == 1 {
        (kronecker_symbol(-h, k), quarter(BigInt::from(k - 1)) + common)
    } else {
        debug_assert!(h % 2 != 0, "coprime pair cannot be both even");
        (kronecker_symbol(-k, h), quarter(BigInt::from(2 - h * k - h)) + common)
    };
    let mut phase = UnitPhase::from_half_turns(-exponent);
    if sign < 0 {
        phase = phase.mul(&UnitPhase::minus_one());
    }
    Ok(phase)
}

/// Neighbors of `h/k` in the Farey sequence of order `N`, together with the
/// arc half-widths `1/(k(k+k1))` and `1/(k(k+k2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyNeighbors {
    pub h: i64,
    pub k: i64,
    pub h1: i64,
    pub k1: i64,
    pub h2: i64,
    pub k2: i64,
    pub theta_minus: BigRational,
    pub theta_plus: BigRational,
}

/// The Farey sequence `F_N` as reduced fractions `(h, k)` from 0/1 to 1/1.
pub fn farey_sequence(n: i64) -> Vec<(i64, i64)> {
    assert!(n >= 1);
    let mut out = vec![(0, 1), (1, n)];
    loop {
        let (a, b) = out[out.len() - 2];
        let (c, d) = out[out.len() - 1];
        if (c, d) == (1, 1) {
            break;
        }
        let t = (n + b) / d;
        out.push((t * c - a, t * d - b));
    }
    out
}

/// Neighbors of `h/k` in `F_N`. The boundary fractions 0/1 and 1/1 take
/// their neighbors periodically (the circle-method dissection wraps).
pub fn farey_neighbors(h: i64, k: i64, n: i64) -> Result<FareyNeighbors, ModularError> {
    if k < 1 || k > n || h < 0 || h > k || h.gcd(&k) != 1 {
        return Err(ModularError::NotInFarey { h, k, n });
    }
    // k1 is the unique solution of h*k1 == 1 (mod k) in (N-k, N]; k2 solves
    // h*k2 == -1 (mod k) in the same window.
    let inv = mod_inverse(h.rem_euclid(k), k).unwrap_or(0);
    let in_window = |residue: i64| -> i64 {
        let mut v = n - (n - residue).rem_euclid(k);
        if v <= n - k {
            v += k;
        }
        v
    };
    let k1 = in_window(inv.rem_euclid(k));
    let k2 = in_window((-inv).rem_euclid(k));
    let h1 = (h * k1 - 1).div_euclid(k);
    let h2 = (h * k2 + 1).div_euclid(k);
    Ok(FareyNeighbors {
        h,
        k,
        h1,
        k1,
        h2,
        k2,
        theta_minus: BigRational::new(1.into(), (k * (k + k1)).into()),
        theta_plus: BigRational::new(1.into(), (k * (k + k2)).into()),
    })
}

/// `s(h,k)` converted to the phase of `e^{pi i s(h,k)}`; the cross-oracle
/// for [`omega_multiplier`].
pub fn dedekind_phase(h: i64, k: i64) -> Result<UnitPhase, ModularError> {
    Ok(UnitPhase::from_half_turns(dedekind_sum(h, k)?))
}
