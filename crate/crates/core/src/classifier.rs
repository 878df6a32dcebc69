//! Plateau detection and (weak) regularity classification.
//!
//! For odd `p` every nonzero Walsh value of an `r`-plateaued function is
//! matched exactly against the `2p` candidates `±G^{m+r} ξ^j`, where `G` is the
//! quadratic Gauss sum (so `G^2 = p*`). The match yields a sign `ε(b)` and a
//! dual value `g(b)` for every `b` in the support. A constant sign means the
//! function is weakly regular; it is regular when the resulting unit `u` in
//! `W(b) = u p^{(m+r)/2} ξ^{g(b)}` equals `+1`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{gauss_sum, p_star, CycError, CycInt};
use crate::finite_field::{legendre, ExtField};
use crate::walsh::{
    big_pow, exact_log, is_balanced, walsh_fast, walsh_restricted, Domain, PAryFunction, WalshError,
    WalshSpectrum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("function is not plateaued: {0}")]
    NotPlateaued(String),
    #[error("Walsh value at b = {0} is not of the form ±G^(m+r)·ξ^j")]
    NoCanonicalForm(usize),
    #[error("function is not weakly regular")]
    NotWeaklyRegular,
    #[error("dual inverse identity fails at x = {0}")]
    MismatchAt(usize),
    #[error(transparent)]
    Walsh(#[from] WalshError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    Regular,
    WeaklyRegular,
    NonWeaklyRegular,
    /// Regularity is only defined for odd characteristic.
    NotApplicable,
}

impl Regularity {
    pub fn is_weakly_regular(self) -> bool {
        matches!(self, Regularity::Regular | Regularity::WeaklyRegular)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regularity::Regular => "regular",
            Regularity::WeaklyRegular => "weakly regular",
            Regularity::NonWeaklyRegular => "non-weakly regular",
            Regularity::NotApplicable => "not applicable (p = 2)",
        }
    }
}

/// The unit `u ∈ {±1, ±i}` with `W(b) = u p^{(m+r)/2} ξ^{g(b)}` under the
/// embedding `ξ = e^{2πi/p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl Unit {
    /// Multiplies by `i^k`.
    fn rotate(self, k: u32) -> Unit {
        const CYCLE: [Unit; 4] = [Unit::PlusOne, Unit::PlusI, Unit::MinusOne, Unit::MinusI];
        let pos = CYCLE.iter().position(|&u| u == self).unwrap();
        CYCLE[(pos + k as usize) % 4]
    }

    pub fn to_complex(self) -> (f64, f64) {
        match self {
            Unit::PlusOne => (1.0, 0.0),
            Unit::MinusOne => (-1.0, 0.0),
            Unit::PlusI => (0.0, 1.0),
            Unit::MinusI => (0.0, -1.0),
        }
    }

    /// `Some(±1)` for a real unit.
    pub fn real_sign(self) -> Option<i8> {
        match self {
            Unit::PlusOne => Some(1),
            Unit::MinusOne => Some(-1),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Unit::PlusOne => "+1",
            Unit::MinusOne => "-1",
            Unit::PlusI => "+i",
            Unit::MinusI => "-i",
        }
    }
}

impl Serialize for Unit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// `u` from the sign `ε` of `W(b) = ε G^{m+r} ξ^{g(b)}`.
///
/// With `ξ = e^{2πi/p}`, `G = √p` for `p ≡ 1 (mod 4)` and `G = i√p` for
/// `p ≡ 3 (mod 4)`, so `u = ε` or `u = ε i^{m+r}` respectively.
pub fn derive_unit(epsilon: i8, p: u32, m: u32, r: u32) -> Unit {
    let base = if epsilon >= 0 { Unit::PlusOne } else { Unit::MinusOne };
    if p % 4 == 1 {
        base
    } else {
        base.rotate((m + r) % 4)
    }
}

/// Everything the classifier learns about an `r`-plateaued function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauedReport {
    pub p: u32,
    pub m: u32,
    pub r: u32,
    pub regularity: Regularity,
    /// Sign of `W(b)` relative to `G^{m+r}`; `None` when it varies or for `p = 2`.
    pub epsilon: Option<i8>,
    pub unit_u: Option<Unit>,
    /// Dual function on the Walsh support, zero elsewhere.
    pub dual_g: PAryFunction,
    pub support: Vec<usize>,
    /// `N_g(j)` for `j ∈ F_p`, counted over the support.
    pub ng_counts: Vec<u64>,
    pub g_balanced: bool,
    /// Measured sign of `W_g`: `W_g(0) = ε_g p^{(m-r)/2}` for even `m - r`
    /// and `ε_g p^{(m-r-1)/2} G` for odd `m - r`.
    pub epsilon_g: Option<i8>,
    /// Per-point signs over the support (`+1` count, `-1` count).
    pub sign_counts: (u64, u64),
}

impl PlateauedReport {
    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn is_bent(&self) -> bool {
        self.r == 0
    }

    /// The sign the weight-distribution theorems call "the sign of `W_ψ1`".
    ///
    /// For even `m + r` the Walsh values are real and this is the real unit
    /// `u`; for odd `m + r` it is the sign relative to `G^{m+r}`.
    pub fn theorem_epsilon(&self) -> Option<i8> {
        if self.p == 2 || !self.regularity.is_weakly_regular() {
            return None;
        }
        if (self.m + self.r).is_multiple_of(2) {
            self.unit_u.and_then(Unit::real_sign)
        } else {
            self.epsilon
        }
    }

    /// True when the measured `ε_g` disagrees with the theorem sign.
    pub fn sign_discrepancy(&self) -> bool {
        match (self.epsilon_g, self.theorem_epsilon()) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        }
    }
}

impl Serialize for PlateauedReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            p: u32,
            m: u32,
            r: u32,
            bent: bool,
            regularity: Regularity,
            epsilon: Option<i8>,
            u: Option<Unit>,
            theorem_epsilon: Option<i8>,
            epsilon_g: Option<i8>,
            g_balanced: bool,
            ng_counts: &'a [u64],
            support_size: usize,
            sign_counts: [u64; 2],
        }
        Json {
            p: self.p,
            m: self.m,
            r: self.r,
            bent: self.is_bent(),
            regularity: self.regularity,
            epsilon: self.epsilon,
            u: self.unit_u,
            theorem_epsilon: self.theorem_epsilon(),
            epsilon_g: self.epsilon_g,
            g_balanced: self.g_balanced,
            ng_counts: &self.ng_counts,
            support_size: self.support.len(),
            sign_counts: [self.sign_counts.0, self.sign_counts.1],
        }
        .serialize(s)
    }
}

/// The amplitude `r` with `|W(b)|^2 ∈ {0, p^{m+r}}` for every `b`.
pub fn detect_plateau(s: &WalshSpectrum) -> Result<u32, ClassifyError> {
    let (p, m) = (s.p(), s.m());
    let mags = s
        .squared_magnitudes()
        .map_err(|_| ClassifyError::NotPlateaued("some |W(b)|^2 is irrational".into()))?;
    let mut nonzero = mags.iter().filter(|v| !v.is_zero());
    let first = nonzero
        .next()
        .ok_or_else(|| ClassifyError::NotPlateaued("spectrum is identically zero".into()))?;
    if let Some(other) = nonzero.find(|v| *v != first) {
        return Err(ClassifyError::NotPlateaued(format!(
            "two distinct nonzero magnitudes {first} and {other}"
        )));
    }
    let k = exact_log(first, p)
        .filter(|&k| k >= m && k <= 2 * m)
        .ok_or_else(|| ClassifyError::NotPlateaued(format!("|W(b)|^2 = {first} is not p^(m+r)")))?;
    let r = k - m;
    let expected = (p as u64).pow(m - r) as usize;
    if s.support().len() != expected {
        return Err(ClassifyError::NotPlateaued(format!(
            "support size {} differs from p^(m-r) = {expected}",
            s.support().len()
        )));
    }
    Ok(r)
}

/// `±G^{m+r}` (or `±2^{(m+r)/2}` for `p = 2`) with the sign `+`.
fn plateau_scale(p: u32, m: u32, r: u32) -> Result<CycInt, ClassifyError> {
    if p == 2 {
        if !(m + r).is_multiple_of(2) {
            return Err(ClassifyError::NotPlateaued("m + r must be even for p = 2".into()));
        }
        return Ok(CycInt::from_int(2, big_pow(2, (m + r) / 2)));
    }
    Ok(gauss_sum(p)?.pow(m + r))
}

/// Classifies an `r`-plateaued spectrum.
pub fn classify(s: &WalshSpectrum, r: u32) -> Result<PlateauedReport, ClassifyError> {
    let (p, m) = (s.p(), s.m());
    let scale = plateau_scale(p, m, r)?;
    let candidates: Vec<(i8, u32, CycInt)> = [1i8, -1]
        .into_iter()
        .flat_map(|eps| {
            let base = if eps > 0 { scale.clone() } else { -&scale };
            (0..p).map(move |j| (eps, j, base.mul_xi_pow(j as i64)))
        })
        .collect();

    let mut dual = vec![0u8; s.values().len()];
    let mut plus = 0u64;
    let mut minus = 0u64;
    for &b in s.support() {
        let w = s.value(b);
        let &(eps, j, _) = candidates
            .iter()
            .find(|(_, _, c)| c == w)
            .ok_or(ClassifyError::NoCanonicalForm(b))?;
        // for p = 2 the pairs (+, 1) and (−, 0) coincide; positive candidates come first
        dual[b] = j as u8;
        if eps > 0 {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    let dual_g = PAryFunction::from_values_unchecked(p, dual);

    let balance = is_balanced(&dual_g, Domain::Subset(s.support()));
    let constant_sign = plus == 0 || minus == 0;
    let (regularity, epsilon, unit_u) = if p == 2 {
        (Regularity::NotApplicable, None, None)
    } else if constant_sign {
        let eps = if minus == 0 { 1 } else { -1 };
        let u = derive_unit(eps, p, m, r);
        let reg = if u == Unit::PlusOne { Regularity::Regular } else { Regularity::WeaklyRegular };
        (reg, Some(eps), Some(u))
    } else {
        (Regularity::NonWeaklyRegular, None, None)
    };

    let epsilon_g = if p == 2 || regularity.is_weakly_regular() {
        measure_dual_sign(p, m, r, &balance.counts)
    } else {
        None
    };

    Ok(PlateauedReport {
        p,
        m,
        r,
        regularity,
        epsilon,
        unit_u,
        dual_g,
        support: s.support().to_vec(),
        ng_counts: balance.counts,
        g_balanced: balance.balanced,
        epsilon_g,
        sign_counts: (plus, minus),
    })
}

/// Sign of `W_g(0) = Σ_j N_g(j) ξ^j` against `p^{(m-r)/2}` or `p^{(m-r-1)/2} G`.
fn measure_dual_sign(p: u32, m: u32, r: u32, counts: &[u64]) -> Option<i8> {
    let v: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
    let w0 = CycInt::from_group_ring(p, &v);
    let reference = if (m - r).is_multiple_of(2) {
        CycInt::from_int(p, big_pow(p, (m - r) / 2))
    } else if p == 2 {
        return None;
    } else {
        gauss_sum(p).ok()?.scale(&big_pow(p, (m - r - 1) / 2))
    };
    if w0 == reference {
        Some(1)
    } else if w0 == -&reference {
        Some(-1)
    } else {
        None
    }
}

/// Spectrum, plateau amplitude and classification of `f` in one call.
pub fn analyze(f: &PAryFunction, field: &ExtField) -> Result<(WalshSpectrum, PlateauedReport), ClassifyError> {
    let s = walsh_fast(f, field);
    let r = detect_plateau(&s)?;
    let report = classify(&s, r)?;
    Ok((s, report))
}

/// The exact value `u^{-1} p^{(m-r)/2}`, expressed as `ε (−1/p)^m G^{m-r}`.
pub fn dual_scale(p: u32, m: u32, r: u32, epsilon: i8) -> Result<CycInt, ClassifyError> {
    if p == 2 {
        return Ok(CycInt::from_int(2, big_pow(2, (m - r) / 2)));
    }
    let sign = epsilon as i64 * if m % 2 == 1 { legendre(-1, p) as i64 } else { 1 };
    Ok(gauss_sum(p)?.pow(m - r).scale(&BigInt::from(sign)))
}

/// Checks `W_g(x) = u^{-1} p^{(m-r)/2} ξ^{f(-x)}` at every `x`, where `W_g`
/// sums over the Walsh support of `f` only.
pub fn verify_dual_inverse(
    report: &PlateauedReport,
    f: &PAryFunction,
    field: &ExtField,
) -> Result<(), ClassifyError> {
    let eps = match (report.p, report.epsilon) {
        (2, _) => 1,
        (_, Some(e)) => e,
        _ => return Err(ClassifyError::NotWeaklyRegular),
    };
    let scale = dual_scale(report.p, report.m, report.r, eps)?;
    let wg = walsh_restricted(&report.dual_g, field, &report.support);
    for x in 0..field.order() {
        let neg_x = field.neg_index(x as u32) as usize;
        let expected = scale.mul_xi_pow(f.value(neg_x) as i64);
        if wg.value(x) != &expected {
            return Err(ClassifyError::MismatchAt(x));
        }
    }
    Ok(())
}

/// `N_g(j)` predicted from `(p, m, r)`, the sign of `W_g` and balancedness.
pub fn ng_predicted(p: u32, m: u32, r: u32, epsilon_g: i8, balanced: bool) -> Vec<i64> {
    assert!(p % 2 == 1 && r <= m);
    let p_i = p as i64;
    let k = m - r;
    let e = epsilon_g as i64;
    if k == 0 {
        // single support point; only the unbalanced formula can hold
        return (0..p).map(|j| if j == 0 { 1 } else { 0 }).collect();
    }
    let base = p_i.pow(k - 1);
    if balanced {
        return vec![base; p as usize];
    }
    if k.is_multiple_of(2) {
        let off = p_i.pow((k - 2) / 2);
        (0..p).map(|j| if j == 0 { base + e * off * (p_i - 1) } else { base - e * off }).collect()
    } else {
        let off = p_i.pow((k - 1) / 2);
        (0..p)
            .map(|j| if j == 0 { base } else { base + e * off * legendre(j as i64, p) as i64 })
            .collect()
    }
}

/// Counts of `W(b) = +2^{(m+r)/2}`, `0`, `−2^{(m+r)/2}` for an `r`-plateaued
/// Boolean function with `f(0) = 0`.
pub fn binary_walsh_distribution(m: u32, r: u32) -> [i64; 3] {
    assert!((m + r).is_multiple_of(2) && r + 2 <= m || r == m);
    if r == m {
        return [1, (1i64 << m) - 1, 0];
    }
    let half = 1i64 << (m - r - 1);
    let off = 1i64 << ((m - r - 2) / 2);
    [half + off, (1i64 << m) - (1i64 << (m - r)), half - off]
}

/// Observed counts of `+`, `0`, `−` Walsh values for `p = 2`.
pub fn binary_walsh_counts(s: &WalshSpectrum) -> [i64; 3] {
    let mut out = [0i64; 3];
    for w in s.values() {
        let v = &w.coeffs()[0];
        let slot = if v.is_zero() {
            1
        } else if v > &BigInt::zero() {
            0
        } else {
            2
        };
        out[slot] += 1;
    }
    out
}

/// `p*` re-exported for callers checking `G^2`.
pub fn p_star_of(p: u32) -> i64 {
    p_star(p)
}
