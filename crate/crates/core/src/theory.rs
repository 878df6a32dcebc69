//! Closed-form weights and weight distributions of the code built from a
//! (weakly regular) plateaued function, and a structured comparison against
//! enumeration.

use serde::Serialize;
use thiserror::Error;

use crate::classifier::PlateauedReport;
use crate::code::WeightDistribution;
use crate::finite_field::{is_prime, legendre};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("parity condition on m + r violated (m = {m}, r = {r})")]
    ParityViolation { m: u32, r: u32 },
    #[error("parameters outside the admissible range (m = {m}, r = {r})")]
    RangeViolation { m: u32, r: u32 },
    #[error("{0} is not a valid characteristic for this table")]
    BadPrime(u32),
    #[error("prediction not applicable: {0}")]
    NotApplicable(String),
    #[error("predicted multiplicity {0} is negative")]
    NegativeMultiplicity(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Binary,
    OddEvenUnbalanced,
    OddEvenBalanced,
    OddOddUnbalanced,
    OddOddBalanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedRow {
    pub weight: i64,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedDistribution {
    pub p: u32,
    pub m: u32,
    pub r: u32,
    pub epsilon: Option<i8>,
    pub g_balanced: Option<bool>,
    pub table: TableKind,
    pub rows: Vec<PredictedRow>,
}

impl PredictedDistribution {
    pub fn total(&self) -> i64 {
        self.rows.iter().map(|r| r.multiplicity).sum()
    }

    /// Rows merged by weight; zero multiplicities are dropped.
    pub fn to_distribution(&self) -> Result<WeightDistribution, TheoryError> {
        if let Some(row) = self.rows.iter().find(|r| r.multiplicity < 0) {
            return Err(TheoryError::NegativeMultiplicity(row.multiplicity));
        }
        Ok(WeightDistribution::from_pairs(
            self.rows.iter().map(|r| (r.weight as u64, r.multiplicity as u64)),
        ))
    }

    /// Aligned two-column text in table order.
    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.weight.to_string().len()).max().unwrap_or(1).max(6);
        let mut out = format!("{:>width$}  multiplicity\n", "weight");
        for r in &self.rows {
            out.push_str(&format!("{:>width$}  {}\n", r.weight, r.multiplicity));
        }
        out
    }
}

fn pw(p: u32, k: u32) -> i64 {
    (p as i64).pow(k)
}

fn odd_prime(p: u32) -> Result<(), TheoryError> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(TheoryError::BadPrime(p))
    }
}

fn rows(pairs: &[(i64, i64)]) -> Vec<PredictedRow> {
    pairs.iter().map(|&(weight, multiplicity)| PredictedRow { weight, multiplicity }).collect()
}

/// Binary case, `m + r` even, `0 ≤ r ≤ m - 2`.
pub fn predict_binary(m: u32, r: u32) -> Result<PredictedDistribution, TheoryError> {
    if !(m + r).is_multiple_of(2) {
        return Err(TheoryError::ParityViolation { m, r });
    }
    if m < 2 || r + 2 > m {
        return Err(TheoryError::RangeViolation { m, r });
    }
    let half = pw(2, m - 1);
    let off = pw(2, (m + r - 2) / 2);
    let a = pw(2, m - r - 1);
    let b = pw(2, (m - r - 2) / 2);
    Ok(PredictedDistribution {
        p: 2,
        m,
        r,
        epsilon: None,
        g_balanced: None,
        table: TableKind::Binary,
        rows: rows(&[
            (0, 1),
            (half, pw(2, m + 1) - pw(2, m - r) - 1),
            (half - off, a + b),
            (half + off, a - b),
        ]),
    })
}

/// Odd `p`, `m + r` even, `0 ≤ r ≤ m - 2`.
pub fn predict_odd_even(
    p: u32,
    m: u32,
    r: u32,
    epsilon: i8,
    g_balanced: bool,
) -> Result<PredictedDistribution, TheoryError> {
    odd_prime(p)?;
    if !(m + r).is_multiple_of(2) {
        return Err(TheoryError::ParityViolation { m, r });
    }
    if m < 2 || r + 2 > m {
        return Err(TheoryError::RangeViolation { m, r });
    }
    let e = epsilon as i64;
    let q = p as i64;
    let base = pw(p, m) - pw(p, m - 1);
    let off = pw(p, (m + r - 2) / 2);
    let center = pw(p, m + 1) - pw(p, m - r) * (q - 1) - 1;
    let (lo, hi) = if g_balanced {
        (pw(p, m - r - 1) * (q - 1), (pw(p, m - r) - pw(p, m - r - 1)) * (q - 1))
    } else {
        let t = pw(p, (m - r - 2) / 2) * (q - 1) * (q - 1);
        (pw(p, m - r - 1) * (q - 1) + e * t, (pw(p, m - r) - pw(p, m - r - 1)) * (q - 1) - e * t)
    };
    Ok(PredictedDistribution {
        p,
        m,
        r,
        epsilon: Some(epsilon),
        g_balanced: Some(g_balanced),
        table: if g_balanced { TableKind::OddEvenBalanced } else { TableKind::OddEvenUnbalanced },
        rows: rows(&[(0, 1), (base, center), (base - e * (q - 1) * off, lo), (base + e * off, hi)]),
    })
}

/// `(−1)^{(p-1)(m+r+1)/4}` for odd `m + r`.
pub fn odd_sign_factor(p: u32, m: u32, r: u32) -> i64 {
    let s = legendre(-1, p) as i64;
    s.pow((m + r).div_ceil(2))
}

/// Odd `p`, `m + r` odd, `0 ≤ r ≤ m - 1`, with one sign for weights and
/// multiplicities alike.
pub fn predict_odd_odd(
    p: u32,
    m: u32,
    r: u32,
    epsilon: i8,
    g_balanced: bool,
) -> Result<PredictedDistribution, TheoryError> {
    predict_odd_odd_split(p, m, r, epsilon, epsilon, g_balanced)
}

/// The sign of `W_g` when `W(b) = ε G^{m+r} ξ^{g(b)}`, `m + r` odd:
/// `ε (−1/p)^m (−1/p)^{(m-r-1)/2}`.
pub fn dual_sign_odd(p: u32, m: u32, r: u32, epsilon: i8) -> i8 {
    let s = legendre(-1, p) as i64;
    (epsilon as i64 * s.pow(m) * s.pow((m - r - 1) / 2)) as i8
}

/// As [`predict_odd_odd`], but the `±` multiplicities use `epsilon_g`, the
/// sign of `W_g`, which is what the counts `N_g(j)` depend on.
pub fn predict_odd_odd_split(
    p: u32,
    m: u32,
    r: u32,
    epsilon: i8,
    epsilon_g: i8,
    g_balanced: bool,
) -> Result<PredictedDistribution, TheoryError> {
    odd_prime(p)?;
    if (m + r) % 2 != 1 {
        return Err(TheoryError::ParityViolation { m, r });
    }
    if r + 1 > m {
        return Err(TheoryError::RangeViolation { m, r });
    }
    let e = epsilon as i64;
    let q = p as i64;
    let base = pw(p, m) - pw(p, m - 1);
    let off = odd_sign_factor(p, m, r) * e * pw(p, (m + r - 1) / 2);
    let center = pw(p, m + 1) - pw(p, m - r - 1) * (q - 1) * (q - 1) - 1;
    let sq = (q - 1) * (q - 1);
    let (lo, hi) = if g_balanced {
        (pw(p, m - r - 1) * sq / 2, pw(p, m - r - 1) * sq / 2)
    } else {
        let t = epsilon_g as i64 * pw(p, (m - r - 1) / 2);
        ((pw(p, m - r - 1) + t) * sq / 2, (pw(p, m - r - 1) - t) * sq / 2)
    };
    Ok(PredictedDistribution {
        p,
        m,
        r,
        epsilon: Some(epsilon),
        g_balanced: Some(g_balanced),
        table: if g_balanced { TableKind::OddOddBalanced } else { TableKind::OddOddUnbalanced },
        rows: rows(&[(0, 1), (base, center), (base - off, lo), (base + off, hi)]),
    })
}

/// Multiplicity of weight `p^m − p^{m-1}` in the odd/odd case as obtained by
/// counting `(α, β)` pairs directly.
pub fn odd_odd_center_by_counting(p: u32, m: u32, r: u32) -> i64 {
    pw(p, m + 1) + 2 * pw(p, m - r) - pw(p, m - r + 1) - pw(p, m - r - 1) - 1
}

/// Which codeword `c̃_{α,β}` a weight is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightCase {
    /// `α = β = 0`
    Zero,
    /// `α = 0`, `β ≠ 0`
    AlphaZero,
    /// `α ≠ 0` and `W(α^{-1}β) = 0`
    OffSupport,
    /// `α ≠ 0` and `W(α^{-1}β) ≠ 0` with dual value `g = g(α^{-1}β)`
    OnSupport { g: u32 },
}

/// Predicted Hamming weight of `c̃_{α,β}`. For `p = 2`, pass `ε = 1` and the
/// dual bit as `g`.
pub fn predicted_weight(p: u32, m: u32, r: u32, epsilon: i8, case: WeightCase) -> i64 {
    let base = pw(p, m) - pw(p, m - 1);
    let e = epsilon as i64;
    match case {
        WeightCase::Zero => 0,
        WeightCase::AlphaZero | WeightCase::OffSupport => base,
        WeightCase::OnSupport { g } if (m + r) % 2 == 1 => {
            if g % p == 0 {
                base
            } else {
                base - e * odd_sign_factor(p, m, r) * pw(p, (m + r - 1) / 2) * legendre(g as i64, p) as i64
            }
        }
        WeightCase::OnSupport { g } => {
            if g % p == 0 {
                base - e * (p as i64 - 1) * pw(p, (m + r - 2) / 2)
            } else {
                base + e * pw(p, (m + r - 2) / 2)
            }
        }
    }
}

/// `(#W, #WS)`: pairs `(α, β) ∈ F_p* × F_{p^m}` off and on the Walsh support.
pub fn set_cardinalities(p: u32, m: u32, r: u32) -> (u64, u64) {
    let q = p as u64;
    ((q - 1) * (q.pow(m) - q.pow(m - r)), (q - 1) * q.pow(m - r))
}

/// The table matching a classified function, fed with the classifier's
/// theorem sign and measured balancedness of the dual.
pub fn predict_for(report: &PlateauedReport) -> Result<PredictedDistribution, TheoryError> {
    let (p, m, r) = (report.p, report.m, report.r);
    if p == 2 {
        return predict_binary(m, r);
    }
    let eps = report
        .theorem_epsilon()
        .ok_or_else(|| TheoryError::NotApplicable(format!("function is {}", report.regularity.as_str())))?;
    if (m + r) % 2 == 0 {
        predict_odd_even(p, m, r, eps, report.g_balanced)
    } else {
        predict_odd_odd(p, m, r, eps, report.g_balanced)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffRow {
    pub w: u64,
    pub predicted: u64,
    pub observed: u64,
}

/// Rows where prediction and enumeration disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionDiff {
    pub matches: bool,
    pub differences: Vec<DiffRow>,
}

pub fn compare(predicted: &WeightDistribution, observed: &WeightDistribution) -> DistributionDiff {
    let mut weights: Vec<u64> = predicted.iter().chain(observed.iter()).map(|(w, _)| w).collect();
    weights.sort_unstable();
    weights.dedup();
    let differences: Vec<DiffRow> = weights
        .into_iter()
        .map(|w| DiffRow { w, predicted: predicted.get(w), observed: observed.get(w) })
        .filter(|d| d.predicted != d.observed)
        .collect();
    DistributionDiff { matches: differences.is_empty(), differences }
}
