//! Minimal codewords: the Ashikhmin–Barg sufficient condition and an
//! exhaustive covering check.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::code::{min_max_weights, LinearCode, WeightDistribution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalityError {
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("covering check needs {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

/// True iff `supp(b) ⊆ supp(a)`.
pub fn covers(a: &[u8], b: &[u8]) -> Result<bool, MinimalityError> {
    if a.len() != b.len() {
        return Err(MinimalityError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).all(|(&x, &y)| y == 0 || x != 0))
}

/// `(p − 1)/p < w_min/w_max`; false when the code has no nonzero weight.
pub fn ashikhmin_barg(wd: &WeightDistribution, p: u32) -> bool {
    match min_max_weights(wd) {
        Some((lo, hi)) => (p as u64 - 1) * hi < p as u64 * lo,
        None => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    BinaryEven,
    OddEven,
    OddOdd,
}

impl ParityCase {
    pub fn of(p: u32, m: u32, r: u32) -> Option<Self> {
        match (p == 2, (m + r).is_multiple_of(2)) {
            (true, true) => Some(ParityCase::BinaryEven),
            (true, false) => None,
            (false, true) => Some(ParityCase::OddEven),
            (false, false) => Some(ParityCase::OddOdd),
        }
    }
}

/// Whether `(m, r)` lies in the range where every nonzero codeword is
/// guaranteed minimal.
pub fn range_guarantee(m: u32, r: u32, case: ParityCase) -> bool {
    match case {
        ParityCase::BinaryEven | ParityCase::OddEven => m >= 4 && r + 4 <= m,
        ParityCase::OddOdd => m >= 3 && r + 3 <= m,
    }
}

/// A codeword named by its `(α, β)` parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodewordId {
    pub alpha: u32,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityVerdict {
    pub all_minimal: bool,
    /// Scalar classes of nonzero codewords checked.
    pub classes: usize,
    /// `(a, b)` where `a` covers `b` and `b` lies outside the scalar class of `a`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(CodewordId, CodewordId)>,
}

struct Class {
    id: CodewordId,
    bits: Vec<u64>,
    weight: u32,
}

/// Decides by pairwise comparison whether every nonzero codeword is minimal.
///
/// One representative per `F_p*`-scalar class is kept (codewords normalized so
/// the first nonzero symbol is 1); duplicates of a degenerate code collapse.
pub fn all_minimal_exhaustive(code: &LinearCode, budget: u64) -> Result<MinimalityVerdict, MinimalityError> {
    let p = code.p();
    let n = code.n();
    let classes_est = ((p as u64).pow(code.k()) - 1) / (p as u64 - 1);
    let words = n.div_ceil(64) as u64;
    let needed = code.enumeration_cost() + classes_est * classes_est * words;
    if needed > budget {
        return Err(MinimalityError::BudgetExceeded { needed, budget });
    }

    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    for (alpha, beta) in code.parameters() {
        let mut c = code.codeword(alpha, beta);
        let Some(&lead) = c.iter().find(|&&v| v != 0) else {
            continue;
        };
        let inv = crate::finite_field::inv_mod_p(lead as u32, p);
        for v in c.iter_mut() {
            *v = (*v as u32 * inv % p) as u8;
        }
        if !seen.insert(c.clone()) {
            continue;
        }
        let mut bits = vec![0u64; n.div_ceil(64)];
        for (i, &v) in c.iter().enumerate() {
            if v != 0 {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        let weight = bits.iter().map(|w| w.count_ones()).sum();
        classes.push(Class { id: CodewordId { alpha, beta }, bits, weight });
    }

    let witness = classes.par_iter().enumerate().find_map_first(|(i, a)| {
        classes.iter().enumerate().find_map(|(j, b)| {
            let inside = i != j
                && b.weight <= a.weight
                && b.bits.iter().zip(&a.bits).all(|(&x, &y)| x & !y == 0);
            inside.then_some((a.id, b.id))
        })
    });
    Ok(MinimalityVerdict { all_minimal: witness.is_none(), classes: classes.len(), witness })
}

/// The combined report attached to verification runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub ashikhmin_barg: bool,
    pub range_guarantee: Option<bool>,
    pub exhaustive: Option<MinimalityVerdict>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_code, weight_distribution, DEFAULT_BUDGET};
    use crate::finite_field::FieldSpec;
    use crate::walsh::{Coeff, FunctionSpec, Term};
    use proptest::prelude::*;

    #[test]
    fn covering_basics() {
        assert!(covers(&[1, 2, 0], &[1, 2, 0]).unwrap());
        assert!(!covers(&[0, 0, 0], &[1, 0, 0]).unwrap());
        assert!(covers(&[1, 1, 0], &[1, 0, 0]).unwrap());
        assert_eq!(covers(&[1], &[1, 0]), Err(MinimalityError::LengthMismatch(1, 2)));
    }

    #[test]
    fn ashikhmin_barg_on_known_weights() {
        let ex3 = WeightDistribution::from_pairs([(0, 1), (8, 3), (16, 59), (24, 1)]);
        assert!(!ashikhmin_barg(&ex3, 2));
        let ex4 = WeightDistribution::from_pairs([(0, 1), (15, 16), (18, 62), (24, 2)]);
        assert!(!ashikhmin_barg(&ex4, 3));
        let good = WeightDistribution::from_pairs([(0, 1), (50, 10), (54, 30), (60, 40)]);
        assert!(ashikhmin_barg(&good, 3));
        assert!(!ashikhmin_barg(&WeightDistribution::from_pairs([(0, 1)]), 3));
    }

    #[test]
    fn parameter_ranges() {
        assert!(!range_guarantee(5, 3, ParityCase::BinaryEven));
        assert!(!range_guarantee(3, 1, ParityCase::OddEven));
        assert!(range_guarantee(3, 0, ParityCase::OddOdd));
        assert!(range_guarantee(4, 0, ParityCase::OddEven));
        assert_eq!(ParityCase::of(2, 5, 2), None);
    }

    #[test]
    fn exhaustive_on_simplex_like_code() {
        // ψ₁ linear: the code is a simplex code, all supports equal size and incomparable
        let spec = FunctionSpec::new(
            FieldSpec { p: 2, m: 3, modulus: vec![1, 1, 0, 1] },
            vec![Term { coeff: Coeff::ZetaPow(0), exponent: 1 }],
        );
        let (_, code) = build_code(&spec).unwrap();
        let v = all_minimal_exhaustive(&code, DEFAULT_BUDGET).unwrap();
        assert!(v.all_minimal);
        assert_eq!(v.classes, 7);
    }

    #[test]
    fn example_four_has_non_minimal_words() {
        let spec = FunctionSpec::new(
            FieldSpec { p: 3, m: 3, modulus: vec![1, 2, 0, 1] },
            [(22, 13), (7, 4), (1, 2)]
                .iter()
                .map(|&(k, e)| Term { coeff: Coeff::ZetaPow(k), exponent: e })
                .collect(),
        );
        let (_, code) = build_code(&spec).unwrap();
        let wd = weight_distribution(&code, DEFAULT_BUDGET).unwrap();
        let v = all_minimal_exhaustive(&code, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.classes, 40);
        assert!(!ashikhmin_barg(&wd, 3));
        let (a, b) = v.witness.expect("a covering pair exists");
        assert!(!v.all_minimal);
        let ca = code.codeword(a.alpha, a.beta);
        let cb = code.codeword(b.alpha, b.beta);
        assert!(covers(&ca, &cb).unwrap());
        assert_ne!(ca, cb);
        assert_eq!(
            all_minimal_exhaustive(&code, 5).unwrap_err(),
            MinimalityError::BudgetExceeded { needed: 81 * 26 + 40 * 40, budget: 5 }
        );
    }

    proptest! {
        #[test]
        fn covering_is_a_preorder(a in prop::collection::vec(0u8..3, 12), b in prop::collection::vec(0u8..3, 12),
                                  c in prop::collection::vec(0u8..3, 12)) {
            prop_assert!(covers(&a, &a).unwrap());
            if covers(&a, &b).unwrap() && covers(&b, &c).unwrap() {
                prop_assert!(covers(&a, &c).unwrap());
            }
        }
    }
}
