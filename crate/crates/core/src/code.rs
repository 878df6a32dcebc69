//! The linear code `{ (αψ₁(x) − Tr(βx))_{x ∈ F*} : α ∈ F_p, β ∈ F_{p^m} }`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycInt};
use crate::finite_field::{inv_mod_p, ExtField};
use crate::walsh::{evaluate_spec, FunctionSpec, PAryFunction, WalshError, WalshSpectrum};

/// Default enumeration budget in coordinate operations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("enumeration needs {needed} coordinate operations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("code has dimension {k}, expected {expected}")]
    DegenerateDimension { k: u32, expected: u32 },
    #[error("Galois orbit sum is not a rational multiple of p")]
    NonRationalSum,
    #[error("α = {0} is not a residue mod p")]
    BadAlpha(u32),
    #[error(transparent)]
    Walsh(#[from] WalshError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

/// Codewords are generated on demand from `(α, β)`; nothing is materialized.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: ExtField,
    /// `ψ₁(ζ^i)` for `i = 0..n`
    psi: Vec<u8>,
    k: u32,
}

impl LinearCode {
    pub fn from_function(field: &ExtField, f: &PAryFunction) -> Self {
        let psi = f.values()[1..].to_vec();
        let mut code = LinearCode { field: field.clone(), psi, k: 0 };
        code.k = code.rank();
        code
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn n(&self) -> usize {
        self.psi.len()
    }

    /// Measured dimension.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_degenerate(&self) -> bool {
        self.k < self.m() + 1
    }

    pub fn check_dimension(&self) -> Result<(), CodeError> {
        if self.is_degenerate() {
            Err(CodeError::DegenerateDimension { k: self.k, expected: self.m() + 1 })
        } else {
            Ok(())
        }
    }

    /// `c̃_{α,β}` with coordinates ordered `ζ^0, ζ^1, …, ζ^{n-1}`.
    pub fn codeword(&self, alpha: u32, beta: usize) -> Vec<u8> {
        let p = self.p();
        let a = alpha % p;
        (0..self.n()).map(|i| self.coordinate(a, beta, i) as u8).collect()
    }

    #[inline]
    fn coordinate(&self, alpha: u32, beta: usize, i: usize) -> u32 {
        let p = self.p();
        let t = if beta == 0 { 0 } else { self.field.trace_of_log(beta - 1 + i) };
        (alpha * self.psi[i] as u32 + p - t) % p
    }

    pub fn weight(&self, alpha: u32, beta: usize) -> u64 {
        let a = alpha % self.p();
        (0..self.n()).filter(|&i| self.coordinate(a, beta, i) != 0).count() as u64
    }

    /// Rank over `F_p` of the generators `ψ₁` and `Tr(ζ^j x)`, `j < m`.
    fn rank(&self) -> u32 {
        let p = self.p();
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(self.m() as usize + 1);
        rows.push(self.psi.iter().map(|&v| v as u32).collect());
        for j in 0..self.m() as usize {
            rows.push((0..self.n()).map(|i| self.field.trace_of_log(j + i)).collect());
        }
        rank_mod_p(rows, p)
    }

    /// Number of enumeration steps, `p^{m+1} n`.
    pub fn enumeration_cost(&self) -> u64 {
        (self.p() as u64).pow(self.m() + 1) * self.n() as u64
    }

    /// All `(α, β)` pairs in order `α` major, `β` by canonical index.
    pub fn parameters(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        let q = self.field.order();
        (0..self.p()).flat_map(move |a| (0..q).map(move |b| (a, b)))
    }
}

fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> u32 {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod_p(rows[rank][c], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank as u32
}

/// Evaluates the spec and builds its code.
pub fn build_code(spec: &FunctionSpec) -> Result<(PAryFunction, LinearCode), CodeError> {
    let (field, f) = evaluate_spec(spec)?;
    let code = LinearCode::from_function(&field, &f);
    Ok((f, code))
}

/// Weight histogram `w ↦ A_w`, always including `w = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightDistribution {
    counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut counts = BTreeMap::new();
        for (w, a) in pairs {
            if a > 0 {
                *counts.entry(w).or_insert(0) += a;
            }
        }
        WeightDistribution { counts }
    }

    pub fn get(&self, w: u64) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    /// `(w, A_w)` sorted by weight.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&w, &a)| (w, a))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied().filter(|&w| w > 0)
    }

    pub fn num_nonzero_weights(&self) -> usize {
        self.nonzero_weights().count()
    }

    /// `1+3y^8+59y^16+1y^24`, weights ascending.
    pub fn enumerator(&self) -> String {
        self.iter()
            .map(|(w, a)| if w == 0 { a.to_string() } else { format!("{a}y^{w}") })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.enumerator())
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            w: u64,
            #[serde(rename = "A")]
            a: u64,
        }
        let mut seq = s.serialize_seq(Some(self.counts.len()))?;
        for (w, a) in self.iter() {
            seq.serialize_element(&Row { w, a })?;
        }
        seq.end()
    }
}

/// Exact distribution by enumerating every `(α, β)`.
///
/// A degenerate code hits each codeword `p^{m+1-k}` times; multiplicities are
/// divided accordingly so they sum to `p^k`.
pub fn weight_distribution(code: &LinearCode, budget: u64) -> Result<WeightDistribution, CodeError> {
    let needed = code.enumeration_cost();
    if needed > budget {
        return Err(CodeError::BudgetExceeded { needed, budget });
    }
    let q = code.field.order();
    let p = code.p();
    let hist = (0..p as usize * q)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, t| {
            *acc.entry(code.weight((t / q) as u32, t % q)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (w, c) in b {
                *a.entry(w).or_insert(0) += c;
            }
            a
        });
    let repeat = (p as u64).pow(code.m() + 1 - code.k);
    Ok(WeightDistribution::from_pairs(hist.into_iter().map(|(w, a)| (w, a / repeat))))
}

/// Weight of `c̃_{α,β}` from the spectrum of `ψ₁` via Galois conjugates:
/// `p^m − p^{m-1} − (1/p) Σ_{ω ∈ F_p*} σ_ω(σ_α(W(α^{-1}β)))`.
pub fn weight_via_walsh(
    s: &WalshSpectrum,
    field: &ExtField,
    alpha: u32,
    beta: usize,
) -> Result<u64, CodeError> {
    let p = s.p();
    if alpha >= p {
        return Err(CodeError::BadAlpha(alpha));
    }
    let base = (p as u64).pow(s.m()) - (p as u64).pow(s.m() - 1);
    if alpha == 0 {
        return Ok(if beta == 0 { 0 } else { base });
    }
    let a_inv = field.from_prime(inv_mod_p(alpha, p) as i64).index();
    let b = field.mul_index(a_inv as u32, beta as u32) as usize;
    let w = s.value(b);
    let inner = w.conjugate(alpha as i64)?;
    let mut orbit = CycInt::zero(p);
    for omega in 1..p {
        orbit = orbit.try_add(&inner.conjugate(omega as i64)?)?;
    }
    let total = orbit.rational_value().map_err(|_| CodeError::NonRationalSum)?;
    let p_big = BigInt::from(p);
    if &total % &p_big != BigInt::from(0) {
        return Err(CodeError::NonRationalSum);
    }
    let shift = (total / p_big).to_i64().ok_or(CodeError::NonRationalSum)?;
    Ok((base as i64 - shift) as u64)
}

/// `(w_min, w_max)` over nonzero weights.
pub fn min_max_weights(wd: &WeightDistribution) -> Option<(u64, u64)> {
    let mut it = wd.nonzero_weights();
    let first = it.next()?;
    let last = it.last().unwrap_or(first);
    Some((first, last))
}

/// Writes one codeword per line, `(α, β)` in [`LinearCode::parameters`] order.
/// Symbols are single digits for `p ≤ 10` and space separated otherwise.
pub fn write_codewords<W: Write>(code: &LinearCode, out: &mut W) -> io::Result<()> {
    let sep = if code.p() > 10 { " " } else { "" };
    for (a, b) in code.parameters() {
        let row: Vec<String> = code.codeword(a, b).iter().map(u8::to_string).collect();
        writeln!(out, "{}", row.join(sep))?;
    }
    Ok(())
}

/// Summary in the external JSON layout.
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub p: u32,
    pub n: usize,
    pub k: u32,
    pub degenerate: bool,
    pub weights: WeightDistribution,
    pub enumerator: String,
    pub w_min: Option<u64>,
    pub w_max: Option<u64>,
}

impl CodeReport {
    pub fn new(code: &LinearCode, weights: WeightDistribution) -> Self {
        let mm = min_max_weights(&weights);
        CodeReport {
            p: code.p(),
            n: code.n(),
            k: code.k(),
            degenerate: code.is_degenerate(),
            enumerator: weights.enumerator(),
            weights,
            w_min: mm.map(|x| x.0),
            w_max: mm.map(|x| x.1),
        }
    }

    /// `[31,6]` for binary codes, `[26,4]_3` otherwise.
    pub fn parameters(&self) -> String {
        if self.p == 2 {
            format!("[{},{}]", self.n, self.k)
        } else {
            format!("[{},{}]_{}", self.n, self.k, self.p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walsh::{walsh_fast, Coeff, Term};
    use crate::finite_field::FieldSpec;

    fn spec(p: u32, m: u32, modulus: &[u32], terms: &[(u32, u64)]) -> FunctionSpec {
        FunctionSpec::new(
            FieldSpec { p, m, modulus: modulus.to_vec() },
            terms.iter().map(|&(k, e)| Term { coeff: Coeff::ZetaPow(k), exponent: e }).collect(),
        )
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 3), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]], 2), 2);
        assert_eq!(rank_mod_p(vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]], 3), 3);
    }

    #[test]
    fn linear_psi_is_degenerate() {
        let (_, code) = build_code(&spec(3, 3, &[1, 2, 0, 1], &[(0, 1)])).unwrap();
        assert_eq!(code.k(), 3);
        assert!(matches!(code.check_dimension(), Err(CodeError::DegenerateDimension { k: 3, expected: 4 })));
        let wd = weight_distribution(&code, DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.total(), 27);
        assert_eq!(wd.get(18), 26);
    }

    #[test]
    fn zero_codeword_and_budget() {
        let (_, code) = build_code(&spec(3, 3, &[1, 2, 0, 1], &[(1, 2)])).unwrap();
        assert_eq!(code.weight(0, 0), 0);
        assert!(code.codeword(0, 0).iter().all(|&v| v == 0));
        assert_eq!(
            weight_distribution(&code, 10),
            Err(CodeError::BudgetExceeded { needed: 81 * 26, budget: 10 })
        );
    }

    #[test]
    fn codewords_are_linear() {
        let (_, code) = build_code(&spec(3, 2, &[2, 1, 1], &[(1, 2), (3, 4)])).unwrap();
        let f = code.field().clone();
        for (a1, b1) in code.parameters() {
            for (a2, b2) in code.parameters() {
                let sum = code.codeword((a1 + a2) % 3, f.add_index(b1 as u32, b2 as u32) as usize);
                let c1 = code.codeword(a1, b1);
                let c2 = code.codeword(a2, b2);
                let expect: Vec<u8> = c1.iter().zip(&c2).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(sum, expect);
            }
        }
    }

    #[test]
    fn walsh_weights_match_direct_counting() {
        let (f, code) = build_code(&spec(3, 3, &[1, 2, 0, 1], &[(22, 13), (7, 4), (1, 2)])).unwrap();
        let s = walsh_fast(&f, code.field());
        for (a, b) in code.parameters() {
            assert_eq!(weight_via_walsh(&s, code.field(), a, b).unwrap(), code.weight(a, b));
        }
        assert_eq!(weight_via_walsh(&s, code.field(), 3, 0), Err(CodeError::BadAlpha(3)));
    }

    #[test]
    fn enumerator_and_extremes() {
        let wd = WeightDistribution::from_pairs([(16, 59), (8, 3), (0, 1), (24, 1)]);
        assert_eq!(wd.enumerator(), "1+3y^8+59y^16+1y^24");
        assert_eq!(min_max_weights(&wd), Some((8, 24)));
        let single = WeightDistribution::from_pairs([(0, 1), (4, 7)]);
        assert_eq!(min_max_weights(&single), Some((4, 4)));
        assert_eq!(serde_json::to_string(&single).unwrap(), r#"[{"w":0,"A":1},{"w":4,"A":7}]"#);
    }

    #[test]
    fn codeword_dump_rows() {
        let (_, code) = build_code(&spec(2, 3, &[1, 1, 0, 1], &[(0, 3)])).unwrap();
        let mut buf = Vec::new();
        write_codewords(&code, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 16);
        assert!(lines.iter().all(|l| l.len() == 7));
        assert_eq!(lines[0], "0000000");
    }
}
