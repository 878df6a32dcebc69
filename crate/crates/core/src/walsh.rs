//! `p`-ary functions `F_{p^m} → F_p` and their exact Walsh spectra
//! `W_f(b) = Σ_x ξ^{f(x) − Tr(bx)}`.
//!
//! Two transforms are provided. [`walsh_direct`] evaluates the defining sum
//! for every `b`. [`walsh_fast`] runs a radix-`p` butterfly over the `m`
//! coordinates of `F_{p^m}` as an `F_p`-space, keeping every intermediate
//! value in the group ring `Z[C_p]` where multiplication by `ξ^k` is a
//! rotation, and only reduces to `Z[ξ_p]` at the end.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycInt};
use crate::finite_field::{element_label, ExtField, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalshError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error("term exponent must be positive so that Ψ(0) = 0")]
    ConstantTerm,
    #[error("function spec does not match the field it is evaluated in")]
    FieldMismatch,
    #[error("table has {got} entries, expected {expected}")]
    BadTable { got: usize, expected: usize },
    #[error("spectrum does not invert to a p-ary function at x = {0}")]
    NotInvertible(usize),
}

/// Coefficient of a monomial term: zero or a power of the primitive element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Zero,
    ZetaPow(u32),
}

impl Coeff {
    /// Canonical element position (`0` for zero, `k + 1` for `ζ^k`).
    pub fn index(self, field: &ExtField) -> usize {
        match self {
            Coeff::Zero => 0,
            Coeff::ZetaPow(k) => (k as usize % field.group_order()) + 1,
        }
    }

    pub fn from_index(index: usize) -> Self {
        match index {
            0 => Coeff::Zero,
            i => Coeff::ZetaPow(i as u32 - 1),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Coeff::Zero => f.write_str("0"),
            Coeff::ZetaPow(k) => f.write_str(&element_label(k as usize + 1)),
        }
    }
}

impl FromStr for Coeff {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(Coeff::Zero),
            "1" => Ok(Coeff::ZetaPow(0)),
            "z" => Ok(Coeff::ZetaPow(1)),
            t => t
                .strip_prefix("z^")
                .and_then(|k| k.parse().ok())
                .map(Coeff::ZetaPow)
                .ok_or_else(|| format!("unrecognised coefficient {s:?}; expected \"0\", \"1\", \"z\" or \"z^k\"")),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A monomial `c · x^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Coeff, u64)", into = "(Coeff, u64)")]
pub struct Term {
    pub coeff: Coeff,
    pub exponent: u64,
}

impl From<(Coeff, u64)> for Term {
    fn from((coeff, exponent): (Coeff, u64)) -> Self {
        Term { coeff, exponent }
    }
}

impl From<Term> for (Coeff, u64) {
    fn from(t: Term) -> Self {
        (t.coeff, t.exponent)
    }
}

/// `Ψ(x) = Σ cᵢ x^{eᵢ}` over a given field; the analysed function is `ψ₁ = Tr(Ψ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionSpec {
    #[serde(flatten)]
    pub field: FieldSpec,
    pub terms: Vec<Term>,
}

impl FunctionSpec {
    pub fn new(field: FieldSpec, terms: Vec<Term>) -> Self {
        FunctionSpec { field, terms }
    }

    pub fn validate(&self) -> Result<(), WalshError> {
        if self.terms.iter().any(|t| t.exponent == 0) {
            return Err(WalshError::ConstantTerm);
        }
        Ok(())
    }

    pub fn build_field(&self) -> Result<ExtField, WalshError> {
        Ok(ExtField::from_spec(&self.field)?)
    }

    /// `Ψ` written in the `ζ`-power notation, e.g. `z^22*x^13 + z^7*x^4`.
    pub fn polynomial_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| format!("{}*x^{}", t.coeff, t.exponent))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A function `F_{p^m} → F_p` stored as a value table in canonical element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAryFunction {
    p: u32,
    values: Vec<u8>,
}

impl PAryFunction {
    pub fn from_values(field: &ExtField, values: Vec<u8>) -> Result<Self, WalshError> {
        if values.len() != field.order() {
            return Err(WalshError::BadTable { got: values.len(), expected: field.order() });
        }
        let p = field.p();
        if values.iter().any(|&v| v as u32 >= p) {
            return Err(WalshError::BadTable { got: values.len(), expected: field.order() });
        }
        Ok(PAryFunction { p, values })
    }

    pub(crate) fn from_values_unchecked(p: u32, values: Vec<u8>) -> Self {
        PAryFunction { p, values }
    }

    pub fn zero(field: &ExtField) -> Self {
        PAryFunction { p: field.p(), values: vec![0; field.order()] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, index: usize) -> u32 {
        self.values[index] as u32
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn set(&mut self, index: usize, v: u32) {
        self.values[index] = (v % self.p) as u8;
    }

    /// Pointwise `self + Tr(βx)`.
    pub fn add_linear(&self, field: &ExtField, beta: usize) -> Self {
        let mut out = self.clone();
        for x in 0..field.order() {
            let t = field.trace_at(field.mul_index(beta as u32, x as u32) as usize);
            out.set(x, self.value(x) + t);
        }
        out
    }
}

/// `ψ₁(x) = Tr(Ψ(x))` for every `x`.
pub fn evaluate(spec: &FunctionSpec, field: &ExtField) -> Result<PAryFunction, WalshError> {
    spec.validate()?;
    if spec.field != *field.spec() {
        return Err(WalshError::FieldMismatch);
    }
    let terms: Vec<(u32, u64)> = spec
        .terms
        .iter()
        .map(|t| (t.coeff.index(field) as u32, t.exponent))
        .collect();
    let values = (0..field.order())
        .map(|x| {
            let psi = terms.iter().fold(0u32, |acc, &(c, e)| {
                let term = field.mul_index(c, field.pow_index(x as u32, e));
                field.add_index(acc, term)
            });
            field.trace_at(psi as usize) as u8
        })
        .collect();
    Ok(PAryFunction { p: field.p(), values })
}

/// Builds the field of `spec` and evaluates `ψ₁` in it.
pub fn evaluate_spec(spec: &FunctionSpec) -> Result<(ExtField, PAryFunction), WalshError> {
    let field = spec.build_field()?;
    let f = evaluate(spec, &field)?;
    Ok((field, f))
}

/// Exact Walsh spectrum, dense over all `b` in canonical element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    p: u32,
    m: u32,
    values: Vec<CycInt>,
    support: Vec<usize>,
}

impl WalshSpectrum {
    fn from_values(p: u32, m: u32, values: Vec<CycInt>) -> Self {
        let support = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect();
        WalshSpectrum { p, m, values, support }
    }

    pub(crate) fn from_group_ring(p: u32, m: u32, raw: &[i64]) -> Self {
        let values = raw
            .chunks_exact(p as usize)
            .map(|c| CycInt::from_group_ring(p, c))
            .collect();
        Self::from_values(p, m, values)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn value(&self, b: usize) -> &CycInt {
        &self.values[b]
    }

    /// Positions `b` with `W(b) ≠ 0`, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn in_support(&self, b: usize) -> bool {
        !self.values[b].is_zero()
    }

    /// `|W(b)|^2` for every `b`.
    pub fn squared_magnitudes(&self) -> Result<Vec<BigInt>, CycError> {
        self.values.iter().map(|w| w.abs_square().rational_value()).collect()
    }
}

impl Serialize for WalshSpectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            b: String,
            coeffs: Vec<crate::cyclotomic::BigIntJson<'a>>,
        }
        s.collect_seq(self.values.iter().enumerate().map(|(b, w)| Entry {
            b: element_label(b),
            coeffs: w.coeffs().iter().map(crate::cyclotomic::BigIntJson).collect(),
        }))
    }
}

/// Direct `O(p^{2m})` evaluation of the Walsh sum, parallel over `b`.
pub fn walsh_direct(f: &PAryFunction, field: &ExtField) -> WalshSpectrum {
    assert_eq!(f.len(), field.order());
    let p = field.p() as usize;
    let n = field.group_order();
    let values = (0..field.order())
        .into_par_iter()
        .map(|b| {
            let mut counts = vec![0i64; p];
            for x in 0..field.order() {
                let tr = if b == 0 || x == 0 { 0 } else { field.trace_of_log(b - 1 + x - 1) as usize };
                counts[(f.value(x) as usize + p - tr) % p] += 1;
            }
            debug_assert!(n > 0);
            CycInt::from_group_ring(p as u32, &counts)
        })
        .collect();
    WalshSpectrum::from_values(field.p(), field.m(), values)
}

/// Butterfly transform over the coordinate space, returning one group-ring
/// vector of length `p` per `b` (canonical order), concatenated.
///
/// `domain` restricts the sum to the given element positions.
pub(crate) fn group_ring_transform(f: &PAryFunction, field: &ExtField, domain: Option<&[usize]>) -> Vec<i64> {
    let p = field.p() as usize;
    let q = field.order();
    let mut arr = vec![0i64; q * p];
    let mut seed = |x: usize| {
        arr[field.encoding(x) * p + f.value(x) as usize] += 1;
    };
    match domain {
        None => (0..q).for_each(&mut seed),
        Some(d) => d.iter().copied().for_each(&mut seed),
    }

    let mut gathered = vec![0i64; p * p];
    let mut stride = 1usize;
    for _ in 0..field.m() {
        for base in 0..q {
            if !(base / stride).is_multiple_of(p) {
                continue;
            }
            for t in 0..p {
                let src = (base + t * stride) * p;
                gathered[t * p..(t + 1) * p].copy_from_slice(&arr[src..src + p]);
            }
            for y in 0..p {
                let dst = (base + y * stride) * p;
                let out = &mut arr[dst..dst + p];
                out.iter_mut().for_each(|c| *c = 0);
                for t in 0..p {
                    // ξ^{-y t} rotates coordinates down by y·t
                    let shift = (y * t) % p;
                    let v = &gathered[t * p..(t + 1) * p];
                    for i in 0..p {
                        out[(i + p - shift) % p] += v[i];
                    }
                }
            }
        }
        stride *= p;
    }

    // reorder from coordinate vectors y to field elements b with y_d = Tr(b ζ^d)
    let mut out = vec![0i64; q * p];
    for b in 0..q {
        let y = if b == 0 {
            0
        } else {
            (0..field.m() as usize)
                .rev()
                .fold(0usize, |acc, d| acc * p + field.trace_of_log(b - 1 + d) as usize)
        };
        out[b * p..(b + 1) * p].copy_from_slice(&arr[y * p..(y + 1) * p]);
    }
    out
}

/// Fast exact Walsh transform; identical output to [`walsh_direct`].
pub fn walsh_fast(f: &PAryFunction, field: &ExtField) -> WalshSpectrum {
    assert_eq!(f.len(), field.order());
    let raw = group_ring_transform(f, field, None);
    WalshSpectrum::from_group_ring(field.p(), field.m(), &raw)
}

/// `Σ_{x ∈ domain} ξ^{f(x) − Tr(bx)}` for every `b`; used for duals living on a Walsh support.
pub fn walsh_restricted(f: &PAryFunction, field: &ExtField, domain: &[usize]) -> WalshSpectrum {
    let raw = group_ring_transform(f, field, Some(domain));
    WalshSpectrum::from_group_ring(field.p(), field.m(), &raw)
}

/// `|W(b)|^2` directly from a group-ring vector, or `None` if it is not rational
/// (which would mean the vector is corrupt).
pub(crate) fn raw_abs_square(v: &[i64]) -> Option<i64> {
    let p = v.len();
    let mut z = vec![0i64; p];
    for (i, &a) in v.iter().enumerate().filter(|(_, a)| **a != 0) {
        for (j, &b) in v.iter().enumerate().filter(|(_, b)| **b != 0) {
            z[(i + p - j) % p] += a * b;
        }
    }
    let top = z[p - 1];
    if p > 2 && z[1..].iter().any(|&c| c != top) {
        return None;
    }
    Some(z[0] - top)
}

/// Recovers `f` from its spectrum through `ξ^{f(x)} = p^{-m} Σ_b W(b) ξ^{Tr(bx)}`.
pub fn inverse_transform(s: &WalshSpectrum, field: &ExtField) -> Result<PAryFunction, WalshError> {
    let p = field.p();
    let q = field.order();
    let scale = BigInt::from(q as u64);
    let units: Vec<CycInt> = (0..p as i64).map(|j| CycInt::xi_pow(p, j).scale(&scale)).collect();
    let values = (0..q)
        .into_par_iter()
        .map(|x| {
            let mut acc = CycInt::zero(p);
            for &b in s.support() {
                let tr = field.trace_at(field.mul_index(b as u32, x as u32) as usize);
                acc = &acc + &s.value(b).mul_xi_pow(tr as i64);
            }
            units
                .iter()
                .position(|u| *u == acc)
                .map(|j| j as u8)
                .ok_or(WalshError::NotInvertible(x))
        })
        .collect::<Result<Vec<u8>, _>>()?;
    PAryFunction::from_values(field, values)
}

/// Moment `S_i = Σ_b |W(b)|^{2i}`, with `S_0 = p^m` by convention.
///
/// The sum is formed in `Z[ξ_p]`; individual `|W(b)|^2` need not be rational
/// for `p ≥ 5`, but `S_1` always is.
pub fn moment(s: &WalshSpectrum, i: u32) -> Result<BigInt, CycError> {
    if i == 0 {
        return Ok(BigInt::from(s.p).pow(s.m));
    }
    let total = s
        .values
        .par_iter()
        .filter(|w| !w.is_zero())
        .map(|w| w.abs_square().pow(i))
        .reduce(|| CycInt::zero(s.p), |a, b| &a + &b);
    total.rational_value()
}

/// Which inputs a balance check ranges over.
#[derive(Debug, Clone, Copy)]
pub enum Domain<'a> {
    All,
    Subset(&'a [usize]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    /// `counts[j]` is the number of inputs with value `j`.
    pub counts: Vec<u64>,
    pub balanced: bool,
}

pub fn is_balanced(f: &PAryFunction, domain: Domain<'_>) -> BalanceReport {
    let mut counts = vec![0u64; f.p as usize];
    match domain {
        Domain::All => f.values.iter().for_each(|&v| counts[v as usize] += 1),
        Domain::Subset(d) => d.iter().for_each(|&x| counts[f.values[x] as usize] += 1),
    }
    let balanced = counts.iter().all(|&c| c == counts[0]);
    BalanceReport { counts, balanced }
}

/// Compact numbers describing a spectrum, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    pub support_size: usize,
    /// Distinct nonzero `|W(b)|^2` values, ascending; `None` if some are irrational.
    #[serde(serialize_with = "serialize_opt_bigints")]
    pub squared_magnitudes: Option<Vec<BigInt>>,
    /// `S_0, S_1, S_2`; an entry is `None` when that moment is irrational.
    #[serde(serialize_with = "serialize_moments")]
    pub moments: Vec<Option<BigInt>>,
}

fn serialize_opt_bigints<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(crate::cyclotomic::BigIntJson)),
    }
}

fn serialize_moments<S: Serializer>(v: &[Option<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|m| m.as_ref().map(crate::cyclotomic::BigIntJson)))
}

pub fn summarize(s: &WalshSpectrum) -> SpectrumSummary {
    let squared_magnitudes = s.squared_magnitudes().ok().map(|mags| {
        let mut distinct: Vec<BigInt> = mags.into_iter().filter(|v| !v.is_zero()).collect();
        distinct.sort();
        distinct.dedup();
        distinct
    });
    let moments = (0..3).map(|i| moment(s, i).ok()).collect();
    SpectrumSummary { support_size: s.support.len(), squared_magnitudes, moments }
}

/// `p^k` as a `BigInt`.
pub(crate) fn big_pow(p: u32, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// Exact `log_p` of `v` when `v` is a power of `p`.
pub(crate) fn exact_log(v: &BigInt, p: u32) -> Option<u32> {
    if v <= &BigInt::zero() {
        return None;
    }
    let mut k = 0;
    let mut cur = BigInt::one();
    while &cur < v {
        cur *= p;
        k += 1;
    }
    (&cur == v).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, m: u32, modulus: &[u32]) -> ExtField {
        ExtField::new(p, m, modulus).unwrap()
    }

    fn random_function(field: &ExtField, rng: &mut ChaCha8Rng) -> PAryFunction {
        let p = field.p();
        let mut values: Vec<u8> = (0..field.order()).map(|_| rng.random_range(0..p) as u8).collect();
        values[0] = 0;
        PAryFunction::from_values(field, values).unwrap()
    }

    #[test]
    fn coefficient_strings() {
        assert_eq!("z".parse::<Coeff>().unwrap(), Coeff::ZetaPow(1));
        assert_eq!("z^22".parse::<Coeff>().unwrap(), Coeff::ZetaPow(22));
        assert_eq!("1".parse::<Coeff>().unwrap(), Coeff::ZetaPow(0));
        assert_eq!("0".parse::<Coeff>().unwrap(), Coeff::Zero);
        assert!("y^2".parse::<Coeff>().is_err());
        assert_eq!(Coeff::ZetaPow(7).to_string(), "z^7");
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"p":3,"m":3,"modulus":[1,2,0,1],"terms":[["z",2],["z^7",4],["z^7",3],["z",13]]}"#;
        let spec: FunctionSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.field, FieldSpec { p: 3, m: 3, modulus: vec![1, 2, 0, 1] });
        assert_eq!(spec.terms[1], Term { coeff: Coeff::ZetaPow(7), exponent: 4 });
        assert_eq!(serde_json::to_string(&spec).unwrap(), json);
    }

    #[test]
    fn constant_terms_rejected() {
        let spec = FunctionSpec::new(
            FieldSpec { p: 3, m: 3, modulus: vec![1, 2, 0, 1] },
            vec![Term { coeff: Coeff::ZetaPow(0), exponent: 0 }],
        );
        assert_eq!(evaluate_spec(&spec).unwrap_err(), WalshError::ConstantTerm);
    }

    #[test]
    fn empty_and_identity_specs() {
        let fs = FieldSpec { p: 3, m: 3, modulus: vec![1, 2, 0, 1] };
        let (_, f) = evaluate_spec(&FunctionSpec::new(fs.clone(), vec![])).unwrap();
        assert!(f.values().iter().all(|&v| v == 0));
        let id = FunctionSpec::new(fs, vec![Term { coeff: Coeff::ZetaPow(0), exponent: 1 }]);
        let (_, f) = evaluate_spec(&id).unwrap();
        let bal = is_balanced(&f, Domain::All);
        assert!(bal.balanced);
        assert_eq!(bal.counts, vec![9, 9, 9]);
    }

    #[test]
    fn zero_function_spectrum() {
        let f2 = field(2, 1, &[1, 1]);
        let s = walsh_direct(&PAryFunction::zero(&f2), &f2);
        assert_eq!(s.value(0), &CycInt::from_int(2, 2));
        assert!(s.value(1).is_zero());
        for (p, m, modulus) in [(3u32, 3u32, vec![1, 2, 0, 1]), (2, 5, vec![1, 0, 1, 0, 0, 1])] {
            let fl = field(p, m, &modulus);
            let s = walsh_fast(&PAryFunction::zero(&fl), &fl);
            assert_eq!(s.value(0), &CycInt::from_int(p, fl.order() as i64));
            assert_eq!(s.support(), &[0]);
        }
    }

    #[test]
    fn linear_function_is_a_delta() {
        let fl = field(5, 2, &[2, 1, 1]);
        for beta in [1usize, 7, 20] {
            let f = PAryFunction::zero(&fl).add_linear(&fl, beta);
            let s = walsh_fast(&f, &fl);
            assert_eq!(s.support(), &[beta]);
            assert_eq!(s.value(beta), &CycInt::from_int(5, 25));
        }
    }

    #[test]
    fn fast_matches_direct() {
        let cases: [(u32, u32, &[u32]); 3] =
            [(2, 6, &[1, 1, 0, 0, 0, 0, 1]), (3, 3, &[1, 2, 0, 1]), (5, 2, &[2, 1, 1])];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m, modulus) in cases {
            let fl = field(p, m, modulus);
            for _ in 0..200 {
                let f = random_function(&fl, &mut rng);
                assert_eq!(walsh_fast(&f, &fl), walsh_direct(&f, &fl));
            }
        }
    }

    #[test]
    fn parseval_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, m, modulus) in [(3u32, 2u32, vec![2, 1, 1]), (2, 4, vec![1, 1, 0, 0, 1]), (7, 1, vec![4, 1])] {
            let fl = field(p, m, &modulus);
            for _ in 0..20 {
                let f = random_function(&fl, &mut rng);
                let s = walsh_fast(&f, &fl);
                assert_eq!(moment(&s, 1).unwrap(), big_pow(p, 2 * m));
                assert_eq!(moment(&s, 0).unwrap(), big_pow(p, m));
                assert_eq!(inverse_transform(&s, &fl).unwrap(), f);
            }
        }
    }

    #[test]
    fn restricted_transform_on_full_domain() {
        let fl = field(3, 2, &[2, 1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_function(&fl, &mut rng);
        let all: Vec<usize> = (0..fl.order()).collect();
        assert_eq!(walsh_restricted(&f, &fl, &all), walsh_fast(&f, &fl));
    }

    #[test]
    fn raw_abs_square_matches_cyclotomic() {
        // the Gauss sum for p = 5
        let v = [0i64, 1, -1, -1, 1];
        let w = CycInt::from_group_ring(5, &v);
        assert_eq!(raw_abs_square(&v), Some(5));
        assert_eq!(
            BigInt::from(raw_abs_square(&v).unwrap()),
            w.abs_square().rational_value().unwrap()
        );
        assert_eq!(raw_abs_square(&[3, 5]), Some(4));
        assert_eq!(raw_abs_square(&[3, -1, 4, 0, 2]), None);
    }

    #[test]
    fn balance_on_subset() {
        let fl = field(3, 2, &[2, 1, 1]);
        let f = PAryFunction::zero(&fl);
        let r = is_balanced(&f, Domain::Subset(&[1, 2, 3]));
        assert_eq!(r.counts, vec![3, 0, 0]);
        assert!(!r.balanced);
    }

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log(&BigInt::from(81), 3), Some(4));
        assert_eq!(exact_log(&BigInt::from(1), 3), Some(0));
        assert_eq!(exact_log(&BigInt::from(18), 3), None);
        assert_eq!(exact_log(&BigInt::from(0), 3), None);
    }
}
