//! Arithmetic in `F_p` and `F_{p^m}` over a caller-supplied primitive modulus.
//!
//! Nonzero elements are stored as discrete logarithms with respect to the
//! generator `ζ = x mod modulus`, so multiplication and inversion are exponent
//! arithmetic. Addition goes through a Zech-logarithm table. Coefficient
//! vectors over `F_p` are available on demand through the antilog table.
//!
//! Every table in this crate indexes field elements in the same order:
//! position `0` is zero and position `k + 1` is `ζ^k`.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order accepted by [`ExtField::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 21;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("modulus is reducible over F_{p}")]
    Reducible { p: u32 },
    #[error("x has multiplicative order {order}, expected {expected}")]
    NotPrimitive { order: u64, expected: u64 },
    #[error("field of order {0} exceeds the supported size")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element belongs to a different field")]
    FieldMismatch,
    #[error("coefficient vector does not describe an element of this field")]
    BadCoefficients,
}

/// Parameters that identify a field: `p`, `m` and the modulus coefficients
/// listed from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// An element of an [`ExtField`].
///
/// The element remembers a fingerprint of the field that produced it so that
/// mixing elements of different fields is caught instead of silently
/// producing garbage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: u64,
    index: u32,
}

impl FieldElement {
    /// Position in the canonical element order (`0` for zero, `k + 1` for `ζ^k`).
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }

    /// The exponent `k` with `self = ζ^k`, or `None` for zero.
    pub fn log(self) -> Option<u32> {
        self.index.checked_sub(1)
    }
}

/// The finite field `F_{p^m}` with `ζ = x mod modulus` as primitive element.
#[derive(Clone)]
pub struct ExtField {
    spec: FieldSpec,
    order: usize,
    id: u64,
    /// coefficient encoding -> discrete log (`NONE` for zero)
    log: Vec<u32>,
    /// discrete log -> coefficient encoding `Σ c_i p^i`
    antilog: Vec<u32>,
    /// `zech[k] = log(1 + ζ^k)` or `NONE` when `1 + ζ^k = 0`
    zech: Vec<u32>,
    /// `trace_exp[k] = Tr(ζ^k)`
    trace_exp: Vec<u32>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("p", &self.spec.p)
            .field("m", &self.spec.m)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for ExtField {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp mod modulus` on machine integers.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u32) -> i8 {
    debug_assert!(p > 2 && is_prime(p));
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p as u64 - 1) / 2, p as u64) == 1 {
        1
    } else {
        -1
    }
}

/// Multiplicative inverse in `F_p`; `a` must be nonzero mod `p`.
pub fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Remainder of `num` modulo the monic polynomial `den` over `F_p`.
/// Both are coefficient lists from the constant term up.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    if modulus[0] == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        let mut cand = vec![0u32; d + 1];
        cand[d] = 1;
        for n in 0..count {
            let mut v = n;
            for c in cand.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            if poly_rem(modulus, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtField {
    /// Builds `F_{p^m}` from a monic modulus of degree `m`, verifying that the
    /// modulus is irreducible and that `x` generates the multiplicative group.
    pub fn new(p: u32, m: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        let order = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge((p as u64).saturating_pow(m)))?;
        if modulus.len() != m as usize + 1 {
            return Err(FieldError::BadModulus(format!(
                "expected {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if modulus[m as usize] != 1 {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::BadModulus(format!("coefficient {c} is not reduced mod {p}")));
        }
        if !is_irreducible(modulus, p) {
            return Err(FieldError::Reducible { p });
        }

        let order = order as usize;
        let m_us = m as usize;
        let mut log = vec![NONE; order];
        let mut antilog = Vec::with_capacity(order - 1);
        let mut coeffs = vec![0u32; m_us];
        coeffs[0] = 1;
        let encode = |c: &[u32]| c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
        loop {
            let e = encode(&coeffs);
            if !antilog.is_empty() && e == 1 {
                break;
            }
            if log[e] != NONE {
                // cycled without hitting 1; cannot happen for an irreducible modulus
                break;
            }
            log[e] = antilog.len() as u32;
            antilog.push(e as u32);
            // multiply by x and reduce with x^m = -(f_0 + ... + f_{m-1} x^{m-1})
            let top = coeffs[m_us - 1];
            for i in (1..m_us).rev() {
                coeffs[i] = coeffs[i - 1];
            }
            coeffs[0] = 0;
            for (i, c) in coeffs.iter_mut().enumerate() {
                let t = (top as u64 * modulus[i] as u64 % p as u64) as u32;
                *c = (*c + p - t) % p;
            }
        }
        if antilog.len() != order - 1 {
            return Err(FieldError::NotPrimitive {
                order: antilog.len() as u64,
                expected: order as u64 - 1,
            });
        }

        let mut hasher = DefaultHasher::new();
        (p, m, modulus).hash(&mut hasher);
        let id = hasher.finish();

        // 1 + ζ^k only changes the constant digit
        let zech = antilog
            .iter()
            .map(|&e| {
                let e = e as usize;
                let c0 = e % p as usize;
                let bumped = e - c0 + (c0 + 1) % p as usize;
                log[bumped]
            })
            .collect();

        let mut field = ExtField {
            spec: FieldSpec { p, m, modulus: modulus.to_vec() },
            order,
            id,
            log,
            antilog,
            zech,
            trace_exp: Vec::new(),
        };
        field.trace_exp = (0..order as u32 - 1)
            .map(|k| field.trace_index(k + 1))
            .collect();
        Ok(field)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self, FieldError> {
        Self::new(spec.p, spec.m, &spec.modulus)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Order of the multiplicative group, `p^m - 1`.
    pub fn group_order(&self) -> usize {
        self.order - 1
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The primitive element `ζ` itself.
    pub fn generator(&self) -> FieldElement {
        self.zeta_pow(1)
    }

    /// `ζ^k` for any integer `k` (reduced mod `p^m - 1`).
    pub fn zeta_pow(&self, k: i64) -> FieldElement {
        let k = k.rem_euclid(self.group_order() as i64) as u32;
        self.element(k as usize + 1)
    }

    /// The element at position `index` of the canonical order.
    pub fn element(&self, index: usize) -> FieldElement {
        assert!(index < self.order, "element index {index} out of range");
        FieldElement { field: self.id, index: index as u32 }
    }

    /// Iterates all elements in canonical order: `0, ζ^0, ζ^1, …, ζ^{p^m-2}`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    /// Embeds a residue of the prime subfield.
    pub fn from_prime(&self, a: i64) -> FieldElement {
        let a = a.rem_euclid(self.spec.p as i64) as usize;
        self.element(self.index_of_encoding(a))
    }

    fn check(&self, a: FieldElement) -> Result<(), FieldError> {
        if a.field == self.id && (a.index as usize) < self.order {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn index_of_encoding(&self, enc: usize) -> usize {
        match self.log[enc] {
            NONE => 0,
            k => k as usize + 1,
        }
    }

    fn encoding_of_index(&self, index: u32) -> usize {
        match index {
            0 => 0,
            i => self.antilog[i as usize - 1] as usize,
        }
    }

    /// Coordinates over `F_p` in the basis `1, x, …, x^{m-1}`.
    pub fn coefficients(&self, a: FieldElement) -> Result<Vec<u32>, FieldError> {
        self.check(a)?;
        let p = self.spec.p as usize;
        let mut e = self.encoding_of_index(a.index);
        Ok((0..self.spec.m)
            .map(|_| {
                let d = e % p;
                e /= p;
                d as u32
            })
            .collect())
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.spec.m as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(FieldError::BadCoefficients);
        }
        let p = self.spec.p as usize;
        let enc = coeffs.iter().rev().fold(0usize, |acc, &d| acc * p + d as usize);
        Ok(self.element(self.index_of_encoding(enc)))
    }

    /// Coordinate encoding `Σ c_i p^i` of the element at `index`.
    pub(crate) fn encoding(&self, index: usize) -> usize {
        self.encoding_of_index(index as u32)
    }

    pub(crate) fn add_index(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.group_order() as u32;
        let (i, j) = (a - 1, b - 1);
        let diff = if j >= i { j - i } else { j + n - i };
        match self.zech[diff as usize] {
            NONE => 0,
            z => (i + z) % n + 1,
        }
    }

    pub(crate) fn mul_index(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.group_order() as u64;
        ((a as u64 - 1 + b as u64 - 1) % n) as u32 + 1
    }

    pub(crate) fn neg_index(&self, a: u32) -> u32 {
        if a == 0 || self.spec.p == 2 {
            return a;
        }
        let n = self.group_order() as u32;
        (a - 1 + n / 2) % n + 1
    }

    pub(crate) fn pow_index(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.group_order() as u128;
        ((a as u128 - 1) * e as u128 % n) as u32 + 1
    }

    fn trace_index(&self, a: u32) -> u32 {
        let mut acc = 0u32;
        let mut cur = a;
        for _ in 0..self.spec.m {
            acc = self.add_index(acc, cur);
            cur = self.pow_index(cur, self.spec.p as u64);
        }
        let enc = self.encoding_of_index(acc);
        debug_assert!(enc < self.spec.p as usize, "trace left the prime subfield");
        enc as u32
    }

    /// `Tr(ζ^k)` for `k` reduced mod `p^m - 1`; the hot-loop form of [`Self::trace`].
    #[inline]
    pub fn trace_of_log(&self, k: usize) -> u32 {
        self.trace_exp[k % self.group_order()]
    }

    /// `Tr(a)` for `a` given by its canonical position.
    #[inline]
    pub fn trace_at(&self, index: usize) -> u32 {
        match index {
            0 => 0,
            i => self.trace_exp[i - 1],
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(self.add_index(a.index, b.index) as usize))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.element(self.neg_index(a.index) as usize))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(self.mul_index(a.index, b.index) as usize))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        match a.log() {
            None => Err(FieldError::DivisionByZero),
            Some(k) => Ok(self.zeta_pow(-(k as i64))),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let ib = self.inv(b)?;
        self.mul(a, ib)
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.element(self.pow_index(a.index, e) as usize))
    }

    /// Absolute trace `Σ_{i<m} a^{p^i}`, returned as a residue in `[0, p)`.
    pub fn trace(&self, a: FieldElement) -> Result<u32, FieldError> {
        self.check(a)?;
        Ok(self.trace_at(a.index()))
    }

    /// Human-readable label in the `ζ`-power notation used by function specs.
    pub fn label(&self, a: FieldElement) -> String {
        element_label(a.index())
    }
}

/// `"0"`, `"1"`, `"z"` or `"z^k"` for the element at a canonical position.
pub fn element_label(index: usize) -> String {
    match index {
        0 => "0".into(),
        1 => "1".into(),
        2 => "z".into(),
        i => format!("z^{}", i - 1),
    }
}
