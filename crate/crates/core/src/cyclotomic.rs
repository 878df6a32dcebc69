//! Exact arithmetic in the ring of integers `Z[ξ_p]` of the `p`-th cyclotomic field.
//!
//! A [`CycInt`] stores integer coordinates over the basis `ξ^0, …, ξ^{p-2}`.
//! Any sum `Σ_{i<p} v_i ξ^i` is brought to that basis using
//! `ξ^{p-1} = -(1 + ξ + … + ξ^{p-2})`, so two values are equal exactly when
//! their coordinate vectors are equal. For `p = 2` the ring is `Z` and
//! `ξ = -1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::finite_field::{is_prime, legendre};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("σ_{t} is not an automorphism of Q(ξ_{p})")]
    InvalidAutomorphism { t: i64, p: u32 },
    #[error("value is not a rational integer")]
    NotRational,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

fn basis_len(p: u32) -> usize {
    (p as usize - 1).max(1)
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        assert!(is_prime(p), "cyclotomic order must be prime");
        CycInt { p, coeffs: vec![BigInt::zero(); basis_len(p)] }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `ξ^k` for any integer exponent.
    pub fn xi_pow(p: u32, k: i64) -> Self {
        let mut v = vec![0i64; p as usize];
        v[k.rem_euclid(p as i64) as usize] = 1;
        Self::from_group_ring(p, &v)
    }

    /// Reduces `Σ_{i<p} v[i] ξ^i` to canonical coordinates.
    pub fn from_group_ring(p: u32, v: &[i64]) -> Self {
        assert_eq!(v.len(), p as usize);
        let top = v[p as usize - 1];
        if p == 2 {
            return CycInt { p, coeffs: vec![BigInt::from(v[0] - top)] };
        }
        CycInt {
            p,
            coeffs: v[..p as usize - 1].iter().map(|&c| BigInt::from(c - top)).collect(),
        }
    }

    fn from_group_ring_big(p: u32, mut v: Vec<BigInt>) -> Self {
        let top = v.pop().unwrap();
        if !top.is_zero() {
            for c in v.iter_mut() {
                *c -= &top;
            }
        }
        CycInt { p, coeffs: v }
    }

    /// Coordinates extended by a zero `ξ^{p-1}` entry.
    fn group_ring(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.push(BigInt::zero());
        v
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coordinates over `ξ^0, …, ξ^{p-2}` (a single integer when `p = 2`).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &Self) -> Result<(), CycError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycError::OrderMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        let p = self.p as usize;
        let a = self.group_ring();
        let b = other.group_ring();
        let mut out = vec![BigInt::zero(); p];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % p] += x * y;
            }
        }
        Ok(Self::from_group_ring_big(self.p, out))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplication by `ξ^k`, a rotation of the group-ring coordinates.
    pub fn mul_xi_pow(&self, k: i64) -> Self {
        let p = self.p as usize;
        let k = k.rem_euclid(p as i64) as usize;
        let v = self.group_ring();
        let mut out = vec![BigInt::zero(); p];
        for (i, c) in v.into_iter().enumerate() {
            out[(i + k) % p] = c;
        }
        Self::from_group_ring_big(self.p, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The Galois automorphism `σ_t : ξ ↦ ξ^t`.
    pub fn conjugate(&self, t: i64) -> Result<Self, CycError> {
        let p = self.p as usize;
        let t = t.rem_euclid(p as i64);
        if t == 0 {
            return Err(CycError::InvalidAutomorphism { t, p: self.p });
        }
        let v = self.group_ring();
        let mut out = vec![BigInt::zero(); p];
        for (i, c) in v.into_iter().enumerate() {
            out[i * t as usize % p] += c;
        }
        Ok(Self::from_group_ring_big(self.p, out))
    }

    /// `|a|^2 = a · σ_{-1}(a)`.
    pub fn abs_square(&self) -> Self {
        let conj = self.conjugate(self.p as i64 - 1).expect("p - 1 is a unit mod p");
        self * &conj
    }

    /// The integer value when every non-constant coordinate vanishes.
    pub fn rational_value(&self) -> Result<BigInt, CycError> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CycError::NotRational)
        }
    }

    /// Image under the embedding `ξ ↦ e^{2πi/p}`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / p;
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }
}

/// The quadratic Gauss sum `G = Σ_{j=1}^{p-1} (j/p) ξ^j`, with `G^2 = (−1/p)·p`.
pub fn gauss_sum(p: u32) -> Result<CycInt, CycError> {
    if p == 2 || !is_prime(p) {
        return Err(CycError::NotOddPrime(p));
    }
    let mut v = vec![0i64; p as usize];
    for (j, slot) in v.iter_mut().enumerate().skip(1) {
        *slot = legendre(j as i64, p) as i64;
    }
    Ok(CycInt::from_group_ring(p, &v))
}

/// `p* = (−1/p)·p`.
pub fn p_star(p: u32) -> i64 {
    legendre(-1, p) as i64 * p as i64
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &'a CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &'a CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &'a CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let num = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let term = match k {
                0 => String::new(),
                1 => "ξ".to_string(),
                _ => format!("ξ^{k}"),
            };
            write!(f, "{sign}{num}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integers that fit in an `i64` are written as JSON numbers, larger ones as strings.
pub(crate) fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

struct BigIntList<'a>(&'a [BigInt]);

impl Serialize for BigIntList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(BigIntJson))
    }
}

pub(crate) struct BigIntJson<'a>(pub &'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycInt", 2)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("coeffs", &BigIntList(&self.coeffs))?;
        st.end()
    }
}
