#![allow(dead_code)]

use plateau::finite_field::{ExtField, FieldSpec};
use plateau::search::{sweep, Hit, SweepMode};
use plateau::walsh::{Coeff, FunctionSpec, Term};

/// Primitive moduli, low-degree coefficient first.
pub fn modulus(p: u32, m: u32) -> Vec<u32> {
    match (p, m) {
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (2, 5) => vec![1, 0, 1, 0, 0, 1],
        (2, 6) => vec![1, 1, 0, 0, 0, 0, 1],
        (3, 2) => vec![2, 1, 1],
        (3, 3) => vec![1, 2, 0, 1],
        (3, 4) => vec![2, 0, 0, 2, 1],
        (3, 5) => vec![1, 2, 0, 0, 0, 1],
        (5, 2) => vec![2, 4, 1],
        (5, 3) => vec![3, 3, 0, 1],
        (3, 6) => vec![2, 2, 1, 0, 2, 0, 1],
        (7, 2) => vec![3, 6, 1],
        _ => panic!("no modulus for ({p}, {m})"),
    }
}

pub fn field(p: u32, m: u32) -> ExtField {
    ExtField::new(p, m, &modulus(p, m)).unwrap()
}

pub fn spec(p: u32, m: u32, modulus: &[u32], terms: &[(u32, u64)]) -> FunctionSpec {
    FunctionSpec::new(
        FieldSpec { p, m, modulus: modulus.to_vec() },
        terms.iter().map(|&(k, e)| Term { coeff: Coeff::ZetaPow(k), exponent: e }).collect(),
    )
}

pub const F27: [u32; 4] = [1, 2, 0, 1];
pub const F32: [u32; 6] = [1, 0, 1, 0, 0, 1];

pub fn example1() -> FunctionSpec {
    spec(3, 3, &F27, &[(5, 11), (20, 5), (11, 4), (2, 3), (1, 2)])
}

pub fn example2a() -> FunctionSpec {
    spec(3, 3, &F27, &[(1, 13), (7, 4), (7, 3), (1, 2)])
}

pub fn example2b() -> FunctionSpec {
    spec(3, 3, &F27, &[(16, 13), (2, 4), (2, 3), (1, 2)])
}

pub fn example3() -> FunctionSpec {
    spec(2, 5, &F32, &[(18, 5), (2, 3)])
}

pub fn example4() -> FunctionSpec {
    spec(3, 3, &F27, &[(22, 13), (7, 4), (1, 2)])
}

/// Distinct exponents `p^i + p^j`, `0 ≤ i ≤ j < m`.
pub fn quadratic_exponents(p: u32, m: u32) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i..m {
            let e = (p as u64).pow(i) + (p as u64).pow(j);
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

/// Up to `want` plateaued functions with amplitude `r`, weakly regular for
/// odd `p`, from random quadratic sweeps with growing templates.
pub fn find_plateaued(p: u32, m: u32, r: u32, want: usize, seed: u64) -> Vec<Hit> {
    let f = field(p, m);
    let exps = quadratic_exponents(p, m);
    let mut hits: Vec<Hit> = Vec::new();
    for round in 0..6u64 {
        for k in 1..=exps.len().min(3) {
            let filter = |rep: &plateau::classifier::PlateauedReport| {
                rep.r == r && (p == 2 || rep.regularity.is_weakly_regular())
            };
            let mode = SweepMode::Random { count: 200, seed: seed + 31 * round + k as u64 };
            for h in sweep(&f, &exps[..k], mode, u64::MAX, filter).unwrap() {
                if !hits.iter().any(|x| x.spec == h.spec) {
                    hits.push(h);
                }
                if hits.len() >= want {
                    return hits;
                }
            }
        }
    }
    hits
}
