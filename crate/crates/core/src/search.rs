//! Enumerative search for plateaued functions `Tr(Σ cᵢ x^{eᵢ})` over a fixed
//! exponent template.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{classify, detect_plateau, PlateauedReport};
use crate::finite_field::ExtField;
use crate::walsh::{
    evaluate, exact_log, group_ring_transform, raw_abs_square, Coeff, FunctionSpec, Term, WalshSpectrum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("sweep needs {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("exponent template is empty")]
    EmptyTemplate,
    #[error("exponent 0 would give Ψ(0) ≠ 0")]
    ZeroExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every coefficient tuple, lexicographic in canonical element order.
    Exhaustive,
    /// `count` tuples, each coefficient uniform over the `p^m` field elements.
    Random { count: u64, seed: u64 },
}

/// A function passing the filter, with its classification.
#[derive(Debug, Clone, Serialize)]
pub struct Hit {
    pub spec: FunctionSpec,
    pub report: PlateauedReport,
}

/// Candidates evaluated per parallel batch.
const BATCH: usize = 512;

enum Source {
    Exhaustive { next: Option<Vec<usize>> },
    Random { left: u64, rng: Box<ChaCha8Rng> },
}

/// Streaming sweep; results come out in candidate order regardless of the
/// thread count.
pub struct Sweep<F> {
    field: ExtField,
    template: Vec<u64>,
    source: Source,
    filter: F,
    buffer: VecDeque<Hit>,
    examined: u64,
}

impl<F> Sweep<F> {
    /// Candidates evaluated so far.
    pub fn examined(&self) -> u64 {
        self.examined
    }
}

/// Cost estimate: one evaluation plus transform per candidate.
pub fn sweep_cost(field: &ExtField, terms: usize, mode: SweepMode) -> u64 {
    let q = field.order() as u64;
    let candidates = match mode {
        SweepMode::Exhaustive => q.checked_pow(terms as u32).unwrap_or(u64::MAX),
        SweepMode::Random { count, .. } => count,
    };
    candidates.saturating_mul(q * (field.m() as u64 + terms as u64))
}

pub fn sweep<F>(
    field: &ExtField,
    template: &[u64],
    mode: SweepMode,
    budget: u64,
    filter: F,
) -> Result<Sweep<F>, SearchError>
where
    F: Fn(&PlateauedReport) -> bool + Sync,
{
    if template.is_empty() {
        return Err(SearchError::EmptyTemplate);
    }
    if template.contains(&0) {
        return Err(SearchError::ZeroExponent);
    }
    let needed = sweep_cost(field, template.len(), mode);
    if needed > budget {
        return Err(SearchError::BudgetExceeded { needed, budget });
    }
    let source = match mode {
        SweepMode::Exhaustive => Source::Exhaustive { next: Some(vec![0; template.len()]) },
        SweepMode::Random { count, seed } => Source::Random { left: count, rng: Box::new(ChaCha8Rng::seed_from_u64(seed)) },
    };
    Ok(Sweep {
        field: field.clone(),
        template: template.to_vec(),
        source,
        filter,
        buffer: VecDeque::new(),
        examined: 0,
    })
}

impl<F> Sweep<F>
where
    F: Fn(&PlateauedReport) -> bool + Sync,
{
    fn next_batch(&mut self) -> Vec<Vec<usize>> {
        let q = self.field.order();
        let mut out = Vec::with_capacity(BATCH);
        match &mut self.source {
            Source::Exhaustive { next } => {
                while out.len() < BATCH {
                    let Some(cur) = next.take() else { break };
                    let mut succ = cur.clone();
                    let mut carried = true;
                    for d in succ.iter_mut().rev() {
                        *d += 1;
                        if *d < q {
                            carried = false;
                            break;
                        }
                        *d = 0;
                    }
                    if !carried {
                        *next = Some(succ);
                    }
                    out.push(cur);
                }
            }
            Source::Random { left, rng } => {
                while out.len() < BATCH && *left > 0 {
                    *left -= 1;
                    out.push((0..self.template.len()).map(|_| rng.random_range(0..q)).collect());
                }
            }
        }
        out
    }

    fn spec_for(&self, coeffs: &[usize]) -> FunctionSpec {
        let terms = coeffs
            .iter()
            .zip(&self.template)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, &e)| Term { coeff: Coeff::from_index(c), exponent: e })
            .collect();
        FunctionSpec::new(self.field.spec().clone(), terms)
    }

    fn examine(&self, coeffs: &[usize]) -> Option<Hit> {
        let spec = self.spec_for(coeffs);
        let f = evaluate(&spec, &self.field).ok()?;
        let raw = group_ring_transform(&f, &self.field, None);
        if !prescreen(&raw, &self.field) {
            return None;
        }
        let s = WalshSpectrum::from_group_ring(self.field.p(), self.field.m(), &raw);
        let r = detect_plateau(&s).ok()?;
        let report = classify(&s, r).ok()?;
        (self.filter)(&report).then_some(Hit { spec, report })
    }
}

/// Cheap plateau test on raw group-ring vectors: every nonzero `|W(b)|^2` is
/// rational, equal, and a power of `p` in `[p^m, p^{2m}]`.
fn prescreen(raw: &[i64], field: &ExtField) -> bool {
    let p = field.p() as usize;
    let mut level = None;
    for v in raw.chunks(p) {
        let Some(a) = raw_abs_square(v) else { return false };
        if a == 0 {
            continue;
        }
        match level {
            None => level = Some(a),
            Some(l) if l != a => return false,
            _ => {}
        }
    }
    level.is_some_and(|l| {
        exact_log(&num_bigint::BigInt::from(l), field.p()).is_some_and(|k| k >= field.m() && k <= 2 * field.m())
    })
}

impl<F> Iterator for Sweep<F>
where
    F: Fn(&PlateauedReport) -> bool + Sync,
{
    type Item = Hit;

    fn next(&mut self) -> Option<Hit> {
        loop {
            if let Some(hit) = self.buffer.pop_front() {
                return Some(hit);
            }
            let batch = self.next_batch();
            if batch.is_empty() {
                return None;
            }
            self.examined += batch.len() as u64;
            let this = &*self;
            let hits: Vec<Hit> = batch.par_iter().filter_map(|c| this.examine(c)).collect();
            self.buffer.extend(hits);
        }
    }
}
