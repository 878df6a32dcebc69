//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion (run with
//! `--nocapture` to see them).

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use plateau::classifier::{
    analyze, binary_walsh_counts, binary_walsh_distribution, ng_predicted, verify_dual_inverse, PlateauedReport,
    Regularity,
};
use plateau::code::{build_code, weight_distribution, weight_via_walsh, CodeReport, LinearCode, DEFAULT_BUDGET};
use plateau::cyclotomic::{gauss_sum, p_star, CycInt};
use plateau::minimality::{all_minimal_exhaustive, ashikhmin_barg, range_guarantee, ParityCase};
use plateau::theory::{compare, predict_for};
use plateau::walsh::{moment, walsh_direct, walsh_fast, FunctionSpec, PAryFunction, WalshSpectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(n: &str, ok: bool, detail: &str) {
    println!("[{}] criterion {n}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

struct Case {
    spec: FunctionSpec,
    f: PAryFunction,
    code: LinearCode,
    spectrum: WalshSpectrum,
    report: PlateauedReport,
}

impl Case {
    fn new(spec: FunctionSpec) -> Self {
        let (f, code) = build_code(&spec).unwrap();
        let (spectrum, report) = analyze(&f, code.field()).unwrap();
        Case { spec, f, code, spectrum, report }
    }
}

const TARGETS: [(u32, u32, u32); 8] =
    [(2, 4, 0), (2, 4, 2), (2, 6, 2), (3, 3, 1), (3, 4, 0), (3, 4, 2), (5, 2, 0), (5, 3, 1)];

const PER_TARGET: usize = 3;

/// Searched functions for every target, found once and shared by all criteria.
fn searched() -> &'static Vec<Case> {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        TARGETS
            .iter()
            .flat_map(|&(p, m, r)| find_plateaued(p, m, r, PER_TARGET, 1000 * p as u64 + 10 * m as u64 + r as u64))
            .map(|h| Case::new(h.spec))
            .collect()
    })
}

/// Worked examples plus searched functions.
fn all_cases() -> Vec<&'static Case> {
    static EXAMPLES: OnceLock<Vec<Case>> = OnceLock::new();
    let ex = EXAMPLES.get_or_init(|| {
        [example1(), example2a(), example2b(), example3(), example4()].into_iter().map(Case::new).collect()
    });
    ex.iter().chain(searched().iter()).collect()
}

#[test]
fn criterion_1_binary_example() {
    let start = Instant::now();
    let (f, code) = build_code(&example3()).unwrap();
    let wd = weight_distribution(&code, DEFAULT_BUDGET).unwrap();
    let (_, rep) = analyze(&f, code.field()).unwrap();
    let elapsed = start.elapsed();
    let cr = CodeReport::new(&code, wd.clone());
    let expected: Vec<(u64, u64)> = vec![(0, 1), (8, 3), (16, 59), (24, 1)];
    let ok = cr.parameters() == "[31,6]"
        && wd.iter().collect::<Vec<_>>() == expected
        && rep.r == 3
        && elapsed < Duration::from_secs(1);
    line("1", ok, &format!("{} {} r={} in {elapsed:?}", cr.parameters(), cr.enumerator, rep.r));
}

#[test]
fn criterion_2_ternary_example() {
    let start = Instant::now();
    let (f, code) = build_code(&example4()).unwrap();
    let wd = weight_distribution(&code, DEFAULT_BUDGET).unwrap();
    let (_, rep) = analyze(&f, code.field()).unwrap();
    let elapsed = start.elapsed();
    let cr = CodeReport::new(&code, wd.clone());
    let expected: Vec<(u64, u64)> = vec![(0, 1), (15, 16), (18, 62), (24, 2)];
    let ok = cr.parameters() == "[26,4]_3"
        && wd.iter().collect::<Vec<_>>() == expected
        && rep.regularity == Regularity::WeaklyRegular
        && rep.r == 1
        && rep.epsilon == Some(-1)
        && !rep.g_balanced
        && elapsed < Duration::from_secs(1);
    line(
        "2",
        ok,
        &format!(
            "{} {} {} r={} eps={:?} g_balanced={} in {elapsed:?}",
            cr.parameters(),
            cr.enumerator,
            rep.regularity.as_str(),
            rep.r,
            rep.epsilon,
            rep.g_balanced
        ),
    );
}

fn classify_spec(spec: &FunctionSpec) -> PlateauedReport {
    Case::new(spec.clone()).report
}

#[test]
fn criterion_3_listed_classifications() {
    let a = classify_spec(&example1());
    let b = classify_spec(&example2a());
    let c = classify_spec(&example2b());
    let ok_ab = a.regularity == Regularity::Regular
        && a.r == 1
        && b.regularity == Regularity::WeaklyRegular
        && b.r == 1
        && b.epsilon == Some(-1);
    line("3a", ok_ab, &format!("first: {} r={}; second: {} r={} eps={:?}", a.regularity.as_str(), a.r, b.regularity.as_str(), b.r, b.epsilon));
    line("3b", c.r == 2, &format!("third: r={}", c.r));
    println!(
        "[DEVIATION] criterion 3c: third function expected non-weakly regular, measured {} with constant u = {} \
         on all {} support points (run with --include-ignored to see the failing check)",
        c.regularity.as_str(),
        c.unit_u.map_or("?", |u| u.as_str()),
        c.support_size()
    );
}

/// The stated label for the third function. The measured Walsh values all
/// carry the same unit `u = −i`, so this check fails.
#[test]
#[ignore = "stated label contradicts the definition of weak regularity; see README"]
fn criterion_3c_third_function_stated_label() {
    let c = classify_spec(&example2b());
    line("3c", c.regularity == Regularity::NonWeaklyRegular && c.r == 2, &format!("third: {} r={}", c.regularity.as_str(), c.r));
}

#[test]
fn criterion_4_tables_match_enumeration() {
    let cases = searched();
    let mut mismatches = Vec::new();
    for &(p, m, r) in &TARGETS {
        let found: Vec<&Case> =
            cases.iter().filter(|c| c.report.p == p && c.report.m == m && c.report.r == r).collect();
        println!("  ({p},{m},{r}): {} functions", found.len());
        for c in found {
            let wd = weight_distribution(&c.code, DEFAULT_BUDGET).unwrap();
            let pred = predict_for(&c.report).unwrap();
            let diff = compare(&pred.to_distribution().unwrap(), &wd);
            if !diff.matches {
                mismatches.push(format!("{} ({p},{m},{r}) {:?}", c.spec.polynomial_string(), diff.differences));
            }
        }
    }
    let covered = TARGETS
        .iter()
        .filter(|&&(p, m, r)| cases.iter().any(|c| (c.report.p, c.report.m, c.report.r) == (p, m, r)))
        .count();
    line(
        "4",
        cases.len() >= 20 && covered == TARGETS.len() && mismatches.is_empty(),
        &format!("{} functions over {covered}/{} parameter sets, mismatches: {mismatches:?}", cases.len(), TARGETS.len()),
    );
}

#[test]
fn criterion_5_walsh_weights_equal_direct_counts() {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for c in searched() {
        for (a, b) in c.code.parameters() {
            checked += 1;
            if weight_via_walsh(&c.spectrum, c.code.field(), a, b).unwrap() != c.code.weight(a, b) {
                bad.push((c.spec.polynomial_string(), a, b));
            }
        }
    }
    line("5", bad.is_empty() && checked > 0, &format!("{checked} codewords over {} codes, {} disagreements", searched().len(), bad.len()));
}

fn random_function(p: u32, m: u32, rng: &mut ChaCha8Rng) -> (plateau::finite_field::ExtField, PAryFunction) {
    let field = field(p, m);
    let values = (0..field.order()).map(|_| rng.random_range(0..p) as u8).collect();
    let f = PAryFunction::from_values(&field, values).unwrap();
    (field, f)
}

#[test]
fn criterion_6_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    let mut parseval = 0;
    for (p, m) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (3, 5)] {
        for _ in 0..100 {
            let (field, f) = random_function(p, m, &mut rng);
            let s = walsh_fast(&f, &field);
            assert_eq!(moment(&s, 1).unwrap(), num_bigint::BigInt::from(p).pow(2 * m));
            parseval += 1;
        }
    }
    line("6 (Parseval)", true, &format!("S1 = p^(2m) on {parseval} random functions"));

    let cases = all_cases();
    let mut weak = 0;
    let mut binary = 0;
    for c in &cases {
        let rep = &c.report;
        let (p, m, r) = (rep.p, rep.m, rep.r);
        assert_eq!(rep.support_size() as u64, (p as u64).pow(m - r), "support size");
        let field = c.code.field();
        let mut off = 0u64;
        for alpha in 1..p {
            let inv = plateau::finite_field::inv_mod_p(alpha, p);
            let a_inv = field.from_prime(inv as i64);
            for beta in field.elements() {
                let b = field.mul(a_inv, beta).unwrap().index();
                if !c.spectrum.in_support(b) {
                    off += 1;
                }
            }
        }
        let (w, ws) = plateau::theory::set_cardinalities(p, m, r);
        assert_eq!((off, (p as u64 - 1) * (p as u64).pow(m) - off), (w, ws), "set cardinalities");
        if p == 2 {
            binary += 1;
            assert_eq!(binary_walsh_counts(&c.spectrum), binary_walsh_distribution(m, r), "binary Walsh counts");
            verify_dual_inverse(rep, &c.f, field).unwrap();
        } else if rep.regularity.is_weakly_regular() {
            weak += 1;
            verify_dual_inverse(rep, &c.f, field).unwrap();
            let eg = rep.epsilon_g.expect("dual sign measured");
            let predicted = ng_predicted(p, m, r, eg, rep.g_balanced);
            let measured: Vec<i64> = rep.ng_counts.iter().map(|&v| v as i64).collect();
            assert_eq!(predicted, measured, "N_g counts");
        }
    }
    line(
        "6 (plateau structure)",
        true,
        &format!("support sizes and pair counts on {} functions, binary value counts on {binary}, dual inverse and N_g on {weak} weakly regular", cases.len()),
    );

    for (p, m) in [(2, 3), (2, 6), (3, 3), (3, 4), (5, 2), (7, 2)] {
        for _ in 0..(200 / 6 + 1) {
            let (field, f) = random_function(p, m, &mut rng);
            assert_eq!(walsh_fast(&f, &field).values(), walsh_direct(&f, &field).values());
        }
    }
    line("6 (fast transform)", true, "fast and direct transforms agree on 204 random functions");

    for p in [3u32, 5, 7, 11, 13, 17, 19] {
        let g = gauss_sum(p).unwrap();
        assert_eq!(&g * &g, CycInt::from_int(p, p_star(p)));
    }
    line("6 (Gauss sums)", true, "G^2 = p* for odd p <= 19");
}

#[test]
fn criterion_7_minimality() {
    let mut sound = 0;
    let mut guaranteed = Vec::new();
    for c in all_cases() {
        let wd = weight_distribution(&c.code, DEFAULT_BUDGET).unwrap();
        let ab = ashikhmin_barg(&wd, c.report.p);
        let exhaustive = all_minimal_exhaustive(&c.code, DEFAULT_BUDGET).unwrap();
        assert!(!ab || exhaustive.all_minimal, "sufficient condition contradicted by {}", c.spec.polynomial_string());
        sound += 1;
        let weak = c.report.p == 2 || c.report.regularity.is_weakly_regular();
        let in_range = ParityCase::of(c.report.p, c.report.m, c.report.r)
            .is_some_and(|pc| range_guarantee(c.report.m, c.report.r, pc));
        if weak && in_range {
            assert!(ab && exhaustive.all_minimal, "range guarantee failed for {}", c.spec.polynomial_string());
            guaranteed.push((c.report.p, c.report.m, c.report.r));
        }
    }
    guaranteed.dedup();
    let has_340 = guaranteed.contains(&(3, 4, 0));
    line(
        "7",
        has_340,
        &format!("soundness on {sound} codes; parameter-range codes passing both checks: {guaranteed:?}"),
    );
}
