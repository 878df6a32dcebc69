use std::fs;
use std::io::BufWriter;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use plateau::classifier::{classify, detect_plateau, verify_dual_inverse, ClassifyError, PlateauedReport, Regularity, Unit};
use plateau::code::{
    weight_distribution, weight_via_walsh, write_codewords, CodeError, CodeReport, LinearCode,
};
use plateau::finite_field::{ExtField, FieldSpec};
use plateau::minimality::{
    all_minimal_exhaustive, ashikhmin_barg, range_guarantee, MinimalityError, MinimalityReport, ParityCase,
};
use plateau::search::{sweep, Hit, SweepMode};
use plateau::theory::{
    compare, predict_binary, predict_for, predict_odd_even, predict_odd_odd_split, DistributionDiff,
    PredictedDistribution,
};
use plateau::walsh::{evaluate, summarize, walsh_fast, FunctionSpec, PAryFunction, SpectrumSummary, WalshSpectrum};

use crate::output::Sink;
use crate::{Cli, Command, RegularityFilter, SearchArgs, TablesArgs};

const MISMATCH: u8 = 1;
const NOT_PLATEAUED: u8 = 4;

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Analyze { spec, spectrum } => analyze(cli, spec, spectrum.as_deref()),
        Command::BuildCode { spec, emit_codewords } => build_code(cli, spec, emit_codewords.as_deref()),
        Command::Verify { spec } => verify(cli, spec),
        Command::Search(args) => search(cli, args),
        Command::Tables(args) => tables(cli, args),
    }
}

struct Loaded {
    spec: FunctionSpec,
    field: ExtField,
    f: PAryFunction,
}

fn load(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let spec: FunctionSpec =
        serde_json::from_str(&text).with_context(|| format!("{} is not a function spec", path.display()))?;
    spec.validate()?;
    let field = spec.build_field()?;
    let f = evaluate(&spec, &field)?;
    Ok(Loaded { spec, field, f })
}

fn field_name(field: &FieldSpec) -> String {
    format!("F_{}^{}", field.p, field.m)
}

/// The set of Walsh values in words, e.g. `W(b) ∈ {0, -9ξ^g(b)}`.
fn value_set(rep: &PlateauedReport) -> String {
    let (p, k) = (rep.p, rep.m + rep.r);
    let magnitude = if k % 2 == 0 { (p as u64).pow(k / 2).to_string() } else { format!("{p}^({k}/2)") };
    let zero = if rep.is_bent() { "" } else { "0, " };
    if p == 2 {
        return format!("W(b) ∈ {{{zero}±{magnitude}}}");
    }
    match rep.unit_u {
        Some(u) => {
            let prefix = match u {
                Unit::PlusOne => "",
                Unit::MinusOne => "-",
                Unit::PlusI => "i·",
                Unit::MinusI => "-i·",
            };
            format!("W(b) ∈ {{{zero}{prefix}{magnitude}ξ^g(b)}}")
        }
        None => format!("W(b) ∈ {{{zero}±G^{k}ξ^g(b)}} with both signs, G the quadratic Gauss sum"),
    }
}

fn class_line(rep: &PlateauedReport) -> String {
    let kind = match rep.regularity {
        Regularity::NotApplicable => "binary plateaued",
        other => other.as_str(),
    };
    let bent = if rep.is_bent() { " (bent)" } else { "" };
    format!("{kind}, r = {}{bent}", rep.r)
}

fn sign(e: Option<i8>) -> String {
    match e {
        Some(1) => "+1".into(),
        Some(-1) => "-1".into(),
        _ => "n/a".into(),
    }
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    function: String,
    spec: &'a FunctionSpec,
    plateaued: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a PlateauedReport>,
    walsh: &'a SpectrumSummary,
}

fn analyze(cli: &Cli, path: &Path, spectrum_out: Option<&Path>) -> Result<ExitCode> {
    let Loaded { spec, field, f } = load(path)?;
    let s = walsh_fast(&f, &field);
    if let Some(out) = spectrum_out {
        let file = fs::File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
        serde_json::to_writer(BufWriter::new(file), &s)?;
    }
    let summary = summarize(&s);
    let classified = match detect_plateau(&s) {
        Ok(r) => Ok(classify(&s, r)?),
        Err(ClassifyError::NotPlateaued(reason)) => Err(reason),
        Err(e) => return Err(e.into()),
    };
    let mut sink = Sink::new(&cli.global, false)?;
    let json = AnalyzeJson {
        function: spec.polynomial_string(),
        spec: &spec,
        plateaued: classified.is_ok(),
        reason: classified.as_ref().err().cloned(),
        report: classified.as_ref().ok(),
        walsh: &summary,
    };
    sink.report(&json, || {
        let mut t = format!("function    Tr({}) over {}\n", json.function, field_name(&spec.field));
        match &classified {
            Ok(rep) => {
                t += &format!("class       {}\n", class_line(rep));
                t += &format!("values      {}\n", value_set(rep));
                t += &format!("support     {} of {}\n", rep.support_size(), field.order());
                if rep.p != 2 {
                    t += &format!("epsilon     {}\n", sign(rep.epsilon));
                }
                t += &format!(
                    "dual g      {} on the support, value counts {:?}, sign of W_g {}\n",
                    if rep.g_balanced { "balanced" } else { "unbalanced" },
                    rep.ng_counts,
                    sign(rep.epsilon_g)
                );
            }
            Err(reason) => t += &format!("class       not plateaued: {reason}\n"),
        }
        let moments: Vec<String> = summary
            .moments
            .iter()
            .enumerate()
            .map(|(i, m)| format!("S{i} = {}", m.as_ref().map_or("irrational".into(), |v| v.to_string())))
            .collect();
        t += &format!("moments     {}\n", moments.join(", "));
        t
    })?;
    Ok(if classified.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(NOT_PLATEAUED) })
}

fn warn_degenerate(code: &LinearCode) {
    if let Err(CodeError::DegenerateDimension { k, expected }) = code.check_dimension() {
        eprintln!("warning: code is degenerate, dimension {k} instead of {expected}");
    }
}

fn code_text(cr: &CodeReport) -> String {
    let mut t = format!("code        {}\n", cr.parameters());
    t += &format!("enumerator  {}\n", cr.enumerator);
    if let (Some(lo), Some(hi)) = (cr.w_min, cr.w_max) {
        t += &format!("weights     {} nonzero, min {lo}, max {hi}\n", cr.weights.num_nonzero_weights());
    }
    t
}

fn build_code(cli: &Cli, path: &Path, codewords: Option<&Path>) -> Result<ExitCode> {
    let Loaded { field, f, .. } = load(path)?;
    let code = LinearCode::from_function(&field, &f);
    warn_degenerate(&code);
    let wd = weight_distribution(&code, cli.global.budget)?;
    if let Some(out) = codewords {
        let file = fs::File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
        write_codewords(&code, &mut BufWriter::new(file))?;
    }
    let cr = CodeReport::new(&code, wd);
    let mut sink = Sink::new(&cli.global, false)?;
    sink.report(&cr, || code_text(&cr))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableCheck {
    predicted: PredictedDistribution,
    diff: DistributionDiff,
}

#[derive(Serialize)]
struct WalshWeightCheck {
    codewords: u64,
    disagreements: u64,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    function: String,
    report: &'a PlateauedReport,
    code: &'a CodeReport,
    /// `None` with `tables_note` set when no table applies.
    table: Option<TableCheck>,
    /// Odd `m + r` only: the table with `±` multiplicities taken from the measured sign of `W_g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_sign_table: Option<TableCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tables_note: Option<String>,
    walsh_weights: WalshWeightCheck,
    dual_inverse: Option<bool>,
    minimality: MinimalityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimality_note: Option<String>,
    passed: bool,
}

fn check(predicted: PredictedDistribution, observed: &plateau::code::WeightDistribution) -> Result<TableCheck> {
    let dist = predicted.to_distribution()?;
    Ok(TableCheck { diff: compare(&dist, observed), predicted })
}

fn walsh_weight_check(code: &LinearCode, s: &WalshSpectrum) -> Result<WalshWeightCheck> {
    let mut out = WalshWeightCheck { codewords: 0, disagreements: 0 };
    for (a, b) in code.parameters() {
        out.codewords += 1;
        if weight_via_walsh(s, code.field(), a, b)? != code.weight(a, b) {
            out.disagreements += 1;
        }
    }
    Ok(out)
}

fn verify(cli: &Cli, path: &Path) -> Result<ExitCode> {
    let budget = cli.global.budget;
    let Loaded { spec, field, f } = load(path)?;
    let s = walsh_fast(&f, &field);
    let rep = classify(&s, detect_plateau(&s)?)?;
    let code = LinearCode::from_function(&field, &f);
    warn_degenerate(&code);
    let wd = weight_distribution(&code, budget)?;
    let cr = CodeReport::new(&code, wd.clone());

    let weak = rep.p == 2 || rep.regularity.is_weakly_regular();
    let (table, dual_sign_table, tables_note) = if !weak {
        (None, None, Some("tables not applicable: the function is not weakly regular".to_string()))
    } else {
        match predict_for(&rep) {
            Ok(pred) => {
                let split = if rep.p != 2 && (rep.m + rep.r) % 2 == 1 {
                    let (eps, eps_g) = (rep.epsilon.unwrap_or(1), rep.epsilon_g.unwrap_or(1));
                    Some(check(predict_odd_odd_split(rep.p, rep.m, rep.r, eps, eps_g, rep.g_balanced)?, &wd)?)
                } else {
                    None
                };
                (Some(check(pred, &wd)?), split, None)
            }
            Err(e) => (None, None, Some(format!("tables not applicable: {e}"))),
        }
    };
    let walsh_weights = walsh_weight_check(&code, &s)?;
    let dual_inverse = weak.then(|| verify_dual_inverse(&rep, &f, &field).is_ok());

    let ab = ashikhmin_barg(&wd, rep.p);
    let range = ParityCase::of(rep.p, rep.m, rep.r).filter(|_| weak).map(|pc| range_guarantee(rep.m, rep.r, pc));
    let (exhaustive, minimality_note) = match all_minimal_exhaustive(&code, budget) {
        Ok(v) => (Some(v), None),
        Err(e @ MinimalityError::BudgetExceeded { .. }) => (None, Some(format!("exhaustive check skipped: {e}"))),
        Err(e) => return Err(e.into()),
    };
    let exhaustive_minimal = exhaustive.as_ref().map(|v| v.all_minimal);
    let minimality_ok = match exhaustive_minimal {
        Some(all) => (!ab || all) && (range != Some(true) || all),
        None => true,
    };
    let minimality = MinimalityReport { ashikhmin_barg: ab, range_guarantee: range, exhaustive };

    let passed = table.as_ref().is_none_or(|t| t.diff.matches)
        && walsh_weights.disagreements == 0
        && dual_inverse != Some(false)
        && minimality_ok;
    let json = VerifyJson {
        function: spec.polynomial_string(),
        report: &rep,
        code: &cr,
        table,
        dual_sign_table,
        tables_note,
        walsh_weights,
        dual_inverse,
        minimality,
        minimality_note,
        passed,
    };
    let mut sink = Sink::new(&cli.global, false)?;
    sink.report(&json, || verify_text(&json, &field))?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(MISMATCH) })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn table_lines(label: &str, t: &TableCheck) -> String {
    let mut out = format!("{label:<12}{} ({:?})\n", mark(t.diff.matches), t.predicted.table);
    for d in t.diff.differences.iter() {
        out += &format!("              weight {}: predicted {}, enumerated {}\n", d.w, d.predicted, d.observed);
    }
    out
}

fn verify_text(v: &VerifyJson<'_>, field: &ExtField) -> String {
    let mut t = format!("function    Tr({}) over {}\n", v.function, field_name(field.spec()));
    t += &format!("class       {}\n", class_line(v.report));
    t += &format!("values      {}\n", value_set(v.report));
    t += &code_text(v.code);
    match (&v.table, &v.tables_note) {
        (Some(table), _) => t += &table_lines("table", table),
        (None, Some(note)) => t += &format!("table       {note}\n"),
        (None, None) => {}
    }
    if let Some(split) = &v.dual_sign_table {
        t += &table_lines("dual sign", split);
    }
    t += &format!(
        "walsh       {} ({} codewords, {} disagreements)\n",
        mark(v.walsh_weights.disagreements == 0),
        v.walsh_weights.codewords,
        v.walsh_weights.disagreements
    );
    if let Some(d) = v.dual_inverse {
        t += &format!("dual        {}\n", mark(d));
    }
    let m = &v.minimality;
    t += &format!("minimality  sufficient condition {}", if m.ashikhmin_barg { "holds" } else { "fails" });
    if let Some(r) = m.range_guarantee {
        t += &format!(", parameter range {}", if r { "inside" } else { "outside" });
    }
    match &m.exhaustive {
        Some(e) => t += &format!(", exhaustive: {}\n", if e.all_minimal { "all minimal" } else { "not all minimal" }),
        None => t += &format!(", {}\n", v.minimality_note.as_deref().unwrap_or("exhaustive check skipped")),
    }
    t += &format!("result      {}\n", if v.passed { "PASS" } else { "FAIL" });
    t
}

impl RegularityFilter {
    fn accepts(self, r: Regularity) -> bool {
        match self {
            RegularityFilter::Any => true,
            RegularityFilter::Regular => r == Regularity::Regular,
            RegularityFilter::WeaklyRegular => r == Regularity::WeaklyRegular,
            RegularityFilter::Weak => r.is_weakly_regular(),
            RegularityFilter::NonWeaklyRegular => r == Regularity::NonWeaklyRegular,
        }
    }
}

fn search(cli: &Cli, args: &SearchArgs) -> Result<ExitCode> {
    let field = ExtField::new(args.p, args.m, &args.modulus)?;
    let mode = match args.random {
        Some(count) => SweepMode::Random { count, seed: cli.global.seed },
        None => SweepMode::Exhaustive,
    };
    let (want_r, class) = (args.r, args.regularity);
    let filter = move |rep: &PlateauedReport| want_r.is_none_or(|r| rep.r == r) && class.accepts(rep.regularity);
    let hits = sweep(&field, &args.exponents, mode, cli.global.budget, filter)?;
    let mut sink = Sink::new(&cli.global, true)?;
    let limit = args.limit.unwrap_or(usize::MAX);
    for hit in hits.take(limit) {
        sink.line(&hit, || hit_text(&hit))?;
    }
    sink.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn hit_text(hit: &Hit) -> String {
    let rep = &hit.report;
    let mut t = format!("{}\t{}", hit.spec.polynomial_string(), class_line(rep));
    if rep.p != 2 {
        t += &format!(", epsilon {}", sign(rep.epsilon));
    }
    t
}

fn tables(cli: &Cli, args: &TablesArgs) -> Result<ExitCode> {
    let (p, m, r) = (args.p, args.m, args.r);
    if r > m {
        bail!("r = {r} exceeds m = {m}");
    }
    let pred = if p == 2 {
        predict_binary(m, r)?
    } else if (m + r) % 2 == 0 {
        predict_odd_even(p, m, r, args.epsilon, args.balanced)?
    } else {
        predict_odd_odd_split(p, m, r, args.epsilon, args.epsilon_g.unwrap_or(args.epsilon), args.balanced)?
    };
    let mut sink = Sink::new(&cli.global, false)?;
    sink.report(&pred, || {
        let mut t = format!("p = {p}, m = {m}, r = {r}");
        if p != 2 {
            t += &format!(", epsilon {}, dual {}", sign(Some(args.epsilon)), if args.balanced { "balanced" } else { "unbalanced" });
        }
        t += &format!("\nlength {}, dimension {}\n", (p as u64).pow(m) - 1, m + 1);
        t += &pred.to_text();
        t
    })?;
    Ok(ExitCode::SUCCESS)
}
