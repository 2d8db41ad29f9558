use std::path::PathBuf;
use std::time::Instant;

use braidimage::field::{ExtPair, Field, FqElem};
use braidimage::group::{
    census_bounds, certify_bundle_with, group_report, product_certify, transvection_census, Enumeration, GroupError,
    ProductVerdict, Verdict, DEFAULT_CAP,
};
use braidimage::linalg::algebra_dimension;
use braidimage::rep::{
    build_rep, case_detect, gate, measured_spectrum, restrict, spectrum_profile, verify_relations, RepBundle,
    RepCase, RepError, RepParams, SpectrumProfile, Violation,
};
use braidimage::unitary::unitarize;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{CaseArg, Check, Command, EnumerationArg, FieldArgs, Format, OutArgs, ParamArgs, RunArgs, SourceArgs, CAP_ENV};
use crate::output::{csv_table, emit, render_report, to_json, to_text, ParamsOut, Report};
use crate::Failure;

pub fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Rep { params, output } => rep(&params, output),
        Command::Analyze { source, out } => analyze(&source, &out),
        Command::Unitarize { source, output } => unitarize_cmd(&source, output),
        Command::Certify { source, run, enumeration, out } => certify(&source, &run, enumeration, &out),
        Command::Census { source, run, degree, q, case_arg, out } => census(&source, &run, degree, q, case_arg, &out),
        Command::Scan { check, n_min, n_max, p, e, run, format, output } => {
            scan(check, n_min, n_max, &p, &e, &run, format, output)
        }
    }
}

fn usage(m: impl ToString) -> Failure {
    Failure::Usage(m.to_string())
}

fn rep_failure(e: RepError) -> Failure {
    match e {
        RepError::Gate(g) => Failure::Gate(g.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn group_failure(e: GroupError) -> Failure {
    Failure::Internal(e.to_string())
}

fn cap(run: &RunArgs) -> Result<usize, Failure> {
    if let Some(c) = run.cap {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{CAP_ENV}={v} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn field(args: &FieldArgs) -> Result<Field, Failure> {
    let p = args.p.ok_or_else(|| usage("--p is required"))?;
    let modulus = match &args.modulus {
        None => None,
        Some(s) => Some(
            s.split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| usage("--modulus must be comma-separated integers"))?,
        ),
    };
    Field::new(p, args.d, modulus).map_err(usage)
}

/// `order:k` picks the smallest code of multiplicative order `k`; anything
/// else is read as an element code.
pub fn resolve_alpha(f: &Field, s: &str) -> Result<FqElem, Failure> {
    if let Some(k) = s.strip_prefix("order:") {
        let k: u64 = k.parse().map_err(|_| usage(format!("bad order selector {s}")))?;
        return f.element_of_order(k).map_err(usage);
    }
    let code: u64 = s.parse().map_err(|_| usage(format!("alpha must be a code or order:k, got {s}")))?;
    f.elem(code).map_err(usage)
}

fn params(args: &ParamArgs, r: usize) -> Result<RepParams, Failure> {
    let f = field(&args.field)?;
    let alpha = resolve_alpha(&f, args.alpha.as_deref().ok_or_else(|| usage("--alpha is required"))?)?;
    let n = args.n.ok_or_else(|| usage("--n is required"))?;
    RepParams::new(n, r, alpha).map_err(usage)
}

fn load(source: &SourceArgs) -> Result<RepBundle, Failure> {
    match &source.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let b = RepBundle::parse(&text).map_err(usage)?;
            if !source.params.force {
                gate(&b.params).map_err(|g| Failure::Gate(g.to_string()))?;
            }
            Ok(b)
        }
        None => {
            let p = params(&source.params, source.params.r.unwrap_or(1))?;
            build_rep(&p, source.params.force).map_err(rep_failure)
        }
    }
}

fn params_out(p: &RepParams, r: Option<usize>, dim: Option<usize>) -> ParamsOut {
    let f = p.field();
    ParamsOut {
        p: f.characteristic(),
        d: f.degree(),
        modulus: f.modulus().to_vec(),
        alpha: p.alpha.code(),
        alpha_order: p.alpha.mult_order().unwrap_or(0),
        e: p.e,
        n: p.n,
        r,
        dim,
    }
}

fn case_name(c: RepCase) -> String {
    format!("{c:?}")
}

fn elapsed(start: Instant, run: &RunArgs) -> u64 {
    if run.no_timing {
        0
    } else {
        start.elapsed().as_millis() as u64
    }
}

fn exit_for(v: &Verdict) -> u8 {
    match v {
        Verdict::ContainsSL | Verdict::ContainsSU { .. } => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive | Verdict::Capped => 2,
    }
}

fn rep(args: &ParamArgs, output: Option<PathBuf>) -> Result<u8, Failure> {
    let p = params(args, args.r.unwrap_or(1))?;
    let b = build_rep(&p, args.force).map_err(rep_failure)?;
    emit(&b.to_text(), output.as_deref())?;
    Ok(0)
}

#[derive(Serialize)]
struct GateOut {
    passed: bool,
    clause: Option<String>,
}

#[derive(Serialize)]
struct SpectrumOut {
    predicted: SpectrumProfile,
    measured: Vec<SpectrumProfile>,
    consistent: bool,
}

#[derive(Serialize)]
struct RestrictionOut {
    upper_dim: Option<usize>,
    lower_dim: Option<usize>,
    split: bool,
}

#[derive(Serialize)]
struct AnalyzeReport {
    params: ParamsOut,
    case: String,
    gate: GateOut,
    spectrum: SpectrumOut,
    relation_violations: Vec<Violation>,
    abs_irreducible: bool,
    det_image_order: u64,
    restriction: Option<RestrictionOut>,
}

fn analyze(source: &SourceArgs, out: &OutArgs) -> Result<u8, Failure> {
    let b = load(source)?;
    let p = &b.params;
    let g = gate(p);
    let predicted = spectrum_profile(p.n, p.r).map_err(usage)?;
    let measured: Vec<_> = (0..b.gens.len()).map(|i| measured_spectrum(&b, i)).collect();
    let restriction = match restrict(&b) {
        Ok(res) => Some(RestrictionOut {
            upper_dim: res.upper.as_ref().map(|x| x.dim),
            lower_dim: res.lower.as_ref().map(|x| x.dim),
            split: true,
        }),
        Err(RepError::NothingToRestrict) => None,
        Err(RepError::SplitFailure) => Some(RestrictionOut { upper_dim: None, lower_dim: None, split: false }),
        Err(e) => return Err(Failure::Internal(e.to_string())),
    };
    let n2 = b.dim * b.dim;
    let report = AnalyzeReport {
        params: params_out(p, Some(p.r), Some(b.dim)),
        case: case_name(b.case),
        gate: GateOut { passed: g.is_ok(), clause: g.err().map(|x| x.to_string()) },
        spectrum: SpectrumOut { consistent: measured.iter().all(|m| *m == predicted), predicted, measured },
        relation_violations: verify_relations(&b),
        abs_irreducible: algebra_dimension(&b.gens, n2).map_err(|e| Failure::Internal(e.to_string()))? == n2,
        det_image_order: braidimage::group::det_image(&b.gens).map_err(group_failure)?,
        restriction,
    };
    let text = match out.format {
        Format::Json => to_json(&report)? + "\n",
        Format::Text => to_text(&report)?,
        Format::Csv => csv_table(
            &["p", "d", "alpha", "n", "r", "dim", "case", "gate", "a", "b", "c", "spectrum_ok", "relations_ok", "abs_irreducible"],
            &[vec![
                report.params.p.to_string(),
                report.params.d.to_string(),
                report.params.alpha.to_string(),
                p.n.to_string(),
                p.r.to_string(),
                b.dim.to_string(),
                report.case.clone(),
                report.gate.passed.to_string(),
                predicted.a.to_string(),
                predicted.b.to_string(),
                predicted.c.to_string(),
                report.spectrum.consistent.to_string(),
                report.relation_violations.is_empty().to_string(),
                report.abs_irreducible.to_string(),
            ]],
        )?,
    };
    emit(&text, out.format_output())?;
    Ok(0)
}

impl OutArgs {
    fn format_output(&self) -> Option<&std::path::Path> {
        self.output.as_deref()
    }
}

fn unitarize_cmd(source: &SourceArgs, output: Option<PathBuf>) -> Result<u8, Failure> {
    let b = load(source)?;
    if b.case != RepCase::Unitary {
        return Err(usage("bundle is in the linear case; nothing to unitarize"));
    }
    let pair = ExtPair::new(b.params.field()).map_err(usage)?;
    let u = unitarize(&b, &pair).map_err(|e| Failure::Internal(e.to_string()))?;
    let mut text = u.bundle.to_text();
    text.push_str("FORM\n");
    text.push_str(&u.form.gram.to_text());
    text.push_str("CONGRUENCE\n");
    text.push_str(&u.congruence.to_text());
    emit(&text, output.as_deref())?;
    Ok(0)
}

fn enumeration(e: EnumerationArg) -> Enumeration {
    match e {
        EnumerationArg::Auto => Enumeration::Auto,
        EnumerationArg::Direct => Enumeration::Direct,
        EnumerationArg::Projective => Enumeration::Projective,
    }
}

fn base_order(b: &RepBundle) -> u64 {
    let q = b.params.field().order();
    match b.case {
        RepCase::Linear => q,
        RepCase::Unitary => (q as f64).sqrt().round() as u64,
    }
}

fn single_report(b: &RepBundle, cap: usize, mode: Enumeration, start: Instant, run: &RunArgs) -> Result<Report, Failure> {
    let g = group_report(b, cap, mode).map_err(group_failure)?;
    Ok(Report {
        params: params_out(&b.params, Some(b.params.r), Some(b.dim)),
        case: case_name(b.case),
        order: Some(g.order),
        det_image_order: Some(g.det_image_order),
        transvection_count: g.transvection_count,
        bounds: census_bounds(b.dim, base_order(b), b.case),
        verdict: g.verdict.to_string(),
        runtime_ms: elapsed(start, run),
        capped: g.capped,
        projective: Some(g.projective),
        abs_irreducible: Some(g.abs_irreducible),
        certificate: Some(g.certificate),
        product: None,
    })
}

fn certify(source: &SourceArgs, run: &RunArgs, e: EnumerationArg, out: &OutArgs) -> Result<u8, Failure> {
    let start = Instant::now();
    let cap = cap(run)?;
    if source.input.is_none() && source.params.r.is_none() {
        return certify_product(source, cap, start, run, out);
    }
    let b = load(source)?;
    let report = single_report(&b, cap, enumeration(e), start, run)?;
    let code = exit_for(&report.certificate.as_ref().expect("set").verdict);
    emit(&render_report(&report, out.format)?, out.output.as_deref())?;
    Ok(code)
}

fn certify_product(source: &SourceArgs, cap: usize, start: Instant, run: &RunArgs, out: &OutArgs) -> Result<u8, Failure> {
    let base = params(&source.params, 0)?;
    let bundles = (0..=base.n / 2)
        .map(|r| {
            let p = RepParams::new(base.n, r, base.alpha.clone()).map_err(usage)?;
            build_rep(&p, source.params.force).map_err(rep_failure)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let product = product_certify(&bundles, cap).map_err(group_failure)?;
    let verdicts: Vec<ProductVerdict> = product.pairs.iter().map(|p| p.verdict).collect();
    let factors_ok = product.factors.iter().all(|f| f.certified());
    let (verdict, code) = if verdicts.contains(&ProductVerdict::NotFullProduct)
        || product.factors.iter().any(|f| f.certificate.verdict == Verdict::Refuted)
    {
        ("NotFullProduct", 1)
    } else if factors_ok && verdicts.iter().all(|v| *v == ProductVerdict::ContainsProduct) {
        ("ContainsProduct", 0)
    } else if verdicts.contains(&ProductVerdict::Capped)
        || product.factors.iter().any(|f| f.certificate.verdict == Verdict::Capped)
    {
        ("Capped", 2)
    } else {
        ("Inconclusive", 2)
    };
    let case = bundles.first().map(|b| b.case).unwrap_or(RepCase::Linear);
    let report = Report {
        params: params_out(&base, None, None),
        case: case_name(case),
        order: None,
        det_image_order: None,
        transvection_count: None,
        bounds: None,
        verdict: verdict.to_string(),
        runtime_ms: elapsed(start, run),
        capped: verdict == "Capped",
        projective: None,
        abs_irreducible: None,
        certificate: None,
        product: Some(product),
    };
    emit(&render_report(&report, out.format)?, out.output.as_deref())?;
    Ok(code)
}

#[derive(Serialize)]
struct BoundsOnly {
    bounds: braidimage::group::CensusBounds,
    positive: bool,
}

fn census(
    source: &SourceArgs,
    run: &RunArgs,
    degree: Option<usize>,
    q: Option<u64>,
    case_arg: CaseArg,
    out: &OutArgs,
) -> Result<u8, Failure> {
    if let (Some(n), Some(q)) = (degree, q) {
        let case = match case_arg {
            CaseArg::Linear => RepCase::Linear,
            CaseArg::Unitary => RepCase::Unitary,
        };
        let bounds = census_bounds(n, q, case).ok_or_else(|| usage("bounds overflow 128 bits at these parameters"))?;
        let r = BoundsOnly { positive: bounds.positive(), bounds };
        let text = match out.format {
            Format::Text => to_text(&r)?,
            _ => to_json(&r)? + "\n",
        };
        emit(&text, out.output.as_deref())?;
        return Ok(0);
    }
    let start = Instant::now();
    let cap = cap(run)?;
    let b = load(source)?;
    let img = certify_bundle_with(&b, cap, Enumeration::Direct).map_err(group_failure)?;
    let g = &img.closure;
    let count = if g.capped() { None } else { Some(transvection_census(g).map_err(group_failure)?) };
    let report = Report {
        params: params_out(&b.params, Some(b.params.r), Some(b.dim)),
        case: case_name(b.case),
        order: Some(g.order()),
        det_image_order: Some(img.det_image_order),
        transvection_count: count,
        bounds: census_bounds(b.dim, img.base_order, b.case),
        verdict: img.certificate.verdict.to_string(),
        runtime_ms: elapsed(start, run),
        capped: g.capped(),
        projective: Some(false),
        abs_irreducible: None,
        certificate: Some(img.certificate.clone()),
        product: None,
    };
    emit(&render_report(&report, out.format)?, out.output.as_deref())?;
    Ok(if g.capped() { 2 } else { 0 })
}

/// Smallest `d` with `e | p^d - 1`.
fn degree_for(p: u64, e: u64) -> Option<u32> {
    if e == 0 || p.is_multiple_of(e) && e > 1 {
        return None;
    }
    let mut x = 1 % e;
    for d in 1..=40u32 {
        x = (x as u128 * p as u128 % e as u128) as u64;
        if x == 1 % e {
            return Some(d);
        }
    }
    None
}

/// Fields beyond this are skipped in scans: finding alpha is a linear search.
const SCAN_FIELD_LIMIT: u64 = 1 << 20;

fn scan_alpha(p: u64, e: u64) -> Result<FqElem, String> {
    let d = degree_for(p, e).ok_or_else(|| format!("no element of order {e} in characteristic {p}"))?;
    let f = Field::new(p, d, None).map_err(|x| x.to_string())?;
    if f.order() > SCAN_FIELD_LIMIT {
        return Err(format!("F_{{{p}^{d}}} is beyond the scan limit"));
    }
    f.element_of_order(e).map_err(|x| x.to_string())
}

#[allow(clippy::too_many_arguments)]
fn scan(
    check: Check,
    n_min: usize,
    n_max: usize,
    ps: &[u64],
    es: &[u64],
    run: &RunArgs,
    format: Format,
    output: Option<PathBuf>,
) -> Result<u8, Failure> {
    if n_min < 2 || n_max < n_min {
        return Err(usage("need 2 <= n-min <= n-max"));
    }
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match check {
        Check::Spectrum => {
            let cells: Vec<(usize, usize)> =
                (n_min..=n_max).flat_map(|n| (0..=n / 2).map(move |r| (n, r))).collect();
            let rows = cells
                .par_iter()
                .map(|&(n, r)| {
                    let s = spectrum_profile(n, r).expect("valid shape");
                    // branching: c(n, r) = c(n-1, r) + c(n-1, r-1)
                    let c = |n: i64, r: i64| braidimage::rep::dim_two_row(n, r);
                    let branching = s.c == c(n as i64 - 1, r as i64) + c(n as i64 - 1, r as i64 - 1);
                    vec![n, r, s.a as usize, s.b as usize, s.c as usize]
                        .into_iter()
                        .map(|x| x.to_string())
                        .chain([branching.to_string()])
                        .collect()
                })
                .collect();
            (vec!["n", "r", "a", "b", "c", "branching_ok"], rows)
        }
        Check::Gate => {
            if ps.is_empty() || es.is_empty() {
                return Err(usage("scan --check gate needs --p and --e"));
            }
            let cells: Vec<(u64, u64, usize)> = ps
                .iter()
                .flat_map(|&p| es.iter().flat_map(move |&e| (n_min..=n_max).map(move |n| (p, e, n))))
                .collect();
            let rows = cells
                .par_iter()
                .map(|&(p, e, n)| match scan_alpha(p, e) {
                    Err(m) => vec![p.to_string(), String::new(), e.to_string(), n.to_string(), "skip".into(), m, String::new()],
                    Ok(alpha) => {
                        let d = alpha.field().degree();
                        let params = RepParams::new(n, 1, alpha).expect("n >= 2");
                        let g = gate(&params);
                        let case = case_detect(&params).map(case_name).unwrap_or_else(|x| x.to_string());
                        vec![
                            p.to_string(),
                            d.to_string(),
                            e.to_string(),
                            n.to_string(),
                            if g.is_ok() { "pass".into() } else { "reject".into() },
                            g.err().map(|x| x.to_string()).unwrap_or_default(),
                            case,
                        ]
                    }
                })
                .collect();
            (vec!["p", "d", "e", "n", "gate", "clause", "case"], rows)
        }
        Check::Certify => {
            if ps.is_empty() || es.is_empty() {
                return Err(usage("scan --check certify needs --p and --e"));
            }
            let cap = cap(run)?;
            let cells: Vec<(u64, u64, usize, usize)> = ps
                .iter()
                .flat_map(|&p| {
                    es.iter().flat_map(move |&e| (n_min..=n_max).flat_map(move |n| (0..=n / 2).map(move |r| (p, e, n, r))))
                })
                .collect();
            let rows = cells
                .par_iter()
                .map(|&(p, e, n, r)| {
                    let base = vec![p.to_string(), e.to_string(), n.to_string(), r.to_string()];
                    let tail = match scan_alpha(p, e) {
                        Err(m) => vec![String::new(); 5].into_iter().chain([format!("skip: {m}")]).collect(),
                        Ok(alpha) => {
                            let d = alpha.field().degree().to_string();
                            let params = RepParams::new(n, r, alpha).expect("valid shape");
                            match build_rep(&params, false) {
                                Err(err) => vec![d, String::new(), String::new(), String::new(), String::new(), err.to_string()],
                                Ok(b) => match group_report(&b, cap, Enumeration::Auto) {
                                    Err(err) => vec![d, b.dim.to_string(), case_name(b.case), String::new(), String::new(), err.to_string()],
                                    Ok(g) => vec![
                                        d,
                                        b.dim.to_string(),
                                        case_name(b.case),
                                        g.order.to_string(),
                                        g.capped.to_string(),
                                        g.verdict.to_string(),
                                    ],
                                },
                            }
                        }
                    };
                    base.into_iter().chain(tail).collect()
                })
                .collect();
            (vec!["p", "e", "n", "r", "d", "dim", "case", "order", "capped", "verdict"], rows)
        }
    };
    let text = match format {
        Format::Csv => csv_table(&header, &rows)?,
        Format::Json => {
            let mut s = String::new();
            for row in &rows {
                let obj: serde_json::Map<String, serde_json::Value> =
                    header.iter().zip(row).map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone()))).collect();
                s.push_str(&serde_json::Value::Object(obj).to_string());
                s.push('\n');
            }
            s
        }
        Format::Text => rows.iter().map(|r| r.join("\t") + "\n").collect::<String>(),
    };
    emit(&text, output.as_deref())?;
    Ok(0)
}
