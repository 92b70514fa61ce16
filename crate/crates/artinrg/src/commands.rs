//! The subcommands, as library functions returning a [`RunReport`].

use std::path::{Path, PathBuf};
use std::thread;

use artinrg_core::cert::{builtin_certificate, check_certificate, decompose_artin, rg_artin, Builtin, Certificate};
use artinrg_core::coxeter::{rg_coxeter_planar, CoxeterError};
use artinrg_core::fpgroup::{
    abelian_invariants, coxeter_presentation, kernel_table_cayley_limited, low_index_normal, psl2_images, rg_sample,
    sl2_images, todd_coxeter, ChainError, CosetTable, EnumerationError, Perm, RgSample, Trend,
};
use artinrg_core::groupexpr::evaluate;
use artinrg_core::lgraph::{components, girth, is_planar};
use artinrg_core::{LabelledGraph, Rational};

use crate::builtins::{builtin_target, MatrixImages, Target, NAMES};
use crate::formats::csv::{format_row, write_samples, HEADER};
use crate::formats::expr::{parse_expr, DirSource};
use crate::formats::graph::parse_graph;
use crate::formats::json::{certificate_from_json, certificate_to_json, trace_to_json};
use crate::formats::ParseError;
use crate::report::{RunReport, Status};

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    /// Echoed at the top of the report.
    pub command: String,
    pub timestamp: bool,
}

impl Context {
    fn report(&self) -> RunReport {
        RunReport::new(self.command.clone(), self.timestamp)
    }
}

fn read_input(r: &mut RunReport, path: &Path) -> Option<String> {
    match std::fs::read(path) {
        Ok(bytes) => {
            r.input(path.display().to_string(), &bytes);
            match String::from_utf8(bytes) {
                Ok(s) => Some(s),
                Err(_) => {
                    r.fail(Status::Usage, format!("{}: not valid UTF-8", path.display()));
                    None
                }
            }
        }
        Err(e) => {
            r.fail(Status::Usage, format!("{}: {e}", path.display()));
            None
        }
    }
}

fn parse_failed(r: &mut RunReport, path: &Path, e: ParseError) {
    r.fail(
        Status::Usage,
        format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message),
    );
}

fn write_output(r: &mut RunReport, path: &Path, text: &str, what: &str) -> bool {
    match std::fs::write(path, text) {
        Ok(()) => {
            r.line(format!("{what} written to {}", path.display()));
            true
        }
        Err(e) => {
            r.fail(Status::Usage, format!("{}: {e}", path.display()));
            false
        }
    }
}

fn load_graph(r: &mut RunReport, path: &Path) -> Option<LabelledGraph> {
    let text = read_input(r, path)?;
    match parse_graph(&text) {
        Ok(g) => Some(g),
        Err(e) => {
            parse_failed(r, path, e);
            None
        }
    }
}

/// Checks a certificate, recording the assumption count and validity.
/// On success prints the summary line and returns the recomputed root cost.
fn check_into(r: &mut RunReport, c: &Certificate) -> Option<Option<Rational>> {
    let report = check_certificate(c);
    r.assumptions = report.assumptions.len();
    for a in &report.assumptions {
        r.line(format!("assumption at {}: {} [{}]", a.at, a.statement, a.citation));
    }
    for v in &report.violations {
        r.line(format!("violation at {}: {}", v.at, v.message));
    }
    r.check("certificate", report.is_valid());
    if !report.is_valid() {
        r.fail(
            Status::CheckerViolation,
            format!("certificate has {} violation(s)", report.violations.len()),
        );
        return None;
    }
    let cost = report
        .root_cost
        .as_ref()
        .map_or_else(|| "none".into(), Rational::to_string);
    r.line(format!("Valid, assumptions {}, cost {cost}", r.assumptions));
    Some(report.root_cost)
}

pub fn artin(ctx: &Context, graph: &Path, certify: Option<&Path>) -> RunReport {
    let mut r = ctx.report();
    let Some(g) = load_graph(&mut r, graph) else { return r };
    let out = rg_artin(&g);
    let res = &out.result;
    r.line(format!(
        "components={} cost={} rg={} betti1={}",
        out.components, res.cost, res.rank_gradient, res.betti1
    ));
    for c in &out.certificate.caveats {
        r.line(format!("caveat: {c}"));
    }
    if let Some(path) = certify {
        if !write_output(&mut r, path, &certificate_to_json(&out.certificate), "certificate") {
            return r;
        }
    }
    check_into(&mut r, &out.certificate);
    r
}

pub fn coxeter(ctx: &Context, graph: &Path, trace: Option<&Path>) -> RunReport {
    let mut r = ctx.report();
    let Some(g) = load_graph(&mut r, graph) else { return r };
    let gi = girth(&g);
    r.check("planar", is_planar(&g));
    r.check(format!("girth({gi}) >= 6"), gi.at_least(6));
    let out = match rg_coxeter_planar(&g) {
        Ok(out) => out,
        Err(e @ CoxeterError::Hypothesis { .. }) => {
            r.fail(Status::Hypothesis, e.to_string());
            return r;
        }
        Err(e) => {
            r.fail(Status::Internal, e.to_string());
            return r;
        }
    };
    let total = out.trace.total();
    let agree = total == out.closed_form;
    r.line(format!(
        "rg={} betti1={} trace_sum={} {}",
        out.result.rank_gradient,
        out.result.betti1,
        total,
        if agree { "OK" } else { "MISMATCH" }
    ));
    r.line(format!(
        "cost={} order={}",
        out.result.cost,
        order_text(out.result.order)
    ));
    if !agree {
        r.fail(
            Status::Internal,
            format!("trace sum {total} != closed form {}", out.closed_form),
        );
    }
    if let Some(path) = trace {
        write_output(&mut r, path, &trace_to_json(&g, &out), "trace");
    }
    r
}

fn order_text(o: Option<artinrg_core::GroupOrder>) -> String {
    o.map_or_else(|| "unknown".into(), |o| o.to_string())
}

/// Where an expression comes from.
pub enum ExprSource<'a> {
    File(&'a Path),
    Inline(&'a str),
}

pub fn expr(ctx: &Context, src: ExprSource<'_>) -> RunReport {
    let mut r = ctx.report();
    let (text, base, label) = match src {
        ExprSource::File(path) => {
            let Some(text) = read_input(&mut r, path) else { return r };
            let base = path.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf);
            (text, base, path.to_path_buf())
        }
        ExprSource::Inline(s) => {
            r.input("<inline>", s.as_bytes());
            (s.to_string(), PathBuf::from("."), PathBuf::from("<inline>"))
        }
    };
    let e = match parse_expr(&text, &DirSource(&base)) {
        Ok(e) => e,
        Err(e) => {
            parse_failed(&mut r, &label, e);
            return r;
        }
    };
    let res = evaluate(&e);
    r.line(format!("cost={}", res.cost));
    r.line(format!("rg={}", res.rank_gradient));
    r.line(format!("betti1={}", res.betti1));
    r.line(format!(
        "fixed_price={} order={}",
        res.fixed_price,
        order_text(res.order)
    ));
    r.line("rule_trace:");
    for a in &res.rule_trace {
        r.line(format!("  {} {}: {}", a.at, a.rule, a.detail));
    }
    let rel = res.check_relations();
    r.check("rg = cost - 1, rg >= betti1", rel.is_ok());
    if let Err(m) = rel {
        r.fail(Status::Internal, m);
    }
    r
}

pub fn certify(ctx: &Context, target: &str, param: Option<u32>, out: Option<&Path>) -> RunReport {
    let mut r = ctx.report();
    let known = Builtin::NAMES.iter().any(|n| n.eq_ignore_ascii_case(target));
    let cert = if known {
        r.input(format!("builtin {target}"), target.as_bytes());
        match Builtin::parse(target, param).and_then(builtin_certificate) {
            Ok(c) => c,
            Err(e) => {
                r.fail(Status::Usage, e.to_string());
                return r;
            }
        }
    } else {
        let path = Path::new(target);
        if !path.exists() {
            r.fail(
                Status::Usage,
                format!(
                    "{target:?} is neither a builtin ({}) nor a graph file",
                    Builtin::NAMES.join(", ")
                ),
            );
            return r;
        }
        let Some(g) = load_graph(&mut r, path) else { return r };
        if components(&g).len() > 1 {
            r.fail(Status::Usage, "use cmd_artin for multi-component graphs");
            return r;
        }
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        decompose_artin(&g, &all).expect("connected graphs decompose")
    };
    let json = certificate_to_json(&cert);
    let reread = match out {
        Some(path) => {
            if !write_output(&mut r, path, &json, "certificate") {
                return r;
            }
            std::fs::read_to_string(path).unwrap_or_default()
        }
        None => json,
    };
    let back = match certificate_from_json(&reread) {
        Ok(c) => c,
        Err(e) => {
            r.fail(Status::CheckerViolation, format!("certificate does not re-read: {e}"));
            return r;
        }
    };
    r.line(format!("subject: {}", back.subject));
    check_into(&mut r, &back);
    r
}

pub fn check(ctx: &Context, cert: &Path) -> RunReport {
    let mut r = ctx.report();
    let Some(text) = read_input(&mut r, cert) else { return r };
    let c = match certificate_from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            r.fail(
                Status::Usage,
                format!("{}:{}:{}: {e}", cert.display(), e.line(), e.column()),
            );
            return r;
        }
    };
    r.line(format!("subject: {}", c.subject));
    check_into(&mut r, &c);
    r
}

/// How `verify` builds its subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSpec {
    /// Congruence kernels of `SL(2, Z/n)` or `PSL(2, Z/n)`.
    Mod(Vec<u64>),
    /// Kernels of the map sending every generator to `1 mod m`.
    AbelianKill(Vec<u64>),
    /// All normal subgroups of index at most `n`.
    LowIndex(usize),
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub target: String,
    pub chain: ChainSpec,
    pub coset_limit: usize,
    pub csv: Option<PathBuf>,
    pub dump_presentation: bool,
}

fn resolve_target(r: &mut RunReport, name: &str) -> Option<Target> {
    if let Some(t) = builtin_target(name) {
        r.input(format!("builtin {}", t.name), t.source.as_bytes());
        return Some(t);
    }
    let path = Path::new(name);
    if !path.exists() {
        r.fail(
            Status::Usage,
            format!("{name:?} is neither a builtin ({NAMES}) nor a presentation file"),
        );
        return None;
    }
    let text = read_input(r, path)?;
    match Target::from_file_text(name, &text) {
        Ok(t) => Some(t),
        Err(e) => {
            parse_failed(r, path, e);
            None
        }
    }
}

fn chain_error(r: &mut RunReport, level: u64, e: ChainError) {
    match e {
        ChainError::TooLarge { limit } => r.fail(
            Status::Inconclusive,
            format!("level {level}: image group exceeds the coset limit {limit}"),
        ),
        e => r.fail(Status::Usage, format!("level {level}: {e}")),
    };
}

fn build_chain(r: &mut RunReport, t: &Target, spec: &ChainSpec, limit: usize) -> Option<Vec<CosetTable>> {
    let p = &t.presentation;
    let levels: Vec<(u64, Result<Vec<Perm>, ChainError>)> = match spec {
        ChainSpec::Mod(ns) => {
            let images: fn(u64) -> Result<Vec<Perm>, ChainError> = match t.matrix {
                Some(MatrixImages::Sl2) => sl2_images,
                Some(MatrixImages::Psl2) => psl2_images,
                None => {
                    r.fail(Status::Usage, format!("--mod needs SL2Z or PSL2Z, not {}", t.name));
                    return None;
                }
            };
            ns.iter().map(|&n| (n, images(n))).collect()
        }
        ChainSpec::AbelianKill(ms) => ms
            .iter()
            .map(|&m| (m, artinrg_core::fpgroup::abelian_images(p, m)))
            .collect(),
        ChainSpec::LowIndex(n) => {
            return match low_index_normal(p, *n) {
                Ok(mut tables) => {
                    tables.sort_by_key(CosetTable::index);
                    Some(tables)
                }
                Err(e) => {
                    r.fail(Status::Usage, e.to_string());
                    None
                }
            };
        }
    };
    let mut tables = Vec::with_capacity(levels.len());
    for (level, images) in levels {
        match images.and_then(|im| kernel_table_cayley_limited(p, &im, limit)) {
            Ok(t) => tables.push(t),
            Err(e) => {
                chain_error(r, level, e);
                return None;
            }
        }
    }
    tables.sort_by_key(CosetTable::index);
    Some(tables)
}

/// Samples every level on its own thread; results keep the chain order.
fn sample_levels(t: &Target, chain: &[CosetTable]) -> Result<Vec<RgSample>, String> {
    thread::scope(|s| {
        let handles: Vec<_> = chain
            .iter()
            .map(|table| s.spawn(|| rg_sample(&t.presentation, table)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("sampling thread panicked".into())))
            .collect()
    })
}

pub fn verify(ctx: &Context, opts: &VerifyOptions) -> RunReport {
    let mut r = ctx.report();
    let Some(t) = resolve_target(&mut r, &opts.target) else {
        return r;
    };
    if opts.dump_presentation {
        for l in t.source.lines() {
            r.line(format!("presentation: {l}"));
        }
    }
    let ab = abelian_invariants(&t.presentation);
    let factors: Vec<String> = ab.invariant_factors.iter().map(|f| f.to_string()).collect();
    r.line(format!(
        "abelianization: rank {} torsion [{}]",
        ab.free_rank,
        factors.join(",")
    ));
    let Some(chain) = build_chain(&mut r, &t, &opts.chain, opts.coset_limit) else {
        return r;
    };
    let samples = match sample_levels(&t, &chain) {
        Ok(s) => s,
        Err(m) => {
            r.fail(Status::Internal, m);
            return r;
        }
    };
    r.line(HEADER);
    for s in &samples {
        r.line(format_row(s));
    }
    r.line(format!("trend: {}", Trend::of(&samples)));
    match (t.symbolic_rank_gradient(), samples.last()) {
        (Some(target), _) if !samples.is_empty() && samples.iter().all(|s| s.is_exact() && s.r_upper == target) => {
            r.line(format!("matches symbolic {target}"));
        }
        (Some(target), Some(last)) => {
            r.line(format!(
                "symbolic target {target}; last interval [{}, {}]",
                last.r_lower, last.r_upper
            ));
        }
        (Some(target), None) => r.line(format!("symbolic target {target}; no samples")),
        (None, _) => r.line("no symbolic value for this target"),
    }
    if let Some(path) = &opts.csv {
        write_output(&mut r, path, &write_samples(&samples), "csv");
    }
    r
}

/// What `order` enumerates.
pub enum OrderTarget<'a> {
    /// Builtin name or presentation file.
    Presentation(&'a str),
    /// Graph file, read as a Coxeter group.
    CoxeterGraph(&'a Path),
}

pub fn order(ctx: &Context, target: OrderTarget<'_>, coset_limit: usize) -> RunReport {
    let mut r = ctx.report();
    let p = match target {
        OrderTarget::Presentation(name) => match resolve_target(&mut r, name) {
            Some(t) => t.presentation,
            None => return r,
        },
        OrderTarget::CoxeterGraph(path) => match load_graph(&mut r, path) {
            Some(g) => coxeter_presentation(&g),
            None => return r,
        },
    };
    match todd_coxeter(&p, &[], coset_limit) {
        Ok(t) => r.line(format!("order={}", t.index())),
        Err(EnumerationError::LimitExceeded { live }) => {
            r.fail(
                Status::Inconclusive,
                format!("coset limit {coset_limit} exceeded ({live} live cosets); not a proof of infiniteness"),
            );
        }
        Err(e) => {
            r.fail(Status::Usage, e.to_string());
        }
    }
    r
}
