//! JSON for certificates and Coxeter traces.

use artinrg_core::cert::Certificate;
use artinrg_core::coxeter::CoxeterOutcome;
use artinrg_core::{LabelledGraph, Rational};
use serde::Serialize;

pub fn certificate_to_json(c: &Certificate) -> String {
    serde_json::to_string_pretty(c).expect("certificates serialize")
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, serde_json::Error> {
    serde_json::from_str(text)
}

#[derive(Serialize)]
struct TraceDoc<'a> {
    kind: &'static str,
    graph: &'a LabelledGraph,
    closed_form: &'a Rational,
    steps: &'a [artinrg_core::coxeter::TraceStep],
    terminal_correction: &'a Rational,
    total: Rational,
}

/// Trace document: the elimination steps, the terminal correction and the
/// closed-form value they must sum to.
pub fn trace_to_json(g: &LabelledGraph, out: &CoxeterOutcome) -> String {
    let doc = TraceDoc {
        kind: "coxeter-trace",
        graph: g,
        closed_form: &out.closed_form,
        steps: &out.trace.steps,
        terminal_correction: &out.trace.terminal_correction,
        total: out.trace.total(),
    };
    serde_json::to_string_pretty(&doc).expect("traces serialize")
}
