//! Reports and their text rendering. JSON comes straight from serde.

use std::fmt::Write as _;

use nbar::noncompactness::{Classification, MncReport};
use nbar::{ConditionVerdict, MatrixSpec, Mode, Scalar, Status, TruncationConfig};
use serde::Serialize;

use crate::spec::{Params, WeightsSpec};

#[derive(Serialize)]
#[serde(bound = "T: Scalar")]
pub struct Report<T: Scalar> {
    pub task: String,
    pub mode: Mode,
    pub params: Params,
    pub config: TruncationConfig<T>,
    pub result: Outcome<T>,
}

#[derive(Serialize)]
#[serde(bound = "T: Scalar")]
pub struct Indexed<T: Scalar> {
    pub index: usize,
    #[serde(with = "nbar::scalar::serde_scalar")]
    pub value: T,
}

#[derive(Serialize)]
#[serde(bound = "T: Scalar")]
pub struct AttainmentReport<T: Scalar> {
    pub row: usize,
    #[serde(with = "nbar::scalar::serde_scalar")]
    pub value: T,
    #[serde(with = "nbar::scalar::serde_scalar")]
    pub row_abs_sum: T,
    #[serde(with = "nbar::scalar::serde_scalar::vec")]
    pub signs: Vec<T>,
    #[serde(with = "nbar::scalar::serde_scalar::vec")]
    pub x: Vec<T>,
}

#[derive(Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ComposedRow<T: Scalar> {
    pub row: usize,
    #[serde(with = "nbar::scalar::serde_scalar::vec")]
    pub values: Vec<T>,
}

/// The worked example: computed values next to the constants stated for it
/// in the literature.
#[derive(Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ReproReport<T: Scalar> {
    pub weights: WeightsSpec<T>,
    pub matrix: MatrixSpec<T>,
    pub class_check: ConditionVerdict<T>,
    pub mnc: MncReport<T>,
    pub reported_limit: String,
    pub reported_tail_formula: String,
    #[serde(with = "nbar::scalar::serde_scalar")]
    pub computed_limit: T,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "T: Scalar")]
pub enum Outcome<T: Scalar> {
    Values {
        name: String,
        values: Vec<Indexed<T>>,
    },
    Verdict {
        verdict: ConditionVerdict<T>,
        #[serde(skip_serializing_if = "Option::is_none")]
        attainment: Option<AttainmentReport<T>>,
    },
    Composed {
        rows: Vec<ComposedRow<T>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        verdict: Option<ConditionVerdict<T>>,
    },
    Mnc {
        report: MncReport<T>,
    },
    Repro(Box<ReproReport<T>>),
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Inconclusive => "inconclusive",
    }
}

fn classification(c: Classification) -> &'static str {
    match c {
        Classification::Compact => "compact",
        Classification::Noncompact => "noncompact",
        Classification::Inconclusive => "inconclusive",
    }
}

fn join<T: Scalar>(values: &[T]) -> String {
    values.iter().map(Scalar::render).collect::<Vec<_>>().join(", ")
}

fn verdict_lines<T: Scalar>(v: &ConditionVerdict<T>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}{}: {}", v.name, status(v.status));
    if let Some(e) = &v.evidence {
        let _ = write!(out, " (evidence {})", e.render());
    }
    out.push('\n');
    if let Some(w) = &v.witness {
        let idx = w.index.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "{pad}  witness at [{idx}]: {} ({})", w.value.render(), w.note);
    }
    for d in &v.diagnostics {
        let _ = writeln!(out, "{pad}  note: {d}");
    }
    for f in &v.interpretation_flags {
        let _ = writeln!(out, "{pad}  reading: {f}");
    }
    for c in &v.conditions {
        verdict_lines(c, indent + 1, out);
    }
}

fn mnc_lines<T: Scalar>(r: &MncReport<T>, out: &mut String) {
    let _ = writeln!(out, "class: ({}, {})", r.from, r.target);
    let head: Vec<String> = r
        .s_trace
        .iter()
        .take(6)
        .map(|p| format!("s={}: {}", p.s, p.value.render()))
        .collect();
    let _ = writeln!(
        out,
        "||A||^(s): {}{}",
        head.join(", "),
        if r.s_trace.len() > 6 { ", ..." } else { "" }
    );
    let _ = writeln!(
        out,
        "limit estimate: {} ({})",
        r.limit_estimate.render(),
        if r.limit_stabilized {
            "stabilized"
        } else {
            "not stabilized"
        }
    );
    let _ = writeln!(
        out,
        "chi bounds: [{}, {}]",
        r.bounds.lower.render(),
        r.bounds.upper.render()
    );
    let _ = writeln!(out, "classification: {}", classification(r.classification));
    if let Some(rank) = r.rank {
        let _ = writeln!(
            out,
            "rank: {rank}{}",
            if r.rank_shortcut_used {
                " (finite-rank shortcut)"
            } else {
                ""
            }
        );
    }
    for d in &r.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
}

impl<T: Scalar> Report<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "task: {} ({} mode)", self.task, self.mode);
        let _ = writeln!(
            out,
            "config: depth {}, window {}, tol {}",
            c.depth,
            c.window,
            c.tol.render()
        );
        match &self.result {
            Outcome::Values { name, values } => {
                for v in values {
                    let _ = writeln!(out, "{name}_{} = {}", v.index, v.value.render());
                }
            }
            Outcome::Verdict { verdict, attainment } => {
                verdict_lines(verdict, 0, &mut out);
                if let Some(a) = attainment {
                    let _ = writeln!(
                        out,
                        "attained at row {}: {} (row sum {})",
                        a.row,
                        a.value.render(),
                        a.row_abs_sum.render()
                    );
                    let _ = writeln!(out, "  signs: {}", join(&a.signs));
                    let _ = writeln!(out, "  x: {}", join(&a.x));
                }
            }
            Outcome::Composed { rows, verdict } => {
                for r in rows {
                    let _ = writeln!(out, "B_{} = {}", r.row, join(&r.values));
                }
                if let Some(v) = verdict {
                    verdict_lines(v, 0, &mut out);
                }
            }
            Outcome::Mnc { report } => mnc_lines(report, &mut out),
            Outcome::Repro(r) => {
                verdict_lines(&r.class_check, 0, &mut out);
                mnc_lines(&r.mnc, &mut out);
                let _ = writeln!(out, "computed limit: {}", r.computed_limit.render());
                let _ = writeln!(out, "reported limit: {}", r.reported_limit);
                let _ = writeln!(out, "reported tail formula: {}", r.reported_tail_formula);
            }
        }
        out
    }
}
