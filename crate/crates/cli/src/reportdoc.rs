//! Rendering of check reports and numeric summaries, in text or JSON with
//! stable key order. Timing is opt-in so default output stays
//! byte-deterministic.

use liegeo::invariants::StructureInvariants;
use liegeo::numcone::{InvarianceReport, PotentialKind, ReadingsReport, ScalingReport};
use liegeo::scalar::Rat;
use liegeo::{CheckReport, Verdict};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct ViolationDoc {
    identity: String,
    witness: Vec<usize>,
    left: String,
    right: String,
}

#[derive(Serialize)]
pub struct ReportDocument {
    op: String,
    verdict: String,
    violations: Vec<ViolationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

impl ReportDocument {
    pub fn new(op: &str, report: &CheckReport, timing_ms: Option<u128>) -> Self {
        Self {
            op: op.to_string(),
            verdict: verdict_str(report.verdict()).to_string(),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    identity: v.identity.clone(),
                    witness: v.witness.clone(),
                    left: v.left.clone(),
                    right: v.right.clone(),
                })
                .collect(),
            timing_ms,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serialization");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("{}: {}\n", self.op, self.verdict);
                for v in &self.violations {
                    let idx: Vec<String> = v.witness.iter().map(|i| i.to_string()).collect();
                    out.push_str(&format!(
                        "  {} violated at ({}): left = {}, right = {}\n",
                        v.identity,
                        idx.join(","),
                        v.left,
                        v.right
                    ));
                }
                if let Some(ms) = self.timing_ms {
                    out.push_str(&format!("  elapsed: {} ms\n", ms));
                }
                out
            }
        }
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn signature_str(sig: (usize, usize, usize)) -> String {
    format!("(+{}, -{}, 0:{})", sig.0, sig.1, sig.2)
}

pub fn render_invariants(inv: &StructureInvariants<Rat>, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                derived_dims: Vec<usize>,
                lower_central_dims: Vec<usize>,
                solvable: bool,
                nilpotent: bool,
                unimodular: bool,
                semisimple: bool,
                killing: Vec<Vec<String>>,
                killing_signature: (usize, usize, usize),
            }
            let killing = (0..inv.killing.rows())
                .map(|r| (0..inv.killing.cols()).map(|c| inv.killing.get(r, c).to_string()).collect())
                .collect();
            let doc = Doc {
                derived_dims: inv.derived_dims.clone(),
                lower_central_dims: inv.lower_central_dims.clone(),
                solvable: inv.solvable,
                nilpotent: inv.nilpotent,
                unimodular: inv.unimodular,
                semisimple: inv.semisimple,
                killing,
                killing_signature: inv.killing_signature,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("invariants serialization");
            s.push('\n');
            s
        }
        Format::Text => {
            let join = |v: &[usize]| {
                v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ⊇ ")
            };
            format!(
                "derived series dims: {}\nlower central series dims: {}\nsolvable: {}\nnilpotent: {}\nunimodular: {}\nsemisimple: {}\nkilling signature: {}\n",
                join(&inv.derived_dims),
                join(&inv.lower_central_dims),
                inv.solvable,
                inv.nilpotent,
                inv.unimodular,
                inv.semisimple,
                signature_str(inv.killing_signature),
            )
        }
    }
}

fn kind_str(kind: PotentialKind) -> &'static str {
    match kind {
        PotentialKind::LogChar => "log_char",
        PotentialKind::Char => "char",
        PotentialKind::ConePower => "cone_power",
    }
}

pub fn render_invariance(report: &InvarianceReport, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                check: &'static str,
                n: usize,
                samples: usize,
                seed: u64,
                tol: f64,
                max_rel_err: f64,
                verdict: &'static str,
            }
            let doc = Doc {
                check: "congruence_invariance",
                n: report.n,
                samples: report.samples,
                seed: report.seed,
                tol: report.tol,
                max_rel_err: report.max_rel_err,
                verdict: if report.pass() { "pass" } else { "fail" },
            };
            let mut s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
            s
        }
        Format::Text => format!(
            "congruence invariance of the log-char Hessian (n = {}, {} samples, seed {}):\n  max relative error {:.3e} against tolerance {:.1e}: {}\n",
            report.n,
            report.samples,
            report.seed,
            report.max_rel_err,
            report.tol,
            if report.pass() { "pass" } else { "fail" },
        ),
    }
}

pub fn render_scaling(reports: &[ScalingReport], readings: &ReadingsReport, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                q: f64,
                max_rel_err: f64,
                all_positive_definite: bool,
                verdict: &'static str,
            }
            #[derive(Serialize)]
            struct Reading {
                kind: &'static str,
                conical_claim_err: f64,
                invariance_err: f64,
            }
            #[derive(Serialize)]
            struct Doc {
                check: &'static str,
                verdict: &'static str,
                n: usize,
                samples: usize,
                seed: u64,
                tol: f64,
                rows: Vec<Row>,
                readings: Vec<Reading>,
                conical_reading: &'static str,
            }
            let doc = Doc {
                check: "conical_scaling",
                verdict: if reports.iter().all(|r| r.pass()) { "pass" } else { "fail" },
                n: readings.n,
                samples: readings.samples,
                seed: readings.seed,
                tol: reports.first().map(|r| r.tol).unwrap_or(0.0),
                rows: reports
                    .iter()
                    .map(|r| Row {
                        q: r.q,
                        max_rel_err: r.max_rel_err,
                        all_positive_definite: r.all_positive_definite,
                        verdict: if r.pass() { "pass" } else { "fail" },
                    })
                    .collect(),
                readings: readings
                    .readings
                    .iter()
                    .map(|r| Reading {
                        kind: kind_str(r.kind),
                        conical_claim_err: r.claim_err,
                        invariance_err: r.invariance_err,
                    })
                    .collect(),
                conical_reading: "cone_power",
            };
            let mut s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!(
                "conical scaling of the degree-2 cone power (n = {}, {} samples, seed {}):\n",
                readings.n, readings.samples, readings.seed
            );
            for r in reports {
                out.push_str(&format!(
                    "  q = {:>4}: max relative error {:.3e} against {:.1e}: {} (Hessian positive definite at all samples: {})\n",
                    r.q,
                    r.max_rel_err,
                    r.tol,
                    if r.pass() { "pass" } else { "fail" },
                    r.all_positive_definite,
                ));
            }
            out.push_str("readings of the dilation behaviour per potential:\n");
            for r in &readings.readings {
                out.push_str(&format!(
                    "  {:>10}: q²-conical claim err {:.3e}, invariance err {:.3e}\n",
                    kind_str(r.kind),
                    r.claim_err,
                    r.invariance_err
                ));
            }
            out.push_str(
                "the q²-conical claim holds for the degree-2 power of the characteristic function (cone_power); the log-char Hessian is dilation-invariant instead; the plain characteristic function satisfies neither\n",
            );
            out
        }
    }
}

pub fn csv_rows(rows: &[liegeo::numcone::SampleRow]) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        return out;
    }
    let nc = rows[0].coords.len();
    let nm = rows[0].metric.len();
    let mut header: Vec<String> = (1..=nc).map(|i| format!("x{}", i)).collect();
    header.extend((1..=nm).map(|i| format!("g{}", i)));
    header.push("rel_err".into());
    header.push("positive_definite".into());
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let mut fields: Vec<String> = row.coords.iter().map(|v| format!("{:.17e}", v)).collect();
        fields.extend(row.metric.iter().map(|v| format!("{:.17e}", v)));
        fields.push(format!("{:.3e}", row.rel_err));
        fields.push(row.positive_definite.to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
