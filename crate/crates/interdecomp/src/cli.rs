//! Command-line front end: loads a JSON input, decides decomposability,
//! and writes a deterministic report.
//!
//! Two subcommands share one engine: `check` and `decompose` both decide
//! the question and, because a `decomposable` verdict is only ever issued
//! together with a certified construction, both carry the full payload on
//! success. Exit codes: `0` decomposable, `1` not decomposable, `2`
//! invalid input.
//!
//! Report JSON has exactly the keys `verdict`, `witnesses`,
//! `decomposition`, and `dims` (plus `error` for invalid input), with
//! canonical ordering throughout, so identical inputs produce identical
//! bytes. Timing and a command echo go to stderr, never into the report.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;

use crate::io::{family_from_str, measure_from_str, split_from_str};
use crate::linalg::{format_rat, Matrix};
use crate::poset::TOP_ID;
use crate::projectors::{Decomposition, ProjectorFamily};
use crate::split_functors::{SplitDecomposition, SplitFunctor};

/// Decides whether projector families, measures, and split functors
/// decompose into interaction subspaces.
#[derive(Debug, Parser)]
#[command(name = "interdecomp", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide decomposability and report witnesses.
    Check(RunArgs),
    /// Decide decomposability and emit the full decomposition.
    Decompose(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Path of the JSON input file.
    #[arg(long)]
    pub input: PathBuf,

    /// Output path; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Input schema kind.
    #[arg(long, value_enum)]
    pub kind: Kind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Projector family over a poset.
    Projectors,
    /// Measure on a finite product space.
    Measure,
    /// Split functor given by covering-pair arrow generators.
    Split,
}

pub const EXIT_DECOMPOSABLE: i32 = 0;
pub const EXIT_NOT_DECOMPOSABLE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "decomposable")]
    Decomposable,
    #[serde(rename = "not-decomposable")]
    NotDecomposable,
    #[serde(rename = "invalid-input")]
    InvalidInput,
}

/// One failing pair; `alpha` locates the level for split-functor inputs.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub pair: (String, String),
}

/// The constructed decomposition, in wire form.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    /// For projector families and measures: interaction terms and the
    /// row-reduced basis of each interaction subspace, keyed by element
    /// with the residual under `⊤`.
    Family {
        s: IndexMap<String, Vec<Vec<String>>>,
        subspaces: IndexMap<String, Vec<Vec<String>>>,
    },
    /// For split functors: component dimensions, component bases inside
    /// the top space of each element, and the change-of-basis `ψ(α)`.
    Split {
        component_dims: IndexMap<String, usize>,
        component_bases: IndexMap<String, Vec<Vec<String>>>,
        psi: IndexMap<String, Vec<Vec<String>>>,
    },
}

/// Wire report: exactly these keys, `null` for absent parts, plus `error`
/// only when the input was rejected.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub witnesses: Option<Vec<Witness>>,
    pub decomposition: Option<Payload>,
    pub dims: Option<IndexMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Decomposable => EXIT_DECOMPOSABLE,
            Verdict::NotDecomposable => EXIT_NOT_DECOMPOSABLE,
            Verdict::InvalidInput => EXIT_INVALID_INPUT,
        }
    }

    fn invalid(error: String) -> Report {
        Report {
            verdict: Verdict::InvalidInput,
            witnesses: None,
            decomposition: None,
            dims: None,
            error: Some(error),
        }
    }

    fn not_decomposable(witnesses: Vec<Witness>) -> Report {
        Report {
            verdict: Verdict::NotDecomposable,
            witnesses: Some(witnesses),
            decomposition: None,
            dims: None,
            error: None,
        }
    }

    /// Renders the JSON wire form (canonical, newline-terminated).
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Renders the human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Verdict::Decomposable => "decomposable",
            Verdict::NotDecomposable => "not-decomposable",
            Verdict::InvalidInput => "invalid-input",
        };
        out.push_str(&format!("verdict: {verdict}\n"));
        if let Some(err) = &self.error {
            out.push_str(&format!("error: {err}\n"));
        }
        if let Some(witnesses) = &self.witnesses {
            for w in witnesses {
                match &w.alpha {
                    Some(alpha) => out.push_str(&format!(
                        "witness at {alpha}: ({}, {})\n",
                        w.pair.0, w.pair.1
                    )),
                    None => out.push_str(&format!("witness: ({}, {})\n", w.pair.0, w.pair.1)),
                }
            }
        }
        if let Some(dims) = &self.dims {
            for (id, d) in dims {
                out.push_str(&format!("dim {id}: {d}\n"));
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rat).collect())
        .collect()
}

fn family_report(family: &ProjectorFamily) -> Report {
    match family.decompose() {
        Ok(d) => decomposition_report(family, &d),
        Err(_) => Report::not_decomposable(
            family
                .intersection_witnesses()
                .into_iter()
                .map(|(left, right)| Witness {
                    alpha: None,
                    pair: (left, right),
                })
                .collect(),
        ),
    }
}

fn decomposition_report(family: &ProjectorFamily, d: &Decomposition) -> Report {
    let poset = family.poset();
    let terms = d.terms();
    let mut s = IndexMap::new();
    let mut subspaces = IndexMap::new();
    let mut dims = IndexMap::new();
    for (a, id) in poset.elements().iter().enumerate() {
        s.insert(id.clone(), matrix_rows(terms.term_idx(a)));
        subspaces.insert(id.clone(), matrix_rows(d.subspace_idx(a).basis()));
        dims.insert(id.clone(), d.subspace_idx(a).dim());
    }
    s.insert(TOP_ID.to_string(), matrix_rows(terms.top()));
    subspaces.insert(TOP_ID.to_string(), matrix_rows(d.top_subspace().basis()));
    dims.insert(TOP_ID.to_string(), d.top_subspace().dim());
    Report {
        verdict: Verdict::Decomposable,
        witnesses: Some(Vec::new()),
        decomposition: Some(Payload::Family { s, subspaces }),
        dims: Some(dims),
        error: None,
    }
}

fn split_report(sf: &SplitFunctor) -> Report {
    match sf.decompose() {
        Ok(d) => split_decomposition_report(&d),
        Err(_) => Report::not_decomposable(
            sf.obstructions()
                .into_iter()
                .map(|w| Witness {
                    alpha: Some(w.alpha),
                    pair: (w.left, w.right),
                })
                .collect(),
        ),
    }
}

fn split_decomposition_report(d: &SplitDecomposition) -> Report {
    let poset = d.poset();
    let mut component_dims = IndexMap::new();
    let mut component_bases = IndexMap::new();
    let mut psi = IndexMap::new();
    for (a, id) in poset.elements().iter().enumerate() {
        component_dims.insert(id.clone(), d.component_dim_idx(a));
        component_bases.insert(id.clone(), matrix_rows(d.component_basis_idx(a).basis()));
        psi.insert(id.clone(), matrix_rows(d.psi_idx(a)));
    }
    Report {
        verdict: Verdict::Decomposable,
        witnesses: Some(Vec::new()),
        decomposition: Some(Payload::Split {
            component_dims: component_dims.clone(),
            component_bases,
            psi,
        }),
        dims: Some(component_dims),
        error: None,
    }
}

/// Builds the report for one input document. Never panics on bad input:
/// schema and structural violations become `invalid-input` reports.
pub fn report_for(kind: Kind, text: &str) -> Report {
    match kind {
        Kind::Projectors => match family_from_str(text) {
            Ok(family) => family_report(&family),
            Err(e) => Report::invalid(e.to_string()),
        },
        Kind::Measure => match measure_from_str(text) {
            Ok(measure) => family_report(&measure.projector_family()),
            Err(e) => Report::invalid(e.to_string()),
        },
        Kind::Split => match split_from_str(text) {
            Ok(sf) => split_report(&sf),
            Err(e) => Report::invalid(e.to_string()),
        },
    }
}

/// Runs one parsed invocation end to end and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let (label, args) = match &cli.command {
        Command::Check(args) => ("check", args),
        Command::Decompose(args) => ("decompose", args),
    };
    let started = Instant::now();
    let report = match fs::read_to_string(&args.input) {
        Ok(text) => report_for(args.kind, &text),
        Err(e) => Report::invalid(format!("cannot read `{}`: {e}", args.input.display())),
    };
    let rendered = report.render(args.format);
    let written = match &args.output {
        Some(path) => fs::write(path, rendered.as_bytes())
            .map_err(|e| format!("cannot write `{}`: {e}", path.display())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    };
    if let Err(e) = written {
        eprintln!("interdecomp {label}: {e}");
        return EXIT_INVALID_INPUT;
    }
    eprintln!(
        "interdecomp {label} --kind {} --input {}: {} in {:?}",
        match args.kind {
            Kind::Projectors => "projectors",
            Kind::Measure => "measure",
            Kind::Split => "split",
        },
        args.input.display(),
        match report.verdict {
            Verdict::Decomposable => "decomposable",
            Verdict::NotDecomposable => "not-decomposable",
            Verdict::InvalidInput => "invalid input",
        },
        started.elapsed(),
    );
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_two_bits() -> &'static str {
        r#"{
            "factors": {"1": 2, "2": 2},
            "weights": {"0,0": "1/4", "0,1": "1/4", "1,0": "1/4", "1,1": "1/4"}
        }"#
    }

    fn coupled_two_bits() -> &'static str {
        r#"{
            "factors": {"1": 2, "2": 2},
            "weights": {"0,0": "1/2", "1,1": "1/2"}
        }"#
    }

    #[test]
    fn uniform_measure_reports_four_unit_subspaces() {
        let report = report_for(Kind::Measure, uniform_two_bits());
        assert_eq!(report.verdict, Verdict::Decomposable);
        assert_eq!(report.exit_code(), EXIT_DECOMPOSABLE);
        let dims = report.dims.as_ref().unwrap();
        let got: Vec<(&str, usize)> = dims.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        assert_eq!(
            got,
            vec![("{}", 1), ("{1}", 1), ("{2}", 1), ("{1,2}", 1), (TOP_ID, 0)]
        );
        match report.decomposition.as_ref().unwrap() {
            Payload::Family { s, subspaces } => {
                assert_eq!(s.len(), 5);
                assert_eq!(subspaces.len(), 5);
            }
            Payload::Split { .. } => panic!("family payload expected"),
        }
    }

    #[test]
    fn coupled_measure_reports_the_witness_pair_and_no_payload() {
        let report = report_for(Kind::Measure, coupled_two_bits());
        assert_eq!(report.verdict, Verdict::NotDecomposable);
        assert_eq!(report.exit_code(), EXIT_NOT_DECOMPOSABLE);
        assert!(report.decomposition.is_none());
        assert!(report.dims.is_none());
        let witnesses = report.witnesses.as_ref().unwrap();
        assert!(witnesses
            .iter()
            .any(|w| w.pair == ("{1}".to_string(), "{2}".to_string())));
        let json = report.to_json();
        assert!(json.contains("\"decomposition\": null"));
        assert!(json.contains("\"dims\": null"));
        assert!(!json.contains("\"error\""));
    }

    #[test]
    fn invalid_input_reports_error_and_exit_code_two() {
        let report = report_for(Kind::Projectors, "{not json");
        assert_eq!(report.verdict, Verdict::InvalidInput);
        assert_eq!(report.exit_code(), EXIT_INVALID_INPUT);
        assert!(report.error.is_some());
        assert!(report.to_json().contains("\"error\""));

        // Structurally invalid: a non-idempotent projector.
        let bad = r#"{
            "poset": {"elements": ["a"], "leq": []},
            "dim": 1,
            "projectors": {"a": [["2"]]}
        }"#;
        let report = report_for(Kind::Projectors, bad);
        assert_eq!(report.verdict, Verdict::InvalidInput);
    }

    #[test]
    fn report_json_is_deterministic_and_has_fixed_keys() {
        let a = report_for(Kind::Measure, uniform_two_bits()).to_json();
        let b = report_for(Kind::Measure, uniform_two_bits()).to_json();
        assert_eq!(a, b);
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["verdict", "witnesses", "decomposition", "dims"]);
    }

    #[test]
    fn text_rendering_summarizes_verdict_and_dims() {
        let text = report_for(Kind::Measure, uniform_two_bits()).to_text();
        assert!(text.starts_with("verdict: decomposable\n"));
        assert!(text.contains("dim {1}: 1"));
        let text = report_for(Kind::Measure, coupled_two_bits()).to_text();
        assert!(text.contains("witness: ({1}, {2})"));
    }
}
