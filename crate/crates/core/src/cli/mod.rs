//! Command-line front end for the `bs-decomp` binary.
//!
//! [`run`] takes the full argument vector and two writers, and returns the
//! process exit code: 0 on success, 1 for a computation error, 2 for a usage
//! error and 3 when a sweep finds a counterexample.

pub mod json;
pub mod sweep;

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::codim4;
use crate::error::Error;
use crate::greedy::{self, normalize_terms, Term};
use crate::koszul::{betti_ci, DegreeTuple};
use crate::recursive::{self, BaseAnalysis};
use json::{
    BoundDoc, Codim4Doc, ConjectureDoc, DecompositionDoc, DiagramDoc, OutputDocument, Payload,
    RecursiveDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bs-decomp",
    version,
    about = "Boij-Söderberg decompositions of complete intersection Betti diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Betti table of a complete intersection.
    Betti {
        /// Degrees, comma- or space-separated.
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Greedy decomposition into pure diagrams.
    Decompose {
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Also print the step at which each position was eliminated.
        #[arg(long)]
        elim_table: bool,
    },
    /// Recursive decomposition of the tuple extended by one degree.
    Recursive {
        /// Base degrees followed by the new degree.
        #[arg(required = true, num_args = 2..)]
        args: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Remainders, ratios and stability bound of a base tuple.
    Bound {
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Closed form in codimension four, checked against both engines.
    Codim4 {
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compare Phase 2 coefficients with their predicted closed form.
    Conjecture {
        #[arg(required = true, num_args = 2..)]
        args: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check every property over all tuples of a codimension.
    Sweep {
        #[arg(long)]
        codim: usize,
        #[arg(long)]
        max_degree: i64,
        /// New degrees run up to the total degree plus this amount.
        #[arg(long, default_value_t = 5)]
        next_range: i64,
        /// Worker threads, 0 for one per core.
        #[arg(long, env = "BS_DECOMP_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Write JSON lines here instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    match dispatch(cli.command, &echo, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Computation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_COMPUTATION
        }
    }
}

/// Reads integers from arguments such as `2,3,4`, `"2 3 4"` or `2 3 4`.
pub fn parse_degrees(args: &[String]) -> std::result::Result<Vec<i64>, String> {
    let values: Vec<i64> = args
        .iter()
        .flat_map(|a| a.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| format!("not an integer: {s:?}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    if values.is_empty() {
        return Err("empty degree tuple".into());
    }
    Ok(values)
}

fn parse_tuple<E: Write>(
    args: &[String],
    err: &mut E,
) -> std::result::Result<DegreeTuple, Failure> {
    let raw = parse_degrees(args).map_err(Failure::Usage)?;
    let tuple = DegreeTuple::normalize(raw.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
    if tuple.degrees() != raw.as_slice() {
        let _ = writeln!(err, "note: degrees sorted to {tuple}");
    }
    Ok(tuple)
}

/// Splits `A... B` into the base tuple and the new degree.
fn parse_extension<E: Write>(
    args: &[String],
    err: &mut E,
) -> std::result::Result<(DegreeTuple, i64), Failure> {
    let mut raw = parse_degrees(args).map_err(Failure::Usage)?;
    let next = raw.pop().expect("parse_degrees is nonempty");
    if raw.is_empty() {
        return Err(Failure::Usage(
            "expected a base tuple and a new degree".into(),
        ));
    }
    let base = parse_tuple(
        &[raw.iter().map(i64::to_string).collect::<Vec<_>>().join(",")],
        err,
    )?;
    Ok((base, next))
}

fn emit<O: Write>(out: &mut O, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Computation(format!("writing output: {e}")))?;
    Ok(EXIT_OK)
}

fn terms_text(terms: &[Term]) -> String {
    terms.iter().map(|t| format!("{t}\n")).collect()
}

fn dispatch<O: Write, E: Write>(
    command: Command,
    echo: &[String],
    out: &mut O,
    err: &mut E,
) -> Outcome {
    match command {
        Command::Betti { tuple, json } => {
            let a = parse_tuple(&tuple, err)?;
            let d = betti_ci(&a);
            if json {
                let doc =
                    OutputDocument::new(echo, Payload::Diagram(DiagramDoc::new(a.degrees(), &d)));
                emit(out, &(doc.to_json() + "\n"))
            } else {
                emit(out, &d.to_string())
            }
        }
        Command::Decompose {
            tuple,
            json,
            elim_table,
        } => {
            let a = parse_tuple(&tuple, err)?;
            let d = betti_ci(&a);
            let (dec, record) = greedy::decompose(&d)?;
            if json {
                let payload =
                    Payload::Decomposition(DecompositionDoc::new(a.degrees(), &dec, &record));
                return emit(out, &(OutputDocument::new(echo, payload).to_json() + "\n"));
            }
            let mut text = terms_text(&dec.terms);
            if elim_table {
                let _ = writeln!(text, "\nelimination table (rows j-i):");
                text.push_str(&record.render_table(d.columns()));
                let _ = writeln!(text, "elimsize = {}", record.size());
                if let Some((step, count)) = record.first_mass_elimination() {
                    let _ = writeln!(text, "mass elimination at step {step} ({count} positions)");
                }
            }
            emit(out, &text)
        }
        Command::Recursive { args, json } => {
            let (a, next) = parse_extension(&args, err)?;
            let report = recursive::new_algorithm(&a, next)?;
            if json {
                let payload = Payload::Recursive(Box::new(RecursiveDoc::from(&report)));
                return emit(out, &(OutputDocument::new(echo, payload).to_json() + "\n"));
            }
            let mut text = String::new();
            let _ = writeln!(text, "base {a}, new degree {next}");
            for (s, t) in report.terms.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "y_{} = {} * pi{}  [phase {}, target {}]",
                    s + 1,
                    t.coefficient,
                    t.seq,
                    t.phase,
                    t.target
                );
            }
            let _ = writeln!(text, "remainders = {}", join(&report.remainders));
            let _ = writeln!(text, "stability_bound = {}", report.stability_bound);
            let _ = writeln!(
                text,
                "error diagram zero: {}",
                report.error_diagram.is_zero()
            );
            let f = &report.flags;
            let _ = writeln!(
                text,
                "chain: {}, positive: {}, zero coefficient: {}, palindromic: {}, agrees with greedy: {}, compatible order: {}",
                f.is_chain, f.all_positive, f.has_zero, f.palindromic, f.agrees_with_standard, f.compatible_order
            );
            emit(out, &text)
        }
        Command::Bound { tuple, json } => {
            let a = parse_tuple(&tuple, err)?;
            let base = BaseAnalysis::new(&a)?;
            let doc = BoundDoc::new(
                a.degrees(),
                &base.coefficients(),
                &base.remainders(),
                &base.ratios(),
                &base.stability_bound(),
            );
            if json {
                return emit(
                    out,
                    &(OutputDocument::new(echo, Payload::Bound(doc)).to_json() + "\n"),
                );
            }
            let mut text = String::new();
            let _ = writeln!(text, "coefficients = {}", join(&base.coefficients()));
            let _ = writeln!(text, "remainders = {}", join(&base.remainders()));
            let _ = writeln!(text, "ratios = {}", join(&base.ratios()));
            let _ = writeln!(text, "stability_bound = {}", base.stability_bound());
            emit(out, &text)
        }
        Command::Codim4 { tuple, json } => {
            let a = parse_tuple(&tuple, err)?;
            let &[a1, a2, a3, a4] = a.degrees() else {
                return Err(Failure::Usage(format!(
                    "expected four degrees, got {}",
                    a.codim()
                )));
            };
            let form = codim4::codim4_closed(a1, a2, a3, a4)?;
            let (standard, _) = greedy::decompose(&betti_ci(&a))?;
            let closed = normalize_terms(form.terms.iter().cloned());
            let agrees_greedy = closed == standard.normalized_terms();
            let base = DegreeTuple::normalize(vec![a1, a2, a3])?;
            let agrees_recursive = recursive::new_algorithm(&base, a4)
                .ok()
                .map(|r| normalize_terms(r.nonzero_terms()) == closed);
            let doc = Codim4Doc::new(a.degrees(), &form, agrees_greedy, agrees_recursive);
            if json {
                return emit(
                    out,
                    &(OutputDocument::new(echo, Payload::Codim4(doc)).to_json() + "\n"),
                );
            }
            let mut text = String::new();
            let bound = form
                .bound
                .as_ref()
                .expect("codimension-four forms carry a bound");
            let cmp = if bound.inclusive { ">=" } else { ">" };
            let _ = writeln!(
                text,
                "{} ({}), requires a4 {cmp} {}",
                doc.case, doc.codim3_case, bound.value
            );
            text.push_str(&terms_text(&form.terms));
            let _ = writeln!(text, "certified: {}", form.certified);
            let _ = writeln!(text, "agrees with greedy: {agrees_greedy}");
            let rec = agrees_recursive.map_or("not completed".to_string(), |b| b.to_string());
            let _ = writeln!(text, "agrees with recursive: {rec}");
            emit(out, &text)
        }
        Command::Conjecture { args, json } => {
            let (a, next) = parse_extension(&args, err)?;
            let report = recursive::conjecture_phase2(&a, next)?;
            if json {
                let payload = Payload::Conjecture(ConjectureDoc::from(&report));
                return emit(out, &(OutputDocument::new(echo, payload).to_json() + "\n"));
            }
            let mut text = String::new();
            let _ = writeln!(
                text,
                "stability_bound = {} ({})",
                report.stability_bound,
                if report.bound_met {
                    "exceeded"
                } else {
                    "not exceeded"
                }
            );
            if report.rows.is_empty() {
                let _ = writeln!(text, "no phase 2 terms");
            }
            for r in &report.rows {
                let verdict = if r.holds() { "ok" } else { "MISMATCH" };
                let _ = writeln!(
                    text,
                    "y_{}: predicted {}, actual {}  {verdict}",
                    r.index, r.predicted, r.actual
                );
            }
            emit(out, &text)
        }
        Command::Sweep {
            codim,
            max_degree,
            next_range,
            jobs,
            out: path,
        } => {
            if codim < 2 || max_degree < 1 {
                return Err(Failure::Usage(
                    "sweep needs --codim >= 2 and --max-degree >= 1".into(),
                ));
            }
            let config = sweep::SweepConfig {
                codim,
                max_degree,
                next_range,
                jobs,
            };
            let outcome = sweep::sweep(&config).map_err(Failure::Computation)?;
            let mut lines = String::new();
            for c in &outcome.counterexamples {
                let doc = OutputDocument::new(echo, Payload::Counterexample(c.clone()));
                lines.push_str(&(doc.to_json_line() + "\n"));
            }
            let summary = OutputDocument::new(echo, Payload::SweepSummary(outcome.summary.clone()));
            lines.push_str(&(summary.to_json_line() + "\n"));
            match path {
                Some(p) => {
                    std::fs::write(&p, &lines).map_err(|e| {
                        Failure::Computation(format!("writing {}: {e}", p.display()))
                    })?;
                    let s = &outcome.summary;
                    emit(
                        out,
                        &format!(
                            "{} bases, {} runs, {} completed, {} counterexamples\n",
                            s.bases, s.runs, s.completed, s.counterexamples
                        ),
                    )?;
                }
                None => {
                    emit(out, &lines)?;
                }
            }
            Ok(if outcome.counterexamples.is_empty() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
    }
}

fn join(values: &[crate::Rational]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("bs-decomp")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn degree_parsing() {
        let s = |v: &[&str]| parse_degrees(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        assert_eq!(s(&["2,3,4"]).unwrap(), vec![2, 3, 4]);
        assert_eq!(s(&["2 3", "4"]).unwrap(), vec![2, 3, 4]);
        assert!(s(&["2,x"]).is_err());
        assert!(s(&[","]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["decompose", "2,3,4"]).0, EXIT_OK);
        assert_eq!(call(&["decompose"]).0, EXIT_USAGE);
        assert_eq!(call(&["decompose", "2,0"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["recursive", "2,3,4", "3"]);
        assert_eq!(code, EXIT_COMPUTATION);
        assert!(err.contains("ANextTooSmall"), "{err}");
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn sorting_notice() {
        let (code, out, err) = call(&["decompose", "4,2,3"]);
        assert_eq!(code, EXIT_OK);
        assert!(err.contains("sorted to 2,3,4"));
        assert!(out.starts_with("42 * pi(0,2,5,9)"));
    }
}
