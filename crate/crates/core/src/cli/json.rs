//! JSON documents emitted with `--json` and by `sweep`.
//!
//! Every rational travels as a string, `"n"` or `"n/d"`, so a document can be
//! read back without any loss.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::codim4::ClosedFormDecomposition;
use crate::diagram::{Diagram, Pos};
use crate::greedy::{Decomposition, EliminationRecord, Term};
use crate::rational::{self, Rational};
use crate::recursive::{ConjectureReport, Flags, RecursiveReport};

pub const SCHEMA_VERSION: &str = "1";
pub const COORDS: &str = "column-degree";

/// An exact rational carried as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        rational::parse(&s)
            .map(Q)
            .ok_or_else(|| de::Error::custom(format!("not an exact rational: {s:?}")))
    }
}

impl From<&Rational> for Q {
    fn from(q: &Rational) -> Self {
        Q(q.clone())
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().map(Q::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    /// The arguments after the program name.
    pub command: Vec<String>,
    pub payload: Payload,
}

impl OutputDocument {
    pub fn new(command: &[String], payload: Payload) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_vec(),
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

/// Reads a document back, rejecting unknown schema versions.
pub fn parse_document(text: &str) -> Result<OutputDocument, String> {
    let doc: OutputDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema_version {:?}",
            doc.schema_version
        ));
    }
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Diagram(DiagramDoc),
    Decomposition(DecompositionDoc),
    Recursive(Box<RecursiveDoc>),
    Bound(BoundDoc),
    Codim4(Codim4Doc),
    Conjecture(ConjectureDoc),
    SweepSummary(SweepSummary),
    Counterexample(Counterexample),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PosDoc {
    pub column: usize,
    pub degree: i64,
}

impl From<Pos> for PosDoc {
    fn from(p: Pos) -> Self {
        Self {
            column: p.column,
            degree: p.degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub column: usize,
    pub degree: i64,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub tuple: Vec<i64>,
    pub coords: String,
    pub columns: usize,
    pub entries: Vec<EntryDoc>,
}

impl DiagramDoc {
    pub fn new(tuple: &[i64], d: &Diagram) -> Self {
        Self {
            tuple: tuple.to_vec(),
            coords: COORDS.to_string(),
            columns: d.columns(),
            entries: d
                .iter()
                .map(|(p, v)| EntryDoc {
                    column: p.column,
                    degree: p.degree,
                    value: v.into(),
                })
                .collect(),
        }
    }

    pub fn to_diagram(&self) -> crate::Result<Diagram> {
        Diagram::new(
            self.columns,
            self.entries
                .iter()
                .map(|e| (e.column, e.degree, e.value.0.clone())),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coefficient: Q,
    pub seq: Vec<i64>,
}

impl From<&Term> for TermDoc {
    fn from(t: &Term) -> Self {
        Self {
            coefficient: (&t.coefficient).into(),
            seq: t.seq.as_slice().to_vec(),
        }
    }
}

impl TermDoc {
    pub fn to_term(&self) -> crate::Result<Term> {
        Ok(Term {
            coefficient: self.coefficient.0.clone(),
            seq: crate::DegreeSequence::new(self.seq.clone())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub step: usize,
    pub positions: Vec<PosDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub tuple: Vec<i64>,
    pub coords: String,
    pub terms: Vec<TermDoc>,
    pub elimination: Vec<StepDoc>,
    pub elimination_size: usize,
    /// 1-based step and position count of the first mass elimination.
    pub mass_elimination: Option<(usize, usize)>,
}

fn steps(record: &EliminationRecord) -> Vec<StepDoc> {
    record
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| StepDoc {
            step: k + 1,
            positions: s.positions.iter().map(|&p| p.into()).collect(),
        })
        .collect()
}

impl DecompositionDoc {
    pub fn new(tuple: &[i64], dec: &Decomposition, record: &EliminationRecord) -> Self {
        Self {
            tuple: tuple.to_vec(),
            coords: COORDS.to_string(),
            terms: dec.terms.iter().map(TermDoc::from).collect(),
            elimination: steps(record),
            elimination_size: record.size(),
            mass_elimination: record.first_mass_elimination(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursiveTermDoc {
    pub phase: u8,
    pub coefficient: Q,
    pub seq: Vec<i64>,
    pub target: PosDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsDoc {
    pub is_chain: bool,
    pub all_positive: bool,
    pub has_zero: bool,
    pub palindromic: bool,
    pub agrees_with_standard: bool,
    pub compatible_order: bool,
}

impl From<&Flags> for FlagsDoc {
    fn from(f: &Flags) -> Self {
        Self {
            is_chain: f.is_chain,
            all_positive: f.all_positive,
            has_zero: f.has_zero,
            palindromic: f.palindromic,
            agrees_with_standard: f.agrees_with_standard,
            compatible_order: f.compatible_order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursiveDoc {
    pub base: Vec<i64>,
    pub a_next: i64,
    pub coords: String,
    pub terms: Vec<RecursiveTermDoc>,
    /// Term counts after Phase 1 and after Phase 2.
    pub phase_boundaries: (usize, usize),
    pub error_is_zero: bool,
    pub base_coefficients: Vec<Q>,
    pub remainders: Vec<Q>,
    pub stability_bound: Q,
    pub above_bound: bool,
    pub flags: FlagsDoc,
    pub standard_terms: Vec<TermDoc>,
}

impl From<&RecursiveReport> for RecursiveDoc {
    fn from(r: &RecursiveReport) -> Self {
        Self {
            base: r.base.degrees().to_vec(),
            a_next: r.a_next,
            coords: COORDS.to_string(),
            terms: r
                .terms
                .iter()
                .map(|t| RecursiveTermDoc {
                    phase: t.phase as u8,
                    coefficient: (&t.coefficient).into(),
                    seq: t.seq.as_slice().to_vec(),
                    target: t.target.into(),
                })
                .collect(),
            phase_boundaries: r.phase_boundaries,
            error_is_zero: r.error_diagram.is_zero(),
            base_coefficients: qs(&r.base_coefficients),
            remainders: qs(&r.remainders),
            stability_bound: (&r.stability_bound).into(),
            above_bound: r.above_bound(),
            flags: (&r.flags).into(),
            standard_terms: r.standard.terms.iter().map(TermDoc::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub tuple: Vec<i64>,
    pub coefficients: Vec<Q>,
    pub remainders: Vec<Q>,
    pub ratios: Vec<Q>,
    pub stability_bound: Q,
}

impl BoundDoc {
    pub fn new(
        tuple: &[i64],
        coefficients: &[Rational],
        remainders: &[Rational],
        ratios: &[Rational],
        bound: &Rational,
    ) -> Self {
        Self {
            tuple: tuple.to_vec(),
            coefficients: qs(coefficients),
            remainders: qs(remainders),
            ratios: qs(ratios),
            stability_bound: bound.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codim4Doc {
    pub tuple: Vec<i64>,
    pub case: String,
    pub codim3_case: String,
    pub bound: Q,
    pub bound_inclusive: bool,
    pub certified: bool,
    pub terms: Vec<TermDoc>,
    pub agrees_with_decompose: bool,
    /// `None` when the recursive algorithm does not complete.
    pub agrees_with_recursive: Option<bool>,
}

impl Codim4Doc {
    pub fn new(
        tuple: &[i64],
        form: &ClosedFormDecomposition,
        agrees_with_decompose: bool,
        agrees_with_recursive: Option<bool>,
    ) -> Self {
        let bound = form
            .bound
            .as_ref()
            .expect("codimension-four forms carry a bound");
        Self {
            tuple: tuple.to_vec(),
            case: form.codim4_case.map(|c| c.to_string()).unwrap_or_default(),
            codim3_case: form.case.to_string(),
            bound: (&bound.value).into(),
            bound_inclusive: bound.inclusive,
            certified: form.certified,
            terms: form.terms.iter().map(TermDoc::from).collect(),
            agrees_with_decompose,
            agrees_with_recursive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRowDoc {
    pub index: usize,
    pub predicted: Q,
    pub actual: Q,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureDoc {
    pub base: Vec<i64>,
    pub a_next: i64,
    pub stability_bound: Q,
    pub bound_met: bool,
    pub rows: Vec<ConjectureRowDoc>,
    pub holds: bool,
}

impl From<&ConjectureReport> for ConjectureDoc {
    fn from(c: &ConjectureReport) -> Self {
        Self {
            base: c.base.degrees().to_vec(),
            a_next: c.a_next,
            stability_bound: (&c.stability_bound).into(),
            bound_met: c.bound_met,
            rows: c
                .rows
                .iter()
                .map(|r| ConjectureRowDoc {
                    index: r.index,
                    predicted: (&r.predicted).into(),
                    actual: (&r.actual).into(),
                    holds: r.holds(),
                })
                .collect(),
            holds: c.holds(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub codim: usize,
    pub max_degree: i64,
    pub next_range: i64,
    pub bases: usize,
    pub runs: usize,
    pub completed: usize,
    pub degenerate: usize,
    pub mass_elimination: usize,
    pub above_bound: usize,
    pub conjecture_rows: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub base: Vec<i64>,
    /// Absent for properties of the base tuple alone.
    pub a_next: Option<i64>,
    pub property: String,
    pub detail: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn rationals_round_trip_as_strings() {
        let q = Q(frac(-1, 48));
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, "\"-1/48\"");
        assert_eq!(serde_json::from_str::<Q>(&text).unwrap(), q);
        assert_eq!(serde_json::to_string(&Q(frac(6, 3))).unwrap(), "\"2\"");
        assert!(serde_json::from_str::<Q>("\"1/0\"").is_err());
        assert!(serde_json::from_str::<Q>("\"0.5\"").is_err());
    }

    #[test]
    fn schema_version_is_checked() {
        let doc = OutputDocument::new(&[], Payload::SweepSummary(SweepSummary::default()));
        assert_eq!(parse_document(&doc.to_json()).unwrap(), doc);
        let bumped = doc.to_json().replace("\"1\"", "\"9\"");
        assert!(parse_document(&bumped).is_err());
    }
}
