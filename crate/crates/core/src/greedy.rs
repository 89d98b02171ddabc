//! The greedy totally ordered decomposition and its elimination record.
//!
//! Each step takes the minimal degree sequence `d` of the running diagram,
//! subtracts the largest multiple of `π(d)` that keeps every entry
//! nonnegative, and records which positions became zero. A step that zeroes
//! several positions is a tie in the column ratios; the whole tie set is
//! kept as one step.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::diagram::{Diagram, Pos};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::{self, pure_diagram, pure_value, DegreeSequence};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub coefficient: Rational,
    pub seq: DegreeSequence,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.seq.as_slice().iter().map(i64::to_string).collect();
        write!(f, "{} * pi({})", self.coefficient, s.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub columns: usize,
    pub terms: Vec<Term>,
}

impl Decomposition {
    pub fn sequences(&self) -> Vec<DegreeSequence> {
        self.terms.iter().map(|t| t.seq.clone()).collect()
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.coefficient.clone()).collect()
    }

    /// Terms in canonical order with zero coefficients removed and equal
    /// sequences merged.
    pub fn normalized_terms(&self) -> Vec<Term> {
        normalize_terms(self.terms.iter().cloned())
    }

    pub fn is_chain(&self) -> bool {
        sequence::is_chain(&self.sequences()).unwrap_or(false)
    }

    /// Coefficients read the same both ways and `seq_s` is the check-dual
    /// of its mirror partner.
    pub fn is_symmetric(&self) -> bool {
        let n = self.terms.len();
        (0..n).all(|s| {
            let (t, u) = (&self.terms[s], &self.terms[n - 1 - s]);
            t.coefficient == u.coefficient && u.seq.check_dual().is_ok_and(|d| d == t.seq)
        })
    }
}

/// Sums coefficients of equal sequences, drops zeros, and sorts by sequence.
pub fn normalize_terms(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut merged: BTreeMap<DegreeSequence, Rational> = BTreeMap::new();
    for t in terms {
        *merged.entry(t.seq).or_insert_with(Rational::zero) += t.coefficient;
    }
    merged
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(seq, coefficient)| Term { coefficient, seq })
        .collect()
}

/// Data kept for a step that zeroes a single position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pivot {
    pub pos: Pos,
    /// The source diagram's entry at `pos`.
    pub value: Rational,
    /// `π(d^s)` at `pos`.
    pub pure_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    pub positions: BTreeSet<Pos>,
    pub pivot: Option<Pivot>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationRecord {
    pub table: BTreeMap<Pos, usize>,
    pub steps: Vec<EliminationStep>,
}

impl EliminationRecord {
    /// `elimsize`, the number of pure diagrams used.
    pub fn size(&self) -> usize {
        self.steps.len()
    }

    /// Position sets by step, starting with step 1 at index 0.
    pub fn order(&self) -> Vec<BTreeSet<Pos>> {
        self.steps.iter().map(|s| s.positions.clone()).collect()
    }

    /// The first non-final step zeroing two or more positions, as
    /// `(step, count)` with 1-based step.
    pub fn first_mass_elimination(&self) -> Option<(usize, usize)> {
        let m = self.steps.len();
        self.steps
            .iter()
            .enumerate()
            .take(m.saturating_sub(1))
            .find(|(_, s)| s.positions.len() > 1)
            .map(|(k, s)| (k + 1, s.positions.len()))
    }

    pub fn has_mass_elimination(&self) -> bool {
        self.first_mass_elimination().is_some()
    }

    /// The order in display coordinates `(degree - column, degree)`.
    pub fn display_order(&self) -> Vec<Vec<(i64, i64)>> {
        self.steps
            .iter()
            .map(|s| s.positions.iter().map(|p| (p.row(), p.degree)).collect())
            .collect()
    }

    /// The table in display layout, rows by `degree - column`.
    pub fn render_table(&self, columns: usize) -> String {
        let rows = self.table.keys().map(Pos::row);
        let range = rows.clone().min().zip(rows.max());
        let mut out = String::new();
        crate::diagram::render_grid(&mut out, columns, range, |pos| {
            self.table
                .get(&pos)
                .map_or_else(|| ".".to_string(), |k| k.to_string())
        })
        .expect("writing to a String");
        out
    }
}

/// Runs the greedy decomposition on `d`.
pub fn decompose(d: &Diagram) -> Result<(Decomposition, EliminationRecord)> {
    if let Some(pos) = d.first_negative() {
        return Err(Error::NegativeEntry(pos));
    }
    let mut running = d.clone();
    let mut terms = Vec::new();
    let mut steps = Vec::new();
    let mut table = BTreeMap::new();
    while !running.is_zero() {
        let seq = running.min_degree_sequence()?;
        let ratios: Vec<(Pos, Rational)> = (0..seq.len())
            .map(|i| {
                let pos = Pos::new(i, seq.get(i));
                (pos, running.get(pos) / pure_value(&seq, i))
            })
            .collect();
        let q = ratios
            .iter()
            .map(|(_, r)| r)
            .min()
            .cloned()
            .expect("sequences have at least one entry");
        let positions: BTreeSet<Pos> = ratios
            .iter()
            .filter(|(_, r)| *r == q)
            .map(|(p, _)| *p)
            .collect();
        running.add_scaled(&-q.clone(), &pure_diagram(&seq));
        debug_assert!(running.first_negative().is_none());
        debug_assert!(positions.iter().all(|p| running.get(*p).is_zero()));

        let step = steps.len() + 1;
        for p in &positions {
            table.insert(*p, step);
        }
        let pivot = (positions.len() == 1).then(|| {
            let pos = *positions.iter().next().unwrap();
            Pivot {
                pos,
                value: d.get(pos),
                pure_value: pure_value(&seq, pos.column),
            }
        });
        steps.push(EliminationStep { positions, pivot });
        terms.push(Term {
            coefficient: q,
            seq,
        });
    }
    debug_assert!(terms.iter().all(|t| t.coefficient.is_positive()));
    Ok((
        Decomposition {
            columns: d.columns(),
            terms,
        },
        EliminationRecord { table, steps },
    ))
}

pub fn elimination_order(d: &Diagram) -> Result<Vec<BTreeSet<Pos>>> {
    Ok(decompose(d)?.1.order())
}

pub fn has_mass_elimination(d: &Diagram) -> Result<bool> {
    Ok(decompose(d)?.1.has_mass_elimination())
}

/// `Σ coefficient · π(seq)`.
pub fn recompose(dec: &Decomposition) -> Diagram {
    let mut out = Diagram::zero(dec.columns);
    for t in &dec.terms {
        out.add_scaled(&t.coefficient, &pure_diagram(&t.seq));
    }
    out
}
