//! Decomposing `β(a_1, ..., a_c, a_{c+1})` from the greedy decomposition of
//! `β(a_1, ..., a_c)`.
//!
//! The run has three phases. Phase 1 extends each base sequence `d^s` by
//! `a + a_{c+1}` and eliminates the base's pivots in base order. Phase 2
//! walks columns `c-1, ..., 1` from right to left, replacing one entry of
//! the sequence per step. Phase 3 uses the check-duals of the Phase 1
//! sequences in reverse. Coefficients may be zero or negative when
//! `a_{c+1}` is small; above the stability bound the result is the
//! Boij-Söderberg decomposition itself.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::diagram::{Diagram, Pos};
use crate::error::{Error, Result};
use crate::greedy::{self, normalize_terms, Decomposition, EliminationRecord, Term};
use crate::koszul::{betti_ci, DegreeTuple};
use crate::rational::{int, Rational};
use crate::sequence::{self, pure_diagram, pure_entry, DegreeSequence};

/// The greedy decomposition of a base complete intersection together with
/// its per-step pivots `(i_s, j_s)`, `b_s` and `p_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAnalysis {
    pub tuple: DegreeTuple,
    pub diagram: Diagram,
    pub decomposition: Decomposition,
    pub record: EliminationRecord,
    pub pivots: Vec<BasePivot>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePivot {
    pub pos: Pos,
    pub value: Rational,
    pub pure_value: Rational,
}

impl BaseAnalysis {
    /// Fails when a non-final greedy step zeroes more than one position.
    pub fn new(tuple: &DegreeTuple) -> Result<Self> {
        let diagram = betti_ci(tuple);
        let (decomposition, record) = greedy::decompose(&diagram)?;
        if let Some((step, count)) = record.first_mass_elimination() {
            return Err(Error::MassEliminationUnsupported { step, count });
        }
        let m = record.size();
        let last = Pos::new(tuple.codim(), tuple.total());
        let pivots = decomposition
            .terms
            .iter()
            .zip(&record.steps)
            .enumerate()
            .map(|(s, (term, step))| {
                let pos = if s + 1 < m {
                    step.pivot.as_ref().expect("singleton step").pos
                } else {
                    last
                };
                BasePivot {
                    pos,
                    value: diagram.get(pos),
                    pure_value: pure_entry(&term.seq, pos),
                }
            })
            .collect();
        Ok(BaseAnalysis {
            tuple: tuple.clone(),
            diagram,
            decomposition,
            record,
            pivots,
        })
    }

    /// `m = elimsize`.
    pub fn size(&self) -> usize {
        self.pivots.len()
    }

    /// The coefficients `z_s`.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.decomposition.coefficients()
    }

    /// `r_1 = (j_1 - a) z_1` and
    /// `r_k = (j_k - a) b_k / p_k - Σ_{s<k} π(d^s)_{i_k,j_k} r_s / p_k`.
    pub fn remainders(&self) -> Vec<Rational> {
        let a = self.tuple.total();
        let mut r: Vec<Rational> = Vec::with_capacity(self.size());
        for (k, pivot) in self.pivots.iter().enumerate() {
            let offset = int(pivot.pos.degree - a);
            let mut rk = if k == 0 {
                offset * &self.decomposition.terms[0].coefficient
            } else {
                offset * &pivot.value / &pivot.pure_value
            };
            for (s, rs) in r.iter().enumerate() {
                let overlap = pure_entry(&self.decomposition.terms[s].seq, pivot.pos);
                if !overlap.is_zero() {
                    rk -= overlap / &pivot.pure_value * rs;
                }
            }
            r.push(rk);
        }
        r
    }

    /// `r_s / z_s` for each step.
    pub fn ratios(&self) -> Vec<Rational> {
        self.remainders()
            .into_iter()
            .zip(self.coefficients())
            .map(|(r, z)| r / z)
            .collect()
    }

    /// `max{a, r_1/z_1, ..., r_m/z_m}`.
    pub fn stability_bound(&self) -> Rational {
        self.ratios().into_iter().fold(
            int(self.tuple.total()),
            |acc, q| if q > acc { q } else { acc },
        )
    }
}

pub fn remainders(a: &DegreeTuple) -> Result<Vec<Rational>> {
    Ok(BaseAnalysis::new(a)?.remainders())
}

pub fn stability_bound(a: &DegreeTuple) -> Result<Rational> {
    Ok(BaseAnalysis::new(a)?.stability_bound())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    One = 1,
    Two = 2,
    Three = 3,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveTerm {
    pub phase: Phase,
    pub coefficient: Rational,
    pub seq: DegreeSequence,
    /// The position this step's coefficient was chosen to zero.
    pub target: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub is_chain: bool,
    pub all_positive: bool,
    pub has_zero: bool,
    pub palindromic: bool,
    pub agrees_with_standard: bool,
    pub compatible_order: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveReport {
    pub base: DegreeTuple,
    pub a_next: i64,
    pub terms: Vec<RecursiveTerm>,
    /// `(m, m + c - 1)`: last indices of Phase 1 and Phase 2. Equal when
    /// Phase 2 is skipped.
    pub phase_boundaries: (usize, usize),
    pub error_diagram: Diagram,
    pub base_coefficients: Vec<Rational>,
    pub remainders: Vec<Rational>,
    pub stability_bound: Rational,
    pub flags: Flags,
    /// Greedy decomposition of the extended diagram.
    pub standard: Decomposition,
    pub standard_record: EliminationRecord,
}

impl RecursiveReport {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.coefficient.clone()).collect()
    }

    pub fn sequences(&self) -> Vec<DegreeSequence> {
        self.terms.iter().map(|t| t.seq.clone()).collect()
    }

    pub fn as_decomposition(&self) -> Decomposition {
        Decomposition {
            columns: self.base.codim() + 2,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: t.coefficient.clone(),
                    seq: t.seq.clone(),
                })
                .collect(),
        }
    }

    /// Terms with zero coefficients dropped, in run order.
    pub fn nonzero_terms(&self) -> Vec<Term> {
        self.as_decomposition()
            .terms
            .into_iter()
            .filter(|t| !t.coefficient.is_zero())
            .collect()
    }

    pub fn above_bound(&self) -> bool {
        int(self.a_next) > self.stability_bound
    }
}

/// Runs the three phases for base tuple `a` and new degree `a_next`.
pub fn new_algorithm(a: &DegreeTuple, a_next: i64) -> Result<RecursiveReport> {
    let c = a.codim();
    if c < 2 {
        return Err(Error::BaseTooShort(c));
    }
    if a_next < a.largest() {
        return Err(Error::ANextTooSmall {
            a_next,
            a_c: a.largest(),
        });
    }
    let base = BaseAnalysis::new(a)?;
    run(&base, a_next)
}

/// Same as [`new_algorithm`] but reuses a precomputed base analysis.
pub fn run(base: &BaseAnalysis, a_next: i64) -> Result<RecursiveReport> {
    let a = &base.tuple;
    let c = a.codim();
    let m = base.size();
    let total = a.total() + a_next;
    let extended = a.extended(a_next)?;
    let target_diagram = betti_ci(&extended);

    let mut running = target_diagram.clone();
    let mut terms: Vec<RecursiveTerm> = Vec::new();
    let eliminate = |running: &mut Diagram,
                     terms: &mut Vec<RecursiveTerm>,
                     phase: Phase,
                     seq: DegreeSequence,
                     target: Pos|
     -> Result<()> {
        if let Some(k) = terms.iter().position(|t| t.seq == seq) {
            return Err(Error::DegenerateSequence {
                step: terms.len() + 1,
                reason: format!("{seq} repeats the sequence of step {}", k + 1),
            });
        }
        let p = pure_entry(&seq, target);
        if p.is_zero() {
            return Err(Error::DegenerateSequence {
                step: terms.len() + 1,
                reason: format!("{seq} has no entry at target {target}"),
            });
        }
        let y = running.get(target) / p;
        running.add_scaled(&-y.clone(), &pure_diagram(&seq));
        terms.push(RecursiveTerm {
            phase,
            coefficient: y,
            seq,
            target,
        });
        Ok(())
    };

    for (term, pivot) in base.decomposition.terms.iter().zip(&base.pivots) {
        let seq = term
            .seq
            .concat(total)
            .map_err(|e| degenerate(terms.len() + 1, e))?;
        eliminate(&mut running, &mut terms, Phase::One, seq, pivot.pos)?;
    }

    if a_next != a.largest() {
        let degrees = a.degrees();
        for k in 1..c {
            let replaced = c - k + 1;
            let value = degrees[..c - k].iter().sum::<i64>() + a_next;
            let prev = &terms.last().expect("phase 1 is nonempty").seq;
            let seq = prev
                .with_entry(replaced, value)
                .map_err(|e| degenerate(terms.len() + 1, e))?;
            let column = c - k;
            let top = running
                .top_degree(column)
                .ok_or_else(|| Error::DegenerateSequence {
                    step: terms.len() + 1,
                    reason: format!("column {column} is already empty"),
                })?;
            eliminate(
                &mut running,
                &mut terms,
                Phase::Two,
                seq,
                Pos::new(column, top),
            )?;
        }
    }
    let phase2_end = terms.len();
    let n = phase2_end + m;

    let phase3: Vec<DegreeSequence> = (0..m)
        .rev()
        .map(|t| terms[t].seq.check_dual())
        .collect::<Result<_>>()?;
    for (k, seq) in phase3.iter().enumerate() {
        let later = &phase3[k + 1..];
        let column = (0..seq.len())
            .find(|&i| later.iter().all(|e| e.get(i) != seq.get(i)))
            .ok_or_else(|| Error::DegenerateSequence {
                step: terms.len() + 1,
                reason: format!("{seq} shares every position with a later sequence"),
            })?;
        let target = Pos::new(column, seq.get(column));
        eliminate(&mut running, &mut terms, Phase::Three, seq.clone(), target)?;
    }
    debug_assert_eq!(terms.len(), n);

    if !running.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "error diagram is nonzero at {} positions after {} steps",
            running.len(),
            terms.len()
        )));
    }

    let (standard, standard_record) = greedy::decompose(&target_diagram)?;
    let sequences: Vec<DegreeSequence> = terms.iter().map(|t| t.seq.clone()).collect();
    let coefficients: Vec<&Rational> = terms.iter().map(|t| &t.coefficient).collect();
    let palindromic = (0..n).all(|s| {
        coefficients[s] == coefficients[n - 1 - s]
            && sequences[n - 1 - s]
                .check_dual()
                .is_ok_and(|d| d == sequences[s])
    });
    let own_terms = normalize_terms(terms.iter().map(|t| Term {
        coefficient: t.coefficient.clone(),
        seq: t.seq.clone(),
    }));
    let flags = Flags {
        is_chain: sequence::is_chain(&sequences)?,
        all_positive: coefficients.iter().all(|y| y.is_positive()),
        has_zero: coefficients.iter().any(|y| y.is_zero()),
        palindromic,
        agrees_with_standard: own_terms == standard.normalized_terms(),
        compatible_order: is_compatible(&base.record, &standard_record, c, a.total()),
    };

    Ok(RecursiveReport {
        base: a.clone(),
        a_next,
        terms,
        phase_boundaries: (m, phase2_end),
        error_diagram: running,
        base_coefficients: base.coefficients(),
        remainders: base.remainders(),
        stability_bound: base.stability_bound(),
        flags,
        standard,
        standard_record,
    })
}

fn degenerate(step: usize, e: Error) -> Error {
    Error::DegenerateSequence {
        step,
        reason: e.to_string(),
    }
}

/// The extended order begins with the base order, where the base's final
/// step is represented by its pivot `(c, a)`.
pub fn is_compatible(
    base: &EliminationRecord,
    extended: &EliminationRecord,
    c: usize,
    a: i64,
) -> bool {
    let m = base.size();
    if extended.size() < m {
        return false;
    }
    let prefix_matches = base.steps[..m - 1]
        .iter()
        .zip(&extended.steps)
        .all(|(b, e)| b.positions == e.positions);
    let last: BTreeSet<Pos> = [Pos::new(c, a)].into_iter().collect();
    prefix_matches && extended.steps[m - 1].positions == last
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRow {
    /// 1-based term index, `m < s < m + c`.
    pub index: usize,
    pub predicted: Rational,
    pub actual: Rational,
}

impl ConjectureRow {
    pub fn holds(&self) -> bool {
        self.predicted == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub base: DegreeTuple,
    pub a_next: i64,
    pub stability_bound: Rational,
    /// Whether `a_next` exceeds the bound, the hypothesis of the prediction.
    pub bound_met: bool,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(ConjectureRow::holds)
    }
}

/// `c! · a_1⋯a_c · (a_next - Σ_{i=1}^{s-m} (a_{c+1-i} - a_i))`.
pub fn predicted_phase2(a: &DegreeTuple, a_next: i64, offset: usize) -> Rational {
    let degs = a.degrees();
    let c = degs.len();
    let scale: BigInt = (1..=c as i64).map(BigInt::from).product::<BigInt>()
        * degs.iter().map(|&d| BigInt::from(d)).product::<BigInt>();
    let shift: i64 = (1..=offset).map(|i| degs[c - i] - degs[i - 1]).sum();
    Rational::from_integer(scale * BigInt::from(a_next - shift))
}

/// Compares the Phase 2 coefficients with the predicted closed form.
pub fn conjecture_phase2(a: &DegreeTuple, a_next: i64) -> Result<ConjectureReport> {
    let report = new_algorithm(a, a_next)?;
    Ok(conjecture_from_report(&report))
}

pub fn conjecture_from_report(report: &RecursiveReport) -> ConjectureReport {
    let (m, end) = report.phase_boundaries;
    let rows = (m..end)
        .map(|idx| ConjectureRow {
            index: idx + 1,
            predicted: predicted_phase2(&report.base, report.a_next, idx + 1 - m),
            actual: report.terms[idx].coefficient.clone(),
        })
        .collect();
    ConjectureReport {
        base: report.base.clone(),
        a_next: report.a_next,
        stability_bound: report.stability_bound.clone(),
        bound_met: report.above_bound(),
        rows,
    }
}

/// A line `slope · a_next + intercept` fitted through two evaluations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFit {
    pub index: usize,
    pub slope: Rational,
    pub intercept: Rational,
    /// Every further evaluation lies on the line.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilitySample {
    pub a_next: i64,
    pub term_count: usize,
    pub compatible_order: bool,
    pub agrees_with_standard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub base: DegreeTuple,
    pub stability_bound: Rational,
    /// `2m + c - 1`.
    pub expected_terms: usize,
    pub samples: Vec<StabilitySample>,
    /// Fits for the first and last `m` Boij-Söderberg coefficients.
    pub fits: Vec<LinearFit>,
}

impl StabilityReport {
    pub fn constant_term_count(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.term_count == self.expected_terms)
    }

    pub fn all_compatible(&self) -> bool {
        self.samples.iter().all(|s| s.compatible_order)
    }

    pub fn linear(&self) -> bool {
        !self.fits.is_empty() && self.fits.iter().all(|f| f.consistent)
    }
}

/// Evaluates the Boij-Söderberg decomposition of the extended tuple at each
/// of `values` (at least three, all above the bound for the fits to be
/// meaningful) and fits the outer coefficients linearly through the first
/// two values.
pub fn stability_report(a: &DegreeTuple, values: &[i64]) -> Result<StabilityReport> {
    let base = BaseAnalysis::new(a)?;
    let m = base.size();
    let expected_terms = 2 * m + a.codim() - 1;
    let mut samples = Vec::new();
    let mut coefficient_rows = Vec::new();
    for &v in values {
        let report = run(&base, v)?;
        samples.push(StabilitySample {
            a_next: v,
            term_count: report.standard.terms.len(),
            compatible_order: report.flags.compatible_order,
            agrees_with_standard: report.flags.agrees_with_standard,
        });
        coefficient_rows.push(report.standard.coefficients());
    }
    let mut fits = Vec::new();
    let uniform = coefficient_rows.iter().all(|r| r.len() == expected_terms);
    if values.len() >= 2 && uniform {
        let (x0, x1) = (int(values[0]), int(values[1]));
        let indices = (0..m).chain(expected_terms - m..expected_terms);
        for s in indices.collect::<BTreeSet<_>>() {
            let (y0, y1) = (&coefficient_rows[0][s], &coefficient_rows[1][s]);
            let slope = (y1 - y0) / (&x1 - &x0);
            let intercept = y0 - &slope * &x0;
            let consistent = values
                .iter()
                .zip(&coefficient_rows)
                .skip(2)
                .all(|(&v, row)| row[s] == &slope * int(v) + &intercept);
            fits.push(LinearFit {
                index: s + 1,
                slope,
                intercept,
                consistent,
            });
        }
    }
    Ok(StabilityReport {
        base: a.clone(),
        stability_bound: base.stability_bound(),
        expected_terms,
        samples,
        fits,
    })
}
