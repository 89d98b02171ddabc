//! Exhaustive property sweep over base tuples and new degrees.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::cli::json::{Counterexample, SweepSummary};
use crate::error::Error;
use crate::greedy;
use crate::koszul::{betti_ci, oracle, DegreeTuple};
use crate::rational::floor;
use crate::recursive::{self, BaseAnalysis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub codim: usize,
    pub max_degree: i64,
    /// New degrees run from `a_c` to `a + next_range`.
    pub next_range: i64,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub summary: SweepSummary,
    /// Sorted by base, then new degree, then property.
    pub counterexamples: Vec<Counterexample>,
}

/// New degrees examined for a base: `a_c ..= a + next_range`, together with
/// the three smallest integers above the stability bound.
pub fn next_degrees(a: &DegreeTuple, bound: Option<i64>, next_range: i64) -> BTreeSet<i64> {
    let mut values: BTreeSet<i64> = (a.largest()..=a.total() + next_range).collect();
    if let Some(b) = bound {
        values.extend((b + 1..=b + 3).filter(|&v| v >= a.largest()));
    }
    values
}

#[derive(Default)]
struct Tally {
    runs: usize,
    completed: usize,
    degenerate: usize,
    mass_elimination: usize,
    above_bound: usize,
    conjecture_rows: usize,
    found: Vec<Counterexample>,
}

fn check_base(a: &DegreeTuple, next_range: i64) -> Tally {
    let mut t = Tally::default();
    let base_degrees = a.degrees().to_vec();
    let flag = |t: &mut Tally, a_next: Option<i64>, property: &str, detail: String| {
        t.found.push(Counterexample {
            base: base_degrees.clone(),
            a_next,
            property: property.to_string(),
            detail,
        })
    };

    let diagram = betti_ci(a);
    if diagram != oracle::betti_by_subsets(a) {
        flag(
            &mut t,
            None,
            "koszul_oracle",
            "generating polynomial disagrees with subset count".into(),
        );
    }
    match greedy::decompose(&diagram) {
        Ok((dec, _)) => {
            if !dec.is_symmetric() || !dec.is_chain() {
                flag(
                    &mut t,
                    None,
                    "base_symmetry",
                    format!("terms {:?}", dec.coefficients()),
                );
            }
            if greedy::recompose(&dec) != diagram {
                flag(
                    &mut t,
                    None,
                    "recompose",
                    "sum of terms differs from the input".into(),
                );
            }
        }
        Err(e) => flag(&mut t, None, "base_decompose", e.to_string()),
    }

    let base = match BaseAnalysis::new(a) {
        Ok(b) => b,
        Err(Error::MassEliminationUnsupported { .. }) => {
            t.mass_elimination += 1;
            return t;
        }
        Err(e) => {
            flag(&mut t, None, "base_analysis", e.to_string());
            return t;
        }
    };
    let bound = floor(&base.stability_bound());
    let bound: Option<i64> = bound.try_into().ok();

    for v in next_degrees(a, bound, next_range) {
        t.runs += 1;
        let report = match recursive::run(&base, v) {
            Ok(r) => r,
            Err(Error::DegenerateSequence { .. }) => {
                t.degenerate += 1;
                continue;
            }
            Err(Error::MassEliminationUnsupported { .. }) => {
                t.mass_elimination += 1;
                continue;
            }
            Err(e) => {
                flag(&mut t, Some(v), "completion", e.to_string());
                continue;
            }
        };
        t.completed += 1;
        if !report.error_diagram.is_zero() {
            flag(
                &mut t,
                Some(v),
                "error_diagram",
                "nonzero error diagram".into(),
            );
        }
        if !report.flags.palindromic {
            flag(
                &mut t,
                Some(v),
                "palindrome",
                format!("{:?}", report.coefficients()),
            );
        }
        if !report.standard.is_symmetric() {
            flag(
                &mut t,
                Some(v),
                "standard_symmetry",
                format!("{:?}", report.standard.coefficients()),
            );
        }
        if report.above_bound() {
            t.above_bound += 1;
            if !report.flags.agrees_with_standard {
                flag(
                    &mut t,
                    Some(v),
                    "agreement",
                    "differs from the greedy decomposition".into(),
                );
            }
            if !report.flags.is_chain {
                flag(&mut t, Some(v), "chain", "sequences are not a chain".into());
            }
            let conjecture = recursive::conjecture_from_report(&report);
            t.conjecture_rows += conjecture.rows.len();
            for row in conjecture.rows.iter().filter(|r| !r.holds()) {
                flag(
                    &mut t,
                    Some(v),
                    "conjecture",
                    format!(
                        "y_{} = {} but predicted {}",
                        row.index, row.actual, row.predicted
                    ),
                );
            }
        }
    }
    t
}

/// Runs the sweep over every nondecreasing tuple of the given codimension.
pub fn sweep(config: &SweepConfig) -> Result<SweepOutcome, String> {
    let bases = DegreeTuple::all(config.codim, config.max_degree);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    let tallies: Vec<Tally> = pool.install(|| {
        bases
            .par_iter()
            .map(|a| check_base(a, config.next_range))
            .collect()
    });

    let mut summary = SweepSummary {
        codim: config.codim,
        max_degree: config.max_degree,
        next_range: config.next_range,
        bases: bases.len(),
        ..SweepSummary::default()
    };
    let mut counterexamples = Vec::new();
    for t in tallies {
        summary.runs += t.runs;
        summary.completed += t.completed;
        summary.degenerate += t.degenerate;
        summary.mass_elimination += t.mass_elimination;
        summary.above_bound += t.above_bound;
        summary.conjecture_rows += t.conjecture_rows;
        counterexamples.extend(t.found);
    }
    counterexamples.sort();
    summary.counterexamples = counterexamples.len();
    Ok(SweepOutcome {
        summary,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn next_degree_range() {
        let a = DegreeTuple::normalize(vec![2, 3, 4]).unwrap();
        let v: Vec<i64> = next_degrees(&a, Some(12), 2).into_iter().collect();
        assert_eq!(v, vec![4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 15]);
        let v = next_degrees(&a, Some(30), 0);
        assert!(v.contains(&9) && !v.contains(&10) && v.contains(&31) && v.contains(&33));
    }

    #[test]
    fn tiny_sweep_is_clean() {
        let out = sweep(&SweepConfig {
            codim: 2,
            max_degree: 3,
            next_range: 2,
            jobs: 2,
        })
        .unwrap();
        assert_eq!(out.summary.bases, 6);
        assert!(out.counterexamples.is_empty(), "{:?}", out.counterexamples);
        assert!(out.summary.completed > 0);
    }
}
