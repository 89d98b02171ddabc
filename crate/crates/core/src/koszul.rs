//! Betti diagrams of complete intersections from their generator degrees.
//!
//! The Koszul complex on forms of degrees `a_1, ..., a_c` has
//! `β_{i,j}` equal to the number of `i`-element index subsets whose degrees
//! sum to `j`. Repeated degrees count as distinct generators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::diagram::{Diagram, Pos};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Nondecreasing positive generator degrees `(a_1, ..., a_c)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeTuple(Vec<i64>);

impl DegreeTuple {
    /// Sorts `raw` into a tuple, rejecting empty input and degrees below 1.
    pub fn normalize(mut raw: Vec<i64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyTuple);
        }
        if let Some(&d) = raw.iter().find(|&&d| d < 1) {
            return Err(Error::NonPositiveDegree(d));
        }
        raw.sort_unstable();
        Ok(DegreeTuple(raw))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    /// Codimension `c`.
    pub fn codim(&self) -> usize {
        self.0.len()
    }

    /// `a = Σ a_k`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> i64 {
        *self.0.last().expect("tuples are nonempty")
    }

    /// The tuple with one more generator; `next` must be at least the
    /// current largest degree to keep the ordering convention.
    pub fn extended(&self, next: i64) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(next);
        DegreeTuple::normalize(v)
    }

    /// `(pdim, reg) = (c, a - c)`.
    pub fn invariants(&self) -> (usize, i64) {
        (self.codim(), self.total() - self.codim() as i64)
    }

    pub fn regularity(&self) -> i64 {
        self.invariants().1
    }

    /// Every nondecreasing tuple of length `codim` with entries in `1..=max_degree`.
    pub fn all(codim: usize, max_degree: i64) -> Vec<DegreeTuple> {
        fn rec(prefix: &mut Vec<i64>, codim: usize, max: i64, out: &mut Vec<DegreeTuple>) {
            if prefix.len() == codim {
                out.push(DegreeTuple(prefix.clone()));
                return;
            }
            let start = prefix.last().copied().unwrap_or(1);
            for d in start..=max {
                prefix.push(d);
                rec(prefix, codim, max, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if codim > 0 && max_degree >= 1 {
            rec(&mut Vec::new(), codim, max_degree, &mut out);
        }
        out
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `ci_invariants` as a free function.
pub fn ci_invariants(a: &DegreeTuple) -> (usize, i64) {
    a.invariants()
}

/// Coefficients of `∏_k (1 + t·x^{a_k})`, indexed by `(power of t, power of x)`.
fn koszul_counts(a: &DegreeTuple) -> Vec<BTreeMap<i64, BigInt>> {
    let c = a.codim();
    let mut layers: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::new(); c + 1];
    layers[0].insert(0, BigInt::from(1));
    for (k, &deg) in a.degrees().iter().enumerate() {
        for i in (0..=k).rev() {
            let shifted: Vec<(i64, BigInt)> = layers[i]
                .iter()
                .map(|(j, n)| (j + deg, n.clone()))
                .collect();
            for (j, n) in shifted {
                *layers[i + 1].entry(j).or_default() += n;
            }
        }
    }
    layers
}

/// The Betti diagram `β(a_1, ..., a_c)` of the complete intersection.
pub fn betti_ci(a: &DegreeTuple) -> Diagram {
    let entries = koszul_counts(a)
        .into_iter()
        .enumerate()
        .flat_map(|(i, layer)| {
            layer
                .into_iter()
                .map(move |(j, n)| (Pos::new(i, j), Rational::from_integer(n)))
        })
        .collect();
    Diagram::from_map(a.codim() + 1, entries)
}

/// Brute-force counterpart of [`betti_ci`] used for cross-checks.
pub mod oracle {
    use super::*;

    /// Enumerates all `2^c` index subsets.
    pub fn betti_by_subsets(a: &DegreeTuple) -> Diagram {
        let degs = a.degrees();
        let mut counts: BTreeMap<Pos, i64> = BTreeMap::new();
        for mask in 0u32..(1u32 << degs.len()) {
            let size = mask.count_ones() as usize;
            let sum: i64 = (0..degs.len())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| degs[k])
                .sum();
            *counts.entry(Pos::new(size, sum)).or_default() += 1;
        }
        Diagram::new(
            degs.len() + 1,
            counts
                .into_iter()
                .map(|(p, n)| (p.column, p.degree, Rational::from_integer(n.into()))),
        )
        .unwrap()
    }
}
