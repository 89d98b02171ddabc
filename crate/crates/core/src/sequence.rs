//! Degree sequences and the normalized pure diagrams they index.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::diagram::{Diagram, Pos};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A strictly increasing integer sequence `(d_0, ..., d_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(values));
        }
        Ok(DegreeSequence(values))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> i64 {
        *self
            .0
            .last()
            .expect("degree sequences used here are nonempty")
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// The sequence with `end` appended.
    pub fn concat(&self, end: i64) -> Result<Self> {
        let mut values = self.0.clone();
        values.push(end);
        DegreeSequence::new(values)
    }

    /// A copy with entry `i` replaced by `value`.
    pub fn with_entry(&self, i: usize, value: i64) -> Result<Self> {
        let mut values = self.0.clone();
        values[i] = value;
        DegreeSequence::new(values)
    }

    /// `e^∨_k = e_last - e_{last-k}`; defined for sequences starting at 0.
    pub fn check_dual(&self) -> Result<Self> {
        if self.0.first() != Some(&0) {
            return Err(Error::FirstEntryNonzero(self.0.clone()));
        }
        let last = self.last();
        Ok(DegreeSequence(
            self.0.iter().rev().map(|d| last - d).collect(),
        ))
    }

    /// Componentwise order.
    pub fn leq(&self, other: &DegreeSequence) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `d_k + d_{n-k} = d_n` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        self.check_dual().is_ok_and(|d| &d == self)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// True iff each element is `leq` the next one.
pub fn is_chain(seqs: &[DegreeSequence]) -> Result<bool> {
    for w in seqs.windows(2) {
        if !w[0].leq(&w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The entry of `π(d)` in column `i`: `∏_{k≠i} 1/|d_i - d_k|`.
pub fn pure_value(d: &DegreeSequence, i: usize) -> Rational {
    let di = d.get(i);
    let denom = d
        .as_slice()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .fold(BigInt::from(1), |acc, (_, dk)| {
            acc * BigInt::from((di - dk).abs())
        });
    Rational::new(BigInt::from(1), denom)
}

/// `π(d)[pos]`, zero off the sequence.
pub fn pure_entry(d: &DegreeSequence, pos: Pos) -> Rational {
    if pos.column < d.len() && d.get(pos.column) == pos.degree {
        pure_value(d, pos.column)
    } else {
        Rational::from_integer(BigInt::from(0))
    }
}

/// The pure diagram `π(d)`.
pub fn pure_diagram(d: &DegreeSequence) -> Diagram {
    let entries: BTreeMap<Pos, Rational> = (0..d.len())
        .map(|i| (Pos::new(i, d.get(i)), pure_value(d, i)))
        .collect();
    Diagram::from_map(d.len(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn seq(v: &[i64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pure_diagram_values() {
        let p = pure_diagram(&seq(&[0, 2, 4, 6]));
        let expect = Diagram::new(
            4,
            [
                (0, 0, frac(1, 48)),
                (1, 2, frac(1, 16)),
                (2, 4, frac(1, 16)),
                (3, 6, frac(1, 48)),
            ],
        )
        .unwrap();
        assert_eq!(p, expect);
        let p = pure_diagram(&seq(&[0, 1]));
        assert_eq!(
            p,
            Diagram::new(2, [(0, 0, int(1)), (1, 1, int(1))]).unwrap()
        );
        // 1/(2·5·9), 1/(2·3·7), 1/(5·3·4), 1/(9·7·4)
        let p = pure_diagram(&seq(&[0, 2, 5, 9]));
        let got: Vec<Rational> = p.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(
            got,
            vec![frac(1, 90), frac(1, 42), frac(1, 60), frac(1, 252)]
        );
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(matches!(
            DegreeSequence::new(vec![0, 2, 2]),
            Err(Error::NotStrictlyIncreasing(_))
        ));
    }

    #[test]
    fn check_dual_examples() {
        assert_eq!(
            seq(&[0, 2, 5, 9, 22]).check_dual().unwrap(),
            seq(&[0, 13, 17, 20, 22])
        );
        assert_eq!(seq(&[0, 3, 6]).check_dual().unwrap(), seq(&[0, 3, 6]));
        assert!(seq(&[0, 3, 6]).is_symmetric());
        let e = seq(&[0, 1, 7, 8, 20]);
        assert_eq!(e.check_dual().unwrap().check_dual().unwrap(), e);
        assert_eq!(
            seq(&[1, 2]).check_dual(),
            Err(Error::FirstEntryNonzero(vec![1, 2]))
        );
    }

    #[test]
    fn concat_examples() {
        assert_eq!(
            seq(&[0, 2, 5, 9]).concat(22).unwrap(),
            seq(&[0, 2, 5, 9, 22])
        );
        assert_eq!(seq(&[0, 1]).concat(2).unwrap(), seq(&[0, 1, 2]));
        assert_eq!(
            seq(&[0, 3]).concat(3),
            Err(Error::NotStrictlyIncreasing(vec![0, 3, 3]))
        );
    }

    #[test]
    fn order_and_chains() {
        assert!(seq(&[0, 2, 5, 9]).leq(&seq(&[0, 3, 5, 9])).unwrap());
        let (x, y) = (seq(&[0, 2, 5]), seq(&[0, 1, 9]));
        assert!(!x.leq(&y).unwrap());
        assert!(!y.leq(&x).unwrap());
        assert_eq!(x.leq(&seq(&[0, 1])), Err(Error::LengthMismatch(3, 2)));
        assert!(is_chain(&[]).unwrap());
        assert!(!is_chain(&[x, y]).unwrap());
    }
}
