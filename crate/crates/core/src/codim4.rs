//! Closed forms in codimension three and four.
//!
//! The codimension-three decomposition has five terms that collapse when
//! degrees coincide. Its remainders with respect to a fourth degree, and the
//! resulting twelve- or eight-term decomposition of `β(a_1, a_2, a_3, a_4)`,
//! are evaluated here from explicit polynomials so they can be checked
//! against the greedy and recursive engines.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::greedy::Term;
use crate::rational::{int, Rational};
use crate::sequence::DegreeSequence;

/// Equality pattern of `a_1 ≤ a_2 ≤ a_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codim3Case {
    /// `a_1 < a_2 < a_3`
    Distinct,
    /// `a_1 < a_2 = a_3`
    UpperEqual,
    /// `a_1 = a_2 < a_3`
    LowerEqual,
    /// `a_1 = a_2 = a_3`
    AllEqual,
}

impl Codim3Case {
    pub fn of(a1: i64, a2: i64, a3: i64) -> Self {
        match (a1 == a2, a2 == a3) {
            (false, false) => Codim3Case::Distinct,
            (false, true) => Codim3Case::UpperEqual,
            (true, false) => Codim3Case::LowerEqual,
            (true, true) => Codim3Case::AllEqual,
        }
    }

    /// The two families of codimension-four decompositions.
    pub fn codim4_case(self) -> Codim4Case {
        match self {
            Codim3Case::LowerEqual => Codim4Case::Two,
            _ => Codim4Case::One,
        }
    }
}

impl fmt::Display for Codim3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Codim3Case::Distinct => "a1<a2<a3",
            Codim3Case::UpperEqual => "a1<a2=a3",
            Codim3Case::LowerEqual => "a1=a2<a3",
            Codim3Case::AllEqual => "a1=a2=a3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codim4Case {
    One,
    Two,
}

impl fmt::Display for Codim4Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Codim4Case::One => "Case 1",
            Codim4Case::Two => "Case 2",
        })
    }
}

/// Lower bound on the last degree beyond which a closed form applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    /// `a_4 ≥ value` suffices rather than `a_4 > value`.
    pub inclusive: bool,
}

impl Bound {
    pub fn admits(&self, x: i64) -> bool {
        let x = int(x);
        if self.inclusive {
            x >= self.value
        } else {
            x > self.value
        }
    }

    /// Smallest integer admitted by the bound.
    pub fn first_admitted(&self) -> i64 {
        let floor: i64 = self
            .value
            .floor()
            .to_integer()
            .try_into()
            .expect("bound fits i64");
        if self.inclusive && self.value.is_integer() {
            floor
        } else {
            floor + 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormDecomposition {
    pub case: Codim3Case,
    /// Set for codimension-four forms.
    pub codim4_case: Option<Codim4Case>,
    pub terms: Vec<Term>,
    /// `None` when the form holds unconditionally.
    pub bound: Option<Bound>,
    /// The input satisfies the bound (always true without one).
    pub certified: bool,
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Builds terms, merging coefficients of consecutive equal sequences.
fn collapse(raw: Vec<(Rational, Vec<i64>)>) -> Result<Vec<Term>> {
    let mut out: Vec<Term> = Vec::new();
    for (c, values) in raw {
        let s = DegreeSequence::new(values)?;
        match out.last_mut() {
            Some(last) if last.seq == s => last.coefficient += c,
            _ => out.push(Term {
                coefficient: c,
                seq: s,
            }),
        }
    }
    Ok(out)
}

/// The decomposition of `β(a_1, a_2, a_3)`.
pub fn codim3_closed(a1: i64, a2: i64, a3: i64) -> Result<ClosedFormDecomposition> {
    check_order(&[a1, a2, a3])?;
    let a = a1 + a2 + a3;
    let z1 = a1 * a2 * (a2 + a3);
    let z2 = a1 * a2 * (a3 - a1);
    let z3 = 2 * a1 * a2 * (a1 + a3 - a2);
    let raw = vec![
        (q(z1), vec![0, a1, a1 + a2, a]),
        (q(z2), vec![0, a2, a1 + a2, a]),
        (q(z3), vec![0, a2, a1 + a3, a]),
        (q(z2), vec![0, a3, a1 + a3, a]),
        (q(z1), vec![0, a3, a2 + a3, a]),
    ];
    let terms = collapse(raw)?
        .into_iter()
        .filter(|t| !t.coefficient.is_zero())
        .collect();
    Ok(ClosedFormDecomposition {
        case: Codim3Case::of(a1, a2, a3),
        codim4_case: None,
        terms,
        bound: None,
        certified: true,
    })
}

fn check_order(a: &[i64]) -> Result<()> {
    if let Some(&d) = a.iter().find(|&&d| d < 1) {
        return Err(Error::NonPositiveDegree(d));
    }
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InternalInconsistency(format!(
            "degrees must be nondecreasing, got {a:?}"
        )));
    }
    Ok(())
}

/// Remainders of `β(a_1, a_2, a_3)` relative to a fourth degree, by case.
pub fn codim4_remainders(a1: i64, a2: i64, a3: i64) -> Result<(Codim3Case, Vec<Rational>)> {
    check_order(&[a1, a2, a3])?;
    let case = Codim3Case::of(a1, a2, a3);
    let r = match case {
        Codim3Case::Distinct => vec![
            -a1 * a2 * (a2 + a3).pow(2),
            a1 * a2 * (a1 * a2 + 2 * a1 * a3 - a3 * a3),
            -a1 * a2 * (a1 - a2 + a3) * (a1 + a2 + 4 * a3),
            a1 * a2 * (a1 * a1 + 4 * a1 * a3 - a2 * a3),
            -a1 * a1 * a2 * (a2 - 5 * a3),
        ],
        Codim3Case::UpperEqual => vec![
            -4 * a1 * a2.pow(3),
            2 * a1 * a1 * a2 * a2 - 2 * a1 * a2.pow(3),
            4 * a1 * a1 * a2 * a2,
        ],
        Codim3Case::LowerEqual => vec![
            -2 * a1 * a1 * a3 * a3,
            -2 * a1.pow(3) * a3 - 4 * a1 * a1 * a3 * a3,
            8 * a1.pow(3) * a3,
        ],
        Codim3Case::AllEqual => vec![0],
    };
    Ok((case, r.into_iter().map(q).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub case: Codim3Case,
    /// `r_s / z_s` in elimination order.
    pub ratios: Vec<Rational>,
    pub bound: Bound,
}

/// Ratios `r_s / z_s` and the case bound for the fourth degree.
pub fn codim4_ratios(a1: i64, a2: i64, a3: i64) -> Result<RatioReport> {
    let (case, remainders) = codim4_remainders(a1, a2, a3)?;
    let base = codim3_closed(a1, a2, a3)?;
    let ratios: Vec<Rational> = remainders
        .iter()
        .zip(&base.terms)
        .map(|(r, t)| r / &t.coefficient)
        .collect();
    let value = ratios
        .iter()
        .cloned()
        .fold(q(a1 + a2 + a3), |acc, x| if x > acc { x } else { acc });
    Ok(RatioReport {
        case,
        ratios,
        bound: Bound {
            value,
            inclusive: case == Codim3Case::LowerEqual,
        },
    })
}

/// The decomposition of `β(a_1, a_2, a_3, a_4)` for `a_4` above the case
/// bound. Below the bound the same polynomials are evaluated and returned
/// with `certified = false`, provided the sequences are still valid.
pub fn codim4_closed(a1: i64, a2: i64, a3: i64, a4: i64) -> Result<ClosedFormDecomposition> {
    let ratios = codim4_ratios(a1, a2, a3)?;
    let case = ratios.case;
    let x = a4;
    let s = a1 + a2 + a3 + a4;
    let raw = match case.codim4_case() {
        Codim4Case::One => {
            let k = a1 * a2;
            let y = [
                k * (a2 + a3) * (a2 + a3 + x),
                -k * (a1 * a2 + 2 * a1 * a3 - a3 * a3 + a1 * x - a3 * x),
                k * (a1 - a2 + a3) * (a1 + a2 + 4 * a3 + 2 * x),
                -k * (a1 * a1 + 4 * a1 * a3 - a2 * a3 + a1 * x - a3 * x),
                k * (a1 * a2 - 5 * a1 * a3 + a2 * x + a3 * x),
                6 * a1 * a2 * a3 * (a1 - a3 + x),
            ];
            let e = [
                [0, a1, a1 + a2, a1 + a2 + a3, s],
                [0, a2, a1 + a2, a1 + a2 + a3, s],
                [0, a2, a1 + a3, a1 + a2 + a3, s],
                [0, a3, a1 + a3, a1 + a2 + a3, s],
                [0, a3, a2 + a3, a1 + a2 + a3, s],
                [0, a3, a2 + a3, a1 + a2 + x, s],
                [0, a3, a1 + x, a1 + a2 + x, s],
                [0, x, a1 + x, a1 + a2 + x, s],
                [0, x, a2 + x, a1 + a2 + x, s],
                [0, x, a2 + x, a1 + a3 + x, s],
                [0, x, a3 + x, a1 + a3 + x, s],
                [0, x, a3 + x, a2 + a3 + x, s],
            ];
            mirrored(&y, &e)
        }
        Codim4Case::Two => {
            let k = 2 * a1 * a1 * a3;
            let y = [
                k * (a3 + x),
                k * (a1 + 2 * a3 + x),
                -k * (4 * a1 - x),
                3 * k * (a1 - a3 + x),
            ];
            let e = [
                [0, a1, 2 * a1, 2 * a1 + a3, s],
                [0, a1, a1 + a3, 2 * a1 + a3, s],
                [0, a3, a1 + a3, 2 * a1 + a3, s],
                [0, a3, a1 + a3, 2 * a1 + x, s],
                [0, a3, a1 + x, 2 * a1 + x, s],
                [0, x, a1 + x, 2 * a1 + x, s],
                [0, x, a1 + x, a1 + a3 + x, s],
                [0, x, a3 + x, a1 + a3 + x, s],
            ];
            mirrored(&y, &e)
        }
    };
    let certified = ratios.bound.admits(a4);
    Ok(ClosedFormDecomposition {
        case,
        codim4_case: Some(case.codim4_case()),
        terms: collapse(raw)?,
        bound: Some(ratios.bound),
        certified,
    })
}

/// Pairs the first half of the coefficients, mirrored, with the sequences.
fn mirrored(half: &[i64], seqs: &[[i64; 5]]) -> Vec<(Rational, Vec<i64>)> {
    debug_assert_eq!(half.len() * 2, seqs.len());
    let coefficients = half.iter().chain(half.iter().rev());
    coefficients
        .zip(seqs)
        .map(|(&c, e)| (q(c), e.to_vec()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn values(terms: &[Term]) -> Vec<(Rational, Vec<i64>)> {
        terms
            .iter()
            .map(|t| (t.coefficient.clone(), t.seq.as_slice().to_vec()))
            .collect()
    }

    #[test]
    fn codim3_examples() {
        let d = codim3_closed(2, 3, 4).unwrap();
        assert_eq!(d.case, Codim3Case::Distinct);
        assert_eq!(
            values(&d.terms),
            vec![
                (q(42), vec![0, 2, 5, 9]),
                (q(12), vec![0, 3, 5, 9]),
                (q(36), vec![0, 3, 6, 9]),
                (q(12), vec![0, 4, 6, 9]),
                (q(42), vec![0, 4, 7, 9]),
            ]
        );
        let d = codim3_closed(2, 2, 2).unwrap();
        assert_eq!(d.case, Codim3Case::AllEqual);
        assert_eq!(values(&d.terms), vec![(q(48), vec![0, 2, 4, 6])]);
        let d = codim3_closed(2, 2, 5).unwrap();
        assert_eq!(d.case, Codim3Case::LowerEqual);
        let seqs: Vec<Vec<i64>> = d.terms.iter().map(|t| t.seq.as_slice().to_vec()).collect();
        assert_eq!(
            seqs,
            vec![vec![0, 2, 4, 9], vec![0, 2, 7, 9], vec![0, 5, 7, 9]]
        );
    }

    #[test]
    fn remainder_examples() {
        let r = |a, b, c| codim4_remainders(a, b, c).unwrap();
        assert_eq!(
            r(2, 3, 4),
            (
                Codim3Case::Distinct,
                [-294, 36, -378, 144, 204].map(q).to_vec()
            )
        );
        assert_eq!(
            r(2, 3, 3),
            (Codim3Case::UpperEqual, [-216, -36, 144].map(q).to_vec())
        );
        assert_eq!(r(3, 3, 3), (Codim3Case::AllEqual, vec![q(0)]));
    }

    #[test]
    fn ratio_examples() {
        let r = codim4_ratios(2, 3, 4).unwrap();
        assert_eq!(
            r.ratios,
            vec![q(-7), q(3), frac(-21, 2), q(12), frac(34, 7)]
        );
        assert_eq!(
            r.bound,
            Bound {
                value: q(12),
                inclusive: false
            }
        );
        assert_eq!(codim4_ratios(2, 3, 3).unwrap().bound.value, q(8));
        let r = codim4_ratios(2, 2, 5).unwrap();
        assert_eq!(
            r.bound,
            Bound {
                value: q(9),
                inclusive: true
            }
        );
        assert_eq!(r.bound.first_admitted(), 9);
        assert_eq!(codim4_ratios(2, 3, 4).unwrap().bound.first_admitted(), 13);
    }

    #[test]
    fn codim4_examples() {
        let d = codim4_closed(2, 3, 4, 13).unwrap();
        assert_eq!(d.codim4_case, Some(Codim4Case::One));
        assert!(d.certified);
        let coefficients: Vec<Rational> = d.terms.iter().map(|t| t.coefficient.clone()).collect();
        let expect = [840, 120, 846, 12, 342, 1584, 1584, 342, 12, 846, 120, 840].map(q);
        assert_eq!(coefficients, expect.to_vec());
        assert_eq!(d.terms[0].seq.as_slice(), &[0, 2, 5, 9, 22]);
        assert_eq!(d.terms[11].seq.as_slice(), &[0, 13, 17, 20, 22]);

        let d = codim4_closed(2, 2, 5, 10).unwrap();
        assert_eq!(d.codim4_case, Some(Codim4Case::Two));
        assert_eq!(d.terms.len(), 8);
        assert_eq!(d.terms[0].seq.as_slice(), &[0, 2, 4, 9, 19]);
        assert_eq!(d.terms[0].coefficient, q(600));

        let below = codim4_closed(2, 3, 4, 12).unwrap();
        assert!(!below.certified);
    }

    #[test]
    fn collapsed_case_one_has_fewer_terms() {
        assert_eq!(codim4_closed(2, 3, 3, 9).unwrap().terms.len(), 8);
        assert_eq!(codim4_closed(2, 2, 2, 7).unwrap().terms.len(), 4);
    }
}
