//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use bs_decomp::{Diagram, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

/// All nondecreasing tuples of length `c` with entries in `1..=max`.
pub fn tuples(c: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(c: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for d in lo..=max {
            cur.push(d);
            go(c, d, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(c, 1, max, &mut Vec::new(), &mut out);
    out
}

/// Koszul Betti numbers by recursive subset enumeration.
pub fn koszul_oracle(degrees: &[i64]) -> Diagram {
    fn go(
        rest: &[i64],
        size: usize,
        sum: i64,
        acc: &mut std::collections::BTreeMap<(usize, i64), i64>,
    ) {
        match rest.split_first() {
            None => *acc.entry((size, sum)).or_default() += 1,
            Some((&d, tail)) => {
                go(tail, size, sum, acc);
                go(tail, size + 1, sum + d, acc);
            }
        }
    }
    let mut acc = Default::default();
    go(degrees, 0, 0, &mut acc);
    Diagram::new(
        degrees.len() + 1,
        acc.into_iter().map(|((i, j), n)| (i, j, q(n))),
    )
    .unwrap()
}

/// `π(d)_{i, d_i} = ∏_{k ≠ i} 1 / |d_i - d_k|`.
pub fn pure_oracle(d: &[i64]) -> Diagram {
    let entries = (0..d.len()).map(|i| {
        let mut v = q(1);
        for k in 0..d.len() {
            if k != i {
                v /= q((d[i] - d[k]).abs());
            }
        }
        (i, d[i], v)
    });
    Diagram::new(d.len(), entries).unwrap()
}

pub fn check_dual_oracle(d: &[i64]) -> Vec<i64> {
    let last = d[d.len() - 1];
    (0..d.len()).map(|k| last - d[d.len() - 1 - k]).collect()
}

/// Straightforward greedy decomposition kept separate from the library.
pub fn greedy_oracle(d: &Diagram) -> Vec<(Rational, Vec<i64>)> {
    let mut running = d.clone();
    let mut out = Vec::new();
    while !running.is_zero() {
        let seq: Vec<i64> = (0..running.columns())
            .map(|i| {
                running
                    .column(i)
                    .map(|(j, _)| j)
                    .min()
                    .expect("column emptied early")
            })
            .collect();
        let pure = pure_oracle(&seq);
        let coefficient = (0..seq.len())
            .map(|i| running.entry(i, seq[i]) / pure.entry(i, seq[i]))
            .min()
            .unwrap();
        running = running.axpy(&-coefficient.clone(), &pure).unwrap();
        assert!(running.iter().all(|(_, v)| !v.is_negative()));
        out.push((coefficient, seq));
    }
    out
}

pub fn sum_of_terms(columns: usize, terms: &[(Rational, Vec<i64>)]) -> Diagram {
    terms.iter().fold(Diagram::zero(columns), |acc, (c, s)| {
        acc.axpy(c, &pure_oracle(s)).unwrap()
    })
}

pub fn cli(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("bs-decomp")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = bs_decomp::cli::run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
