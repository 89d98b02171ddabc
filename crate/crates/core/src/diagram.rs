//! Sparse Betti diagrams with exact rational entries.
//!
//! A [`Diagram`] stores entries by (homological column, internal degree).
//! Zero is never stored, so two diagrams are equal exactly when their entry
//! maps and column counts agree. Display code converts to the conventional
//! row index `degree - column`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::DegreeSequence;

/// A position in a diagram: homological column and internal degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub column: usize,
    pub degree: i64,
}

impl Pos {
    pub fn new(column: usize, degree: i64) -> Self {
        Pos { column, degree }
    }

    /// Row of this position in the conventional table layout.
    pub fn row(&self) -> i64 {
        self.degree - self.column as i64
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.column, self.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    columns: usize,
    entries: BTreeMap<Pos, Rational>,
}

impl Diagram {
    pub fn zero(columns: usize) -> Self {
        Diagram {
            columns,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a diagram from `(column, degree, value)` triples. Zero values
    /// are dropped; repeated positions are rejected.
    pub fn new<I>(columns: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (column, degree, value) in entries {
            if column >= columns {
                return Err(Error::ColumnOutOfRange { column, columns });
            }
            let pos = Pos::new(column, degree);
            if map.contains_key(&pos) {
                return Err(Error::DuplicateEntry(pos));
            }
            map.insert(pos, value);
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Diagram {
            columns,
            entries: map,
        })
    }

    pub(crate) fn from_map(columns: usize, mut entries: BTreeMap<Pos, Rational>) -> Self {
        entries.retain(|p, v| {
            debug_assert!(p.column < columns);
            !v.is_zero()
        });
        Diagram { columns, entries }
    }

    /// Number of columns `n + 1`.
    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn get(&self, pos: Pos) -> Rational {
        self.entries
            .get(&pos)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entry(&self, column: usize, degree: i64) -> Rational {
        self.get(Pos::new(column, degree))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Pos, &Rational)> + '_ {
        self.entries.iter()
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Nonzero entries of one column, by increasing degree.
    pub fn column(&self, column: usize) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.entries
            .range(Pos::new(column, i64::MIN)..=Pos::new(column, i64::MAX))
            .map(|(p, v)| (p.degree, v))
    }

    /// Least degree with a nonzero entry in `column`.
    pub fn top_degree(&self, column: usize) -> Option<i64> {
        self.column(column).next().map(|(d, _)| d)
    }

    pub fn first_negative(&self) -> Option<Pos> {
        self.entries
            .iter()
            .find(|(_, v)| v.is_negative())
            .map(|(p, _)| *p)
    }

    /// `self + q * other`.
    pub fn axpy(&self, q: &Rational, other: &Diagram) -> Result<Diagram> {
        if self.columns != other.columns {
            return Err(Error::ColumnCountMismatch(self.columns, other.columns));
        }
        let mut out = self.clone();
        out.add_scaled(q, other);
        Ok(out)
    }

    /// In-place `self += q * other`; column counts must already agree.
    pub(crate) fn add_scaled(&mut self, q: &Rational, other: &Diagram) {
        debug_assert_eq!(self.columns, other.columns);
        if q.is_zero() {
            return;
        }
        for (pos, v) in &other.entries {
            let sum = self.get(*pos) + q * v;
            if sum.is_zero() {
                self.entries.remove(pos);
            } else {
                self.entries.insert(*pos, sum);
            }
        }
    }

    /// `(D*)_{i,j} = D_{n-i,-j}`.
    pub fn dual(&self) -> Diagram {
        let n = self.columns - 1;
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| (Pos::new(n - p.column, -p.degree), v.clone()))
            .collect();
        Diagram {
            columns: self.columns,
            entries,
        }
    }

    /// `D(r)_{i,j} = D_{i,r+j}`.
    pub fn twist(&self, r: i64) -> Diagram {
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| (Pos::new(p.column, p.degree - r), v.clone()))
            .collect();
        Diagram {
            columns: self.columns,
            entries,
        }
    }

    /// `twist(dual(D), -total)`: the mirror image of `D` about degree
    /// `total`, sending `(i, j)` to `(n - i, total - j)`. Complete
    /// intersections are fixed by this with `total` the sum of their degrees.
    pub fn reflect(&self, total: i64) -> Diagram {
        self.dual().twist(-total)
    }

    /// `Σ_{i,j} (-1)^i j^t D_{i,j}` for `t = 0..=max_power`, with `0^0 = 1`.
    ///
    /// A diagram of a finite-length module of codimension `c` has all of
    /// these equal to zero for `max_power = c - 1`.
    pub fn herzog_kuhl_residuals(&self, max_power: usize) -> Vec<Rational> {
        (0..=max_power)
            .map(|t| {
                self.entries.iter().fold(Rational::zero(), |acc, (p, v)| {
                    let power = BigInt::from(p.degree).pow(t as u32);
                    let term = v * Rational::from_integer(power);
                    if p.column % 2 == 0 {
                        acc + term
                    } else {
                        acc - term
                    }
                })
            })
            .collect()
    }

    /// The sequence of least degrees in each column.
    pub fn min_degree_sequence(&self) -> Result<DegreeSequence> {
        let degrees = (0..self.columns)
            .map(|i| self.top_degree(i).ok_or(Error::EmptyColumn(i)))
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(degrees)
    }

    /// At most one nonzero entry in every column.
    pub fn is_pure(&self) -> bool {
        (0..self.columns).all(|i| self.column(i).nth(1).is_none())
    }

    /// Range of display rows `degree - column` covered by the entries.
    pub fn row_range(&self) -> Option<(i64, i64)> {
        let rows = self.entries.keys().map(Pos::row);
        let min = rows.clone().min()?;
        Some((min, rows.max()?))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = |pos: Pos| {
            self.entries
                .get(&pos)
                .map_or_else(|| ".".to_string(), |v| v.to_string())
        };
        render_grid(f, self.columns, self.row_range(), cells)
    }
}

/// Writes a table with rows `degree - column` and one cell per column.
pub(crate) fn render_grid<F>(
    f: &mut impl fmt::Write,
    columns: usize,
    rows: Option<(i64, i64)>,
    cell: F,
) -> fmt::Result
where
    F: Fn(Pos) -> String,
{
    let Some((lo, hi)) = rows else {
        return writeln!(f, "(zero diagram, {columns} columns)");
    };
    let mut grid = Vec::new();
    for row in lo..=hi {
        let cells: Vec<String> = (0..columns)
            .map(|i| cell(Pos::new(i, row + i as i64)))
            .collect();
        grid.push((row, cells));
    }
    let width = grid
        .iter()
        .flat_map(|(_, c)| c.iter().map(String::len))
        .chain((0..columns).map(|i| i.to_string().len()))
        .max()
        .unwrap_or(1);
    let label = grid
        .iter()
        .map(|(r, _)| r.to_string().len())
        .max()
        .unwrap_or(1);
    write!(f, "{:label$} ", "")?;
    for i in 0..columns {
        write!(f, " {i:>width$}")?;
    }
    writeln!(f)?;
    for (row, cells) in grid {
        write!(f, "{row:>label$}:")?;
        for c in cells {
            write!(f, " {c:>width$}")?;
        }
        writeln!(f)?;
    }
    Ok(())
}
