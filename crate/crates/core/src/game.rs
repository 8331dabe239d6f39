//! The bimatrix game model.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::PayoffPoly;
use crate::quad::QuadAlgebraic;
use crate::rational::Rational;

/// Payoffs of one strategy profile: `(player 1, player 2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PayoffPair {
    pub u1: PayoffPoly,
    pub u2: PayoffPoly,
}

impl PayoffPair {
    pub fn new(u1: impl Into<PayoffPoly>, u2: impl Into<PayoffPoly>) -> Self {
        PayoffPair {
            u1: u1.into(),
            u2: u2.into(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.u1.is_constant() && self.u2.is_constant()
    }

    pub fn param(&self) -> Option<&str> {
        self.u1.param().or(self.u2.param())
    }

    pub fn evaluate(&self, x: &Rational) -> PayoffPair {
        PayoffPair::new(self.u1.evaluate(x), self.u2.evaluate(x))
    }

    pub fn scale(&self, k: &PayoffPoly) -> PayoffPair {
        PayoffPair::new(&self.u1 * k, &self.u2 * k)
    }

    pub fn add(&self, other: &PayoffPair) -> PayoffPair {
        PayoffPair::new(&self.u1 + &other.u1, &self.u2 + &other.u2)
    }
}

impl fmt::Display for PayoffPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u1, self.u2)
    }
}

impl fmt::Debug for PayoffPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rectangular `rows × cols` grid of payoff pairs depending on at most
/// one parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<PayoffPair>>,
    parameter: Option<String>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl Bimatrix {
    /// Checks that the grid is non-empty and rectangular and that at most
    /// one parameter name occurs; the game's parameter is that name.
    pub fn new(entries: Vec<Vec<PayoffPair>>) -> Result<Self> {
        let rows = entries.len();
        if rows == 0 {
            return Err(Error::Shape("a game needs at least one row".into()));
        }
        let cols = entries[0].len();
        if cols == 0 {
            return Err(Error::Shape("a game needs at least one column".into()));
        }
        if let Some((i, row)) = entries.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            )));
        }
        let mut parameter: Option<&str> = None;
        for pair in entries.iter().flatten() {
            for name in [pair.u1.param(), pair.u2.param()].into_iter().flatten() {
                match parameter {
                    Some(p) if p != name => {
                        return Err(Error::Param(format!(
                            "two distinct parameters `{p}` and `{name}`"
                        )))
                    }
                    _ => parameter = Some(name),
                }
            }
        }
        let parameter = parameter.map(str::to_owned);
        Ok(Bimatrix {
            rows,
            cols,
            entries,
            parameter,
            row_labels: None,
            col_labels: None,
        })
    }

    /// Game from integer payoff pairs, handy for fixed examples.
    pub fn from_integers<R: AsRef<[(i64, i64)]>>(rows: &[R]) -> Result<Self> {
        Bimatrix::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&(a, b)| PayoffPair::new(a, b)).collect())
                .collect(),
        )
    }

    /// Declares the parameter name even if no entry depends on it.
    pub fn with_parameter(mut self, name: Option<&str>) -> Result<Self> {
        match (&self.parameter, name) {
            (Some(p), Some(n)) if p != n => Err(Error::Param(format!(
                "entries depend on `{p}` but the game declares `{n}`"
            ))),
            (Some(p), None) => Err(Error::Param(format!(
                "entries depend on `{p}` but the game declares no parameter"
            ))),
            _ => {
                self.parameter = name.map(str::to_owned);
                Ok(self)
            }
        }
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<String>>,
        col_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(l) = &row_labels {
            if l.len() != self.rows {
                return Err(Error::Shape(format!(
                    "{} row labels for {} rows",
                    l.len(),
                    self.rows
                )));
            }
        }
        if let Some(l) = &col_labels {
            if l.len() != self.cols {
                return Err(Error::Shape(format!(
                    "{} column labels for {} columns",
                    l.len(),
                    self.cols
                )));
            }
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub(crate) fn labelled(mut self, rows: &[&str], cols: &[&str]) -> Self {
        self.row_labels = Some(rows.iter().map(|s| s.to_string()).collect());
        self.col_labels = Some(cols.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<PayoffPair>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &PayoffPair {
        &self.entries[row][col]
    }

    pub fn parameter(&self) -> Option<&str> {
        self.parameter.as_deref()
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn is_two_by_two(&self) -> bool {
        self.rows == 2 && self.cols == 2
    }

    /// True when no entry depends on the parameter.
    pub fn is_numeric(&self) -> bool {
        self.entries.iter().flatten().all(PayoffPair::is_constant)
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .map(|p| p.u1.degree().max(p.u2.degree()))
            .max()
            .unwrap_or(0)
    }

    pub fn require_two_by_two(&self) -> Result<()> {
        if self.is_two_by_two() {
            Ok(())
        } else {
            Err(Error::NotTwoByTwo {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn require_numeric(&self) -> Result<()> {
        if self.is_numeric() {
            Ok(())
        } else {
            Err(Error::ParametricInput(
                self.parameter.clone().unwrap_or_default(),
            ))
        }
    }

    /// Substitutes `x` for the parameter; labels are kept, the result is
    /// constant.
    pub fn evaluate(&self, x: &Rational) -> Bimatrix {
        Bimatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|p| p.evaluate(x)).collect())
                .collect(),
            parameter: None,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    /// `Δ² = (Δ¹)ᵀ`, compared as polynomials.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.entries[i][j].u2 == self.entries[j][i].u1)
            })
    }

    /// Exact payoff table of a numeric game.
    pub fn payoffs(&self) -> Result<Payoffs<Rational>> {
        self.require_numeric()?;
        Ok(self.map_payoffs(|p| p.coeff(0)))
    }

    /// Payoff table at a (possibly irrational) parameter value.
    pub fn payoffs_at(&self, x: &QuadAlgebraic) -> Payoffs<QuadAlgebraic> {
        self.map_payoffs(|p| p.evaluate_quad(x))
    }

    fn map_payoffs<T>(&self, f: impl Fn(&PayoffPoly) -> T) -> Payoffs<T> {
        let mut p1 = Vec::with_capacity(self.rows * self.cols);
        let mut p2 = Vec::with_capacity(self.rows * self.cols);
        for pair in self.entries.iter().flatten() {
            p1.push(f(&pair.u1));
            p2.push(f(&pair.u2));
        }
        Payoffs {
            rows: self.rows,
            cols: self.cols,
            p1,
            p2,
        }
    }

    pub(crate) fn map_entries(&self, f: impl Fn(usize, usize) -> PayoffPair) -> Result<Bimatrix> {
        Bimatrix::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| f(i, j)).collect())
                .collect(),
        )
    }
}

/// Plain payoff tables for a fixed parameter value, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Payoffs<T> {
    pub rows: usize,
    pub cols: usize,
    pub p1: Vec<T>,
    pub p2: Vec<T>,
}

impl<T> Payoffs<T> {
    pub fn u1(&self, row: usize, col: usize) -> &T {
        &self.p1[row * self.cols + col]
    }

    pub fn u2(&self, row: usize, col: usize) -> &T {
        &self.p2[row * self.cols + col]
    }
}

/// Well-known games used throughout tests and examples.
pub mod presets {
    use super::*;

    /// The Prisoner's Dilemma `[[(3,3),(0,5)],[(5,0),(1,1)]]`.
    pub fn prisoners_dilemma() -> Bimatrix {
        Bimatrix::from_integers(&[[(3, 3), (0, 5)], [(5, 0), (1, 1)]]).expect("static game")
    }

    /// The 2×3 game with the pure equilibrium (B, R) and the maximin
    /// outcome (T, M).
    pub fn risky_two_by_three() -> Bimatrix {
        Bimatrix::from_integers(&[
            [(3, 1), (2, 3), (2, 0)],
            [(-100, 1), (-100, 2), (3, 3)],
        ])
        .expect("static game")
        .labelled(&["T", "B"], &["L", "M", "R"])
    }
}
