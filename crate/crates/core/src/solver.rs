//! Pure Nash equilibria, strictly dominated strategies and maximin
//! strategies of a constant bimatrix game.
//!
//! Indices are 0-based here; the JSON form is 1-based.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::game::{Bimatrix, Payoffs};
use crate::rational::Rational;

/// A pure strategy profile `(row, col)`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub row: usize,
    pub col: usize,
}

impl Profile {
    pub fn new(row: usize, col: usize) -> Self {
        Profile { row, col }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row + 1, self.col + 1)
    }
}

/// Which analyses to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Analyses {
    pub nash: bool,
    pub dominated: bool,
    pub maximin: bool,
}

impl Analyses {
    pub const ALL: Analyses = Analyses {
        nash: true,
        dominated: true,
        maximin: true,
    };
    pub const NASH: Analyses = Analyses {
        nash: true,
        dominated: false,
        maximin: false,
    };
    pub const DOMINATED: Analyses = Analyses {
        nash: false,
        dominated: true,
        maximin: false,
    };
    pub const MAXIMIN: Analyses = Analyses {
        nash: false,
        dominated: false,
        maximin: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.nash || self.dominated || self.maximin)
    }

    pub fn union(self, other: Analyses) -> Analyses {
        Analyses {
            nash: self.nash || other.nash,
            dominated: self.dominated || other.dominated,
            maximin: self.maximin || other.maximin,
        }
    }
}

/// Accepts `ne`, `dominated`, `maximin`, `all`, or a comma-separated list.
impl FromStr for Analyses {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Analyses {
            nash: false,
            dominated: false,
            maximin: false,
        };
        for part in s.split(',').map(str::trim) {
            out = out.union(match part.to_ascii_lowercase().as_str() {
                "ne" | "nash" => Analyses::NASH,
                "dominated" | "dominance" => Analyses::DOMINATED,
                "maximin" => Analyses::MAXIMIN,
                "all" => Analyses::ALL,
                _ => {
                    return Err(Error::Parse(format!(
                        "unknown analysis `{part}` (expected ne, maximin, dominated or all)"
                    )))
                }
            });
        }
        Ok(out)
    }
}

/// The index sets produced by the requested analyses; `None` where an
/// analysis was not requested. All lists are sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SolutionSets {
    pub nash: Option<Vec<Profile>>,
    pub dominated_rows: Option<Vec<usize>>,
    pub dominated_cols: Option<Vec<usize>>,
    pub maximin_rows: Option<Vec<usize>>,
    pub maximin_cols: Option<Vec<usize>>,
}

impl SolutionSets {
    /// Adds the 1-based JSON fields for whatever is present.
    pub fn write_json(&self, out: &mut Map<String, Value>) {
        let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        if let Some(ne) = &self.nash {
            let pairs: Vec<[usize; 2]> = ne.iter().map(|p| [p.row + 1, p.col + 1]).collect();
            out.insert("ne".into(), json!(pairs));
        }
        if let (Some(r), Some(c)) = (&self.dominated_rows, &self.dominated_cols) {
            out.insert("dominatedRows".into(), json!(one_based(r)));
            out.insert("dominatedCols".into(), json!(one_based(c)));
        }
        if let (Some(r), Some(c)) = (&self.maximin_rows, &self.maximin_cols) {
            out.insert("maximinRows".into(), json!(one_based(r)));
            out.insert("maximinCols".into(), json!(one_based(c)));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult<T = Rational> {
    pub sets: SolutionSets,
    /// `(player 1, player 2)`, present when maximin was requested.
    pub security_levels: Option<(T, T)>,
}

impl<T: fmt::Display> SolveResult<T> {
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        self.sets.write_json(&mut out);
        if let Some((p, q)) = &self.security_levels {
            out.insert("securityLevels".into(), json!([p.to_string(), q.to_string()]));
        }
        Value::Object(out)
    }
}

impl<T: Ord + Clone> Payoffs<T> {
    fn check_index(&self, row: usize, col: usize) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Nobody gains by deviating alone (weak inequalities).
    pub fn is_nash(&self, row: usize, col: usize) -> Result<bool> {
        self.check_index(row, col)?;
        Ok(self.is_nash_unchecked(row, col))
    }

    fn is_nash_unchecked(&self, row: usize, col: usize) -> bool {
        let u1 = self.u1(row, col);
        let u2 = self.u2(row, col);
        (0..self.rows).all(|i| self.u1(i, col) <= u1) && (0..self.cols).all(|j| self.u2(row, j) <= u2)
    }

    /// All pure Nash equilibria in row-major order.
    pub fn pure_nash(&self) -> Vec<Profile> {
        // column-wise best responses of player 1, row-wise of player 2
        let best1: Vec<&T> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.u1(i, j)).max().expect("non-empty"))
            .collect();
        let best2: Vec<&T> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.u2(i, j)).max().expect("non-empty"))
            .collect();
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.u1(i, j) == best1[j] && self.u2(i, j) == best2[i] {
                    out.push(Profile::new(i, j));
                }
            }
        }
        out
    }

    /// Rows strictly dominated by some other row (single pass).
    pub fn dominated_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| {
                (0..self.rows)
                    .any(|k| k != i && (0..self.cols).all(|j| self.u1(k, j) > self.u1(i, j)))
            })
            .collect()
    }

    /// Columns strictly dominated by some other column (single pass).
    pub fn dominated_cols(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| {
                (0..self.cols)
                    .any(|k| k != j && (0..self.rows).all(|i| self.u2(i, k) > self.u2(i, j)))
            })
            .collect()
    }

    /// Maximin rows and columns with ties, and the two security levels.
    pub fn maximin(&self) -> (Vec<usize>, Vec<usize>, (T, T)) {
        let row_mins: Vec<&T> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.u1(i, j)).min().expect("non-empty"))
            .collect();
        let col_mins: Vec<&T> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.u2(i, j)).min().expect("non-empty"))
            .collect();
        let (rows, v1) = argmax(&row_mins);
        let (cols, v2) = argmax(&col_mins);
        (rows, cols, (v1, v2))
    }

    pub fn solve(&self, analyses: Analyses) -> SolveResult<T> {
        let mut sets = SolutionSets::default();
        let mut security_levels = None;
        if analyses.nash {
            sets.nash = Some(self.pure_nash());
        }
        if analyses.dominated {
            sets.dominated_rows = Some(self.dominated_rows());
            sets.dominated_cols = Some(self.dominated_cols());
        }
        if analyses.maximin {
            let (rows, cols, levels) = self.maximin();
            sets.maximin_rows = Some(rows);
            sets.maximin_cols = Some(cols);
            security_levels = Some(levels);
        }
        SolveResult {
            sets,
            security_levels,
        }
    }
}

fn argmax<T: Ord + Clone>(values: &[&T]) -> (Vec<usize>, T) {
    let best = *values.iter().max().expect("non-empty");
    let idx = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == best)
        .map(|(i, _)| i)
        .collect();
    (idx, best.clone())
}

pub fn find_pure_ne(g: &Bimatrix) -> Result<Vec<Profile>> {
    Ok(g.payoffs()?.pure_nash())
}

/// `(dominated rows, dominated columns)`.
pub fn dominated_strategies(g: &Bimatrix) -> Result<(Vec<usize>, Vec<usize>)> {
    let p = g.payoffs()?;
    Ok((p.dominated_rows(), p.dominated_cols()))
}

/// `(maximin rows, maximin columns, security levels)`.
pub fn maximin(g: &Bimatrix) -> Result<(Vec<usize>, Vec<usize>, (Rational, Rational))> {
    Ok(g.payoffs()?.maximin())
}

/// Whether the 0-based profile `(row, col)` is a Nash equilibrium.
pub fn check_profile(g: &Bimatrix, row: usize, col: usize) -> Result<bool> {
    g.payoffs()?.is_nash(row, col)
}

pub fn solve(g: &Bimatrix, analyses: Analyses) -> Result<SolveResult> {
    Ok(g.payoffs()?.solve(analyses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{extend, extend3, ExtensionClass};
    use crate::game::presets::*;
    use proptest::prelude::*;

    fn profiles(v: &[(usize, usize)]) -> Vec<Profile> {
        v.iter().map(|&(r, c)| Profile::new(r - 1, c - 1)).collect()
    }

    #[test]
    fn prisoners_dilemma_solution() {
        let pd = prisoners_dilemma();
        assert_eq!(find_pure_ne(&pd).unwrap(), profiles(&[(2, 2)]));
        assert_eq!(dominated_strategies(&pd).unwrap(), (vec![0], vec![0]));
        let (rows, cols, levels) = maximin(&pd).unwrap();
        assert_eq!((rows, cols), (vec![1], vec![1]));
        assert_eq!(levels, (Rational::from(1), Rational::from(1)));
        assert!(check_profile(&pd, 1, 1).unwrap());
        assert!(!check_profile(&pd, 0, 0).unwrap());
        assert!(matches!(check_profile(&pd, 2, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn risky_game() {
        let g = risky_two_by_three();
        // (T, M) is strict too: 2 > -100 for player 1, 3 > 1 and 3 > 0 for player 2
        assert_eq!(find_pure_ne(&g).unwrap(), profiles(&[(1, 2), (2, 3)]));
        assert_eq!(dominated_strategies(&g).unwrap(), (vec![], vec![0]));
        let (rows, cols, levels) = maximin(&g).unwrap();
        assert_eq!((rows, cols), (vec![0], vec![1]));
        assert_eq!(levels, (Rational::from(2), Rational::from(2)));
    }

    #[test]
    fn one_strategy_extensions() {
        let pd = prisoners_dilemma();
        let a0 = extend3(&pd, ExtensionClass::A0).unwrap();
        assert_eq!(dominated_strategies(&a0).unwrap(), (vec![0, 2], vec![0, 2]));
        let c0 = extend3(&pd, ExtensionClass::C0).unwrap();
        assert_eq!(dominated_strategies(&c0).unwrap(), (vec![], vec![]));
    }

    #[test]
    fn ties_are_kept() {
        let g = Bimatrix::from_integers(&[[(2, 2), (2, 2)], [(2, 2), (2, 2)]]).unwrap();
        let (rows, cols, _) = maximin(&g).unwrap();
        assert_eq!((rows, cols), (vec![0, 1], vec![0, 1]));
        assert_eq!(find_pure_ne(&g).unwrap().len(), 4);
        assert_eq!(dominated_strategies(&g).unwrap(), (vec![], vec![]));
    }

    #[test]
    fn parametric_input_is_rejected() {
        let a1 = extend(&prisoners_dilemma(), ExtensionClass::A1, None).unwrap();
        assert!(matches!(find_pure_ne(&a1), Err(Error::ParametricInput(_))));
        assert!(matches!(solve(&a1, Analyses::ALL), Err(Error::ParametricInput(_))));
    }

    #[test]
    fn json_is_one_based_and_sparse() {
        let pd = prisoners_dilemma();
        let all = solve(&pd, Analyses::ALL).unwrap().to_json();
        assert_eq!(
            all,
            json!({"ne": [[2, 2]], "dominatedRows": [1], "dominatedCols": [1],
                   "maximinRows": [2], "maximinCols": [2], "securityLevels": ["1", "1"]})
        );
        let ne = solve(&pd, Analyses::NASH).unwrap().to_json();
        assert_eq!(ne, json!({"ne": [[2, 2]]}));
    }

    #[test]
    fn analyses_parse() {
        assert_eq!("all".parse::<Analyses>().unwrap(), Analyses::ALL);
        assert_eq!("ne,maximin".parse::<Analyses>().unwrap(), Analyses::NASH.union(Analyses::MAXIMIN));
        assert!("mixed".parse::<Analyses>().is_err());
    }

    fn small_game() -> impl Strategy<Value = Payoffs<i32>> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            (
                proptest::collection::vec(-4i32..=4, r * c),
                proptest::collection::vec(-4i32..=4, r * c),
            )
                .prop_map(move |(p1, p2)| Payoffs {
                    rows: r,
                    cols: c,
                    p1,
                    p2,
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn nash_matches_brute_force(g in small_game()) {
            let brute: Vec<Profile> = (0..g.rows)
                .flat_map(|i| (0..g.cols).map(move |j| Profile::new(i, j)))
                .filter(|p| g.is_nash(p.row, p.col).unwrap())
                .collect();
            prop_assert_eq!(g.pure_nash(), brute);
        }

        #[test]
        fn dominated_rows_never_in_nash(g in small_game()) {
            let rows = g.dominated_rows();
            let cols = g.dominated_cols();
            for p in g.pure_nash() {
                prop_assert!(!rows.contains(&p.row));
                prop_assert!(!cols.contains(&p.col));
            }
        }

        #[test]
        fn maximin_rows_attain_security_level(g in small_game()) {
            let (rows, cols, (v1, v2)) = g.maximin();
            prop_assert!(!rows.is_empty() && !cols.is_empty());
            for i in rows {
                prop_assert_eq!((0..g.cols).map(|j| *g.u1(i, j)).min().unwrap(), v1);
            }
            for j in cols {
                prop_assert_eq!((0..g.rows).map(|i| *g.u2(i, j)).min().unwrap(), v2);
            }
        }

        #[test]
        fn positive_affine_maps_keep_index_sets(g in small_game(), p in 1i32..5, q in -5i32..5) {
            let mut h = g.clone();
            h.p1.iter_mut().for_each(|x| *x = p * *x + q);
            let a = g.solve(Analyses::ALL);
            let b = h.solve(Analyses::ALL);
            prop_assert_eq!(a.sets, b.sets);
            let (a1, a2) = a.security_levels.unwrap();
            let (b1, b2) = b.security_levels.unwrap();
            prop_assert_eq!((p * a1 + q, a2), (b1, b2));
        }
    }
}

