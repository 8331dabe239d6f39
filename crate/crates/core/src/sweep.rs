//! Exact breakpoint decomposition of a one-parameter game.
//!
//! Every comparison the solver makes is between two payoff polynomials,
//! so the solution sets can only change at real roots of their
//! differences. Those roots split `[lo, hi]` into open intervals; each
//! interval is solved at one rational sample point and each root is
//! solved exactly at the (possibly irrational) root itself.

use std::collections::HashSet;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::game::{Bimatrix, Payoffs};
use crate::poly::PayoffPoly;
use crate::quad::{real_roots_upto_quadratic, QuadAlgebraic};
use crate::rational::Rational;
use crate::solver::{Analyses, SolutionSets};

/// Bisection stops once the bracket is narrower than this.
const ROOT_WIDTH: f64 = 1e-12;
/// A critical point closer than this to zero counts as a touching root.
const TANGENCY: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Span {
    /// The open interval `(from, to)` with the point it was solved at.
    Open {
        from: QuadAlgebraic,
        to: QuadAlgebraic,
        sample: Rational,
    },
    Point(QuadAlgebraic),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub span: Span,
    pub sets: SolutionSets,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub parameter: String,
    pub lo: Rational,
    pub hi: Rational,
    /// Strictly increasing, all inside `(lo, hi)`.
    pub breakpoints: Vec<QuadAlgebraic>,
    /// Open interval, breakpoint, open interval, ..., open interval.
    pub segments: Vec<Segment>,
    pub at_lo: SolutionSets,
    pub at_hi: SolutionSets,
    /// Set when some root had to be located numerically.
    pub approximate: bool,
}

impl SweepResult {
    /// The segment containing `x`; `None` outside `[lo, hi]`. The domain
    /// ends fall into the first and last open intervals.
    pub fn segment_at(&self, x: &Rational) -> Option<&Segment> {
        if x < &self.lo || x > &self.hi {
            return None;
        }
        let q = QuadAlgebraic::from_rational(x.clone());
        let k = self.breakpoints.partition_point(|b| b < &q);
        if self.breakpoints.get(k) == Some(&q) {
            Some(&self.segments[2 * k + 1])
        } else {
            Some(&self.segments[2 * k])
        }
    }

    /// Solution sets at `x`, using the boundary solutions at `lo` and `hi`.
    pub fn sets_at(&self, x: &Rational) -> Option<&SolutionSets> {
        if x == &self.lo {
            Some(&self.at_lo)
        } else if x == &self.hi {
            Some(&self.at_hi)
        } else {
            self.segment_at(x).map(|s| &s.sets)
        }
    }

    pub fn to_json(&self) -> Value {
        let sets = |s: &SolutionSets| {
            let mut m = Map::new();
            s.write_json(&mut m);
            m
        };
        let segments: Vec<Value> = self
            .segments
            .iter()
            .map(|seg| {
                let mut m = sets(&seg.sets);
                match &seg.span {
                    Span::Open { from, to, sample } => {
                        m.insert("kind".into(), json!("interval"));
                        m.insert("from".into(), point_json(from));
                        m.insert("to".into(), point_json(to));
                        m.insert("sample".into(), json!(sample.to_string()));
                    }
                    Span::Point(x) => {
                        m.insert("kind".into(), json!("point"));
                        m.insert("at".into(), point_json(x));
                    }
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "parameter": self.parameter,
            "domain": [self.lo.to_string(), self.hi.to_string()],
            "approximate": self.approximate,
            "breakpoints": self.breakpoints.iter().map(point_json).collect::<Vec<_>>(),
            "segments": segments,
            "atLo": sets(&self.at_lo),
            "atHi": sets(&self.at_hi),
        })
    }
}

/// `{"rational": r, "surd": {"q": q, "d": d} | null}` for `r + q√d`, plus a
/// decimal approximation for display.
pub fn point_json(x: &QuadAlgebraic) -> Value {
    let surd = if x.is_rational() {
        Value::Null
    } else {
        json!({"q": x.surd_coefficient().to_string(), "d": x.radicand().to_string()})
    };
    json!({"rational": x.rational_part().to_string(), "surd": surd, "approx": x.to_f64()})
}

/// Exact sweep; fails with `DegreeTooHigh` when a comparison polynomial
/// has degree above two.
pub fn sweep(g: &Bimatrix, lo: &Rational, hi: &Rational, analyses: Analyses) -> Result<SweepResult> {
    sweep_with(g, lo, hi, analyses, false)
}

/// Like [`sweep`], but locates roots of higher-degree comparisons
/// numerically and marks the result approximate.
pub fn sweep_allow_numeric(
    g: &Bimatrix,
    lo: &Rational,
    hi: &Rational,
    analyses: Analyses,
) -> Result<SweepResult> {
    sweep_with(g, lo, hi, analyses, true)
}

fn sweep_with(
    g: &Bimatrix,
    lo: &Rational,
    hi: &Rational,
    analyses: Analyses,
    allow_numeric: bool,
) -> Result<SweepResult> {
    let parameter = g.parameter().ok_or(Error::NoParameter)?.to_owned();
    if lo >= hi {
        return Err(Error::EmptyDomain {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    if analyses.is_empty() {
        return Err(Error::Param("no analysis requested".into()));
    }
    let mut finder = RootFinder {
        lo,
        hi,
        allow_numeric,
        approximate: false,
        seen: HashSet::new(),
        roots: Vec::new(),
    };

    let u1 = |i: usize, j: usize| &g.entry(i, j).u1;
    let u2 = |i: usize, j: usize| &g.entry(i, j).u2;
    let (n, m) = (g.rows(), g.cols());

    if analyses.nash || analyses.dominated {
        for j in 0..m {
            for i in 0..n {
                for k in i + 1..n {
                    finder.add(&(u1(i, j) - u1(k, j)))?;
                }
            }
        }
        for i in 0..n {
            for j in 0..m {
                for l in j + 1..m {
                    finder.add(&(u2(i, j) - u2(i, l)))?;
                }
            }
        }
    }
    if analyses.maximin {
        maximin_roots(g, &mut finder)?;
    }

    let mut breakpoints = finder.roots;
    breakpoints.sort();
    breakpoints.dedup();
    let approximate = finder.approximate;

    let lo_q = QuadAlgebraic::from_rational(lo.clone());
    let hi_q = QuadAlgebraic::from_rational(hi.clone());
    let solve_rational = |x: &Rational| sets_of(&g.evaluate(x).payoffs().expect("constant"), analyses);
    let solve_point = |x: &QuadAlgebraic| match x.as_rational() {
        Some(r) => solve_rational(r),
        None => sets_of(&g.payoffs_at(x), analyses),
    };

    let mut segments = Vec::with_capacity(2 * breakpoints.len() + 1);
    let mut bounds = Vec::with_capacity(breakpoints.len() + 2);
    bounds.push(lo_q);
    bounds.extend(breakpoints.iter().cloned());
    bounds.push(hi_q);
    for (k, w) in bounds.windows(2).enumerate() {
        if k > 0 {
            segments.push(Segment {
                span: Span::Point(w[0].clone()),
                sets: solve_point(&w[0]),
            });
        }
        let sample = w[0].rational_between(&w[1], lo, hi);
        segments.push(Segment {
            sets: solve_rational(&sample),
            span: Span::Open {
                from: w[0].clone(),
                to: w[1].clone(),
                sample,
            },
        });
    }

    let (breakpoints, segments) = merge(segments);
    Ok(SweepResult {
        parameter,
        lo: lo.clone(),
        hi: hi.clone(),
        breakpoints,
        segments,
        at_lo: solve_rational(lo),
        at_hi: solve_rational(hi),
        approximate,
    })
}

fn sets_of<T: Ord + Clone>(p: &Payoffs<T>, analyses: Analyses) -> SolutionSets {
    p.solve(analyses).sets
}

/// Drops every breakpoint whose point and both neighbouring intervals
/// share one solution set, joining the intervals around it.
fn merge(segments: Vec<Segment>) -> (Vec<QuadAlgebraic>, Vec<Segment>) {
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
    let mut iter = segments.into_iter();
    out.push(iter.next().expect("at least one interval"));
    while let (Some(point), Some(next)) = (iter.next(), iter.next()) {
        let prev = out.last_mut().expect("non-empty");
        if prev.sets == point.sets && point.sets == next.sets {
            if let (Span::Open { to, .. }, Span::Open { to: next_to, .. }) = (&mut prev.span, next.span) {
                *to = next_to;
            }
        } else {
            out.push(point);
            out.push(next);
        }
    }
    let breakpoints = out
        .iter()
        .filter_map(|s| match &s.span {
            Span::Point(x) => Some(x.clone()),
            Span::Open { .. } => None,
        })
        .collect();
    (breakpoints, out)
}

/// Candidates for maximin: first the crossings inside each row (column),
/// then, on every interval where the minimising entries are fixed, the
/// crossings between the row (column) minima.
fn maximin_roots(g: &Bimatrix, finder: &mut RootFinder<'_>) -> Result<()> {
    let (n, m) = (g.rows(), g.cols());
    // player 1 looks at rows of u1, player 2 at columns of u2
    let row_lines: Vec<Vec<&PayoffPoly>> = (0..n)
        .map(|i| (0..m).map(|j| &g.entry(i, j).u1).collect())
        .collect();
    let col_lines: Vec<Vec<&PayoffPoly>> = (0..m)
        .map(|j| (0..n).map(|i| &g.entry(i, j).u2).collect())
        .collect();

    let mut inner = RootFinder {
        lo: finder.lo,
        hi: finder.hi,
        allow_numeric: finder.allow_numeric,
        approximate: false,
        seen: HashSet::new(),
        roots: Vec::new(),
    };
    for line in row_lines.iter().chain(&col_lines) {
        for a in 0..line.len() {
            for b in a + 1..line.len() {
                inner.add(&(line[a] - line[b]))?;
            }
        }
    }
    let mut cuts = inner.roots.clone();
    cuts.sort();
    cuts.dedup();
    finder.approximate |= inner.approximate;
    for r in inner.roots {
        finder.push(r);
    }

    let mut bounds = vec![QuadAlgebraic::from_rational(finder.lo.clone())];
    bounds.extend(cuts);
    bounds.push(QuadAlgebraic::from_rational(finder.hi.clone()));
    for w in bounds.windows(2) {
        let sample = w[0].rational_between(&w[1], finder.lo, finder.hi);
        for lines in [&row_lines, &col_lines] {
            let minima: Vec<&PayoffPoly> = lines
                .iter()
                .map(|line| {
                    *line
                        .iter()
                        .min_by_key(|p| p.evaluate(&sample))
                        .expect("non-empty")
                })
                .collect();
            for a in 0..minima.len() {
                for b in a + 1..minima.len() {
                    finder.add_within(&(minima[a] - minima[b]), &w[0], &w[1])?;
                }
            }
        }
    }
    Ok(())
}

struct RootFinder<'a> {
    lo: &'a Rational,
    hi: &'a Rational,
    allow_numeric: bool,
    approximate: bool,
    /// Monic forms already processed on the whole domain.
    seen: HashSet<PayoffPoly>,
    roots: Vec<QuadAlgebraic>,
}

impl RootFinder<'_> {
    fn push(&mut self, r: QuadAlgebraic) {
        self.roots.push(r);
    }

    /// Roots of `p` strictly inside `(lo, hi)`.
    fn add(&mut self, p: &PayoffPoly) -> Result<()> {
        if p.is_constant() || !self.seen.insert(p.monic()) {
            return Ok(());
        }
        let lo = QuadAlgebraic::from_rational(self.lo.clone());
        let hi = QuadAlgebraic::from_rational(self.hi.clone());
        self.add_within(p, &lo, &hi)
    }

    /// Roots of `p` strictly inside `(from, to)`.
    fn add_within(&mut self, p: &PayoffPoly, from: &QuadAlgebraic, to: &QuadAlgebraic) -> Result<()> {
        if p.is_constant() {
            return Ok(());
        }
        let roots = if p.degree() <= 2 {
            real_roots_upto_quadratic(p.coeffs())
        } else if self.allow_numeric {
            self.approximate = true;
            numeric_roots(p, self.lo, self.hi)
                .into_iter()
                .map(QuadAlgebraic::from_rational)
                .collect()
        } else {
            return Err(Error::DegreeTooHigh(p.degree()));
        };
        self.roots
            .extend(roots.into_iter().filter(|r| r > from && r < to));
        Ok(())
    }
}

/// Approximate real roots of `p` in `[lo, hi]`: the critical points split
/// the range into monotone pieces, each sign change is bisected exactly
/// down to `ROOT_WIDTH`, and critical points where `|p|` is tiny are
/// taken as double roots.
pub fn numeric_roots(p: &PayoffPoly, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    if p.is_constant() {
        return Vec::new();
    }
    if p.degree() <= 2 {
        // the exact roots rounded to rationals keep the recursion simple
        return real_roots_upto_quadratic(p.coeffs())
            .into_iter()
            .filter(|r| r >= &QuadAlgebraic::from_rational(lo.clone()) && r <= &QuadAlgebraic::from_rational(hi.clone()))
            .map(|r| approximate(&r, lo, hi))
            .collect();
    }
    let critical = numeric_roots(&p.derivative(), lo, hi);
    let mut knots = vec![lo.clone()];
    knots.extend(critical.iter().cloned());
    knots.push(hi.clone());
    let mut roots = Vec::new();
    for c in &critical {
        if p.evaluate(c).to_f64().abs() < TANGENCY {
            roots.push(c.clone());
        }
    }
    for w in knots.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (fa, fb) = (p.evaluate(a), p.evaluate(b));
        if fa.is_zero() {
            roots.push(a.clone());
        }
        if fb.is_zero() {
            roots.push(b.clone());
        }
        if fa.signum() * fb.signum() < 0 {
            roots.push(bisect(p, a.clone(), b.clone(), fa.signum()));
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn bisect(p: &PayoffPoly, mut a: Rational, mut b: Rational, sign_a: i8) -> Rational {
    let width = Rational::from_f64(ROOT_WIDTH).expect("finite");
    while &b - &a > width {
        let mid = a.midpoint(&b);
        let s = p.evaluate(&mid).signum();
        if s == 0 {
            return mid;
        }
        if s == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    a.midpoint(&b)
}

/// A rational within `ROOT_WIDTH` of `x`.
fn approximate(x: &QuadAlgebraic, lo: &Rational, hi: &Rational) -> Rational {
    if let Some(r) = x.as_rational() {
        return r.clone();
    }
    let width = Rational::from_f64(ROOT_WIDTH).expect("finite");
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while &b - &a > width {
        let mid = a.midpoint(&b);
        if &QuadAlgebraic::from_rational(mid.clone()) < x {
            a = mid;
        } else {
            b = mid;
        }
    }
    a.midpoint(&b)
}
