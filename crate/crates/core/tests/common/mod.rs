#![allow(dead_code)]

use num::Integer;
use qegs_core::{Bimatrix, PayoffPair, Payoffs, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_game(rng: &mut StdRng, rows: usize, cols: usize, range: i64) -> Bimatrix {
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| PayoffPair::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range)))
                .collect()
        })
        .collect();
    Bimatrix::new(entries).unwrap()
}

/// A 2×2 game with `Δ² = (Δ¹)ᵀ`.
pub fn random_symmetric(rng: &mut StdRng, range: i64) -> Bimatrix {
    let mut v = || rng.gen_range(-range..=range);
    let (a, b, c, d) = (v(), v(), v(), v());
    Bimatrix::from_integers(&[[(a, a), (b, c)], [(c, b), (d, d)]]).unwrap()
}

/// Payoffs of a game with polynomial entries of degree ≤ 2 at `x = k/n`,
/// scaled by the positive integer `n² · lcm(denominators)` so that plain
/// integer comparisons give the same order as the exact values.
pub struct IntegerGrid {
    rows: usize,
    cols: usize,
    n: i128,
    p1: Vec<[i128; 3]>,
    p2: Vec<[i128; 3]>,
}

impl IntegerGrid {
    pub fn new(g: &Bimatrix, n: i64) -> Self {
        assert!(g.max_degree() <= 2);
        let polys: Vec<_> = g.entries().iter().flatten().flat_map(|p| [&p.u1, &p.u2]).collect();
        let lcm = polys
            .iter()
            .flat_map(|p| (0..3).map(move |i| p.coeff(i)))
            .fold(num::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let lcm = Rational::from_integer(lcm);
        let scaled = |p: &qegs_core::PayoffPoly| {
            let mut out = [0i128; 3];
            for (i, o) in out.iter_mut().enumerate() {
                let c = p.coeff(i) * lcm.clone();
                assert!(c.is_integer());
                *o = c.numer().try_into().unwrap();
            }
            out
        };
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        for pair in g.entries().iter().flatten() {
            p1.push(scaled(&pair.u1));
            p2.push(scaled(&pair.u2));
        }
        IntegerGrid {
            rows: g.rows(),
            cols: g.cols(),
            n: n as i128,
            p1,
            p2,
        }
    }

    pub fn at(&self, k: i64) -> Payoffs<i128> {
        let k = k as i128;
        let n = self.n;
        let eval = |c: &[i128; 3]| c[0] * n * n + c[1] * k * n + c[2] * k * k;
        Payoffs {
            rows: self.rows,
            cols: self.cols,
            p1: self.p1.iter().map(eval).collect(),
            p2: self.p2.iter().map(eval).collect(),
        }
    }
}
