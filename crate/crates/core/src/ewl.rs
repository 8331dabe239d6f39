//! Payoffs of the EWL quantum scheme for 2×2 games.
//!
//! A player's strategy is the unitary `U(θ, α, β)`. For a profile
//! `(U₁, U₂)` the expected payoff is a convex combination of the four
//! classical outcomes whose weights are squared trigonometric expressions
//! of the six angles. Angles given as rational multiples of π with
//! denominator dividing 12 have sines and cosines in `Q(√2, √3)`, so the
//! weights are computed exactly there; any other angle falls back to `f64`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::game::{Bimatrix, PayoffPair};
use crate::rational::Rational;

/// An angle, either an exact multiple of π or a float in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    PiMultiple(Rational),
    Radians(f64),
}

impl Angle {
    pub fn pi(multiple: Rational) -> Self {
        Angle::PiMultiple(multiple)
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(k) => k.to_f64() * PI,
            Angle::Radians(r) => *r,
        }
    }

    fn combine(&self, other: &Angle, sign: i64) -> Angle {
        match (self, other) {
            (Angle::PiMultiple(a), Angle::PiMultiple(b)) => {
                Angle::PiMultiple(a + b * Rational::from_integer(sign))
            }
            _ => Angle::Radians(self.radians() + sign as f64 * other.radians()),
        }
    }

    fn plus(&self, other: &Angle) -> Angle {
        self.combine(other, 1)
    }

    fn minus(&self, other: &Angle) -> Angle {
        self.combine(other, -1)
    }

    fn half(&self) -> Angle {
        match self {
            Angle::PiMultiple(k) => Angle::PiMultiple(k * Rational::new(1, 2)),
            Angle::Radians(r) => Angle::Radians(r / 2.0),
        }
    }

    /// Reduced into `[0, 2π)`.
    fn normalized(&self) -> Angle {
        match self {
            Angle::PiMultiple(k) => {
                let two = Rational::from_integer(2);
                let turns = Rational::from_integer((k / &two).floor());
                Angle::PiMultiple(k - turns * two)
            }
            Angle::Radians(r) => Angle::Radians(r.rem_euclid(2.0 * PI)),
        }
    }

    /// Index `k` with angle = kπ/12, when exact.
    fn twelfths(&self) -> Option<i64> {
        let Angle::PiMultiple(m) = self else {
            return None;
        };
        let k = m * Rational::from_integer(12);
        if !k.is_integer() {
            return None;
        }
        let k: num::BigInt = k.numer() % 24;
        let k: i64 = k.try_into().ok()?;
        Some(k.rem_euclid(24))
    }
}

/// Parameters `(θ, α, β)` of an EWL strategy, with `θ ∈ [0, π]` and `α, β`
/// reduced into `[0, 2π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryParams {
    theta: Angle,
    alpha: Angle,
    beta: Angle,
}

impl UnitaryParams {
    pub fn new(theta: Angle, alpha: Angle, beta: Angle) -> Result<Self> {
        let ok = match &theta {
            Angle::PiMultiple(k) => !k.is_negative() && k <= &Rational::one(),
            Angle::Radians(r) => r.is_finite() && (0.0..=PI).contains(r),
        };
        if !ok {
            return Err(Error::AngleOutOfRange(format!(
                "theta = {} rad must lie in [0, pi]",
                theta.radians()
            )));
        }
        if [&alpha, &beta]
            .iter()
            .any(|a| matches!(a, Angle::Radians(r) if !r.is_finite()))
        {
            return Err(Error::AngleOutOfRange("alpha and beta must be finite".into()));
        }
        Ok(UnitaryParams {
            theta,
            alpha: alpha.normalized(),
            beta: beta.normalized(),
        })
    }

    /// Angles as multiples of π: `(1/3, 1/2, 1)` means `(π/3, π/2, π)`.
    pub fn from_pi_multiples(theta: Rational, alpha: Rational, beta: Rational) -> Result<Self> {
        Self::new(Angle::pi(theta), Angle::pi(alpha), Angle::pi(beta))
    }

    pub fn from_radians(theta: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Angle::Radians(theta), Angle::Radians(alpha), Angle::Radians(beta))
    }

    /// `I = U(0, 0, 0)`.
    pub fn identity() -> Self {
        UnitaryParams {
            theta: Angle::pi(Rational::zero()),
            alpha: Angle::pi(Rational::zero()),
            beta: Angle::pi(Rational::zero()),
        }
    }

    /// `iX = U(π, 0, 0)`.
    pub fn flip() -> Self {
        UnitaryParams {
            theta: Angle::pi(Rational::one()),
            alpha: Angle::pi(Rational::zero()),
            beta: Angle::pi(Rational::zero()),
        }
    }

    pub fn theta(&self) -> &Angle {
        &self.theta
    }

    pub fn alpha(&self) -> &Angle {
        &self.alpha
    }

    pub fn beta(&self) -> &Angle {
        &self.beta
    }
}

/// Squared amplitudes of the four measurement outcomes, in the order
/// (1,1), (1,2), (2,1), (2,2).
#[derive(Clone, Debug, PartialEq)]
pub enum OutcomeWeights {
    Exact([Rational; 4]),
    Approx([f64; 4]),
}

impl OutcomeWeights {
    pub fn to_f64(&self) -> [f64; 4] {
        match self {
            OutcomeWeights::Exact(w) => [w[0].to_f64(), w[1].to_f64(), w[2].to_f64(), w[3].to_f64()],
            OutcomeWeights::Approx(w) => *w,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OutcomeWeights::Exact(_))
    }
}

/// Expected payoffs `(player 1, player 2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum EwlPayoff {
    Exact(Rational, Rational),
    Approx(f64, f64),
}

impl EwlPayoff {
    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            EwlPayoff::Exact(a, b) => (a.to_f64(), b.to_f64()),
            EwlPayoff::Approx(a, b) => (*a, *b),
        }
    }
}

/// The four angle expressions feeding each weight:
/// `w = (p·c(x) + q·s(y))²` in terms of cos/sin of half-angles and the
/// combined phases.
struct Amplitudes<T> {
    w11: (T, T),
    w12: (T, T),
    w21: (T, T),
    w22: (T, T),
}

fn amplitudes<T, C, S>(u1: &UnitaryParams, u2: &UnitaryParams, cos: C, sin: S) -> Option<Amplitudes<T>>
where
    T: Clone + Mul<Output = T> + Add<Output = T> + Sub<Output = T>,
    C: Fn(&Angle) -> Option<T>,
    S: Fn(&Angle) -> Option<T>,
{
    let (h1, h2) = (u1.theta.half(), u2.theta.half());
    let (c1, s1, c2, s2) = (cos(&h1)?, sin(&h1)?, cos(&h2)?, sin(&h2)?);
    let a_sum = u1.alpha.plus(&u2.alpha);
    let b_sum = u1.beta.plus(&u2.beta);
    let a1_b2 = u1.alpha.minus(&u2.beta);
    let a2_b1 = u2.alpha.minus(&u1.beta);
    let cc = c1.clone() * c2.clone();
    let ss = s1.clone() * s2.clone();
    let cs = c1 * s2;
    let sc = s1 * c2;
    Some(Amplitudes {
        w11: (cos(&a_sum)? * cc.clone(), sin(&b_sum)? * ss.clone()),
        w12: (cos(&a1_b2)? * cs.clone(), sin(&a2_b1)? * sc.clone()),
        w21: (sin(&a1_b2)? * cs, cos(&a2_b1)? * sc),
        w22: (sin(&a_sum)? * cc, cos(&b_sum)? * ss),
    })
}

fn weights_f64(u1: &UnitaryParams, u2: &UnitaryParams) -> [f64; 4] {
    let a = amplitudes(u1, u2, |x| Some(x.radians().cos()), |x| Some(x.radians().sin()))
        .expect("float trig is total");
    let sq = |v: f64| v * v;
    [
        sq(a.w11.0 + a.w11.1),
        sq(a.w12.0 + a.w12.1),
        sq(a.w21.0 + a.w21.1),
        sq(a.w22.0 - a.w22.1),
    ]
}

fn weights_exact(u1: &UnitaryParams, u2: &UnitaryParams) -> Option<[Rational; 4]> {
    let a = amplitudes(u1, u2, |x| x.twelfths().map(cos_twelfths), |x| {
        x.twelfths().map(|k| cos_twelfths((k - 6).rem_euclid(24)))
    })?;
    let sq = |v: Surd6| (v.clone() * v).as_rational();
    Some([
        sq(a.w11.0 + a.w11.1)?,
        sq(a.w12.0 + a.w12.1)?,
        sq(a.w21.0 + a.w21.1)?,
        sq(a.w22.0 - a.w22.1)?,
    ])
}

/// Outcome weights for the profile `(u1, u2)`.
pub fn ewl_weights(u1: &UnitaryParams, u2: &UnitaryParams) -> OutcomeWeights {
    match weights_exact(u1, u2) {
        Some(w) => OutcomeWeights::Exact(w),
        None => OutcomeWeights::Approx(weights_f64(u1, u2)),
    }
}

fn require_classical(g: &Bimatrix) -> Result<()> {
    g.require_two_by_two()?;
    g.require_numeric()
}

fn classical_outcomes(g: &Bimatrix) -> [(Rational, Rational); 4] {
    let e = |i: usize, j: usize| {
        let p = g.entry(i, j);
        (p.u1.coeff(0), p.u2.coeff(0))
    };
    [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
}

/// Expected payoff of `(u1, u2)` in the EWL quantisation of `g`.
pub fn ewl_payoff(g: &Bimatrix, u1: &UnitaryParams, u2: &UnitaryParams) -> Result<EwlPayoff> {
    require_classical(g)?;
    let outcomes = classical_outcomes(g);
    Ok(match ewl_weights(u1, u2) {
        OutcomeWeights::Exact(w) => {
            let p1 = w.iter().zip(&outcomes).map(|(w, o)| w * &o.0).sum();
            let p2 = w.iter().zip(&outcomes).map(|(w, o)| w * &o.1).sum();
            EwlPayoff::Exact(p1, p2)
        }
        OutcomeWeights::Approx(w) => {
            let p1 = w.iter().zip(&outcomes).map(|(w, o)| w * o.0.to_f64()).sum();
            let p2 = w.iter().zip(&outcomes).map(|(w, o)| w * o.1.to_f64()).sum();
            EwlPayoff::Approx(p1, p2)
        }
    })
}

/// Exact payoff matrix of the game where both players choose among
/// `strategies`. Fails with [`Error::InexactWeights`] if any profile has
/// irrational weights.
pub fn ewl_matrix(g: &Bimatrix, strategies: &[UnitaryParams]) -> Result<Bimatrix> {
    require_classical(g)?;
    let mut rows = Vec::with_capacity(strategies.len());
    for s1 in strategies {
        let mut row = Vec::with_capacity(strategies.len());
        for s2 in strategies {
            match ewl_payoff(g, s1, s2)? {
                EwlPayoff::Exact(a, b) => row.push(PayoffPair::new(a, b)),
                EwlPayoff::Approx(..) => return Err(Error::InexactWeights),
            }
        }
        rows.push(row);
    }
    Bimatrix::new(rows)
}

/// Floating-point payoff matrix over `strategies`, for arbitrary angles.
pub fn ewl_matrix_f64(g: &Bimatrix, strategies: &[UnitaryParams]) -> Result<Vec<Vec<(f64, f64)>>> {
    require_classical(g)?;
    strategies
        .iter()
        .map(|s1| {
            strategies
                .iter()
                .map(|s2| ewl_payoff(g, s1, s2).map(|p| p.to_f64()))
                .collect()
        })
        .collect()
}

/// The 3×3 extension over `{I, iX, U}`: the classical game bordered by the
/// payoffs of every profile involving `u`.
pub fn extension3x3_from_u(g: &Bimatrix, u: &UnitaryParams) -> Result<Bimatrix> {
    let strategies = [UnitaryParams::identity(), UnitaryParams::flip(), u.clone()];
    let labels = ["I", "iX", "U"];
    Ok(ewl_matrix(g, &strategies)?.labelled(&labels, &labels))
}

/// Element `a + b√2 + c√3 + d√6` of `Q(√2, √3)`.
#[derive(Clone, Debug, PartialEq)]
struct Surd6([Rational; 4]);

impl Surd6 {
    fn new(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Self {
        let r = |(n, m): (i64, i64)| Rational::new(n, m);
        Surd6([r(a), r(b), r(c), r(d)])
    }

    fn as_rational(&self) -> Option<Rational> {
        self.0[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| self.0[0].clone())
    }
}

impl Add for Surd6 {
    type Output = Surd6;
    fn add(self, rhs: Surd6) -> Surd6 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Surd6([a + e, b + f, c + g, d + h])
    }
}

impl Neg for Surd6 {
    type Output = Surd6;
    fn neg(self) -> Surd6 {
        let [a, b, c, d] = self.0;
        Surd6([-a, -b, -c, -d])
    }
}

impl Sub for Surd6 {
    type Output = Surd6;
    fn sub(self, rhs: Surd6) -> Surd6 {
        self + (-rhs)
    }
}

impl Mul for Surd6 {
    type Output = Surd6;
    fn mul(self, rhs: Surd6) -> Surd6 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        let k = |n: i64| Rational::from_integer(n);
        // basis products: √2√2=2, √3√3=3, √6√6=6, √2√3=√6, √2√6=2√3, √3√6=3√2
        let one = a * e + k(2) * b * f + k(3) * c * g + k(6) * d * h;
        let r2 = a * f + b * e + k(3) * (c * h + d * g);
        let r3 = a * g + c * e + k(2) * (b * h + d * f);
        let r6 = a * h + d * e + b * g + c * f;
        Surd6([one, r2, r3, r6])
    }
}

/// `cos(kπ/12)` for `k ∈ [0, 24)`.
fn cos_twelfths(k: i64) -> Surd6 {
    let k = k.rem_euclid(24);
    if k > 12 {
        return cos_twelfths(24 - k);
    }
    if k > 6 {
        return -cos_twelfths(12 - k);
    }
    let z = (0, 1);
    match k {
        0 => Surd6::new((1, 1), z, z, z),
        1 => Surd6::new(z, (1, 4), z, (1, 4)),
        2 => Surd6::new(z, z, (1, 2), z),
        3 => Surd6::new(z, (1, 2), z, z),
        4 => Surd6::new((1, 2), z, z, z),
        5 => Surd6::new(z, (-1, 4), z, (1, 4)),
        _ => Surd6::new(z, z, z, z),
    }
}
