//! Real quadratic irrationals `r + q·√d` with exact ordering.
//!
//! These are the endpoints produced when a payoff difference of degree two
//! is solved with the quadratic formula. Comparisons never touch floating
//! point: the sign of `a + b√d` is decided by comparing `a²` with `b²d`.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Trial division bound used when extracting square factors from radicands.
const TRIAL_BOUND: u64 = 100_000;

/// `rational + surd·√radicand`.
///
/// The radicand is zero exactly when the surd coefficient is zero, and is
/// otherwise at least 2. Square factors are pulled out by trial division;
/// a radicand whose cofactor after trial division exceeds `TRIAL_BOUND³`
/// may keep a large square factor, which only affects presentation since
/// ordering and equality are decided exactly.
#[derive(Clone)]
pub struct QuadAlgebraic {
    rational: Rational,
    surd: Rational,
    radicand: BigInt,
}

impl QuadAlgebraic {
    pub fn new(rational: Rational, surd: Rational, radicand: impl Into<BigInt>) -> Self {
        let radicand: BigInt = radicand.into();
        assert!(!radicand.is_negative(), "negative radicand");
        if surd.is_zero() || radicand.is_zero() {
            return QuadAlgebraic::from_rational(rational);
        }
        let (square, free) = split_square(&radicand);
        let surd = surd * Rational::from_integer(square);
        if free.is_one() {
            return QuadAlgebraic::from_rational(rational + surd);
        }
        QuadAlgebraic {
            rational,
            surd,
            radicand: free,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadAlgebraic {
            rational: r,
            surd: Rational::zero(),
            radicand: BigInt::zero(),
        }
    }

    /// `√r` for a nonnegative rational.
    pub fn sqrt(r: &Rational) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        // √(n/d) = √(n·d) / d
        let d = r.denom().clone();
        let nd = r.numer() * &d;
        QuadAlgebraic::new(Rational::zero(), Rational::new(1, d), nd)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_coefficient(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn signum(&self) -> i8 {
        sign_of(&self.rational, &self.surd, &self.radicand)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return self.rational.to_f64();
        }
        let d = self.radicand.to_f64().unwrap_or(f64::INFINITY);
        self.rational.to_f64() + self.surd.to_f64() * d.sqrt()
    }

    pub fn neg(&self) -> Self {
        QuadAlgebraic {
            rational: -&self.rational,
            surd: -&self.surd,
            radicand: self.radicand.clone(),
        }
    }

    fn shares_field(&self, other: &QuadAlgebraic) -> bool {
        self.is_rational() || other.is_rational() || self.radicand == other.radicand
    }

    fn common_radicand(&self, other: &QuadAlgebraic) -> BigInt {
        if self.is_rational() {
            other.radicand.clone()
        } else {
            self.radicand.clone()
        }
    }

    /// Sum, when both values lie in the same quadratic field.
    pub fn checked_add(&self, other: &QuadAlgebraic) -> Option<QuadAlgebraic> {
        self.shares_field(other).then(|| {
            QuadAlgebraic::new(
                &self.rational + &other.rational,
                &self.surd + &other.surd,
                self.common_radicand(other),
            )
        })
    }

    pub fn checked_sub(&self, other: &QuadAlgebraic) -> Option<QuadAlgebraic> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &QuadAlgebraic) -> Option<QuadAlgebraic> {
        self.shares_field(other).then(|| {
            let d = Rational::from_integer(self.common_radicand(other));
            let rational = &self.rational * &other.rational + &self.surd * &other.surd * &d;
            let surd = &self.rational * &other.surd + &self.surd * &other.rational;
            QuadAlgebraic::new(rational, surd, self.common_radicand(other))
        })
    }

    pub fn scale(&self, k: &Rational) -> QuadAlgebraic {
        QuadAlgebraic::new(&self.rational * k, &self.surd * k, self.radicand.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> QuadAlgebraic {
        QuadAlgebraic {
            rational: &self.rational + k,
            surd: self.surd.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Some rational strictly between `self` and `upper`, found by bisecting
    /// the rational bracket `[lo, hi]` that must enclose both values.
    pub fn rational_between(&self, upper: &QuadAlgebraic, lo: &Rational, hi: &Rational) -> Rational {
        assert!(self < upper, "rational_between needs an increasing pair");
        if let (Some(a), Some(b)) = (self.as_rational(), upper.as_rational()) {
            return a.midpoint(b);
        }
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        loop {
            let mid = lo.midpoint(&hi);
            let m = QuadAlgebraic::from_rational(mid.clone());
            if &m <= self {
                lo = mid;
            } else if &m >= upper {
                hi = mid;
            } else {
                return mid;
            }
        }
    }
}

impl From<Rational> for QuadAlgebraic {
    fn from(r: Rational) -> Self {
        QuadAlgebraic::from_rational(r)
    }
}

/// Sign of `a + b·√d` for `d ≥ 0`.
fn sign_of(a: &Rational, b: &Rational, d: &BigInt) -> i8 {
    let sa = a.signum();
    let sb = if d.is_zero() { 0 } else { b.signum() };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * Rational::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn ordering_of(sign: i8) -> Ordering {
    sign.cmp(&0)
}

impl Ord for QuadAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = &self.rational - &other.rational;
        if self.shares_field(other) {
            let ds = &self.surd - &other.surd;
            return ordering_of(sign_of(&da, &ds, &self.common_radicand(other)));
        }
        // u = da + s1·√d1, v = s2·√d2; decide sign(u − v)
        let su = sign_of(&da, &self.surd, &self.radicand);
        let sv = other.surd.signum();
        if su != sv || su == 0 {
            return su.cmp(&sv);
        }
        // same nonzero sign: compare squares
        let d1 = Rational::from_integer(self.radicand.clone());
        let d2 = Rational::from_integer(other.radicand.clone());
        let sq_rational = &da * &da + &self.surd * &self.surd * &d1 - &other.surd * &other.surd * &d2;
        let sq_surd = Rational::from_integer(2) * &da * &self.surd;
        let t = sign_of(&sq_rational, &sq_surd, &self.radicand);
        ordering_of(su * t)
    }
}

impl PartialOrd for QuadAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for QuadAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadAlgebraic {}

impl PartialEq<Rational> for QuadAlgebraic {
    fn eq(&self, other: &Rational) -> bool {
        self.as_rational() == Some(other)
    }
}

impl PartialOrd<Rational> for QuadAlgebraic {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(ordering_of(sign_of(
            &(&self.rational - other),
            &self.surd,
            &self.radicand,
        )))
    }
}

impl fmt::Display for QuadAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let root = format!("sqrt({})", self.radicand);
        let mag = self.surd.abs();
        let surd = if mag == Rational::one() {
            root
        } else {
            format!("{mag}*{root}")
        };
        if self.rational.is_zero() {
            let sign = if self.surd.is_negative() { "-" } else { "" };
            write!(f, "{sign}{surd}")
        } else {
            let sign = if self.surd.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{surd}", self.rational)
        }
    }
}

impl fmt::Debug for QuadAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{})", self.to_f64())
    }
}

/// Splits `n > 0` into `(s, f)` with `n = s²·f`, `f` square-free when the
/// trial-division cofactor is small enough to decide.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut square = BigInt::one();
    let mut rest = n.clone();
    let mut p: u64 = 2;
    while p <= TRIAL_BOUND {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let pp = &pb * &pb;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        return (square * root, BigInt::one());
    }
    // Strip the remaining single small primes; what is left has only prime
    // factors above TRIAL_BOUND, so below TRIAL_BOUND³ it is p, p·q or p².
    let mut cofactor = rest.clone();
    let mut q: u64 = 2;
    while q <= TRIAL_BOUND && BigInt::from(q) * BigInt::from(q) <= cofactor {
        let qb = BigInt::from(q);
        while (&cofactor % &qb).is_zero() {
            cofactor /= &qb;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let bound = BigInt::from(TRIAL_BOUND).pow(3);
    if cofactor > BigInt::one() && cofactor < bound {
        let r = cofactor.sqrt();
        if &r * &r == cofactor {
            rest /= &cofactor;
            square *= &r;
        }
    }
    (square, rest)
}

/// Real roots of a polynomial of degree at most two, sorted ascending and
/// without repetition. `coeffs` lists the constant term first. The zero
/// polynomial and nonzero constants yield no roots.
pub fn real_roots_upto_quadratic(coeffs: &[Rational]) -> Vec<QuadAlgebraic> {
    let c = |i: usize| coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
    let (c0, c1, c2) = (c(0), c(1), c(2));
    assert!(
        coeffs.iter().skip(3).all(Rational::is_zero),
        "degree above two"
    );
    if c2.is_zero() {
        if c1.is_zero() {
            return Vec::new();
        }
        return vec![QuadAlgebraic::from_rational(-c0 / c1)];
    }
    let disc = &c1 * &c1 - Rational::from_integer(4) * &c2 * &c0;
    let two_a = Rational::from_integer(2) * &c2;
    let vertex = -&c1 / &two_a;
    match disc.signum() {
        -1 => Vec::new(),
        0 => vec![QuadAlgebraic::from_rational(vertex)],
        _ => {
            let root = QuadAlgebraic::sqrt(&disc).scale(&two_a.recip());
            let mut roots = vec![
                root.add_rational(&vertex),
                root.neg().add_rational(&vertex),
            ];
            roots.sort();
            roots
        }
    }
}

/// `floor(x · 10^digits)`, exact.
pub fn scaled_floor(x: &QuadAlgebraic, digits: u32) -> BigInt {
    let scale = Rational::from_integer(num::pow(BigInt::from(10), digits as usize));
    let y = x.scale(&scale);
    if y.is_rational() {
        return y.rational.floor();
    }
    // y = a + b√d; isolate floor(b√d) exactly then combine with a.
    let bsq_d = &y.surd * &y.surd * Rational::from_integer(y.radicand.clone());
    // b√d = sign(b)·√(bsq_d); bracket √(bsq_d) between consecutive integers
    let n = bsq_d.numer() * bsq_d.denom();
    let den = bsq_d.denom().clone();
    // √(n)/den ∈ (k/den, (k+1)/den) with k = isqrt(n)
    let k = n.sqrt();
    let low = Rational::new(k.clone(), den.clone());
    let high = Rational::new(k + 1, den);
    let (low, high) = if y.surd.is_negative() {
        (-high, -low)
    } else {
        (low, high)
    };
    // floor lies in {floor(a + low), floor(a + high)}; refine by comparison
    let mut f = (&y.rational + &low).floor();
    let top = (&y.rational + &high).floor();
    while f < top {
        let next = Rational::from_integer(&f + 1);
        if y >= next {
            f += 1;
        } else {
            break;
        }
    }
    f
}
