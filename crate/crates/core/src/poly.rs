//! Univariate polynomials with rational coefficients in one named parameter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::quad::QuadAlgebraic;
use crate::rational::Rational;

/// A payoff entry: `Σ cᵢ·xⁱ` in at most one parameter.
///
/// Canonical form: no trailing zero coefficients (the zero polynomial has
/// an empty list) and constants never carry a parameter name, so two
/// polynomials are equal iff their values agree for every parameter value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PayoffPoly {
    coeffs: Vec<Rational>,
    param: Option<String>,
}

impl PayoffPoly {
    /// Builds a polynomial from coefficients, constant term first. A
    /// non-constant polynomial needs a parameter name.
    pub fn new(coeffs: Vec<Rational>, param: Option<&str>) -> Result<Self> {
        let p = Self::canonical(coeffs, param.map(str::to_owned));
        if p.degree() > 0 && p.param.is_none() {
            return Err(Error::Param(
                "a polynomial payoff needs a parameter name".into(),
            ));
        }
        Ok(p)
    }

    fn canonical(mut coeffs: Vec<Rational>, param: Option<String>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        let param = if coeffs.len() > 1 { param } else { None };
        PayoffPoly { coeffs, param }
    }

    pub fn zero() -> Self {
        PayoffPoly {
            coeffs: Vec::new(),
            param: None,
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::canonical(vec![c], None)
    }

    /// The polynomial `x` in the named parameter.
    pub fn var(name: &str) -> Self {
        Self::canonical(vec![Rational::zero(), Rational::one()], Some(name.to_owned()))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    /// Degree, with 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at a quadratic irrational; the result lies in the
    /// same quadratic field.
    pub fn evaluate_quad(&self, x: &QuadAlgebraic) -> QuadAlgebraic {
        if let Some(r) = x.as_rational() {
            return QuadAlgebraic::from(self.evaluate(r));
        }
        let d = Rational::from_integer(x.radicand().clone());
        let (r, s) = (x.rational_part(), x.surd_coefficient());
        // Horner over pairs (a, b) standing for a + b√d
        let (mut a, mut b) = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let na = &a * r + &b * s * &d + c;
            let nb = &a * s + &b * r;
            a = na;
            b = nb;
        }
        QuadAlgebraic::new(a, b, x.radicand().clone())
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i as i64))
            .collect();
        Self::canonical(coeffs, self.param.clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::canonical(self.coeffs.iter().map(|c| c * k).collect(), self.param.clone())
    }

    /// Same polynomial under a different parameter name. No-op for constants.
    pub fn renamed(&self, name: &str) -> Self {
        Self::canonical(self.coeffs.clone(), Some(name.to_owned()))
    }

    /// Scaled so that the leading coefficient is one; used to recognise
    /// differences that share their roots.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }
}

/// Panics if both operands are parametric in different parameters.
fn merge_param(a: &PayoffPoly, b: &PayoffPoly) -> Option<String> {
    match (&a.param, &b.param) {
        (Some(x), Some(y)) => {
            assert_eq!(x, y, "mixing polynomials in different parameters");
            Some(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl Add<&PayoffPoly> for &PayoffPoly {
    type Output = PayoffPoly;
    fn add(self, rhs: &PayoffPoly) -> PayoffPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        PayoffPoly::canonical(coeffs, merge_param(self, rhs))
    }
}

impl Sub<&PayoffPoly> for &PayoffPoly {
    type Output = PayoffPoly;
    fn sub(self, rhs: &PayoffPoly) -> PayoffPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        PayoffPoly::canonical(coeffs, merge_param(self, rhs))
    }
}

impl Mul<&PayoffPoly> for &PayoffPoly {
    type Output = PayoffPoly;
    fn mul(self, rhs: &PayoffPoly) -> PayoffPoly {
        if self.is_zero() || rhs.is_zero() {
            return PayoffPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PayoffPoly::canonical(coeffs, merge_param(self, rhs))
    }
}

impl Add for PayoffPoly {
    type Output = PayoffPoly;
    fn add(self, rhs: PayoffPoly) -> PayoffPoly {
        &self + &rhs
    }
}

impl Sub for PayoffPoly {
    type Output = PayoffPoly;
    fn sub(self, rhs: PayoffPoly) -> PayoffPoly {
        &self - &rhs
    }
}

impl Mul for PayoffPoly {
    type Output = PayoffPoly;
    fn mul(self, rhs: PayoffPoly) -> PayoffPoly {
        &self * &rhs
    }
}

impl Neg for &PayoffPoly {
    type Output = PayoffPoly;
    fn neg(self) -> PayoffPoly {
        self.scale(&Rational::from_integer(-1))
    }
}

impl From<Rational> for PayoffPoly {
    fn from(r: Rational) -> Self {
        PayoffPoly::constant(r)
    }
}

impl From<i64> for PayoffPoly {
    fn from(n: i64) -> Self {
        PayoffPoly::constant(Rational::from_integer(n))
    }
}

/// Highest power first, e.g. `4a^2 - 4a + 1` or `(3/2)t - 1/2`.
impl fmt::Display for PayoffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = self.param.as_deref().unwrap_or("x");
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != Rational::one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            write!(f, "{var}")?;
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PayoffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
