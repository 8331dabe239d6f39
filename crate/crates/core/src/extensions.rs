//! Permissible 3×3 and 4×4 quantum extensions of a 2×2 game.
//!
//! Every class is assembled from the base game `Γ` and its three
//! relabellings `Γ₁` (rows swapped), `Γ₂` (columns swapped) and `Γ₃`
//! (both swapped). The 4×4 classes have the block layout
//! `[[Γ, M₁₂], [M₂₁, M₂₂]]` where each block is a combination of the `Γ`s
//! with coefficients in `a` (with `b = (2a − 1)²`) or `t`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{Bimatrix, PayoffPair};
use crate::poly::PayoffPoly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionClass {
    A0,
    B0,
    C0,
    A1,
    A2,
    B1,
    C1,
    D1,
    D2,
    E1,
    E2,
}

/// Which class parameter a family is indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    None,
    /// `a = cos²α`
    A,
    /// `t = cos²(θ₁/2)`
    T,
}

impl ParamKind {
    pub fn name(self) -> Option<&'static str> {
        match self {
            ParamKind::None => None,
            ParamKind::A => Some("a"),
            ParamKind::T => Some("t"),
        }
    }
}

impl ExtensionClass {
    /// Report and CLI order.
    pub const ALL: [ExtensionClass; 11] = [
        ExtensionClass::A0,
        ExtensionClass::B0,
        ExtensionClass::C0,
        ExtensionClass::A1,
        ExtensionClass::A2,
        ExtensionClass::B1,
        ExtensionClass::C1,
        ExtensionClass::D1,
        ExtensionClass::D2,
        ExtensionClass::E1,
        ExtensionClass::E2,
    ];

    pub const FOUR_BY_FOUR: [ExtensionClass; 8] = [
        ExtensionClass::A1,
        ExtensionClass::A2,
        ExtensionClass::B1,
        ExtensionClass::C1,
        ExtensionClass::D1,
        ExtensionClass::D2,
        ExtensionClass::E1,
        ExtensionClass::E2,
    ];

    pub fn name(self) -> &'static str {
        use ExtensionClass::*;
        match self {
            A0 => "A0",
            B0 => "B0",
            C0 => "C0",
            A1 => "A1",
            A2 => "A2",
            B1 => "B1",
            C1 => "C1",
            D1 => "D1",
            D2 => "D2",
            E1 => "E1",
            E2 => "E2",
        }
    }

    pub fn param_kind(self) -> ParamKind {
        use ExtensionClass::*;
        match self {
            A0 | B0 | C0 | B1 => ParamKind::None,
            A1 | A2 => ParamKind::A,
            C1 | D1 | D2 | E1 | E2 => ParamKind::T,
        }
    }

    /// Number of strategies per player in the extension.
    pub fn size(self) -> usize {
        use ExtensionClass::*;
        match self {
            A0 | B0 | C0 => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for ExtensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtensionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtensionClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown extension class `{s}` (expected A0..E2)")))
    }
}

/// How to fill the class parameter of a 4×4 extension.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassParam {
    /// Keep it as a polynomial variable named `a` or `t`.
    Symbolic,
    /// Substitute a value in `[0, 1]`.
    Value(Rational),
}

type Block = [[PayoffPair; 2]; 2];

fn block_of(g: &Bimatrix) -> Block {
    let e = |i, j| g.entry(i, j).clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn swapped(g: &Bimatrix, swap_rows: bool, swap_cols: bool) -> Result<Bimatrix> {
    g.require_two_by_two()?;
    let pick = |i: usize, swap: bool| if swap { 1 - i } else { i };
    let out = g.map_entries(|i, j| g.entry(pick(i, swap_rows), pick(j, swap_cols)).clone())?;
    let relabel = |labels: Option<&[String]>, swap: bool| {
        labels.map(|l| {
            let mut l = l.to_vec();
            if swap {
                l.swap(0, 1);
            }
            l
        })
    };
    out.with_parameter(g.parameter())?.with_labels(
        relabel(g.row_labels(), swap_rows),
        relabel(g.col_labels(), swap_cols),
    )
}

/// `Γ₁`: rows swapped.
pub fn gamma1(g: &Bimatrix) -> Result<Bimatrix> {
    swapped(g, true, false)
}

/// `Γ₂`: columns swapped.
pub fn gamma2(g: &Bimatrix) -> Result<Bimatrix> {
    swapped(g, false, true)
}

/// `Γ₃`: rows and columns swapped.
pub fn gamma3(g: &Bimatrix) -> Result<Bimatrix> {
    swapped(g, true, true)
}

/// Which of `Γ, Γ₁, Γ₂, Γ₃` a term refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaVariant {
    Base,
    Rows,
    Cols,
    Both,
}

impl GammaVariant {
    pub fn symbol(self) -> &'static str {
        match self {
            GammaVariant::Base => "Γ",
            GammaVariant::Rows => "Γ1",
            GammaVariant::Cols => "Γ2",
            GammaVariant::Both => "Γ3",
        }
    }

    fn source(self, i: usize, j: usize) -> (usize, usize) {
        match self {
            GammaVariant::Base => (i, j),
            GammaVariant::Rows => (1 - i, j),
            GammaVariant::Cols => (i, 1 - j),
            GammaVariant::Both => (1 - i, 1 - j),
        }
    }
}

/// Coefficients appearing in the block formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    One,
    Quarter,
    A,
    /// `a′ = 1 − a`
    APrime,
    /// `b = (2a − 1)²`
    B,
    /// `b′ = 1 − b`
    BPrime,
    T,
    TPrime,
    HalfT,
    HalfTPrime,
    TSquared,
    TPrimeSquared,
    TTPrime,
}

impl Coef {
    pub fn symbol(self) -> &'static str {
        match self {
            Coef::One => "1",
            Coef::Quarter => "1/4",
            Coef::A => "a",
            Coef::APrime => "a'",
            Coef::B => "b",
            Coef::BPrime => "b'",
            Coef::T => "t",
            Coef::TPrime => "t'",
            Coef::HalfT => "t/2",
            Coef::HalfTPrime => "t'/2",
            Coef::TSquared => "t^2",
            Coef::TPrimeSquared => "t'^2",
            Coef::TTPrime => "tt'",
        }
    }

    /// Polynomial value given `x`, the class parameter (`a` or `t`).
    pub fn poly(self, x: &PayoffPoly) -> PayoffPoly {
        let one = PayoffPoly::from(1);
        let complement = &one - x;
        let half = Rational::new(1, 2);
        match self {
            Coef::One => one,
            Coef::Quarter => PayoffPoly::constant(Rational::new(1, 4)),
            Coef::A | Coef::T => x.clone(),
            Coef::APrime | Coef::TPrime => complement,
            Coef::B => {
                let s = &x.scale(&Rational::from_integer(2)) - &one;
                &s * &s
            }
            Coef::BPrime => {
                let s = &x.scale(&Rational::from_integer(2)) - &one;
                &one - &(&s * &s)
            }
            Coef::HalfT => x.scale(&half),
            Coef::HalfTPrime => complement.scale(&half),
            Coef::TSquared => x * x,
            Coef::TPrimeSquared => &complement * &complement,
            Coef::TTPrime => x * &complement,
        }
    }
}

/// A block as `Σ coef · Γ_variant`.
pub type BlockFormula = Vec<(Coef, GammaVariant)>;

/// Formulas for `(M₁₂, M₂₁, M₂₂)` of a 4×4 class.
pub fn block_formulas(class: ExtensionClass) -> Option<[BlockFormula; 3]> {
    use Coef::*;
    use ExtensionClass::*;
    use GammaVariant::*;
    let d_e_corner = || vec![(TSquared, Base), (TTPrime, Rows), (TTPrime, Cols), (TPrimeSquared, Both)];
    let quarter = || vec![(Quarter, Base), (Quarter, Rows), (Quarter, Cols), (Quarter, Both)];
    Some(match class {
        A0 | B0 | C0 => return None,
        A1 => [
            vec![(A, Base), (APrime, Both)],
            vec![(A, Base), (APrime, Both)],
            vec![(B, Base), (BPrime, Both)],
        ],
        A2 => [
            vec![(A, Cols), (APrime, Rows)],
            vec![(A, Rows), (APrime, Cols)],
            vec![(B, Both), (BPrime, Base)],
        ],
        B1 => [quarter(), quarter(), quarter()],
        C1 => {
            let off = vec![(HalfT, Base), (HalfT, Both), (HalfTPrime, Rows), (HalfTPrime, Cols)];
            [
                off.clone(),
                off,
                vec![(TPrimeSquared, Base), (TTPrime, Rows), (TTPrime, Cols), (TSquared, Both)],
            ]
        }
        D1 => [
            vec![(T, Base), (TPrime, Cols)],
            vec![(T, Base), (TPrime, Rows)],
            d_e_corner(),
        ],
        D2 => [
            vec![(T, Both), (TPrime, Rows)],
            vec![(T, Both), (TPrime, Cols)],
            d_e_corner(),
        ],
        E1 => [
            vec![(T, Base), (TPrime, Rows)],
            vec![(T, Base), (TPrime, Cols)],
            d_e_corner(),
        ],
        E2 => [
            vec![(T, Both), (TPrime, Cols)],
            vec![(T, Both), (TPrime, Rows)],
            d_e_corner(),
        ],
    })
}

fn assemble(base: &Block, formula: &BlockFormula, x: &PayoffPoly) -> Block {
    let cell = |i: usize, j: usize| {
        formula.iter().fold(PayoffPair::new(0, 0), |acc, (coef, variant)| {
            let (si, sj) = variant.source(i, j);
            acc.add(&base[si][sj].scale(&coef.poly(x)))
        })
    };
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

fn average(cells: &[&PayoffPair]) -> PayoffPair {
    let k = PayoffPoly::constant(Rational::new(1, cells.len() as i64));
    cells
        .iter()
        .fold(PayoffPair::new(0, 0), |acc, p| acc.add(p))
        .scale(&k)
}

/// One-strategy extensions `A0`, `B0`, `C0` over `{I, iX, U}`.
pub fn extend3(g: &Bimatrix, class: ExtensionClass) -> Result<Bimatrix> {
    g.require_two_by_two()?;
    let [[d11, d12], [d21, d22]] = block_of(g);
    let all = average(&[&d11, &d12, &d21, &d22]);
    let (c13, c23, c31, c32) = match class {
        ExtensionClass::A0 => (
            average(&[&d11, &d12]),
            average(&[&d21, &d22]),
            average(&[&d11, &d21]),
            average(&[&d12, &d22]),
        ),
        ExtensionClass::B0 => (
            average(&[&d21, &d22]),
            average(&[&d11, &d12]),
            average(&[&d12, &d22]),
            average(&[&d11, &d21]),
        ),
        ExtensionClass::C0 => (all.clone(), all.clone(), all.clone(), all.clone()),
        other => {
            return Err(Error::ClassMismatch {
                class: other.name(),
                reason: "is a 4x4 class",
            })
        }
    };
    let labels = ["I", "iX", "U"];
    Ok(Bimatrix::new(vec![
        vec![d11, d12, c13],
        vec![d21, d22, c23],
        vec![c31, c32, all],
    ])?
    .with_parameter(g.parameter())?
    .labelled(&labels, &labels))
}

/// Two-strategy extensions `A1 … E2` over `{I, iX, U₁, U₂}`.
pub fn extend4(g: &Bimatrix, class: ExtensionClass, param: &ClassParam) -> Result<Bimatrix> {
    g.require_two_by_two()?;
    let formulas = block_formulas(class).ok_or(Error::ClassMismatch {
        class: class.name(),
        reason: "is a 3x3 class",
    })?;
    let kind = class.param_kind();
    if kind != ParamKind::None {
        if let Some(p) = g.parameter().filter(|_| !g.is_numeric()) {
            return Err(Error::ParametricBase(p.to_owned()));
        }
    }
    let x = match (param, kind.name()) {
        (ClassParam::Symbolic, Some(name)) => PayoffPoly::var(name),
        (ClassParam::Value(v), Some(_)) => {
            if v.is_negative() || v > &Rational::one() {
                return Err(Error::ParamOutOfRange(v.to_string()));
            }
            PayoffPoly::constant(v.clone())
        }
        // B1 has no parameter; whatever was passed is irrelevant.
        (_, None) => PayoffPoly::zero(),
    };
    let base = block_of(g);
    let [m12, m21, m22] = formulas.map(|f| assemble(&base, &f, &x));
    let row = |left: &Block, right: &Block, i: usize| {
        vec![
            left[i][0].clone(),
            left[i][1].clone(),
            right[i][0].clone(),
            right[i][1].clone(),
        ]
    };
    let labels = ["I", "iX", "U1", "U2"];
    let out = Bimatrix::new(vec![
        row(&base, &m12, 0),
        row(&base, &m12, 1),
        row(&m21, &m22, 0),
        row(&m21, &m22, 1),
    ])?;
    let parameter = match kind.name() {
        Some(name) if !out.is_numeric() => Some(name),
        _ => g.parameter(),
    };
    Ok(out.with_parameter(parameter)?.labelled(&labels, &labels))
}

/// Any class; `param` is required for parametrised 4×4 classes and
/// rejected for the 3×3 ones.
pub fn extend(g: &Bimatrix, class: ExtensionClass, param: Option<&ClassParam>) -> Result<Bimatrix> {
    match (class.size(), param) {
        (3, None) => extend3(g, class),
        (3, Some(_)) => Err(Error::ClassMismatch {
            class: class.name(),
            reason: "takes no parameter",
        }),
        (_, Some(p)) => extend4(g, class, p),
        (_, None) => extend4(g, class, &ClassParam::Symbolic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::presets::*;
    use crate::rational::ratio;

    fn pair(a: (i64, i64), b: (i64, i64)) -> PayoffPair {
        PayoffPair::new(ratio(a.0, a.1), ratio(b.0, b.1))
    }

    #[test]
    fn gamma_swaps() {
        let pd = prisoners_dilemma();
        let g1 = gamma1(&pd).unwrap();
        assert_eq!(g1, Bimatrix::from_integers(&[[(5, 0), (1, 1)], [(3, 3), (0, 5)]]).unwrap());
        let g3 = gamma3(&pd).unwrap();
        assert_eq!(gamma3(&g3).unwrap(), pd);
        assert_eq!(gamma1(&gamma2(&pd).unwrap()).unwrap(), g3);
        assert_eq!(gamma2(&gamma1(&pd).unwrap()).unwrap(), g3);
        assert!(matches!(gamma1(&risky_two_by_three()), Err(Error::NotTwoByTwo { .. })));
    }

    #[test]
    fn a0_of_prisoners_dilemma() {
        let a0 = extend3(&prisoners_dilemma(), ExtensionClass::A0).unwrap();
        let expected = [
            [pair((3, 1), (3, 1)), pair((0, 1), (5, 1)), pair((3, 2), (4, 1))],
            [pair((5, 1), (0, 1)), pair((1, 1), (1, 1)), pair((3, 1), (1, 2))],
            [pair((4, 1), (3, 2)), pair((1, 2), (3, 1)), pair((9, 4), (9, 4))],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(a0.entry(i, j), e, "({i},{j})");
            }
        }
        assert_eq!(a0.row_labels().unwrap(), ["I", "iX", "U"]);
    }

    #[test]
    fn b0_and_c0_of_prisoners_dilemma() {
        let b0 = extend3(&prisoners_dilemma(), ExtensionClass::B0).unwrap();
        assert_eq!(b0.entry(0, 2), &pair((3, 1), (1, 2)));
        assert_eq!(b0.entry(1, 2), &pair((3, 2), (4, 1)));
        assert_eq!(b0.entry(2, 0), &pair((1, 2), (3, 1)));
        assert_eq!(b0.entry(2, 1), &pair((4, 1), (3, 2)));
        let c0 = extend3(&prisoners_dilemma(), ExtensionClass::C0).unwrap();
        for (i, j) in [(0, 2), (1, 2), (2, 0), (2, 1), (2, 2)] {
            assert_eq!(c0.entry(i, j), &pair((9, 4), (9, 4)));
        }
    }

    #[test]
    fn a1_symbolic_block() {
        let a1 = extend4(&prisoners_dilemma(), ExtensionClass::A1, &ClassParam::Symbolic).unwrap();
        assert_eq!(a1.parameter(), Some("a"));
        let lin = |c0: i64, c1: i64| {
            PayoffPoly::new(vec![ratio(c0, 1), ratio(c1, 1)], Some("a")).unwrap()
        };
        assert_eq!(a1.entry(0, 2), &PayoffPair::new(lin(1, 2), lin(1, 2)));
        assert_eq!(a1.entry(0, 3), &PayoffPair::new(lin(5, -5), lin(0, 5)));
        assert_eq!(a1.entry(1, 2), &PayoffPair::new(lin(0, 5), lin(5, -5)));
        assert_eq!(a1.entry(1, 3), &PayoffPair::new(lin(3, -2), lin(3, -2)));
        assert!(a1.max_degree() <= 2);
    }

    #[test]
    fn b1_blocks_are_averages() {
        let b1 = extend4(&prisoners_dilemma(), ExtensionClass::B1, &ClassParam::Symbolic).unwrap();
        assert!(b1.is_numeric());
        for i in 0..4 {
            for j in 0..4 {
                if i >= 2 || j >= 2 {
                    assert_eq!(b1.entry(i, j), &pair((9, 4), (9, 4)));
                }
            }
        }
    }

    #[test]
    fn slider_point_entries() {
        let pd = prisoners_dilemma();
        let d1 = extend4(&pd, ExtensionClass::D1, &ClassParam::Value(ratio(24, 100))).unwrap();
        assert_eq!(d1.entry(1, 1), &pair((1, 1), (1, 1)));
        assert_eq!(d1.entry(2, 1), &pair((19, 25), (49, 25)));
        let a1 = extend4(&pd, ExtensionClass::A1, &ClassParam::Value(ratio(65, 100))).unwrap();
        assert_eq!(a1.entry(2, 1), &pair((7, 4), (13, 4)));
    }

    #[test]
    fn c1_at_half_equals_b1() {
        let pd = prisoners_dilemma();
        let c1 = extend4(&pd, ExtensionClass::C1, &ClassParam::Value(ratio(1, 2))).unwrap();
        let b1 = extend4(&pd, ExtensionClass::B1, &ClassParam::Symbolic).unwrap();
        assert_eq!(c1, b1);
    }

    #[test]
    fn parameter_endpoints() {
        let pd = prisoners_dilemma();
        let g1 = gamma1(&pd).unwrap();
        let g2 = gamma2(&pd).unwrap();
        let a1 = extend4(&pd, ExtensionClass::A1, &ClassParam::Value(ratio(1, 1))).unwrap();
        let d1 = extend4(&pd, ExtensionClass::D1, &ClassParam::Value(ratio(0, 1))).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a1.entry(i, j + 2), pd.entry(i, j));
                assert_eq!(a1.entry(i + 2, j + 2), pd.entry(i, j));
                assert_eq!(d1.entry(i, j + 2), g2.entry(i, j));
                assert_eq!(d1.entry(i + 2, j), g1.entry(i, j));
            }
        }
    }

    #[test]
    fn error_paths() {
        let pd = prisoners_dilemma();
        assert!(matches!(
            extend4(&pd, ExtensionClass::A1, &ClassParam::Value(ratio(3, 2))),
            Err(Error::ParamOutOfRange(_))
        ));
        assert!(matches!(
            extend4(&pd, ExtensionClass::A0, &ClassParam::Symbolic),
            Err(Error::ClassMismatch { .. })
        ));
        assert!(matches!(
            extend(&pd, ExtensionClass::A0, Some(&ClassParam::Symbolic)),
            Err(Error::ClassMismatch { .. })
        ));
        assert!(matches!(
            extend3(&risky_two_by_three(), ExtensionClass::A0),
            Err(Error::NotTwoByTwo { .. })
        ));
        let x = PayoffPoly::var("x");
        let parametric = Bimatrix::new(vec![
            vec![PayoffPair::new(x.clone(), x.clone()), PayoffPair::new(0, 5)],
            vec![PayoffPair::new(5, 0), PayoffPair::new(1, 1)],
        ])
        .unwrap();
        assert!(matches!(
            extend4(&parametric, ExtensionClass::D1, &ClassParam::Symbolic),
            Err(Error::ParametricBase(_))
        ));
        // one-strategy classes keep the base parameter
        let a0 = extend3(&parametric, ExtensionClass::A0).unwrap();
        assert_eq!(a0.parameter(), Some("x"));
    }

    #[test]
    fn class_names_parse() {
        for c in ExtensionClass::ALL {
            assert_eq!(c.name().parse::<ExtensionClass>().unwrap(), c);
        }
        assert!("F3".parse::<ExtensionClass>().is_err());
    }

    #[test]
    fn one_strategy_classes_match_ewl() {
        use crate::ewl::{extension3x3_from_u, UnitaryParams};
        let pd = prisoners_dilemma();
        let half = || ratio(1, 2);
        let quarter = || ratio(1, 4);
        for (class, u) in [
            (ExtensionClass::A0, (half(), ratio(0, 1), ratio(0, 1))),
            (ExtensionClass::B0, (half(), half(), half())),
            (ExtensionClass::C0, (half(), quarter(), quarter())),
        ] {
            let u = UnitaryParams::from_pi_multiples(u.0, u.1, u.2).unwrap();
            assert_eq!(extend3(&pd, class).unwrap(), extension3x3_from_u(&pd, &u).unwrap(), "{class}");
        }
    }

    #[test]
    fn a1_matches_ewl() {
        use crate::ewl::{ewl_matrix_f64, UnitaryParams};
        let pd = prisoners_dilemma();
        for alpha in [0.0, 0.3, 1.1, 2.0, 2.9] {
            let u1 = UnitaryParams::from_radians(0.0, alpha, 0.0).unwrap();
            let u2 = UnitaryParams::from_radians(std::f64::consts::PI, 0.0, -alpha).unwrap();
            let oracle = ewl_matrix_f64(
                &pd,
                &[UnitaryParams::identity(), UnitaryParams::flip(), u1, u2],
            )
            .unwrap();
            let a = Rational::from_f64(alpha.cos().powi(2)).unwrap();
            let ext = extend4(&pd, ExtensionClass::A1, &ClassParam::Value(a)).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let e = ext.entry(i, j);
                    let (o1, o2) = oracle[i][j];
                    assert!((e.u1.coeff(0).to_f64() - o1).abs() < 1e-10, "alpha {alpha} ({i},{j})");
                    assert!((e.u2.coeff(0).to_f64() - o2).abs() < 1e-10, "alpha {alpha} ({i},{j})");
                }
            }
        }
    }
}
