//! Bond-incident-degree indices `I(G) = sum_{uv in E} f(d_u, d_v)`.
//!
//! Each index is computed two independent ways: directly as
//! `sum_{i <= j} m_{i,j} f(i, j)`, and by running its operator pipeline over
//! the M-polynomial and evaluating at 1. The two must agree exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::pow::Pow;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bipoly::{format_rational, rat, ratio, MPoly, PolyError, Rational};
use crate::generators::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("{index} is undefined on edges of type ({i}, {j})")]
    UndefinedWeight { index: String, i: u32, j: u32 },
    #[error(transparent)]
    Pipeline(#[from] PolyError),
    #[error("closed form requires n >= 2, got {0}")]
    OutOfRange(u32),
    #[error("no closed form for index {0}")]
    UnsupportedIndex(String),
    #[error("unknown index {0:?}")]
    UnknownIndex(String),
    #[error("alpha must be a positive integer")]
    InvalidAlpha,
}

/// One operator of the M-polynomial calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Dx,
    Dy,
    Sx,
    Sy,
    J,
    Q(i64),
}

impl Step {
    pub fn apply(self, p: &MPoly) -> Result<MPoly, PolyError> {
        match self {
            Step::Dx => Ok(p.op_dx()),
            Step::Dy => Ok(p.op_dy()),
            Step::Sx => p.op_sx(),
            Step::Sy => p.op_sy(),
            Step::J => Ok(p.op_j()),
            Step::Q(alpha) => p.op_q(alpha),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Dx => f.write_str("D_x"),
            Step::Dy => f.write_str("D_y"),
            Step::Sx => f.write_str("S_x"),
            Step::Sy => f.write_str("S_y"),
            Step::J => f.write_str("J"),
            Step::Q(a) => write!(f, "Q_{{{a}}}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPoint {
    /// `x = y = 1`
    XY,
    /// `x = 1`, after `J` has removed `y`
    X,
}

/// A linear combination of operator words followed by evaluation at 1.
/// Each word lists its steps in application order (innermost first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline {
    pub words: Vec<(Rational, Vec<Step>)>,
    pub at: EvalPoint,
}

impl Pipeline {
    fn single(steps: Vec<Step>, at: EvalPoint) -> Self {
        Pipeline { words: vec![(Rational::one(), steps)], at }
    }

    pub fn apply(&self, m: &MPoly) -> Result<Rational, PolyError> {
        let mut total = MPoly::zero();
        for (coeff, steps) in &self.words {
            let mut p = m.clone();
            for step in steps {
                p = step.apply(&p)?;
            }
            total = total.add(&p.scale(coeff));
        }
        let one = Rational::one();
        match self.at {
            EvalPoint::XY => Ok(total.eval(&one, &one)),
            EvalPoint::X => {
                debug_assert!(total.terms().all(|(_, j, _)| j == 0));
                Ok(total.eval(&one, &Rational::zero()))
            }
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (coeff, steps)) in self.words.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !coeff.is_one() {
                write!(f, "{} ", format_rational(coeff))?;
            }
            let ops: Vec<String> = steps.iter().rev().map(Step::to_string).collect();
            f.write_str(&ops.join(" "))?;
        }
        match self.at {
            EvalPoint::XY => f.write_str(" |x=y=1"),
            EvalPoint::X => f.write_str(" |x=1"),
        }
    }
}

/// The nine indices of the registry. Randić variants carry their integer exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexDef {
    Zagreb1,
    Zagreb2,
    ModifiedZagreb2,
    RandicGeneral(u32),
    RandicInverseGeneral(u32),
    SymmetricDivision,
    Harmonic,
    InverseSum,
    AugmentedZagreb,
}

/// All nine indices, with `alpha` used for the two Randić entries.
pub fn registry(alpha: u32) -> Vec<IndexDef> {
    use IndexDef::*;
    vec![
        Zagreb1,
        Zagreb2,
        ModifiedZagreb2,
        RandicGeneral(alpha),
        RandicInverseGeneral(alpha),
        SymmetricDivision,
        Harmonic,
        InverseSum,
        AugmentedZagreb,
    ]
}

/// The six indices with closed forms for the Bethe cacti.
pub const TABLE2_INDICES: [IndexDef; 6] = [
    IndexDef::Zagreb1,
    IndexDef::Zagreb2,
    IndexDef::ModifiedZagreb2,
    IndexDef::SymmetricDivision,
    IndexDef::Harmonic,
    IndexDef::InverseSum,
];

impl IndexDef {
    /// Looks up an index by its stable identifier. `randic_general` and
    /// `randic_inverse_general` take `alpha` either from the argument or
    /// inline, e.g. `randic_general(2)`; it defaults to 1.
    pub fn from_name(name: &str, alpha: Option<u32>) -> Result<IndexDef, IndexError> {
        let (base, inline) = match name.split_once('(') {
            Some((b, rest)) => {
                let a = rest
                    .strip_suffix(')')
                    .and_then(|a| a.trim().parse::<u32>().ok())
                    .ok_or_else(|| IndexError::UnknownIndex(name.to_string()))?;
                (b, Some(a))
            }
            None => (name, None),
        };
        let alpha = match (inline, alpha) {
            (Some(a), Some(b)) if a != b => return Err(IndexError::UnknownIndex(name.to_string())),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => 1,
        };
        let idx = match base {
            "zagreb1" => IndexDef::Zagreb1,
            "zagreb2" => IndexDef::Zagreb2,
            "modified_zagreb2" => IndexDef::ModifiedZagreb2,
            "randic_general" => IndexDef::RandicGeneral(alpha),
            "randic_inverse_general" => IndexDef::RandicInverseGeneral(alpha),
            "symmetric_division" => IndexDef::SymmetricDivision,
            "harmonic" => IndexDef::Harmonic,
            "inverse_sum" => IndexDef::InverseSum,
            "augmented_zagreb" => IndexDef::AugmentedZagreb,
            _ => return Err(IndexError::UnknownIndex(name.to_string())),
        };
        if let IndexDef::RandicGeneral(0) | IndexDef::RandicInverseGeneral(0) = idx {
            return Err(IndexError::InvalidAlpha);
        }
        if inline.is_some() && !matches!(idx, IndexDef::RandicGeneral(_) | IndexDef::RandicInverseGeneral(_)) {
            return Err(IndexError::UnknownIndex(name.to_string()));
        }
        Ok(idx)
    }

    pub fn name(&self) -> String {
        match self {
            IndexDef::Zagreb1 => "zagreb1".into(),
            IndexDef::Zagreb2 => "zagreb2".into(),
            IndexDef::ModifiedZagreb2 => "modified_zagreb2".into(),
            IndexDef::RandicGeneral(a) => format!("randic_general({a})"),
            IndexDef::RandicInverseGeneral(a) => format!("randic_inverse_general({a})"),
            IndexDef::SymmetricDivision => "symmetric_division".into(),
            IndexDef::Harmonic => "harmonic".into(),
            IndexDef::InverseSum => "inverse_sum".into(),
            IndexDef::AugmentedZagreb => "augmented_zagreb".into(),
        }
    }

    /// Edge weight `f(i, j)`; `None` where the formula divides by zero.
    pub fn weight(&self, i: u32, j: u32) -> Option<Rational> {
        let (i, j) = (i as i64, j as i64);
        let q = |num: Rational, den: Rational| if den.is_zero() { None } else { Some(num / den) };
        let ij = rat(i * j);
        match *self {
            IndexDef::Zagreb1 => Some(rat(i + j)),
            IndexDef::Zagreb2 => Some(ij),
            IndexDef::ModifiedZagreb2 => q(rat(1), ij),
            IndexDef::RandicGeneral(a) => Some(Pow::pow(&ij, a)),
            IndexDef::RandicInverseGeneral(a) => q(rat(1), Pow::pow(&ij, a)),
            IndexDef::SymmetricDivision => q(rat(i * i + j * j), ij),
            IndexDef::Harmonic => q(rat(2), rat(i + j)),
            IndexDef::InverseSum => q(ij, rat(i + j)),
            IndexDef::AugmentedZagreb => q(ij, rat(i + j - 2)).map(|b| Pow::pow(&b, 3u32)),
        }
    }

    pub fn pipeline(&self) -> Pipeline {
        use Step::*;
        let rep = |s: Step, n: u32| std::iter::repeat_n(s, n as usize);
        match *self {
            IndexDef::Zagreb1 => Pipeline {
                words: vec![(rat(1), vec![Dx]), (rat(1), vec![Dy])],
                at: EvalPoint::XY,
            },
            IndexDef::Zagreb2 => Pipeline::single(vec![Dy, Dx], EvalPoint::XY),
            IndexDef::ModifiedZagreb2 => Pipeline::single(vec![Sy, Sx], EvalPoint::XY),
            IndexDef::RandicGeneral(a) => Pipeline::single(rep(Dy, a).chain(rep(Dx, a)).collect(), EvalPoint::XY),
            IndexDef::RandicInverseGeneral(a) => {
                Pipeline::single(rep(Sy, a).chain(rep(Sx, a)).collect(), EvalPoint::XY)
            }
            IndexDef::SymmetricDivision => Pipeline {
                words: vec![(rat(1), vec![Sy, Dx]), (rat(1), vec![Sx, Dy])],
                at: EvalPoint::XY,
            },
            IndexDef::Harmonic => Pipeline {
                words: vec![(rat(2), vec![J, Sx])],
                at: EvalPoint::X,
            },
            IndexDef::InverseSum => Pipeline::single(vec![Dy, Dx, J, Sx], EvalPoint::X),
            IndexDef::AugmentedZagreb => Pipeline::single(
                rep(Dy, 3)
                    .chain(rep(Dx, 3))
                    .chain([J, Q(-2)])
                    .chain(rep(Sx, 3))
                    .collect(),
                EvalPoint::X,
            ),
        }
    }
}

impl fmt::Display for IndexDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Direct,
    Operator,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Direct => "direct",
            Source::Operator => "operator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexValue {
    pub value: Rational,
    pub index: String,
    pub source: Source,
}

/// `sum_{i <= j} m_{i,j} f(i, j)` over the terms of an M-polynomial.
pub fn compute_direct(m: &MPoly, idx: &IndexDef) -> Result<IndexValue, IndexError> {
    let mut value = Rational::zero();
    for (i, j, c) in m.terms() {
        let w = idx.weight(i, j).ok_or_else(|| IndexError::UndefinedWeight {
            index: idx.name(),
            i,
            j,
        })?;
        value += c * w;
    }
    Ok(IndexValue { value, index: idx.name(), source: Source::Direct })
}

/// Runs the index's operator pipeline over the M-polynomial.
pub fn compute_via_operators(m: &MPoly, idx: &IndexDef) -> Result<IndexValue, IndexError> {
    let value = idx.pipeline().apply(m)?;
    Ok(IndexValue { value, index: idx.name(), source: Source::Operator })
}

/// Smallest `n` for which the family's closed forms are known to hold.
/// `E_2` has a differently shaped M-polynomial and only partly agrees.
pub fn closed_form_valid_from(family: Family) -> u32 {
    match family {
        Family::D | Family::C => 2,
        Family::E => 3,
    }
}

fn pow3(k: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(3));
    if k >= 0 {
        Pow::pow(&base, k as u32)
    } else {
        Pow::pow(&base.recip(), (-k) as u32)
    }
}

/// Closed-form value of one of the six tabulated indices on a Bethe cactus, `n >= 2`.
pub fn closed_form(family: Family, idx: &IndexDef, n: u32) -> Result<Rational, IndexError> {
    if n < 2 {
        return Err(IndexError::OutOfRange(n));
    }
    let n = n as i64;
    // a * 3^(n + shift) + b
    let (a, shift, b) = match (family, idx) {
        (Family::D, IndexDef::Zagreb1) => (rat(4), 1, rat(-20)),
        (Family::D, IndexDef::Zagreb2) => (rat(56), -1, rat(-48)),
        (Family::D, IndexDef::ModifiedZagreb2) => (ratio(7, 8), -1, rat(0)),
        (Family::D, IndexDef::SymmetricDivision) => (rat(13), -1, rat(-3)),
        (Family::D, IndexDef::Harmonic) => (ratio(13, 2), -2, ratio(-1, 3)),
        (Family::D, IndexDef::InverseSum) => (rat(26), -2, ratio(-16, 3)),

        (Family::C, IndexDef::Zagreb1) => (rat(16), 0, rat(-32)),
        (Family::C, IndexDef::Zagreb2) => (rat(224), -2, rat(-64)),
        (Family::C, IndexDef::ModifiedZagreb2) => (ratio(7, 2), -2, ratio(-1, 4)),
        (Family::C, IndexDef::SymmetricDivision) => (rat(52), -2, rat(-8)),
        (Family::C, IndexDef::Harmonic) => (rat(26), -3, rat(-1)),
        (Family::C, IndexDef::InverseSum) => (rat(104), -3, rat(-8)),

        (Family::E, IndexDef::Zagreb1) => (rat(4), 1, rat(-38)),
        (Family::E, IndexDef::Zagreb2) => (rat(56), -1, rat(-88)),
        (Family::E, IndexDef::ModifiedZagreb2) => (ratio(7, 8), -1, ratio(-1, 8)),
        (Family::E, IndexDef::SymmetricDivision) => (rat(13), -1, ratio(-15, 2)),
        (Family::E, IndexDef::Harmonic) => (ratio(13, 2), -2, ratio(-11, 14)),
        (Family::E, IndexDef::InverseSum) => (rat(26), -2, ratio(-68, 7)),

        _ => return Err(IndexError::UnsupportedIndex(idx.name())),
    };
    Ok(a * pow3(n + shift) + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bethe, bethe_d};
    use crate::graph::Graph;

    fn poly(terms: &[(i64, i64, i64)]) -> MPoly {
        MPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat(c)))).unwrap()
    }

    #[test]
    fn registry_has_nine_entries() {
        let r = registry(2);
        assert_eq!(r.len(), 9);
        assert!(r.contains(&IndexDef::RandicGeneral(2)));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(IndexDef::Harmonic.weight(2, 2), Some(ratio(1, 2)));
        assert_eq!(IndexDef::AugmentedZagreb.weight(2, 4), Some(rat(8)));
        assert_eq!(IndexDef::SymmetricDivision.weight(2, 4), Some(ratio(5, 2)));
        assert_eq!(IndexDef::AugmentedZagreb.weight(1, 1), None);
        assert_eq!(IndexDef::RandicInverseGeneral(2).weight(2, 3), Some(ratio(1, 36)));
    }

    #[test]
    fn direct_examples() {
        let d2 = bethe_d(2).unwrap().graph.m_polynomial();
        assert_eq!(compute_direct(&d2, &IndexDef::Zagreb1).unwrap().value, rat(88));
        let d3 = bethe_d(3).unwrap().graph.m_polynomial();
        assert_eq!(compute_direct(&d3, &IndexDef::ModifiedZagreb2).unwrap().value, ratio(63, 8));
        let k2 = Graph::path(2).m_polynomial();
        assert!(matches!(
            compute_direct(&k2, &IndexDef::AugmentedZagreb),
            Err(IndexError::UndefinedWeight { i: 1, j: 1, .. })
        ));
    }

    #[test]
    fn operator_examples() {
        let d2 = bethe_d(2).unwrap().graph.m_polynomial();
        let v = compute_via_operators(&d2, &IndexDef::SymmetricDivision).unwrap();
        assert_eq!((v.value, v.source), (rat(36), Source::Operator));
        let c1 = poly(&[(2, 2, 4)]);
        assert_eq!(compute_via_operators(&c1, &IndexDef::Harmonic).unwrap().value, rat(2));
        let e3 = bethe(Family::E, 3).unwrap().m_polynomial();
        assert_eq!(compute_via_operators(&e3, &IndexDef::InverseSum).unwrap().value, ratio(478, 7));
    }

    #[test]
    fn augmented_zagreb_on_k2_diverges() {
        let k2 = Graph::path(2).m_polynomial();
        let err = compute_via_operators(&k2, &IndexDef::AugmentedZagreb).unwrap_err();
        assert!(matches!(err, IndexError::Pipeline(PolyError::DivergentIntegral { .. })));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(Family::D, &IndexDef::Zagreb2, 2).unwrap(), rat(120));
        assert_eq!(closed_form(Family::C, &IndexDef::Harmonic, 3).unwrap(), rat(25));
        assert_eq!(closed_form(Family::E, &IndexDef::SymmetricDivision, 2).unwrap(), ratio(63, 2));
        assert_eq!(closed_form(Family::C, &IndexDef::InverseSum, 3).unwrap(), rat(96));
        assert_eq!(closed_form(Family::D, &IndexDef::Zagreb1, 1), Err(IndexError::OutOfRange(1)));
        assert!(matches!(
            closed_form(Family::D, &IndexDef::AugmentedZagreb, 3),
            Err(IndexError::UnsupportedIndex(_))
        ));
    }

    #[test]
    fn names_round_trip() {
        for idx in registry(3) {
            assert_eq!(IndexDef::from_name(&idx.name(), None).unwrap(), idx);
        }
        assert_eq!(IndexDef::from_name("randic_general", Some(2)).unwrap(), IndexDef::RandicGeneral(2));
        assert_eq!(IndexDef::from_name("randic_general", None).unwrap(), IndexDef::RandicGeneral(1));
        assert_eq!(IndexDef::from_name("randic_general", Some(0)), Err(IndexError::InvalidAlpha));
        assert!(IndexDef::from_name("wiener", None).is_err());
        assert!(IndexDef::from_name("harmonic(2)", None).is_err());
        assert!(IndexDef::from_name("randic_general(2)", Some(3)).is_err());
    }

    #[test]
    fn pipeline_rendering() {
        assert_eq!(IndexDef::SymmetricDivision.pipeline().to_string(), "D_x S_y + D_y S_x |x=y=1");
        assert_eq!(IndexDef::Harmonic.pipeline().to_string(), "2 S_x J |x=1");
        assert_eq!(
            IndexDef::AugmentedZagreb.pipeline().to_string(),
            "S_x S_x S_x Q_{-2} J D_x D_x D_x D_y D_y D_y |x=1"
        );
    }

    #[test]
    fn pipeline_matches_weight_on_monomials() {
        for idx in registry(2).into_iter().chain([IndexDef::RandicGeneral(3), IndexDef::RandicInverseGeneral(1)]) {
            for i in 1..=8u32 {
                for j in 1..=8u32 {
                    let m = MPoly::monomial(i, j, rat(1));
                    match idx.weight(i, j) {
                        Some(w) => assert_eq!(idx.pipeline().apply(&m).unwrap(), w, "{idx} at ({i},{j})"),
                        None => assert!(idx.pipeline().apply(&m).is_err()),
                    }
                }
            }
        }
    }

    #[test]
    fn first_zagreb_is_sum_of_squared_degrees() {
        for n in 1..=4 {
            let g = bethe(Family::E, n).unwrap();
            let squares: usize = g.vertices().map(|v| g.degree(v).unwrap().pow(2)).sum();
            let z = compute_direct(&g.m_polynomial(), &IndexDef::Zagreb1).unwrap().value;
            assert_eq!(z, rat(squares as i64));
        }
    }

    #[test]
    fn randic_alpha_one_matches_zagreb_variants() {
        let m = bethe(Family::C, 3).unwrap().m_polynomial();
        let v = |idx| compute_direct(&m, &idx).unwrap().value;
        assert_eq!(v(IndexDef::RandicGeneral(1)), v(IndexDef::Zagreb2));
        assert_eq!(v(IndexDef::RandicInverseGeneral(1)), v(IndexDef::ModifiedZagreb2));
    }
}
