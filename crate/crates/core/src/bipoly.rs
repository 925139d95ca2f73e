//! Sparse bivariate polynomials in `x` and `y` over exact rationals, together
//! with the derivative/integral operators used to turn an M-polynomial into
//! index values.
//!
//! Every polynomial is kept in canonical form: a sorted map from the exponent
//! pair `(i, j)` to a nonzero rational coefficient. Two polynomials are equal
//! exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Variable an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => f.write_str("x"),
            Axis::Y => f.write_str("y"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exponent out of range: x^{i} y^{j}")]
    ExponentError { i: i64, j: i64 },
    #[error("divergent integral: S_{axis} applied to a term with {axis}-exponent 0 (x^{i} y^{j})")]
    DivergentIntegral { axis: Axis, i: u32, j: u32 },
    #[error("Q_alpha requires alpha != 0")]
    InvalidAlpha,
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
}

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::InvalidRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Sparse polynomial `sum c_{ij} x^i y^j` with exact rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Single term `c x^i y^j` (zero polynomial if `c == 0`).
    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.accumulate((i, j), c);
        p
    }

    /// Builds a canonical polynomial from `(i, j, coefficient)` triples.
    /// Repeated exponent pairs are summed and zero results dropped.
    pub fn from_terms<I>(terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (i64, i64, Rational)>,
    {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            let key = match (u32::try_from(i), u32::try_from(j)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Err(PolyError::ExponentError { i, j }),
            };
            p.accumulate(key, c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn map_terms<F>(&self, mut f: F) -> Result<Self, PolyError>
    where
        F: FnMut(u32, u32, &Rational) -> Result<((u32, u32), Rational), PolyError>,
    {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let (key, c) = f(i, j, c)?;
            out.accumulate(key, c);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^i y^j` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.accumulate(key, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// `D_x`: `x * d/dx`, i.e. `c x^i y^j -> (c i) x^i y^j`.
    pub fn op_dx(&self) -> MPoly {
        self.scale_by_exponent(Axis::X)
    }

    /// `D_y`: `y * d/dy`.
    pub fn op_dy(&self) -> MPoly {
        self.scale_by_exponent(Axis::Y)
    }

    fn scale_by_exponent(&self, axis: Axis) -> MPoly {
        let mut out = MPoly::zero();
        for (&(i, j), c) in &self.terms {
            let e = match axis {
                Axis::X => i,
                Axis::Y => j,
            };
            out.accumulate((i, j), c * rat(e as i64));
        }
        out
    }

    /// `S_x`: `integral_0^x f(t, y) / t dt`, i.e. `c x^i y^j -> (c / i) x^i y^j`.
    ///
    /// The integral diverges on any term free of `x`, which is reported as
    /// [`PolyError::DivergentIntegral`].
    pub fn op_sx(&self) -> Result<MPoly, PolyError> {
        self.divide_by_exponent(Axis::X)
    }

    /// `S_y`, the `y` counterpart of [`MPoly::op_sx`].
    pub fn op_sy(&self) -> Result<MPoly, PolyError> {
        self.divide_by_exponent(Axis::Y)
    }

    fn divide_by_exponent(&self, axis: Axis) -> Result<MPoly, PolyError> {
        self.map_terms(|i, j, c| {
            let e = match axis {
                Axis::X => i,
                Axis::Y => j,
            };
            if e == 0 {
                return Err(PolyError::DivergentIntegral { axis, i, j });
            }
            Ok(((i, j), c / rat(e as i64)))
        })
    }

    /// `J`: substitute `y = x`, merging colliding terms.
    pub fn op_j(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (&(i, j), c) in &self.terms {
            // u32 + u32 fits comfortably for any polynomial built from a graph
            out.accumulate((i + j, 0), c.clone());
        }
        out
    }

    /// `Q_alpha`: multiply by `x^alpha`.
    pub fn op_q(&self, alpha: i64) -> Result<MPoly, PolyError> {
        if alpha == 0 {
            return Err(PolyError::InvalidAlpha);
        }
        self.map_terms(|i, j, c| {
            let shifted = i as i64 + alpha;
            match u32::try_from(shifted) {
                Ok(ni) => Ok(((ni, j), c.clone())),
                Err(_) => Err(PolyError::ExponentError { i: shifted, j: j as i64 }),
            }
        })
    }

    /// Exact value at `(x0, y0)`.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * pow(x0, i) * pow(y0, j))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Sum of all coefficients, i.e. the value at `x = y = 1`.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

fn pow(base: &Rational, e: u32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let numer = num_traits::pow::Pow::pow(base.numer(), e);
    let denom = num_traits::pow::Pow::pow(base.denom(), e);
    Rational::new(numer, denom)
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        MPoly::add(self, rhs)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::with_capacity(3);
            if !(abs.is_one() && (i > 0 || j > 0)) {
                parts.push(format_rational(&abs));
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized form of one term: exponents plus the coefficient as `"p"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub i: u32,
    pub j: u32,
    pub coeff: String,
}

impl MPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(i, j, c)| TermRecord {
                i,
                j,
                coeff: format_rational(c),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<MPoly, PolyError> {
        let terms = records
            .iter()
            .map(|r| Ok((r.i as i64, r.j as i64, parse_rational(&r.coeff)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        MPoly::from_terms(terms)
    }
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        MPoly::from_records(&records).map_err(serde::de::Error::custom)
    }
}
