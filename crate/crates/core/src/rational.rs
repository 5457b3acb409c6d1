//! Exact rational numbers and points of the unit cube.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A point of `[0,1]^n` (or of `Q^n` for directions).
pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let bad = || RationalParseError::Invalid(t.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(RationalParseError::ZeroDenominator(t.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Parses a comma-separated list of rationals.
pub fn parse_point(text: &str) -> Result<Point, RationalParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

pub fn format_point(p: &[Rational]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

pub fn in_unit_cube(p: &[Rational]) -> bool {
    p.iter().all(in_unit_interval)
}

/// Least positive integer `d` with `d * p` integral.
pub fn denominator(p: &[Rational]) -> BigInt {
    p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_f64(x: &Rational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// A closed axis-parallel box `[lo_1, hi_1] × ... × [lo_d, hi_d]` inside the unit cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalBox {
    pub lo: Point,
    pub hi: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoxError {
    #[error("box bounds have different dimensions")]
    DimensionMismatch,
    #[error("box is not contained in the unit cube")]
    OutsideCube,
    #[error("lower bound exceeds upper bound in coordinate {0}")]
    Inverted(usize),
    #[error(transparent)]
    Parse(#[from] RationalParseError),
    #[error("box syntax is `lo..hi` per coordinate, comma-separated")]
    Syntax,
}

impl RationalBox {
    pub fn new(lo: Point, hi: Point) -> Result<RationalBox, BoxError> {
        if lo.len() != hi.len() {
            return Err(BoxError::DimensionMismatch);
        }
        if !in_unit_cube(&lo) || !in_unit_cube(&hi) {
            return Err(BoxError::OutsideCube);
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(BoxError::Inverted(i));
        }
        Ok(RationalBox { lo, hi })
    }

    pub fn unit(dim: usize) -> RationalBox {
        RationalBox { lo: vec![Rational::zero(); dim], hi: vec![Rational::one(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> Rational {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn is_degenerate(&self) -> bool {
        self.volume().is_zero()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.dim() && (0..p.len()).all(|i| self.lo[i] <= p[i] && p[i] <= self.hi[i])
    }

    pub fn contains_interior(&self, p: &[Rational]) -> bool {
        p.len() == self.dim() && (0..p.len()).all(|i| self.lo[i] < p[i] && p[i] < self.hi[i])
    }

    /// Parses `"a..b"` per coordinate, comma-separated, e.g. `"0..1/4,1/2..1"`.
    pub fn parse(text: &str) -> Result<RationalBox, BoxError> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in text.split(',') {
            let (a, b) = part.split_once("..").ok_or(BoxError::Syntax)?;
            lo.push(parse_rational(a)?);
            hi.push(parse_rational(b)?);
        }
        RationalBox::new(lo, hi)
    }
}

impl fmt::Display for RationalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}..{}", self.lo[i], self.hi[i])?;
        }
        Ok(())
    }
}

/// Serde adapter: a rational as a `[numerator, denominator]` pair of decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPair(pub Rational);

impl Serialize for RatPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.numer().to_string(), self.0.denom().to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [n, den]: [String; 2] = Deserialize::deserialize(d)?;
        let n: BigInt = n.parse().map_err(D::Error::custom)?;
        let den: BigInt = den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RatPair(Rational::new(n, den)))
    }
}

/// Displays a point as `(a, b, ...)`.
pub struct DisplayPoint<'a>(pub &'a [Rational]);

impl fmt::Display for DisplayPoint<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
