//! Truth-value semantics: the three continuous t-norms and their finite chains.

use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use thiserror::Error;

use super::program::{Interpretation, Program};
use super::Formula;
use crate::rational::{in_unit_interval, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainBase {
    Godel,
    Lukasiewicz,
}

/// A t-norm with its residuum.
///
/// `FiniteChain { m, base }` is the subalgebra `{0, 1/m, ..., 1}` of the
/// Gödel or Łukasiewicz interval; `m = 1` is the two-element Boolean algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Godel,
    Product,
    Lukasiewicz,
    FiniteChain { m: u32, base: ChainBase },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value for variable x{index} (point has {provided} coordinates)")]
    MissingVariable { index: usize, provided: usize },
    #[error("value {value} for x{index} is outside [0,1]")]
    OutOfRange { index: usize, value: Rational },
    #[error("value {value} for x{index} is not on the chain with m = {m}")]
    NotOnChain { index: usize, value: Rational, m: u32 },
}

impl Semantics {
    pub const BOOLEAN: Semantics = Semantics::FiniteChain { m: 1, base: ChainBase::Lukasiewicz };

    /// The continuous t-norm whose connectives this semantics uses.
    fn kind(self) -> Semantics {
        match self {
            Semantics::FiniteChain { base: ChainBase::Godel, .. } => Semantics::Godel,
            Semantics::FiniteChain { base: ChainBase::Lukasiewicz, .. } => Semantics::Lukasiewicz,
            s => s,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Semantics::FiniteChain { .. })
    }

    pub fn star(self, a: &Rational, b: &Rational) -> Rational {
        match self.kind() {
            Semantics::Godel => a.min(b).clone(),
            Semantics::Product => a * b,
            _ => {
                let s = a + b - Rational::one();
                if s.is_positive() {
                    s
                } else {
                    Rational::zero()
                }
            }
        }
    }

    pub fn implies(self, a: &Rational, b: &Rational) -> Rational {
        if a <= b {
            return Rational::one();
        }
        match self.kind() {
            Semantics::Godel => b.clone(),
            Semantics::Product => b / a,
            _ => Rational::one() - (a - b),
        }
    }

    pub fn neg(self, a: &Rational) -> Rational {
        self.implies(a, &Rational::zero())
    }

    /// Chain carrier `{0, 1/m, ..., 1}` for finite semantics.
    pub fn carrier(self) -> Option<Vec<Rational>> {
        match self {
            Semantics::FiniteChain { m, .. } => Some(
                (0..=m).map(|k| Rational::new(k.into(), m.into())).collect(),
            ),
            _ => None,
        }
    }

    pub fn contains(self, v: &Rational) -> bool {
        match self {
            Semantics::FiniteChain { m, .. } => {
                in_unit_interval(v) && (v * Rational::from_integer(m.into())).is_integer()
            }
            _ => in_unit_interval(v),
        }
    }

    pub fn check_point(self, point: &[Rational]) -> Result<(), EvalError> {
        for (index, value) in point.iter().enumerate() {
            if !in_unit_interval(value) {
                return Err(EvalError::OutOfRange { index, value: value.clone() });
            }
            if let Semantics::FiniteChain { m, .. } = self {
                if !self.contains(value) {
                    return Err(EvalError::NotOnChain { index, value: value.clone(), m });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::Godel => write!(f, "godel"),
            Semantics::Product => write!(f, "product"),
            Semantics::Lukasiewicz => write!(f, "luk"),
            Semantics::FiniteChain { m: 1, .. } => write!(f, "boole"),
            Semantics::FiniteChain { m, base: ChainBase::Godel } => write!(f, "godel:{m}"),
            Semantics::FiniteChain { m, base: ChainBase::Lukasiewicz } => write!(f, "luk:{m}"),
        }
    }
}

impl FromStr for Semantics {
    type Err = String;

    /// Accepts `godel`, `product`, `luk`, `boole`, and `luk:m` / `godel:m` for chains.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, m) = match lower.split_once(':') {
            Some((n, m)) => {
                let m: u32 = m.parse().map_err(|_| format!("invalid chain length `{m}`"))?;
                if m == 0 {
                    return Err("chain length must be positive".into());
                }
                (n.to_string(), Some(m))
            }
            None => (lower, None),
        };
        let base = match name.as_str() {
            "godel" | "g" | "goedel" => ChainBase::Godel,
            "luk" | "lukasiewicz" | "l" | "mv" => ChainBase::Lukasiewicz,
            "product" | "p" if m.is_none() => return Ok(Semantics::Product),
            "boole" | "bool" | "boolean" if m.is_none() => return Ok(Semantics::BOOLEAN),
            _ => return Err(format!("unknown semantics `{s}`")),
        };
        Ok(match (m, base) {
            (Some(m), base) => Semantics::FiniteChain { m, base },
            (None, ChainBase::Godel) => Semantics::Godel,
            (None, ChainBase::Lukasiewicz) => Semantics::Lukasiewicz,
        })
    }
}

/// Exact evaluation at a rational point.
pub struct RationalValuation<'a> {
    pub sem: Semantics,
    pub point: &'a [Rational],
}

impl Interpretation for RationalValuation<'_> {
    type Value = Rational;

    fn var(&self, index: usize) -> Rational {
        self.point[index].clone()
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn star(&self, a: &Rational, b: &Rational) -> Rational {
        self.sem.star(a, b)
    }
    fn implies(&self, a: &Rational, b: &Rational) -> Rational {
        self.sem.implies(a, b)
    }
    // a ⋆ (a → b) = min(a, b) for every continuous t-norm; likewise for max.
    fn and(&self, a: &Rational, b: &Rational) -> Rational {
        a.min(b).clone()
    }
    fn or(&self, a: &Rational, b: &Rational) -> Rational {
        a.max(b).clone()
    }
}

/// Łukasiewicz evaluation in floating point, used only for approximate statistics.
pub struct FloatLukasiewicz<'a> {
    pub point: &'a [f64],
}

impl Interpretation for FloatLukasiewicz<'_> {
    type Value = f64;

    fn var(&self, index: usize) -> f64 {
        self.point[index]
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn star(&self, a: &f64, b: &f64) -> f64 {
        (a + b - 1.0).max(0.0)
    }
    fn implies(&self, a: &f64, b: &f64) -> f64 {
        (1.0 - a + b).min(1.0)
    }
    fn neg(&self, a: &f64) -> f64 {
        1.0 - a
    }
    fn and(&self, a: &f64, b: &f64) -> f64 {
        a.min(*b)
    }
    fn or(&self, a: &f64, b: &f64) -> f64 {
        a.max(*b)
    }
    fn oplus(&self, a: &f64, b: &f64) -> f64 {
        (a + b).min(1.0)
    }
}

/// Exact value of `f` at `point` (coordinate `i` is the value of `x_i`).
pub fn eval(f: &Formula, sem: Semantics, point: &[Rational]) -> Result<Rational, EvalError> {
    if let Some(&max) = f.variables().iter().next_back() {
        if max >= point.len() {
            return Err(EvalError::MissingVariable { index: max, provided: point.len() });
        }
    }
    sem.check_point(point)?;
    Ok(Program::compile(f).run(&RationalValuation { sem, point }))
}
