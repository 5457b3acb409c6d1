//! Deciding (or refuting) validity and semantic identities.

use num::{One, Zero};
use thiserror::Error;

use super::program::Program;
use super::semantics::RationalValuation;
use super::{Formula, Semantics, Substitution};
use crate::pwl::{PwlError, PwlFunction};
use crate::rational::{Point, Rational};

/// Largest number of valuations an enumeration may visit.
pub const DEFAULT_POINT_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Enumerate every valuation on a finite chain.
    TruthTable,
    /// Exact piecewise-linear minimum; Łukasiewicz with at most two variables.
    ExactPwl,
    /// All points whose coordinates have denominator at most the bound.
    Grid(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Tautology,
    /// A point (indexed by variable) where the formula is not 1.
    Countermodel(Point),
    Unknown,
}

impl Verdict {
    pub fn is_tautology(&self) -> bool {
        matches!(self, Verdict::Tautology)
    }
    pub fn countermodel(&self) -> Option<&Point> {
        match self {
            Verdict::Countermodel(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("method {method:?} cannot be used with {sem} semantics")]
    Incompatible { method: Method, sem: Semantics },
    #[error("exact PWL method supports at most 2 variables, formula has {0}")]
    TooManyVariables(usize),
    #[error("{0} valuations exceed the enumeration cap {1}")]
    TooLarge(u128, u64),
    #[error("grid bound must be positive")]
    EmptyGrid,
    #[error(transparent)]
    Pwl(#[from] PwlError),
}

/// All rationals in `[0,1]` with denominator at most `bound`, ascending.
pub fn farey(bound: u32) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=bound.max(1))
        .flat_map(|q| (0..=q).map(move |p| Rational::new(p.into(), q.into())))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Rewrites `f` over variables `x_0..x_{k-1}` (in order of first index) and
/// returns the rewritten formula with the original indices.
pub(crate) fn compact_variables(f: &Formula) -> (Formula, Vec<usize>) {
    let vars: Vec<usize> = f.variables().into_iter().collect();
    let Some(&max) = vars.last() else {
        return (f.clone(), vars);
    };
    if vars.iter().enumerate().all(|(i, &v)| i == v) {
        return (f.clone(), vars);
    }
    let mut images = vec![Formula::zero(); max + 1];
    for (j, &v) in vars.iter().enumerate() {
        images[v] = Formula::var(j);
    }
    let sigma = Substitution::new(images).expect("compacted indices stay below the arity");
    (sigma.apply(f).expect("every variable is in range"), vars)
}

fn expand_point(compact: &[Rational], vars: &[usize], arity: usize) -> Point {
    let mut p = vec![Rational::zero(); arity];
    for (value, &v) in compact.iter().zip(vars) {
        p[v] = value.clone();
    }
    p
}

/// Searches the product `values^k` for a point where `f` is not 1.
fn enumerate(
    f: &Formula,
    sem: Semantics,
    values: &[Rational],
    cap: u64,
) -> Result<Option<Point>, TautologyError> {
    let (g, vars) = compact_variables(f);
    let k = vars.len();
    let total = (values.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(TautologyError::TooLarge(total, cap));
    }
    let prog = Program::compile(&g);
    let one = Rational::one();
    let mut idx = vec![0usize; k];
    let mut point: Vec<Rational> = vec![values[0].clone(); k];
    loop {
        if prog.run(&RationalValuation { sem, point: &point }) != one {
            return Ok(Some(expand_point(&point, &vars, f.arity())));
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(None);
            }
            idx[i] += 1;
            if idx[i] < values.len() {
                point[i] = values[idx[i]].clone();
                break;
            }
            idx[i] = 0;
            point[i] = values[0].clone();
            i += 1;
        }
    }
}

/// Checks whether `f` takes value 1 at every valuation.
pub fn tautology_check(f: &Formula, sem: Semantics, method: Method) -> Result<Verdict, TautologyError> {
    tautology_check_capped(f, sem, method, DEFAULT_POINT_CAP)
}

pub fn tautology_check_capped(
    f: &Formula,
    sem: Semantics,
    method: Method,
    cap: u64,
) -> Result<Verdict, TautologyError> {
    match method {
        Method::TruthTable => {
            let values = sem.carrier().ok_or(TautologyError::Incompatible { method, sem })?;
            Ok(match enumerate(f, sem, &values, cap)? {
                Some(p) => Verdict::Countermodel(p),
                None => Verdict::Tautology,
            })
        }
        Method::ExactPwl => {
            if sem != Semantics::Lukasiewicz {
                return Err(TautologyError::Incompatible { method, sem });
            }
            let (g, vars) = compact_variables(f);
            if vars.len() > 2 {
                return Err(TautologyError::TooManyVariables(vars.len()));
            }
            let pwl = PwlFunction::from_formula(&g, vars.len().max(1))?;
            let (value, witness) = pwl.min_value();
            Ok(if value.is_one() {
                Verdict::Tautology
            } else {
                Verdict::Countermodel(expand_point(&witness, &vars, f.arity()))
            })
        }
        Method::Grid(bound) => {
            if bound == 0 {
                return Err(TautologyError::EmptyGrid);
            }
            let values: Vec<Rational> =
                farey(bound).into_iter().filter(|v| sem.contains(v)).collect();
            Ok(match enumerate(f, sem, &values, cap)? {
                Some(p) => Verdict::Countermodel(p),
                None => Verdict::Unknown,
            })
        }
    }
}

/// Checks `r = s` as the tautology `(r → s) ∧ (s → r)`.
pub fn identity_check(
    r: &Formula,
    s: &Formula,
    sem: Semantics,
    method: Method,
) -> Result<Verdict, TautologyError> {
    if r == s {
        return Ok(Verdict::Tautology);
    }
    let both = Formula::and(Formula::implies(r.clone(), s.clone()), Formula::implies(s.clone(), r.clone()));
    tautology_check(&both, sem, method)
}
