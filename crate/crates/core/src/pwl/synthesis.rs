//! From McNaughton functions back to formulas.
//!
//! A truncated integer affine function `T(g) = min(1, max(0, g))` is built
//! one unit coefficient at a time from
//!
//! ```text
//! T(g + x) = (T(g) ⊕ x) ⊙ T(g + 1)
//! T(g - x) = (T(g - 1) ⊕ ¬x) ⊙ T(g)
//! ```
//!
//! and a piecewise function is the max-min lattice combination of its
//! truncated pieces: `f = max_i min { T(F_j) : F_j ≥ F_i on cell i }`.

use std::collections::HashMap;

use num::{BigInt, One, Signed, Zero};

use super::{AffinePieceZ, PwlError, PwlFunction};
use crate::formula::Formula;

struct Synth {
    memo: HashMap<AffinePieceZ, Formula>,
}

impl Synth {
    fn max(g: &AffinePieceZ) -> BigInt {
        g.a.iter().filter(|c| c.is_positive()).sum::<BigInt>() + &g.b
    }

    fn min(g: &AffinePieceZ) -> BigInt {
        g.a.iter().filter(|c| c.is_negative()).sum::<BigInt>() + &g.b
    }

    fn truncated(&mut self, g: &AffinePieceZ) -> Formula {
        if let Some(f) = self.memo.get(g) {
            return f.clone();
        }
        let out = self.build(g);
        self.memo.insert(g.clone(), out.clone());
        out
    }

    fn build(&mut self, g: &AffinePieceZ) -> Formula {
        if Self::max(g) <= BigInt::zero() {
            return Formula::zero();
        }
        if Self::min(g) >= BigInt::one() {
            return Formula::one();
        }
        let i = g.a.iter().position(|c| !c.is_zero()).expect("a non-constant piece");
        let nonzero = g.a.iter().filter(|c| !c.is_zero()).count();
        if nonzero == 1 {
            if g.a[i].is_one() && g.b.is_zero() {
                return Formula::var(i);
            }
            if g.a[i] == -BigInt::one() && g.b.is_one() {
                return Formula::neg(Formula::var(i));
            }
        }
        let mut rest = g.clone();
        let (low, high, lit) = if g.a[i].is_positive() {
            rest.a[i] -= 1;
            (rest.clone(), rest.add_const(1), Formula::var(i))
        } else {
            rest.a[i] += 1;
            (rest.add_const(-1), rest, Formula::neg(Formula::var(i)))
        };
        let zero_low = Self::max(&low) <= BigInt::zero();
        let one_high = Self::min(&high) >= BigInt::one();
        let sum = if zero_low { lit } else { Formula::oplus(self.truncated(&low), lit) };
        if one_high {
            sum
        } else {
            Formula::star(sum, self.truncated(&high))
        }
    }
}

/// A formula whose Łukasiewicz function is `min(1, max(0, g))`.
pub fn clamped_affine_formula(g: &AffinePieceZ) -> Formula {
    Synth { memo: HashMap::new() }.truncated(g)
}

/// Max-min lattice formula for a function on a convex domain.
pub(crate) fn lattice_formula(f: &PwlFunction) -> Formula {
    let mut distinct: Vec<AffinePieceZ> = f.pieces().to_vec();
    distinct.sort();
    distinct.dedup();
    let mut synth = Synth { memo: HashMap::new() };
    let atoms: Vec<Formula> = distinct.iter().map(|p| synth.truncated(p)).collect();
    let vertices = f.complex().vertices();
    let mut terms: Vec<Vec<usize>> = Vec::new();
    for (cell, piece) in f.complex().cells().iter().zip(f.pieces()) {
        let above: Vec<usize> = (0..distinct.len())
            .filter(|&j| cell.iter().all(|&v| distinct[j].eval(&vertices[v]) >= piece.eval(&vertices[v])))
            .collect();
        terms.push(above);
    }
    terms.sort();
    terms.dedup();
    // A term whose index set contains another's is dominated in the max.
    let minimal: Vec<&Vec<usize>> = terms
        .iter()
        .filter(|t| !terms.iter().any(|s| s != *t && s.iter().all(|j| t.contains(j))))
        .collect();
    Formula::or_all(
        minimal.into_iter().map(|t| Formula::and_all(t.iter().map(|&j| atoms[j].clone()))),
    )
}

/// A formula in `x0` whose function is `f`.
pub fn pwl_to_formula_1d(f: &PwlFunction) -> Result<Formula, PwlError> {
    if f.dim() != 1 {
        return Err(PwlError::Dimension(f.dim()));
    }
    Ok(lattice_formula(f))
}
