//! Seeded random formulas and substitutions for tests and experiments.

use rand::Rng;

use super::{Formula, Substitution};

/// Which connectives a random formula may use.
#[derive(Clone, Copy, Debug)]
pub struct FormulaShape {
    pub vars: usize,
    pub max_depth: usize,
    pub constants: bool,
    pub sugar: bool,
}

impl FormulaShape {
    pub fn new(vars: usize, max_depth: usize) -> Self {
        FormulaShape { vars, max_depth, constants: true, sugar: true }
    }
}

pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, shape: FormulaShape) -> Formula {
    let leaf = |rng: &mut R| {
        if shape.constants && rng.gen_ratio(1, 8) {
            if rng.gen_bool(0.5) {
                Formula::zero()
            } else {
                Formula::one()
            }
        } else {
            Formula::var(rng.gen_range(0..shape.vars.max(1)))
        }
    };
    if shape.max_depth == 0 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    let sub = FormulaShape { max_depth: shape.max_depth - 1, ..shape };
    let kinds = if shape.sugar { 6 } else { 2 };
    match rng.gen_range(0..kinds) {
        0 => Formula::star(random_formula(rng, sub), random_formula(rng, sub)),
        1 => Formula::implies(random_formula(rng, sub), random_formula(rng, sub)),
        2 => Formula::neg(random_formula(rng, sub)),
        3 => Formula::and(random_formula(rng, sub), random_formula(rng, sub)),
        4 => Formula::or(random_formula(rng, sub), random_formula(rng, sub)),
        _ => Formula::oplus(random_formula(rng, sub), random_formula(rng, sub)),
    }
}

pub fn random_substitution<R: Rng + ?Sized>(rng: &mut R, arity: usize, max_depth: usize) -> Substitution {
    let shape = FormulaShape::new(arity, max_depth);
    Substitution::new((0..arity).map(|_| random_formula(rng, shape)).collect())
        .expect("images only use variables below the arity")
}
