//! Many-valued propositional logic over continuous t-norms, with exact
//! arithmetic throughout.
//!
//! Formulas evaluate to truth values in `[0,1]`; in Łukasiewicz logic a
//! formula in `n` variables is a McNaughton function on the `n`-cube, and a
//! substitution is a self-map of the cube. The crate covers:
//!
//! * [`formula`]: syntax, semantics, substitutions, tautology checks;
//! * [`pwl`]: exact piecewise-linear calculus in dimensions 1 and 2;
//! * [`dynamics`]: induced maps, orbits, denominators, homeomorphisms;
//! * [`odometer`]: Boolean truth tables and the 2-adic odometer;
//! * [`deduction`]: proofs, axiom sets and consequence;
//! * [`spectra`]: finite algebras, filters and prime spectra.

pub mod deduction;
pub mod dynamics;
pub mod formula;
pub mod odometer;
pub mod pwl;
pub mod rational;
pub mod spectra;

pub use formula::{parse_formula, Formula, Semantics, Substitution};
pub use rational::{Point, Rational, RationalBox};
