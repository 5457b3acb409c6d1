//! Frege-style proofs with Modus Ponens and substitution, axiom sets, and
//! MP-consequence on decidable semantics.

mod axioms;
mod consequence;
mod json;

use thiserror::Error;

pub use axioms::{builtin_axioms, instance_of, AxiomSet, Logic};
pub use consequence::{mp_consequence, Certificate, Consequence, DEFAULT_STAR_POWER_BOUND};
pub use json::{parse_proof_jsonl, proof_to_jsonl, JsonJust, JsonStep};

pub use crate::spectra::filter_generated;

use crate::formula::{tautology_check, Formula, Method, Node, Semantics, Substitution};
use crate::odometer::{is_boolean_tautology, MAX_TABLE_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeductionError {
    #[error("no decision procedure for {0} with {1} variables")]
    NoBackend(Semantics, usize),
    #[error("{0} valuations exceed the cap {1}")]
    CapExceeded(u128, u64),
    #[error("malformed proof: {0}")]
    Malformed(String),
}

/// How a proof line is obtained. Line references are 0-based indices into
/// [`Proof::lines`]; the exchange format and verdicts count from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom,
    Hypothesis(usize),
    /// `Mp(k, m)`: line `m` is `line_k → this line`.
    Mp(usize, usize),
    Subst(usize, Substitution),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Proof {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    /// Distinct substitutions used by `Subst` steps.
    pub fn substitutions(&self) -> Vec<&Substitution> {
        let mut out: Vec<&Substitution> = Vec::new();
        for l in &self.lines {
            if let Justification::Subst(_, s) = &l.just {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn prefix(&self, len: usize) -> Proof {
        Proof { hypotheses: self.hypotheses.clone(), lines: self.lines[..len].to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    Valid,
    /// `line` counts from 1.
    InvalidAt { line: usize, reason: String },
}

impl CheckVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CheckVerdict::Valid)
    }
}

/// Where axiom lines come from.
#[derive(Clone, Debug)]
pub enum AxiomSource {
    /// Substitution instances of the schemas; with `strict`, only the
    /// schemas themselves (substitution then needs its own steps).
    Schemas { set: AxiomSet, strict: bool },
    /// Any formula the semantics' exact tautology test accepts.
    Oracle(Semantics),
    /// Either of the above.
    SchemasOrOracle(AxiomSet, Semantics),
}

impl AxiomSource {
    pub fn boolean_oracle() -> AxiomSource {
        AxiomSource::Oracle(Semantics::BOOLEAN)
    }

    fn accepts(&self, f: &Formula) -> Result<(), String> {
        match self {
            AxiomSource::Schemas { set, strict } => schema_accepts(set, *strict, f),
            AxiomSource::Oracle(sem) => oracle_accepts(*sem, f),
            AxiomSource::SchemasOrOracle(set, sem) => {
                schema_accepts(set, false, f).or_else(|_| oracle_accepts(*sem, f))
            }
        }
    }
}

fn schema_accepts(set: &AxiomSet, strict: bool, f: &Formula) -> Result<(), String> {
    let ok = set.schemas.iter().any(|s| if strict { s == f } else { instance_of(s, f).is_some() });
    if ok {
        Ok(())
    } else {
        Err(format!("not an instance of any {} axiom schema", set.logic))
    }
}

fn oracle_accepts(sem: Semantics, f: &Formula) -> Result<(), String> {
    let n = f.arity();
    let verdict = match sem {
        Semantics::FiniteChain { m: 1, .. } if n <= MAX_TABLE_VARS => {
            return if is_boolean_tautology(f, n).expect("arity checked") {
                Ok(())
            } else {
                Err("not a Boolean tautology".into())
            };
        }
        Semantics::FiniteChain { .. } => tautology_check(f, sem, Method::TruthTable),
        Semantics::Lukasiewicz if n <= 2 => tautology_check(f, sem, Method::ExactPwl),
        _ => return Err(format!("no exact tautology test for {sem} with {n} variables")),
    };
    match verdict {
        Ok(v) if v.is_tautology() => Ok(()),
        Ok(_) => Err(format!("not a tautology under {sem}")),
        Err(e) => Err(e.to_string()),
    }
}

/// The pair `(a, b)` when `f` is `a → b` after expanding derived connectives.
fn as_implication(f: &Formula) -> Option<(Formula, Formula)> {
    match f.core_view().node() {
        Node::Impl(a, b) => Some((a.clone(), b.clone())),
        _ => None,
    }
}

fn check_line(p: &Proof, i: usize, axioms: &AxiomSource) -> Result<(), String> {
    let line = &p.lines[i];
    let earlier = |k: usize| {
        if k < i {
            Ok(())
        } else {
            Err(format!("refers to line {}, which is not earlier", k + 1))
        }
    };
    match &line.just {
        Justification::Axiom => axioms.accepts(&line.formula),
        Justification::Hypothesis(h) => match p.hypotheses.get(*h) {
            Some(f) if *f == line.formula => Ok(()),
            Some(_) => Err(format!("formula differs from hypothesis {}", h + 1)),
            None => Err(format!("there is no hypothesis {}", h + 1)),
        },
        Justification::Mp(k, m) => {
            earlier(*k)?;
            earlier(*m)?;
            match as_implication(&p.lines[*m].formula) {
                Some((a, b)) if b == line.formula => {
                    if a == p.lines[*k].formula {
                        Ok(())
                    } else {
                        Err(format!("the antecedent of line {} is not line {}", m + 1, k + 1))
                    }
                }
                _ => Err(format!("line {} is not an implication with conclusion {}", m + 1, line.formula)),
            }
        }
        Justification::Subst(k, sigma) => {
            earlier(*k)?;
            let src = &p.lines[*k].formula;
            let sigma = sigma.extend(src.arity().max(sigma.arity()));
            let img = sigma.apply(src).map_err(|e| e.to_string())?;
            if img == line.formula {
                Ok(())
            } else {
                Err(format!("formula is not the substitution instance of line {}", k + 1))
            }
        }
    }
}

/// Checks every line in order; the first failure is reported.
pub fn check_proof(p: &Proof, axioms: &AxiomSource) -> CheckVerdict {
    for i in 0..p.lines.len() {
        if let Err(reason) = check_line(p, i, axioms) {
            return CheckVerdict::InvalidAt { line: i + 1, reason };
        }
    }
    CheckVerdict::Valid
}
