//! Simultaneous substitutions `x_i ↦ s_i` and their composition.

use std::collections::HashMap;

use thiserror::Error;

use super::{Formula, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("variable x{index} is outside the arity {arity} of the substitution")]
    OutOfArity { index: usize, arity: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}

/// An endomorphism of the free algebra on `arity` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Formula>,
}

impl Substitution {
    /// Fails if some image mentions a variable with index `>= images.len()`.
    pub fn new(images: Vec<Formula>) -> Result<Substitution, SubstitutionError> {
        let arity = images.len();
        for s in &images {
            if let Some(&index) = s.variables().iter().next_back() {
                if index >= arity {
                    return Err(SubstitutionError::OutOfArity { index, arity });
                }
            }
        }
        Ok(Substitution { images })
    }

    pub fn identity(arity: usize) -> Substitution {
        Substitution { images: (0..arity).map(Formula::var).collect() }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Formula] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Formula {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, s)| matches!(s.node(), Node::Var(j) if *j == i))
    }

    /// Replaces every `x_i` in `f` by `s_i`, simultaneously.
    pub fn apply(&self, f: &Formula) -> Result<Formula, SubstitutionError> {
        let mut memo = HashMap::new();
        self.apply_memo(f, &mut memo)
    }

    /// Like [`apply`](Self::apply), reusing a memo table across calls on shared DAGs.
    pub fn apply_memo(
        &self,
        f: &Formula,
        memo: &mut HashMap<usize, Formula>,
    ) -> Result<Formula, SubstitutionError> {
        if let Some(r) = memo.get(&f.key()) {
            return Ok(r.clone());
        }
        let out = match f.node() {
            Node::Var(i) => match self.images.get(*i) {
                Some(s) => s.clone(),
                None => {
                    return Err(SubstitutionError::OutOfArity { index: *i, arity: self.arity() })
                }
            },
            Node::Zero | Node::One => f.clone(),
            Node::Neg(a) => Formula::neg(self.apply_memo(a, memo)?),
            Node::Star(a, b) => Formula::star(self.apply_memo(a, memo)?, self.apply_memo(b, memo)?),
            Node::Impl(a, b) => {
                Formula::implies(self.apply_memo(a, memo)?, self.apply_memo(b, memo)?)
            }
            Node::And(a, b) => Formula::and(self.apply_memo(a, memo)?, self.apply_memo(b, memo)?),
            Node::Or(a, b) => Formula::or(self.apply_memo(a, memo)?, self.apply_memo(b, memo)?),
            Node::OPlus(a, b) => {
                Formula::oplus(self.apply_memo(a, memo)?, self.apply_memo(b, memo)?)
            }
        };
        memo.insert(f.key(), out.clone());
        Ok(out)
    }

    /// `σ ∘ τ`: the substitution `x_i ↦ σ(τ(x_i))`.
    pub fn compose(sigma: &Substitution, tau: &Substitution) -> Result<Substitution, SubstitutionError> {
        if sigma.arity() != tau.arity() {
            return Err(SubstitutionError::ArityMismatch { left: sigma.arity(), right: tau.arity() });
        }
        let mut memo = HashMap::new();
        let images = tau
            .images
            .iter()
            .map(|t| sigma.apply_memo(t, &mut memo))
            .collect::<Result<_, _>>()?;
        Ok(Substitution { images })
    }

    /// The same substitution on `arity` variables, fixing the added ones.
    pub fn extend(&self, arity: usize) -> Substitution {
        let mut images = self.images.clone();
        images.extend((images.len()..arity).map(Formula::var));
        Substitution { images }
    }

    /// `σ^k`, computed by repeated composition with shared subterms.
    pub fn power(&self, k: usize) -> Substitution {
        let mut out = Substitution::identity(self.arity());
        for _ in 0..k {
            out = Substitution::compose(self, &out).expect("equal arities");
        }
        out
    }
}
