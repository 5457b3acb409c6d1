//! Propositional formulas over `⋆`, `→`, `0`, `1` and numbered variables.
//!
//! Formulas are immutable, reference-counted DAGs: substitution shares
//! subterms instead of copying them, so iterated substitutions stay linear in
//! memory even when their printed form is exponentially long.
//!
//! The derived connectives `¬`, `∧`, `∨`, `⊕` are kept as their own nodes so
//! that printing reproduces the input, but equality, hashing and evaluation
//! all see through them:
//!
//! ```text
//! ¬a      = a → 0
//! a ∧ b   = a ⋆ (a → b)
//! a ∨ b   = ((a → b) → b) ∧ ((b → a) → a)
//! a ⊕ b   = ¬a → b
//! ```

mod parse;
mod print;
pub mod program;
pub mod random;
pub mod semantics;
pub mod substitution;
pub mod tautology;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use parse::{parse_formula, ParseError};
pub use program::{Interpretation, Program};
pub use semantics::{eval, ChainBase, EvalError, Semantics};
pub use substitution::{SubstitutionError, Substitution};
pub use tautology::{identity_check, tautology_check, Method, TautologyError, Verdict};

/// A propositional formula. Cheap to clone.
#[derive(Clone)]
pub struct Formula(Arc<Inner>);

struct Inner {
    node: Node,
    hash: u64,
}

#[derive(Clone, Debug)]
pub enum Node {
    Var(usize),
    Zero,
    One,
    Star(Formula, Formula),
    Impl(Formula, Formula),
    Neg(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    OPlus(Formula, Formula),
}

/// The kind of a node, without its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    Star,
    Impl,
    Neg,
    And,
    Or,
    OPlus,
}

// Structural hashes are computed on the desugared tree, compositionally, so
// that `Or(a, b)` and its expansion hash alike without expanding anything.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const H_ZERO: u64 = 0x2545_f491_4f6c_dd1d;
const H_ONE: u64 = 0x1b87_3593_c2b2_ae35;

fn h_var(i: usize) -> u64 {
    splitmix(0x5851_f42d_4c95_7f2d ^ i as u64)
}
fn h_star(a: u64, b: u64) -> u64 {
    splitmix(splitmix(a ^ 0x27d4_eb2f_1656_67c5).wrapping_add(b.rotate_left(23)))
}
fn h_impl(a: u64, b: u64) -> u64 {
    splitmix(splitmix(a ^ 0x1656_67b1_9e37_79f9).wrapping_add(b.rotate_left(41)))
}
fn h_neg(a: u64) -> u64 {
    h_impl(a, H_ZERO)
}
fn h_and(a: u64, b: u64) -> u64 {
    h_star(a, h_impl(a, b))
}
fn h_or(a: u64, b: u64) -> u64 {
    h_and(h_impl(h_impl(a, b), b), h_impl(h_impl(b, a), a))
}
fn h_oplus(a: u64, b: u64) -> u64 {
    h_impl(h_neg(a), b)
}

impl Formula {
    fn make(node: Node) -> Formula {
        let hash = match &node {
            Node::Var(i) => h_var(*i),
            Node::Zero => H_ZERO,
            Node::One => H_ONE,
            Node::Star(a, b) => h_star(a.0.hash, b.0.hash),
            Node::Impl(a, b) => h_impl(a.0.hash, b.0.hash),
            Node::Neg(a) => h_neg(a.0.hash),
            Node::And(a, b) => h_and(a.0.hash, b.0.hash),
            Node::Or(a, b) => h_or(a.0.hash, b.0.hash),
            Node::OPlus(a, b) => h_oplus(a.0.hash, b.0.hash),
        };
        Formula(Arc::new(Inner { node, hash }))
    }

    pub fn var(i: usize) -> Formula {
        Formula::make(Node::Var(i))
    }
    pub fn zero() -> Formula {
        Formula::make(Node::Zero)
    }
    pub fn one() -> Formula {
        Formula::make(Node::One)
    }
    pub fn star(a: Formula, b: Formula) -> Formula {
        Formula::make(Node::Star(a, b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::make(Node::Impl(a, b))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::make(Node::Neg(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::make(Node::And(a, b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::make(Node::Or(a, b))
    }
    pub fn oplus(a: Formula, b: Formula) -> Formula {
        Formula::make(Node::OPlus(a, b))
    }

    /// Boolean symmetric difference `(a ∧ ¬b) ∨ (¬a ∧ b)`.
    pub fn sym_diff(a: Formula, b: Formula) -> Formula {
        Formula::or(
            Formula::and(a.clone(), Formula::neg(b.clone())),
            Formula::and(Formula::neg(a), b),
        )
    }

    /// Left-nested conjunction of the given formulas; `1` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::one)
    }

    /// Left-nested disjunction of the given formulas; `0` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or_else(Formula::zero)
    }

    /// `a ⋆ a ⋆ ... ⋆ a` (`k` factors); `1` for `k = 0`.
    pub fn star_power(a: &Formula, k: usize) -> Formula {
        (0..k).map(|_| a.clone()).reduce(Formula::star).unwrap_or_else(Formula::one)
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub(crate) fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn children(&self) -> impl Iterator<Item = &Formula> {
        let (a, b) = match self.node() {
            Node::Var(_) | Node::Zero | Node::One => (None, None),
            Node::Neg(a) => (Some(a), None),
            Node::Star(a, b)
            | Node::Impl(a, b)
            | Node::And(a, b)
            | Node::Or(a, b)
            | Node::OPlus(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }

    pub fn connective(&self) -> Option<Connective> {
        Some(match self.node() {
            Node::Var(_) | Node::Zero | Node::One => return None,
            Node::Star(..) => Connective::Star,
            Node::Impl(..) => Connective::Impl,
            Node::Neg(_) => Connective::Neg,
            Node::And(..) => Connective::And,
            Node::Or(..) => Connective::Or,
            Node::OPlus(..) => Connective::OPlus,
        })
    }

    pub fn is_sugar(&self) -> bool {
        matches!(self.node(), Node::Neg(_) | Node::And(..) | Node::Or(..) | Node::OPlus(..))
    }

    /// Expands the top-level derived connective (repeatedly) until the root is
    /// a variable, a constant, `⋆` or `→`. Children are shared, not expanded.
    pub fn core_view(&self) -> Formula {
        let mut f = self.clone();
        loop {
            let next = match f.node() {
                Node::Neg(a) => Formula::implies(a.clone(), Formula::zero()),
                Node::And(a, b) => {
                    Formula::star(a.clone(), Formula::implies(a.clone(), b.clone()))
                }
                Node::Or(a, b) => Formula::and(
                    Formula::implies(Formula::implies(a.clone(), b.clone()), b.clone()),
                    Formula::implies(Formula::implies(b.clone(), a.clone()), a.clone()),
                ),
                Node::OPlus(a, b) => Formula::implies(Formula::neg(a.clone()), b.clone()),
                _ => return f,
            };
            f = next;
        }
    }

    /// Fully desugared copy over `⋆`, `→`, `0`, `1` only (shares nothing it can't).
    pub fn desugar(&self) -> Formula {
        let mut memo: HashMap<usize, Formula> = HashMap::new();
        fn go(f: &Formula, memo: &mut HashMap<usize, Formula>) -> Formula {
            if let Some(r) = memo.get(&f.key()) {
                return r.clone();
            }
            let core = f.core_view();
            let out = match core.node() {
                Node::Star(a, b) => Formula::star(go(a, memo), go(b, memo)),
                Node::Impl(a, b) => Formula::implies(go(a, memo), go(b, memo)),
                _ => core.clone(),
            };
            memo.insert(f.key(), out.clone());
            out
        }
        go(self, &mut memo)
    }

    /// Indices of the variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut seen = HashSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.key()) {
                continue;
            }
            if let Node::Var(i) = f.node() {
                out.insert(*i);
            }
            stack.extend(f.children());
        }
        out
    }

    /// One more than the largest variable index (0 for closed formulas).
    pub fn arity(&self) -> usize {
        self.variables().iter().next_back().map_or(0, |m| m + 1)
    }

    /// Number of distinct nodes in the DAG.
    pub fn dag_size(&self) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if seen.insert(f.key()) {
                stack.extend(f.children());
            }
        }
        seen.len()
    }

    /// Number of nodes once shared subterms are unfolded, saturating at
    /// `u128::MAX`. Printing takes time proportional to this.
    pub fn tree_size(&self) -> u128 {
        fn go(f: &Formula, memo: &mut HashMap<usize, u128>) -> u128 {
            if let Some(&s) = memo.get(&f.key()) {
                return s;
            }
            let s = f.children().fold(1u128, |acc, c| acc.saturating_add(go(c, memo)));
            memo.insert(f.key(), s);
            s
        }
        go(self, &mut HashMap::new())
    }

    /// Structural equality modulo desugaring.
    pub fn equivalent_syntax(&self, other: &Formula) -> bool {
        let mut memo = HashSet::new();
        eq_mod(self, other, &mut memo)
    }
}

fn eq_mod(a: &Formula, b: &Formula, memo: &mut HashSet<(usize, usize)>) -> bool {
    if a.ptr_eq(b) {
        return true;
    }
    if a.0.hash != b.0.hash {
        return false;
    }
    let pair = (a.key(), b.key());
    if memo.contains(&pair) {
        return true;
    }
    // Same sugar kind: compare children directly, avoids allocating views.
    let same = match (a.node(), b.node()) {
        (Node::Neg(x), Node::Neg(y)) => Some(eq_mod(x, y, memo)),
        (Node::And(x1, x2), Node::And(y1, y2))
        | (Node::Or(x1, x2), Node::Or(y1, y2))
        | (Node::OPlus(x1, x2), Node::OPlus(y1, y2))
        | (Node::Star(x1, x2), Node::Star(y1, y2))
        | (Node::Impl(x1, x2), Node::Impl(y1, y2)) => {
            Some(eq_mod(x1, y1, memo) && eq_mod(x2, y2, memo))
        }
        (Node::Var(i), Node::Var(j)) => Some(i == j),
        (Node::Zero, Node::Zero) | (Node::One, Node::One) => Some(true),
        _ => None,
    };
    let result = match same {
        Some(r) => r,
        None => {
            let (ca, cb) = (a.core_view(), b.core_view());
            match (ca.node(), cb.node()) {
                (Node::Star(x1, x2), Node::Star(y1, y2))
                | (Node::Impl(x1, x2), Node::Impl(y1, y2)) => {
                    eq_mod(x1, y1, memo) && eq_mod(x2, y2, memo)
                }
                (Node::Var(i), Node::Var(j)) => i == j,
                (Node::Zero, Node::Zero) | (Node::One, Node::One) => true,
                _ => false,
            }
        }
    };
    if result {
        memo.insert(pair);
    }
    result
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent_syntax(other)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl std::fmt::Debug for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Shorthand for `Formula::var(i)`.
pub fn x(i: usize) -> Formula {
    Formula::var(i)
}

/// The tent formula `(x ∧ ¬x) ⊕ (x ∧ ¬x)` in variable `i`.
pub fn tent(i: usize) -> Formula {
    let half = Formula::and(x(i), Formula::neg(x(i)));
    Formula::oplus(half.clone(), half)
}
