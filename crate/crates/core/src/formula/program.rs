//! Evaluation of formula DAGs over an arbitrary interpretation of the connectives.
//!
//! A [`Program`] lists the distinct subformulas in dependency order, so one
//! pass evaluates a formula whose tree form would be exponentially large.

use std::collections::HashMap;

use super::{Formula, Node};

/// Values and connectives for evaluating formulas.
///
/// Only `⋆` and `→` are required; the derived connectives default to their
/// defining expansions and may be overridden with equivalent shortcuts.
pub trait Interpretation {
    type Value: Clone;

    fn var(&self, index: usize) -> Self::Value;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn star(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn implies(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn neg(&self, a: &Self::Value) -> Self::Value {
        self.implies(a, &self.zero())
    }
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.star(a, &self.implies(a, b))
    }
    fn or(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        let l = self.implies(&self.implies(a, b), b);
        let r = self.implies(&self.implies(b, a), a);
        self.and(&l, &r)
    }
    fn oplus(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.implies(&self.neg(a), b)
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Zero,
    One,
    Star(usize, usize),
    Impl(usize, usize),
    Neg(usize),
    And(usize, usize),
    Or(usize, usize),
    OPlus(usize, usize),
}

/// A formula compiled to a straight-line program over its distinct subformulas.
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
}

impl Program {
    pub fn compile(f: &Formula) -> Program {
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut ops = Vec::new();
        // Iterative post-order: (node, children_done).
        let mut stack = vec![(f.clone(), false)];
        while let Some((g, done)) = stack.pop() {
            if slot.contains_key(&g.key()) {
                continue;
            }
            if !done {
                stack.push((g.clone(), true));
                for c in g.children() {
                    if !slot.contains_key(&c.key()) {
                        stack.push((c.clone(), false));
                    }
                }
                continue;
            }
            let s = |c: &Formula| slot[&c.key()];
            let op = match g.node() {
                Node::Var(i) => Op::Var(*i),
                Node::Zero => Op::Zero,
                Node::One => Op::One,
                Node::Star(a, b) => Op::Star(s(a), s(b)),
                Node::Impl(a, b) => Op::Impl(s(a), s(b)),
                Node::Neg(a) => Op::Neg(s(a)),
                Node::And(a, b) => Op::And(s(a), s(b)),
                Node::Or(a, b) => Op::Or(s(a), s(b)),
                Node::OPlus(a, b) => Op::OPlus(s(a), s(b)),
            };
            slot.insert(g.key(), ops.len());
            ops.push(op);
        }
        Program { ops }
    }

    /// Number of distinct subformulas.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Evaluates the formula; the root is the last instruction.
    pub fn run<I: Interpretation>(&self, interp: &I) -> I::Value {
        let mut vals: Vec<I::Value> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => interp.var(i),
                Op::Zero => interp.zero(),
                Op::One => interp.one(),
                Op::Star(a, b) => interp.star(&vals[a], &vals[b]),
                Op::Impl(a, b) => interp.implies(&vals[a], &vals[b]),
                Op::Neg(a) => interp.neg(&vals[a]),
                Op::And(a, b) => interp.and(&vals[a], &vals[b]),
                Op::Or(a, b) => interp.or(&vals[a], &vals[b]),
                Op::OPlus(a, b) => interp.oplus(&vals[a], &vals[b]),
            };
            vals.push(v);
        }
        vals.pop().expect("a compiled program has at least one instruction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::x;

    /// Counts nodes of the expanded tree, exercising the default desugaring.
    struct TreeSize;

    impl Interpretation for TreeSize {
        type Value = u64;
        fn var(&self, _: usize) -> u64 {
            1
        }
        fn zero(&self) -> u64 {
            1
        }
        fn one(&self) -> u64 {
            1
        }
        fn star(&self, a: &u64, b: &u64) -> u64 {
            a + b + 1
        }
        fn implies(&self, a: &u64, b: &u64) -> u64 {
            a + b + 1
        }
    }

    #[test]
    fn shared_subterms_are_compiled_once() {
        let mut f = x(0);
        for _ in 0..60 {
            f = Formula::star(f.clone(), f);
        }
        let p = Program::compile(&f);
        assert_eq!(p.len(), 61);
        assert_eq!(p.run(&TreeSize), (1u64 << 61) - 1);
    }

    #[test]
    fn defaults_follow_desugaring() {
        let neg = Program::compile(&Formula::neg(x(0)));
        assert_eq!(neg.run(&TreeSize), 3);
        let and = Program::compile(&Formula::and(x(0), x(1)));
        assert_eq!(and.run(&TreeSize), 5);
    }
}
