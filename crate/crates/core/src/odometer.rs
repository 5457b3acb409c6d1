//! Boolean truth tables, the odometer substitution and deductions from a
//! single non-tautology.
//!
//! Valuations of `x_0, ..., x_{n-1}` are indexed least significant bit
//! first: `x_i` is bit `i` of the index. Under this encoding the odometer
//! `x_0 ↦ ¬x_0`, `x_i ↦ x_i △ (x_0 ∧ ... ∧ x_{i-1})` acts on `{0,1}^n` as
//! `p ↦ p + 1 mod 2^n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deduction::{Justification, Line, Proof};
use crate::formula::{Formula, Interpretation, Program, Substitution};

/// Upper limit on `n` for tables (2^20 valuations).
pub const MAX_TABLE_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdometerError {
    #[error("formula uses x{index}, beyond {n} variables")]
    Arity { index: usize, n: usize },
    #[error("{0} variables exceed the table limit {MAX_TABLE_VARS}")]
    TooManyVariables(usize),
    #[error("n must be at least 1")]
    Empty,
    #[error("the formula is a Boolean tautology")]
    Tautology,
    #[error("induced map is not p + 1 at valuation {0}")]
    NotTranslation(usize),
    #[error("malformed table: {0}")]
    Malformed(String),
}

/// Values of a formula at all `2^n` Boolean valuations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TruthTable {
    pub n: usize,
    pub bits: Vec<bool>,
}

/// Bit-parallel Boolean evaluation: one `u64` word holds 64 valuations.
struct Columns {
    n: usize,
    words: usize,
}

impl Columns {
    fn new(n: usize) -> Columns {
        Columns { n, words: (1usize << n).div_ceil(64) }
    }

    fn mask(&self, mut v: Vec<u64>) -> Vec<u64> {
        let len = 1usize << self.n;
        if len < 64 {
            v[0] &= (1u64 << len) - 1;
        }
        v
    }
}

impl Interpretation for Columns {
    type Value = Vec<u64>;

    fn var(&self, i: usize) -> Vec<u64> {
        if i < 6 {
            // Within a word the pattern repeats with period 2^(i+1).
            let mut pattern = 0u64;
            for b in 0..64 {
                if (b >> i) & 1 == 1 {
                    pattern |= 1 << b;
                }
            }
            self.mask(vec![pattern; self.words])
        } else {
            (0..self.words).map(|w| if (w >> (i - 6)) & 1 == 1 { u64::MAX } else { 0 }).collect()
        }
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }
    fn one(&self) -> Vec<u64> {
        self.mask(vec![u64::MAX; self.words])
    }
    fn star(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x & y).collect()
    }
    fn implies(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.mask(a.iter().zip(b).map(|(x, y)| !x | y).collect())
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        self.mask(a.iter().map(|x| !x).collect())
    }
    fn and(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.star(a, b)
    }
    fn or(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x | y).collect()
    }
    fn oplus(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.or(a, b)
    }
}

fn check_arity(f: &Formula, n: usize) -> Result<(), OdometerError> {
    if n > MAX_TABLE_VARS {
        return Err(OdometerError::TooManyVariables(n));
    }
    match f.variables().iter().next_back() {
        Some(&index) if index >= n => Err(OdometerError::Arity { index, n }),
        _ => Ok(()),
    }
}

fn columns(f: &Formula, n: usize) -> Result<Vec<u64>, OdometerError> {
    check_arity(f, n)?;
    Ok(Program::compile(f).run(&Columns::new(n)))
}

/// Exact Boolean table of `f` over `n` variables.
pub fn truth_table(f: &Formula, n: usize) -> Result<TruthTable, OdometerError> {
    let cols = columns(f, n)?;
    let bits = (0..1usize << n).map(|j| (cols[j / 64] >> (j % 64)) & 1 == 1).collect();
    Ok(TruthTable { n, bits })
}

/// Whether `f` takes value 1 at every Boolean valuation of `n` variables.
pub fn is_boolean_tautology(f: &Formula, n: usize) -> Result<bool, OdometerError> {
    let cols = columns(f, n)?;
    Ok(cols == Columns::new(n).one())
}

impl TruthTable {
    pub fn constant(n: usize, value: bool) -> TruthTable {
        TruthTable { n, bits: vec![value; 1 << n] }
    }

    pub fn is_constant(&self, value: bool) -> bool {
        self.bits.iter().all(|&b| b == value)
    }

    /// First valuation where the table is 0.
    pub fn first_zero(&self) -> Option<usize> {
        self.bits.iter().position(|&b| !b)
    }

    /// Table of `σ(f)` given the table of `f` and the permutation induced by `σ`.
    pub fn pull_back(&self, perm: &BoolPermutation) -> TruthTable {
        TruthTable { n: self.n, bits: perm.map.iter().map(|&q| self.bits[q as usize]).collect() }
    }

    /// Hexadecimal digits of `Σ bits[j]·2^j`, most significant first.
    pub fn to_hex(&self) -> String {
        let digits = self.bits.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let v = (0..4).fold(0u32, |acc, b| {
                    let j = 4 * d + b;
                    acc | (u32::from(self.bits.get(j).copied().unwrap_or(false)) << b)
                });
                char::from_digit(v, 16).expect("a nibble")
            })
            .collect()
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<TruthTable, OdometerError> {
        if n > MAX_TABLE_VARS {
            return Err(OdometerError::TooManyVariables(n));
        }
        let len = 1usize << n;
        if hex.len() != len.div_ceil(4) {
            return Err(OdometerError::Malformed(format!("expected {} hex digits", len.div_ceil(4))));
        }
        let mut bits = vec![false; len];
        for (d, c) in hex.chars().rev().enumerate() {
            let v = c.to_digit(16).ok_or_else(|| OdometerError::Malformed(format!("bad digit `{c}`")))?;
            for b in 0..4 {
                let j = 4 * d + b;
                let set = (v >> b) & 1 == 1;
                if j < len {
                    bits[j] = set;
                } else if set {
                    return Err(OdometerError::Malformed("bits beyond 2^n are set".into()));
                }
            }
        }
        Ok(TruthTable { n, bits })
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:{}", self.n, self.to_hex())
    }
}

/// A permutation of the `2^n` Boolean valuations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoolPermutation {
    pub n: usize,
    pub map: Vec<u32>,
}

impl BoolPermutation {
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map.iter().all(|&q| !std::mem::replace(&mut seen[q as usize], true))
    }

    /// Cycle lengths, in order of their least element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.map[p] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn is_single_cycle(&self) -> bool {
        self.cycle_lengths().len() == 1
    }
}

/// `σ(x_0) = ¬x_0`, `σ(x_i) = x_i △ (x_0 ∧ ... ∧ x_{i-1})`.
pub fn odometer_substitution(n: usize) -> Result<Substitution, OdometerError> {
    if n == 0 {
        return Err(OdometerError::Empty);
    }
    let images = (0..n)
        .map(|i| {
            if i == 0 {
                Formula::neg(Formula::var(0))
            } else {
                Formula::sym_diff(Formula::var(i), Formula::and_all((0..i).map(Formula::var)))
            }
        })
        .collect();
    Ok(Substitution::new(images).expect("images use earlier variables"))
}

/// The permutation of `{0,1}^n` induced by a substitution of arity `n`.
pub fn induced_permutation(sigma: &Substitution) -> Result<BoolPermutation, OdometerError> {
    let n = sigma.arity();
    if n > MAX_TABLE_VARS {
        return Err(OdometerError::TooManyVariables(n));
    }
    let cols = sigma.images().iter().map(|s| columns(s, n)).collect::<Result<Vec<_>, _>>()?;
    let map = (0..1usize << n)
        .map(|p| {
            cols.iter()
                .enumerate()
                .fold(0u32, |acc, (i, c)| acc | ((((c[p / 64] >> (p % 64)) & 1) as u32) << i))
        })
        .collect();
    Ok(BoolPermutation { n, map })
}

/// The odometer's action on valuations, checked to be `p ↦ p + 1 mod 2^n`.
pub fn odometer_induced_permutation(n: usize) -> Result<BoolPermutation, OdometerError> {
    let perm = induced_permutation(&odometer_substitution(n)?)?;
    let modulus = 1u64 << n;
    for (p, &q) in perm.map.iter().enumerate() {
        if u64::from(q) != (p as u64 + 1) % modulus {
            return Err(OdometerError::NotTranslation(p));
        }
    }
    Ok(perm)
}

/// Proves `target` from the hypothesis `r` with Boolean tautologies as
/// axioms, Modus Ponens, and the odometer substitution as the only
/// substitution.
///
/// The lines `σ^k(r)` for `k < 2^n` are conjoined one at a time through the
/// tautologies `a → (b → (a ∧ b))`. Every valuation lies on the single
/// odometer cycle, which meets a zero of `r`, so the conjunction `c` is
/// constantly 0 and `c → target` is a tautology.
pub fn derive_from_nontautology(r: &Formula, target: &Formula, n: usize) -> Result<Proof, OdometerError> {
    check_arity(r, n)?;
    check_arity(target, n)?;
    if is_boolean_tautology(r, n)? {
        return Err(OdometerError::Tautology);
    }
    let sigma = odometer_substitution(n)?;
    let steps = 1usize << n;
    let mut lines = vec![Line { formula: r.clone(), just: Justification::Hypothesis(0) }];
    let mut orbit_lines = vec![0];
    for k in 1..steps {
        let prev = orbit_lines[k - 1];
        let next = sigma.apply(&lines[prev].formula).expect("variables below n");
        lines.push(Line { formula: next, just: Justification::Subst(prev, sigma.clone()) });
        orbit_lines.push(lines.len() - 1);
    }
    let mut acc_line = 0;
    for &s_line in &orbit_lines[1..] {
        let a = lines[acc_line].formula.clone();
        let b = lines[s_line].formula.clone();
        let conj = Formula::and(a.clone(), b.clone());
        let axiom = Formula::implies(a, Formula::implies(b.clone(), conj.clone()));
        lines.push(Line { formula: axiom, just: Justification::Axiom });
        let ax = lines.len() - 1;
        lines.push(Line { formula: Formula::implies(b, conj.clone()), just: Justification::Mp(acc_line, ax) });
        let half = lines.len() - 1;
        lines.push(Line { formula: conj, just: Justification::Mp(s_line, half) });
        acc_line = lines.len() - 1;
    }
    let c = lines[acc_line].formula.clone();
    debug_assert!(truth_table(&c, n).map(|t| t.is_constant(false)).unwrap_or(false));
    lines.push(Line { formula: Formula::implies(c, target.clone()), just: Justification::Axiom });
    let ax = lines.len() - 1;
    lines.push(Line { formula: target.clone(), just: Justification::Mp(acc_line, ax) });
    Ok(Proof { hypotheses: vec![r.clone()], lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::{check_proof, AxiomSource, CheckVerdict};
    use crate::formula::parse_formula;

    fn table(s: &str, n: usize) -> Vec<bool> {
        truth_table(&parse_formula(s).unwrap(), n).unwrap().bits
    }

    #[test]
    fn small_tables() {
        assert_eq!(table("x0 & x1", 2), vec![false, false, false, true]);
        assert_eq!(table("x0 | !x0", 1), vec![true, true]);
        let sd = Formula::sym_diff(Formula::var(0), Formula::var(1));
        assert_eq!(truth_table(&sd, 2).unwrap().bits, vec![false, true, true, false]);
        assert!(truth_table(&Formula::var(3), 2).is_err());
    }

    #[test]
    fn wide_tables_cross_word_boundaries() {
        for n in [6, 7, 9] {
            let t = truth_table(&Formula::var(n - 1), n).unwrap();
            for (j, b) in t.bits.iter().enumerate() {
                assert_eq!(*b, (j >> (n - 1)) & 1 == 1);
            }
            assert!(is_boolean_tautology(&parse_formula("x5 -> x5").unwrap(), n).unwrap());
        }
    }

    #[test]
    fn hex_round_trip() {
        let t = truth_table(&parse_formula("x0 & x1").unwrap(), 2).unwrap();
        assert_eq!(t.to_hex(), "8");
        assert_eq!(t.to_string(), "n=2:8");
        let u = truth_table(&parse_formula("x0 -> x2 * x3").unwrap(), 4).unwrap();
        assert_eq!(TruthTable::from_hex(4, &u.to_hex()).unwrap(), u);
        assert!(TruthTable::from_hex(1, "4").is_err());
    }

    #[test]
    fn odometer_images() {
        let s = odometer_substitution(3).unwrap();
        assert_eq!(s.images()[0], parse_formula("!x0").unwrap());
        assert_eq!(s.images()[1], Formula::sym_diff(Formula::var(1), Formula::var(0)));
        let and01 = Formula::and(Formula::var(0), Formula::var(1));
        assert_eq!(s.images()[2], Formula::sym_diff(Formula::var(2), and01));
    }

    #[test]
    fn odometer_is_a_single_cycle() {
        assert_eq!(odometer_induced_permutation(1).unwrap().map, vec![1, 0]);
        assert_eq!(odometer_induced_permutation(2).unwrap().map, vec![1, 2, 3, 0]);
        let p = odometer_induced_permutation(10).unwrap();
        assert_eq!(p.cycle_lengths(), vec![1024]);
    }

    #[test]
    fn table_action_is_substitution() {
        let n = 3;
        let sigma = odometer_substitution(n).unwrap();
        let perm = induced_permutation(&sigma).unwrap();
        for s in ["x0 * x2", "x1 -> !x2", "x0 | x1 & x2", "0"] {
            let f = parse_formula(s).unwrap();
            let lhs = truth_table(&sigma.apply(&f).unwrap(), n).unwrap();
            assert_eq!(lhs, truth_table(&f, n).unwrap().pull_back(&perm));
        }
    }

    #[test]
    fn derivation_from_x0() {
        let p = derive_from_nontautology(&Formula::var(0), &Formula::zero(), 1).unwrap();
        assert_eq!(p.lines.len(), 7);
        assert_eq!(p.lines[1].formula, parse_formula("!x0").unwrap());
        assert_eq!(check_proof(&p, &AxiomSource::boolean_oracle()), CheckVerdict::Valid);
        assert_eq!(derive_from_nontautology(&parse_formula("x0 | !x0").unwrap(), &Formula::zero(), 1),
            Err(OdometerError::Tautology));
    }

    #[test]
    fn derivation_two_variables() {
        let r = parse_formula("x0 & x1").unwrap();
        let target = parse_formula("x1 -> x0").unwrap();
        let p = derive_from_nontautology(&r, &target, 2).unwrap();
        assert!(p.lines.len() <= 4 * 4 + 2);
        assert_eq!(p.lines.last().unwrap().formula, target);
        assert_eq!(check_proof(&p, &AxiomSource::boolean_oracle()), CheckVerdict::Valid);
    }
}
