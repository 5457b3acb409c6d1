//! Finite algebras given by their `⋆` and `→` tables.

use serde::{Deserialize, Serialize};

use super::SpectraError;
use crate::formula::ChainBase;

/// Largest supported carrier; subsets are `u64` bitmasks.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices as a bitmask.
pub type ElemSet = u64;

pub fn members(s: ElemSet) -> Vec<usize> {
    (0..64).filter(|i| s >> i & 1 == 1).collect()
}

pub fn set_of(items: impl IntoIterator<Item = usize>) -> ElemSet {
    items.into_iter().fold(0, |s, i| s | 1 << i)
}

/// A finite algebra with commutative monoid `⋆`, residuum `→`, bottom `0`
/// and top `1`. The lattice operations come from the usual definitions
/// `a ∧ b = a ⋆ (a → b)` and `a ∨ b = ((a → b) → b) ∧ ((b → a) → a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    star: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    /// Builds the algebra and checks every invariant on all triples.
    pub fn new(
        names: Vec<String>,
        star: Vec<Vec<usize>>,
        imp: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<FiniteAlgebra, SpectraError> {
        let n = names.len();
        if n == 0 || n > MAX_ELEMENTS {
            return Err(SpectraError::TooLarge(n, MAX_ELEMENTS));
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
        if !square(&star) || !square(&imp) || zero >= n || one >= n {
            return Err(SpectraError::Invalid("tables must be n×n over the carrier".into()));
        }
        let mut a = FiniteAlgebra { names, star, imp, zero, one, meet: Vec::new(), join: Vec::new() };
        a.meet = (0..n).map(|x| (0..n).map(|y| a.star(x, a.implies(x, y))).collect()).collect();
        a.join = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let l = a.implies(a.implies(x, y), y);
                        let r = a.implies(a.implies(y, x), x);
                        a.meet[l][r]
                    })
                    .collect()
            })
            .collect();
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), SpectraError> {
        let n = self.len();
        let bad = |what: &str| Err(SpectraError::Invalid(what.to_string()));
        for a in 0..n {
            if self.star(a, self.one) != a {
                return bad("1 is not the unit of ⋆");
            }
            if !self.leq(self.zero, a) || !self.leq(a, self.one) {
                return bad("0 and 1 must be the bottom and top");
            }
            for b in 0..n {
                if self.star(a, b) != self.star(b, a) {
                    return bad("⋆ is not commutative");
                }
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return bad("the order a→b = 1 is not antisymmetric");
                }
                for c in 0..n {
                    if self.star(self.star(a, b), c) != self.star(a, self.star(b, c)) {
                        return bad("⋆ is not associative");
                    }
                    if self.leq(self.star(c, a), b) != self.leq(c, self.implies(a, b)) {
                        return bad("→ is not the residuum of ⋆");
                    }
                    if self.leq(a, b) && !self.leq(self.star(a, c), self.star(b, c)) {
                        return bad("⋆ is not monotone");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn star(&self, a: usize, b: usize) -> usize {
        self.star[a][b]
    }

    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.imp[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp[a][self.zero]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.imp[a][b] == self.one
    }

    pub fn all(&self) -> ElemSet {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// `(a → b) ∨ (b → a) = 1` everywhere.
    pub fn is_prelinear(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.join(self.implies(a, b), self.implies(b, a)) == self.one))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.star(a, a) == a).collect()
    }

    /// `{b : b ≥ a}`.
    pub fn up_set(&self, a: usize) -> ElemSet {
        set_of((0..self.len()).filter(|&b| self.leq(a, b)))
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            names: self.names.clone(),
            star: self.star.clone(),
            implies: self.imp.clone(),
            zero: self.zero,
            one: self.one,
        }
    }
}

/// Exchange format: carrier names and the two tables as index matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub names: Vec<String>,
    pub star: Vec<Vec<usize>>,
    pub implies: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<FiniteAlgebra, SpectraError> {
        FiniteAlgebra::new(self.names.clone(), self.star.clone(), self.implies.clone(), self.zero, self.one)
    }
}

fn chain_name(k: usize, m: usize) -> String {
    let g = num::integer::gcd(k, m).max(1);
    match (k, m) {
        (0, _) => "0".into(),
        _ if k == m => "1".into(),
        _ => format!("{}/{}", k / g, m / g),
    }
}

/// `{0, 1/m, ..., 1}` with Łukasiewicz or Gödel connectives.
pub fn finite_chain(m: usize, base: ChainBase) -> Result<FiniteAlgebra, SpectraError> {
    if m == 0 || m + 1 > MAX_ELEMENTS {
        return Err(SpectraError::TooLarge(m + 1, MAX_ELEMENTS));
    }
    let n = m + 1;
    let (star, imp): (Vec<Vec<usize>>, Vec<Vec<usize>>) = match base {
        ChainBase::Lukasiewicz => (
            (0..n).map(|a| (0..n).map(|b| (a + b).saturating_sub(m)).collect()).collect(),
            (0..n).map(|a| (0..n).map(|b| (m + b - a).min(m)).collect()).collect(),
        ),
        ChainBase::Godel => (
            (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect(),
            (0..n).map(|a| (0..n).map(|b| if a <= b { m } else { b }).collect()).collect(),
        ),
    };
    FiniteAlgebra::new((0..n).map(|k| chain_name(k, m)).collect(), star, imp, 0, m)
}

/// The two-element Boolean algebra.
pub fn two() -> FiniteAlgebra {
    finite_chain(1, ChainBase::Lukasiewicz).expect("small")
}

/// Componentwise product; element `(a, b)` has index `a · |B| + b`.
pub fn product_algebra(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, SpectraError> {
    let (na, nb) = (a.len(), b.len());
    if na * nb > MAX_ELEMENTS {
        return Err(SpectraError::TooLarge(na * nb, MAX_ELEMENTS));
    }
    let idx = |x: usize, y: usize| x * nb + y;
    let table = |f: &dyn Fn(usize, usize) -> usize, g: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..na * nb)
            .map(|p| (0..na * nb).map(|q| idx(f(p / nb, q / nb), g(p % nb, q % nb))).collect())
            .collect()
    };
    let star = table(&|x, y| a.star(x, y), &|x, y| b.star(x, y));
    let imp = table(&|x, y| a.implies(x, y), &|x, y| b.implies(x, y));
    let names = (0..na * nb).map(|p| format!("({},{})", a.name(p / nb), b.name(p % nb))).collect();
    FiniteAlgebra::new(names, star, imp, idx(a.zero(), b.zero()), idx(a.one(), b.one()))
}

/// The subalgebra generated by `gens ∪ {0, 1}`, with the inclusion map.
pub fn subalgebra_generated(a: &FiniteAlgebra, gens: &[usize]) -> Result<(FiniteAlgebra, Vec<usize>), SpectraError> {
    if let Some(&g) = gens.iter().find(|&&g| g >= a.len()) {
        return Err(SpectraError::Invalid(format!("element {g} is not in the carrier")));
    }
    let mut set = set_of(gens.iter().copied()) | 1 << a.zero() | 1 << a.one();
    loop {
        let cur = members(set);
        let mut next = set;
        for &x in &cur {
            for &y in &cur {
                next |= 1 << a.star(x, y) | 1 << a.implies(x, y);
            }
        }
        if next == set {
            break;
        }
        set = next;
    }
    let elems = members(set);
    let pos = |x: usize| elems.iter().position(|&e| e == x).expect("closed");
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        elems.iter().map(|&x| elems.iter().map(|&y| pos(f(x, y))).collect()).collect()
    };
    let sub = FiniteAlgebra::new(
        elems.iter().map(|&x| a.name(x).to_string()).collect(),
        table(&|x, y| a.star(x, y)),
        table(&|x, y| a.implies(x, y)),
        pos(a.zero()),
        pos(a.one()),
    )?;
    Ok((sub, elems))
}

/// The free Boolean algebra on `n` generators as `{0,1}`-valued functions on
/// `2^n` valuations. Element `e` is the table whose bit `j` is the value at
/// valuation `j`; generator `x_i` is named `x{i}`.
pub fn free_boolean(n: usize) -> Result<FiniteAlgebra, SpectraError> {
    let rows = 1usize << n;
    let size = 1usize.checked_shl(rows as u32).unwrap_or(usize::MAX);
    if n > 3 || size > MAX_ELEMENTS {
        return Err(SpectraError::TooLarge(size, MAX_ELEMENTS));
    }
    let full = size - 1;
    let gens: Vec<usize> = (0..n).map(|i| (0..rows).filter(|j| j >> i & 1 == 1).fold(0, |s, j| s | 1 << j)).collect();
    let names = (0..size)
        .map(|e| match gens.iter().position(|&g| g == e) {
            Some(i) => format!("x{i}"),
            None if e == 0 => "0".into(),
            None if e == full => "1".into(),
            None => format!("t{e:0w$b}", w = rows),
        })
        .collect();
    let star = (0..size).map(|a| (0..size).map(|b| a & b).collect()).collect();
    let imp = (0..size).map(|a| (0..size).map(|b| (!a | b) & full).collect()).collect();
    FiniteAlgebra::new(names, star, imp, 0, full)
}

/// A map between finite algebras preserving `⋆`, `→`, `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: FiniteAlgebra,
    pub target: FiniteAlgebra,
    pub table: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: &FiniteAlgebra, target: &FiniteAlgebra, table: Vec<usize>) -> Result<Homomorphism, SpectraError> {
        let fail = |why: String| Err(SpectraError::NotHomomorphism(why));
        if table.len() != source.len() || table.iter().any(|&t| t >= target.len()) {
            return fail("table size or range is wrong".into());
        }
        if table[source.zero()] != target.zero() || table[source.one()] != target.one() {
            return fail("constants are not preserved".into());
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if table[source.star(a, b)] != target.star(table[a], table[b]) {
                    return fail(format!("⋆ fails at ({}, {})", source.name(a), source.name(b)));
                }
                if table[source.implies(a, b)] != target.implies(table[a], table[b]) {
                    return fail(format!("→ fails at ({}, {})", source.name(a), source.name(b)));
                }
            }
        }
        Ok(Homomorphism { source: source.clone(), target: target.clone(), table })
    }

    pub fn identity(a: &FiniteAlgebra) -> Homomorphism {
        Homomorphism { source: a.clone(), target: a.clone(), table: (0..a.len()).collect() }
    }

    /// `a ↦ (a, a)` into `A × A`.
    pub fn diagonal(a: &FiniteAlgebra) -> Result<Homomorphism, SpectraError> {
        let sq = product_algebra(a, a)?;
        Homomorphism::new(a, &sq, (0..a.len()).map(|x| x * a.len() + x).collect())
    }

    /// Projection of `A × B` onto its `i`-th factor.
    pub fn projection(a: &FiniteAlgebra, b: &FiniteAlgebra, i: usize) -> Result<Homomorphism, SpectraError> {
        let p = product_algebra(a, b)?;
        let nb = b.len();
        let (target, table): (&FiniteAlgebra, Vec<usize>) =
            if i == 0 { (a, (0..p.len()).map(|x| x / nb).collect()) } else { (b, (0..p.len()).map(|x| x % nb).collect()) };
        Homomorphism::new(&p, target, table)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Homomorphism) -> Result<Homomorphism, SpectraError> {
        if first.target != self.source {
            return Err(SpectraError::NotHomomorphism("codomain and domain differ".into()));
        }
        Ok(Homomorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            table: first.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    /// Every homomorphism between two small algebras, by exhaustive search
    /// over maps fixing `0` and `1`.
    pub fn enumerate(source: &FiniteAlgebra, target: &FiniteAlgebra, cap: u64) -> Result<Vec<Homomorphism>, SpectraError> {
        let free: Vec<usize> = (0..source.len()).filter(|&x| x != source.zero() && x != source.one()).collect();
        let count = (target.len() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(SpectraError::TooLarge(count.min(usize::MAX as u128) as usize, cap as usize));
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut table = vec![0; source.len()];
            table[source.zero()] = target.zero();
            table[source.one()] = target.one();
            for (k, &x) in free.iter().enumerate() {
                table[x] = digits[k];
            }
            if let Ok(h) = Homomorphism::new(source, target, table) {
                out.push(h);
            }
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return Ok(out);
                }
                digits[k] += 1;
                if digits[k] < target.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }
}
