//! Filters, prime filters and quotients of finite algebras.

use serde::Serialize;

use super::algebra::{members, set_of, ElemSet, FiniteAlgebra};
use super::SpectraError;

/// A filter as a set of element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter(pub ElemSet);

impl Filter {
    pub fn members(&self) -> Vec<usize> {
        members(self.0)
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Whether the set contains 1 and is closed under Modus Ponens.
pub fn is_filter(a: &FiniteAlgebra, s: ElemSet) -> bool {
    let has = |x: usize| s >> x & 1 == 1;
    has(a.one())
        && members(s).iter().all(|&x| (0..a.len()).all(|y| !has(a.implies(x, y)) || has(y)))
}

/// The smallest filter containing `d`: close `d ∪ {1}` under `⋆`, then
/// take the up-set.
pub fn filter_generated(a: &FiniteAlgebra, d: &[usize]) -> Result<Filter, SpectraError> {
    if let Some(&x) = d.iter().find(|&&x| x >= a.len()) {
        return Err(SpectraError::Invalid(format!("element {x} is not in the carrier")));
    }
    let mut prods = set_of(d.iter().copied()) | 1 << a.one();
    loop {
        let cur = members(prods);
        let mut next = prods;
        for &x in &cur {
            for &y in &cur {
                next |= 1 << a.star(x, y);
            }
        }
        if next == prods {
            break;
        }
        prods = next;
    }
    Ok(Filter(members(prods).into_iter().fold(0, |s, x| s | a.up_set(x))))
}

/// All filters, the prime ones and the maximal ones, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterLattice {
    pub all: Vec<Filter>,
    pub prime: Vec<Filter>,
    pub maximal: Vec<Filter>,
}

/// In a finite algebra every filter is `↑e` for an idempotent `e`: the
/// product of all its members is its least element and is idempotent.
pub fn enumerate_filters(a: &FiniteAlgebra) -> FilterLattice {
    let mut all: Vec<Filter> = a.idempotents().into_iter().map(|e| Filter(a.up_set(e))).collect();
    all.sort();
    all.dedup();
    let whole = a.all();
    let prime: Vec<Filter> = all.iter().copied().filter(|f| is_prime_by_join(a, *f)).collect();
    let maximal = all
        .iter()
        .copied()
        .filter(|f| f.0 != whole && !all.iter().any(|g| g.0 != whole && g.0 != f.0 && f.is_subset(g)))
        .collect();
    FilterLattice { all, prime, maximal }
}

/// Proper, and `a ∨ b ∈ p` implies `a ∈ p` or `b ∈ p`.
pub fn is_prime_by_join(a: &FiniteAlgebra, p: Filter) -> bool {
    p.0 != a.all()
        && (0..a.len()).all(|x| {
            (0..a.len()).all(|y| !p.contains(a.join(x, y)) || p.contains(x) || p.contains(y))
        })
}

/// `A/f` under `a ~ b` iff `a → b, b → a ∈ f`, with the quotient map.
pub fn quotient(a: &FiniteAlgebra, f: Filter) -> Result<(FiniteAlgebra, Vec<usize>), SpectraError> {
    if !is_filter(a, f.0) {
        return Err(SpectraError::Invalid("not a filter".into()));
    }
    let equiv = |x: usize, y: usize| f.contains(a.implies(x, y)) && f.contains(a.implies(y, x));
    let mut class = vec![usize::MAX; a.len()];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..a.len() {
        if let Some(k) = reps.iter().position(|&r| equiv(r, x)) {
            class[x] = k;
        } else {
            class[x] = reps.len();
            reps.push(x);
        }
    }
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        reps.iter().map(|&x| reps.iter().map(|&y| class[op(x, y)]).collect()).collect()
    };
    let names = reps
        .iter()
        .map(|&r| {
            let cls: Vec<&str> = (0..a.len()).filter(|&x| class[x] == class[r]).map(|x| a.name(x)).collect();
            if cls.len() == 1 {
                cls[0].to_string()
            } else {
                format!("[{}]", cls.join("|"))
            }
        })
        .collect();
    let q = FiniteAlgebra::new(
        names,
        table(&|x, y| a.star(x, y)),
        table(&|x, y| a.implies(x, y)),
        class[a.zero()],
        class[a.one()],
    )?;
    Ok((q, class))
}

/// The conditions of the prime-filter characterization for one filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeConditions {
    pub filter: Vec<usize>,
    /// Not the intersection of two strictly larger filters.
    pub meet_irreducible: bool,
    pub quotient_is_chain: bool,
    pub filters_above_form_chain: bool,
    pub filters_above_are_prime: bool,
    pub join_condition: bool,
    /// The kernel of `A → A/f` is `f` itself.
    pub kernel_matches: bool,
}

impl PrimeConditions {
    pub fn consistent(&self) -> bool {
        let v = [
            self.meet_irreducible,
            self.quotient_is_chain,
            self.filters_above_form_chain,
            self.filters_above_are_prime,
            self.join_condition,
        ];
        v.iter().all(|&b| b == v[0]) && self.kernel_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFilterReport {
    pub filters: Vec<PrimeConditions>,
    /// Quotient by `{1}` has as many elements as the algebra.
    pub trivial_quotient_is_identity: bool,
    pub discrepancies: usize,
}

/// Checks the equivalent characterizations of prime filters on every
/// proper filter of `a`.
pub fn prime_filter_check(a: &FiniteAlgebra) -> Result<PrimeFilterReport, SpectraError> {
    let lat = enumerate_filters(a);
    let whole = a.all();
    let is_meet_irreducible = |p: Filter| {
        p.0 != whole
            && !lat.all.iter().any(|f| {
                f.0 != p.0 && lat.all.iter().any(|g| g.0 != p.0 && f.0 & g.0 == p.0)
            })
    };
    let mut filters = Vec::new();
    for &f in lat.all.iter().filter(|f| f.0 != whole) {
        let (q, class) = quotient(a, f)?;
        let above: Vec<Filter> = lat.all.iter().copied().filter(|g| f.is_subset(g)).collect();
        let chain = above.iter().all(|g| above.iter().all(|h| g.is_subset(h) || h.is_subset(g)));
        let kernel = set_of((0..a.len()).filter(|&x| class[x] == q.one()));
        filters.push(PrimeConditions {
            filter: f.members(),
            meet_irreducible: is_meet_irreducible(f),
            quotient_is_chain: q.is_chain(),
            filters_above_form_chain: chain,
            filters_above_are_prime: above.iter().filter(|g| g.0 != whole).all(|&g| is_meet_irreducible(g)),
            join_condition: is_prime_by_join(a, f),
            kernel_matches: kernel == f.0,
        });
    }
    let unit = Filter(1 << a.one());
    let trivial_quotient_is_identity = quotient(a, unit)?.0.len() == a.len();
    let discrepancies = filters.iter().filter(|c| !c.consistent()).count() + usize::from(!trivial_quotient_is_identity);
    Ok(PrimeFilterReport { filters, trivial_quotient_is_identity, discrepancies })
}
