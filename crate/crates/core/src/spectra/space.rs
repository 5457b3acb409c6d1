//! Prime spectra with the hull-kernel topology, dual maps, and the
//! correspondence between filters and open sets.

use serde::Serialize;

use super::algebra::{members, FiniteAlgebra, Homomorphism};
use super::filters::{enumerate_filters, filter_generated, is_prime_by_join, Filter};
use super::SpectraError;

/// A set of spectrum points as a bitmask over point indices.
pub type PointSet = u64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecSpace {
    /// Prime filters in increasing bitmask order.
    pub points: Vec<Filter>,
    /// `order[i][j]` iff `points[i] ⊆ points[j]`.
    pub order: Vec<Vec<bool>>,
    /// `O_a = {p : a ∉ p}` for every element `a`.
    pub subbasis: Vec<PointSet>,
}

impl SpecSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).fold(0, |s, i| s | 1 << i)
    }

    /// `O_D`, the points not containing all of `D`.
    pub fn open_of(&self, d: &[usize]) -> PointSet {
        d.iter().fold(0, |s, &a| s | self.subbasis[a])
    }

    /// Every open set: unions of subbasic opens, which are closed under
    /// intersection. Sorted.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = vec![0];
        for &o in &self.subbasis {
            let extra: Vec<PointSet> = out.iter().map(|&u| u | o).collect();
            out.extend(extra);
            out.sort_unstable();
            out.dedup();
        }
        out
    }

    /// Closure in the hull-kernel topology: complement of the largest open
    /// set missing `s`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        let missing = self.subbasis.iter().filter(|&&o| o & s == 0).fold(0, |u, &o| u | o);
        self.all() & !missing
    }

    /// Up-sets of points are chains.
    pub fn is_forest(&self) -> bool {
        let n = self.len();
        (0..n).all(|p| {
            let up: Vec<usize> = (0..n).filter(|&q| self.order[p][q]).collect();
            up.iter().all(|&a| up.iter().all(|&b| self.order[a][b] || self.order[b][a]))
        })
    }

    /// Number of order relations between distinct points.
    pub fn strict_relations(&self) -> usize {
        (0..self.len()).map(|p| (0..self.len()).filter(|&q| p != q && self.order[p][q]).count()).sum()
    }
}

pub fn spec_space(a: &FiniteAlgebra) -> Result<SpecSpace, SpectraError> {
    let points = enumerate_filters(a).prime;
    let n = points.len();
    if n > 64 {
        return Err(SpectraError::TooLarge(n, 64));
    }
    let order = (0..n).map(|i| (0..n).map(|j| points[i].is_subset(&points[j])).collect()).collect();
    let subbasis = (0..a.len())
        .map(|x| (0..n).filter(|&i| !points[i].contains(x)).fold(0, |s, i| s | 1 << i))
        .collect();
    let space = SpecSpace { points, order, subbasis };
    for i in 0..n {
        let up = (0..n).filter(|&j| space.order[i][j]).fold(0, |s, j| s | 1 << j);
        if space.closure(1 << i) != up {
            return Err(SpectraError::Invalid(format!("closure of point {i} is not its up-set")));
        }
    }
    Ok(space)
}

/// `φ*(p) = φ^{-1}[p]`, as indices into the source spectrum.
pub fn dual_map(phi: &Homomorphism) -> Result<Vec<usize>, SpectraError> {
    let src = spec_space(&phi.source)?;
    let dst = spec_space(&phi.target)?;
    let mut out = Vec::with_capacity(dst.len());
    for p in &dst.points {
        let pre = Filter((0..phi.source.len()).filter(|&x| p.contains(phi.table[x])).fold(0, |s, x| s | 1 << x));
        if !is_prime_by_join(&phi.source, pre) {
            return Err(SpectraError::Invalid("preimage of a prime filter is not prime".into()));
        }
        let idx = src.points.iter().position(|q| *q == pre).ok_or_else(|| SpectraError::Invalid("preimage missing".into()))?;
        out.push(idx);
    }
    // Continuity on the subbasis: (φ*)^{-1}[O_a] = O_{φ(a)}.
    for a in 0..phi.source.len() {
        let pulled = (0..dst.len()).filter(|&i| src.subbasis[a] >> out[i] & 1 == 1).fold(0, |s, i| s | 1 << i);
        if pulled != dst.subbasis[phi.table[a]] {
            return Err(SpectraError::Invalid(format!("dual map is not continuous at O_{}", phi.source.name(a))));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub points: usize,
    pub filters: usize,
    pub opens: usize,
    /// `f ↦ O_f` is a bijection from filters to open sets.
    pub bijective: bool,
    /// `f ⊆ g` iff `O_f ⊆ O_g`.
    pub order_isomorphic: bool,
    /// `⋂ F_D` is the filter generated by `D`, for every tested `D`.
    pub left_composite_is_generation: bool,
    /// `F_{⋂P}` is the topological closure of `P`, for every `P`.
    pub right_composite_is_closure: bool,
    /// `O_a ∩ O_b = O_{a∨b}` and `O_a ∪ O_b = O_{a∧b}`.
    pub lattice_identities: bool,
    pub subsets_tested: usize,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.bijective
            && self.order_isomorphic
            && self.left_composite_is_generation
            && self.right_composite_is_closure
            && self.lattice_identities
            && self.filters == self.opens
    }
}

/// Every subset `D` is tried when the carrier has at most this many elements;
/// beyond it, every set of at most two elements.
const EXHAUSTIVE_SUBSETS: usize = 16;

pub fn duality_check(a: &FiniteAlgebra) -> Result<DualityReport, SpectraError> {
    let space = spec_space(a)?;
    let filters = enumerate_filters(a).all;
    let opens = space.opens();
    let o_of = |f: &Filter| space.open_of(&f.members());
    let images: Vec<PointSet> = filters.iter().map(o_of).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted.len() == filters.len() && sorted == opens;
    let order_isomorphic = filters.iter().zip(&images).all(|(f, of)| {
        filters.iter().zip(&images).all(|(g, og)| f.is_subset(g) == (of & !og == 0))
    });

    // ⋂ F_D, with ⋂ ∅ = A.
    let meet_of = |ps: PointSet| (0..space.len()).filter(|i| ps >> i & 1 == 1).fold(a.all(), |s, i| s & space.points[i].0);
    let closed_of = |d: &[usize]| space.all() & !space.open_of(d);
    let subsets: Vec<Vec<usize>> = if a.len() <= EXHAUSTIVE_SUBSETS {
        (0..1u64 << a.len()).map(members).collect()
    } else {
        let n = a.len();
        let mut v = vec![vec![]];
        v.extend((0..n).map(|x| vec![x]));
        v.extend((0..n).flat_map(|x| (x + 1..n).map(move |y| vec![x, y])));
        v
    };
    let mut left = true;
    for d in &subsets {
        if meet_of(closed_of(d)) != filter_generated(a, d)?.0 {
            left = false;
            break;
        }
    }
    let right = (0..1u64 << space.len()).all(|ps| {
        let f = meet_of(ps);
        let hull = (0..space.len()).filter(|&i| f & !space.points[i].0 == 0).fold(0, |s, i| s | 1 << i);
        hull == space.closure(ps)
    });
    let n = a.len();
    let lattice_identities = (0..n).all(|x| {
        (0..n).all(|y| {
            space.subbasis[x] & space.subbasis[y] == space.subbasis[a.join(x, y)]
                && space.subbasis[x] | space.subbasis[y] == space.subbasis[a.meet(x, y)]
        })
    });
    Ok(DualityReport {
        points: space.len(),
        filters: filters.len(),
        opens: opens.len(),
        bijective,
        order_isomorphic,
        left_composite_is_generation: left,
        right_composite_is_closure: right,
        lattice_identities,
        subsets_tested: subsets.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ChainBase;
    use crate::spectra::algebra::{finite_chain, free_boolean, product_algebra, two};

    #[test]
    fn small_spaces() {
        let fb = spec_space(&free_boolean(2).unwrap()).unwrap();
        assert_eq!(fb.len(), 4);
        assert_eq!(fb.strict_relations(), 0);
        let l3 = finite_chain(3, ChainBase::Lukasiewicz).unwrap();
        assert_eq!(spec_space(&l3).unwrap().len(), 1);
        let mixed = spec_space(&product_algebra(&two(), &l3).unwrap()).unwrap();
        assert_eq!(mixed.len(), 2);
        assert_eq!(mixed.strict_relations(), 0);
        let g3 = spec_space(&finite_chain(3, ChainBase::Godel).unwrap()).unwrap();
        assert_eq!(g3.len(), 3);
        assert!(g3.is_forest());
    }

    #[test]
    fn dual_maps() {
        let b = two();
        assert_eq!(dual_map(&Homomorphism::identity(&b)).unwrap(), vec![0]);
        assert_eq!(dual_map(&Homomorphism::diagonal(&b).unwrap()).unwrap(), vec![0, 0]);
    }

    #[test]
    fn duality_counts() {
        let b4 = duality_check(&product_algebra(&two(), &two()).unwrap()).unwrap();
        assert!(b4.holds());
        assert_eq!((b4.opens, b4.filters), (4, 4));
        let l3 = duality_check(&finite_chain(3, ChainBase::Lukasiewicz).unwrap()).unwrap();
        assert_eq!((l3.opens, l3.filters), (2, 2));
        let fb = duality_check(&free_boolean(2).unwrap()).unwrap();
        assert!(fb.holds());
        assert_eq!((fb.opens, fb.filters), (16, 16));
    }
}
