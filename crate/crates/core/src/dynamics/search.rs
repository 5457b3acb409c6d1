//! Numerical experiments on induced maps: box hitting, visit statistics and
//! averaged truth values along iterated substitutions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DynamicsError, InducedMap};
use crate::formula::{Formula, Substitution};
use crate::pwl::PwlFunction;
use crate::rational::{Point, Rational, RationalBox};

/// `R^k(Q^h(witness))` lies in the interior of the target box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxHit {
    pub h: usize,
    pub k: usize,
    pub witness: Point,
    pub image: Point,
}

/// Grid points `j / den` strictly inside the box, in lexicographic order.
fn interior_grid(bx: &RationalBox, den: u64) -> Vec<Point> {
    let d = Rational::from_integer(den.into());
    let axes: Vec<Vec<Rational>> = (0..bx.dim())
        .map(|i| {
            (0..=den)
                .map(|j| Rational::from_integer(j.into()) / &d)
                .filter(|x| bx.lo[i] < *x && *x < bx.hi[i])
                .collect()
        })
        .collect();
    let mut out: Vec<Point> = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Looks for `h ≤ h_max`, `k ≤ k_max` and a grid point `a` inside `A` with
/// `R^k(Q^h(a))` inside `B`. Smaller `h` is tried first. A prime `grid_den`
/// keeps the tent-like maps from collapsing grid points onto `0`.
#[allow(clippy::too_many_arguments)]
pub fn box_hitting_search(
    q: &InducedMap,
    r: &InducedMap,
    a: &RationalBox,
    b: &RationalBox,
    h_max: usize,
    k_max: usize,
    grid_den: u64,
) -> Result<Option<BoxHit>, DynamicsError> {
    let n = q.arity();
    if r.arity() != n || a.dim() != n || b.dim() != n {
        return Err(DynamicsError::Arity { got: a.dim(), want: n });
    }
    let starts = interior_grid(a, grid_den.max(1));
    let mut current = starts.clone();
    for h in 0..=h_max {
        for (witness, x) in starts.iter().zip(&current) {
            let mut y = x.clone();
            for k in 0..=k_max {
                if b.contains_interior(&y) {
                    return Ok(Some(BoxHit { h, k, witness: witness.clone(), image: y }));
                }
                if k < k_max {
                    y = r.eval_unchecked(&y);
                }
            }
        }
        if h < h_max {
            current = current.iter().map(|x| q.eval_unchecked(x)).collect();
        }
    }
    Ok(None)
}

/// Visit frequencies of a floating-point orbit over a grid of boxes.
#[derive(Clone, Debug, PartialEq)]
pub struct StatsReport {
    pub boxes_per_axis: usize,
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// Lebesgue measure of each box.
    pub box_volume: f64,
    /// `max_j |frequency_j - volume_j|`.
    pub max_discrepancy: f64,
}

fn box_index(x: &[f64], per_axis: usize) -> usize {
    x.iter().fold(0, |acc, &c| {
        let j = ((c * per_axis as f64).floor() as isize).clamp(0, per_axis as isize - 1) as usize;
        acc * per_axis + j
    })
}

/// Iterates `S` in `f64` and records which box each iterate visits.
///
/// Doubling-type maps lose one mantissa bit per step and a plain float
/// orbit collapses onto a fixed point after about 50 steps, so each
/// iterate is perturbed by a uniform `±jitter` drawn from a seeded
/// generator and clamped back into the cube.
pub fn empirical_statistics(
    s: &InducedMap,
    start: &[f64],
    iterations: usize,
    per_axis: usize,
    jitter: f64,
    seed: u64,
) -> Result<StatsReport, DynamicsError> {
    let n = s.arity();
    if start.len() != n {
        return Err(DynamicsError::Arity { got: start.len(), want: n });
    }
    if start.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(DynamicsError::OutsideCube);
    }
    if per_axis == 0 || iterations == 0 {
        return Err(DynamicsError::Invalid("need at least one box and one iteration".into()));
    }
    let boxes = per_axis.checked_pow(n as u32).ok_or_else(|| DynamicsError::Invalid("too many boxes".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; boxes];
    let mut x = start.to_vec();
    for _ in 0..iterations {
        x = s.eval_f64(&x);
        if jitter > 0.0 {
            for c in x.iter_mut() {
                *c = (*c + rng.gen_range(-jitter..=jitter)).clamp(0.0, 1.0);
            }
        }
        counts[box_index(&x, per_axis)] += 1;
    }
    let box_volume = (per_axis as f64).powi(-(n as i32));
    let frequencies: Vec<f64> = counts.iter().map(|&c| c as f64 / iterations as f64).collect();
    let max_discrepancy = frequencies.iter().map(|f| (f - box_volume).abs()).fold(0.0, f64::max);
    Ok(StatsReport { boxes_per_axis: per_axis, counts, frequencies, box_volume, max_discrepancy })
}

/// Exact averages `∫_μ σ^j(r) / vol(μ)` for `j = 0..=k`, with the
/// Lebesgue average of `r` over the whole cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageReport {
    pub values: Vec<Rational>,
    pub lebesgue: Rational,
}

pub fn average_truth_value(
    r: &Formula,
    sigma: &Substitution,
    k: usize,
    mu: &RationalBox,
    piece_cap: usize,
) -> Result<AverageReport, DynamicsError> {
    let n = sigma.arity();
    if !(1..=2).contains(&n) {
        return Err(DynamicsError::NoPwlForm(n));
    }
    if mu.dim() != n {
        return Err(DynamicsError::Arity { got: mu.dim(), want: n });
    }
    if mu.is_degenerate() {
        return Err(DynamicsError::Invalid("the box has zero volume".into()));
    }
    let vol = mu.volume();
    let mut current = r.clone();
    let mut values = Vec::with_capacity(k + 1);
    let mut lebesgue = None;
    for j in 0..=k {
        if j > 0 {
            current = sigma.apply(&current)?;
        }
        let f = PwlFunction::from_formula(&current, n)?;
        if f.pieces().len() > piece_cap {
            return Err(DynamicsError::TooManyPieces(f.pieces().len(), piece_cap));
        }
        if j == 0 {
            lebesgue = Some(f.integral());
        }
        values.push(f.integral_over(mu)?.value / &vol);
    }
    Ok(AverageReport { values, lebesgue: lebesgue.expect("j = 0 runs") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{tent_on, tent_substitution};
    use crate::rational::rat;

    #[test]
    fn identity_hits_immediately() {
        let id = InducedMap::formulas_only(&Substitution::identity(2));
        let u = RationalBox::unit(2);
        let hit = box_hitting_search(&id, &id, &u, &u, 3, 3, 7).unwrap().unwrap();
        assert_eq!((hit.h, hit.k), (0, 0));
        assert_eq!(hit.witness, vec![rat(1, 7), rat(1, 7)]);
    }

    #[test]
    fn tent_reaches_the_far_end() {
        let t = InducedMap::formulas_only(&tent_substitution());
        let id = InducedMap::formulas_only(&Substitution::identity(1));
        let a = RationalBox::parse("0..1/8").unwrap();
        let b = RationalBox::parse("7/8..1").unwrap();
        let hit = box_hitting_search(&t, &id, &a, &b, 6, 0, 101).unwrap().unwrap();
        assert!(hit.h <= 4 && hit.k == 0);
        assert!(b.contains_interior(&hit.image));
        // The identity never leaves A.
        assert_eq!(box_hitting_search(&id, &id, &a, &b, 5, 5, 101).unwrap(), None);
    }

    #[test]
    fn product_of_tents_hits_in_two_steps() {
        let q = InducedMap::formulas_only(&tent_on(2, 0));
        let r = InducedMap::formulas_only(&tent_on(2, 1));
        let a = RationalBox::parse("0..1/4,0..1/4").unwrap();
        let b = RationalBox::parse("1/2..1,1/2..1").unwrap();
        let hit = box_hitting_search(&q, &r, &a, &b, 8, 8, 31).unwrap().unwrap();
        assert!(hit.h >= 1 && hit.k >= 1);
        let mut y = hit.witness.clone();
        for _ in 0..hit.h {
            y = q.eval(&y).unwrap();
        }
        for _ in 0..hit.k {
            y = r.eval(&y).unwrap();
        }
        assert_eq!(y, hit.image);
    }

    #[test]
    fn identity_statistics_stay_put() {
        let id = InducedMap::formulas_only(&Substitution::identity(1));
        let rep = empirical_statistics(&id, &[0.35], 1000, 10, 1e-12, 1).unwrap();
        assert_eq!(rep.counts[3], 1000);
        assert!((rep.max_discrepancy - 0.9).abs() < 1e-12);
    }

    #[test]
    fn tent_statistics_equidistribute() {
        let t = InducedMap::formulas_only(&tent_substitution());
        let rep = empirical_statistics(&t, &[0.2345], 200_000, 10, 1e-12, 7).unwrap();
        assert!(rep.max_discrepancy < 0.01, "{rep:?}");
    }

    #[test]
    fn averages_along_the_tent() {
        let mu = RationalBox::parse("0..1/4").unwrap();
        let rep = average_truth_value(&Formula::var(0), &tent_substitution(), 3, &mu, 1000).unwrap();
        assert_eq!(rep.values, vec![rat(1, 8), rat(1, 4), rat(1, 2), rat(1, 2)]);
        assert_eq!(rep.lebesgue, rat(1, 2));
        let err = average_truth_value(&Formula::var(0), &tent_substitution(), 8, &mu, 16).unwrap_err();
        assert!(matches!(err, DynamicsError::TooManyPieces(..)));
    }
}
