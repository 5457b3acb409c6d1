//! Deciding whether `r` follows from `Δ` by Modus Ponens over the
//! tautologies of a semantics: some `d_1 ⋆ ... ⋆ d_k` (from `Δ`, with
//! repetition) lies below `r`.

use crate::formula::semantics::RationalValuation;
use crate::formula::{tautology_check, Formula, Method, Program, Semantics};
use crate::pwl::{common_refinement, overlay_2d, PwlFunction};
use crate::rational::Point;

use super::DeductionError;

pub const DEFAULT_STAR_POWER_BOUND: usize = 64;

/// Valuation cap for enumerating a finite chain.
const POINT_CAP: u64 = 1 << 22;

/// `⋆` over `Δ[i]^e` for each `(i, e)` lies below `r` at every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub factors: Vec<(usize, usize)>,
}

impl Certificate {
    pub fn product(&self, delta: &[Formula]) -> Formula {
        let parts: Vec<Formula> = self.factors.iter().map(|&(i, e)| Formula::star_power(&delta[i], e)).collect();
        parts.into_iter().reduce(Formula::star).unwrap_or_else(Formula::one)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consequence {
    Yes(Certificate),
    /// A point where every member of `Δ` is 1 and `r` is not.
    No(Point),
    Unknown,
}

fn uniform(delta: &[Formula], e: usize) -> Certificate {
    Certificate { factors: (0..delta.len()).map(|i| (i, e)).collect() }
}

pub fn mp_consequence(
    delta: &[Formula],
    r: &Formula,
    sem: Semantics,
    star_power_bound: usize,
) -> Result<Consequence, DeductionError> {
    let n = delta.iter().chain(std::iter::once(r)).map(Formula::arity).max().unwrap_or(0);
    match sem {
        Semantics::FiniteChain { m, .. } => finite(delta, r, sem, m, n),
        Semantics::Lukasiewicz if n <= 2 => lukasiewicz(delta, r, n.max(1), star_power_bound),
        _ => Err(DeductionError::NoBackend(sem, n)),
    }
}

fn finite(delta: &[Formula], r: &Formula, sem: Semantics, m: u32, n: usize) -> Result<Consequence, DeductionError> {
    let count = (u128::from(m) + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > u128::from(POINT_CAP) {
        return Err(DeductionError::CapExceeded(count, POINT_CAP));
    }
    let carrier = sem.carrier().expect("finite chain");
    let progs: Vec<Program> = delta.iter().map(Program::compile).collect();
    let target = Program::compile(r);
    let one = crate::rational::int(1);
    let mut digits = vec![0usize; n];
    loop {
        let point: Point = digits.iter().map(|&d| carrier[d].clone()).collect();
        let v = RationalValuation { sem, point: &point };
        if progs.iter().all(|p| p.run(&v) == one) && target.run(&v) != one {
            return Ok(Consequence::No(point));
        }
        let mut k = 0;
        loop {
            if k == n {
                // On a chain with m+1 elements, d^m is 0 unless d = 1 under
                // Łukasiewicz; Gödel's ⋆ is idempotent.
                let e = match sem {
                    Semantics::FiniteChain { base: crate::formula::ChainBase::Godel, .. } => 1,
                    _ => m as usize,
                };
                return Ok(Consequence::Yes(uniform(delta, e)));
            }
            digits[k] += 1;
            if digits[k] <= m as usize {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Vertices of a common refinement of the given functions' complexes.
fn joint_vertices(fs: &[PwlFunction]) -> Result<Vec<Point>, DeductionError> {
    let malformed = |e: crate::pwl::PwlError| DeductionError::Malformed(e.to_string());
    let mut acc = fs[0].complex().clone();
    let mut points: Vec<Point> = acc.vertices().to_vec();
    for f in &fs[1..] {
        if f.dim() == 1 {
            acc = common_refinement(&acc, f.complex()).map_err(malformed)?;
            points = acc.vertices().to_vec();
        } else {
            for (poly, _, _) in overlay_2d(&acc, f.complex()) {
                points.extend(poly.iter().map(|v| v.to_point()));
            }
            points.extend(f.complex().vertices().iter().cloned());
        }
    }
    points.sort();
    points.dedup();
    Ok(points)
}

fn lukasiewicz(delta: &[Formula], r: &Formula, n: usize, bound: usize) -> Result<Consequence, DeductionError> {
    let malformed = |e: crate::pwl::PwlError| DeductionError::Malformed(e.to_string());
    let hyp = PwlFunction::from_formula(&Formula::and_all(delta.iter().cloned()), n).map_err(malformed)?;
    let goal = PwlFunction::from_formula(r, n).map_err(malformed)?;
    // Both are affine on every cell of the refinement, so {hyp = 1} meets
    // {goal < 1} iff it does so at a vertex.
    let one = crate::rational::int(1);
    for p in joint_vertices(&[hyp.clone(), goal.clone()])? {
        if hyp.eval(&p).map_err(malformed)? == one && goal.eval(&p).map_err(malformed)? != one {
            return Ok(Consequence::No(p));
        }
    }
    // Products only shrink as exponents grow, so powers of two suffice.
    let mut e = 1;
    while e <= bound.max(1) {
        let cert = uniform(delta, e);
        let claim = Formula::implies(cert.product(delta), r.clone());
        let v = tautology_check(&claim, Semantics::Lukasiewicz, Method::ExactPwl)
            .map_err(|err| DeductionError::Malformed(err.to_string()))?;
        if v.is_tautology() {
            return Ok(Consequence::Yes(cert));
        }
        if e == bound {
            break;
        }
        e = (e * 2).min(bound);
    }
    Ok(Consequence::Unknown)
}
