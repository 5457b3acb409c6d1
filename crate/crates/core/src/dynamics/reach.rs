//! Reachability between rational points and closure of finite grids.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::{DynamicsError, InducedMap};
use crate::formula::{Formula, Substitution};
use crate::pwl::{clamped_affine_formula, AffinePieceZ};
use crate::rational::{denominator, in_unit_cube, Point, Rational};

/// Coefficients `c` with `Σ c_i v_i = gcd(v)`.
fn bezout(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    for v in values {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    (g, coeffs)
}

/// Symmetric residue of `a` modulo `d`, in `(-d/2, d/2]`.
fn centered(a: &BigInt, d: &BigInt) -> BigInt {
    let r = a.mod_floor(d);
    if &r * 2 > *d {
        r - d
    } else {
        r
    }
}

/// A substitution `σ` with `S(p) = q`, provided `den(q)` divides `den(p)`.
///
/// With `d = den(p)` and `p_i = n_i / d`, Bézout gives an integer affine
/// `L` with `L(p) = 1/d`. Each component is then `T(L)` added to itself
/// `d·q_i` times, so it takes the value `q_i` at `p`.
pub fn reachability_substitution(p: &[Rational], q: &[Rational]) -> Result<Substitution, DynamicsError> {
    if p.len() != q.len() {
        return Err(DynamicsError::Arity { got: q.len(), want: p.len() });
    }
    if !in_unit_cube(p) || !in_unit_cube(q) {
        return Err(DynamicsError::OutsideCube);
    }
    let n = p.len();
    let d = denominator(p);
    let dq = denominator(q);
    if !d.is_multiple_of(&dq) {
        return Err(DynamicsError::NotDividing { den_p: d, den_q: dq });
    }
    let mut values: Vec<BigInt> = p.iter().map(|x| (x * Rational::from_integer(d.clone())).to_integer()).collect();
    values.push(d.clone());
    let (g, coeffs) = bezout(&values);
    debug_assert!(g.is_one());
    // Shrink the linear coefficients, then restore Σ a_i n_i + c·d = 1.
    let a: Vec<BigInt> = coeffs[..n].iter().map(|c| centered(c, &d)).collect();
    let dot: BigInt = a.iter().zip(&values).map(|(x, y)| x * y).sum();
    let c = (BigInt::one() - dot) / &d;
    let unit = clamped_affine_formula(&AffinePieceZ::new(a, c));
    let images = q
        .iter()
        .map(|qi| {
            let k = (qi * Rational::from_integer(d.clone())).to_integer();
            let k = k.to_usize().expect("numerator bounded by the denominator");
            let mut f = Formula::zero();
            for step in 0..k {
                f = if step == 0 { unit.clone() } else { Formula::oplus(f, unit.clone()) };
            }
            f
        })
        .collect();
    Ok(Substitution::new(images)?)
}

/// All points of `[0,1]^n` with every coordinate in `{0, 1/d, ..., 1}`.
pub fn full_rational_orbit(n: usize, d: u64, cap: u64) -> Result<Vec<Point>, DynamicsError> {
    if d == 0 {
        return Err(DynamicsError::Invalid("denominator must be positive".into()));
    }
    let count = (d as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(DynamicsError::CapExceeded(count, cap));
    }
    let axis: Vec<Rational> = (0..=d).map(|k| Rational::new(k.into(), d.into())).collect();
    let mut out: Vec<Point> = vec![Vec::new()];
    for _ in 0..n {
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
    Ok(out)
}

/// Whether every map sends the grid of denominator `d` into itself.
/// Returns the first escaping `(map index, point)` otherwise.
pub fn orbit_closure_check(
    points: &[Point],
    d: &BigInt,
    maps: &[InducedMap],
) -> Result<Option<(usize, Point)>, DynamicsError> {
    for (i, s) in maps.iter().enumerate() {
        for p in points {
            let img = s.eval(p)?;
            if !d.is_multiple_of(&denominator(&img)) || img.iter().any(|x| x.is_negative()) {
                return Ok(Some((i, p.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::rational::{int, rat};

    #[test]
    fn one_third_to_two_thirds() {
        let s = reachability_substitution(&[rat(1, 3)], &[rat(2, 3)]).unwrap();
        assert_eq!(s.images()[0], parse_formula("x0 (+) x0").unwrap());
        let m = InducedMap::formulas_only(&s);
        assert_eq!(m.eval(&[rat(1, 3)]).unwrap(), vec![rat(2, 3)]);
    }

    #[test]
    fn reaches_in_several_dimensions() {
        let cases = [
            (vec![rat(2, 5), rat(3, 10)], vec![rat(7, 10), rat(1, 2)]),
            (vec![rat(1, 6), rat(1, 4), rat(5, 12)], vec![rat(11, 12), int(0), rat(1, 3)]),
            (vec![int(1), int(0)], vec![int(0), int(1)]),
            (vec![rat(3, 7)], vec![rat(3, 7)]),
        ];
        for (p, q) in cases {
            let s = reachability_substitution(&p, &q).unwrap();
            assert_eq!(InducedMap::formulas_only(&s).eval(&p).unwrap(), q);
        }
    }

    #[test]
    fn refuses_non_dividing_denominators() {
        let err = reachability_substitution(&[rat(1, 4)], &[rat(1, 3)]).unwrap_err();
        assert!(matches!(err, DynamicsError::NotDividing { .. }));
    }

    #[test]
    fn grid_is_closed_under_substitutions() {
        let grid = full_rational_orbit(2, 6, 1000).unwrap();
        assert_eq!(grid.len(), 49);
        let maps = [
            InducedMap::formulas_only(&super::super::tent_product(2)),
            InducedMap::formulas_only(
                &Substitution::new(vec![parse_formula("x0 * x1 -> !x0").unwrap(), parse_formula("x1 (+) x1").unwrap()])
                    .unwrap(),
            ),
        ];
        assert_eq!(orbit_closure_check(&grid, &BigInt::from(6), &maps).unwrap(), None);
        assert!(matches!(full_rational_orbit(3, 99, 1000), Err(DynamicsError::CapExceeded(..))));
    }
}
