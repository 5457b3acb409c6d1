//! Homeomorphisms of the cube, one-sided differentials, and the rotation
//! of three interior points of the square.

use num::{BigInt, One, Signed, Zero};

use super::{DynamicsError, PwlMap};
use crate::formula::Substitution;
use crate::pwl::synthesis::lattice_formula;
use crate::pwl::{affine_from_simplex_pair, CellComplex, PwlFunction, V2};
use crate::rational::{in_unit_interval, rat, Point, Rational};

/// Invertibility and measure data for a piecewise-affine map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomeoReport {
    pub dets: Vec<BigInt>,
    /// The determinant shared by all cells, if they agree.
    pub common_det: Option<BigInt>,
    /// Image cells tile the cube with no overlaps or gaps.
    pub image_tiles: bool,
    /// `Σ |det A_j| · measure(cell_j)`.
    pub image_measure: Rational,
    pub invertible: bool,
    pub measure_preserving: bool,
}

pub fn validate_homeomorphism(s: &PwlMap) -> Result<HomeoReport, DynamicsError> {
    let images = s.vertex_images()?;
    let cx = &s.complex;
    let dets: Vec<BigInt> = s.maps.iter().map(|m| m.det()).collect();
    let common_det = match dets.split_first() {
        Some((first, rest)) if rest.iter().all(|d| d == first) => Some(first.clone()),
        _ => None,
    };
    let image_measure = (0..cx.cells().len())
        .map(|c| Rational::from_integer(dets[c].abs()) * cx.cell_measure(c))
        .sum::<Rational>();
    let nondegenerate = dets.iter().all(|d| !d.is_zero());
    let image_tiles = nondegenerate
        && if cx.dim() == 1 {
            intervals_tile(images.iter().map(|p| p[0].clone()).collect(), cx.cells())
        } else {
            CellComplex::new(2, images, cx.cells().to_vec()).is_ok()
        };
    let invertible = image_tiles;
    let unimodular = common_det.as_ref().is_some_and(|d| d.abs().is_one());
    Ok(HomeoReport {
        dets,
        common_det,
        image_tiles,
        image_measure,
        invertible,
        measure_preserving: invertible && unimodular,
    })
}

fn intervals_tile(x: Vec<Rational>, cells: &[Vec<usize>]) -> bool {
    let mut iv: Vec<(Rational, Rational)> = cells
        .iter()
        .map(|c| {
            let (a, b) = (x[c[0]].clone(), x[c[1]].clone());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    iv.sort();
    let mut at = Rational::zero();
    for (lo, hi) in iv {
        if lo != at || hi <= lo {
            return false;
        }
        at = hi;
    }
    at.is_one()
}

/// How a one-variable McNaughton function acts on `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Flip,
    OtherBijection,
    NotBijective,
}

pub fn classify_1d(f: &PwlFunction) -> Result<MapClass, DynamicsError> {
    if f.dim() != 1 {
        return Err(DynamicsError::NoPwlForm(f.dim()));
    }
    let slopes: Vec<&BigInt> = f.pieces().iter().map(|p| &p.a[0]).collect();
    let monotone = slopes.iter().all(|s| s.is_positive()) || slopes.iter().all(|s| s.is_negative());
    let ends = (f.eval(&[Rational::zero()])?, f.eval(&[Rational::one()])?);
    if !monotone || ends.0 == ends.1 || !(ends.0.is_zero() || ends.0.is_one()) || !(ends.1.is_zero() || ends.1.is_one())
    {
        return Ok(MapClass::NotBijective);
    }
    let id = PwlFunction::projection(1, 0);
    Ok(if f.equal(&id)? {
        MapClass::Identity
    } else if f.equal(&id.neg())? {
        MapClass::Flip
    } else {
        MapClass::OtherBijection
    })
}

/// `p_0, p_1, p_2` near `(0,0)` and `p'_0, p'_1, p'_2` their mirror images
/// through the center.
pub fn rotation_points() -> [Point; 6] {
    [
        vec![rat(1, 4), rat(1, 4)],
        vec![rat(1, 2), rat(1, 4)],
        vec![rat(1, 4), rat(1, 2)],
        vec![rat(3, 4), rat(3, 4)],
        vec![rat(1, 2), rat(3, 4)],
        vec![rat(3, 4), rat(1, 2)],
    ]
}

/// Corners `0..4` (counterclockwise from the origin), then the six
/// rotation points. Each half of the anti-diagonal holds seven triangles.
pub fn rotation_triangulation() -> CellComplex {
    let mut v: Vec<Point> = vec![
        vec![rat(0, 1), rat(0, 1)],
        vec![rat(1, 1), rat(0, 1)],
        vec![rat(1, 1), rat(1, 1)],
        vec![rat(0, 1), rat(1, 1)],
    ];
    v.extend(rotation_points());
    let (c00, c10, c11, c01) = (0, 1, 2, 3);
    let (p0, p1, p2, q0, q1, q2) = (4, 5, 6, 7, 8, 9);
    let cells = vec![
        vec![c00, c10, p0],
        vec![c10, p1, p0],
        vec![p0, p1, p2],
        vec![c00, p0, p2],
        vec![c00, p2, c01],
        vec![c01, p2, p1],
        vec![c10, c01, p1],
        vec![c11, c01, q0],
        vec![c01, q1, q0],
        vec![q0, q1, q2],
        vec![c11, q0, q2],
        vec![c11, q2, c10],
        vec![c10, q2, q1],
        vec![c01, c10, q1],
    ];
    CellComplex::new(2, v, cells).expect("a valid triangulation")
}

/// The map affine on each cell of `cx` that sends vertex `v` to
/// `targets[v]`, with a formula for each component. Fails when some cell's
/// map has non-integer coefficients.
pub fn homeomorphism_from_vertex_map(
    cx: CellComplex,
    targets: &[Point],
) -> Result<(Substitution, PwlMap), DynamicsError> {
    if targets.len() != cx.vertices().len() {
        return Err(DynamicsError::Invalid(format!(
            "{} vertex images for {} vertices",
            targets.len(),
            cx.vertices().len()
        )));
    }
    let mut maps = Vec::new();
    for (i, cell) in cx.cells().iter().enumerate() {
        let src: Vec<Point> = cell.iter().map(|&v| cx.vertices()[v].clone()).collect();
        let dst: Vec<Point> = cell.iter().map(|&v| targets[v].clone()).collect();
        let m = affine_from_simplex_pair(&src, &dst)?;
        maps.push(m.to_integer().ok_or(DynamicsError::NotIntegral { cell: i })?);
    }
    let dim = cx.dim();
    let map = PwlMap::new(cx, maps)?;
    let images = (0..dim)
        .map(|i| map.component(i).map(|f| lattice_formula(&f)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Substitution::new(images)?, map))
}

/// Fixes the corners and cycles `p_0 → p_1 → p_2 → p_0` and likewise the
/// mirrored points. Returns the substitution and its piecewise form.
pub fn rotation_homeomorphism() -> Result<(Substitution, PwlMap), DynamicsError> {
    let cx = rotation_triangulation();
    let target = |v: usize| -> usize {
        match v {
            4 | 5 => v + 1,
            6 => 4,
            7 | 8 => v + 1,
            9 => 7,
            _ => v,
        }
    };
    let targets: Vec<Point> = (0..cx.vertices().len()).map(|v| cx.vertices()[target(v)].clone()).collect();
    homeomorphism_from_vertex_map(cx, &targets)
}

/// One-sided directional derivative `lim_{h→0+} (S(p + h v) - S(p)) / h`.
///
/// The affine map of the lowest-index cell whose interior the ray enters is
/// applied to `v`; a ray running along an edge falls back to a cell whose
/// closure it stays in.
pub fn tsujii_differential(s: &PwlMap, p: &[Rational], v: &[Rational]) -> Result<Point, DynamicsError> {
    let d = s.dim();
    if p.len() != d || v.len() != d {
        return Err(DynamicsError::Arity { got: p.len().max(v.len()), want: d });
    }
    if !p.iter().all(in_unit_interval) {
        return Err(DynamicsError::OutsideCube);
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(vec![Rational::zero(); d]);
    }
    let leaves = p.iter().zip(v).any(|(x, dx)| (x.is_zero() && dx.is_negative()) || (x.is_one() && dx.is_positive()));
    if leaves {
        return Err(DynamicsError::RayExits);
    }
    let cx = &s.complex;
    let find = |strict: bool| (0..cx.cells().len()).find(|&c| ray_in_cell(cx, c, p, v, strict));
    let cell = find(true).or_else(|| find(false)).ok_or(DynamicsError::OutsideCube)?;
    Ok(s.maps[cell].linear(v))
}

/// Whether `p + h v` lies in cell `c` for all small `h > 0`; with `strict`,
/// in its interior.
fn ray_in_cell(cx: &CellComplex, c: usize, p: &[Rational], v: &[Rational], strict: bool) -> bool {
    let ok = |value: Rational, slope: Rational| {
        value.is_positive() || (value.is_zero() && if strict { slope.is_positive() } else { !slope.is_negative() })
    };
    let cell = &cx.cells()[c];
    if cx.dim() == 1 {
        let (lo, hi) = (&cx.vertices()[cell[0]][0], &cx.vertices()[cell[1]][0]);
        return ok(&p[0] - lo, v[0].clone()) && ok(hi - &p[0], -v[0].clone());
    }
    let t = cx.cell_v2(c);
    let x = V2::from_point(p);
    (0..3).all(|k| {
        let (a, b) = (&t[k], &t[(k + 1) % 3]);
        let (ex, ey) = (&b.x - &a.x, &b.y - &a.y);
        let value = &ex * (&x.y - &a.y) - &ey * (&x.x - &a.x);
        let slope = &ex * &v[1] - &ey * &v[0];
        ok(value, slope)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{tent_substitution, InducedMap};
    use crate::pwl::AffineMapZ;
    use crate::rational::int;

    #[test]
    fn rotation_cycles_the_points() {
        let (sigma, map) = rotation_homeomorphism().unwrap();
        let pts = rotation_points();
        let s = InducedMap::formulas_only(&sigma);
        for (i, j) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            assert_eq!(map.eval(&pts[i]).unwrap(), pts[j]);
            assert_eq!(s.eval(&pts[i]).unwrap(), pts[j]);
        }
        for corner in [[0, 0], [1, 0], [1, 1], [0, 1]] {
            let c = vec![int(corner[0]), int(corner[1])];
            assert_eq!(s.eval(&c).unwrap(), c);
        }
        assert!(map.maps.contains(&AffineMapZ::from_i64(&[&[-1, -5], &[1, 4]], &[2, -1])));
        let r = validate_homeomorphism(&map).unwrap();
        assert!(r.invertible && r.measure_preserving);
        assert_eq!(r.common_det, Some(BigInt::one()));
        assert_eq!(r.image_measure, int(1));
    }

    #[test]
    fn rotation_formula_agrees_with_its_piecewise_form() {
        let (sigma, map) = rotation_homeomorphism().unwrap();
        let induced = InducedMap::new(&sigma).unwrap();
        for i in 0..2 {
            let a = map.component(i).unwrap();
            let b = induced.pwl().unwrap().component(i).unwrap();
            assert!(a.equal(&b).unwrap());
        }
    }

    #[test]
    fn tent_is_not_a_homeomorphism() {
        let t = InducedMap::new(&tent_substitution()).unwrap();
        let r = validate_homeomorphism(t.pwl().unwrap()).unwrap();
        assert!(!r.invertible);
        assert_eq!(r.common_det, None);
        assert_eq!(r.image_measure, int(2));
    }

    #[test]
    fn tent_differentials() {
        let t = InducedMap::new(&tent_substitution()).unwrap();
        let m = t.pwl().unwrap();
        let half = vec![rat(1, 2)];
        assert_eq!(tsujii_differential(m, &half, &[int(1)]).unwrap(), vec![int(-2)]);
        assert_eq!(tsujii_differential(m, &half, &[int(-1)]).unwrap(), vec![int(-2)]);
        assert_eq!(tsujii_differential(m, &[rat(1, 4)], &[int(3)]).unwrap(), vec![int(6)]);
        assert_eq!(tsujii_differential(m, &half, &[int(0)]).unwrap(), vec![int(0)]);
        assert_eq!(tsujii_differential(m, &[int(1)], &[int(1)]), Err(DynamicsError::RayExits));
    }

    #[test]
    fn one_dimensional_classes() {
        let id = PwlFunction::projection(1, 0);
        assert_eq!(classify_1d(&id).unwrap(), MapClass::Identity);
        assert_eq!(classify_1d(&id.neg()).unwrap(), MapClass::Flip);
        let t = PwlFunction::from_formula(&crate::formula::tent(0), 1).unwrap();
        assert_eq!(classify_1d(&t).unwrap(), MapClass::NotBijective);
    }
}
