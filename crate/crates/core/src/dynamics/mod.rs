//! Substitutions as self-maps of the cube `[0,1]^n`.
//!
//! A substitution `σ: x_i ↦ s_i` induces `S(p) = (s_0(p), ..., s_{n-1}(p))`
//! under Łukasiewicz semantics. For `n ≤ 2` the map is also kept in exact
//! piecewise-affine form, one integer affine map per cell.

mod homeo;
mod reach;
mod search;

use std::collections::HashMap;

use num::BigInt;
use thiserror::Error;

pub use homeo::{
    classify_1d, homeomorphism_from_vertex_map, rotation_homeomorphism, rotation_triangulation, tsujii_differential,
    validate_homeomorphism, rotation_points, HomeoReport, MapClass,
};
pub use reach::{full_rational_orbit, orbit_closure_check, reachability_substitution};
pub use search::{
    average_truth_value, box_hitting_search, empirical_statistics, AverageReport, BoxHit,
    StatsReport,
};

use crate::formula::semantics::RationalValuation;
use crate::formula::{tent, EvalError, Formula, Program, Semantics, Substitution, SubstitutionError};
use crate::pwl::{overlay_2d, AffineMapZ, CellComplex, Mesh, PwlError, PwlFunction};
use crate::rational::{denominator, in_unit_cube, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Pwl(#[from] PwlError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("point has {got} coordinates, map has arity {want}")]
    Arity { got: usize, want: usize },
    #[error("point is outside the unit cube")]
    OutsideCube,
    #[error("den(q) = {den_q} does not divide den(p) = {den_p}")]
    NotDividing { den_p: BigInt, den_q: BigInt },
    #[error("{0} points exceed the cap {1}")]
    CapExceeded(u128, u64),
    #[error("no exact piecewise form for arity {0} (only 1 and 2)")]
    NoPwlForm(usize),
    #[error("the ray from the point leaves the cube immediately")]
    RayExits,
    #[error("cell {cell} has a non-integral affine map")]
    NotIntegral { cell: usize },
    #[error("piece count {0} exceeds the limit {1}")]
    TooManyPieces(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

/// Piecewise-affine self-map of `[0,1]^d`: one integer affine map per top cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlMap {
    pub complex: CellComplex,
    pub maps: Vec<AffineMapZ>,
}

impl PwlMap {
    pub fn new(complex: CellComplex, maps: Vec<AffineMapZ>) -> Result<PwlMap, DynamicsError> {
        let m = PwlMap { complex, maps };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Continuity at shared vertices and images inside the cube.
    pub fn validate(&self) -> Result<(), DynamicsError> {
        self.complex.validate()?;
        if self.maps.len() != self.complex.cells().len() {
            return Err(DynamicsError::Invalid("one affine map per cell is required".into()));
        }
        self.vertex_images().map(|_| ())
    }

    /// Image of every vertex, checked to be the same from all incident cells.
    pub fn vertex_images(&self) -> Result<Vec<Point>, DynamicsError> {
        let mut img: Vec<Option<Point>> = vec![None; self.complex.vertices().len()];
        for (c, m) in self.complex.cells().iter().zip(&self.maps) {
            for &v in c {
                let q = m.apply(&self.complex.vertices()[v]);
                if !in_unit_cube(&q) {
                    return Err(DynamicsError::Invalid(format!("vertex {v} is mapped outside the cube")));
                }
                match &img[v] {
                    Some(old) if *old != q => {
                        return Err(DynamicsError::Invalid(format!("discontinuity at vertex {v}")))
                    }
                    Some(_) => {}
                    None => img[v] = Some(q),
                }
            }
        }
        Ok(img.into_iter().map(|q| q.unwrap_or_default()).collect())
    }

    pub fn eval(&self, p: &[Rational]) -> Result<Point, DynamicsError> {
        if p.len() != self.dim() {
            return Err(DynamicsError::Arity { got: p.len(), want: self.dim() });
        }
        let c = self.complex.locate(p).ok_or(DynamicsError::OutsideCube)?;
        Ok(self.maps[c].apply(p))
    }

    /// Joins component functions on their common refinement.
    pub fn from_components(fs: &[PwlFunction]) -> Result<PwlMap, DynamicsError> {
        match fs {
            [f] if f.dim() == 1 => {
                let maps = f
                    .pieces()
                    .iter()
                    .map(|p| AffineMapZ { a: vec![p.a.clone()], b: vec![p.b.clone()] })
                    .collect();
                Ok(PwlMap { complex: f.complex().clone(), maps })
            }
            [f, g] if f.dim() == 2 && g.dim() == 2 => {
                let mut table: Vec<(usize, usize)> = Vec::new();
                let mut index: HashMap<(usize, usize), usize> = HashMap::new();
                let mut faces = Vec::new();
                for (poly, i, j) in overlay_2d(f.complex(), g.complex()) {
                    // Tags identify the pair of affine pieces, not the pair of cells.
                    let pk = (
                        f.pieces().iter().position(|p| *p == f.pieces()[i]).expect("present"),
                        g.pieces().iter().position(|p| *p == g.pieces()[j]).expect("present"),
                    );
                    let tag = *index.entry(pk).or_insert_with(|| {
                        table.push(pk);
                        table.len() - 1
                    });
                    faces.push((poly, tag));
                }
                let mut mesh = Mesh::from_faces(&faces);
                mesh.simplify();
                let (complex, tags) = mesh.into_complex();
                let maps = tags
                    .into_iter()
                    .map(|t| {
                        let (i, j) = table[t];
                        let (p, q) = (&f.pieces()[i], &g.pieces()[j]);
                        AffineMapZ { a: vec![p.a.clone(), q.a.clone()], b: vec![p.b.clone(), q.b.clone()] }
                    })
                    .collect();
                Ok(PwlMap { complex, maps })
            }
            _ => Err(DynamicsError::NoPwlForm(fs.len())),
        }
    }

    /// Component `i` as a McNaughton function on the same complex.
    pub fn component(&self, i: usize) -> Result<PwlFunction, DynamicsError> {
        let pieces = self
            .maps
            .iter()
            .map(|m| crate::pwl::AffinePieceZ { a: m.a[i].clone(), b: m.b[i].clone() })
            .collect();
        Ok(PwlFunction::new(self.complex.clone(), pieces)?)
    }
}

/// The self-map of the cube induced by a substitution.
#[derive(Clone, Debug)]
pub struct InducedMap {
    sigma: Substitution,
    programs: Vec<Program>,
    pwl: Option<PwlMap>,
}

impl InducedMap {
    pub fn new(sigma: &Substitution) -> Result<InducedMap, DynamicsError> {
        let n = sigma.arity();
        let pwl = if (1..=2).contains(&n) {
            let fs = sigma
                .images()
                .iter()
                .map(|s| PwlFunction::from_formula(s, n))
                .collect::<Result<Vec<_>, _>>()?;
            Some(PwlMap::from_components(&fs)?)
        } else {
            None
        };
        Ok(Self::with_pwl(sigma, pwl))
    }

    /// Formula-backed evaluation only, with no piecewise form.
    pub fn formulas_only(sigma: &Substitution) -> InducedMap {
        Self::with_pwl(sigma, None)
    }

    fn with_pwl(sigma: &Substitution, pwl: Option<PwlMap>) -> InducedMap {
        InducedMap {
            sigma: sigma.clone(),
            programs: sigma.images().iter().map(Program::compile).collect(),
            pwl,
        }
    }

    pub fn arity(&self) -> usize {
        self.sigma.arity()
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sigma
    }

    pub fn components(&self) -> &[Formula] {
        self.sigma.images()
    }

    pub fn pwl(&self) -> Option<&PwlMap> {
        self.pwl.as_ref()
    }

    /// Exact value `S(p)` by evaluating the component formulas.
    pub fn eval(&self, p: &[Rational]) -> Result<Point, DynamicsError> {
        if p.len() != self.arity() {
            return Err(DynamicsError::Arity { got: p.len(), want: self.arity() });
        }
        if !in_unit_cube(p) {
            return Err(DynamicsError::OutsideCube);
        }
        Ok(self.eval_unchecked(p))
    }

    pub(crate) fn eval_unchecked(&self, p: &[Rational]) -> Point {
        let v = RationalValuation { sem: Semantics::Lukasiewicz, point: p };
        self.programs.iter().map(|prog| prog.run(&v)).collect()
    }

    pub(crate) fn eval_f64(&self, p: &[f64]) -> Vec<f64> {
        let v = crate::formula::semantics::FloatLukasiewicz { point: p };
        self.programs.iter().map(|prog| prog.run(&v)).collect()
    }
}

/// How an orbit computation ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    CycleEntered { preperiod: usize, period: usize },
    Truncated { max_steps: usize },
}

/// `points[k+1] = S(points[k])`; on a cycle the last point repeats
/// `points[preperiod]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub start: Point,
    pub points: Vec<Point>,
    pub status: OrbitStatus,
    pub denominators: Vec<BigInt>,
}

/// Iterates `S` from `p` with exact cycle detection.
pub fn orbit(s: &InducedMap, p: &[Rational], max_steps: usize) -> Result<Orbit, DynamicsError> {
    let mut seen: HashMap<Point, usize> = HashMap::new();
    let mut points = vec![p.to_vec()];
    seen.insert(p.to_vec(), 0);
    let mut x = s.eval(p)?;
    let mut status = OrbitStatus::Truncated { max_steps };
    for step in 1..=max_steps {
        points.push(x.clone());
        if let Some(&first) = seen.get(&x) {
            status = OrbitStatus::CycleEntered { preperiod: first, period: step - first };
            break;
        }
        seen.insert(x.clone(), step);
        if step < max_steps {
            x = s.eval_unchecked(&x);
        }
    }
    let denominators = points.iter().map(|q| denominator(q)).collect();
    Ok(Orbit { start: p.to_vec(), points, status, denominators })
}

/// `x0 ↦ (x0 ∧ ¬x0) ⊕ (x0 ∧ ¬x0)`.
pub fn tent_substitution() -> Substitution {
    Substitution::new(vec![tent(0)]).expect("unary")
}

/// Tent on coordinate `i`, identity on the others.
pub fn tent_on(n: usize, i: usize) -> Substitution {
    let images = (0..n).map(|j| if j == i { tent(j) } else { Formula::var(j) }).collect();
    Substitution::new(images).expect("images stay in arity")
}

/// Tent on every coordinate.
pub fn tent_product(n: usize) -> Substitution {
    Substitution::new((0..n).map(tent).collect()).expect("images stay in arity")
}

/// `x0 ↦ ¬x0`.
pub fn flip_substitution() -> Substitution {
    Substitution::new(vec![Formula::neg(Formula::var(0))]).expect("unary")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwl::AffinePieceZ;
    use crate::rational::{int, rat};

    #[test]
    fn tent_induced_map() {
        let s = InducedMap::new(&tent_substitution()).unwrap();
        let pwl = s.pwl().unwrap();
        assert_eq!(pwl.maps, vec![AffineMapZ::from_i64(&[&[2]], &[0]), AffineMapZ::from_i64(&[&[-2]], &[2])]);
        assert_eq!(s.eval(&[rat(1, 4)]).unwrap(), vec![rat(1, 2)]);
        assert_eq!(s.eval(&[rat(1, 2)]).unwrap(), vec![int(1)]);
        assert_eq!(pwl.eval(&[rat(3, 4)]).unwrap(), vec![rat(1, 2)]);
        assert!(s.eval(&[rat(3, 2)]).is_err());
    }

    #[test]
    fn identity_and_flip() {
        let id = InducedMap::new(&Substitution::identity(2)).unwrap();
        let p = vec![rat(1, 3), rat(5, 7)];
        assert_eq!(id.eval(&p).unwrap(), p);
        assert_eq!(id.pwl().unwrap().maps.iter().collect::<std::collections::HashSet<_>>().len(), 1);
        let flip = InducedMap::new(&flip_substitution()).unwrap();
        assert_eq!(flip.eval(&[rat(1, 3)]).unwrap(), vec![rat(2, 3)]);
        let c = flip.pwl().unwrap().component(0).unwrap();
        assert_eq!(c.pieces(), &[AffinePieceZ::from_i64(&[-1], 1)]);
    }

    #[test]
    fn tent_orbits() {
        let s = InducedMap::new(&tent_substitution()).unwrap();
        let o = orbit(&s, &[rat(1, 5)], 100).unwrap();
        assert_eq!(o.points, vec![vec![rat(1, 5)], vec![rat(2, 5)], vec![rat(4, 5)], vec![rat(2, 5)]]);
        assert_eq!(o.status, OrbitStatus::CycleEntered { preperiod: 1, period: 2 });
        let z = orbit(&s, &[int(0)], 10).unwrap();
        assert_eq!(z.status, OrbitStatus::CycleEntered { preperiod: 0, period: 1 });
        let t = orbit(&s, &[rat(1, 7)], 2).unwrap();
        assert_eq!(t.status, OrbitStatus::Truncated { max_steps: 2 });
        assert_eq!(t.points.len(), 3);
        for d in o.denominators {
            assert_eq!(BigInt::from(5) % d, BigInt::from(0));
        }
    }

    #[test]
    fn two_dimensional_pwl_form_matches_formulas() {
        let sigma = Substitution::new(vec![
            crate::formula::parse_formula("x0 (+) x1").unwrap(),
            crate::formula::parse_formula("x0 * !x1").unwrap(),
        ])
        .unwrap();
        let s = InducedMap::new(&sigma).unwrap();
        let pwl = s.pwl().unwrap();
        pwl.validate().unwrap();
        for a in 0..=5 {
            for b in 0..=5 {
                let p = vec![rat(a, 5), rat(b, 5)];
                assert_eq!(pwl.eval(&p).unwrap(), s.eval(&p).unwrap());
            }
        }
    }
}
