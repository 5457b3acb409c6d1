//! Piecewise-affine functions with integer pieces and the Łukasiewicz connectives on them.

use std::collections::HashMap;

use num::{BigInt, One, Signed, Zero};

use super::complex::{overlay_2d, CellComplex, Mesh};
use super::geom::{area2, clip, HalfPlane, V2};
use super::PwlError;
use crate::formula::{Formula, Interpretation, Program};
use crate::rational::{in_unit_cube, in_unit_interval, Point, Rational, RationalBox};

/// `x ↦ a·x + b` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePieceZ {
    pub a: Vec<BigInt>,
    pub b: BigInt,
}

impl AffinePieceZ {
    pub fn new(a: Vec<BigInt>, b: BigInt) -> Self {
        AffinePieceZ { a, b }
    }

    pub fn from_i64(a: &[i64], b: i64) -> Self {
        AffinePieceZ { a: a.iter().map(|&c| BigInt::from(c)).collect(), b: b.into() }
    }

    pub fn constant(dim: usize, c: i64) -> Self {
        AffinePieceZ { a: vec![BigInt::zero(); dim], b: c.into() }
    }

    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut a = vec![BigInt::zero(); dim];
        a[i] = BigInt::one();
        AffinePieceZ { a, b: BigInt::zero() }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        let mut v = Rational::from_integer(self.b.clone());
        for (c, x) in self.a.iter().zip(p) {
            if !c.is_zero() {
                v += Rational::from_integer(c.clone()) * x;
            }
        }
        v
    }

    pub fn is_constant(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        AffinePieceZ { a: self.a.iter().zip(&o.a).map(|(x, y)| f(x, y)).collect(), b: f(&self.b, &o.b) }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x + y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x - y)
    }

    pub fn add_const(&self, c: i64) -> Self {
        AffinePieceZ { a: self.a.clone(), b: &self.b + c }
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        AffinePieceZ { a: self.a.iter().map(|c| -c).collect(), b: BigInt::one() - &self.b }
    }

    pub(crate) fn half_plane(&self) -> HalfPlane {
        let r = |c: &BigInt| Rational::from_integer(c.clone());
        HalfPlane { a: r(&self.a[0]), b: r(&self.a[1]), c: r(&self.b) }
    }
}

/// Łukasiewicz connectives on functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwlOp {
    Star,
    Impl,
    Min,
    Max,
    OPlus,
    Neg,
}

impl PwlOp {
    /// The crease `h` and the pieces valid where `h ≥ 0` and where `h ≤ 0`.
    fn split(self, f: &AffinePieceZ, g: &AffinePieceZ) -> (AffinePieceZ, AffinePieceZ, AffinePieceZ) {
        let d = f.dim();
        let one = || AffinePieceZ::constant(d, 1);
        match self {
            PwlOp::Star => {
                let h = f.add(g).add_const(-1);
                (h.clone(), h, AffinePieceZ::constant(d, 0))
            }
            PwlOp::OPlus => {
                let s = f.add(g);
                (s.add_const(-1), one(), s)
            }
            PwlOp::Impl => (g.sub(f), one(), g.sub(f).add_const(1)),
            PwlOp::Min => (f.sub(g), g.clone(), f.clone()),
            PwlOp::Max => (f.sub(g), f.clone(), g.clone()),
            PwlOp::Neg => unreachable!("negation has no crease"),
        }
    }
}

/// Result of an integration; `degenerate` flags a zero-measure box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    pub value: Rational,
    pub degenerate: bool,
}

/// A McNaughton function on `[0,1]^d`, `d ∈ {1, 2}`: one integer affine piece per top cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlFunction {
    complex: CellComplex,
    pieces: Vec<AffinePieceZ>,
}

struct PieceTable {
    pieces: Vec<AffinePieceZ>,
    index: HashMap<AffinePieceZ, usize>,
}

impl PieceTable {
    fn new() -> Self {
        PieceTable { pieces: Vec::new(), index: HashMap::new() }
    }

    fn tag(&mut self, p: AffinePieceZ) -> usize {
        if let Some(&t) = self.index.get(&p) {
            return t;
        }
        self.pieces.push(p.clone());
        self.index.insert(p, self.pieces.len() - 1);
        self.pieces.len() - 1
    }
}

fn sign(v: &Rational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

impl PwlFunction {
    /// Validates continuity, range and the complex; 1-D cells are sorted left to right.
    pub fn new(complex: CellComplex, pieces: Vec<AffinePieceZ>) -> Result<Self, PwlError> {
        complex.validate()?;
        let mut f = PwlFunction { complex, pieces };
        if f.complex.dim() == 1 {
            f = f.sorted_1d();
        }
        f.validate()?;
        Ok(f)
    }

    fn sorted_1d(self) -> Self {
        let mut iv: Vec<(Rational, Rational, AffinePieceZ)> = self
            .complex
            .cells()
            .iter()
            .zip(self.pieces)
            .map(|(c, p)| (self.complex.vertices()[c[0]][0].clone(), self.complex.vertices()[c[1]][0].clone(), p))
            .collect();
        iv.sort_by(|a, b| a.0.cmp(&b.0));
        Self::from_intervals(iv)
    }

    fn from_intervals(iv: Vec<(Rational, Rational, AffinePieceZ)>) -> Self {
        let mut vertices = vec![vec![iv[0].0.clone()]];
        let mut cells = Vec::new();
        let mut pieces = Vec::new();
        for (i, (_, r, p)) in iv.into_iter().enumerate() {
            vertices.push(vec![r]);
            cells.push(vec![i, i + 1]);
            pieces.push(p);
        }
        PwlFunction { complex: CellComplex::from_parts(1, vertices, cells), pieces }
    }

    fn intervals(&self) -> Vec<(Rational, Rational, AffinePieceZ)> {
        let v = self.complex.vertices();
        self.complex
            .cells()
            .iter()
            .zip(&self.pieces)
            .map(|(c, p)| (v[c[0]][0].clone(), v[c[1]][0].clone(), p.clone()))
            .collect()
    }

    /// Checks the complex, continuity at shared vertices and range in `[0,1]`.
    pub fn validate(&self) -> Result<(), PwlError> {
        self.complex.validate()?;
        let d = self.complex.dim();
        if self.pieces.len() != self.complex.cells().len() {
            return Err(PwlError::InvalidFunction("one piece per cell is required".into()));
        }
        if self.pieces.iter().any(|p| p.dim() != d) {
            return Err(PwlError::InvalidFunction("piece dimension differs from the complex".into()));
        }
        let mut at: Vec<Option<Rational>> = vec![None; self.complex.vertices().len()];
        for (c, p) in self.complex.cells().iter().zip(&self.pieces) {
            for &i in c {
                let v = p.eval(&self.complex.vertices()[i]);
                if !in_unit_interval(&v) {
                    return Err(PwlError::InvalidFunction(format!("value {v} outside [0,1] at vertex {i}")));
                }
                match &at[i] {
                    Some(w) if *w != v => {
                        return Err(PwlError::InvalidFunction(format!("discontinuity at vertex {i}")))
                    }
                    Some(_) => {}
                    None => at[i] = Some(v),
                }
            }
        }
        Ok(())
    }

    pub fn constant(dim: usize, value: i64) -> Self {
        let complex = CellComplex::unit(dim);
        let n = complex.cells().len();
        PwlFunction { complex, pieces: vec![AffinePieceZ::constant(dim, value); n] }
    }

    pub fn projection(dim: usize, i: usize) -> Self {
        let complex = CellComplex::unit(dim);
        let n = complex.cells().len();
        PwlFunction { complex, pieces: vec![AffinePieceZ::coordinate(dim, i); n] }
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn pieces(&self) -> &[AffinePieceZ] {
        &self.pieces
    }

    /// Piece of the lowest-index cell containing `p`.
    pub fn piece_at(&self, p: &[Rational]) -> Option<&AffinePieceZ> {
        self.complex.locate(p).map(|c| &self.pieces[c])
    }

    pub fn eval(&self, p: &[Rational]) -> Result<Rational, PwlError> {
        if p.len() != self.dim() || !in_unit_cube(p) {
            return Err(PwlError::PointOutside);
        }
        let c = self.complex.locate(p).ok_or(PwlError::PointOutside)?;
        Ok(self.pieces[c].eval(p))
    }

    /// The function of a formula in at most `dim` variables under Łukasiewicz semantics.
    pub fn from_formula(f: &Formula, dim: usize) -> Result<Self, PwlError> {
        if !(1..=2).contains(&dim) {
            return Err(PwlError::Dimension(dim));
        }
        if let Some(&index) = f.variables().iter().next_back() {
            if index >= dim {
                return Err(PwlError::VariableOutOfRange { index, dim });
            }
        }
        Ok(Program::compile(f).run(&PwlInterpretation { dim }))
    }

    pub fn neg(&self) -> Self {
        PwlFunction { complex: self.complex.clone(), pieces: self.pieces.iter().map(AffinePieceZ::complement).collect() }
    }

    /// Applies a Łukasiewicz connective pointwise; `g` must be absent exactly for `Neg`.
    pub fn combine(op: PwlOp, f: &PwlFunction, g: Option<&PwlFunction>) -> Result<Self, PwlError> {
        match (op, g) {
            (PwlOp::Neg, None) => Ok(f.neg()),
            (PwlOp::Neg, Some(_)) => Err(PwlError::InvalidFunction("negation is unary".into())),
            (_, None) => Err(PwlError::InvalidFunction("binary connective needs two arguments".into())),
            (_, Some(g)) if g.dim() != f.dim() => Err(PwlError::DimensionMismatch(f.dim(), g.dim())),
            (_, Some(g)) => Ok(if f.dim() == 1 { combine_1d(op, f, g) } else { combine_2d(op, f, g) }),
        }
    }

    /// Minimum value and the lowest-index vertex attaining it.
    pub fn min_value(&self) -> (Rational, Point) {
        let vals = self.vertex_values();
        let (i, v) = vals
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (i, v)))
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .expect("a complex has vertices");
        (v.clone(), self.complex.vertices()[i].clone())
    }

    pub fn max_value(&self) -> (Rational, Point) {
        let (v, p) = self.neg().min_value();
        (Rational::one() - v, p)
    }

    fn vertex_values(&self) -> Vec<Option<Rational>> {
        let mut vals = vec![None; self.complex.vertices().len()];
        for (c, p) in self.complex.cells().iter().zip(&self.pieces) {
            for &i in c {
                if vals[i].is_none() {
                    vals[i] = Some(p.eval(&self.complex.vertices()[i]));
                }
            }
        }
        vals
    }

    /// Semantic equality: pieces agree on every cell of the common refinement.
    pub fn equal(&self, other: &PwlFunction) -> Result<bool, PwlError> {
        if self.dim() != other.dim() {
            return Err(PwlError::DimensionMismatch(self.dim(), other.dim()));
        }
        if self.dim() == 1 {
            let (a, b) = (self.intervals(), other.intervals());
            for (l1, r1, p1) in &a {
                for (l2, r2, p2) in &b {
                    if l1.max(l2) < r1.min(r2) && p1 != p2 {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        Ok(overlay_2d(&self.complex, &other.complex)
            .iter()
            .all(|(_, i, j)| self.pieces[*i] == other.pieces[*j]))
    }

    /// Exact integral over the whole cube.
    pub fn integral(&self) -> Rational {
        self.integral_over(&RationalBox::unit(self.dim())).expect("the unit box is valid").value
    }

    /// Exact integral over a box: measure of each clipped cell times the
    /// mean of the affine piece at its vertices (after triangulation).
    pub fn integral_over(&self, bx: &RationalBox) -> Result<Integral, PwlError> {
        if bx.dim() != self.dim() {
            return Err(PwlError::DimensionMismatch(self.dim(), bx.dim()));
        }
        if bx.is_degenerate() {
            return Ok(Integral { value: Rational::zero(), degenerate: true });
        }
        let two = Rational::from_integer(2.into());
        let mut total = Rational::zero();
        if self.dim() == 1 {
            for (l, r, p) in self.intervals() {
                let a = l.max(bx.lo[0].clone());
                let b = r.min(bx.hi[0].clone());
                if a < b {
                    let mid = (&a + &b) / &two;
                    total += (b - a) * p.eval(&[mid]);
                }
            }
            return Ok(Integral { value: total, degenerate: false });
        }
        let z = Rational::zero();
        let o = Rational::one();
        let planes = [
            HalfPlane { a: o.clone(), b: z.clone(), c: -&bx.lo[0] },
            HalfPlane { a: -&o, b: z.clone(), c: bx.hi[0].clone() },
            HalfPlane { a: z.clone(), b: o.clone(), c: -&bx.lo[1] },
            HalfPlane { a: z, b: -o, c: bx.hi[1].clone() },
        ];
        let six = Rational::from_integer(6.into());
        for (cell, p) in self.pieces.iter().enumerate() {
            let mut poly = self.complex.cell_v2(cell);
            for hp in &planes {
                poly = clip(&poly, hp);
                if poly.is_empty() {
                    break;
                }
            }
            for k in 1..poly.len().saturating_sub(1) {
                let tri = [poly[0].clone(), poly[k].clone(), poly[k + 1].clone()];
                let sum: Rational = tri.iter().map(|v| p.eval(&v.to_point())).sum();
                total += area2(&tri) * sum / &six;
            }
        }
        Ok(Integral { value: total, degenerate: false })
    }
}

fn combine_1d(op: PwlOp, f: &PwlFunction, g: &PwlFunction) -> PwlFunction {
    let (a, b) = (f.intervals(), g.intervals());
    let mut out: Vec<(Rational, Rational, AffinePieceZ)> = Vec::new();
    let (mut i, mut j) = (0, 0);
    let mut left = Rational::zero();
    while i < a.len() && j < b.len() {
        let right = a[i].1.clone().min(b[j].1.clone());
        let (h, pos, neg) = op.split(&a[i].2, &b[j].2);
        let (hl, hr) = (h.eval(&[left.clone()]), h.eval(&[right.clone()]));
        if sign(&hl) * sign(&hr) < 0 {
            let root = &left + (&right - &left) * &hl / (&hl - &hr);
            let (first, second) = if hl.is_positive() { (pos, neg) } else { (neg, pos) };
            out.push((left.clone(), root.clone(), first));
            out.push((root, right.clone(), second));
        } else if hl.is_negative() || hr.is_negative() {
            out.push((left.clone(), right.clone(), neg));
        } else {
            out.push((left.clone(), right.clone(), pos));
        }
        if a[i].1 == right {
            i += 1;
        }
        if b[j].1 == right {
            j += 1;
        }
        left = right;
    }
    let mut merged: Vec<(Rational, Rational, AffinePieceZ)> = Vec::new();
    for iv in out {
        match merged.last_mut() {
            Some(last) if last.2 == iv.2 => last.1 = iv.1,
            _ => merged.push(iv),
        }
    }
    PwlFunction::from_intervals(merged)
}

fn combine_2d(op: PwlOp, f: &PwlFunction, g: &PwlFunction) -> PwlFunction {
    let mut table = PieceTable::new();
    let mut faces: Vec<(Vec<V2>, usize)> = Vec::new();
    for (poly, i, j) in overlay_2d(&f.complex, &g.complex) {
        let (h, pos, neg) = op.split(&f.pieces[i], &g.pieces[j]);
        if pos == neg {
            faces.push((poly, table.tag(pos)));
            continue;
        }
        let hp = h.half_plane();
        let signs: Vec<i8> = poly.iter().map(|v| sign(&hp.value(v))).collect();
        if signs.iter().all(|&s| s >= 0) {
            faces.push((poly, table.tag(pos)));
        } else if signs.iter().all(|&s| s <= 0) {
            faces.push((poly, table.tag(neg)));
        } else {
            let upper = clip(&poly, &hp);
            let lower = clip(&poly, &hp.flipped());
            faces.push((upper, table.tag(pos)));
            faces.push((lower, table.tag(neg)));
        }
    }
    let mut mesh = Mesh::from_faces(&faces);
    mesh.simplify();
    let (complex, tags) = mesh.into_complex();
    let pieces = tags.into_iter().map(|t| table.pieces[t].clone()).collect();
    PwlFunction { complex, pieces }
}

/// Evaluates formulas to McNaughton functions.
pub(crate) struct PwlInterpretation {
    pub dim: usize,
}

impl Interpretation for PwlInterpretation {
    type Value = PwlFunction;

    fn var(&self, index: usize) -> PwlFunction {
        PwlFunction::projection(self.dim, index)
    }
    fn zero(&self) -> PwlFunction {
        PwlFunction::constant(self.dim, 0)
    }
    fn one(&self) -> PwlFunction {
        PwlFunction::constant(self.dim, 1)
    }
    fn star(&self, a: &PwlFunction, b: &PwlFunction) -> PwlFunction {
        PwlFunction::combine(PwlOp::Star, a, Some(b)).expect("same dimension")
    }
    fn implies(&self, a: &PwlFunction, b: &PwlFunction) -> PwlFunction {
        PwlFunction::combine(PwlOp::Impl, a, Some(b)).expect("same dimension")
    }
    fn neg(&self, a: &PwlFunction) -> PwlFunction {
        a.neg()
    }
    fn and(&self, a: &PwlFunction, b: &PwlFunction) -> PwlFunction {
        PwlFunction::combine(PwlOp::Min, a, Some(b)).expect("same dimension")
    }
    fn or(&self, a: &PwlFunction, b: &PwlFunction) -> PwlFunction {
        PwlFunction::combine(PwlOp::Max, a, Some(b)).expect("same dimension")
    }
    fn oplus(&self, a: &PwlFunction, b: &PwlFunction) -> PwlFunction {
        PwlFunction::combine(PwlOp::OPlus, a, Some(b)).expect("same dimension")
    }
}
