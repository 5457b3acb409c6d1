//! Rational simplicial complexes triangulating `[0,1]` or `[0,1]^2`.

use std::collections::HashMap;

use num::{One, Signed, Zero};

use super::geom::{area2, clip, cross, in_triangle, on_open_segment, Buckets, FBox, HalfPlane, V2};
use super::PwlError;
use crate::rational::{in_unit_cube, Point, Rational};

/// Vertices and top cells: intervals `[i, j]` with `v_i < v_j` in dimension 1,
/// counter-clockwise triangles in dimension 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    dim: usize,
    vertices: Vec<Point>,
    cells: Vec<Vec<usize>>,
}

fn invalid(msg: impl Into<String>) -> PwlError {
    PwlError::InvalidComplex(msg.into())
}

impl CellComplex {
    /// Builds and validates a complex, reordering cell vertices into the
    /// canonical orientation.
    pub fn new(dim: usize, vertices: Vec<Point>, cells: Vec<Vec<usize>>) -> Result<Self, PwlError> {
        if !(1..=2).contains(&dim) {
            return Err(PwlError::Dimension(dim));
        }
        let mut c = CellComplex { dim, vertices, cells };
        for cell in &c.cells {
            if cell.len() != dim + 1 {
                return Err(invalid(format!("cell {cell:?} does not have {} vertices", dim + 1)));
            }
            if let Some(&i) = cell.iter().find(|&&i| i >= c.vertices.len()) {
                return Err(invalid(format!("cell refers to missing vertex {i}")));
            }
        }
        for cell in &mut c.cells {
            if dim == 1 {
                if c.vertices[cell[0]][0] > c.vertices[cell[1]][0] {
                    cell.swap(0, 1);
                }
            } else {
                let p: Vec<V2> = cell.iter().map(|&i| V2::from_point(&c.vertices[i])).collect();
                if cross(&p[0], &p[1], &p[2]).is_negative() {
                    cell.swap(1, 2);
                }
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts(dim: usize, vertices: Vec<Point>, cells: Vec<Vec<usize>>) -> Self {
        CellComplex { dim, vertices, cells }
    }

    /// `[0,1]` as one interval, or the square cut along its main diagonal.
    pub fn unit(dim: usize) -> CellComplex {
        let z = Rational::zero;
        let o = Rational::one;
        if dim == 1 {
            CellComplex { dim, vertices: vec![vec![z()], vec![o()]], cells: vec![vec![0, 1]] }
        } else {
            CellComplex {
                dim: 2,
                vertices: vec![vec![z(), z()], vec![o(), z()], vec![o(), o()], vec![z(), o()]],
                cells: vec![vec![0, 1, 2], vec![0, 2, 3]],
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_points(&self, cell: usize) -> Vec<&Point> {
        self.cells[cell].iter().map(|&i| &self.vertices[i]).collect()
    }

    /// Length or area of a top cell.
    pub fn cell_measure(&self, cell: usize) -> Rational {
        let c = &self.cells[cell];
        if self.dim == 1 {
            &self.vertices[c[1]][0] - &self.vertices[c[0]][0]
        } else {
            let p: Vec<V2> = c.iter().map(|&i| V2::from_point(&self.vertices[i])).collect();
            cross(&p[0], &p[1], &p[2]) / Rational::from_integer(2.into())
        }
    }

    pub(crate) fn cell_v2(&self, cell: usize) -> Vec<V2> {
        self.cells[cell].iter().map(|&i| V2::from_point(&self.vertices[i])).collect()
    }

    /// Whether the closed cell contains `p`.
    pub fn cell_contains(&self, cell: usize, p: &[Rational]) -> bool {
        let c = &self.cells[cell];
        if self.dim == 1 {
            self.vertices[c[0]][0] <= p[0] && p[0] <= self.vertices[c[1]][0]
        } else {
            let t = self.cell_v2(cell);
            in_triangle(&V2::from_point(p), &t[0], &t[1], &t[2])
        }
    }

    /// Lowest-index cell containing `p`.
    pub fn locate(&self, p: &[Rational]) -> Option<usize> {
        if p.len() != self.dim {
            return None;
        }
        (0..self.cells.len()).find(|&c| self.cell_contains(c, p))
    }

    /// Checks cover, rationality (by construction) and the common-face condition.
    pub fn validate(&self) -> Result<(), PwlError> {
        if self.cells.is_empty() {
            return Err(invalid("no cells"));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim || !in_unit_cube(v) {
                return Err(invalid(format!("vertex {i} is not a point of the unit cube")));
            }
        }
        if self.dim == 1 {
            self.validate_1d()
        } else {
            self.validate_2d()
        }
    }

    fn validate_1d(&self) -> Result<(), PwlError> {
        let mut spans: Vec<(&Rational, &Rational)> = self
            .cells
            .iter()
            .map(|c| (&self.vertices[c[0]][0], &self.vertices[c[1]][0]))
            .collect();
        spans.sort();
        let mut at = Rational::zero();
        for (a, b) in spans {
            if *a != at {
                return Err(invalid(format!("gap or overlap at {at}")));
            }
            if b <= a {
                return Err(invalid(format!("degenerate interval at {a}")));
            }
            at = b.clone();
        }
        if !at.is_one() {
            return Err(invalid("intervals do not reach 1"));
        }
        Ok(())
    }

    fn validate_2d(&self) -> Result<(), PwlError> {
        let pts: Vec<V2> = self.vertices.iter().map(|p| V2::from_point(p)).collect();
        let mut total = Rational::zero();
        let mut edges: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (ci, c) in self.cells.iter().enumerate() {
            let a = cross(&pts[c[0]], &pts[c[1]], &pts[c[2]]);
            if !a.is_positive() {
                return Err(invalid(format!("cell {ci} is degenerate")));
            }
            total += a;
            for k in 0..3 {
                let (u, w) = (c[k], c[(k + 1) % 3]);
                edges.entry((u.min(w), u.max(w))).or_default().push((u, w));
            }
        }
        if total != Rational::from_integer(2.into()) {
            return Err(invalid(format!("cells cover area {} instead of 1", total / num::BigInt::from(2))));
        }
        let on_side = |p: &V2, q: &V2| {
            (p.x.is_zero() && q.x.is_zero())
                || (p.x.is_one() && q.x.is_one())
                || (p.y.is_zero() && q.y.is_zero())
                || (p.y.is_one() && q.y.is_one())
        };
        let mut keys: Vec<_> = edges.keys().copied().collect();
        keys.sort_unstable();
        for key in &keys {
            let uses = &edges[key];
            match uses.as_slice() {
                [_] => {
                    if !on_side(&pts[key.0], &pts[key.1]) {
                        return Err(invalid(format!("edge {key:?} is a hole boundary")));
                    }
                }
                [(a, _), (b, _)] if a != b => {}
                _ => return Err(invalid(format!("edge {key:?} is not shared by exactly two cells"))),
            }
        }
        let mut buckets = Buckets::new(pts.len());
        for (i, p) in pts.iter().enumerate() {
            buckets.insert(i, FBox::of(&[p]));
        }
        for &(u, w) in &keys {
            for i in buckets.query(FBox::of(&[&pts[u], &pts[w]])) {
                if on_open_segment(&pts[i], &pts[u], &pts[w]) {
                    return Err(invalid(format!("vertex {i} lies inside edge ({u}, {w})")));
                }
            }
        }
        Ok(())
    }
}

/// Pairwise intersections of the cells of two planar complexes, with the
/// indices of the two parent cells. Every polygon is convex, counter-clockwise
/// and of positive area.
pub(crate) fn overlay_2d(a: &CellComplex, b: &CellComplex) -> Vec<(Vec<V2>, usize, usize)> {
    let tb: Vec<Vec<V2>> = (0..b.cells.len()).map(|i| b.cell_v2(i)).collect();
    let mut buckets = Buckets::new(tb.len());
    for (i, t) in tb.iter().enumerate() {
        buckets.insert(i, FBox::of(&t.iter().collect::<Vec<_>>()));
    }
    let mut out = Vec::new();
    for ia in 0..a.cells.len() {
        let ta = a.cell_v2(ia);
        let fa = FBox::of(&ta.iter().collect::<Vec<_>>());
        for ib in buckets.query(fa) {
            let t = &tb[ib];
            let mut poly = ta.clone();
            for k in 0..3 {
                poly = clip(&poly, &HalfPlane::left_of(&t[k], &t[(k + 1) % 3]));
                if poly.is_empty() {
                    break;
                }
            }
            if !poly.is_empty() && area2(&poly).is_positive() {
                out.push((poly, ia, ib));
            }
        }
    }
    out
}

/// Triangles with a tag, over an interned vertex list.
#[derive(Clone, Debug, Default)]
pub(crate) struct Mesh {
    pub verts: Vec<V2>,
    index: HashMap<V2, usize>,
    pub tris: Vec<[usize; 3]>,
    pub tags: Vec<usize>,
}

impl Mesh {
    pub fn vertex(&mut self, p: &V2) -> usize {
        if let Some(&i) = self.index.get(p) {
            return i;
        }
        self.verts.push(p.clone());
        self.index.insert(p.clone(), self.verts.len() - 1);
        self.verts.len() - 1
    }

    /// Triangulates a family of convex polygons that tile the square, adding
    /// every vertex lying on a polygon side so that neighbours match edge to edge.
    pub fn from_faces(faces: &[(Vec<V2>, usize)]) -> Mesh {
        let mut mesh = Mesh::default();
        let corner_ids: Vec<Vec<usize>> =
            faces.iter().map(|(poly, _)| poly.iter().map(|p| mesh.vertex(p)).collect()).collect();
        let mut buckets = Buckets::new(mesh.verts.len());
        for (i, p) in mesh.verts.iter().enumerate() {
            buckets.insert(i, FBox::of(&[p]));
        }
        for ((_, tag), ids) in faces.iter().zip(&corner_ids) {
            let n = ids.len();
            // Boundary cycle with side-interior points; `true` marks polygon corners.
            let mut ring: Vec<(usize, bool)> = Vec::new();
            let mut clean_side = vec![true; n];
            for k in 0..n {
                let (u, w) = (ids[k], ids[(k + 1) % n]);
                ring.push((u, true));
                let (pu, pw) = (&mesh.verts[u], &mesh.verts[w]);
                let mut inner: Vec<usize> = buckets
                    .query(FBox::of(&[pu, pw]))
                    .into_iter()
                    .filter(|&i| on_open_segment(&mesh.verts[i], pu, pw))
                    .collect();
                if !inner.is_empty() {
                    clean_side[k] = false;
                    let key = |i: &usize| {
                        let p = &mesh.verts[*i];
                        (&p.x - &pu.x) * (&pw.x - &pu.x) + (&p.y - &pu.y) * (&pw.y - &pu.y)
                    };
                    inner.sort_by_key(key);
                    ring.extend(inner.into_iter().map(|i| (i, false)));
                }
            }
            // A corner whose two sides carry no extra points gives a
            // non-degenerate fan; otherwise fan from the centroid.
            let apex = (0..n)
                .filter(|&k| clean_side[k] && clean_side[(k + n - 1) % n])
                .min_by_key(|&k| ids[k]);
            let m = ring.len();
            match apex {
                Some(k) => {
                    let pos = ring.iter().position(|&(i, c)| c && i == ids[k]).expect("corner in ring");
                    for s in 1..m - 1 {
                        let p = ring[(pos + s) % m].0;
                        let q = ring[(pos + s + 1) % m].0;
                        mesh.tris.push([ids[k], p, q]);
                        mesh.tags.push(*tag);
                    }
                }
                None => {
                    let mut cx = Rational::zero();
                    let mut cy = Rational::zero();
                    for &i in ids {
                        cx += &mesh.verts[i].x;
                        cy += &mesh.verts[i].y;
                    }
                    let nn = Rational::from_integer((n as i64).into());
                    let c = mesh.vertex(&V2::new(cx / &nn, cy / nn));
                    for s in 0..m {
                        mesh.tris.push([c, ring[s].0, ring[(s + 1) % m].0]);
                        mesh.tags.push(*tag);
                    }
                }
            }
        }
        mesh
    }

    fn is_square_corner(p: &V2) -> bool {
        (p.x.is_zero() || p.x.is_one()) && (p.y.is_zero() || p.y.is_one())
    }

    /// Ear clipping of a simple counter-clockwise polygon; `None` if stuck.
    fn ear_clip(&self, poly: &[usize]) -> Option<Vec<[usize; 3]>> {
        let mut ring = poly.to_vec();
        let mut out = Vec::new();
        while ring.len() > 3 {
            let n = ring.len();
            let mut cut = None;
            for i in 0..n {
                let (a, b, c) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
                let (pa, pb, pc) = (&self.verts[a], &self.verts[b], &self.verts[c]);
                if !cross(pa, pb, pc).is_positive() {
                    continue;
                }
                let blocked = ring
                    .iter()
                    .any(|&o| o != a && o != b && o != c && in_triangle(&self.verts[o], pa, pb, pc));
                if !blocked {
                    cut = Some(i);
                    out.push([a, b, c]);
                    break;
                }
            }
            ring.remove(cut?);
        }
        let (pa, pb, pc) = (&self.verts[ring[0]], &self.verts[ring[1]], &self.verts[ring[2]]);
        if !cross(pa, pb, pc).is_positive() {
            return None;
        }
        out.push([ring[0], ring[1], ring[2]]);
        Some(out)
    }

    /// Removes vertices around which the tag is constant, or changes only
    /// across one straight line, re-triangulating their stars.
    pub fn simplify(&mut self) {
        let mut alive = vec![true; self.tris.len()];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.verts.len()];
        for (t, tri) in self.tris.iter().enumerate() {
            for &v in tri {
                incident[v].push(t);
            }
        }
        let mut removed = vec![false; self.verts.len()];
        loop {
            let mut progress = false;
            for v in 0..self.verts.len() {
                if removed[v] || Self::is_square_corner(&self.verts[v]) {
                    continue;
                }
                incident[v].retain(|&t| alive[t]);
                let Some(plan) = self.removal_plan(v, &incident[v]) else {
                    continue;
                };
                for &t in &incident[v] {
                    alive[t] = false;
                }
                for (tri, tag) in plan {
                    let id = self.tris.len();
                    self.tris.push(tri);
                    self.tags.push(tag);
                    alive.push(true);
                    for &u in &tri {
                        incident[u].push(id);
                    }
                }
                incident[v].clear();
                removed[v] = true;
                progress = true;
            }
            if !progress {
                break;
            }
        }
        self.compact(&alive);
    }

    fn removal_plan(&self, v: usize, star: &[usize]) -> Option<Vec<([usize; 3], usize)>> {
        if star.is_empty() {
            return None;
        }
        // Link edges p → q from each triangle (v, p, q), in counter-clockwise order.
        let mut succ: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut has_pred: HashMap<usize, bool> = HashMap::new();
        for &t in star {
            let tri = self.tris[t];
            let k = tri.iter().position(|&u| u == v)?;
            let (p, q) = (tri[(k + 1) % 3], tri[(k + 2) % 3]);
            succ.insert(p, (q, self.tags[t]));
            has_pred.insert(q, true);
        }
        let starts: Vec<usize> = {
            let mut s: Vec<usize> = succ.keys().copied().filter(|p| !has_pred.contains_key(p)).collect();
            s.sort_unstable();
            s
        };
        let first = match starts.as_slice() {
            [] => *succ.keys().min()?,
            [s] => *s,
            _ => return None,
        };
        let mut chain = vec![first];
        let mut tags = Vec::new();
        let mut cur = first;
        while let Some(&(next, tag)) = succ.get(&cur) {
            tags.push(tag);
            if next == first {
                break;
            }
            chain.push(next);
            cur = next;
            if chain.len() > star.len() + 1 {
                return None;
            }
        }
        if tags.len() != star.len() {
            return None;
        }
        let pv = &self.verts[v];
        let straight = |a: usize, b: usize| on_open_segment(pv, &self.verts[a], &self.verts[b]);
        let closed = starts.is_empty();
        let switches: Vec<usize> =
            (0..tags.len()).filter(|&i| i > 0 && tags[i] != tags[i - 1]).collect();
        let mut plan = Vec::new();
        if closed {
            let wrap = tags[0] != tags[tags.len() - 1];
            match (switches.len(), wrap) {
                (0, false) => {
                    for tri in self.ear_clip(&chain)? {
                        plan.push((tri, tags[0]));
                    }
                }
                (1, true) => {
                    let s = switches[0];
                    let (a, b) = (chain[0], chain[s]);
                    if !straight(a, b) {
                        return None;
                    }
                    let left: Vec<usize> = chain[..=s].to_vec();
                    let mut right: Vec<usize> = chain[s..].to_vec();
                    right.push(chain[0]);
                    for tri in self.ear_clip(&left)? {
                        plan.push((tri, tags[0]));
                    }
                    for tri in self.ear_clip(&right)? {
                        plan.push((tri, tags[s]));
                    }
                }
                (2, false) => {
                    let (s, t) = (switches[0], switches[1]);
                    if !straight(chain[s], chain[t]) {
                        return None;
                    }
                    let inner: Vec<usize> = chain[s..=t].to_vec();
                    let mut outer: Vec<usize> = chain[t..].to_vec();
                    outer.extend_from_slice(&chain[..=s]);
                    for tri in self.ear_clip(&inner)? {
                        plan.push((tri, tags[s]));
                    }
                    for tri in self.ear_clip(&outer)? {
                        plan.push((tri, tags[0]));
                    }
                }
                _ => return None,
            }
        } else {
            if !switches.is_empty() || !straight(chain[0], *chain.last()?) {
                return None;
            }
            for tri in self.ear_clip(&chain)? {
                plan.push((tri, tags[0]));
            }
        }
        Some(plan)
    }

    fn compact(&mut self, alive: &[bool]) {
        let mut remap = vec![usize::MAX; self.verts.len()];
        let mut verts = Vec::new();
        let mut tris = Vec::new();
        let mut tags = Vec::new();
        for (t, tri) in self.tris.iter().enumerate() {
            if !alive[t] {
                continue;
            }
            let mut out = [0; 3];
            for (k, &v) in tri.iter().enumerate() {
                if remap[v] == usize::MAX {
                    remap[v] = verts.len();
                    verts.push(self.verts[v].clone());
                }
                out[k] = remap[v];
            }
            tris.push(out);
            tags.push(self.tags[t]);
        }
        self.index = verts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        self.verts = verts;
        self.tris = tris;
        self.tags = tags;
    }

    pub fn into_complex(self) -> (CellComplex, Vec<usize>) {
        let vertices = self.verts.iter().map(V2::to_point).collect();
        let cells = self.tris.iter().map(|t| t.to_vec()).collect();
        (CellComplex::from_parts(2, vertices, cells), self.tags)
    }
}

/// The coarsest subdivision refining both complexes (up to re-triangulation).
pub fn common_refinement(w1: &CellComplex, w2: &CellComplex) -> Result<CellComplex, PwlError> {
    if w1.dim != w2.dim {
        return Err(PwlError::DimensionMismatch(w1.dim, w2.dim));
    }
    if w1.dim == 1 {
        let mut pts: Vec<Rational> =
            w1.vertices.iter().chain(&w2.vertices).map(|p| p[0].clone()).collect();
        pts.sort();
        pts.dedup();
        let cells = (0..pts.len() - 1).map(|i| vec![i, i + 1]).collect();
        return Ok(CellComplex::from_parts(1, pts.into_iter().map(|x| vec![x]).collect(), cells));
    }
    let faces: Vec<(Vec<V2>, usize)> =
        overlay_2d(w1, w2).into_iter().enumerate().map(|(i, (p, _, _))| (p, i)).collect();
    let (c, _) = Mesh::from_faces(&faces).into_complex();
    Ok(c)
}
