//! Exact planar primitives over rationals.

use num::{Signed, Zero};

use crate::rational::{to_f64, Point, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct V2 {
    pub x: Rational,
    pub y: Rational,
}

impl V2 {
    pub fn new(x: Rational, y: Rational) -> V2 {
        V2 { x, y }
    }

    pub fn from_point(p: &[Rational]) -> V2 {
        V2 { x: p[0].clone(), y: p[1].clone() }
    }

    pub fn to_point(&self) -> Point {
        vec![self.x.clone(), self.y.clone()]
    }

    pub fn approx(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

/// `(a - o) × (b - o)`; positive when `o, a, b` turn counter-clockwise.
pub(crate) fn cross(o: &V2, a: &V2, b: &V2) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Closed half-plane `a·x + b·y + c ≥ 0`.
#[derive(Clone, Debug)]
pub(crate) struct HalfPlane {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HalfPlane {
    /// The half-plane to the left of the directed line `p → q`.
    pub fn left_of(p: &V2, q: &V2) -> HalfPlane {
        let dx = &q.x - &p.x;
        let dy = &q.y - &p.y;
        HalfPlane { c: &dy * &p.x - &dx * &p.y, a: -dy, b: dx }
    }

    pub fn value(&self, p: &V2) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn flipped(&self) -> HalfPlane {
        HalfPlane { a: -&self.a, b: -&self.b, c: -&self.c }
    }
}

/// Intersection of a convex polygon with a half-plane (Sutherland–Hodgman step).
pub(crate) fn clip(poly: &[V2], hp: &HalfPlane) -> Vec<V2> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let vals: Vec<Rational> = poly.iter().map(|p| hp.value(p)).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return poly.to_vec();
    }
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (vi, vj) = (&vals[i], &vals[j]);
        if !vi.is_negative() {
            out.push(poly[i].clone());
        }
        if (vi.is_positive() && vj.is_negative()) || (vi.is_negative() && vj.is_positive()) {
            let t = vi / (vi - vj);
            let (p, q) = (&poly[i], &poly[j]);
            out.push(V2::new(&p.x + (&q.x - &p.x) * &t, &p.y + (&q.y - &p.y) * &t));
        }
    }
    clean(out)
}

/// Drops repeated and collinear-middle vertices; empty if fewer than three remain.
pub(crate) fn clean(mut poly: Vec<V2>) -> Vec<V2> {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    let mut changed = true;
    while changed && poly.len() >= 3 {
        changed = false;
        let n = poly.len();
        for i in 0..n {
            let prev = &poly[(i + n - 1) % n];
            let next = &poly[(i + 1) % n];
            if cross(prev, &poly[i], next).is_zero() {
                poly.remove(i);
                changed = true;
                break;
            }
        }
    }
    if poly.len() < 3 {
        Vec::new()
    } else {
        poly
    }
}

/// Twice the signed area (positive for counter-clockwise order).
pub(crate) fn area2(poly: &[V2]) -> Rational {
    let n = poly.len();
    let mut s = Rational::zero();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        s += &p.x * &q.y - &q.x * &p.y;
    }
    s
}

/// Whether `p` lies strictly between `a` and `b` on the segment `ab`.
pub(crate) fn on_open_segment(p: &V2, a: &V2, b: &V2) -> bool {
    if !cross(a, b, p).is_zero() || p == a || p == b {
        return false;
    }
    let dot = (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
    let len = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
    dot.is_positive() && dot < len
}

/// Closed containment in a counter-clockwise triangle.
pub(crate) fn in_triangle(p: &V2, a: &V2, b: &V2, c: &V2) -> bool {
    !cross(a, b, p).is_negative() && !cross(b, c, p).is_negative() && !cross(c, a, p).is_negative()
}

/// Axis-aligned bounds in floating point, padded so that they never
/// exclude a point the exact bounds include.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FBox {
    pub lo: (f64, f64),
    pub hi: (f64, f64),
}

impl FBox {
    pub fn of(points: &[&V2]) -> FBox {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            let (x, y) = p.approx();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        const PAD: f64 = 1e-9;
        FBox { lo: (lo.0 - PAD, lo.1 - PAD), hi: (hi.0 + PAD, hi.1 + PAD) }
    }
}

/// Uniform bucket grid over the unit square for candidate filtering.
pub(crate) struct Buckets {
    size: usize,
    cells: Vec<Vec<usize>>,
}

impl Buckets {
    pub fn new(items: usize) -> Buckets {
        let size = ((items as f64).sqrt().ceil() as usize).clamp(1, 128);
        Buckets { size, cells: vec![Vec::new(); size * size] }
    }

    fn range(&self, lo: f64, hi: f64) -> (usize, usize) {
        let s = self.size as f64;
        let a = ((lo * s).floor().max(0.0) as usize).min(self.size - 1);
        let b = ((hi * s).floor().max(0.0) as usize).min(self.size - 1);
        (a, b)
    }

    pub fn insert(&mut self, id: usize, b: FBox) {
        let (x0, x1) = self.range(b.lo.0, b.hi.0);
        let (y0, y1) = self.range(b.lo.1, b.hi.1);
        for gy in y0..=y1 {
            for gx in x0..=x1 {
                self.cells[gy * self.size + gx].push(id);
            }
        }
    }

    /// Ids whose boxes may overlap `b`, ascending and without repeats.
    pub fn query(&self, b: FBox) -> Vec<usize> {
        let (x0, x1) = self.range(b.lo.0, b.hi.0);
        let (y0, y1) = self.range(b.lo.1, b.hi.1);
        let mut out = Vec::new();
        for gy in y0..=y1 {
            for gx in x0..=x1 {
                out.extend_from_slice(&self.cells[gy * self.size + gx]);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(a: i64, b: i64, c: i64, d: i64) -> V2 {
        V2::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn clipping_a_square_by_its_diagonal() {
        let sq = vec![v(0, 1, 0, 1), v(1, 1, 0, 1), v(1, 1, 1, 1), v(0, 1, 1, 1)];
        let hp = HalfPlane::left_of(&v(0, 1, 0, 1), &v(1, 1, 1, 1));
        let half = clip(&sq, &hp);
        assert_eq!(half.len(), 3);
        assert_eq!(area2(&half), rat(1, 1));
        let other = clip(&sq, &hp.flipped());
        assert_eq!(area2(&other), rat(1, 1));
    }

    #[test]
    fn clean_removes_collinear_points() {
        let poly = vec![v(0, 1, 0, 1), v(1, 2, 0, 1), v(1, 1, 0, 1), v(0, 1, 1, 1)];
        assert_eq!(clean(poly).len(), 3);
        assert!(clean(vec![v(0, 1, 0, 1), v(1, 1, 1, 1), v(1, 2, 1, 2)]).is_empty());
    }

    #[test]
    fn segment_and_triangle_tests() {
        assert!(on_open_segment(&v(1, 2, 1, 2), &v(0, 1, 0, 1), &v(1, 1, 1, 1)));
        assert!(!on_open_segment(&v(1, 1, 1, 1), &v(0, 1, 0, 1), &v(1, 1, 1, 1)));
        assert!(!on_open_segment(&v(2, 1, 2, 1), &v(0, 1, 0, 1), &v(1, 1, 1, 1)));
        let (a, b, c) = (v(0, 1, 0, 1), v(1, 1, 0, 1), v(0, 1, 1, 1));
        assert!(in_triangle(&v(1, 2, 1, 2), &a, &b, &c));
        assert!(!in_triangle(&v(2, 3, 2, 3), &a, &b, &c));
    }
}
