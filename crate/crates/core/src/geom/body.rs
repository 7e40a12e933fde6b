use std::fmt;

use super::point::{orient, Direction, HalfPlane, Point};
use super::GeomError;
use crate::scalar::Scalar;

/// A closed convex subset of the plane in canonical form.
///
/// Polygons are strictly convex, counterclockwise, and start at their
/// lexicographically smallest vertex; segments store their endpoints in
/// lexicographic order. Canonical form makes structural equality coincide
/// with set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConvexBody<S> {
    Empty,
    Point(Point<S>),
    Segment(Point<S>, Point<S>),
    Polygon(Vec<Point<S>>),
    FullPlane,
}

/// Convex hull of a point cloud as a canonical body.
pub fn hull<S: Scalar>(points: impl IntoIterator<Item = Point<S>>) -> ConvexBody<S> {
    let mut pts: Vec<Point<S>> = points.into_iter().collect();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return ConvexBody::Empty,
        1 => return ConvexBody::Point(pts.pop().unwrap()),
        _ => {}
    }
    let mut lower: Vec<Point<S>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= S::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point<S>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= S::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() <= 2 {
        let first = pts.first().unwrap().clone();
        let last = pts.last().unwrap().clone();
        return ConvexBody::Segment(first, last);
    }
    ConvexBody::Polygon(lower)
}

impl<S: Scalar> ConvexBody<S> {
    pub fn point(p: Point<S>) -> Self {
        ConvexBody::Point(p)
    }

    pub fn segment(a: Point<S>, b: Point<S>) -> Self {
        hull([a, b])
    }

    /// Polygon through the given vertices, which must be in convex position
    /// (points on the boundary are tolerated and dropped).
    pub fn polygon(vertices: Vec<Point<S>>) -> Result<Self, GeomError> {
        let body = hull(vertices.iter().cloned());
        if !matches!(body, ConvexBody::Polygon(_)) {
            return Err(GeomError::Degenerate);
        }
        for v in &vertices {
            if body.interior_contains(v) {
                return Err(GeomError::NotConvex);
            }
        }
        Ok(body)
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`, degenerating as needed.
    pub fn rect(x0: S, y0: S, x1: S, y1: S) -> Self {
        hull([
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0.clone()),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ])
    }

    pub fn rect_ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        Self::rect(S::from_int(x0), S::from_int(y0), S::from_int(x1), S::from_int(y1))
    }

    /// Closed square of half-side `r` centered at `c`.
    pub fn square_around(c: &Point<S>, r: &S) -> Self {
        Self::rect(
            c.x.clone() - r.clone(),
            c.y.clone() - r.clone(),
            c.x.clone() + r.clone(),
            c.y.clone() + r.clone(),
        )
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConvexBody::Empty)
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, ConvexBody::FullPlane)
    }

    /// Affine dimension; `None` for the empty set.
    pub fn dimension(&self) -> Option<u8> {
        match self {
            ConvexBody::Empty => None,
            ConvexBody::Point(_) => Some(0),
            ConvexBody::Segment(..) => Some(1),
            ConvexBody::Polygon(_) | ConvexBody::FullPlane => Some(2),
        }
    }

    /// Extreme points of a bounded body (empty for `Empty` and `FullPlane`).
    pub fn vertices(&self) -> Vec<Point<S>> {
        match self {
            ConvexBody::Empty | ConvexBody::FullPlane => Vec::new(),
            ConvexBody::Point(p) => vec![p.clone()],
            ConvexBody::Segment(a, b) => vec![a.clone(), b.clone()],
            ConvexBody::Polygon(vs) => vs.clone(),
        }
    }

    /// Boundary segments; a segment body is its own single edge.
    pub fn edges(&self) -> Vec<(Point<S>, Point<S>)> {
        match self {
            ConvexBody::Segment(a, b) => vec![(a.clone(), b.clone())],
            ConvexBody::Polygon(vs) => (0..vs.len())
                .map(|i| (vs[i].clone(), vs[(i + 1) % vs.len()].clone()))
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        match self {
            ConvexBody::Empty => false,
            ConvexBody::FullPlane => true,
            ConvexBody::Point(q) => q == p,
            ConvexBody::Segment(a, b) => on_segment(a, b, p),
            ConvexBody::Polygon(vs) => (0..vs.len()).all(|i| orient(&vs[i], &vs[(i + 1) % vs.len()], p) >= S::zero()),
        }
    }

    /// Membership in the topological interior of the plane.
    pub fn interior_contains(&self, p: &Point<S>) -> bool {
        match self {
            ConvexBody::FullPlane => true,
            ConvexBody::Polygon(vs) => (0..vs.len()).all(|i| orient(&vs[i], &vs[(i + 1) % vs.len()], p) > S::zero()),
            _ => false,
        }
    }

    /// Membership in the relative interior (interior within the affine hull).
    pub fn relint_contains(&self, p: &Point<S>) -> bool {
        match self {
            ConvexBody::Segment(a, b) => on_segment(a, b, p) && p != a && p != b,
            ConvexBody::Point(q) => q == p,
            _ => self.interior_contains(p),
        }
    }

    /// Points of the topological boundary. Points and segments are all boundary.
    pub fn boundary_contains(&self, p: &Point<S>) -> bool {
        self.contains(p) && !self.interior_contains(p)
    }

    /// Half-plane description of a bounded nonempty body.
    pub fn halfplanes(&self) -> Vec<HalfPlane<S>> {
        match self {
            ConvexBody::Empty | ConvexBody::FullPlane => Vec::new(),
            ConvexBody::Point(p) => {
                let one = S::one();
                let zero = S::zero();
                vec![
                    HalfPlane::new(one.clone(), zero.clone(), p.x.clone()).unwrap(),
                    HalfPlane::new(-one.clone(), zero.clone(), -p.x.clone()).unwrap(),
                    HalfPlane::new(zero.clone(), one.clone(), p.y.clone()).unwrap(),
                    HalfPlane::new(zero, -one, -p.y.clone()).unwrap(),
                ]
            }
            ConvexBody::Segment(a, b) => {
                let d = Direction::from_vector(&b.sub(a)).unwrap();
                let n = d.rot90();
                vec![
                    HalfPlane::through(&n, a),
                    HalfPlane::through(&n.neg(), a),
                    HalfPlane::through(&d, b),
                    HalfPlane::through(&d.neg(), a),
                ]
            }
            ConvexBody::Polygon(_) => self
                .edges()
                .iter()
                .map(|(a, b)| HalfPlane::through(&outer_normal(a, b), a))
                .collect(),
        }
    }

    /// `self ∩ h`. Clipping the full plane has no bounded answer.
    pub fn clip(&self, h: &HalfPlane<S>) -> Result<Self, GeomError> {
        match self {
            ConvexBody::FullPlane => Err(GeomError::Unbounded),
            ConvexBody::Empty => Ok(ConvexBody::Empty),
            _ => Ok(clip_cycle(&self.vertices(), h)),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        match (self, other) {
            (ConvexBody::Empty, _) | (_, ConvexBody::Empty) => ConvexBody::Empty,
            (ConvexBody::FullPlane, b) => b.clone(),
            (a, ConvexBody::FullPlane) => a.clone(),
            (ConvexBody::Point(p), b) | (b, ConvexBody::Point(p)) => {
                if b.contains(p) {
                    ConvexBody::Point(p.clone())
                } else {
                    ConvexBody::Empty
                }
            }
            (a, b) => {
                let mut verts = a.vertices();
                for h in b.halfplanes() {
                    match clip_cycle(&verts, &h) {
                        ConvexBody::Empty => return ConvexBody::Empty,
                        body => verts = body.vertices(),
                    }
                }
                hull(verts)
            }
        }
    }

    /// Separating-axis test. For convex polygons some edge line has the other
    /// body strictly outside; two parallel segments may instead need their
    /// common direction as the axis.
    pub fn intersects(&self, other: &Self) -> bool {
        match (self, other) {
            (ConvexBody::Empty, _) | (_, ConvexBody::Empty) => false,
            (ConvexBody::FullPlane, _) | (_, ConvexBody::FullPlane) => true,
            (ConvexBody::Point(p), b) | (b, ConvexBody::Point(p)) => b.contains(p),
            (a, b) => {
                let (va, vb) = (a.vertices(), b.vertices());
                let (alo, ahi) = a.bbox().expect("bounded");
                let (blo, bhi) = b.bbox().expect("bounded");
                if ahi.x < blo.x || bhi.x < alo.x || ahi.y < blo.y || bhi.y < alo.y {
                    return false;
                }
                if let (ConvexBody::Segment(p, q), ConvexBody::Segment(r, s)) = (a, b) {
                    let d = q.sub(p);
                    if d.cross(&s.sub(r)).is_zero() {
                        let n = Point::new(-d.y.clone(), d.x.clone());
                        return n.dot(p) == n.dot(r) && !strictly_apart(&d, &va, &vb);
                    }
                }
                !edge_separates(a, &vb) && !edge_separates(b, &va)
            }
        }
    }

    /// Every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        match (self, other) {
            (ConvexBody::Empty, _) => true,
            (_, ConvexBody::FullPlane) => true,
            (ConvexBody::FullPlane, _) => false,
            (a, b) => a.vertices().iter().all(|v| b.contains(v)),
        }
    }

    /// Minimum of `<u, p>` over the body (bounded, nonempty).
    pub fn min_dot(&self, u: &Point<S>) -> Option<S> {
        self.vertices().iter().map(|v| u.dot(v)).min()
    }

    pub fn max_dot(&self, u: &Point<S>) -> Option<S> {
        self.vertices().iter().map(|v| u.dot(v)).max()
    }

    /// Vertex average; lies in the relative interior of a bounded nonempty body.
    pub fn centroid(&self) -> Option<Point<S>> {
        let vs = self.vertices();
        if vs.is_empty() {
            return None;
        }
        let n = S::from_int(vs.len() as i64);
        let sum = vs.iter().skip(1).fold(vs[0].clone(), |acc, v| acc.add(v));
        Some(Point::new(sum.x / n.clone(), sum.y / n))
    }

    /// Bounding box `(min, max)` of a bounded nonempty body.
    pub fn bbox(&self) -> Option<(Point<S>, Point<S>)> {
        let vs = self.vertices();
        let first = vs.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in &vs[1..] {
            lo.x = S::min_of(&lo.x, &v.x);
            lo.y = S::min_of(&lo.y, &v.y);
            hi.x = S::max_of(&hi.x, &v.x);
            hi.y = S::max_of(&hi.y, &v.y);
        }
        Some((lo, hi))
    }

    /// Exact squared Euclidean distance from `p` to the body (bounded, nonempty).
    pub fn dist_sq(&self, p: &Point<S>) -> Option<S> {
        if self.contains(p) {
            return Some(S::zero());
        }
        match self {
            ConvexBody::Empty | ConvexBody::FullPlane => None,
            ConvexBody::Point(q) => Some(q.sub(p).norm_sq()),
            _ => self.edges().iter().map(|(a, b)| seg_dist_sq(a, b, p)).min(),
        }
    }

    pub fn translate(&self, by: &Point<S>) -> Self {
        self.map_points(|p| p.add(by))
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map_points(|p| p.scale(k))
    }

    /// Image under an affine map; `f` must be injective and affine.
    pub fn map_points(&self, f: impl Fn(&Point<S>) -> Point<S>) -> Self {
        match self {
            ConvexBody::Empty => ConvexBody::Empty,
            ConvexBody::FullPlane => ConvexBody::FullPlane,
            _ => hull(self.vertices().iter().map(f)),
        }
    }
}

impl<S: Scalar> fmt::Display for ConvexBody<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexBody::Empty => write!(f, "empty"),
            ConvexBody::FullPlane => write!(f, "R^2"),
            ConvexBody::Point(p) => write!(f, "{{{p}}}"),
            ConvexBody::Segment(a, b) => write!(f, "[{a}, {b}]"),
            ConvexBody::Polygon(vs) => {
                write!(f, "conv(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Outer normal of the edge `a -> b` of a counterclockwise polygon.
pub(crate) fn outer_normal<S: Scalar>(a: &Point<S>, b: &Point<S>) -> Direction<S> {
    let d = b.sub(a);
    Direction::new(d.y.clone(), -d.x).expect("degenerate edge")
}

/// Some edge line of `body` has every point of `vs` strictly outside; for a
/// segment either side counts.
fn edge_separates<S: Scalar>(body: &ConvexBody<S>, vs: &[Point<S>]) -> bool {
    let two_sided = matches!(body, ConvexBody::Segment(..));
    body.edges().iter().any(|(p, q)| {
        let n = Point::new(q.y.clone() - p.y.clone(), p.x.clone() - q.x.clone());
        let c = n.dot(p);
        let mut sides = vs.iter().map(|v| n.dot(v).cmp(&c));
        let first = sides.next().expect("nonempty");
        first != std::cmp::Ordering::Equal
            && (two_sided || first == std::cmp::Ordering::Greater)
            && sides.all(|o| o == first)
    })
}

/// The projections of `va` and `vb` onto `axis` do not overlap.
fn strictly_apart<S: Scalar>(axis: &Point<S>, va: &[Point<S>], vb: &[Point<S>]) -> bool {
    let span = |vs: &[Point<S>]| {
        let ds: Vec<S> = vs.iter().map(|v| axis.dot(v)).collect();
        (
            ds.iter().min().cloned().expect("nonempty"),
            ds.into_iter().max().expect("nonempty"),
        )
    };
    let ((alo, ahi), (blo, bhi)) = (span(va), span(vb));
    ahi < blo || bhi < alo
}

pub(crate) fn on_segment<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    orient(a, b, p).is_zero()
        && S::min_of(&a.x, &b.x) <= p.x
        && p.x <= S::max_of(&a.x, &b.x)
        && S::min_of(&a.y, &b.y) <= p.y
        && p.y <= S::max_of(&a.y, &b.y)
}

fn seg_dist_sq<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> S {
    let d = b.sub(a);
    let t = p.sub(a).dot(&d) / d.norm_sq();
    let t = if t < S::zero() {
        S::zero()
    } else if t > S::one() {
        S::one()
    } else {
        t
    };
    a.add(&d.scale(&t)).sub(p).norm_sq()
}

/// Sutherland–Hodgman step on a convex vertex cycle (1, 2, or more points).
fn clip_cycle<S: Scalar>(verts: &[Point<S>], h: &HalfPlane<S>) -> ConvexBody<S> {
    let n = verts.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let p = &verts[i];
        let q = &verts[(i + 1) % n];
        let sp = h.eval(p);
        let sq = h.eval(q);
        if sp <= S::zero() {
            out.push(p.clone());
        }
        if (sp < S::zero() && sq > S::zero()) || (sp > S::zero() && sq < S::zero()) {
            let t = sp.clone() / (sp - sq);
            out.push(p.add(&q.sub(p).scale(&t)));
        }
    }
    hull(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::from_ints(x, y)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_int(n) / Rational::from_int(d)
    }

    fn unit() -> ConvexBody<Rational> {
        ConvexBody::rect_ints(0, 0, 1, 1)
    }

    #[test]
    fn clip_square_halfway() {
        let h = HalfPlane::new(q(1, 1), q(0, 1), q(1, 2)).unwrap();
        let got = unit().clip(&h).unwrap();
        let want = ConvexBody::Polygon(vec![
            pt(0, 0),
            Point::new(q(1, 2), q(0, 1)),
            Point::new(q(1, 2), q(1, 1)),
            pt(0, 1),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn clip_point_outside_is_empty() {
        let h = HalfPlane::new(q(1, 1), q(0, 1), q(1, 1)).unwrap();
        assert_eq!(ConvexBody::Point(pt(2, 2)).clip(&h).unwrap(), ConvexBody::Empty);
    }

    #[test]
    fn clip_square_to_edge() {
        let h = HalfPlane::new(q(1, 1), q(0, 1), q(0, 1)).unwrap();
        let got = unit().clip(&h).unwrap();
        assert_eq!(got, ConvexBody::Segment(pt(0, 0), pt(0, 1)));
        // membership oracle: exactly the square vertices with x <= 0 survive
        let kept: Vec<_> = unit().vertices().into_iter().filter(|v| h.contains(v)).collect();
        assert_eq!(hull(kept), got);
    }

    #[test]
    fn clip_full_plane_errors() {
        let h = HalfPlane::new(q(1, 1), q(0, 1), q(0, 1)).unwrap();
        assert_eq!(ConvexBody::<Rational>::FullPlane.clip(&h), Err(GeomError::Unbounded));
    }

    #[test]
    fn intersect_examples() {
        let a: ConvexBody<Rational> = ConvexBody::rect_ints(0, 0, 2, 1);
        let b = ConvexBody::rect_ints(1, 0, 3, 1);
        assert_eq!(a.intersect(&b), ConvexBody::rect_ints(1, 0, 2, 1));

        let s = ConvexBody::segment(pt(0, 0), pt(2, 0));
        let t = ConvexBody::segment(pt(1, -1), pt(1, 1));
        assert_eq!(s.intersect(&t), ConvexBody::Point(pt(1, 0)));

        let tri = ConvexBody::polygon(vec![pt(0, 0), pt(4, 0), pt(0, 4)]).unwrap();
        let sq = ConvexBody::rect_ints(1, 1, 3, 3);
        let got = tri.intersect(&sq);
        // oracle: clip the square by the triangle's edge half-planes one by one
        let mut oracle = sq.clone();
        for h in tri.halfplanes() {
            oracle = oracle.clip(&h).unwrap();
        }
        assert_eq!(got, oracle);
        assert_eq!(got, ConvexBody::polygon(vec![pt(1, 1), pt(3, 1), pt(1, 3)]).unwrap());
        assert_eq!(got.vertices().len(), 3);

        assert_eq!(a.intersect(&ConvexBody::FullPlane), a);
    }

    #[test]
    fn quadrilateral_intersection() {
        let tri = ConvexBody::polygon(vec![pt(0, 0), pt(6, 0), pt(0, 6)]).unwrap();
        let sq = ConvexBody::rect_ints(1, 1, 4, 4);
        let got = tri.intersect(&sq);
        assert_eq!(got.vertices().len(), 5);
        let band = ConvexBody::rect_ints(0, 1, 3, 2);
        let tri2 = ConvexBody::polygon(vec![pt(0, 0), pt(4, 0), pt(0, 4)]).unwrap();
        let quad = tri2.intersect(&band);
        assert_eq!(
            quad,
            ConvexBody::polygon(vec![pt(0, 1), pt(3, 1), pt(2, 2), pt(0, 2)]).unwrap()
        );
    }

    #[test]
    fn membership() {
        assert!(unit().contains(&pt(0, 0)));
        assert!(!ConvexBody::<Rational>::Empty.contains(&pt(0, 0)));
        assert!(ConvexBody::segment(pt(0, 0), pt(2, 2)).contains(&pt(1, 1)));
        assert!(!ConvexBody::segment(pt(0, 0), pt(2, 2)).contains(&pt(3, 3)));
        assert!(!unit().interior_contains(&pt(0, 0)));
    }

    #[test]
    fn polygon_rejects_nonconvex() {
        let r = ConvexBody::polygon(vec![pt(0, 0), pt(4, 0), pt(1, 1), pt(0, 4)]);
        assert_eq!(r, Err(GeomError::NotConvex));
        assert_eq!(
            ConvexBody::polygon(vec![pt(0, 0), pt(1, 1), pt(2, 2)]),
            Err(GeomError::Degenerate)
        );
    }

    #[test]
    fn canonical_polygon_order() {
        let a = ConvexBody::polygon(vec![pt(1, 1), pt(0, 1), pt(0, 0), pt(1, 0)]).unwrap();
        assert_eq!(a, ConvexBody::Polygon(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]));
    }

    #[test]
    fn distance() {
        assert_eq!(unit().dist_sq(&pt(3, 0)), Some(q(4, 1)));
        assert_eq!(unit().dist_sq(&pt(2, 2)), Some(q(2, 1)));
        assert_eq!(
            ConvexBody::segment(pt(0, 0), pt(2, 0)).dist_sq(&pt(1, 1)),
            Some(q(1, 1))
        );
    }
}
