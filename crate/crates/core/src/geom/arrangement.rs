//! Arrangement of the boundaries of a finite family of convex bodies.
//!
//! The plane inside the window is cut along every body boundary and, in
//! addition, along the vertical line through every arrangement vertex. The
//! resulting vertical decomposition consists of vertices, open segments, and
//! open trapezoids; every body indicator is constant on each of these cells,
//! so a single rational sample per cell is a finite witness set for any
//! pointwise statement about indicator sums. Cells are also merged back
//! (union-find) into the true vertices, edges, and faces of the boundary
//! arrangement.

use std::collections::{BTreeSet, HashMap};

use super::body::{on_segment, ConvexBody};
use super::point::{orient, Point};
use super::GeomError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// A point where something happens on a vertical wall.
    Vertex,
    /// A piece of a non-vertical boundary edge inside one slab.
    SlabEdge,
    /// An open piece of a vertical wall between consecutive wall vertices.
    WallPiece,
    /// An open trapezoid between consecutive edges of a slab.
    Trapezoid,
}

/// Which cell of the true arrangement a decomposition cell belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

#[derive(Debug, Clone)]
pub struct Cell<S> {
    pub kind: CellKind,
    pub sample: Point<S>,
    /// Closure of the cell: a point, a segment, or a convex polygon.
    pub closure: ConvexBody<S>,
    /// Indices of input bodies containing the cell.
    pub incidence: Vec<usize>,
    pub owner: Owner,
}

impl<S> Cell<S> {
    pub fn dim(&self) -> u8 {
        match self.kind {
            CellKind::Vertex => 0,
            CellKind::SlabEdge | CellKind::WallPiece => 1,
            CellKind::Trapezoid => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ArrVertex<S> {
    pub point: Point<S>,
    pub incidence: Vec<usize>,
}

/// An open boundary segment between consecutive arrangement vertices.
#[derive(Debug, Clone)]
pub struct ArrEdge<S> {
    pub a: Point<S>,
    pub b: Point<S>,
    pub sample: Point<S>,
    pub incidence: Vec<usize>,
}

/// An open face of the arrangement inside the window.
#[derive(Debug, Clone)]
pub struct ArrFace<S> {
    pub sample: Point<S>,
    pub incidence: Vec<usize>,
    /// Decomposition cells making up the face.
    pub cells: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Arrangement<S> {
    pub bodies: Vec<ConvexBody<S>>,
    pub window: ConvexBody<S>,
    pub vertices: Vec<ArrVertex<S>>,
    pub edges: Vec<ArrEdge<S>>,
    pub faces: Vec<ArrFace<S>>,
    pub cells: Vec<Cell<S>>,
    /// A point outside the window, representing the unbounded region.
    pub outer_sample: Point<S>,
    pub outer_incidence: Vec<usize>,
}

impl<S: Scalar> Arrangement<S> {
    /// Sample points of every cell, followed by the outer representative.
    pub fn samples(&self) -> impl Iterator<Item = &Point<S>> {
        self.cells
            .iter()
            .map(|c| &c.sample)
            .chain(std::iter::once(&self.outer_sample))
    }

    /// Sum of `weights[i]` over the bodies containing a cell.
    pub fn weighted_count(&self, incidence: &[usize], weights: &[S]) -> S {
        incidence.iter().fold(S::zero(), |acc, &i| acc + weights[i].clone())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = i;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[rb] = ra;
        }
    }
}

/// Proper crossing point of two segments, if their interiors cross transversally.
fn proper_crossing<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, d: &Point<S>) -> Option<Point<S>> {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    let opposite = |p: &S, q: &S| (p.is_positive() && q.is_negative()) || (p.is_negative() && q.is_positive());
    if opposite(&d1, &d2) && opposite(&d3, &d4) {
        let t = d1.clone() / (d1 - d2);
        Some(a.add(&b.sub(a).scale(&t)))
    } else {
        None
    }
}

fn y_at<S: Scalar>(a: &Point<S>, b: &Point<S>, x: &S) -> S {
    if *x == a.x {
        return a.y.clone();
    }
    if *x == b.x {
        return b.y.clone();
    }
    a.y.clone() + (b.y.clone() - a.y.clone()) * (x.clone() - a.x.clone()) / (b.x.clone() - a.x.clone())
}

fn incidence_of<S: Scalar>(bodies: &[ConvexBody<S>], p: &Point<S>) -> Vec<usize> {
    bodies
        .iter()
        .enumerate()
        .filter(|(_, b)| b.contains(p))
        .map(|(i, _)| i)
        .collect()
}

/// Builds the arrangement of all body boundaries inside `window`.
///
/// `window` must be a polygon containing every bounded body; the full plane
/// is accepted as a body and contributes no boundary.
pub fn build_arrangement<S: Scalar>(
    bodies: &[ConvexBody<S>],
    window: &ConvexBody<S>,
) -> Result<Arrangement<S>, GeomError> {
    if bodies.is_empty() {
        return Err(GeomError::NoBodies);
    }
    if !matches!(window, ConvexBody::Polygon(_)) {
        return Err(GeomError::WindowNotPolygon);
    }
    if bodies.iter().any(|b| b.is_bounded() && !b.is_subset_of(window)) {
        return Err(GeomError::WindowTooSmall);
    }

    let mut segments: Vec<(Point<S>, Point<S>)> = window.edges();
    let mut points: BTreeSet<Point<S>> = window.vertices().into_iter().collect();
    for b in bodies {
        segments.extend(b.edges());
        points.extend(b.vertices());
    }
    segments.sort();
    segments.dedup();

    let boxes: Vec<_> = segments
        .iter()
        .map(|(a, b)| {
            (
                S::min_of(&a.x, &b.x),
                S::max_of(&a.x, &b.x),
                S::min_of(&a.y, &b.y),
                S::max_of(&a.y, &b.y),
            )
        })
        .collect();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi.1 < bj.0 || bj.1 < bi.0 || bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            let (a, b) = &segments[i];
            let (c, d) = &segments[j];
            if let Some(p) = proper_crossing(a, b, c, d) {
                points.insert(p);
            }
        }
    }

    // Split every boundary segment at the vertices lying on it.
    let mut elementary: BTreeSet<(Point<S>, Point<S>)> = BTreeSet::new();
    for (a, b) in &segments {
        let on: Vec<&Point<S>> = points.iter().filter(|p| on_segment(a, b, p)).collect();
        for w in on.windows(2) {
            elementary.insert((w[0].clone(), w[1].clone()));
        }
    }
    let edges: Vec<(Point<S>, Point<S>)> = elementary.into_iter().collect();

    let mut xs: Vec<S> = points.iter().map(|p| p.x.clone()).collect();
    xs.dedup();
    let slab_of = |x: &S| xs.binary_search(x).expect("vertex abscissa");
    let span: Vec<Option<(usize, usize)>> = edges
        .iter()
        .map(|(a, b)| (a.x != b.x).then(|| (slab_of(&a.x), slab_of(&b.x))))
        .collect();

    let mut cells: Vec<(CellKind, Point<S>, ConvexBody<S>)> = Vec::new();
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut slab_edge_cell: HashMap<(usize, usize), usize> = HashMap::new();
    // per slab: spanning edge ids sorted bottom to top, and trapezoid cell ids
    let mut slab_order: Vec<Vec<usize>> = Vec::new();
    let mut slab_traps: Vec<Vec<usize>> = Vec::new();

    for j in 0..xs.len().saturating_sub(1) {
        let (x0, x1) = (&xs[j], &xs[j + 1]);
        let xm = (x0.clone() + x1.clone()).half();
        let mut spanning: Vec<(S, usize)> = span
            .iter()
            .enumerate()
            .filter_map(|(e, s)| match s {
                Some((lo, hi)) if *lo <= j && j < *hi => Some((y_at(&edges[e].0, &edges[e].1, &xm), e)),
                _ => None,
            })
            .collect();
        spanning.sort();
        for (y, e) in &spanning {
            let (a, b) = &edges[*e];
            let closure = ConvexBody::segment(
                Point::new(x0.clone(), y_at(a, b, x0)),
                Point::new(x1.clone(), y_at(a, b, x1)),
            );
            slab_edge_cell.insert((*e, j), cells.len());
            cells.push((CellKind::SlabEdge, Point::new(xm.clone(), y.clone()), closure));
        }
        let mut traps = Vec::new();
        for w in spanning.windows(2) {
            let (ylo, lo) = &w[0];
            let (yhi, hi) = &w[1];
            let (la, lb) = &edges[*lo];
            let (ha, hb) = &edges[*hi];
            let closure = super::body::hull([
                Point::new(x0.clone(), y_at(la, lb, x0)),
                Point::new(x1.clone(), y_at(la, lb, x1)),
                Point::new(x1.clone(), y_at(ha, hb, x1)),
                Point::new(x0.clone(), y_at(ha, hb, x0)),
            ]);
            traps.push(cells.len());
            cells.push((
                CellKind::Trapezoid,
                Point::new(xm.clone(), (ylo.clone() + yhi.clone()).half()),
                closure,
            ));
        }
        slab_order.push(spanning.into_iter().map(|(_, e)| e).collect());
        slab_traps.push(traps);
    }

    let vertical: HashMap<(Point<S>, Point<S>), usize> = edges
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| a.x == b.x)
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let mut true_vertex_cell: Vec<(usize, Point<S>)> = Vec::new();
    let mut vertical_edge_cell: HashMap<usize, usize> = HashMap::new();

    // Trapezoid of slab `s` whose side on the wall `x` spans `[ylo, yhi]`.
    let trap_at = |s: usize, x: &S, ylo: &S, yhi: &S| -> Option<usize> {
        let order = &slab_order[s];
        for t in 0..order.len().saturating_sub(1) {
            let (la, lb) = &edges[order[t]];
            let (ha, hb) = &edges[order[t + 1]];
            let y0 = y_at(la, lb, x);
            let y1 = y_at(ha, hb, x);
            if y0 < y1 && y0 <= *ylo && *yhi <= y1 {
                return Some(slab_traps[s][t]);
            }
        }
        None
    };

    for (j, x) in xs.iter().enumerate() {
        // (y, Some(edge)) for crossings, (y, None) for true vertices
        let mut wall: Vec<(S, Option<usize>)> = points
            .iter()
            .filter(|p| p.x == *x)
            .map(|p| (p.y.clone(), None))
            .collect();
        for (e, s) in span.iter().enumerate() {
            if let Some((lo, hi)) = s {
                if *lo < j && j < *hi {
                    wall.push((y_at(&edges[e].0, &edges[e].1, x), Some(e)));
                }
            }
        }
        wall.sort();
        for (y, crossing) in &wall {
            let id = cells.len();
            let p = Point::new(x.clone(), y.clone());
            cells.push((CellKind::Vertex, p.clone(), ConvexBody::Point(p.clone())));
            match crossing {
                Some(e) => {
                    links.push((id, slab_edge_cell[&(*e, j - 1)]));
                    links.push((id, slab_edge_cell[&(*e, j)]));
                }
                None => true_vertex_cell.push((id, p)),
            }
        }
        for w in wall.windows(2) {
            let p = Point::new(x.clone(), w[0].0.clone());
            let q = Point::new(x.clone(), w[1].0.clone());
            let id = cells.len();
            cells.push((
                CellKind::WallPiece,
                p.midpoint(&q),
                ConvexBody::segment(p.clone(), q.clone()),
            ));
            if let Some(&e) = vertical.get(&(p.clone(), q.clone())) {
                vertical_edge_cell.insert(e, id);
                continue;
            }
            if j > 0 {
                if let Some(t) = trap_at(j - 1, x, &p.y, &q.y) {
                    links.push((id, t));
                }
            }
            if j + 1 < xs.len() {
                if let Some(t) = trap_at(j, x, &p.y, &q.y) {
                    links.push((id, t));
                }
            }
        }
    }

    let mut uf = UnionFind::new(cells.len());
    for (a, b) in links {
        uf.union(a, b);
    }

    let mut owner: Vec<Option<Owner>> = vec![None; cells.len()];
    let mut vertices = Vec::new();
    for (id, p) in true_vertex_cell {
        owner[id] = Some(Owner::Vertex(vertices.len()));
        vertices.push(ArrVertex {
            incidence: incidence_of(bodies, &p),
            point: p,
        });
    }
    let mut root_owner: HashMap<usize, Owner> = HashMap::new();
    let mut arr_edges = Vec::new();
    for (e, (a, b)) in edges.iter().enumerate() {
        let idx = arr_edges.len();
        let sample = a.midpoint(b);
        arr_edges.push(ArrEdge {
            a: a.clone(),
            b: b.clone(),
            incidence: incidence_of(bodies, &sample),
            sample,
        });
        let cell = match span[e] {
            Some((lo, _)) => slab_edge_cell[&(e, lo)],
            None => vertical_edge_cell[&e],
        };
        root_owner.insert(uf.find(cell), Owner::Edge(idx));
    }
    let mut faces: Vec<ArrFace<S>> = Vec::new();
    for (id, (kind, sample, _)) in cells.iter().enumerate() {
        if *kind != CellKind::Trapezoid {
            continue;
        }
        let root = uf.find(id);
        if let Some(Owner::Face(f)) = root_owner.get(&root) {
            faces[*f].cells.push(id);
            continue;
        }
        root_owner.insert(root, Owner::Face(faces.len()));
        faces.push(ArrFace {
            sample: sample.clone(),
            incidence: incidence_of(bodies, sample),
            cells: vec![id],
        });
    }

    let out_cells: Vec<Cell<S>> = cells
        .into_iter()
        .enumerate()
        .map(|(id, (kind, sample, closure))| {
            let own = owner[id]
                .or_else(|| root_owner.get(&uf.find(id)).copied())
                .unwrap_or_else(|| panic!("arrangement cell {id} ({kind:?} at {sample}) has no owner"));
            if let (Owner::Face(f), CellKind::WallPiece) = (own, kind) {
                faces[f].cells.push(id);
            }
            Cell {
                incidence: incidence_of(bodies, &sample),
                kind,
                sample,
                closure,
                owner: own,
            }
        })
        .collect();
    for f in &mut faces {
        f.cells.sort_unstable();
    }

    let (_, hi) = window.bbox().expect("window is a polygon");
    let outer_sample = Point::new(hi.x + S::one(), hi.y + S::one());
    Ok(Arrangement {
        bodies: bodies.to_vec(),
        window: window.clone(),
        vertices,
        edges: arr_edges,
        faces,
        cells: out_cells,
        outer_incidence: incidence_of(bodies, &outer_sample),
        outer_sample,
    })
}

/// The default window: bounding box of all bounded bodies inflated by one
/// (a unit square around the origin when there are none).
pub fn default_window<'a, S: Scalar + 'a>(bodies: impl IntoIterator<Item = &'a ConvexBody<S>>) -> ConvexBody<S> {
    let mut lo: Option<Point<S>> = None;
    let mut hi: Option<Point<S>> = None;
    for b in bodies {
        if let Some((l, h)) = b.bbox() {
            lo = Some(match lo {
                None => l,
                Some(c) => Point::new(S::min_of(&c.x, &l.x), S::min_of(&c.y, &l.y)),
            });
            hi = Some(match hi {
                None => h,
                Some(c) => Point::new(S::max_of(&c.x, &h.x), S::max_of(&c.y, &h.y)),
            });
        }
    }
    let one = S::one();
    match (lo, hi) {
        (Some(l), Some(h)) => ConvexBody::rect(l.x - one.clone(), l.y - one.clone(), h.x + one.clone(), h.y + one),
        _ => ConvexBody::rect(-one.clone(), -one.clone(), one.clone(), one),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::from_ints(x, y)
    }

    fn check_incidence(arr: &Arrangement<Rational>) {
        for c in &arr.cells {
            for (i, b) in arr.bodies.iter().enumerate() {
                assert_eq!(b.contains(&c.sample), c.incidence.contains(&i));
            }
            assert!(
                c.closure.relint_contains(&c.sample),
                "{:?} sample {} not inside {}",
                c.kind,
                c.sample,
                c.closure
            );
            // indicator constancy: every vertex of the closure is in the
            // body whenever the open cell is
            for &i in &c.incidence {
                assert!(c.closure.is_subset_of(&arr.bodies[i]));
            }
        }
    }

    #[test]
    fn single_square() {
        let sq = ConvexBody::rect_ints(0, 0, 1, 1);
        let window = ConvexBody::rect_ints(-5, -5, 5, 5);
        let arr = build_arrangement(&[sq], &window).unwrap();
        check_incidence(&arr);
        // 4 square vertices + 4 window corners; 4 + 4 edges; inside and ring
        assert_eq!(arr.vertices.len(), 8);
        assert_eq!(arr.edges.len(), 8);
        assert_eq!(arr.faces.len(), 2);
        let inside: Vec<_> = arr.faces.iter().filter(|f| f.incidence == vec![0]).collect();
        assert_eq!(inside.len(), 1);
        assert_eq!(arr.edges.iter().filter(|e| e.incidence == vec![0]).count(), 4);
        assert!(arr.outer_incidence.is_empty());
    }

    #[test]
    fn overlapping_rectangles_vertices_match_brute_force() {
        let c1 = ConvexBody::rect_ints(0, 0, 2, 1);
        let c2 = ConvexBody::rect_ints(1, 0, 3, 1);
        let window = ConvexBody::rect_ints(-1, -1, 4, 2);
        let bodies = vec![c1.clone(), c2.clone()];
        let arr = build_arrangement(&bodies, &window).unwrap();
        check_incidence(&arr);
        // brute force: all endpoints plus all pairwise edge intersection points
        let mut segs = window.edges();
        segs.extend(c1.edges());
        segs.extend(c2.edges());
        let mut brute: BTreeSet<Point<Rational>> = BTreeSet::new();
        for (a, b) in &segs {
            brute.insert(a.clone());
            brute.insert(b.clone());
        }
        for s in &segs {
            for t in &segs {
                let i = ConvexBody::segment(s.0.clone(), s.1.clone())
                    .intersect(&ConvexBody::segment(t.0.clone(), t.1.clone()));
                brute.extend(i.vertices());
            }
        }
        let got: BTreeSet<Point<Rational>> = arr.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(got, brute);
        assert!(got.contains(&pt(1, 0)) && got.contains(&pt(2, 1)));
        // faces: left part, overlap, right part, outside ring
        assert_eq!(arr.faces.len(), 4);
    }

    #[test]
    fn star_center_is_vertex_of_all_bodies() {
        let o = pt(0, 0);
        let bodies = vec![
            ConvexBody::segment(o.clone(), pt(1, 0)),
            ConvexBody::segment(o.clone(), pt(0, 1)),
            ConvexBody::segment(o.clone(), pt(-1, -1)),
            ConvexBody::Point(o.clone()),
        ];
        let window = default_window(&bodies);
        let arr = build_arrangement(&bodies, &window).unwrap();
        check_incidence(&arr);
        let v = arr.vertices.iter().find(|v| v.point == o).unwrap();
        assert_eq!(v.incidence, vec![0, 1, 2, 3]);
        // a single face: the segments do not enclose anything
        assert_eq!(arr.faces.len(), 1);
    }

    #[test]
    fn crossing_segments_create_vertex() {
        let bodies = vec![
            ConvexBody::segment(pt(0, 0), pt(2, 2)),
            ConvexBody::segment(pt(0, 2), pt(2, 0)),
        ];
        let arr = build_arrangement(&bodies, &default_window(&bodies)).unwrap();
        check_incidence(&arr);
        let v = arr.vertices.iter().find(|v| v.point == pt(1, 1)).unwrap();
        assert_eq!(v.incidence, vec![0, 1]);
        assert_eq!(arr.edges.iter().filter(|e| !e.incidence.is_empty()).count(), 4);
    }

    #[test]
    fn errors() {
        let w = ConvexBody::rect_ints(0, 0, 1, 1);
        assert_eq!(build_arrangement::<Rational>(&[], &w).unwrap_err(), GeomError::NoBodies);
        let big = ConvexBody::rect_ints(0, 0, 3, 3);
        assert_eq!(build_arrangement(&[big], &w).unwrap_err(), GeomError::WindowTooSmall);
        let full = build_arrangement(&[ConvexBody::FullPlane], &w).unwrap();
        assert_eq!(full.outer_incidence, vec![0]);
    }
}
