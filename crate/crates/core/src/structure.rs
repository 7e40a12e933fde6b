//! Supports, convex covers, invisibility sets, and reconstruction of a
//! monotone valuation as a signed sum with unit weights.

use thiserror::Error;

use crate::admissibility::certify_monotone;
use crate::geom::{build_arrangement, default_window, hull, Arrangement, ConvexBody, GeomError, Point};
use crate::line::{classify, fg_from_oracle};
use crate::scalar::Scalar;
use crate::valuation::{evaluate, singleton_value, Representation, ValuationError, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("valuation is not monotone")]
    NotMonotone,
    #[error("valuation takes the negative value {value} at {point}")]
    Negative { point: String, value: String },
    #[error("representation has unbounded bodies")]
    Unbounded,
    #[error("greedy convex cover left {} cells uncovered", leftover.len())]
    IncompleteCover {
        components: Vec<String>,
        leftover: Vec<String>,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl From<GeomError> for StructureError {
    fn from(e: GeomError) -> Self {
        StructureError::Valuation(e.into())
    }
}

/// Arrangement cells tagged with singleton values.
#[derive(Debug, Clone)]
pub struct SupportRegion<S> {
    pub arrangement: Arrangement<S>,
    pub values: Vec<S>,
    pub in_support: Vec<bool>,
    /// Value on the unbounded region outside the window.
    pub outer_value: S,
    /// Whether every cell on the closure of the support is in the support.
    pub closed: bool,
    pub warnings: Vec<String>,
}

fn boxes_meet<S: Scalar>(a: &ConvexBody<S>, b: &ConvexBody<S>) -> bool {
    match (a.bbox(), b.bbox()) {
        (Some((al, ah)), Some((bl, bh))) => al.x <= bh.x && bl.x <= ah.x && al.y <= bh.y && bl.y <= ah.y,
        _ => false,
    }
}

impl<S: Scalar> SupportRegion<S> {
    pub fn max_value(&self) -> S {
        self.values
            .iter()
            .chain(std::iter::once(&self.outer_value))
            .max()
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn min_value(&self) -> S {
        self.values
            .iter()
            .chain(std::iter::once(&self.outer_value))
            .min()
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn support_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.values.len()).filter(|&i| self.in_support[i])
    }

    pub fn is_empty(&self) -> bool {
        !self.in_support.iter().any(|b| *b) && self.outer_value < S::one()
    }

    /// Whether the bounded convex body `h` lies inside the support: it may not
    /// meet any open cell of value below 1.
    pub fn contains_body(&self, h: &ConvexBody<S>) -> bool {
        if h.is_empty() {
            return true;
        }
        if !h.is_bounded() {
            return false;
        }
        if self.outer_value < S::one() && !h.is_subset_of(&self.arrangement.window) {
            return false;
        }
        for (i, c) in self.arrangement.cells.iter().enumerate() {
            if self.in_support[i] || !boxes_meet(h, &c.closure) {
                continue;
            }
            let meet = h.intersect(&c.closure);
            if let Some(p) = meet.centroid() {
                if c.closure.relint_contains(&p) {
                    return false;
                }
            }
        }
        true
    }
}

/// Tags every arrangement cell with `phi({x})` and flags the support
/// `{x : phi({x}) >= 1}`. With no terms the window alone is arranged.
pub fn support<S: Scalar>(
    rep: &Representation<S>,
    window: Option<&ConvexBody<S>>,
) -> Result<SupportRegion<S>, StructureError> {
    let mut bodies: Vec<ConvexBody<S>> = rep.bodies().cloned().collect();
    let window = match window {
        Some(w) => w.clone(),
        None => default_window(&bodies),
    };
    if bodies.is_empty() {
        bodies.push(window.clone());
    }
    let arrangement = build_arrangement(&bodies, &window)?;
    let values: Vec<S> = arrangement
        .cells
        .iter()
        .map(|c| singleton_value(rep, &c.sample))
        .collect();
    let in_support: Vec<bool> = values.iter().map(|v| *v >= S::one()).collect();
    let outer_value = singleton_value(rep, &arrangement.outer_sample);
    let mut region = SupportRegion {
        arrangement,
        values,
        in_support,
        outer_value,
        closed: true,
        warnings: Vec::new(),
    };
    let cells = &region.arrangement.cells;
    for (i, c) in cells.iter().enumerate() {
        if !region.in_support[i] || c.dim() == 0 {
            continue;
        }
        for (j, e) in cells.iter().enumerate() {
            if region.in_support[j] || e.dim() >= c.dim() || !c.closure.contains(&e.sample) {
                continue;
            }
            region.closed = false;
            region.warnings.push(format!(
                "point {} of value {} lies on the closure of the support",
                e.sample, region.values[j]
            ));
        }
    }
    region.warnings.sort();
    region.warnings.dedup();
    Ok(region)
}

#[derive(Debug, Clone)]
pub struct ConvexComponentCover<S> {
    pub components: Vec<ConvexBody<S>>,
    pub complete: bool,
    /// Support cells no component contains.
    pub leftover: Vec<usize>,
}

/// Greedy cover of the support by convex subsets.
///
/// Input bodies lying inside the support are taken first. Every cell still
/// uncovered then seeds a component that absorbs touching support cells
/// while the convex hull stays inside the support.
pub fn convex_components<S: Scalar>(region: &SupportRegion<S>) -> ConvexComponentCover<S> {
    greedy_cover(region, true)
}

fn greedy_cover<S: Scalar>(region: &SupportRegion<S>, use_bodies: bool) -> ConvexComponentCover<S> {
    let cells = &region.arrangement.cells;
    let support: Vec<usize> = region.support_cells().collect();
    let mut covered = vec![false; cells.len()];
    let mut components: Vec<ConvexBody<S>> = Vec::new();
    let mark = |comp: &ConvexBody<S>, covered: &mut Vec<bool>| -> bool {
        let mut any = false;
        for &i in &support {
            if !covered[i] && cells[i].closure.is_subset_of(comp) {
                covered[i] = true;
                any = true;
            }
        }
        any
    };

    let mut candidates: Vec<&ConvexBody<S>> = region.arrangement.bodies.iter().filter(|b| b.is_bounded()).collect();
    candidates.sort_by_key(|b| std::cmp::Reverse(b.dimension()));
    candidates.dedup();
    for b in candidates.into_iter().filter(|_| use_bodies) {
        if region.contains_body(b) && mark(b, &mut covered) {
            components.push(b.clone());
        }
    }

    let mut seeds = support.clone();
    seeds.sort_by_key(|&i| std::cmp::Reverse(cells[i].dim()));
    let mut leftover = Vec::new();
    for seed in seeds {
        if covered[seed] {
            continue;
        }
        let mut cur = cells[seed].closure.clone();
        if !region.contains_body(&cur) {
            leftover.push(seed);
            covered[seed] = true;
            continue;
        }
        loop {
            let mut grown = false;
            for &i in &support {
                let cl = &cells[i].closure;
                if cl.is_subset_of(&cur) || !cl.intersects(&cur) {
                    continue;
                }
                let h = hull(cur.vertices().into_iter().chain(cl.vertices()));
                if region.contains_body(&h) {
                    cur = h;
                    grown = true;
                }
            }
            if !grown {
                break;
            }
        }
        mark(&cur, &mut covered);
        components.push(cur);
    }
    ConvexComponentCover {
        complete: leftover.is_empty(),
        components,
        leftover,
    }
}

/// Checks that every point has value at least 1 and that every open segment
/// between two of them passes through a point of value 0.
///
/// Along a segment the value only changes where it enters or leaves a body,
/// so the entry and exit parameters and the midpoints between them suffice.
pub fn invisibility_check<S: Scalar>(rep: &Representation<S>, points: &[Point<S>]) -> Verdict<S> {
    for p in points {
        let v = singleton_value(rep, p);
        if v < S::one() {
            return Verdict::fail(Witness::LowValue {
                point: p.clone(),
                value: v,
            });
        }
    }
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if !has_zero_between(rep, x, y) {
                return Verdict::fail(Witness::Visible {
                    a: x.clone(),
                    b: y.clone(),
                });
            }
        }
    }
    Verdict::pass()
}

fn has_zero_between<S: Scalar>(rep: &Representation<S>, x: &Point<S>, y: &Point<S>) -> bool {
    if x == y {
        return false;
    }
    let d = y.sub(x);
    let len = d.norm_sq();
    let seg = ConvexBody::segment(x.clone(), y.clone());
    let mut ts = vec![S::zero(), S::one()];
    for b in rep.bodies() {
        for p in seg.intersect(b).vertices() {
            ts.push(p.sub(x).dot(&d) / len.clone());
        }
    }
    ts.sort();
    ts.dedup();
    let at = |t: &S| x.add(&d.scale(t));
    let mut probes: Vec<S> = ts.windows(2).map(|w| (w[0].clone() + w[1].clone()).half()).collect();
    probes.extend(ts.iter().filter(|t| t.is_positive() && **t < S::one()).cloned());
    probes.iter().any(|t| singleton_value(rep, &at(t)).is_zero())
}

/// For an invisibility set of `4^n` or more points, `phi(conv P) > n / 2`.
pub fn invis_bound_probe<S: Scalar>(
    rep: &Representation<S>,
    points: &[Point<S>],
) -> Result<Verdict<S>, StructureError> {
    if points.len() < 2 {
        return Err(StructureError::Precondition("need at least two points".into()));
    }
    if !invisibility_check(rep, points).holds {
        return Err(StructureError::Precondition(
            "points do not form an invisibility set".into(),
        ));
    }
    let mut n = 0u32;
    while 4usize.saturating_pow(n + 1) <= points.len() {
        n += 1;
    }
    let hull_value = evaluate(rep, &hull(points.iter().cloned()));
    if hull_value.clone() * S::two() > S::from_int(n as i64) {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(Witness::Bound { n, hull_value }))
    }
}

fn require_monotone<S: Scalar>(rep: &Representation<S>) -> Result<(), StructureError> {
    rep.require_integral()?;
    if !rep.is_bounded() {
        return Err(StructureError::Unbounded);
    }
    let monotone = match rep.dim() {
        1 => {
            let f = classify(&fg_from_oracle(rep));
            f.integer_valued && f.monotone
        }
        _ => certify_monotone(rep)?.0.holds,
    };
    if monotone {
        Ok(())
    } else {
        Err(StructureError::NotMonotone)
    }
}

/// Rebuilds a monotone integer-valued representation as a sum of `±1`
/// hit-indicators.
///
/// With `F` the support and `K_1..K_l` a convex cover of it,
/// `phi = chi(· ∩ F) + sum over nonempty I of (-1)^(|I|-1) (phi - chi)(· ∩ K_I)`
/// on singletons, where `K_I` is the intersection of the chosen components.
/// The first part expands by inclusion-exclusion over the same subsets and
/// the second recurses with a smaller maximum.
pub fn canonicalize<S: Scalar>(
    rep: &Representation<S>,
    window: Option<&ConvexBody<S>>,
) -> Result<Representation<S>, StructureError> {
    require_monotone(rep)?;
    let mut terms = Vec::new();
    if !rep.is_empty() {
        let region = support(rep, window)?;
        let bound = match window {
            Some(w) => evaluate(rep, w),
            None => evaluate(rep, &region.arrangement.window),
        };
        if region.max_value() > bound {
            return Err(StructureError::NotMonotone);
        }
        canon(rep, Some(region), S::one(), &mut terms)?;
    }
    Ok(unit_terms(rep.dim(), terms))
}

fn unit_terms<S: Scalar>(dim: u8, terms: Vec<(S, ConvexBody<S>)>) -> Representation<S> {
    let mut rep = Representation::empty(dim);
    for (w, b) in terms {
        rep.push(w, b);
    }
    rep.merged().expanded().expect("unit weights are integral")
}

fn canon<S: Scalar>(
    rep: &Representation<S>,
    region: Option<SupportRegion<S>>,
    sign: S,
    out: &mut Vec<(S, ConvexBody<S>)>,
) -> Result<(), StructureError> {
    if rep.is_empty() {
        return Ok(());
    }
    let region = match region {
        Some(r) => r,
        None => support(rep, None)?,
    };
    let min = region.min_value();
    if min.is_negative() {
        let i = (0..region.values.len()).find(|&i| region.values[i] == min);
        let point = i
            .map(|i| region.arrangement.cells[i].sample.to_string())
            .unwrap_or_default();
        return Err(StructureError::Negative {
            point,
            value: min.to_string(),
        });
    }
    if region.max_value() < S::one() {
        return Ok(());
    }
    let cover = convex_components(&region);
    if !cover.complete {
        return Err(StructureError::IncompleteCover {
            components: cover.components.iter().map(|c| c.to_string()).collect(),
            leftover: cover
                .leftover
                .iter()
                .map(|&i| region.arrangement.cells[i].closure.to_string())
                .collect(),
        });
    }
    subsets(rep, &cover.components, 0, None, sign, out)
}

/// Depth-first walk over subsets with nonempty intersection.
fn subsets<S: Scalar>(
    rep: &Representation<S>,
    comps: &[ConvexBody<S>],
    start: usize,
    current: Option<&ConvexBody<S>>,
    sign: S,
    out: &mut Vec<(S, ConvexBody<S>)>,
) -> Result<(), StructureError> {
    for i in start..comps.len() {
        let meet = match current {
            None => comps[i].clone(),
            Some(c) => c.intersect(&comps[i]),
        };
        if meet.is_empty() {
            continue;
        }
        out.push((sign.clone(), meet.clone()));
        let mut rest = rep.restrict(&meet);
        rest.push(-S::one(), meet.clone());
        canon(&rest.merged(), None, sign.clone(), out)?;
        subsets(rep, comps, i + 1, Some(&meet), -sign.clone(), out)?;
    }
    Ok(())
}

/// Canonicalizes separately on unit grid squares, their edges, and their
/// corners (shifted by `offset`) and recombines as
/// `sum over squares - sum over edges + sum over corners`.
pub fn tile_globalize<S: Scalar>(
    rep: &Representation<S>,
    offset: &Point<S>,
) -> Result<Representation<S>, StructureError> {
    require_monotone(rep)?;
    let mut lo: Option<(S, S)> = None;
    let mut hi: Option<(S, S)> = None;
    for b in rep.bodies() {
        let (l, h) = b.bbox().ok_or(StructureError::Unbounded)?;
        let l = (
            (l.x - offset.x.clone()).floor_value(),
            (l.y - offset.y.clone()).floor_value(),
        );
        let h = (
            (h.x - offset.x.clone()).floor_value(),
            (h.y - offset.y.clone()).floor_value(),
        );
        lo = Some(match lo {
            None => l,
            Some(c) => (S::min_of(&c.0, &l.0), S::min_of(&c.1, &l.1)),
        });
        hi = Some(match hi {
            None => h,
            Some(c) => (S::max_of(&c.0, &h.0), S::max_of(&c.1, &h.1)),
        });
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Ok(Representation::empty(rep.dim()));
    };
    let one = S::one();
    // bodies may touch the lines through `lo`, which also bound the squares below
    let lo = (lo.0 - one.clone(), lo.1 - one.clone());
    let corner = |i: &S, j: &S| Point::new(i.clone() + offset.x.clone(), j.clone() + offset.y.clone());
    let mut squares = Vec::new();
    let mut edges = Vec::new();
    let mut corners = Vec::new();
    let mut i = lo.0.clone();
    while i <= hi.0 {
        let mut j = lo.1.clone();
        while j <= hi.1 {
            let p = corner(&i, &j);
            let px = corner(&(i.clone() + one.clone()), &j);
            let py = corner(&i, &(j.clone() + one.clone()));
            let pxy = corner(&(i.clone() + one.clone()), &(j.clone() + one.clone()));
            squares.push(hull([p.clone(), px.clone(), py.clone(), pxy.clone()]));
            edges.extend([
                ConvexBody::segment(p.clone(), px.clone()),
                ConvexBody::segment(p.clone(), py.clone()),
                ConvexBody::segment(px.clone(), pxy.clone()),
                ConvexBody::segment(py.clone(), pxy.clone()),
            ]);
            corners.extend([p, px, py, pxy].map(ConvexBody::Point));
            j = j + one.clone();
        }
        i = i + one.clone();
    }
    edges.sort_by_key(|e| e.vertices());
    edges.dedup();
    corners.sort_by_key(|c| c.vertices());
    corners.dedup();

    let mut terms = Vec::new();
    let pieces = squares
        .iter()
        .map(|q| (one.clone(), q))
        .chain(edges.iter().map(|e| (-one.clone(), e)))
        .chain(corners.iter().map(|v| (one.clone(), v)));
    for (sign, piece) in pieces {
        let part = rep.restrict(piece).merged();
        if part.is_empty() {
            continue;
        }
        let region = support(&part, None)?;
        canon(&part, Some(region), sign, &mut terms)?;
    }
    Ok(unit_terms(rep.dim(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::equal;
    use crate::Rational;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::from_ints(x, y)
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn star() -> Representation<Rational> {
        let o = pt(0, 0);
        Representation::planar([
            (r(1), ConvexBody::segment(o.clone(), pt(1, 0))),
            (r(1), ConvexBody::segment(o.clone(), pt(0, 1))),
            (r(1), ConvexBody::segment(o.clone(), pt(-1, -1))),
            (r(-1), ConvexBody::Point(o)),
        ])
        .unwrap()
    }

    fn rep(terms: Vec<(i64, ConvexBody<Rational>)>) -> Representation<Rational> {
        Representation::planar(terms.into_iter().map(|(w, b)| (r(w), b))).unwrap()
    }

    fn all_unit(rep: &Representation<Rational>) -> bool {
        rep.terms().iter().all(|t| t.weight == r(1) || t.weight == r(-1))
    }

    #[test]
    fn star_support_and_cover() {
        let region = support(&star(), None).unwrap();
        assert!(region.closed);
        assert_eq!(region.max_value(), r(2));
        let o = region
            .arrangement
            .cells
            .iter()
            .position(|c| c.sample == pt(0, 0))
            .unwrap();
        assert_eq!(region.values[o], r(2));
        let cover = convex_components(&region);
        assert!(cover.complete);
        assert_eq!(cover.components.len(), 3);
        for c in &cover.components {
            assert!(matches!(c, ConvexBody::Segment(..)));
        }
    }

    #[test]
    fn empty_supports() {
        let none = Representation::<Rational>::empty(2);
        assert!(support(&none, None).unwrap().is_empty());
        let sq = ConvexBody::rect_ints(0, 0, 1, 1);
        let cancel = rep(vec![(1, sq.clone()), (-1, sq)]);
        assert!(support(&cancel, None).unwrap().is_empty());
    }

    #[test]
    fn covers_of_simple_supports() {
        let two = rep(vec![
            (1, ConvexBody::rect_ints(0, 0, 1, 1)),
            (1, ConvexBody::rect_ints(3, 0, 4, 1)),
        ]);
        let cover = convex_components(&support(&two, None).unwrap());
        assert!(cover.complete);
        assert_eq!(
            cover.components,
            vec![ConvexBody::rect_ints(0, 0, 1, 1), ConvexBody::rect_ints(3, 0, 4, 1)]
        );

        let a = ConvexBody::rect_ints(0, 0, 2, 1);
        let b = ConvexBody::rect_ints(0, 0, 1, 2);
        let ell = rep(vec![
            (1, a.clone()),
            (1, b.clone()),
            (-1, a.intersect(&b)),
            (1, ConvexBody::Point(pt(1, 1))),
        ]);
        let region = support(&ell, None).unwrap();
        let cover = convex_components(&region);
        assert!(cover.complete);
        for c in &cover.components {
            assert!(region.contains_body(c));
        }
        assert!(!region.contains_body(&ConvexBody::rect_ints(0, 0, 2, 2)));
    }

    #[test]
    fn greedy_growth_without_body_candidates() {
        // an L-shaped support assembled from unit squares
        let pieces = rep(vec![
            (1, ConvexBody::rect_ints(0, 0, 1, 1)),
            (1, ConvexBody::rect_ints(1, 0, 2, 1)),
            (1, ConvexBody::rect_ints(0, 1, 1, 2)),
            (-1, ConvexBody::segment(pt(1, 0), pt(1, 1))),
            (-1, ConvexBody::segment(pt(0, 1), pt(1, 1))),
            (1, ConvexBody::Point(pt(1, 1))),
        ]);
        let region = support(&pieces, None).unwrap();
        let cover = greedy_cover(&region, false);
        assert!(cover.complete);
        assert_eq!(cover.components.len(), 2);
        for c in &cover.components {
            assert!(region.contains_body(c));
            assert_eq!(c.dimension(), Some(2));
        }
        let out = canonicalize(&pieces, None).unwrap();
        assert!(equal(&pieces, &out, None).unwrap().holds);
        assert!(all_unit(&out));
    }

    #[test]
    fn canonicalize_examples() {
        let sq = ConvexBody::rect_ints(0, 0, 1, 1);
        let one = rep(vec![(1, ConvexBody::rect_ints(0, 0, 5, 5))]);
        assert_eq!(canonicalize(&one, None).unwrap(), one);

        let two = rep(vec![(2, sq.clone())]);
        let out = canonicalize(&two, None).unwrap();
        assert_eq!(out, rep(vec![(1, sq.clone()), (1, sq.clone())]));

        let c1 = ConvexBody::rect_ints(0, 0, 2, 1);
        let c2 = ConvexBody::rect_ints(1, 0, 3, 1);
        let single = rep(vec![(1, ConvexBody::rect_ints(0, 0, 3, 1))]);
        let three = rep(vec![(1, c1.clone()), (1, c2.clone()), (-1, c1.intersect(&c2))]);
        for input in [single, three] {
            let out = canonicalize(&input, None).unwrap();
            assert!(equal(&input, &out, None).unwrap().holds);
            assert!(all_unit(&out));
        }

        let s = star();
        let out = canonicalize(&s, None).unwrap();
        assert!(equal(&s, &out, None).unwrap().holds);
        assert!(all_unit(&out));
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        let punctured = Representation::planar([
            (r(1), ConvexBody::rect_ints(0, 0, 1, 1)),
            (r(-1), ConvexBody::Point(Point::new(r(1) / r(2), r(1) / r(2)))),
        ])
        .unwrap();
        assert_eq!(canonicalize(&punctured, None), Err(StructureError::NotMonotone));
        assert_eq!(
            canonicalize(&Representation::<Rational>::euler(2), None),
            Err(StructureError::Unbounded)
        );
    }

    #[test]
    fn tiles() {
        let inside = rep(vec![(
            2,
            ConvexBody::rect(r(1) / r(4), r(1) / r(4), r(3) / r(4), r(3) / r(4)),
        )]);
        let out = tile_globalize(&inside, &Point::origin()).unwrap();
        assert_eq!(out, canonicalize(&inside, None).unwrap());

        let straddle = rep(vec![(
            1,
            ConvexBody::rect(r(1) / r(2), r(1) / r(4), r(3) / r(2), r(3) / r(4)),
        )]);
        let out = tile_globalize(&straddle, &Point::origin()).unwrap();
        assert!(equal(&straddle, &out, None).unwrap().holds);
        assert!(out.terms().iter().any(|t| t.weight == r(-1)));
        let shifted = tile_globalize(&straddle, &Point::new(r(1) / r(2), r(0))).unwrap();
        assert!(equal(&straddle, &shifted, None).unwrap().holds);

        let s = star();
        assert!(
            equal(&s, &tile_globalize(&s, &Point::origin()).unwrap(), None)
                .unwrap()
                .holds
        );
        assert!(tile_globalize(&Representation::<Rational>::empty(2), &Point::origin())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn invisibility_examples() {
        let two = rep(vec![
            (1, ConvexBody::rect_ints(0, 0, 1, 1)),
            (1, ConvexBody::rect_ints(2, 0, 3, 1)),
        ]);
        assert!(invisibility_check(&two, &[pt(1, 1), pt(2, 0)]).holds);
        let inside = [
            Point::new(r(1) / r(4), r(1) / r(2)),
            Point::new(r(3) / r(4), r(1) / r(2)),
        ];
        assert!(matches!(
            invisibility_check(&two, &inside).witness,
            Some(Witness::Visible { .. })
        ));
        assert!(matches!(
            invisibility_check(&two, &[pt(1, 1), pt(5, 5)]).witness,
            Some(Witness::LowValue { .. })
        ));
    }

    #[test]
    fn invisibility_bound() {
        let grid =
            |k: i64| -> Vec<Point<Rational>> { (0..k).flat_map(|i| (0..k).map(move |j| pt(2 * i, 2 * j))).collect() };
        for (k, n) in [(2, 1), (4, 2)] {
            let ps = grid(k);
            let rep = Representation::planar(ps.iter().map(|p| (r(1), ConvexBody::Point(p.clone())))).unwrap();
            assert!(invis_bound_probe(&rep, &ps).unwrap().holds);
            assert_eq!(evaluate(&rep, &hull(ps.clone())), r(k * k));
            let _ = n;
        }
        let pair = [pt(0, 0), pt(3, 0)];
        let rep2 = Representation::planar(pair.iter().map(|p| (r(1), ConvexBody::Point(p.clone())))).unwrap();
        assert!(invis_bound_probe(&rep2, &pair).unwrap().holds);
        assert!(invis_bound_probe(&rep2, &pair[..1]).is_err());
    }
}
