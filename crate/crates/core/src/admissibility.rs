//! Monotonicity of planar representations through the normal-cone
//! inequality: certification by finite reduction, explicit counterexamples,
//! and a half-plane sweep probe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{
    build_arrangement, default_window, hull, normal_cone, Cone, ConvexBody, Direction, HalfPlane, Point,
};
use crate::scalar::Scalar;
use crate::valuation::{evaluate, Representation, ValuationError, Verdict, Witness};

/// A point `x` and a direction `u` (`None` for `u = 0`) where the negative
/// cone count exceeds the positive one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFailure<S> {
    pub point: Point<S>,
    pub direction: Option<Direction<S>>,
    pub lhs: S,
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport<S> {
    pub admissible: bool,
    pub failure: Option<ConeFailure<S>>,
    pub checked_points: Vec<Point<S>>,
    /// Directions tested at each entry of `checked_points`.
    pub checked_directions: Vec<usize>,
}

/// `K ⊆ L` with `phi(K) > phi(L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedPair<S> {
    pub inner: ConvexBody<S>,
    pub outer: ConvexBody<S>,
    pub inner_value: S,
    pub outer_value: S,
}

impl<S: Scalar> NestedPair<S> {
    /// Re-checks inclusion and the strict inequality from scratch.
    pub fn verify(&self, rep: &Representation<S>) -> bool {
        self.inner.is_subset_of(&self.outer)
            && evaluate(rep, &self.inner) == self.inner_value
            && evaluate(rep, &self.outer) == self.outer_value
            && self.inner_value > self.outer_value
    }

    pub fn into_witness(self) -> Witness<S> {
        Witness::Nested {
            inner: self.inner,
            outer: self.outer,
            inner_value: self.inner_value,
            outer_value: self.outer_value,
        }
    }
}

fn require_planar_integral<S: Scalar>(rep: &Representation<S>) -> Result<(), ValuationError> {
    if rep.dim() != 2 {
        return Err(ValuationError::BadDimension(rep.dim()));
    }
    rep.require_integral()
}

/// Both sides of the cone inequality at `(x, u)`: total negative weight of
/// cones containing `u`, and total positive weight likewise. For `u = None`
/// a cone contains the origin exactly when its body contains `x`.
pub fn cone_counts<S: Scalar>(rep: &Representation<S>, x: &Point<S>, u: Option<&Direction<S>>) -> (S, S) {
    let mut lhs = S::zero();
    let mut rhs = S::zero();
    for t in rep.terms() {
        if !t.body.contains(x) {
            continue;
        }
        let hit = match u {
            None => true,
            Some(u) => normal_cone(&t.body, x).map(|c| c.contains(u)).unwrap_or(false),
        };
        if hit {
            if t.weight.is_negative() {
                lhs = lhs + t.weight.abs();
            } else {
                rhs = rhs + t.weight.clone();
            }
        }
    }
    (lhs, rhs)
}

/// Boundary directions of all cones at `x`, sorted counterclockwise, each
/// followed by one direction strictly inside the gap to the next.
fn critical_directions<S: Scalar>(cones: &[Cone<S>]) -> Vec<Direction<S>> {
    let mut bd: Vec<Direction<S>> = cones.iter().flat_map(|c| c.boundary_directions()).collect();
    bd.sort_by(|a, b| a.angle_cmp(b));
    bd.dedup();
    if bd.is_empty() {
        return vec![Direction::from_ints(1, 0).unwrap()];
    }
    let n = bd.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        out.push(bd[i].clone());
        out.push(bd[i].strictly_between(&bd[(i + 1) % n]));
    }
    out
}

/// Decides the normal-cone inequality for every `(x, u)`.
///
/// For `u = 0` it suffices to check every arrangement cell. For `u != 0` the
/// negative side vanishes off the boundaries of negative bodies, and all
/// cones are constant along open arrangement edges, so arrangement vertices
/// and one sample per edge on a negative boundary are enough; at each such
/// point the counts are piecewise constant in `u` between cone boundaries.
pub fn check_admissible<S: Scalar>(rep: &Representation<S>) -> Result<AdmissibilityReport<S>, ValuationError> {
    require_planar_integral(rep)?;
    let mut report = AdmissibilityReport {
        admissible: true,
        failure: None,
        checked_points: Vec::new(),
        checked_directions: Vec::new(),
    };
    if rep.is_empty() {
        return Ok(report);
    }
    let bodies: Vec<ConvexBody<S>> = rep.bodies().cloned().collect();
    let arr = build_arrangement(&bodies, &default_window(&bodies))?;

    for x in arr.samples() {
        let (lhs, rhs) = cone_counts(rep, x, None);
        if lhs > rhs {
            report.admissible = false;
            report.failure = Some(ConeFailure {
                point: x.clone(),
                direction: None,
                lhs,
                rhs,
            });
            return Ok(report);
        }
    }

    let on_negative_boundary = |p: &Point<S>| {
        rep.terms()
            .iter()
            .any(|t| t.weight.is_negative() && t.body.boundary_contains(p))
    };
    let points = arr
        .vertices
        .iter()
        .map(|v| &v.point)
        .chain(arr.edges.iter().map(|e| &e.sample))
        .filter(|p| on_negative_boundary(p));
    for x in points {
        let cones: Vec<Cone<S>> = rep
            .bodies()
            .filter(|b| b.contains(x))
            .map(|b| normal_cone(b, x))
            .collect::<Result<_, _>>()?;
        let dirs = critical_directions(&cones);
        report.checked_points.push(x.clone());
        report.checked_directions.push(dirs.len());
        for u in dirs {
            let (lhs, rhs) = cone_counts(rep, x, Some(&u));
            if lhs > rhs {
                report.admissible = false;
                report.failure = Some(ConeFailure {
                    point: x.clone(),
                    direction: Some(u),
                    lhs,
                    rhs,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Monotonicity holds exactly when the negative family is admissible.
pub fn certify_monotone<S: Scalar>(
    rep: &Representation<S>,
) -> Result<(Verdict<S>, AdmissibilityReport<S>), ValuationError> {
    let report = check_admissible(rep)?;
    let verdict = match &report.failure {
        None => Verdict::pass(),
        Some(f) => Verdict::fail(Witness::Cone {
            point: f.point.clone(),
            direction: f.direction.clone(),
            lhs: f.lhs.clone(),
            rhs: f.rhs.clone(),
        }),
    };
    Ok((verdict, report))
}

/// Builds `K ⊆ L` near `x` with `phi(K) > phi(L)` from a cone failure.
///
/// `L` is a square around `x` small enough to miss every body not containing
/// `x`; `K` keeps the part of `L` at height at least `delta` in direction
/// `u`, with `delta` small enough that `K` still meets every incident body
/// reaching into the open half-plane. For `u = 0` the pair is `∅ ⊆ {x}`.
pub fn counterexample_at<S: Scalar>(rep: &Representation<S>, failure: &ConeFailure<S>) -> Option<NestedPair<S>> {
    let x = &failure.point;
    let pair = match &failure.direction {
        None => {
            let outer = ConvexBody::Point(x.clone());
            NestedPair {
                inner: ConvexBody::Empty,
                outer_value: evaluate(rep, &outer),
                outer,
                inner_value: S::zero(),
            }
        }
        Some(u) => {
            let clearance = rep
                .bodies()
                .filter(|b| !b.contains(x))
                .filter_map(|b| b.dist_sq(x))
                .min();
            let mut s = S::one();
            if let Some(d2) = clearance {
                while S::two() * s.clone() * s.clone() >= d2 {
                    s = s.half();
                }
            }
            let outer = ConvexBody::square_around(x, &s);
            let uv = u.vector();
            let base = uv.dot(x);
            let mut delta = outer.max_dot(&uv)? - base.clone();
            for b in rep.bodies().filter(|b| b.contains(x)) {
                if normal_cone(b, x).ok()?.contains(u) {
                    continue;
                }
                let reach = b.intersect(&outer).max_dot(&uv)? - base.clone();
                delta = S::min_of(&delta, &reach);
            }
            let delta = delta.half();
            let cut = HalfPlane {
                normal: u.neg(),
                offset: -(base + delta),
            };
            let inner = outer.clip(&cut).ok()?;
            NestedPair {
                inner_value: evaluate(rep, &inner),
                outer_value: evaluate(rep, &outer),
                inner,
                outer,
            }
        }
    };
    Some(pair)
}

fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng, lo: &S, hi: &S) -> S {
    let den = 16i64;
    let t = S::from_int(rng.gen_range(0..=den)) / S::from_int(den);
    lo.clone() + (hi.clone() - lo.clone()) * t
}

fn random_point<S: Scalar>(rng: &mut ChaCha8Rng, lo: &Point<S>, hi: &Point<S>) -> Point<S> {
    Point::new(random_scalar(rng, &lo.x, &hi.x), random_scalar(rng, &lo.y, &hi.y))
}

fn random_direction<S: Scalar>(rng: &mut ChaCha8Rng) -> Direction<S> {
    loop {
        let (a, b) = (rng.gen_range(-6i64..=6), rng.gen_range(-6i64..=6));
        if let Some(d) = Direction::from_ints(a, b) {
            return d;
        }
    }
}

/// Random nested pairs `K ⊆ L` inside the default window of `rep`.
pub fn random_nested_pair<S: Scalar>(rep: &Representation<S>, rng: &mut ChaCha8Rng) -> (ConvexBody<S>, ConvexBody<S>) {
    let window = default_window(rep.bodies());
    let (lo, hi) = window.bbox().expect("window is bounded");
    let n = rng.gen_range(1..=5);
    let outer = hull((0..n).map(|_| random_point(rng, &lo, &hi)));
    let inner = match rng.gen_range(0..3) {
        0 => {
            let u = random_direction(rng);
            let (a, b) = (outer.min_dot(&u.vector()).unwrap(), outer.max_dot(&u.vector()).unwrap());
            let t = random_scalar(rng, &a, &b);
            outer.clip(&HalfPlane { normal: u, offset: t }).unwrap()
        }
        1 => {
            let vs = outer.vertices();
            ConvexBody::Point(vs[rng.gen_range(0..vs.len())].clone())
        }
        _ => {
            let other = hull((0..4).map(|_| random_point(rng, &lo, &hi)));
            outer.intersect(&other)
        }
    };
    (inner, outer)
}

/// Searches for `K ⊆ L` with `phi(K) > phi(L)`: first the construction at a
/// cone failure, then `budget` random nested pairs drawn from `seed`.
pub fn falsify_monotone<S: Scalar>(
    rep: &Representation<S>,
    budget: u32,
    seed: u64,
) -> Result<Option<NestedPair<S>>, ValuationError> {
    let report = check_admissible(rep)?;
    if let Some(f) = &report.failure {
        if let Some(pair) = counterexample_at(rep, f) {
            if pair.verify(rep) {
                return Ok(Some(pair));
            }
        }
    }
    if rep.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let (inner, outer) = random_nested_pair(rep, &mut rng);
        let (vi, vo) = (evaluate(rep, &inner), evaluate(rep, &outer));
        if vi > vo {
            return Ok(Some(NestedPair {
                inner,
                outer,
                inner_value: vi,
                outer_value: vo,
            }));
        }
    }
    Ok(None)
}

/// Checks that `t -> phi(M ∩ {<u, .> <= t})` is non-decreasing.
///
/// The value can only change at `t_C = min <u, .>` over `M ∩ C` for the bodies
/// `C` meeting `M`; the function is evaluated by clipping below the first
/// threshold, at every threshold, and between consecutive ones.
pub fn sweep_probe<S: Scalar>(
    rep: &Representation<S>,
    m: &ConvexBody<S>,
    u: &Direction<S>,
) -> Result<Verdict<S>, ValuationError> {
    if !m.is_bounded() {
        return Err(crate::geom::GeomError::Unbounded.into());
    }
    let uv = u.vector();
    let near: Vec<_> = rep.terms().iter().filter(|t| t.body.intersects(m)).collect();
    let mut events: Vec<S> = near.iter().filter_map(|t| t.body.intersect(m).min_dot(&uv)).collect();
    events.sort();
    events.dedup();
    let Some(first) = events.first().cloned() else {
        return Ok(Verdict::pass());
    };
    let mut ts = vec![first - S::one()];
    for (i, t) in events.iter().enumerate() {
        ts.push(t.clone());
        let next = match events.get(i + 1) {
            Some(n) => (t.clone() + n.clone()).half(),
            None => t.clone() + S::one(),
        };
        ts.push(next);
    }
    let value_at = |t: &S| -> Result<S, ValuationError> {
        let h = HalfPlane {
            normal: u.clone(),
            offset: t.clone(),
        };
        let part = m.clip(&h)?;
        Ok(near
            .iter()
            .filter(|t| t.body.intersects(&part))
            .fold(S::zero(), |acc, t| acc + t.weight.clone()))
    };
    let mut prev: Option<(S, S)> = None;
    for t in ts {
        let v = value_at(&t)?;
        if let Some((pt, pv)) = &prev {
            if v < *pv {
                return Ok(Verdict::fail(Witness::Sweep {
                    t_before: Some(pt.clone()),
                    t_after: t,
                    before: pv.clone(),
                    after: v,
                }));
            }
        }
        prev = Some((t, v));
    }
    Ok(Verdict::pass())
}
