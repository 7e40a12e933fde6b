use super::body::{outer_normal, ConvexBody};
use super::point::{Direction, Point};
use super::GeomError;
use crate::scalar::Scalar;

/// A closed convex cone at the origin: the possible shapes of a planar
/// normal cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cone<S> {
    /// Normal cone at a point outside the body.
    Empty,
    /// Only the origin (interior points).
    Zero,
    Ray(Direction<S>),
    Line(Direction<S>),
    /// Directions swept counterclockwise from `from` to `to`; width in
    /// `(0, pi]`. `witness` is a direction strictly inside, which resolves the
    /// antipodal case.
    Sector {
        from: Direction<S>,
        to: Direction<S>,
        witness: Direction<S>,
    },
    Full,
}

impl<S: Scalar> Cone<S> {
    pub fn sector(from: Direction<S>, to: Direction<S>) -> Self {
        let witness = from.strictly_between(&to);
        Cone::Sector { from, to, witness }
    }

    /// Membership of a nonzero direction.
    pub fn contains(&self, u: &Direction<S>) -> bool {
        match self {
            Cone::Empty | Cone::Zero => false,
            Cone::Full => true,
            Cone::Ray(d) => d == u,
            Cone::Line(d) => d.cross(u).is_zero(),
            Cone::Sector { from, to, witness } => {
                if from.cross(to) > S::zero() {
                    from.cross(u) >= S::zero() && u.cross(to) >= S::zero()
                } else {
                    let side = from.cross(witness);
                    let s = from.cross(u);
                    s.is_zero() || (s > S::zero()) == (side > S::zero())
                }
            }
        }
    }

    /// Membership of the zero vector: every cone except the empty one.
    pub fn contains_zero(&self) -> bool {
        !matches!(self, Cone::Empty)
    }

    /// Directions where membership can change as `u` rotates.
    pub fn boundary_directions(&self) -> Vec<Direction<S>> {
        match self {
            Cone::Empty | Cone::Zero | Cone::Full => Vec::new(),
            Cone::Ray(d) => vec![d.clone()],
            Cone::Line(d) => vec![d.clone(), d.neg()],
            Cone::Sector { from, to, .. } => vec![from.clone(), to.clone()],
        }
    }
}

/// Normal cone `{u : <u, y - p> <= 0 for all y in body}`, empty when `p`
/// lies outside the body.
pub fn normal_cone<S: Scalar>(body: &ConvexBody<S>, p: &Point<S>) -> Result<Cone<S>, GeomError> {
    if body.is_empty() {
        return Err(GeomError::EmptyBody);
    }
    if !body.contains(p) {
        return Ok(Cone::Empty);
    }
    Ok(match body {
        ConvexBody::Empty => unreachable!(),
        ConvexBody::FullPlane => Cone::Zero,
        ConvexBody::Point(_) => Cone::Full,
        ConvexBody::Segment(a, b) => {
            let (near, far) = if p == a {
                (a, b)
            } else if p == b {
                (b, a)
            } else {
                let d = Direction::from_vector(&b.sub(a)).unwrap();
                return Ok(Cone::Line(d.rot90()));
            };
            let d = Direction::from_vector(&far.sub(near)).unwrap();
            // half-plane of directions not pointing into the segment
            Cone::Sector {
                from: d.rot90(),
                to: d.rot90().neg(),
                witness: d.neg(),
            }
        }
        ConvexBody::Polygon(vs) => {
            let n = vs.len();
            if let Some(i) = vs.iter().position(|v| v == p) {
                let prev = &vs[(i + n - 1) % n];
                let next = &vs[(i + 1) % n];
                return Ok(Cone::sector(outer_normal(prev, p), outer_normal(p, next)));
            }
            for i in 0..n {
                let (a, b) = (&vs[i], &vs[(i + 1) % n]);
                if super::body::on_segment(a, b, p) {
                    return Ok(Cone::Ray(outer_normal(a, b)));
                }
            }
            Cone::Zero
        }
    })
}

/// Independent membership test: `p` in the body and the body misses the
/// open half-plane `{y : <u, y - p> > 0}`.
pub fn misses_open_halfplane<S: Scalar>(body: &ConvexBody<S>, p: &Point<S>, u: &Direction<S>) -> bool {
    if !body.contains(p) {
        return false;
    }
    match body {
        ConvexBody::FullPlane => false,
        _ => body.vertices().iter().all(|v| u.vector().dot(&v.sub(p)) <= S::zero()),
    }
}
