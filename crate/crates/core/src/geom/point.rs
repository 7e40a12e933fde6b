use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

/// A point (or free vector) in the plane. Ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(S::from_int(x), S::from_int(y))
    }

    pub fn origin() -> Self {
        Point::new(S::zero(), S::zero())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Point::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> S {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn midpoint(&self, o: &Self) -> Self {
        Point::new(
            (self.x.clone() + o.x.clone()).half(),
            (self.y.clone() + o.y.clone()).half(),
        )
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of the triangle `o, a, b`; positive for a left turn.
pub fn orient<S: Scalar>(o: &Point<S>, a: &Point<S>, b: &Point<S>) -> S {
    a.sub(o).cross(&b.sub(o))
}

/// A nonzero direction, identified up to positive scaling.
///
/// Stored normalized so that `max(|dx|, |dy|) = 1`, which makes structural
/// equality coincide with "positive multiple of each other".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction<S> {
    dx: S,
    dy: S,
}

impl<S: Scalar> Direction<S> {
    pub fn new(dx: S, dy: S) -> Option<Self> {
        let m = S::max_of(&dx.abs(), &dy.abs());
        if m.is_zero() {
            return None;
        }
        Some(Direction {
            dx: dx / m.clone(),
            dy: dy / m,
        })
    }

    pub fn from_vector(v: &Point<S>) -> Option<Self> {
        Self::new(v.x.clone(), v.y.clone())
    }

    pub fn from_ints(dx: i64, dy: i64) -> Option<Self> {
        Self::new(S::from_int(dx), S::from_int(dy))
    }

    pub fn dx(&self) -> &S {
        &self.dx
    }

    pub fn dy(&self) -> &S {
        &self.dy
    }

    pub fn vector(&self) -> Point<S> {
        Point::new(self.dx.clone(), self.dy.clone())
    }

    pub fn neg(&self) -> Self {
        Direction {
            dx: -self.dx.clone(),
            dy: -self.dy.clone(),
        }
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(&self) -> Self {
        Direction {
            dx: -self.dy.clone(),
            dy: self.dx.clone(),
        }
    }

    pub fn cross(&self, o: &Self) -> S {
        self.vector().cross(&o.vector())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.vector().dot(&o.vector())
    }

    fn half(&self) -> u8 {
        if self.dy > S::zero() || (self.dy.is_zero() && self.dx > S::zero()) {
            0
        } else {
            1
        }
    }

    /// Counterclockwise angular order starting from the positive x-axis.
    pub fn angle_cmp(&self, o: &Self) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            let c = self.cross(o);
            if c > S::zero() {
                Ordering::Less
            } else if c < S::zero() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }

    /// A direction strictly inside the counterclockwise gap from `self` to
    /// `next`. When the two coincide the gap is the full turn.
    pub fn strictly_between(&self, next: &Self) -> Self {
        let c = self.cross(next);
        if c > S::zero() {
            Direction::from_vector(&self.vector().add(&next.vector())).expect("non-antipodal sum is nonzero")
        } else if self == next {
            self.neg()
        } else {
            // Gap of at least a half turn: a quarter turn stays inside it.
            self.rot90()
        }
    }
}

impl<S: Scalar> fmt::Display for Direction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

/// The closed half-plane `{p : <normal, p> <= offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfPlane<S> {
    pub normal: Direction<S>,
    pub offset: S,
}

impl<S: Scalar> HalfPlane<S> {
    /// `{p : nx*x + ny*y <= offset}`; `None` if the normal vanishes.
    pub fn new(nx: S, ny: S, offset: S) -> Option<Self> {
        let m = S::max_of(&nx.abs(), &ny.abs());
        if m.is_zero() {
            return None;
        }
        Some(HalfPlane {
            normal: Direction::new(nx, ny)?,
            offset: offset / m,
        })
    }

    /// `{p : <u, p - at> <= 0}`.
    pub fn through(u: &Direction<S>, at: &Point<S>) -> Self {
        HalfPlane {
            normal: u.clone(),
            offset: u.vector().dot(at),
        }
    }

    /// Signed slack `<normal, p> - offset`.
    pub fn eval(&self, p: &Point<S>) -> S {
        self.normal.vector().dot(p) - self.offset.clone()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.eval(p) <= S::zero()
    }

    /// The other closed side of the boundary line.
    pub fn opposite(&self) -> Self {
        HalfPlane {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }
}
