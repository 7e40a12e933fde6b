//! Countably generated valuations given by finite weighted families of
//! convex bodies: `phi(K) = sum_n w_n * chi(K ∩ C_n)`.

use std::fmt;

use thiserror::Error;

use crate::geom::{build_arrangement, default_window, ConvexBody, Direction, GeomError, HalfPlane, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("term with zero weight")]
    ZeroWeight,
    #[error("term with empty body")]
    EmptyBody,
    #[error("dimension must be 1 or 2, got {0}")]
    BadDimension(u8),
    #[error("dimensions differ: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("a one-dimensional body must lie on the x-axis")]
    OffAxis,
    #[error("weights must be integers, found {0}")]
    NonIntegerWeight(String),
    #[error("representation has unbounded bodies")]
    Unbounded,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term<S> {
    pub weight: S,
    pub body: ConvexBody<S>,
}

/// A finite weighted family of nonempty closed convex bodies.
///
/// One-dimensional representations live on the x-axis of the plane: closed
/// intervals are segments (or points) with `y = 0`, which lets the planar
/// kernel evaluate them unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation<S> {
    dim: u8,
    terms: Vec<Term<S>>,
}

fn on_axis<S: Scalar>(body: &ConvexBody<S>) -> bool {
    match body {
        ConvexBody::FullPlane | ConvexBody::Empty => true,
        ConvexBody::Polygon(_) => false,
        b => b.vertices().iter().all(|v| v.y.is_zero()),
    }
}

impl<S: Scalar> Representation<S> {
    pub fn new(dim: u8, terms: Vec<Term<S>>) -> Result<Self, ValuationError> {
        if dim != 1 && dim != 2 {
            return Err(ValuationError::BadDimension(dim));
        }
        for t in &terms {
            if t.weight.is_zero() {
                return Err(ValuationError::ZeroWeight);
            }
            if t.body.is_empty() {
                return Err(ValuationError::EmptyBody);
            }
            if dim == 1 && !on_axis(&t.body) {
                return Err(ValuationError::OffAxis);
            }
        }
        Ok(Representation { dim, terms })
    }

    pub fn empty(dim: u8) -> Self {
        Representation { dim, terms: Vec::new() }
    }

    /// Planar representation from `(weight, body)` pairs, dropping empty bodies.
    pub fn planar(terms: impl IntoIterator<Item = (S, ConvexBody<S>)>) -> Result<Self, ValuationError> {
        let terms = terms
            .into_iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(weight, body)| Term { weight, body })
            .collect();
        Self::new(2, terms)
    }

    /// The Euler characteristic, `chi(K) = 1` for every nonempty `K`.
    pub fn euler(dim: u8) -> Self {
        Representation {
            dim,
            terms: vec![Term {
                weight: S::one(),
                body: ConvexBody::FullPlane,
            }],
        }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<S>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bodies(&self) -> impl Iterator<Item = &ConvexBody<S>> {
        self.terms.iter().map(|t| &t.body)
    }

    pub fn weights(&self) -> Vec<S> {
        self.terms.iter().map(|t| t.weight.clone()).collect()
    }

    pub fn push(&mut self, weight: S, body: ConvexBody<S>) {
        if !weight.is_zero() && !body.is_empty() {
            self.terms.push(Term { weight, body });
        }
    }

    /// Term-list concatenation; the valuation is the sum.
    pub fn concat(&self, other: &Self) -> Result<Self, ValuationError> {
        if self.dim != other.dim {
            return Err(ValuationError::DimensionMismatch(self.dim, other.dim));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Representation { dim: self.dim, terms })
    }

    pub fn scaled(&self, k: &S) -> Self {
        if k.is_zero() {
            return Representation::empty(self.dim);
        }
        Representation {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    weight: t.weight.clone() * k.clone(),
                    body: t.body.clone(),
                })
                .collect(),
        }
    }

    /// Restriction `phi(· ∩ L)`: every body intersected with `L`.
    pub fn restrict(&self, to: &ConvexBody<S>) -> Self {
        let mut out = Representation::empty(self.dim);
        for t in &self.terms {
            out.push(t.weight.clone(), t.body.intersect(to));
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.weight.is_integral())
    }

    pub fn require_integral(&self) -> Result<(), ValuationError> {
        match self.terms.iter().find(|t| !t.weight.is_integral()) {
            Some(t) => Err(ValuationError::NonIntegerWeight(t.weight.to_string())),
            None => Ok(()),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.terms.iter().all(|t| t.body.is_bounded())
    }

    /// Merges terms with identical bodies and drops those whose weights cancel.
    pub fn merged(&self) -> Self {
        let mut out: Vec<Term<S>> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|o| o.body == t.body) {
                Some(o) => o.weight = o.weight.clone() + t.weight.clone(),
                None => out.push(t.clone()),
            }
        }
        out.retain(|t| !t.weight.is_zero());
        Representation {
            dim: self.dim,
            terms: out,
        }
    }

    /// Expands integer weights into unit-weight copies.
    pub fn expanded(&self) -> Result<Self, ValuationError> {
        self.require_integral()?;
        let mut terms = Vec::new();
        for t in &self.terms {
            let sign = if t.weight.is_positive() { S::one() } else { -S::one() };
            let mut k = t.weight.abs();
            while k.is_positive() {
                terms.push(Term {
                    weight: sign.clone(),
                    body: t.body.clone(),
                });
                k = k - S::one();
            }
        }
        Ok(Representation { dim: self.dim, terms })
    }
}

impl<S: Scalar> fmt::Display for Representation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·chi(· ∩ {})", t.weight, t.body)?;
        }
        Ok(())
    }
}

/// Structured counterexample data attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<S> {
    /// Two valuations differ at a singleton.
    Singleton { point: Point<S>, left: S, right: S },
    /// `phi(K) != phi(K ∩ h) + phi(K ∩ h') - phi(K ∩ ∂h)`.
    Split {
        body: ConvexBody<S>,
        halfplane: HalfPlane<S>,
        whole: S,
        lower: S,
        upper: S,
        boundary: S,
    },
    /// Values on shrinking boxes never reached the singleton value.
    Shrink {
        point: Point<S>,
        values: Vec<S>,
        singleton: S,
    },
    /// The normal-cone inequality fails at `(point, direction)`; a missing
    /// direction stands for `u = 0`.
    Cone {
        point: Point<S>,
        direction: Option<Direction<S>>,
        lhs: S,
        rhs: S,
    },
    /// `inner ⊆ outer` yet `phi(inner) > phi(outer)`.
    Nested {
        inner: ConvexBody<S>,
        outer: ConvexBody<S>,
        inner_value: S,
        outer_value: S,
    },
    /// The sweep value dropped between two consecutive thresholds.
    Sweep {
        t_before: Option<S>,
        t_after: S,
        before: S,
        after: S,
    },
    /// A point whose singleton value is too small for an invisibility set.
    LowValue { point: Point<S>, value: S },
    /// A pair of points whose open segment has no zero-value point.
    Visible { a: Point<S>, b: Point<S> },
    /// `phi(conv P)` did not exceed `n / 2`.
    Bound { n: u32, hull_value: S },
    /// Two evaluations of the same body disagree.
    Disagree { body: ConvexBody<S>, left: S, right: S },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<S> {
    pub holds: bool,
    pub witness: Option<Witness<S>>,
}

impl<S> Verdict<S> {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness<S>) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// `sum_n w_n * chi(K ∩ C_n)`; zero on the empty set.
pub fn evaluate<S: Scalar>(rep: &Representation<S>, k: &ConvexBody<S>) -> S {
    if k.is_empty() {
        return S::zero();
    }
    rep.terms
        .iter()
        .filter(|t| t.body.intersects(k))
        .fold(S::zero(), |acc, t| acc + t.weight.clone())
}

/// `phi({x})`, computed from indicator sums.
pub fn singleton_value<S: Scalar>(rep: &Representation<S>, x: &Point<S>) -> S {
    rep.terms
        .iter()
        .filter(|t| t.body.contains(x))
        .fold(S::zero(), |acc, t| acc + t.weight.clone())
}

/// Decides whether two representations define the same valuation by
/// comparing singleton values on every cell of their joint arrangement.
///
/// `window` defaults to the bounding box of all bounded bodies inflated by one.
pub fn equal<S: Scalar>(
    a: &Representation<S>,
    b: &Representation<S>,
    window: Option<&ConvexBody<S>>,
) -> Result<Verdict<S>, ValuationError> {
    if a.dim != b.dim {
        return Err(ValuationError::DimensionMismatch(a.dim, b.dim));
    }
    let bodies: Vec<ConvexBody<S>> = a.bodies().chain(b.bodies()).cloned().collect();
    if bodies.is_empty() {
        return Ok(Verdict::pass());
    }
    let window = match window {
        Some(w) => w.clone(),
        None => default_window(&bodies),
    };
    let arr = build_arrangement(&bodies, &window)?;
    let signed: Vec<S> = a
        .terms
        .iter()
        .map(|t| t.weight.clone())
        .chain(b.terms.iter().map(|t| -t.weight.clone()))
        .collect();
    let incidences = arr
        .cells
        .iter()
        .map(|c| (&c.sample, &c.incidence))
        .chain(std::iter::once((&arr.outer_sample, &arr.outer_incidence)));
    for (sample, inc) in incidences {
        if !arr.weighted_count(inc, &signed).is_zero() {
            return Ok(Verdict::fail(Witness::Singleton {
                point: sample.clone(),
                left: singleton_value(a, sample),
                right: singleton_value(b, sample),
            }));
        }
    }
    Ok(Verdict::pass())
}

/// Checks `phi(K) = phi(K ∩ h) + phi(K ∩ h') - phi(K ∩ ∂h)` where `h'` is the
/// opposite closed half-plane. `K` must be bounded.
pub fn additivity_probe<S: Scalar>(
    rep: &Representation<S>,
    k: &ConvexBody<S>,
    h: &HalfPlane<S>,
) -> Result<Verdict<S>, ValuationError> {
    let lower = k.clip(h)?;
    let upper = k.clip(&h.opposite())?;
    let line = lower.clip(&h.opposite())?;
    let whole = evaluate(rep, k);
    let (vl, vu, vb) = (evaluate(rep, &lower), evaluate(rep, &upper), evaluate(rep, &line));
    if whole == vl.clone() + vu.clone() - vb.clone() {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(Witness::Split {
            body: k.clone(),
            halfplane: h.clone(),
            whole,
            lower: vl,
            upper: vu,
            boundary: vb,
        }))
    }
}

/// Evaluates on the boxes `x + [-2^-n, 2^-n]^2`, `n = 1..=depth`, and holds
/// when the last value equals `phi({x})`.
pub fn shrink_probe<S: Scalar>(rep: &Representation<S>, x: &Point<S>, depth: u32) -> Verdict<S> {
    let singleton = singleton_value(rep, x);
    let mut r = S::one();
    let mut values = Vec::with_capacity(depth as usize);
    for _ in 0..depth.max(1) {
        r = r.half();
        values.push(evaluate(rep, &ConvexBody::square_around(x, &r)));
    }
    if values.last() == Some(&singleton) {
        Verdict::pass()
    } else {
        Verdict::fail(Witness::Shrink {
            point: x.clone(),
            values,
            singleton,
        })
    }
}
