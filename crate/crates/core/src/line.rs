//! Valuations on closed intervals of the line, encoded by a pair of step
//! functions `(f, g)` with `phi([a, b]) = g(b) - f(a)` and `f(0) = 0`.
//!
//! Integer-valued monotone valuations are decomposed into hit-indicators of
//! intervals of all four types plus two kinds of one-point terms by a
//! bracket-matching pass over the jumps of `f` and `g`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::geom::{ConvexBody, Point};
use crate::scalar::Scalar;
use crate::valuation::{evaluate, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("invalid step function: {0}")]
    BadStepFunction(String),
    #[error("f(0) must be 0, found {0}")]
    NotNormalized(String),
    #[error("interval endpoints out of order: a = {a} > b = {b}")]
    Reversed { a: String, b: String },
    #[error("invalid interval: {0}")]
    BadInterval(String),
    #[error("decomposition needs an integer-valued monotone valuation (integer_valued = {integer_valued}, monotone = {monotone})")]
    NotIntegerMonotone { integer_valued: bool, monotone: bool },
    #[error("closed form needs an integer-valued, monotone, sigma-continuous valuation; failed: {0}")]
    NotClosedForm(String),
    #[error("closing bracket {0} has no opening partner")]
    Unbalanced(String),
    #[error("representation is not one-dimensional")]
    NotOneDimensional,
}

/// `(weight, lo, lo_closed, hi, hi_closed)`; `None` marks an infinite end.
pub type WeightedInterval<S> = (S, Option<S>, bool, Option<S>, bool);

/// The three values of a step function at a breakpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Knot<S> {
    pub x: S,
    pub left: S,
    pub value: S,
    pub right: S,
}

/// A step function with finitely many breakpoints; left and right limits and
/// the value are stored independently at every breakpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFunction<S> {
    left_tail: S,
    knots: Vec<Knot<S>>,
}

impl<S: Scalar> StepFunction<S> {
    pub fn new(left_tail: S, knots: Vec<Knot<S>>) -> Result<Self, LineError> {
        let mut prev = left_tail.clone();
        for (i, k) in knots.iter().enumerate() {
            if i > 0 && knots[i - 1].x >= k.x {
                return Err(LineError::BadStepFunction(format!(
                    "breakpoints not strictly increasing at {}",
                    k.x
                )));
            }
            if k.left != prev {
                return Err(LineError::BadStepFunction(format!(
                    "left limit {} at {} differs from the value {} on the preceding piece",
                    k.left, k.x, prev
                )));
            }
            prev = k.right.clone();
        }
        Ok(StepFunction { left_tail, knots })
    }

    /// Builds from breakpoint rows; the left tail is the first row's left limit.
    pub fn from_knots(knots: Vec<Knot<S>>) -> Result<Self, LineError> {
        let tail = match knots.first() {
            Some(k) => k.left.clone(),
            None => return Err(LineError::BadStepFunction("no breakpoints".into())),
        };
        Self::new(tail, knots)
    }

    pub fn constant(v: S) -> Self {
        StepFunction {
            left_tail: v,
            knots: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(S::zero())
    }

    /// `1_[x, inf)` when `closed`, `1_(x, inf)` otherwise.
    pub fn ray(x: S, closed: bool) -> Self {
        let value = if closed { S::one() } else { S::zero() };
        StepFunction {
            left_tail: S::zero(),
            knots: vec![Knot {
                x,
                left: S::zero(),
                value,
                right: S::one(),
            }],
        }
    }

    /// Sum of weighted indicators of intervals.
    pub fn from_indicators(parts: &[WeightedInterval<S>]) -> Self {
        let mut out = Self::zero();
        for (w, lo, lc, hi, hc) in parts {
            let mut piece = match lo {
                Some(p) => Self::ray(p.clone(), *lc),
                None => Self::constant(S::one()),
            };
            if let Some(q) = hi {
                piece = piece.sub(&Self::ray(q.clone(), !*hc));
            }
            out = out.add(&piece.scale(w));
        }
        out
    }

    pub fn knots(&self) -> &[Knot<S>] {
        &self.knots
    }

    pub fn left_tail(&self) -> &S {
        &self.left_tail
    }

    pub fn right_tail(&self) -> &S {
        self.knots.last().map(|k| &k.right).unwrap_or(&self.left_tail)
    }

    pub fn breakpoints(&self) -> Vec<S> {
        self.knots.iter().map(|k| k.x.clone()).collect()
    }

    fn locate(&self, x: &S) -> Result<usize, usize> {
        self.knots.binary_search_by(|k| k.x.cmp(x))
    }

    /// Value on the open piece just left of knot index `i` (or of the end).
    fn piece_before(&self, i: usize) -> &S {
        if i == 0 {
            &self.left_tail
        } else {
            &self.knots[i - 1].right
        }
    }

    pub fn eval(&self, x: &S) -> S {
        match self.locate(x) {
            Ok(i) => self.knots[i].value.clone(),
            Err(i) => self.piece_before(i).clone(),
        }
    }

    pub fn left_limit(&self, x: &S) -> S {
        match self.locate(x) {
            Ok(i) => self.knots[i].left.clone(),
            Err(i) => self.piece_before(i).clone(),
        }
    }

    pub fn right_limit(&self, x: &S) -> S {
        match self.locate(x) {
            Ok(i) => self.knots[i].right.clone(),
            Err(i) => self.piece_before(i).clone(),
        }
    }

    /// Drops breakpoints where nothing happens.
    pub fn simplified(mut self) -> Self {
        self.knots.retain(|k| !(k.left == k.value && k.value == k.right));
        self
    }

    pub fn map(&self, op: impl Fn(&S) -> S) -> Self {
        StepFunction {
            left_tail: op(&self.left_tail),
            knots: self
                .knots
                .iter()
                .map(|k| Knot {
                    x: k.x.clone(),
                    left: op(&k.left),
                    value: op(&k.value),
                    right: op(&k.right),
                })
                .collect(),
        }
        .simplified()
    }

    pub fn combine(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        let mut xs = self.breakpoints();
        xs.extend(other.breakpoints());
        xs.sort();
        xs.dedup();
        let knots = xs
            .into_iter()
            .map(|x| Knot {
                left: op(&self.left_limit(&x), &other.left_limit(&x)),
                value: op(&self.eval(&x), &other.eval(&x)),
                right: op(&self.right_limit(&x), &other.right_limit(&x)),
                x,
            })
            .collect();
        StepFunction {
            left_tail: op(&self.left_tail, &other.left_tail),
            knots,
        }
        .simplified()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|v| v.clone() * k.clone())
    }

    pub fn add_constant(&self, c: &S) -> Self {
        self.map(|v| v.clone() + c.clone())
    }

    /// `x -> f(x + c)`.
    pub fn shifted(&self, c: &S) -> Self {
        StepFunction {
            left_tail: self.left_tail.clone(),
            knots: self
                .knots
                .iter()
                .map(|k| Knot {
                    x: k.x.clone() - c.clone(),
                    ..k.clone()
                })
                .collect(),
        }
    }

    /// `x -> -f(-x)`.
    pub fn reflected(&self) -> Self {
        StepFunction {
            left_tail: -self.right_tail().clone(),
            knots: self
                .knots
                .iter()
                .rev()
                .map(|k| Knot {
                    x: -k.x.clone(),
                    left: -k.right.clone(),
                    value: -k.value.clone(),
                    right: -k.left.clone(),
                })
                .collect(),
        }
    }

    /// Keeps `f` on `[0, inf)` and replaces it by 0 on `(-inf, 0)`.
    pub fn nonnegative_part(&self) -> Self {
        let zero = S::zero();
        let mut knots = vec![Knot {
            x: zero.clone(),
            left: zero.clone(),
            value: self.eval(&zero),
            right: self.right_limit(&zero),
        }];
        knots.extend(self.knots.iter().filter(|k| k.x > zero).cloned());
        StepFunction { left_tail: zero, knots }.simplified()
    }

    /// Keeps `f` on `(-inf, 0)` and replaces it by 0 on `[0, inf)`.
    pub fn negative_part(&self) -> Self {
        let zero = S::zero();
        let mut knots: Vec<Knot<S>> = self.knots.iter().filter(|k| k.x < zero).cloned().collect();
        knots.push(Knot {
            x: zero.clone(),
            left: self.left_limit(&zero),
            value: zero.clone(),
            right: zero,
        });
        StepFunction {
            left_tail: self.left_tail.clone(),
            knots,
        }
        .simplified()
    }

    fn all_values(&self) -> impl Iterator<Item = &S> {
        std::iter::once(&self.left_tail).chain(self.knots.iter().flat_map(|k| [&k.left, &k.value, &k.right]))
    }

    pub fn is_integral(&self) -> bool {
        self.all_values().all(|v| v.is_integral())
    }

    pub fn is_non_decreasing(&self) -> bool {
        let mut prev = &self.left_tail;
        for k in &self.knots {
            if !(prev <= &k.left && k.left <= k.value && k.value <= k.right) {
                return false;
            }
            prev = &k.right;
        }
        true
    }

    pub fn is_left_continuous(&self) -> bool {
        self.knots.iter().all(|k| k.left == k.value)
    }

    pub fn is_right_continuous(&self) -> bool {
        self.knots.iter().all(|k| k.value == k.right)
    }
}

impl<S: Scalar> fmt::Display for StepFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.left_tail)?;
        for k in &self.knots {
            write!(f, " |{}: {} {} {}|", k.x, k.left, k.value, k.right)?;
        }
        Ok(())
    }
}

/// Breakpoints of all functions, the midpoints between consecutive ones, and
/// one point on each tail; always contains 0.
pub fn probe_grid<S: Scalar>(fs: &[&StepFunction<S>]) -> Vec<S> {
    let mut xs: Vec<S> = fs.iter().flat_map(|f| f.breakpoints()).collect();
    xs.push(S::zero());
    xs.sort();
    xs.dedup();
    let mut out = Vec::with_capacity(2 * xs.len() + 1);
    out.push(xs[0].clone() - S::one());
    for (i, x) in xs.iter().enumerate() {
        out.push(x.clone());
        match xs.get(i + 1) {
            Some(n) => out.push((x.clone() + n.clone()).half()),
            None => out.push(x.clone() + S::one()),
        }
    }
    out
}

/// `phi([a, b]) = g(b) - f(a)` with `f(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation1D<S> {
    f: StepFunction<S>,
    g: StepFunction<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub integer_valued: bool,
    pub monotone: bool,
    pub sigma_continuous: bool,
}

impl<S: Scalar> Valuation1D<S> {
    pub fn new(f: StepFunction<S>, g: StepFunction<S>) -> Result<Self, LineError> {
        let f0 = f.eval(&S::zero());
        if !f0.is_zero() {
            return Err(LineError::NotNormalized(f0.to_string()));
        }
        Ok(Valuation1D { f, g })
    }

    /// Subtracts `f(0)` from both functions, which leaves the valuation unchanged.
    pub fn normalizing(f: StepFunction<S>, g: StepFunction<S>) -> Self {
        let f0 = -f.eval(&S::zero());
        Valuation1D {
            f: f.add_constant(&f0),
            g: g.add_constant(&f0),
        }
    }

    pub fn constant(m: S) -> Self {
        Valuation1D {
            f: StepFunction::zero(),
            g: StepFunction::constant(m),
        }
    }

    pub fn f(&self) -> &StepFunction<S> {
        &self.f
    }

    pub fn g(&self) -> &StepFunction<S> {
        &self.g
    }

    /// `phi({x}) = g(x) - f(x)`.
    pub fn point_value(&self, x: &S) -> S {
        self.g.eval(x) - self.f.eval(x)
    }

    pub fn grid(&self) -> Vec<S> {
        probe_grid(&[&self.f, &self.g])
    }

    pub fn add(&self, other: &Self) -> Self {
        Valuation1D {
            f: self.f.add(&other.f),
            g: self.g.add(&other.g),
        }
    }
}

pub fn eval1<S: Scalar>(v: &Valuation1D<S>, a: &S, b: &S) -> Result<S, LineError> {
    if a > b {
        return Err(LineError::Reversed {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(v.g.eval(b) - v.f.eval(a))
}

/// Anything that can value closed intervals, with finitely many places where
/// the answer can change.
pub trait IntervalOracle<S> {
    /// `phi([a, b])` for `a <= b`.
    fn value(&self, a: &S, b: &S) -> S;

    /// Points outside which `f` and `g` are locally constant.
    fn breakpoints(&self) -> Vec<S>;
}

impl<S: Scalar> IntervalOracle<S> for Valuation1D<S> {
    fn value(&self, a: &S, b: &S) -> S {
        self.g.eval(b) - self.f.eval(a)
    }

    fn breakpoints(&self) -> Vec<S> {
        let mut xs = self.f.breakpoints();
        xs.extend(self.g.breakpoints());
        xs
    }
}

/// The closed interval `[a, b]` as a body on the x-axis.
pub fn interval_body<S: Scalar>(a: &S, b: &S) -> ConvexBody<S> {
    let p = Point::new(a.clone(), S::zero());
    if a == b {
        ConvexBody::Point(p)
    } else {
        ConvexBody::segment(p, Point::new(b.clone(), S::zero()))
    }
}

impl<S: Scalar> IntervalOracle<S> for Representation<S> {
    fn value(&self, a: &S, b: &S) -> S {
        evaluate(self, &interval_body(a, b))
    }

    fn breakpoints(&self) -> Vec<S> {
        self.bodies().flat_map(|b| b.vertices()).map(|p| p.x).collect()
    }
}

/// Recovers `(f, g)` from interval values: `f(x) = phi([0,x]) - phi({x})`,
/// `g(x) = phi([0,x])` for `x >= 0`, and
/// `f(x) = phi({0}) - phi([x,0])`, `g(x) = phi({x}) + phi({0}) - phi([x,0])` for `x < 0`.
pub fn fg_from_oracle<S: Scalar, O: IntervalOracle<S> + ?Sized>(oracle: &O) -> Valuation1D<S> {
    let zero = S::zero();
    let at0 = oracle.value(&zero, &zero);
    let f_at = |x: &S| {
        if *x >= zero {
            oracle.value(&zero, x) - oracle.value(x, x)
        } else {
            at0.clone() - oracle.value(x, &zero)
        }
    };
    let g_at = |x: &S| {
        if *x >= zero {
            oracle.value(&zero, x)
        } else {
            oracle.value(x, x) + at0.clone() - oracle.value(x, &zero)
        }
    };
    let mut xs = oracle.breakpoints();
    xs.push(zero.clone());
    xs.sort();
    xs.dedup();
    let sample = |i: usize| -> S {
        // a point of the open piece left of xs[i]; i == len gives the right tail
        if i == 0 {
            xs[0].clone() - S::one()
        } else if i == xs.len() {
            xs[i - 1].clone() + S::one()
        } else {
            (xs[i - 1].clone() + xs[i].clone()).half()
        }
    };
    let build = |h: &dyn Fn(&S) -> S| {
        let pieces: Vec<S> = (0..=xs.len()).map(|i| h(&sample(i))).collect();
        let knots = xs
            .iter()
            .enumerate()
            .map(|(i, x)| Knot {
                x: x.clone(),
                left: pieces[i].clone(),
                value: h(x),
                right: pieces[i + 1].clone(),
            })
            .collect();
        StepFunction {
            left_tail: pieces[0].clone(),
            knots,
        }
        .simplified()
    };
    Valuation1D {
        f: build(&f_at),
        g: build(&g_at),
    }
}

pub fn classify<S: Scalar>(v: &Valuation1D<S>) -> Flags {
    let integer_valued = v.f.is_integral() && v.g.is_integral();
    let dominated = v.grid().iter().all(|x| {
        v.f.eval(x) <= v.g.eval(x) && v.f.left_limit(x) <= v.g.left_limit(x) && v.f.right_limit(x) <= v.g.right_limit(x)
    });
    Flags {
        integer_valued,
        monotone: v.f.is_non_decreasing() && v.g.is_non_decreasing() && dominated,
        sigma_continuous: v.f.is_left_continuous() && v.g.is_right_continuous(),
    }
}

/// One term of the interval normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntervalTerm<S> {
    /// Hit-indicator of an interval; `None` marks an infinite end.
    Real {
        lo: Option<S>,
        lo_closed: bool,
        hi: Option<S>,
        hi_closed: bool,
    },
    /// `1{r in (a, b]}`, written `[r,r)`.
    VirtualR(S),
    /// `1{s in [a, b)}`, written `(s,s]`.
    VirtualS(S),
}

impl<S: Scalar> IntervalTerm<S> {
    pub fn real(lo: Option<S>, lo_closed: bool, hi: Option<S>, hi_closed: bool) -> Result<Self, LineError> {
        if lo.is_none() && lo_closed || hi.is_none() && hi_closed {
            return Err(LineError::BadInterval("infinite ends must be open".into()));
        }
        if let (Some(p), Some(q)) = (&lo, &hi) {
            match p.cmp(q) {
                Ordering::Greater => return Err(LineError::BadInterval(format!("{p} > {q}"))),
                Ordering::Equal if !(lo_closed && hi_closed) => {
                    return Err(LineError::BadInterval(format!(
                        "degenerate interval at {p} must be closed"
                    )))
                }
                _ => {}
            }
        }
        Ok(IntervalTerm::Real {
            lo,
            lo_closed,
            hi,
            hi_closed,
        })
    }

    pub fn closed(p: S, q: S) -> Result<Self, LineError> {
        Self::real(Some(p), true, Some(q), true)
    }

    pub fn is_closed_real(&self) -> bool {
        matches!(self, IntervalTerm::Real { lo, lo_closed, hi, hi_closed }
            if (lo.is_none() || *lo_closed) && (hi.is_none() || *hi_closed))
    }

    /// The term's value on `[a, b]`, straight from its definition.
    pub fn value(&self, a: &S, b: &S) -> S {
        let hit = match self {
            IntervalTerm::VirtualR(r) => a < r && r <= b,
            IntervalTerm::VirtualS(s) => a <= s && s < b,
            IntervalTerm::Real {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let above = match lo {
                    None => true,
                    Some(p) => b > p || (b == p && *lo_closed),
                };
                let below = match hi {
                    None => true,
                    Some(q) => a < q || (a == q && *hi_closed),
                };
                above && below
            }
        };
        if hit {
            S::one()
        } else {
            S::zero()
        }
    }

    /// `(f, g)` of the term, before normalizing `f(0)`.
    pub fn fg(&self) -> (StepFunction<S>, StepFunction<S>) {
        match self {
            IntervalTerm::VirtualR(r) => (StepFunction::ray(r.clone(), true), StepFunction::ray(r.clone(), true)),
            IntervalTerm::VirtualS(s) => (StepFunction::ray(s.clone(), false), StepFunction::ray(s.clone(), false)),
            IntervalTerm::Real {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let g = match lo {
                    Some(p) => StepFunction::ray(p.clone(), *lo_closed),
                    None => StepFunction::constant(S::one()),
                };
                let f = match hi {
                    Some(q) => StepFunction::ray(q.clone(), !*hi_closed),
                    None => StepFunction::zero(),
                };
                (f, g)
            }
        }
    }

    pub fn shifted(&self, c: &S) -> Self {
        let mv = |v: &S| v.clone() + c.clone();
        match self {
            IntervalTerm::VirtualR(r) => IntervalTerm::VirtualR(mv(r)),
            IntervalTerm::VirtualS(s) => IntervalTerm::VirtualS(mv(s)),
            IntervalTerm::Real {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => IntervalTerm::Real {
                lo: lo.as_ref().map(mv),
                lo_closed: *lo_closed,
                hi: hi.as_ref().map(mv),
                hi_closed: *hi_closed,
            },
        }
    }

    /// Image under `x -> -x`, as a term of the reflected valuation.
    pub fn reflected(&self) -> Self {
        match self {
            IntervalTerm::VirtualR(r) => IntervalTerm::VirtualS(-r.clone()),
            IntervalTerm::VirtualS(s) => IntervalTerm::VirtualR(-s.clone()),
            IntervalTerm::Real {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => IntervalTerm::Real {
                lo: hi.as_ref().map(|v| -v.clone()),
                lo_closed: *hi_closed,
                hi: lo.as_ref().map(|v| -v.clone()),
                hi_closed: *lo_closed,
            },
        }
    }
}

impl<S: Scalar> fmt::Display for IntervalTerm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalTerm::VirtualR(r) => write!(f, "[{r},{r})"),
            IntervalTerm::VirtualS(s) => write!(f, "({s},{s}]"),
            IntervalTerm::Real {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                write!(f, "{}", if *lo_closed { '[' } else { '(' })?;
                match lo {
                    Some(p) => write!(f, "{p}")?,
                    None => write!(f, "-∞")?,
                }
                write!(f, ",")?;
                match hi {
                    Some(q) => write!(f, "{q}")?,
                    None => write!(f, "∞")?,
                }
                write!(f, "{}", if *hi_closed { ']' } else { ')' })
            }
        }
    }
}

/// Joins terms as `t1, t2, ...`.
pub fn format_terms<S: Scalar>(terms: &[IntervalTerm<S>]) -> String {
    terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `[x`: left jump of `g`.
    OpenClosed,
    /// `(x`: right jump of `g`.
    OpenOpen,
    /// `x)`: left jump of `f`.
    CloseOpen,
    /// `x]`: right jump of `f`.
    CloseClosed,
}

impl Shape {
    pub fn is_opening(self) -> bool {
        matches!(self, Shape::OpenClosed | Shape::OpenOpen)
    }

    /// The shape of the same jump seen through `x -> -x` with `f` and `g` swapped.
    pub fn mirrored(self) -> Self {
        match self {
            Shape::OpenClosed => Shape::CloseClosed,
            Shape::OpenOpen => Shape::CloseOpen,
            Shape::CloseOpen => Shape::OpenOpen,
            Shape::CloseClosed => Shape::OpenClosed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketToken<S> {
    pub position: S,
    pub shape: Shape,
}

impl<S: Scalar> fmt::Display for BracketToken<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = &self.position;
        match self.shape {
            Shape::OpenClosed => write!(f, "[{x}"),
            Shape::OpenOpen => write!(f, "({x}"),
            Shape::CloseOpen => write!(f, "{x})"),
            Shape::CloseClosed => write!(f, "{x}]"),
        }
    }
}

pub fn format_trace<S: Scalar>(tokens: &[BracketToken<S>]) -> String {
    tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<S> {
    /// `min_x phi({x})`.
    pub m: S,
    /// A point where the minimum is attained.
    pub c: S,
    /// Terms in the original coordinates.
    pub terms: Vec<IntervalTerm<S>>,
    /// Tokens from `[c, inf)`, positions in original coordinates.
    pub trace: Vec<BracketToken<S>>,
    /// Tokens from `(-inf, c]`, mirrored back into original coordinates.
    pub negative_trace: Vec<BracketToken<S>>,
}

impl<S: Scalar> Decomposition<S> {
    /// Direct evaluation of `m + sum of terms` on `[a, b]`.
    pub fn value(&self, a: &S, b: &S) -> S {
        self.terms.iter().fold(self.m.clone(), |acc, t| acc + t.value(a, b))
    }
}

impl<S: Scalar> IntervalOracle<S> for Decomposition<S> {
    fn value(&self, a: &S, b: &S) -> S {
        Decomposition::value(self, a, b)
    }

    fn breakpoints(&self) -> Vec<S> {
        self.terms
            .iter()
            .flat_map(|t| match t {
                IntervalTerm::VirtualR(p) | IntervalTerm::VirtualS(p) => vec![p.clone()],
                IntervalTerm::Real { lo, hi, .. } => lo.iter().chain(hi.iter()).cloned().collect(),
            })
            .collect()
    }
}

fn push_copies<S: Scalar>(out: &mut Vec<BracketToken<S>>, x: &S, shape: Shape, mut count: S) {
    while count.is_positive() {
        out.push(BracketToken {
            position: x.clone(),
            shape,
        });
        count = count - S::one();
    }
}

/// Tokens of non-decreasing `f <= g` vanishing on `(-inf, 0)`, in increasing
/// position with `[x (x x) x]` at equal positions. Left jumps at 0 are absent
/// by construction.
fn tokens<S: Scalar>(f: &StepFunction<S>, g: &StepFunction<S>) -> Vec<BracketToken<S>> {
    let mut xs = f.breakpoints();
    xs.extend(g.breakpoints());
    xs.sort();
    xs.dedup();
    let mut out = Vec::new();
    for x in xs {
        push_copies(&mut out, &x, Shape::OpenClosed, g.eval(&x) - g.left_limit(&x));
        push_copies(&mut out, &x, Shape::OpenOpen, g.right_limit(&x) - g.eval(&x));
        push_copies(&mut out, &x, Shape::CloseOpen, f.eval(&x) - f.left_limit(&x));
        push_copies(&mut out, &x, Shape::CloseClosed, f.right_limit(&x) - f.eval(&x));
    }
    out
}

/// Repeatedly pairs the first unused opening bracket with the nearest unused
/// closing bracket to its right; openings left over close at infinity.
fn match_brackets<S: Scalar>(tokens: &[BracketToken<S>]) -> Result<Vec<IntervalTerm<S>>, LineError> {
    let mut used = vec![false; tokens.len()];
    let mut out = Vec::new();
    for i in 0..tokens.len() {
        let open = &tokens[i];
        if !open.shape.is_opening() {
            continue;
        }
        used[i] = true;
        let partner = (i + 1..tokens.len()).find(|&j| !used[j] && !tokens[j].shape.is_opening());
        let p = open.position.clone();
        let term = match partner {
            None => IntervalTerm::Real {
                lo: Some(p),
                lo_closed: open.shape == Shape::OpenClosed,
                hi: None,
                hi_closed: false,
            },
            Some(j) => {
                used[j] = true;
                let close = &tokens[j];
                let q = close.position.clone();
                match (open.shape, close.shape, p == q) {
                    (Shape::OpenClosed, Shape::CloseOpen, true) => IntervalTerm::VirtualR(p),
                    (Shape::OpenOpen, Shape::CloseClosed, true) => IntervalTerm::VirtualS(p),
                    (Shape::OpenOpen, Shape::CloseOpen, true) => {
                        return Err(LineError::BadInterval(format!("({p},{p})")));
                    }
                    (os, cs, _) => IntervalTerm::Real {
                        lo: Some(p),
                        lo_closed: os == Shape::OpenClosed,
                        hi: Some(q),
                        hi_closed: cs == Shape::CloseClosed,
                    },
                }
            }
        };
        out.push(term);
    }
    if let Some(j) = (0..tokens.len()).find(|&j| !used[j]) {
        return Err(LineError::Unbalanced(tokens[j].to_string()));
    }
    Ok(out)
}

/// Minimum of `phi({x})` and the point where it is taken: the smallest
/// breakpoint attaining it, else 0, else a point of the minimizing piece.
fn minimum<S: Scalar>(v: &Valuation1D<S>) -> (S, S) {
    let grid = v.grid();
    let m = grid
        .iter()
        .map(|x| v.point_value(x))
        .min()
        .expect("grid is never empty");
    let mut bps = v.f.breakpoints();
    bps.extend(v.g.breakpoints());
    bps.sort();
    let c = bps
        .into_iter()
        .find(|x| v.point_value(x) == m)
        .or_else(|| Some(S::zero()).filter(|z| v.point_value(z) == m))
        .unwrap_or_else(|| grid.into_iter().find(|x| v.point_value(x) == m).unwrap());
    (m, c)
}

/// Normal form of an integer-valued monotone valuation.
///
/// After shifting the minimizer of `phi({x})` to 0 and subtracting the
/// minimum, the jumps on `[0, inf)` are matched as brackets; the part on
/// `(-inf, 0)` is reflected to the positive side (which swaps the roles of
/// `f` and `g`), matched the same way, and reflected back.
pub fn decompose<S: Scalar>(v: &Valuation1D<S>) -> Result<Decomposition<S>, LineError> {
    let flags = classify(v);
    if !(flags.integer_valued && flags.monotone) {
        return Err(LineError::NotIntegerMonotone {
            integer_valued: flags.integer_valued,
            monotone: flags.monotone,
        });
    }
    let (m, c) = minimum(v);
    let fc = v.f.eval(&c);
    let f = v.f.shifted(&c).add_constant(&-fc.clone());
    let g = v.g.shifted(&c).add_constant(&-(fc + m.clone()));

    let pos_tokens = tokens(&f.nonnegative_part(), &g.nonnegative_part());
    let mut terms = match_brackets(&pos_tokens)?;

    let (fm, gm) = (f.negative_part(), g.negative_part());
    let neg_tokens = tokens(&gm.reflected(), &fm.reflected());
    terms.extend(match_brackets(&neg_tokens)?.iter().map(|t| t.reflected()));

    let back = |t: &BracketToken<S>| BracketToken {
        position: t.position.clone() + c.clone(),
        shape: t.shape,
    };
    let mut negative_trace: Vec<BracketToken<S>> = neg_tokens
        .iter()
        .map(|t| {
            back(&BracketToken {
                position: -t.position.clone(),
                shape: t.shape.mirrored(),
            })
        })
        .collect();
    negative_trace.reverse();
    Ok(Decomposition {
        terms: terms.iter().map(|t| t.shifted(&c)).collect(),
        trace: pos_tokens.iter().map(back).collect(),
        negative_trace,
        m,
        c,
    })
}

/// `(f, g)` of `m + sum of terms`, normalized to `f(0) = 0`.
pub fn reconstruct<S: Scalar>(terms: &[IntervalTerm<S>], m: &S) -> Valuation1D<S> {
    let mut f = StepFunction::zero();
    let mut g = StepFunction::constant(m.clone());
    for t in terms {
        let (tf, tg) = t.fg();
        f = f.add(&tf);
        g = g.add(&tg);
    }
    Valuation1D::normalizing(f, g)
}

/// The closed intervals of a sigma-continuous integer-valued monotone
/// valuation; the constant part appears as copies of the whole line.
pub fn closed_form<S: Scalar>(v: &Valuation1D<S>) -> Result<Vec<IntervalTerm<S>>, LineError> {
    let flags = classify(v);
    let failed: Vec<&str> = [
        ("integer_valued", flags.integer_valued),
        ("monotone", flags.monotone),
        ("sigma_continuous", flags.sigma_continuous),
    ]
    .iter()
    .filter(|(_, ok)| !ok)
    .map(|(name, _)| *name)
    .collect();
    if !failed.is_empty() {
        return Err(LineError::NotClosedForm(failed.join(", ")));
    }
    let d = decompose(v)?;
    let mut out = Vec::new();
    let mut k = d.m.clone();
    while k.is_positive() {
        out.push(IntervalTerm::Real {
            lo: None,
            lo_closed: false,
            hi: None,
            hi_closed: false,
        });
        k = k - S::one();
    }
    for t in d.terms {
        if !t.is_closed_real() {
            return Err(LineError::NotClosedForm(format!("term {t}")));
        }
        out.push(t);
    }
    Ok(out)
}

/// A one-dimensional representation with unit weights from closed intervals.
pub fn representation_of<S: Scalar>(terms: &[IntervalTerm<S>]) -> Result<Representation<S>, LineError> {
    let mut rep = Representation::empty(1);
    for t in terms {
        match t {
            IntervalTerm::Real {
                lo: Some(p),
                hi: Some(q),
                ..
            } if t.is_closed_real() => rep.push(S::one(), interval_body(p, q)),
            IntervalTerm::Real { lo: None, hi: None, .. } => rep.push(S::one(), ConvexBody::FullPlane),
            _ => return Err(LineError::BadInterval(format!("{t} is not a bounded closed interval"))),
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn q(n: i64, d: i64) -> Rational {
        r(n) / r(d)
    }

    fn ind(w: i64, lo: Option<i64>, lc: bool, hi: Option<i64>, hc: bool) -> WeightedInterval<Rational> {
        (r(w), lo.map(r), lc, hi.map(r), hc)
    }

    /// The worked example.
    pub(crate) fn worked() -> Valuation1D<Rational> {
        let f = StepFunction::from_indicators(&[
            ind(2, Some(0), false, Some(2), false),
            ind(3, Some(2), true, Some(2), true),
            ind(5, Some(2), false, Some(4), true),
            ind(7, Some(4), false, Some(6), true),
            ind(10, Some(6), false, None, false),
        ]);
        let g = StepFunction::from_indicators(&[
            ind(3, Some(0), false, Some(1), true),
            ind(4, Some(1), false, Some(2), true),
            ind(5, Some(2), false, Some(4), false),
            ind(6, Some(4), true, Some(4), true),
            ind(7, Some(4), false, Some(6), false),
            ind(8, Some(6), true, Some(6), true),
            ind(12, Some(6), false, None, false),
        ]);
        Valuation1D::new(f, g).unwrap()
    }

    #[test]
    fn worked_example_values() {
        let v = worked();
        assert_eq!(eval1(&v, &r(1), &r(3)), Ok(r(3)));
        assert_eq!(v.g().eval(&r(3)), r(5));
        assert_eq!(v.f().eval(&r(1)), r(2));
        assert_eq!(v.f().eval(&r(2)), r(3));
        assert!(eval1(&v, &r(3), &r(1)).is_err());
    }

    #[test]
    fn worked_example_decomposes_exactly() {
        let v = worked();
        let d = decompose(&v).unwrap();
        assert_eq!(
            format_trace(&d.trace),
            "(0 (0 (0 0] 0] (1 (2 2) 2] 2] [4 (4 4] 4] [6 (6 (6 (6 (6 6] 6] 6]"
        );
        assert_eq!(
            format_terms(&d.terms),
            "(0,0], (0,0], (0,2), (1,2], (2,2], [4,4], (4,4], [6,6], (6,6], (6,6], (6,∞), (6,∞)"
        );
        assert_eq!((d.m.clone(), d.c.clone()), (r(0), r(0)));
        assert!(d.negative_trace.is_empty());
        let back = reconstruct(&d.terms, &d.m);
        for a in v.grid() {
            for b in v.grid().into_iter().filter(|b| *b >= a) {
                assert_eq!(eval1(&back, &a, &b), eval1(&v, &a, &b));
                assert_eq!(d.value(&a, &b), eval1(&v, &a, &b).unwrap());
            }
        }
    }

    #[test]
    fn worked_example_flags() {
        let fl = classify(&worked());
        assert!(fl.integer_valued && fl.monotone && !fl.sigma_continuous);
        assert!(matches!(closed_form(&worked()), Err(LineError::NotClosedForm(s)) if s == "sigma_continuous"));
    }

    #[test]
    fn hit_indicator_round_trip() {
        let term = IntervalTerm::closed(q(1, 2), r(3)).unwrap();
        let v = reconstruct(std::slice::from_ref(&term), &r(0));
        let from_oracle = fg_from_oracle(&Decomposition {
            m: r(0),
            c: r(0),
            terms: vec![term.clone()],
            trace: vec![],
            negative_trace: vec![],
        });
        assert_eq!(v, from_oracle);
        let d = decompose(&v).unwrap();
        assert_eq!(d.terms, vec![term]);
        assert_eq!(format_trace(&d.trace), "[1/2 3]");
    }

    #[test]
    fn representation_oracle() {
        let rep = representation_of(&[
            IntervalTerm::closed(r(0), r(1)).unwrap(),
            IntervalTerm::closed(r(2), r(3)).unwrap(),
        ])
        .unwrap();
        let v = fg_from_oracle(&rep);
        for (a, b) in [(0, 0), (-1, 5), (1, 2), (3, 9), (-5, -1)] {
            assert_eq!(eval1(&v, &r(a), &r(b)).unwrap(), rep.value(&r(a), &r(b)));
        }
        let cf = closed_form(&v).unwrap();
        assert_eq!(format_terms(&cf), "[0,1], [2,3]");
        let chi = Representation::<Rational>::euler(1);
        let vc = fg_from_oracle(&chi);
        assert_eq!(vc, Valuation1D::constant(r(1)));
        assert_eq!(format_terms(&closed_form(&vc).unwrap()), "(-∞,∞)");
    }

    #[test]
    fn constant_valuations() {
        let d = decompose(&Valuation1D::constant(r(5))).unwrap();
        assert_eq!(d.m, r(5));
        assert!(d.terms.is_empty());
        assert_eq!(reconstruct(&[], &r(5)), Valuation1D::constant(r(5)));
        assert!(closed_form(&Valuation1D::constant(r(0))).unwrap().is_empty());
        let fl = classify(&Valuation1D::constant(r(0)));
        assert!(fl.integer_valued && fl.monotone && fl.sigma_continuous);
    }

    #[test]
    fn virtual_terms() {
        let v = reconstruct(&[IntervalTerm::VirtualR(r(1))], &r(0));
        assert_eq!(eval1(&v, &r(0), &r(1)), Ok(r(1)));
        assert_eq!(eval1(&v, &r(1), &r(2)), Ok(r(0)));
        assert!(!classify(&v).sigma_continuous);
        assert_eq!(decompose(&v).unwrap().terms, vec![IntervalTerm::VirtualR(r(1))]);
        let w = reconstruct(&[IntervalTerm::VirtualS(r(-2))], &r(0));
        assert_eq!(eval1(&w, &r(-2), &r(-2)), Ok(r(0)));
        assert_eq!(eval1(&w, &r(-2), &r(0)), Ok(r(1)));
        assert_eq!(decompose(&w).unwrap().terms, vec![IntervalTerm::VirtualS(r(-2))]);
    }

    #[test]
    fn negative_side_terms() {
        let terms = vec![
            IntervalTerm::real(Some(r(-3)), false, Some(r(-1)), true).unwrap(),
            IntervalTerm::real(None, false, Some(r(-2)), false).unwrap(),
            IntervalTerm::closed(r(-1), r(2)).unwrap(),
        ];
        let v = reconstruct(&terms, &r(1));
        let d = decompose(&v).unwrap();
        let w = reconstruct(&d.terms, &d.m);
        for a in v.grid() {
            for b in v.grid().into_iter().filter(|b| *b >= a) {
                assert_eq!(eval1(&w, &a, &b), eval1(&v, &a, &b), "[{a}, {b}]");
                let direct = terms.iter().fold(r(1), |acc, t| acc + t.value(&a, &b));
                assert_eq!(d.value(&a, &b), direct);
            }
        }
        assert!(!d.negative_trace.is_empty());
    }

    #[test]
    fn truncated_non_monotone_example() {
        let parts: Vec<_> = (1..=4)
            .map(|n| (r(1), Some(q(2 * n - 1, 2 * n)), true, Some(q(2 * n, 2 * n + 1)), false))
            .collect();
        let v = Valuation1D::new(StepFunction::zero(), StepFunction::from_indicators(&parts)).unwrap();
        let fl = classify(&v);
        assert!(fl.integer_valued && !fl.monotone && fl.sigma_continuous);
        assert!(matches!(
            decompose(&v),
            Err(LineError::NotIntegerMonotone { monotone: false, .. })
        ));
    }

    #[test]
    fn step_function_validation() {
        let bad = StepFunction::new(
            r(0),
            vec![Knot {
                x: r(1),
                left: r(1),
                value: r(1),
                right: r(1),
            }],
        );
        assert!(bad.is_err());
        assert!(Valuation1D::new(StepFunction::constant(r(1)), StepFunction::zero()).is_err());
        assert!(IntervalTerm::real(Some(r(1)), false, Some(r(1)), true).is_err());
        assert!(IntervalTerm::<Rational>::real(None, true, None, false).is_err());
    }

    #[test]
    fn reflection_is_an_involution() {
        let f = worked().g().clone();
        assert_eq!(f.reflected().reflected(), f);
        for x in probe_grid(&[&f]) {
            assert_eq!(f.reflected().eval(&-x.clone()), -f.eval(&x));
        }
    }
}
