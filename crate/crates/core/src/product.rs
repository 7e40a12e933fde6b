//! Product of a countably generated valuation with another valuation:
//! `(phi · psi)(K) = sum_n w_n psi(K ∩ C_n)`.

use crate::geom::{ConvexBody, Point};
use crate::line::{eval1, Valuation1D};
use crate::scalar::Scalar;
use crate::valuation::{equal, evaluate, Representation, ValuationError, Verdict, Witness};

/// Something that values planar convex bodies additively.
pub trait ValuationOracle<S> {
    fn value(&self, k: &ConvexBody<S>) -> S;
}

impl<S: Scalar> ValuationOracle<S> for Representation<S> {
    fn value(&self, k: &ConvexBody<S>) -> S {
        evaluate(self, k)
    }
}

/// `chi(K) = 1` for nonempty `K`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EulerCharacteristic;

impl<S: Scalar> ValuationOracle<S> for EulerCharacteristic {
    fn value(&self, k: &ConvexBody<S>) -> S {
        if k.is_empty() {
            S::zero()
        } else {
            S::one()
        }
    }
}

/// `psi_1 + psi_2`.
#[derive(Debug, Clone)]
pub struct OracleSum<A, B>(pub A, pub B);

impl<S: Scalar, A: ValuationOracle<S>, B: ValuationOracle<S>> ValuationOracle<S> for OracleSum<A, B> {
    fn value(&self, k: &ConvexBody<S>) -> S {
        self.0.value(k) + self.1.value(k)
    }
}

/// A valuation of the line applied to the trace of `K` on the x-axis.
#[derive(Debug, Clone)]
pub struct OnXAxis<S>(pub Valuation1D<S>);

impl<S: Scalar> ValuationOracle<S> for OnXAxis<S> {
    fn value(&self, k: &ConvexBody<S>) -> S {
        let axis = ConvexBody::segment(Point::new(-S::one(), S::zero()), Point::new(S::one(), S::zero()));
        let trace = match k {
            ConvexBody::Empty => return S::zero(),
            ConvexBody::FullPlane => return self.0.g().right_tail().clone() - self.0.f().left_tail().clone(),
            _ => {
                let (lo, hi) = k.bbox().expect("bounded nonempty");
                let reach = S::max_of(&lo.x.abs(), &hi.x.abs()) + S::one();
                k.intersect(&axis.scale(&reach))
            }
        };
        let xs: Vec<S> = trace.vertices().into_iter().map(|p| p.x).collect();
        match (xs.iter().min(), xs.iter().max()) {
            (Some(a), Some(b)) => eval1(&self.0, a, b).expect("min <= max"),
            _ => S::zero(),
        }
    }
}

/// Pairwise intersections with multiplied weights; empty intersections dropped.
pub fn product_cg<S: Scalar>(
    a: &Representation<S>,
    b: &Representation<S>,
) -> Result<Representation<S>, ValuationError> {
    if a.dim() != b.dim() {
        return Err(ValuationError::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut out = Representation::empty(a.dim());
    for s in a.terms() {
        for t in b.terms() {
            out.push(s.weight.clone() * t.weight.clone(), s.body.intersect(&t.body));
        }
    }
    Ok(out)
}

pub fn product_eval<S: Scalar, O: ValuationOracle<S> + ?Sized>(a: &Representation<S>, psi: &O, k: &ConvexBody<S>) -> S {
    a.terms().iter().fold(S::zero(), |acc, t| {
        acc + t.weight.clone() * psi.value(&k.intersect(&t.body))
    })
}

/// Checks that two representations of the same valuation give the same
/// product with `psi` on every probe body.
pub fn representation_independence_probe<S: Scalar, O: ValuationOracle<S> + ?Sized>(
    a1: &Representation<S>,
    a2: &Representation<S>,
    psi: &O,
    probes: &[ConvexBody<S>],
) -> Result<Verdict<S>, ValuationError> {
    if !equal(a1, a2, None)?.holds {
        return Err(ValuationError::Precondition(
            "representations define different valuations".into(),
        ));
    }
    for k in probes {
        let (l, r) = (product_eval(a1, psi, k), product_eval(a2, psi, k));
        if l != r {
            return Ok(Verdict::fail(Witness::Disagree {
                body: k.clone(),
                left: l,
                right: r,
            }));
        }
    }
    Ok(Verdict::pass())
}
