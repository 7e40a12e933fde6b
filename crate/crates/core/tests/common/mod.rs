#![allow(dead_code)]

use intval::geom::{hull, ConvexBody, Direction, HalfPlane, Point};
use intval::line::{reconstruct, IntervalTerm, Valuation1D};
use intval::valuation::Representation;
use intval::{Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn q(n: i64, d: i64) -> Rational {
    r(n) / r(d)
}

pub fn pt(x: i64, y: i64) -> Point<Rational> {
    Point::from_ints(x, y)
}

/// A rational in `[-range, range]` with denominator dividing `den`.
pub fn rational(rng: &mut Rng8, range: i64, den: i64) -> Rational {
    q(rng.gen_range(-range * den..=range * den), den)
}

pub fn point(rng: &mut Rng8, range: i64, den: i64) -> Point<Rational> {
    Point::new(rational(rng, range, den), rational(rng, range, den))
}

pub fn direction(rng: &mut Rng8) -> Direction<Rational> {
    loop {
        if let Some(d) = Direction::from_ints(rng.gen_range(-5..=5), rng.gen_range(-5..=5)) {
            return d;
        }
    }
}

pub fn halfplane(rng: &mut Rng8, range: i64) -> HalfPlane<Rational> {
    HalfPlane {
        normal: direction(rng),
        offset: rational(rng, range, 4),
    }
}

pub fn polygon(rng: &mut Rng8, range: i64, den: i64) -> ConvexBody<Rational> {
    loop {
        let n = rng.gen_range(3..=5);
        let b = hull((0..n).map(|_| point(rng, range, den)));
        if b.dimension() == Some(2) {
            return b;
        }
    }
}

pub fn segment(rng: &mut Rng8, range: i64, den: i64) -> ConvexBody<Rational> {
    loop {
        let (a, b) = (point(rng, range, den), point(rng, range, den));
        if a != b {
            return ConvexBody::segment(a, b);
        }
    }
}

/// Any nonempty body: point, segment, or polygon.
pub fn body(rng: &mut Rng8, range: i64, den: i64) -> ConvexBody<Rational> {
    match rng.gen_range(0..6) {
        0 => ConvexBody::Point(point(rng, range, den)),
        1 | 2 => segment(rng, range, den),
        _ => polygon(rng, range, den),
    }
}

/// Query bodies including the empty set and an occasional point.
pub fn query(rng: &mut Rng8, range: i64) -> ConvexBody<Rational> {
    match rng.gen_range(0..20) {
        0 => ConvexBody::Empty,
        _ => body(rng, range, 4),
    }
}

pub fn nonzero_weight(rng: &mut Rng8, max: i64) -> Rational {
    let w = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) {
        r(w)
    } else {
        r(-w)
    }
}

/// Up to `max_terms` terms with weights in `±1..=±2`, sometimes the whole plane.
pub fn representation(rng: &mut Rng8, max_terms: usize) -> Representation<Rational> {
    let n = rng.gen_range(1..=max_terms);
    let mut rep = Representation::empty(2);
    for _ in 0..n {
        let b = if rng.gen_range(0..12) == 0 {
            ConvexBody::FullPlane
        } else {
            body(rng, 3, 4)
        };
        rep.push(nonzero_weight(rng, 2), b);
    }
    rep
}

/// Configurations of positive polygons/segments and negative points/segments,
/// half of them built to be monotone.
pub fn mixed_configuration(rng: &mut Rng8) -> Representation<Rational> {
    let mut rep = Representation::empty(2);
    match rng.gen_range(0..4) {
        0 => {
            for _ in 0..rng.gen_range(1..=3) {
                let b = if rng.gen_bool(0.6) {
                    polygon(rng, 3, 2)
                } else {
                    segment(rng, 3, 2)
                };
                rep.push(r(1), b);
            }
            for _ in 0..rng.gen_range(1..=2) {
                let b = if rng.gen_bool(0.6) {
                    ConvexBody::Point(point(rng, 3, 2))
                } else {
                    segment(rng, 3, 2)
                };
                rep.push(r(-1), b);
            }
        }
        1 => {
            // a convex body cut in two; the cut is subtracted
            let whole = polygon(rng, 3, 2);
            let c = whole.centroid().unwrap();
            let h = HalfPlane::through(&direction(rng), &c);
            let a = whole.clip(&h).unwrap();
            let b = whole.clip(&h.opposite()).unwrap();
            rep.push(r(1), a.clone());
            rep.push(r(1), b.clone());
            rep.push(r(-1), a.intersect(&b));
        }
        2 => {
            // segments leaving a common point, the point subtracted
            let o = point(rng, 2, 2);
            let k = rng.gen_range(2..=4);
            for _ in 0..k {
                let d = direction(rng).vector();
                rep.push(r(1), ConvexBody::segment(o.clone(), o.add(&d)));
            }
            rep.push(r(-1), ConvexBody::Point(o));
        }
        _ => {
            // a point term removed from the corner of two rectangles, possibly restored
            let x0 = rational(rng, 2, 1);
            let y0 = rational(rng, 2, 1);
            let a = ConvexBody::rect(x0.clone(), y0.clone(), x0.clone() + r(2), y0.clone() + r(1));
            let b = ConvexBody::rect(x0.clone(), y0.clone(), x0.clone() + r(1), y0.clone() + r(2));
            rep.push(r(1), a.clone());
            rep.push(r(1), b.clone());
            rep.push(r(-1), a.intersect(&b));
            if rng.gen_bool(0.5) {
                rep.push(r(1), ConvexBody::Point(Point::new(x0 + r(1), y0 + r(1))));
            }
        }
    }
    rep
}

/// Candidates for monotone representations with weights in `{±1, ±2}`.
pub fn monotone_candidate(rng: &mut Rng8) -> Representation<Rational> {
    let w = if rng.gen_bool(0.5) { r(1) } else { r(2) };
    let base = match rng.gen_range(0..3) {
        0 => {
            let mut rep = Representation::empty(2);
            for _ in 0..rng.gen_range(1..=3) {
                rep.push(r(rng.gen_range(1..=2)), body(rng, 2, 2));
            }
            rep
        }
        _ => mixed_configuration(rng),
    };
    base.scaled(&w)
}

/// A random integer monotone valuation of the line with at most 12 breakpoints.
pub fn monotone_1d(rng: &mut Rng8) -> Valuation1D<Rational> {
    let rat = |rng: &mut Rng8| q(rng.gen_range(-100..=100), rng.gen_range(1..=100));
    let n = rng.gen_range(0..=6);
    let mut terms = Vec::new();
    for _ in 0..n {
        let (a, b) = (rat(rng), rat(rng));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (lc, hc) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let t = match rng.gen_range(0..8) {
            0 => IntervalTerm::VirtualR(lo),
            1 => IntervalTerm::VirtualS(lo),
            2 => IntervalTerm::real(None, false, Some(hi), hc).unwrap(),
            3 => IntervalTerm::real(Some(lo), lc, None, false).unwrap(),
            _ if lo == hi => IntervalTerm::closed(lo, hi).unwrap(),
            _ => IntervalTerm::real(Some(lo), lc, Some(hi), hc).unwrap(),
        };
        terms.push(t);
    }
    reconstruct(&terms, &r(rng.gen_range(0..=2)))
}
