use intval::line::{classify, decompose, eval1, reconstruct, IntervalTerm, Shape};
use intval::{Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| Rational::from_int(n) / Rational::from_int(d))
}

fn term() -> impl Strategy<Value = IntervalTerm<Rational>> {
    (0u8..6, rational(), rational(), any::<bool>(), any::<bool>()).prop_map(|(kind, a, b, lc, hc)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match kind {
            0 => IntervalTerm::VirtualR(lo),
            1 => IntervalTerm::VirtualS(lo),
            2 => IntervalTerm::real(None, false, Some(hi), hc).unwrap(),
            3 => IntervalTerm::real(Some(lo), lc, None, false).unwrap(),
            _ if lo == hi => IntervalTerm::closed(lo.clone(), hi).unwrap(),
            _ => IntervalTerm::real(Some(lo), lc, Some(hi), hc).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decompose_then_reconstruct_is_identity(terms in prop::collection::vec(term(), 0..6), m in 0i64..3) {
        let m = Rational::from_int(m);
        let v = reconstruct(&terms, &m);
        let fl = classify(&v);
        prop_assert!(fl.integer_valued && fl.monotone);
        let d = decompose(&v).unwrap();
        let w = reconstruct(&d.terms, &d.m);
        let grid = v.grid();
        for a in &grid {
            for b in grid.iter().filter(|b| *b >= a) {
                let direct = terms.iter().fold(m.clone(), |acc, t| acc + t.value(a, b));
                prop_assert_eq!(eval1(&v, a, b).unwrap(), direct.clone());
                prop_assert_eq!(eval1(&w, a, b).unwrap(), direct.clone());
                prop_assert_eq!(d.value(a, b), direct);
            }
        }
    }

    #[test]
    fn brackets_encode_the_jumps(terms in prop::collection::vec(term(), 0..6)) {
        let v = reconstruct(&terms, &Rational::from_int(0));
        let d = decompose(&v).unwrap();
        let c = d.c.clone();
        for x in v.grid().into_iter().filter(|x| *x >= c) {
            let count = |s: Shape| Rational::from_int(d.trace.iter().filter(|t| t.position == x && t.shape == s).count() as i64);
            let g = v.g();
            let f = v.f();
            // shifting by constants leaves jumps alone; the left jump at c belongs to the other side
            let (gl, fl) = if x == c { (Rational::from_int(0), Rational::from_int(0)) } else { (g.eval(&x) - g.left_limit(&x), f.eval(&x) - f.left_limit(&x)) };
            prop_assert_eq!(count(Shape::OpenClosed), gl);
            prop_assert_eq!(count(Shape::OpenOpen), g.right_limit(&x) - g.eval(&x));
            prop_assert_eq!(count(Shape::CloseOpen), fl);
            prop_assert_eq!(count(Shape::CloseClosed), f.right_limit(&x) - f.eval(&x));
        }
        for t in &d.terms {
            if let IntervalTerm::Real { lo: Some(p), hi: Some(q), lo_closed, hi_closed } = t {
                prop_assert!(!(p == q && !(*lo_closed && *hi_closed)));
            }
        }
    }

    #[test]
    fn additivity_on_the_line(terms in prop::collection::vec(term(), 0..6), a in rational(), b in rational(), c in rational()) {
        let v = reconstruct(&terms, &Rational::from_int(0));
        let mut xs = [a, b, c];
        xs.sort();
        let [a, b, c] = xs;
        let lhs = eval1(&v, &a, &b).unwrap() + eval1(&v, &b, &c).unwrap() - eval1(&v, &b, &b).unwrap();
        prop_assert_eq!(lhs, eval1(&v, &a, &c).unwrap());
    }
}
