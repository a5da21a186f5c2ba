use proptest::prelude::*;
use tnf_core::*;

type R = Rational;

fn r(n: i64, d: i64) -> R {
    R::ratio(n, d)
}

// strictly increasing piecewise linear generator with optional jumps, on a 1/40 lattice
fn lattice_fn() -> impl Strategy<Value = PiecewiseIncreasingFn<R>> {
    (1usize..4, prop::collection::vec(0i64..=40, 8), prop::collection::vec(any::<bool>(), 4)).prop_filter_map(
        "degenerate",
        |(k, mut vals, jumps)| {
            let mut cuts: Vec<i64> = (1..k as i64).map(|i| i * 40 / k as i64).collect();
            cuts.insert(0, 0);
            vals.truncate(2 * k);
            vals.sort();
            let mut pieces = Vec::new();
            for i in 0..k {
                let (lo, hi) = (vals[2 * i], vals[2 * i + 1]);
                if hi <= lo {
                    return None;
                }
                let l = r(cuts[i], 40);
                let rt = if i + 1 < k { r(cuts[i + 1], 40) } else { R::one() };
                let slope = (r(hi, 40) - r(lo, 40)) / (rt - l.clone());
                let at = if i > 0 && jumps[i] { r(vals[2 * i - 1], 40) } else { r(lo, 40) };
                pieces.push(Piece { left: l.clone(), form: AnalyticForm::linear(slope.clone(), r(lo, 40) - slope * l), value_at_left: at });
            }
            let end = if jumps[0] { r(vals[2 * k - 1], 40) } else { R::one() };
            PiecewiseIncreasingFn::new(pieces, end).ok()
        },
    )
}

fn catalog() -> Vec<TNormExpr<R>> {
    let sum = |sem, parts: Vec<(R, R, TNormExpr<R>)>| {
        let summands = parts
            .into_iter()
            .map(|(a, b, child)| {
                let child_kind = if child.is_tnorm() { ChildKind::TNorm } else { ChildKind::TSubnorm };
                Summand { a, b, child, child_kind }
            })
            .collect();
        TNormExpr::ordinal_sum(sem, summands).unwrap()
    };
    vec![
        TNormExpr::Min,
        TNormExpr::Product,
        TNormExpr::Lukasiewicz,
        TNormExpr::NilpotentMin,
        TNormExpr::ZeroSubnorm,
        TNormExpr::scaled(r(3, 5), TNormExpr::Product).unwrap(),
        sum(Semantics::ClosedSquare, vec![(R::zero(), r(1, 2), TNormExpr::Product), (r(1, 2), R::one(), TNormExpr::Lukasiewicz)]),
        sum(Semantics::ClosedSquare, vec![(R::zero(), r(3, 10), TNormExpr::NilpotentMin), (r(3, 10), R::one(), TNormExpr::NilpotentMin)]),
        sum(Semantics::HalfOpen, vec![(r(1, 5), r(7, 10), TNormExpr::ZeroSubnorm)]),
        sum(Semantics::HalfOpen, vec![(r(1, 4), r(3, 4), TNormExpr::scaled(r(1, 2), TNormExpr::Product).unwrap())]),
        sum(Semantics::HalfOpen, vec![(r(1, 4), r(3, 4), TNormExpr::Lukasiewicz)]),
    ]
}

fn unit() -> impl Strategy<Value = R> {
    (0i64..=120).prop_map(|n| r(n, 120))
}

#[test]
fn pseudo_inverse_undoes_f_on_1000_points() {
    let fs = [
        PiecewiseIncreasingFn::continuous(AnalyticForm::Exponential { offset: 0.0, scale: (-1.0f64).exp(), rate: 1.0 }).unwrap(),
        PiecewiseIncreasingFn::new(
            vec![
                Piece { left: 0.0, form: AnalyticForm::linear(0.5, 0.0), value_at_left: 0.0 },
                Piece { left: 0.5, form: AnalyticForm::linear(0.5, 0.5), value_at_left: 0.6 },
            ],
            1.0,
        )
        .unwrap(),
    ];
    for f in &fs {
        for i in 0..1000 {
            let x = i as f64 / 999.0;
            let y = f.eval(&x).unwrap();
            assert!((f.pseudo_inverse(&y) - x).abs() < 1e-9, "x = {x}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pseudo_inverse_laws(f in lattice_fn(), x in unit(), y1 in unit(), y2 in unit()) {
        prop_assert_eq!(f.pseudo_inverse(&f.eval(&x).unwrap()), x);
        let (lo, hi) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
        prop_assert!(f.pseudo_inverse(&lo) <= f.pseudo_inverse(&hi));
        // f(p-) <= y <= f(p+) away from the ends
        let p = f.pseudo_inverse(&lo);
        let (l, rt) = f.side_limits(&p).unwrap();
        if p > R::zero() && p < R::one() {
            prop_assert!(l <= lo && lo <= rt);
        }
    }

    #[test]
    fn g_m_fixes_the_range(f in lattice_fn(), x in unit(), y in unit()) {
        let sys = GeneratedT::new(f.clone(), &TNormExpr::Product).unwrap();
        let v = f.eval(&x).unwrap();
        prop_assert_eq!(sys.g_m(&v), v);
        let g = sys.g_m(&y);
        prop_assert_eq!(sys.g_m(&g), g.clone());
        prop_assert_eq!(g, f.eval(&f.pseudo_inverse(&y)).unwrap());
    }

    #[test]
    fn f_of_t_is_otimes(f in lattice_fn(), i in 0usize..11, x in unit(), y in unit()) {
        let e = &catalog()[i];
        let sys = GeneratedT::new(f.clone(), e).unwrap();
        let t = sys.eval(&x, &y).unwrap();
        let (fx, fy) = (f.eval(&x).unwrap(), f.eval(&y).unwrap());
        prop_assert_eq!(f.eval(&t).unwrap(), sys.otimes(&fx, &fy).unwrap());
        prop_assert_eq!(t, eval_t(&f, e, &x, &y).unwrap());
    }

    #[test]
    fn compiled_matches_direct(i in 0usize..11, x in unit(), y in unit()) {
        let e = &catalog()[i];
        prop_assert_eq!(e.compile().unwrap().eval(&x, &y), e.eval(&x, &y));
    }

    #[test]
    fn summand_views_on_their_squares(i in 6usize..11, u in unit(), v in unit()) {
        let e = &catalog()[i];
        let (sem, summands) = e.summands().unwrap();
        for (k, s) in summands.iter().enumerate() {
            let w = s.b.clone() - s.a.clone();
            let (x, y) = (s.a.clone() + w.clone() * u.clone(), s.a.clone() + w.clone() * v.clone());
            if sem == Semantics::HalfOpen && (x == s.a || y == s.a) {
                continue;
            }
            let views = e.summand_views(k).unwrap();
            prop_assert_eq!(views.sup.eval(&x, &y), e.eval(&x, &y));
            prop_assert_eq!(e.eval(&x, &y), s.a.clone() + w * s.child.eval(&u, &v));
        }
    }

    #[test]
    fn bar_lift_halves_the_subnorm(i in 0usize..11, x in unit(), y in unit()) {
        let e = &catalog()[i];
        if e.is_tnorm() {
            prop_assert!(e.bar_lift().is_err());
            return Ok(());
        }
        let bar = e.bar_lift().unwrap();
        let h = r(1, 2);
        let two = R::ratio(2, 1);
        let want = if x <= h && y <= h && x > R::zero() && y > R::zero() {
            e.eval(&(x.clone() * two.clone()), &(y.clone() * two)) * h
        } else {
            x.clone().min(y.clone())
        };
        prop_assert_eq!(bar.eval(&x, &y), want);
    }

    #[test]
    fn catalog_is_commutative_associative_monotone(i in 0usize..11, x in unit(), y in unit(), z in unit()) {
        let e = &catalog()[i];
        prop_assert_eq!(e.eval(&x, &y), e.eval(&y, &x));
        prop_assert_eq!(e.eval(&e.eval(&x, &y), &z), e.eval(&x, &e.eval(&y, &z)));
        if y <= z {
            prop_assert!(e.eval(&x, &y) <= e.eval(&x, &z));
        }
        prop_assert!(e.eval(&x, &R::one()) <= x);
        if e.is_tnorm() {
            prop_assert_eq!(e.eval(&R::one(), &x), x);
        }
    }
}
