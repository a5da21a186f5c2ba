use tnf_core::verify::{check_assoc_ordinal, check_tnorm, Witness};
use tnf_core::{AnalyticForm, ChildKind, Piece, PiecewiseIncreasingFn, Semantics, Summand, TNormExpr};

fn lin(s: f64, c: f64) -> AnalyticForm<f64> {
    AnalyticForm::linear(s, c)
}

fn upper_exp() -> AnalyticForm<f64> {
    // 0.5 + 0.5 e^(2x-2)
    AnalyticForm::Exponential { offset: 0.5, scale: 0.5 * (-2.0f64).exp(), rate: 2.0 }
}

fn sum(lo: TNormExpr<f64>, hi: TNormExpr<f64>) -> TNormExpr<f64> {
    TNormExpr::ordinal_sum(
        Semantics::ClosedSquare,
        vec![
            Summand { a: 0.0, b: 0.5, child: lo, child_kind: ChildKind::TNorm },
            Summand { a: 0.5, b: 1.0, child: hi, child_kind: ChildKind::TNorm },
        ],
    )
    .unwrap()
}

fn two(l: AnalyticForm<f64>, at_half: f64, r: AnalyticForm<f64>) -> PiecewiseIncreasingFn<f64> {
    PiecewiseIncreasingFn::new(
        vec![
            Piece { left: 0.0, value_at_left: l.eval(&0.0), form: l },
            Piece { left: 0.5, form: r, value_at_left: at_half },
        ],
        1.0,
    )
    .unwrap()
}

#[test]
fn exp_product_is_tnorm() {
    let f = PiecewiseIncreasingFn::continuous(AnalyticForm::Exponential { offset: 0.0, scale: (-1.0f64).exp(), rate: 1.0 }).unwrap();
    let v = check_tnorm(&f, &TNormExpr::Product).unwrap();
    assert!(v.is_proven(), "{:?}", v);
}

#[test]
fn jump_examples() {
    let f = two(lin(0.5, 0.0), 0.25, lin(1.0, 0.0));
    let v = check_tnorm(&f, &sum(TNormExpr::Lukasiewicz, TNormExpr::Product)).unwrap();
    assert!(v.is_proven(), "{:?}", v);
    let f = two(lin(0.5, 0.0), 0.5, lin(1.0, 0.0));
    let v = check_tnorm(&f, &sum(TNormExpr::Lukasiewicz, TNormExpr::Product)).unwrap();
    assert!(v.is_proven(), "{:?}", v);
}

#[test]
fn touching_failure() {
    let f = two(lin(0.5, 0.0), 0.25, upper_exp());
    let v = check_assoc_ordinal(&f, &sum(TNormExpr::Lukasiewicz, TNormExpr::Product)).unwrap();
    match v.witness() {
        Some(Witness::Assoc { x, y, z, left, right }) => {
            println!("{} {} {} {} {}", x, y, z, left, right);
            assert!((left - right).abs() > 0.1);
        }
        _ => panic!("{:?}", v),
    }
}

#[test]
fn nm_and_product_ok() {
    let f = two(lin(0.2, 0.3), 0.4, upper_exp());
    let v = check_tnorm(&f, &sum(TNormExpr::NilpotentMin, TNormExpr::Product)).unwrap();
    assert!(v.is_proven(), "{:?}", v);
    let f = two(lin(0.8, 0.0), 0.5, upper_exp());
    let v = check_tnorm(&f, &sum(TNormExpr::Product, TNormExpr::Product)).unwrap();
    assert!(v.is_proven(), "{:?}", v);
    let f = PiecewiseIncreasingFn::continuous(lin(0.5, 0.5)).unwrap();
    let v = check_tnorm(&f, &TNormExpr::NilpotentMin).unwrap();
    assert!(v.is_proven(), "{:?}", v);
}

#[test]
fn classes() {
    use tnf_core::classify;
    let f = PiecewiseIncreasingFn::continuous(AnalyticForm::Exponential { offset: 0.0, scale: (-1.0f64).exp(), rate: 1.0 }).unwrap();
    let c = classify(&f, &TNormExpr::Product).unwrap();
    assert_eq!(c.class.label(), "OrdinallyIrreducible", "{:?}", c);
    let f = PiecewiseIncreasingFn::continuous(lin(0.5, 0.5)).unwrap();
    assert_eq!(classify(&f, &TNormExpr::NilpotentMin).unwrap().class.label(), "TM");
    let f = two(lin(0.2, 0.3), 0.4, upper_exp());
    let c = classify(&f, &sum(TNormExpr::NilpotentMin, TNormExpr::Product)).unwrap();
    assert_eq!(c.class.label(), "NonTrivialOrdinalSum", "{:?}", c);
    let f = two(lin(0.8, 0.0), 0.5, upper_exp());
    let c = classify(&f, &sum(TNormExpr::Product, TNormExpr::Product)).unwrap();
    assert_eq!(c.class.label(), "NonTrivialOrdinalSum", "{:?}", c);
    let f = two(lin(0.5, 0.0), 0.25, upper_exp());
    let c = classify(&f, &sum(TNormExpr::Lukasiewicz, TNormExpr::Product)).unwrap();
    assert_eq!(c.class.label(), "NotAssociative", "{:?}", c);
    let c = classify(&PiecewiseIncreasingFn::<f64>::identity(), &TNormExpr::Product).unwrap();
    assert_eq!(c.class.label(), "OrdinallyIrreducible", "{:?}", c);
    let c = classify(&PiecewiseIncreasingFn::<f64>::identity(), &TNormExpr::Min).unwrap();
    assert_eq!(c.class.label(), "TM", "{:?}", c);
    let c = classify(&PiecewiseIncreasingFn::<f64>::identity(), &sum(TNormExpr::Product, TNormExpr::Lukasiewicz)).unwrap();
    assert_eq!(c.class.label(), "NonTrivialOrdinalSum", "{:?}", c);
}
