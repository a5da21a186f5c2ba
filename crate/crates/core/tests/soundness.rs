use proptest::prelude::*;
use tnf_core::verify::check_tnorm;
use tnf_core::*;
type R = Rational;
fn rq(v: f64) -> R { R::from_f64(v).unwrap() }

struct Lcg(u64);
impl Lcg {
    fn next(&mut self) -> f64 { self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((self.0 >> 33) % 1000) as f64 / 1000.0 }
    fn pick(&mut self, n: usize) -> usize { (self.next() * n as f64) as usize % n }
}

fn q(v: f64) -> f64 { (v * 20.0).round() / 20.0 }

fn gen(r: &mut Lcg) -> Option<PiecewiseIncreasingFn<R>> {
    let k = 1 + r.pick(3);
    let mut cuts: Vec<f64> = (1..k).map(|_| q(0.1 + 0.8 * r.next())).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap()); cuts.dedup();
    let mut lefts = vec![0.0]; lefts.extend(cuts);
    let mut vals: Vec<f64> = (0..2 * lefts.len()).map(|_| q(r.next())).collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut pieces = vec![];
    for (i, l) in lefts.iter().enumerate() {
        let rr = lefts.get(i + 1).copied().unwrap_or(1.0);
        let (lo, hi) = (vals[2 * i], vals[2 * i + 1]);
        if hi <= lo { return None; }
        let (lo, hi, rr_, l_) = (rq(lo), rq(hi), rq(rr), rq(*l));
        let slope = (hi - lo.clone()) / (rr_ - l_.clone());
        let at = if i > 0 && r.next() < 0.5 { rq(vals[2 * i - 1]) } else { lo.clone() };
        pieces.push(Piece { left: l_.clone(), form: AnalyticForm::linear(slope.clone(), lo - slope * l_), value_at_left: at });
    }
    let end = rq(if r.next() < 0.5 { *vals.last().unwrap() } else { 1.0 });
    PiecewiseIncreasingFn::new(pieces, end).ok()
}

fn expr(r: &mut Lcg) -> TNormExpr<R> {
    let base = [TNormExpr::Product, TNormExpr::Lukasiewicz, TNormExpr::NilpotentMin, TNormExpr::Min];
    match r.pick(4) {
        0 => base[r.pick(4)].clone(),
        1 => {
            let m = rq(q(0.2 + 0.6 * r.next()));
            TNormExpr::ordinal_sum(Semantics::ClosedSquare, vec![
                Summand { a: rq(0.0), b: m.clone(), child: base[r.pick(4)].clone(), child_kind: ChildKind::TNorm },
                Summand { a: m, b: rq(1.0), child: base[r.pick(4)].clone(), child_kind: ChildKind::TNorm },
            ]).unwrap()
        }
        2 => TNormExpr::scaled(rq(q(0.2 + 0.6 * r.next()).max(0.05)), TNormExpr::Product).unwrap(),
        _ => {
            let a = rq(q(0.1 + 0.3 * r.next())); let b = rq(q(0.5 + 0.4 * r.next()));
            let inner = if r.next() < 0.5 { base[r.pick(4)].clone() } else { if r.next() < 0.5 { TNormExpr::ZeroSubnorm } else { TNormExpr::scaled(rq(0.5), TNormExpr::Product).unwrap() } };
            let kind = if inner.is_tnorm() { ChildKind::TNorm } else { ChildKind::TSubnorm };
            TNormExpr::ordinal_sum(Semantics::HalfOpen, vec![Summand { a, b, child: inner, child_kind: kind }]).unwrap()
        }
    }
}


// A proven t-norm must pass the exact grid oracle; a refuting witness must really fail.
fn agree(seed: u64) -> std::result::Result<(), TestCaseError> {
    let mut r = Lcg(seed);
    let (f, e) = loop {
        if let Some(f) = gen(&mut r) {
            break (f, expr(&mut r));
        }
    };
    let Ok(v) = check_tnorm(&f, &e) else { return Ok(()) };
    let t = |x: &R, y: &R| eval_t(&f, &e, x, y).unwrap();
    match &v {
        Verdict::Proven { .. } => {
            let sys = GeneratedT::new(f.clone(), &e).unwrap();
            let g = GridSpec::new(13, oracle::critical_points(&sys)).unwrap();
            let w = grid_assoc_search(t, &g, &R::zero());
            prop_assert!(w.is_none(), "{:?} {:?} {}", f, e, w.unwrap());
            prop_assert!(g.points().iter().all(|x| t(&R::one(), x) == *x));
        }
        Verdict::Refuted { witness: Witness::Assoc { x, y, z, .. }, .. } => {
            prop_assert_ne!(t(&t(x, y), z), t(x, &t(y, z)));
        }
        Verdict::Refuted { witness: Witness::Neutral { x, .. }, .. } => {
            prop_assert_ne!(t(&R::one(), x), x.clone());
        }
        _ => {}
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn verdicts_match_oracle(seed in any::<u64>()) {
        agree(seed)?;
    }
}
