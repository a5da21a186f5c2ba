use alloc::vec::Vec;

use crate::cells::Side;
use crate::error::{Error, Result};
use crate::generated::GeneratedT;
use crate::interval_set::{Interval, IntervalSet};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Neutral<S> {
    Holds,
    /// Fails at the domain point `x`, with `p = f(x)`.
    Fails { x: S, p: S },
}

impl<S> Neutral<S> {
    pub fn holds(&self) -> bool {
        matches!(self, Neutral::Holds)
    }
}

/// `sup (M ∩ [0,p))`, the left limit of `f` at the preimage of `p`.
pub(crate) fn left_value<S: Scalar>(sys: &GeneratedT<S>, p: &S) -> Option<S> {
    if sys.acc.left.contains(p) {
        return Some(p.clone());
    }
    sys.m
        .intersect_interval(&Interval::new(S::zero(), p.clone(), true, false))
        .sup()
        .map(|(v, _)| v)
}

/// First `p` in `d ⊆ M` with `F(p, q) < f(x-)` where `p = f(x)`; the second
/// argument is replaced by its one-sided limit for `Plus`/`Minus`.
pub fn neutral_scan<S: Scalar>(sys: &GeneratedT<S>, q: &S, side: Side, d: &IntervalSet<S>) -> Option<S> {
    let sec = sys.op.section(q, side);
    for c in d.components() {
        let mut rest = IntervalSet::from_interval(c.clone());
        if c.lo_closed && !sys.acc.left.contains(&c.lo) {
            let p0 = c.lo.clone();
            if let (Some(lv), Some(v)) = (left_value(sys, &p0), sec.eval(&p0)) {
                if v + S::snap() < lv {
                    return Some(p0);
                }
            }
            rest = rest.difference(&IntervalSet::points([p0]));
        }
        let bad = sec.non_identity(&rest);
        if let Some(b) = bad.components().first() {
            let p = if b.is_point() {
                b.lo.clone()
            } else if b.hi_closed {
                b.hi.clone()
            } else {
                b.midpoint()
            };
            return Some(p);
        }
    }
    None
}

/// Decides `f(x-) <= F(f(t), f(x))` for all `0 < x <= t`.
pub fn check_left_neutral<S: Scalar>(sys: &GeneratedT<S>, t: &S) -> Result<Neutral<S>> {
    if !(*t > S::zero() && *t <= S::one()) {
        return Err(Error::Domain(t.to_f64()));
    }
    let q = sys.f.at(t);
    let f0 = sys.f.at(&S::zero());
    let d = sys.m.intersect_interval(&Interval::new(f0, q.clone(), false, true));
    Ok(match neutral_scan(sys, &q, Side::Exact, &d) {
        None => Neutral::Holds,
        Some(p) => Neutral::Fails { x: sys.f.pseudo_inverse(&p), p },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cut<S> {
    /// `T(y,z) = y` whenever `y < x < z`.
    Cut,
    /// `y < x < z` with `T(y,z) < y`.
    Split { y: S, z: S },
    Unresolved,
}

/// Whether `x` in `(0,1)` splits `T` into an ordinal sum.
pub fn cut_point<S: Scalar>(sys: &GeneratedT<S>, x: &S) -> Cut<S> {
    let q = sys.f.right_limit(x);
    let f0 = sys.f.at(&S::zero());
    let top = sys.f.left_limit(x);
    let d = sys.m.intersect_interval(&Interval::new(f0, top, false, false));
    let Some(p) = neutral_scan(sys, &q, Side::Plus, &d) else {
        return Cut::Cut;
    };
    let y = sys.f.pseudo_inverse(&p);
    let mut zs: Vec<S> = Vec::new();
    let w = S::one() - x.clone();
    let mut step = w;
    for _ in 0..60 {
        step = step * S::half();
        zs.push(x.clone() + step.clone());
    }
    for z in zs {
        if sys.t(&y, &z) + S::tol() < y {
            return Cut::Split { y, z };
        }
    }
    Cut::Unresolved
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono_fn::PiecewiseIncreasingFn;
    use crate::tnorm::TNormExpr;

    #[test]
    fn min_is_neutral_everywhere() {
        let sys = GeneratedT::<f64>::new(PiecewiseIncreasingFn::identity(), &TNormExpr::Min).unwrap();
        for t in [0.1, 0.5, 1.0] {
            assert!(check_left_neutral(&sys, &t).unwrap().holds());
        }
        assert!(check_left_neutral(&sys, &0.0).is_err());
    }

    #[test]
    fn product_has_no_cut() {
        let sys = GeneratedT::<f64>::new(PiecewiseIncreasingFn::identity(), &TNormExpr::Product).unwrap();
        assert!(matches!(cut_point(&sys, &0.5), Cut::Split { .. }));
        let m = GeneratedT::<f64>::new(PiecewiseIncreasingFn::identity(), &TNormExpr::Min).unwrap();
        assert_eq!(cut_point(&m, &0.5), Cut::Cut);
    }
}
