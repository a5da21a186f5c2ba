//! Range gaps, the projection onto the range, and the generated operation.

use alloc::format;
use alloc::vec::Vec;

use crate::cells::CellOp;
use crate::error::{Error, Result};
use crate::interval_set::{AccSets, Interval, IntervalSet};
use crate::mono_fn::PiecewiseIncreasingFn;
use crate::scalar::Scalar;
use crate::tnorm::TNormExpr;

/// A maximal gap `[b,d]` of the range with its unique range point `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gap<S> {
    pub b: S,
    pub d: S,
    pub c: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedPair<S> {
    pub gaps: Vec<Gap<S>>,
}

impl<S: Scalar> AssociatedPair<S> {
    /// True for the `{[1,1]}, {1}` form used when the range is `[0,1]`.
    pub fn is_trivial(&self) -> bool {
        self.gaps.len() == 1 && self.gaps[0].b == S::one() && self.gaps[0].d == S::one()
    }

    /// `M \ C`.
    pub fn proper_part(&self, m: &IntervalSet<S>) -> IntervalSet<S> {
        m.difference(&IntervalSet::points(self.gaps.iter().map(|g| g.c.clone())))
    }

    /// Index of the gap containing `y`.
    pub fn gap_of(&self, y: &S) -> Option<usize> {
        self.gaps.iter().position(|g| g.b <= *y && *y <= g.d)
    }
}

pub fn associated_pair<S: Scalar>(f: &PiecewiseIncreasingFn<S>) -> Result<AssociatedPair<S>> {
    let (lo, hi) = (f.lo(), f.hi());
    let mut raw: Vec<Gap<S>> = Vec::new();
    let f_lo = f.at(&lo);
    let f_lo_plus = f.right_limit(&lo);
    raw.push(Gap { b: S::zero(), d: f_lo_plus, c: f_lo });
    for x in f.breakpoints() {
        let (l, r) = (f.left_limit(&x), f.right_limit(&x));
        raw.push(Gap { b: l, d: r, c: f.at(&x) });
    }
    let f_hi = f.at(&hi);
    raw.push(Gap { b: f.left_limit(&hi), d: S::one(), c: f_hi });
    let gaps: Vec<Gap<S>> = raw
        .into_iter()
        .filter(|g| g.d.clone() - g.b.clone() > S::snap())
        .collect();
    let pair = if gaps.is_empty() {
        AssociatedPair { gaps: alloc::vec![Gap { b: S::one(), d: S::one(), c: S::one() }] }
    } else {
        AssociatedPair { gaps }
    };
    verify_pair(&f.range_of(), &pair)?;
    Ok(pair)
}

fn verify_pair<S: Scalar>(m: &IntervalSet<S>, pair: &AssociatedPair<S>) -> Result<()> {
    for (k, g) in pair.gaps.iter().enumerate() {
        if !m.contains_approx(&g.c) || g.c < g.b || g.c > g.d {
            return Err(Error::Gaps(format!("representative of gap {} is not in the range", k)));
        }
        let hit = m.intersect_interval(&Interval::closed(g.b.clone(), g.d.clone()));
        let (Some((lo, _)), Some((hi, _))) = (hit.inf(), hit.sup()) else {
            return Err(Error::Gaps(format!("gap {} misses the range", k)));
        };
        if !lo.near(&g.c) || !hi.near(&g.c) {
            return Err(Error::Gaps(format!("gap {} meets the range in more than one point", k)));
        }
        if k > 0 && pair.gaps[k - 1].d >= g.b {
            return Err(Error::Gaps(format!("gaps {} and {} overlap", k - 1, k)));
        }
    }
    if S::EXACT && !pair.is_trivial() {
        let covered = IntervalSet::from_vec(pair.gaps.iter().map(|g| Interval::closed(g.b.clone(), g.d.clone())).collect());
        let rebuilt = covered.complement().union(&IntervalSet::points(pair.gaps.iter().map(|g| g.c.clone())));
        if rebuilt != *m {
            return Err(Error::Gaps("gaps and representatives do not rebuild the range".into()));
        }
    }
    Ok(())
}

/// `G_M(x) = f(f^(-1)(x))`.
pub fn g_m<S: Scalar>(f: &PiecewiseIncreasingFn<S>, x: &S) -> S {
    f.at(&f.pseudo_inverse(x))
}

/// The generated operation together with the cached range data.
#[derive(Clone, Debug)]
pub struct GeneratedT<S> {
    pub f: PiecewiseIncreasingFn<S>,
    pub op: CellOp<S>,
    pub m: IntervalSet<S>,
    pub pair: AssociatedPair<S>,
    pub acc: AccSets<S>,
}

impl<S: Scalar> GeneratedT<S> {
    pub fn new(f: PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Self> {
        let op = expr.compile()?;
        Self::from_op(f, op)
    }

    pub fn from_op(f: PiecewiseIncreasingFn<S>, op: CellOp<S>) -> Result<Self> {
        if f.lo() != S::zero() || f.hi() != S::one() {
            return Err(Error::Generator("generator must live on [0,1]".into()));
        }
        let m = f.range_of();
        let pair = associated_pair(&f)?;
        let acc = m.acc_sets();
        Ok(GeneratedT { f, op, m, pair, acc })
    }

    pub fn g_m(&self, x: &S) -> S {
        g_m(&self.f, x)
    }

    /// `x (x) y = G_M(F(x,y))` for `x, y` in the range.
    pub fn otimes(&self, x: &S, y: &S) -> Result<S> {
        for v in [x, y] {
            if !self.m.contains_approx(v) {
                return Err(Error::NotInRange(v.to_f64()));
            }
        }
        Ok(self.g_m(&self.op.eval(x, y)))
    }

    pub fn eval(&self, x: &S, y: &S) -> Result<S> {
        let fx = self.f.eval(x)?;
        let fy = self.f.eval(y)?;
        Ok(self.f.pseudo_inverse(&self.op.eval(&fx, &fy)))
    }

    /// `eval` for arguments already known to lie in `[0,1]`.
    pub fn t(&self, x: &S, y: &S) -> S {
        let fx = self.f.at(x);
        let fy = self.f.at(y);
        self.f.pseudo_inverse(&self.op.eval(&fx, &fy))
    }

    /// `|T(T(x,y),z) - T(x,T(y,z))|` together with both sides.
    pub fn assoc_gap(&self, x: &S, y: &S, z: &S) -> (S, S, S) {
        let l = self.t(&self.t(x, y), z);
        let r = self.t(x, &self.t(y, z));
        ((l.clone() - r.clone()).abs_s(), l, r)
    }
}

/// `T(x,y) = f^(-1)(F(f(x), f(y)))` evaluated directly from the expression.
pub fn eval_t<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>, x: &S, y: &S) -> Result<S> {
    let fx = f.eval(x)?;
    let fy = f.eval(y)?;
    Ok(f.pseudo_inverse(&expr.eval(&fx, &fy)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono_fn::{AnalyticForm, Piece};

    #[test]
    fn exponential_gap() {
        let f = PiecewiseIncreasingFn::continuous(AnalyticForm::Exponential {
            offset: 0.0,
            scale: libm::exp(-1.0),
            rate: 1.0,
        })
        .unwrap();
        let p = associated_pair(&f).unwrap();
        assert_eq!(p.gaps.len(), 1);
        assert_eq!(p.gaps[0].b, 0.0);
        assert!((p.gaps[0].c - libm::exp(-1.0)).abs() < 1e-15);
        assert!((g_m(&f, &0.2) - libm::exp(-1.0)).abs() < 1e-12);
        let t = GeneratedT::new(f, &TNormExpr::Product).unwrap();
        assert!((t.otimes(&0.9, &0.9).unwrap() - 0.81).abs() < 1e-12);
        assert!((t.otimes(&0.5, &0.5).unwrap() - libm::exp(-1.0)).abs() < 1e-12);
        assert!((t.eval(&0.7, &0.6).unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn identity_is_trivial() {
        let p = associated_pair(&PiecewiseIncreasingFn::<f64>::identity()).unwrap();
        assert!(p.is_trivial());
        let f = PiecewiseIncreasingFn::new(
            alloc::vec![
                Piece { left: 0.0, form: AnalyticForm::linear(0.8, 0.0), value_at_left: 0.0 },
                Piece { left: 0.5, form: AnalyticForm::linear(1.0, 0.0), value_at_left: 0.5 },
            ],
            1.0,
        )
        .unwrap();
        let p = associated_pair(&f).unwrap();
        assert_eq!(p.gaps, alloc::vec![Gap { b: 0.4, d: 0.5, c: 0.5 }]);
    }
}
