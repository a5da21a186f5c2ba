//! Catalog of t-norms and t-subnorms.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::cells::CellOp;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// Summands act on `[a,b]^2`.
    ClosedSquare,
    /// Summands act on `(a,b]^2`.
    HalfOpen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChildKind {
    TNorm,
    TSubnorm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summand<S> {
    pub a: S,
    pub b: S,
    pub child: TNormExpr<S>,
    pub child_kind: ChildKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TNormExpr<S> {
    Min,
    Product,
    Lukasiewicz,
    NilpotentMin,
    ScaledSubnorm { lambda: S, inner: Box<TNormExpr<S>> },
    ZeroSubnorm,
    OrdinalSum { semantics: Semantics, summands: Vec<Summand<S>> },
}

impl<S: Scalar> TNormExpr<S> {
    pub fn scaled(lambda: S, inner: TNormExpr<S>) -> Result<Self> {
        let e = TNormExpr::ScaledSubnorm { lambda, inner: Box::new(inner) };
        e.validate()?;
        Ok(e)
    }

    pub fn ordinal_sum(semantics: Semantics, summands: Vec<Summand<S>>) -> Result<Self> {
        let e = TNormExpr::OrdinalSum { semantics, summands };
        e.validate()?;
        Ok(e)
    }

    /// Structural checks: parameter ranges, summand order, kinds, adjacency.
    pub fn validate(&self) -> Result<()> {
        match self {
            TNormExpr::ScaledSubnorm { lambda, inner } => {
                if !(*lambda > S::zero() && *lambda < S::one()) {
                    return Err(Error::Expr(format!("scale {} must lie in (0,1)", lambda)));
                }
                inner.validate()
            }
            TNormExpr::OrdinalSum { semantics, summands } => {
                if summands.is_empty() {
                    return Err(Error::Expr("ordinal sum without summands".into()));
                }
                for (i, s) in summands.iter().enumerate() {
                    s.child.validate()?;
                    if !(S::zero() <= s.a && s.a < s.b && s.b <= S::one()) {
                        return Err(Error::Expr(format!("summand {} needs 0 <= a < b <= 1", i)));
                    }
                    if i > 0 && summands[i - 1].b > s.a {
                        return Err(Error::Expr(format!("summands {} and {} overlap or are unsorted", i - 1, i)));
                    }
                    let is_t = s.child.is_tnorm();
                    if is_t != (s.child_kind == ChildKind::TNorm) {
                        return Err(Error::Expr(format!("summand {} declares the wrong child kind", i)));
                    }
                    if *semantics == Semantics::ClosedSquare && !is_t {
                        return Err(Error::Expr(format!("closed-square summand {} must be a t-norm", i)));
                    }
                }
                for i in 1..summands.len() {
                    let (lo, up) = (&summands[i - 1], &summands[i]);
                    if lo.b == up.a && !lo.child.is_tnorm() && up.child.has_zero_divisors() {
                        return Err(Error::Adjacency(i - 1, i));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Direct recursive evaluation.
    pub fn eval(&self, x: &S, y: &S) -> S {
        match self {
            TNormExpr::Min => x.min_s(y),
            TNormExpr::Product => x.clone() * y.clone(),
            TNormExpr::Lukasiewicz => (x.clone() + y.clone() - S::one()).max_s(&S::zero()),
            TNormExpr::NilpotentMin => {
                if x.clone() + y.clone() > S::one() {
                    x.min_s(y)
                } else {
                    S::zero()
                }
            }
            TNormExpr::ScaledSubnorm { lambda, inner } => lambda.clone() * inner.eval(x, y),
            TNormExpr::ZeroSubnorm => S::zero(),
            TNormExpr::OrdinalSum { semantics, summands } => {
                for s in summands {
                    let inside = |v: &S| match semantics {
                        Semantics::ClosedSquare => s.a <= *v && *v <= s.b,
                        Semantics::HalfOpen => s.a < *v && *v <= s.b,
                    };
                    if inside(x) && inside(y) {
                        let w = s.b.clone() - s.a.clone();
                        let u = (x.clone() - s.a.clone()) / w.clone();
                        let v = (y.clone() - s.a.clone()) / w.clone();
                        return s.a.clone() + w * s.child.eval(&u, &v);
                    }
                }
                x.min_s(y)
            }
        }
    }

    pub fn has_zero_divisors(&self) -> bool {
        match self {
            TNormExpr::Min | TNormExpr::Product => false,
            TNormExpr::Lukasiewicz | TNormExpr::NilpotentMin | TNormExpr::ZeroSubnorm => true,
            TNormExpr::ScaledSubnorm { inner, .. } => inner.has_zero_divisors(),
            TNormExpr::OrdinalSum { summands, .. } => summands
                .first()
                .map(|s| s.a == S::zero() && s.child.has_zero_divisors())
                .unwrap_or(false),
        }
    }

    pub fn is_tnorm(&self) -> bool {
        match self {
            TNormExpr::ScaledSubnorm { .. } | TNormExpr::ZeroSubnorm => false,
            TNormExpr::OrdinalSum { summands, .. } => summands
                .iter()
                .filter(|s| s.b == S::one())
                .all(|s| s.child.is_tnorm()),
            _ => true,
        }
    }

    /// Whether the node is associative. Scaling keeps associativity only
    /// for products: `l*min(l*min(x,y),z)` already fails at `(0.1,1,1)`.
    pub fn is_associative(&self) -> bool {
        match self {
            TNormExpr::ScaledSubnorm { inner, .. } => {
                matches!(**inner, TNormExpr::Product | TNormExpr::ZeroSubnorm)
                    || matches!(**inner, TNormExpr::ScaledSubnorm { .. }) && inner.is_associative()
            }
            TNormExpr::OrdinalSum { summands, .. } => summands.iter().all(|s| s.child.is_associative()),
            _ => true,
        }
    }

    /// `x -> F(2x,2y)/2` on `[0,1/2]^2`, min elsewhere.
    pub fn bar_lift(&self) -> Result<Self> {
        if self.is_tnorm() {
            return Err(Error::IsTNorm);
        }
        Self::ordinal_sum(
            Semantics::HalfOpen,
            alloc::vec![Summand { a: S::zero(), b: S::half(), child: self.clone(), child_kind: ChildKind::TSubnorm }],
        )
    }

    pub fn compile(&self) -> Result<CellOp<S>> {
        self.validate()?;
        Ok(CellOp::compile(self))
    }

    pub fn summands(&self) -> Option<(Semantics, &[Summand<S>])> {
        match self {
            TNormExpr::OrdinalSum { semantics, summands } => Some((*semantics, summands)),
            _ => None,
        }
    }

    /// The four operators attached to summand `index`.
    pub fn summand_views(&self, index: usize) -> Result<SummandViews<S>> {
        let (_, summands) = self.summands().ok_or(Error::NotOrdinalSum)?;
        let s = summands.get(index).ok_or(Error::Index(index))?;
        let unit = s.child.compile()?;
        let bar = if s.child.is_tnorm() { None } else { Some(s.child.bar_lift()?.compile()?.rescaled(&s.a, &s.b)) };
        Ok(SummandViews {
            unit: s.child.clone(),
            sup: unit.rescaled(&s.a, &s.b),
            bar,
            underline: unit.underline().rescaled(&s.a, &s.b),
        })
    }

    /// Points where the operator changes formula along an axis.
    pub fn critical_points(&self) -> Vec<S> {
        let mut v = Vec::new();
        if let TNormExpr::OrdinalSum { summands, .. } = self {
            for s in summands {
                v.push(s.a.clone());
                v.push(s.b.clone());
                let w = s.b.clone() - s.a.clone();
                for c in s.child.critical_points() {
                    v.push(s.a.clone() + w.clone() * c);
                }
            }
        }
        if let TNormExpr::NilpotentMin = self {
            v.push(S::half());
        }
        if let TNormExpr::ScaledSubnorm { inner, .. } = self {
            v.extend(inner.critical_points());
        }
        v
    }
}

pub struct SummandViews<S> {
    /// `F_beta` on the unit square.
    pub unit: TNormExpr<S>,
    /// `F^beta` on `[a,b]^2`.
    pub sup: CellOp<S>,
    /// Halved rescaling, present for proper subnorm summands.
    pub bar: Option<CellOp<S>>,
    /// `F^beta` on `[a,b)^2`, min on the top edges.
    pub underline: CellOp<S>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn catalog_values() {
        assert_eq!(TNormExpr::Product.eval(&r(1, 2), &r(2, 5)), r(1, 5));
        assert_eq!(TNormExpr::NilpotentMin.eval(&r(3, 10), &r(7, 10)), r(0, 1));
        let half = TNormExpr::scaled(r(1, 2), TNormExpr::Product).unwrap();
        assert!(!half.is_tnorm());
        assert!(!TNormExpr::<Rational>::ZeroSubnorm.is_tnorm());
        assert!(TNormExpr::scaled(r(1, 2), TNormExpr::Lukasiewicz).unwrap().has_zero_divisors());
    }

    #[test]
    fn bar_values() {
        let z = TNormExpr::<Rational>::ZeroSubnorm.bar_lift().unwrap();
        assert_eq!(z.eval(&r(3, 10), &r(2, 5)), r(0, 1));
        assert_eq!(z.eval(&r(7, 10), &r(2, 5)), r(2, 5));
        let h = TNormExpr::scaled(r(1, 2), TNormExpr::Product).unwrap().bar_lift().unwrap();
        assert_eq!(h.eval(&r(1, 4), &r(1, 4)), r(1, 16));
        assert!(h.is_tnorm());
        assert!(TNormExpr::<Rational>::Min.bar_lift().is_err());
    }
}
