//! Operators compiled into a finite partition of the square.
//!
//! Each cell carries `alpha + beta * base((x-p)/q, (y-p)/q)` with a bilinear
//! or piecewise-linear base, so sections `x -> F(x,y)` are piecewise affine
//! and images of boxes follow from corner values.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::interval_set::{Interval, IntervalSet};
use crate::scalar::Scalar;
use crate::tnorm::{Semantics, TNormExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Min,
    Product,
    Luk,
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Formula<S> {
    pub p: S,
    pub q: S,
    pub alpha: S,
    pub beta: S,
    pub base: Base,
}

impl<S: Scalar> Formula<S> {
    fn unit(base: Base) -> Self {
        Formula { p: S::zero(), q: S::one(), alpha: S::zero(), beta: S::one(), base }
    }

    fn min() -> Self {
        Self::unit(Base::Min)
    }

    fn mapped(&self, a: &S, w: &S) -> Self {
        Formula {
            p: a.clone() + w.clone() * self.p.clone(),
            q: w.clone() * self.q.clone(),
            alpha: a.clone() + w.clone() * self.alpha.clone(),
            beta: w.clone() * self.beta.clone(),
            base: self.base,
        }
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        let u = (x.clone() - self.p.clone()) / self.q.clone();
        let v = (y.clone() - self.p.clone()) / self.q.clone();
        let b = match self.base {
            Base::Min => u.min_s(&v),
            Base::Product => u * v,
            Base::Luk => (u + v - S::one()).max_s(&S::zero()),
            Base::Zero => S::zero(),
        };
        self.alpha.clone() + self.beta.clone() * b
    }

    /// Value at `(x + dx*e, y + dy*e)` as a polynomial in `e`.
    pub fn eval_jet(&self, x: &JetPoint<S>, y: &JetPoint<S>) -> Jet<S> {
        let u = Jet::linear((x.v.clone() - self.p.clone()) / self.q.clone(), S::ratio(x.d as i64, 1) / self.q.clone());
        let v = Jet::linear((y.v.clone() - self.p.clone()) / self.q.clone(), S::ratio(y.d as i64, 1) / self.q.clone());
        let b = match self.base {
            Base::Min => {
                if u.cmp(&v) == Ordering::Greater {
                    v
                } else {
                    u
                }
            }
            Base::Product => u.mul(&v),
            Base::Luk => {
                let s = u.add(&v).shift(-S::one());
                if s.cmp(&Jet::constant(S::zero())) == Ordering::Greater {
                    s
                } else {
                    Jet::constant(S::zero())
                }
            }
            Base::Zero => Jet::constant(S::zero()),
        };
        b.scale(&self.beta).shift(self.alpha.clone())
    }
}

/// Truncated polynomial `c0 + c1 e + c2 e^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S> {
    pub c: [S; 3],
}

impl<S: Scalar> Jet<S> {
    pub fn constant(v: S) -> Self {
        Jet { c: [v, S::zero(), S::zero()] }
    }
    fn linear(v: S, d: S) -> Self {
        Jet { c: [v, d, S::zero()] }
    }
    fn add(&self, o: &Self) -> Self {
        Jet {
            c: [
                self.c[0].clone() + o.c[0].clone(),
                self.c[1].clone() + o.c[1].clone(),
                self.c[2].clone() + o.c[2].clone(),
            ],
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let [a0, a1, a2] = &self.c;
        let [b0, b1, b2] = &o.c;
        Jet {
            c: [
                a0.clone() * b0.clone(),
                a0.clone() * b1.clone() + a1.clone() * b0.clone(),
                a0.clone() * b2.clone() + a1.clone() * b1.clone() + a2.clone() * b0.clone(),
            ],
        }
    }
    fn scale(&self, k: &S) -> Self {
        Jet { c: [k.clone() * self.c[0].clone(), k.clone() * self.c[1].clone(), k.clone() * self.c[2].clone()] }
    }
    fn shift(&self, a: S) -> Self {
        let mut j = self.clone();
        j.c[0] = j.c[0].clone() + a;
        j
    }
    /// Lexicographic order, which is the order for small positive `e`.
    pub fn cmp(&self, o: &Self) -> Ordering {
        for i in 0..3 {
            match self.c[i].cmp_s(&o.c[i]) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }
    /// True when the value does not move with `e`.
    pub fn is_flat(&self) -> bool {
        self.c[1].is_zero_s() && self.c[2].is_zero_s()
    }
}

/// `v + d*e` for an infinitesimal `e > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint<S> {
    pub v: S,
    pub d: i8,
}

impl<S: Scalar> JetPoint<S> {
    pub fn exact(v: S) -> Self {
        JetPoint { v, d: 0 }
    }
    fn cmp_value(&self, c: &S) -> Ordering {
        self.v.cmp_s(c).then(self.d.cmp(&0))
    }
    fn in_interval(&self, i: &Interval<S>) -> bool {
        let lo = self.cmp_value(&i.lo);
        let hi = self.cmp_value(&i.hi);
        let above = lo == Ordering::Greater || (lo == Ordering::Equal && i.lo_closed);
        let below = hi == Ordering::Less || (hi == Ordering::Equal && i.hi_closed);
        above && below
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Exact,
    /// Right limit in the second argument.
    Plus,
    /// Left limit in the second argument.
    Minus,
}

impl Side {
    fn d(self) -> i8 {
        match self {
            Side::Exact => 0,
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

/// Restriction to one side of the line `x + y = c`.
#[derive(Clone, Debug, PartialEq)]
pub enum Diag<S> {
    Free,
    AtMost(S),
    Above(S),
}

impl<S: Scalar> Diag<S> {
    fn mapped(&self, a: &S, w: &S) -> Self {
        let m = |c: &S| a.clone() + a.clone() + w.clone() * c.clone();
        match self {
            Diag::Free => Diag::Free,
            Diag::AtMost(c) => Diag::AtMost(m(c)),
            Diag::Above(c) => Diag::Above(m(c)),
        }
    }

    fn admits(&self, x: &JetPoint<S>, y: &JetPoint<S>) -> bool {
        let s = JetPoint { v: x.v.clone() + y.v.clone(), d: x.d + y.d };
        match self {
            Diag::Free => true,
            Diag::AtMost(c) => s.cmp_value(c) != Ordering::Greater,
            Diag::Above(c) => s.cmp_value(c) == Ordering::Greater,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell<S> {
    pub x: Interval<S>,
    pub y: Interval<S>,
    pub diag: Diag<S>,
    pub formula: Formula<S>,
}

impl<S: Scalar> Cell<S> {
    fn contains(&self, x: &JetPoint<S>, y: &JetPoint<S>) -> bool {
        x.in_interval(&self.x) && y.in_interval(&self.y) && self.diag.admits(x, y)
    }

    fn mapped(&self, a: &S, b: &S) -> Self {
        // the ends 0 and 1 go to a and b without fresh rounding
        let w = &(b.clone() - a.clone());
        let end = |v: &S| {
            if v.is_zero_s() {
                a.clone()
            } else if *v == S::one() {
                b.clone()
            } else {
                a.clone() + w.clone() * v.clone()
            }
        };
        let map = |i: &Interval<S>| Interval { lo: end(&i.lo), hi: end(&i.hi), ..i.clone() };
        Cell {
            x: map(&self.x),
            y: map(&self.y),
            diag: self.diag.mapped(a, w),
            formula: self.formula.mapped(a, w),
        }
    }
}

/// One affine piece `x -> m*x + c` of a section.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPiece<S> {
    pub x: Interval<S>,
    pub m: S,
    pub c: S,
}

impl<S: Scalar> SectionPiece<S> {
    pub fn at(&self, x: &S) -> S {
        self.m.clone() * x.clone() + self.c.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section<S> {
    pub pieces: Vec<SectionPiece<S>>,
}

impl<S: Scalar> Section<S> {
    pub fn eval(&self, x: &S) -> Option<S> {
        self.pieces.iter().find(|p| p.x.contains(x)).map(|p| p.at(x))
    }

    /// `{x in dom : section(x) in target}`.
    pub fn preimage(&self, target: &IntervalSet<S>) -> IntervalSet<S> {
        let mut out = Vec::new();
        for p in &self.pieces {
            if p.m.is_zero_s() {
                if target.contains(&p.c) {
                    out.push(p.x.clone());
                }
                continue;
            }
            for t in target.components() {
                let i = Interval::new(
                    (t.lo.clone() - p.c.clone()) / p.m.clone(),
                    (t.hi.clone() - p.c.clone()) / p.m.clone(),
                    t.lo_closed,
                    t.hi_closed,
                );
                let j = i.intersect(&p.x);
                if !j.is_empty() {
                    out.push(j);
                }
            }
        }
        IntervalSet::from_vec(out)
    }

    pub fn image(&self, dom: &IntervalSet<S>) -> IntervalSet<S> {
        let mut out = Vec::new();
        for p in &self.pieces {
            for d in dom.components() {
                let j = d.intersect(&p.x);
                if !j.is_empty() {
                    out.push(j.affine(&p.m, &p.c));
                }
            }
        }
        IntervalSet::from_vec(out)
    }

    /// Points of `dom` where the section differs from the identity.
    pub fn non_identity(&self, dom: &IntervalSet<S>) -> IntervalSet<S> {
        let mut out = Vec::new();
        for p in &self.pieces {
            let ident = (p.m.clone() - S::one()).abs_s() <= S::snap() && p.c.abs_s() <= S::snap();
            if ident {
                continue;
            }
            out.push(p.x.clone());
        }
        let mut bad = IntervalSet::from_vec(out).intersect(dom);
        // isolated fixed points of non-identity pieces
        let mut fixed = Vec::new();
        for p in &self.pieces {
            let ident = (p.m.clone() - S::one()).abs_s() <= S::snap() && p.c.abs_s() <= S::snap();
            if ident || (p.m.clone() - S::one()).abs_s() <= S::snap() {
                continue;
            }
            let x = p.c.clone() / (S::one() - p.m.clone());
            if p.x.contains(&x) {
                fixed.push(Interval::point(x));
            }
        }
        if !fixed.is_empty() {
            bad = bad.difference(&IntervalSet::from_vec(fixed));
        }
        bad
    }
}

/// A compiled operator on `[lo,hi]^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CellOp<S> {
    pub cells: Vec<Cell<S>>,
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> CellOp<S> {
    pub fn compile(e: &TNormExpr<S>) -> Self {
        let unit = Interval::unit();
        let whole = |f: Formula<S>| Cell { x: unit.clone(), y: unit.clone(), diag: Diag::Free, formula: f };
        let cells = match e {
            TNormExpr::Min => alloc::vec![whole(Formula::unit(Base::Min))],
            TNormExpr::Product => alloc::vec![whole(Formula::unit(Base::Product))],
            TNormExpr::Lukasiewicz => alloc::vec![whole(Formula::unit(Base::Luk))],
            TNormExpr::ZeroSubnorm => alloc::vec![whole(Formula::unit(Base::Zero))],
            TNormExpr::NilpotentMin => alloc::vec![
                Cell { x: unit.clone(), y: unit.clone(), diag: Diag::AtMost(S::one()), formula: Formula::unit(Base::Zero) },
                Cell { x: unit.clone(), y: unit.clone(), diag: Diag::Above(S::one()), formula: Formula::unit(Base::Min) },
            ],
            TNormExpr::ScaledSubnorm { lambda, inner } => {
                let mut op = Self::compile(inner);
                for c in &mut op.cells {
                    c.formula.alpha = lambda.clone() * c.formula.alpha.clone();
                    c.formula.beta = lambda.clone() * c.formula.beta.clone();
                }
                op.cells
            }
            TNormExpr::OrdinalSum { semantics, summands } => {
                let mut atoms: Vec<(Interval<S>, Option<usize>)> = Vec::new();
                let mut prev_b: Option<S> = None;
                for (i, s) in summands.iter().enumerate() {
                    let closed = *semantics == Semantics::ClosedSquare && prev_b.as_ref() != Some(&s.a);
                    atoms.push((Interval::new(s.a.clone(), s.b.clone(), closed, true), Some(i)));
                    prev_b = Some(s.b.clone());
                }
                let covered = IntervalSet::from_vec(atoms.iter().map(|(i, _)| i.clone()).collect());
                for g in covered.complement().components() {
                    atoms.push((g.clone(), None));
                }
                let mut cells = Vec::new();
                for (ax, ix) in &atoms {
                    for (ay, iy) in &atoms {
                        match (ix, iy) {
                            (Some(i), Some(j)) if i == j => {
                                let s = &summands[*i];
                                for c in Self::compile(&s.child).cells {
                                    let mut m = c.mapped(&s.a, &s.b);
                                    m.x = m.x.intersect(ax);
                                    m.y = m.y.intersect(ay);
                                    if !m.x.is_empty() && !m.y.is_empty() {
                                        cells.push(m);
                                    }
                                }
                            }
                            _ => cells.push(Cell { x: ax.clone(), y: ay.clone(), diag: Diag::Free, formula: Formula::min() }),
                        }
                    }
                }
                cells
            }
        };
        CellOp { cells, lo: S::zero(), hi: S::one() }
    }

    /// The operator moved from `[0,1]^2` onto `[a,b]^2`.
    pub fn rescaled(&self, a: &S, b: &S) -> Self {
        CellOp { cells: self.cells.iter().map(|c| c.mapped(a, b)).collect(), lo: a.clone(), hi: b.clone() }
    }

    /// Same operator on `[0,1)^2`, min where either argument is 1.
    pub fn underline(&self) -> Self {
        let half_open = Interval::new(S::zero(), S::one(), true, false);
        let mut cells: Vec<Cell<S>> = Vec::new();
        for c in &self.cells {
            let mut m = c.clone();
            m.x = m.x.intersect(&half_open);
            m.y = m.y.intersect(&half_open);
            if !m.x.is_empty() && !m.y.is_empty() {
                cells.push(m);
            }
        }
        let top = Interval::point(S::one());
        cells.push(Cell { x: top.clone(), y: Interval::unit(), diag: Diag::Free, formula: Formula::min() });
        cells.push(Cell { x: half_open, y: top, diag: Diag::Free, formula: Formula::min() });
        CellOp { cells, lo: S::zero(), hi: S::one() }
    }

    fn find(&self, x: &JetPoint<S>, y: &JetPoint<S>) -> Option<&Cell<S>> {
        self.cells.iter().find(|c| c.contains(x, y))
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        let (jx, jy) = (JetPoint::exact(x.clone()), JetPoint::exact(y.clone()));
        match self.find(&jx, &jy) {
            Some(c) => c.formula.eval(x, y),
            None => x.min_s(y),
        }
    }

    /// `F(x + dx e, y + dy e)` as a jet.
    pub fn eval_jet(&self, x: &JetPoint<S>, y: &JetPoint<S>) -> Jet<S> {
        match self.find(x, y) {
            Some(c) => c.formula.eval_jet(x, y),
            None => Formula::min().eval_jet(x, y),
        }
    }

    /// The section `x -> F(x, y)`, with `y` replaced by a one-sided limit for `Plus`/`Minus`.
    pub fn section(&self, y: &S, side: Side) -> Section<S> {
        let jy = JetPoint { v: y.clone(), d: side.d() };
        let dy = side.d();
        let big = Interval::closed(-S::one(), S::ratio(2, 1));
        let mut pieces = Vec::new();
        for c in &self.cells {
            if !jy.in_interval(&c.y) {
                continue;
            }
            let mut x = c.x.clone();
            match &c.diag {
                Diag::Free => {}
                Diag::AtMost(k) => {
                    let b = k.clone() - y.clone();
                    x = x.intersect(&Interval::new(-S::one(), b, true, dy <= 0));
                }
                Diag::Above(k) => {
                    let b = k.clone() - y.clone();
                    x = x.intersect(&Interval::new(b, S::ratio(2, 1), dy > 0, true));
                }
            }
            if x.is_empty() {
                continue;
            }
            let f = &c.formula;
            let v = (y.clone() - f.p.clone()) / f.q.clone();
            let slope = f.beta.clone() / f.q.clone();
            // value alpha + beta*(x-p)/q
            let rising = |dom: Interval<S>| SectionPiece { x: dom, m: slope.clone(), c: f.alpha.clone() - slope.clone() * f.p.clone() };
            let flat = |dom: Interval<S>, val: S| SectionPiece { x: dom, m: S::zero(), c: val };
            let mut push = |p: SectionPiece<S>| {
                let dom = p.x.intersect(&x);
                if !dom.is_empty() {
                    pieces.push(SectionPiece { x: dom, ..p });
                }
            };
            match f.base {
                Base::Zero => push(flat(big.clone(), f.alpha.clone())),
                Base::Product => {
                    let m = slope.clone() * v.clone();
                    push(SectionPiece { x: big.clone(), m: m.clone(), c: f.alpha.clone() - m * f.p.clone() })
                }
                Base::Min => {
                    push(rising(Interval::new(-S::one(), y.clone(), true, false)));
                    push(flat(Interval::new(y.clone(), S::ratio(2, 1), true, true), f.alpha.clone() + f.beta.clone() * v));
                }
                Base::Luk => {
                    let k = f.p.clone() + f.q.clone() * (S::one() - v.clone());
                    push(flat(Interval::new(-S::one(), k.clone(), true, true), f.alpha.clone()));
                    let m = slope.clone();
                    let cst = f.alpha.clone() + f.beta.clone() * (v - S::one()) - m.clone() * f.p.clone();
                    push(SectionPiece { x: Interval::new(k, S::ratio(2, 1), false, true), m, c: cst });
                }
            }
        }
        pieces.sort_by(|a, b| a.x.lo.cmp_s(&b.x.lo).then(b.x.lo_closed.cmp(&a.x.lo_closed)));
        Section { pieces }
    }

    /// `F(X x Y)` for intervals, exact up to the diagonal regions.
    pub fn image_box(&self, xs: &Interval<S>, ys: &Interval<S>) -> IntervalSet<S> {
        let mut out = Vec::new();
        for c in &self.cells {
            let rx = xs.intersect(&c.x);
            let ry = ys.intersect(&c.y);
            if rx.is_empty() || ry.is_empty() {
                continue;
            }
            let lo_x = JetPoint { v: rx.lo.clone(), d: if rx.lo_closed { 0 } else { 1 } };
            let lo_y = JetPoint { v: ry.lo.clone(), d: if ry.lo_closed { 0 } else { 1 } };
            let hi_x = JetPoint { v: rx.hi.clone(), d: if rx.hi_closed { 0 } else { -1 } };
            let hi_y = JetPoint { v: ry.hi.clone(), d: if ry.hi_closed { 0 } else { -1 } };
            let f = &c.formula;
            match &c.diag {
                Diag::Free => {
                    let a = f.eval_jet(&lo_x, &lo_y);
                    let b = f.eval_jet(&hi_x, &hi_y);
                    out.push(Interval::new(a.c[0].clone(), b.c[0].clone(), a.is_flat(), b.is_flat()));
                }
                Diag::AtMost(_) => {
                    if !c.diag.admits(&lo_x, &lo_y) {
                        continue;
                    }
                    let a = f.eval_jet(&lo_x, &lo_y);
                    if f.base == Base::Zero {
                        out.push(Interval::point(a.c[0].clone()));
                    } else {
                        let b = f.eval_jet(&hi_x, &hi_y);
                        out.push(Interval::new(a.c[0].clone(), b.c[0].clone(), a.is_flat(), true));
                    }
                }
                Diag::Above(k) => {
                    if !c.diag.admits(&hi_x, &hi_y) {
                        continue;
                    }
                    let b = f.eval_jet(&hi_x, &hi_y);
                    let m1 = rx.lo.max_s(&(k.clone() - ry.hi.clone()));
                    let m2 = ry.lo.max_s(&(k.clone() - rx.hi.clone()));
                    let m = m1.min_s(&m2);
                    let a = f.eval(&m, &m).min_s(&b.c[0]);
                    out.push(Interval::new(a, b.c[0].clone(), true, b.is_flat()));
                }
            }
        }
        IntervalSet::from_vec(out)
    }

    pub fn image(&self, xs: &IntervalSet<S>, ys: &IntervalSet<S>) -> IntervalSet<S> {
        let mut acc = IntervalSet::empty();
        for a in xs.components() {
            for b in ys.components() {
                acc = acc.union(&self.image_box(a, b));
            }
        }
        acc
    }

    /// Cell boundaries along the axes.
    pub fn critical_points(&self) -> Vec<S> {
        let mut v = Vec::new();
        for c in &self.cells {
            for i in [&c.x, &c.y] {
                v.push(i.lo.clone());
                v.push(i.hi.clone());
            }
        }
        v.sort_by(|a, b| a.cmp_s(b));
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::tnorm::{ChildKind, Summand};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn ex31() -> TNormExpr<Rational> {
        TNormExpr::ordinal_sum(
            Semantics::ClosedSquare,
            alloc::vec![
                Summand { a: r(0, 1), b: r(1, 2), child: TNormExpr::Lukasiewicz, child_kind: ChildKind::TNorm },
                Summand { a: r(1, 2), b: r(1, 1), child: TNormExpr::Product, child_kind: ChildKind::TNorm },
            ],
        )
        .unwrap()
    }

    #[test]
    fn cells_match_direct_eval() {
        let e = ex31();
        let op = e.compile().unwrap();
        for i in 0..=20 {
            for j in 0..=20 {
                let (x, y) = (r(i, 20), r(j, 20));
                assert_eq!(op.eval(&x, &y), e.eval(&x, &y), "{} {}", x, y);
            }
        }
        assert_eq!(op.eval(&r(3, 4), &r(3, 4)), r(5, 8));
    }

    #[test]
    fn nilpotent_section_and_image() {
        let op = TNormExpr::<Rational>::NilpotentMin.compile().unwrap();
        let s = op.section(&r(7, 10), Side::Exact);
        assert_eq!(s.eval(&r(3, 10)), Some(r(0, 1)));
        assert_eq!(s.eval(&r(2, 5)), Some(r(2, 5)));
        let plus = op.section(&r(7, 10), Side::Plus);
        assert_eq!(plus.eval(&r(3, 10)), Some(r(3, 10)));
        let img = op.image_box(&Interval::closed(r(0, 1), r(1, 2)), &Interval::closed(r(0, 1), r(1, 2)));
        assert_eq!(img, IntervalSet::points([r(0, 1)]));
    }

    #[test]
    fn product_image_open_ends() {
        let op = TNormExpr::<Rational>::Product.compile().unwrap();
        let img = op.image_box(&Interval::new(r(1, 2), r(1, 1), false, true), &Interval::closed(r(1, 2), r(1, 1)));
        assert_eq!(img, IntervalSet::from_interval(Interval::new(r(1, 4), r(1, 1), false, true)));
    }
}
