//! Finite unions of intervals of the real line with open/closed endpoints.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval<S> {
    pub lo: S,
    pub hi: S,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S, lo_closed: bool, hi_closed: bool) -> Self {
        Interval { lo, hi, lo_closed, hi_closed }
    }
    pub fn closed(lo: S, hi: S) -> Self {
        Self::new(lo, hi, true, true)
    }
    pub fn open(lo: S, hi: S) -> Self {
        Self::new(lo, hi, false, false)
    }
    pub fn point(v: S) -> Self {
        Self::new(v.clone(), v, true, true)
    }
    pub fn unit() -> Self {
        Self::closed(S::zero(), S::one())
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp_s(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn is_point(&self) -> bool {
        !self.is_empty() && self.lo == self.hi
    }

    pub fn contains(&self, x: &S) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let (lo, lo_closed) = match self.lo.cmp_s(&o.lo) {
            Ordering::Less => (o.lo.clone(), o.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && o.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp_s(&o.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (o.hi.clone(), o.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && o.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }
    }

    /// A point strictly inside, or the point itself for degenerate intervals.
    pub fn midpoint(&self) -> S {
        (self.lo.clone() + self.hi.clone()) * S::half()
    }

    /// Image under `x -> m*x + c` with `m >= 0`.
    pub fn affine(&self, m: &S, c: &S) -> Self {
        if m.is_zero_s() {
            return Self::point(c.clone());
        }
        Interval {
            lo: m.clone() * self.lo.clone() + c.clone(),
            hi: m.clone() * self.hi.clone() + c.clone(),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }
}

impl<S: Scalar> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo.to_f64());
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo.to_f64(),
            self.hi.to_f64(),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet<S> {
    comps: Vec<Interval<S>>,
}

impl<S> Default for IntervalSet<S> {
    fn default() -> Self {
        IntervalSet { comps: Vec::new() }
    }
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_interval(i: Interval<S>) -> Self {
        Self::from_vec(alloc::vec![i])
    }

    pub fn from_vec(v: Vec<Interval<S>>) -> Self {
        let mut s = IntervalSet { comps: v };
        s.normalize(&S::zero());
        s
    }

    pub fn points(ps: impl IntoIterator<Item = S>) -> Self {
        Self::from_vec(ps.into_iter().map(Interval::point).collect())
    }

    pub fn unit() -> Self {
        Self::from_interval(Interval::unit())
    }

    /// Like `from_vec`, but components separated by at most `eps` are fused.
    pub fn from_vec_snapped(v: Vec<Interval<S>>, eps: &S) -> Self {
        let mut s = IntervalSet { comps: v };
        s.normalize(eps);
        s
    }

    fn normalize(&mut self, eps: &S) {
        let mut v: Vec<Interval<S>> = core::mem::take(&mut self.comps)
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        v.sort_by(|a, b| a.lo.cmp_s(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval<S>> = Vec::with_capacity(v.len());
        for c in v {
            if let Some(last) = out.last_mut() {
                let touches = match c.lo.cmp_s(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => last.hi_closed || c.lo_closed || !eps.is_zero_s(),
                    Ordering::Greater => c.lo.clone() - last.hi.clone() <= *eps && !eps.is_zero_s(),
                };
                if touches {
                    match c.hi.cmp_s(&last.hi) {
                        Ordering::Greater => {
                            last.hi = c.hi;
                            last.hi_closed = c.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= c.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(c);
        }
        self.comps = out;
    }

    pub fn components(&self) -> &[Interval<S>] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn contains(&self, x: &S) -> bool {
        self.comps.iter().any(|c| c.contains(x))
    }

    /// Membership up to the backend's snapping distance.
    pub fn contains_approx(&self, x: &S) -> bool {
        if self.contains(x) {
            return true;
        }
        let e = S::snap();
        !e.is_zero_s()
            && self.comps.iter().any(|c| {
                let w = Interval::closed(c.lo.clone() - e.clone(), c.hi.clone() + e.clone());
                w.contains(x)
            })
    }

    pub fn union(&self, o: &Self) -> Self {
        let mut v = self.comps.clone();
        v.extend(o.comps.iter().cloned());
        Self::from_vec(v)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let mut v = Vec::new();
        for a in &self.comps {
            for b in &o.comps {
                let c = a.intersect(b);
                if !c.is_empty() {
                    v.push(c);
                }
            }
        }
        Self::from_vec(v)
    }

    pub fn intersect_interval(&self, i: &Interval<S>) -> Self {
        self.intersect(&Self::from_interval(i.clone()))
    }

    /// Complement inside `[0,1]`.
    pub fn complement(&self) -> Self {
        let mut v = Vec::new();
        let mut lo = S::zero();
        let mut lo_closed = true;
        for c in &self.comps {
            v.push(Interval::new(lo.clone(), c.lo.clone(), lo_closed, !c.lo_closed));
            lo = c.hi.clone();
            lo_closed = !c.hi_closed;
        }
        v.push(Interval::new(lo, S::one(), lo_closed, true));
        Self::from_vec(v).intersect(&Self::unit())
    }

    pub fn difference(&self, o: &Self) -> Self {
        self.intersect(&o.complement())
    }

    /// Infimum with a flag telling whether it is attained.
    pub fn inf(&self) -> Option<(S, bool)> {
        self.comps.first().map(|c| (c.lo.clone(), c.lo_closed))
    }

    pub fn sup(&self) -> Option<(S, bool)> {
        self.comps.last().map(|c| (c.hi.clone(), c.hi_closed))
    }

    pub fn at_most_one(&self) -> bool {
        self.comps.is_empty() || (self.comps.len() == 1 && self.comps[0].is_point())
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.is_point())
    }

    /// The elements of a finite set.
    pub fn finite_points(&self) -> Option<Vec<S>> {
        self.is_finite().then(|| self.comps.iter().map(|c| c.lo.clone()).collect())
    }

    pub fn has_interval(&self) -> bool {
        !self.is_finite()
    }

    /// Left, right and two-sided accumulation points.
    pub fn acc_sets(&self) -> AccSets<S> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for c in self.comps.iter().filter(|c| !c.is_point()) {
            left.push(Interval::new(c.lo.clone(), c.hi.clone(), false, true));
            right.push(Interval::new(c.lo.clone(), c.hi.clone(), true, false));
        }
        let left = Self::from_vec(left);
        let right = Self::from_vec(right);
        let both = left.intersect(&right);
        AccSets { left, right, both }
    }

    /// `O(M)`: the open interval spanned by `M`, empty when `M` has at most one point.
    pub fn open_hull(&self) -> Self {
        if self.at_most_one() {
            return Self::empty();
        }
        let (lo, _) = self.inf().unwrap();
        let (hi, _) = self.sup().unwrap();
        Self::from_interval(Interval::open(lo, hi))
    }

    /// Representative points: attained endpoints, midpoints and points near the ends.
    pub fn samples(&self, per_component: usize) -> Vec<S> {
        let mut out = Vec::new();
        for c in &self.comps {
            if c.is_point() {
                out.push(c.lo.clone());
                continue;
            }
            if c.lo_closed {
                out.push(c.lo.clone());
            }
            if c.hi_closed {
                out.push(c.hi.clone());
            }
            let w = c.hi.clone() - c.lo.clone();
            let n = per_component.max(1) as i64;
            for i in 1..=n {
                out.push(c.lo.clone() + w.clone() * S::ratio(i, n + 1));
            }
            for k in [1000i64, 1_000_000] {
                out.push(c.lo.clone() + w.clone() * S::ratio(1, k));
                out.push(c.hi.clone() - w.clone() * S::ratio(1, k));
            }
        }
        out.sort_by(|a, b| a.cmp_s(b));
        out.dedup();
        out
    }
}

impl<S: Scalar> fmt::Display for IntervalSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AccSets<S> {
    pub left: IntervalSet<S>,
    pub right: IntervalSet<S>,
    pub both: IntervalSet<S>,
}
