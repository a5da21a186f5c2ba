//! Strictly increasing piecewise generators.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval_set::{Interval, IntervalSet};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticForm<S> {
    /// `slope * x + intercept`
    Linear { slope: S, intercept: S },
    /// `offset + scale * exp(rate * x)`
    Exponential { offset: S, scale: S, rate: S },
}

impl<S: Scalar> AnalyticForm<S> {
    pub fn linear(slope: S, intercept: S) -> Self {
        AnalyticForm::Linear { slope, intercept }
    }

    fn validate(&self) -> Result<()> {
        match self {
            AnalyticForm::Linear { slope, .. } if *slope <= S::zero() => {
                Err(Error::Generator(format!("slope {} must be positive", slope)))
            }
            AnalyticForm::Exponential { scale, rate, .. } => {
                if scale.clone() * rate.clone() <= S::zero() {
                    return Err(Error::Generator("scale*rate must be positive".into()));
                }
                if S::EXACT {
                    return Err(Error::ExactExponential);
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, AnalyticForm::Linear { .. })
    }

    pub fn eval(&self, x: &S) -> S {
        match self {
            AnalyticForm::Linear { slope, intercept } => slope.clone() * x.clone() + intercept.clone(),
            AnalyticForm::Exponential { offset, scale, rate } => {
                let e = (rate.clone() * x.clone()).exp().expect("float backend");
                offset.clone() + scale.clone() * e
            }
        }
    }

    /// Inverse of the form; `y` must lie in its range.
    pub fn inverse(&self, y: &S) -> S {
        match self {
            AnalyticForm::Linear { slope, intercept } => (y.clone() - intercept.clone()) / slope.clone(),
            AnalyticForm::Exponential { offset, scale, rate } => {
                let r = (y.clone() - offset.clone()) / scale.clone();
                match r.ln() {
                    Some(l) => l / rate.clone(),
                    // below the asymptote: the caller clamps
                    None if *rate > S::zero() => -S::ratio(1_000_000, 1),
                    None => S::ratio(1_000_000, 1),
                }
            }
        }
    }

    /// The form of `u -> self(s + w*u)`.
    pub fn pre_affine(&self, s: &S, w: &S) -> Self {
        match self {
            AnalyticForm::Linear { slope, intercept } => AnalyticForm::Linear {
                slope: slope.clone() * w.clone(),
                intercept: slope.clone() * s.clone() + intercept.clone(),
            },
            AnalyticForm::Exponential { offset, scale, rate } => AnalyticForm::Exponential {
                offset: offset.clone(),
                scale: scale.clone() * (rate.clone() * s.clone()).exp().expect("float backend"),
                rate: rate.clone() * w.clone(),
            },
        }
    }

    /// The form of `x -> a + k*self(x)` with `k > 0`.
    pub fn post_affine(&self, a: &S, k: &S) -> Self {
        match self {
            AnalyticForm::Linear { slope, intercept } => AnalyticForm::Linear {
                slope: k.clone() * slope.clone(),
                intercept: a.clone() + k.clone() * intercept.clone(),
            },
            AnalyticForm::Exponential { offset, scale, rate } => AnalyticForm::Exponential {
                offset: a.clone() + k.clone() * offset.clone(),
                scale: k.clone() * scale.clone(),
                rate: rate.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece<S> {
    pub left: S,
    pub form: AnalyticForm<S>,
    pub value_at_left: S,
}

/// Strictly increasing `f` on `[lo, hi]` (usually `[0,1]`), given by pieces
/// covering `[left_i, left_{i+1})` and explicit values at every breakpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseIncreasingFn<S> {
    pieces: Vec<Piece<S>>,
    hi: S,
    value_at_end: S,
}

impl<S: Scalar> PiecewiseIncreasingFn<S> {
    pub fn new(pieces: Vec<Piece<S>>, value_at_one: S) -> Result<Self> {
        Self::on_domain(pieces, S::one(), value_at_one)
    }

    pub fn identity() -> Self {
        Self::new(
            alloc::vec![Piece { left: S::zero(), form: AnalyticForm::linear(S::one(), S::zero()), value_at_left: S::zero() }],
            S::one(),
        )
        .unwrap()
    }

    /// Single continuous piece on `[0,1]`.
    pub fn continuous(form: AnalyticForm<S>) -> Result<Self> {
        form.validate()?;
        let v0 = form.eval(&S::zero());
        let v1 = form.eval(&S::one());
        Self::new(alloc::vec![Piece { left: S::zero(), form, value_at_left: v0 }], v1)
    }

    pub fn on_domain(mut pieces: Vec<Piece<S>>, hi: S, mut value_at_end: S) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Generator("no pieces".into()));
        }
        for p in &pieces {
            p.form.validate()?;
        }
        for i in 0..pieces.len() {
            let r = pieces.get(i + 1).map(|p| p.left.clone()).unwrap_or_else(|| hi.clone());
            if pieces[i].left >= r {
                return Err(Error::Generator(format!("piece {} is empty or out of order", i)));
            }
        }
        let lo = pieces[0].left.clone();
        if lo < S::zero() || hi > S::one() {
            return Err(Error::Generator("domain must lie in [0,1]".into()));
        }
        // float pieces meet only up to rounding; snap stored values onto the limits
        for i in 0..pieces.len() {
            let right = pieces[i].form.eval(&pieces[i].left);
            let v = &mut pieces[i].value_at_left;
            if v.near(&right) {
                *v = right.clone();
            }
            if i > 0 {
                let left = pieces[i - 1].form.eval(&pieces[i].left);
                let v = &mut pieces[i].value_at_left;
                if v.near(&left) && *v != right {
                    *v = left.clone();
                }
                if !(left <= *v && *v <= right) && !(left.near(&right) && v.near(&left)) {
                    return Err(Error::Generator(format!(
                        "value at breakpoint {} must lie between the one-sided limits {} and {}",
                        pieces[i].left, left, right
                    )));
                }
            } else if *v > right {
                return Err(Error::Generator("f(0) exceeds f(0+)".into()));
            }
        }
        let last = pieces.last().unwrap().form.eval(&hi);
        if value_at_end.near(&last) {
            value_at_end = last.clone();
        }
        if pieces[0].value_at_left.near(&S::zero()) {
            pieces[0].value_at_left = S::zero();
        }
        if value_at_end.near(&S::one()) {
            value_at_end = S::one();
        }
        if value_at_end < last && !value_at_end.near(&last) {
            return Err(Error::Generator("value at the right end is below the left limit".into()));
        }
        if pieces[0].value_at_left < S::zero() || value_at_end > S::one() {
            return Err(Error::Generator("values must lie in [0,1]".into()));
        }
        Ok(PiecewiseIncreasingFn { pieces, hi, value_at_end })
    }

    pub fn pieces(&self) -> &[Piece<S>] {
        &self.pieces
    }
    pub fn lo(&self) -> S {
        self.pieces[0].left.clone()
    }
    pub fn hi(&self) -> S {
        self.hi.clone()
    }
    pub fn value_at_end(&self) -> S {
        self.value_at_end.clone()
    }
    pub fn is_linear(&self) -> bool {
        self.pieces.iter().all(|p| p.form.is_linear())
    }

    fn right_of(&self, i: usize) -> S {
        self.pieces.get(i + 1).map(|p| p.left.clone()).unwrap_or_else(|| self.hi.clone())
    }

    fn check(&self, x: &S) -> Result<()> {
        if *x < self.lo() || *x > self.hi {
            return Err(Error::Domain(x.to_f64()));
        }
        Ok(())
    }

    fn index(&self, x: &S) -> usize {
        self.pieces.iter().rposition(|p| p.left <= *x).unwrap_or(0)
    }

    /// Interior breakpoints.
    pub fn breakpoints(&self) -> Vec<S> {
        self.pieces[1..].iter().map(|p| p.left.clone()).collect()
    }

    pub fn eval(&self, x: &S) -> Result<S> {
        self.check(x)?;
        Ok(self.at(x))
    }

    pub(crate) fn at(&self, x: &S) -> S {
        if *x >= self.hi {
            return self.value_at_end.clone();
        }
        let i = self.index(x);
        let p = &self.pieces[i];
        if p.left == *x {
            p.value_at_left.clone()
        } else {
            p.form.eval(x)
        }
    }

    /// `(f(x-), f(x+))` with `f(lo-) = f(lo)` and `f(hi+) = f(hi)`.
    pub fn side_limits(&self, x: &S) -> Result<(S, S)> {
        self.check(x)?;
        Ok((self.left_limit(x), self.right_limit(x)))
    }

    pub(crate) fn left_limit(&self, x: &S) -> S {
        if *x <= self.lo() {
            return self.at(x);
        }
        let i = self.pieces.iter().rposition(|p| p.left < *x).unwrap_or(0);
        self.pieces[i].form.eval(x).min_s(&self.at(x))
    }

    pub(crate) fn right_limit(&self, x: &S) -> S {
        if *x >= self.hi {
            return self.value_at_end.clone();
        }
        self.pieces[self.index(x)].form.eval(x).max_s(&self.at(x))
    }

    /// `sup{x : f(x) < y}`, with `sup {} = lo`.
    pub fn pseudo_inverse(&self, y: &S) -> S {
        for (i, p) in self.pieces.iter().enumerate() {
            if p.value_at_left >= *y {
                return p.left.clone();
            }
            let start = p.form.eval(&p.left);
            if *y <= start.clone() + S::snap() {
                return p.left.clone();
            }
            let r = self.right_of(i);
            if *y <= p.form.eval(&r) {
                let x = p.form.inverse(y);
                return x.max_s(&p.left).min_s(&r);
            }
        }
        self.hi.clone()
    }

    /// `sup{x : f(x) <= y}`, or `None` when `f(lo) > y`.
    pub fn upper_inverse(&self, y: &S) -> Option<S> {
        if self.pieces[0].value_at_left > *y {
            return None;
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if p.value_at_left > *y {
                return Some(p.left.clone());
            }
            // f(left+) = y up to rounding also gives left
            if p.form.eval(&p.left) + S::snap() >= *y {
                return Some(p.left.clone());
            }
            let r = self.right_of(i);
            if p.form.eval(&r) > *y {
                return Some(p.form.inverse(y).max_s(&p.left).min_s(&r));
            }
        }
        Some(self.hi.clone())
    }

    /// `Ran(f)` as an interval set.
    pub fn range_of(&self) -> IntervalSet<S> {
        let mut v = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let r = self.right_of(i);
            v.push(Interval::point(p.value_at_left.clone()));
            v.push(Interval::open(self.right_limit(&p.left), self.left_limit(&r)));
        }
        v.push(Interval::point(self.value_at_end.clone()));
        IntervalSet::from_vec_snapped(v, &S::snap())
    }

    /// `u -> a + k*f(lo + (hi-lo)*u)` on `[0,1]`.
    pub fn affine(&self, a: &S, k: &S) -> Self {
        let lo = self.lo();
        let w = self.hi.clone() - lo.clone();
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                left: (p.left.clone() - lo.clone()) / w.clone(),
                form: p.form.pre_affine(&lo, &w).post_affine(a, k),
                value_at_left: a.clone() + k.clone() * p.value_at_left.clone(),
            })
            .collect();
        let end = a.clone() + k.clone() * self.value_at_end.clone();
        let mut out = PiecewiseIncreasingFn { pieces, hi: S::one(), value_at_end: end };
        out.pieces[0].left = S::zero();
        out
    }

    /// Rescaled to a generator `[0,1] -> [0,1]` with values `[a,b] -> [0,1]`.
    pub fn normalized(&self, a: &S, b: &S) -> Result<Self> {
        let k = S::one() / (b.clone() - a.clone());
        let g = self.affine(&(-(a.clone() * k.clone())), &k);
        Self::on_domain(g.pieces, S::one(), g.value_at_end)
    }

    /// `f/2`.
    pub fn halved(&self) -> Self {
        self.affine(&S::zero(), &S::half())
    }

    /// Restriction to `[s,t]` with prescribed end values.
    pub fn restrict(&self, s: &S, t: &S, at_s: S, at_t: S) -> Result<Self> {
        let mut pieces = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let r = self.right_of(i);
            if r <= *s || p.left >= *t {
                continue;
            }
            if p.left <= *s {
                pieces.push(Piece { left: s.clone(), form: p.form.clone(), value_at_left: at_s.clone() });
            } else {
                pieces.push(p.clone());
            }
        }
        Self::on_domain(pieces, t.clone(), at_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn ex41iii_linear_part() -> PiecewiseIncreasingFn<Rational> {
        // 0.8x on [0,0.5), x on [0.5,1]
        PiecewiseIncreasingFn::new(
            alloc::vec![
                Piece { left: r(0, 1), form: AnalyticForm::linear(r(4, 5), r(0, 1)), value_at_left: r(0, 1) },
                Piece { left: r(1, 2), form: AnalyticForm::linear(r(1, 1), r(0, 1)), value_at_left: r(1, 2) },
            ],
            r(1, 1),
        )
        .unwrap()
    }

    #[test]
    fn pinv_at_jump() {
        let f = ex41iii_linear_part();
        assert_eq!(f.pseudo_inverse(&r(9, 20)), r(1, 2));
        assert_eq!(f.pseudo_inverse(&r(2, 5)), r(1, 2));
        assert_eq!(f.pseudo_inverse(&r(1, 5)), r(1, 4));
        assert_eq!(f.pseudo_inverse(&r(0, 1)), r(0, 1));
    }

    #[test]
    fn rejects_bad_breakpoint() {
        let e = PiecewiseIncreasingFn::new(
            alloc::vec![
                Piece { left: r(0, 1), form: AnalyticForm::linear(r(1, 2), r(0, 1)), value_at_left: r(0, 1) },
                Piece { left: r(1, 2), form: AnalyticForm::linear(r(1, 1), r(0, 1)), value_at_left: r(3, 5) },
            ],
            r(1, 1),
        );
        assert!(e.is_err());
    }

    #[test]
    fn exact_rejects_exponential() {
        let f = PiecewiseIncreasingFn::<Rational>::continuous(AnalyticForm::Exponential {
            offset: r(0, 1),
            scale: r(1, 2),
            rate: r(1, 1),
        });
        assert_eq!(f.unwrap_err(), Error::ExactExponential);
    }
}
