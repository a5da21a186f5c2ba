//! Sorting generated t-norms into min, ordinally irreducible and proper ordinal sums.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cells::{Base, Diag};
use crate::error::Result;
use crate::generated::GeneratedT;
use crate::interval_set::{Interval, IntervalSet};
use crate::mono_fn::PiecewiseIncreasingFn;
use crate::scalar::Scalar;
use crate::tnorm::TNormExpr;
use crate::verify::neutral::left_value;
use crate::verify::ordinal::decompose_any;
use crate::verify::{check_tnorm, cut_point, Cut, Verdict, Witness};

#[derive(Clone, Debug, PartialEq)]
pub enum TClass<S> {
    TM,
    OrdinallyIrreducible,
    NonTrivialOrdinalSum,
    NotAssociative { witness: Witness<S> },
    /// Associative but `1` is not neutral.
    NotTNorm { witness: Witness<S> },
    Undetermined { note: String },
}

impl<S> TClass<S> {
    pub fn label(&self) -> &'static str {
        match self {
            TClass::TM => "TM",
            TClass::OrdinallyIrreducible => "OrdinallyIrreducible",
            TClass::NonTrivialOrdinalSum => "NonTrivialOrdinalSum",
            TClass::NotAssociative { .. } => "NotAssociative",
            TClass::NotTNorm { .. } => "NotTNorm",
            TClass::Undetermined { .. } => "Undetermined",
        }
    }
}

impl<S: Scalar> fmt::Display for TClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TClass::NotAssociative { witness } | TClass::NotTNorm { witness } => write!(f, "{} {}", self.label(), witness),
            TClass::Undetermined { note } => write!(f, "Undetermined ({})", note),
            _ => f.write_str(self.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<S> {
    pub class: TClass<S>,
    pub trace: Vec<String>,
}

/// Points of the diagonal where some cell changes formula.
fn diagonal_breaks<S: Scalar>(sys: &GeneratedT<S>) -> Vec<S> {
    let two = S::one() + S::one();
    let mut v = Vec::new();
    for c in &sys.op.cells {
        for i in [&c.x, &c.y] {
            v.push(i.lo.clone());
            v.push(i.hi.clone());
        }
        match &c.diag {
            Diag::AtMost(k) | Diag::Above(k) => v.push(k.clone() / two.clone()),
            Diag::Free => {}
        }
        if c.formula.base == Base::Luk {
            v.push(c.formula.p.clone() + c.formula.q.clone() / two.clone());
        }
    }
    v.sort_by(|a, b| a.cmp_s(b));
    v.dedup();
    v
}

/// First range point `p` in `(f(0),1]` with `F(p,p) < f(x-)`, `p = f(x)`.
///
/// Between diagonal breaks `F(p,p)` is a polynomial of degree at most two,
/// so agreeing with `p` at three interior points settles the whole piece.
pub fn min_failure<S: Scalar>(sys: &GeneratedT<S>) -> Option<S> {
    let f0 = sys.f.at(&S::zero());
    let d = sys.m.intersect_interval(&Interval::new(f0, S::one(), false, true));
    let bad = |p: &S, lv: &S| sys.op.eval(p, p) + S::snap() < *lv;
    let mut rest: Vec<Interval<S>> = Vec::new();
    for c in d.components() {
        let mut c = c.clone();
        if c.lo_closed && !sys.acc.left.contains(&c.lo) {
            let p0 = c.lo.clone();
            if let Some(lv) = left_value(sys, &p0) {
                if bad(&p0, &lv) {
                    return Some(p0);
                }
            }
            c.lo_closed = false;
        }
        if !c.is_empty() {
            rest.push(c);
        }
    }
    let rest = IntervalSet::from_vec(rest);
    let breaks = diagonal_breaks(sys);
    let cuts = IntervalSet::points(breaks.iter().cloned());
    for p in &breaks {
        if rest.contains(p) && bad(p, p) {
            return Some(p.clone());
        }
    }
    for c in rest.difference(&cuts).components() {
        if c.is_point() {
            if bad(&c.lo, &c.lo) {
                return Some(c.lo.clone());
            }
            continue;
        }
        let w = c.hi.clone() - c.lo.clone();
        for k in [1, 2, 3] {
            let p = c.lo.clone() + w.clone() * S::ratio(k, 4);
            if bad(&p, &p) {
                return Some(p);
            }
        }
        if c.hi_closed && bad(&c.hi, &c.hi) {
            return Some(c.hi.clone());
        }
    }
    None
}

/// `x <= y` in `(0,1)` with `F(f(y), f(x)) < f(x-)`.
fn split_pair<S: Scalar>(sys: &GeneratedT<S>, hint: Option<S>) -> Option<(S, S)> {
    let holds = |x: &S, y: &S| {
        let lv = sys.f.left_limit(x);
        let v = sys.op.eval(&sys.f.at(y), &sys.f.at(x));
        v + S::snap() < lv
    };
    if let Some(x) = hint {
        if x > S::zero() && x < S::one() && holds(&x, &x) {
            return Some((x.clone(), x));
        }
    }
    let n = 64i64;
    for i in 1..n {
        let x = S::ratio(i, n);
        for j in i..n {
            let y = S::ratio(j, n);
            if holds(&x, &y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Interior probe points: a uniform grid plus the generator's breakpoints.
fn probe_xs<S: Scalar>(f: &PiecewiseIncreasingFn<S>) -> Vec<S> {
    let mut v: Vec<S> = (1..32).map(|i| S::ratio(i, 32)).collect();
    v.extend(f.breakpoints());
    v.retain(|x| *x > S::zero() && *x < S::one());
    v.sort_by(|a, b| a.cmp_s(b));
    v.dedup();
    v
}

pub fn classify<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Classification<S>> {
    let verdict = check_tnorm(f, expr)?;
    let mut trace: Vec<String> = verdict.trace().to_vec();
    match verdict {
        Verdict::Refuted { witness: w @ Witness::Assoc { .. }, .. } => {
            return Ok(Classification { class: TClass::NotAssociative { witness: w }, trace })
        }
        Verdict::Refuted { witness, .. } => return Ok(Classification { class: TClass::NotTNorm { witness }, trace }),
        Verdict::Undetermined { note, .. } => {
            return Ok(Classification { class: TClass::Undetermined { note: format!("t-norm check: {}", note) }, trace })
        }
        Verdict::Proven { .. } => {}
    }
    let sys = GeneratedT::new(f.clone(), expr)?;
    let fail = min_failure(&sys);
    let Some(p) = fail else {
        trace.push("f(x-) <= F(f(x),f(x)) on (0,1]: T is min".into());
        return Ok(Classification { class: TClass::TM, trace });
    };
    let x_fail = f.pseudo_inverse(&p);
    trace.push(format!("T differs from min: F(f(x),f(x)) < f(x-) at x = {}", x_fail.to_f64()));
    // the five statements are required on every branch
    trace.push("statements (i)-(iii) hold (t-norm check)".into());
    let pair = split_pair(&sys, Some(x_fail));
    match &pair {
        Some((x, y)) => trace.push(format!("(iv) F(f(y),f(x)) < f(x-) at x = {}, y = {}", x.to_f64(), y.to_f64())),
        None => trace.push("(iv) no pair found on the probe grid".into()),
    }
    let entries = decompose_any(f, expr)?;
    let inside = entries.len() == 1 && {
        let e = &entries[0];
        f.right_limit(&S::zero()) + S::snap() >= e.a && f.left_limit(&S::one()) <= e.b.clone() + S::snap()
    };
    if inside {
        trace.push(format!("single summand {} holds the range of f on (0,1)", entries[0].beta));
        let mut cuts = Vec::new();
        let mut unresolved = 0usize;
        let xs = probe_xs(f);
        for x in &xs {
            match cut_point(&sys, x) {
                Cut::Cut => cuts.push(x.clone()),
                Cut::Split { .. } => {}
                Cut::Unresolved => unresolved += 1,
            }
        }
        if let Some(c) = cuts.first() {
            trace.push(format!("T splits at x = {}", c.to_f64()));
            return Ok(Classification { class: TClass::NonTrivialOrdinalSum, trace });
        }
        if unresolved == 0 {
            trace.push(format!("no cut among {} interior probes", xs.len()));
            return Ok(Classification { class: TClass::OrdinallyIrreducible, trace });
        }
        let note = format!("{} probes without a splitting pair", unresolved);
        trace.push(note.clone());
        return Ok(Classification { class: TClass::Undetermined { note }, trace });
    }
    trace.push(format!("{} summands meet the range in an interval, or f leaves its summand", entries.len()));
    if pair.is_some() {
        Ok(Classification { class: TClass::NonTrivialOrdinalSum, trace })
    } else {
        let note = String::from("statement (iv) not witnessed on the probe grid");
        Ok(Classification { class: TClass::Undetermined { note }, trace })
    }
}
