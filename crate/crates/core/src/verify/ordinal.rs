use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cells::JetPoint;
use crate::error::{Error, Result};
use crate::generated::GeneratedT;
use crate::interval_set::Interval;
use crate::mono_fn::PiecewiseIncreasingFn;
use crate::scalar::Scalar;
use crate::tnorm::{ChildKind, Summand, TNormExpr};

use super::neutral::{check_left_neutral, Neutral};
use super::transform::check_assoc_transform;
use super::{witness_margin, Verdict, Witness};

/// How a summand is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The summand is a t-norm.
    Direct,
    /// Proper subnorm with `f(t) <= b`: halved generator, lifted operator.
    Bar,
    /// Proper subnorm with `f(t) > b`: operator replaced by min on the top edges.
    Underline,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionEntry<S> {
    pub beta: usize,
    pub s: S,
    pub t: S,
    pub a: S,
    pub b: S,
    /// `f` on `[s,t]` with the end values clipped into `[a,b]`.
    pub f_beta: PiecewiseIncreasingFn<S>,
    pub route: Route,
}

pub type Decomposition<S> = Vec<DecompositionEntry<S>>;

fn trivial<S: Scalar>(expr: &TNormExpr<S>) -> Vec<Summand<S>> {
    match expr {
        TNormExpr::OrdinalSum { summands, .. } => summands.clone(),
        e => alloc::vec![Summand {
            a: S::zero(),
            b: S::one(),
            child: e.clone(),
            child_kind: if e.is_tnorm() { ChildKind::TNorm } else { ChildKind::TSubnorm },
        }],
    }
}

/// The summands whose square meets the range in infinitely many points.
pub fn decompose<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Decomposition<S>> {
    if expr.summands().is_none() {
        return Err(Error::NotOrdinalSum);
    }
    decompose_any(f, expr)
}

pub(crate) fn decompose_any<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Decomposition<S>> {
    let m = f.range_of();
    let mut out = Vec::new();
    for (beta, sm) in trivial(expr).into_iter().enumerate() {
        let (a, b) = (sm.a.clone(), sm.b.clone());
        if !m.intersect_interval(&Interval::closed(a.clone(), b.clone())).has_interval() {
            continue;
        }
        let s = f.pseudo_inverse(&a);
        let Some(t) = f.upper_inverse(&b) else { continue };
        if s >= t {
            continue;
        }
        let fs = f.at(&s);
        let ft = f.at(&t);
        let vs = if fs >= a { fs } else { a.clone() };
        let vt = if ft <= b { ft.clone() } else { b.clone() };
        let f_beta = f.restrict(&s, &t, vs, vt)?;
        let route = match sm.child_kind {
            ChildKind::TNorm => Route::Direct,
            ChildKind::TSubnorm if ft <= b => Route::Bar,
            ChildKind::TSubnorm => Route::Underline,
        };
        out.push(DecompositionEntry { beta, s, t, a, b, f_beta, route });
    }
    Ok(out)
}

fn child_of<S: Scalar>(expr: &TNormExpr<S>, beta: usize) -> TNormExpr<S> {
    trivial(expr).swap_remove(beta).child
}

/// Checks one summand on the unit square; witnesses come back in unit coordinates.
fn check_entry<S: Scalar>(e: &DecompositionEntry<S>, child: &TNormExpr<S>) -> Result<Verdict<S>> {
    let unit = e.f_beta.normalized(&e.a, &e.b)?;
    match e.route {
        Route::Direct if child.summands().is_some() => check_assoc_ordinal(&unit, child),
        Route::Direct => Ok(check_assoc_transform(&GeneratedT::from_op(unit, child.compile()?)?, None)),
        Route::Bar => {
            let op = child.bar_lift()?.compile()?;
            Ok(check_assoc_transform(&GeneratedT::from_op(unit.halved(), op)?, None))
        }
        Route::Underline => {
            let op = child.compile()?.underline();
            Ok(check_assoc_transform(&GeneratedT::from_op(unit, op)?, None))
        }
    }
}

fn verify_triple<S: Scalar>(sys: &GeneratedT<S>, x: S, y: S, z: S) -> Option<Witness<S>> {
    let (gap, left, right) = sys.assoc_gap(&x, &y, &z);
    (gap > witness_margin::<S>()).then_some(Witness::Assoc { x, y, z, left, right })
}

/// Grid over `[s,t]` plus the seeds; used when a rescaled witness lands on
/// a rounding edge of the original system.
fn local_search<S: Scalar>(sys: &GeneratedT<S>, s: &S, t: &S, seeds: &[S]) -> Option<Witness<S>> {
    let w = t.clone() - s.clone();
    let mut pts: Vec<S> = (0..=32).map(|i| s.clone() + w.clone() * S::ratio(i, 32)).collect();
    pts.extend(seeds.iter().cloned());
    pts.sort_by(|a, b| a.cmp_s(b));
    pts.dedup();
    for x in &pts {
        for y in &pts {
            for z in &pts {
                if let Some(w) = verify_triple(sys, x.clone(), y.clone(), z.clone()) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Triple for a failed touching condition: `T(u,u) = s_j` and `z` below `t_i`.
fn touching_witness<S: Scalar>(sys: &GeneratedT<S>, s: &S, t: &S, zs: &[S]) -> Option<Witness<S>> {
    let mut step = t.clone() - s.clone();
    for _ in 0..48 {
        step = step * S::half();
        let u = s.clone() + step.clone();
        if (sys.t(&u, &u) - s.clone()).abs_s() > S::tol() {
            continue;
        }
        for z in zs {
            if let Some(w) = verify_triple(sys, u.clone(), u.clone(), z.clone()) {
                return Some(w);
            }
        }
    }
    None
}

fn require_associative<S: Scalar>(expr: &TNormExpr<S>) -> Result<()> {
    if expr.is_associative() {
        Ok(())
    } else {
        Err(Error::NotAssociative(format!("{:?}", expr)))
    }
}

/// Per-summand transform checks plus the touching-summand condition.
pub fn check_assoc_ordinal<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Verdict<S>> {
    require_associative(expr)?;
    let sys = GeneratedT::new(f.clone(), expr)?;
    let entries = decompose_any(f, expr)?;
    let mut trace: Vec<String> = Vec::new();
    if entries.is_empty() {
        trace.push("no summand meets the range in infinitely many points, T is min".into());
        return Ok(Verdict::Proven { trace });
    }
    let mut undetermined: Option<(usize, String)> = None;
    for e in &entries {
        let child = child_of(expr, e.beta);
        let v = check_entry(e, &child)?;
        let label = format!(
            "(i) summand {} on [{}, {}] via {:?} route, domain [{}, {}]",
            e.beta,
            e.a.to_f64(),
            e.b.to_f64(),
            e.route,
            e.s.to_f64(),
            e.t.to_f64()
        );
        match v {
            Verdict::Proven { .. } => trace.push(format!("{}: passed", label)),
            Verdict::Refuted { witness: Witness::Assoc { x, y, z, .. }, .. } => {
                let w = e.t.clone() - e.s.clone();
                let map = |u: S| e.s.clone() + w.clone() * u;
                let seeds = [map(x), map(y), map(z)];
                let found = verify_triple(&sys, seeds[0].clone(), seeds[1].clone(), seeds[2].clone())
                    .or_else(|| local_search(&sys, &e.s, &e.t, &seeds));
                match found {
                    Some(witness) => {
                        trace.push(format!("{}: failed", label));
                        return Ok(Verdict::Refuted { witness, trace });
                    }
                    None => {
                        trace.push(format!("{}: failed on the summand, witness did not transfer", label));
                        undetermined.get_or_insert((0, "summand witness did not transfer".into()));
                    }
                }
            }
            Verdict::Refuted { .. } => unreachable!("transform checks only produce triples"),
            Verdict::Undetermined { probes, note, .. } => {
                trace.push(format!("{}: undetermined ({})", label, note));
                undetermined.get_or_insert((probes, note));
            }
        }
    }
    for pair in entries.windows(2) {
        let (lo, up) = (&pair[0], &pair[1]);
        if !lo.t.near(&up.s) {
            continue;
        }
        let q = f.right_limit(&up.s);
        let jp = JetPoint { v: q.clone(), d: 1 };
        let jet = sys.op.eval_jet(&jp, &jp);
        let triggered = jet.c[0] < q || (jet.c[0] <= q.clone() + S::snap() && jet.is_flat());
        let label = format!("(ii) summands {} and {} touch at {}", lo.beta, up.beta, up.s.to_f64());
        if !triggered {
            trace.push(format!("{}: no zero-divisor trigger, passed", label));
            continue;
        }
        match check_left_neutral(&sys, &lo.t)? {
            Neutral::Holds => trace.push(format!("{}: triggered, left neutrality at {} holds, passed", label, lo.t.to_f64())),
            Neutral::Fails { x, .. } => {
                trace.push(format!(
                    "{}: triggered, left neutrality at {} fails at x = {}",
                    label,
                    lo.t.to_f64(),
                    x.to_f64()
                ));
                let mut zs = alloc::vec![lo.t.clone(), x];
                for k in 1..16 {
                    zs.push(lo.t.clone() * S::ratio(k, 16));
                }
                match touching_witness(&sys, &up.s, &up.t, &zs) {
                    Some(witness) => return Ok(Verdict::Refuted { witness, trace }),
                    None => {
                        undetermined.get_or_insert((0, "touching condition fails but no triple verified".into()));
                    }
                }
            }
        }
    }
    Ok(match undetermined {
        None => Verdict::Proven { trace },
        Some((probes, note)) => Verdict::Undetermined { probes, note, trace },
    })
}

/// Associativity for a proper subnorm through the lifted pair `(f/2, bar F)`.
pub fn check_assoc_subnorm<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Verdict<S>> {
    require_associative(expr)?;
    let bar = expr.bar_lift()?;
    let half = f.halved();
    let v = check_assoc_ordinal(&half, &bar)?;
    let sys = GeneratedT::new(f.clone(), expr)?;
    Ok(match v {
        Verdict::Refuted { witness: Witness::Assoc { x, y, z, .. }, mut trace } => match verify_triple(&sys, x, y, z) {
            Some(witness) => Verdict::Refuted { witness, trace },
            None => {
                trace.push("lifted witness did not transfer".into());
                Verdict::Undetermined { probes: 0, note: "lifted witness did not transfer".into(), trace }
            }
        },
        other => other,
    })
}

/// Associativity plus the neutral element `1`.
pub fn check_tnorm<S: Scalar>(f: &PiecewiseIncreasingFn<S>, expr: &TNormExpr<S>) -> Result<Verdict<S>> {
    let assoc = if expr.is_tnorm() { check_assoc_ordinal(f, expr)? } else { check_assoc_subnorm(f, expr)? };
    let sys = GeneratedT::new(f.clone(), expr)?;
    let neutral = check_left_neutral(&sys, &S::one())?;
    let mut trace: Vec<String> = assoc.trace().to_vec();
    match (&assoc, neutral) {
        (Verdict::Refuted { .. }, _) => Ok(assoc),
        (_, Neutral::Fails { x, .. }) => {
            trace.push(format!("(iii) neutral element fails at x = {}", x.to_f64()));
            let value = sys.t(&S::one(), &x);
            Ok(Verdict::Refuted { witness: Witness::Neutral { x, value }, trace })
        }
        (Verdict::Undetermined { probes, note, .. }, Neutral::Holds) => {
            trace.push("(iii) neutral element holds".into());
            Ok(Verdict::Undetermined { probes: *probes, note: note.clone(), trace })
        }
        (Verdict::Proven { .. }, Neutral::Holds) => {
            trace.push("(iii) neutral element holds".into());
            Ok(Verdict::Proven { trace })
        }
    }
}
