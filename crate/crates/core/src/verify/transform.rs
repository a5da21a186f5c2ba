use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cells::{Section, Side};
use crate::error::{Error, Result};
use crate::generated::GeneratedT;
use crate::interval_set::{Interval, IntervalSet};
use crate::scalar::Scalar;

use super::{witness_margin, Verdict, Witness};

/// The sets attached to one `y` in the range.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformSlice<S> {
    pub y: S,
    /// `{x in M : F(x,y) in [b_k,d_k]}` per gap.
    pub m_k: Vec<IntervalSet<S>>,
    /// `{x in M : F(x,y) in M \ C}`.
    pub m_y: IntervalSet<S>,
    pub i_k: Vec<IntervalSet<S>>,
    /// Nonempty `J_{k,l}`.
    pub j: Vec<((usize, usize), IntervalSet<S>)>,
    /// Nonempty `F(I_k, M^y) ∩ ACC0(M)`.
    pub hits1: Vec<(usize, IntervalSet<S>)>,
    /// Nonempty `J_{k,l} ∩ ACC0(M)`.
    pub hits2: Vec<((usize, usize), IntervalSet<S>)>,
}

impl<S: Scalar> TransformSlice<S> {
    pub fn clean(&self) -> bool {
        self.hits1.is_empty() && self.hits2.is_empty()
    }
}

/// A hit made only of slivers no wider than the float snap is rounding noise.
fn significant<S: Scalar>(hit: &IntervalSet<S>) -> bool {
    if S::EXACT {
        return !hit.is_empty();
    }
    hit.components().iter().any(|c| c.hi.clone() - c.lo.clone() > S::snap())
}

fn gap_set<S: Scalar>(sys: &GeneratedT<S>, k: usize) -> IntervalSet<S> {
    let g = &sys.pair.gaps[k];
    IntervalSet::from_interval(Interval::closed(g.b.clone(), g.d.clone()))
}

pub fn transform_slice<S: Scalar>(sys: &GeneratedT<S>, y: &S) -> Result<TransformSlice<S>> {
    if !sys.m.contains_approx(y) {
        return Err(Error::NotInRange(y.to_f64()));
    }
    let sec = sys.op.section(y, Side::Exact);
    let proper = sys.pair.proper_part(&sys.m);
    let acc0 = &sys.acc.both;
    let gaps = &sys.pair.gaps;
    let m_k: Vec<IntervalSet<S>> = (0..gaps.len()).map(|k| sec.preimage(&gap_set(sys, k)).intersect(&sys.m)).collect();
    let m_y = sec.preimage(&proper).intersect(&sys.m);
    let mut i_k = Vec::new();
    let mut hits1 = Vec::new();
    for (k, g) in gaps.iter().enumerate() {
        let i = IntervalSet::points([g.c.clone()]).union(&sec.image(&m_k[k])).open_hull();
        let hit = sys.op.image(&i, &m_y).intersect(acc0);
        if significant(&hit) {
            hits1.push((k, hit));
        }
        i_k.push(i);
    }
    let at_c: Vec<Section<S>> = gaps.iter().map(|g| sys.op.section(&g.c, Side::Exact)).collect();
    let mut j = Vec::new();
    let mut hits2 = Vec::new();
    for k in 0..gaps.len() {
        for l in 0..gaps.len() {
            if m_k[k].is_empty() || m_k[l].is_empty() {
                continue;
            }
            let set = at_c[l].image(&m_k[k]).union(&at_c[k].image(&m_k[l])).open_hull();
            if set.is_empty() {
                continue;
            }
            let hit = set.intersect(acc0);
            if significant(&hit) {
                hits2.push(((k, l), hit));
            }
            j.push(((k, l), set));
        }
    }
    Ok(TransformSlice { y: y.clone(), m_k, m_y, i_k, j, hits1, hits2 })
}

/// Gap representatives, breakpoint images and a grid on every component of `M`.
pub fn default_probes<S: Scalar>(sys: &GeneratedT<S>, per_component: usize) -> Vec<S> {
    let mut v: Vec<S> = sys.pair.gaps.iter().map(|g| g.c.clone()).collect();
    for x in sys.f.breakpoints() {
        v.push(sys.f.at(&x));
        v.push(sys.f.left_limit(&x));
        v.push(sys.f.right_limit(&x));
    }
    v.extend(sys.m.samples(per_component));
    v.retain(|y| sys.m.contains(y));
    v.sort_by(|a, b| a.cmp_s(b));
    v.dedup();
    v
}

/// Rebuilds a triple from a slice with a hit and keeps the lexicographically smallest one that verifies.
fn reconstruct<S: Scalar>(sys: &GeneratedT<S>, slice: &TransformSlice<S>) -> Option<Witness<S>> {
    let mut pairs: Vec<(IntervalSet<S>, IntervalSet<S>)> = Vec::new();
    for (k, _) in &slice.hits1 {
        pairs.push((slice.m_k[*k].clone(), slice.m_y.union(&sys.m)));
    }
    for ((k, l), _) in &slice.hits2 {
        pairs.push((slice.m_k[*k].clone(), slice.m_k[*l].clone()));
    }
    let yd = sys.f.pseudo_inverse(&slice.y);
    let margin = witness_margin::<S>();
    let mut best: Option<(S, S, S, S, S)> = None;
    for (xs, zs) in pairs {
        let xs = xs.samples(6);
        let zs = zs.samples(6);
        for x in &xs {
            let xd = sys.f.pseudo_inverse(x);
            for z in &zs {
                let zd = sys.f.pseudo_inverse(z);
                let (gap, l, r) = sys.assoc_gap(&xd, &yd, &zd);
                if gap <= margin {
                    continue;
                }
                let cand = (xd.clone(), yd.clone(), zd.clone(), l, r);
                let better = match &best {
                    None => true,
                    Some(b) => (&cand.0, &cand.1, &cand.2).partial_cmp(&(&b.0, &b.1, &b.2)) == Some(core::cmp::Ordering::Less),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    best.map(|(x, y, z, left, right)| Witness::Assoc { x, y, z, left, right })
}

/// Whether the slices for every `y` in `ys` provably miss `ACC0(M)`.
///
/// For `y` in the piece, `M_k^y` sits inside the set of `x` whose section
/// values at the two ends of the piece straddle the gap; the hull and image
/// sets are then bounded by images of those supersets.
fn piece_clear<S: Scalar>(sys: &GeneratedT<S>, ys: &Interval<S>) -> bool {
    let acc0 = &sys.acc.both;
    let gaps = &sys.pair.gaps;
    let yset = IntervalSet::from_interval(ys.clone());
    let s_hi = sys.op.section(&ys.hi, if ys.hi_closed { Side::Exact } else { Side::Minus });
    let s_lo = sys.op.section(&ys.lo, if ys.lo_closed { Side::Exact } else { Side::Plus });
    let mut a: Vec<IntervalSet<S>> = Vec::new();
    for g in gaps {
        let gap = IntervalSet::from_interval(Interval::closed(g.b.clone(), g.d.clone()));
        let up = s_hi.preimage(&IntervalSet::from_interval(Interval::closed(g.b.clone(), S::one())));
        let down = s_lo.preimage(&IntervalSet::from_interval(Interval::closed(S::zero(), g.d.clone())));
        let cand = sys.m.intersect(&up).intersect(&down);
        // no y in the piece sends any candidate into the gap
        let r = sys.op.image(&cand, &yset).intersect(&gap);
        if r.is_empty() {
            a.push(IntervalSet::empty());
            continue;
        }
        let i_hat = IntervalSet::points([g.c.clone()]).union(&r).open_hull();
        if significant(&sys.op.image(&i_hat, &sys.m).intersect(acc0)) {
            return false;
        }
        a.push(cand);
    }
    for k in 0..gaps.len() {
        for l in 0..gaps.len() {
            if a[k].is_empty() || a[l].is_empty() {
                continue;
            }
            let ck = IntervalSet::points([gaps[k].c.clone()]);
            let cl = IntervalSet::points([gaps[l].c.clone()]);
            let j = sys.op.image(&a[k], &cl).union(&sys.op.image(&ck, &a[l])).open_hull();
            if significant(&j.intersect(acc0)) {
                return false;
            }
        }
    }
    true
}

fn split_points<S: Scalar>(sys: &GeneratedT<S>) -> Vec<S> {
    let mut v = sys.op.critical_points();
    for g in &sys.pair.gaps {
        v.extend([g.b.clone(), g.d.clone(), g.c.clone()]);
    }
    let mirrored: Vec<S> = v.iter().map(|x| S::one() - x.clone()).collect();
    v.extend(mirrored);
    v.retain(|x| *x > S::zero() && *x < S::one());
    v.sort_by(|a, b| a.cmp_s(b));
    v.dedup();
    v
}

const MAX_DEPTH: u32 = 20;
const MAX_PIECES: usize = 4000;

/// Covers `M` by pieces that pass [`piece_clear`] plus finitely many points
/// that need exact slices. Returns `false` when some piece stays unresolved.
fn bounds_clear<S: Scalar>(sys: &GeneratedT<S>, trace: &mut Vec<String>) -> (bool, Vec<S>) {
    let cuts = IntervalSet::points(split_points(sys));
    let mut exact_ys: Vec<S> = Vec::new();
    let mut queue: Vec<(Interval<S>, u32)> = Vec::new();
    for c in sys.m.components() {
        let whole = IntervalSet::from_interval(c.clone());
        for p in whole.intersect(&cuts).components() {
            exact_ys.push(p.lo.clone());
        }
        for piece in whole.difference(&cuts).components() {
            if piece.is_point() {
                exact_ys.push(piece.lo.clone());
            } else {
                queue.push((piece.clone(), 0));
            }
        }
    }
    let mut checked = 0usize;
    let mut ok = true;
    while let Some((piece, depth)) = queue.pop() {
        checked += 1;
        if piece_clear(sys, &piece) {
            continue;
        }
        if depth >= MAX_DEPTH || checked + queue.len() >= MAX_PIECES {
            trace.push(format!("bound unresolved near y in {}", piece));
            ok = false;
            break;
        }
        let mid = piece.midpoint();
        exact_ys.push(mid.clone());
        queue.push((Interval::new(piece.lo.clone(), mid.clone(), piece.lo_closed, false), depth + 1));
        queue.push((Interval::new(mid, piece.hi.clone(), false, piece.hi_closed), depth + 1));
    }
    exact_ys.sort_by(|a, b| a.cmp_s(b));
    exact_ys.dedup();
    (ok, exact_ys)
}

/// Decides whether the F-transformation of `M` misses `ACC0(M)`.
///
/// `Proven` needs the image bounds plus exact slices at the finitely many
/// remaining `y`; otherwise the probes can only refute.
pub fn check_assoc_transform<S: Scalar>(sys: &GeneratedT<S>, probe_ys: Option<&[S]>) -> Verdict<S> {
    let mut trace = Vec::new();
    let (bound_ok, exact_ys) = bounds_clear(sys, &mut trace);
    let mut exact_ok = true;
    for y in &exact_ys {
        let Ok(slice) = transform_slice(sys, y) else { continue };
        if !slice.clean() {
            exact_ok = false;
            if let Some(w) = reconstruct(sys, &slice) {
                trace.push(format!("slice at y = {} meets ACC0", y.to_f64()));
                return Verdict::Refuted { witness: w, trace };
            }
        }
    }
    if bound_ok && exact_ok {
        trace.push(format!("image bounds clear, {} exact slices clear", exact_ys.len()));
        return Verdict::Proven { trace };
    }
    let owned;
    let probes = match probe_ys {
        Some(p) => p,
        None => {
            owned = default_probes(sys, 64);
            &owned[..]
        }
    };
    let mut unverified = 0usize;
    for y in probes {
        let Ok(slice) = transform_slice(sys, y) else { continue };
        if slice.clean() {
            continue;
        }
        if let Some(w) = reconstruct(sys, &slice) {
            trace.push(format!("slice at y = {} meets ACC0", y.to_f64()));
            return Verdict::Refuted { witness: w, trace };
        }
        unverified += 1;
    }
    let note = if unverified > 0 {
        format!("{} probe slices hit ACC0 but no triple verified", unverified)
    } else {
        format!("{} probe slices clear, bound inconclusive", probes.len())
    };
    trace.push(note.clone());
    Verdict::Undetermined { probes: probes.len() + exact_ys.len(), note, trace }
}
