//! Brute-force grid checks, independent of the structural deciders.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::generated::GeneratedT;
use crate::scalar::Scalar;
use crate::verify::Witness;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<S> {
    pub n: usize,
    pub extra: Vec<S>,
}

impl<S: Scalar> GridSpec<S> {
    pub fn new(n: usize, extra: Vec<S>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(n as f64));
        }
        if let Some(x) = extra.iter().find(|x| **x < S::zero() || **x > S::one()) {
            return Err(Error::Domain(x.to_f64()));
        }
        Ok(GridSpec { n, extra })
    }

    /// Sorted union of the uniform grid and the extra points.
    pub fn points(&self) -> Vec<S> {
        let d = (self.n - 1) as i64;
        let mut v: Vec<S> = (0..=d).map(|i| S::ratio(i, d)).collect();
        v.extend(self.extra.iter().cloned());
        v.sort_by(|a, b| a.cmp_s(b));
        v.dedup();
        v
    }
}

/// Breakpoints, their images under the pseudo-inverse of the operator's
/// critical points, and `0.5, 0.75` for good measure.
pub fn critical_points<S: Scalar>(sys: &GeneratedT<S>) -> Vec<S> {
    let mut v = sys.f.breakpoints();
    for c in sys.op.critical_points() {
        v.push(sys.f.pseudo_inverse(&c));
    }
    v.push(S::half());
    v.push(S::ratio(3, 4));
    v.retain(|x| *x >= S::zero() && *x <= S::one());
    v.sort_by(|a, b| a.cmp_s(b));
    v.dedup();
    v
}

/// `T` on the grid, stored as indices into the sorted distinct values.
///
/// Piecewise operators repeat a lot of values, so the outer evaluations
/// `T(v, z)` and `T(x, v)` are done once per distinct `v`.
pub struct AssocTables<S> {
    pub pts: Vec<S>,
    pub values: Vec<S>,
    /// `values[inner[i][j]] = T(p_i, p_j)`
    pub inner: Vec<Vec<usize>>,
}

impl<S: Scalar> AssocTables<S> {
    pub fn from_rows(pts: Vec<S>, rows: Vec<Vec<S>>) -> Self {
        let mut values: Vec<S> = rows.iter().flatten().cloned().collect();
        values.sort_by(|a, b| a.cmp_s(b));
        values.dedup();
        let find = |v: &S| values.binary_search_by(|w| w.cmp_s(v)).expect("value present");
        let inner = rows.iter().map(|r| r.iter().map(find).collect()).collect();
        AssocTables { pts, values, inner }
    }

    pub fn new<T: Fn(&S, &S) -> S>(t: &T, pts: Vec<S>) -> Self {
        let rows = pts.iter().map(|x| pts.iter().map(|y| t(x, y)).collect()).collect();
        Self::from_rows(pts, rows)
    }

    /// `T(values[v], p_k)` for every `k`.
    pub fn left_row<T: Fn(&S, &S) -> S>(&self, t: &T, v: usize) -> Vec<S> {
        self.pts.iter().map(|z| t(&self.values[v], z)).collect()
    }

    /// First witness with `x = p_i`; `left[v][k] = T(values[v], p_k)`.
    pub fn scan_row<T: Fn(&S, &S) -> S>(&self, t: &T, left: &[Vec<S>], i: usize, tol: &S) -> Option<Witness<S>> {
        let x = &self.pts[i];
        let right: Vec<S> = self.values.iter().map(|v| t(x, v)).collect();
        for j in 0..self.pts.len() {
            let lrow = &left[self.inner[i][j]];
            for k in 0..self.pts.len() {
                let (l, r) = (&lrow[k], &right[self.inner[j][k]]);
                if (l.clone() - r.clone()).abs_s() > *tol {
                    return Some(Witness::Assoc {
                        x: x.clone(),
                        y: self.pts[j].clone(),
                        z: self.pts[k].clone(),
                        left: l.clone(),
                        right: r.clone(),
                    });
                }
            }
        }
        None
    }
}

/// First triple in lexicographic order whose two association orders differ by more than `tol`.
pub fn grid_assoc_search<S, T>(t: T, grid: &GridSpec<S>, tol: &S) -> Option<Witness<S>>
where
    S: Scalar,
    T: Fn(&S, &S) -> S,
{
    let tables = AssocTables::new(&t, grid.points());
    let left: Vec<Vec<S>> = (0..tables.values.len()).map(|v| tables.left_row(&t, v)).collect();
    (0..tables.pts.len()).find_map(|i| tables.scan_row(&t, &left, i, tol))
}

/// Largest `|t - reference|` over the grid.
pub fn compare_closed_form<S, T, R>(t: T, reference: R, grid: &GridSpec<S>) -> S
where
    S: Scalar,
    T: Fn(&S, &S) -> S,
    R: Fn(&S, &S) -> S,
{
    let pts = grid.points();
    let mut worst = S::zero();
    for x in &pts {
        for y in &pts {
            let d = (t(x, y) - reference(x, y)).abs_s();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Default tolerance: 0 exact, 1e-9 float.
pub fn default_tol<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::ratio(1, 1_000_000_000)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono_fn::PiecewiseIncreasingFn;
    use crate::tnorm::TNormExpr;

    #[test]
    fn min_has_no_witness() {
        let g = GridSpec::<f64>::new(21, alloc::vec![0.33]).unwrap();
        assert_eq!(g.points().len(), 22);
        assert!(grid_assoc_search(|x: &f64, y: &f64| x.min(*y), &g, &0.0).is_none());
        let bad = |x: &f64, y: &f64| (x + y) / 2.0;
        assert!(grid_assoc_search(bad, &g, &1e-9).is_some());
        let sys = GeneratedT::new(PiecewiseIncreasingFn::identity(), &TNormExpr::Product).unwrap();
        assert_eq!(compare_closed_form(|x: &f64, y: &f64| sys.t(x, y), |x: &f64, y: &f64| x * y, &g), 0.0);
        assert!(GridSpec::<f64>::new(1, alloc::vec![]).is_err());
    }
}
