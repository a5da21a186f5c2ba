//! Command bodies, generic over the numeric backend.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use tnf_core::classify::TClass;
use tnf_core::generated::GeneratedT;
use tnf_core::oracle::{critical_points, AssocTables};
use tnf_core::verify::{check_assoc_ordinal, check_assoc_subnorm, check_tnorm, witness_margin};
use tnf_core::{classify, GridSpec, PiecewiseIncreasingFn, Scalar, TNormExpr, Verdict, Witness};

use crate::fixtures::Checker;

/// Exit codes: 0 proven / decided, 1 refuted, 2 undetermined, 3 usage or schema error.
pub const EXIT_PROVEN: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error(transparent)]
    Model(#[from] tnf_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Decimal with at most 12 significant digits.
pub fn fmt12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let e = v.abs().log10().floor() as i32;
    let decimals = (11 - e).max(0) as usize;
    let mut s = format!("{:.*}", decimals, v);
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn parse_point<S: Scalar>(text: &str) -> Result<S, RunError> {
    let v: S = crate::config::Num::Text(text.to_string()).get("argument")?;
    if v < S::zero() || v > S::one() {
        return Err(RunError::Usage(format!("{} is outside [0,1]", text)));
    }
    Ok(v)
}

/// The oracle grid: `n` uniform points, the critical points, and any extras.
pub fn oracle_grid<S: Scalar>(sys: &GeneratedT<S>, n: usize, extra: &[S]) -> Result<GridSpec<S>, RunError> {
    let mut pts = critical_points(sys);
    pts.extend(extra.iter().cloned());
    Ok(GridSpec::new(n, pts)?)
}

/// Lexicographic first witness, rows scanned in parallel and merged in order.
pub fn par_assoc_search<S: Scalar>(sys: &GeneratedT<S>, grid: &GridSpec<S>, tol: &S) -> Option<Witness<S>> {
    let t = |x: &S, y: &S| sys.t(x, y);
    let pts = grid.points();
    let rows: Vec<Vec<S>> = pts.par_iter().map(|x| pts.iter().map(|y| t(x, y)).collect()).collect();
    let tables = AssocTables::from_rows(pts, rows);
    let left: Vec<Vec<S>> = (0..tables.values.len()).into_par_iter().map(|v| tables.left_row(&t, v)).collect();
    (0..tables.pts.len())
        .into_par_iter()
        .map(|i| tables.scan_row(&t, &left, i, tol))
        .find_first(|w| w.is_some())
        .flatten()
}

/// First grid point with `|T(1,x) - x| > tol`.
pub fn neutral_search<S: Scalar>(sys: &GeneratedT<S>, grid: &GridSpec<S>, tol: &S) -> Option<Witness<S>> {
    grid.points().into_iter().find_map(|x| {
        let value = sys.t(&S::one(), &x);
        ((value.clone() - x.clone()).abs_s() > *tol).then_some(Witness::Neutral { x, value })
    })
}

/// Associativity scan, then the neutral element when `neutral` is set.
pub fn oracle_search<S: Scalar>(sys: &GeneratedT<S>, grid: &GridSpec<S>, tol: &S, neutral: bool) -> Option<Witness<S>> {
    par_assoc_search(sys, grid, tol).or_else(|| if neutral { neutral_search(sys, grid, tol) } else { None })
}

pub struct Options<S> {
    pub grid: usize,
    pub tol: S,
    pub extra: Vec<S>,
}

pub struct CheckOutcome<S> {
    pub verdict: Verdict<S>,
    pub oracle: Option<Witness<S>>,
    pub exit: i32,
    pub report: String,
}

pub fn decide<S: Scalar>(f: &PiecewiseIncreasingFn<S>, e: &TNormExpr<S>, checker: Checker) -> Result<Verdict<S>, RunError> {
    Ok(match checker {
        Checker::Ordinal => check_assoc_ordinal(f, e)?,
        Checker::Auto if e.is_tnorm() => check_tnorm(f, e)?,
        Checker::Auto => check_assoc_subnorm(f, e)?,
    })
}

fn checker_name<S: Scalar>(e: &TNormExpr<S>, checker: Checker) -> &'static str {
    match checker {
        Checker::Ordinal => "ordinal-sum associativity",
        Checker::Auto if e.is_tnorm() => "t-norm (associativity and neutral element)",
        Checker::Auto => "t-subnorm associativity",
    }
}

/// `|T(T(x,y),z) - T(x,T(y,z))|` recomputed from scratch.
pub fn reverify<S: Scalar>(sys: &GeneratedT<S>, w: &Witness<S>) -> S {
    match w {
        Witness::Assoc { x, y, z, .. } => sys.assoc_gap(x, y, z).0,
        Witness::Neutral { x, .. } => (sys.t(&S::one(), x) - x.clone()).abs_s(),
    }
}

pub fn check<S: Scalar>(
    f: &PiecewiseIncreasingFn<S>,
    e: &TNormExpr<S>,
    checker: Checker,
    opts: &Options<S>,
) -> Result<CheckOutcome<S>, RunError> {
    let sys = GeneratedT::new(f.clone(), e)?;
    let verdict = decide(f, e, checker)?;
    let grid = oracle_grid(&sys, opts.grid, &opts.extra)?;
    let oracle = oracle_search(&sys, &grid, &opts.tol, checker == Checker::Auto && e.is_tnorm());
    let mut r = String::new();
    let _ = writeln!(r, "backend: {}", S::NAME);
    let _ = writeln!(r, "check: {}", checker_name(e, checker));
    let _ = writeln!(r, "verdict: {}", verdict.label());
    let _ = writeln!(r, "trace:");
    for line in verdict.trace() {
        let _ = writeln!(r, "  - {}", line);
    }
    let npts = grid.points().len();
    let exit = match (&verdict, &oracle) {
        (Verdict::Proven { .. }, None) => {
            let _ = writeln!(r, "oracle: no witness on the {}x{} grid", npts, npts);
            EXIT_PROVEN
        }
        (Verdict::Proven { .. }, Some(w)) => {
            let _ = writeln!(r, "oracle: DISAGREES, grid witness {}", w);
            let _ = writeln!(r, "result: Undetermined (decider and oracle conflict)");
            EXIT_UNDETERMINED
        }
        (Verdict::Refuted { witness, .. }, o) => {
            let gap = reverify(&sys, witness);
            let _ = writeln!(r, "witness: {}", witness);
            let _ = writeln!(r, "witness re-evaluated: gap {}", fmt12(gap.to_f64()));
            match o {
                Some(w) => {
                    let _ = writeln!(r, "oracle: grid witness {}", w);
                }
                None => {
                    let _ = writeln!(r, "oracle: no witness on the {}x{} grid", npts, npts);
                }
            }
            EXIT_REFUTED
        }
        (Verdict::Undetermined { note, probes, .. }, Some(w)) if reverify(&sys, w) > witness_margin::<S>() => {
            let _ = writeln!(r, "note: {} ({} probes)", note, probes);
            let _ = writeln!(r, "oracle: grid witness {}", w);
            let _ = writeln!(r, "result: Refuted by the grid witness");
            EXIT_REFUTED
        }
        (Verdict::Undetermined { note, probes, .. }, o) => {
            let _ = writeln!(r, "note: {} ({} probes)", note, probes);
            match o {
                Some(w) => {
                    let _ = writeln!(r, "oracle: grid hit below the witness margin, {}", w);
                }
                None => {
                    let _ = writeln!(r, "oracle: no witness on the {}x{} grid", npts, npts);
                }
            }
            EXIT_UNDETERMINED
        }
    };
    Ok(CheckOutcome { verdict, oracle, exit, report: r })
}

pub fn classify_report<S: Scalar>(f: &PiecewiseIncreasingFn<S>, e: &TNormExpr<S>) -> Result<(TClass<S>, i32, String), RunError> {
    let c = classify(f, e)?;
    let mut r = format!("{}\ntrace:\n", c.class);
    for line in &c.trace {
        let _ = writeln!(r, "  - {}", line);
    }
    let exit = if matches!(c.class, TClass::Undetermined { .. }) { EXIT_UNDETERMINED } else { EXIT_PROVEN };
    Ok((c.class, exit, r))
}

/// Rows `(x, y, T(x,y))` over the grid, sorted by `(x, y)`.
pub fn surface_rows<S: Scalar>(sys: &GeneratedT<S>, n: usize) -> Result<Vec<(S, S, S)>, RunError> {
    let pts = oracle_grid(sys, n, &[])?.points();
    Ok(pts
        .par_iter()
        .flat_map_iter(|x| pts.iter().map(move |y| (x.clone(), y.clone(), sys.t(x, y))))
        .collect())
}

/// Writes the CSV next to `out` first and renames it into place.
pub fn write_surface<S: Scalar>(rows: &[(S, S, S)], out: &Path) -> Result<(), RunError> {
    let io = |source| RunError::Io { path: out.display().to_string(), source };
    let dir = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    {
        let mut w = csv::Writer::from_writer(std::io::BufWriter::new(tmp.as_file()));
        w.write_record(["x", "y", "T"]).map_err(|e| io(e.into()))?;
        for (x, y, t) in rows {
            w.write_record([fmt12(x.to_f64()), fmt12(y.to_f64()), fmt12(t.to_f64())]).map_err(|e| io(e.into()))?;
        }
        w.flush().map_err(io)?;
    }
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(out).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn eval_line<S: Scalar>(f: &PiecewiseIncreasingFn<S>, e: &TNormExpr<S>, x: &S, y: &S) -> Result<String, RunError> {
    let v = tnf_core::eval_t(f, e, x, y)?;
    let mut s = fmt12(v.to_f64());
    if S::EXACT {
        let _ = write!(s, "\nexact: {}", v);
    }
    let _ = write!(s, "\nbackend: {}", S::NAME);
    Ok(s)
}

pub fn print(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    if !s.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}
