//! Runs a fixture and compares every stated outcome.

use std::fmt::Write as _;

use tnf_core::generated::GeneratedT;
use tnf_core::oracle::default_tol;
use tnf_core::{compare_closed_form, Rational, Scalar, Witness};

use crate::config::Backend;
use crate::fixtures::{Checker, Fixture};
use crate::run::{classify_report, decide, fmt12, oracle_grid, oracle_search, reverify, RunError};

#[derive(Clone, Copy, Debug)]
pub struct ExampleOpts {
    pub grid: usize,
    /// Backend for the deciders, the closed form and the class.
    pub backend: Backend,
    /// Backend for the grid oracle.
    pub oracle_backend: Backend,
}

impl Default for ExampleOpts {
    fn default() -> Self {
        ExampleOpts { grid: 101, backend: Backend::Auto, oracle_backend: Backend::Auto }
    }
}

pub struct ExampleResult {
    pub id: &'static str,
    pub pass: bool,
    pub verdict: &'static str,
    /// `|T(T(x,y),z) - T(x,T(y,z))|` at the decider's witness.
    pub witness_gap: Option<f64>,
    pub oracle: Option<OracleHit>,
    pub report: String,
}

/// An oracle witness, kept as text plus its kind.
pub struct OracleHit {
    pub assoc: bool,
    pub text: String,
}

struct Lines {
    text: String,
    pass: bool,
}

impl Lines {
    fn item(&mut self, ok: bool, what: String) {
        self.pass &= ok;
        let _ = writeln!(self.text, "  [{}] {}", if ok { "ok" } else { "FAIL" }, what);
    }
}

pub fn run_example(fx: &Fixture, opts: ExampleOpts) -> Result<ExampleResult, RunError> {
    match fx.config.resolve(opts.backend) {
        Backend::Exact => run_as::<Rational>(fx, opts),
        _ => run_as::<f64>(fx, opts),
    }
}

/// Max `|T - closed form|` over the `n`-grid plus critical points, in floats.
pub fn closed_form_deviation<S: Scalar>(sys: &GeneratedT<S>, reference: fn(f64, f64) -> f64, n: usize) -> Result<f64, RunError> {
    let grid = oracle_grid(sys, n, &[])?;
    let g = tnf_core::GridSpec::new(grid.n, grid.extra.iter().map(|v| v.to_f64()).collect())?;
    let back = |v: &f64| S::from_f64(*v).unwrap_or_else(S::zero);
    Ok(compare_closed_form(|x: &f64, y: &f64| sys.t(&back(x), &back(y)).to_f64(), |x: &f64, y: &f64| reference(*x, *y), &g))
}

/// The grid oracle for a fixture, run in backend `O`.
pub fn fixture_oracle<O: Scalar>(fx: &Fixture, grid: usize) -> Result<Option<OracleHit>, RunError> {
    let f = fx.config.generator::<O>()?;
    let e = fx.config.tnorm::<O>()?;
    let sys = GeneratedT::new(f, &e)?;
    let extra: Vec<O> = fx.witness.map(|w| w[..3].iter().filter_map(|v| O::from_f64(*v)).collect()).unwrap_or_default();
    let g = oracle_grid(&sys, grid, &extra)?;
    let neutral = fx.checker == Checker::Auto && e.is_tnorm();
    Ok(oracle_search(&sys, &g, &default_tol::<O>(), neutral).map(|w| OracleHit {
        assoc: matches!(w, Witness::Assoc { .. }),
        text: format!("{} [{}]", w, O::NAME),
    }))
}

fn run_as<S: Scalar>(fx: &Fixture, opts: ExampleOpts) -> Result<ExampleResult, RunError> {
    let f = fx.config.generator::<S>()?;
    let e = fx.config.tnorm::<S>()?;
    let sys = GeneratedT::new(f.clone(), &e)?;
    let mut out = Lines { text: format!("{}: {}\n  backend: {}\n", fx.id, fx.title, S::NAME), pass: true };
    if let Some(cf) = fx.closed_form {
        let d = closed_form_deviation(&sys, cf, opts.grid)?;
        out.item(d <= 1e-9, format!("closed form, max deviation {:e}", d));
    }
    let verdict = decide(&f, &e, fx.checker)?;
    out.item(verdict.label() == fx.verdict, format!("verdict {} (expected {})", verdict.label(), fx.verdict));
    let witness_gap = verdict.witness().map(|w| reverify(&sys, w).to_f64());
    if let (Some(w), Some(gap)) = (verdict.witness(), witness_gap) {
        out.item(gap > 1e-6, format!("witness {} re-evaluates with gap {}", w, fmt12(gap)));
    }
    let oracle = match fx.config.resolve(opts.oracle_backend) {
        Backend::Exact => fixture_oracle::<Rational>(fx, opts.grid)?,
        _ => fixture_oracle::<f64>(fx, opts.grid)?,
    };
    let oracle_ok = match verdict.label() {
        "Refuted" => oracle.is_some(),
        _ => oracle.is_none(),
    };
    out.item(oracle_ok, match &oracle {
        Some(h) => format!("oracle witness {}", h.text),
        None => "oracle finds no witness".into(),
    });
    if let Some([x, y, z, l, r]) = fx.witness {
        let p = |v: f64| S::from_f64(v).unwrap_or_else(S::zero);
        let (_, left, right) = sys.assoc_gap(&p(x), &p(y), &p(z));
        let (left, right) = (left.to_f64(), right.to_f64());
        let ok = (left - l).abs() <= 1e-9 && (right - r).abs() <= 1e-9;
        out.item(ok, format!("T(T({x},{y}),{z}) = {} and T({x},T({y},{z})) = {}", fmt12(left), fmt12(right)));
        out.item(oracle.as_ref().is_some_and(|h| h.assoc), "oracle confirms a failing triple".into());
    }
    if let Some(m) = fx.trace_mentions {
        let hit = verdict.trace().iter().any(|l| l.contains(m));
        out.item(hit, format!("trace names {}", m));
    }
    if let Some(class) = fx.class {
        let (got, _, _) = classify_report(&f, &e)?;
        out.item(got.label() == class, format!("class {} (expected {})", got.label(), class));
    }
    let _ = writeln!(out.text, "  {}", if out.pass { "pass" } else { "FAIL" });
    Ok(ExampleResult { id: fx.id, pass: out.pass, verdict: verdict.label(), witness_gap, oracle, report: out.text })
}
