use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tnf::config::{Backend, ConfigDoc};
use tnf::example::{run_example, ExampleOpts};
use tnf::fixtures::{self, Checker};
use tnf::run::{self, check, classify_report, eval_line, parse_point, print, surface_rows, write_surface, Options, RunError, EXIT_ERROR};
use tnf_core::generated::GeneratedT;
use tnf_core::oracle::default_tol;
use tnf_core::{Rational, Scalar};

#[derive(Parser)]
#[command(name = "tnf", version, about = "Generated t-norms T(x,y) = f^(-1)(F(f(x), f(y)))")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON config with `generator`, `tnorm` and optional `check`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Points per axis for the oracle grid or the surface.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Oracle tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    /// Output file for `surface`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print T(x,y).
    Eval { x: String, y: String },
    /// Decide associativity (and the neutral element for t-norms), cross-checked by the grid oracle.
    Check,
    /// TM, ordinally irreducible, or a non-trivial ordinal sum.
    Classify,
    /// Run built-in fixtures; no id runs all of them.
    Example {
        id: Option<String>,
        /// Print the fixture's config instead of running it.
        #[arg(long)]
        dump: bool,
    },
    /// Write `x,y,T` rows over the grid and the critical points.
    Surface,
}

struct Ctx {
    doc: ConfigDoc,
    backend: Backend,
    grid: usize,
    tol: Option<f64>,
}

fn context(cli: &Cli) -> Result<Ctx, RunError> {
    let path = cli.config.as_ref().ok_or_else(|| RunError::Usage("--config is required".into()))?;
    let doc = ConfigDoc::load(path)?;
    let backend = doc.resolve(cli.backend.or(doc.check.backend).unwrap_or_default());
    let grid = cli.grid.or(doc.check.grid).unwrap_or(101);
    let tol = cli.tol.or(doc.check.tol);
    Ok(Ctx { doc, backend, grid, tol })
}

fn tol_of<S: Scalar>(t: Option<f64>) -> Result<S, RunError> {
    match t {
        Some(v) if v >= 0.0 => S::from_f64(v).ok_or_else(|| RunError::Usage(format!("bad tolerance {}", v))),
        Some(v) => Err(RunError::Usage(format!("bad tolerance {}", v))),
        None => Ok(default_tol::<S>()),
    }
}

fn with_config<S: Scalar>(cli: &Cli, ctx: &Ctx) -> Result<i32, RunError> {
    let f = ctx.doc.generator::<S>()?;
    let e = ctx.doc.tnorm::<S>()?;
    match &cli.cmd {
        Cmd::Eval { x, y } => {
            let (x, y) = (parse_point::<S>(x)?, parse_point::<S>(y)?);
            print(&eval_line(&f, &e, &x, &y)?);
            Ok(0)
        }
        Cmd::Check => {
            let opts = Options { grid: ctx.grid, tol: tol_of::<S>(ctx.tol)?, extra: vec![] };
            let c = check(&f, &e, Checker::Auto, &opts)?;
            print(&c.report);
            Ok(c.exit)
        }
        Cmd::Classify => {
            let (_, exit, r) = classify_report(&f, &e)?;
            print(&r);
            Ok(exit)
        }
        Cmd::Surface => {
            let out = cli.out.as_ref().ok_or_else(|| RunError::Usage("--out is required".into()))?;
            let sys = GeneratedT::new(f, &e)?;
            let rows = surface_rows(&sys, ctx.grid)?;
            write_surface(&rows, out)?;
            print(&format!("wrote {} rows to {}", rows.len(), out.display()));
            Ok(0)
        }
        Cmd::Example { .. } => unreachable!(),
    }
}

fn example(id: Option<&str>, dump: bool, opts: ExampleOpts) -> Result<i32, RunError> {
    let chosen = match id {
        None | Some("all") => fixtures::all(),
        Some(id) => vec![fixtures::get(id)
            .ok_or_else(|| RunError::Usage(format!("unknown example {:?}; valid ids: {}", id, fixtures::ids().join(", "))))?],
    };
    if dump {
        for fx in &chosen {
            print(&fx.config.to_json());
        }
        return Ok(0);
    }
    let mut all_pass = true;
    for fx in &chosen {
        let r = run_example(fx, opts)?;
        all_pass &= r.pass;
        print(&r.report);
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn dispatch(cli: &Cli) -> Result<i32, RunError> {
    if let Cmd::Example { id, dump } = &cli.cmd {
        let backend = cli.backend.unwrap_or_default();
        let opts = ExampleOpts { grid: cli.grid.unwrap_or(101), backend, oracle_backend: backend };
        return example(id.as_deref(), *dump, opts);
    }
    let ctx = context(cli)?;
    match ctx.backend {
        Backend::Exact => with_config::<Rational>(cli, &ctx),
        _ => with_config::<f64>(cli, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(run::EXIT_ERROR as u8)
        }
    }
}
