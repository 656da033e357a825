//! `buckle`: buckling eigenvalues of annuli, disks and rectangles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use buckle_core::analysis::{self, Envelope};
use buckle_core::annulus::{self, Annulus};
use buckle_core::rectangle;
use buckle_core::specfun;
use clap::{Parser, Subcommand};

use output::{Cell, Format, Table};

#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

#[derive(Clone, Debug)]
struct Ints(Vec<u32>);

#[derive(Clone, Debug)]
struct Cases(Vec<(u32, f64)>);

fn grid(s: &str) -> Result<Grid, String> {
    args::list_or_range(s).map(Grid)
}

fn range(s: &str) -> Result<Grid, String> {
    args::range(s).map(Grid)
}

fn ints(s: &str) -> Result<Ints, String> {
    args::int_list(s).map(Ints)
}

fn cases(s: &str) -> Result<Cases, String> {
    args::cases(s).map(Cases)
}

#[derive(Parser, Debug)]
#[command(
    name = "buckle",
    version,
    about = "Buckling eigenvalues of clamped annuli, disks and rectangles"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Significant digits of floating point output (4 to 17).
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u8).range(4..=17))]
    precision: u8,
    /// Absolute tolerance on mu = sqrt(lambda).
    #[arg(long, global = true, env = "BUCKLE_TOL", default_value_t = 1e-12)]
    tol: f64,
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First eigenvalue for each inner radius.
    ///
    /// Columns: a,k_max,k_opt,sqrt_lambda1,lambda1_area
    Table {
        /// Inner radii: comma list or lo:hi:step (default: the reference radii 0 to 0.95).
        #[arg(long, value_parser = grid)]
        a: Option<Grid>,
        /// Accept inner radii up to 0.995 (no accuracy guarantee above 0.95).
        #[arg(long)]
        extended: bool,
    },
    /// Branch eigenvalues tau_k(a).
    ///
    /// Columns: k,a,mu,lambda
    Branches {
        /// Angular indices.
        #[arg(long, value_parser = ints, default_value = "0,1,2,3,4")]
        k: Ints,
        /// Inner radii as lo:hi:step.
        #[arg(long = "a-range", value_parser = range, default_value = "0:0.4:0.01")]
        a_range: Grid,
    },
    /// Radial profiles v(r) of the first root on each branch.
    ///
    /// Columns: k,a,mu,r,v
    Radial {
        /// k:a pairs (default: the nine reference cases).
        #[arg(long, value_parser = cases)]
        cases: Option<Cases>,
        /// Samples per profile.
        #[arg(long, default_value_t = annulus::DEFAULT_PROFILE_SAMPLES)]
        samples: usize,
    },
    /// First eigenvalue of one annulus with every evaluated branch.
    ///
    /// Columns: quantity,value
    First {
        #[arg(long)]
        a: f64,
    },
    /// Punctured disk: first nontrivial k = 0 root and first eigenvalue.
    ///
    /// Columns: quantity,value
    Punctured,
    /// Disk eigenvalue (j_{k+1,t} / R)^2.
    ///
    /// Columns: quantity,value
    Disk {
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
    },
    /// Rectangle (0, pi) x (-ell, ell): first eigenvalue, or one branch with --m.
    ///
    /// Columns: quantity,value
    Rect {
        #[arg(long)]
        ell: f64,
        /// Wavenumber of a single branch value (real m > 0).
        #[arg(long)]
        m: Option<f64>,
        /// Transverse branch index used with --m.
        #[arg(long, default_value_t = 1, requires = "m")]
        k: u32,
    },
    /// First rectangle eigenvalue over a range of half-heights.
    ///
    /// Columns: ell,m_opt,lambda1,nodal_domains
    RectSweep {
        /// Half-heights as lo:hi:step.
        #[arg(long = "ell-range", value_parser = range)]
        ell_range: Grid,
    },
    /// Half-heights whose first eigenfunction has n nodal domains.
    ///
    /// Columns: n,ell,lambda1
    RectNodal {
        /// Largest nodal count.
        #[arg(long = "max-n", default_value_t = 6)]
        max_n: u32,
    },
    /// Estimates of the constants in k_opt ~ c_k/(1-a) and sqrt(lambda1) ~ c_mu/(1-a).
    ///
    /// Columns: a,k_opt,sqrt_lambda1,c_k_estimate,c_mu_estimate; the last row
    /// (a = "extrapolated") holds the fitted intercepts.
    Asymptotics {
        /// Inner radii (default 0.88,0.90,0.91,...,0.95).
        #[arg(long = "a-grid", value_parser = grid)]
        a_grid: Option<Grid>,
    },
    /// Checks that lambda1 and lambda1|annulus| increase with a.
    ///
    /// Columns: quantity,value
    Audit {
        /// Inner radii (default: the reference radii).
        #[arg(long = "a-grid", value_parser = grid)]
        a_grid: Option<Grid>,
    },
    #[command(hide = true)]
    Specfun {
        #[command(subcommand)]
        what: SpecfunCommand,
    },
}

#[derive(Subcommand, Debug)]
enum SpecfunCommand {
    /// Evaluates J_n(x), Y_n(x), derivatives or the zero j_{n,t}.
    Eval {
        #[arg(long, value_parser = ["j", "y", "dj", "dy", "jzero"])]
        kind: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        t: Option<u32>,
    },
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments: exit 1.
    Usage(String),
    /// Computation or output failed: exit 2.
    Compute(String),
}

impl From<buckle_core::Error> for Failure {
    fn from(e: buckle_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Whether every requested item was computed.
enum Status {
    Complete,
    Partial,
}

fn check_radius(a: f64, envelope: Envelope) -> Result<(), Failure> {
    Annulus::new(a).map_err(|e| Failure::Usage(e.to_string()))?;
    envelope.check(a).map_err(|e| Failure::Usage(e.to_string()))
}

fn note(msg: &str) {
    eprintln!("note: {msg}");
}

fn run(cli: &Cli) -> Result<(Table, Status), Failure> {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
    }
    let mut status = Status::Complete;
    let mut partial = |what: String| {
        eprintln!("error: {what}");
        status = Status::Partial;
    };
    let table = match &cli.command {
        Command::Table { a, extended } => {
            let envelope = if *extended {
                Envelope::Extended
            } else {
                Envelope::Standard
            };
            let radii = a.as_ref().map_or_else(|| analysis::TABLE_A.to_vec(), |g| g.0.clone());
            for &x in &radii {
                check_radius(x, envelope)?;
            }
            let mut t = Table::new(&["a", "k_max", "k_opt", "sqrt_lambda1", "lambda1_area"]);
            for (x, row) in radii.iter().zip(analysis::table1_in(&radii, tol, envelope)) {
                match row {
                    Ok(r) => t.push(vec![
                        r.a.into(),
                        r.k_max.into(),
                        r.k_opt.into(),
                        r.sqrt_lambda1.into(),
                        r.normalized.into(),
                    ]),
                    Err(e) => partial(format!("a={x}: {e}")),
                }
            }
            t
        }
        Command::Branches { k, a_range } => {
            for &x in &a_range.0 {
                check_radius(x, Envelope::Standard)?;
            }
            let mut t = Table::new(&["k", "a", "mu", "lambda"]);
            for (k, row) in k.0.iter().zip(analysis::branches(&k.0, &a_range.0, tol)) {
                for (x, cell) in a_range.0.iter().zip(row) {
                    match cell {
                        Ok(b) => t.push(vec![b.k.into(), b.a.into(), b.mu.into(), b.lambda.into()]),
                        Err(e) => partial(format!("k={k} a={x}: {e}")),
                    }
                }
            }
            t
        }
        Command::Radial { cases, samples } => {
            let list = cases
                .as_ref()
                .map_or_else(|| analysis::RADIAL_CASES.to_vec(), |c| c.0.clone());
            for &(_, x) in &list {
                check_radius(x, Envelope::Standard)?;
            }
            if *samples < 2 {
                return Err(Failure::Usage("--samples must be at least 2".into()));
            }
            let profiles: Vec<_> = {
                use rayon::prelude::*;
                list.par_iter()
                    .map(|&(k, x)| annulus::radial_profile(k, x, tol, *samples))
                    .collect()
            };
            let mut t = Table::new(&["k", "a", "mu", "r", "v"]);
            for (&(k, x), p) in list.iter().zip(profiles) {
                match p {
                    Ok(p) => {
                        for &(r, v) in &p.samples {
                            t.push(vec![k.into(), x.into(), p.mode.mu.into(), r.into(), v.into()]);
                        }
                    }
                    Err(e) => partial(format!("k={k} a={x}: {e}")),
                }
            }
            t
        }
        Command::First { a } => {
            check_radius(*a, Envelope::Extended)?;
            let r = annulus::first_eigenvalue(*a, tol)?;
            let mut t = Table::key_value();
            t.kv("a", r.a);
            t.kv("k_opt", r.k_opt);
            t.kv("k_max", r.k_max);
            t.kv("sqrt_lambda1", r.sqrt_lambda1);
            t.kv("lambda1", r.lambda1);
            t.kv("lambda1_area", r.normalized);
            for b in &r.branches {
                t.kv(&format!("mu_k{}", b.k), b.mu);
            }
            t
        }
        Command::Punctured => {
            let k0 = annulus::tau(0, 0.0, tol)?;
            let r = annulus::first_eigenvalue(0.0, tol)?;
            let mut t = Table::key_value();
            t.kv("mu_first_k0", k0.mu);
            t.kv("k_opt", r.k_opt);
            t.kv("sqrt_lambda1", r.sqrt_lambda1);
            t.kv("lambda1", r.lambda1);
            t.kv("lambda1_area", r.normalized);
            note(&format!(
                "lambda1 comes from the k = 1 branch, j_{{2,1}}^2 = {:.6}; the k = 0 branch starts higher, at mu_first_k0^2 = {:.6}",
                r.lambda1, k0.lambda
            ));
            t
        }
        Command::Disk { k, t: index, radius } => {
            if *index == 0 {
                return Err(Failure::Usage("--t must be at least 1".into()));
            }
            if !(*radius > 0.0) {
                return Err(Failure::Usage(format!("--R must be positive, got {radius}")));
            }
            let j = specfun::bessel_j_zero_value::<f64>(k + 1, *index)?;
            let mut t = Table::key_value();
            t.kv("j", j);
            t.kv("lambda", annulus::disk_eigenvalue(*k, *index, *radius)?);
            t
        }
        Command::Rect { ell, m, k } => {
            if !(*ell > 0.0 && ell.is_finite()) {
                return Err(Failure::Usage(format!("--ell must be positive, got {ell}")));
            }
            let mut t = Table::key_value();
            match m {
                Some(m) => {
                    if !(*m > 0.0) || *k == 0 {
                        return Err(Failure::Usage("--m must be positive and --k at least 1".into()));
                    }
                    let mode = rectangle::mode_gamma(*k, *m, *ell)?;
                    t.kv("k", mode.k);
                    t.kv("m", mode.m);
                    t.kv(
                        "parity",
                        match mode.parity {
                            rectangle::Parity::Even => "even",
                            rectangle::Parity::Odd => "odd",
                        },
                    );
                    t.kv("gamma", mode.gamma);
                    t.kv("lambda", mode.lambda);
                }
                None => {
                    let first = rectangle::first_eigenvalue_rect(*ell)?;
                    let star = rectangle::minimize_lambda1_real(*ell, 1e-10 * (1.0 / ell).max(1.0))?;
                    t.kv("m_opt", first.m_opt);
                    t.kv("lambda1", first.lambda1);
                    t.kv("m_star", star.m_star);
                    t.kv("lambda_star", star.lambda_star);
                    t.kv("nodal_domains", first.nodal_domains);
                }
            }
            t
        }
        Command::RectSweep { ell_range } => {
            if ell_range.0.iter().any(|&l| !(l > 0.0)) {
                return Err(Failure::Usage("half-heights must be positive".into()));
            }
            let results: Vec<_> = {
                use rayon::prelude::*;
                ell_range
                    .0
                    .par_iter()
                    .map(|&l| rectangle::first_eigenvalue_rect(l))
                    .collect()
            };
            let mut t = Table::new(&["ell", "m_opt", "lambda1", "nodal_domains"]);
            for (l, r) in ell_range.0.iter().zip(results) {
                match r {
                    Ok(r) => t.push(vec![
                        r.ell.into(),
                        r.m_opt.into(),
                        r.lambda1.into(),
                        r.nodal_domains.into(),
                    ]),
                    Err(e) => partial(format!("ell={l}: {e}")),
                }
            }
            t
        }
        Command::RectNodal { max_n } => {
            if *max_n == 0 {
                return Err(Failure::Usage("--max-n must be at least 1".into()));
            }
            let mut t = Table::new(&["n", "ell", "lambda1"]);
            for n in 1..=*max_n {
                match rectangle::find_ell_for_nodal_count::<f64>(n).and_then(rectangle::first_eigenvalue_rect) {
                    Ok(r) => t.push(vec![n.into(), r.ell.into(), r.lambda1.into()]),
                    Err(e) => partial(format!("n={n}: {e}")),
                }
            }
            t
        }
        Command::Asymptotics { a_grid } => {
            let radii = a_grid
                .as_ref()
                .map_or_else(|| analysis::ASYMPTOTIC_GRID.to_vec(), |g| g.0.clone());
            for &x in &radii {
                check_radius(x, Envelope::Standard)?;
            }
            let fit = analysis::fit_asymptotics(&radii, tol)?;
            let mut t = Table::new(&["a", "k_opt", "sqrt_lambda1", "c_k_estimate", "c_mu_estimate"]);
            for (&(x, ck), &(_, cmu)) in fit.c_k_estimates.iter().zip(&fit.c_mu_estimates) {
                let k_opt = (ck / (1.0 - x)).round() as u32;
                t.push(vec![
                    x.into(),
                    k_opt.into(),
                    (cmu / (1.0 - x)).into(),
                    ck.into(),
                    cmu.into(),
                ]);
            }
            t.push(vec![
                "extrapolated".into(),
                Cell::Empty,
                Cell::Empty,
                fit.c_k.into(),
                fit.c_mu.into(),
            ]);
            if fit.flagged {
                note(&format!(
                    "fit flagged (c_k estimates monotone: {}, c_mu estimates monotone: {}, poor fit: {})",
                    fit.c_k_monotone,
                    fit.c_mu_monotone,
                    fit.c_k_fit.poor || fit.c_mu_fit.poor
                ));
            }
            t
        }
        Command::Audit { a_grid } => {
            let radii = a_grid
                .as_ref()
                .map_or_else(|| analysis::TABLE_A.to_vec(), |g| g.0.clone());
            for &x in &radii {
                check_radius(x, Envelope::Standard)?;
            }
            let report = analysis::monotonicity_audit(&radii, tol);
            for (x, e) in &report.failures {
                partial(format!("a={x}: {e}"));
            }
            let mut t = Table::key_value();
            t.kv("rows", report.rows.len());
            t.kv("lambda1_increasing", report.lambda_increasing);
            t.kv("lambda1_area_increasing", report.normalized_increasing);
            t.kv("disk_lambda1", report.disk_lambda1);
            t.kv("disk_lambda1_area", report.disk_normalized);
            t.kv("disk_below_lambda1", report.disk_below_lambda);
            t.kv("disk_below_lambda1_area", report.disk_below_normalized);
            if let Some(v) = report.first_violation {
                t.kv("violation_quantity", v.quantity);
                t.kv("violation_a_before", v.a_before);
                t.kv("violation_a_after", v.a_after);
            }
            t
        }
        Command::Specfun {
            what: SpecfunCommand::Eval { kind, n, x, t: index },
        } => {
            let value = if kind == "jzero" {
                let index = index.ok_or_else(|| Failure::Usage("jzero needs --t".into()))?;
                specfun::bessel_j_zero_value::<f64>(*n, index)?
            } else {
                let x = x.ok_or_else(|| Failure::Usage(format!("{kind} needs --x")))?;
                match kind.as_str() {
                    "j" => specfun::bessel_j(*n, x)?,
                    "y" => specfun::bessel_y(*n, x)?,
                    "dj" => specfun::bessel_deriv(specfun::BesselKind::J, *n, x)?,
                    _ => specfun::bessel_deriv(specfun::BesselKind::Y, *n, x)?,
                }
            };
            let mut t = Table::key_value();
            t.kv(kind, value);
            t
        }
    };
    Ok((table, status))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.parallel {
        if n == 0 {
            eprintln!("error: --parallel must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((table, status)) => {
            if let Err(e) = table.emit(cli.format, cli.precision as usize, cli.out.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            match status {
                Status::Complete => ExitCode::SUCCESS,
                Status::Partial => ExitCode::from(2),
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
