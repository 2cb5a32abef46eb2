//! The `verify` subcommand: run the library's verification suites and
//! report pass/fail per check.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};

use ohwalk::dynamics::{
    amplitude_closed_form, amplitude_expm_oracle, amplitude_spectral, build_hamiltonian,
    eigen_residual, field_at,
};
use ohwalk::krawtchouk::{check_generating_function, check_recurrences, PolyParams, SpectralData};
use ohwalk::projection::{build_columns_with_limit, check_column_invariance, project_walk};
use ohwalk::report::CheckReport;
use ohwalk::scheme::{verify_bose_mesner, VerifyOptions, DEFAULT_ENUM_GUARD};
use ohwalk::Site;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Scheme,
    Projection,
    Polynomials,
    Dynamics,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Number of blocks N (lattice has (N+1)(N+2)/2 sites)
    #[arg(long = "n")]
    n: usize,
    /// Coupling on the (1,0)-shape graph
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Coupling on the (0,1)-shape graph
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Lift the 4^N enumeration guard (default N <= 8) to the requested N
    #[arg(long = "guard-override", default_value_t = false)]
    guard_override: bool,
    /// Write the JSON report here in addition to the console summary
    #[arg(long)]
    out: Option<PathBuf>,
}

fn projection_suite(n: usize, alpha: f64, beta: f64, guard: usize) -> Result<Vec<CheckReport>> {
    let cb = build_columns_with_limit(n, guard)?;
    let invariance = check_column_invariance(&cb);
    let mut equality = CheckReport::new(format!(
        "projected walk vs lattice Hamiltonian, n = {n}, alpha = {alpha}, beta = {beta}"
    ));
    let op = project_walk(&cb, alpha, beta);
    let h = build_hamiltonian(n, alpha, beta);
    for r in 0..op.entries.nrows() {
        for c in 0..op.entries.ncols() {
            let dev = (op.entries[[r, c]] - h.matrix()[[r, c]]).abs();
            equality.check_residual(dev, 1e-12, || format!("entry ({r},{c})"));
        }
    }
    Ok(vec![invariance, equality])
}

fn polynomials_suite(n: usize, alpha: f64, beta: f64) -> Result<Vec<CheckReport>> {
    let params = PolyParams::<f64>::physical(n);
    let recurrences = check_recurrences(&params, alpha, beta, 1e-10)?;
    let mut reports = vec![recurrences];
    for (s, t) in [(1.0, 1.0), (0.3, -0.2), (0.7, 1.0)] {
        reports.push(check_generating_function(&params, s, t, 1e-9)?);
    }
    let sd = SpectralData::build(n, alpha, beta)?;
    let mut spectral = CheckReport::new(format!("spectral table, n = {n}"));
    spectral.check_residual(sd.orthogonality_residual(), 1e-10, || {
        "eigenvector orthogonality".into()
    });
    spectral.check_residual(
        eigen_residual(&sd, &build_hamiltonian(n, alpha, beta)),
        1e-9,
        || "eigen relation".into(),
    );
    reports.push(spectral);
    Ok(reports)
}

fn dynamics_suite(n: usize, alpha: f64, beta: f64) -> Result<Vec<CheckReport>> {
    let sd = SpectralData::build(n, alpha, beta)?;
    let h = build_hamiltonian(n, alpha, beta);
    let source = Site::new(0, 0);
    let times = [0.3, std::f64::consts::PI / 5.0, std::f64::consts::FRAC_PI_2, 1.7];
    let mut triple = CheckReport::new(format!(
        "closed form vs spectral vs matrix exponential, n = {n}"
    ));
    let mut unitarity = CheckReport::new(format!("field norms, n = {n}"));
    for &t in &times {
        let oracle = amplitude_expm_oracle(&h, source, t)?;
        let field = field_at(&sd, source, t)?;
        unitarity.check_residual(field.norm_residual(), 1e-10, || format!("t = {t}"));
        for site in sd.indexer().iter() {
            let closed = amplitude_closed_form(n, alpha, beta, site, t)?;
            let spectral = amplitude_spectral(&sd, source, site, t)?;
            triple.check_residual((closed - spectral).norm(), 1e-9, || {
                format!("closed vs spectral at {site}, t = {t}")
            });
            triple.check_residual((spectral - oracle.amp(site)).norm(), 1e-9, || {
                format!("spectral vs exponential at {site}, t = {t}")
            });
        }
    }
    Ok(vec![triple, unitarity])
}

pub fn run(args: &VerifyArgs) -> Result<i32> {
    let guard = if args.guard_override {
        args.n.max(DEFAULT_ENUM_GUARD)
    } else {
        DEFAULT_ENUM_GUARD
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    let (n, alpha, beta) = (args.n, args.alpha, args.beta);
    if matches!(args.suite, Suite::Scheme | Suite::All) {
        let opts = VerifyOptions {
            max_n: guard,
            ..VerifyOptions::default()
        };
        reports.push(verify_bose_mesner(n, &opts)?.report);
    }
    if matches!(args.suite, Suite::Projection | Suite::All) {
        reports.extend(projection_suite(n, alpha, beta, guard)?);
    }
    if matches!(args.suite, Suite::Polynomials | Suite::All) {
        reports.extend(polynomials_suite(n, alpha, beta)?);
    }
    if matches!(args.suite, Suite::Dynamics | Suite::All) {
        reports.extend(dynamics_suite(n, alpha, beta)?);
    }

    for report in &reports {
        println!("{}", report.summary());
        for failure in &report.failures {
            println!("    {failure}");
        }
    }
    let all_passed = reports.iter().all(|r| r.passed);
    println!(
        "verify: {} ({} suites)",
        if all_passed { "pass" } else { "FAIL" },
        reports.len()
    );
    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(&reports)?;
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
        println!("report written to {}", path.display());
    }
    Ok(if all_passed { 0 } else { 1 })
}
