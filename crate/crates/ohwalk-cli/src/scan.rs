//! The `scan` subcommand: uniform time grid, peak refinement, and transfer
//! event extraction, with the exact parity prediction alongside when the
//! coupling ratio is given as integers.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use ohwalk::krawtchouk::SpectralData;
use ohwalk::transfer::{
    classify_ratio, detect_fr, detect_pst, edge_probability, refine_peak, scan_times,
    site_probability, RatioClass, TransferKind, TransferReport,
};
use ohwalk::Site;

use crate::parse::{parse_ratio, parse_site, parse_time};

const EVENT_TOL: f64 = 1e-9;

#[derive(Args)]
pub struct ScanArgs {
    /// Number of blocks N
    #[arg(long = "n")]
    n: usize,
    /// Exact coupling ratio a/b (enables the parity prediction)
    #[arg(long)]
    ratio: Option<String>,
    /// Coupling on the (1,0)-shape graph (alternative to --ratio)
    #[arg(long)]
    alpha: Option<f64>,
    /// Coupling on the (0,1)-shape graph (alternative to --ratio)
    #[arg(long)]
    beta: Option<f64>,
    /// Source site as i,j
    #[arg(long, default_value = "0,0")]
    source: String,
    /// End of the scanned interval; `pi` expressions allowed
    #[arg(long)]
    tmax: String,
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Write the JSON event list here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Prediction {
    #[serde(flatten)]
    class: RatioClass,
    predicts_transfer: bool,
    predicted_time: Option<f64>,
}

#[derive(Serialize)]
struct ScanOutput {
    schema: &'static str,
    n: usize,
    alpha: f64,
    beta: f64,
    source: Site,
    tmax: f64,
    steps: usize,
    prediction: Option<Prediction>,
    events: Vec<TransferReport>,
}

pub fn run(args: &ScanArgs) -> Result<i32> {
    let source = parse_site(&args.source)?;
    let tmax = parse_time(&args.tmax)?;
    let (alpha, beta, prediction) = match (&args.ratio, args.alpha, args.beta) {
        (Some(ratio), None, None) => {
            let (a, b) = parse_ratio(ratio)?;
            let class = classify_ratio(a, b)?;
            let prediction = Prediction {
                predicts_transfer: class.predicts_transfer(),
                predicted_time: class.predicted_time(),
                class,
            };
            (a as f64, b as f64, Some(prediction))
        }
        (None, Some(alpha), Some(beta)) => (alpha, beta, None),
        _ => bail!("give either --ratio a/b or both --alpha and --beta"),
    };

    let sd = SpectralData::build(args.n, alpha, beta)?;
    let trace = scan_times(&sd, source, tmax, args.steps)?;
    let corner = Site::new(args.n, 0);
    let mut events: Vec<TransferReport> = Vec::new();

    // the t = 0 grid point is always a trivial self-revival; skip it
    if source == Site::new(0, 0) {
        for &k in trace.corner_peaks.iter().filter(|&&k| k > 0) {
            let t = refine_peak(&trace, k, |t| site_probability(&sd, source, corner, t));
            let report = detect_pst(&sd, t, EVENT_TOL)?;
            if report.kind == TransferKind::Pst {
                events.push(report);
            }
        }
    }
    for &k in trace.edge_peaks.iter().filter(|&&k| k > 0) {
        let t = refine_peak(&trace, k, |t| edge_probability(&sd, source, t));
        let report = detect_fr(&sd, source, t, EVENT_TOL)?;
        if report.kind != TransferKind::None {
            events.push(report);
        }
    }
    events.sort_by(|a, b| a.time.total_cmp(&b.time));
    events.dedup_by(|a, b| a.kind == b.kind && (a.time - b.time).abs() < 1e-6);

    let output = ScanOutput {
        schema: "ohwalk-scan/1",
        n: args.n,
        alpha,
        beta,
        source,
        tmax,
        steps: args.steps,
        prediction,
        events,
    };
    let json = serde_json::to_string_pretty(&output)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("events written to {}", path.display());
        }
        None => println!("{json}"),
    }
    Ok(0)
}
