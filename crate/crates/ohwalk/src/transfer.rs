//! Perfect state transfer and fractional revival detection.
//!
//! The exact part works on integer coupling ratios `alpha/beta = a/b`:
//! after reduction to coprime form, transfer from `(0,0)` to `(N,0)` is
//! predicted whenever one of `a`, `b` is even and the other odd, with the
//! earliest time found by solving `2aT = odd pi, 2bT = even pi` or the
//! parity-swapped pair. The numeric part evaluates amplitude fields at a
//! candidate time and reports the achieved fidelity against a tolerance.

use serde::Serialize;

use crate::dynamics::field_at;
use crate::error::{Error, Result};
use crate::krawtchouk::SpectralData;
use crate::lattice::Site;
use crate::scalar::Real;

/// Parity class of a reduced ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityTag {
    /// Numerator even, denominator odd.
    EvenOdd,
    /// Numerator odd, denominator even.
    OddEven,
    /// Both odd; no transfer predicted.
    Other,
}

/// Exact classification of a coupling ratio `alpha/beta = a/b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioClass {
    /// Reduced numerator.
    pub a: u64,
    /// Reduced denominator.
    pub b: u64,
    pub tag: ParityTag,
    /// Earliest transfer time as a rational multiple of pi, when predicted,
    /// in units where `alpha = a` and `beta = b`.
    pub time_over_pi: Option<(u64, u64)>,
}

impl RatioClass {
    pub fn predicts_transfer(&self) -> bool {
        self.tag != ParityTag::Other
    }

    /// Predicted time in radians, for couplings `alpha = a`, `beta = b`.
    pub fn predicted_time<T: Real>(&self) -> Option<T> {
        self.time_over_pi
            .map(|(num, den)| T::PI() * T::from_u64(num).unwrap() / T::from_u64(den).unwrap())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Classify an integer coupling ratio `a/b`.
///
/// The ratio must be supplied as exact integers; parities are meaningless
/// for floating approximations. The search for the earliest time solves the
/// two congruence families `(2aT, 2bT) = ((2m+1)pi, 2n pi)` and
/// `(2m pi, (2n+1)pi)` over positive `T` and keeps the smaller solution,
/// preferring the first family on ties.
pub fn classify_ratio(a: u64, b: u64) -> Result<RatioClass> {
    if b == 0 {
        return Err(Error::InvalidRatio("denominator must be positive".into()));
    }
    let g = gcd(a, b);
    let (a, b) = (a / g, b / g);
    let tag = match (a % 2, b % 2) {
        (0, 1) => ParityTag::EvenOdd,
        (1, 0) => ParityTag::OddEven,
        _ => ParityTag::Other,
    };
    // family 1 (2aT odd, 2bT even): needs a odd, b even; earliest at
    //   2aT = a*pi, i.e. T = pi/2.
    let family1 = (a % 2 == 1 && b % 2 == 0).then_some((1u64, 2u64));
    // family 2 (2aT even, 2bT odd): needs b odd and a even; for a > 0 the
    //   earliest is again T = pi/2, for a = 0 it is T = pi/(2b).
    let family2 = (a % 2 == 0 && b % 2 == 1).then_some(if a == 0 {
        (1u64, 2 * b)
    } else {
        (1u64, 2u64)
    });
    let time_over_pi = match (family1, family2) {
        (Some(t1), Some(t2)) => {
            // compare t1 <= t2 as fractions; ties keep family 1
            Some(if t1.0 * t2.1 <= t2.0 * t1.1 { t1 } else { t2 })
        }
        (Some(t), None) | (None, Some(t)) => Some(t),
        (None, None) => None,
    };
    Ok(RatioClass {
        a,
        b,
        tag,
        time_over_pi,
    })
}

/// What a detector concluded at one time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferKind {
    Pst,
    Fr,
    /// Point revival at the source itself (happens periodically whenever
    /// the eigenvalue differences are commensurate).
    Return,
    None,
}

/// Certified transfer event (or the absence of one).
#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub kind: TransferKind,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub source: Site,
    /// Sites that actually carry the arriving probability.
    pub targets: Vec<Site>,
    pub time: f64,
    /// Probability captured by the target set.
    pub fidelity: f64,
}

/// Test for perfect state transfer `(0,0) -> (N,0)` at time `t`.
pub fn detect_pst<T: Real>(sd: &SpectralData<T>, t: T, tol: T) -> Result<TransferReport> {
    let source = Site::new(0, 0);
    let corner = Site::new(sd.n(), 0);
    let field = field_at(sd, source, t)?;
    let fidelity = field.prob(corner);
    let hit = fidelity >= T::one() - tol;
    Ok(TransferReport {
        kind: if hit { TransferKind::Pst } else { TransferKind::None },
        n: sd.n(),
        alpha: sd.alpha().to_f64().unwrap(),
        beta: sd.beta().to_f64().unwrap(),
        source,
        targets: if hit { vec![corner] } else { Vec::new() },
        time: t.to_f64().unwrap(),
        fidelity: fidelity.to_f64().unwrap(),
    })
}

/// Test for fractional revival on the `j = 0` edge at time `t`.
///
/// Reports `Fr` when the edge captures all probability (within `tol`) and at
/// least two edge sites carry probability at least `tol`; a single carrying
/// site is a point revival and is reported as `Pst` to that site instead.
pub fn detect_fr<T: Real>(
    sd: &SpectralData<T>,
    source: Site,
    t: T,
    tol: T,
) -> Result<TransferReport> {
    let field = field_at(sd, source, t)?;
    let edge_sum = field.edge_prob_j0();
    let hot: Vec<Site> = (0..=sd.n())
        .map(|i| Site::new(i, 0))
        .filter(|&s| field.prob(s) >= tol)
        .collect();
    let revived = edge_sum >= T::one() - tol;
    let (kind, targets) = if revived && hot.len() >= 2 {
        (TransferKind::Fr, hot)
    } else if revived && hot.len() == 1 {
        (TransferKind::Pst, hot)
    } else {
        (TransferKind::None, Vec::new())
    };
    Ok(TransferReport {
        kind,
        n: sd.n(),
        alpha: sd.alpha().to_f64().unwrap(),
        beta: sd.beta().to_f64().unwrap(),
        source,
        targets,
        time: t.to_f64().unwrap(),
        fidelity: edge_sum.to_f64().unwrap(),
    })
}

/// One sampled time of a scan.
#[derive(Debug, Clone)]
pub struct ScanPoint<T> {
    pub t: T,
    /// Per-site probabilities in flat (anti-diagonal) site order.
    pub probs: Vec<T>,
    /// Probability on the `j = 0` edge.
    pub edge_sum: T,
    /// Probability at the far corner `(N, 0)`.
    pub corner: T,
}

/// Uniform-grid scan of the evolution from `source`.
#[derive(Debug, Clone)]
pub struct ScanTrace<T> {
    pub source: Site,
    pub points: Vec<ScanPoint<T>>,
    /// Indices of local maxima of the corner probability.
    pub corner_peaks: Vec<usize>,
    /// Indices of local maxima of the edge sum.
    pub edge_peaks: Vec<usize>,
}

fn local_maxima<T: Real>(values: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    let last = values.len().saturating_sub(1);
    for k in 0..values.len() {
        let left_ok = k == 0 || values[k] >= values[k - 1];
        let right_ok = k == last || values[k] >= values[k + 1];
        let strict = (k > 0 && values[k] > values[k - 1])
            || (k < last && values[k] > values[k + 1]);
        if left_ok && right_ok && strict {
            out.push(k);
        }
    }
    out
}

/// Sample the walk on a uniform grid over `[0, t_max]` and flag local maxima
/// of the corner probability and of the edge sum.
pub fn scan_times<T: Real>(
    sd: &SpectralData<T>,
    source: Site,
    t_max: T,
    steps: usize,
) -> Result<ScanTrace<T>> {
    if steps < 2 {
        return Err(Error::InvalidParams("scan needs at least 2 steps".into()));
    }
    let times: Vec<T> = if t_max == T::zero() {
        vec![T::zero()]
    } else {
        (0..steps)
            .map(|k| t_max * T::from_usize(k).unwrap() / T::from_usize(steps - 1).unwrap())
            .collect()
    };
    let corner = Site::new(sd.n(), 0);
    let mut points = Vec::with_capacity(times.len());
    for &t in &times {
        let field = field_at(sd, source, t)?;
        let probs: Vec<T> = sd.indexer().iter().map(|s| field.prob(s)).collect();
        points.push(ScanPoint {
            t,
            edge_sum: field.edge_prob_j0(),
            corner: field.prob(corner),
            probs,
        });
    }
    let corner_series: Vec<T> = points.iter().map(|p| p.corner).collect();
    let edge_series: Vec<T> = points.iter().map(|p| p.edge_sum).collect();
    Ok(ScanTrace {
        source,
        corner_peaks: local_maxima(&corner_series),
        edge_peaks: local_maxima(&edge_series),
        points,
    })
}

/// Sharpen a peak by ternary search of a unimodal objective on the bracket
/// around grid index `k`; returns the refined time.
pub fn refine_peak<T: Real, F: Fn(T) -> T>(trace: &ScanTrace<T>, k: usize, objective: F) -> T {
    let times: Vec<T> = trace.points.iter().map(|p| p.t).collect();
    let mut lo = if k == 0 { times[0] } else { times[k - 1] };
    let mut hi = if k + 1 < times.len() { times[k + 1] } else { times[k] };
    for _ in 0..200 {
        if hi - lo < T::from_f64(1e-14).unwrap() {
            break;
        }
        let third = (hi - lo) / T::from_f64(3.0).unwrap();
        let m1 = lo + third;
        let m2 = hi - third;
        if objective(m1) < objective(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    (lo + hi) / T::from_f64(2.0).unwrap()
}

/// Probability at one site as a closure-friendly objective.
pub fn site_probability<T: Real>(sd: &SpectralData<T>, source: Site, site: Site, t: T) -> T {
    field_at(sd, source, t)
        .map(|f| f.prob(site))
        .unwrap_or_else(|_| T::zero())
}

/// Edge-sum objective.
pub fn edge_probability<T: Real>(sd: &SpectralData<T>, source: Site, t: T) -> T {
    field_at(sd, source, t)
        .map(|f| f.edge_prob_j0())
        .unwrap_or_else(|_| T::zero())
}

/// The field's probability period when `alpha/beta` is the reduced ratio
/// `a/b`: eigenvalue differences live on the lattice `(2 beta / b) Z`, so
/// site probabilities repeat after `pi b / beta`.
pub fn probability_period<T: Real>(beta: T, b: u64) -> T {
    T::PI() * T::from_u64(b).unwrap() / beta
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    #[test]
    fn ratio_classification() {
        let r = classify_ratio(1, 2).unwrap();
        assert_eq!(r.tag, ParityTag::OddEven);
        assert_eq!(r.time_over_pi, Some((1, 2)));
        assert!((r.predicted_time::<f64>().unwrap() - FRAC_PI_2).abs() < 1e-15);

        let r = classify_ratio(2, 1).unwrap();
        assert_eq!(r.tag, ParityTag::EvenOdd);
        assert_eq!(r.time_over_pi, Some((1, 2)));

        let r = classify_ratio(1, 1).unwrap();
        assert_eq!(r.tag, ParityTag::Other);
        assert!(r.time_over_pi.is_none());

        let r = classify_ratio(0, 1).unwrap();
        assert_eq!(r.tag, ParityTag::EvenOdd);
        assert_eq!(r.time_over_pi, Some((1, 2)));

        // reduction happens first: 3/3 -> 1/1, 2/4 -> 1/2
        assert_eq!(classify_ratio(3, 3).unwrap().tag, ParityTag::Other);
        assert_eq!(classify_ratio(2, 4).unwrap().tag, ParityTag::OddEven);

        assert!(classify_ratio(1, 0).is_err());
    }

    #[test]
    fn pst_detection_fig1() {
        let sd = SpectralData::build(7, 1.0f64, 2.0).unwrap();
        let hit = detect_pst(&sd, FRAC_PI_2, 1e-9).unwrap();
        assert_eq!(hit.kind, TransferKind::Pst);
        assert!((hit.fidelity - 1.0).abs() < 1e-12);
        assert_eq!(hit.targets, vec![Site::new(7, 0)]);

        let miss = detect_pst(&sd, PI / 3.0, 1e-9).unwrap();
        assert_eq!(miss.kind, TransferKind::None);
        assert!(miss.fidelity < 0.9);
    }

    #[test]
    fn pst_detection_degenerate_lattice() {
        // N = 1, alpha = 0, beta = 1: three sites, transfer at pi/2
        let sd = SpectralData::build(1, 0.0f64, 1.0).unwrap();
        let hit = detect_pst(&sd, FRAC_PI_2, 1e-9).unwrap();
        assert_eq!(hit.kind, TransferKind::Pst);
        assert!((hit.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fr_detection_fig1() {
        let sd = SpectralData::build(7, 1.0f64, 2.0).unwrap();
        let fr = detect_fr(&sd, Site::new(0, 0), FRAC_PI_4, 1e-9).unwrap();
        assert_eq!(fr.kind, TransferKind::Fr);
        assert!((fr.fidelity - 1.0).abs() < 1e-9);
        assert_eq!(fr.targets.len(), 8);

        let none = detect_fr(&sd, Site::new(0, 0), FRAC_PI_6, 1e-9).unwrap();
        assert_eq!(none.kind, TransferKind::None);

        // at the transfer time the edge holds everything in one site:
        // classified as point transfer, not revival
        let pst = detect_fr(&sd, Site::new(0, 0), FRAC_PI_2, 1e-9).unwrap();
        assert_eq!(pst.kind, TransferKind::Pst);
        assert_eq!(pst.targets, vec![Site::new(7, 0)]);
    }

    #[test]
    fn fr_detection_su3_point() {
        let sd = SpectralData::build(7, 2f64.sqrt(), 1.0).unwrap();
        let fr = detect_fr(&sd, Site::new(0, 7), FRAC_PI_4, 1e-9).unwrap();
        assert_eq!(fr.kind, TransferKind::Fr);
        assert!((fr.fidelity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn edge_sum_is_bounded() {
        let sd = SpectralData::build(6, 1.0f64, 2.0).unwrap();
        for k in 0..40 {
            let t = 0.11 * k as f64;
            let r = detect_fr(&sd, Site::new(0, 0), t, 1e-9).unwrap();
            assert!(r.fidelity <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn scan_flags_fig1_events() {
        let sd = SpectralData::build(7, 1.0f64, 2.0).unwrap();
        let trace = scan_times(&sd, Site::new(0, 0), PI, 2001).unwrap();
        // corner probability peaks at pi/2
        let best = trace
            .corner_peaks
            .iter()
            .max_by(|&&a, &&b| {
                trace.points[a]
                    .corner
                    .partial_cmp(&trace.points[b].corner)
                    .unwrap()
            })
            .copied()
            .unwrap();
        assert!((trace.points[best].t - FRAC_PI_2).abs() < 2e-3);
        // edge sum peaks at pi/4 (and trivially at 0 and pi/2)
        assert!(trace
            .edge_peaks
            .iter()
            .any(|&k| (trace.points[k].t - FRAC_PI_4).abs() < 2e-3));
    }

    #[test]
    fn scan_degenerate_and_invalid() {
        let sd = SpectralData::build(3, 1.0f64, 2.0).unwrap();
        let trace = scan_times(&sd, Site::new(0, 0), 0.0, 100).unwrap();
        assert_eq!(trace.points.len(), 1);
        assert_eq!(trace.points[0].t, 0.0);
        assert!(scan_times(&sd, Site::new(0, 0), 1.0, 1).is_err());
    }

    #[test]
    fn refine_recovers_transfer_time() {
        let sd = SpectralData::build(7, 1.0f64, 2.0).unwrap();
        let src = Site::new(0, 0);
        let trace = scan_times(&sd, src, 3.2, 800).unwrap();
        let corner = Site::new(7, 0);
        let k = *trace
            .corner_peaks
            .iter()
            .max_by(|&&a, &&b| {
                trace.points[a]
                    .corner
                    .partial_cmp(&trace.points[b].corner)
                    .unwrap()
            })
            .unwrap();
        let t = refine_peak(&trace, k, |t| site_probability(&sd, src, corner, t));
        assert!((t - FRAC_PI_2).abs() < 1e-9);
        assert!(site_probability(&sd, src, corner, t) > 1.0 - 1e-12);
    }

    #[test]
    fn probability_is_periodic_for_rational_ratio() {
        let sd = SpectralData::build(5, 1.0f64, 2.0).unwrap();
        let period = probability_period(2.0, 2);
        assert!((period - PI).abs() < 1e-15);
        for &t in &[0.37, 1.1] {
            let f1 = field_at(&sd, Site::new(0, 0), t).unwrap();
            let f2 = field_at(&sd, Site::new(0, 0), t + period).unwrap();
            for site in sd.indexer().iter() {
                assert!((f1.prob(site) - f2.prob(site)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn prediction_consistency_small_ratios() {
        // every coprime pair up to 5 with mixed parity transfers at its
        // predicted time, for all lattice sizes 2..=7
        for a in 0..=5u64 {
            for b in 1..=5u64 {
                let class = classify_ratio(a, b).unwrap();
                if (class.a, class.b) != (a, b) || !class.predicts_transfer() {
                    continue;
                }
                let t: f64 = class.predicted_time().unwrap();
                for n in 2..=7 {
                    let sd = SpectralData::build(n, a as f64, b as f64).unwrap();
                    let report = detect_pst(&sd, t, 1e-9).unwrap();
                    assert_eq!(
                        report.kind,
                        TransferKind::Pst,
                        "a={a} b={b} n={n} fidelity={}",
                        report.fidelity
                    );
                }
            }
        }
    }

    #[test]
    fn negative_control_stays_below_threshold() {
        let sd = SpectralData::build(5, 1.0f64, 1.0).unwrap();
        let trace = scan_times(&sd, Site::new(0, 0), 2.0 * PI, 1500).unwrap();
        let best = trace
            .points
            .iter()
            .map(|p| p.corner)
            .fold(0.0f64, f64::max);
        assert!(best < 1.0 - 1e-6, "best corner fidelity {best}");
    }
}
