//! Flag-value parsing: times with `pi` arithmetic, sites, integer ratios.

use anyhow::{bail, Context, Result};
use ohwalk::Site;

/// Parse a time expression: a plain float, `pi`, `pi/4`, `3pi/4`, `2*pi`.
pub fn parse_time(text: &str) -> Result<f64> {
    let text = text.trim();
    let (head, denom) = match text.split_once('/') {
        Some((h, d)) => (
            h.trim(),
            d.trim()
                .parse::<f64>()
                .with_context(|| format!("bad denominator in time {text:?}"))?,
        ),
        None => (text, 1.0),
    };
    let value = if let Some(prefix) = head.strip_suffix("pi") {
        let prefix = prefix.trim().trim_end_matches('*').trim();
        let scale = if prefix.is_empty() {
            1.0
        } else {
            prefix
                .parse::<f64>()
                .with_context(|| format!("bad coefficient in time {text:?}"))?
        };
        scale * std::f64::consts::PI
    } else {
        head.parse::<f64>()
            .with_context(|| format!("bad time {text:?}"))?
    };
    if denom == 0.0 {
        bail!("zero denominator in time {text:?}");
    }
    Ok(value / denom)
}

/// Comma-separated list of time expressions.
pub fn parse_times(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(parse_time).collect()
}

/// Site given as `i,j`.
pub fn parse_site(text: &str) -> Result<Site> {
    let (i, j) = text
        .trim()
        .split_once(',')
        .with_context(|| format!("site must be i,j, got {text:?}"))?;
    Ok(Site::new(
        i.trim().parse().with_context(|| format!("bad site {text:?}"))?,
        j.trim().parse().with_context(|| format!("bad site {text:?}"))?,
    ))
}

/// Integer ratio given as `a/b`.
pub fn parse_ratio(text: &str) -> Result<(u64, u64)> {
    let (a, b) = text
        .trim()
        .split_once('/')
        .with_context(|| format!("ratio must be a/b, got {text:?}"))?;
    Ok((
        a.trim()
            .parse()
            .with_context(|| format!("bad ratio numerator in {text:?}"))?,
        b.trim()
            .parse()
            .with_context(|| format!("bad ratio denominator in {text:?}"))?,
    ))
}
