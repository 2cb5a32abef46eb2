//! Deterministic serialization of amplitude fields.
//!
//! Snapshots are what external plotting consumes, so the byte layout is a
//! contract: sites in lexicographic `(i, j)` order, floats printed with 17
//! significant digits (which round-trips `f64` exactly), fixed key order in
//! JSON, and identical numeric strings in the CSV flavor.

use serde::Deserialize;

use crate::dynamics::AmplitudeField;
use crate::error::{Error, Result};
use crate::lattice::SiteIndexer;

/// Schema tag written into every snapshot.
pub const SNAPSHOT_SCHEMA: &str = "ohwalk-snapshot/1";

/// One site record of a snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct SiteAmplitude {
    pub i: usize,
    pub j: usize,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

/// A serialized amplitude field: the data behind one frame of the
/// transition-probability figures.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SnapshotDocument {
    pub schema: String,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub source_i: usize,
    pub source_j: usize,
    pub time: f64,
    pub sites: Vec<SiteAmplitude>,
}

/// Fixed float formatting: 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl SnapshotDocument {
    pub fn from_field(field: &AmplitudeField<f64>, alpha: f64, beta: f64) -> Self {
        let indexer = field.indexer();
        let sites = indexer
            .iter_lex()
            .map(|s| {
                let a = field.amp(s);
                SiteAmplitude {
                    i: s.i,
                    j: s.j,
                    re: a.re,
                    im: a.im,
                    abs: a.norm(),
                }
            })
            .collect();
        SnapshotDocument {
            schema: SNAPSHOT_SCHEMA.to_string(),
            n: field.n(),
            alpha,
            beta,
            source_i: field.source().i,
            source_j: field.source().j,
            time: field.time(),
            sites,
        }
    }

    /// JSON with fixed key order and fixed float formatting.
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(128 + 96 * self.sites.len());
        out.push_str("{\n");
        out.push_str(&format!("  \"schema\": \"{}\",\n", self.schema));
        out.push_str(&format!("  \"n\": {},\n", self.n));
        out.push_str(&format!("  \"alpha\": {},\n", fmt_f64(self.alpha)));
        out.push_str(&format!("  \"beta\": {},\n", fmt_f64(self.beta)));
        out.push_str(&format!("  \"source_i\": {},\n", self.source_i));
        out.push_str(&format!("  \"source_j\": {},\n", self.source_j));
        out.push_str(&format!("  \"time\": {},\n", fmt_f64(self.time)));
        out.push_str("  \"sites\": [\n");
        for (k, s) in self.sites.iter().enumerate() {
            let sep = if k + 1 == self.sites.len() { "" } else { "," };
            out.push_str(&format!(
                "    {{\"i\": {}, \"j\": {}, \"re\": {}, \"im\": {}, \"abs\": {}}}{}\n",
                s.i,
                s.j,
                fmt_f64(s.re),
                fmt_f64(s.im),
                fmt_f64(s.abs),
                sep
            ));
        }
        out.push_str("  ]\n}\n");
        out
    }

    /// CSV with the same numeric strings as the JSON flavor.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,re,im,abs\n");
        for s in &self.sites {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.i,
                s.j,
                fmt_f64(s.re),
                fmt_f64(s.im),
                fmt_f64(s.abs)
            ));
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SnapshotDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParams(format!("snapshot parse: {e}")))?;
        if doc.schema != SNAPSHOT_SCHEMA {
            return Err(Error::InvalidParams(format!(
                "unsupported snapshot schema {:?}",
                doc.schema
            )));
        }
        let want = SiteIndexer::new(doc.n).dim();
        if doc.sites.len() != want {
            return Err(Error::InvalidParams(format!(
                "snapshot has {} site records, lattice needs {want}",
                doc.sites.len()
            )));
        }
        Ok(doc)
    }
}
