use std::io::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::ResidualReport;

/// First 16 hex digits of the SHA-256 of `canonical`, typically the
/// serialized solution spec.
pub fn params_hash(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// One labelled report, as written to CSV.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub family: String,
    pub params_hash: String,
    pub max_rel: f64,
    pub mean_rel: f64,
    pub observed_order: Option<f64>,
    pub worst_t: f64,
    pub worst_x: f64,
    pub worst_y: f64,
}

impl ReportRow {
    pub fn new(family: impl Into<String>, params_hash: impl Into<String>, r: &ResidualReport) -> Self {
        Self {
            family: family.into(),
            params_hash: params_hash.into(),
            max_rel: r.max_rel,
            mean_rel: r.mean_rel,
            observed_order: r.observed_order,
            worst_t: r.worst_point.t,
            worst_x: r.worst_point.x,
            worst_y: r.worst_point.y,
        }
    }
}

/// Writes a header plus one row per report.
pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_short_and_stable() {
        let h = params_hash("{\"family\":\"S9\"}");
        assert_eq!(h.len(), 16);
        assert_eq!(h, params_hash("{\"family\":\"S9\"}"));
        assert_ne!(h, params_hash("{\"family\":\"S8\"}"));
    }
}
