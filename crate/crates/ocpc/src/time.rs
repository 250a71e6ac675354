//! Timestamp parsing. Every accepted form is normalized to UTC; inputs
//! without an offset are read as UTC.

use chrono::{DateTime, NaiveDate, NaiveDateTime};
use ocpc_core::Timestamp;

const NAIVE_FORMATS: &[&str] = &["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M"];

fn from_naive(n: NaiveDateTime) -> Option<Timestamp> {
    n.and_utc().timestamp_nanos_opt().map(Timestamp::from_unix_nanos)
}

/// Strict RFC 3339 with an explicit offset, e.g. `2024-01-01T10:00:00Z`.
pub fn parse_rfc3339(s: &str) -> Option<Timestamp> {
    let dt = DateTime::parse_from_rfc3339(s).ok()?;
    dt.timestamp_nanos_opt().map(Timestamp::from_unix_nanos)
}

/// Lenient ISO-8601 parsing for event timestamps: RFC 3339, a space
/// instead of `T`, a missing offset, or a bare date.
pub fn parse_timestamp(s: &str) -> Option<Timestamp> {
    let s = s.trim();
    if let Some(t) = parse_rfc3339(s) {
        return Some(t);
    }
    if let Ok(dt) = DateTime::parse_from_str(s, "%Y-%m-%d %H:%M:%S%.f%:z") {
        return dt.timestamp_nanos_opt().map(Timestamp::from_unix_nanos);
    }
    for f in NAIVE_FORMATS {
        if let Ok(n) = NaiveDateTime::parse_from_str(s, f) {
            return from_naive(n);
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .and_then(|d| from_naive(d.and_hms_opt(0, 0, 0)?))
}
