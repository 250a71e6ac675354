//! Serializations of cubes and models: JSON payloads shared by the CLI and
//! the service, deterministic DOT, and plain-text tables.

pub mod dot;
pub mod json;
pub mod text;

/// Seconds rendered compactly: whole numbers without decimals.
pub fn fmt_seconds(secs: f64) -> String {
    if secs.fract() == 0.0 && secs.abs() < 1e15 {
        format!("{secs:.0}s")
    } else {
        format!("{secs:.2}s")
    }
}
