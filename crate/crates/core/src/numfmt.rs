//! Text formatting for numeric output files.

/// Formats with 17 significant digits, enough to round-trip any f64
/// bit-exactly. All CSV/JSON emitters use this so identical runs produce
/// identical bytes.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Optional cell: empty string when absent (e.g. per-step quantities that
/// are undefined at t = 0).
pub fn sig17_opt(x: Option<f64>) -> String {
    x.map(sig17).unwrap_or_default()
}
