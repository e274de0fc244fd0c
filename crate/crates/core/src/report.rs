//! Report formatting helpers.
//!
//! CSV output uses a fixed scientific format with 17 significant digits,
//! which round-trips every finite `f64` exactly and is byte-stable across
//! runs and platforms.

/// Render a float for CSV: 17 significant digits, scientific notation.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render a boolean flag for CSV as `1` / `0`.
pub fn csv_flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}
