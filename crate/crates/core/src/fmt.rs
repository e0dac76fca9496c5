//! Locale-free number formatting for data files.

/// 17 significant digits in scientific notation, e.g. `2.5000000000000000e-1`.
/// Round-trips every `f64` and is byte-stable.
pub fn float17(v: f64) -> String {
    format!("{v:.16e}")
}
