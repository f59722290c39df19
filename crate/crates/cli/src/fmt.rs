//! Deterministic numeric formatting for file output.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// Floats are written with 17 significant digits so output is byte-stable
/// and round-trips exactly; the decimal separator is always `.`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes to `path`, or to stdout when the path is `-` or absent.
pub fn write_output(path: Option<&Path>, contents: &str) -> io::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, contents),
        _ => io::stdout().write_all(contents.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for x in [0.6, 1.0 / 3.0, 8.2887506001916238e12, -2.5e-14, 0.0] {
            let s = float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn special_values_are_stable() {
        assert_eq!(float(f64::NAN), "NaN");
        assert_eq!(float(0.0), "0.0000000000000000e0");
    }
}
