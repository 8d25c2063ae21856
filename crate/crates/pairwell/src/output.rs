//! Output records and number formatting.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// Significant digits of every number written to CSV.
pub const CSV_DIGITS: usize = 12;

/// Envelope for JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord<I, R> {
    pub schema_version: String,
    pub command: String,
    pub inputs: I,
    pub results: R,
}

impl<I, R> OutputRecord<I, R> {
    pub fn new(command: &str, inputs: I, results: R) -> Self {
        Self { schema_version: SCHEMA_VERSION.to_string(), command: command.to_string(), inputs, results }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveInputs {
    #[serde(rename = "U")]
    pub u: f64,
    pub n: u32,
    pub m: u32,
    pub tol: Option<f64>,
    pub basis: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResults {
    pub re_k1: f64,
    pub im_k1: f64,
    pub re_k2: f64,
    pub im_k2: f64,
    /// `Re(k1² + k2²)`.
    pub energy: f64,
    pub residual: f64,
    pub iterations: usize,
    /// Ratio sign `s` of the solved case, ±1.
    pub case_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiInputs {
    #[serde(rename = "U")]
    pub u: f64,
    pub basis: u32,
    pub levels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiLevel {
    pub level: usize,
    pub energy: f64,
    pub dominant_n: u32,
    pub dominant_m: u32,
    pub leading_coefficient: f64,
}

/// `x` rounded to [`CSV_DIGITS`] significant digits, printed in its shortest form.
pub fn csv_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", CSV_DIGITS - 1, x).parse().expect("formatted float parses");
    let magnitude = rounded.abs();
    if (1e-4..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers_keep_twelve_digits() {
        assert_eq!(csv_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(csv_number(-0.5), "-0.5");
        assert_eq!(csv_number(7.6e-13), "7.6e-13");
        assert_eq!(csv_number(0.0), "0");
        assert_eq!(csv_number(123456789.123456789), "123456789.123");
    }

    #[test]
    fn csv_numbers_reparse_to_the_rounded_value() {
        for x in [1.0 / 3.0, -2.0e-7, 9.869604401089358, 1e20 / 7.0] {
            let back: f64 = csv_number(x).parse().unwrap();
            assert!((back - x).abs() <= 5e-12 * x.abs());
        }
    }
}
