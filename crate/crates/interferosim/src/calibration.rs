//! Source and setup characterization: Klyshko heralding efficiencies,
//! double-pass transmission ratios, and the two-dip absolute zero-delay
//! calibration of the folded interferometer geometry.

use serde::Serialize;

use crate::error::{Error, Result};

/// Raw detector count rates (counts/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRates {
    pub singles_a: f64,
    pub singles_b: f64,
    pub coincidences: f64,
}

impl CountRates {
    pub fn new(singles_a: f64, singles_b: f64, coincidences: f64) -> Result<Self> {
        for (name, v) in [
            ("singles_a", singles_a),
            ("singles_b", singles_b),
            ("coincidences", coincidences),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::param("count_rates", format!("{name} must be finite and >= 0")));
            }
        }
        if coincidences > singles_a.min(singles_b) {
            return Err(Error::param(
                "coincidences",
                "cannot exceed either singles rate",
            ));
        }
        Ok(Self {
            singles_a,
            singles_b,
            coincidences,
        })
    }
}

/// Result of the two-dip zero-delay calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationResult {
    /// Stage delay (ps) corresponding to the absolute zero of Δt.
    pub zero_position: f64,
    /// Estimated single-pass walk-off Δτ₀ (ps).
    pub walkoff_estimate: f64,
}

/// Klyshko heralding efficiencies (η_a, η_b) = (C/n_b, C/n_a).
pub fn klyshko_efficiencies(r: &CountRates) -> Result<(f64, f64)> {
    if !(r.singles_a > 0.0) || !(r.singles_b > 0.0) {
        return Err(Error::param("count_rates", "singles rates must be > 0"));
    }
    Ok((r.coincidences / r.singles_b, r.coincidences / r.singles_a))
}

/// Per-arm transmission of the second waveguide pass: the ratio of
/// double-pass to single-pass Klyshko efficiencies.
///
/// Note the convention: the ratio is a transmission (fraction surviving),
/// even though setups often quote the complementary internal loss.
pub fn double_pass_transmission(
    single_pass: (f64, f64),
    double_pass: (f64, f64),
) -> Result<(f64, f64)> {
    if !(single_pass.0 > 0.0) || !(single_pass.1 > 0.0) {
        return Err(Error::param(
            "single_pass",
            "efficiencies must be > 0 to form the ratio",
        ));
    }
    Ok((double_pass.0 / single_pass.0, double_pass.1 / single_pass.1))
}

/// Solve the two-dip calibration model
///
///   m₁ = z + Δτ₀/2,   m₂ = z + 3Δτ₀/2
///
/// where m₁ is the HOM dip position after a single waveguide pass and m₂ the
/// position after the beams traverse the waveguide a second time (pump still
/// blocked in reverse). The 1/2 and 3/2 coefficients are fixed by the folded
/// geometry.
pub fn zero_delay_from_dips(dip_single_pass: f64, dip_double_pass: f64) -> Result<CalibrationResult> {
    if !dip_single_pass.is_finite() || !dip_double_pass.is_finite() {
        return Err(Error::param("dip positions", "must be finite"));
    }
    let walkoff = dip_double_pass - dip_single_pass;
    Ok(CalibrationResult {
        zero_position: dip_single_pass - walkoff / 2.0,
        walkoff_estimate: walkoff,
    })
}
