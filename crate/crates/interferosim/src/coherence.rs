//! First-order coherence, interference envelopes and trace statistics.
//!
//! `g1` realizes the Wiener-Khinchin route (normalized inverse Fourier
//! transform of the intensity spectrum). `summarize_trace` extracts
//! visibility, envelope FWHM, extremum position and fringe period from a
//! simulated or measured interferogram; the fringe carrier is removed by
//! demodulating at the dominant DFT frequency.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometers::InterferogramTrace;
use crate::numerics::{integrate, inverse_fourier, DelayGrid, FrequencyGrid};
use crate::spectra::{gaussian_amplitude, EffectiveJsa, GaussianSource};

const LN2: f64 = std::f64::consts::LN_2;
const TAU: f64 = std::f64::consts::TAU;

/// Which column of an [`InterferogramTrace`] to analyze.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    SinglesA,
    SinglesB,
    Coincidences,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::SinglesA, Channel::SinglesB, Channel::Coincidences];

    pub fn name(&self) -> &'static str {
        match self {
            Channel::SinglesA => "singles_a",
            Channel::SinglesB => "singles_b",
            Channel::Coincidences => "coincidences",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Dip,
    Peak,
}

/// Statistics extracted from one channel of an interferogram.
#[derive(Debug, Clone, Serialize)]
pub struct TraceSummary {
    /// (max − min)/(max + min) of the channel values.
    pub visibility: f64,
    /// Envelope full width at half maximum (ps), when an envelope exists.
    pub fwhm: Option<f64>,
    /// Delay (ps) of the global envelope extremum.
    pub extremum_position: f64,
    /// Fringe period (ps) when a carrier dominates the spectrum.
    pub fringe_period: Option<f64>,
    pub extremum_kind: ExtremumKind,
}

/// Degree of first-order temporal coherence of a sampled intensity spectrum,
/// g⁽¹⁾(Δt) = G⁽¹⁾(Δt)/G⁽¹⁾(0) with G⁽¹⁾ the inverse Fourier transform of
/// the spectrum. |g⁽¹⁾(0)| = 1 by construction.
pub fn g1_from_spectrum(
    intensity: &[f64],
    grid: &FrequencyGrid,
    delays: &DelayGrid,
) -> Result<Vec<Complex64>> {
    if intensity.len() != grid.n_points() {
        return Err(Error::LengthMismatch {
            expected: grid.n_points(),
            got: intensity.len(),
        });
    }
    let g0 = integrate(intensity, grid.spacing())?;
    if !(g0 > 0.0) || !g0.is_finite() {
        return Err(Error::DegenerateSpectrum);
    }
    let samples: Vec<Complex64> = intensity.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let transformed = inverse_fourier(&samples, grid, delays)?;
    Ok(transformed.into_iter().map(|v| v / g0).collect())
}

/// g⁽¹⁾ of a Gaussian source, computed numerically on the source's default
/// 4097-point spectral grid.
pub fn g1(source: &GaussianSource, delays: &DelayGrid) -> Result<Vec<Complex64>> {
    let grid = source.default_grid(4097)?;
    let amp = gaussian_amplitude(source, &grid)?;
    g1_from_spectrum(&amp.intensity(), &grid, delays)
}

/// Closed-form |g⁽¹⁾| of a Gaussian source: exp[−ln 2·Δt²/Δτ²].
pub fn g1_gaussian_closed_form(source: &GaussianSource, dt: f64) -> f64 {
    let tau = source.temporal_fwhm();
    (-LN2 * dt * dt / (tau * tau)).exp()
}

/// Two-photon HOM envelope exp[−(Δt−Δτ₀)²/(2κ²)].
pub fn hom_envelope(jsa: &EffectiveJsa, delays: &DelayGrid) -> Vec<f64> {
    let kappa = jsa.kappa();
    let center = jsa.walkoff();
    delays
        .samples()
        .map(|t| {
            let d = t - center;
            (-d * d / (2.0 * kappa * kappa)).exp()
        })
        .collect()
}

/// Nonlinear-interference envelope h⁽¹,¹⁾(Δt) = exp[−(Δt−2Δτ₀)²/(8κ²)].
pub fn nl_envelope(jsa: &EffectiveJsa, delays: &DelayGrid) -> Vec<f64> {
    let kappa = jsa.kappa();
    let center = 2.0 * jsa.walkoff();
    delays
        .samples()
        .map(|t| {
            let d = t - center;
            (-d * d / (8.0 * kappa * kappa)).exp()
        })
        .collect()
}

/// FWHM of the HOM envelope, 2κ√(2 ln 2).
pub fn hom_envelope_fwhm(jsa: &EffectiveJsa) -> f64 {
    2.0 * jsa.kappa() * (2.0 * LN2).sqrt()
}

/// FWHM of the nonlinear-interference envelope, exactly twice the HOM width.
pub fn nl_envelope_fwhm(jsa: &EffectiveJsa) -> f64 {
    2.0 * hom_envelope_fwhm(jsa)
}

/// Analyze one channel of an interferogram.
pub fn summarize_trace(trace: &InterferogramTrace, channel: Channel) -> Result<TraceSummary> {
    let values = match channel {
        Channel::SinglesA => trace.singles_a(),
        Channel::SinglesB => trace.singles_b(),
        Channel::Coincidences => trace.coincidences(),
    };
    summarize_samples(trace.delays(), values)
}

/// Analyze raw (delay, value) samples on a uniform delay grid.
pub fn summarize_samples(delays: &[f64], values: &[f64]) -> Result<TraceSummary> {
    if delays.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: delays.len(),
            got: values.len(),
        });
    }
    if delays.len() < 2 {
        return Err(Error::param("delays", "need at least 2 samples"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::param("values", "all values must be finite"));
    }
    let n = delays.len();
    let spacing = (delays[n - 1] - delays[0]) / (n - 1) as f64;
    if !(spacing > 0.0) {
        return Err(Error::param("delays", "must be strictly increasing"));
    }

    let vmax = values.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = values.iter().cloned().fold(f64::MAX, f64::min);
    let span = vmax - vmin;

    // Flat trace: degenerate but not an error.
    if span <= 1e-12 * vmax.abs().max(1.0) {
        return Ok(TraceSummary {
            visibility: 0.0,
            fwhm: None,
            extremum_position: delays[n / 2],
            fringe_period: None,
            extremum_kind: ExtremumKind::Peak,
        });
    }

    let visibility = if vmax + vmin > 0.0 {
        (vmax - vmin) / (vmax + vmin)
    } else {
        0.0
    };

    let carrier = detect_carrier(values, spacing);

    let (envelope, extremum_idx, extremum_kind, fringe_period) = match carrier {
        Some(period) => {
            let env = demodulated_envelope(values, spacing, period);
            let idx = argmax(&env);
            (env, idx, ExtremumKind::Peak, Some(period))
        }
        None => {
            let baseline = median(values);
            let dev: Vec<f64> = values.iter().map(|v| (v - baseline).abs()).collect();
            let idx = argmax(&dev);
            let kind = if values[idx] < baseline {
                ExtremumKind::Dip
            } else {
                ExtremumKind::Peak
            };
            (dev, idx, kind, None)
        }
    };

    let fwhm = fwhm_about_index(&envelope, extremum_idx, spacing);

    Ok(TraceSummary {
        visibility,
        fwhm,
        extremum_position: delays[extremum_idx],
        fringe_period,
        extremum_kind,
    })
}

/// FWHM of a bump-shaped sequence around its global maximum, assuming a zero
/// baseline. Half-max crossings are located by linear interpolation.
pub fn fwhm_about_peak(values: &[f64], spacing: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    fwhm_about_index(values, argmax(values), spacing)
}

fn fwhm_about_index(values: &[f64], peak: usize, spacing: f64) -> Option<f64> {
    let half = values[peak] / 2.0;
    if !(half > 0.0) {
        return None;
    }
    // Walk outwards from the peak to the first crossings below half max.
    let mut left = None;
    for i in (0..peak).rev() {
        if values[i] <= half {
            let frac = (values[i + 1] - half) / (values[i + 1] - values[i]);
            left = Some(i as f64 + 1.0 - frac);
            break;
        }
    }
    let mut right = None;
    for i in peak + 1..values.len() {
        if values[i] <= half {
            let frac = (values[i - 1] - half) / (values[i - 1] - values[i]);
            right = Some(i as f64 - 1.0 + frac);
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Some((r - l) * spacing),
        _ => None,
    }
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Direct DFT magnitudes of the mean-removed samples at bins 1..n/2.
fn dft_magnitudes(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let half = n / 2;
    (1..=half)
        .map(|k| {
            let step = -TAU * k as f64 / n as f64;
            d.iter()
                .enumerate()
                .map(|(i, &x)| Complex64::from_polar(x, step * i as f64))
                .sum::<Complex64>()
                .norm()
        })
        .collect()
}

/// Returns the fringe period (ps) when a carrier clearly dominates the
/// spectrum: the strongest bin must hold at least four full cycles and exceed
/// ten times the noise floor (median power of the remaining bins).
fn detect_carrier(values: &[f64], spacing: f64) -> Option<f64> {
    let n = values.len();
    if n < 16 {
        return None;
    }
    let mags = dft_magnitudes(values);
    let peak_bin = argmax(&mags); // zero-based; bin index k = peak_bin + 1
    let k = peak_bin + 1;
    if k < 4 {
        return None;
    }
    let peak_power = mags[peak_bin] * mags[peak_bin];
    let rest: Vec<f64> = mags
        .iter()
        .enumerate()
        .filter(|(i, _)| i.abs_diff(peak_bin) > 1)
        .map(|(_, m)| m * m)
        .collect();
    if rest.is_empty() {
        return None;
    }
    let noise_floor = median(&rest);
    if peak_power <= 10.0 * noise_floor.max(f64::MIN_POSITIVE) {
        return None;
    }
    // Quadratic interpolation of the magnitude peak for sub-bin resolution.
    let k_refined = if peak_bin > 0 && peak_bin + 1 < mags.len() {
        let (a, b, c) = (mags[peak_bin - 1], mags[peak_bin], mags[peak_bin + 1]);
        let denom = a - 2.0 * b + c;
        let delta = if denom.abs() > 0.0 {
            (0.5 * (a - c) / denom).clamp(-0.5, 0.5)
        } else {
            0.0
        };
        k as f64 + delta
    } else {
        k as f64
    };
    Some(n as f64 * spacing / k_refined)
}

/// Remove the carrier by complex demodulation at the detected fringe
/// frequency and average over one carrier period. Returns the oscillation
/// amplitude at each sample (edges reuse the nearest full window).
fn demodulated_envelope(values: &[f64], spacing: f64, period: f64) -> Vec<f64> {
    let n = values.len();
    let omega = TAU / period;
    let window = ((period / spacing).round() as usize).clamp(1, n);

    let mut prefix = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    prefix.push(acc);
    for (i, &v) in values.iter().enumerate() {
        acc += Complex64::from_polar(v, -omega * spacing * i as f64);
        prefix.push(acc);
    }

    let half = window / 2;
    (0..n)
        .map(|i| {
            // Full centered window, shifted inwards at the edges.
            let start = i.saturating_sub(half).min(n - window);
            let sum = prefix[start + window] - prefix[start];
            2.0 * sum.norm() / window as f64
        })
        .collect()
}
