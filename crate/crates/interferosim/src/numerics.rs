//! Uniform grids, composite quadrature and direct inverse Fourier transforms.
//!
//! Every spectral integral in this crate runs through [`integrate`] /
//! [`integrate_complex`], so the closed-form expressions elsewhere can be
//! checked against one shared quadrature rule. The transform in
//! [`inverse_fourier`] is a direct evaluation (not an FFT), which keeps the
//! delay grid completely decoupled from the frequency grid.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform grid of angular frequencies (rad/ps) about a central frequency.
///
/// `n_points` is required to be odd so that the center is an actual sample
/// (detuning grids then always contain Ω = 0) and so composite Simpson
/// applies to the full grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    center: f64,
    half_span: f64,
    n_points: usize,
}

impl FrequencyGrid {
    pub fn new(center: f64, half_span: f64, n_points: usize) -> Result<Self> {
        if !(half_span > 0.0) || !half_span.is_finite() {
            return Err(Error::param("half_span", "must be finite and > 0"));
        }
        if !center.is_finite() {
            return Err(Error::param("center", "must be finite"));
        }
        if n_points < 16 {
            return Err(Error::param("n_points", "must be at least 16"));
        }
        if n_points % 2 == 0 {
            return Err(Error::param("n_points", "must be odd"));
        }
        Ok(Self {
            center,
            half_span,
            n_points,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_span(&self) -> f64 {
        self.half_span
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Grid spacing dΩ = 2·half_span/(n_points − 1).
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_span / (self.n_points - 1) as f64
    }

    pub fn sample(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        self.center - self.half_span + i as f64 * self.spacing()
    }

    pub fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.sample(i))
    }

    /// Same grid with roughly doubled resolution (n → 2n − 1, keeping oddness).
    pub fn refined(&self) -> Self {
        Self {
            center: self.center,
            half_span: self.half_span,
            n_points: 2 * self.n_points - 1,
        }
    }
}

/// Uniform grid of time delays (ps).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayGrid {
    start: f64,
    stop: f64,
    n_points: usize,
}

impl DelayGrid {
    pub fn new(start: f64, stop: f64, n_points: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::param("start/stop", "must be finite"));
        }
        if !(start < stop) {
            return Err(Error::param("start", "must be strictly less than stop"));
        }
        if n_points < 2 {
            return Err(Error::param("n_points", "must be at least 2"));
        }
        Ok(Self {
            start,
            stop,
            n_points,
        })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.stop - self.start) / (self.n_points - 1) as f64
    }

    pub fn sample(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        self.start + i as f64 * self.spacing()
    }

    pub fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.sample(i))
    }

    /// Delay grid centered on `center` spanning ±`half_span`.
    pub fn centered(center: f64, half_span: f64, n_points: usize) -> Result<Self> {
        Self::new(center - half_span, center + half_span, n_points)
    }
}

fn quadrature_weights(n: usize, spacing: f64) -> impl Iterator<Item = f64> {
    // Composite Simpson on odd lengths, trapezoid otherwise.
    let simpson = n % 2 == 1 && n >= 3;
    (0..n).map(move |i| {
        if simpson {
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * spacing / 3.0
        } else if i == 0 || i == n - 1 {
            0.5 * spacing
        } else {
            spacing
        }
    })
}

/// Integral of uniformly sampled real values.
///
/// Composite Simpson when the sample count is odd, trapezoid when even.
pub fn integrate(samples: &[f64], spacing: f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::param("samples", "need at least 2 samples"));
    }
    if !(spacing > 0.0) {
        return Err(Error::param("spacing", "must be > 0"));
    }
    Ok(quadrature_weights(samples.len(), spacing)
        .zip(samples)
        .map(|(w, s)| w * s)
        .sum())
}

/// Complex counterpart of [`integrate`] with identical weights.
pub fn integrate_complex(samples: &[Complex64], spacing: f64) -> Result<Complex64> {
    if samples.len() < 2 {
        return Err(Error::param("samples", "need at least 2 samples"));
    }
    if !(spacing > 0.0) {
        return Err(Error::param("spacing", "must be > 0"));
    }
    Ok(quadrature_weights(samples.len(), spacing)
        .zip(samples)
        .map(|(w, s)| s * w)
        .sum())
}

/// F(t) = ∫ f(Ω) e^{iΩt} dΩ evaluated at every delay of `times`.
///
/// Direct O(N·M) evaluation with the same quadrature weights as
/// [`integrate_complex`], so `inverse_fourier(..)[t = 0]` equals the plain
/// integral exactly.
pub fn inverse_fourier(
    samples: &[Complex64],
    grid: &FrequencyGrid,
    times: &DelayGrid,
) -> Result<Vec<Complex64>> {
    if samples.len() != grid.n_points() {
        return Err(Error::LengthMismatch {
            expected: grid.n_points(),
            got: samples.len(),
        });
    }
    let spacing = grid.spacing();
    let weighted: Vec<Complex64> = quadrature_weights(samples.len(), spacing)
        .zip(samples)
        .map(|(w, s)| s * w)
        .collect();
    let omegas: Vec<f64> = grid.samples().collect();
    Ok(times
        .samples()
        .map(|t| {
            weighted
                .iter()
                .zip(&omegas)
                .map(|(s, &omega)| s * Complex64::cis(omega * t))
                .sum()
        })
        .collect())
}
