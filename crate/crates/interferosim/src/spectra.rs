//! Spectral amplitudes: Gaussian single-photon profiles, PDC phase matching
//! (exact sinc and its Gaussian approximation), Gaussian transmission filters
//! and the filtered effective joint spectral amplitude.
//!
//! Units are rad/ps for angular frequency and ps for time throughout, which
//! keeps every quantity O(1)–O(10³) at telecom wavelengths.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate, FrequencyGrid};

/// Bandwidth-matching coefficient of the Gaussian phase-matching
/// approximation exp[−γ·Δτ₀²·Ω²].
pub const PHASE_MATCH_GAMMA: f64 = 0.193;

/// Speed of light in nm/ps (identical numeric value in km/s).
pub const SPEED_OF_LIGHT_NM_PER_PS: f64 = 299_792.458;

const LN2: f64 = std::f64::consts::LN_2;

/// Complex spectral amplitude sampled over a [`FrequencyGrid`].
#[derive(Debug, Clone)]
pub struct SpectralAmplitude {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
}

impl SpectralAmplitude {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::LengthMismatch {
                expected: grid.n_points(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// |A(ω)|² at each grid point.
    pub fn intensity(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// ∫|A|²dω under the module quadrature rule.
    pub fn norm_sq_integral(&self) -> f64 {
        integrate(&self.intensity(), self.grid.spacing()).expect("grid has >= 16 points")
    }

    /// Rescale to unit L² norm.
    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm_sq_integral();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::DegenerateSpectrum);
        }
        let scale = norm.sqrt().recip();
        for v in &mut self.values {
            *v *= scale;
        }
        Ok(self)
    }

    /// FWHM of |A| located by linear interpolation of the half-maximum
    /// crossings around the global modulus maximum.
    pub fn amplitude_fwhm(&self) -> Option<f64> {
        let moduli: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        crate::coherence::fwhm_about_peak(&moduli, self.grid.spacing())
    }
}

/// Transform-limited Gaussian single-photon source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSource {
    omega0: f64,
    sigma: f64,
}

impl GaussianSource {
    pub fn new(omega0: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::param("sigma", "must be finite and > 0"));
        }
        if !omega0.is_finite() {
            return Err(Error::param("omega0", "must be finite"));
        }
        Ok(Self { omega0, sigma })
    }

    /// Source defined by its temporal intensity FWHM Δτ, via σ = √(2 ln 2)/Δτ.
    pub fn from_temporal_fwhm(omega0: f64, delta_tau: f64) -> Result<Self> {
        if !(delta_tau > 0.0) || !delta_tau.is_finite() {
            return Err(Error::param("delta_tau", "must be finite and > 0"));
        }
        Self::new(omega0, (2.0 * LN2).sqrt() / delta_tau)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Temporal intensity FWHM Δτ = √(2 ln 2)/σ.
    pub fn temporal_fwhm(&self) -> f64 {
        (2.0 * LN2).sqrt() / self.sigma
    }

    /// Default spectral grid for this source: ±8σ about ω₀.
    pub fn default_grid(&self, n_points: usize) -> Result<FrequencyGrid> {
        FrequencyGrid::new(self.omega0, 8.0 * self.sigma, n_points)
    }
}

/// Parameters of one nonlinear PDC stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdcProcess {
    length_mm: f64,
    inv_gv_diff_ps_per_mm: f64,
    omega_s0: f64,
    omega_p0: f64,
}

impl PdcProcess {
    pub fn new(
        length_mm: f64,
        inv_gv_diff_ps_per_mm: f64,
        omega_s0: f64,
        omega_p0: f64,
    ) -> Result<Self> {
        if !(length_mm > 0.0) || !length_mm.is_finite() {
            return Err(Error::param("length_mm", "must be finite and > 0"));
        }
        if !inv_gv_diff_ps_per_mm.is_finite() {
            return Err(Error::param("inv_gv_diff_ps_per_mm", "must be finite"));
        }
        if !omega_s0.is_finite() || !omega_p0.is_finite() {
            return Err(Error::param("omega_s0/omega_p0", "must be finite"));
        }
        Ok(Self {
            length_mm,
            inv_gv_diff_ps_per_mm,
            omega_s0,
            omega_p0,
        })
    }

    pub fn length_mm(&self) -> f64 {
        self.length_mm
    }

    pub fn omega_s0(&self) -> f64 {
        self.omega_s0
    }

    pub fn omega_p0(&self) -> f64 {
        self.omega_p0
    }

    /// Idler central frequency by energy conservation, ω_i0 = ω_p0 − ω_s0.
    pub fn omega_i0(&self) -> f64 {
        self.omega_p0 - self.omega_s0
    }

    /// Signal/idler temporal walk-off Δτ₀ = (L/2)·(1/vg_i − 1/vg_s).
    /// The sign records which photon is slower.
    pub fn walkoff(&self) -> f64 {
        0.5 * self.length_mm * self.inv_gv_diff_ps_per_mm
    }
}

/// Gaussian bandpass filter described by its intensity FWHM (rad/ps).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    fwhm_intensity: f64,
}

impl FilterSpec {
    pub fn new(fwhm_intensity: f64) -> Result<Self> {
        if !(fwhm_intensity > 0.0) || !fwhm_intensity.is_finite() {
            return Err(Error::param("fwhm_intensity", "must be finite and > 0"));
        }
        Ok(Self { fwhm_intensity })
    }

    pub fn fwhm_intensity(&self) -> f64 {
        self.fwhm_intensity
    }
}

/// Effective (filtered, Gaussian-approximated) joint spectral amplitude of a
/// CW-pumped photon pair: exp[−Ω²/(4σ²) − iΔτ₀Ω].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveJsa {
    sigma_eff: f64,
    walkoff: f64,
}

impl EffectiveJsa {
    pub fn new(sigma_eff: f64, walkoff: f64) -> Result<Self> {
        if !(sigma_eff > 0.0) || !sigma_eff.is_finite() {
            return Err(Error::param("sigma_eff", "must be finite and > 0"));
        }
        if !walkoff.is_finite() {
            return Err(Error::param("walkoff", "must be finite"));
        }
        Ok(Self { sigma_eff, walkoff })
    }

    pub fn sigma_eff(&self) -> f64 {
        self.sigma_eff
    }

    pub fn walkoff(&self) -> f64 {
        self.walkoff
    }

    /// κ = 1/(2σ); κ·σ = 1/2 holds by construction.
    pub fn kappa(&self) -> f64 {
        0.5 / self.sigma_eff
    }

    /// Temporal bandwidth Δτ = √(2 ln 2)/σ of either photon.
    pub fn temporal_fwhm(&self) -> f64 {
        (2.0 * LN2).sqrt() / self.sigma_eff
    }

    /// Detuning grid covering ±8σ, adequate for all integrals over this JSA.
    pub fn default_grid(&self, n_points: usize) -> Result<FrequencyGrid> {
        FrequencyGrid::new(0.0, 8.0 * self.sigma_eff, n_points)
    }

    /// Unit-normalized sampled amplitude (2πσ²)^{-1/4}·exp[−Ω²/(4σ²) − iΔτ₀Ω].
    pub fn sampled_amplitude(&self, grid: &FrequencyGrid) -> Result<SpectralAmplitude> {
        let s2 = self.sigma_eff * self.sigma_eff;
        let norm = (2.0 * std::f64::consts::PI * s2).powf(-0.25);
        let values = grid
            .samples()
            .map(|w| {
                Complex64::from_polar((-w * w / (4.0 * s2)).exp() * norm, -self.walkoff * w)
            })
            .collect();
        SpectralAmplitude::new(*grid, values)
    }
}

/// Sample A(ω) = (2πσ²)^{-1/4}·exp[−(ω−ω₀)²/(4σ²)] on `grid`.
///
/// The grid must be centered on ω₀ and cover at least ±6σ; anything narrower
/// truncates too much of the norm to keep ∫|A|²dω = 1 to 1e−9.
pub fn gaussian_amplitude(src: &GaussianSource, grid: &FrequencyGrid) -> Result<SpectralAmplitude> {
    if (grid.center() - src.omega0()).abs() > 0.5 * grid.spacing() {
        return Err(Error::GridCoverage(format!(
            "grid center {} is not the source center {}",
            grid.center(),
            src.omega0()
        )));
    }
    if grid.half_span() < 6.0 * src.sigma() {
        return Err(Error::GridCoverage(format!(
            "half_span {} < 6 sigma = {}",
            grid.half_span(),
            6.0 * src.sigma()
        )));
    }
    let s2 = src.sigma() * src.sigma();
    let norm = (2.0 * std::f64::consts::PI * s2).powf(-0.25);
    let values = grid
        .samples()
        .map(|w| {
            let d = w - src.omega0();
            Complex64::new(norm * (-d * d / (4.0 * s2)).exp(), 0.0)
        })
        .collect();
    SpectralAmplitude::new(*grid, values)
}

/// Exact phase-matching spectrum sinc(Δτ₀Ω)·exp[iΔτ₀Ω] on a detuning grid,
/// normalized to unit L² norm.
pub fn sinc_phasematching(pdc: &PdcProcess, grid: &FrequencyGrid) -> Result<SpectralAmplitude> {
    require_detuning_grid(grid)?;
    let tau0 = pdc.walkoff();
    let values = grid
        .samples()
        .map(|w| {
            let x = tau0 * w;
            Complex64::from_polar(sinc(x), x)
        })
        .collect();
    SpectralAmplitude::new(*grid, values)?.normalized()
}

/// Gaussian approximation exp[−γΔτ₀²Ω² − iΔτ₀Ω] of the sinc phase matching,
/// normalized to unit L² norm. γ = [`PHASE_MATCH_GAMMA`] matches the
/// amplitude bandwidths of the two forms.
pub fn gaussian_phasematching(pdc: &PdcProcess, grid: &FrequencyGrid) -> Result<SpectralAmplitude> {
    require_detuning_grid(grid)?;
    let tau0 = pdc.walkoff();
    let values = grid
        .samples()
        .map(|w| {
            Complex64::from_polar(
                (-PHASE_MATCH_GAMMA * tau0 * tau0 * w * w).exp(),
                -tau0 * w,
            )
        })
        .collect();
    SpectralAmplitude::new(*grid, values)?.normalized()
}

/// Gaussian transmission f_g(Ω) = exp[−2 ln 2·Ω²/ΔΩ²]. Peak transmission is 1;
/// deliberately not L²-normalized.
pub fn gaussian_filter(f: &FilterSpec, grid: &FrequencyGrid) -> Result<SpectralAmplitude> {
    require_detuning_grid(grid)?;
    let dw2 = f.fwhm_intensity() * f.fwhm_intensity();
    let values = grid
        .samples()
        .map(|w| Complex64::new((-2.0 * LN2 * w * w / dw2).exp(), 0.0))
        .collect();
    SpectralAmplitude::new(*grid, values)
}

/// Effective JSA width after filtering: 1/σ² = 4γΔτ₀² + 8 ln 2/ΔΩ².
pub fn effective_jsa(pdc: &PdcProcess, f: &FilterSpec) -> Result<EffectiveJsa> {
    let tau0 = pdc.walkoff();
    let dw = f.fwhm_intensity();
    let inv_s2 = 4.0 * PHASE_MATCH_GAMMA * tau0 * tau0 + 8.0 * LN2 / (dw * dw);
    EffectiveJsa::new(inv_s2.sqrt().recip(), tau0)
}

/// Convert an intensity bandwidth Δλ (nm) around λ₀ (nm) to an angular
/// frequency bandwidth 2πc·Δλ/λ₀² (rad/ps).
pub fn angfreq_from_wavelength_bandwidth(lambda0_nm: f64, dlambda_nm: f64) -> Result<f64> {
    if !(lambda0_nm > 0.0) || !lambda0_nm.is_finite() {
        return Err(Error::param("lambda0_nm", "must be finite and > 0"));
    }
    if !(dlambda_nm >= 0.0) || !dlambda_nm.is_finite() {
        return Err(Error::param("dlambda_nm", "must be finite and >= 0"));
    }
    Ok(2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_NM_PER_PS * dlambda_nm
        / (lambda0_nm * lambda0_nm))
}

/// Central angular frequency 2πc/λ₀ (rad/ps) of a wavelength in nm.
pub fn angfreq_from_wavelength(lambda0_nm: f64) -> Result<f64> {
    if !(lambda0_nm > 0.0) || !lambda0_nm.is_finite() {
        return Err(Error::param("lambda0_nm", "must be finite and > 0"));
    }
    Ok(2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_NM_PER_PS / lambda0_nm)
}

fn require_detuning_grid(grid: &FrequencyGrid) -> Result<()> {
    if grid.center() != 0.0 {
        return Err(Error::GridCoverage(format!(
            "expected detuning grid centered at 0, got center {}",
            grid.center()
        )));
    }
    Ok(())
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}
