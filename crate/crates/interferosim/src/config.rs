//! Declarative job configuration for the batch front end.
//!
//! Configs are TOML documents with a `variant` discriminator and flat,
//! unit-suffixed keys (ps, rad/ps, nm, mm). A JSA can be given either
//! directly (`sigma_eff_rad_per_ps` + `walkoff_ps`) or through the physical
//! stage parameters (`length_mm`, `inv_gv_diff_ps_per_mm`, `filter_fwhm_nm`,
//! `center_wavelength_nm`).

use serde::Deserialize;

use crate::interferometers::{Evaluation, InterferometerConfig, TraceMode};
use crate::numerics::DelayGrid;
use crate::spectra::{
    angfreq_from_wavelength, angfreq_from_wavelength_bandwidth, effective_jsa, EffectiveJsa,
    FilterSpec, GaussianSource, PdcProcess,
};

/// Field-level configuration error; maps to exit code 1 in the CLI.
#[derive(Debug, thiserror::Error)]
#[error("config error: {0}")]
pub struct ConfigError(pub String);

type Result<T> = std::result::Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantName {
    LinearSinglePhoton,
    LinearPhotonPair,
    SemiNonlinearHom,
    NonlinearSu11,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvaluationKind {
    #[default]
    ClosedForm,
    Quadrature,
}

impl From<EvaluationKind> for Evaluation {
    fn from(kind: EvaluationKind) -> Self {
        match kind {
            EvaluationKind::ClosedForm => Evaluation::ClosedForm,
            EvaluationKind::Quadrature => Evaluation::quadrature(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelaySection {
    pub start_ps: f64,
    pub stop_ps: f64,
    pub n_points: usize,
}

impl DelaySection {
    pub fn grid(&self) -> Result<DelayGrid> {
        DelayGrid::new(self.start_ps, self.stop_ps, self.n_points)
            .map_err(|e| ConfigError(format!("delays: {e}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterferometerSection {
    pub variant: VariantName,
    #[serde(default)]
    pub evaluation: EvaluationKind,
    #[serde(default)]
    pub emit_envelope: bool,

    // linear_single_photon
    pub omega0_rad_per_ps: Option<f64>,
    pub sigma_rad_per_ps: Option<f64>,
    pub temporal_fwhm_ps: Option<f64>,

    // linear_photon_pair
    pub tau_joint_ps: Option<f64>,

    // effective JSA, direct form
    pub sigma_eff_rad_per_ps: Option<f64>,
    pub walkoff_ps: Option<f64>,

    // effective JSA, physical form
    pub length_mm: Option<f64>,
    pub inv_gv_diff_ps_per_mm: Option<f64>,
    pub filter_fwhm_nm: Option<f64>,
    pub center_wavelength_nm: Option<f64>,

    // nonlinear_su11
    pub phase_phi_rad: Option<f64>,
    pub omega_s0_rad_per_ps: Option<f64>,
    pub signal_wavelength_nm: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub interferometer: InterferometerSection,
    pub delays: DelaySection,
}

impl SimulateConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn resolve(&self) -> Result<(InterferometerConfig, DelayGrid, Evaluation, TraceMode)> {
        let grid = self.delays.grid()?;
        let s = &self.interferometer;
        let cfg = match s.variant {
            VariantName::LinearSinglePhoton => {
                let omega0 = require(s.omega0_rad_per_ps, "interferometer.omega0_rad_per_ps")?;
                let source = match (s.sigma_rad_per_ps, s.temporal_fwhm_ps) {
                    (Some(sigma), None) => GaussianSource::new(omega0, sigma),
                    (None, Some(tau)) => GaussianSource::from_temporal_fwhm(omega0, tau),
                    (Some(_), Some(_)) => {
                        return err(
                            "interferometer: give either sigma_rad_per_ps or temporal_fwhm_ps, not both",
                        )
                    }
                    (None, None) => {
                        return err(
                            "interferometer: linear_single_photon needs sigma_rad_per_ps or temporal_fwhm_ps",
                        )
                    }
                }
                .map_err(|e| ConfigError(format!("interferometer: {e}")))?;
                InterferometerConfig::LinearSinglePhoton { source }
            }
            VariantName::LinearPhotonPair => InterferometerConfig::LinearPhotonPair {
                omega0: require(s.omega0_rad_per_ps, "interferometer.omega0_rad_per_ps")?,
                tau_joint: require(s.tau_joint_ps, "interferometer.tau_joint_ps")?,
            },
            VariantName::SemiNonlinearHom => InterferometerConfig::SemiNonlinearHom {
                jsa: s.resolve_jsa()?,
            },
            VariantName::NonlinearSu11 => InterferometerConfig::NonlinearSu11 {
                jsa: s.resolve_jsa()?,
                phase_phi: s.phase_phi_rad.unwrap_or(0.0),
                omega_s0: s.resolve_omega_s0()?,
            },
        };
        let mode = if s.emit_envelope {
            TraceMode::EnvelopeOnly
        } else {
            TraceMode::FringeResolved
        };
        Ok((cfg, grid, s.evaluation.into(), mode))
    }
}

impl InterferometerSection {
    fn resolve_jsa(&self) -> Result<EffectiveJsa> {
        let direct = self.sigma_eff_rad_per_ps.is_some();
        let physical = self.length_mm.is_some()
            || self.inv_gv_diff_ps_per_mm.is_some()
            || self.filter_fwhm_nm.is_some();
        match (direct, physical) {
            (true, true) => err(
                "interferometer: give either sigma_eff_rad_per_ps or the physical stage parameters, not both",
            ),
            (true, false) => {
                let sigma = self.sigma_eff_rad_per_ps.unwrap();
                let walkoff = require(self.walkoff_ps, "interferometer.walkoff_ps")?;
                EffectiveJsa::new(sigma, walkoff)
                    .map_err(|e| ConfigError(format!("interferometer: {e}")))
            }
            (false, _) => {
                let length = require(self.length_mm, "interferometer.length_mm")?;
                let inv_gv = require(
                    self.inv_gv_diff_ps_per_mm,
                    "interferometer.inv_gv_diff_ps_per_mm",
                )?;
                let filter_nm = require(self.filter_fwhm_nm, "interferometer.filter_fwhm_nm")?;
                let lambda0 = require(
                    self.center_wavelength_nm,
                    "interferometer.center_wavelength_nm",
                )?;
                let omega_s0 = angfreq_from_wavelength(lambda0)
                    .map_err(|e| ConfigError(format!("interferometer: {e}")))?;
                // Frequency-degenerate signal/idler by default.
                let pdc = PdcProcess::new(length, inv_gv, omega_s0, 2.0 * omega_s0)
                    .map_err(|e| ConfigError(format!("interferometer: {e}")))?;
                let dw = angfreq_from_wavelength_bandwidth(lambda0, filter_nm)
                    .map_err(|e| ConfigError(format!("interferometer: {e}")))?;
                let filter = FilterSpec::new(dw)
                    .map_err(|e| ConfigError(format!("interferometer: {e}")))?;
                effective_jsa(&pdc, &filter).map_err(|e| ConfigError(format!("interferometer: {e}")))
            }
        }
    }

    fn resolve_omega_s0(&self) -> Result<f64> {
        match (self.omega_s0_rad_per_ps, self.signal_wavelength_nm, self.center_wavelength_nm) {
            (Some(w), _, _) => Ok(w),
            (None, Some(lambda), _) | (None, None, Some(lambda)) => angfreq_from_wavelength(lambda)
                .map_err(|e| ConfigError(format!("interferometer: {e}"))),
            (None, None, None) => err(
                "interferometer: nonlinear_su11 needs omega_s0_rad_per_ps or signal_wavelength_nm",
            ),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipSection {
    pub single_pass_ps: f64,
    pub double_pass_ps: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateEntry {
    pub singles_a: f64,
    pub singles_b: f64,
    pub coincidences: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatesSection {
    pub single_pass: RateEntry,
    pub double_pass: Option<RateEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrateConfig {
    pub dips: Option<DipSection>,
    pub rates: Option<RatesSection>,
}

impl CalibrateConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: CalibrateConfig = toml::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        if cfg.dips.is_none() && cfg.rates.is_none() {
            return err("calibrate config needs a [dips] and/or [rates] section");
        }
        Ok(cfg)
    }
}

fn require(value: Option<f64>, field: &str) -> Result<f64> {
    value.ok_or_else(|| ConfigError(format!("missing required field `{field}`")))
}
