//! The four two-mode interferometer models: single-photon Mach-Zehnder,
//! photon-pair (NOON) interference, semi-nonlinear HOM, and the nonlinear
//! SU(1,1) interferometer.
//!
//! Every model offers two evaluation routes: the closed-form expression and
//! an independent quadrature evaluation of the underlying spectral integral.
//! The two must agree pointwise; the acceptance suite holds them to 1e−6.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate, DelayGrid, FrequencyGrid};
use crate::spectra::{gaussian_amplitude, EffectiveJsa, GaussianSource, SpectralAmplitude};

const TAU: f64 = std::f64::consts::TAU;

/// Default frequency-grid resolution for quadrature evaluation.
pub const DEFAULT_QUADRATURE_POINTS: usize = 4097;

/// How count rates are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    /// Closed-form Gaussian expressions.
    ClosedForm,
    /// Numerical integration of the spectral integrand on an `n_points` grid.
    Quadrature { n_points: usize },
}

impl Evaluation {
    pub fn quadrature() -> Self {
        Evaluation::Quadrature {
            n_points: DEFAULT_QUADRATURE_POINTS,
        }
    }
}

/// Whether to emit the fringe-resolved trace or only its envelope.
///
/// Envelope-only output replaces the carrier cosine by its upper bound 1, so
/// coarse delay grids are permitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMode {
    #[default]
    FringeResolved,
    EnvelopeOnly,
}

/// Delay-scanned singles and coincidence probabilities.
///
/// Singles of pair-input variants are mean photon numbers (constant 1);
/// coincidences are detection probabilities in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct InterferogramTrace {
    delays: Vec<f64>,
    singles_a: Vec<f64>,
    singles_b: Vec<f64>,
    coincidences: Vec<f64>,
}

impl InterferogramTrace {
    pub fn new(
        delays: Vec<f64>,
        singles_a: Vec<f64>,
        singles_b: Vec<f64>,
        coincidences: Vec<f64>,
    ) -> Result<Self> {
        let n = delays.len();
        for (name, col) in [
            ("singles_a", &singles_a),
            ("singles_b", &singles_b),
            ("coincidences", &coincidences),
        ] {
            if col.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: col.len(),
                });
            }
            if col.iter().any(|&v| !(-1e-9..=1.0 + 1e-9).contains(&v)) {
                return Err(Error::param(
                    "trace",
                    format!("{name} contains values outside [0, 1]"),
                ));
            }
        }
        Ok(Self {
            delays,
            singles_a,
            singles_b,
            coincidences,
        })
    }

    pub fn len(&self) -> usize {
        self.delays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delays.is_empty()
    }

    pub fn delays(&self) -> &[f64] {
        &self.delays
    }

    pub fn singles_a(&self) -> &[f64] {
        &self.singles_a
    }

    pub fn singles_b(&self) -> &[f64] {
        &self.singles_b
    }

    pub fn coincidences(&self) -> &[f64] {
        &self.coincidences
    }
}

/// Configuration of one interferometer variant.
#[derive(Debug, Clone, PartialEq)]
pub enum InterferometerConfig {
    LinearSinglePhoton {
        source: GaussianSource,
    },
    LinearPhotonPair {
        omega0: f64,
        tau_joint: f64,
    },
    SemiNonlinearHom {
        jsa: EffectiveJsa,
    },
    NonlinearSu11 {
        jsa: EffectiveJsa,
        phase_phi: f64,
        omega_s0: f64,
    },
}

/// Run the interferometer selected by `cfg` over `delays`.
pub fn simulate(
    cfg: &InterferometerConfig,
    delays: &DelayGrid,
    evaluation: Evaluation,
    mode: TraceMode,
) -> Result<InterferogramTrace> {
    match cfg {
        InterferometerConfig::LinearSinglePhoton { source } => {
            linear_single_photon(source, delays, evaluation, mode)
        }
        InterferometerConfig::LinearPhotonPair { omega0, tau_joint } => {
            linear_photon_pair(*omega0, *tau_joint, delays, evaluation, mode)
        }
        InterferometerConfig::SemiNonlinearHom { jsa } => hom_semi_nonlinear(jsa, delays, evaluation),
        InterferometerConfig::NonlinearSu11 {
            jsa,
            phase_phi,
            omega_s0,
        } => nonlinear_su11(jsa, *phase_phi, *omega_s0, delays, evaluation, mode),
    }
}

fn check_fringe_sampling(delays: &DelayGrid, carrier_omega: f64) -> Result<()> {
    let max_spacing = TAU / carrier_omega.abs() / 8.0;
    if delays.spacing() > max_spacing {
        return Err(Error::UndersampledFringe {
            spacing: delays.spacing(),
            max_spacing,
        });
    }
    Ok(())
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Quadrature weights times the unit-normalized intensity of `amp`.
/// Using the quadrature norm (not the analytic one) keeps discrete
/// conservation laws exact.
fn weighted_intensity(amp: &SpectralAmplitude) -> Vec<f64> {
    let intensity = amp.intensity();
    let norm = integrate(&intensity, amp.grid().spacing()).expect("valid grid");
    let h = amp.grid().spacing();
    let n = intensity.len();
    intensity
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            // Same composite-Simpson weights as numerics::integrate.
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            p / norm * w * h / 3.0
        })
        .collect()
}

/// Mach-Zehnder interferometer fed with one Gaussian single photon.
///
/// n_{a,b}(Δt) = 1/2 ∓ (1/2)|g⁽¹⁾(Δt)|cos(ω₀Δt); no coincidences.
pub fn linear_single_photon(
    src: &GaussianSource,
    delays: &DelayGrid,
    evaluation: Evaluation,
    mode: TraceMode,
) -> Result<InterferogramTrace> {
    if mode == TraceMode::FringeResolved {
        check_fringe_sampling(delays, src.omega0())?;
    }
    let n = delays.n_points();
    let mut singles_a = Vec::with_capacity(n);
    let mut singles_b = Vec::with_capacity(n);

    match evaluation {
        Evaluation::ClosedForm => {
            for t in delays.samples() {
                let g1 = crate::coherence::g1_gaussian_closed_form(src, t);
                let carrier = match mode {
                    TraceMode::FringeResolved => (src.omega0() * t).cos(),
                    TraceMode::EnvelopeOnly => 1.0,
                };
                singles_a.push(clamp_unit(0.5 - 0.5 * g1 * carrier));
                singles_b.push(clamp_unit(0.5 + 0.5 * g1 * carrier));
            }
        }
        Evaluation::Quadrature { n_points } => {
            let grid = src.default_grid(n_points)?;
            let amp = gaussian_amplitude(src, &grid)?;
            let weighted = weighted_intensity(&amp);
            let omegas: Vec<f64> = grid.samples().collect();
            for t in delays.samples() {
                // (1/4)∫|A(ω)|²·|1 ∓ e^{iωΔt}|²dω with the 1/4 making the
                // decohered limit 1/2.
                let sum: Complex64 = weighted
                    .iter()
                    .zip(&omegas)
                    .map(|(&wp, &w)| Complex64::from_polar(wp, w * t))
                    .sum();
                let interference = match mode {
                    TraceMode::FringeResolved => sum.re,
                    TraceMode::EnvelopeOnly => sum.norm(),
                };
                singles_a.push(clamp_unit(0.5 - 0.5 * interference));
                singles_b.push(clamp_unit(0.5 + 0.5 * interference));
            }
        }
    }

    InterferogramTrace::new(
        delays.samples().collect(),
        singles_a,
        singles_b,
        vec![0.0; n],
    )
}

/// Linear interferometer with an indistinguishable photon pair at the input
/// (NOON-state interference).
///
/// Singles are flat at the mean pair number 1; coincidences fringe at 2ω₀.
pub fn linear_photon_pair(
    omega0: f64,
    tau_joint: f64,
    delays: &DelayGrid,
    evaluation: Evaluation,
    mode: TraceMode,
) -> Result<InterferogramTrace> {
    if !(tau_joint > 0.0) || !tau_joint.is_finite() {
        return Err(Error::param("tau_joint", "must be finite and > 0"));
    }
    if !omega0.is_finite() {
        return Err(Error::param("omega0", "must be finite"));
    }
    if mode == TraceMode::FringeResolved {
        check_fringe_sampling(delays, 2.0 * omega0)?;
    }
    let n = delays.n_points();
    let mut coincidences = Vec::with_capacity(n);

    match evaluation {
        Evaluation::ClosedForm => {
            for t in delays.samples() {
                let env = (-t * t / (tau_joint * tau_joint)).exp();
                let carrier = match mode {
                    TraceMode::FringeResolved => (2.0 * omega0 * t).cos(),
                    TraceMode::EnvelopeOnly => 1.0,
                };
                coincidences.push(clamp_unit(0.5 + 0.5 * env * carrier));
            }
        }
        Evaluation::Quadrature { n_points } => {
            // Spectral weight whose transform reproduces the Gaussian joint
            // envelope exp[−Δt²/Δτ_joint²]: a Gaussian of width 1/(√2·Δτ).
            let sigma = 1.0 / (std::f64::consts::SQRT_2 * tau_joint);
            let grid = FrequencyGrid::new(0.0, 8.0 * sigma, n_points)?;
            let raw: Vec<f64> = grid
                .samples()
                .map(|w| (-w * w / (2.0 * sigma * sigma)).exp())
                .collect();
            let norm = integrate(&raw, grid.spacing())?;
            let amp = SpectralAmplitude::new(
                grid,
                raw.iter()
                    .map(|&p| Complex64::new((p / norm).sqrt(), 0.0))
                    .collect(),
            )?;
            let weighted = weighted_intensity(&amp);
            let omegas: Vec<f64> = grid.samples().collect();
            for t in delays.samples() {
                let sum: Complex64 = weighted
                    .iter()
                    .zip(&omegas)
                    .map(|(&wp, &w)| Complex64::from_polar(wp, 2.0 * w * t))
                    .sum();
                let v = match mode {
                    TraceMode::FringeResolved => {
                        0.5 + 0.5 * (sum * Complex64::cis(2.0 * omega0 * t)).re
                    }
                    TraceMode::EnvelopeOnly => 0.5 + 0.5 * sum.norm(),
                };
                coincidences.push(clamp_unit(v));
            }
        }
    }

    InterferogramTrace::new(
        delays.samples().collect(),
        vec![1.0; n],
        vec![1.0; n],
        coincidences,
    )
}

/// Semi-nonlinear interferometer: PDC preparer, beam-splitter analyzer
/// (Hong-Ou-Mandel interference). Singles are flat; the coincidence dip
/// reaches zero at Δt = Δτ₀.
pub fn hom_semi_nonlinear(
    jsa: &EffectiveJsa,
    delays: &DelayGrid,
    evaluation: Evaluation,
) -> Result<InterferogramTrace> {
    let n = delays.n_points();
    let mut coincidences = Vec::with_capacity(n);

    match evaluation {
        Evaluation::ClosedForm => {
            let kappa = jsa.kappa();
            for t in delays.samples() {
                let d = t - jsa.walkoff();
                let hom = (-d * d / (2.0 * kappa * kappa)).exp();
                coincidences.push(clamp_unit(0.5 - 0.5 * hom));
            }
        }
        Evaluation::Quadrature { n_points } => {
            let grid = jsa.default_grid(n_points)?;
            let amp = jsa.sampled_amplitude(&grid)?;
            let weighted = weighted_intensity(&amp);
            let omegas: Vec<f64> = grid.samples().collect();
            for t in delays.samples() {
                // 1/2 − (1/2)·Re ∫|φ(Ω)|²·e^{i2Ω(Δt−Δτ₀)}dΩ
                let d = t - jsa.walkoff();
                let sum: f64 = weighted
                    .iter()
                    .zip(&omegas)
                    .map(|(&wp, &w)| wp * (2.0 * w * d).cos())
                    .sum();
                coincidences.push(clamp_unit(0.5 - 0.5 * sum));
            }
        }
    }

    InterferogramTrace::new(
        delays.samples().collect(),
        vec![1.0; n],
        vec![1.0; n],
        coincidences,
    )
}

/// Two-stage joint spectral amplitude of the SU(1,1) interferometer at a
/// fixed signal delay `dt`:
///
/// φ_N(Ω) = φ(Ω)·[1 + e^{iθ(Ω)}],  θ(Ω) = (dt − 2Δτ₀)Ω + dt·ω_s0 + Φ.
///
/// The −2Δτ₀Ω term is the first-order Δk·L phase of the second pass and
/// dt·(ω_s0 + Ω) the phase picked up by the delayed signal photon; the signs
/// are fixed so the interference envelope peaks at dt = +2Δτ₀. Returned
/// un-normalized.
pub fn build_two_stage_jsa(
    jsa: &EffectiveJsa,
    phase_phi: f64,
    omega_s0: f64,
    dt: f64,
    grid: &FrequencyGrid,
) -> Result<SpectralAmplitude> {
    if !phase_phi.is_finite() || !omega_s0.is_finite() || !dt.is_finite() {
        return Err(Error::param("phase_phi/omega_s0/dt", "must be finite"));
    }
    let single = jsa.sampled_amplitude(grid)?;
    let slope = dt - 2.0 * jsa.walkoff();
    let offset = dt * omega_s0 + phase_phi;
    let values = single
        .values()
        .iter()
        .zip(grid.samples())
        .map(|(&phi, w)| phi * (Complex64::new(1.0, 0.0) + Complex64::cis(slope * w + offset)))
        .collect();
    SpectralAmplitude::new(*grid, values)
}

/// SU(1,1) nonlinear interferometer. All three channels are identical:
/// 1/2 + (1/2)·h⁽¹,¹⁾(Δt)·cos(ω_s0Δt + Φ).
pub fn nonlinear_su11(
    jsa: &EffectiveJsa,
    phase_phi: f64,
    omega_s0: f64,
    delays: &DelayGrid,
    evaluation: Evaluation,
    mode: TraceMode,
) -> Result<InterferogramTrace> {
    if !omega_s0.is_finite() {
        return Err(Error::param("omega_s0", "must be finite"));
    }
    if !phase_phi.is_finite() {
        return Err(Error::param("phase_phi", "must be finite"));
    }
    let phi = phase_phi.rem_euclid(TAU);
    if mode == TraceMode::FringeResolved {
        check_fringe_sampling(delays, omega_s0)?;
    }
    let n = delays.n_points();
    let mut counts = Vec::with_capacity(n);

    match evaluation {
        Evaluation::ClosedForm => {
            let kappa = jsa.kappa();
            let center = 2.0 * jsa.walkoff();
            for t in delays.samples() {
                let d = t - center;
                let h = (-d * d / (8.0 * kappa * kappa)).exp();
                let carrier = match mode {
                    TraceMode::FringeResolved => (omega_s0 * t + phi).cos(),
                    TraceMode::EnvelopeOnly => 1.0,
                };
                counts.push(clamp_unit(0.5 + 0.5 * h * carrier));
            }
        }
        Evaluation::Quadrature { n_points } => {
            // (1/4)∫|φ_N(Ω)|²dΩ with |φ_N|² = |φ|²·(2 + 2cos θ); the 1/4
            // sets the interference-free baseline to 1/2.
            let grid = jsa.default_grid(n_points)?;
            let amp = jsa.sampled_amplitude(&grid)?;
            let weighted = weighted_intensity(&amp);
            let omegas: Vec<f64> = grid.samples().collect();
            for t in delays.samples() {
                let slope = t - 2.0 * jsa.walkoff();
                let sum: Complex64 = weighted
                    .iter()
                    .zip(&omegas)
                    .map(|(&wp, &w)| Complex64::from_polar(wp, slope * w))
                    .sum();
                let v = match mode {
                    TraceMode::FringeResolved => {
                        0.5 + 0.5 * (sum * Complex64::cis(omega_s0 * t + phi)).re
                    }
                    TraceMode::EnvelopeOnly => 0.5 + 0.5 * sum.norm(),
                };
                counts.push(clamp_unit(v));
            }
        }
    }

    // Pairwise generation: singles and coincidences are the same sequence.
    InterferogramTrace::new(
        delays.samples().collect(),
        counts.clone(),
        counts.clone(),
        counts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn jsa_179() -> EffectiveJsa {
        EffectiveJsa::new(0.5 / 1.79, 2.2).unwrap()
    }

    #[test]
    fn li_closed_form_endpoints() {
        let src = GaussianSource::from_temporal_fwhm(50.0, 1.0).unwrap();
        let delays = DelayGrid::new(-8.0, 8.0, 2049).unwrap();
        let tr =
            linear_single_photon(&src, &delays, Evaluation::ClosedForm, TraceMode::FringeResolved)
                .unwrap();
        // Δt = 0 is the grid midpoint: n_a = 0, n_b = 1.
        let mid = tr.len() / 2;
        assert_abs_diff_eq!(tr.delays()[mid], 0.0);
        assert_abs_diff_eq!(tr.singles_a()[mid], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(tr.singles_b()[mid], 1.0, epsilon = 1e-12);
        // Decohered limit.
        assert_abs_diff_eq!(tr.singles_a()[0], 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(tr.singles_b()[0], 0.5, epsilon = 1e-6);
        assert!(tr.coincidences().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn li_photon_number_conserved() {
        let src = GaussianSource::from_temporal_fwhm(50.0, 1.0).unwrap();
        let delays = DelayGrid::new(-5.0, 5.0, 1201).unwrap();
        for eval in [Evaluation::ClosedForm, Evaluation::quadrature()] {
            let tr = linear_single_photon(&src, &delays, eval, TraceMode::FringeResolved).unwrap();
            for (a, b) in tr.singles_a().iter().zip(tr.singles_b()) {
                assert!((a + b - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn li_quadrature_matches_closed_form() {
        let src = GaussianSource::from_temporal_fwhm(50.0, 1.0).unwrap();
        let delays = DelayGrid::new(-4.0, 4.0, 801).unwrap();
        let cf = linear_single_photon(&src, &delays, Evaluation::ClosedForm, TraceMode::FringeResolved)
            .unwrap();
        let q = linear_single_photon(
            &src,
            &delays,
            Evaluation::quadrature(),
            TraceMode::FringeResolved,
        )
        .unwrap();
        let max_diff = cf
            .singles_a()
            .iter()
            .zip(q.singles_a())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        assert!(max_diff < 1e-6, "max diff {max_diff}");
    }

    #[test]
    fn li_rejects_undersampled_grid() {
        let src = GaussianSource::from_temporal_fwhm(1212.2, 1.0).unwrap();
        let delays = DelayGrid::new(-5.0, 5.0, 101).unwrap();
        assert!(matches!(
            linear_single_photon(&src, &delays, Evaluation::ClosedForm, TraceMode::FringeResolved),
            Err(Error::UndersampledFringe { .. })
        ));
        // Envelope-only mode permits the coarse grid.
        assert!(linear_single_photon(
            &src,
            &delays,
            Evaluation::ClosedForm,
            TraceMode::EnvelopeOnly
        )
        .is_ok());
    }

    #[test]
    fn pair_examples() {
        let omega0 = 50.0;
        let delays = DelayGrid::new(-5.0, 5.0, 8001).unwrap();
        let tr = linear_photon_pair(
            omega0,
            1.0,
            &delays,
            Evaluation::ClosedForm,
            TraceMode::FringeResolved,
        )
        .unwrap();
        let mid = tr.len() / 2;
        // Maximum at zero delay; singles carry no information.
        assert_abs_diff_eq!(tr.coincidences()[mid], 1.0, epsilon = 1e-12);
        assert!(tr.singles_a().iter().all(|&s| s == 1.0));
        assert!(tr.singles_b().iter().all(|&s| s == 1.0));
        // Decohered limit.
        assert_abs_diff_eq!(tr.coincidences()[0], 0.5, epsilon = 1e-6);
    }

    #[test]
    fn pair_quadrature_matches_closed_form() {
        let delays = DelayGrid::new(-4.0, 4.0, 6401).unwrap();
        let cf = linear_photon_pair(50.0, 2.0, &delays, Evaluation::ClosedForm, TraceMode::FringeResolved)
            .unwrap();
        let q = linear_photon_pair(
            50.0,
            2.0,
            &delays,
            Evaluation::quadrature(),
            TraceMode::FringeResolved,
        )
        .unwrap();
        let max_diff = cf
            .coincidences()
            .iter()
            .zip(q.coincidences())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        assert!(max_diff < 1e-6, "max diff {max_diff}");
    }

    #[test]
    fn hom_examples() {
        let jsa = EffectiveJsa::new(0.5 / 1.79, 2.25).unwrap();
        // Grid centered on the dip so Δt = Δτ₀ is a sample.
        let delays = DelayGrid::centered(2.25, 12.0, 4001).unwrap();
        let tr = hom_semi_nonlinear(&jsa, &delays, Evaluation::ClosedForm).unwrap();
        let mid = tr.len() / 2;
        assert_abs_diff_eq!(tr.delays()[mid], 2.25);
        assert_abs_diff_eq!(tr.coincidences()[mid], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(tr.coincidences()[0], 0.5, epsilon = 1e-6);
        assert!(tr.singles_a().iter().all(|&s| s == 1.0));

        let summary =
            crate::coherence::summarize_trace(&tr, crate::coherence::Channel::Coincidences)
                .unwrap();
        assert_abs_diff_eq!(summary.visibility, 1.0, epsilon = 1e-9);
        let fwhm = summary.fwhm.unwrap();
        assert!((fwhm - 4.3).abs() < 0.1, "fwhm = {fwhm}");
    }

    #[test]
    fn hom_quadrature_matches_closed_form() {
        let jsa = jsa_179();
        let delays = DelayGrid::new(-10.0, 15.0, 2001).unwrap();
        let cf = hom_semi_nonlinear(&jsa, &delays, Evaluation::ClosedForm).unwrap();
        let q = hom_semi_nonlinear(&jsa, &delays, Evaluation::quadrature()).unwrap();
        let max_diff = cf
            .coincidences()
            .iter()
            .zip(q.coincidences())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        assert!(max_diff < 1e-6, "max diff {max_diff}");
    }

    #[test]
    fn two_stage_jsa_identities() {
        let jsa = jsa_179();
        let grid = jsa.default_grid(2049).unwrap();
        let phi = 0.7;
        let omega_s0 = 40.0;
        let dt = 1.3;
        let single = jsa.sampled_amplitude(&grid).unwrap();
        let combined = build_two_stage_jsa(&jsa, phi, omega_s0, dt, &grid).unwrap();
        // |φ_N|² = |φ|²·2(1 + cos θ) pointwise.
        let slope = dt - 2.0 * jsa.walkoff();
        let offset = dt * omega_s0 + phi;
        for ((c, s), w) in combined.values().iter().zip(single.values()).zip(grid.samples()) {
            let expected = s.norm_sqr() * 2.0 * (1.0 + (slope * w + offset).cos());
            assert_abs_diff_eq!(c.norm_sqr(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_stage_jsa_full_destructive_interference() {
        // Φ = π with zero walk-off and zero delay: φ_N ≡ 0.
        let jsa = EffectiveJsa::new(0.3, 0.0).unwrap();
        let grid = jsa.default_grid(1025).unwrap();
        let combined =
            build_two_stage_jsa(&jsa, std::f64::consts::PI, 40.0, 0.0, &grid).unwrap();
        for v in combined.values() {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn two_stage_jsa_integral_reproduces_count_rate() {
        // (1/4)∫|φ_N|²dΩ equals the closed form of the count rate.
        let jsa = jsa_179();
        let grid = jsa.default_grid(4097).unwrap();
        let omega_s0 = 40.0;
        let phi = 1.1;
        let delays = DelayGrid::centered(2.0 * jsa.walkoff(), 3.0, 401).unwrap();
        let cf = nonlinear_su11(
            &jsa,
            phi,
            omega_s0,
            &delays,
            Evaluation::ClosedForm,
            TraceMode::FringeResolved,
        )
        .unwrap();
        for (i, t) in delays.samples().enumerate() {
            let combined = build_two_stage_jsa(&jsa, phi, omega_s0, t, &grid).unwrap();
            let count = 0.25
                * integrate(&combined.intensity(), grid.spacing()).unwrap();
            assert!(
                (count - cf.coincidences()[i]).abs() < 1e-6,
                "t={t}: {count} vs {}",
                cf.coincidences()[i]
            );
        }
    }

    #[test]
    fn ni_channels_are_bit_identical() {
        let jsa = jsa_179();
        let delays = DelayGrid::centered(4.4, 2.0, 2001).unwrap();
        let tr = nonlinear_su11(
            &jsa,
            0.0,
            40.0,
            &delays,
            Evaluation::quadrature(),
            TraceMode::FringeResolved,
        )
        .unwrap();
        assert_eq!(tr.singles_a(), tr.singles_b());
        assert_eq!(tr.singles_a(), tr.coincidences());
    }

    #[test]
    fn ni_quadrature_matches_closed_form() {
        let jsa = jsa_179();
        let delays = DelayGrid::new(-6.0, 14.0, 2001).unwrap();
        let cf = nonlinear_su11(
            &jsa,
            0.4,
            40.0,
            &delays,
            Evaluation::ClosedForm,
            TraceMode::FringeResolved,
        )
        .unwrap();
        let q = nonlinear_su11(
            &jsa,
            0.4,
            40.0,
            &delays,
            Evaluation::quadrature(),
            TraceMode::FringeResolved,
        )
        .unwrap();
        let max_diff = cf
            .coincidences()
            .iter()
            .zip(q.coincidences())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        assert!(max_diff < 1e-6, "max diff {max_diff}");
    }

    #[test]
    fn ni_perfect_interference_at_envelope_peak() {
        let jsa = jsa_179();
        let omega_s0 = 40.0;
        let peak = 2.0 * jsa.walkoff();
        let delays = DelayGrid::new(peak - 0.001, peak + 0.001, 3).unwrap();
        // Φ chosen so the total phase vanishes at the peak sample.
        let phi_constructive = (-omega_s0 * peak).rem_euclid(TAU);
        let tr = nonlinear_su11(
            &jsa,
            phi_constructive,
            omega_s0,
            &delays,
            Evaluation::ClosedForm,
            TraceMode::EnvelopeOnly,
        )
        .unwrap();
        assert_abs_diff_eq!(tr.coincidences()[1], 1.0, epsilon = 1e-9);

        // Φ shifted by π turns the same sample into full destructive
        // interference.
        let kappa = jsa.kappa();
        let h = |t: f64| {
            let d = t - peak;
            (-d * d / (8.0 * kappa * kappa)).exp()
        };
        let destructive =
            0.5 + 0.5 * h(peak) * (omega_s0 * peak + phi_constructive + std::f64::consts::PI).cos();
        assert_abs_diff_eq!(destructive, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn ni_envelope_offset_and_fwhm() {
        let jsa = EffectiveJsa::new(0.5 / 1.79, 2.25).unwrap();
        // Wide grid: the baseline estimate of the summary is the sample
        // median, which needs the envelope tails to dominate the window.
        let delays = DelayGrid::centered(4.5, 40.0, 4001).unwrap();
        let tr = nonlinear_su11(
            &jsa,
            0.0,
            1212.2,
            &delays,
            Evaluation::ClosedForm,
            TraceMode::EnvelopeOnly,
        )
        .unwrap();
        let s = crate::coherence::summarize_trace(&tr, crate::coherence::Channel::SinglesA)
            .unwrap();
        assert_abs_diff_eq!(s.extremum_position, 4.5, epsilon = delays.spacing());
        let fwhm = s.fwhm.unwrap();
        assert!((fwhm - 8.6).abs() < 0.2, "fwhm = {fwhm}");
    }

    #[test]
    fn trace_validation() {
        assert!(InterferogramTrace::new(vec![0.0, 1.0], vec![0.5, 0.5], vec![0.5], vec![0.0, 0.0])
            .is_err());
        assert!(InterferogramTrace::new(
            vec![0.0, 1.0],
            vec![0.5, 1.5],
            vec![0.5, 0.5],
            vec![0.0, 0.0]
        )
        .is_err());
    }
}
