//! Singles and coincidence count-rate interferograms for two-mode
//! interferometers spanning the linear to nonlinear range: the single-photon
//! Mach-Zehnder, NOON-state photon-pair interference, the semi-nonlinear
//! Hong-Ou-Mandel configuration, and the SU(1,1) nonlinear interferometer.
//!
//! Each model carries both a closed-form evaluation and an independent
//! quadrature route through the underlying spectral integral, plus trace
//! analysis (visibility, envelope FWHM, fringe period) and the calibration
//! procedures of a folded-geometry setup.

pub mod calibration;
pub mod cli;
pub mod coherence;
pub mod config;
mod error;
pub mod interferometers;
pub mod numerics;
pub mod spectra;

pub use error::{Error, Result};
