//! Laguerre-Gauss mode profiles and twisted-photon beam parameters.
//!
//! All lengths inside the library are in Bohr radii; the nm constructors
//! convert at the boundary. The integrands mix atomic-scale wavefunctions
//! with optical-scale beam parameters, and a single unit system keeps that
//! mix honest.

use crate::special::{assoc_laguerre, ln_factorial};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2, TAU};
use thiserror::Error;

/// Bohr radius in nanometres, the internal length unit.
pub const BOHR_RADIUS_NM: f64 = 0.052917721;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ModeError {
    #[error("wavelength must be positive and finite, got {0}")]
    InvalidWavelength(f64),
    #[error("Rayleigh range must be positive and finite, got {0}")]
    InvalidRayleighRange(f64),
}

/// Photon parameters (λ, z_R) of a twisted beam, stored in Bohr radii with
/// the angular wavenumber k = 2π/λ cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonParams {
    wavelength: f64,
    rayleigh_range: f64,
    k: f64,
}

impl PhotonParams {
    /// Construct from lengths in nanometres.
    pub fn from_nm(wavelength_nm: f64, rayleigh_range_nm: f64) -> Result<Self, ModeError> {
        Self::from_bohr(
            wavelength_nm / BOHR_RADIUS_NM,
            rayleigh_range_nm / BOHR_RADIUS_NM,
        )
    }

    /// Construct from lengths already in Bohr radii.
    pub fn from_bohr(wavelength: f64, rayleigh_range: f64) -> Result<Self, ModeError> {
        if !wavelength.is_finite() || wavelength <= 0.0 {
            return Err(ModeError::InvalidWavelength(wavelength));
        }
        if !rayleigh_range.is_finite() || rayleigh_range <= 0.0 {
            return Err(ModeError::InvalidRayleighRange(rayleigh_range));
        }
        Ok(Self {
            wavelength,
            rayleigh_range,
            k: TAU / wavelength,
        })
    }

    pub fn wavelength_bohr(&self) -> f64 {
        self.wavelength
    }

    pub fn rayleigh_range_bohr(&self) -> f64 {
        self.rayleigh_range
    }

    pub fn wavelength_nm(&self) -> f64 {
        self.wavelength * BOHR_RADIUS_NM
    }

    pub fn rayleigh_range_nm(&self) -> f64 {
        self.rayleigh_range * BOHR_RADIUS_NM
    }

    /// Angular wavenumber 2π/λ in inverse Bohr radii.
    pub fn wavenumber_bohr(&self) -> f64 {
        self.k
    }
}

/// A Laguerre-Gauss mode: radial index p, orbital angular momentum index l,
/// and the photon parameters it propagates with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LGMode {
    p: u32,
    l: i32,
    photon: PhotonParams,
    /// sqrt(2 p! / (π (p+|l|)!)), formed in log space.
    norm: f64,
}

impl LGMode {
    pub fn new(p: u32, l: i32, photon: PhotonParams) -> Self {
        let ln_norm = 0.5
            * (2.0_f64.ln() + ln_factorial(p) - PI.ln() - ln_factorial(p + l.unsigned_abs()));
        Self {
            p,
            l,
            photon,
            norm: ln_norm.exp(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn l(&self) -> i32 {
        self.l
    }

    pub fn photon(&self) -> &PhotonParams {
        &self.photon
    }
}

/// Beam radius w(z) = sqrt(λ z_R/π (1 + z²/z_R²)), the radius at which the
/// intensity has fallen to 1/e² of its axial maximum. Lengths in Bohr radii.
pub fn beam_waist(photon: &PhotonParams, z: f64) -> f64 {
    let zr = photon.rayleigh_range;
    let ratio = z / zr;
    (photon.wavelength * zr / PI * (1.0 + ratio * ratio)).sqrt()
}

/// Laguerre-Gauss profile factor u_{p,l}(ρ, z, φ) in cylindrical
/// coordinates about the beam axis, units of inverse length (Bohr⁻¹).
///
/// Includes all five factors: the normalized amplitude with its
/// (ρ√2/w)^|l| vortex core and Gaussian envelope, the associated Laguerre
/// modulation, the helical phase e^{ilφ}, the wavefront-curvature phase
/// e^{ikρ²z/2(z²+z_R²)}, and the Gouy phase e^{-i(2p+|l|+1) arctan(z/z_R)}.
pub fn lg_mode(mode: &LGMode, rho: f64, z: f64, phi: f64) -> Complex64 {
    let zr = mode.photon.rayleigh_range;
    let w = beam_waist(&mode.photon, z);
    let l_abs = mode.l.unsigned_abs();
    let s = rho * SQRT_2 / w;
    let t = s * s; // 2ρ²/w²
    let radial =
        mode.norm / w * s.powi(l_abs as i32) * (-0.5 * t).exp() * assoc_laguerre(mode.p, l_abs, t);
    let gouy = f64::from(2 * mode.p + l_abs + 1) * (z / zr).atan();
    let curvature = mode.photon.k * rho * rho * z / (2.0 * (z * z + zr * zr));
    let phase = f64::from(mode.l) * phi + curvature - gouy;
    let (sin_ph, cos_ph) = phase.sin_cos();
    Complex64::new(radial * cos_ph, radial * sin_ph)
}
