//! Coordinate handling for the two spherical bases of the scattering
//! problem: the initial frame (θ, φ) and the final frame (θ', φ') rotated
//! about the x-axis by the scattering angle Θ.

use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("polar angle {0} outside [0, π]")]
    PolarOutOfRange(f64),
    #[error("scattering angle {0} outside [-π, π]")]
    ScatteringAngleOutOfRange(f64),
}

/// A direction on the unit sphere. The polar angle lies in [0, π] and the
/// azimuth is normalized into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self, GeometryError> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(GeometryError::PolarOutOfRange(theta));
        }
        Ok(Self {
            theta,
            phi: normalize_azimuth(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

fn normalize_azimuth(phi: f64) -> f64 {
    let mut p = phi % TAU;
    if p < 0.0 {
        p += TAU;
    }
    // Values just below zero wrap to exactly 2π after the shift.
    if p >= TAU {
        p = 0.0;
    }
    p
}

/// Scattering angle Θ between the incoming and outgoing beam axes.
///
/// Physical configurations use [0, π]. Negative values are accepted and
/// select the opposite rotation sense, which is useful for checking that
/// both senses produce the same observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAngle {
    radians: f64,
}

impl ScatteringAngle {
    pub fn new(radians: f64) -> Result<Self, GeometryError> {
        if !radians.is_finite() || radians.abs() > PI {
            return Err(GeometryError::ScatteringAngleOutOfRange(radians));
        }
        Ok(Self { radians })
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    /// The same angle with the rotation sense flipped.
    pub fn reversed(&self) -> Self {
        Self {
            radians: -self.radians,
        }
    }
}

/// Trigonometric image of a direction after the frame rotation, in the
/// form the integrands consume directly (no inverse trig round-trips).
#[derive(Debug, Clone, Copy)]
pub(crate) struct RotatedTrig {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub phi: f64,
}

/// Core of the frame rotation, shared by [`rotate_frame`] and the
/// amplitude integrands so that both use identical arithmetic.
///
/// The rotation is about the x-axis, taking +y toward +z, applied to the
/// Cartesian image of the direction. This is algebraically equivalent to
/// composing the single-argument arctangent form of the transformation but
/// keeps full quadrant information everywhere.
pub(crate) fn rotate_trig(
    cos_t: f64,
    sin_t: f64,
    phi: f64,
    cos_big: f64,
    sin_big: f64,
) -> RotatedTrig {
    let (sin_p, cos_p) = phi.sin_cos();
    let x = sin_t * cos_p;
    let y = sin_t * sin_p;
    let z = cos_t;
    let y_r = y * cos_big - z * sin_big;
    let z_r = y * sin_big + z * cos_big;
    // sinθ' from the in-plane components is accurate near the poles where
    // sqrt(1 - cos²) loses digits.
    let sin_theta = (x * x + y_r * y_r).sqrt().min(1.0);
    let cos_theta = z_r.clamp(-1.0, 1.0);
    let phi_r = if y_r == 0.0 && x == 0.0 {
        0.0
    } else {
        normalize_azimuth(y_r.atan2(x))
    };
    RotatedTrig {
        cos_theta,
        sin_theta,
        phi: phi_r,
    }
}

/// Express direction `d` in the frame rotated about the x-axis by `angle`
/// (positive y rotated toward positive z).
///
/// When the rotated point lands on the polar axis the azimuth is fixed by
/// the two-argument arctangent convention with atan2(0, 0) = 0.
pub fn rotate_frame(d: Direction, angle: ScatteringAngle) -> Direction {
    let (sin_t, cos_t) = d.theta.sin_cos();
    let (sin_b, cos_b) = angle.radians.sin_cos();
    let rt = rotate_trig(cos_t, sin_t, d.phi, cos_b, sin_b);
    Direction {
        theta: rt.sin_theta.atan2(rt.cos_theta),
        phi: rt.phi,
    }
}

/// Cylindrical coordinates (ρ, z) of the point at distance `r` along `d`:
/// ρ = r sinθ, z = r cosθ.
pub fn cylindrical_of(d: Direction, r: f64) -> (f64, f64) {
    let (sin_t, cos_t) = d.theta.sin_cos();
    (r * sin_t, r * cos_t)
}
