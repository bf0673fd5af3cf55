//! Assembly of the scattering amplitudes: the plane-wave atomic form
//! factor, the vortex (Laguerre-Gauss) form factor, the differential
//! cross sections derived from them, and the twist factor comparing the
//! two.
//!
//! Everything is integrated in the initial spherical basis. The final
//! electronic state and the outgoing mode live in the frame rotated by
//! the scattering angle; the rotation happens point by point inside the
//! integrand.

use crate::cubature::{integrate, Box3, CubatureError, IntegratorConfig, Point3, QuadResult};
use crate::geometry::{rotate_trig, ScatteringAngle};
use crate::modes::{lg_mode, LGMode};
use crate::states::BoundState;
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Classical electron radius in metres; sets the cross-section scale.
pub const CLASSICAL_ELECTRON_RADIUS_M: f64 = 2.818e-15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmplitudeError {
    #[error("incoming and outgoing modes carry different photon parameters (elastic scattering requires equal λ and z_R)")]
    MismatchedPhotons,
    #[error("polarization overlap {0} outside [0, 1]")]
    InvalidPolarizationOverlap(f64),
    #[error("r_max_factor must be positive and finite, got {0}")]
    InvalidRadialCutoff(f64),
    #[error(transparent)]
    Cubature(#[from] CubatureError),
}

/// A complete elastic-scattering problem: electronic transition, photon
/// modes, scattering angle, polarization overlap, and integration
/// controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringConfig {
    pub initial_state: BoundState,
    pub final_state: BoundState,
    pub mode_in: LGMode,
    pub mode_out: LGMode,
    pub theta: ScatteringAngle,
    /// |Λ̂_i · Λ̂_f|², the polarization overlap entering the cross section.
    pub polarization_overlap: f64,
    pub integrator: IntegratorConfig,
    /// Radial truncation control: the integration box extends to
    /// `r_max_factor * max(n_i, n_f)` Bohr radii.
    pub r_max_factor: f64,
}

impl ScatteringConfig {
    pub fn new(
        initial_state: BoundState,
        final_state: BoundState,
        mode_in: LGMode,
        mode_out: LGMode,
        theta: ScatteringAngle,
    ) -> Result<Self, AmplitudeError> {
        let cfg = Self {
            initial_state,
            final_state,
            mode_in,
            mode_out,
            theta,
            polarization_overlap: 1.0,
            integrator: IntegratorConfig::default(),
            r_max_factor: 30.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), AmplitudeError> {
        if self.mode_in.photon() != self.mode_out.photon() {
            return Err(AmplitudeError::MismatchedPhotons);
        }
        if !(0.0..=1.0).contains(&self.polarization_overlap) {
            return Err(AmplitudeError::InvalidPolarizationOverlap(
                self.polarization_overlap,
            ));
        }
        if !self.r_max_factor.is_finite() || self.r_max_factor <= 0.0 {
            return Err(AmplitudeError::InvalidRadialCutoff(self.r_max_factor));
        }
        Ok(())
    }

    /// Radial truncation in Bohr radii. The wavefunction envelope decays
    /// as e^{-r/n}, so 30 n suppresses the density below ~1e-13.
    pub fn r_max(&self) -> f64 {
        let n_max = self.initial_state.n().max(self.final_state.n());
        self.r_max_factor * f64::from(n_max)
    }

    fn integration_box(&self) -> Box3 {
        Box3::new([0.0, 0.0, 0.0], [self.r_max(), std::f64::consts::PI, TAU])
            .expect("r_max > 0 makes a valid box")
    }
}

/// Shared ingredients of both integrands.
struct IntegrandCtx {
    initial: BoundState,
    final_conj: BoundState,
    k: f64,
    cos_big: f64,
    sin_big: f64,
}

impl IntegrandCtx {
    fn new(cfg: &ScatteringConfig) -> Self {
        let (sin_big, cos_big) = cfg.theta.radians().sin_cos();
        Self {
            initial: cfg.initial_state,
            final_conj: cfg.final_state,
            k: cfg.mode_in.photon().wavenumber_bohr(),
            cos_big,
            sin_big,
        }
    }
}

/// Plane-wave atomic form factor
/// M = ∫ φ_f*(r,θ',φ') e^{ikr(cosθ - cosθ')} φ_i(r,θ,φ) r² sinθ dr dθ dφ
/// with (θ', φ') the direction of the point in the rotated frame.
pub fn plane_form_factor(
    cfg: &ScatteringConfig,
) -> Result<(Complex64, QuadResult), AmplitudeError> {
    cfg.validate()?;
    let ctx = IntegrandCtx::new(cfg);
    let quad = integrate(
        move |p: Point3| plane_integrand(&ctx, p),
        cfg.integration_box(),
        cfg.integrator,
    )?;
    Ok((quad.value, quad))
}

fn plane_integrand(ctx: &IntegrandCtx, p: Point3) -> Complex64 {
    let [r, theta, phi] = p;
    let (sin_t, cos_t) = theta.sin_cos();
    let rot = rotate_trig(cos_t, sin_t, phi, ctx.cos_big, ctx.sin_big);

    let psi_i = ctx.initial.eval_trig(r, cos_t, sin_t, phi);
    let psi_f = ctx
        .final_conj
        .eval_trig(r, rot.cos_theta, rot.sin_theta, rot.phi);

    let (sin_ph, cos_ph) = (ctx.k * r * (cos_t - rot.cos_theta)).sin_cos();
    let plane_phase = Complex64::new(cos_ph, sin_ph);

    psi_f.conj() * psi_i * plane_phase * (r * r * sin_t)
}

/// Vortex atomic form factor
/// M_v = (λ z_R / 2) ∫ φ_f* u_f*(ρ',z',φ') e^{ikr(cosθ - cosθ')}
///        u_i(ρ,z,φ) φ_i r² sinθ dr dθ dφ,
/// where (ρ,z) = (r sinθ, r cosθ) and primed coordinates follow the
/// rotated frame. The ½λz_R prefactor makes M_v dimensionless and is
/// folded into the integrand so the tolerances act on M_v itself.
pub fn vortex_form_factor(
    cfg: &ScatteringConfig,
) -> Result<(Complex64, QuadResult), AmplitudeError> {
    cfg.validate()?;
    let ctx = IntegrandCtx::new(cfg);
    let mode_in = cfg.mode_in;
    let mode_out = cfg.mode_out;
    let photon = cfg.mode_in.photon();
    let prefactor = 0.5 * photon.wavelength_bohr() * photon.rayleigh_range_bohr();
    let quad = integrate(
        move |p: Point3| {
            let [r, theta, phi] = p;
            let (sin_t, cos_t) = theta.sin_cos();
            let rot = rotate_trig(cos_t, sin_t, phi, ctx.cos_big, ctx.sin_big);

            let psi_i = ctx.initial.eval_trig(r, cos_t, sin_t, phi);
            let psi_f = ctx
                .final_conj
                .eval_trig(r, rot.cos_theta, rot.sin_theta, rot.phi);

            let u_in = lg_mode(&mode_in, r * sin_t, r * cos_t, phi);
            let u_out = lg_mode(&mode_out, r * rot.sin_theta, r * rot.cos_theta, rot.phi);

            let (sin_ph, cos_ph) = (ctx.k * r * (cos_t - rot.cos_theta)).sin_cos();
            let plane_phase = Complex64::new(cos_ph, sin_ph);

            psi_f.conj() * u_out.conj() * u_in * psi_i * plane_phase
                * (prefactor * r * r * sin_t)
        },
        cfg.integration_box(),
        cfg.integrator,
    )?;
    Ok((quad.value, quad))
}

/// Differential cross section dσ/dΩ in m²/sr from a squared form factor:
/// |M|² (ω_f/ω_i) r₀² |Λ̂_i·Λ̂_f|², with ω_f/ω_i = 1 for elastic
/// scattering. The relativistic Klein-Nishina correction is not applied.
pub fn cross_section(form_factor_sq: f64, polarization_overlap: f64) -> f64 {
    form_factor_sq
        * CLASSICAL_ELECTRON_RADIUS_M
        * CLASSICAL_ELECTRON_RADIUS_M
        * polarization_overlap
}

/// The twist factor T_v = (|M_v|² - |M|²)/|M|², or its divergence marker
/// when |M|² sits below the noise floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwistFactor {
    Finite(f64),
    Divergent,
}

impl TwistFactor {
    pub fn finite(&self) -> Option<f64> {
        match self {
            TwistFactor::Finite(v) => Some(*v),
            TwistFactor::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, TwistFactor::Divergent)
    }
}

/// Compute T_v with an explicit divergence floor on |M|². Divergence is a
/// reportable value, not an error: a parity-blocked plane-wave amplitude
/// makes the ratio genuinely blow up.
pub fn twist_factor(vortex: Complex64, plane: Complex64, floor: f64) -> TwistFactor {
    let plane_sq = plane.norm_sqr();
    if plane_sq >= floor {
        TwistFactor::Finite((vortex.norm_sqr() - plane_sq) / plane_sq)
    } else {
        TwistFactor::Divergent
    }
}

/// Default divergence floor on |M|²: an order of magnitude above the
/// square of the quadrature error estimate, so that quadrature noise
/// around a true parity zero is never mistaken for a finite amplitude,
/// while any |M| resolved well above its own error estimate stays finite.
/// The tiny absolute clamp only guards the error-free case.
pub fn default_divergence_floor(error_est_plane: f64) -> f64 {
    (10.0 * error_est_plane * error_est_plane).max(1e-300)
}

/// Both form factors with their diagnostics, the derived cross sections
/// and the twist factor, from one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeOutput {
    pub plane: Complex64,
    pub vortex: Complex64,
    pub plane_quad: QuadResult,
    pub vortex_quad: QuadResult,
    /// dσ/dΩ for the plane-wave form factor, m²/sr.
    pub dsigma_pw: f64,
    /// dσ/dΩ for the vortex form factor, m²/sr.
    pub dsigma_v: f64,
    pub twist: TwistFactor,
}

/// Evaluate the full amplitude set for one configuration. The two
/// integrations are independent; non-convergence of either is reported in
/// its own QuadResult.
pub fn full_amplitude(cfg: &ScatteringConfig) -> Result<AmplitudeOutput, AmplitudeError> {
    let (plane, plane_quad) = plane_form_factor(cfg)?;
    let (vortex, vortex_quad) = vortex_form_factor(cfg)?;
    let twist = twist_factor(
        vortex,
        plane,
        default_divergence_floor(plane_quad.error_est),
    );
    Ok(AmplitudeOutput {
        plane,
        vortex,
        plane_quad,
        vortex_quad,
        dsigma_pw: cross_section(plane.norm_sqr(), cfg.polarization_overlap),
        dsigma_v: cross_section(vortex.norm_sqr(), cfg.polarization_overlap),
        twist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::PhotonParams;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn config(
        lambda_nm: f64,
        zr_nm: f64,
        initial: (u32, u32, i32),
        fin: (u32, u32, i32),
        l_in: i32,
        l_out: i32,
        theta: f64,
    ) -> ScatteringConfig {
        let photon = PhotonParams::from_nm(lambda_nm, zr_nm).unwrap();
        ScatteringConfig::new(
            BoundState::new(initial.0, initial.1, initial.2).unwrap(),
            BoundState::new(fin.0, fin.1, fin.2).unwrap(),
            LGMode::new(0, l_in, photon),
            LGMode::new(0, l_out, photon),
            ScatteringAngle::new(theta).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn elastic_forward_identity_transition_is_unity() {
        // 1s -> 1s at Θ = 0: the phases cancel and M is the norm of the
        // ground state.
        let cfg = config(550.0, 1000.0, (1, 0, 0), (1, 0, 0), 0, 0, 0.0);
        let (m, quad) = plane_form_factor(&cfg).unwrap();
        assert!(quad.converged);
        assert_relative_eq!(m.re, 1.0, max_relative = 1e-8);
        assert_abs_diff_eq!(m.im, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn forward_scattering_blocked_between_orthogonal_states() {
        let cfg = config(550.0, 1000.0, (1, 0, 0), (3, 2, 2), 1, -1, 0.0);
        let (m, quad) = plane_form_factor(&cfg).unwrap();
        assert!(quad.converged);
        assert!(m.norm() < 1e-10, "|M| = {}", m.norm());
    }

    #[test]
    fn cross_section_scale() {
        assert_relative_eq!(cross_section(1.0, 1.0), 7.941124e-30, max_relative = 1e-12);
        assert_eq!(cross_section(3.7, 0.0), 0.0);
        assert_eq!(cross_section(0.0, 1.0), 0.0);
    }

    #[test]
    fn twist_factor_values() {
        let unit = Complex64::new(1.0, 0.0);
        let sqrt2 = Complex64::new(2.0_f64.sqrt(), 0.0);
        assert_eq!(twist_factor(unit, unit, 1e-12), TwistFactor::Finite(0.0));
        match twist_factor(sqrt2, unit, 1e-12) {
            TwistFactor::Finite(t) => assert_relative_eq!(t, 1.0, max_relative = 1e-14),
            TwistFactor::Divergent => panic!("unexpected divergence"),
        }
        assert!(twist_factor(unit, Complex64::new(1e-9, 0.0), 1e-12).is_divergent());
    }

    #[test]
    fn default_floor_scales_with_error() {
        assert_relative_eq!(
            default_divergence_floor(1e-3),
            1e-5,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            default_divergence_floor(1e-10),
            1e-19,
            max_relative = 1e-12
        );
        // Error-free runs still get a positive floor.
        assert!(default_divergence_floor(0.0) > 0.0);
    }

    #[test]
    fn polarization_zero_kills_cross_sections_only() {
        let mut cfg = config(550.0, 1000.0, (1, 0, 0), (1, 0, 0), 0, 0, 0.3);
        cfg.polarization_overlap = 0.0;
        cfg.integrator.rel_tol = 1e-5;
        let out = full_amplitude(&cfg).unwrap();
        assert_eq!(out.dsigma_pw, 0.0);
        assert_eq!(out.dsigma_v, 0.0);
        assert!(out.plane.norm() > 0.1);
        assert!(out.vortex.norm() > 0.1);
    }

    #[test]
    fn config_validation_rejects_mismatched_photons() {
        let a = PhotonParams::from_nm(550.0, 1000.0).unwrap();
        let b = PhotonParams::from_nm(551.0, 1000.0).unwrap();
        let err = ScatteringConfig::new(
            BoundState::new(1, 0, 0).unwrap(),
            BoundState::new(1, 0, 0).unwrap(),
            LGMode::new(0, 0, a),
            LGMode::new(0, 0, b),
            ScatteringAngle::new(0.0).unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, AmplitudeError::MismatchedPhotons);
    }

    #[test]
    fn config_validation_rejects_bad_polarization_and_cutoff() {
        let mut cfg = config(550.0, 1000.0, (1, 0, 0), (1, 0, 0), 0, 0, 0.0);
        cfg.polarization_overlap = 1.5;
        assert!(matches!(
            cfg.validate(),
            Err(AmplitudeError::InvalidPolarizationOverlap(_))
        ));
        cfg.polarization_overlap = 1.0;
        cfg.r_max_factor = 0.0;
        assert!(matches!(
            cfg.validate(),
            Err(AmplitudeError::InvalidRadialCutoff(_))
        ));
    }

    #[test]
    fn r_max_uses_largest_principal_number() {
        let cfg = config(550.0, 1000.0, (1, 0, 0), (3, 2, 2), 1, -1, 0.0);
        assert_eq!(cfg.r_max(), 90.0);
    }
}
