//! Numerical evaluation of plane-wave and vortex (Laguerre-Gauss) atomic
//! form factors for elastic photon scattering on atomic hydrogen.
//!
//! The pieces, bottom to top:
//!
//! - [`special`]: associated Laguerre polynomials, spherical harmonics and
//!   hydrogen radial functions;
//! - [`geometry`]: the rotation expressing the final (scattered) spherical
//!   basis in the initial one;
//! - [`modes`]: Laguerre-Gauss mode profiles and beam parameters;
//! - [`states`]: full hydrogen bound-state wavefunctions and labels;
//! - [`cubature`]: a globally adaptive Genz-Malik cubature engine over
//!   3-D boxes with complex integrands;
//! - [`amplitudes`]: the form factors, cross sections and twist factor;
//! - [`sweep`]: parameter sweeps, CSV output and the predefined figure
//!   reproductions.
//!
//! All internal lengths are Bohr radii (`modes::BOHR_RADIUS_NM`); public
//! constructors take nanometres where noted.

pub mod amplitudes;
pub mod cubature;
pub mod geometry;
pub mod modes;
pub mod special;
pub mod states;
pub mod sweep;

pub use amplitudes::{
    cross_section, default_divergence_floor, full_amplitude, plane_form_factor, twist_factor,
    vortex_form_factor, AmplitudeError, AmplitudeOutput, ScatteringConfig, TwistFactor,
    CLASSICAL_ELECTRON_RADIUS_M,
};
pub use cubature::{integrate, Box3, CubatureError, IntegratorConfig, Point3, QuadResult};
pub use geometry::{cylindrical_of, rotate_frame, Direction, GeometryError, ScatteringAngle};
pub use modes::{beam_waist, lg_mode, LGMode, ModeError, PhotonParams, BOHR_RADIUS_NM};
pub use special::{
    assoc_laguerre, hydrogen_radial, spherical_harmonic, RadialIndex, SpecialFnError,
};
pub use states::{default_final_m, eval_state, parse_state_label, BoundState, StateError};
pub use sweep::{
    emit_csv, figure_preset, parse_csv, run_point, run_sweep, FigureId, SweepAxis, SweepError,
    SweepRow, SweepScale, SweepSpec,
};
