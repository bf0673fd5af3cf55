//! Hydrogen bound states: quantum-number bookkeeping, full wavefunction
//! evaluation R_{nl}(r) Y_l^m(θ, φ), and the spectroscopic labels the CLI
//! accepts ("1s", "3d", ...).

use crate::geometry::Direction;
use crate::special::{radial_nl, spherical_harmonic_trig, RadialIndex};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("invalid quantum numbers (n = {n}, l = {l}, m = {m})")]
    InvalidQuantumNumbers { n: u32, l: u32, m: i32 },
    #[error("malformed state label {0:?}: expected a principal number followed by one of s, p, d, f")]
    MalformedLabel(String),
}

/// A hydrogen bound state |n, l, m>. Valid by construction:
/// n >= 1, 0 <= l <= n-1, |m| <= l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundState {
    n: u32,
    l: u32,
    m: i32,
}

impl BoundState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self, StateError> {
        if n < 1 || l >= n || m.unsigned_abs() > l {
            return Err(StateError::InvalidQuantumNumbers { n, l, m });
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn radial_index(&self) -> RadialIndex {
        // Constructor invariants are a superset of RadialIndex's.
        RadialIndex::new(self.n, self.l).expect("BoundState invariants imply a valid RadialIndex")
    }

    /// Spectroscopic label such as "3d" (magnetic number not included).
    pub fn label(&self) -> String {
        let letter = match self.l {
            0 => 's',
            1 => 'p',
            2 => 'd',
            3 => 'f',
            _ => '?',
        };
        format!("{}{}", self.n, letter)
    }

    /// The wavefunction at distance `r` (Bohr radii) along `d`, in units
    /// of Bohr^(-3/2).
    pub fn eval(&self, r: f64, d: Direction) -> Complex64 {
        let (sin_t, cos_t) = d.theta().sin_cos();
        self.eval_trig(r, cos_t, sin_t, d.phi())
    }

    /// Same as [`BoundState::eval`], but from precomputed cosθ/sinθ. Used
    /// by the amplitude integrands, which already hold the trig values.
    pub(crate) fn eval_trig(&self, r: f64, cos_t: f64, sin_t: f64, phi: f64) -> Complex64 {
        radial_nl(self.n, self.l, r) * spherical_harmonic_trig(self.l, self.m, cos_t, sin_t, phi)
    }
}

/// Evaluate φ_{n,l,m}(r, θ, φ) = R_{nl}(r) Y_l^m(θ, φ).
pub fn eval_state(s: &BoundState, r: f64, d: Direction) -> Complex64 {
    s.eval(r, d)
}

/// Parse a spectroscopic label ("1s", "3d", ...) with an explicitly
/// supplied magnetic quantum number.
pub fn parse_state_label(label: &str, m: i32) -> Result<BoundState, StateError> {
    let malformed = || StateError::MalformedLabel(label.to_string());
    let label = label.trim();
    if label.len() < 2 {
        return Err(malformed());
    }
    let (digits, letter) = label.split_at(label.len() - 1);
    let n: u32 = digits.parse().map_err(|_| malformed())?;
    let l = match letter {
        "s" => 0,
        "p" => 1,
        "d" => 2,
        "f" => 3,
        _ => return Err(malformed()),
    };
    BoundState::new(n, l, m)
}

/// Default magnetic quantum number of the final state when the caller
/// does not supply one: m_f = m_i + (l_in - l_out), i.e. the photon's
/// orbital angular momentum change is absorbed by the electron, conserving
/// the projection along the initial beam axis.
pub fn default_final_m(initial_m: i32, l_in: i32, l_out: i32) -> i32 {
    initial_m + l_in - l_out
}
