//! Special functions entering the scattering integrands: associated
//! Laguerre polynomials, spherical harmonics, and hydrogen bound-state
//! radial functions (Z = 1, lengths in Bohr radii).

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SpecialFnError {
    #[error("spherical harmonic order m = {m} exceeds degree l = {l}")]
    OrderExceedsDegree { l: u32, m: i32 },
    #[error("invalid radial quantum numbers (n = {n}, l = {l}): need n >= 1 and l < n")]
    InvalidRadialIndex { n: u32, l: u32 },
}

/// Radial quantum numbers (n, l) of a hydrogen bound state.
///
/// Valid by construction: `n >= 1` and `0 <= l <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RadialIndex {
    n: u32,
    l: u32,
}

impl RadialIndex {
    pub fn new(n: u32, l: u32) -> Result<Self, SpecialFnError> {
        if n < 1 || l >= n {
            return Err(SpecialFnError::InvalidRadialIndex { n, l });
        }
        Ok(Self { n, l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }
}

/// ln(n!) by direct log summation. Exact enough (~1e-15 relative) for the
/// factorial ratios appearing in mode and radial normalizations, and does
/// not overflow where `n!` itself would.
pub(crate) fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// Associated Laguerre polynomial `L_p^a(x)`.
///
/// Uses the upward three-term recurrence in `p`, which stays stable at
/// moderate degree where the factorial series expansion cancels badly.
pub fn assoc_laguerre(p: u32, a: u32, x: f64) -> f64 {
    let a = f64::from(a);
    let mut prev = 1.0; // L_0
    if p == 0 {
        return prev;
    }
    let mut curr = 1.0 + a - x; // L_1
    for k in 1..p {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * curr - (kf + a) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Spherical harmonic `Y_l^m(θ, φ)` with the Condon-Shortley phase,
/// normalized so that the harmonics are orthonormal on the sphere.
pub fn spherical_harmonic(
    l: u32,
    m: i32,
    theta: f64,
    phi: f64,
) -> Result<Complex64, SpecialFnError> {
    if m.unsigned_abs() > l {
        return Err(SpecialFnError::OrderExceedsDegree { l, m });
    }
    let (sin_t, cos_t) = theta.sin_cos();
    Ok(spherical_harmonic_trig(l, m, cos_t, sin_t, phi))
}

/// `Y_l^m` from precomputed cosθ and sinθ. Callers must guarantee
/// `|m| <= l`; the hot integrand path enters here after the quantum
/// numbers were validated once at state construction.
pub(crate) fn spherical_harmonic_trig(
    l: u32,
    m: i32,
    cos_t: f64,
    sin_t: f64,
    phi: f64,
) -> Complex64 {
    let m_abs = m.unsigned_abs();
    let plm = normalized_legendre(l, m_abs, cos_t, sin_t);
    let (sin_mp, cos_mp) = (f64::from(m_abs) * phi).sin_cos();
    if m >= 0 {
        Complex64::new(plm * cos_mp, plm * sin_mp)
    } else {
        // Y_l^{-m} = (-1)^m conj(Y_l^m)
        let sign = if m_abs % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign * plm * cos_mp, -sign * plm * sin_mp)
    }
}

/// Fully normalized associated Legendre function
/// `sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P_l^m(cosθ)` for `m >= 0`, with the
/// Condon-Shortley phase folded in. The normalization is carried through
/// the recurrence itself so no factorial is ever formed.
fn normalized_legendre(l: u32, m: u32, cos_t: f64, sin_t: f64) -> f64 {
    // Diagonal: P̄_m^m = -sqrt((2m+1)/(2m)) sinθ P̄_{m-1}^{m-1}.
    let mut pmm = 0.5 / PI.sqrt(); // P̄_0^0 = 1/sqrt(4π)
    for k in 1..=m {
        let kf = f64::from(k);
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_t;
    }
    if l == m {
        return pmm;
    }
    // One step off the diagonal, then upward in degree.
    let mf = f64::from(m);
    let mut p_prev = pmm;
    let mut p_curr = (2.0 * mf + 3.0).sqrt() * cos_t * pmm;
    for deg in (m + 2)..=l {
        let lf = f64::from(deg);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0))
            .sqrt();
        let p_next = a * (cos_t * p_curr - b * p_prev);
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Hydrogen bound-state radial function `R_{nl}(r)` for Z = 1, with `r`
/// in Bohr radii and the usual normalization `∫ R² r² dr = 1`.
///
/// States with n <= 4 use hard-coded closed forms; higher states fall
/// back to the general Laguerre expression with log-space normalization.
pub fn hydrogen_radial(idx: RadialIndex, r: f64) -> f64 {
    radial_nl(idx.n, idx.l, r)
}

pub(crate) fn radial_nl(n: u32, l: u32, r: f64) -> f64 {
    match (n, l) {
        (1, 0) => 2.0 * (-r).exp(),
        (2, 0) => std::f64::consts::FRAC_1_SQRT_2 * (1.0 - 0.5 * r) * (-0.5 * r).exp(),
        (2, 1) => r * (-0.5 * r).exp() / (2.0 * 6.0_f64.sqrt()),
        (3, 0) => {
            2.0 / (3.0 * 3.0_f64.sqrt())
                * (1.0 - 2.0 * r / 3.0 + 2.0 * r * r / 27.0)
                * (-r / 3.0).exp()
        }
        (3, 1) => 8.0 / (27.0 * 6.0_f64.sqrt()) * r * (1.0 - r / 6.0) * (-r / 3.0).exp(),
        (3, 2) => 4.0 / (81.0 * 30.0_f64.sqrt()) * r * r * (-r / 3.0).exp(),
        (4, 0) => {
            0.25 * (1.0 - 0.75 * r + r * r / 8.0 - r * r * r / 192.0) * (-0.25 * r).exp()
        }
        (4, 1) => {
            5.0_f64.sqrt() / (16.0 * 3.0_f64.sqrt())
                * r
                * (1.0 - 0.25 * r + r * r / 80.0)
                * (-0.25 * r).exp()
        }
        (4, 2) => r * r * (1.0 - r / 12.0) * (-0.25 * r).exp() / (64.0 * 5.0_f64.sqrt()),
        (4, 3) => r * r * r * (-0.25 * r).exp() / (768.0 * 35.0_f64.sqrt()),
        _ => radial_general(n, l, r),
    }
}

/// General-`n` radial function
/// `R_{nl}(r) = N (2r/n)^l e^{-r/n} L_{n-l-1}^{2l+1}(2r/n)` with
/// `N = sqrt((2/n)^3 (n-l-1)! / (2n (n+l)!))`.
fn radial_general(n: u32, l: u32, r: f64) -> f64 {
    let nf = f64::from(n);
    let ln_norm = 1.5 * (2.0 / nf).ln()
        + 0.5 * (ln_factorial(n - l - 1) - (2.0 * nf).ln() - ln_factorial(n + l));
    let x = 2.0 * r / nf;
    ln_norm.exp() * x.powi(l as i32) * (-0.5 * x).exp() * assoc_laguerre(n - l - 1, 2 * l + 1, x)
}
