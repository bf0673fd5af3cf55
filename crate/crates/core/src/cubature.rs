//! Globally adaptive cubature over a 3-D box for complex-valued
//! integrands.
//!
//! Each region is scored with an embedded degree-7 / degree-5 Genz-Malik
//! rule (33 interior points), and the region with the largest error
//! estimate is repeatedly bisected along the coordinate showing the
//! largest fourth-difference activity. Real and imaginary channels share
//! regions; the error is the max over channels.
//!
//! Results are reproducible bit for bit: regions are refined in a
//! deterministic order and the final value is reduced in region creation
//! order, independent of how many threads evaluated the integrand.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

pub type Point3 = [f64; 3];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CubatureError {
    #[error("invalid box: lo[{axis}] = {lo} must be strictly below hi[{axis}] = {hi}")]
    EmptyBox { axis: usize, lo: f64, hi: f64 },
    #[error("invalid tolerances: abs_tol and rel_tol must be finite, >= 0 and not both zero")]
    InvalidTolerance,
    #[error("max_evals must be positive")]
    ZeroEvalBudget,
    #[error("integrand returned non-finite value ({re}, {im}) at point {point:?}")]
    NonFiniteIntegrand { point: Point3, re: f64, im: f64 },
}

/// An axis-aligned integration domain in 3-D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box3 {
    lo: Point3,
    hi: Point3,
}

impl Box3 {
    pub fn new(lo: Point3, hi: Point3) -> Result<Self, CubatureError> {
        for axis in 0..3 {
            if !(lo[axis] < hi[axis]) || !lo[axis].is_finite() || !hi[axis].is_finite() {
                return Err(CubatureError::EmptyBox {
                    axis,
                    lo: lo[axis],
                    hi: hi[axis],
                });
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> Point3 {
        self.lo
    }

    pub fn hi(&self) -> Point3 {
        self.hi
    }
}

/// Stopping and budget parameters for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: u64,
    pub max_regions: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-6,
            max_evals: 50_000_000,
            max_regions: 1_000_000,
        }
    }
}

impl IntegratorConfig {
    fn validate(&self) -> Result<(), CubatureError> {
        let tol_ok = self.abs_tol.is_finite()
            && self.rel_tol.is_finite()
            && self.abs_tol >= 0.0
            && self.rel_tol >= 0.0
            && (self.abs_tol > 0.0 || self.rel_tol > 0.0);
        if !tol_ok {
            return Err(CubatureError::InvalidTolerance);
        }
        if self.max_evals == 0 {
            return Err(CubatureError::ZeroEvalBudget);
        }
        Ok(())
    }
}

/// Outcome of one integration: the complex estimate, its error estimate
/// (max over the real/imaginary channels), and refinement diagnostics.
///
/// `converged` is true iff `error_est <= max(abs_tol, rel_tol * |value|)`.
/// Runs that exhaust `max_evals` or `max_regions` report their best
/// estimate with `converged = false` rather than truncating silently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_est: f64,
    pub n_evals: u64,
    pub n_regions: usize,
    pub converged: bool,
}

// Genz-Malik generator radii, as fractions of the region halfwidth:
// λ₂ = sqrt(9/70), λ₄ = sqrt(9/10) (doubles as the axial λ₃ generator),
// λ₅ = sqrt(9/19). All interior, so box faces are never sampled.
const LAMBDA2: f64 = 0.358_568_582_800_318_1;
const LAMBDA4: f64 = 0.948_683_298_050_513_8;
const LAMBDA5: f64 = 0.688_247_201_611_685_3;
// Fourth-difference scale λ₂²/λ₄² = (9/70)/(9/10).
const DIFF_RATIO: f64 = 1.0 / 7.0;

// Degree-7 weights for n = 3, per point, normalized so the rule reproduces
// the volume: W1 = (12824 - 9120 n + 400 n²)/19683, W2 = 980/6561,
// W3 = (1820 - 400 n)/19683, W4 = 200/19683, W5 = 6859/19683/2ⁿ.
const W1: f64 = -10936.0 / 19683.0;
const W2: f64 = 980.0 / 6561.0;
const W3: f64 = 620.0 / 19683.0;
const W4: f64 = 200.0 / 19683.0;
const W5: f64 = 6859.0 / 157_464.0;
// Embedded degree-5 weights: W1' = (729 - 950 n + 50 n²)/729,
// W2' = 245/486, W3' = (265 - 100 n)/1458, W4' = 25/729.
const E1: f64 = -1671.0 / 729.0;
const E2: f64 = 245.0 / 486.0;
const E3: f64 = -35.0 / 1458.0;
const E4: f64 = 25.0 / 729.0;

/// Function evaluations consumed by one rule application.
pub const RULE_SIZE: u64 = 33;

#[derive(Debug, Clone, Copy)]
struct Region {
    center: Point3,
    halfwidth: Point3,
    value: Complex64,
    err: [f64; 2],
    split_dim: usize,
    alive: bool,
}

impl Region {
    fn priority(&self) -> f64 {
        self.err[0].max(self.err[1])
    }
}

/// Max-heap key: largest error first, oldest region on ties.
#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    err: f64,
    idx: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Errors are finite by construction (non-finite integrands abort).
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

fn check_finite(point: Point3, v: Complex64) -> Result<Complex64, CubatureError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(CubatureError::NonFiniteIntegrand {
            point,
            re: v.re,
            im: v.im,
        })
    }
}

/// Apply the embedded rule on one region. Returns the region with its
/// degree-7 value, per-channel error estimate and preferred split axis.
fn apply_rule<F>(f: &F, center: Point3, halfwidth: Point3) -> Result<Region, CubatureError>
where
    F: Fn(Point3) -> Complex64 + Sync,
{
    let volume = 8.0 * halfwidth[0] * halfwidth[1] * halfwidth[2];

    let fc = check_finite(center, f(center))?;

    // Axis points at λ₂ and λ₄, accumulating the fourth differences that
    // pick the split dimension.
    let mut sum2 = Complex64::new(0.0, 0.0);
    let mut sum3 = Complex64::new(0.0, 0.0);
    let mut best_dim = 0usize;
    let mut best_diff = f64::NEG_INFINITY;
    for dim in 0..3 {
        let mut p = center;
        p[dim] = center[dim] + LAMBDA2 * halfwidth[dim];
        let f2p = check_finite(p, f(p))?;
        p[dim] = center[dim] - LAMBDA2 * halfwidth[dim];
        let f2m = check_finite(p, f(p))?;
        p[dim] = center[dim] + LAMBDA4 * halfwidth[dim];
        let f4p = check_finite(p, f(p))?;
        p[dim] = center[dim] - LAMBDA4 * halfwidth[dim];
        let f4m = check_finite(p, f(p))?;
        sum2 += f2p + f2m;
        sum3 += f4p + f4m;

        let d2 = f2p + f2m - 2.0 * fc;
        let d4 = f4p + f4m - 2.0 * fc;
        let diff = (d2.re - DIFF_RATIO * d4.re).abs() + (d2.im - DIFF_RATIO * d4.im).abs();
        if diff > best_diff {
            best_diff = diff;
            best_dim = dim;
        }
    }

    // Pair points (±λ₄, ±λ₄) on each coordinate plane.
    let mut sum4 = Complex64::new(0.0, 0.0);
    for a in 0..3 {
        for b in (a + 1)..3 {
            for &sa in &[1.0, -1.0] {
                for &sb in &[1.0, -1.0] {
                    let mut p = center;
                    p[a] = center[a] + sa * LAMBDA4 * halfwidth[a];
                    p[b] = center[b] + sb * LAMBDA4 * halfwidth[b];
                    sum4 += check_finite(p, f(p))?;
                }
            }
        }
    }

    // Corner-directed points (±λ₅, ±λ₅, ±λ₅).
    let mut sum5 = Complex64::new(0.0, 0.0);
    for signs in 0..8u32 {
        let mut p = center;
        for dim in 0..3 {
            let s = if signs & (1 << dim) == 0 { 1.0 } else { -1.0 };
            p[dim] = center[dim] + s * LAMBDA5 * halfwidth[dim];
        }
        sum5 += check_finite(p, f(p))?;
    }

    let value7 = volume * (W1 * fc + W2 * sum2 + W3 * sum3 + W4 * sum4 + W5 * sum5);
    let value5 = volume * (E1 * fc + E2 * sum2 + E3 * sum3 + E4 * sum4);

    // Roundoff floor on the error estimate, in the spirit of QUADPACK's
    // resabs guard: a weighted sum of ~33 values cannot be trusted below
    // a few eps of its absolute mass.
    let resabs_re = volume
        * (W1.abs() * fc.re.abs()
            + W2 * sum2.re.abs()
            + W3 * sum3.re.abs()
            + W4 * sum4.re.abs()
            + W5 * sum5.re.abs());
    let resabs_im = volume
        * (W1.abs() * fc.im.abs()
            + W2 * sum2.im.abs()
            + W3 * sum3.im.abs()
            + W4 * sum4.im.abs()
            + W5 * sum5.im.abs());
    let err_re = (value7.re - value5.re).abs().max(8.0 * f64::EPSILON * resabs_re.abs());
    let err_im = (value7.im - value5.im).abs().max(8.0 * f64::EPSILON * resabs_im.abs());

    Ok(Region {
        center,
        halfwidth,
        value: value7,
        err: [err_re, err_im],
        split_dim: best_dim,
        alive: true,
    })
}

#[cfg(feature = "parallel")]
fn eval_children<F>(f: &F, tasks: &[(Point3, Point3)]) -> Result<Vec<Region>, CubatureError>
where
    F: Fn(Point3) -> Complex64 + Sync,
{
    use rayon::prelude::*;
    // Serial below the threshold where rayon's dispatch overhead wins.
    if tasks.len() < 4 {
        return tasks.iter().map(|&(c, h)| apply_rule(f, c, h)).collect();
    }
    tasks.par_iter().map(|&(c, h)| apply_rule(f, c, h)).collect()
}

#[cfg(not(feature = "parallel"))]
fn eval_children<F>(f: &F, tasks: &[(Point3, Point3)]) -> Result<Vec<Region>, CubatureError>
where
    F: Fn(Point3) -> Complex64 + Sync,
{
    tasks.iter().map(|&(c, h)| apply_rule(f, c, h)).collect()
}

/// Largest number of regions refined per round. Refinement happens in
/// deterministic batches so the result does not depend on thread count;
/// the cap bounds the extra work done past the convergence point.
const MAX_BATCH: usize = 64;

/// Estimate the integral of `f` over `bx`.
///
/// The integrand must be pure: it may be called concurrently and its
/// values for a given point must not change between calls. Non-finite
/// integrand values abort with [`CubatureError::NonFiniteIntegrand`];
/// exhausting the budget is not an error and is reported through
/// `converged = false`.
pub fn integrate<F>(f: F, bx: Box3, cfg: IntegratorConfig) -> Result<QuadResult, CubatureError>
where
    F: Fn(Point3) -> Complex64 + Sync,
{
    cfg.validate()?;

    let center = [
        0.5 * (bx.lo[0] + bx.hi[0]),
        0.5 * (bx.lo[1] + bx.hi[1]),
        0.5 * (bx.lo[2] + bx.hi[2]),
    ];
    let halfwidth = [
        0.5 * (bx.hi[0] - bx.lo[0]),
        0.5 * (bx.hi[1] - bx.lo[1]),
        0.5 * (bx.hi[2] - bx.lo[2]),
    ];

    let mut regions: Vec<Region> = Vec::new();
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();

    let root = apply_rule(&f, center, halfwidth)?;
    let mut n_evals = RULE_SIZE;
    let mut running_value = root.value;
    let mut running_err = root.err;
    let mut live_regions = 1usize;
    heap.push(HeapEntry {
        err: root.priority(),
        idx: 0,
    });
    regions.push(root);

    // Fixed-order reduction over surviving regions; this is the
    // authoritative total and what makes results identical across thread
    // counts.
    let reduce = |regions: &[Region]| {
        let mut value = Complex64::new(0.0, 0.0);
        let mut err = [0.0f64; 2];
        let mut count = 0usize;
        for region in regions {
            if region.alive {
                value += region.value;
                err[0] += region.err[0];
                err[1] += region.err[1];
                count += 1;
            }
        }
        (value, err, count)
    };

    let mut budget_hit = false;
    let (value, err, n_regions) = loop {
        // Inner refinement loop against incrementally updated totals.
        loop {
            let total_err = running_err[0].max(running_err[1]);
            let threshold = cfg.abs_tol.max(cfg.rel_tol * running_value.norm());
            if total_err <= threshold {
                break;
            }

            // Each split spends two rule applications and adds one net
            // region.
            let evals_left = cfg.max_evals.saturating_sub(n_evals) / (2 * RULE_SIZE);
            let regions_left = cfg.max_regions.saturating_sub(live_regions);
            let batch = heap
                .len()
                .min(MAX_BATCH)
                .min(evals_left as usize)
                .min(regions_left);
            if batch == 0 {
                budget_hit = true;
                break;
            }

            let mut parents = Vec::with_capacity(batch);
            let mut tasks = Vec::with_capacity(2 * batch);
            for _ in 0..batch {
                let entry = heap.pop().expect("heap length checked above");
                let parent = &regions[entry.idx];
                debug_assert!(parent.alive);
                let dim = parent.split_dim;
                let mut h = parent.halfwidth;
                h[dim] *= 0.5;
                let mut c_lo = parent.center;
                c_lo[dim] -= h[dim];
                let mut c_hi = parent.center;
                c_hi[dim] += h[dim];
                parents.push(entry.idx);
                tasks.push((c_lo, h));
                tasks.push((c_hi, h));
            }

            let children = eval_children(&f, &tasks)?;
            n_evals += 2 * RULE_SIZE * batch as u64;

            for (i, &parent_idx) in parents.iter().enumerate() {
                let lo = children[2 * i];
                let hi = children[2 * i + 1];
                let parent = &mut regions[parent_idx];
                running_value += lo.value + hi.value - parent.value;
                running_err[0] += lo.err[0] + hi.err[0] - parent.err[0];
                running_err[1] += lo.err[1] + hi.err[1] - parent.err[1];
                parent.alive = false;
                for child in [lo, hi] {
                    let idx = regions.len();
                    heap.push(HeapEntry {
                        err: child.priority(),
                        idx,
                    });
                    regions.push(child);
                }
            }
            live_regions += batch;
        }

        // The incremental totals drift from the exact reduction by
        // rounding; re-reduce, and resume refinement if the exact error
        // does not actually meet the threshold yet.
        let (value, err, count) = reduce(&regions);
        let total_err = err[0].max(err[1]);
        let threshold = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if budget_hit || total_err <= threshold {
            break (value, err, count);
        }
        running_value = value;
        running_err = err;
    };

    let error_est = err[0].max(err[1]);
    let converged = error_est <= cfg.abs_tol.max(cfg.rel_tol * value.norm());

    Ok(QuadResult {
        value,
        error_est,
        n_evals,
        n_regions,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn unit_box() -> Box3 {
        Box3::new([0.0; 3], [1.0; 3]).unwrap()
    }

    fn real_fn(f: impl Fn(Point3) -> f64 + Sync) -> impl Fn(Point3) -> Complex64 + Sync {
        move |p| Complex64::new(f(p), 0.0)
    }

    #[test]
    fn config_validation() {
        let bad_tol = IntegratorConfig {
            abs_tol: 0.0,
            rel_tol: 0.0,
            ..Default::default()
        };
        assert_eq!(
            integrate(real_fn(|_| 1.0), unit_box(), bad_tol),
            Err(CubatureError::InvalidTolerance)
        );
        let no_budget = IntegratorConfig {
            max_evals: 0,
            ..Default::default()
        };
        assert_eq!(
            integrate(real_fn(|_| 1.0), unit_box(), no_budget),
            Err(CubatureError::ZeroEvalBudget)
        );
        assert!(Box3::new([0.0, 0.0, 0.0], [1.0, 0.0, 1.0]).is_err());
        assert!(Box3::new([0.0, 0.0, 0.0], [1.0, f64::INFINITY, 1.0]).is_err());
    }

    #[test]
    fn constant_integrand_converges_immediately() {
        let r = integrate(real_fn(|_| 1.0), unit_box(), IntegratorConfig::default()).unwrap();
        assert_relative_eq!(r.value.re, 1.0, max_relative = 1e-14);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-15);
        assert!(r.error_est < 1e-12);
        assert!(r.converged);
        assert_eq!(r.n_evals, RULE_SIZE);
        assert_eq!(r.n_regions, 1);
    }

    /// The degree-7 rule must integrate every monomial of total degree <= 7
    /// exactly, and the embedded degree-5 rule every monomial <= 5. This
    /// pins the generator radii and weights.
    #[test]
    fn rule_is_exact_on_monomials() {
        let lo: [f64; 3] = [-1.0, 0.5, -2.0];
        let hi: [f64; 3] = [2.0, 1.5, -0.5];
        let c = [0.5, 1.0, -1.25];
        let h = [1.5, 0.5, 0.75];
        let moment = |axis: usize, e: u32| -> f64 {
            (hi[axis].powi(e as i32 + 1) - lo[axis].powi(e as i32 + 1)) / f64::from(e + 1)
        };
        for a in 0..=7u32 {
            for b in 0..=(7 - a) {
                for cc in 0..=(7 - a - b) {
                    let f = move |p: Point3| {
                        Complex64::new(
                            p[0].powi(a as i32) * p[1].powi(b as i32) * p[2].powi(cc as i32),
                            0.0,
                        )
                    };
                    let region = apply_rule(&f, c, h).unwrap();
                    let exact = moment(0, a) * moment(1, b) * moment(2, cc);
                    let scale = 1.0 + exact.abs();
                    assert_abs_diff_eq!(region.value.re, exact, epsilon = 1e-12 * scale);
                    // Degree-5 embedded estimate, reconstructed from the
                    // difference with the reported error (sign-free check).
                    if a + b + cc <= 5 {
                        assert!(
                            region.err[0] <= 1e-12 * scale,
                            "degree-5 rule missed x^{a} y^{b} z^{cc}: err {}",
                            region.err[0]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn separable_exponential_sphere_volume() {
        // ∫ e^{-2r} r² sinθ over [0,30]×[0,π]×[0,2π] = π up to a 1e-24
        // truncation remainder.
        let bx = Box3::new([0.0, 0.0, 0.0], [30.0, PI, 2.0 * PI]).unwrap();
        let cfg = IntegratorConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            ..Default::default()
        };
        let r = integrate(
            real_fn(|p| (-2.0 * p[0]).exp() * p[0] * p[0] * p[1].sin()),
            bx,
            cfg,
        )
        .unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.value.re, PI, epsilon = 1e-8);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn oscillatory_complex_integrand_cancels() {
        // ∫ cos(10x) e^{iz} over [0,π]³ = 0 since ∫cos(10x) dx = 0.
        let bx = Box3::new([0.0; 3], [PI; 3]).unwrap();
        let cfg = IntegratorConfig {
            abs_tol: 1e-9,
            rel_tol: 0.0,
            ..Default::default()
        };
        let r = integrate(
            |p: Point3| {
                let (s, c) = p[2].sin_cos();
                (10.0 * p[0]).cos() * Complex64::new(c, s)
            },
            bx,
            cfg,
        )
        .unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.value.re, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn non_finite_integrand_reports_offending_point() {
        let bx = Box3::new([0.0; 3], [1.0; 3]).unwrap();
        let err = integrate(
            real_fn(|p| if p[0] > 0.9 { f64::NAN } else { 1.0 }),
            bx,
            IntegratorConfig::default(),
        )
        .unwrap_err();
        match err {
            CubatureError::NonFiniteIntegrand { point, re, .. } => {
                assert!(point[0] > 0.9);
                assert!(re.is_nan());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports_not_converged() {
        // Oscillations the eval budget cannot resolve to the requested
        // tolerance.
        let bx = Box3::new([0.0; 3], [1.0; 3]).unwrap();
        let cfg = IntegratorConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_evals: 2_000,
            max_regions: 1_000_000,
        };
        let r = integrate(
            real_fn(|p| (50.0 * p[0]).sin() * (50.0 * p[1]).sin() * (50.0 * p[2]).sin()),
            bx,
            cfg,
        )
        .unwrap();
        assert!(!r.converged);
        assert!(r.n_evals <= cfg.max_evals + RULE_SIZE);
        assert!(r.error_est > 0.0);
    }

    #[test]
    fn region_cap_respected() {
        let bx = Box3::new([0.0; 3], [1.0; 3]).unwrap();
        let cfg = IntegratorConfig {
            abs_tol: 0.0,
            rel_tol: 1e-16,
            max_evals: u64::MAX,
            max_regions: 40,
        };
        let r = integrate(
            real_fn(|p| (10.0 * p[0]).sin() * (9.0 * p[1]).cos() * (8.0 * p[2]).sin()),
            bx,
            cfg,
        )
        .unwrap();
        assert!(r.n_regions <= 40);
        assert!(!r.converged);
    }

    #[test]
    fn results_are_bit_identical_across_runs() {
        let bx = Box3::new([0.0, 0.0, 0.0], [2.0, PI, 1.0]).unwrap();
        let f = |p: Point3| {
            let (s, c) = (3.0 * p[0] * p[1]).sin_cos();
            Complex64::new(c * (-p[2]).exp(), s * p[2])
        };
        let cfg = IntegratorConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            ..Default::default()
        };
        let a = integrate(f, bx, cfg).unwrap();
        let b = integrate(f, bx, cfg).unwrap();
        assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        assert_eq!(a.error_est.to_bits(), b.error_est.to_bits());
        assert_eq!(a.n_evals, b.n_evals);
        assert_eq!(a.n_regions, b.n_regions);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn results_are_bit_identical_across_thread_counts() {
        let bx = Box3::new([0.0, 0.0, 0.0], [2.0, PI, 1.0]).unwrap();
        let f = |p: Point3| {
            let (s, c) = (4.0 * p[0] + p[1] * p[1]).sin_cos();
            Complex64::new(c, s * (-0.5 * p[2]).exp())
        };
        let cfg = IntegratorConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            ..Default::default()
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| integrate(f, bx, cfg).unwrap());
        let multi = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| integrate(f, bx, cfg).unwrap());
        assert_eq!(single.value.re.to_bits(), multi.value.re.to_bits());
        assert_eq!(single.value.im.to_bits(), multi.value.im.to_bits());
        assert_eq!(single.error_est.to_bits(), multi.error_est.to_bits());
        assert_eq!(single.n_evals, multi.n_evals);
    }
}
