//! Parameter sweeps over scattering angle, Rayleigh range, or wavelength,
//! with deterministic CSV emission, plus the predefined figure sweeps.

use crate::amplitudes::{full_amplitude, AmplitudeError, ScatteringConfig, TwistFactor};
use crate::geometry::ScatteringAngle;
use crate::modes::{LGMode, PhotonParams};
use crate::states::BoundState;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("sweep needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("sweep range must satisfy from < to, got [{from}, {to}]")]
    EmptyRange { from: f64, to: f64 },
    #[error("log-scale sweeps need from > 0, got {0}")]
    NonPositiveLogStart(f64),
    #[error("axis value {value} is not a valid {axis:?} setting: {reason}")]
    BadAxisValue {
        axis: SweepAxis,
        value: f64,
        reason: String,
    },
    #[error("unknown figure id {0:?} (expected 3, 4a, 4b, 5a or 5b)")]
    UnknownFigure(String),
    #[error("CSV parse error on line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error(transparent)]
    Amplitude(#[from] AmplitudeError),
}

/// Which physical parameter the sweep varies. Angles are radians; the two
/// length axes are in nanometres, matching the CLI surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Theta,
    Rayleigh,
    Wavelength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

/// An axis sweep: grid definition plus the base configuration every point
/// starts from.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub scale: SweepScale,
    pub base: ScatteringConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.points < 2 {
            return Err(SweepError::TooFewPoints(self.points));
        }
        if !(self.from < self.to) {
            return Err(SweepError::EmptyRange {
                from: self.from,
                to: self.to,
            });
        }
        if self.scale == SweepScale::Log && self.from <= 0.0 {
            return Err(SweepError::NonPositiveLogStart(self.from));
        }
        self.base.validate()?;
        Ok(())
    }

    /// Grid values in sweep order. The first and last entries are exactly
    /// `from` and `to`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let frac = i as f64 / (n - 1) as f64;
            let v = match self.scale {
                SweepScale::Linear => self.from + (self.to - self.from) * frac,
                SweepScale::Log => self.from * (self.to / self.from).powf(frac),
            };
            values.push(v);
        }
        values[0] = self.from;
        values[n - 1] = self.to;
        values
    }

    /// The configuration at one grid value.
    pub fn config_at(&self, value: f64) -> Result<ScatteringConfig, SweepError> {
        let mut cfg = self.base;
        let bad = |reason: String| SweepError::BadAxisValue {
            axis: self.axis,
            value,
            reason,
        };
        match self.axis {
            SweepAxis::Theta => {
                cfg.theta = ScatteringAngle::new(value).map_err(|e| bad(e.to_string()))?;
            }
            SweepAxis::Rayleigh => {
                let photon = PhotonParams::from_nm(self.base.mode_in.photon().wavelength_nm(), value)
                    .map_err(|e| bad(e.to_string()))?;
                cfg.mode_in = LGMode::new(self.base.mode_in.p(), self.base.mode_in.l(), photon);
                cfg.mode_out = LGMode::new(self.base.mode_out.p(), self.base.mode_out.l(), photon);
            }
            SweepAxis::Wavelength => {
                let photon =
                    PhotonParams::from_nm(value, self.base.mode_in.photon().rayleigh_range_nm())
                        .map_err(|e| bad(e.to_string()))?;
                cfg.mode_in = LGMode::new(self.base.mode_in.p(), self.base.mode_in.l(), photon);
                cfg.mode_out = LGMode::new(self.base.mode_out.p(), self.base.mode_out.l(), photon);
            }
        }
        Ok(cfg)
    }
}

/// One line of sweep output. Column order is fixed and mirrors the CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub re_m: f64,
    pub im_m: f64,
    pub abs2_m: f64,
    pub re_mv: f64,
    pub im_mv: f64,
    pub abs2_mv: f64,
    pub dsigma_pw: f64,
    pub dsigma_v: f64,
    pub twist: TwistFactor,
    pub error_est_m: f64,
    pub error_est_mv: f64,
    pub n_evals_m: u64,
    pub n_evals_mv: u64,
    pub converged_m: bool,
    pub converged_mv: bool,
}

impl SweepRow {
    pub fn converged(&self) -> bool {
        self.converged_m && self.converged_mv
    }
}

/// Evaluate one grid point. Cubature non-convergence never aborts the
/// sweep; it is recorded in the row's converged flags.
pub fn run_point(axis_value: f64, cfg: &ScatteringConfig) -> Result<SweepRow, SweepError> {
    let out = full_amplitude(cfg)?;
    Ok(SweepRow {
        axis_value,
        re_m: out.plane.re,
        im_m: out.plane.im,
        abs2_m: out.plane.norm_sqr(),
        re_mv: out.vortex.re,
        im_mv: out.vortex.im,
        abs2_mv: out.vortex.norm_sqr(),
        dsigma_pw: out.dsigma_pw,
        dsigma_v: out.dsigma_v,
        twist: out.twist,
        error_est_m: out.plane_quad.error_est,
        error_est_mv: out.vortex_quad.error_est,
        n_evals_m: out.plane_quad.n_evals,
        n_evals_mv: out.vortex_quad.n_evals,
        converged_m: out.plane_quad.converged,
        converged_mv: out.vortex_quad.converged,
    })
}

/// Run the full sweep. Rows come back in grid order regardless of how the
/// points were scheduled.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let grid = spec.grid();
    let configs = grid
        .iter()
        .map(|&v| Ok((v, spec.config_at(v)?)))
        .collect::<Result<Vec<_>, SweepError>>()?;

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        configs
            .par_iter()
            .map(|(v, cfg)| run_point(*v, cfg))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        configs
            .iter()
            .map(|(v, cfg)| run_point(*v, cfg))
            .collect()
    }
}

pub const CSV_HEADER: &str = "axis_value,re_m,im_m,abs2_m,re_mv,im_mv,abs2_mv,dsigma_pw,dsigma_v,twist,error_est_m,error_est_mv,n_evals_m,n_evals_mv,converged_m,converged_mv";

fn fmt_float(x: f64) -> String {
    // 17 significant digits: enough for exact f64 round-trips and well
    // past the 12 the output format promises.
    format!("{x:.16e}")
}

/// Serialize rows to CSV, one line per grid point, in the given order.
/// Divergent twist factors are emitted as the literal token `inf`.
pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 320);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let twist = match row.twist {
            TwistFactor::Finite(t) => fmt_float(t),
            TwistFactor::Divergent => "inf".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_float(row.axis_value),
            fmt_float(row.re_m),
            fmt_float(row.im_m),
            fmt_float(row.abs2_m),
            fmt_float(row.re_mv),
            fmt_float(row.im_mv),
            fmt_float(row.abs2_mv),
            fmt_float(row.dsigma_pw),
            fmt_float(row.dsigma_v),
            twist,
            fmt_float(row.error_est_m),
            fmt_float(row.error_est_mv),
            row.n_evals_m,
            row.n_evals_mv,
            row.converged_m,
            row.converged_mv,
        ));
    }
    out
}

/// Parse CSV produced by [`emit_csv`] back into rows.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, SweepError> {
    let err = |line: usize, reason: &str| SweepError::Csv {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => return Err(err(1, "missing or unexpected header")),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 16 {
            return Err(err(lineno, "expected 16 fields"));
        }
        let f = |i: usize| -> Result<f64, SweepError> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| err(lineno, "bad float field"))
        };
        let u = |i: usize| -> Result<u64, SweepError> {
            fields[i]
                .parse::<u64>()
                .map_err(|_| err(lineno, "bad integer field"))
        };
        let b = |i: usize| -> Result<bool, SweepError> {
            fields[i]
                .parse::<bool>()
                .map_err(|_| err(lineno, "bad boolean field"))
        };
        let twist = if fields[9] == "inf" {
            TwistFactor::Divergent
        } else {
            TwistFactor::Finite(f(9)?)
        };
        rows.push(SweepRow {
            axis_value: f(0)?,
            re_m: f(1)?,
            im_m: f(2)?,
            abs2_m: f(3)?,
            re_mv: f(4)?,
            im_mv: f(5)?,
            abs2_mv: f(6)?,
            dsigma_pw: f(7)?,
            dsigma_v: f(8)?,
            twist,
            error_est_m: f(10)?,
            error_est_mv: f(11)?,
            n_evals_m: u(12)?,
            n_evals_mv: u(13)?,
            converged_m: b(14)?,
            converged_mv: b(15)?,
        });
    }
    Ok(rows)
}

/// The predefined sweeps. Each reproduces one published panel: the fixed
/// physics parameters are the caption values; the axis ranges and point
/// counts are this library's documented reproduction choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig3,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
}

impl FigureId {
    pub fn parse(s: &str) -> Result<Self, SweepError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "3" => Ok(FigureId::Fig3),
            "4a" => Ok(FigureId::Fig4a),
            "4b" => Ok(FigureId::Fig4b),
            "5a" => Ok(FigureId::Fig5a),
            "5b" => Ok(FigureId::Fig5b),
            other => Err(SweepError::UnknownFigure(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig3 => "3",
            FigureId::Fig4a => "4a",
            FigureId::Fig4b => "4b",
            FigureId::Fig5a => "5a",
            FigureId::Fig5b => "5b",
        }
    }
}

/// Shared physics of all figure presets: p_in = p_out = 0, l_in = 1,
/// l_out = -1 (two units of OAM transferred), s-state initial with m = 0,
/// 3d final with m = 2 by projection conservation, unit polarization
/// overlap.
fn preset_base(
    lambda_nm: f64,
    zr_nm: f64,
    initial_n: u32,
    theta_rad: f64,
) -> ScatteringConfig {
    let photon =
        PhotonParams::from_nm(lambda_nm, zr_nm).expect("preset photon parameters are valid");
    ScatteringConfig::new(
        BoundState::new(initial_n, 0, 0).expect("preset initial state is valid"),
        BoundState::new(3, 2, 2).expect("preset final state is valid"),
        LGMode::new(0, 1, photon),
        LGMode::new(0, -1, photon),
        ScatteringAngle::new(theta_rad).expect("preset angle is valid"),
    )
    .expect("preset configuration is valid")
}

/// Build the sweep for one predefined figure.
pub fn figure_preset(id: FigureId) -> SweepSpec {
    match id {
        // Twist factor vs scattering angle: λ = 550 nm, z_R = 1000 nm,
        // 1s -> 3d.
        FigureId::Fig3 => SweepSpec {
            axis: SweepAxis::Theta,
            from: 0.01,
            to: std::f64::consts::PI,
            points: 60,
            scale: SweepScale::Linear,
            base: preset_base(550.0, 1000.0, 1, 0.01),
        },
        // Cross section vs Rayleigh range at Θ = 0, λ = 0.1 nm; 1s -> 3d.
        FigureId::Fig4a => SweepSpec {
            axis: SweepAxis::Rayleigh,
            from: 0.1,
            to: 1e6,
            points: 71,
            scale: SweepScale::Log,
            base: preset_base(0.1, 1000.0, 1, 0.0),
        },
        // Same axes, 3s -> 3d.
        FigureId::Fig4b => SweepSpec {
            axis: SweepAxis::Rayleigh,
            from: 0.1,
            to: 1e6,
            points: 71,
            scale: SweepScale::Log,
            base: preset_base(0.1, 1000.0, 3, 0.0),
        },
        // Cross section vs wavelength at Θ = 0, z_R = 10 nm; 1s -> 3d.
        FigureId::Fig5a => SweepSpec {
            axis: SweepAxis::Wavelength,
            from: 0.05,
            to: 1e3,
            points: 61,
            scale: SweepScale::Log,
            base: preset_base(550.0, 10.0, 1, 0.0),
        },
        // Same axes, 3s -> 3d.
        FigureId::Fig5b => SweepSpec {
            axis: SweepAxis::Wavelength,
            from: 0.05,
            to: 1e3,
            points: 61,
            scale: SweepScale::Log,
            base: preset_base(550.0, 10.0, 3, 0.0),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubature::IntegratorConfig;
    use approx::assert_relative_eq;

    fn small_base() -> ScatteringConfig {
        let photon = PhotonParams::from_nm(550.0, 1000.0).unwrap();
        let mut cfg = ScatteringConfig::new(
            BoundState::new(1, 0, 0).unwrap(),
            BoundState::new(1, 0, 0).unwrap(),
            LGMode::new(0, 0, photon),
            LGMode::new(0, 0, photon),
            ScatteringAngle::new(0.1).unwrap(),
        )
        .unwrap();
        cfg.integrator = IntegratorConfig {
            abs_tol: 1e-6,
            rel_tol: 1e-4,
            max_evals: 2_000_000,
            max_regions: 100_000,
        };
        cfg
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let spec = SweepSpec {
            axis: SweepAxis::Theta,
            from: 0.01,
            to: std::f64::consts::PI,
            points: 7,
            scale: SweepScale::Linear,
            base: small_base(),
        };
        let g = spec.grid();
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[6], std::f64::consts::PI);
    }

    #[test]
    fn log_grid_is_geometric() {
        let spec = SweepSpec {
            axis: SweepAxis::Rayleigh,
            from: 1.0,
            to: 1e4,
            points: 5,
            scale: SweepScale::Log,
            base: small_base(),
        };
        let g = spec.grid();
        assert_eq!(g[0], 1.0);
        assert_eq!(g[4], 1e4);
        for w in g.windows(2) {
            assert_relative_eq!(w[1] / w[0], 10.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn spec_validation() {
        let mut spec = SweepSpec {
            axis: SweepAxis::Theta,
            from: 0.1,
            to: 1.0,
            points: 1,
            scale: SweepScale::Linear,
            base: small_base(),
        };
        assert!(matches!(spec.validate(), Err(SweepError::TooFewPoints(1))));
        spec.points = 4;
        spec.from = 2.0;
        assert!(matches!(spec.validate(), Err(SweepError::EmptyRange { .. })));
        spec.from = 0.0;
        spec.scale = SweepScale::Log;
        assert!(matches!(
            spec.validate(),
            Err(SweepError::NonPositiveLogStart(_))
        ));
    }

    #[test]
    fn config_at_swaps_the_right_parameter() {
        let spec = SweepSpec {
            axis: SweepAxis::Wavelength,
            from: 0.1,
            to: 10.0,
            points: 3,
            scale: SweepScale::Log,
            base: small_base(),
        };
        let cfg = spec.config_at(2.5).unwrap();
        assert_relative_eq!(cfg.mode_in.photon().wavelength_nm(), 2.5, max_relative = 1e-12);
        assert_relative_eq!(
            cfg.mode_in.photon().rayleigh_range_nm(),
            1000.0,
            max_relative = 1e-12
        );
        // Modes must share the new photon.
        assert_eq!(cfg.mode_in.photon(), cfg.mode_out.photon());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let rows = vec![
            SweepRow {
                axis_value: 0.017453292519943295,
                re_m: -3.086419753086420e-2,
                im_m: 1.23e-45,
                abs2_m: 9.869604401089358,
                re_mv: 0.0,
                im_mv: -0.0,
                abs2_mv: 5.0e-321,
                dsigma_pw: 7.941124e-30,
                dsigma_v: 1.7976931348623157e308,
                twist: TwistFactor::Finite(-0.9999999999),
                error_est_m: 1e-14,
                error_est_mv: 2.5e-9,
                n_evals_m: 123456789,
                n_evals_mv: 33,
                converged_m: true,
                converged_mv: false,
            },
            SweepRow {
                axis_value: 1.0,
                re_m: 1.0,
                im_m: 0.0,
                abs2_m: 1.0,
                re_mv: 1.0,
                im_mv: 0.0,
                abs2_mv: 1.0,
                dsigma_pw: 0.0,
                dsigma_v: 0.0,
                twist: TwistFactor::Divergent,
                error_est_m: 0.0,
                error_est_mv: 0.0,
                n_evals_m: 0,
                n_evals_mv: 0,
                converged_m: false,
                converged_mv: true,
            },
        ];
        let text = emit_csv(&rows);
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed, rows);
        // Divergent twist shows up as the bare token.
        assert!(text.lines().nth(2).unwrap().contains(",inf,"));
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(matches!(parse_csv("nonsense"), Err(SweepError::Csv { .. })));
        let bad_fields = format!("{CSV_HEADER}\n1.0,2.0\n");
        assert!(matches!(parse_csv(&bad_fields), Err(SweepError::Csv { .. })));
    }

    #[test]
    fn figure_ids_parse() {
        assert_eq!(FigureId::parse("3").unwrap(), FigureId::Fig3);
        assert_eq!(FigureId::parse("4A").unwrap(), FigureId::Fig4a);
        assert_eq!(FigureId::parse(" 5b ").unwrap(), FigureId::Fig5b);
        assert!(FigureId::parse("6").is_err());
    }

    /// The fixed parameters of each preset against the published caption
    /// values.
    #[test]
    fn preset_fidelity() {
        struct Caption {
            id: FigureId,
            lambda_nm: f64,
            zr_nm: Option<f64>,
            initial: (u32, u32, i32),
            fin: (u32, u32, i32),
            l_in: i32,
            l_out: i32,
            theta: Option<f64>,
            axis: SweepAxis,
        }
        let captions = [
            Caption {
                id: FigureId::Fig3,
                lambda_nm: 550.0,
                zr_nm: Some(1000.0),
                initial: (1, 0, 0),
                fin: (3, 2, 2),
                l_in: 1,
                l_out: -1,
                theta: None,
                axis: SweepAxis::Theta,
            },
            Caption {
                id: FigureId::Fig4a,
                lambda_nm: 0.1,
                zr_nm: None,
                initial: (1, 0, 0),
                fin: (3, 2, 2),
                l_in: 1,
                l_out: -1,
                theta: Some(0.0),
                axis: SweepAxis::Rayleigh,
            },
            Caption {
                id: FigureId::Fig4b,
                lambda_nm: 0.1,
                zr_nm: None,
                initial: (3, 0, 0),
                fin: (3, 2, 2),
                l_in: 1,
                l_out: -1,
                theta: Some(0.0),
                axis: SweepAxis::Rayleigh,
            },
            Caption {
                id: FigureId::Fig5a,
                lambda_nm: f64::NAN, // swept
                zr_nm: Some(10.0),
                initial: (1, 0, 0),
                fin: (3, 2, 2),
                l_in: 1,
                l_out: -1,
                theta: Some(0.0),
                axis: SweepAxis::Wavelength,
            },
            Caption {
                id: FigureId::Fig5b,
                lambda_nm: f64::NAN,
                zr_nm: Some(10.0),
                initial: (3, 0, 0),
                fin: (3, 2, 2),
                l_in: 1,
                l_out: -1,
                theta: Some(0.0),
                axis: SweepAxis::Wavelength,
            },
        ];
        for cap in captions {
            let spec = figure_preset(cap.id);
            assert_eq!(spec.axis, cap.axis, "axis of figure {}", cap.id.name());
            let base = &spec.base;
            if cap.axis != SweepAxis::Wavelength {
                assert_relative_eq!(
                    base.mode_in.photon().wavelength_nm(),
                    cap.lambda_nm,
                    max_relative = 1e-12
                );
            }
            if let Some(zr) = cap.zr_nm {
                if cap.axis != SweepAxis::Rayleigh {
                    assert_relative_eq!(
                        base.mode_in.photon().rayleigh_range_nm(),
                        zr,
                        max_relative = 1e-12
                    );
                }
            }
            if let Some(theta) = cap.theta {
                assert_eq!(base.theta.radians(), theta);
            }
            assert_eq!(
                (base.initial_state.n(), base.initial_state.l(), base.initial_state.m()),
                cap.initial,
                "initial state of figure {}",
                cap.id.name()
            );
            assert_eq!(
                (base.final_state.n(), base.final_state.l(), base.final_state.m()),
                cap.fin,
                "final state of figure {}",
                cap.id.name()
            );
            assert_eq!(base.mode_in.l(), cap.l_in);
            assert_eq!(base.mode_out.l(), cap.l_out);
            assert_eq!(base.mode_in.p(), 0);
            assert_eq!(base.mode_out.p(), 0);
            assert_eq!(base.polarization_overlap, 1.0);
        }
    }

    #[test]
    fn run_point_is_deterministic() {
        let base = small_base();
        let a = run_point(0.1, &base).unwrap();
        let b = run_point(0.1, &base).unwrap();
        assert_eq!(a, b);
    }
}
