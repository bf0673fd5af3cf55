//! Command-line front end: single-point amplitude evaluation, axis sweeps
//! with CSV output, and the predefined figure sweeps.
//!
//! Exit codes: 0 on success, 1 on argument or configuration errors, 2 when
//! any evaluated point failed to converge (output is still fully emitted).

use clap::{Args, Parser, Subcommand};
use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use vortex_scatter::{
    emit_csv, figure_preset, full_amplitude, run_sweep, FigureId, IntegratorConfig, LGMode,
    PhotonParams, ScatteringAngle, ScatteringConfig, SweepAxis, SweepRow, SweepScale, SweepSpec,
    TwistFactor,
};

#[derive(Parser)]
#[command(
    name = "vortex-scatter",
    about = "Elastic scattering of twisted photons on atomic hydrogen: form factors, cross sections and twist factors",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both form factors, cross sections and the twist factor at
    /// a single configuration.
    Amplitude(AmplitudeArgs),
    /// Sweep one axis (theta, rayleigh or wavelength) and emit a CSV table.
    Sweep(SweepArgs),
    /// Run one of the predefined figure sweeps.
    Figure(FigureArgs),
}

/// Physics and integrator flags shared by all subcommands. Every flag can
/// also be given in a `key = value` config file; command-line flags win.
#[derive(Args, Debug, Default, Clone)]
struct PhysicsArgs {
    /// Config file with `key = value` lines mirroring these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Initial electronic state label (e.g. 1s, 3s).
    #[arg(long)]
    initial: Option<String>,
    /// Magnetic quantum number of the initial state [default: 0].
    #[arg(long, allow_negative_numbers = true)]
    initial_m: Option<i32>,
    /// Final electronic state label (e.g. 3d).
    #[arg(long = "final")]
    final_state: Option<String>,
    /// Magnetic quantum number of the final state
    /// [default: initial-m + l-in - l-out].
    #[arg(long, allow_negative_numbers = true)]
    final_m: Option<i32>,
    /// Orbital angular momentum index of the incoming mode.
    #[arg(long, allow_negative_numbers = true)]
    l_in: Option<i32>,
    /// Orbital angular momentum index of the outgoing mode.
    #[arg(long, allow_negative_numbers = true)]
    l_out: Option<i32>,
    /// Radial index of the incoming mode [default: 0].
    #[arg(long)]
    p_in: Option<u32>,
    /// Radial index of the outgoing mode [default: 0].
    #[arg(long)]
    p_out: Option<u32>,
    /// Photon wavelength in nm.
    #[arg(long)]
    wavelength_nm: Option<f64>,
    /// Rayleigh range in nm.
    #[arg(long)]
    rayleigh_nm: Option<f64>,
    /// Scattering angle in radians.
    #[arg(long, allow_negative_numbers = true)]
    theta_rad: Option<f64>,
    /// Polarization overlap |Λ_i·Λ_f|² in [0, 1] [default: 1].
    #[arg(long)]
    pol_overlap: Option<f64>,
    /// Absolute tolerance of the cubature [default: 1e-10].
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Relative tolerance of the cubature [default: 1e-6].
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Evaluation budget per integral [default: 5e7].
    #[arg(long, value_parser = parse_evals)]
    max_evals: Option<u64>,
    /// Radial cutoff factor: the box extends to r-max-factor * n_max Bohr
    /// radii [default: 30].
    #[arg(long)]
    r_max_factor: Option<f64>,
}

#[derive(Args)]
struct AmplitudeArgs {
    #[command(flatten)]
    physics: PhysicsArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Axis to sweep: theta | rayleigh | wavelength.
    #[arg(long)]
    axis: Option<String>,
    /// First grid value (rad for theta, nm otherwise).
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    /// Last grid value.
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    /// Number of grid points (>= 2).
    #[arg(long)]
    points: Option<usize>,
    /// Grid spacing: linear | log.
    #[arg(long)]
    scale: Option<String>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id: 3 | 4a | 4b | 5a | 5b.
    #[arg(long)]
    id: String,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_evals(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 1.0 && v.is_finite() => Ok(v.round() as u64),
        _ => Err(format!("{s:?} is not a positive evaluation count")),
    }
}

/// A config file is flat `key = value` text; keys are the long flag names
/// without the leading dashes. `#` starts a comment.
fn read_config_file(path: &PathBuf) -> Result<HashMap<String, String>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "{}:{}: expected `key = value`, got {raw:?}",
                path.display(),
                lineno + 1
            ));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

const CONFIG_KEYS: &[&str] = &[
    "initial",
    "initial-m",
    "final",
    "final-m",
    "l-in",
    "l-out",
    "p-in",
    "p-out",
    "wavelength-nm",
    "rayleigh-nm",
    "theta-rad",
    "pol-overlap",
    "abs-tol",
    "rel-tol",
    "max-evals",
    "r-max-factor",
    "axis",
    "from",
    "to",
    "points",
    "scale",
    "out",
];

fn check_known_keys(map: &HashMap<String, String>) -> Result<(), String> {
    for key in map.keys() {
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(format!("unknown config key {key:?}"));
        }
    }
    Ok(())
}

struct Resolver {
    file: HashMap<String, String>,
}

impl Resolver {
    fn new(config: &Option<PathBuf>) -> Result<Self, String> {
        let file = match config {
            Some(path) => {
                let map = read_config_file(path)?;
                check_known_keys(&map)?;
                map
            }
            None => HashMap::new(),
        };
        Ok(Self { file })
    }

    /// Flag value, else config-file value, else None.
    fn get<T: std::str::FromStr>(&self, flag: &Option<T>, key: &str) -> Result<Option<T>, String>
    where
        T: Clone,
    {
        if let Some(v) = flag {
            return Ok(Some(v.clone()));
        }
        match self.file.get(key) {
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| format!("config key {key} has unparseable value {raw:?}")),
            None => Ok(None),
        }
    }

    fn require<T: std::str::FromStr + Clone>(
        &self,
        flag: &Option<T>,
        key: &str,
    ) -> Result<T, String> {
        self.get(flag, key)?
            .ok_or_else(|| format!("missing required parameter --{key}"))
    }
}

/// Build the scattering configuration from flags + config file. When an
/// axis is being swept, that axis's parameter may be omitted; a
/// placeholder is used and replaced at every grid point.
fn build_config(
    physics: &PhysicsArgs,
    resolver: &Resolver,
    swept: Option<SweepAxis>,
) -> Result<ScatteringConfig, String> {
    let initial_label = resolver.require(&physics.initial, "initial")?;
    let final_label = resolver.require(&physics.final_state, "final")?;
    let l_in = resolver.require(&physics.l_in, "l-in")?;
    let l_out = resolver.require(&physics.l_out, "l-out")?;
    let p_in = resolver.get(&physics.p_in, "p-in")?.unwrap_or(0);
    let p_out = resolver.get(&physics.p_out, "p-out")?.unwrap_or(0);

    let wavelength = match (swept, resolver.get(&physics.wavelength_nm, "wavelength-nm")?) {
        (Some(SweepAxis::Wavelength), maybe) => maybe.unwrap_or(550.0),
        (_, Some(v)) => v,
        (_, None) => return Err("missing required parameter --wavelength-nm".into()),
    };
    let rayleigh = match (swept, resolver.get(&physics.rayleigh_nm, "rayleigh-nm")?) {
        (Some(SweepAxis::Rayleigh), maybe) => maybe.unwrap_or(1000.0),
        (_, Some(v)) => v,
        (_, None) => return Err("missing required parameter --rayleigh-nm".into()),
    };
    let theta = match (swept, resolver.get(&physics.theta_rad, "theta-rad")?) {
        (Some(SweepAxis::Theta), maybe) => maybe.unwrap_or(0.0),
        (_, Some(v)) => v,
        (_, None) => return Err("missing required parameter --theta-rad".into()),
    };

    let initial_m = resolver.get(&physics.initial_m, "initial-m")?.unwrap_or(0);
    let final_m = resolver
        .get(&physics.final_m, "final-m")?
        .unwrap_or_else(|| vortex_scatter::default_final_m(initial_m, l_in, l_out));

    let initial = vortex_scatter::parse_state_label(&initial_label, initial_m)
        .map_err(|e| format!("--initial: {e}"))?;
    let final_state = vortex_scatter::parse_state_label(&final_label, final_m)
        .map_err(|e| format!("--final: {e}"))?;

    let photon = PhotonParams::from_nm(wavelength, rayleigh).map_err(|e| e.to_string())?;
    let angle = ScatteringAngle::new(theta).map_err(|e| format!("--theta-rad: {e}"))?;

    let mut cfg = ScatteringConfig::new(
        initial,
        final_state,
        LGMode::new(p_in, l_in, photon),
        LGMode::new(p_out, l_out, photon),
        angle,
    )
    .map_err(|e| e.to_string())?;

    cfg.polarization_overlap = resolver.get(&physics.pol_overlap, "pol-overlap")?.unwrap_or(1.0);
    cfg.r_max_factor = resolver
        .get(&physics.r_max_factor, "r-max-factor")?
        .unwrap_or(30.0);
    cfg.integrator = IntegratorConfig {
        abs_tol: resolver.get(&physics.abs_tol, "abs-tol")?.unwrap_or(1e-10),
        rel_tol: resolver.get(&physics.rel_tol, "rel-tol")?.unwrap_or(1e-6),
        max_evals: resolver
            .get(&physics.max_evals, "max-evals")?
            .unwrap_or(50_000_000),
        ..IntegratorConfig::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    match s.to_ascii_lowercase().as_str() {
        "theta" => Ok(SweepAxis::Theta),
        "rayleigh" => Ok(SweepAxis::Rayleigh),
        "wavelength" => Ok(SweepAxis::Wavelength),
        other => Err(format!(
            "unknown axis {other:?} (expected theta, rayleigh or wavelength)"
        )),
    }
}

fn parse_scale(s: &str) -> Result<SweepScale, String> {
    match s.to_ascii_lowercase().as_str() {
        "linear" => Ok(SweepScale::Linear),
        "log" => Ok(SweepScale::Log),
        other => Err(format!("unknown scale {other:?} (expected linear or log)")),
    }
}

fn run_amplitude(args: &AmplitudeArgs) -> Result<u8, String> {
    let resolver = Resolver::new(&args.physics.config)?;
    let cfg = build_config(&args.physics, &resolver, None)?;
    let out = full_amplitude(&cfg).map_err(|e| e.to_string())?;

    println!(
        "M    = {:+.12e} {:+.12e} i   |M|^2   = {:.12e}",
        out.plane.re,
        out.plane.im,
        out.plane.norm_sqr()
    );
    println!(
        "M_v  = {:+.12e} {:+.12e} i   |M_v|^2 = {:.12e}",
        out.vortex.re,
        out.vortex.im,
        out.vortex.norm_sqr()
    );
    println!("dsigma_pw/dOmega = {:.12e} m^2/sr", out.dsigma_pw);
    println!("dsigma_v/dOmega  = {:.12e} m^2/sr", out.dsigma_v);
    match out.twist {
        TwistFactor::Finite(t) => println!("T_v  = {t:.12e}"),
        TwistFactor::Divergent => println!("T_v  = inf (|M|^2 below divergence floor)"),
    }
    println!(
        "quadrature M  : err {:.3e}  evals {}  regions {}  converged {}",
        out.plane_quad.error_est,
        out.plane_quad.n_evals,
        out.plane_quad.n_regions,
        out.plane_quad.converged
    );
    println!(
        "quadrature M_v: err {:.3e}  evals {}  regions {}  converged {}",
        out.vortex_quad.error_est,
        out.vortex_quad.n_evals,
        out.vortex_quad.n_regions,
        out.vortex_quad.converged
    );

    Ok(if out.plane_quad.converged && out.vortex_quad.converged {
        0
    } else {
        2
    })
}

fn write_rows(rows: &[SweepRow], out: &Option<PathBuf>) -> Result<u8, String> {
    let csv = emit_csv(rows);
    match out {
        Some(path) => fs::write(path, &csv)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(if rows.iter().all(SweepRow::converged) {
        0
    } else {
        2
    })
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<u8, String> {
    let resolver = Resolver::new(&args.physics.config)?;
    let axis = parse_axis(&resolver.require(&args.axis, "axis")?)?;
    let scale = parse_scale(
        &resolver
            .get(&args.scale, "scale")?
            .unwrap_or_else(|| "linear".to_string()),
    )?;
    let spec = SweepSpec {
        axis,
        from: resolver.require(&args.from, "from")?,
        to: resolver.require(&args.to, "to")?,
        points: resolver.require(&args.points, "points")?,
        scale,
        base: build_config(&args.physics, &resolver, Some(axis))?,
    };
    spec.validate().map_err(|e| e.to_string())?;
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    let out = resolver.get(&args.out, "out")?;
    write_rows(&rows, &out)
}

fn run_figure(args: &FigureArgs) -> Result<u8, String> {
    let id = FigureId::parse(&args.id).map_err(|e| e.to_string())?;
    let spec = figure_preset(id);
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    write_rows(&rows, &args.out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let outcome = match &cli.command {
        Command::Amplitude(args) => run_amplitude(args),
        Command::Sweep(args) => run_sweep_cmd(args),
        Command::Figure(args) => run_figure(args),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
