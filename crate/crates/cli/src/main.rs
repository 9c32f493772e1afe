//! `fluxhoop` command-line driver.

mod commands;
mod output;
mod settings;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use settings::Settings;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Solver(fluxhoop::Error),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Solver(e) => write!(f, "solver failure: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<fluxhoop::Error> for CliError {
    fn from(e: fluxhoop::Error) -> Self {
        CliError::Solver(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Parser)]
#[command(
    name = "fluxhoop",
    version,
    about = "Scattering of a charged particle on a rigid half-quantum flux hoop"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand. Any of them may also be given as
/// `key = value` in the `--config` file; flags win.
#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `natural` (hbar = m_H = R = 1) or `si`.
    #[arg(long)]
    units: Option<String>,
    /// Sample grid `min:max:count[:log]`.
    #[arg(long)]
    grid: Option<String>,
    /// Truncation `N=<even>,L=<odd>`.
    #[arg(long)]
    trunc: Option<String>,
    /// File of `key = value` settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Never changes the output.
    #[arg(long)]
    threads: Option<usize>,
    /// Hoop radius in m (SI units only).
    #[arg(long)]
    radius: Option<String>,
    /// Hoop mass in kg (SI units only).
    #[arg(long)]
    hoop_mass: Option<String>,
    /// Particle mass in kg (SI units only); infinite when omitted.
    #[arg(long)]
    particle_mass: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// S/P phase shift over an energy grid in units of W.
    PhaseScan {
        #[command(flatten)]
        common: Common,
    },
    /// Position, width and lifetime of the near-threshold resonance.
    Resonance {
        #[command(flatten)]
        common: Common,
        /// Refinement tolerance in units of W.
        #[arg(long)]
        tolerance: Option<String>,
        /// Transit frequency from the exterior kinetic energy (`exterior`)
        /// or the total energy (`total`).
        #[arg(long)]
        convention: Option<String>,
    },
    /// Effective radial potential over a grid in r/R.
    Potential {
        #[command(flatten)]
        common: Common,
        /// Comma-separated channel orders; even are interior, odd exterior.
        #[arg(long)]
        l_values: Option<String>,
    },
    /// Variational energies and their extrapolation.
    Variational {
        #[command(flatten)]
        common: Common,
        /// `bessel` or `simple`.
        #[arg(long)]
        trial: Option<String>,
        /// Interior cutoffs N (bessel trial).
        #[arg(long)]
        n_values: Option<String>,
        /// Exterior cutoffs L (bessel trial).
        #[arg(long)]
        l_values: Option<String>,
        /// Construction energies e in units of W (bessel trial).
        #[arg(long)]
        e_grid: Option<String>,
        /// Largest exterior order (simple trial).
        #[arg(long)]
        l_max: Option<String>,
    },
    /// Static-hoop multichannel amplitudes.
    StaticScan {
        #[command(flatten)]
        common: Common,
        /// Grid variable: `k1r` or `energy` (E/W).
        #[arg(long)]
        axis: Option<String>,
        /// Exterior cutoffs L.
        #[arg(long)]
        l_values: Option<String>,
    },
    /// Size, lifetime and temperature scale of a nanotube hoop.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        /// Atoms around the minor circumference.
        #[arg(long)]
        n: Option<String>,
        /// kg
        #[arg(long)]
        carbon_mass: Option<String>,
        /// m
        #[arg(long)]
        bond_length: Option<String>,
        /// kg/m^3
        #[arg(long)]
        density: Option<String>,
    },
}

fn settings_from(common: &Common, extra: &[(&str, &Option<String>)]) -> Result<Settings, CliError> {
    let mut s = match &common.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    s.set_opt("units", &common.units);
    s.set_opt("grid", &common.grid);
    s.set_opt("trunc", &common.trunc);
    s.set_opt("radius", &common.radius);
    s.set_opt("hoop-mass", &common.hoop_mass);
    s.set_opt("particle-mass", &common.particle_mass);
    s.set_opt("out", &common.out.as_ref().map(|p| p.display().to_string()));
    s.set_opt("threads", &common.threads.map(|t| t.to_string()));
    for (k, v) in extra {
        s.set_opt(k, v);
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (name, mut settings) = match &cli.command {
        Command::PhaseScan { common } => ("phase-scan", settings_from(common, &[])?),
        Command::Resonance {
            common,
            tolerance,
            convention,
        } => (
            "resonance",
            settings_from(
                common,
                &[("tolerance", tolerance), ("convention", convention)],
            )?,
        ),
        Command::Potential { common, l_values } => (
            "potential",
            settings_from(common, &[("l-values", l_values)])?,
        ),
        Command::Variational {
            common,
            trial,
            n_values,
            l_values,
            e_grid,
            l_max,
        } => (
            "variational",
            settings_from(
                common,
                &[
                    ("trial", trial),
                    ("n-values", n_values),
                    ("l-values", l_values),
                    ("e-grid", e_grid),
                    ("l-max", l_max),
                ],
            )?,
        ),
        Command::StaticScan {
            common,
            axis,
            l_values,
        } => (
            "static-scan",
            settings_from(common, &[("axis", axis), ("l-values", l_values)])?,
        ),
        Command::Estimate {
            common,
            alpha,
            beta,
            n,
            carbon_mass,
            bond_length,
            density,
        } => (
            "estimate",
            settings_from(
                common,
                &[
                    ("alpha", alpha),
                    ("beta", beta),
                    ("n", n),
                    ("carbon-mass", carbon_mass),
                    ("bond-length", bond_length),
                    ("density", density),
                ],
            )?,
        ),
    };

    // neither changes the numbers, so they stay out of the config echo
    let out = settings.remove("out").map(PathBuf::from);
    let threads: usize = match settings.remove("threads") {
        Some(t) => t
            .parse()
            .map_err(|_| CliError::Usage(format!("bad thread count `{t}`")))?,
        None => 0,
    };

    let text =
        fluxhoop::parallel::with_threads(threads, || commands::dispatch(name, &mut settings))?;

    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fluxhoop: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
