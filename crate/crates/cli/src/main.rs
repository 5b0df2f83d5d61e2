use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spinflux_cli::config::{
    load_config_file, BasisChoice, DeviceChoice, FormatChoice, GeometryChoice, PartialConfig,
    RunConfig, SoChoice, SubcommandKind,
};
use spinflux_cli::{execute_and_write, CliError};

/// Spin-orbit coupling as an SU(2) gauge field: curvature fields, loop
/// holonomies, and perfect-spin-filter interferometers.
#[derive(Parser)]
#[command(name = "spinflux", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the physical curvature field of a gauge configuration.
    Field(FieldArgs),
    /// Spin-resolved transmission of the tight-binding square interferometer.
    Square(SquareArgs),
    /// Spin-resolved transmission of the continuum ring interferometer.
    Ring(RingArgs),
    /// Perfect-filter parameters and material estimates.
    Design(DesignArgs),
    /// Spin-dependent loop phase versus coupling strength.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<FormatChoice>,
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Spin-orbit interaction kind.
    #[arg(long, value_enum)]
    so: Option<SoChoice>,
    /// Coupling strength θ (dimensionless).
    #[arg(long)]
    theta: Option<f64>,
    /// Magnetic flux density (natural units).
    #[arg(long)]
    b_z: Option<f64>,
}

#[derive(Args)]
struct SquareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Hopping energy (the energy unit).
    #[arg(long)]
    t: Option<f64>,
    /// Spin-orbit angle per link θl.
    #[arg(long)]
    theta_l: Option<f64>,
    /// Flux through the square in units of the flux quantum.
    #[arg(long)]
    phi_b: Option<f64>,
    #[arg(long, value_enum)]
    so: Option<SoChoice>,
    #[arg(long, value_enum)]
    geometry: Option<GeometryChoice>,
    #[arg(long)]
    emin: Option<f64>,
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long)]
    n_grid: Option<usize>,
    /// Spin analyzer basis.
    #[arg(long, value_enum)]
    basis: Option<BasisChoice>,
}

#[derive(Args)]
struct RingArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Spin-orbit strength θR.
    #[arg(long)]
    theta_r: Option<f64>,
    /// Flux through the ring in units of the flux quantum.
    #[arg(long)]
    phi_b: Option<f64>,
    #[arg(long)]
    emin: Option<f64>,
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long)]
    n_grid: Option<usize>,
    #[arg(long, value_enum)]
    basis: Option<BasisChoice>,
}

#[derive(Args)]
struct DesignArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Design the square interferometer filter.
    #[arg(long, conflicts_with = "ring")]
    square: bool,
    /// Design the ring filter (the default).
    #[arg(long)]
    ring: bool,
    /// Flux branch index m (φ_B = 1/4 + m).
    #[arg(long)]
    m: Option<u32>,
    /// Spin-phase branch index n (φ_R = 1/4 + n).
    #[arg(long)]
    n: Option<u32>,
    /// Effective mass ratio m*/m_e for the material estimate.
    #[arg(long)]
    m_eff: Option<f64>,
    /// Measured αħ in eV·m for the material estimate.
    #[arg(long)]
    alpha_hbar: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which device's loop phase to sweep.
    #[arg(long, value_enum)]
    device: Option<DeviceChoice>,
    /// Upper end of the coupling range (lower end is 0).
    #[arg(long)]
    max_coupling: Option<f64>,
    #[arg(long)]
    n_grid: Option<usize>,
}

fn resolve(command: Command) -> Result<RunConfig, CliError> {
    let (subcommand, common, flags) = match command {
        Command::Field(args) => (
            SubcommandKind::Field,
            args.common,
            PartialConfig {
                so: args.so,
                theta: args.theta,
                b_z: args.b_z,
                ..Default::default()
            },
        ),
        Command::Square(args) => (
            SubcommandKind::Square,
            args.common,
            PartialConfig {
                t: args.t,
                theta_l: args.theta_l,
                phi_b: args.phi_b,
                so: args.so,
                geometry: args.geometry,
                emin: args.emin,
                emax: args.emax,
                n_grid: args.n_grid,
                basis: args.basis,
                ..Default::default()
            },
        ),
        Command::Ring(args) => (
            SubcommandKind::Ring,
            args.common,
            PartialConfig {
                theta_r: args.theta_r,
                phi_b: args.phi_b,
                emin: args.emin,
                emax: args.emax,
                n_grid: args.n_grid,
                basis: args.basis,
                device: Some(DeviceChoice::Ring),
                ..Default::default()
            },
        ),
        Command::Design(args) => {
            let device = if args.square {
                Some(DeviceChoice::Square)
            } else if args.ring {
                Some(DeviceChoice::Ring)
            } else {
                None
            };
            (
                SubcommandKind::Design,
                args.common,
                PartialConfig {
                    device,
                    m: args.m,
                    n: args.n,
                    m_eff: args.m_eff,
                    alpha_hbar: args.alpha_hbar,
                    ..Default::default()
                },
            )
        }
        Command::Sweep(args) => (
            SubcommandKind::Sweep,
            args.common,
            PartialConfig {
                device: args.device,
                max_coupling: args.max_coupling,
                n_grid: args.n_grid,
                ..Default::default()
            },
        ),
    };

    let mut merged = match &common.config {
        Some(path) => load_config_file(path)?,
        None => PartialConfig::default(),
    };
    merged = merged.overlaid_with(flags);
    merged = merged.overlaid_with(PartialConfig {
        out: common.out,
        format: common.format,
        ..Default::default()
    });
    RunConfig::resolve(subcommand, merged)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match resolve(cli.command) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match execute_and_write(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
