//! Run configuration: flag/file merging, defaults, and validation.
//!
//! A run is described by a flat [`RunConfig`]. Values come from three layers,
//! later layers winning: subcommand defaults, a JSON config file (same field
//! names), then explicit command-line flags.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use spinflux::{Geometry, SoKind};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SubcommandKind {
    Field,
    Square,
    Ring,
    Design,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SoChoice {
    Rashba,
    Dresselhaus,
    None,
}

impl SoChoice {
    pub fn to_core(self) -> SoKind {
        match self {
            SoChoice::Rashba => SoKind::Rashba,
            SoChoice::Dresselhaus => SoKind::Dresselhaus,
            SoChoice::None => SoKind::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GeometryChoice {
    Sym,
    Asym,
}

impl GeometryChoice {
    pub fn to_core(self) -> Geometry {
        match self {
            GeometryChoice::Sym => Geometry::Symmetric,
            GeometryChoice::Asym => Geometry::Asymmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BasisChoice {
    /// Junction-local loop eigenbases (the device default).
    Tilted,
    /// Plain σz on both leads.
    Sz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DeviceChoice {
    Square,
    Ring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FormatChoice {
    Csv,
    Json,
}

/// Fully resolved run description; serializing it and reading it back as a
/// config file reproduces the same run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub t: f64,
    pub theta: f64,
    pub b_z: f64,
    pub theta_l: f64,
    pub theta_r: f64,
    pub phi_b: f64,
    pub so: SoChoice,
    pub geometry: GeometryChoice,
    pub device: DeviceChoice,
    pub m: u32,
    pub n: u32,
    pub m_eff: f64,
    pub alpha_hbar: f64,
    pub emin: f64,
    pub emax: f64,
    pub n_grid: usize,
    pub basis: BasisChoice,
    pub max_coupling: f64,
    pub out: Option<PathBuf>,
    pub format: FormatChoice,
}

/// The same fields, all optional: the shape of a config file and of the
/// collected command-line flags.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialConfig {
    pub subcommand: Option<SubcommandKind>,
    pub t: Option<f64>,
    pub theta: Option<f64>,
    pub b_z: Option<f64>,
    pub theta_l: Option<f64>,
    pub theta_r: Option<f64>,
    pub phi_b: Option<f64>,
    pub so: Option<SoChoice>,
    pub geometry: Option<GeometryChoice>,
    pub device: Option<DeviceChoice>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub m_eff: Option<f64>,
    pub alpha_hbar: Option<f64>,
    pub emin: Option<f64>,
    pub emax: Option<f64>,
    pub n_grid: Option<usize>,
    pub basis: Option<BasisChoice>,
    pub max_coupling: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<FormatChoice>,
}

impl PartialConfig {
    /// Overlay `other` on top of `self` (fields set in `other` win).
    pub fn overlaid_with(mut self, other: PartialConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if other.$field.is_some() { self.$field = other.$field; })*
            };
        }
        take!(
            subcommand, t, theta, b_z, theta_l, theta_r, phi_b, so, geometry, device, m, n,
            m_eff, alpha_hbar, emin, emax, n_grid, basis, max_coupling, out, format
        );
        self
    }
}

/// Reference material constants used when none are supplied: the
/// InGaAs/InAlAs heterojunction values m*/m_e = 0.041, αħ = 3×10⁻¹¹ eV·m.
pub const DEFAULT_M_EFF: f64 = 0.041;
pub const DEFAULT_ALPHA_HBAR: f64 = 3e-11;

impl RunConfig {
    /// Fill a partial description with per-subcommand defaults. Device
    /// parameters default to the perfect-filter design point; energy grids
    /// to the 400-point figure grids.
    pub fn resolve(subcommand: SubcommandKind, partial: PartialConfig) -> Result<Self, CliError> {
        let (_, design_theta_l) = spinflux::square::design_filter_square();
        let (design_phi_b, design_theta_r) = spinflux::ring::design_filter_ring(0, 0);

        let t = partial.t.unwrap_or(1.0);
        let device = partial.device.unwrap_or(match subcommand {
            SubcommandKind::Ring => DeviceChoice::Ring,
            _ => DeviceChoice::Square,
        });
        let grid_device = match subcommand {
            SubcommandKind::Ring => DeviceChoice::Ring,
            SubcommandKind::Square => DeviceChoice::Square,
            _ => device,
        };
        let (emin_default, emax_default) = match grid_device {
            DeviceChoice::Square => (-1.99 * t, 1.99 * t),
            DeviceChoice::Ring => (0.01, 100.0),
        };
        let max_coupling_default = match grid_device {
            DeviceChoice::Square => std::f64::consts::PI,
            DeviceChoice::Ring => 5.0,
        };

        let config = Self {
            subcommand,
            t,
            theta: partial.theta.unwrap_or(1.0),
            b_z: partial.b_z.unwrap_or(0.0),
            theta_l: partial.theta_l.unwrap_or(design_theta_l),
            theta_r: partial.theta_r.unwrap_or(design_theta_r),
            phi_b: partial.phi_b.unwrap_or(design_phi_b),
            so: partial.so.unwrap_or(SoChoice::Rashba),
            geometry: partial.geometry.unwrap_or(GeometryChoice::Sym),
            device,
            m: partial.m.unwrap_or(0),
            n: partial.n.unwrap_or(0),
            m_eff: partial.m_eff.unwrap_or(DEFAULT_M_EFF),
            alpha_hbar: partial.alpha_hbar.unwrap_or(DEFAULT_ALPHA_HBAR),
            emin: partial.emin.unwrap_or(emin_default),
            emax: partial.emax.unwrap_or(emax_default),
            n_grid: partial.n_grid.unwrap_or(400),
            basis: partial.basis.unwrap_or(BasisChoice::Tilted),
            max_coupling: partial.max_coupling.unwrap_or(max_coupling_default),
            out: partial.out,
            format: partial.format.unwrap_or(match subcommand {
                SubcommandKind::Design => FormatChoice::Json,
                _ => FormatChoice::Csv,
            }),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let err = |field: &str, msg: String| Err(CliError::Config(format!("{field}: {msg}")));

        if !self.t.is_finite() || self.t <= 0.0 {
            return err("t", format!("hopping energy must be positive (got {})", self.t));
        }
        if self.theta_l < 0.0 {
            return err("theta_l", format!("must be non-negative (got {})", self.theta_l));
        }
        if self.theta_r < 0.0 {
            return err("theta_r", format!("must be non-negative (got {})", self.theta_r));
        }

        let uses_grid = matches!(
            self.subcommand,
            SubcommandKind::Square | SubcommandKind::Ring | SubcommandKind::Sweep
        );
        if uses_grid {
            if self.n_grid < 2 {
                return err("n_grid", format!("need at least 2 grid points (got {})", self.n_grid));
            }
            if !self.emin.is_finite() || !self.emax.is_finite() || self.emin >= self.emax {
                return err(
                    "emin/emax",
                    format!("need emin < emax (got {} .. {})", self.emin, self.emax),
                );
            }
        }
        match self.subcommand {
            SubcommandKind::Square => {
                let band = 2.0 * self.t;
                if self.emin <= -band || self.emax >= band {
                    return err(
                        "emin/emax",
                        format!(
                            "square grid must lie inside the open band (-{band}, {band}) (got {} .. {})",
                            self.emin, self.emax
                        ),
                    );
                }
            }
            SubcommandKind::Ring => {
                if self.emin < 0.0 {
                    return err(
                        "emin",
                        format!("ring energies must be positive (got emin = {})", self.emin),
                    );
                }
            }
            SubcommandKind::Sweep => {
                if !self.max_coupling.is_finite() || self.max_coupling <= 0.0 {
                    return err(
                        "max_coupling",
                        format!("must be positive (got {})", self.max_coupling),
                    );
                }
            }
            SubcommandKind::Design => {
                if self.m_eff <= 0.0 || self.alpha_hbar <= 0.0 {
                    return err(
                        "m_eff/alpha_hbar",
                        format!(
                            "material constants must be positive (got {} and {})",
                            self.m_eff, self.alpha_hbar
                        ),
                    );
                }
            }
            SubcommandKind::Field => {}
        }
        Ok(())
    }

    /// The energy grid this run sweeps over. Square grids are inclusive
    /// linear grids; ring grids are half-open `(emin, emax]` so the
    /// non-propagating lower edge is never evaluated.
    pub fn energy_grid(&self) -> Vec<f64> {
        match self.subcommand {
            SubcommandKind::Ring => {
                let step = (self.emax - self.emin) / self.n_grid as f64;
                (1..=self.n_grid).map(|k| self.emin + step * k as f64).collect()
            }
            _ => {
                let step = (self.emax - self.emin) / (self.n_grid - 1) as f64;
                (0..self.n_grid).map(|k| self.emin + step * k as f64).collect()
            }
        }
    }
}

/// Parse a config file, mapping malformed JSON to a field-precise message.
pub fn load_config_file(path: &std::path::Path) -> Result<PartialConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))
}
