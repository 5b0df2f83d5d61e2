//! Execution of a resolved [`RunConfig`]: build the device, run the sweep or
//! design calculation, render the output.

use spinflux::gauge::{curvature, make_field};
use spinflux::ring::{design_filter_ring, material_parameters, phi_r_ring, RingDevice};
use spinflux::scattering::{BasisKind, SpinBasis};
use spinflux::square::{design_filter_square, phi_r_square, SquareDevice};
use spinflux::TransmissionRecord;

use crate::config::{BasisChoice, DeviceChoice, FormatChoice, RunConfig, SubcommandKind};
use crate::output::{basis_json, matrix_json, record_json, spinor_components, CsvBuilder};
use crate::CliError;

/// Run a configuration and return the rendered output text.
pub fn execute(config: &RunConfig) -> Result<String, CliError> {
    match config.subcommand {
        SubcommandKind::Field => run_field(config),
        SubcommandKind::Square => run_square(config),
        SubcommandKind::Ring => run_ring(config),
        SubcommandKind::Design => run_design(config),
        SubcommandKind::Sweep => run_sweep(config),
    }
}

/// Run and write the result to `config.out` (or stdout when unset).
pub fn execute_and_write(config: &RunConfig) -> Result<(), CliError> {
    let rendered = execute(config)?;
    match &config.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn numerical(e: spinflux::Error) -> CliError {
    CliError::Numerical(e.to_string())
}

fn basis_override(config: &RunConfig) -> Option<SpinBasis> {
    match config.basis {
        BasisChoice::Tilted => None,
        BasisChoice::Sz => Some(SpinBasis::sigma_z(BasisKind::SigmaZ)),
    }
}

fn run_field(config: &RunConfig) -> Result<String, CliError> {
    let field = make_field(config.so.to_core(), config.theta, config.b_z);
    let f = curvature(&field);
    let pauli = f.pauli_components();

    Ok(match config.format {
        FormatChoice::Csv => {
            let mut csv = CsvBuilder::new(&["component", "re", "im"]);
            for (label, v) in [
                ("f_00", f.e[0][0]),
                ("f_01", f.e[0][1]),
                ("f_10", f.e[1][0]),
                ("f_11", f.e[1][1]),
                ("pauli_identity", pauli[0]),
                ("pauli_x", pauli[1]),
                ("pauli_y", pauli[2]),
                ("pauli_z", pauli[3]),
            ] {
                csv.row_labeled(label, &[v.re, v.im]);
            }
            csv.finish()
        }
        FormatChoice::Json => {
            let value = serde_json::json!({
                "so": config.so,
                "theta": config.theta,
                "b_z": config.b_z,
                "curvature": matrix_json(&f),
                "pauli": {
                    "identity": [pauli[0].re, pauli[0].im],
                    "x": [pauli[1].re, pauli[1].im],
                    "y": [pauli[2].re, pauli[2].im],
                    "z": [pauli[3].re, pauli[3].im],
                },
            });
            pretty(value)
        }
    })
}

fn run_square(config: &RunConfig) -> Result<String, CliError> {
    let device = SquareDevice::new(
        config.t,
        config.theta_l,
        config.phi_b,
        config.so.to_core(),
        config.geometry.to_core(),
    );
    let basis = basis_override(config);
    let grid = config.energy_grid();
    let records = device
        .transmission_sweep(&grid, basis.as_ref())
        .map_err(numerical)?;

    Ok(match config.format {
        FormatChoice::Csv => square_csv(&records),
        FormatChoice::Json => {
            let value = serde_json::json!({
                "device": "square",
                "t": config.t,
                "theta_l": config.theta_l,
                "phi_b": config.phi_b,
                "so": config.so,
                "geometry": config.geometry,
                "in_basis": basis_json(&records[0].in_basis),
                "out_basis": basis_json(&records[0].out_basis),
                "records": records.iter().map(|r| record_json(r, None)).collect::<Vec<_>>(),
            });
            pretty(value)
        }
    })
}

fn square_csv(records: &[TransmissionRecord]) -> String {
    let mut csv = CsvBuilder::new(&[
        "energy",
        "t_uu",
        "t_ud",
        "t_du",
        "t_dd",
        "in_up_0_re",
        "in_up_0_im",
        "in_up_1_re",
        "in_up_1_im",
        "in_down_0_re",
        "in_down_0_im",
        "in_down_1_re",
        "in_down_1_im",
        "out_up_0_re",
        "out_up_0_im",
        "out_up_1_re",
        "out_up_1_im",
        "out_down_0_re",
        "out_down_0_im",
        "out_down_1_re",
        "out_down_1_im",
    ]);
    for rec in records {
        let mut values = vec![
            rec.energy,
            rec.coefficients[0][0],
            rec.coefficients[0][1],
            rec.coefficients[1][0],
            rec.coefficients[1][1],
        ];
        values.extend(spinor_components(&rec.in_basis.up));
        values.extend(spinor_components(&rec.in_basis.down));
        values.extend(spinor_components(&rec.out_basis.up));
        values.extend(spinor_components(&rec.out_basis.down));
        csv.row(&values);
    }
    csv.finish()
}

fn run_ring(config: &RunConfig) -> Result<String, CliError> {
    let device = RingDevice::new(config.theta_r, config.phi_b);
    let basis = basis_override(config);
    let grid = config.energy_grid();
    let records = device
        .transmission_sweep(&grid, basis.as_ref())
        .map_err(numerical)?;

    Ok(match config.format {
        FormatChoice::Csv => {
            let mut csv =
                CsvBuilder::new(&["energy", "k_phi", "t_uu", "t_ud", "t_du", "t_dd"]);
            for rec in &records {
                csv.row(&[
                    rec.energy,
                    rec.energy.sqrt(),
                    rec.coefficients[0][0],
                    rec.coefficients[0][1],
                    rec.coefficients[1][0],
                    rec.coefficients[1][1],
                ]);
            }
            csv.finish()
        }
        FormatChoice::Json => {
            // The JSON form carries the matching-system condition number per
            // energy alongside the coefficients.
            let rows = records
                .iter()
                .map(|r| {
                    let (_, condition) = device.s_matrix_detailed(r.energy).map_err(numerical)?;
                    let mut row = record_json(r, Some(r.energy.sqrt()));
                    row.as_object_mut()
                        .unwrap()
                        .insert("condition".into(), serde_json::json!(condition));
                    Ok(row)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let value = serde_json::json!({
                "device": "ring",
                "theta_r": config.theta_r,
                "phi_b": config.phi_b,
                "phi_r": phi_r_ring(config.theta_r),
                "in_basis": basis_json(&records[0].in_basis),
                "out_basis": basis_json(&records[0].out_basis),
                "records": rows,
            });
            pretty(value)
        }
    })
}

fn run_design(config: &RunConfig) -> Result<String, CliError> {
    Ok(match config.device {
        DeviceChoice::Square => {
            let (phi_b, theta_l) = design_filter_square();
            match config.format {
                FormatChoice::Json => pretty(serde_json::json!({
                    "device": "square",
                    "phi_b": phi_b,
                    "theta_l": theta_l,
                    "phi_r": phi_r_square(theta_l),
                })),
                FormatChoice::Csv => {
                    let mut csv = CsvBuilder::new(&["quantity", "value"]);
                    csv.row_labeled("phi_b", &[phi_b]);
                    csv.row_labeled("theta_l", &[theta_l]);
                    csv.row_labeled("phi_r", &[phi_r_square(theta_l)]);
                    csv.finish()
                }
            }
        }
        DeviceChoice::Ring => {
            let (phi_b, theta_r) = design_filter_ring(config.m, config.n);
            let (radius, b_z) = material_parameters(config.n, config.m_eff, config.alpha_hbar);
            // Realizations of the first few spin-phase branches at m = 0.
            let table: Vec<serde_json::Value> = (0..3)
                .map(|n| {
                    let (_, branch_theta) = design_filter_ring(0, n);
                    let (r_n, b_n) = material_parameters(n, config.m_eff, config.alpha_hbar);
                    serde_json::json!({
                        "n": n,
                        "theta_r": branch_theta,
                        "radius_m": r_n,
                        "b_z_tesla": b_n,
                    })
                })
                .collect();
            match config.format {
                FormatChoice::Json => pretty(serde_json::json!({
                    "device": "ring",
                    "m": config.m,
                    "n": config.n,
                    "phi_b": phi_b,
                    "theta_r": theta_r,
                    "phi_r": phi_r_ring(theta_r),
                    "material": {
                        "m_eff_ratio": config.m_eff,
                        "alpha_hbar_ev_m": config.alpha_hbar,
                        "radius_m": radius,
                        "b_z_tesla": b_z,
                    },
                    "branches": table,
                })),
                FormatChoice::Csv => {
                    let mut csv = CsvBuilder::new(&["quantity", "value"]);
                    csv.row_labeled("phi_b", &[phi_b]);
                    csv.row_labeled("theta_r", &[theta_r]);
                    csv.row_labeled("phi_r", &[phi_r_ring(theta_r)]);
                    csv.row_labeled("radius_m", &[radius]);
                    csv.row_labeled("b_z_tesla", &[b_z]);
                    csv.finish()
                }
            }
        }
    })
}

fn run_sweep(config: &RunConfig) -> Result<String, CliError> {
    let phi_r_of = |coupling: f64| -> f64 {
        match config.device {
            DeviceChoice::Square => phi_r_square(coupling),
            DeviceChoice::Ring => phi_r_ring(coupling),
        }
    };
    let step = config.max_coupling / (config.n_grid - 1) as f64;
    let couplings: Vec<f64> = (0..config.n_grid).map(|k| step * k as f64).collect();

    Ok(match config.format {
        FormatChoice::Csv => {
            let mut csv = CsvBuilder::new(&["coupling", "phi_r_up", "phi_r_down"]);
            for &x in &couplings {
                let p = phi_r_of(x);
                csv.row(&[x, p, -p]);
            }
            csv.finish()
        }
        FormatChoice::Json => {
            let rows: Vec<serde_json::Value> = couplings
                .iter()
                .map(|&x| {
                    let p = phi_r_of(x);
                    serde_json::json!({"coupling": x, "phi_r_up": p, "phi_r_down": -p})
                })
                .collect();
            pretty(serde_json::json!({
                "device": config.device,
                "rows": rows,
            }))
        }
    })
}

fn pretty(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}
