//! Continuum quantum ring between two quantum wires.
//!
//! The one-dimensional ring Hamiltonian with Rashba coupling,
//! `H = (−i∂_φ − φ_B − (θR/2)σ_r)²` in units of `ħ²/(2m*R²)`, has exact
//! eigenfunctions: plane waves dressed by a φ-dependent spin rotation. Two
//! leads attach at φ = 0 and φ = π; matching the wavefunction and the
//! outward generalized momentum at both junctions yields a 12×12 linear
//! system per energy whose solution is the 4×4 spin-resolved S-matrix.
//!
//! Analyzer conventions mirror the square device: the left lead uses the
//! eigenbasis of the loop phase factor at its own junction
//! (`χ̃_± = e^{−iβσy/2}χ_±`), the right lead the same basis transported to
//! φ = π (`e^{+iβσy/2}χ_±`). In these junction-local frames the two spin
//! channels decouple exactly and the transmission factors
//! `|1 + e^{2πi(φ_B ± φ_R)}|²` sit on the diagonal.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauge::{theta_from_material, FLUX_QUANTUM};
use crate::scattering::{BasisKind, SMatrix4, SpinBasis, TransmissionRecord};
use crate::spin::{exp_i_pauli, Mat2, Spinor};

const TAU: f64 = 2.0 * std::f64::consts::PI;
const PI: f64 = std::f64::consts::PI;

/// Sign label for mode direction and spin branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One exact eigenmode of the ring: dimensionless angular momentum `k_phi`,
/// propagation direction, spin branch. Energy is `k_phi²` in units of
/// `ħ²/(2m*R²)`; the lead wavenumber `k = k_phi/R` carries the same energy.
#[derive(Debug, Clone, Copy)]
pub struct RingMode {
    pub k_phi: f64,
    pub direction: Sign,
    pub spin_branch: Sign,
}

impl RingMode {
    pub fn energy(&self) -> f64 {
        self.k_phi * self.k_phi
    }
}

/// Parameters of the ring interferometer: dimensionless spin-orbit strength
/// `θR` and flux `φ_B` in units of the flux quantum.
#[derive(Debug, Clone, Copy)]
pub struct RingDevice {
    pub theta_r: f64,
    pub phi_b: f64,
}

impl RingDevice {
    pub fn new(theta_r: f64, phi_b: f64) -> Self {
        assert!(theta_r >= 0.0, "spin-orbit strength must be non-negative");
        Self { theta_r, phi_b }
    }

    /// Spin-dependent loop phase `φ_R = (√(1 + θ²R²) − 1)/2`.
    pub fn phi_r(&self) -> f64 {
        phi_r_ring(self.theta_r)
    }

    /// Tilt angle of the spin frame, `β = arctan(θR)`.
    pub fn beta(&self) -> f64 {
        self.theta_r.atan()
    }

    /// Spin frame `F(φ) = e^{−iβσ_φ/2}` with `σ_φ = σy cosφ − σx sinφ`.
    fn frame(&self, phi: f64) -> Mat2 {
        let half = self.beta() / 2.0;
        exp_i_pauli([half * phi.sin(), -half * phi.cos(), 0.0])
    }

    /// Exact eigenfunction value
    /// `Ψ_{ds}(φ) = e^{i(dk + φ_B + sφ_R)φ} e^{−iβσ_φ/2} χ_s`; unit norm
    /// for every φ.
    pub fn eigenfunction(&self, mode: &RingMode, phi: f64) -> Spinor {
        let chi = match mode.spin_branch {
            Sign::Plus => Spinor::basis_up(),
            Sign::Minus => Spinor::basis_down(),
        };
        let exponent = self.mode_exponent(mode.k_phi, mode.direction, mode.spin_branch);
        (self.frame(phi) * chi).scaled(Complex64::from_polar(1.0, exponent * phi))
    }

    /// Coefficient of φ in the mode's phase: `dk + φ_B + sφ_R`.
    fn mode_exponent(&self, k_phi: f64, d: Sign, s: Sign) -> f64 {
        d.value() * k_phi + self.phi_b + s.value() * self.phi_r()
    }

    /// Loop phase factor based at φ = 0:
    /// `U = e^{2πiφ_B} e^{−iβσy/2} e^{2πiφ_R σz} e^{+iβσy/2}`, with
    /// eigenvalues `e^{2πi(φ_B ± φ_R)}` and eigenvectors `χ̃_±`.
    pub fn loop_phase(&self) -> Mat2 {
        let half_beta = self.beta() / 2.0;
        let rot = exp_i_pauli([0.0, -half_beta, 0.0]);
        let diag = exp_i_pauli([0.0, 0.0, TAU * self.phi_r()]);
        (rot * diag * rot.dagger()).scaled(Complex64::from_polar(1.0, TAU * self.phi_b))
    }

    /// Tilted basis at the input junction: `χ̃_± = e^{−iβσy/2} χ_±`, with
    /// real components `(cos β/2, sin β/2)` and `(−sin β/2, cos β/2)`.
    pub fn tilted_basis(&self) -> SpinBasis {
        let rot = self.frame(0.0);
        SpinBasis {
            up: rot * Spinor::basis_up(),
            down: rot * Spinor::basis_down(),
            kind: BasisKind::Tilted,
        }
    }

    /// The loop eigenbasis transported to the output junction at φ = π:
    /// `e^{+iβσy/2} χ_±`.
    pub fn tilted_basis_at_output(&self) -> SpinBasis {
        let rot = self.frame(PI);
        SpinBasis {
            up: rot * Spinor::basis_up(),
            down: rot * Spinor::basis_down(),
            kind: BasisKind::TiltedTransported,
        }
    }

    /// S-matrix at energy `E` (units `ħ²/(2m*R²)`) in the junction-local
    /// tilted bases.
    pub fn s_matrix(&self, energy: f64) -> Result<SMatrix4> {
        Ok(self.s_matrix_detailed(energy)?.0)
    }

    /// S-matrix plus the 1-norm condition number of the matching system.
    pub fn s_matrix_detailed(&self, energy: f64) -> Result<(SMatrix4, f64)> {
        let left = self.tilted_basis();
        let right = self.tilted_basis_at_output();
        self.s_matrix_in_bases(energy, &left, &right)
    }

    /// S-matrix with caller-chosen lead analyzer bases.
    ///
    /// Builds the 16-amplitude matching problem — wavefunction continuity at
    /// both junctions (eight scalar conditions) and conservation of the
    /// outward generalized momentum at both junctions (four) — substitutes
    /// the 4 incoming amplitudes, and solves the dense 12×12 complex system
    /// by partial-pivoting LU, once per incoming channel.
    pub fn s_matrix_in_bases(
        &self,
        energy: f64,
        left_basis: &SpinBasis,
        right_basis: &SpinBasis,
    ) -> Result<(SMatrix4, f64)> {
        if energy <= 0.0 {
            return Err(Error::NonPropagating { energy });
        }

        let rhs = self.matching_rhs(left_basis, right_basis);

        // Arm standing waves decoupled from both junctions make the matching
        // matrix singular at isolated energies while the S-matrix limit
        // stays finite; nudging the momentum off the real axis (retarded
        // prescription) recovers it.
        let k_real = Complex64::new(energy.sqrt(), 0.0);
        let k_shifted = Complex64::new(energy, 1e-12 * energy.max(1.0)).sqrt();
        let (matrix, solution) = [k_real, k_shifted]
            .iter()
            .find_map(|&k| {
                let a = self.matching_matrix(k);
                a.clone().lu().solve(&rhs).map(|sol| (a, sol))
            })
            .ok_or(Error::SingularSystem { energy })?;
        let condition = one_norm_condition(&matrix, energy)?;

        let mut s = SMatrix4::zero();
        for col in 0..4 {
            let b = Spinor::new(solution[(0, col)], solution[(1, col)]);
            let f = Spinor::new(solution[(2, col)], solution[(3, col)]);
            s.entries[0][col] = left_basis.up.inner(&b);
            s.entries[1][col] = left_basis.down.inner(&b);
            s.entries[2][col] = right_basis.up.inner(&f);
            s.entries[3][col] = right_basis.down.inner(&f);
        }
        Ok((s, condition))
    }

    /// Coefficient matrix of the matching problem at (possibly complex)
    /// angular momentum `k`. Unknown layout: [b(2), f(2), c(4), e(4)].
    fn matching_matrix(&self, k: Complex64) -> DMatrix<Complex64> {
        let modes = [
            (Sign::Plus, Sign::Plus),
            (Sign::Plus, Sign::Minus),
            (Sign::Minus, Sign::Plus),
            (Sign::Minus, Sign::Minus),
        ];
        let frame_in = self.frame(0.0);
        let frame_out = self.frame(PI);
        let branch = |s: Sign| match s {
            Sign::Plus => Spinor::basis_up(),
            Sign::Minus => Spinor::basis_down(),
        };
        // e^{i·len·(dk + φ_B + sφ_R)}
        let propagate = |len: f64, d: Sign, s: Sign| -> Complex64 {
            let exponent = d.value() * k + Complex64::new(self.phi_b + s.value() * self.phi_r(), 0.0);
            (Complex64::new(0.0, len) * exponent).exp()
        };

        let mut a = DMatrix::<Complex64>::zeros(12, 12);
        for (j, &(d, s)) in modes.iter().enumerate() {
            let chi_in = frame_in * branch(s);
            let chi_out = frame_out * branch(s);
            let half = propagate(PI, d, s);
            let full = propagate(TAU, d, s);
            let dv = Complex64::new(d.value(), 0.0);

            for comp in 0..2 {
                // E1: b − Σ c χ̃ = −a
                a[(comp, 4 + j)] = -chi_in.c[comp];
                // E2: b − Σ e ω χ̃ = −a
                a[(2 + comp, 8 + j)] = -full * chi_in.c[comp];
                // E3: f − Σ c μ Λχ = −g
                a[(4 + comp, 4 + j)] = -half * chi_out.c[comp];
                // E4: f − Σ e μ Λχ = −g
                a[(6 + comp, 8 + j)] = -half * chi_out.c[comp];
                // E5: b + Σ c d χ̃ − Σ e d ω χ̃ = +a
                a[(8 + comp, 4 + j)] = dv * chi_in.c[comp];
                a[(8 + comp, 8 + j)] = -dv * full * chi_in.c[comp];
                // E6: f − Σ c d μ Λχ + Σ e d μ Λχ = +g
                a[(10 + comp, 4 + j)] = -dv * half * chi_out.c[comp];
                a[(10 + comp, 8 + j)] = dv * half * chi_out.c[comp];
            }
        }
        for comp in 0..2 {
            let one = Complex64::new(1.0, 0.0);
            a[(comp, comp)] = one; // E1 b
            a[(2 + comp, comp)] = one; // E2 b
            a[(4 + comp, 2 + comp)] = one; // E3 f
            a[(6 + comp, 2 + comp)] = one; // E4 f
            a[(8 + comp, comp)] = one; // E5 b
            a[(10 + comp, 2 + comp)] = one; // E6 f
        }
        a
    }

    /// Right-hand sides for the four incoming channels: left up~, left
    /// down~, right up~, right down~.
    fn matching_rhs(&self, left_basis: &SpinBasis, right_basis: &SpinBasis) -> DMatrix<Complex64> {
        let mut rhs = DMatrix::<Complex64>::zeros(12, 4);
        let inputs: [(Option<&Spinor>, Option<&Spinor>); 4] = [
            (Some(&left_basis.up), None),
            (Some(&left_basis.down), None),
            (None, Some(&right_basis.up)),
            (None, Some(&right_basis.down)),
        ];
        for (col, (a_in, g_in)) in inputs.iter().enumerate() {
            if let Some(av) = a_in {
                for comp in 0..2 {
                    rhs[(comp, col)] = -av.c[comp];
                    rhs[(2 + comp, col)] = -av.c[comp];
                    rhs[(8 + comp, col)] = av.c[comp];
                }
            }
            if let Some(gv) = g_in {
                for comp in 0..2 {
                    rhs[(4 + comp, col)] = -gv.c[comp];
                    rhs[(6 + comp, col)] = -gv.c[comp];
                    rhs[(10 + comp, col)] = gv.c[comp];
                }
            }
        }
        rhs
    }

    /// Spin-resolved transmission from the left lead to the right lead,
    /// read off the S-matrix transmission block.
    pub fn transmission(&self, energy: f64, basis: Option<&SpinBasis>) -> Result<TransmissionRecord> {
        let (in_basis, out_basis) = match basis {
            Some(b) => (*b, *b),
            None => (self.tilted_basis(), self.tilted_basis_at_output()),
        };
        let (s, _) = self.s_matrix_in_bases(energy, &in_basis, &out_basis)?;
        let t_matrix = s.transmission_block();
        let mut coefficients = [[0.0; 2]; 2];
        for tau in 0..2 {
            for lambda in 0..2 {
                coefficients[tau][lambda] = t_matrix.e[tau][lambda].norm_sqr();
            }
        }
        Ok(TransmissionRecord {
            energy,
            t_matrix,
            coefficients,
            in_basis,
            out_basis,
        })
    }

    /// Transmission over an energy grid.
    pub fn transmission_sweep(
        &self,
        energies: &[f64],
        basis: Option<&SpinBasis>,
    ) -> Result<Vec<TransmissionRecord>> {
        energies
            .iter()
            .map(|&e| self.transmission(e, basis))
            .collect()
    }
}

/// Exact 1-norm condition number of the matching matrix via its inverse.
fn one_norm_condition(a: &DMatrix<Complex64>, energy: f64) -> Result<f64> {
    let norm_1 = |m: &DMatrix<Complex64>| -> f64 {
        (0..m.ncols())
            .map(|c| (0..m.nrows()).map(|r| m[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let inverse = a
        .clone()
        .try_inverse()
        .ok_or(Error::SingularSystem { energy })?;
    Ok(norm_1(a) * norm_1(&inverse))
}

/// Spin-dependent loop phase of the ring, `φ_R = (√(1 + θ²R²) − 1)/2`.
/// For small `θR` this approaches `θ²R²/4`.
pub fn phi_r_ring(theta_r: f64) -> f64 {
    ((1.0 + theta_r * theta_r).sqrt() - 1.0) / 2.0
}

/// Perfect-filter parameters `(φ_B, θR)` for branch indices `m, n ≥ 0`:
/// `φ_B = 1/4 + m` and `θR` the exact root of `φ_R(θR) = 1/4 + n`,
/// i.e. `θR = √((2n + 3/2)² − 1)` — `√5/2, √45/2, √117/2, …`.
pub fn design_filter_ring(m: u32, n: u32) -> (f64, f64) {
    let phi_b = 0.25 + m as f64;
    let target = 0.25 + n as f64;
    let root = 2.0 * target + 1.0;
    let theta_r = (root * root - 1.0).sqrt();
    let residual = (phi_r_ring(theta_r) - target).abs();
    assert!(
        residual < 1e-12,
        "filter strength fails its defining equation by {residual:e}"
    );
    (phi_b, theta_r)
}

/// Material-scale realization of the `n`-th filter branch (`m = 0`):
/// ring radius in meters and flux density in tesla.
///
/// `R = θR(n) / θ` with `θ = 2m*α/ħ` from [`theta_from_material`], and
/// `B_z = (Φ₀/4)/(πR²)`.
pub fn material_parameters(n: u32, m_eff_ratio: f64, alpha_hbar: f64) -> (f64, f64) {
    assert!(m_eff_ratio > 0.0 && alpha_hbar > 0.0);
    let (_, theta_r) = design_filter_ring(0, n);
    let theta = theta_from_material(m_eff_ratio, alpha_hbar);
    let radius = theta_r / theta;
    let b_z = 0.25 * FLUX_QUANTUM / (PI * radius * radius);
    (radius, b_z)
}

/// 400 energies in `(0.01, 100]`, units `ħ²/(2m*R²)`.
pub fn default_energy_grid() -> Vec<f64> {
    let (lo, hi, count) = (0.01, 100.0, 400);
    let step = (hi - lo) / count as f64;
    (1..=count).map(|j| lo + step * j as f64).collect()
}
