//! Tight-binding square interferometer between two semi-infinite chains.
//!
//! Four sites carry SU(2) link matrices from the spin-orbit interaction and
//! Peierls phases from the enclosed flux. Spin-resolved transmission follows
//! from the lead self-energy Green's function: one 8×8 complex inversion per
//! energy. The loop phase factor around the square fixes a tilted spin basis,
//! and at the designed parameter point one tilted channel interferes away at
//! every energy.
//!
//! Spin analyzer conventions: the input lead is analyzed in the eigenbasis of
//! the loop phase based at the input site. The output lead is analyzed in the
//! same eigenbasis parallel-transported along the device to the output site
//! (equivalently, the eigenbasis of the loop phase based there). In these
//! junction-local bases the two spin channels decouple exactly and the
//! transmission matrix is diagonal; quoting both sides in the input-site
//! basis instead would smear the blocked channel over both output rows.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauge::SoKind;
use crate::scattering::{BasisKind, SMatrix4, SpinBasis, TransmissionRecord};
use crate::spin::{eig_unitary2, exp_i_pauli, wrap_angle, Mat2};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Where the output lead attaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Output lead at the far corner `(l, l)`.
    Symmetric,
    /// Output lead at the near corner `(l, 0)`.
    Asymmetric,
}

/// Parameters of the square interferometer.
///
/// `t` is the hopping energy (the energy unit), `theta_l` the dimensionless
/// spin-orbit angle across one link, `phi_b` the flux through the square in
/// units of the flux quantum.
#[derive(Debug, Clone, Copy)]
pub struct SquareDevice {
    pub t: f64,
    pub theta_l: f64,
    pub phi_b: f64,
    pub so_kind: SoKind,
    pub geometry: Geometry,
}

/// Site indices: 0 = (0,0), 1 = (l,0), 2 = (0,l), 3 = (l,l).
const IN_SITE: usize = 0;

impl SquareDevice {
    pub fn new(t: f64, theta_l: f64, phi_b: f64, so_kind: SoKind, geometry: Geometry) -> Self {
        assert!(t > 0.0, "hopping energy must be positive");
        assert!(theta_l >= 0.0, "spin-orbit angle must be non-negative");
        Self {
            t,
            theta_l,
            phi_b,
            so_kind,
            geometry,
        }
    }

    fn out_site(&self) -> usize {
        match self.geometry {
            Geometry::Symmetric => 3,
            Geometry::Asymmetric => 1,
        }
    }

    /// Spin factor of a hop in the +x direction.
    fn spin_hop_x(&self) -> Mat2 {
        let h = self.theta_l / 2.0;
        match self.so_kind {
            SoKind::Rashba => exp_i_pauli([0.0, -h, 0.0]),
            SoKind::Dresselhaus => exp_i_pauli([-h, 0.0, 0.0]),
            SoKind::None => Mat2::identity(),
        }
    }

    /// Spin factor of a hop in the +y direction.
    fn spin_hop_y(&self) -> Mat2 {
        let h = self.theta_l / 2.0;
        match self.so_kind {
            SoKind::Rashba => exp_i_pauli([h, 0.0, 0.0]),
            SoKind::Dresselhaus => exp_i_pauli([0.0, h, 0.0]),
            SoKind::None => Mat2::identity(),
        }
    }

    /// Default split of the Abelian loop phase among the links, radians per
    /// oriented hop (bottom 0→1, left 0→2, top 2→3, right 1→3). The
    /// symmetric gauge puts `-πφ_B` on the top hop and `+πφ_B` on the right
    /// hop; circling the square counterclockwise accumulates `2πφ_B`.
    pub fn default_ab_phases(&self) -> [f64; 4] {
        let half = std::f64::consts::PI * self.phi_b;
        [0.0, 0.0, -half, half]
    }

    /// Link matrices (bottom, left, top, right) for hops oriented as in
    /// [`Self::default_ab_phases`]: each is `-t` times a unitary.
    pub fn link_matrices(&self) -> [Mat2; 4] {
        self.link_matrices_with_phases(&self.default_ab_phases())
    }

    /// Link matrices with an arbitrary distribution of Abelian phases.
    ///
    /// The oriented sum `bottom + right - top - left` must equal `2πφ_B` for
    /// the device to describe the same flux; tests use this to verify gauge
    /// invariance of the transmission.
    pub fn link_matrices_with_phases(&self, ab: &[f64; 4]) -> [Mat2; 4] {
        let sx = self.spin_hop_x();
        let sy = self.spin_hop_y();
        let phase = |a: f64| Complex64::from_polar(1.0, a);
        [
            sx.scaled(phase(ab[0])).scaled_re(-self.t),
            sy.scaled(phase(ab[1])).scaled_re(-self.t),
            sx.scaled(phase(ab[2])).scaled_re(-self.t),
            sy.scaled(phase(ab[3])).scaled_re(-self.t),
        ]
    }

    /// Phase factor acquired on circling the square once counterclockwise
    /// from the input corner: bottom, right, then top and left reversed.
    ///
    /// Equals `e^{2πiφ_B}(cθ - i sθ σx)(cθ + i sθ σy)(cθ + i sθ σx)(cθ - i sθ σy)`
    /// for the Rashba case, with `cθ = cos(θl/2)`, `sθ = sin(θl/2)`; its
    /// eigenvalues are `e^{2πi(φ_B ± φ_R)}`.
    pub fn loop_phase(&self) -> Mat2 {
        let [bottom, left, top, right] = self.link_matrices();
        let unit = |m: Mat2| m.scaled_re(-1.0 / self.t);
        unit(left).dagger() * unit(top).dagger() * unit(right) * unit(bottom)
    }

    /// Tilted spin basis at the input junction: the eigenvectors of
    /// [`Self::loop_phase`]. "up" is the eigenvector with eigenvalue
    /// `e^{2πi(φ_B + φ_R)}`.
    pub fn tilted_basis(&self) -> Result<SpinBasis> {
        let eig = eig_unitary2(&self.loop_phase()).expect("loop phase is unitary");

        let gap = (Complex64::from_polar(1.0, eig.phases[0])
            - Complex64::from_polar(1.0, eig.phases[1]))
        .norm();
        if gap < 1e-8 {
            return Err(Error::DegenerateLoopPhase);
        }

        let up_phase = wrap_angle(TAU * (self.phi_b + phi_r_square(self.theta_l)));
        let dist = |a: f64, b: f64| {
            (Complex64::from_polar(1.0, a) - Complex64::from_polar(1.0, b)).norm()
        };
        let (up, down) = if dist(eig.phases[0], up_phase) <= dist(eig.phases[1], up_phase) {
            (eig.vectors[0], eig.vectors[1])
        } else {
            (eig.vectors[1], eig.vectors[0])
        };
        Ok(SpinBasis {
            up,
            down,
            kind: BasisKind::Tilted,
        })
    }

    /// The loop eigenbasis parallel-transported to the output junction: the
    /// analyzer directions in which the output rows of the transmission
    /// matrix decouple. Transport runs along the bottom link, plus the right
    /// link for the symmetric geometry; the other route differs only by
    /// per-vector phases, which the gauge fixing removes.
    pub fn tilted_basis_at_output(&self) -> Result<SpinBasis> {
        let base = self.tilted_basis()?;
        let transport = match self.geometry {
            Geometry::Symmetric => self.spin_hop_y() * self.spin_hop_x(),
            Geometry::Asymmetric => self.spin_hop_x(),
        };
        Ok(SpinBasis {
            up: (transport * base.up).gauge_fixed(),
            down: (transport * base.down).gauge_fixed(),
            kind: BasisKind::TiltedTransported,
        })
    }

    /// Default analyzer pair (input, output): junction-local tilted bases,
    /// falling back to σz when the loop phase is spin-degenerate.
    pub fn default_bases(&self) -> Result<(SpinBasis, SpinBasis)> {
        match self.tilted_basis() {
            Ok(input) => Ok((input, self.tilted_basis_at_output()?)),
            Err(Error::DegenerateLoopPhase) => Ok((
                SpinBasis::sigma_z(BasisKind::SigmaZFallback),
                SpinBasis::sigma_z(BasisKind::SigmaZFallback),
            )),
            Err(e) => Err(e),
        }
    }

    /// The 8×8 device Hamiltonian (four sites × two spins), Hermitian.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        self.hamiltonian_with_phases(&self.default_ab_phases())
    }

    /// Device Hamiltonian with a custom Abelian phase distribution.
    pub fn hamiltonian_with_phases(&self, ab: &[f64; 4]) -> DMatrix<Complex64> {
        let links = self.link_matrices_with_phases(ab);
        // (source, destination) per link, matching the hop orientations.
        let topology = [(0usize, 1usize), (0, 2), (2, 3), (1, 3)];

        let mut h = DMatrix::<Complex64>::zeros(8, 8);
        for (link, (src, dst)) in links.iter().zip(topology) {
            for r in 0..2 {
                for c in 0..2 {
                    h[(2 * dst + r, 2 * src + c)] = link.e[r][c];
                    h[(2 * src + c, 2 * dst + r)] = link.e[r][c].conj();
                }
            }
        }
        h
    }

    /// Scalar lead self-energy `Σ(E) = (E - i√(4t² - E²))/2`.
    pub fn self_energy_scalar(&self, energy: f64) -> Result<Complex64> {
        let band = 2.0 * self.t;
        if energy.abs() >= band {
            return Err(Error::OutsideBand { energy, band });
        }
        let gamma = (4.0 * self.t * self.t - energy * energy).sqrt();
        Ok(Complex64::new(energy / 2.0, -gamma / 2.0))
    }

    /// Self-energy insertions at the input and output sites, each `Σ(E)·I`
    /// in spin space.
    pub fn self_energy(&self, energy: f64) -> Result<(Mat2, Mat2)> {
        let sigma = self.self_energy_scalar(energy)?;
        let block = Mat2::identity().scaled(sigma);
        Ok((block, block))
    }

    /// Retarded Green's function block between two sites:
    /// `G = (E - H - Σ)⁻¹` restricted to `(row_site, col_site)`.
    ///
    /// States coupled to a lead already sit off the real axis through the
    /// self-energy; an exact LU breakdown therefore signals a dark state
    /// (zero weight on both contacts) whose pole does not enter the contact
    /// elements. Retrying at `E + iη` picks up the finite limit; only a
    /// second failure is reported as singular.
    fn green_block(
        &self,
        energy: f64,
        ab: &[f64; 4],
        row_site: usize,
        col_site: usize,
    ) -> Result<Mat2> {
        let sigma = self.self_energy_scalar(energy)?;
        let h = self.hamiltonian_with_phases(ab);

        let mut rhs = DMatrix::<Complex64>::zeros(8, 2);
        rhs[(2 * col_site, 0)] = Complex64::new(1.0, 0.0);
        rhs[(2 * col_site + 1, 1)] = Complex64::new(1.0, 0.0);

        let solve_at = |eta: f64| -> Option<DMatrix<Complex64>> {
            let mut m = DMatrix::<Complex64>::from_diagonal_element(
                8,
                8,
                Complex64::new(energy, eta),
            ) - h.clone();
            for site in [IN_SITE, self.out_site()] {
                for s in 0..2 {
                    m[(2 * site + s, 2 * site + s)] -= sigma;
                }
            }
            m.lu().solve(&rhs)
        };

        let solution = solve_at(0.0)
            .or_else(|| solve_at(1e-12 * self.t))
            .ok_or(Error::SingularSystem { energy })?;

        let mut g = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                g.e[r][c] = solution[(2 * row_site + r, c)];
            }
        }
        Ok(g)
    }

    /// Raw spin-space transmission amplitude matrix
    /// `t(E) = √(4t² - E²) · G_out,in(E)` in the σz basis.
    pub fn transmission_amplitude_raw(&self, energy: f64) -> Result<Mat2> {
        self.transmission_amplitude_raw_with_phases(energy, &self.default_ab_phases())
    }

    fn transmission_amplitude_raw_with_phases(
        &self,
        energy: f64,
        ab: &[f64; 4],
    ) -> Result<Mat2> {
        let g = self.green_block(energy, ab, self.out_site(), IN_SITE)?;
        let gamma = (4.0 * self.t * self.t - energy * energy).sqrt();
        Ok(g.scaled_re(gamma))
    }

    /// Spin-resolved transmission at one energy.
    ///
    /// With `basis = None` the junction-local tilted analyzers are used (σz
    /// fallback when degenerate); an explicit basis is applied to both leads.
    pub fn transmission(&self, energy: f64, basis: Option<&SpinBasis>) -> Result<TransmissionRecord> {
        self.transmission_with_ab_phases(energy, &self.default_ab_phases(), basis)
    }

    /// Transmission with a custom Abelian phase distribution; coefficients
    /// are gauge-invariant as long as the oriented phase sum is unchanged.
    pub fn transmission_with_ab_phases(
        &self,
        energy: f64,
        ab: &[f64; 4],
        basis: Option<&SpinBasis>,
    ) -> Result<TransmissionRecord> {
        let (in_basis, out_basis) = match basis {
            Some(b) => (*b, *b),
            None => self.default_bases()?,
        };
        let t_raw = self.transmission_amplitude_raw_with_phases(energy, ab)?;
        Ok(TransmissionRecord::from_raw_amplitude(
            energy, t_raw, in_basis, out_basis,
        ))
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

    /// Full two-terminal S-matrix in the σz basis, channel order
    /// (in-site up, in-site down, out-site up, out-site down):
    /// `S = -I + iΓ^{1/2} G Γ^{1/2}` with `Γ = √(4t² - E²)` at each contact.
    pub fn full_s_matrix(&self, energy: f64) -> Result<SMatrix4> {
        let ab = self.default_ab_phases();
        let sites = [IN_SITE, self.out_site()];
        let gamma = (4.0 * self.t * self.t - energy * energy).sqrt();

        let mut s = SMatrix4::zero();
        for (bc, &col_site) in sites.iter().enumerate() {
            let blocks: Vec<Mat2> = sites
                .iter()
                .map(|&row_site| self.green_block(energy, &ab, row_site, col_site))
                .collect::<Result<_>>()?;
            for (br, g) in blocks.iter().enumerate() {
                for r in 0..2 {
                    for c in 0..2 {
                        let mut v = Complex64::new(0.0, gamma) * g.e[r][c];
                        if 2 * br + r == 2 * bc + c {
                            v -= Complex64::new(1.0, 0.0);
                        }
                        s.entries[2 * br + r][2 * bc + c] = v;
                    }
                }
            }
        }
        Ok(s)
    }
}

/// Spin-dependent loop phase of the square, `φ_R ∈ [0, 1/2]`:
/// `φ_R = arccos(1 - 2 sin⁴(θl/2)) / 2π`. Monotone increasing on `[0, π]`.
///
/// Evaluated as `atan2(sin²(θl/2), |cos(θl/2)|·√(1 + sin²(θl/2))) / π`,
/// which is the same branch of the same angle without the cancellation the
/// literal `arccos` form suffers near its endpoints.
pub fn phi_r_square(theta_l: f64) -> f64 {
    let s2 = (theta_l / 2.0).sin().powi(2);
    let c = (theta_l / 2.0).cos().abs();
    s2.atan2(c * (1.0 + s2).sqrt()) / std::f64::consts::PI
}

/// Parameters of the perfect filter: `(φ_B, θl)` with `φ_B = 1/4` and
/// `θl = 2 arcsin(2^{-1/4})`, the root of `φ_R(θl) = 1/4`.
pub fn design_filter_square() -> (f64, f64) {
    let theta_l = 2.0 * (2.0_f64.powf(-0.25)).asin();
    let root_residual = (phi_r_square(theta_l) - 0.25).abs();
    assert!(
        root_residual < 1e-12,
        "filter angle fails its defining equation by {root_residual:e}"
    );
    (0.25, theta_l)
}

/// 400 uniformly spaced energies spanning `[-1.99t, 1.99t]`.
pub fn default_energy_grid(t: f64) -> Vec<f64> {
    linspace(-1.99 * t, 1.99 * t, 400)
}

/// Inclusive linear grid.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "grid needs at least two points");
    let step = (max - min) / (count - 1) as f64;
    (0..count).map(|k| min + step * k as f64).collect()
}
