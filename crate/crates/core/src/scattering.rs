//! Shared scattering-output types: spin analyzer bases, spin-resolved
//! transmission records, and the two-terminal 4×4 S-matrix.

use num_complex::Complex64;

use crate::spin::{Mat2, Spinor};

/// How a spin analyzer basis was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Eigenbasis of the loop phase factor at the input junction.
    Tilted,
    /// Loop eigenbasis parallel-transported to the output junction.
    TiltedTransported,
    /// The plain σz basis.
    SigmaZ,
    /// σz used as a fallback because the loop phase is spin-degenerate.
    SigmaZFallback,
    /// Caller-supplied basis.
    Custom,
}

/// An orthonormal spin analyzer pair with a label recording its origin.
#[derive(Debug, Clone, Copy)]
pub struct SpinBasis {
    pub up: Spinor,
    pub down: Spinor,
    pub kind: BasisKind,
}

impl SpinBasis {
    pub fn sigma_z(kind: BasisKind) -> Self {
        Self {
            up: Spinor::basis_up(),
            down: Spinor::basis_down(),
            kind,
        }
    }

    pub fn spinor(&self, index: usize) -> &Spinor {
        if index == 0 {
            &self.up
        } else {
            &self.down
        }
    }

    /// Largest deviation from orthonormality.
    pub fn orthonormality_residual(&self) -> f64 {
        let uu = (self.up.inner(&self.up) - Complex64::new(1.0, 0.0)).norm();
        let dd = (self.down.inner(&self.down) - Complex64::new(1.0, 0.0)).norm();
        let ud = self.up.inner(&self.down).norm();
        uu.max(dd).max(ud)
    }
}

/// Spin-resolved transmission at one energy.
///
/// `t_matrix[τ][λ]` is the amplitude from input spin `λ` (analyzed in
/// `in_basis`) to output spin `τ` (analyzed in `out_basis`), and
/// `coefficients[τ][λ] = |t_matrix[τ][λ]|²`. Index 0 is the "up" analyzer
/// direction, index 1 "down".
#[derive(Debug, Clone, Copy)]
pub struct TransmissionRecord {
    pub energy: f64,
    pub t_matrix: Mat2,
    pub coefficients: [[f64; 2]; 2],
    pub in_basis: SpinBasis,
    pub out_basis: SpinBasis,
}

impl TransmissionRecord {
    /// Rotate a raw (σz-basis) amplitude matrix into analyzer bases and take
    /// moduli squared.
    pub fn from_raw_amplitude(
        energy: f64,
        t_raw: Mat2,
        in_basis: SpinBasis,
        out_basis: SpinBasis,
    ) -> Self {
        let mut t = Mat2::zero();
        let mut coefficients = [[0.0; 2]; 2];
        for tau in 0..2 {
            for lambda in 0..2 {
                let amplitude = out_basis
                    .spinor(tau)
                    .inner(&(t_raw * *in_basis.spinor(lambda)));
                t.e[tau][lambda] = amplitude;
                coefficients[tau][lambda] = amplitude.norm_sqr();
            }
        }
        Self {
            energy,
            t_matrix: t,
            coefficients,
            in_basis,
            out_basis,
        }
    }

    /// Total transmission into the "up" analyzer direction.
    pub fn up_output(&self) -> f64 {
        self.coefficients[0][0] + self.coefficients[0][1]
    }

    /// Total transmission into the "down" analyzer direction.
    pub fn down_output(&self) -> f64 {
        self.coefficients[1][0] + self.coefficients[1][1]
    }

    /// Sum over both spin channels; bounded by 2.
    pub fn total(&self) -> f64 {
        self.up_output() + self.down_output()
    }
}

/// Two-terminal spin-resolved S-matrix.
///
/// Channel ordering: left-lead up, left-lead down, right-lead up,
/// right-lead down, each in the analyzer basis declared by the device that
/// produced it.
#[derive(Debug, Clone, Copy)]
pub struct SMatrix4 {
    pub entries: [[Complex64; 4]; 4],
}

impl SMatrix4 {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); 4]; 4],
        }
    }

    /// Largest entrywise modulus of `S†S - I`.
    pub fn unitarity_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..4 {
                    acc += self.entries[k][r].conj() * self.entries[k][c];
                }
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((acc - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// The 2×2 transmission sub-block from the left lead into the right lead.
    pub fn transmission_block(&self) -> Mat2 {
        Mat2::new([
            [self.entries[2][0], self.entries[2][1]],
            [self.entries[3][0], self.entries[3][1]],
        ])
    }
}
