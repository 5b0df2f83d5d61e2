//! Exact 2×2 complex / SU(2) kernel.
//!
//! Everything in the crate lives in spin space: link matrices, holonomies,
//! Hamiltonian blocks and transmission amplitudes are all [`Mat2`] values.
//! The functions here are closed-form — Pauli matrices, `exp(i a·σ)`,
//! eigen-decomposition of 2×2 unitaries, the SU(2) logarithm — plus the
//! exact loop phase of an infinitesimal square circuit, which is the seed
//! of the whole gauge-field picture.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense 2×2 complex matrix, the universal spin-space object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    /// Row-major entries.
    pub e: [[Complex64; 2]; 2],
}

/// The three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl Mat2 {
    pub const fn new(e: [[Complex64; 2]; 2]) -> Self {
        Self { e }
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    /// Hermitian conjugate `M†`.
    pub fn dagger(&self) -> Self {
        Self::new([
            [self.e[0][0].conj(), self.e[1][0].conj()],
            [self.e[0][1].conj(), self.e[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new([
            [self.e[0][0] * c, self.e[0][1] * c],
            [self.e[1][0] * c, self.e[1][1] * c],
        ])
    }

    pub fn scaled_re(&self, r: f64) -> Self {
        self.scaled(Complex64::new(r, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                m = m.max((self.e[r][c] - other.e[r][c]).norm());
            }
        }
        m
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zero())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.dagger() * *self).max_abs_diff(&Self::identity()) <= tol
    }

    /// Coefficients `(a0, ax, ay, az)` of `M = a0·I + ax·σx + ay·σy + az·σz`.
    pub fn pauli_components(&self) -> [Complex64; 4] {
        let half = Complex64::new(0.5, 0.0);
        [
            (self.e[0][0] + self.e[1][1]) * half,
            (self.e[0][1] + self.e[1][0]) * half,
            (self.e[0][1] - self.e[1][0]) * half * I,
            (self.e[0][0] - self.e[1][1]) * half,
        ]
    }

    /// Rebuild a matrix from Pauli coefficients.
    pub fn from_pauli_components(a: [Complex64; 4]) -> Self {
        Self::new([
            [a[0] + a[3], a[1] - I * a[2]],
            [a[1] + I * a[2], a[0] - a[3]],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][c] + rhs.e[r][c];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][c] - rhs.e[r][c];
            }
        }
        out
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scaled_re(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][0] * rhs.e[0][c] + self.e[r][1] * rhs.e[1][c];
            }
        }
        out
    }
}

impl Mul<Spinor> for Mat2 {
    type Output = Spinor;
    fn mul(self, rhs: Spinor) -> Spinor {
        Spinor {
            c: [
                self.e[0][0] * rhs.c[0] + self.e[0][1] * rhs.c[1],
                self.e[1][0] * rhs.c[0] + self.e[1][1] * rhs.c[1],
            ],
        }
    }
}

/// A two-component complex spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub c: [Complex64; 2],
}

impl Spinor {
    pub const fn new(c0: Complex64, c1: Complex64) -> Self {
        Self { c: [c0, c1] }
    }

    pub const fn basis_up() -> Self {
        Self::new(ONE, ZERO)
    }

    pub const fn basis_down() -> Self {
        Self::new(ZERO, ONE)
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.c[0].conj() * other.c[0] + self.c[1].conj() * other.c[1]
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.c[0] / n, self.c[1] / n)
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self::new(self.c[0] * z, self.c[1] * z)
    }

    /// Outer product `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> Mat2 {
        Mat2::new([
            [self.c[0] * other.c[0].conj(), self.c[0] * other.c[1].conj()],
            [self.c[1] * other.c[0].conj(), self.c[1] * other.c[1].conj()],
        ])
    }

    /// The orthogonal companion `(-c1*, c0*)`.
    pub fn orthogonal(&self) -> Self {
        Self::new(-self.c[1].conj(), self.c[0].conj())
    }

    /// Fix the global phase so the first component with modulus above `1e-12`
    /// is real and positive. Returns `self` unchanged for the zero spinor.
    pub fn gauge_fixed(&self) -> Self {
        for k in 0..2 {
            let m = self.c[k].norm();
            if m > 1e-12 {
                let phase = self.c[k] / m;
                return self.scaled(phase.conj());
            }
        }
        *self
    }
}

/// The standard Pauli matrix along `axis`.
pub fn pauli(axis: PauliAxis) -> Mat2 {
    match axis {
        PauliAxis::X => Mat2::new([[ZERO, ONE], [ONE, ZERO]]),
        PauliAxis::Y => Mat2::new([[ZERO, -I], [I, ZERO]]),
        PauliAxis::Z => Mat2::new([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// `a·σ` for a real 3-vector `a`.
pub fn dot_sigma(a: [f64; 3]) -> Mat2 {
    Mat2::from_pauli_components([
        ZERO,
        Complex64::new(a[0], 0.0),
        Complex64::new(a[1], 0.0),
        Complex64::new(a[2], 0.0),
    ])
}

/// sin(r)/r, with the series used near zero.
fn sinc(r: f64) -> f64 {
    if r.abs() < 1e-4 {
        1.0 - r * r / 6.0 + r.powi(4) / 120.0
    } else {
        r.sin() / r
    }
}

/// `exp(i a·σ)` in closed form: `cos|a|·I + i sin|a|·(â·σ)`.
///
/// Always unitary; `a = 0` gives the identity.
pub fn exp_i_pauli(a: [f64; 3]) -> Mat2 {
    let r = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let cos = Complex64::new(r.cos(), 0.0);
    let s = sinc(r);
    Mat2::identity().scaled(cos) + dot_sigma(a).scaled(I * s)
}

fn check_unitary(u: &Mat2, tol: f64) -> Result<()> {
    let residual = (u.dagger() * *u).max_abs_diff(&Mat2::identity());
    if residual > tol {
        return Err(Error::NotUnitary { residual, tol });
    }
    Ok(())
}

/// Eigen-decomposition of a 2×2 unitary.
#[derive(Debug, Clone, Copy)]
pub struct EigU2 {
    /// Eigenphases in `(-π, π]`, larger phase first.
    pub phases: [f64; 2],
    /// Orthonormal eigenvectors, phase-gauged so the first component with
    /// nonzero modulus is real positive. `vectors[k]` goes with `phases[k]`.
    pub vectors: [Spinor; 2],
}

/// Diagonalize a 2×2 unitary: `U v_k = e^{i φ_k} v_k`.
///
/// Ordering: larger phase first; a degenerate `U ∝ I` returns the standard
/// basis (which satisfies the tie-break on the first component's modulus).
pub fn eig_unitary2(u: &Mat2) -> Result<EigU2> {
    check_unitary(u, 1e-10)?;

    // Split a global phase off: U = e^{iγ}·V with V ∈ SU(2), then read V in
    // quaternion form V = cos α·I + i sin α·(n̂·σ).
    let det = u.det();
    let gamma = det.arg() / 2.0;
    let v = u.scaled(Complex64::from_polar(1.0, -gamma));

    let q = v.pauli_components();
    let cos_a = q[0].re;
    let sn = [q[1].im, q[2].im, q[3].im];
    let sin_a = (sn[0] * sn[0] + sn[1] * sn[1] + sn[2] * sn[2]).sqrt();

    if sin_a < 1e-12 {
        // V ≈ ±I: both eigenphases coincide, any orthonormal pair works.
        let phase = wrap_angle(gamma + if cos_a >= 0.0 { 0.0 } else { std::f64::consts::PI });
        return Ok(EigU2 {
            phases: [phase, phase],
            vectors: [Spinor::basis_up(), Spinor::basis_down()],
        });
    }

    let n = [sn[0] / sin_a, sn[1] / sin_a, sn[2] / sin_a];
    let alpha = sin_a.atan2(cos_a);

    // Eigenvector of n̂·σ with eigenvalue +1; two algebraically equivalent
    // columns, picked for conditioning.
    let v_plus = if 1.0 + n[2] >= 1.0 - n[2] {
        Spinor::new(
            Complex64::new(1.0 + n[2], 0.0),
            Complex64::new(n[0], n[1]),
        )
    } else {
        Spinor::new(
            Complex64::new(n[0], -n[1]),
            Complex64::new(1.0 - n[2], 0.0),
        )
    }
    .normalized();
    let v_minus = v_plus.orthogonal();

    let phi_plus = wrap_angle(gamma + alpha);
    let phi_minus = wrap_angle(gamma - alpha);

    let (phases, vectors) = if phi_plus >= phi_minus {
        ([phi_plus, phi_minus], [v_plus, v_minus])
    } else {
        ([phi_minus, phi_plus], [v_minus, v_plus])
    };
    Ok(EigU2 {
        phases,
        vectors: [vectors[0].gauge_fixed(), vectors[1].gauge_fixed()],
    })
}

/// Map an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut x = a % two_pi;
    if x <= -std::f64::consts::PI {
        x += two_pi;
    } else if x > std::f64::consts::PI {
        x -= two_pi;
    }
    x
}

/// Inverse of [`exp_i_pauli`] on SU(2): returns `a` with `exp(i a·σ) = U`
/// and `|a| ∈ [0, π)`.
///
/// `U = -I` is rejected (every axis is a valid logarithm there), as is any
/// input that is not special-unitary within `1e-10`.
pub fn log_su2(u: &Mat2) -> Result<[f64; 3]> {
    check_unitary(u, 1e-10)?;
    let det_residual = (u.det() - ONE).norm();
    if det_residual > 1e-10 {
        return Err(Error::NotSpecialUnitary {
            residual: det_residual,
        });
    }

    let q = u.pauli_components();
    let cos_a = q[0].re;
    let sn = [q[1].im, q[2].im, q[3].im];
    let sin_a = (sn[0] * sn[0] + sn[1] * sn[1] + sn[2] * sn[2]).sqrt();

    if sin_a < 1e-12 {
        if cos_a > 0.0 {
            return Ok([0.0, 0.0, 0.0]);
        }
        return Err(Error::LogBranchAmbiguous);
    }

    let alpha = sin_a.atan2(cos_a);
    let f = alpha / sin_a;
    Ok([sn[0] * f, sn[1] * f, sn[2] * f])
}

/// Exact loop phase of the infinitesimal square circuit.
///
/// Path I runs along the bottom then up the right side, path II up the left
/// side then across the top; with the constant Rashba gauge field each leg
/// contributes a closed-form exponential. The returned factor is
/// `U_phase = U_II† · U_I` computed from the exact products — no
/// Baker-Campbell-Hausdorff truncation — so the `e^{i θ²l² σz / 2}`
/// lowest-order behaviour is something tests can probe rather than an
/// assumption baked in.
pub fn bch_loop_phase(theta_l: f64) -> Mat2 {
    let h = theta_l / 2.0;
    let step_x = exp_i_pauli([h, 0.0, 0.0]);
    let step_y = exp_i_pauli([0.0, -h, 0.0]);
    let u_i = step_x * step_y;
    let u_ii = step_y * step_x;
    u_ii.dagger() * u_i
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PI: f64 = std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_matrices_are_standard() {
        let sx = pauli(PauliAxis::X);
        assert_eq!(sx.e[0][1], ONE);
        assert_eq!(sx.e[1][0], ONE);
        assert_eq!(sx.e[0][0], ZERO);

        let sy = pauli(PauliAxis::Y);
        assert_eq!(sy.e[0][1], -I);
        assert_eq!(sy.e[1][0], I);

        let sz = pauli(PauliAxis::Z);
        assert_eq!(sz.e[0][0], ONE);
        assert_eq!(sz.e[1][1], -ONE);

        for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            let s = pauli(axis);
            assert!(s.is_hermitian(1e-15));
            assert!(s.trace().norm() < 1e-15);
            assert!((s * s).max_abs_diff(&Mat2::identity()) < 1e-15);
        }
    }

    #[test]
    fn exp_i_pauli_identity_cases() {
        assert!(exp_i_pauli([0.0, 0.0, 0.0]).max_abs_diff(&Mat2::identity()) < 1e-15);

        // exp(iπσx) = -I
        let m = exp_i_pauli([PI, 0.0, 0.0]);
        assert!(m.max_abs_diff(&Mat2::identity().scaled_re(-1.0)) < 1e-15);

        // exp(i(π/2)σz) = diag(i, -i)
        let d = exp_i_pauli([0.0, 0.0, PI / 2.0]);
        let expected = Mat2::new([[I, ZERO], [ZERO, -I]]);
        assert!(d.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn eig_unitary2_trivial_cases() {
        let e = eig_unitary2(&Mat2::identity()).unwrap();
        assert_eq!(e.phases, [0.0, 0.0]);
        // Tie-break: larger |first component| first.
        assert!(e.vectors[0].c[0].norm() > e.vectors[1].c[0].norm());

        let d = Mat2::new([[I, ZERO], [ZERO, -I]]);
        let e = eig_unitary2(&d).unwrap();
        assert!((e.phases[0] - PI / 2.0).abs() < 1e-14);
        assert!((e.phases[1] + PI / 2.0).abs() < 1e-14);
        assert!((e.vectors[0].c[0].norm() - 1.0).abs() < 1e-14);
        assert!((e.vectors[1].c[1].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_unitary2_rejects_non_unitary() {
        let m = Mat2::new([[c(2.0, 0.0), ZERO], [ZERO, ONE]]);
        assert!(matches!(
            eig_unitary2(&m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn log_su2_trivial_cases() {
        assert_eq!(log_su2(&Mat2::identity()).unwrap(), [0.0, 0.0, 0.0]);

        let d = Mat2::new([[I, ZERO], [ZERO, -I]]);
        let a = log_su2(&d).unwrap();
        assert!(a[0].abs() < 1e-14 && a[1].abs() < 1e-14);
        assert!((a[2] - PI / 2.0).abs() < 1e-14);

        let a = log_su2(&exp_i_pauli([0.0, 0.3, 0.0])).unwrap();
        assert!(a[0].abs() < 1e-14 && (a[1] - 0.3).abs() < 1e-14 && a[2].abs() < 1e-14);
    }

    #[test]
    fn log_su2_rejects_minus_identity_and_non_special() {
        let minus_i2 = Mat2::identity().scaled_re(-1.0);
        assert_eq!(log_su2(&minus_i2), Err(Error::LogBranchAmbiguous));

        // Unitary but det = -1.
        let m = Mat2::new([[ONE, ZERO], [ZERO, -ONE]]);
        assert!(matches!(
            log_su2(&m),
            Err(Error::NotSpecialUnitary { .. })
        ));
    }

    #[test]
    fn bch_loop_phase_trivial_and_small_angle() {
        assert!(bch_loop_phase(0.0).max_abs_diff(&Mat2::identity()) < 1e-15);

        // θl = 1e-3: log ≈ (0, 0, θ²l²/2) with relative error O(θl).
        let tl = 1e-3;
        let a = log_su2(&bch_loop_phase(tl)).unwrap();
        let expected = tl * tl / 2.0;
        assert!((a[2] - expected).abs() / expected < tl * 10.0);
        assert!(a[0].abs() < expected * tl * 10.0);
        assert!(a[1].abs() < expected * tl * 10.0);
    }

    // Independent oracle: the four closed-form exponentials written out as
    // literal matrices and multiplied by a local helper.
    #[test]
    fn bch_loop_phase_matches_direct_product_oracle() {
        fn raw_mul(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
            let mut out = [[ZERO; 2]; 2];
            for r in 0..2 {
                for k in 0..2 {
                    for col in 0..2 {
                        out[r][col] += a[r][k] * b[k][col];
                    }
                }
            }
            out
        }

        let tl = PI / 2.0;
        let (cs, sn) = ((tl / 2.0).cos(), (tl / 2.0).sin());
        // exp(±iθlσx/2) and exp(±iθlσy/2) written entrywise.
        let exp_px = [[c(cs, 0.0), c(0.0, sn)], [c(0.0, sn), c(cs, 0.0)]];
        let exp_mx = [[c(cs, 0.0), c(0.0, -sn)], [c(0.0, -sn), c(cs, 0.0)]];
        let exp_py = [[c(cs, 0.0), c(sn, 0.0)], [c(-sn, 0.0), c(cs, 0.0)]];
        let exp_my = [[c(cs, 0.0), c(-sn, 0.0)], [c(sn, 0.0), c(cs, 0.0)]];

        // U_II† U_I = exp(-iθlσx/2) exp(iθlσy/2) exp(iθlσx/2) exp(-iθlσy/2)
        let expected = raw_mul(raw_mul(exp_mx, exp_py), raw_mul(exp_px, exp_my));
        let got = bch_loop_phase(tl);
        assert!(got.max_abs_diff(&Mat2::new(expected)) < 1e-14);
    }

    // Least-squares slope of log r against log l.
    pub(crate) fn log_log_slope(points: &[(f64, f64)]) -> f64 {
        let n = points.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(x, y) in points {
            let (lx, ly) = (x.ln(), y.ln());
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }

    #[test]
    fn bch_residual_scales_at_third_order() {
        // r(l) = ‖log(U_phase(l)) - (0,0,l²/2)‖ for θ = 1; the lowest-order
        // formula only captures the l² term, so the residual is O(l³).
        let ls = [1e-3, 10f64.powf(-2.5), 1e-2, 10f64.powf(-1.5), 1e-1];
        let pts: Vec<(f64, f64)> = ls
            .iter()
            .map(|&l| {
                let a = log_su2(&bch_loop_phase(l)).unwrap();
                let d = [a[0], a[1], a[2] - l * l / 2.0];
                (l, (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt())
            })
            .collect();
        let slope = log_log_slope(&pts);
        assert!(slope >= 2.9, "slope {slope} below 2.9");
    }

    fn arb_vec3(max_norm: f64) -> impl Strategy<Value = [f64; 3]> {
        (
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            0.01..max_norm,
        )
            .prop_filter_map("zero direction", move |(x, y, z, r)| {
                let n = (x * x + y * y + z * z).sqrt();
                if n < 1e-3 {
                    return None;
                }
                Some([x / n * r, y / n * r, z / n * r])
            })
    }

    proptest! {
        #[test]
        fn exp_is_unitary_with_unimodular_det(a in arb_vec3(6.0)) {
            let u = exp_i_pauli(a);
            prop_assert!(u.is_unitary(1e-12));
            prop_assert!((u.det().norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn log_exp_round_trip(a in arb_vec3(PI - 0.01)) {
            let b = log_su2(&exp_i_pauli(a)).unwrap();
            for k in 0..3 {
                prop_assert!((a[k] - b[k]).abs() < 1e-9);
            }
        }

        #[test]
        fn eig_reconstructs_unitary(a in arb_vec3(3.0), gamma in -PI..PI) {
            let u = exp_i_pauli(a).scaled(Complex64::from_polar(1.0, gamma));
            let eig = eig_unitary2(&u).unwrap();

            let mut rebuilt = Mat2::zero();
            for k in 0..2 {
                let proj = eig.vectors[k].outer(&eig.vectors[k]);
                rebuilt = rebuilt + proj.scaled(Complex64::from_polar(1.0, eig.phases[k]));
            }
            prop_assert!(rebuilt.max_abs_diff(&u) < 1e-9);

            // Eigen-equation and orthonormality.
            for k in 0..2 {
                let lhs = u * eig.vectors[k];
                let rhs = eig.vectors[k].scaled(Complex64::from_polar(1.0, eig.phases[k]));
                prop_assert!((lhs.c[0] - rhs.c[0]).norm() < 1e-10);
                prop_assert!((lhs.c[1] - rhs.c[1]).norm() < 1e-10);
            }
            prop_assert!(eig.vectors[0].inner(&eig.vectors[1]).norm() < 1e-10);
        }
    }
}
