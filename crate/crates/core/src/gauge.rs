//! The combined Abelian + non-Abelian gauge field and its curvature.
//!
//! The spin-orbit interaction enters through constant Hermitian matrices
//! `W_x`, `W_y` added to the ordinary vector potential. Natural units
//! `ħ = e = 1` are used throughout the engine; SI constants appear only in
//! [`theta_from_material`], which converts measured coupling strengths into
//! the dimensionless device parameters.

use num_complex::Complex64;

use crate::spin::{pauli, Mat2, PauliAxis};

/// Planck constant over 2π, J·s (CODATA 2018, exact by definition of h).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Electron mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Magnetic flux quantum h/e, Wb.
pub const FLUX_QUANTUM: f64 = 2.0 * std::f64::consts::PI * HBAR / ELEMENTARY_CHARGE;

/// Which spin-orbit interaction the device carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SoKind {
    Rashba,
    Dresselhaus,
    None,
}

/// Symmetric-gauge vector potential plus constant non-Abelian components.
///
/// The Abelian part is fixed to `A = (-B_z y/2, B_z x/2, 0)`; only the flux
/// density `b_z` is stored. `w_x`, `w_y` are the constant Hermitian
/// spin-orbit components of the matrix-valued potential.
#[derive(Debug, Clone, Copy)]
pub struct GaugeField2D {
    pub b_z: f64,
    pub w_x: Mat2,
    pub w_y: Mat2,
}

/// Build the gauge field for a given interaction kind and strength `theta`.
///
/// Rashba: `w_x = -(θ/2)σy`, `w_y = +(θ/2)σx`. Dresselhaus swaps the roles
/// of σx and σy: `w_x = -(θ/2)σx`, `w_y = +(θ/2)σy`. `SoKind::None` leaves
/// only the Abelian part.
pub fn make_field(kind: SoKind, theta: f64, b_z: f64) -> GaugeField2D {
    let half = theta / 2.0;
    let (w_x, w_y) = match kind {
        SoKind::Rashba => (
            pauli(PauliAxis::Y).scaled_re(-half),
            pauli(PauliAxis::X).scaled_re(half),
        ),
        SoKind::Dresselhaus => (
            pauli(PauliAxis::X).scaled_re(-half),
            pauli(PauliAxis::Y).scaled_re(half),
        ),
        SoKind::None => (Mat2::zero(), Mat2::zero()),
    };
    GaugeField2D { b_z, w_x, w_y }
}

/// Spin-orbit strength θ = 2 m* α / ħ in inverse meters.
///
/// `m_eff_ratio` is m*/m_e and `alpha_hbar` is the measured product αħ in
/// eV·m, the form material tables quote.
pub fn theta_from_material(m_eff_ratio: f64, alpha_hbar: f64) -> f64 {
    let m_star = m_eff_ratio * ELECTRON_MASS;
    let alpha_hbar_joule = alpha_hbar * ELEMENTARY_CHARGE;
    2.0 * m_star * alpha_hbar_joule / (HBAR * HBAR)
}

/// The physical field `F_xy = (∂x Ã_y - ∂y Ã_x) - i[Ã_x, Ã_y]`.
///
/// With the stored structure the rotation term is exactly `b_z·I` and the
/// commutator term is `-i[w_x, w_y]`; the result is position-independent
/// and Hermitian. For the Rashba field this evaluates to
/// `b_z·I + (θ²/2)σz`, for Dresselhaus to `b_z·I - (θ²/2)σz`.
pub fn curvature(f: &GaugeField2D) -> Mat2 {
    let rotation = Mat2::identity().scaled_re(f.b_z);
    let commutator = f.w_x * f.w_y - f.w_y * f.w_x;
    rotation + commutator.scaled(Complex64::new(0.0, -1.0))
}

/// Full matrix-valued potential `Ã(x, y) = A(x, y)·I + W` at a point.
fn potential_at(f: &GaugeField2D, point: [f64; 2]) -> (Mat2, Mat2) {
    let a_x = -0.5 * f.b_z * point[1];
    let a_y = 0.5 * f.b_z * point[0];
    (
        Mat2::identity().scaled_re(a_x) + f.w_x,
        Mat2::identity().scaled_re(a_y) + f.w_y,
    )
}

/// Curvature by central finite differences of the full matrix potential.
///
/// An independent check on [`curvature`]: the derivative terms are taken
/// numerically at `point` with step `h` and the commutator uses the full
/// position-dependent matrices.
pub fn curvature_fd(f: &GaugeField2D, point: [f64; 2], h: f64) -> Mat2 {
    let inv_2h = 1.0 / (2.0 * h);

    let (_, ay_xp) = potential_at(f, [point[0] + h, point[1]]);
    let (_, ay_xm) = potential_at(f, [point[0] - h, point[1]]);
    let d_x_ay = (ay_xp - ay_xm).scaled_re(inv_2h);

    let (ax_yp, _) = potential_at(f, [point[0], point[1] + h]);
    let (ax_ym, _) = potential_at(f, [point[0], point[1] - h]);
    let d_y_ax = (ax_yp - ax_ym).scaled_re(inv_2h);

    let (a_x, a_y) = potential_at(f, point);
    let commutator = a_x * a_y - a_y * a_x;

    d_x_ay - d_y_ax + commutator.scaled(Complex64::new(0.0, -1.0))
}
