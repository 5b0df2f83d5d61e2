//! Spin-orbit coupling treated as an SU(2) non-Abelian gauge field.
//!
//! The Rashba and Dresselhaus interactions in two dimensions can be absorbed
//! into a matrix-valued vector potential. The non-commutativity of its
//! components generates a physical, spin-dependent flux density on top of the
//! ordinary magnetic field, and the holonomy around a closed loop picks up a
//! spin-dependent phase. This crate computes that curvature field and the loop
//! holonomies exactly, and uses them to drive two interferometer devices:
//!
//! * [`square::SquareDevice`] — a four-site tight-binding square between two
//!   semi-infinite chains, solved with the lead self-energy Green's function
//!   (an 8×8 complex inversion per energy),
//! * [`ring::RingDevice`] — a one-dimensional continuum ring between two
//!   quantum wires, solved by wavefunction matching at the junctions
//!   (a 12×12 complex solve per energy).
//!
//! Both devices admit parameter points where interference is completely
//! destructive for one tilted-spin channel at every energy — a perfect spin
//! filter — and the crate exposes the corresponding design solvers.

pub mod gauge;
pub mod ring;
pub mod scattering;
pub mod spin;
pub mod square;

mod error;

pub use error::{Error, Result};
pub use gauge::{GaugeField2D, SoKind};
pub use ring::{RingDevice, RingMode};
pub use scattering::{BasisKind, SMatrix4, SpinBasis, TransmissionRecord};
pub use spin::{Mat2, PauliAxis, Spinor};
pub use square::{Geometry, SquareDevice};
