//! Structure-preserving solver for the coupled Q-tensor / smectic-density
//! gradient flow of the modified Landau-de Gennes (mLdG) model of smectic-A
//! liquid crystals.
//!
//! The model couples a symmetric-traceless tensor order parameter `Q`
//! (orientational order) with a scalar density deviation `u` (positional
//! layering) through the interaction energy `B0 |D^2 u + q^2 M u|^2`,
//! `M = Q/s_+ + I/d`. Time integration uses a relaxed generalized-SAV
//! exponential integrator: the stiff constant-coefficient part is integrated
//! exactly per Fourier mode of the finite-difference operators, the nonlinear
//! part is stabilized and weighted by the scalar factor `g = exp(s - E1h)`,
//! and a relaxation step keeps the auxiliary variable `s` glued to the
//! discrete nonlinear energy `E1h` without breaking the dissipation law.
//!
//! Modules follow the pipeline:
//!
//! * [`grid`] - periodic collocated grid, difference operators, inner products
//! * [`qtensor`] - compact symmetric-traceless tensor fields in d = 2, 3
//! * [`energy`] - model parameters, discrete energies, exact gradients,
//!   maximum-bound-principle constants
//! * [`spectral`] - DFT diagonalization, `phi_1` / `Q` / `Q_1` scalar
//!   functions, exponential updates, weighted norms
//! * [`stepper`] - the time step, relaxation, adaptive controller, run loop
//! * [`interface`] - configuration, experiment presets, diagnostics and
//!   snapshot I/O, convergence and self-verification harnesses
//!
//! All numerics are generic over the scalar type via [`Scalar`]; `f64` is the
//! working precision of the CLI and the type aliases below.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use rustfft::FftNum;

pub mod energy;
pub mod error;
pub mod grid;
pub mod interface;
pub mod qtensor;
pub mod spectral;
pub mod stepper;

pub use error::Error;

/// Floating-point scalar the solver is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + FftNum + fmt::Display + fmt::LowerExp
{
    /// Lossy conversion from `f64`; parameters and tolerances are stated in
    /// `f64` and narrowed here.
    fn cast(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts to any Scalar")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub type Result<T> = std::result::Result<T, Error>;

// Concrete aliases at working precision.
pub type GridSpec64 = grid::GridSpec<f64>;
pub type ScalarField64 = grid::ScalarField<f64>;
pub type VectorField64 = grid::VectorField<f64>;
pub type SymMatrixField64 = grid::SymMatrixField<f64>;
