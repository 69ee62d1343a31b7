//! Harmonic univalent maps of the unit disk and of its exterior: coefficient
//! class tests, explicit quasiconformal extensions to the plane, dilatation
//! bounds, sampling-based verification and harmonic convolution.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix it to `f64`, which is what the CLI uses.

pub mod cli;
pub mod conditions;
pub mod convolution;
pub mod document;
pub mod error;
pub mod extension;
pub mod harmonic;
pub mod render;
pub mod report;
pub mod scalar;
pub mod verify;

pub use conditions::{
    check_cond1, check_membership, check_sigma_condition, monotonicity_scan, phi_alpha, psi_alpha, weighted_sum,
    ClassReport, WeightProfile,
};
pub use convolution::{closure_check, convolve, ConvolutionReport};
pub use error::{Error, Result};
pub use extension::{extend_exterior, extend_interior, AnalyticBounds, PlaneExtension, Region};
pub use harmonic::{Coefficients, ExteriorMap, HarmonicMap, InteriorMap, Wirtinger};
pub use scalar::Scalar;
pub use verify::{GridRegion, GridSpec, VerificationReport};

pub use num_complex::Complex;

pub type Complex64 = num_complex::Complex<f64>;
pub type InteriorMap64 = InteriorMap<f64>;
pub type ExteriorMap64 = ExteriorMap<f64>;
pub type PlaneExtension64 = PlaneExtension<f64>;
pub type WeightProfile64 = WeightProfile<f64>;
pub type ClassReport64 = ClassReport<f64>;
pub type GridSpec64 = GridSpec<f64>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type ConvolutionReport64 = ConvolutionReport<f64>;
