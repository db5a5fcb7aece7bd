//! Orthogonal polynomials for measures perturbed by point masses and by
//! Gaussian mollifiers.
//!
//! The pipeline runs moments → recurrence coefficients → Jacobi matrix →
//! zeros, with an exact rational route (Hankel determinants and Sturm
//! sequences) kept alongside as an oracle. [`lab`] builds the monotonicity
//! experiments on top: sweeps of the mass location, Markov-criterion sweeps of
//! the mollified family, and convergence of the mollified zeros as the width
//! shrinks.

pub mod error;
pub mod lab;
pub mod measure;
pub mod opoly;
pub mod report;
pub mod scalar;
pub mod zeros;

pub use error::{Error, Result};
pub use measure::{
    base_moment, gaussian_moment, mollified_moment, perturbed_moment, Family, GaussianMollifier,
    MollifiedMeasure, MomentFunctional, MomentSource, PerturbedMeasure, PointMass, Support,
};
pub use opoly::{
    evaluate, hankel_polynomial, jacobi_matrix, moments_to_recurrence, EngineConfig,
    JacobiMatrix, MonicPolynomial, RecurrenceCoefficients,
};
pub use scalar::{Arithmetic, Scalar};
pub use zeros::{measure_zeros, mollified_zeros, zeros_exact, zeros_from_jacobi, ZeroMethod, ZeroSet};

pub use num::BigRational;
