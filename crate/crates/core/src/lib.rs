//! Laplace spectra of Lawson minimal surfaces in the three-sphere.
//!
//! The surface `tau_{m,k}` carries the metric `p(y)^2 dx^2 + dy^2`, so its
//! Laplacian separates into Fourier modes in `x` and a periodic
//! Sturm-Liouville problem in `y`. This crate solves that problem with
//! Floquet theory, assembles the Laplace spectrum of the torus, Klein bottle
//! or double cover, and compares the count of eigenvalues below 2 with the
//! closed-form extremal index.

pub mod counting;
pub mod elliptic;
pub mod error;
pub mod floquet;
pub mod lame;
pub mod ode;
pub mod quadrature;
pub mod surface;
pub mod theorem;

pub use counting::{count_n2, crossover_l, laplace_spectrum, SpectrumReport};
pub use elliptic::{ellip_e, ellip_k, EllipticValue, Modulus};
pub use error::{Result, SpectrumError};
pub use floquet::{ModeEigenvalue, Monodromy};
pub use surface::{classify, SurfaceKind, SurfaceParams};
pub use theorem::{extremal, extremal_index, extremal_value, verify, ExtremalResult, VerifyRecord};
