//! Periodic Sturm-Liouville eigenvalues by Floquet theory.
//!
//! The separated equation on a Lawson surface,
//!
//! ```text
//! (p(y) phi')' + (lambda p(y) - l^2 / p(y)) phi = 0,
//! ```
//!
//! has `pi`-periodic coefficients. Its `2pi`-periodic spectrum is the union
//! of the `pi`-periodic spectrum (half-period discriminant `+2`) and the
//! `pi`-antiperiodic spectrum (half-period discriminant `-2`). Eigenvalues are
//! located by bracketing roots of the discriminant on a lambda grid,
//! classified by reconstructing eigenfunctions, and cross-checked against a
//! trigonometric Galerkin discretization.

mod eigenfunction;
mod galerkin;
mod monodromy;
mod problem;
mod scan;

use serde::{Deserialize, Serialize};

pub use eigenfunction::{half_period_class, parity_of, reconstruct, zero_count, Eigenfunction};
pub use galerkin::{galerkin_eigenvalues, galerkin_eigenvalues_with_parity};
pub use monodromy::{monodromy, monodromy_of, multiplicity_at, Monodromy};
pub use problem::{HillProblem, LameN1Problem, LawsonProblem, SturmLiouville};
pub use scan::{
    class_eigenvalues, eigenvalues_at_l, lowest_eigenvalues, periodic_spectrum, ClassEigenvalue,
    ScanOptions,
};

/// Length of the interval the transfer matrix is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Period {
    /// `[0, pi]`, the period of the coefficients.
    Half,
    /// `[0, 2pi]`.
    Full,
}

impl Period {
    pub fn length(self) -> f64 {
        match self {
            Self::Half => std::f64::consts::PI,
            Self::Full => 2.0 * std::f64::consts::PI,
        }
    }
}

/// Boundary condition selecting discriminant `+2` or `-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryClass {
    Periodic,
    Antiperiodic,
}

impl BoundaryClass {
    pub fn sign(self) -> f64 {
        match self {
            Self::Periodic => 1.0,
            Self::Antiperiodic => -1.0,
        }
    }
}

/// Symmetry of an eigenfunction under `y -> -y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    /// Two-dimensional eigenspace, spanned by one even and one odd function.
    Pair,
}

/// Behaviour of an eigenfunction under `y -> y + pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HalfPeriodClass {
    PiPeriodic,
    PiAntiperiodic,
    /// Degenerate eigenspace whose members do not share a class.
    Pair,
}

impl From<BoundaryClass> for HalfPeriodClass {
    fn from(c: BoundaryClass) -> Self {
        match c {
            BoundaryClass::Periodic => Self::PiPeriodic,
            BoundaryClass::Antiperiodic => Self::PiAntiperiodic,
        }
    }
}

/// One eigenvalue `lambda_i(l)` of the `2pi`-periodic problem.
///
/// A multiplicity-2 eigenvalue appears as two records with consecutive `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEigenvalue {
    pub l: f64,
    pub i: usize,
    pub lambda: f64,
    pub multiplicity: u8,
    pub parity: Parity,
    pub half_period: HalfPeriodClass,
}

impl ModeEigenvalue {
    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1
    }
}
