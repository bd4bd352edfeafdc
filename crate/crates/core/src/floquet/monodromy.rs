use serde::{Deserialize, Serialize};

use super::problem::{LawsonProblem, SturmLiouville};
use super::Period;
use crate::error::Result;
use crate::ode::{Dop853, OdeSystem};
use crate::surface::SurfaceParams;

/// Entrywise tolerance on `T(2pi) - I` separating coexistence from a
/// Jordan block.
pub const IDENTITY_TOL: f64 = 1e-7;

/// Transfer matrix over `[0, L]` in the basis of the solutions `Phi`, `Psi`
/// with `Phi(0) = 1, Phi'(0) = 0, Psi(0) = 0, Psi'(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monodromy {
    pub lambda: f64,
    pub period: Period,
    pub phi_end: f64,
    pub dphi_end: f64,
    pub psi_end: f64,
    pub dpsi_end: f64,
    pub discriminant: f64,
}

impl Monodromy {
    pub fn determinant(&self) -> f64 {
        self.phi_end * self.dpsi_end - self.psi_end * self.dphi_end
    }

    /// Largest entry of `T - I`.
    pub fn distance_from_identity(&self) -> f64 {
        [
            (self.phi_end - 1.0).abs(),
            self.dphi_end.abs(),
            self.psi_end.abs(),
            (self.dpsi_end - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Largest entry of `T - s I`.
    pub fn distance_from_scalar(&self, s: f64) -> f64 {
        [
            (self.phi_end - s).abs(),
            self.dphi_end.abs(),
            self.psi_end.abs(),
            (self.dpsi_end - s).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Two solutions of the quasi-derivative system integrated together:
/// state `[u1, v1, u2, v2]` with `u' = v / P`, `v' = (Q - lambda W) u`.
pub(crate) struct PairSystem<'a, S: SturmLiouville> {
    pub problem: &'a S,
    pub lambda: f64,
}

impl<S: SturmLiouville> OdeSystem<4> for PairSystem<'_, S> {
    #[inline]
    fn rhs(&self, y: f64, s: &[f64; 4]) -> [f64; 4] {
        let (p, w, q) = self.problem.coefficients(y);
        let g = q - self.lambda * w;
        [s[1] / p, g * s[0], s[3] / p, g * s[2]]
    }
}

/// Single solution `[u, v]` of the quasi-derivative system.
pub(crate) struct SingleSystem<'a, S: SturmLiouville> {
    pub problem: &'a S,
    pub lambda: f64,
}

impl<S: SturmLiouville> OdeSystem<2> for SingleSystem<'_, S> {
    #[inline]
    fn rhs(&self, y: f64, s: &[f64; 2]) -> [f64; 2] {
        let (p, w, q) = self.problem.coefficients(y);
        [s[1] / p, (q - self.lambda * w) * s[0]]
    }
}

pub(crate) fn integrator() -> Dop853 {
    Dop853::with_tolerance(1e-12, 1e-12)
}

/// Transfer matrix of a general `pi`-periodic problem.
pub fn monodromy_of<S: SturmLiouville>(problem: &S, lambda: f64, period: Period) -> Result<Monodromy> {
    let (p0, _, _) = problem.coefficients(0.0);
    let sys = PairSystem { problem, lambda };
    // (phi, phi') = (1, 0) -> (u, v) = (1, 0); (0, 1) -> (0, P(0)).
    let end = integrator().integrate(&sys, 0.0, [1.0, 0.0, 0.0, p0], period.length())?;
    // P(L) = P(0) because P has period pi.
    let phi_end = end[0];
    let dphi_end = end[1] / p0;
    let psi_end = end[2];
    let dpsi_end = end[3] / p0;
    Ok(Monodromy {
        lambda,
        period,
        phi_end,
        dphi_end,
        psi_end,
        dpsi_end,
        discriminant: phi_end + dpsi_end,
    })
}

/// Transfer matrix of the separated Lawson equation.
pub fn monodromy(params: &SurfaceParams, l: f64, lambda: f64, period: Period) -> Result<Monodromy> {
    monodromy_of(&LawsonProblem::new(*params, l), lambda, period)
}

/// 2 if the full-period transfer matrix is the identity, else 1.
pub fn multiplicity_at(params: &SurfaceParams, l: f64, lambda: f64) -> Result<u8> {
    multiplicity_of(&LawsonProblem::new(*params, l), lambda)
}

pub(crate) fn multiplicity_of<S: SturmLiouville>(problem: &S, lambda: f64) -> Result<u8> {
    let t = monodromy_of(problem, lambda, Period::Full)?;
    Ok(if t.distance_from_identity() < IDENTITY_TOL { 2 } else { 1 })
}
