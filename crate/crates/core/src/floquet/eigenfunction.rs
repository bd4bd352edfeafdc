use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::monodromy::{integrator, monodromy_of, SingleSystem};
use super::problem::{LawsonProblem, SturmLiouville};
use super::{BoundaryClass, HalfPeriodClass, ModeEigenvalue, Parity, Period};
use crate::error::{Result, SpectrumError};
use crate::surface::SurfaceParams;

/// Default number of samples over `[0, 2pi)`.
pub const SAMPLES: usize = 1024;

/// Relative energy below which a symmetry residual counts as zero.
const PARITY_TOL: f64 = 1e-12;

/// Relative tolerance of the half-period discriminant test.
const CLASS_TOL: f64 = 1e-8;

/// An eigenfunction sampled at `y_j = 2pi (j + 1/2) / N`, scaled to max-abs 1.
///
/// The offset grid is symmetric: the mirror `-y_j` of `y_j` is `y_{N-1-j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenfunction {
    pub lambda: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl Eigenfunction {
    /// `(odd energy, even energy)` of the decomposition under `y -> -y`.
    pub fn symmetry_energies(&self) -> (f64, f64) {
        let n = self.values.len();
        let mut odd = 0.0;
        let mut even = 0.0;
        for j in 0..n {
            let (a, b) = (self.values[j], self.values[n - 1 - j]);
            odd += (a - b) * (a - b);
            even += (a + b) * (a + b);
        }
        (odd, even)
    }

    pub fn parity(&self) -> Result<Parity> {
        let (odd, even) = self.symmetry_energies();
        if odd < PARITY_TOL * even {
            Ok(Parity::Even)
        } else if even < PARITY_TOL * odd {
            Ok(Parity::Odd)
        } else {
            Err(SpectrumError::Unresolved {
                lo: self.lambda,
                hi: self.lambda,
                reason: format!("eigenfunction is neither even nor odd (energies {odd:e}, {even:e})"),
            })
        }
    }

    /// Sign changes around the closed curve `[0, 2pi)`, or `None` if a sample
    /// is too close to zero to decide.
    fn sign_changes(&self) -> Option<usize> {
        if self.values.iter().any(|v| v.abs() < 1e-9) {
            return None;
        }
        let n = self.values.len();
        Some((0..n).filter(|&j| (self.values[j] < 0.0) != (self.values[(j + 1) % n] < 0.0)).count())
    }
}

/// Sample the solution of class `class` at the eigenvalue `lambda`.
///
/// The initial data is a fixed vector of `T(pi) - s I`, `s = +-1`, so the
/// integrated solution is the eigenfunction up to scale.
pub fn reconstruct_problem<S: SturmLiouville>(
    problem: &S,
    lambda: f64,
    class: BoundaryClass,
    samples: usize,
) -> Result<Eigenfunction> {
    let t = monodromy_of(problem, lambda, Period::Half)?;
    let s = class.sign();
    let v1 = (t.psi_end, s - t.phi_end);
    let v2 = (s - t.dpsi_end, t.dphi_end);
    let norm = |v: (f64, f64)| v.0.hypot(v.1);
    let (phi0, dphi0) = if norm(v1) >= norm(v2) { v1 } else { v2 };
    if norm((phi0, dphi0)) == 0.0 {
        // T = s I: both solutions qualify, take the even one
        return reconstruct_from(problem, lambda, (1.0, 0.0), samples);
    }
    reconstruct_from(problem, lambda, (phi0, dphi0), samples)
}

fn reconstruct_from<S: SturmLiouville>(
    problem: &S,
    lambda: f64,
    (phi0, dphi0): (f64, f64),
    samples: usize,
) -> Result<Eigenfunction> {
    let (p0, _, _) = problem.coefficients(0.0);
    let grid: Vec<f64> = (0..samples).map(|j| 2.0 * PI * (j as f64 + 0.5) / samples as f64).collect();
    let sys = SingleSystem { problem, lambda };
    let states = integrator().integrate_sampled(&sys, 0.0, [phi0, p0 * dphi0], &grid)?;
    let mut values: Vec<f64> = states.iter().map(|s| s[0]).collect();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(SpectrumError::Unresolved {
            lo: lambda,
            hi: lambda,
            reason: "degenerate eigenfunction".into(),
        });
    }
    // fix the sign so the largest sample is positive
    let peak = values.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
    let scale = scale.copysign(peak);
    values.iter_mut().for_each(|v| *v /= scale);
    Ok(Eigenfunction { lambda, grid, values })
}

/// Eigenfunction of a simple mode of the Lawson equation.
pub fn reconstruct(params: &SurfaceParams, mode: &ModeEigenvalue) -> Result<Eigenfunction> {
    let class = match mode.half_period {
        HalfPeriodClass::PiPeriodic => BoundaryClass::Periodic,
        HalfPeriodClass::PiAntiperiodic => BoundaryClass::Antiperiodic,
        HalfPeriodClass::Pair => match half_period_class(params, mode)? {
            HalfPeriodClass::PiPeriodic => BoundaryClass::Periodic,
            _ => BoundaryClass::Antiperiodic,
        },
    };
    reconstruct_problem(&LawsonProblem::new(*params, mode.l), mode.lambda, class, SAMPLES)
}

pub(crate) fn parity_of_problem<S: SturmLiouville>(
    problem: &S,
    lambda: f64,
    class: BoundaryClass,
) -> Result<Parity> {
    reconstruct_problem(problem, lambda, class, SAMPLES)?.parity()
}

/// Even or odd symmetry of the eigenfunction of a simple mode.
pub fn parity_of(params: &SurfaceParams, mode: &ModeEigenvalue) -> Result<Parity> {
    if mode.multiplicity == 2 {
        return Ok(Parity::Pair);
    }
    reconstruct(params, mode)?.parity()
}

/// Classify a located eigenvalue by the half-period discriminant.
pub fn half_period_class(params: &SurfaceParams, mode: &ModeEigenvalue) -> Result<HalfPeriodClass> {
    let t = monodromy_of(&LawsonProblem::new(*params, mode.l), mode.lambda, Period::Half)?;
    // the discriminant is only as accurate as the entries it sums
    let scale = [t.phi_end, t.dphi_end, t.psi_end, t.dpsi_end]
        .iter()
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = CLASS_TOL * scale;
    let plus = (t.discriminant - 2.0).abs() < tol;
    let minus = (t.discriminant + 2.0).abs() < tol;
    match (plus, minus) {
        (true, false) => Ok(HalfPeriodClass::PiPeriodic),
        (false, true) => Ok(HalfPeriodClass::PiAntiperiodic),
        _ => Err(SpectrumError::Inconsistency(format!(
            "half-period discriminant {} at lambda = {} is not +-2",
            t.discriminant, mode.lambda
        ))),
    }
}

/// Number of zeros of the eigenfunction of a simple mode on `[0, 2pi)`.
pub fn zero_count(params: &SurfaceParams, mode: &ModeEigenvalue) -> Result<usize> {
    if mode.multiplicity != 1 {
        return Err(SpectrumError::InvalidParams("zero count needs a simple eigenvalue".into()));
    }
    let mut f = reconstruct(params, mode)?;
    let problem = LawsonProblem::new(*params, mode.l);
    let mut samples = SAMPLES;
    for _ in 0..4 {
        if let Some(n) = f.sign_changes() {
            return Ok(n);
        }
        samples = samples * 2 + 1;
        let class = if mode.half_period == HalfPeriodClass::PiAntiperiodic {
            BoundaryClass::Antiperiodic
        } else {
            BoundaryClass::Periodic
        };
        f = reconstruct_problem(&problem, mode.lambda, class, samples)?;
    }
    Err(SpectrumError::Unresolved {
        lo: mode.lambda,
        hi: mode.lambda,
        reason: "eigenfunction sample vanishes at every refinement".into(),
    })
}
