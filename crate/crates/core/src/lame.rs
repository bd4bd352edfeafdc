//! The separated equation as a Magnus-Winkler-Ince equation and as a
//! trigonometric Lame equation with `n(n+1) = lambda`.
//!
//! Writing `p^2 = (m^2+k^2)/2 (1 + a cos 2y)` turns the equation into
//!
//! ```text
//! (1 + a cos 2y) phi'' + b sin 2y phi' + (c + d cos 2y) phi = 0,
//! ```
//!
//! and for `m > k`, `p = m sqrt(1 - khat^2 sin^2 y)` gives the Lame form
//!
//! ```text
//! [1 - khat^2 sin^2 y] phi'' - khat^2 sin y cos y phi' + [h - n(n+1) khat^2 sin^2 y] phi = 0.
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectrumError};
use crate::floquet::{lowest_eigenvalues, LameN1Problem, LawsonProblem};
use crate::surface::SurfaceParams;

/// Coefficients of the Magnus-Winkler-Ince form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MwiCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Lame modulus, eigenparameter and degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LameParams {
    pub khat: f64,
    pub h: f64,
    pub n: f64,
    /// `cos y` takes the place of `sin y` (Klein bottles with `k > m`).
    pub alternate: bool,
}

/// Closed-form solutions of the `n = 1` Lame equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum N1Solution {
    /// `sqrt(1 - khat^2 s^2)`, `h = khat^2`.
    Root,
    /// `c = cos y` (or `sin y` in the alternate form), `h = 1`.
    Cosine,
    /// `s = sin y` (or `cos y` in the alternate form), `h = 1 + khat^2`.
    Sine,
}

/// One `n = 1` eigenvalue with its eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct N1Eigenpair {
    pub h: f64,
    pub solution: N1Solution,
    pub khat: f64,
    pub alternate: bool,
}

impl N1Eigenpair {
    /// `(phi, phi', phi'')` at `y`.
    pub fn eval(&self, y: f64) -> (f64, f64, f64) {
        // the alternate form is the standard one shifted by pi/2
        let z = if self.alternate { y + std::f64::consts::FRAC_PI_2 } else { y };
        match self.solution {
            N1Solution::Root => {
                let k2 = self.khat * self.khat;
                let u = 1.0 - k2 * z.sin().powi(2);
                let du = -k2 * (2.0 * z).sin();
                let ddu = -2.0 * k2 * (2.0 * z).cos();
                let w = u.sqrt();
                (w, du / (2.0 * w), ddu / (2.0 * w) - du * du / (4.0 * w * u))
            }
            N1Solution::Cosine => (z.cos(), -z.sin(), -z.cos()),
            N1Solution::Sine => (z.sin(), z.cos(), -z.sin()),
        }
    }

    /// Residual of the trigonometric Lame equation with `n = 1` at `y`.
    pub fn residual(&self, y: f64) -> f64 {
        let (phi, d1, d2) = self.eval(y);
        lame_residual(self.khat, self.h, 1.0, self.alternate, y, phi, d1, d2)
    }
}

/// Left side of the trigonometric Lame equation for given `phi, phi', phi''`.
#[allow(clippy::too_many_arguments)]
pub fn lame_residual(khat: f64, h: f64, n: f64, alternate: bool, y: f64, phi: f64, d1: f64, d2: f64) -> f64 {
    let (sy, cy) = y.sin_cos();
    let s = if alternate { cy } else { sy };
    let k2 = khat * khat;
    let drift = if alternate { k2 * sy * cy } else { -k2 * sy * cy };
    (1.0 - k2 * s * s) * d2 + drift * d1 + (h - n * (n + 1.0) * k2 * s * s) * phi
}

/// Left side of the MWI form for given `phi, phi', phi''`.
pub fn mwi_residual(coef: &MwiCoefficients, y: f64, phi: f64, d1: f64, d2: f64) -> f64 {
    let (s2, c2) = (2.0 * y).sin_cos();
    (1.0 + coef.a * c2) * d2 + coef.b * s2 * d1 + (coef.c + coef.d * c2) * phi
}

fn require_non_clifford(params: &SurfaceParams) -> Result<()> {
    if params.m == params.k {
        return Err(SpectrumError::InvalidParams("the Lame reduction needs m != k".into()));
    }
    Ok(())
}

pub fn mwi_coefficients(params: &SurfaceParams, l: f64, lambda: f64) -> Result<MwiCoefficients> {
    require_non_clifford(params)?;
    let (m2, k2) = ((params.m as f64).powi(2), (params.k as f64).powi(2));
    let a = (m2 - k2) / (m2 + k2);
    Ok(MwiCoefficients { a, b: -a, c: lambda - 2.0 * l * l / (m2 + k2), d: lambda * a })
}

/// `Q*(mu) = a (2mu-1)^2 - b (2mu-1) - d`. Coexistence of two periodic
/// solutions is only possible at an integer root `mu`.
pub fn qstar(params: &SurfaceParams, l: f64, lambda: f64, mu: i64) -> Result<f64> {
    let c = mwi_coefficients(params, l, lambda)?;
    let t = (2 * mu - 1) as f64;
    Ok(c.a * t * t - c.b * t - c.d)
}

/// Values `2 mu (2 mu - 1) < lambda_max` for nonzero integers `mu`, ascending.
///
/// These are the only eigenvalues at which coexistence can occur; `mu = 0`
/// would give a nonconstant harmonic function and is excluded.
pub fn coexistence_candidates(lambda_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut mu: i64 = 1;
    loop {
        let pos = (2 * mu * (2 * mu - 1)) as f64;
        let neg = (2 * mu * (2 * mu + 1)) as f64; // mu -> -mu
        if pos >= lambda_max {
            break;
        }
        out.push(pos);
        if neg < lambda_max {
            out.push(neg);
        }
        mu += 1;
    }
    out
}

/// Lame parameters of the mode `(l, lambda)`.
pub fn lame_map(params: &SurfaceParams, l: f64, lambda: f64) -> Result<LameParams> {
    require_non_clifford(params)?;
    if lambda < 0.0 {
        return Err(SpectrumError::Domain(format!("lambda must be >= 0, got {lambda}")));
    }
    let big = params.p_max();
    let small = params.p_min();
    let khat = (big * big - small * small).sqrt() / big;
    Ok(LameParams {
        khat,
        h: lambda - l * l / (big * big),
        n: 0.5 * (-1.0 + (1.0 + 4.0 * lambda).sqrt()),
        alternate: params.k > params.m,
    })
}

/// The three `n = 1` eigenpairs `h_0 < h_1 < h_2` in closed form.
pub fn n1_closed_forms(params: &SurfaceParams) -> Result<[N1Eigenpair; 3]> {
    let lp = lame_map(params, 0.0, 2.0)?;
    let k2 = lp.khat * lp.khat;
    let pair = |h, solution| N1Eigenpair { h, solution, khat: lp.khat, alternate: lp.alternate };
    Ok([pair(k2, N1Solution::Root), pair(1.0, N1Solution::Cosine), pair(1.0 + k2, N1Solution::Sine)])
}

/// The `n = 1` Lame eigenvalues `h` below `h_max`, computed numerically.
pub fn lame_n1_spectrum(params: &SurfaceParams, h_max: f64) -> Result<Vec<f64>> {
    let lp = lame_map(params, 0.0, 2.0)?;
    lowest_eigenvalues(&LameN1Problem { khat: lp.khat, alternate: lp.alternate }, h_max)
}

/// Evidence that no eigenvalue with index `i >= 3` lies below 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct H3Check {
    /// Fourth `n = 1` Lame eigenvalue.
    pub h3: f64,
    /// Fourth eigenvalue of the separated equation at `l = 0`.
    pub lambda3_at_zero: f64,
    pub holds: bool,
}

impl H3Check {
    pub fn margin(&self) -> f64 {
        (self.h3 - 2.0).min(self.lambda3_at_zero - 2.0)
    }
}

/// Computes `h_3` and `lambda_3(0)` and checks both exceed 2.
///
/// At `l = 0, lambda = 2` the separated equation is the Lame equation with
/// `h = 2`, so `h_2 < 2 < h_3` places exactly three eigenvalues `lambda_i(0)`
/// below 2.
pub fn h3_exceeds_two(params: &SurfaceParams) -> Result<H3Check> {
    let hs = lame_n1_spectrum(params, 4.5)?;
    let ls = lowest_eigenvalues(&LawsonProblem::new(*params, 0.0), 6.0)?;
    let (Some(&h3), Some(&l3)) = (hs.get(3), ls.get(3)) else {
        return Err(SpectrumError::Inconsistency("fewer than four eigenvalues located".into()));
    };
    Ok(H3Check { h3, lambda3_at_zero: l3, holds: h3 > 2.0 && l3 > 2.0 })
}
