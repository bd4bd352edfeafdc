//! Laplace-Beltrami eigenvalues assembled from the separated equation.
//!
//! An eigenfunction `phi_i(l, y) cos(lx)` or `phi_i(l, y) sin(lx)` on the
//! double cover descends to the quotient when it is invariant under the
//! gluing map. For the Lawson torus the map `(x, y) -> (x + pi, y + pi)`
//! keeps `pi`-periodic `phi` at even `l` and `pi`-antiperiodic `phi` at odd
//! `l`; for the Klein bottle `(x, y) -> (x + pi, -y)` keeps even `phi` at
//! even `l` and odd `phi` at odd `l`.

mod fd2d;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use fd2d::{
    fd2d_convergence, fd2d_count, fd2d_eigenvalues, fd2d_oracle, Fd2dConvergence, Fd2dCount,
};

use crate::error::{Result, SpectrumError};
use crate::floquet::{
    monodromy, periodic_spectrum, HalfPeriodClass, ModeEigenvalue, Parity, Period,
};
use crate::surface::{Identification, SurfaceParams};

/// Eigenvalues closer than this to 2 are taken to equal 2.
pub const AT_TWO_TOL: f64 = 1e-8;

/// Which Fourier-separated modes survive on a quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Filter {
    /// Every mode (the `2pi x 2pi` torus).
    All,
    /// Invariant under `(x, y) -> (x + pi, y + pi)`.
    TorusShift,
    /// Invariant under `(x, y) -> (x + pi, -y)`.
    KleinGlide,
    /// Anti-invariant under `(x, y) -> (x + pi, y + pi)`.
    TorusShiftComplement,
    /// Anti-invariant under `(x, y) -> (x + pi, -y)`.
    KleinGlideComplement,
}

impl Filter {
    pub fn for_params(params: &SurfaceParams) -> Self {
        match params.lattice().identification {
            Identification::DoubleCover => Self::All,
            Identification::TorusShift => Self::TorusShift,
            Identification::KleinGlide => Self::KleinGlide,
        }
    }

    /// Number of Laplace eigenfunctions contributed by one record at
    /// integer Fourier index `l`.
    ///
    /// `cos(lx)` and `sin(lx)` behave alike under both gluing maps, so a
    /// kept record counts twice for `l > 0`. A degenerate pair spans one
    /// even and one odd function; under the Klein filters exactly one of
    /// them survives, credited to the first record of the pair.
    pub fn weight(self, l: u32, mode: &ModeEigenvalue) -> u32 {
        let lw = if l == 0 { 1 } else { 2 };
        let l_even = l.is_multiple_of(2);
        let keep = match self {
            Self::All => true,
            Self::TorusShift | Self::TorusShiftComplement => {
                let periodic = mode.half_period == HalfPeriodClass::PiPeriodic;
                let invariant = periodic == l_even;
                invariant == (self == Self::TorusShift)
            }
            Self::KleinGlide | Self::KleinGlideComplement => match mode.parity {
                Parity::Pair => return if mode.i % 2 == 1 { lw } else { 0 },
                Parity::Even | Parity::Odd => {
                    let invariant = (mode.parity == Parity::Even) == l_even;
                    invariant == (self == Self::KleinGlide)
                }
            },
        };
        if keep {
            lw
        } else {
            0
        }
    }
}

/// A one-dimensional eigenvalue together with its Laplace multiplicity on
/// the surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountedMode {
    pub mode: ModeEigenvalue,
    pub laplace_multiplicity: u32,
}

/// Root of `lambda_0(l) = 2` in closed form and numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossover {
    pub closed_form: f64,
    pub numeric: f64,
    pub lambda0_at_numeric: f64,
}

/// Laplace spectrum below a cutoff together with `N(2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub params: SurfaceParams,
    pub cutoff: f64,
    /// Kept modes with eigenvalue below `max(cutoff, 2)` (eigenvalue 2 included).
    pub modes: Vec<CountedMode>,
    /// Eigenvalues below `cutoff` repeated by multiplicity, ascending.
    pub laplace_eigenvalues: Vec<f64>,
    /// Number of eigenvalues strictly below 2.
    pub n_of_two: usize,
    /// Laplace multiplicity of the eigenvalue 2.
    pub multiplicity_of_two: u32,
    pub crossover: f64,
}

impl SpectrumReport {
    /// `N(lambda)`: eigenvalues strictly below `lambda` (with the boundary tolerance).
    pub fn count_below(&self, lambda: f64) -> usize {
        self.laplace_eigenvalues.iter().filter(|&&v| v < lambda - AT_TWO_TOL).count()
    }
}

/// `lambda_0(l) >= l^2 / max(p)^2`, so `lambda_0(l) < c` forces `l < max(p) sqrt(c)`.
fn l_bound(params: &SurfaceParams, cutoff: f64) -> u32 {
    (params.p_max() * cutoff.max(0.0).sqrt()).floor() as u32 + 1
}

/// Spectrum records at every integer `l` whose lowest eigenvalue lies below
/// `lambda_max`, in increasing `l`.
fn modes_by_l(params: &SurfaceParams, lambda_max: f64) -> Result<Vec<(u32, Vec<ModeEigenvalue>)>> {
    let bound = l_bound(params, lambda_max);
    let per_l: Vec<(u32, Vec<ModeEigenvalue>)> = (0..=bound)
        .into_par_iter()
        .map(|l| periodic_spectrum(params, l as f64, lambda_max).map(|v| (l, v)))
        .collect::<Result<_>>()?;
    // lambda_0 increases with l: stop at the first l with nothing below the cutoff
    let mut out = Vec::new();
    for (l, modes) in per_l {
        if modes.is_empty() {
            return Ok(out);
        }
        out.push((l, modes));
    }
    Err(SpectrumError::Inconsistency(format!(
        "lambda_0(l) below {lambda_max} at l = {bound}, beyond the a priori bound"
    )))
}

/// Laplace spectrum below `cutoff` assembled from the separated modes.
pub fn laplace_spectrum(params: &SurfaceParams, cutoff: f64) -> Result<SpectrumReport> {
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(SpectrumError::Domain(format!("cutoff must be positive, got {cutoff}")));
    }
    let filter = Filter::for_params(params);
    let reach = cutoff.max(2.0) + 0.05;
    let mut modes = Vec::new();
    let mut eigenvalues = Vec::new();
    for (l, records) in modes_by_l(params, reach)? {
        for mode in records {
            let w = filter.weight(l, &mode);
            if w == 0 || mode.lambda >= cutoff.max(2.0) + AT_TWO_TOL {
                continue;
            }
            modes.push(CountedMode { mode, laplace_multiplicity: w });
            if mode.lambda < cutoff - AT_TWO_TOL {
                eigenvalues.extend(std::iter::repeat_n(mode.lambda, w as usize));
            }
        }
    }
    eigenvalues.sort_by(f64::total_cmp);
    let n_of_two = modes
        .iter()
        .filter(|c| c.mode.lambda < 2.0 - AT_TWO_TOL)
        .map(|c| c.laplace_multiplicity as usize)
        .sum();
    let multiplicity_of_two = modes
        .iter()
        .filter(|c| (c.mode.lambda - 2.0).abs() <= AT_TWO_TOL)
        .map(|c| c.laplace_multiplicity)
        .sum();
    Ok(SpectrumReport {
        params: *params,
        cutoff,
        modes,
        laplace_eigenvalues: eigenvalues,
        n_of_two,
        multiplicity_of_two,
        crossover: (params.norm_sq() as f64).sqrt(),
    })
}

/// `N(2)` with the structural checks on the eigenvalue 2 and on multiplicities.
///
/// Eigenvalues at 2 must come from `cos y` at `l = m` (even) and `sin y` at
/// `l = k` (odd), each simple, or from the degenerate pair at `l = 1` on the
/// Clifford torus. A double eigenvalue below 2 is an error for `m != k`.
pub fn count_n2(params: &SurfaceParams) -> Result<SpectrumReport> {
    let report = laplace_spectrum(params, 2.0)?;
    let clifford = params.is_clifford();
    for c in &report.modes {
        let e = &c.mode;
        if e.lambda < 2.0 - AT_TWO_TOL && e.multiplicity == 2 && !clifford {
            return Err(SpectrumError::Inconsistency(format!(
                "double eigenvalue {} below 2 at l = {}",
                e.lambda, e.l
            )));
        }
        if (e.lambda - 2.0).abs() <= AT_TWO_TOL {
            let l = e.l as u32;
            let expected = if clifford {
                l == 1 && e.parity == Parity::Pair
            } else {
                e.multiplicity == 1
                    && ((l == params.m && e.parity == Parity::Even)
                        || (l == params.k && e.parity == Parity::Odd))
            };
            if !expected {
                return Err(SpectrumError::Inconsistency(format!(
                    "unexpected eigenvalue 2 at l = {l}, i = {}, parity {:?}",
                    e.i, e.parity
                )));
            }
        }
    }
    if report.multiplicity_of_two != 4 {
        return Err(SpectrumError::Inconsistency(format!(
            "eigenvalue 2 has multiplicity {}, expected 4",
            report.multiplicity_of_two
        )));
    }
    Ok(report)
}

/// Solves `lambda_0(l) = 2` over real `l` and compares with `sqrt(m^2 + k^2)`.
///
/// The half-period discriminant at `lambda = 2` minus 2 is negative for
/// `l < l_c` and positive beyond, so plain bisection applies.
pub fn crossover_l(params: &SurfaceParams) -> Result<Crossover> {
    let closed_form = (params.norm_sq() as f64).sqrt();
    let g = |l: f64| -> Result<f64> { Ok(monodromy(params, l, 2.0, Period::Half)?.discriminant - 2.0) };
    let (mut lo, mut hi) = (0.0, std::f64::consts::SQRT_2 * params.p_max() + 0.5);
    let (g_lo, g_hi) = (g(lo)?, g(hi)?);
    if g_lo >= 0.0 || g_hi <= 0.0 {
        return Err(SpectrumError::Unresolved {
            lo,
            hi,
            reason: format!("no sign change for the crossover ({g_lo}, {g_hi})"),
        });
    }
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let numeric = 0.5 * (lo + hi);
    let lambda0 = periodic_spectrum(params, numeric, 2.5)?
        .first()
        .map(|e| e.lambda)
        .ok_or_else(|| SpectrumError::Inconsistency("no eigenvalue at the crossover".into()))?;
    Ok(Crossover { closed_form, numeric, lambda0_at_numeric: lambda0 })
}
