use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigenfunction::parity_of_problem;
use super::monodromy::{monodromy_of, multiplicity_of, Monodromy};
use super::problem::{LawsonProblem, SturmLiouville};
use super::{BoundaryClass, HalfPeriodClass, ModeEigenvalue, Parity, Period};
use crate::error::{Result, SpectrumError};
use crate::surface::SurfaceParams;

/// Root-finding controls for the discriminant scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Grid spacing in lambda.
    pub step: f64,
    /// Bracket width at which bisection stops.
    pub root_tol: f64,
    /// Roots closer than this are tested for coexistence.
    pub merge_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { step: 0.05, root_tol: 1e-10, merge_tol: 1e-6 }
    }
}

/// An eigenvalue of one boundary class, before index assignment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassEigenvalue {
    pub lambda: f64,
    pub class: BoundaryClass,
    pub multiplicity: u8,
}

fn residual(t: &Monodromy, class: BoundaryClass) -> f64 {
    t.discriminant - 2.0 * class.sign()
}

struct Scanner<'a, S: SturmLiouville> {
    problem: &'a S,
    period: Period,
    class: BoundaryClass,
    opts: ScanOptions,
}

impl<S: SturmLiouville> Scanner<'_, S> {
    fn eval(&self, lambda: f64) -> Result<Monodromy> {
        monodromy_of(self.problem, lambda, self.period)
    }

    fn g(&self, lambda: f64) -> Result<f64> {
        Ok(residual(&self.eval(lambda)?, self.class))
    }

    /// Root of `h` in `[lo, hi]` given opposite signs at the ends.
    fn bisect<F>(&self, mut lo: f64, mut hi: f64, mut f_lo: f64, mut f_hi: f64, h: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        while hi - lo > self.opts.root_tol {
            let mid = 0.5 * (lo + hi);
            let f_mid = h(mid)?;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        // one secant step inside the final bracket
        let x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        Ok(if x.is_finite() && x > lo && x < hi { x } else { 0.5 * (lo + hi) })
    }

    /// Roots near a grid-local minimum of `|g|` without a sign change.
    ///
    /// For even coefficients an eigenfunction of either boundary class is
    /// even (a root of `Phi'(L)`) or odd (a root of `Psi(L)`); both entries
    /// have simple roots, so nearly coincident eigenvalues separate cleanly.
    fn resolve_tangency(&self, lo: f64, hi: f64) -> Result<Vec<f64>> {
        let t_lo = self.eval(lo)?;
        let t_hi = self.eval(hi)?;
        let mut roots = Vec::new();
        type Entry = fn(&Monodromy) -> f64;
        let entries: [Entry; 2] = [|t| t.dphi_end, |t| t.psi_end];
        for entry in entries {
            let (a, b) = (entry(&t_lo), entry(&t_hi));
            if a * b > 0.0 {
                continue;
            }
            let root = self.bisect(lo, hi, a, b, |x| Ok(entry(&self.eval(x)?)))?;
            let t = self.eval(root)?;
            // diagonal is +-1 at such a root; keep the requested class only
            if (t.phi_end - self.class.sign()).abs() < 0.5 {
                roots.push(root);
            }
        }
        roots.sort_by(f64::total_cmp);
        Ok(roots)
    }

    fn run(&self, lambda_min: f64, lambda_max: f64) -> Result<Vec<ClassEigenvalue>> {
        let step = self.opts.step;
        let n = ((lambda_max - lambda_min) / step).ceil() as usize + 2;
        let grid: Vec<f64> = (0..n).map(|i| lambda_min + i as f64 * step).collect();
        let values = grid.par_iter().map(|&x| self.g(x)).collect::<Result<Vec<f64>>>()?;

        // (grid index, kind): 0 = sign change on [i, i+1], 1 = exact zero at i,
        // 2 = local minimum of |g| on [i-1, i+1] without a sign change
        let mut intervals: Vec<(usize, u8)> = Vec::new();
        for i in 0..n - 1 {
            if values[i] * values[i + 1] < 0.0 {
                intervals.push((i, 0));
            }
        }
        for i in 1..n - 1 {
            let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
            if b == 0.0 && a * c < 0.0 {
                intervals.push((i, 1));
            } else if a * c > 0.0 && a * b >= 0.0 && b.abs() < a.abs() && b.abs() < c.abs() {
                intervals.push((i, 2));
            }
        }

        let found = intervals
            .par_iter()
            .map(|&(i, kind)| match kind {
                0 => self
                    .bisect(grid[i], grid[i + 1], values[i], values[i + 1], |x| self.g(x))
                    .map(|r| vec![r]),
                1 => Ok(vec![grid[i]]),
                _ => self.resolve_tangency(grid[i - 1], grid[i + 1]),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut roots: Vec<f64> = found.into_iter().flatten().collect();
        roots.sort_by(f64::total_cmp);

        let mut out: Vec<ClassEigenvalue> = Vec::new();
        let mut idx = 0;
        while idx < roots.len() {
            let r = roots[idx];
            let next_close = roots.get(idx + 1).is_some_and(|&s| s - r < self.opts.merge_tol);
            if next_close {
                let mid = 0.5 * (r + roots[idx + 1]);
                if multiplicity_of(self.problem, mid)? == 2 {
                    out.push(ClassEigenvalue { lambda: mid, class: self.class, multiplicity: 2 });
                    idx += 2;
                    // a third root within tolerance is a numerical duplicate
                    while roots.get(idx).is_some_and(|&s| s - mid < self.opts.merge_tol) {
                        idx += 1;
                    }
                    continue;
                }
                if roots[idx + 1] - r < self.opts.root_tol * 10.0 {
                    // same simple root bracketed twice around a grid point
                    out.push(ClassEigenvalue { lambda: mid, class: self.class, multiplicity: 1 });
                    idx += 2;
                    continue;
                }
            }
            out.push(ClassEigenvalue { lambda: r, class: self.class, multiplicity: 1 });
            idx += 1;
        }
        out.retain(|e| e.lambda < lambda_max);
        Ok(out)
    }
}

/// Eigenvalues below `lambda_max` of one boundary class of a general problem.
///
/// Over the half period `class` selects discriminant `+2` or `-2`; over the
/// full period only `Periodic` is meaningful. The problem's coefficients
/// must be even in `y`.
pub fn class_eigenvalues<S: SturmLiouville>(
    problem: &S,
    lambda_max: f64,
    period: Period,
    class: BoundaryClass,
    opts: &ScanOptions,
) -> Result<Vec<ClassEigenvalue>> {
    if !(lambda_max.is_finite()) {
        return Err(SpectrumError::Domain("lambda_max must be finite".into()));
    }
    if period == Period::Full && class == BoundaryClass::Antiperiodic {
        return Err(SpectrumError::InvalidParams(
            "antiperiodic class is only defined over the half period".into(),
        ));
    }
    let lower = problem.spectrum_lower_bound();
    if lambda_max <= lower {
        return Ok(Vec::new());
    }
    Scanner { problem, period, class, opts: *opts }.run(lower, lambda_max)
}

/// Merge both half-period classes into the ordered `2pi`-periodic spectrum.
///
/// Returns `(i, eigenvalue)` pairs; a double eigenvalue occupies two
/// consecutive indices. The ordering pattern of periodic Sturm-Liouville
/// problems is checked: index 0 is a simple `pi`-periodic eigenvalue and the
/// pair `(2j+1, 2j+2)` is `pi`-antiperiodic for even `j`, `pi`-periodic for odd `j`.
fn merge_classes(
    periodic: Vec<ClassEigenvalue>,
    antiperiodic: Vec<ClassEigenvalue>,
) -> Result<Vec<(usize, ClassEigenvalue)>> {
    let mut all: Vec<ClassEigenvalue> = periodic.into_iter().chain(antiperiodic).collect();
    all.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let mut out = Vec::new();
    let mut i = 0;
    for e in all {
        for _ in 0..e.multiplicity {
            out.push((i, e));
            i += 1;
        }
    }
    for &(i, e) in &out {
        let expected = if i == 0 {
            BoundaryClass::Periodic
        } else if ((i - 1) / 2) % 2 == 0 {
            BoundaryClass::Antiperiodic
        } else {
            BoundaryClass::Periodic
        };
        if e.class != expected {
            return Err(SpectrumError::Inconsistency(format!(
                "eigenvalue {} at index {i} has class {:?}, expected {:?}",
                e.lambda, e.class, expected
            )));
        }
        if i == 0 && e.multiplicity != 1 {
            return Err(SpectrumError::Inconsistency("lowest eigenvalue is not simple".into()));
        }
    }
    Ok(out)
}

/// The `2pi`-periodic eigenvalues below `lambda_max` of a general problem,
/// repeated according to multiplicity.
pub fn lowest_eigenvalues<S: SturmLiouville>(problem: &S, lambda_max: f64) -> Result<Vec<f64>> {
    Ok(indexed_spectrum(problem, lambda_max)?.into_iter().map(|(_, e)| e.lambda).collect())
}

fn indexed_spectrum<S: SturmLiouville>(
    problem: &S,
    lambda_max: f64,
) -> Result<Vec<(usize, ClassEigenvalue)>> {
    let opts = ScanOptions::default();
    let (periodic, antiperiodic) = rayon::join(
        || class_eigenvalues(problem, lambda_max, Period::Half, BoundaryClass::Periodic, &opts),
        || class_eigenvalues(problem, lambda_max, Period::Half, BoundaryClass::Antiperiodic, &opts),
    );
    merge_classes(periodic?, antiperiodic?)
}

/// Full records for the `2pi`-periodic spectrum of the Lawson equation at
/// Fourier index `l`, below `lambda_max`.
pub fn periodic_spectrum(params: &SurfaceParams, l: f64, lambda_max: f64) -> Result<Vec<ModeEigenvalue>> {
    if l < 0.0 || !l.is_finite() {
        return Err(SpectrumError::Domain(format!("Fourier index must be >= 0, got {l}")));
    }
    let problem = LawsonProblem::new(*params, l);
    let indexed = indexed_spectrum(&problem, lambda_max)?;
    indexed
        .par_iter()
        .map(|&(i, e)| {
            let parity = if e.multiplicity == 2 {
                Parity::Pair
            } else {
                parity_of_problem(&problem, e.lambda, e.class)?
            };
            Ok(ModeEigenvalue {
                l,
                i,
                lambda: e.lambda,
                multiplicity: e.multiplicity,
                parity,
                half_period: HalfPeriodClass::from(e.class),
            })
        })
        .collect()
}

/// Eigenvalues below `lambda_max` of the chosen class, with indices taken
/// from the merged `2pi`-periodic ordering.
///
/// `(Full, Periodic)` returns the whole `2pi`-periodic spectrum; over the
/// half period only the members of `class` are returned.
pub fn eigenvalues_at_l(
    params: &SurfaceParams,
    l: f64,
    lambda_max: f64,
    period: Period,
    class: BoundaryClass,
) -> Result<Vec<ModeEigenvalue>> {
    if lambda_max <= 0.0 {
        return Err(SpectrumError::Domain("lambda_max must be positive".into()));
    }
    if period == Period::Full && class == BoundaryClass::Antiperiodic {
        return Err(SpectrumError::InvalidParams(
            "antiperiodic class is only defined over the half period".into(),
        ));
    }
    let all = periodic_spectrum(params, l, lambda_max)?;
    Ok(match period {
        Period::Full => all,
        Period::Half => {
            let want = HalfPeriodClass::from(class);
            all.into_iter().filter(|e| e.half_period == want).collect()
        }
    })
}
