//! Independent check of the separation of variables: a second-order finite
//! difference Laplacian on the quotient surface itself.
//!
//! The weighted form `-(1/p) u_xx - (p u_y)_y = lambda p u` is discretized
//! on a uniform `nx x ny` grid of `[0, 2pi)^2` with `p` sampled at half
//! points in `y`, which keeps the matrix symmetric. Quotients are handled by
//! restricting to functions invariant under the gluing map `g`: one grid
//! node per orbit `{r, g r}` with `K_red[r, s] = K[r, s] + K[r, g s]`.

use std::f64::consts::PI;

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use super::laplace_spectrum;
use crate::error::{Result, SpectrumError};
use crate::surface::{metric_p, Identification, SurfaceParams};

/// Symmetric operator `K` in compressed rows and the diagonal mass `M`.
struct Discretization {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    mass: Vec<f64>,
}

impl Discretization {
    fn size(&self) -> usize {
        self.mass.len()
    }

    fn assemble(params: &SurfaceParams, nx: usize, ny: usize) -> Result<Self> {
        if nx < 8 || ny < 8 || !nx.is_multiple_of(2) || !ny.is_multiple_of(2) {
            return Err(SpectrumError::InvalidParams(format!(
                "grid sizes must be even and at least 8, got {nx} x {ny}"
            )));
        }
        let ident = params.lattice().identification;
        let (hx, hy) = (2.0 * PI / nx as f64, 2.0 * PI / ny as f64);
        let p: Vec<f64> = (0..ny).map(|j| metric_p(params, j as f64 * hy)).collect();
        let p_half: Vec<f64> = (0..ny).map(|j| metric_p(params, (j as f64 + 0.5) * hy)).collect();

        let reps_x = if ident == Identification::DoubleCover { nx } else { nx / 2 };
        // representative of the orbit of grid node (i, j)
        let rep = |i: usize, j: usize| -> usize {
            if i < reps_x {
                return i * ny + j;
            }
            let i2 = i - nx / 2;
            let j2 = match ident {
                Identification::TorusShift => (j + ny / 2) % ny,
                Identification::KleinGlide => (ny - j) % ny,
                Identification::DoubleCover => unreachable!(),
            };
            i2 * ny + j2
        };

        let n = reps_x * ny;
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(5 * n);
        let mut vals = Vec::with_capacity(5 * n);
        let mut mass = Vec::with_capacity(n);
        row_ptr.push(0);
        for i in 0..reps_x {
            for j in 0..ny {
                let jm = (j + ny - 1) % ny;
                let jp = (j + 1) % ny;
                let cx = 1.0 / (p[j] * hx * hx);
                let (cyp, cym) = (p_half[j] / (hy * hy), p_half[jm] / (hy * hy));
                let mut row: Vec<(usize, f64)> = vec![
                    (i * ny + j, 2.0 * cx + cyp + cym),
                    (rep((i + nx - 1) % nx, j), -cx),
                    (rep((i + 1) % nx, j), -cx),
                    (rep(i, jp), -cyp),
                    (rep(i, jm), -cym),
                ];
                row.sort_by_key(|e| e.0);
                let start = cols.len();
                for (c, v) in row {
                    if cols.len() > start && *cols.last().unwrap() == c {
                        *vals.last_mut().unwrap() += v;
                    } else {
                        cols.push(c);
                        vals.push(v);
                    }
                }
                row_ptr.push(cols.len());
                mass.push(p[j]);
            }
        }
        Ok(Self { row_ptr, cols, vals, mass })
    }

    /// `A X` with `A = M^{-1/2} K M^{-1/2}`.
    fn apply_scaled(&self, x: &Mat<f64>) -> Mat<f64> {
        let inv_sqrt: Vec<f64> = self.mass.iter().map(|m| 1.0 / m.sqrt()).collect();
        Mat::from_fn(x.nrows(), x.ncols(), |r, c| {
            let mut acc = 0.0;
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                let s = self.cols[idx];
                acc += self.vals[idx] * inv_sqrt[s] * x[(s, c)];
            }
            acc * inv_sqrt[r]
        })
    }

    /// Sparse `K + M`, positive definite.
    fn shifted(&self) -> Result<SparseColMat<usize, f64>> {
        let mut trip = Vec::with_capacity(self.vals.len());
        for r in 0..self.size() {
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[idx];
                let v = self.vals[idx] + if c == r { self.mass[r] } else { 0.0 };
                trip.push(Triplet::new(r, c, v));
            }
        }
        SparseColMat::try_new_from_triplets(self.size(), self.size(), &trip)
            .map_err(|e| SpectrumError::Eigensolver(format!("sparse assembly: {e:?}")))
    }
}

/// What the iterative eigensolver must resolve.
#[derive(Debug, Clone, Copy)]
enum Target {
    Lowest(usize),
    Below(f64),
}

const MAX_ITERATIONS: usize = 400;
const RESIDUAL_TOL: f64 = 1e-9;
const GUARD: usize = 12;

/// Lowest eigenvalues of `K u = lambda M u` by block subspace iteration on
/// `(A + I)^{-1}` followed by Rayleigh-Ritz on `A`.
fn lowest_eigenvalues(disc: &Discretization, target: Target) -> Result<Vec<f64>> {
    let n = disc.size();
    let llt = disc
        .shifted()?
        .sp_cholesky(Side::Lower)
        .map_err(|e| SpectrumError::Eigensolver(format!("sparse Cholesky: {e:?}")))?;
    let sqrt_m: Vec<f64> = disc.mass.iter().map(|m| m.sqrt()).collect();
    let mut block = match target {
        Target::Lowest(c) => c + GUARD,
        Target::Below(_) => 48,
    }
    .min(n);
    let seed = |r: usize, c: usize| ((r * 7919 + c * 104_729 + 1) as f64 * 0.754_877_666_2).sin();
    let mut x = Mat::from_fn(n, block, seed);

    for _ in 0..MAX_ITERATIONS {
        // Y = M^{1/2} (K + M)^{-1} M^{1/2} X
        let mut y = Mat::from_fn(n, block, |r, c| sqrt_m[r] * x[(r, c)]);
        llt.solve_in_place(y.as_mut());
        for c in 0..block {
            for r in 0..n {
                y[(r, c)] *= sqrt_m[r];
            }
        }
        let q = y.qr().compute_thin_Q();
        let aq = disc.apply_scaled(&q);
        let h = q.transpose() * &aq;
        let h = Mat::from_fn(block, block, |i, j| 0.5 * (h[(i, j)] + h[(j, i)]));
        let eig = h
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| SpectrumError::Eigensolver(format!("Rayleigh-Ritz: {e:?}")))?;
        let theta: Vec<f64> = (0..block).map(|i| eig.S().column_vector()[i]).collect();
        let w = eig.U();
        x = &q * w;
        let ax = &aq * w;

        let wanted = match target {
            Target::Lowest(c) => c,
            Target::Below(cut) => theta.iter().filter(|&&t| t < cut).count(),
        };
        if wanted + GUARD > block && block < n {
            // not enough room to separate the wanted part; widen and keep iterating
            let grow = (2 * block).min(n);
            let old = x;
            x = Mat::from_fn(n, grow, |r, c| if c < block { old[(r, c)] } else { seed(r, c) });
            block = grow;
            continue;
        }
        // for a cutoff, the first Ritz pair above it must converge as well,
        // which rules out eigenvalues still hidden above the cutoff
        let checked = match target {
            Target::Lowest(c) => c,
            Target::Below(_) => wanted + 1,
        };
        let converged = (0..checked).all(|c| {
            let res: f64 = (0..n).map(|r| (ax[(r, c)] - theta[c] * x[(r, c)]).powi(2)).sum::<f64>().sqrt();
            res < RESIDUAL_TOL * theta[c].abs().max(1.0)
        });
        if converged {
            return Ok(theta[..wanted].to_vec());
        }
    }
    Err(SpectrumError::Eigensolver("subspace iteration did not converge".into()))
}

/// Finite-difference Laplace eigenvalues below `cutoff` on the quotient.
pub fn fd2d_oracle(params: &SurfaceParams, grid_nx: usize, grid_ny: usize, cutoff: f64) -> Result<Vec<f64>> {
    let disc = Discretization::assemble(params, grid_nx, grid_ny)?;
    lowest_eigenvalues(&disc, Target::Below(cutoff))
}

/// The `count` lowest finite-difference eigenvalues on an `n x n` grid.
pub fn fd2d_eigenvalues(params: &SurfaceParams, n: usize, count: usize) -> Result<Vec<f64>> {
    let disc = Discretization::assemble(params, n, n)?;
    lowest_eigenvalues(&disc, Target::Lowest(count))
}

/// `N(2)` from Richardson-extrapolated eigenvalues on `n/2` and `n` grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fd2dCount {
    pub grid: usize,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
    /// Per-eigenvalue error margin `|fine - coarse| / 3`.
    pub margins: Vec<f64>,
    /// Extrapolated values below `2 - margin`.
    pub n_of_two: usize,
    /// Extrapolated values within their margin of 2.
    pub at_two: usize,
    pub max_margin_near_two: f64,
}

/// Counts eigenvalues below 2 on the `n x n` grid, with the grid-error
/// margin estimated against the `n/2` grid.
pub fn fd2d_count(params: &SurfaceParams, n: usize) -> Result<Fd2dCount> {
    if !n.is_multiple_of(4) {
        return Err(SpectrumError::InvalidParams(format!("grid size must be a multiple of 4, got {n}")));
    }
    let fine = fd2d_oracle(params, n, n, 2.5)?;
    let coarse = fd2d_eigenvalues(params, n / 2, fine.len())?;
    let extrapolated: Vec<f64> = fine.iter().zip(&coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect();
    let margins: Vec<f64> = fine.iter().zip(&coarse).map(|(f, c)| ((f - c).abs() / 3.0).max(1e-7)).collect();
    let n_of_two = extrapolated.iter().zip(&margins).filter(|(v, d)| **v < 2.0 - **d).count();
    let near: Vec<f64> = extrapolated
        .iter()
        .zip(&margins)
        .filter(|(v, d)| (**v - 2.0).abs() <= **d)
        .map(|(_, d)| *d)
        .collect();
    Ok(Fd2dCount {
        grid: n,
        coarse,
        fine,
        extrapolated,
        n_of_two,
        at_two: near.len(),
        max_margin_near_two: near.iter().fold(0.0, |m: f64, d| m.max(*d)),
        margins,
    })
}

/// Grid-refinement study of the lowest eigenvalues against the separated spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fd2dConvergence {
    pub reference: Vec<f64>,
    pub coarse_errors: Vec<f64>,
    pub fine_errors: Vec<f64>,
    /// `log2` of the ratio of error norms, zero eigenvalue excluded.
    pub order: f64,
}

/// Observed order of the `count` lowest eigenvalues between the `n/2` and `n` grids.
pub fn fd2d_convergence(params: &SurfaceParams, n: usize, count: usize) -> Result<Fd2dConvergence> {
    let mut cutoff = 4.0;
    let reference = loop {
        let r = laplace_spectrum(params, cutoff)?;
        if r.laplace_eigenvalues.len() > count {
            break r.laplace_eigenvalues[..count].to_vec();
        }
        cutoff *= 2.0;
    };
    let fine = fd2d_eigenvalues(params, n, count)?;
    let coarse = fd2d_eigenvalues(params, n / 2, count)?;
    let coarse_errors: Vec<f64> = coarse.iter().zip(&reference).map(|(a, b)| (a - b).abs()).collect();
    let fine_errors: Vec<f64> = fine.iter().zip(&reference).map(|(a, b)| (a - b).abs()).collect();
    let norm = |e: &[f64]| e.iter().skip(1).map(|v| v * v).sum::<f64>().sqrt();
    let order = (norm(&coarse_errors) / norm(&fine_errors)).log2();
    Ok(Fd2dConvergence { reference, coarse_errors, fine_errors, order })
}
