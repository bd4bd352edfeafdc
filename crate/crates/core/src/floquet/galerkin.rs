use std::f64::consts::PI;

use faer::linalg::triangular_solve::solve_lower_triangular_in_place;
use faer::{Mat, Par, Side};

use super::Parity;
use crate::error::{Result, SpectrumError};
use crate::surface::{metric_p, SurfaceParams};

/// Trapezoid points for the Fourier coefficients of `p` and `1/p`.
const FOURIER_POINTS: usize = 8192;

/// Minimum number of harmonics accepted.
pub const MIN_BASIS: usize = 32;

/// Cosine coefficients `a_q = int_0^{2pi} f(y) cos(q y) dy` for `q <= qmax`.
fn cosine_coefficients<F: Fn(f64) -> f64>(f: F, qmax: usize) -> Vec<f64> {
    let h = 2.0 * PI / FOURIER_POINTS as f64;
    let samples: Vec<f64> = (0..FOURIER_POINTS).map(|j| f(j as f64 * h)).collect();
    (0..=qmax)
        .map(|q| {
            samples
                .iter()
                .enumerate()
                .map(|(j, v)| v * ((q * j % FOURIER_POINTS) as f64 * h).cos())
                .sum::<f64>()
                * h
        })
        .collect()
}

/// Eigenvalues of `K x = lambda M x` for symmetric `K` and positive definite `M`.
fn generalized_eigenvalues(k: &Mat<f64>, m: &Mat<f64>) -> Result<Vec<f64>> {
    let llt = m
        .llt(Side::Lower)
        .map_err(|e| SpectrumError::Eigensolver(format!("mass matrix not positive definite: {e:?}")))?;
    let l = llt.L();
    // C = L^{-1} K L^{-T}
    let mut x = k.clone();
    solve_lower_triangular_in_place(l, x.as_mut(), Par::Seq);
    let mut y = x.transpose().to_owned();
    solve_lower_triangular_in_place(l, y.as_mut(), Par::Seq);
    let n = y.nrows();
    let c = Mat::from_fn(n, n, |i, j| 0.5 * (y[(i, j)] + y[(j, i)]));
    let mut vals = c
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| SpectrumError::Eigensolver(format!("{e:?}")))?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Galerkin eigenvalues of the Lawson equation split by symmetry.
///
/// The weak form `int p u'v' + (l^2/p) u v = lambda int p u v` is posed on
/// `{1, cos jy}` (even) and `{sin jy}` (odd), `1 <= j <= basis_size`.
/// Since `p` is even the two blocks decouple.
pub fn galerkin_eigenvalues_with_parity(
    params: &SurfaceParams,
    l: f64,
    basis_size: usize,
) -> Result<Vec<(f64, Parity)>> {
    if basis_size < MIN_BASIS {
        return Err(SpectrumError::InvalidParams(format!(
            "basis size must be at least {MIN_BASIS}, got {basis_size}"
        )));
    }
    let n = basis_size;
    let ap = cosine_coefficients(|y| metric_p(params, y), 2 * n);
    let aq = cosine_coefficients(|y| 1.0 / metric_p(params, y), 2 * n);
    let l2 = l * l;

    let even_k = Mat::from_fn(n + 1, n + 1, |i, j| {
        let (d, s) = (i.abs_diff(j), i + j);
        (i * j) as f64 * 0.5 * (ap[d] - ap[s]) + l2 * 0.5 * (aq[d] + aq[s])
    });
    let even_m = Mat::from_fn(n + 1, n + 1, |i, j| {
        let (d, s) = (i.abs_diff(j), i + j);
        0.5 * (ap[d] + ap[s])
    });
    let odd_k = Mat::from_fn(n, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let (d, s) = (i.abs_diff(j), i + j);
        (i * j) as f64 * 0.5 * (ap[d] + ap[s]) + l2 * 0.5 * (aq[d] - aq[s])
    });
    let odd_m = Mat::from_fn(n, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let (d, s) = (i.abs_diff(j), i + j);
        0.5 * (ap[d] - ap[s])
    });

    let (even, odd) = rayon::join(
        || generalized_eigenvalues(&even_k, &even_m),
        || generalized_eigenvalues(&odd_k, &odd_m),
    );
    let mut out: Vec<(f64, Parity)> = even?
        .into_iter()
        .map(|v| (v, Parity::Even))
        .chain(odd?.into_iter().map(|v| (v, Parity::Odd)))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

/// Sorted Galerkin eigenvalues in a basis of `2 basis_size + 1` trigonometric
/// functions. Only the lower part of the list is accurate.
pub fn galerkin_eigenvalues(params: &SurfaceParams, l: f64, basis_size: usize) -> Result<Vec<f64>> {
    Ok(galerkin_eigenvalues_with_parity(params, l, basis_size)?.into_iter().map(|(v, _)| v).collect())
}
