//! Closed forms for the extremal index `j` and the value `Lambda_j` of the
//! Lawson surfaces, and their comparison with the numerical count `N(2)`.
//!
//! With `N = m^2 + k^2`, `M = max(m, k)`, `m' = min(m, k)` and
//! `E = E(sqrt(M^2 - m'^2) / M)`:
//!
//! | surface       | `j`                              | `Lambda_j`      |
//! |---------------|----------------------------------|-----------------|
//! | double cover  | `2 ([sqrt N] + m + k) - 1`       | `16 pi M E`     |
//! | torus, Klein  | `2 [sqrt N / 2] + m + k - 1`     | `8 pi M E`      |

use serde::{Deserialize, Serialize};

use crate::counting::count_n2;
use crate::elliptic::ellip_e;
use crate::error::Result;
use crate::surface::{area, area_quadrature, classify, SurfaceKind, SurfaceParams};

/// Relative tolerance between the closed-form value and `2 x area` by quadrature.
pub const VALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub j: u64,
    pub lambda_value: f64,
    pub kind: SurfaceKind,
    pub cover: bool,
    /// `Lambda_j` written out, e.g. `16*pi*3*E(sqrt(8)/3)`.
    pub symbolic: String,
}

/// `[sqrt n]` for `n < 2^52` in exact arithmetic.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// `[sqrt n / 2]`: the largest `t` with `4 t^2 <= n`, i.e. `isqrt(n / 4)`.
pub fn half_isqrt(n: u64) -> u64 {
    isqrt(n / 4)
}

pub fn extremal_index(params: &SurfaceParams) -> u64 {
    let n = params.norm_sq();
    let (m, k) = (params.m as u64, params.k as u64);
    if params.cover {
        2 * (isqrt(n) + m + k) - 1
    } else {
        2 * half_isqrt(n) + m + k - 1
    }
}

pub fn extremal_value(params: &SurfaceParams) -> f64 {
    let factor = if params.cover { 16.0 } else { 8.0 };
    factor * std::f64::consts::PI * params.p_max() * ellip_e(params.area_modulus())
}

fn symbolic(params: &SurfaceParams) -> String {
    let factor = if params.cover { 16 } else { 8 };
    let big = params.m.max(params.k) as u64;
    let small = params.m.min(params.k) as u64;
    format!("{factor}*pi*{big}*E(sqrt({})/{big})", big * big - small * small)
}

pub fn extremal(params: &SurfaceParams) -> ExtremalResult {
    ExtremalResult {
        j: extremal_index(params),
        lambda_value: extremal_value(params),
        kind: params.kind,
        cover: params.cover,
        symbolic: symbolic(params),
    }
}

/// Numerical evidence for one surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub params: SurfaceParams,
    pub j: u64,
    pub n_of_two: u64,
    pub lambda_closed_form: f64,
    /// `2 x area` with the area from direct quadrature of the metric.
    pub lambda_from_area: f64,
    pub relative_error: f64,
    pub multiplicity_of_two: u32,
    pub index_match: bool,
    pub value_match: bool,
}

impl VerifyRecord {
    pub fn passed(&self) -> bool {
        self.index_match && self.value_match
    }
}

/// Count `N(2)` numerically and compare with the closed forms.
pub fn verify(params: &SurfaceParams) -> Result<VerifyRecord> {
    let report = count_n2(params)?;
    let j = extremal_index(params);
    let closed = extremal_value(params);
    let from_area = 2.0 * area_quadrature(params);
    let relative_error = ((closed - from_area) / from_area).abs();
    Ok(VerifyRecord {
        params: *params,
        j,
        n_of_two: report.n_of_two as u64,
        lambda_closed_form: closed,
        lambda_from_area: from_area,
        relative_error,
        multiplicity_of_two: report.multiplicity_of_two,
        index_match: j == report.n_of_two as u64,
        value_match: relative_error < VALUE_TOL,
    })
}

/// Every surface with `max(m, k) <= mmax`: tori with their double covers,
/// and Klein bottles in both `m > k` and `m < k` orders, sorted by `(m, k, cover)`.
pub fn sweep_surfaces(mmax: u32) -> Vec<SurfaceParams> {
    let mut out = Vec::new();
    for a in 1..=mmax {
        for b in 1..=a {
            let Ok(s) = classify(a, b, false) else { continue };
            out.push(s);
            if !s.is_klein() {
                out.push(s.with_cover(true));
            }
        }
    }
    out.sort_by_key(|s| (s.m, s.k, s.cover));
    out
}

/// `2 x area` by the closed form; equals [`extremal_value`] by construction.
pub fn twice_area(params: &SurfaceParams) -> f64 {
    2.0 * area(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn indices() {
        let t = classify(1, 1, false).unwrap();
        assert_eq!(extremal_index(&t), 1);
        assert_eq!(extremal_index(&t.with_cover(true)), 5);
        assert_eq!(extremal_index(&classify(3, 1, true).unwrap()), 13);
        assert_eq!(extremal_index(&classify(3, 1, false).unwrap()), 5);
        assert_eq!(extremal_index(&classify(2, 1, false).unwrap()), 4);
    }

    #[test]
    fn half_isqrt_near_squares() {
        for n in 0..5000u64 {
            let t = half_isqrt(n);
            assert!(4 * t * t <= n && 4 * (t + 1) * (t + 1) > n, "{n}");
        }
    }

    #[test]
    fn clifford_values() {
        let t = classify(1, 1, false).unwrap();
        assert!((extremal_value(&t) - 4.0 * PI * PI).abs() < 1e-12);
        assert!((extremal_value(&t.with_cover(true)) - 8.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn value_is_twice_area() {
        for s in sweep_surfaces(7) {
            assert!((extremal_value(&s) - twice_area(&s)).abs() < 1e-12 * extremal_value(&s));
        }
    }

    #[test]
    fn sweep_contents() {
        let s = sweep_surfaces(3);
        let tags: Vec<(u32, u32, bool)> = s.iter().map(|p| (p.m, p.k, p.cover)).collect();
        assert_eq!(tags, vec![(1, 1, false), (1, 1, true), (2, 1, false), (2, 3, false), (3, 1, false), (3, 1, true)]);
    }

    #[test]
    fn symbolic_form() {
        assert_eq!(extremal(&classify(3, 1, true).unwrap()).symbolic, "16*pi*3*E(sqrt(8)/3)");
        assert_eq!(extremal(&classify(2, 3, false).unwrap()).symbolic, "8*pi*3*E(sqrt(5)/3)");
    }

    #[test]
    fn verify_small_cases() {
        for (m, k, cover) in [(1, 1, false), (1, 1, true), (3, 1, true), (2, 1, false)] {
            let r = verify(&classify(m, k, cover).unwrap()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
