//! Lawson tau-surfaces: parameter normalization, the immersion into the
//! unit three-sphere, the induced metric `p(y)^2 dx^2 + dy^2` and areas.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::elliptic::{ellip_e, Modulus};
use crate::error::{Result, SpectrumError};
use crate::quadrature::GaussLegendre;

/// Topological type of `tau_{m,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    CliffordTorus,
    LawsonTorus,
    LawsonKleinBottle,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::CliffordTorus => "clifford-torus",
            Self::LawsonTorus => "lawson-torus",
            Self::LawsonKleinBottle => "lawson-klein-bottle",
        };
        f.write_str(s)
    }
}

/// Validated, normalized surface parameters.
///
/// Tori are stored with `m > k` (both odd), Klein bottles with `m` even
/// and `k` odd. `cover` selects the double cover over the `2pi x 2pi`
/// lattice and is only meaningful for tori.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceParams {
    pub m: u32,
    pub k: u32,
    pub kind: SurfaceKind,
    pub cover: bool,
}

/// How points of the `(x, y)` plane are identified on the quotient surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Identification {
    /// Lattice generated by `(2pi, 0)` and `(0, 2pi)`.
    DoubleCover,
    /// Lattice generated by `(pi, pi)` and `(pi, -pi)`.
    TorusShift,
    /// `(x, y) ~ (x + pi, -y)` together with `(x, y) ~ (x, y + 2pi)`.
    KleinGlide,
}

/// Period data of the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub generators: [[f64; 2]; 2],
    pub identification: Identification,
}

impl Lattice {
    /// `[x0, x1) x [y0, y1)` covering the quotient exactly once.
    pub fn fundamental_domain(&self) -> ([f64; 2], [f64; 2]) {
        match self.identification {
            Identification::DoubleCover => ([0.0, 2.0 * PI], [-PI, PI]),
            Identification::TorusShift | Identification::KleinGlide => ([0.0, PI], [-PI, PI]),
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Validate `(m, k)`, fix the conventional order and assign the kind.
pub fn classify(m: u32, k: u32, cover: bool) -> Result<SurfaceParams> {
    if m == 0 || k == 0 {
        return Err(SpectrumError::InvalidParams(
            "m and k must be positive integers".into(),
        ));
    }
    if m == k && m != 1 {
        return Err(SpectrumError::InvalidParams(format!(
            "gcd(m,k) must be 1 (m = k = {m})"
        )));
    }
    if gcd(m, k) != 1 {
        return Err(SpectrumError::InvalidParams(format!(
            "gcd(m,k) must be 1, got gcd({m},{k}) = {}",
            gcd(m, k)
        )));
    }
    if m == 1 && k == 1 {
        return Ok(SurfaceParams { m, k, kind: SurfaceKind::CliffordTorus, cover });
    }
    if m % 2 == 1 && k % 2 == 1 {
        let (m, k) = if m > k { (m, k) } else { (k, m) };
        return Ok(SurfaceParams { m, k, kind: SurfaceKind::LawsonTorus, cover });
    }
    if cover {
        return Err(SpectrumError::InvalidParams(
            "the double cover is only defined for tori, not for Klein bottles".into(),
        ));
    }
    let (m, k) = if m.is_multiple_of(2) { (m, k) } else { (k, m) };
    Ok(SurfaceParams { m, k, kind: SurfaceKind::LawsonKleinBottle, cover: false })
}

impl SurfaceParams {
    pub fn is_clifford(&self) -> bool {
        self.kind == SurfaceKind::CliffordTorus
    }

    pub fn is_klein(&self) -> bool {
        self.kind == SurfaceKind::LawsonKleinBottle
    }

    /// `max(m, k)` as a float: the value of `p` at its maximum.
    pub fn p_max(&self) -> f64 {
        self.m.max(self.k) as f64
    }

    pub fn p_min(&self) -> f64 {
        self.m.min(self.k) as f64
    }

    /// `m^2 + k^2` in exact integer arithmetic.
    pub fn norm_sq(&self) -> u64 {
        let (m, k) = (self.m as u64, self.k as u64);
        m * m + k * k
    }

    /// Modulus `sqrt(M^2 - m'^2) / M` with `M = max(m,k)`, `m' = min(m,k)`.
    ///
    /// For `m > k` this is `sqrt(m^2 - k^2)/m`; for the `k > m` Klein
    /// bottles the imaginary-modulus form reduces to the same expression
    /// with the roles of `m` and `k` exchanged.
    pub fn area_modulus(&self) -> Modulus {
        let big = self.p_max();
        let small = self.p_min();
        Modulus::new((big * big - small * small).sqrt() / big)
            .expect("modulus of a valid surface lies in [0, 1)")
    }

    pub fn lattice(&self) -> Lattice {
        let ident = match (self.kind, self.cover) {
            (SurfaceKind::LawsonKleinBottle, _) => Identification::KleinGlide,
            (_, true) => Identification::DoubleCover,
            (_, false) => Identification::TorusShift,
        };
        let generators = match ident {
            Identification::DoubleCover => [[2.0 * PI, 0.0], [0.0, 2.0 * PI]],
            Identification::TorusShift => [[PI, PI], [PI, -PI]],
            Identification::KleinGlide => [[PI, 0.0], [0.0, 2.0 * PI]],
        };
        Lattice { generators, identification: ident }
    }

    /// Same `(m, k)` with the double cover flag set. Panics for Klein bottles.
    pub fn with_cover(&self, cover: bool) -> Self {
        assert!(!(cover && self.is_klein()), "Klein bottles have no double cover here");
        Self { cover, ..*self }
    }
}

impl fmt::Display for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau({},{})", self.m, self.k)?;
        if self.cover {
            f.write_str(" double cover")?;
        }
        write!(f, " [{}]", self.kind)
    }
}

/// Metric coefficient `p(y) = sqrt(k^2 + (m^2 - k^2) cos^2 y)`.
pub fn metric_p(params: &SurfaceParams, y: f64) -> f64 {
    let (m, k) = (params.m as f64, params.k as f64);
    let c = y.cos();
    (k * k + (m * m - k * k) * c * c).sqrt()
}

/// `(p, p', p'')` in closed form.
///
/// With `A = m^2 - k^2`: `p p' = -(A/2) sin 2y` and
/// `p'^2 + p p'' = -A cos 2y`.
pub fn metric_p_derivatives(params: &SurfaceParams, y: f64) -> (f64, f64, f64) {
    let (m, k) = (params.m as f64, params.k as f64);
    let a = m * m - k * k;
    let c = y.cos();
    let p = (k * k + a * c * c).sqrt();
    let dp = -0.5 * a * (2.0 * y).sin() / p;
    let ddp = (-a * (2.0 * y).cos() - dp * dp) / p;
    (p, dp, ddp)
}

/// Potential of the equivalent Hill equation `-z'' + V z = lambda z`,
/// obtained from the substitution `z = sqrt(p) phi`:
/// `V = l^2/p^2 + (p'/p)^2/4 + (p'/p)'/2`.
pub fn hill_potential(params: &SurfaceParams, l: f64, y: f64) -> f64 {
    let (p, dp, ddp) = metric_p_derivatives(params, y);
    let r = dp / p;
    // (p'/p)' = p''/p - (p'/p)^2
    l * l / (p * p) + 0.25 * r * r + 0.5 * (ddp / p - r * r)
}

/// Area of the surface (or its double cover) in closed form.
///
/// The double cover has area `8 pi M E(k_hat)`, the Lawson torus half of
/// that, and the Klein bottle `4 pi M E(k_hat)`, with `M = max(m,k)`.
pub fn area(params: &SurfaceParams) -> f64 {
    let e = ellip_e(params.area_modulus());
    let full = 8.0 * PI * params.p_max() * e;
    match params.lattice().identification {
        Identification::DoubleCover => full,
        Identification::TorusShift | Identification::KleinGlide => 0.5 * full,
    }
}

const AREA_PANELS: usize = 64;
const AREA_NODES: usize = 16;

/// Area as the product-rule Gauss-Legendre integral of `sqrt|g| = p(y)`
/// over the fundamental domain. Independent of the elliptic-integral path.
pub fn area_quadrature(params: &SurfaceParams) -> f64 {
    let ([x0, x1], [y0, y1]) = params.lattice().fundamental_domain();
    let gl = GaussLegendre::new(AREA_NODES);
    // Outer integral in x with a single panel: the integrand is constant in x
    // but the product rule is kept explicit.
    gl.integrate(x0, x1, |_x| {
        gl.integrate_composite(y0, y1, AREA_PANELS, |y| metric_p(params, y))
    })
}

/// The immersion `Psi_{m,k}(x, y)` into the unit sphere of `R^4`.
pub fn immersion(params: &SurfaceParams, x: f64, y: f64) -> [f64; 4] {
    let (m, k) = (params.m as f64, params.k as f64);
    let (sy, cy) = y.sin_cos();
    let (smx, cmx) = (m * x).sin_cos();
    let (skx, ckx) = (k * x).sin_cos();
    [cmx * cy, smx * cy, ckx * sy, skx * sy]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32, k: u32) -> SurfaceParams {
        classify(m, k, false).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(1, 1, false).unwrap();
        assert_eq!(c.kind, SurfaceKind::CliffordTorus);

        let t = classify(1, 3, false).unwrap();
        assert_eq!((t.m, t.k, t.kind), (3, 1, SurfaceKind::LawsonTorus));

        let kb = classify(3, 2, false).unwrap();
        assert_eq!((kb.m, kb.k, kb.kind), (2, 3, SurfaceKind::LawsonKleinBottle));

        let kb = classify(2, 5, false).unwrap();
        assert_eq!((kb.m, kb.k), (2, 5));
    }

    #[test]
    fn classify_rejections() {
        assert!(classify(2, 2, false).is_err());
        assert!(classify(3, 3, false).is_err());
        assert!(classify(6, 4, false).is_err());
        assert!(classify(9, 3, true).is_err());
        assert!(classify(0, 1, false).is_err());
        assert!(classify(2, 1, true).is_err());
        let msg = classify(2, 2, false).unwrap_err().to_string();
        assert!(msg.contains("gcd(m,k) must be 1"), "{msg}");
    }

    #[test]
    fn metric_examples() {
        let c = p(1, 1);
        for y in [0.0, 0.3, 1.7, -2.0] {
            assert_eq!(metric_p(&c, y), 1.0);
        }
        let t = p(3, 1);
        assert!((metric_p(&t, 0.0) - 3.0).abs() < 1e-15);
        assert!((metric_p(&t, PI / 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hill_potential_flat_case() {
        let c = p(1, 1);
        for y in [0.0, 0.4, 2.5] {
            assert!((hill_potential(&c, 2.0, y) - 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn hill_potential_matches_finite_differences() {
        let t = p(3, 1);
        let h = 1e-3;
        let lnp = |y: f64| metric_p(&t, y).ln();
        // p'/p = (ln p)', (p'/p)' = (ln p)''
        for y in [0.0, 0.37, 1.2, 2.9] {
            let d1 = (lnp(y + h) - lnp(y - h)) / (2.0 * h);
            let d2 = (lnp(y + h) - 2.0 * lnp(y) + lnp(y - h)) / (h * h);
            let fd = 0.25 * d1 * d1 + 0.5 * d2;
            assert!((hill_potential(&t, 0.0, y) - fd).abs() < 1e-5, "y = {y}");
        }
        // Richardson-extrapolated second difference at y = 0 reaches 1e-8.
        let second = |h: f64| (lnp(h) - 2.0 * lnp(0.0) + lnp(-h)) / (h * h);
        let rich = (4.0 * second(5e-3) - second(1e-2)) / 3.0;
        assert!((hill_potential(&t, 0.0, 0.0) - 0.5 * rich).abs() < 1e-8);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for (m, k) in [(3, 1), (2, 5), (15, 1)] {
            let s = p(m, k);
            for y in [0.1, 0.8, 1.5, 2.2] {
                let h = 1e-5;
                let (_, dp, ddp) = metric_p_derivatives(&s, y);
                let fd1 = (metric_p(&s, y + h) - metric_p(&s, y - h)) / (2.0 * h);
                let h2 = 1e-4;
                let fd2 = (metric_p(&s, y + h2) - 2.0 * metric_p(&s, y) + metric_p(&s, y - h2))
                    / (h2 * h2);
                assert!((dp - fd1).abs() < 1e-6 * (1.0 + dp.abs()));
                assert!((ddp - fd2).abs() < 1e-4 * (1.0 + ddp.abs()));
            }
        }
    }

    #[test]
    fn potential_is_pi_periodic() {
        let t = p(5, 3);
        for y in [0.0, 0.2, 1.0, 2.1] {
            assert!((hill_potential(&t, 2.0, y) - hill_potential(&t, 2.0, y + PI)).abs() < 1e-11);
        }
    }

    #[test]
    fn clifford_area() {
        let c = p(1, 1);
        assert!((area(&c) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((area(&c.with_cover(true)) - 4.0 * PI * PI).abs() < 1e-13);
    }

    #[test]
    fn area_closed_form_matches_quadrature() {
        for (m, k, cover) in [(1, 1, false), (3, 1, true), (3, 1, false), (2, 1, false), (2, 5, false), (15, 1, false)] {
            let s = classify(m, k, cover).unwrap();
            let a = area(&s);
            let q = area_quadrature(&s);
            assert!((a - q).abs() < 1e-12 * a, "{s}: {a} vs {q}");
        }
        let s = classify(3, 1, true).unwrap();
        let e = ellip_e(Modulus::new(2.0 * 2f64.sqrt() / 3.0).unwrap());
        assert!((area(&s) - 24.0 * PI * e).abs() < 1e-12);
    }

    #[test]
    fn immersion_identities() {
        let o = immersion(&p(3, 1), 0.0, 0.0);
        assert_eq!(o, [1.0, 0.0, 0.0, 0.0]);
        let kb = p(2, 1);
        let t = p(5, 3);
        for (x, y) in [(0.1, 0.2), (1.3, -2.0), (4.0, 3.0)] {
            let a = immersion(&kb, x, y);
            let b = immersion(&kb, x + PI, -y);
            let c = immersion(&t, x, y);
            let d = immersion(&t, x + PI, y + PI);
            for i in 0..4 {
                assert!((a[i] - b[i]).abs() < 1e-14);
                assert!((c[i] - d[i]).abs() < 1e-14);
            }
        }
    }
}
