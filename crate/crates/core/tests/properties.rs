use std::f64::consts::PI;

use lawson_spectrum::counting::{laplace_spectrum, Filter};
use lawson_spectrum::elliptic::{ellip_e, ellip_k, Modulus};
use lawson_spectrum::floquet::{
    lowest_eigenvalues, monodromy, periodic_spectrum, HillProblem, LameN1Problem, LawsonProblem,
    Period,
};
use lawson_spectrum::quadrature::GaussLegendre;
use lawson_spectrum::surface::{area, area_quadrature, classify, immersion, metric_p, SurfaceParams};
use lawson_spectrum::theorem::sweep_surfaces;
use proptest::prelude::*;

fn surfaces() -> Vec<SurfaceParams> {
    sweep_surfaces(7)
}

fn any_surface() -> impl Strategy<Value = SurfaceParams> {
    prop::sample::select(surfaces())
}

fn non_clifford() -> impl Strategy<Value = SurfaceParams> {
    prop::sample::select(surfaces().into_iter().filter(|s| !s.is_clifford()).collect::<Vec<_>>())
}

fn period() -> impl Strategy<Value = Period> {
    prop_oneof![Just(Period::Half), Just(Period::Full)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wronskian_is_one(s in any_surface(), l in 0.0..8.0f64, lam in -0.5..12.0f64, per in period()) {
        let t = monodromy(&s, l, lam, per).unwrap();
        // Cancellation in the 2x2 determinant scales with the size of its terms.
        let scale = (t.phi_end * t.dpsi_end).abs().max((t.psi_end * t.dphi_end).abs()).max(1.0);
        prop_assert!((t.determinant() - 1.0).abs() < 1e-10 * scale, "det = {}, scale = {scale}", t.determinant());
        prop_assert!((t.discriminant - (t.phi_end + t.dpsi_end)).abs() < 1e-12);
    }

    #[test]
    fn legendre_relation(k in 0.001..0.999f64) {
        let m = Modulus::new(k).unwrap();
        let mc = m.complement();
        let (kk, kc) = (ellip_k(m).unwrap(), ellip_k(mc).unwrap());
        let lhs = ellip_e(m) * kc + ellip_e(mc) * kk - kk * kc;
        prop_assert!((lhs - PI / 2.0).abs() < 1e-11, "{lhs}");
    }

    #[test]
    fn elliptic_against_quadrature(k in 0.0..0.99f64) {
        let gl = GaussLegendre::new(32);
        let e = gl.integrate_composite(0.0, PI / 2.0, 64, |t| (1.0 - (k * t.sin()).powi(2)).sqrt());
        let kk = gl.integrate_composite(0.0, PI / 2.0, 64, |t| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt());
        let m = Modulus::new(k).unwrap();
        prop_assert!((ellip_e(m) - e).abs() < 1e-12);
        prop_assert!((ellip_k(m).unwrap() - kk).abs() < 1e-11);
    }

    #[test]
    fn area_closed_form_matches_quadrature(s in any_surface()) {
        prop_assert!((area(&s) - area_quadrature(&s)).abs() < 1e-10 * area(&s));
    }

    #[test]
    fn immersion_is_isometric(s in any_surface(), x in 0.0..2.0 * PI, y in 0.0..2.0 * PI) {
        let f = immersion(&s, x, y);
        prop_assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-14);
        let h = 1e-5;
        let d = |a: [f64; 4], b: [f64; 4]| -> [f64; 4] {
            std::array::from_fn(|i| (a[i] - b[i]) / (2.0 * h))
        };
        let fx = d(immersion(&s, x + h, y), immersion(&s, x - h, y));
        let fy = d(immersion(&s, x, y + h), immersion(&s, x, y - h));
        let dot = |a: &[f64; 4], b: &[f64; 4]| -> f64 { (0..4).map(|i| a[i] * b[i]).sum() };
        let p = metric_p(&s, y);
        prop_assert!((dot(&fx, &fx) - p * p).abs() < 1e-7 * p * p);
        prop_assert!((dot(&fy, &fy) - 1.0).abs() < 1e-7);
        prop_assert!(dot(&fx, &fy).abs() < 1e-7 * p);
    }

    #[test]
    fn eigenvalues_strictly_increase_in_l(s in non_clifford(), l1 in 0.0..4.0f64, dl in 0.05..2.0f64) {
        let l2 = l1 + dl;
        let cap = l2 * l2 + 8.0;
        let a = lowest_eigenvalues(&LawsonProblem::new(s, l1), cap).unwrap();
        let b = lowest_eigenvalues(&LawsonProblem::new(s, l2), cap).unwrap();
        for i in 0..3 {
            prop_assert!(a[i] < b[i], "i = {i}: {} !< {}", a[i], b[i]);
        }
    }

    #[test]
    fn hill_form_has_the_same_spectrum(s in any_surface(), l in 0.0..5.0f64) {
        let cap = 6.0 + l * l;
        let a = lowest_eigenvalues(&LawsonProblem::new(s, l), cap).unwrap();
        let b = lowest_eigenvalues(&HillProblem { params: s, l }, cap).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
    }

    #[test]
    fn lame_forms_agree(khat in 0.05..0.98f64) {
        let a = lowest_eigenvalues(&LameN1Problem { khat, alternate: false }, 6.0).unwrap();
        let b = lowest_eigenvalues(&LameN1Problem { khat, alternate: true }, 6.0).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-8);
        }
        let k2 = khat * khat;
        for h in [k2, 1.0, 1.0 + k2] {
            prop_assert!(a.iter().any(|v| (v - h).abs() < 1e-8), "h = {h} missing from {a:?}");
        }
    }

    #[test]
    fn filters_partition_the_cover(s in any_surface(), l in 0u32..8) {
        let modes = periodic_spectrum(&s, l as f64, 8.0).unwrap();
        let sum = |f: Filter| -> u32 { modes.iter().map(|e| f.weight(l, e)).sum() };
        let all = sum(Filter::All);
        prop_assert_eq!(sum(Filter::TorusShift) + sum(Filter::TorusShiftComplement), all);
        prop_assert_eq!(sum(Filter::KleinGlide) + sum(Filter::KleinGlideComplement), all);
    }
}

#[test]
fn torus_spectrum_is_part_of_the_cover_spectrum() {
    for s in surfaces().into_iter().filter(|s| !s.is_klein() && !s.cover) {
        let torus = laplace_spectrum(&s, 4.0).unwrap().laplace_eigenvalues;
        let mut cover = laplace_spectrum(&s.with_cover(true), 4.0).unwrap().laplace_eigenvalues;
        for v in torus {
            let pos = cover.iter().position(|c| (c - v).abs() < 1e-8);
            assert!(pos.is_some(), "{s}: {v} missing from the cover spectrum");
            cover.remove(pos.unwrap());
        }
    }
}

#[test]
fn clifford_torus_spectrum() {
    // Eigenvalues a^2 + b^2 over the lattice dual to (pi, pi), (pi, -pi).
    let mut expect = Vec::new();
    for a in -4i32..=4 {
        for b in -4i32..=4 {
            if (a + b) % 2 == 0 && a * a + b * b < 9 {
                expect.push((a * a + b * b) as f64);
            }
        }
    }
    expect.sort_by(f64::total_cmp);
    let got = laplace_spectrum(&classify(1, 1, false).unwrap(), 9.0).unwrap().laplace_eigenvalues;
    assert_eq!(got.len(), expect.len(), "{got:?}");
    for (g, e) in got.iter().zip(&expect) {
        assert!((g - e).abs() < 1e-8, "{g} vs {e}");
    }
}
