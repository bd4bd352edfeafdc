//! Acceptance checks, one line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use lawson_spectrum::counting::{count_n2, fd2d_convergence, fd2d_count};
use lawson_spectrum::elliptic::{ellip_e, ellip_k, Modulus};
use lawson_spectrum::floquet::{
    galerkin_eigenvalues, lowest_eigenvalues, monodromy, multiplicity_at, periodic_spectrum,
    zero_count, LawsonProblem, ModeEigenvalue, Period,
};
use lawson_spectrum::lame::h3_exceeds_two;
use lawson_spectrum::surface::{classify, SurfaceParams};
use lawson_spectrum::theorem::{sweep_surfaces, verify};
use lawson_spectrum::Result;

const SWEEP_MMAX: u32 = 15;
const GALERKIN_BASIS: usize = 128;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

/// Distinct `(m, k)` of the sweep, covers dropped.
fn base_surfaces() -> Vec<SurfaceParams> {
    sweep_surfaces(SWEEP_MMAX).into_iter().filter(|s| !s.cover).collect()
}

fn l_range(s: &SurfaceParams) -> u32 {
    (s.norm_sq() as f64).sqrt().ceil() as u32 + 2
}

fn criterion_1() -> Result<Outcome> {
    let torus = verify(&classify(1, 1, false)?)?;
    let cover = verify(&classify(1, 1, true)?)?;
    let e1 = (torus.lambda_closed_form - 4.0 * PI * PI).abs();
    let e5 = (cover.lambda_closed_form - 8.0 * PI * PI).abs();
    let passed = torus.passed()
        && cover.passed()
        && torus.n_of_two == 1
        && cover.n_of_two == 5
        && e1 < 1e-10
        && e5 < 1e-10;
    outcome(
        passed,
        format!(
            "N(2) = {} and {}, |Lambda_1 - 4pi^2| = {e1:.1e}, |Lambda_5 - 8pi^2| = {e5:.1e}",
            torus.n_of_two, cover.n_of_two
        ),
    )
}

fn criterion_2() -> Result<Outcome> {
    let surfaces = sweep_surfaces(SWEEP_MMAX);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for s in &surfaces {
        let r = verify(s)?;
        worst = worst.max(r.relative_error);
        if !r.passed() {
            failures.push(format!("{s}: j = {}, N(2) = {}", r.j, r.n_of_two));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} surfaces, {} index mismatches, worst relative value error {worst:.1e}{}",
            surfaces.len(),
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    )
}

fn mode_at(s: &SurfaceParams, l: f64, i: usize) -> Result<Option<ModeEigenvalue>> {
    Ok(periodic_spectrum(s, l, 2.5)?.into_iter().find(|e| e.i == i))
}

fn criterion_3() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let surfaces: Vec<_> = base_surfaces().into_iter().filter(|s| !s.is_clifford()).collect();
    for s in &surfaces {
        // with M = max(m, k) and m' = min(m, k): lambda_1(M) = lambda_2(m') = 2
        let (big, small) = (s.m.max(s.k) as f64, s.m.min(s.k) as f64);
        let checks = [
            (big, 1, "lambda_1(M)"),
            (small, 2, "lambda_2(m')"),
            ((s.norm_sq() as f64).sqrt(), 0, "lambda_0(l_c)"),
        ];
        for (l, i, name) in checks {
            match mode_at(s, l, i)? {
                Some(e) => {
                    let err = (e.lambda - 2.0).abs();
                    worst = worst.max(err);
                    if err > 1e-8 {
                        failures.push(format!("{s} {name} = {}", e.lambda));
                    }
                }
                None => failures.push(format!("{s} {name} not found")),
            }
        }
        for l in [s.m, s.k] {
            let mult = multiplicity_at(s, l as f64, 2.0)?;
            if mult != 1 {
                failures.push(format!("{s} multiplicity {mult} at l = {l}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} surfaces, worst |lambda - 2| = {worst:.1e}{}",
            surfaces.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    )
}

fn criterion_4() -> Result<Outcome> {
    // 6 itself is an eigenvalue at some l; take it on both sides
    let cap = 6.0 + 1e-6;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut comparisons = 0usize;
    let surfaces = base_surfaces();
    for s in &surfaces {
        for l in 0..=l_range(s) {
            let shoot: Vec<f64> =
                periodic_spectrum(s, l as f64, 6.5)?.iter().map(|e| e.lambda).filter(|&v| v < cap).collect();
            let gal = galerkin_eigenvalues(s, l as f64, GALERKIN_BASIS)?;
            let gal: Vec<f64> = gal.into_iter().filter(|&v| v < cap).collect();
            if shoot.len() != gal.len() {
                failures.push(format!("{s} l = {l}: {} vs {} eigenvalues", shoot.len(), gal.len()));
                continue;
            }
            for (a, b) in shoot.iter().zip(&gal) {
                comparisons += 1;
                worst = worst.max((a - b).abs());
                if (a - b).abs() > 1e-8 {
                    failures.push(format!("{s} l = {l}: {a} vs {b}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} surfaces, {comparisons} eigenvalues below 6, worst gap {worst:.1e}{}",
            surfaces.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    )
}

fn criterion_5() -> Result<Outcome> {
    let grid = 192;
    let mut lines = Vec::new();
    let mut passed = true;
    for (m, k) in [(1, 1), (3, 1), (2, 1), (5, 3), (4, 1)] {
        let s = classify(m, k, false)?;
        let fd = fd2d_count(&s, grid)?;
        let exact = count_n2(&s)?.n_of_two;
        let conv = fd2d_convergence(&s, grid, 10)?;
        let ok = fd.n_of_two == exact && fd.at_two == 4 && (1.8..=2.2).contains(&conv.order);
        passed &= ok;
        lines.push(format!(
            "({m},{k}) N(2) {}/{exact} at 2: {} margin {:.1e} order {:.3}",
            fd.n_of_two, fd.at_two, fd.max_margin_near_two, conv.order
        ));
    }
    outcome(passed, lines.join("; "))
}

/// The lowest `count` eigenvalues at `l = 0` as records.
fn lowest_at_zero(s: &SurfaceParams, count: usize) -> Result<Vec<ModeEigenvalue>> {
    let mut cap = 8.0;
    loop {
        let modes = periodic_spectrum(s, 0.0, cap)?;
        if modes.len() >= count {
            return Ok(modes.into_iter().take(count).collect());
        }
        cap *= 2.0;
    }
}

fn criterion_6() -> Result<Outcome> {
    let mut failures = Vec::new();
    let base = base_surfaces();

    // Wronskian, relative to the size of the products it cancels
    let mut worst_det = 0.0f64;
    for s in base.iter().filter(|s| s.m.max(s.k) <= 7) {
        for l in [0.0, 0.5, 1.0, 2.0, 3.0] {
            for lambda in [0.0, 0.7, 2.0, 3.3, 5.9] {
                for period in [Period::Half, Period::Full] {
                    let t = monodromy(s, l, lambda, period)?;
                    let scale = (t.phi_end * t.dpsi_end).abs().max((t.psi_end * t.dphi_end).abs()).max(1.0);
                    worst_det = worst_det.max((t.determinant() - 1.0).abs() / scale);
                }
            }
        }
    }
    if worst_det > 1e-10 {
        failures.push(format!("Wronskian off by {worst_det:.1e}"));
    }

    // strict monotonicity of lambda_0..2 in l
    let mut monotone = true;
    for s in base.iter().filter(|s| !s.is_clifford() && s.m.max(s.k) <= 7) {
        let mut prev: Option<Vec<f64>> = None;
        for step in 0..=24 {
            let l = 0.25 * step as f64;
            let cur = lowest_eigenvalues(&LawsonProblem::new(*s, l), l * l + 8.0)?;
            if let Some(p) = &prev {
                monotone &= (0..3).all(|i| p[i] < cur[i]);
            }
            prev = Some(cur);
        }
    }
    if !monotone {
        failures.push("lambda_i(l) not strictly increasing".into());
    }

    // zero counts 0, 2, 2, 4, 4 at l = 0
    let mut zero_ok = true;
    for s in base.iter().filter(|s| !s.is_clifford()) {
        let counts: Vec<usize> =
            lowest_at_zero(s, 5)?.iter().map(|e| zero_count(s, e)).collect::<Result<_>>()?;
        if counts != [0, 2, 2, 4, 4] {
            zero_ok = false;
            failures.push(format!("{s} zero counts {counts:?}"));
        }
    }

    // no double eigenvalue below 6 for m != k
    let mut doubles = 0;
    for s in base.iter().filter(|s| !s.is_clifford()) {
        for l in 0..=l_range(s) {
            doubles += periodic_spectrum(s, l as f64, 6.0)?.iter().filter(|e| e.multiplicity != 1).count();
        }
    }
    if doubles > 0 {
        failures.push(format!("{doubles} double eigenvalues below 6"));
    }

    // h_3 > 2
    let mut min_margin = f64::INFINITY;
    for s in base.iter().filter(|s| !s.is_clifford()) {
        let h = h3_exceeds_two(s)?;
        min_margin = min_margin.min(h.margin());
        if !h.holds {
            failures.push(format!("{s} h_3 = {}, lambda_3(0) = {}", h.h3, h.lambda3_at_zero));
        }
    }

    // Legendre relation
    let mut worst_legendre = 0.0f64;
    for i in 1..100 {
        let m = Modulus::new(i as f64 / 100.0)?;
        let mc = m.complement();
        let (k, kc) = (ellip_k(m)?, ellip_k(mc)?);
        worst_legendre = worst_legendre.max((ellip_e(m) * kc + ellip_e(mc) * k - k * kc - PI / 2.0).abs());
    }
    if worst_legendre > 1e-11 {
        failures.push(format!("Legendre relation off by {worst_legendre:.1e}"));
    }

    outcome(
        failures.is_empty(),
        format!(
            "scaled Wronskian error {worst_det:.1e}, monotone {monotone}, zero counts {zero_ok}, doubles below 6: {doubles}, \
             min h_3 margin {min_margin:.3}, Legendre {worst_legendre:.1e}{}",
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("Clifford baseline", criterion_1),
        ("theorem sweep m <= 15", criterion_2),
        ("eigenvalue pinning at 2", criterion_3),
        ("Galerkin oracle equivalence", criterion_4),
        ("finite-difference oracle", criterion_5),
        ("property suites", criterion_6),
    ];
    let mut all = true;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let (passed, detail) = match result {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        println!(
            "criterion {}: {} {name} ({secs:.2} s): {detail}",
            n + 1,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
