use lawson_spectrum::counting::{fd2d_count, laplace_spectrum};
use lawson_spectrum::floquet::{monodromy, HalfPeriodClass, Parity, Period};
use lawson_spectrum::surface::{area, classify, SurfaceParams};
use lawson_spectrum::theorem::{extremal, sweep_surfaces, verify, VerifyRecord};
use lawson_spectrum::{Result, SpectrumError};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{fmt_float, num, Report, Table};

fn params_value(p: &SurfaceParams) -> Value {
    json!({ "m": p.m, "k": p.k, "kind": p.kind.to_string(), "cover": p.cover })
}

fn kv(key: &str, value: String) -> String {
    format!("{key:<12}{value}")
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::Pair => "pair",
    }
}

fn half_period_name(h: HalfPeriodClass) -> &'static str {
    match h {
        HalfPeriodClass::PiPeriodic => "pi-periodic",
        HalfPeriodClass::PiAntiperiodic => "pi-antiperiodic",
        HalfPeriodClass::Pair => "pair",
    }
}

pub fn invariants(m: u32, k: u32, cover: bool) -> Result<Report> {
    let p = classify(m, k, cover)?;
    let ex = extremal(&p);
    let a = area(&p);
    let lc = (p.norm_sq() as f64).sqrt();
    let result = json!({
        "kind": p.kind.to_string(),
        "m": p.m,
        "k": p.k,
        "cover": p.cover,
        "j": ex.j,
        "lambda_symbolic": ex.symbolic,
        "lambda": num(ex.lambda_value),
        "area": num(a),
        "crossover": num(lc),
    });
    let mut table = Table::new(&["key", "value"]);
    for (key, value) in [
        ("kind", p.kind.to_string()),
        ("m", p.m.to_string()),
        ("k", p.k.to_string()),
        ("cover", p.cover.to_string()),
        ("j", ex.j.to_string()),
        ("lambda_symbolic", ex.symbolic.clone()),
        ("lambda", fmt_float(ex.lambda_value)),
        ("area", fmt_float(a)),
        ("crossover", fmt_float(lc)),
    ] {
        table.push(vec![key.into(), value]);
    }
    let summary = vec![
        kv("surface", p.to_string()),
        kv("index j", ex.j.to_string()),
        kv("Lambda_j", format!("{} = {}", ex.symbolic, fmt_float(ex.lambda_value))),
        kv("area", fmt_float(a)),
        kv("l_c", format!("sqrt({}) = {}", p.norm_sq(), fmt_float(lc))),
    ];
    Ok(Report { command: "invariants", params: params_value(&p), result, table, summary, text_table: false })
}

pub fn spectrum(m: u32, k: u32, cover: bool, cutoff: f64) -> Result<Report> {
    let p = classify(m, k, cover)?;
    let r = laplace_spectrum(&p, cutoff)?;
    let mut table =
        Table::new(&["l", "i", "lambda", "multiplicity", "parity", "half_period", "laplace_multiplicity"]);
    let mut modes = Vec::new();
    for c in &r.modes {
        let e = &c.mode;
        table.push(vec![
            fmt_float(e.l),
            e.i.to_string(),
            fmt_float(e.lambda),
            e.multiplicity.to_string(),
            parity_name(e.parity).into(),
            half_period_name(e.half_period).into(),
            c.laplace_multiplicity.to_string(),
        ]);
        modes.push(json!({
            "l": e.l as u64,
            "i": e.i,
            "lambda": num(e.lambda),
            "multiplicity": e.multiplicity,
            "parity": parity_name(e.parity),
            "half_period": half_period_name(e.half_period),
            "laplace_multiplicity": c.laplace_multiplicity,
        }));
    }
    let n_cutoff = r.count_below(cutoff);
    let result = json!({
        "cutoff": num(cutoff),
        "n_below_cutoff": n_cutoff,
        "n_of_two": r.n_of_two,
        "multiplicity_of_two": r.multiplicity_of_two,
        "laplace_eigenvalues": r.laplace_eigenvalues.iter().map(|v| num(*v)).collect::<Vec<_>>(),
        "modes": modes,
    });
    let summary = vec![
        kv("surface", p.to_string()),
        kv(&format!("N({})", fmt_float(cutoff)), n_cutoff.to_string()),
        kv("N(2)", r.n_of_two.to_string()),
        kv("mult. of 2", r.multiplicity_of_two.to_string()),
    ];
    Ok(Report { command: "spectrum", params: params_value(&p), result, table, summary, text_table: true })
}

struct VerifyRow {
    record: VerifyRecord,
    fd: Option<(usize, usize, f64)>,
}

impl VerifyRow {
    fn passed(&self) -> bool {
        self.record.passed()
            && self.fd.is_none_or(|(n, at_two, _)| n as u64 == self.record.n_of_two && at_two == 4)
    }
}

pub fn verify_sweep(mmax: u32, with_2d: bool, grid: usize) -> Result<(Report, bool)> {
    if mmax == 0 {
        return Err(SpectrumError::InvalidParams("mmax must be at least 1".into()));
    }
    if with_2d && (grid < 16 || !grid.is_multiple_of(4)) {
        return Err(SpectrumError::InvalidParams(format!(
            "grid must be a multiple of 4 and at least 16, got {grid}"
        )));
    }
    let surfaces = sweep_surfaces(mmax);
    let rows: Vec<VerifyRow> = surfaces
        .par_iter()
        .map(|s| {
            let record = verify(s)?;
            let fd = if with_2d {
                let c = fd2d_count(s, grid)?;
                Some((c.n_of_two, c.at_two, c.max_margin_near_two))
            } else {
                None
            };
            Ok(VerifyRow { record, fd })
        })
        .collect::<Result<_>>()?;
    let all_pass = rows.iter().all(VerifyRow::passed);

    let mut header = vec!["m", "k", "kind", "cover", "j", "n_of_two", "lambda", "lambda_from_area", "rel_error"];
    if with_2d {
        header.extend(["fd_n_of_two", "fd_at_two", "fd_margin"]);
    }
    header.push("pass");
    let mut table = Table::new(&header);
    let mut json_rows = Vec::new();
    for row in &rows {
        let r = &row.record;
        let mut cells = vec![
            r.params.m.to_string(),
            r.params.k.to_string(),
            r.params.kind.to_string(),
            r.params.cover.to_string(),
            r.j.to_string(),
            r.n_of_two.to_string(),
            fmt_float(r.lambda_closed_form),
            fmt_float(r.lambda_from_area),
            fmt_float(r.relative_error),
        ];
        let mut obj = json!({
            "m": r.params.m,
            "k": r.params.k,
            "kind": r.params.kind.to_string(),
            "cover": r.params.cover,
            "j": r.j,
            "n_of_two": r.n_of_two,
            "lambda": num(r.lambda_closed_form),
            "lambda_from_area": num(r.lambda_from_area),
            "relative_error": num(r.relative_error),
        });
        if let Some((n, at_two, margin)) = row.fd {
            cells.extend([n.to_string(), at_two.to_string(), fmt_float(margin)]);
            obj["fd_n_of_two"] = json!(n);
            obj["fd_at_two"] = json!(at_two);
            obj["fd_margin"] = num(margin);
        }
        cells.push(if row.passed() { "pass" } else { "FAIL" }.into());
        obj["pass"] = json!(row.passed());
        table.push(cells);
        json_rows.push(obj);
    }
    let passed = rows.iter().filter(|r| r.passed()).count();
    let result = json!({ "all_pass": all_pass, "surfaces": rows.len(), "passed": passed, "rows": json_rows });
    let params = if with_2d {
        json!({ "mmax": mmax, "with_2d_oracle": true, "grid": grid })
    } else {
        json!({ "mmax": mmax, "with_2d_oracle": false })
    };
    let summary = vec![format!("{passed} of {} surfaces pass", rows.len())];
    Ok((Report { command: "verify", params, result, table, summary, text_table: true }, all_pass))
}

pub fn discriminant(
    m: u32,
    k: u32,
    cover: bool,
    l: f64,
    lambda_min: f64,
    lambda_max: f64,
    steps: usize,
) -> Result<Report> {
    let p = classify(m, k, cover)?;
    if steps < 2 {
        return Err(SpectrumError::InvalidParams(format!("steps must be at least 2, got {steps}")));
    }
    if lambda_min.is_nan() || lambda_max.is_nan() || lambda_max <= lambda_min {
        return Err(SpectrumError::InvalidParams("lambda-max must exceed lambda-min".into()));
    }
    if !(l >= 0.0 && l.is_finite()) {
        return Err(SpectrumError::InvalidParams(format!("l must be a nonnegative number, got {l}")));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| lambda_min + (lambda_max - lambda_min) * i as f64 / (steps - 1) as f64)
        .collect();
    let values: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&lam| {
            let full = monodromy(&p, l, lam, Period::Full)?.discriminant;
            let half = monodromy(&p, l, lam, Period::Half)?.discriminant;
            Ok((lam, full, half))
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["lambda", "f_full", "f_half"]);
    let mut rows = Vec::new();
    for &(lam, full, half) in &values {
        table.push(vec![fmt_float(lam), fmt_float(full), fmt_float(half)]);
        rows.push(json!({ "lambda": num(lam), "f_full": num(full), "f_half": num(half) }));
    }
    let mut params = params_value(&p);
    params["l"] = num(l);
    let result = json!({ "l": num(l), "grid": rows });
    let summary = vec![kv("surface", p.to_string()), kv("l", fmt_float(l))];
    Ok(Report { command: "discriminant", params, result, table, summary, text_table: true })
}
