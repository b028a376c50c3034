//! Browser bindings for the qutrit brachistochrone.
//!
//! Every export returns a flat `Float64Array`; row layouts are documented on
//! the plain Rust functions, which are what the native tests exercise.

use std::f64::consts::TAU;

use su3_brachistochrone::brachistochrone::{control_fields, hamiltonian_at};
use su3_brachistochrone::oracle::{numeric_trajectory, SampledGenerator};
use su3_brachistochrone::propagators::{resonance, schrodinger_propagator};
use su3_brachistochrone::{BrachistochroneProblem, ComplexMatrix, Convention};
use wasm_bindgen::prelude::*;

pub const MAX_SAMPLES: usize = 4096;
pub const MAX_ORACLE_STEPS: usize = 1 << 18;

/// `r <= 0` or NaN selects the resonant amplitude `√3·k`.
pub fn problem(k: f64, theta: f64, r: f64) -> Result<BrachistochroneProblem, String> {
    let r = if r > 0.0 { Some(r) } else { None };
    BrachistochroneProblem::new(k, theta, r, Convention::SelfConsistent).map_err(|e| e.to_string())
}

fn check_samples(samples: usize) -> Result<(), String> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must be in 2..={MAX_SAMPLES}, got {samples}"));
    }
    Ok(())
}

/// One period if resonant, else `2π/k`.
pub fn display_period(p: &BrachistochroneProblem) -> f64 {
    match resonance(p) {
        Ok(ratio) => TAU * ratio.n as f64 / p.k(),
        Err(_) => TAU / p.k(),
    }
}

/// `[R, Δ, m, n, T₀]`; `m`, `n` and `T₀` are NaN when `Δ/k` is irrational.
pub fn summary(k: f64, theta: f64, r: f64) -> Result<Vec<f64>, String> {
    let p = problem(k, theta, r)?;
    let (m, n, t0) = match resonance(&p) {
        Ok(q) => (q.m as f64, q.n as f64, TAU * q.n as f64 / p.k()),
        Err(_) => (f64::NAN, f64::NAN, f64::NAN),
    };
    Ok(vec![p.r(), p.delta(), m, n, t0])
}

/// Rows of `[t, Re ε₁, Im ε₁, Re ε₂, Im ε₂]` over one display period.
pub fn fields(k: f64, theta: f64, r: f64, samples: usize) -> Result<Vec<f64>, String> {
    check_samples(samples)?;
    let p = problem(k, theta, r)?;
    let t_end = display_period(&p);
    let mut out = Vec::with_capacity(5 * samples);
    for i in 0..samples {
        let t = t_end * i as f64 / (samples - 1) as f64;
        let f = control_fields(&p, t);
        out.extend_from_slice(&[t, f.eps1.re, f.eps1.im, f.eps2.re, f.eps2.im]);
    }
    Ok(out)
}

fn push_populations(out: &mut Vec<f64>, u: &ComplexMatrix) {
    out.extend(u.entries().iter().map(|z| z.norm_sqr()));
}

/// Rows of `[t, |U_ij|² closed (9, row-major), |U_ij|² oracle (9)]` over one
/// display period, with `oracle_steps` midpoint steps in total.
pub fn populations(k: f64, theta: f64, r: f64, samples: usize, oracle_steps: usize) -> Result<Vec<f64>, String> {
    check_samples(samples)?;
    if oracle_steps == 0 || oracle_steps > MAX_ORACLE_STEPS {
        return Err(format!("oracle steps must be in 1..={MAX_ORACLE_STEPS}, got {oracle_steps}"));
    }
    let p = problem(k, theta, r)?;
    let t_end = display_period(&p);
    let intervals = samples - 1;
    let per = oracle_steps.div_ceil(intervals);
    let g = SampledGenerator::new(|t| hamiltonian_at(&p, t), 0.0, t_end);
    let traj = numeric_trajectory(&g, 0.0, t_end, per * intervals, per).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(19 * samples);
    for (t, u) in &traj {
        out.push(*t);
        push_populations(&mut out, &schrodinger_propagator(&p, *t));
        push_populations(&mut out, u);
    }
    Ok(out)
}

/// Pairs `[R/k, ‖U(2π/k) − I‖_F]` for `points` amplitudes spread evenly over
/// `[lo, hi]` (in units of `k`).
pub fn periodicity_scan(k: f64, theta: f64, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, String> {
    check_samples(points)?;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(format!("need 0 < lo < hi, got [{lo}, {hi}]"));
    }
    let id = ComplexMatrix::identity(3).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(2 * points);
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let p = problem(k, theta, x * k)?;
        let gap = (*schrodinger_propagator(&p, TAU / k) - id).frobenius_norm();
        out.extend_from_slice(&[x, gap]);
    }
    Ok(out)
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = summary)]
pub fn summary_js(k: f64, theta: f64, r: f64) -> Result<Vec<f64>, JsError> {
    js(summary(k, theta, r))
}

#[wasm_bindgen(js_name = fields)]
pub fn fields_js(k: f64, theta: f64, r: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    js(fields(k, theta, r, samples))
}

#[wasm_bindgen(js_name = populations)]
pub fn populations_js(k: f64, theta: f64, r: f64, samples: usize, oracle_steps: usize) -> Result<Vec<f64>, JsError> {
    js(populations(k, theta, r, samples, oracle_steps))
}

#[wasm_bindgen(js_name = periodicityScan)]
pub fn periodicity_scan_js(k: f64, theta: f64, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, JsError> {
    js(periodicity_scan(k, theta, lo, hi, points))
}
