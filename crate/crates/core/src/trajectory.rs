//! Sampled propagator trajectories and their CSV form.
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading a
//! file back reproduces every entry bit for bit.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::brachistochrone::{hamiltonian_at, BrachistochroneProblem};
use crate::error::{Error, Result};
use crate::floquet::floquet_product;
use crate::linalg::{c64, ComplexMatrix};
use crate::oracle::{numeric_trajectory, SampledGenerator};
use crate::propagators::{frame_transport, schrodinger_propagator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagationMethod {
    /// `U₊(t)U₋(t)`.
    Closed,
    /// Exponential-midpoint integration.
    Oracle,
    /// `Q(t)Q†(0)`.
    Frame,
    /// `Y†U₁F(t)U₂F(t)Y` as printed.
    Floquet,
}

impl FromStr for PropagationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Self::Closed),
            "oracle" => Ok(Self::Oracle),
            "frame" => Ok(Self::Frame),
            "floquet" => Ok(Self::Floquet),
            other => Err(Error::InvalidParameter(format!(
                "unknown method '{other}' (expected closed, oracle, frame or floquet)"
            ))),
        }
    }
}

impl fmt::Display for PropagationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Closed => "closed",
            Self::Oracle => "oracle",
            Self::Frame => "frame",
            Self::Floquet => "floquet",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub u: ComplexMatrix,
}

/// `samples` uniform times on `[0, t_end]`, endpoints included.
pub fn sample_trajectory(
    p: &BrachistochroneProblem,
    method: PropagationMethod,
    t_end: f64,
    samples: usize,
    oracle_steps: usize,
) -> Result<Vec<TrajectoryRow>> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!("samples must be at least 2, got {samples}")));
    }
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidParameter(format!("end time must be positive, got {t_end}")));
    }
    let intervals = samples - 1;
    let time = |i: usize| if i == intervals { t_end } else { t_end * i as f64 / intervals as f64 };
    match method {
        PropagationMethod::Oracle => {
            let per = oracle_steps.div_ceil(intervals).max(1);
            let g = SampledGenerator::new(|t| hamiltonian_at(p, t), 0.0, t_end);
            let traj = numeric_trajectory(&g, 0.0, t_end, per * intervals, per)?;
            Ok(traj
                .into_iter()
                .enumerate()
                .map(|(i, (_, u))| TrajectoryRow { t: time(i), u: u.into_inner() })
                .collect())
        }
        _ => (0..samples)
            .map(|i| {
                let t = time(i);
                let u = match method {
                    PropagationMethod::Closed => schrodinger_propagator(p, t).into_inner(),
                    PropagationMethod::Frame => frame_transport(p, t, 0.0)?.into_inner(),
                    PropagationMethod::Floquet => floquet_product(p, t),
                    PropagationMethod::Oracle => unreachable!(),
                };
                Ok(TrajectoryRow { t, u })
            })
            .collect(),
    }
}

pub fn csv_header() -> String {
    let mut cols = vec!["t".to_string()];
    for i in 1..=3 {
        for j in 1..=3 {
            cols.push(format!("u{i}{j}_re"));
            cols.push(format!("u{i}{j}_im"));
        }
    }
    cols.join(",")
}

pub fn write_csv<W: Write>(mut w: W, rows: &[TrajectoryRow]) -> std::io::Result<()> {
    writeln!(w, "{}", csv_header())?;
    for row in rows {
        write!(w, "{}", row.t)?;
        for z in row.u.entries() {
            write!(w, ",{},{}", z.re, z.im)?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(r: R) -> Result<Vec<TrajectoryRow>> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidParameter("empty trajectory file".into()))?
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    if header.trim() != csv_header() {
        return Err(Error::InvalidParameter("line 1: unexpected trajectory header".into()));
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::InvalidParameter(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = n + 2;
        let values: Vec<f64> = line
            .split(',')
            .enumerate()
            .map(|(col, field)| {
                field.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidParameter(format!("line {lineno}, column {}: bad number '{field}'", col + 1))
                })
            })
            .collect::<Result<_>>()?;
        if values.len() != 19 {
            return Err(Error::InvalidParameter(format!(
                "line {lineno}: expected 19 columns, got {}",
                values.len()
            )));
        }
        let entries: Vec<_> = values[1..].chunks(2).map(|p| c64(p[0], p[1])).collect();
        rows.push(TrajectoryRow { t: values[0], u: ComplexMatrix::from_row_major(3, &entries)? });
    }
    Ok(rows)
}

/// Largest entrywise Frobenius distance between two trajectories sampled on
/// the same grid.
pub fn max_row_distance(a: &[TrajectoryRow], b: &[TrajectoryRow]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
    }
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        worst = worst.max((x.u - y.u).frobenius_norm());
    }
    Ok(worst)
}

/// A gnuplot script plotting the nine populations `|U_ij|²` from `csv_path`.
pub fn plot_script(csv_path: &str, title: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set title \"{}\"\n", title.replace('"', "'")));
    s.push_str("set xlabel 't'\nset ylabel '|U_{ij}|^2'\nset key outside right\n");
    let mut parts = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            let re = 2 + 2 * (3 * (i - 1) + (j - 1));
            let im = re + 1;
            parts.push(format!(
                "'{}' using 1:(${re}**2+${im}**2) skip 1 with lines title 'U{i}{j}'",
                csv_path.replace('\'', "''")
            ));
        }
    }
    s.push_str("plot ");
    s.push_str(&parts.join(", \\\n     "));
    s.push('\n');
    s
}
