//! Equivalence classes of 3×3 Hermitians by characteristic-polynomial
//! invariants `(Tr H, ΔE², det H)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix, HermitianMatrix};

pub const TRACELESS_TOL: f64 = 1e-12;
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetSign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootClass {
    pub trace: f64,
    pub delta_e_sq: f64,
    pub det: f64,
    /// Ascending.
    pub eigenvalues: [f64; 3],
    pub traceless: bool,
    pub det_sign: DetSign,
}

fn require_dim3(h: &HermitianMatrix) -> Result<()> {
    if h.dim() != 3 {
        return Err(Error::InvalidDimension(h.dim()));
    }
    Ok(())
}

/// Scale below which a determinant is reported as zero.
fn det_zero_tol(h: &ComplexMatrix) -> f64 {
    1e-12 * h.frobenius_norm().max(1.0).powi(3)
}

pub fn char_poly_invariants(h: &HermitianMatrix) -> Result<RootClass> {
    require_dim3(h)?;
    let trace = h.trace().re;
    let h2 = h.matmul(h);
    let delta_e_sq = 0.5 * (h2.trace().re - trace * trace);
    let det = h.det().re;
    let eig = eigh(h)?;
    let eigenvalues = [eig.values[0], eig.values[1], eig.values[2]];
    // Snap roundoff-sized values to exact zero so the reported class is stable.
    let tol = det_zero_tol(h);
    let det = if det.abs() < tol { 0.0 } else { det };
    let trace = if trace.abs() < TRACELESS_TOL { 0.0 } else { trace };
    let det_sign = if det == 0.0 {
        DetSign::Zero
    } else if det > 0.0 {
        DetSign::Positive
    } else {
        DetSign::Negative
    };
    Ok(RootClass { trace, delta_e_sq, det, eigenvalues, traceless: trace == 0.0, det_sign })
}

/// `‖H³ − H²·Tr H − ΔE²·H − det H·1‖_F` with `ΔE² = (Tr H² − (Tr H)²)/2`.
pub fn cayley_hamilton_residual(h: &HermitianMatrix) -> Result<f64> {
    require_dim3(h)?;
    let tr = h.trace();
    let h2 = h.matmul(h);
    let h3 = h2.matmul(h);
    let de2 = 0.5 * (h2.trace() - tr * tr);
    let id = ComplexMatrix::identity(3)?;
    let lhs = h3 - h2 * tr - **h * de2 - id * h.det();
    Ok(lhs.frobenius_norm())
}

/// True iff trace, `ΔE²` and determinant agree within `tol` each.
pub fn same_class(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<bool> {
    let ca = char_poly_invariants(a)?;
    let cb = char_poly_invariants(b)?;
    Ok((ca.trace - cb.trace).abs() <= tol
        && (ca.delta_e_sq - cb.delta_e_sq).abs() <= tol
        && (ca.det - cb.det).abs() <= tol)
}
