//! Closed-form propagators of the solved problem.
//!
//! Two distinct unitary families live here and must not be confused:
//!
//! * the Schrödinger propagator `U(t,0) = U₊(t)·U₋(t)` with
//!   `U₊ = exp(iF₀t)` and `U₋ = exp(−i(H(0)+F₀)t)`, which solves
//!   `i dU/dt = H(t)U`;
//! * the frame transport `Q(t)Q†(s)`, which carries `H(s)` onto `H(t)` by
//!   conjugation but is not a solution of the Schrödinger equation.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use serde::{Deserialize, Serialize};

use crate::brachistochrone::{
    constraint, control_fields, hamiltonian_at, initial_generator, BrachistochroneProblem, ControlFields,
};
use crate::error::{Error, Result};
use crate::linalg::{c64, expm_hermitian, ComplexMatrix, HermitianMatrix, UnitaryMatrix, C64};

/// Largest denominator tried when recognising `Δ/k` as a rational.
pub const RESONANCE_MAX_DENOMINATOR: u64 = 1000;
/// Relative tolerance on `|Δ/k − m/n|`.
pub const RESONANCE_TOL: f64 = 1e-9;

/// `U₊(t) = exp(iF₀t)`: a rotation in the (1, 3) plane by `kt`.
pub fn u_plus(p: &BrachistochroneProblem, t: f64) -> UnitaryMatrix {
    let (s, c) = (p.k() * t).sin_cos();
    let phase = p.kappa() / p.k();
    let z = c64(0.0, 0.0);
    let cc = c64(c, 0.0);
    let i_s = c64(0.0, s);
    UnitaryMatrix::new_unchecked(ComplexMatrix::new3([
        [cc, z, i_s * phase],
        [z, c64(1.0, 0.0), z],
        [i_s * phase.conj(), z, cc],
    ]))
}

/// `U₋(t) = exp(−i(H(0)+F₀)t)` written out entrywise with `Φ = tΔ`.
pub fn u_minus(p: &BrachistochroneProblem, t: f64) -> UnitaryMatrix {
    let delta = p.delta();
    let (r, k) = (p.r(), p.k());
    let (s, c) = (t * delta).sin_cos();
    let kappa = p.kappa();
    let d2 = delta * delta;
    let mi = c64(0.0, -1.0);
    UnitaryMatrix::new_unchecked(ComplexMatrix::new3([
        [c64(c, 0.0), mi * (r * s / delta), mi * kappa * (s / delta)],
        [mi * (r * s / delta), c64(1.0 + r * r * (c - 1.0) / d2, 0.0), kappa * (r * (c - 1.0) / d2)],
        [mi * kappa.conj() * (s / delta), kappa.conj() * (r * (c - 1.0) / d2), c64(1.0 + k * k * (c - 1.0) / d2, 0.0)],
    ]))
}

/// `U(t, 0) = U₊(t)·U₋(t)`.
pub fn schrodinger_propagator(p: &BrachistochroneProblem, t: f64) -> UnitaryMatrix {
    UnitaryMatrix::new_unchecked(u_plus(p, t).matmul(&u_minus(p, t)))
}

/// `H(t) = Q·diag(R, −R, 0)·Q†`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalFactorization {
    pub q: UnitaryMatrix,
    pub l: [f64; 3],
}

impl DiagonalFactorization {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let l = ComplexMatrix::real_diag(&self.l).expect("dim 3");
        self.q.matmul(&l).matmul(&self.q.adjoint())
    }
}

/// Analytic eigenbasis of the tridiagonal Hamiltonian carried by `fields`,
/// normalized by `r` (which must satisfy `|ε₁|² + |ε₂|² = r²`).
///
/// Columns: `(ε₁, R, ε̄₂)/(√2R)`, `(−ε₁, R, −ε̄₂)/(√2R)` and the null vector
/// `(−ε₂, 0, ε̄₁)/R`.
pub fn q_from_fields(fields: &ControlFields, r: f64) -> Result<UnitaryMatrix> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("R must be positive for Q, got {r}")));
    }
    let defect = (fields.intensity() - r * r).abs();
    if defect > 1e-10 * r * r {
        return Err(Error::InvalidParameter(format!(
            "fields do not satisfy |eps1|^2 + |eps2|^2 = R^2 (defect {defect:e})"
        )));
    }
    let a = FRAC_1_SQRT_2 / r;
    let (e1, e2) = (fields.eps1, fields.eps2);
    let h = c64(FRAC_1_SQRT_2, 0.0);
    let z = c64(0.0, 0.0);
    let q = ComplexMatrix::new3([
        [e1 * a, -e1 * a, -e2 / r],
        [h, h, z],
        [e2.conj() * a, -e2.conj() * a, e1.conj() / r],
    ]);
    UnitaryMatrix::new(q)
}

/// `Q` with the third column's last entry as printed (`ε̄₂/R` in place of
/// `ε̄₁/R`); only the ledger uses it, to measure the loss of unitarity.
pub fn q_printed(fields: &ControlFields, r: f64) -> ComplexMatrix {
    let a = FRAC_1_SQRT_2 / r;
    let (e1, e2) = (fields.eps1, fields.eps2);
    let h = c64(FRAC_1_SQRT_2, 0.0);
    let z = c64(0.0, 0.0);
    ComplexMatrix::new3([
        [e1 * a, -e1 * a, -e2 / r],
        [h, h, z],
        [e2.conj() * a, -e2.conj() * a, e2.conj() / r],
    ])
}

pub fn diagonal_factorization(p: &BrachistochroneProblem, t: f64) -> Result<DiagonalFactorization> {
    let q = q_from_fields(&control_fields(p, t), p.r())?;
    Ok(DiagonalFactorization { q, l: [p.r(), -p.r(), 0.0] })
}

/// `U(t, s) = Q(t)·Q†(s)`.
pub fn frame_transport(p: &BrachistochroneProblem, t: f64, s: f64) -> Result<UnitaryMatrix> {
    let qt = q_from_fields(&control_fields(p, t), p.r())?;
    let qs = q_from_fields(&control_fields(p, s), p.r())?;
    Ok(UnitaryMatrix::new_unchecked(qt.matmul(&qs.adjoint())))
}

/// Closed form of the frame transport: rotation by `k(t−s)` in the (1, 3)
/// plane with off-diagonal phases `ie^{∓iθ}`.
pub fn frame_transport_closed(p: &BrachistochroneProblem, t: f64, s: f64) -> UnitaryMatrix {
    let (sn, cs) = (p.k() * (t - s)).sin_cos();
    let e = C64::from_polar(1.0, p.theta());
    let z = c64(0.0, 0.0);
    UnitaryMatrix::new_unchecked(ComplexMatrix::new3([
        [c64(cs, 0.0), z, c64(0.0, sn) * e.conj()],
        [z, c64(1.0, 0.0), z],
        [c64(0.0, sn) * e, z, c64(cs, 0.0)],
    ]))
}

/// `∫₀ᵗ H(s) ds` by composite Simpson quadrature on every entry.
pub fn hamiltonian_integral(p: &BrachistochroneProblem, t: f64, steps: usize) -> Result<ComplexMatrix> {
    simpson(|s| *hamiltonian_at(p, s).matrix(), 0.0, t, steps)
}

/// Composite Simpson rule for a matrix-valued integrand; `steps` must be even.
pub fn simpson(f: impl Fn(f64) -> ComplexMatrix, a: f64, b: f64, steps: usize) -> Result<ComplexMatrix> {
    if steps < 2 || !steps.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("Simpson needs an even panel count, got {steps}")));
    }
    let h = (b - a) / steps as f64;
    let mut acc = f(a) + f(b);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(a + i as f64 * h).scale_re(w);
    }
    Ok(acc.scale_re(h / 3.0))
}

/// `U₁ = exp(−i[F₀t + ∫₀ᵗH])` and `U₂ = exp(iF₀t)`.
pub fn conservation_split(
    p: &BrachistochroneProblem,
    t: f64,
    quadrature_steps: usize,
) -> Result<(UnitaryMatrix, UnitaryMatrix)> {
    if quadrature_steps < 16 {
        return Err(Error::InvalidParameter(format!(
            "quadrature_steps must be at least 16, got {quadrature_steps}"
        )));
    }
    let f0 = constraint(p);
    let exponent = f0.scale_re(t) + hamiltonian_integral(p, t, quadrature_steps)?;
    let u1 = expm_hermitian(&HermitianMatrix::new(exponent)?, 1.0)?;
    let u2 = expm_hermitian(&f0, -t)?;
    Ok((u1, u2))
}

/// All factorizations evaluated at one time.
#[derive(Clone, Debug)]
pub struct PropagatorBundle {
    pub t: f64,
    pub u_schrodinger: UnitaryMatrix,
    pub u_plus: UnitaryMatrix,
    pub u_minus: UnitaryMatrix,
    pub u_frame: UnitaryMatrix,
    pub u1: UnitaryMatrix,
    pub u2: UnitaryMatrix,
}

impl PropagatorBundle {
    pub fn evaluate(p: &BrachistochroneProblem, t: f64, quadrature_steps: usize) -> Result<Self> {
        let (u1, u2) = conservation_split(p, t, quadrature_steps)?;
        Ok(Self {
            t,
            u_schrodinger: schrodinger_propagator(p, t),
            u_plus: u_plus(p, t),
            u_minus: u_minus(p, t),
            u_frame: frame_transport(p, t, 0.0)?,
            u1,
            u2,
        })
    }

    pub fn factors(&self) -> [(&'static str, &UnitaryMatrix); 6] {
        [
            ("schrodinger", &self.u_schrodinger),
            ("plus", &self.u_plus),
            ("minus", &self.u_minus),
            ("frame", &self.u_frame),
            ("u1", &self.u1),
            ("u2", &self.u2),
        ]
    }
}

/// Reduced ratio `Δ/k = m/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResonanceRatio {
    pub m: u64,
    pub n: u64,
}

/// Recognises `Δ/k` as a reduced fraction through its continued-fraction
/// convergents.
pub fn resonance(p: &BrachistochroneProblem) -> Result<ResonanceRatio> {
    let ratio = p.delta() / p.k();
    rational_approximation(ratio, RESONANCE_MAX_DENOMINATOR, RESONANCE_TOL)
        .filter(|r| r.m > r.n)
        .ok_or(Error::NotResonant { ratio })
}

fn rational_approximation(x: f64, max_den: u64, tol: f64) -> Option<ResonanceRatio> {
    if !(x.is_finite() && x > 0.0) {
        return None;
    }
    // convergents h/k of the continued fraction of x
    let (mut h_prev, mut h) = (1u64, x.floor() as u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut frac = x - x.floor();
    loop {
        if (x - h as f64 / k as f64).abs() <= tol * x {
            return Some(ResonanceRatio { m: h, n: k });
        }
        if frac < 1e-15 {
            return None;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as u64;
        frac = inv - inv.floor();
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > max_den {
            return None;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
}

/// Smallest `T₀ > 0` with both `kT₀` and `ΔT₀` multiples of `2π`:
/// `T₀ = 2πn/k` for `Δ/k = m/n`.
pub fn fundamental_period(p: &BrachistochroneProblem) -> Result<f64> {
    let ratio = resonance(p)?;
    Ok(TAU * ratio.n as f64 / p.k())
}

/// `U(t,0)·ψ₀`.
pub fn evolve_state(p: &BrachistochroneProblem, psi0: [C64; 3], t: f64) -> Result<[C64; 3]> {
    apply(&schrodinger_propagator(p, t), psi0)
}

/// `Q(t)Q†(0)·ψ₀`.
pub fn transport_state(p: &BrachistochroneProblem, psi0: [C64; 3], t: f64) -> Result<[C64; 3]> {
    apply(&frame_transport(p, t, 0.0)?, psi0)
}

fn apply(u: &UnitaryMatrix, psi0: [C64; 3]) -> Result<[C64; 3]> {
    let norm = psi0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!("state must be normalized, norm {norm}")));
    }
    let v = u.mul_vec(&psi0)?;
    Ok([v[0], v[1], v[2]])
}

/// `H(0) + F₀` re-exported for callers building `U₋` themselves.
pub fn minus_generator(p: &BrachistochroneProblem) -> HermitianMatrix {
    initial_generator(p)
}
