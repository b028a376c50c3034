//! Independent numerical ground truth.
//!
//! The propagator here integrates `i dU/dt = H(t)U` with the exponential
//! midpoint rule: each step multiplies by `exp(−i·h·H(t_mid))` on the left.
//! Every step is exactly unitary, the global error is `O(h²)`, and nothing in
//! it shares a code path with the closed forms in [`crate::propagators`]
//! beyond the spectral exponential of [`crate::linalg`].

use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian, ComplexMatrix, HermitianMatrix, UnitaryMatrix};

/// A time-dependent Hermitian generator on `[t0, t1]`.
pub struct SampledGenerator<F>
where
    F: Fn(f64) -> HermitianMatrix,
{
    generator: F,
    pub t0: f64,
    pub t1: f64,
    dim: usize,
}

impl<F> SampledGenerator<F>
where
    F: Fn(f64) -> HermitianMatrix,
{
    pub fn new(generator: F, t0: f64, t1: f64) -> Self {
        let dim = generator(t0).dim();
        Self { generator, t0, t1, dim }
    }

    pub fn at(&self, t: f64) -> HermitianMatrix {
        (self.generator)(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn check_interval(t0: f64, t1: f64, steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 steps, got {steps}")));
    }
    if !(t1 > t0) {
        return Err(Error::InvalidParameter(format!("empty interval [{t0}, {t1}]")));
    }
    Ok(())
}

/// Ordered product of midpoint exponentials from `t0` to `t1`.
pub fn numeric_propagator<F>(g: &SampledGenerator<F>, t0: f64, t1: f64, steps: usize) -> Result<UnitaryMatrix>
where
    F: Fn(f64) -> HermitianMatrix,
{
    check_interval(t0, t1, steps)?;
    let h = (t1 - t0) / steps as f64;
    let mut u = ComplexMatrix::identity(g.dim())?;
    for n in 0..steps {
        let tm = t0 + (n as f64 + 0.5) * h;
        let step = expm_hermitian(&g.at(tm), h)?;
        u = step.matmul(&u);
    }
    Ok(UnitaryMatrix::new_unchecked(u))
}

/// Same integration as [`numeric_propagator`], recording `U(t)` every
/// `record_every` steps (including `t0` and the final time).
pub fn numeric_trajectory<F>(
    g: &SampledGenerator<F>,
    t0: f64,
    t1: f64,
    steps: usize,
    record_every: usize,
) -> Result<Vec<(f64, UnitaryMatrix)>>
where
    F: Fn(f64) -> HermitianMatrix,
{
    check_interval(t0, t1, steps)?;
    if record_every == 0 || !steps.is_multiple_of(record_every) {
        return Err(Error::InvalidParameter(format!(
            "record interval {record_every} must divide step count {steps}"
        )));
    }
    let h = (t1 - t0) / steps as f64;
    let mut u = ComplexMatrix::identity(g.dim())?;
    let mut out = Vec::with_capacity(steps / record_every + 1);
    out.push((t0, UnitaryMatrix::new_unchecked(u)));
    for n in 0..steps {
        let tm = t0 + (n as f64 + 0.5) * h;
        u = expm_hermitian(&g.at(tm), h)?.matmul(&u);
        if (n + 1) % record_every == 0 {
            out.push((t0 + (n + 1) as f64 * h, UnitaryMatrix::new_unchecked(u)));
        }
    }
    Ok(out)
}

/// Richardson estimate of the integrator's convergence order.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderEstimate {
    /// `log₂(‖U_N − U_2N‖ / ‖U_2N − U_4N‖)`; `None` when both differences sit
    /// at roundoff and the ratio carries no information.
    pub order: Option<f64>,
    pub coarse_diff: f64,
    pub fine_diff: f64,
}

const ROUNDOFF_FLOOR: f64 = 1e-13;

pub fn convergence_order<F>(g: &SampledGenerator<F>, t0: f64, t1: f64, base_steps: usize) -> Result<OrderEstimate>
where
    F: Fn(f64) -> HermitianMatrix,
{
    if base_steps < 64 {
        return Err(Error::InvalidParameter(format!("base_steps must be at least 64, got {base_steps}")));
    }
    let u1 = numeric_propagator(g, t0, t1, base_steps)?;
    let u2 = numeric_propagator(g, t0, t1, 2 * base_steps)?;
    let u4 = numeric_propagator(g, t0, t1, 4 * base_steps)?;
    let coarse_diff = (*u1.matrix() - *u2.matrix()).frobenius_norm();
    let fine_diff = (*u2.matrix() - *u4.matrix()).frobenius_norm();
    let order = if coarse_diff < ROUNDOFF_FLOOR || fine_diff < ROUNDOFF_FLOOR {
        None
    } else {
        Some((coarse_diff / fine_diff).log2())
    };
    Ok(OrderEstimate { order, coarse_diff, fine_diff })
}

/// `(m(t+h) − m(t−h)) / 2h`.
pub fn central_difference(m: impl Fn(f64) -> ComplexMatrix, t: f64, h: f64) -> Result<ComplexMatrix> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    Ok((m(t + h) - m(t - h)).scale_re(0.5 / h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brachistochrone::{hamiltonian_at, BrachistochroneProblem};
    use crate::linalg::{c64, frobenius_distance};
    use std::f64::consts::TAU;

    fn fixed() -> HermitianMatrix {
        HermitianMatrix::new(ComplexMatrix::new3([
            [c64(0.3, 0.0), c64(0.2, -0.1), c64(0.0, 0.0)],
            [c64(0.2, 0.1), c64(-0.5, 0.0), c64(0.7, 0.0)],
            [c64(0.0, 0.0), c64(0.7, 0.0), c64(0.2, 0.0)],
        ]))
        .unwrap()
    }

    #[test]
    fn constant_generator_matches_single_exponential() {
        let h = fixed();
        let g = SampledGenerator::new(|_| h, 0.0, 1.3);
        let u = numeric_propagator(&g, 0.0, 1.3, 64).unwrap();
        let exact = expm_hermitian(&h, 1.3).unwrap();
        assert!(frobenius_distance(&u, &exact).unwrap() < 1e-13);
        let est = convergence_order(&g, 0.0, 1.3, 64).unwrap();
        assert_eq!(est.order, None);
    }

    #[test]
    fn solved_problem_returns_after_one_period() {
        let p = BrachistochroneProblem::resonant(1.0, 0.4).unwrap();
        let g = SampledGenerator::new(|t| hamiltonian_at(&p, t), 0.0, TAU);
        let u = numeric_propagator(&g, 0.0, TAU, 1 << 16).unwrap();
        let id = ComplexMatrix::identity(3).unwrap();
        assert!(frobenius_distance(&u, &id).unwrap() < 1e-8);
        assert!(u.unitarity_residual() < (1 << 16) as f64 * 1e-15);
    }

    #[test]
    fn smooth_generator_is_second_order() {
        let p = BrachistochroneProblem::resonant(1.0, 0.4).unwrap();
        let g = SampledGenerator::new(|t| hamiltonian_at(&p, t), 0.0, 2.0);
        let est = convergence_order(&g, 0.0, 2.0, 128).unwrap();
        let order = est.order.unwrap();
        assert!((order - 2.0).abs() < 0.1, "order {order}");
    }

    #[test]
    fn discontinuous_generator_loses_order() {
        let a = fixed();
        let b = HermitianMatrix::new(ComplexMatrix::real_diag(&[1.0, -2.0, 0.5]).unwrap()).unwrap();
        // jump placed off every dyadic grid point
        let jump = 1.0 / 3.0;
        let g = SampledGenerator::new(move |t| if t < jump { a } else { b }, 0.0, 1.0);
        let est = convergence_order(&g, 0.0, 1.0, 64).unwrap();
        assert!(est.order.unwrap() < 1.9, "{est:?}");
    }

    #[test]
    fn trajectory_records_endpoints() {
        let p = BrachistochroneProblem::resonant(1.0, 0.0).unwrap();
        let g = SampledGenerator::new(|t| hamiltonian_at(&p, t), 0.0, 1.0);
        let traj = numeric_trajectory(&g, 0.0, 1.0, 256, 64).unwrap();
        assert_eq!(traj.len(), 5);
        assert_eq!(traj[0].0, 0.0);
        assert!((traj[4].0 - 1.0).abs() < 1e-15);
        let direct = numeric_propagator(&g, 0.0, 1.0, 256).unwrap();
        assert_eq!(*traj[4].1.matrix(), *direct.matrix());
        assert!(numeric_trajectory(&g, 0.0, 1.0, 256, 100).is_err());
    }

    #[test]
    fn central_difference_examples() {
        let a = *fixed().matrix();
        let zero = central_difference(|_| a, 0.3, 1e-3).unwrap();
        assert_eq!(zero.frobenius_norm(), 0.0);
        let lin = central_difference(|t| a.scale_re(t), 0.5, 0.25).unwrap();
        assert!(frobenius_distance(&lin, &a).unwrap() < 1e-15);
        // H'(t) for the solved problem: R k (−sin kt) on (1,2), −iRk e^{−iθ} cos kt on (2,3)
        let p = BrachistochroneProblem::resonant(1.0, 0.2).unwrap();
        let t: f64 = 0.8;
        let analytic = {
            let r = p.r();
            let z = c64(0.0, 0.0);
            let s12 = c64(-r * t.sin(), 0.0);
            let s23 = c64(0.0, -r * t.cos()) * num_complex::Complex64::from_polar(1.0, -0.2);
            ComplexMatrix::new3([[z, s12, z], [s12, z, s23], [z, s23.conj(), z]])
        };
        let e1 = frobenius_distance(&central_difference(|s| *hamiltonian_at(&p, s).matrix(), t, 1e-2).unwrap(), &analytic).unwrap();
        let e2 = frobenius_distance(&central_difference(|s| *hamiltonian_at(&p, s).matrix(), t, 5e-3).unwrap(), &analytic).unwrap();
        assert!(((e1 / e2).log2() - 2.0).abs() < 0.05);
        assert!(central_difference(|_| a, 0.0, -1.0).is_err());
    }
}
