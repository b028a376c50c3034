//! Floquet-style factorization of the one-period propagator.
//!
//! Everything here reproduces printed closed forms literally (the isometry
//! `Y`, the diagonal factor, the `S(t)` integral, the two Floquet-frame
//! factors) and measures them against the exact propagator. Several of these
//! forms are not exact; [`floquet_claims`] quantifies the gap.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::brachistochrone::{constraint, hamiltonian_at, BrachistochroneProblem};
use crate::error::{Error, Result};
use crate::ledger::ClaimResult;
use crate::linalg::{c64, expm_hermitian, ComplexMatrix, HermitianMatrix, UnitaryMatrix, C64};
use crate::propagators::{resonance, schrodinger_propagator, simpson};

/// Everything needed to rebuild `U(T, 0)` in the Floquet frame.
#[derive(Clone, Debug)]
pub struct FloquetDecomposition {
    pub y: UnitaryMatrix,
    pub u_f: UnitaryMatrix,
    pub delta: f64,
    pub period: f64,
}

impl FloquetDecomposition {
    pub fn new(p: &BrachistochroneProblem, period: f64) -> Self {
        Self {
            y: y_isometry(p.theta()),
            u_f: floquet_diagonal(p, period),
            delta: p.delta(),
            period,
        }
    }
}

/// The isometry `Y`; row 2 is `(0, 0, 1)`.
pub fn y_isometry(theta: f64) -> UnitaryMatrix {
    let e = C64::from_polar(FRAC_1_SQRT_2, -theta);
    let h = c64(FRAC_1_SQRT_2, 0.0);
    let z = c64(0.0, 0.0);
    UnitaryMatrix::new_unchecked(ComplexMatrix::new3([[e, -e, z], [z, z, c64(1.0, 0.0)], [h, h, z]]))
}

/// `diag(e^{−iTΔ}, e^{iTΔ}, 1)`.
pub fn floquet_diagonal(p: &BrachistochroneProblem, period: f64) -> UnitaryMatrix {
    let phi = period * p.delta();
    UnitaryMatrix::new_unchecked(
        ComplexMatrix::diag(&[C64::from_polar(1.0, -phi), C64::from_polar(1.0, phi), c64(1.0, 0.0)])
            .expect("dim 3"),
    )
}

/// `B = (1/T)∫₀ᵀ (H(s) + F₀) ds` by composite Simpson quadrature.
pub fn averaged_generator(p: &BrachistochroneProblem, period: f64, quadrature_steps: usize) -> Result<HermitianMatrix> {
    if !(period > 0.0) {
        return Err(Error::InvalidParameter(format!("period must be positive, got {period}")));
    }
    let f0 = *constraint(p).matrix();
    let integral = simpson(|s| *hamiltonian_at(p, s).matrix() + f0, 0.0, period, quadrature_steps)?;
    // Simpson weights are real, so the average is Hermitian up to roundoff;
    // symmetrize to make it exact.
    let avg = integral.scale_re(1.0 / period);
    Ok(HermitianMatrix::new_unchecked((avg + avg.adjoint()).scale_re(0.5)))
}

/// The printed `S(t)` matrix.
pub fn s_matrix(p: &BrachistochroneProblem, t: f64) -> ComplexMatrix {
    let (r, d, th) = (p.r(), p.delta(), p.theta());
    let a = r / (2.0 * d);
    let z = c64(0.0, 0.0);
    let e = |x: f64| C64::from_polar(a, x);
    ComplexMatrix::new3([
        [z, z, e(t * d + th)],
        [z, z, -e(-(t * d - th))],
        [e(-(t * d + th)), -e(t * d - th), z],
    ])
}

/// `Ŝ = S(T) − S(0)`.
pub fn s_integral(p: &BrachistochroneProblem, period: f64) -> Result<ComplexMatrix> {
    if period < 0.0 {
        return Err(Error::InvalidParameter(format!("period must be non-negative, got {period}")));
    }
    Ok(s_matrix(p, period) - s_matrix(p, 0.0))
}

/// The printed Floquet-frame factor with `u = cos TΔ`, `v = sin TΔ`,
/// `Z = ke^{−iθ}`, `W = R`. Not unitary in general.
pub fn u1f_closed(p: &BrachistochroneProblem, period: f64) -> ComplexMatrix {
    let (r, k, d) = (p.r(), p.k(), p.delta());
    let (v, u) = (period * d).sin_cos();
    let e = C64::from_polar(1.0, p.theta());
    let ec = e.conj();
    let d2 = d * d;
    let mi = c64(0.0, -1.0);
    ComplexMatrix::new3([
        [c64(u, 0.0), e * (r * k * (u - 1.0) / d2), mi * e * (k * v / d)],
        [ec * (r * k * (u - 1.0) / d2), c64(1.0, 0.0), mi * (r * v / d)],
        [mi * ec * (k * v / d), mi * (r * v / d), c64(u, 0.0)],
    ])
}

/// The printed second Floquet-frame factor: rotation by `kT` with phases
/// `ie^{±iθ}`.
pub fn u2f_closed(p: &BrachistochroneProblem, period: f64) -> UnitaryMatrix {
    let (s, c) = (p.k() * period).sin_cos();
    let e = C64::from_polar(1.0, p.theta());
    let z = c64(0.0, 0.0);
    UnitaryMatrix::new_unchecked(ComplexMatrix::new3([
        [c64(c, 0.0), z, c64(0.0, s) * e],
        [z, c64(1.0, 0.0), z],
        [c64(0.0, s) * e.conj(), z, c64(c, 0.0)],
    ]))
}

/// `Y†·U₁F·U₂F·Y`.
pub fn floquet_product(p: &BrachistochroneProblem, period: f64) -> ComplexMatrix {
    let y = y_isometry(p.theta());
    y.adjoint()
        .matmul(&u1f_closed(p, period))
        .matmul(&u2f_closed(p, period))
        .matmul(&y)
}

const FORCED_TOL: f64 = 1e-8;
const QUADRATURE_STEPS: usize = 256;

/// True when `T` is (numerically) a common period of `k` and `Δ`, which is
/// where the Floquet identities are analytically forced.
fn is_forced_period(p: &BrachistochroneProblem, period: f64) -> bool {
    if resonance(p).is_err() || period <= 0.0 {
        return false;
    }
    let on_grid = |w: f64| {
        let turns = w * period / TAU;
        (turns - turns.round()).abs() < 1e-9
    };
    on_grid(p.k()) && on_grid(p.delta())
}

/// Floquet identities at period `T`:
/// (a) `Y†U₁FU₂FY` against the exact propagator,
/// (b) `Y†U_F Y` against `exp(−iBT)`,
/// (c) whether `Y` diagonalizes `H(0) + F₀`.
///
/// (a) and (b) are pass/fail only at a common period of `k` and `Δ` (or at
/// `T = 0`); everywhere else they are report-only.
pub fn floquet_claims(p: &BrachistochroneProblem, period: f64) -> Vec<ClaimResult> {
    let forced = period == 0.0 || is_forced_period(p, period);
    let grade = |id: &str, desc: String, anchor: &str, residual: f64| {
        if forced {
            ClaimResult::checked(id, desc, anchor, residual, FORCED_TOL)
        } else {
            ClaimResult::report_only(id, desc, anchor, residual, FORCED_TOL)
        }
    };
    let mut out = Vec::with_capacity(3);

    let exact = schrodinger_propagator(p, period);
    let product = floquet_product(p, period);
    out.push(grade(
        "C07a-floquet-product",
        format!("Y†·U1F·U2F·Y vs exact propagator at T={period:.6}"),
        "Floquet factorization of U(T,0)",
        (product - *exact.matrix()).frobenius_norm(),
    ));

    let diag_side = if period == 0.0 {
        Ok(ComplexMatrix::identity(3).expect("dim 3"))
    } else {
        averaged_generator(p, period, QUADRATURE_STEPS)
            .and_then(|b| expm_hermitian(&b, period))
            .map(|u| u.into_inner())
    };
    let y = y_isometry(p.theta());
    let conj = y.adjoint().matmul(&floquet_diagonal(p, period)).matmul(&y);
    out.push(match diag_side {
        Ok(m) => grade(
            "C07b-floquet-diagonal",
            format!("Y†·U_F·Y vs exp(-iBT) at T={period:.6}"),
            "diagonal Floquet factor U_F",
            (conj - m).frobenius_norm(),
        ),
        Err(e) => ClaimResult::failed("C07b-floquet-diagonal", "Y†·U_F·Y vs exp(-iBT)", "diagonal Floquet factor U_F", e.to_string()),
    });

    let a = *hamiltonian_at(p, 0.0).matrix() + *constraint(p).matrix();
    let off = y.matmul(&a).matmul(&y.adjoint()).off_diagonal_norm();
    out.push(ClaimResult::report_only(
        "C07-floquet-y-diagonalization",
        "off-diagonal norm of Y·(H(0)+F0)·Y†".to_string(),
        "isometry Y for the Floquet frame",
        off,
        1e-12,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brachistochrone::Convention;
    use crate::ledger::ClaimStatus;
    use crate::linalg::frobenius_distance;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn unit(theta: f64) -> BrachistochroneProblem {
        BrachistochroneProblem::resonant(1.0, theta).unwrap()
    }

    #[test]
    fn y_isometry_examples() {
        let y = y_isometry(0.0);
        let h = FRAC_1_SQRT_2;
        let expect = ComplexMatrix::new3([
            [c64(h, 0.0), c64(-h, 0.0), c64(0.0, 0.0)],
            [c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)],
            [c64(h, 0.0), c64(h, 0.0), c64(0.0, 0.0)],
        ]);
        assert_eq!(*y.matrix(), expect);
        for th in [0.0, 0.4, 2.9, 5.5] {
            let y = y_isometry(th);
            let id = ComplexMatrix::identity(3).unwrap();
            assert!(frobenius_distance(&y.matmul(&y.adjoint()), &id).unwrap() < 1e-15);
            assert!((y.det().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn floquet_diagonal_examples() {
        let p = unit(0.0);
        let id = ComplexMatrix::identity(3).unwrap();
        assert!(frobenius_distance(&floquet_diagonal(&p, PI), &id).unwrap() < 1e-15);
        assert_eq!(*floquet_diagonal(&p, 0.0).matrix(), id);
        let expect = ComplexMatrix::real_diag(&[-1.0, -1.0, 1.0]).unwrap();
        assert!(frobenius_distance(&floquet_diagonal(&p, FRAC_PI_2), &expect).unwrap() < 1e-15);
        assert!(floquet_diagonal(&p, 0.37).unitarity_residual() < 1e-14);
    }

    #[test]
    fn averaged_generator_examples() {
        let p = unit(1.2);
        let b = averaged_generator(&p, TAU, 256).unwrap();
        assert!(frobenius_distance(&b, &constraint(&p)).unwrap() < 1e-10);
        assert!(b.hermiticity_residual() < 1e-14);
        // two panels over a vanishing interval: mean of a constant
        let tiny = averaged_generator(&p, 1e-9, 2).unwrap();
        let a0 = *hamiltonian_at(&p, 0.0).matrix() + *constraint(&p).matrix();
        assert!(frobenius_distance(&tiny, &a0).unwrap() < 1e-8);
        assert!(averaged_generator(&p, 0.0, 16).is_err());
    }

    #[test]
    fn s_integral_examples() {
        let p = unit(0.8);
        assert!(s_integral(&p, PI).unwrap().frobenius_norm() < 1e-15);
        assert_eq!(s_integral(&p, 0.0).unwrap().frobenius_norm(), 0.0);
        let bound = 2.0 * (p.r() / p.delta()) * 2.0;
        for i in 0..40 {
            assert!(s_integral(&p, 0.13 * i as f64).unwrap().frobenius_norm() <= bound);
        }
    }

    #[test]
    fn u1f_examples() {
        let p = unit(0.0);
        let id = ComplexMatrix::identity(3).unwrap();
        assert!(frobenius_distance(&u1f_closed(&p, PI), &id).unwrap() < 1e-15);
        // TΔ = π, θ = 0: u = −1, v = 0 ⇒ (1,2) = (2,1) = −2Rk/Δ² = −√3/2
        let half = u1f_closed(&p, FRAC_PI_2);
        let s3 = 3f64.sqrt() / 2.0;
        let expect = ComplexMatrix::new3([
            [c64(-1.0, 0.0), c64(-s3, 0.0), c64(0.0, 0.0)],
            [c64(-s3, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
            [c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)],
        ]);
        assert!(frobenius_distance(&half, &expect).unwrap() < 1e-15);
        // measured, not asserted: the printed factor drifts off the unitary group
        assert!(u1f_closed(&p, 0.3).unitarity_residual() > 1e-3);
    }

    #[test]
    fn u2f_examples() {
        let p = unit(0.0);
        let id = ComplexMatrix::identity(3).unwrap();
        assert!(frobenius_distance(&u2f_closed(&p, TAU), &id).unwrap() < 1e-15);
        let z = c64(0.0, 0.0);
        let i = c64(0.0, 1.0);
        let expect = ComplexMatrix::new3([[z, z, i], [z, c64(1.0, 0.0), z], [i, z, z]]);
        assert!(frobenius_distance(&u2f_closed(&p, FRAC_PI_2), &expect).unwrap() < 1e-15);
        assert!(u2f_closed(&unit(2.0), 0.77).unitarity_residual() < 1e-14);
        // agrees with U₊ only when θ = 0
        let q = unit(0.9);
        let gap = frobenius_distance(&u2f_closed(&q, 0.5), &crate::propagators::u_plus(&q, 0.5)).unwrap();
        assert!(gap > 1e-3);
        assert!(frobenius_distance(&u2f_closed(&p, 0.5), &crate::propagators::u_plus(&p, 0.5)).unwrap() < 1e-15);
    }

    #[test]
    fn claims_at_period_pass() {
        let p = unit(0.7);
        let claims = floquet_claims(&p, TAU);
        assert_eq!(claims[0].status, ClaimStatus::Pass, "{:?}", claims[0]);
        assert_eq!(claims[1].status, ClaimStatus::Pass, "{:?}", claims[1]);
        assert_eq!(claims[2].status, ClaimStatus::ReportOnly);
        assert!(claims[2].residual > 0.1);
        for c in floquet_claims(&p, 0.0) {
            assert_ne!(c.status, ClaimStatus::Fail);
        }
        for c in floquet_claims(&p, 0.0).iter().take(2) {
            assert!(c.residual < 1e-12);
        }
        let generic = floquet_claims(&p, 1.1);
        assert!(generic.iter().all(|c| c.status == ClaimStatus::ReportOnly));
        assert!(generic.iter().all(|c| c.residual.is_finite()));
    }

    #[test]
    fn non_resonant_claims_are_report_only() {
        let p = BrachistochroneProblem::new(1.0, 0.0, Some(1.0), Convention::SelfConsistent).unwrap();
        assert!(floquet_claims(&p, TAU).iter().all(|c| c.status == ClaimStatus::ReportOnly));
    }
}
