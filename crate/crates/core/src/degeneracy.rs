//! Catalog matrices around the degenerate (zero-eigenvalue) direction:
//! angular-momentum matrices, the three solution matrices and their rotation
//! families, the qutrit DFT, the evolved constraint and the swapped problem.
//!
//! Matrices are reproduced as printed. Where a printed matrix is not unitary
//! the function returns a plain [`ComplexMatrix`] and the defect is measured
//! elsewhere rather than patched here.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::brachistochrone::{constraint_with_diagonals, BrachistochroneProblem};
use crate::error::{Error, Result};
use crate::linalg::{c64, expm_rank_reduced, ComplexMatrix, HermitianMatrix, UnitaryMatrix, C64};
use crate::propagators::u_plus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolutionMatrixKind {
    Q,
    J,
    D,
}

impl SolutionMatrixKind {
    pub const ALL: [SolutionMatrixKind; 3] = [Self::Q, Self::J, Self::D];
}

impl fmt::Display for SolutionMatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Q => "q",
            Self::J => "j",
            Self::D => "d",
        })
    }
}

/// One of the printed rotation families `R_{q1..3}`, `R_{j1..3}`, `R_{d1..3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationFamily {
    pub kind: SolutionMatrixKind,
    pub index: u8,
}

impl RotationFamily {
    pub fn new(kind: SolutionMatrixKind, index: u8) -> Result<Self> {
        if !(1..=3).contains(&index) {
            return Err(Error::InvalidParameter(format!("rotation index must be 1..3, got {index}")));
        }
        Ok(Self { kind, index })
    }

    /// Every printed label, aliases included.
    pub fn all() -> Vec<RotationFamily> {
        SolutionMatrixKind::ALL
            .iter()
            .flat_map(|&kind| (1..=3).map(move |index| RotationFamily { kind, index }))
            .collect()
    }

    /// The label this family is printed equal to: `d2`, `d3` → `d1`; `j3` → `j2`.
    pub fn canonical(self) -> Self {
        match (self.kind, self.index) {
            (SolutionMatrixKind::D, _) => Self { kind: SolutionMatrixKind::D, index: 1 },
            (SolutionMatrixKind::J, 3) => Self { kind: SolutionMatrixKind::J, index: 2 },
            _ => self,
        }
    }
}

impl fmt::Display for RotationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.index)
    }
}

impl FromStr for RotationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        let kind = match chars.next().map(|c| c.to_ascii_lowercase()) {
            Some('q') => SolutionMatrixKind::Q,
            Some('j') => SolutionMatrixKind::J,
            Some('d') => SolutionMatrixKind::D,
            _ => return Err(Error::InvalidParameter(format!("unknown rotation family '{s}'"))),
        };
        let index: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("unknown rotation family '{s}'")))?;
        Self::new(kind, index)
    }
}

const Z: C64 = c64(0.0, 0.0);
const ONE: C64 = c64(1.0, 0.0);
const I: C64 = c64(0.0, 1.0);

/// `(L_x, L_y, L_z)` without the `1/√2` normalization.
pub fn angular_momentum() -> (HermitianMatrix, HermitianMatrix, HermitianMatrix) {
    let lx = ComplexMatrix::new3([[Z, ONE, Z], [ONE, Z, ONE], [Z, ONE, Z]]);
    let ly = ComplexMatrix::new3([[Z, -I, Z], [I, Z, -I], [Z, I, Z]]);
    let lz = ComplexMatrix::real_diag(&[1.0, 0.0, -1.0]).expect("dim 3");
    (
        HermitianMatrix::new_unchecked(lx),
        HermitianMatrix::new_unchecked(ly),
        HermitianMatrix::new_unchecked(lz),
    )
}

/// `L² = L_x² + L_y² + L_z²` as computed from [`angular_momentum`].
pub fn l_squared() -> HermitianMatrix {
    let (lx, ly, lz) = angular_momentum();
    let sum = lx.matmul(&lx) + ly.matmul(&ly) + lz.matmul(&lz);
    HermitianMatrix::new_unchecked(sum)
}

/// The printed value `3·diag(1, 0, 1)`.
pub fn printed_l_squared() -> HermitianMatrix {
    HermitianMatrix::new_unchecked(ComplexMatrix::real_diag(&[3.0, 0.0, 3.0]).expect("dim 3"))
}

/// `L²` recomputed over the Gaussian integers, entry by entry.
pub fn l_squared_integer() -> [[(i64, i64); 3]; 3] {
    type G = (i64, i64);
    let mul = |a: G, b: G| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let lx: [[G; 3]; 3] = [[(0, 0), (1, 0), (0, 0)], [(1, 0), (0, 0), (1, 0)], [(0, 0), (1, 0), (0, 0)]];
    let ly: [[G; 3]; 3] = [[(0, 0), (0, -1), (0, 0)], [(0, 1), (0, 0), (0, -1)], [(0, 0), (0, 1), (0, 0)]];
    let lz: [[G; 3]; 3] = [[(1, 0), (0, 0), (0, 0)], [(0, 0), (0, 0), (0, 0)], [(0, 0), (0, 0), (-1, 0)]];
    let mut out = [[(0, 0); 3]; 3];
    for m in [lx, ly, lz] {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let p = mul(m[i][k], m[k][j]);
                    out[i][j].0 += p.0;
                    out[i][j].1 += p.1;
                }
            }
        }
    }
    out
}

/// `‖(n·L)² − |n|²L²/3‖_F` using the computed `L²`.
pub fn spinor_square_residual(n: [f64; 3]) -> Result<f64> {
    let n2: f64 = n.iter().map(|x| x * x).sum();
    if !(n2 > 0.0) || !n2.is_finite() {
        return Err(Error::InvalidParameter("spinor direction must be a non-zero finite vector".into()));
    }
    let (lx, ly, lz) = angular_momentum();
    let nl = lx.scale_re(n[0]) + ly.scale_re(n[1]) + lz.scale_re(n[2]);
    let lhs = nl.matmul(&nl);
    let rhs = l_squared().scale_re(n2 / 3.0);
    Ok((lhs - rhs).frobenius_norm())
}

/// The printed solution matrix `X_kind(t)`.
pub fn solution_matrix(kind: SolutionMatrixKind, t: f64, theta: f64) -> ComplexMatrix {
    let (s, c) = t.sin_cos();
    let r = FRAC_1_SQRT_2;
    let rr = c64(r, 0.0);
    match kind {
        SolutionMatrixKind::Q => {
            let e = C64::from_polar(1.0, theta);
            ComplexMatrix::new3([
                [c64(r * c, 0.0), c64(-r * c, 0.0), I * e.conj() * s],
                [rr, rr, Z],
                [I * e * (r * s), -I * e * (r * s), c64(c, 0.0)],
            ])
        }
        SolutionMatrixKind::J => ComplexMatrix::new3([
            [c64(r * c, 0.0), c64(-r * c, 0.0), c64(-s, 0.0)],
            [rr, rr, Z],
            [c64(0.0, r * s), c64(0.0, -r * s), c64(0.0, c)],
        ]),
        SolutionMatrixKind::D => ComplexMatrix::new3([
            [c64(0.0, -r * c), c64(0.0, r * c), c64(0.0, s)],
            [rr, rr, Z],
            [c64(0.0, r * s), c64(0.0, -r * s), c64(0.0, c)],
        ]),
    }
}

/// `X·diag(1, −1, 0)·X†`.
pub fn isometric_image(kind: SolutionMatrixKind, t: f64, theta: f64) -> HermitianMatrix {
    let x = solution_matrix(kind, t, theta);
    let l = ComplexMatrix::real_diag(&[1.0, -1.0, 0.0]).expect("dim 3");
    let m = x.matmul(&l).matmul(&x.adjoint());
    HermitianMatrix::new_unchecked((m + m.adjoint()).scale_re(0.5))
}

/// The printed right-hand side of each isometric transformation.
pub fn isometric_target(kind: SolutionMatrixKind, t: f64, theta: f64) -> ComplexMatrix {
    let (s, c) = t.sin_cos();
    let (a, b) = match kind {
        SolutionMatrixKind::Q => (c64(c, 0.0), -I * C64::from_polar(s, -theta)),
        SolutionMatrixKind::J => (c64(c, 0.0), c64(0.0, -s)),
        SolutionMatrixKind::D => (c64(0.0, -c), c64(0.0, -s)),
    };
    ComplexMatrix::new3([[Z, a, Z], [a.conj(), Z, b], [Z, b.conj(), Z]])
}

/// The printed rotation `R_family(σ)`. Several of these are not unitary.
pub fn rotation(family: RotationFamily, sigma: f64, theta: f64) -> ComplexMatrix {
    let (s, c) = sigma.sin_cos();
    let cc = c64(c, 0.0);
    let e = C64::from_polar(1.0, theta);
    let frame = |a13: C64, a31: C64| ComplexMatrix::new3([[cc, Z, a13], [Z, ONE, Z], [a31, Z, cc]]);
    let f = family.canonical();
    match (f.kind, f.index) {
        (SolutionMatrixKind::Q, 1) => frame(-I * e.conj() * s, I * e * s),
        (SolutionMatrixKind::Q, 2) => frame(-I * e.conj() * s, -I * e * s),
        (SolutionMatrixKind::Q, _) => frame(I * e.conj() * s, -I * e * s),
        (SolutionMatrixKind::J, 1) => frame(c64(0.0, s), c64(0.0, s)),
        (SolutionMatrixKind::J, _) => frame(c64(0.0, -s), c64(0.0, s)),
        (SolutionMatrixKind::D, _) => frame(c64(s, 0.0), c64(-s, 0.0)),
    }
}

/// `‖R(σ₁)R(σ₂) − R(σ₁+σ₂)‖_F`.
pub fn group_law_residual(family: RotationFamily, s1: f64, s2: f64, theta: f64) -> f64 {
    let lhs = rotation(family, s1, theta).matmul(&rotation(family, s2, theta));
    (lhs - rotation(family, s1 + s2, theta)).frobenius_norm()
}

/// `‖R(σ)·col_i(X(t)) − col_i(X(t+σ))‖₂` with `column` in `1..=3`.
pub fn shift_residual(
    family: RotationFamily,
    kind: SolutionMatrixKind,
    column: usize,
    t: f64,
    sigma: f64,
    theta: f64,
) -> Result<f64> {
    if !(1..=3).contains(&column) {
        return Err(Error::InvalidParameter(format!("column must be 1..3, got {column}")));
    }
    let j = column - 1;
    let x0 = solution_matrix(kind, t, theta);
    let x1 = solution_matrix(kind, t + sigma, theta);
    let col: Vec<C64> = (0..3).map(|i| x0[(i, j)]).collect();
    let moved = rotation(family, sigma, theta).mul_vec(&col)?;
    Ok((0..3).map(|i| (moved[i] - x1[(i, j)]).norm_sqr()).sum::<f64>().sqrt())
}

/// Pairings `(family, kind)` for which the column shift holds on every column.
/// Determined by direct evaluation; all other pairings fail on at least one
/// column.
pub fn shift_pairing_holds(family: RotationFamily, kind: SolutionMatrixKind) -> bool {
    matches!(
        (family.canonical().kind, family.canonical().index, kind),
        (SolutionMatrixKind::J, 1, SolutionMatrixKind::J) | (SolutionMatrixKind::D, 1, SolutionMatrixKind::D)
    )
}

/// `z = −(1 − i√3)/2`, a primitive cube root of unity.
pub fn dft_root() -> C64 {
    c64(-0.5, 3f64.sqrt() / 2.0)
}

/// The qutrit Fourier transform `Π`.
pub fn qutrit_dft() -> UnitaryMatrix {
    let z = dft_root();
    let a = 1.0 / 3f64.sqrt();
    let p = |e: i32| z.powi(e) * a;
    UnitaryMatrix::new_unchecked(ComplexMatrix::new3([
        [p(0), p(0), p(0)],
        [p(0), p(1), p(2)],
        [p(0), p(2), p(4)],
    ]))
}

/// `ΠᵀΠ`, computed.
pub fn dft_swap_gate() -> UnitaryMatrix {
    let pi = qutrit_dft();
    UnitaryMatrix::new_unchecked(pi.transpose().matmul(&pi))
}

/// The printed permutation exchanging basis states 2 and 3.
pub fn swap_permutation() -> ComplexMatrix {
    ComplexMatrix::new3([[ONE, Z, Z], [Z, Z, ONE], [Z, ONE, Z]])
}

/// `U₊(t)·F(0)·U₊†(t)` with the diagonals `(ω₁, −(ω₁+ω₂), ω₂)` switched on.
pub fn evolved_constraint(p: &BrachistochroneProblem, omega1: f64, omega2: f64, t: f64) -> HermitianMatrix {
    let f0 = constraint_with_diagonals(p, omega1, omega2);
    let u = u_plus(p, t);
    let m = u.matmul(&f0).matmul(&u.adjoint());
    HermitianMatrix::new_unchecked((m + m.adjoint()).scale_re(0.5))
}

/// The printed closed form with `Λ₁ = 2ω₁+ω₂`, `Λ₂ = ω₁+ω₂` and
/// `Ξ = (k cos 2kt + iω₂ sin 2kt)/2`. Not Hermitian as printed.
pub fn evolved_constraint_printed(p: &BrachistochroneProblem, omega1: f64, omega2: f64, t: f64) -> ComplexMatrix {
    let k = p.k();
    let l1 = 2.0 * omega1 + omega2;
    let l2 = omega1 + omega2;
    let ck = (k * t).cos();
    let d = l1 * ck * ck - l2;
    let xi = c64(k * (2.0 * k * t).cos(), omega2 * (2.0 * k * t).sin()) * 0.5;
    let e = C64::from_polar(1.0, p.theta());
    ComplexMatrix::new3([
        [c64(d, 0.0), Z, e * xi],
        [Z, c64(omega2, 0.0), Z],
        [-e.conj() * xi.conj(), Z, c64(-d, 0.0)],
    ])
}

/// `[[ω₁, 0, κ], [0, 0, 0], [κ̄, 0, −ω₁]]`, the Hamiltonian of the problem
/// with roles of Hamiltonian and constraint exchanged.
pub fn swapped_hamiltonian(omega1: f64, kappa: C64) -> HermitianMatrix {
    HermitianMatrix::new_unchecked(ComplexMatrix::new3([
        [c64(omega1, 0.0), Z, kappa],
        [Z, Z, Z],
        [kappa.conj(), Z, c64(-omega1, 0.0)],
    ]))
}

/// `(cos νt − iω₁ sin νt/ν, 0, −iκ̄ sin νt/ν)` with `ν² = ω₁² + |κ|²`.
pub fn swapped_problem_state(omega1: f64, kappa: C64, t: f64) -> Result<[C64; 3]> {
    let nu = (omega1 * omega1 + kappa.norm_sqr()).sqrt();
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("swapped problem needs ν > 0, got {nu}")));
    }
    let (s, c) = (nu * t).sin_cos();
    Ok([c64(c, -omega1 * s / nu), Z, -I * kappa.conj() * (s / nu)])
}

/// The same state from the three-term exponential, for comparison.
pub fn swapped_problem_state_via_exponential(omega1: f64, kappa: C64, t: f64) -> Result<[C64; 3]> {
    let nu = (omega1 * omega1 + kappa.norm_sqr()).sqrt();
    let u = expm_rank_reduced(&swapped_hamiltonian(omega1, kappa), nu, t)?;
    Ok([u[(0, 0)], u[(1, 0)], u[(2, 0)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, frobenius_distance};
    use std::f64::consts::FRAC_PI_2;

    fn id() -> ComplexMatrix {
        ComplexMatrix::identity(3).unwrap()
    }

    #[test]
    fn angular_momentum_examples() {
        let (lx, ly, lz) = angular_momentum();
        assert_eq!(*lz.matrix(), ComplexMatrix::real_diag(&[1.0, 0.0, -1.0]).unwrap());
        for l in [&lx, &ly, &lz] {
            assert_eq!(l.hermiticity_residual(), 0.0);
        }
        let c = commutator(&lx, &ly).unwrap();
        let expect = ComplexMatrix::diag(&[c64(0.0, 2.0), Z, c64(0.0, -2.0)]).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn l_squared_examples() {
        let l2 = l_squared();
        assert_eq!(*l2.matrix(), ComplexMatrix::real_diag(&[3.0, 4.0, 3.0]).unwrap());
        assert_eq!(l2.trace(), c64(10.0, 0.0));
        assert_eq!(frobenius_distance(&l2, &printed_l_squared()).unwrap(), 4.0);
        let exact = l_squared_integer();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { [3, 4, 3][i] } else { 0 };
                assert_eq!(exact[i][j], (want, 0));
                assert_eq!(l2[(i, j)], c64(exact[i][j].0 as f64, exact[i][j].1 as f64));
            }
        }
    }

    #[test]
    fn spinor_square_examples() {
        let r = spinor_square_residual([0.0, 0.0, 1.0]).unwrap();
        assert!((r - 4.0 / 3.0).abs() < 1e-15);
        assert!(spinor_square_residual([1.0, 0.0, 0.0]).unwrap() > 1.0);
        assert!(spinor_square_residual([0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn solution_matrix_examples() {
        let r = FRAC_1_SQRT_2;
        let xj = solution_matrix(SolutionMatrixKind::J, 0.0, 1.0);
        let expect = ComplexMatrix::new3([
            [c64(r, 0.0), c64(-r, 0.0), Z],
            [c64(r, 0.0), c64(r, 0.0), Z],
            [Z, Z, I],
        ]);
        assert!(frobenius_distance(&xj, &expect).unwrap() < 1e-16);
        for kind in SolutionMatrixKind::ALL {
            for t in [0.0, 0.4, 2.2] {
                let x = solution_matrix(kind, t, 0.9);
                assert!(x.unitarity_residual() < 1e-15, "{kind} {t}");
            }
        }
        let a = solution_matrix(SolutionMatrixKind::Q, 0.0, 0.3);
        let b = solution_matrix(SolutionMatrixKind::Q, 0.0, 2.9);
        assert_eq!(a, b);
    }

    #[test]
    fn isometric_images_match_targets() {
        for kind in SolutionMatrixKind::ALL {
            for t in [0.0, 0.3, 1.7, 4.0] {
                let img = isometric_image(kind, t, 0.8);
                let tgt = isometric_target(kind, t, 0.8);
                assert!(frobenius_distance(&img, &tgt).unwrap() < 1e-15, "{kind} {t}");
            }
            let tgt0 = isometric_target(kind, 0.0, 0.8);
            for (i, j) in [(0, 2), (1, 2), (2, 0), (2, 1), (2, 2)] {
                assert_eq!(tgt0[(i, j)].norm(), 0.0);
            }
        }
    }

    #[test]
    fn rotation_examples() {
        let d1 = RotationFamily::new(SolutionMatrixKind::D, 1).unwrap();
        let (s, c) = 0.6f64.sin_cos();
        let expect = ComplexMatrix::new3([
            [c64(c, 0.0), Z, c64(s, 0.0)],
            [Z, ONE, Z],
            [c64(-s, 0.0), Z, c64(c, 0.0)],
        ]);
        assert_eq!(rotation(d1, 0.6, 0.0), expect);
        for fam in RotationFamily::all() {
            assert!(frobenius_distance(&rotation(fam, 0.0, 0.5), &id()).unwrap() < 1e-16);
        }
        let q1 = "q1".parse::<RotationFamily>().unwrap();
        let q3 = "q3".parse::<RotationFamily>().unwrap();
        assert!(frobenius_distance(&rotation(q3, 0.4, 1.1), &rotation(q1, -0.4, 1.1)).unwrap() < 1e-16);
        let q2 = "q2".parse::<RotationFamily>().unwrap();
        let prod = rotation(q2, 0.4, 1.1).matmul(&rotation(q2, -0.4, 1.1));
        assert!(frobenius_distance(&prod, &id()).unwrap() < 1e-15);
        let j1 = rotation("j1".parse().unwrap(), 0.7, 0.0);
        let j2 = rotation("j2".parse().unwrap(), 0.7, 0.0);
        let diff = j1 - j2;
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(diff[(i, j)].norm() > 0.0, (i, j) == (0, 2));
            }
        }
        assert!("x1".parse::<RotationFamily>().is_err());
        assert!("q4".parse::<RotationFamily>().is_err());
        assert_eq!("j3".parse::<RotationFamily>().unwrap().canonical().to_string(), "j2");
    }

    #[test]
    fn group_law_holds_only_for_unitary_families() {
        for fam in ["q2", "j1", "d1", "d3"] {
            assert!(group_law_residual(fam.parse().unwrap(), 0.3, 1.1, 0.6) < 1e-15, "{fam}");
        }
        for fam in ["q1", "q3", "j2", "j3"] {
            assert!(group_law_residual(fam.parse().unwrap(), 0.3, 1.1, 0.6) > 1e-3, "{fam}");
        }
    }

    #[test]
    fn shift_examples() {
        for fam in RotationFamily::all() {
            for kind in SolutionMatrixKind::ALL {
                assert_eq!(shift_residual(fam, kind, 2, 0.4, 0.0, 0.7).unwrap(), 0.0);
                let worst = (1..=3)
                    .map(|c| shift_residual(fam, kind, c, 0.4, 0.9, 0.7).unwrap())
                    .fold(0.0, f64::max);
                if shift_pairing_holds(fam, kind) {
                    assert!(worst < 1e-12, "{fam} on {kind}: {worst}");
                } else {
                    assert!(worst > 1e-6, "{fam} on {kind}: {worst}");
                }
            }
        }
        let q1 = "q1".parse().unwrap();
        assert!(shift_residual(q1, SolutionMatrixKind::D, 1, 0.2, 0.5, 0.0).unwrap() > 1e-3);
        assert!(shift_residual(q1, SolutionMatrixKind::D, 0, 0.2, 0.5, 0.0).is_err());
    }

    #[test]
    fn dft_examples() {
        let pi = qutrit_dft();
        assert!(pi.unitarity_residual() < 1e-14);
        let z = dft_root();
        assert!((z.powi(3) - ONE).norm() < 1e-15);
        assert!((z - z.conj().powi(2)).norm() < 1e-15);
        assert!((z.powi(2) - z.conj()).norm() < 1e-15);
        let e1 = pi.mul_vec(&[ONE, Z, Z]).unwrap();
        for v in e1 {
            assert!((v - c64(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-16);
        }
        // not orthogonal
        assert!(frobenius_distance(&pi.matmul(&pi.transpose()), &id()).unwrap() > 1.0);
    }

    #[test]
    fn swap_gate_examples() {
        let g = dft_swap_gate();
        assert!(frobenius_distance(&g, &swap_permutation()).unwrap() < 1e-13);
        assert!(frobenius_distance(&g.matmul(&g), &id()).unwrap() < 1e-13);
        let pi = qutrit_dft();
        assert!(frobenius_distance(&g, &pi.matmul(&pi.transpose())).unwrap() < 1e-13);
    }

    #[test]
    fn evolved_constraint_examples() {
        let p = BrachistochroneProblem::resonant(1.0, 0.9).unwrap();
        let f0 = constraint_with_diagonals(&p, 0.0, 0.0);
        for t in [0.0, 0.4, 2.0, 5.9] {
            assert!(frobenius_distance(&evolved_constraint(&p, 0.0, 0.0, t), &f0).unwrap() < 1e-12);
        }
        let f1 = constraint_with_diagonals(&p, 1.0, 0.0);
        assert!(frobenius_distance(&evolved_constraint(&p, 1.0, 0.0, 0.0), &f1).unwrap() < 1e-15);
        let f = evolved_constraint(&p, 0.5, -0.3, 1.2);
        assert!(f.off_diagonal_norm() > 0.0);
        // measured, not asserted equal: the printed form departs from the computed one
        let gap = frobenius_distance(&f, &evolved_constraint_printed(&p, 0.5, -0.3, 1.2)).unwrap();
        assert!(gap.is_finite());
        assert!(gap > 1e-3);
    }

    #[test]
    fn swapped_state_examples() {
        let k = c64(0.3, -0.4);
        let s0 = swapped_problem_state(0.7, k, 0.0).unwrap();
        assert_eq!(s0, [ONE, Z, Z]);
        let s = swapped_problem_state(0.0, ONE, FRAC_PI_2).unwrap();
        assert!((s[0]).norm() < 1e-16);
        assert!((s[2] - c64(0.0, -1.0)).norm() < 1e-16);
        for i in 0..100 {
            let t = 0.137 * i as f64 - 3.0;
            let a = swapped_problem_state(0.7, k, t).unwrap();
            let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            let b = swapped_problem_state_via_exponential(0.7, k, t).unwrap();
            for j in 0..3 {
                assert!((a[j] - b[j]).norm() < 1e-12);
            }
        }
        assert!(swapped_problem_state(0.0, Z, 1.0).is_err());
    }
}
