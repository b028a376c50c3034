//! The SU(3) time-optimal control problem and its closed-form solution.
//!
//! The Hamiltonian couples levels 1–2 and 2–3 with fields `ε₁(t) = R cos kt`
//! and `ε₂(t) = −iR e^{−iθ} sin kt`; the constraint is the constant matrix
//! `F₀` living on the (1, 3) corner with modulus `k`. Together they solve
//! `i d/dt (H + F) = [H, F]`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{anticommutator, c64, commutator, ComplexMatrix, HermitianMatrix, C64};

/// Phase placed on the `(1, 3)` corner of the constraint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    /// Corner `k·e^{−iθ}`: the constraint transports `H(0)` onto `H(t)` exactly.
    #[default]
    #[serde(rename = "self-consistent")]
    SelfConsistent,
    /// Corner `k·e^{+iθ}` as displayed alongside the field solution.
    #[serde(rename = "printed", alias = "paper-eq14")]
    Printed,
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self-consistent" => Ok(Self::SelfConsistent),
            "printed" | "paper-eq14" => Ok(Self::Printed),
            other => Err(Error::InvalidParameter(format!("unknown convention {other:?}"))),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::SelfConsistent => "self-consistent",
            Self::Printed => "printed",
        })
    }
}

/// Parameters of the control problem: constraint strength `k`, constraint
/// phase `theta`, Hamiltonian amplitude `r` (so that `Tr[H²]/2 = r²`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BrachistochroneProblem {
    k: f64,
    theta: f64,
    r: f64,
    convention: Convention,
}

impl BrachistochroneProblem {
    /// `r = None` selects the minimal resonant amplitude `R = √3·k`.
    /// `theta` is reduced into `[0, 2π)`.
    pub fn new(k: f64, theta: f64, r: Option<f64>, convention: Convention) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!("k must be positive and finite, got {k}")));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("theta must be finite, got {theta}")));
        }
        let r = r.unwrap_or(3f64.sqrt() * k);
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!("R must be positive and finite, got {r}")));
        }
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        Ok(Self { k, theta, r, convention })
    }

    /// `k`, `θ` with automatic `R`, self-consistent convention.
    pub fn resonant(k: f64, theta: f64) -> Result<Self> {
        Self::new(k, theta, None, Convention::SelfConsistent)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// `Δ = √(R² + k²)`.
    pub fn delta(&self) -> f64 {
        self.r.hypot(self.k)
    }

    /// The complex constraint coupling `κ` on the `(1, 3)` corner.
    pub fn kappa(&self) -> C64 {
        match self.convention {
            Convention::SelfConsistent => C64::from_polar(self.k, -self.theta),
            Convention::Printed => C64::from_polar(self.k, self.theta),
        }
    }
}

impl Default for BrachistochroneProblem {
    fn default() -> Self {
        Self::resonant(1.0, 0.7).expect("valid default")
    }
}

/// `R` in problem JSON: a number or the string `"auto"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Value(f64),
    Auto(AutoTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum AutoTag {
    #[serde(rename = "auto")]
    Auto,
}

#[derive(Serialize, Deserialize)]
struct ProblemJson {
    k: f64,
    theta: f64,
    #[serde(rename = "R")]
    r: Amplitude,
    #[serde(default)]
    convention: Convention,
}

impl Serialize for BrachistochroneProblem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProblemJson {
            k: self.k,
            theta: self.theta,
            r: Amplitude::Value(self.r),
            convention: self.convention,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BrachistochroneProblem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ProblemJson::deserialize(d)?;
        let r = match raw.r {
            Amplitude::Value(v) => Some(v),
            Amplitude::Auto(_) => None,
        };
        Self::new(raw.k, raw.theta, r, raw.convention).map_err(serde::de::Error::custom)
    }
}

/// The two complex control energies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlFields {
    pub eps1: C64,
    pub eps2: C64,
}

impl ControlFields {
    pub fn intensity(&self) -> f64 {
        self.eps1.norm_sqr() + self.eps2.norm_sqr()
    }

    /// The ordered field vector `(ε₁, ε̄₁, ε₂, ε̄₂)`.
    pub fn to_xi(&self) -> [C64; 4] {
        [self.eps1, self.eps1.conj(), self.eps2, self.eps2.conj()]
    }
}

/// `ε₁ = R cos kt`, `ε₂ = −iR e^{−iθ} sin kt`.
pub fn control_fields(p: &BrachistochroneProblem, t: f64) -> ControlFields {
    let (s, c) = (p.k * t).sin_cos();
    ControlFields {
        eps1: C64::new(p.r * c, 0.0),
        eps2: C64::new(0.0, -p.r * s) * C64::from_polar(1.0, -p.theta),
    }
}

/// The tridiagonal Hamiltonian carried by a pair of fields.
pub fn hamiltonian_from_fields(f: &ControlFields) -> HermitianMatrix {
    let z = c64(0.0, 0.0);
    HermitianMatrix::new_unchecked(ComplexMatrix::new3([
        [z, f.eps1, z],
        [f.eps1.conj(), z, f.eps2],
        [z, f.eps2.conj(), z],
    ]))
}

pub fn hamiltonian_at(p: &BrachistochroneProblem, t: f64) -> HermitianMatrix {
    hamiltonian_from_fields(&control_fields(p, t))
}

/// The constant constraint `F₀`.
pub fn constraint(p: &BrachistochroneProblem) -> HermitianMatrix {
    constraint_with_diagonals(p, 0.0, 0.0)
}

/// `F₀` with the diagonal `(ω₁, −(ω₁+ω₂), ω₂)` switched on.
pub fn constraint_with_diagonals(p: &BrachistochroneProblem, omega1: f64, omega2: f64) -> HermitianMatrix {
    let z = c64(0.0, 0.0);
    let kappa = p.kappa();
    HermitianMatrix::new_unchecked(ComplexMatrix::new3([
        [c64(omega1, 0.0), z, kappa],
        [z, c64(-(omega1 + omega2), 0.0), z],
        [kappa.conj(), z, c64(omega2, 0.0)],
    ]))
}

/// `H(0) + F₀`, the generator of the backward factor `U₋`.
pub fn initial_generator(p: &BrachistochroneProblem) -> HermitianMatrix {
    HermitianMatrix::new_unchecked(*hamiltonian_at(p, 0.0).matrix() + *constraint(p).matrix())
}

/// Field-equation matrix `Υ` acting on `(ε₁, ε̄₁, ε₂, ε̄₂)`; `Υ² = k²·1`.
pub fn upsilon(p: &BrachistochroneProblem) -> ComplexMatrix {
    let z = c64(0.0, 0.0);
    let kappa = p.kappa();
    ComplexMatrix::new4([
        [z, z, z, -kappa],
        [z, z, kappa.conj(), z],
        [z, kappa, z, z],
        [-kappa.conj(), z, z, z],
    ])
}

/// `exp(−itΥ) = cos(kt)·1 − i(Υ/k) sin(kt)`, valid because `Υ² = k²·1`.
pub fn upsilon_propagator(p: &BrachistochroneProblem, t: f64) -> ComplexMatrix {
    let (s, c) = (p.k * t).sin_cos();
    let id = ComplexMatrix::identity(4).expect("dim 4");
    id.scale_re(c) + upsilon(p).scale(C64::new(0.0, -s / p.k))
}

/// The exponential of `−itΥ` exactly as displayed in print, without the `−i`
/// factors on the off-diagonal sine terms. Kept for the ledger comparison.
pub fn upsilon_propagator_printed(p: &BrachistochroneProblem, t: f64) -> ComplexMatrix {
    let (s, c) = (p.k * t).sin_cos();
    let z = c64(0.0, 0.0);
    let e = C64::from_polar(1.0, p.theta);
    let ec = e.conj();
    let c = c64(c, 0.0);
    ComplexMatrix::new4([
        [c, z, z, -ec * s],
        [z, c, e * s, z],
        [z, ec * s, c, z],
        [-e * s, z, z, c],
    ])
}

/// Applies `exp(−itΥ)` to a raw field vector, rejecting vectors whose
/// conjugate slots do not hold conjugates.
pub fn propagate_field_vector(p: &BrachistochroneProblem, xi: [C64; 4], t: f64) -> Result<[C64; 4]> {
    let residual = ((xi[1] - xi[0].conj()).norm_sqr() + (xi[3] - xi[2].conj()).norm_sqr()).sqrt();
    let scale = xi.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if residual > 1e-12 * scale {
        return Err(Error::ConjugatePairViolated { residual });
    }
    let out = upsilon_propagator(p, t).mul_vec(&xi)?;
    Ok([out[0], out[1], out[2], out[3]])
}

/// Evolves `eps0` (fields at `t = 0`) under the field equation.
pub fn propagate_fields(p: &BrachistochroneProblem, eps0: ControlFields, t: f64) -> Result<ControlFields> {
    let xi = propagate_field_vector(p, eps0.to_xi(), t)?;
    Ok(ControlFields { eps1: xi[0], eps2: xi[2] })
}

/// `Ĝ = (H + F) − Tr(P̂(H + F))·P̂` for the initial state `e₁`, with `F`
/// carrying diagonal entries `(ω₁, −(ω₁+ω₂), ω₂)`.
pub fn boundary_operator(
    p: &BrachistochroneProblem,
    eps0: ControlFields,
    omega1: f64,
    omega2: f64,
) -> HermitianMatrix {
    let a = *hamiltonian_from_fields(&eps0).matrix() + *constraint_with_diagonals(p, omega1, omega2).matrix();
    let proj = projector_e1();
    let weight = proj.matmul(&a).trace();
    HermitianMatrix::new_unchecked(a - proj.scale(weight))
}

fn projector_e1() -> ComplexMatrix {
    ComplexMatrix::real_diag(&[1.0, 0.0, 0.0]).expect("dim 3")
}

/// Residual of the fixed-point condition `Ĝ = {Ĝ, P̂}`.
pub fn boundary_fixed_point_residual(
    p: &BrachistochroneProblem,
    eps0: ControlFields,
    omega1: f64,
    omega2: f64,
) -> f64 {
    let g = *boundary_operator(p, eps0, omega1, omega2).matrix();
    let ac = anticommutator(&g, &projector_e1()).expect("dim 3");
    (g - ac).frobenius_norm()
}

/// Solves the diagonal entries of `Ĝ − {Ĝ, P̂} = 0` for `(ω₁, ω₂)`.
///
/// The diagonal of the defect is affine in `(ω₁, ω₂)`; it is probed at three
/// points and the resulting 2×2 system over entries (2,2) and (3,3) solved.
pub fn forced_boundary_diagonals(p: &BrachistochroneProblem, eps0: ControlFields) -> Result<(f64, f64)> {
    let defect = |w1: f64, w2: f64| {
        let g = *boundary_operator(p, eps0, w1, w2).matrix();
        let d = g - anticommutator(&g, &projector_e1()).expect("dim 3");
        [d[(1, 1)].re, d[(2, 2)].re]
    };
    let base = defect(0.0, 0.0);
    let d1 = defect(1.0, 0.0);
    let d2 = defect(0.0, 1.0);
    let a = [[d1[0] - base[0], d2[0] - base[0]], [d1[1] - base[1], d2[1] - base[1]]];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det.abs() < 1e-14 {
        return Err(Error::InvalidParameter("boundary diagonal system is singular".into()));
    }
    let rhs = [-base[0], -base[1]];
    let w1 = (rhs[0] * a[1][1] - a[0][1] * rhs[1]) / det;
    let w2 = (a[0][0] * rhs[1] - rhs[0] * a[1][0]) / det;
    Ok((w1, w2))
}

/// `‖(H(t+h) − H(t−h))/(2h) − (−i)[H(t), F₀]‖_F`, the central-difference
/// residual of the brachistochrone equation (the constraint is constant).
pub fn brachistochrone_residual(p: &BrachistochroneProblem, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let f0 = *constraint(p).matrix();
    let a = |s: f64| *hamiltonian_at(p, s).matrix() + f0;
    let deriv = (a(t + h) - a(t - h)).scale_re(0.5 / h);
    let rhs = commutator(hamiltonian_at(p, t).matrix(), &f0)?.scale(C64::new(0.0, -1.0));
    Ok((deriv - rhs).frobenius_norm())
}

/// Quarter period `π/(2k)`.
pub fn quarter_period(p: &BrachistochroneProblem) -> f64 {
    PI / (2.0 * p.k)
}
