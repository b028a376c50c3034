//! Acceptance criteria 1–12, one PASS/FAIL line each.
//!
//! Matrices that serve as references are rebuilt here from the field
//! formulas rather than taken from the library.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use su3_brachistochrone::brachistochrone::hamiltonian_at;
use su3_brachistochrone::classify::cayley_hamilton_residual;
use su3_brachistochrone::cli::{run, solve_report};
use su3_brachistochrone::degeneracy::{dft_root, dft_swap_gate, l_squared_integer, qutrit_dft, swap_permutation};
use su3_brachistochrone::ledger::run_all;
use su3_brachistochrone::linalg::{c64, ComplexMatrix, HermitianMatrix};
use su3_brachistochrone::oracle::{numeric_propagator, numeric_trajectory, SampledGenerator};
use su3_brachistochrone::propagators::{conservation_split, frame_transport, schrodinger_propagator};
use su3_brachistochrone::su4::{eps_system_printed, eps_system_probed, eta_system_printed, eta_system_probed, Su4Problem};
use su3_brachistochrone::{BrachistochroneProblem, ClaimStatus, Convention, LedgerConfig, C64};

const SEED: u64 = 0xACCE_0001;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Check = fn() -> Outcome;

fn z() -> C64 {
    c64(0.0, 0.0)
}

fn h_ref(k: f64, theta: f64, r: f64, t: f64) -> ComplexMatrix {
    let e1 = c64(r * (k * t).cos(), 0.0);
    let e2 = c64(0.0, -r * (k * t).sin()) * C64::from_polar(1.0, -theta);
    ComplexMatrix::new3([[z(), e1, z()], [e1.conj(), z(), e2], [z(), e2.conj(), z()]])
}

fn f0_ref(k: f64, theta: f64) -> ComplexMatrix {
    let kappa = C64::from_polar(k, -theta);
    ComplexMatrix::new3([[z(), z(), kappa], [z(), z(), z()], [kappa.conj(), z(), z()]])
}

fn comm(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.matmul(b) - b.matmul(a)
}

fn det3(m: &ComplexMatrix) -> C64 {
    let a = |i, j| m[(i, j)];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn resonant(k: f64, theta: f64) -> BrachistochroneProblem {
    BrachistochroneProblem::resonant(k, theta).expect("valid problem")
}

fn c1_resonance_constants() -> Outcome {
    let p = BrachistochroneProblem::new(1.0, 0.7, None, Convention::SelfConsistent).unwrap();
    let reps = 1000;
    let start = Instant::now();
    let mut report = solve_report(&p);
    for _ in 1..reps {
        report = solve_report(std::hint::black_box(&p));
    }
    let per_call = start.elapsed() / reps;
    let ratio = report.resonance.expect("resonant");
    let period = report.period.expect("period");
    let r_err = (p.r() - 3f64.sqrt()).abs();
    let d_err = (report.delta - 2.0).abs();
    let t_err = (period - TAU).abs();
    let pass = r_err <= 1e-12
        && d_err <= 1e-12
        && (ratio.m, ratio.n) == (2, 1)
        && t_err <= 1e-12
        && per_call < Duration::from_millis(1);
    outcome(
        pass,
        format!(
            "R-sqrt3={r_err:.1e} Delta-2={d_err:.1e} (m,n)=({},{}) T0-2pi={t_err:.1e} solve {per_call:?}",
            ratio.m, ratio.n
        ),
    )
}

fn c2_closed_vs_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let steps = 1 << 16;
    let samples = 64;
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let k = rng.gen_range(0.5..2.0);
        let theta = rng.gen_range(0.0..TAU);
        let r = 3f64.sqrt() * k;
        let p = resonant(k, theta);
        let t0 = TAU / k;
        let g = SampledGenerator::new(
            |t| HermitianMatrix::new(h_ref(k, theta, r, t)).expect("hermitian"),
            0.0,
            t0,
        );
        let traj = numeric_trajectory(&g, 0.0, t0, steps, steps / samples).expect("oracle");
        for (t, u) in traj.iter().skip(1) {
            worst = worst.max((*schrodinger_propagator(&p, *t) - **u).frobenius_norm());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-8 && elapsed < Duration::from_secs(30),
        format!("max ||U_closed - U_oracle||_F = {worst:.3e} over 20 problems x {samples} times, {elapsed:.2?}"),
    )
}

fn c3_periodicity() -> Outcome {
    let start = Instant::now();
    let id = ComplexMatrix::identity(3).unwrap();
    let mut worst = 0.0f64;
    for (k, theta) in [(1.0, 0.7), (0.5, 2.0), (1.7, 4.4), (2.0, 0.0)] {
        let p = resonant(k, theta);
        let t0 = TAU / k;
        worst = worst.max((*schrodinger_propagator(&p, t0) - id).frobenius_norm());
        let g = SampledGenerator::new(|t| hamiltonian_at(&p, t), 0.0, t0);
        let u = numeric_propagator(&g, 0.0, t0, 1 << 16).unwrap();
        worst = worst.max((*u - id).frobenius_norm());
    }
    let control = BrachistochroneProblem::new(1.0, 0.7, Some(1.0), Convention::SelfConsistent).unwrap();
    let g = SampledGenerator::new(|t| h_ref(1.0, 0.7, 1.0, t).try_into_hermitian(), 0.0, TAU);
    let negative = (*numeric_propagator(&g, 0.0, TAU, 1 << 16).unwrap() - id).frobenius_norm();
    let negative_closed = (*schrodinger_propagator(&control, TAU) - id).frobenius_norm();
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-8 && negative > 0.1 && negative_closed > 0.1 && elapsed < Duration::from_secs(5),
        format!(
            "resonant max ||U(T0)-I||_F = {worst:.3e}; R=k control {negative:.3e} (oracle), {negative_closed:.3e} (closed); {elapsed:.2?}"
        ),
    )
}

trait IntoHermitian {
    fn try_into_hermitian(self) -> HermitianMatrix;
}

impl IntoHermitian for ComplexMatrix {
    fn try_into_hermitian(self) -> HermitianMatrix {
        HermitianMatrix::new(self).expect("hermitian")
    }
}

fn c4_brachistochrone_ode() -> Outcome {
    let (k, theta) = (1.0, 0.7);
    let r = 3f64.sqrt();
    let f0 = f0_ref(k, theta);
    let steps = [1e-2, 5e-3, 2.5e-3];
    let times: Vec<f64> = (0..16).map(|i| 0.05 + TAU * i as f64 / 16.0).collect();
    let mut worst = [0.0f64; 3];
    for (slot, &h) in worst.iter_mut().zip(&steps) {
        for &t in &times {
            let a = |s: f64| h_ref(k, theta, r, s) + f0;
            let lhs = (a(t + h) - a(t - h)).scale(c64(0.0, 0.5 / h));
            let rhs = comm(&h_ref(k, theta, r, t), &f0);
            *slot = slot.max((lhs - rhs).frobenius_norm());
        }
    }
    let o1 = (worst[0] / worst[1]).log2();
    let o2 = (worst[1] / worst[2]).log2();
    let pass = (o1 - 2.0).abs() <= 0.1 && (o2 - 2.0).abs() <= 0.1 && worst[2] < 1e-5;
    outcome(
        pass,
        format!("orders {o1:.4}, {o2:.4}; residual at h=2.5e-3 = {:.3e}", worst[2]),
    )
}

fn c5_back_action() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (k, theta) = (1.0, 0.7);
    let r = 3f64.sqrt();
    let f0 = f0_ref(k, theta);
    let q = PI / (2.0 * k);
    let ik = c64(0.0, k);
    let mut minus = 0.0f64;
    let mut plus = 0.0f64;
    for _ in 0..100 {
        let s = rng.gen_range(0.0..TAU / k);
        let c = comm(&h_ref(k, theta, r, s), &f0);
        minus = minus.max((c - h_ref(k, theta, r, s - q).scale(ik)).frobenius_norm());
        plus = plus.max((c - h_ref(k, theta, r, s + q).scale(ik)).frobenius_norm());
    }
    outcome(
        minus < 1e-12,
        format!("max ||[H(s),F0] - ik H(s - pi/2k)||_F = {minus:.3e}; with s + pi/2k: {plus:.3e}"),
    )
}

fn c6_frame_transport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let p = resonant(1.0, 0.7);
    let mut groupoid = 0.0f64;
    let mut conj = 0.0f64;
    for _ in 0..50 {
        let (t, s, r) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let ts = frame_transport(&p, t, s).unwrap();
        let sr = frame_transport(&p, s, r).unwrap();
        let tr = frame_transport(&p, t, r).unwrap();
        groupoid = groupoid.max((ts.matmul(&sr) - *tr).frobenius_norm());
        let moved = ts.matmul(&h_ref(1.0, 0.7, p.r(), s)).matmul(&ts.adjoint());
        conj = conj.max((moved - h_ref(1.0, 0.7, p.r(), t)).frobenius_norm());
    }
    outcome(
        groupoid < 1e-12 && conj < 1e-12,
        format!("groupoid {groupoid:.3e}, conjugation {conj:.3e} over 50 triples"),
    )
}

fn c7_gates() -> Outcome {
    let id = ComplexMatrix::identity(3).unwrap();
    let pi = qutrit_dft();
    let unitary = (pi.matmul(&pi.adjoint()) - id).frobenius_norm();
    let swap = (*dft_swap_gate() - swap_permutation()).frobenius_norm();
    let mut perm = ComplexMatrix::zeros(3).unwrap();
    for (i, j) in [(0, 0), (1, 2), (2, 1)] {
        perm[(i, j)] = c64(1.0, 0.0);
    }
    let printed = (swap_permutation() - perm).frobenius_norm();
    let root = (dft_root().powi(3) - c64(1.0, 0.0)).norm();
    outcome(
        unitary < 1e-14 && swap < 1e-13 && printed == 0.0 && root < 1e-15,
        format!("unitarity {unitary:.3e}, swap {swap:.3e}, z^3-1 {root:.3e}"),
    )
}

fn c8_cayley_hamilton() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let (k, theta) = (1.0, 0.7);
    let r = 3f64.sqrt();
    let mut orbit = 0.0f64;
    for _ in 0..32 {
        let h = h_ref(k, theta, r, rng.gen_range(0.0..TAU));
        orbit = orbit.max((h.matmul(&h).matmul(&h) - h.scale_re(r * r)).frobenius_norm());
    }
    let mut generic = 0.0f64;
    let mut det_gap = 0.0f64;
    for _ in 0..100 {
        let mut m = ComplexMatrix::zeros(3).unwrap();
        for i in 0..3 {
            m[(i, i)] = c64(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..3 {
                let v = c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        let h = HermitianMatrix::new(m).unwrap();
        let scale = m.frobenius_norm().powi(3);
        generic = generic.max(cayley_hamilton_residual(&h).unwrap() / scale);
        let tr = m.trace();
        let m2 = m.matmul(&m);
        let e2 = 0.5 * (tr * tr - m2.trace());
        let id = ComplexMatrix::identity(3).unwrap();
        let own = m2.matmul(&m) - m2.scale(tr) + m.scale(e2) - id.scale(det3(&m));
        det_gap = det_gap.max(own.frobenius_norm() / scale);
    }
    outcome(
        orbit < 1e-10 && generic < 1e-9 && det_gap < 1e-9,
        format!("orbit ||H^3 - R^2 H||_F = {orbit:.3e}; generic residual/||H||^3 = {generic:.3e} (reference {det_gap:.3e})"),
    )
}

fn c9_l_squared() -> Outcome {
    let l2 = l_squared_integer();
    let mut want = [[(0i64, 0i64); 3]; 3];
    want[0][0] = (3, 0);
    want[1][1] = (4, 0);
    want[2][2] = (3, 0);
    let exact = l2 == want;
    let cfg = LedgerConfig { claims: vec!["C09".into()], ..LedgerConfig::default() };
    let a = run_all(&BrachistochroneProblem::default(), &cfg).unwrap();
    let b = run_all(&BrachistochroneProblem::default(), &cfg).unwrap();
    let printed = a.claim("C09b-l2-printed");
    let stable = serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap();
    let recorded = printed.is_some_and(|c| c.status == ClaimStatus::ReportOnly && (c.residual - 4.0).abs() < 1e-12);
    outcome(
        exact && recorded && stable,
        format!(
            "sum L_i^2 = diag(3,4,3) exactly: {exact}; printed-form residual {} (report-only)",
            printed.map_or("missing".to_string(), |c| format!("{:.3e}", c.residual))
        ),
    )
}

fn c10_conservation_split() -> Outcome {
    let id = ComplexMatrix::identity(3).unwrap();
    let mut worst = 0.0f64;
    for (k, theta) in [(1.0, 0.7), (0.6, 1.9), (1.8, 5.0)] {
        let p = resonant(k, theta);
        let (u1, u2) = conservation_split(&p, TAU / k, 256).unwrap();
        worst = worst.max((u1.matmul(&u2) - id).frobenius_norm());
    }
    let cfg = LedgerConfig { claims: vec!["C15".into()], ..LedgerConfig::default() };
    let generic = run_all(&BrachistochroneProblem::default(), &cfg).unwrap();
    let recorded = generic.claims.iter().all(|c| c.status == ClaimStatus::ReportOnly) && !generic.claims.is_empty();
    outcome(
        worst < 1e-9 && recorded,
        format!("||U1(T0)U2(T0) - I||_F = {worst:.3e}; generic-t split report-only: {recorded}"),
    )
}

fn max_gap<const N: usize>(a: &[[C64; N]; N], b: &[[C64; N]; N]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

fn c11_su4_couplings() -> Outcome {
    let p = Su4Problem::demo();
    let eta = max_gap(&eta_system_probed(&p).unwrap(), &eta_system_printed(&p));
    let eps = max_gap(&eps_system_probed(&p).unwrap(), &eps_system_printed(&p));
    let negated = max_gap(&eta_system_probed(&p).unwrap(), &eta_system_printed(&p).map(|r| r.map(|x| -x)));
    outcome(
        eta < 1e-10 && eps < 1e-10,
        format!("eta-system {eta:.3e}, eps-system {eps:.3e}; eta-system with overall sign flipped {negated:.3e}"),
    )
}

fn verify_json() -> (i32, Value, Duration) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let start = Instant::now();
    let code = run(["su3b", "verify", "--json"], &mut out, &mut err);
    let elapsed = start.elapsed();
    (code, serde_json::from_slice(&out).expect("verify JSON"), elapsed)
}

fn c12_full_verify() -> Outcome {
    let (code, a, elapsed) = verify_json();
    let (_, b, _) = verify_json();
    let fails = a["summary"]["fail"].as_u64().unwrap_or(u64::MAX);
    let deterministic = a == b;
    outcome(
        code == 0 && fails == 0 && deterministic && elapsed < Duration::from_secs(60),
        format!(
            "exit {code}, {fails} fail, {} pass, {} report-only, deterministic {deterministic}, {elapsed:.2?}",
            a["summary"]["pass"], a["summary"]["report_only"]
        ),
    )
}

fn main() {
    let checks: [(&str, Check); 12] = [
        ("resonance constants", c1_resonance_constants),
        ("closed form vs oracle", c2_closed_vs_oracle),
        ("periodicity", c3_periodicity),
        ("brachistochrone ODE", c4_brachistochrone_ode),
        ("back-action identity", c5_back_action),
        ("frame transport", c6_frame_transport),
        ("gate identities", c7_gates),
        ("Cayley-Hamilton", c8_cayley_hamilton),
        ("L^2 anomaly", c9_l_squared),
        ("conservation split", c10_conservation_split),
        ("SU(4) couplings", c11_su4_couplings),
        ("full verify", c12_full_verify),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
