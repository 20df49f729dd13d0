//! Seeded self-check suites aggregating the cross-module invariants,
//! plus the independent Fock-space oracles they are judged against.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bargmann::{
    apply_bargmann_operator, coeff_extract, reproduce, BargmannFunction, LadderOp,
};
use crate::conjugate::{
    forward_line_integral, inverse_mellin, inverse_phase_space, to_conjugate, MellinContour,
};
use crate::error::{CoreError, Result};
use crate::numerics::{
    factorial, gauss_laguerre_rule, phase_space_integrate, sqrt_factorial, PhaseSpaceGrid,
    QuadratureRule,
};
use crate::overlap::{inner_conjugate_double, inner_conjugate_line, inner_mixed};
use crate::propagators::{diagonal_trace_series, exact_ho_bargmann, exact_ho_conjugate};
use crate::semiclassical::{
    action, integrate_trajectory, ksc_bargmann, shoot_bargmann, WeylHamiltonian,
};
use crate::states::{
    apply_annihilation, apply_creation, coherent_state, fock_basis_state, inner_series,
    FockCoefficients, OscillatorFrame,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Outcome of one named invariant check.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn report(name: &str, max_error: f64, tolerance: f64) -> SuiteReport {
    SuiteReport {
        name: name.to_string(),
        max_error,
        tolerance,
        pass: max_error <= tolerance,
    }
}

/// Names accepted by [`run_suite`], besides `"all"`.
pub const SUITES: [&str; 7] = [
    "quadrature",
    "states",
    "bargmann",
    "roundtrip",
    "overlap",
    "propagators",
    "semiclassical",
];

/// Runs one named suite (or `"all"`) with a deterministic seed.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteReport>> {
    match name {
        "quadrature" => suite_quadrature(seed),
        "states" => suite_states(seed),
        "bargmann" => suite_bargmann(seed),
        "roundtrip" => suite_roundtrip(seed),
        "overlap" => suite_overlap(seed),
        "propagators" => suite_propagators(seed),
        "semiclassical" => suite_semiclassical(seed),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, seed)?);
            }
            Ok(out)
        }
        other => Err(CoreError::Parameter(format!(
            "unknown suite {other:?}; expected one of {SUITES:?} or \"all\""
        ))),
    }
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_state(rng: &mut ChaCha8Rng, n_max: usize) -> FockCoefficients {
    let coeffs: Vec<Complex64> = (0..=n_max)
        .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    FockCoefficients::new(coeffs).expect("random coefficients are finite and nonempty")
}

fn random_unit(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    c64(
        rng.gen_range(-radius..radius),
        rng.gen_range(-radius..radius),
    )
}

fn suite_quadrature(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let rule = gauss_laguerre_rule(32)?;
    let mut worst = 0.0f64;
    for k in 0..=20u32 {
        let got = rule.integrate(|x| Complex64::from(x.powi(k as i32)));
        let want = factorial(k as usize);
        worst = worst.max((got.re - want).abs() / want);
    }
    out.push(report("quadrature/gauss-laguerre-moments", worst, 1e-10));

    let grid = PhaseSpaceGrid::standard();
    let mut worst = 0.0f64;
    for _ in 0..12 {
        let n = rng.gen_range(0..=12usize);
        let m = rng.gen_range(0..=12usize);
        let got = phase_space_integrate(&grid, |z| z.powu(n as u32) * z.conj().powu(m as u32))?;
        let want = if n == m { factorial(n) } else { 0.0 };
        worst = worst.max((got - Complex64::from(want)).norm() / factorial(n).max(1.0));
    }
    out.push(report("quadrature/measure-moments", worst, 1e-10));

    let angular = QuadratureRule::angular_uniform(24)?;
    let mut worst = 0.0f64;
    for k in 1..24u32 {
        let got = angular.integrate(|theta| (I * (k as f64 * theta)).exp());
        worst = worst.max(got.norm());
    }
    out.push(report(
        "quadrature/angular-phase-cancellation",
        worst,
        1e-12,
    ));

    Ok(out)
}

fn suite_states(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let psi = random_state(&mut rng, 16);
        let ada = apply_creation(&apply_annihilation(&psi));
        let aad = apply_annihilation(&apply_creation(&psi));
        // [a, a+] = 1 on coefficients below the truncation edge.
        for n in 0..16 {
            let resid = (aad.coeff(n) - ada.coeff(n) - psi.coeff(n)).norm();
            worst = worst.max(resid / psi.coeff(n).norm().max(1.0));
        }
    }
    out.push(report("states/ladder-commutator", worst, 1e-13));

    let mut worst = 0.0f64;
    for _ in 0..10 {
        let z = random_unit(&mut rng, 0.8);
        let state = coherent_state(z, 32);
        let lowered = apply_annihilation(&state);
        for n in 0..30 {
            worst = worst.max((lowered.coeff(n) - z * state.coeff(n)).norm());
        }
    }
    out.push(report("states/coherent-eigenvalue", worst, 1e-10));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let psi = random_state(&mut rng, 16);
        let diff = (psi.norm_sq() - inner_series(&psi, &psi).re).abs();
        worst = worst.max(diff / psi.norm_sq().max(1.0));
    }
    out.push(report("states/norm-vs-series", worst, 1e-14));

    Ok(out)
}

fn suite_bargmann(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = PhaseSpaceGrid::standard();
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for _ in 0..5 {
        let psi = BargmannFunction::new(random_state(&mut rng, 12));
        for n in 0..=12 {
            let got = coeff_extract(&psi, n, &grid)?;
            worst = worst.max((got - psi.state().coeff(n)).norm());
        }
    }
    out.push(report("bargmann/coefficient-extraction", worst, 1e-10));

    let mut worst = 0.0f64;
    for _ in 0..5 {
        let psi = BargmannFunction::new(random_state(&mut rng, 12));
        let wstar = random_unit(&mut rng, 1.5);
        let rep = reproduce(&psi, wstar, &grid)?;
        worst = worst.max((rep.value - psi.eval(wstar)).norm());
    }
    out.push(report("bargmann/kernel-reproduction", worst, 1e-10));

    let frame = OscillatorFrame::new(1.0, 1.3, 1.0)?;
    let hw = frame.hbar() * frame.omega();
    let mut worst = 0.0f64;
    for n in 0..=16 {
        let psi = BargmannFunction::new(fock_basis_state(n, n)?);
        let number = apply_bargmann_operator(&psi, &[LadderOp::Annihilate, LadderOp::Create]);
        // number here applies create-then-annihilate (word reads left to
        // right), i.e. the number operator.
        for k in 0..=n {
            let op_side = hw * (number.taylor()[k] + 0.5 * psi.taylor()[k]);
            let eig_side = hw * ((n as f64) * psi.taylor()[k] + 0.5 * psi.taylor()[k]);
            worst = worst.max((op_side - eig_side).norm());
        }
    }
    out.push(report("bargmann/number-eigenvalue-exactness", worst, 0.0));

    Ok(out)
}

fn suite_roundtrip(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rule = gauss_laguerre_rule(64)?;
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = rng.gen_range(0..=20usize);
        let psi = BargmannFunction::new(fock_basis_state(n, n)?);
        let w = loop {
            let w = random_unit(&mut rng, 3.0);
            if w.norm() > 0.7 {
                break w;
            }
        };
        let got = forward_line_integral(&psi, w, &rule)?;
        let want = sqrt_factorial(n) / w.powu(n as u32 + 1);
        worst = worst.max((got - want).norm() / want.norm());
    }
    out.push(report(
        "roundtrip/line-transform-eigenfunctions",
        worst,
        1e-10,
    ));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let state = random_state(&mut rng, 16);
        let psi = BargmannFunction::new(state.clone());
        let f = to_conjugate(&state);
        for _ in 0..3 {
            let zs = random_unit(&mut rng, 1.0);
            let got = inverse_phase_space(&f, zs);
            let want = psi.eval(zs);
            worst = worst.max((got - want).norm() / want.norm().max(1.0));
        }
    }
    out.push(report("roundtrip/termwise-inverse", worst, 1e-12));

    let mut worst = 0.0f64;
    for _ in 0..5 {
        let state = random_state(&mut rng, 16);
        let psi = BargmannFunction::new(state.clone());
        let f = to_conjugate(&state);
        for _ in 0..2 {
            let zs = random_unit(&mut rng, 1.0);
            let contour = MellinContour::automatic(&f, zs)?;
            let got = inverse_mellin(&f, zs, &contour)?;
            let want = psi.eval(zs);
            worst = worst.max((got - want).norm() / want.norm().max(1.0));
        }
    }
    out.push(report("roundtrip/contour-inverse", worst, 1e-6));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let state = random_state(&mut rng, 24);
        let f = to_conjugate(&state);
        for n in 0..=24 {
            let got = crate::conjugate::coeff_from_conjugate(&f, n);
            worst = worst.max((got - state.coeff(n)).norm());
        }
    }
    out.push(report("roundtrip/coefficients", worst, 1e-14));

    Ok(out)
}

fn suite_overlap(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = PhaseSpaceGrid::standard();
    let mut out = Vec::new();

    let mut worst_double = 0.0f64;
    let mut worst_mixed = 0.0f64;
    for _ in 0..10 {
        let a = random_state(&mut rng, 8);
        let b = random_state(&mut rng, 8);
        let series = inner_series(&a, &b);
        let scale = series.norm().max(1.0);

        let double = inner_conjugate_double(&to_conjugate(&a), &to_conjugate(&b));
        worst_double = worst_double.max((series - double).norm() / scale);

        let mixed = inner_mixed(&to_conjugate(&a), &BargmannFunction::new(b.clone()), &grid)?;
        worst_mixed = worst_mixed.max((series - mixed).norm() / scale);
    }
    out.push(report("overlap/double-vs-series", worst_double, 1e-13));
    out.push(report("overlap/mixed-vs-series", worst_mixed, 1e-12));

    let mut worst = 0.0f64;
    for _ in 0..3 {
        let a = random_state(&mut rng, 6);
        let b = random_state(&mut rng, 6);
        let series = inner_series(&a, &b);
        let line = inner_conjugate_line(&to_conjugate(&a), &to_conjugate(&b), 24, 32)?;
        worst = worst.max((series - line).norm() / series.norm().max(1.0));
    }
    out.push(report("overlap/line-vs-series", worst, 1e-4));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = random_state(&mut rng, 10);
        let f = to_conjugate(&a);
        let self_product = inner_conjugate_double(&f, &f);
        worst = worst.max((-self_product.re).max(0.0));
        worst = worst.max(self_product.im.abs());
    }
    out.push(report("overlap/self-product-positivity", worst, 0.0));

    Ok(out)
}

fn suite_propagators(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for _ in 0..10 {
        let frame = OscillatorFrame::new(1.0, rng.gen_range(0.5..2.0), 1.0)?;
        let (t1, t2) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
        let step = (-I * (frame.omega() * t1)).exp() * (-I * (frame.omega() * t2)).exp();
        let whole = (-I * (frame.omega() * (t1 + t2))).exp();
        worst = worst.max((step - whole).norm());
    }
    out.push(report("propagators/phase-composition", worst, 1e-14));

    let frame = OscillatorFrame::new(1.0, 1.3, 1.0)?;
    let rule = gauss_laguerre_rule(64)?;
    let mut worst = 0.0f64;
    for _ in 0..2 {
        let z0 = random_unit(&mut rng, 0.6);
        let t = rng.gen_range(0.2..2.0);
        let half = Complex64::new(0.0, -0.5 * frame.omega() * t).exp();
        let moved = z0 * (-I * (frame.omega() * t)).exp();
        let psi = BargmannFunction::new(coherent_state(moved, 36).scaled(half));
        for _ in 0..3 {
            let w = loop {
                let w = random_unit(&mut rng, 3.0);
                if w.norm() > 1.2 {
                    break w;
                }
            };
            let got = forward_line_integral(&psi, w, &rule)?;
            let want = exact_ho_conjugate(w, z0, t, &frame)?;
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    out.push(report("propagators/forward-vs-pole", worst, 1e-10));

    let mut worst = 0.0f64;
    for _ in 0..5 {
        let w = random_unit(&mut rng, 2.0) + c64(2.5, 0.0);
        let t = rng.gen_range(0.1..3.0);
        let n = rng.gen_range(5..40usize);
        let mut direct = c64(0.0, 0.0);
        for k in 0..n {
            direct += (-I * ((k as f64 + 0.5) * frame.omega() * t)).exp();
        }
        direct /= w;
        let closed = diagonal_trace_series(w, t, n, &frame)?;
        worst = worst.max((direct - closed).norm() / direct.norm().max(1.0));
    }
    out.push(report("propagators/trace-closed-form", worst, 1e-13));

    let mut worst = 0.0f64;
    let z = c64(0.8, 0.3);
    for k in 0..10 {
        let t = 0.3 * k as f64;
        let got = exact_ho_bargmann(z.conj(), z, t, &frame).norm() * (-z.norm_sqr()).exp();
        let want = (z.norm_sqr() * ((frame.omega() * t).cos() - 1.0)).exp();
        worst = worst.max((got - want).abs() / want);
    }
    out.push(report(
        "propagators/autocorrelation-magnitude",
        worst,
        1e-13,
    ));

    Ok(out)
}

fn suite_semiclassical(seed: u64) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let frame = OscillatorFrame::unit();
    let h = WeylHamiltonian::ho(1.0, 1.0);
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let z_i = random_unit(&mut rng, 0.8);
        let zfs = random_unit(&mut rng, 0.8);
        for &t in &[0.5, 2.0] {
            let got = ksc_bargmann(&h, z_i, zfs, t, &[c64(0.0, 0.0)])?;
            let want = exact_ho_bargmann(zfs, z_i, t, &frame);
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    out.push(report("semiclassical/oscillator-exactness", worst, 1e-8));

    let quartic = WeylHamiltonian::quartic(1.0, 0.1, 1.0);
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let traj = integrate_trajectory(
            &quartic,
            random_unit(&mut rng, 0.8),
            random_unit(&mut rng, 0.8),
            1.0,
            256,
        )?;
        worst = worst.max((traj.det_m() - c64(1.0, 0.0)).norm());
    }
    out.push(report("semiclassical/tangent-determinant", worst, 1e-8));

    let soft = WeylHamiltonian::quartic(1.0, 0.05, 1.0);
    let (z_i, zfs, t_final) = (c64(0.6, 0.1), c64(0.5, -0.3), 0.9);
    let guess = zfs * (-I * t_final).exp();
    let traj = shoot_bargmann(&soft, z_i, zfs, t_final, guess)?;
    let v0 = traj.v_start();
    let fd = 1e-4;
    let s_at = |zf: Complex64| -> Result<Complex64> {
        let tr = shoot_bargmann(&soft, z_i, zf, t_final, v0)?;
        action(&tr, &soft, zf)
    };
    let grad = (s_at(zfs + fd)? - s_at(zfs - fd)?) / (2.0 * fd);
    let want = -I * traj.u_end();
    let err = (grad - want).norm() / want.norm().max(1.0);
    out.push(report("semiclassical/action-gradient", err, 1e-6));

    Ok(out)
}

/// Matrix exponential by scaling-and-squaring with a Taylor series;
/// adequate for the Hermitian-generator oracles used here.
pub fn matexp(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matexp needs a square matrix");
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let k = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = Complex64::from(0.5f64.powi(k));
    let b = a * scale;

    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for j in 1..=40 {
        term = (&term * &b) * Complex64::from(1.0 / j as f64);
        sum += &term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    for _ in 0..k {
        sum = &sum * &sum;
    }
    sum
}

/// Fock-space evolution operator `exp(-i H t / hbar)` of the quadratic
/// Hamiltonian whose Weyl symbol is
/// `hbar (alpha u v + beta u^2 / 2 + gamma v^2 / 2)`, i.e.
/// `H/hbar = alpha (n + 1/2) + (beta/2) a^2 + (gamma/2) a+^2`, truncated
/// to `dim` Fock states. Unitary when `beta = gamma` (real symbol).
pub fn quadratic_fock_unitary(
    alpha: f64,
    beta: f64,
    gamma: f64,
    t: f64,
    dim: usize,
) -> DMatrix<Complex64> {
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..dim {
        h[(n, n)] = Complex64::from(alpha * (n as f64 + 0.5));
        if n + 2 < dim {
            let amp = (((n + 1) * (n + 2)) as f64).sqrt();
            h[(n + 2, n)] = Complex64::from(0.5 * gamma * amp);
            h[(n, n + 2)] = Complex64::from(0.5 * beta * amp);
        }
    }
    matexp(&(h * (-I * t)))
}

/// Coherent-state kernel of a truncated Fock-space operator:
/// `sum_{m,n} z*^m / sqrt(m!) U_{mn} z0^n / sqrt(n!)`.
pub fn fock_kernel(u: &DMatrix<Complex64>, zstar: Complex64, z0: Complex64) -> Complex64 {
    let dim = u.nrows();
    let left: Vec<Complex64> = (0..dim)
        .map(|m| zstar.powu(m as u32) / sqrt_factorial(m))
        .collect();
    let right: Vec<Complex64> = (0..dim)
        .map(|n| z0.powu(n as u32) / sqrt_factorial(n))
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..dim {
        let mut row = Complex64::new(0.0, 0.0);
        for n in 0..dim {
            row += u[(m, n)] * right[n];
        }
        acc += left[m] * row;
    }
    acc
}

/// The quadratic-Hamiltonian evolution of a coherent state, as Fock
/// coefficients: `a_m = sum_n U_{mn} z0^n / sqrt(n!)`.
pub fn quadratic_evolved_state(
    alpha: f64,
    beta: f64,
    gamma: f64,
    t: f64,
    z0: Complex64,
    dim: usize,
) -> Result<FockCoefficients> {
    let u = quadratic_fock_unitary(alpha, beta, gamma, t, dim);
    let coeffs: Vec<Complex64> = (0..dim)
        .map(|m| {
            (0..dim)
                .map(|n| u[(m, n)] * z0.powu(n as u32) / sqrt_factorial(n))
                .sum()
        })
        .collect();
    FockCoefficients::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matexp_matches_scalar_and_rotation_oracles() {
        let a = DMatrix::from_row_slice(1, 1, &[c64(0.7, -0.3)]);
        let got = matexp(&a)[(0, 0)];
        assert!((got - c64(0.7, -0.3).exp()).norm() <= 1e-14);

        // exp of the generator of a plane rotation.
        let theta = 2.4;
        let g = DMatrix::from_row_slice(
            2,
            2,
            &[
                c64(0.0, 0.0),
                c64(-theta, 0.0),
                c64(theta, 0.0),
                c64(0.0, 0.0),
            ],
        );
        let r = matexp(&g);
        assert!((r[(0, 0)] - Complex64::from(theta.cos())).norm() <= 1e-13);
        assert!((r[(1, 0)] - Complex64::from(theta.sin())).norm() <= 1e-13);
    }

    #[test]
    fn fock_oracle_reduces_to_the_oscillator() {
        let frame = OscillatorFrame::unit();
        let u = quadratic_fock_unitary(1.0, 0.0, 0.0, 0.9, 48);
        let (zs, z0) = (c64(0.5, 0.2), c64(0.4, -0.1));
        let got = fock_kernel(&u, zs, z0);
        let want = exact_ho_bargmann(zs, z0, 0.9, &frame);
        assert!((got - want).norm() <= 1e-12 * want.norm());
    }

    #[test]
    fn evolved_state_matches_the_kernel() {
        let state = quadratic_evolved_state(1.0, 0.3, 0.3, 1.0, c64(0.4, 0.0), 48).unwrap();
        let psi = BargmannFunction::new(state);
        let u = quadratic_fock_unitary(1.0, 0.3, 0.3, 1.0, 48);
        let zs = c64(0.5, 0.1);
        let got = psi.eval(zs);
        let want = fock_kernel(&u, zs, c64(0.4, 0.0));
        assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn every_suite_passes_and_is_deterministic() {
        let first = run_suite("all", 7).unwrap();
        assert!(!first.is_empty());
        for r in &first {
            assert!(
                r.pass,
                "suite entry {} failed: max error {:e} > tol {:e}",
                r.name, r.max_error, r.tolerance
            );
        }
        let second = run_suite("all", 7).unwrap();
        let a = serde_json::to_string(&first).unwrap();
        let b = serde_json::to_string(&second).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_suite_is_a_parameter_error() {
        assert!(matches!(run_suite("nope", 1), Err(CoreError::Parameter(_))));
    }
}
