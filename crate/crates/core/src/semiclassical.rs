//! Complex-trajectory semiclassics for the coherent-state propagator:
//! shooting for two-point boundary data, tangent-matrix propagation,
//! action accumulation, and the saddle-point passage to the conjugate
//! representation.
//!
//! Conventions. The symbol `H(u, v)` generates the flow
//! `du/dt = (1/ih) dH/dv`, `dv/dt = -(1/ih) dH/du`; the tangent matrix
//! `M` propagates small displacements `(du, dv)(T) = M (du, dv)(0)` and
//! is volume-preserving (`det M = 1`). The action accumulated along a
//! trajectory is
//! `S = int [(u H_u + v H_v)/2 - H] dt - (ih/2)[u(T) z_f* + z_i v(0)]`,
//! whose gradients are `dS/dz_f* = -ih u(T)`, `dS/dz_i = -ih v(0)` and
//! `dS/dT = -H`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shooting and `ksc_*` integrate with this many coarse steps; the
/// embedded step-halving refinement doubles it.
const SHOOT_STEPS: usize = 512;

type CFn = Box<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>;

/// A Weyl symbol together with its analytic derivatives.
///
/// Construction cross-checks every supplied derivative against central
/// differences of the one below it at seeded random points, so a typo in
/// a hand-written derivative surfaces immediately rather than as a
/// subtly wrong trajectory.
pub struct WeylHamiltonian {
    hbar: f64,
    f: CFn,
    fu: CFn,
    fv: CFn,
    fuu: CFn,
    fuv: CFn,
    fvv: CFn,
}

impl std::fmt::Debug for WeylHamiltonian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeylHamiltonian")
            .field("hbar", &self.hbar)
            .finish_non_exhaustive()
    }
}

impl WeylHamiltonian {
    pub fn new(hbar: f64, f: CFn, fu: CFn, fv: CFn, fuu: CFn, fuv: CFn, fvv: CFn) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(CoreError::Parameter(format!(
                "hbar must be positive and finite, got {hbar}"
            )));
        }
        let h = Self {
            hbar,
            f,
            fu,
            fv,
            fuu,
            fuv,
            fvv,
        };
        h.self_test()?;
        Ok(h)
    }

    fn self_test(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let step = 1e-5;
        for _ in 0..20 {
            let u = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let checks: [(&str, Complex64, Complex64); 5] = [
                ("dH/du", (self.fu)(u, v), fd(|x| (self.f)(x, v), u, step)),
                ("dH/dv", (self.fv)(u, v), fd(|x| (self.f)(u, x), v, step)),
                (
                    "d2H/du2",
                    (self.fuu)(u, v),
                    fd(|x| (self.fu)(x, v), u, step),
                ),
                (
                    "d2H/dudv",
                    (self.fuv)(u, v),
                    fd(|x| (self.fu)(u, x), v, step),
                ),
                (
                    "d2H/dv2",
                    (self.fvv)(u, v),
                    fd(|x| (self.fv)(u, x), v, step),
                ),
            ];
            for (name, supplied, numeric) in checks {
                let tol = 1e-6 * supplied.norm().max(1.0);
                if (supplied - numeric).norm() > tol {
                    return Err(CoreError::SelfTest(format!(
                        "{name} disagrees with finite differences at u = {u}, v = {v}: \
                         supplied {supplied}, numeric {numeric}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn value(&self, u: Complex64, v: Complex64) -> Complex64 {
        (self.f)(u, v)
    }

    pub fn du(&self, u: Complex64, v: Complex64) -> Complex64 {
        (self.fu)(u, v)
    }

    pub fn dv(&self, u: Complex64, v: Complex64) -> Complex64 {
        (self.fv)(u, v)
    }

    /// Harmonic oscillator, `H = hbar omega u v`.
    pub fn ho(omega: f64, hbar: f64) -> Self {
        let w = hbar * omega;
        Self::new(
            hbar,
            Box::new(move |u, v| w * u * v),
            Box::new(move |_, v| w * v),
            Box::new(move |u, _| w * u),
            Box::new(|_, _| Complex64::new(0.0, 0.0)),
            Box::new(move |_, _| Complex64::new(w, 0.0)),
            Box::new(|_, _| Complex64::new(0.0, 0.0)),
        )
        .expect("analytic oscillator derivatives are consistent")
    }

    /// General one-mode quadratic symbol,
    /// `H = hbar (alpha u v + beta u^2 / 2 + gamma v^2 / 2)`.
    pub fn quadratic(alpha: f64, beta: f64, gamma: f64, hbar: f64) -> Self {
        let (a, b, g) = (hbar * alpha, hbar * beta, hbar * gamma);
        Self::new(
            hbar,
            Box::new(move |u, v| a * u * v + 0.5 * b * u * u + 0.5 * g * v * v),
            Box::new(move |u, v| a * v + b * u),
            Box::new(move |u, v| a * u + g * v),
            Box::new(move |_, _| Complex64::new(b, 0.0)),
            Box::new(move |_, _| Complex64::new(a, 0.0)),
            Box::new(move |_, _| Complex64::new(g, 0.0)),
        )
        .expect("analytic quadratic derivatives are consistent")
    }

    /// Kerr-type quartic symbol, `H = hbar omega u v + lambda (u v)^2`.
    pub fn quartic(omega: f64, lambda: f64, hbar: f64) -> Self {
        let w = hbar * omega;
        Self::new(
            hbar,
            Box::new(move |u, v| {
                let uv = u * v;
                w * uv + lambda * uv * uv
            }),
            Box::new(move |u, v| w * v + 2.0 * lambda * u * v * v),
            Box::new(move |u, v| w * u + 2.0 * lambda * u * u * v),
            Box::new(move |_, v| 2.0 * lambda * v * v),
            Box::new(move |u, v| w + 4.0 * lambda * u * v),
            Box::new(move |u, _| 2.0 * lambda * u * u),
        )
        .expect("analytic quartic derivatives are consistent")
    }
}

/// Central difference along the real direction; for analytic functions
/// this is the complex derivative.
fn fd(f: impl Fn(Complex64) -> Complex64, at: Complex64, step: f64) -> Complex64 {
    (f(at + step) - f(at - step)) / (2.0 * step)
}

/// One integrated complex trajectory with its tangent matrix, action
/// integral, and branch-tracking data.
#[derive(Debug, Clone)]
pub struct ComplexTrajectory {
    times: Vec<f64>,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    s_integral: Complex64,
    m: [Complex64; 4],
    arg_vv: f64,
    arg_uv: Option<f64>,
    err_estimate: f64,
    newton_steps: usize,
}

impl ComplexTrajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn u_path(&self) -> &[Complex64] {
        &self.u
    }

    pub fn v_path(&self) -> &[Complex64] {
        &self.v
    }

    pub fn u_start(&self) -> Complex64 {
        self.u[0]
    }

    pub fn v_start(&self) -> Complex64 {
        self.v[0]
    }

    pub fn u_end(&self) -> Complex64 {
        *self.u.last().expect("nonempty path")
    }

    pub fn v_end(&self) -> Complex64 {
        *self.v.last().expect("nonempty path")
    }

    pub fn duration(&self) -> f64 {
        *self.times.last().expect("nonempty path")
    }

    pub fn m_uu(&self) -> Complex64 {
        self.m[0]
    }

    pub fn m_uv(&self) -> Complex64 {
        self.m[1]
    }

    pub fn m_vu(&self) -> Complex64 {
        self.m[2]
    }

    pub fn m_vv(&self) -> Complex64 {
        self.m[3]
    }

    pub fn det_m(&self) -> Complex64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    /// Accumulated `int [(u H_u + v H_v)/2 - H] dt`, without boundary
    /// terms.
    pub fn action_integral(&self) -> Complex64 {
        self.s_integral
    }

    /// Step-halving (Richardson) estimate of the integration error.
    pub fn error_estimate(&self) -> f64 {
        self.err_estimate
    }

    /// Newton iterations a shooting routine spent on this trajectory; 0
    /// for directly integrated ones.
    pub fn newton_steps(&self) -> usize {
        self.newton_steps
    }

    /// `sqrt(1/M_vv)` on the branch reached continuously from `M_vv = 1`
    /// at `T = 0`, via the unwrapped argument accumulated during
    /// integration.
    pub fn sqrt_inv_m_vv(&self) -> Complex64 {
        Complex64::from_polar(self.m[3].norm().powf(-0.5), -0.5 * self.arg_vv)
    }

    /// Unwrapped argument of `M_uv`, tracked from the first step where
    /// the flow couples `u` to `v(0)`; `None` while `M_uv` is
    /// identically zero (decoupled flows such as the oscillator).
    pub fn m_uv_arg(&self) -> Option<f64> {
        self.arg_uv
    }
}

/// Moves `prev` by the wrapped increment toward `arg(z)`, keeping the
/// running argument continuous.
fn unwrap_toward(prev: f64, z: Complex64) -> f64 {
    let raw = z.arg();
    raw - std::f64::consts::TAU * ((raw - prev) / std::f64::consts::TAU).round()
}

/// State layout: `u, v, M_uu, M_uv, M_vu, M_vv, s`.
fn rhs(h: &WeylHamiltonian, y: &[Complex64; 7]) -> [Complex64; 7] {
    let (u, v) = (y[0], y[1]);
    let inv_ih = Complex64::new(0.0, -1.0 / h.hbar);
    let fu = (h.fu)(u, v);
    let fv = (h.fv)(u, v);
    let fuu = (h.fuu)(u, v);
    let fuv = (h.fuv)(u, v);
    let fvv = (h.fvv)(u, v);
    let j11 = inv_ih * fuv;
    let j12 = inv_ih * fvv;
    let j21 = -inv_ih * fuu;
    let j22 = -inv_ih * fuv;
    [
        inv_ih * fv,
        -inv_ih * fu,
        j11 * y[2] + j12 * y[4],
        j11 * y[3] + j12 * y[5],
        j21 * y[2] + j22 * y[4],
        j21 * y[3] + j22 * y[5],
        0.5 * (u * fu + v * fv) - (h.f)(u, v),
    ]
}

struct RawRun {
    y: [Complex64; 7],
    times: Vec<f64>,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    arg_vv: f64,
    arg_uv: Option<f64>,
}

fn integrate_raw(
    h: &WeylHamiltonian,
    u0: Complex64,
    v0: Complex64,
    t_final: f64,
    n_steps: usize,
    record_every: usize,
) -> Result<RawRun> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut y = [u0, v0, one, zero, zero, one, zero];
    let dt = t_final / n_steps as f64;

    let mut times = vec![0.0];
    let mut us = vec![u0];
    let mut vs = vec![v0];
    let mut arg_vv = 0.0;
    let mut arg_uv: Option<f64> = None;

    for step in 0..n_steps {
        let k1 = rhs(h, &y);
        let mut y2 = y;
        for i in 0..7 {
            y2[i] = y[i] + 0.5 * dt * k1[i];
        }
        let k2 = rhs(h, &y2);
        let mut y3 = y;
        for i in 0..7 {
            y3[i] = y[i] + 0.5 * dt * k2[i];
        }
        let k3 = rhs(h, &y3);
        let mut y4 = y;
        for i in 0..7 {
            y4[i] = y[i] + dt * k3[i];
        }
        let k4 = rhs(h, &y4);
        for i in 0..7 {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        let t = (step + 1) as f64 * dt;
        if y.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::BlowUp { t });
        }

        arg_vv = unwrap_toward(arg_vv, y[5]);
        if y[3].norm() > 0.0 {
            arg_uv = Some(match arg_uv {
                Some(prev) => unwrap_toward(prev, y[3]),
                None => y[3].arg(),
            });
        }

        if (step + 1) % record_every == 0 {
            times.push(t);
            us.push(y[0]);
            vs.push(y[1]);
        }
    }

    Ok(RawRun {
        y,
        times,
        u: us,
        v: vs,
        arg_vv,
        arg_uv,
    })
}

/// Integrates Hamilton's equations for `(u, v)` together with the
/// tangent matrix and the action integrand, with classic fixed-step
/// fourth-order Runge-Kutta.
///
/// The run is performed at `steps` and at `2 steps`; the halved-step
/// solution is returned and the Richardson difference feeds
/// [`ComplexTrajectory::error_estimate`].
pub fn integrate_trajectory(
    h: &WeylHamiltonian,
    u0: Complex64,
    v0: Complex64,
    t_final: f64,
    steps: usize,
) -> Result<ComplexTrajectory> {
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(CoreError::Parameter(format!(
            "need a finite t_final >= 0, got {t_final}"
        )));
    }
    if steps < 16 {
        return Err(CoreError::Parameter(format!(
            "need at least 16 steps, got {steps}"
        )));
    }
    for (name, z) in [("u0", u0), ("v0", v0)] {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(CoreError::Parameter(format!(
                "{name} must be finite, got {z}"
            )));
        }
    }

    let coarse = integrate_raw(h, u0, v0, t_final, steps, steps.max(1))?;
    let fine = integrate_raw(h, u0, v0, t_final, 2 * steps, 2)?;
    let err_estimate = coarse
        .y
        .iter()
        .zip(fine.y.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max)
        / 15.0;

    Ok(ComplexTrajectory {
        times: fine.times,
        u: fine.u,
        v: fine.v,
        s_integral: fine.y[6],
        m: [fine.y[2], fine.y[3], fine.y[4], fine.y[5]],
        arg_vv: fine.arg_vv,
        arg_uv: fine.arg_uv,
        err_estimate,
        newton_steps: 0,
    })
}

/// Action of a trajectory meeting the boundary data `u(0) = z_i`,
/// `v(T) = zf_star`: the accumulated integral plus the boundary term
/// `-(ih/2)[u(T) zf_star + z_i v(0)]`.
pub fn action(
    traj: &ComplexTrajectory,
    h: &WeylHamiltonian,
    zf_star: Complex64,
) -> Result<Complex64> {
    let residual = (traj.v_end() - zf_star).norm();
    if residual > 1e-8 * zf_star.norm().max(1.0) {
        return Err(CoreError::ContractMismatch { residual });
    }
    let hbar = h.hbar;
    Ok(traj.s_integral
        - I * (0.5 * hbar) * (traj.u_end() * zf_star + traj.u_start() * traj.v_start()))
}

/// Newton iteration on `v(0)` for the Bargmann boundary data
/// `u(0) = z_i`, `v(T) = zf_star`, using `M_vv` as the exact Jacobian of
/// the shot.
pub fn shoot_bargmann(
    h: &WeylHamiltonian,
    z_i: Complex64,
    zf_star: Complex64,
    t_final: f64,
    v0_guess: Complex64,
) -> Result<ComplexTrajectory> {
    let mut v0 = v0_guess;
    let mut traj = integrate_trajectory(h, z_i, v0, t_final, SHOOT_STEPS)?;
    for iter in 0..50 {
        let r = traj.v_end() - zf_star;
        if r.norm() <= 1e-10 {
            traj.newton_steps = iter;
            return Ok(traj);
        }
        let mvv = traj.m_vv();
        if mvv.norm() < 1e-8 {
            return Err(CoreError::FocalPoint {
                magnitude: mvv.norm(),
            });
        }
        v0 -= r / mvv;
        traj = integrate_trajectory(h, z_i, v0, t_final, SHOOT_STEPS)?;
    }
    Err(CoreError::RootNotFound {
        iterations: 50,
        residual: (traj.v_end() - zf_star).norm(),
    })
}

/// Newton iteration on `v(0)` for the conjugate boundary data
/// `u(0) = z_i`, `u(T) = w`, using `M_uv` as the Jacobian.
///
/// `M_uv = 0` means `u(T)` does not respond to `v(0)` at all; for flows
/// where that holds structurally (the oscillator, or no dynamics) no
/// trajectory can be selected and the saddle-point formula never
/// applies, so a degenerate-saddle error is returned.
pub fn shoot_conjugate(
    h: &WeylHamiltonian,
    z_i: Complex64,
    w: Complex64,
    t_final: f64,
    v0_guess: Complex64,
) -> Result<ComplexTrajectory> {
    let mut v0 = v0_guess;
    let mut traj = integrate_trajectory(h, z_i, v0, t_final, SHOOT_STEPS)?;
    for iter in 0..50 {
        let r = traj.u_end() - w;
        if r.norm() <= 1e-10 {
            traj.newton_steps = iter;
            return Ok(traj);
        }
        let muv = traj.m_uv();
        if muv.norm() < 1e-8 {
            return Err(CoreError::DegenerateSaddle {
                exact_fallback: None,
            });
        }
        v0 -= r / muv;
        traj = integrate_trajectory(h, z_i, v0, t_final, SHOOT_STEPS)?;
    }
    Err(CoreError::RootNotFound {
        iterations: 50,
        residual: (traj.u_end() - w).norm(),
    })
}

fn dedupe_push(trajs: &mut Vec<ComplexTrajectory>, t: ComplexTrajectory) {
    let seen = trajs
        .iter()
        .any(|e| (e.v_start() - t.v_start()).norm() <= 1e-8 * (1.0 + t.v_start().norm()));
    if !seen {
        trajs.push(t);
    }
}

/// Semiclassical coherent-state propagator,
/// `k_sc = sum_traj sqrt(1/M_vv) e^{iS/hbar}` over the distinct
/// trajectories reached from the supplied `v(0)` guesses.
pub fn ksc_bargmann(
    h: &WeylHamiltonian,
    z_i: Complex64,
    zf_star: Complex64,
    t_final: f64,
    guesses: &[Complex64],
) -> Result<Complex64> {
    if guesses.is_empty() {
        return Err(CoreError::Parameter(
            "supply at least one v(0) guess".into(),
        ));
    }
    let mut trajs: Vec<ComplexTrajectory> = Vec::new();
    let mut last_err = None;
    for &g in guesses {
        match shoot_bargmann(h, z_i, zf_star, t_final, g) {
            Ok(t) => dedupe_push(&mut trajs, t),
            Err(e @ CoreError::FocalPoint { .. }) => return Err(e),
            Err(e) => last_err = Some(e),
        }
    }
    if trajs.is_empty() {
        return Err(last_err.expect("guesses were nonempty"));
    }

    let mut total = Complex64::new(0.0, 0.0);
    for t in &trajs {
        let mvv = t.m_vv().norm();
        if mvv < 1e-8 {
            return Err(CoreError::FocalPoint { magnitude: mvv });
        }
        let s = action(t, h, zf_star)?;
        total += t.sqrt_inv_m_vv() * (I * s / h.hbar).exp();
    }
    Ok(total)
}

/// Semiclassical propagator in the conjugate representation, evaluated
/// by a saddle-point pass through the transform integral
/// `f(w) = int_ray k(z_f*) e^{-w z_f*} dz_f*`.
///
/// Each trajectory from [`shoot_conjugate`] fixes a saddle
/// `z_f* = v(T)` with `u(T) = w`; its exponent is
/// `S~ = S + i hbar w z_f*`. Rotating the ray `z_f* = e^{i alpha} s`
/// (`alpha = -arg w`, the direction on which the transform is defined)
/// turns the fluctuation integral into a real-line Gaussian with
/// curvature `B = -(M_uv / M_vv) e^{2 i alpha}`, so each saddle
/// contributes `sqrt(1/M_vv) e^{i alpha} sqrt(2 pi / B) e^{i S~/hbar}`.
/// `Re B > 0` is the ray-convergence condition and is enforced.
///
/// The saddle sum is the full descent-contour Gaussian. It equals the
/// ray integral only where the stationary point dominates the ray's
/// endpoint, which for a quadratic flow means `|w| < |z_i / M_vv|`;
/// beyond that scale the half-line integral is carried by its boundary
/// series (leading term: the endpoint pole, exactly the degenerate
/// fallback form) and the saddle sum instead analytically continues
/// the inner branch. Callers comparing against quadratures of
/// `k(z_f*)` should keep the two regimes apart; the erfc split is
/// worked out in this module's tests.
///
/// For flows whose `M_uv` vanishes identically the exponent is linear
/// in `z_f*` and the integral is a single exact pole,
/// `sqrt(1/M_vv) e^{i S_0/hbar} / (w - u(T))` computed from the
/// `v(0) = 0` trajectory; it is reported through the
/// degenerate-saddle error's fallback slot rather than as a saddle sum.
pub fn ksc_conjugate(
    h: &WeylHamiltonian,
    z_i: Complex64,
    w: Complex64,
    t_final: f64,
    guesses: &[Complex64],
) -> Result<Complex64> {
    if guesses.is_empty() {
        return Err(CoreError::Parameter(
            "supply at least one v(0) guess".into(),
        ));
    }
    let mut trajs: Vec<ComplexTrajectory> = Vec::new();
    let mut last_err = None;
    for &g in guesses {
        match shoot_conjugate(h, z_i, w, t_final, g) {
            Ok(t) => dedupe_push(&mut trajs, t),
            Err(CoreError::DegenerateSaddle { .. }) => {
                let t0 =
                    integrate_trajectory(h, z_i, Complex64::new(0.0, 0.0), t_final, SHOOT_STEPS)?;
                let pole = t0.u_end();
                let denom = w - pole;
                if denom.norm() <= 1e-12 * w.norm().max(1.0) {
                    return Err(CoreError::Singularity {
                        at: w,
                        what: "exact Laplace pole of the linear-exponent propagator".into(),
                    });
                }
                let value = t0.sqrt_inv_m_vv() * (I * t0.action_integral() / h.hbar).exp() / denom;
                return Err(CoreError::DegenerateSaddle {
                    exact_fallback: Some(value),
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    if trajs.is_empty() {
        return Err(last_err.expect("guesses were nonempty"));
    }

    let alpha = -w.arg();
    let ray = Complex64::from_polar(1.0, alpha);
    let mut total = Complex64::new(0.0, 0.0);
    for t in &trajs {
        let zfs = t.v_end();
        let saddle_residual = h.hbar * (t.u_end() - w).norm();
        if saddle_residual > 1e-9 {
            return Err(CoreError::ContractMismatch {
                residual: saddle_residual,
            });
        }
        let s = action(t, h, zfs)?;
        let stilde = s + I * h.hbar * w * zfs;
        let curvature = -(t.m_uv() / t.m_vv()) * ray * ray;
        if curvature.re <= 0.0 {
            return Err(CoreError::Domain(format!(
                "transform ray does not converge through this saddle \
                 (Gaussian curvature {curvature} has nonpositive real part)"
            )));
        }
        let gauss = ray * (Complex64::from(std::f64::consts::TAU) / curvature).sqrt();
        total += t.sqrt_inv_m_vv() * gauss * (I * stilde / h.hbar).exp();
    }
    Ok(total)
}
