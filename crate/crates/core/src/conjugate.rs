//! The conjugate picture: Laurent data `f(w) = sum c_n / w^{n+1}` with
//! `c_n = a_n sqrt(n!)`, the forward Laplace route, two inverse routes
//! (Mellin contour and termwise phase space), the dual ladder operators
//! `a^dag = -d/dw`, `a = w`, and closed forms for coherent and position
//! states.

use num_complex::Complex64;

use crate::bargmann::BargmannFunction;
use crate::error::{CoreError, Result};
use crate::numerics::{
    faddeeva, hermite_normalized, phase_space_integrate, PhaseSpaceGrid, QuadratureRule, RuleKind,
};
use crate::states::{self, FockCoefficients, OscillatorFrame, StateOrigin};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Closed forms a conjugate function may carry beside its Laurent data.
///
/// When present, evaluation prefers the closed form on its maximal
/// domain; that is what extends a coherent state's `1/(w - z0)` inside
/// the circle `|w| < |z0|` where the Laurent series diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// `f(w) = 1/(w - z0)`, the unnormalized coherent state.
    Pole { z0: Complex64 },
    /// The position eigenstate's error-function form, valid for
    /// `Re(w^2) > 0`.
    ErfGaussian { q: f64, frame: OscillatorFrame },
}

/// A state on the conjugate side: finitely many Laurent coefficients and
/// an optional closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateFunction {
    laurent: Vec<Complex64>,
    closed_form: Option<ClosedForm>,
}

impl ConjugateFunction {
    /// Wraps raw Laurent data (meaning `f(w) = sum c_n / w^{n+1}`).
    pub fn new(laurent: Vec<Complex64>) -> Result<Self> {
        if laurent.is_empty() {
            return Err(CoreError::Parameter(
                "conjugate data needs at least the 1/w coefficient".into(),
            ));
        }
        if let Some(bad) = laurent
            .iter()
            .find(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(CoreError::Evaluation { at: *bad });
        }
        Ok(Self {
            laurent,
            closed_form: None,
        })
    }

    fn with_form(laurent: Vec<Complex64>, closed_form: Option<ClosedForm>) -> Self {
        Self {
            laurent,
            closed_form,
        }
    }

    /// The coherent-state pole `1/(w - z0)` with `n_terms + 1` Laurent
    /// coefficients `c_n = z0^n` tabulated alongside.
    pub fn pole(z0: Complex64, n_terms: usize) -> Self {
        let mut laurent = Vec::with_capacity(n_terms + 1);
        let mut run = c64(1.0, 0.0);
        for _ in 0..=n_terms {
            laurent.push(run);
            run *= z0;
        }
        Self::with_form(laurent, Some(ClosedForm::Pole { z0 }))
    }

    pub fn laurent(&self) -> &[Complex64] {
        &self.laurent
    }

    /// `c_n`, zero beyond the stored truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.laurent.get(n).copied().unwrap_or(c64(0.0, 0.0))
    }

    /// Truncation index `N` of the Laurent data.
    pub fn truncation(&self) -> usize {
        self.laurent.len() - 1
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        self.closed_form
    }
}

/// Maps Fock coefficients to Laurent data, `c_n = a_n sqrt(n!)`.
///
/// States built by the coherent or position constructors keep their
/// identity: the matching closed form is attached for analytic
/// continuation beyond the series' reach.
pub fn to_conjugate(state: &FockCoefficients) -> ConjugateFunction {
    let laurent = state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| a * states::sqrt_fact(n))
        .collect();
    let closed_form = match state.origin() {
        StateOrigin::Coherent(z0) => Some(ClosedForm::Pole { z0 }),
        StateOrigin::Position { q, frame } => Some(ClosedForm::ErfGaussian { q, frame }),
        _ => None,
    };
    ConjugateFunction::with_form(laurent, closed_form)
}

fn eval_laurent(laurent: &[Complex64], w: Complex64) -> Complex64 {
    let t = w.finv();
    let mut acc = c64(0.0, 0.0);
    for c in laurent.iter().rev() {
        acc = acc * t + c;
    }
    acc * t
}

/// Evaluates `f` at `w`, preferring the attached closed form on its
/// domain; otherwise sums the truncated Laurent series.
///
/// `w = 0` is an essential reference point of the Laurent picture and is
/// always rejected, as is the pole location itself.
pub fn eval_conjugate(f: &ConjugateFunction, w: Complex64) -> Result<Complex64> {
    if w == c64(0.0, 0.0) {
        return Err(CoreError::Singularity {
            at: w,
            what: "Laurent data cannot be summed at w = 0".into(),
        });
    }
    match f.closed_form {
        Some(ClosedForm::Pole { z0 }) => {
            if w == z0 {
                return Err(CoreError::Singularity {
                    at: w,
                    what: "coherent-state pole".into(),
                });
            }
            Ok((w - z0).finv())
        }
        Some(ClosedForm::ErfGaussian { q, frame }) if w.re * w.re > w.im * w.im => {
            position_conjugate(q, &frame, w)
        }
        // Outside Re(w^2) > 0 the error-function form jumps; fall back to
        // the (asymptotic) truncated series, the only data available.
        _ => Ok(eval_laurent(&f.laurent, w)),
    }
}

/// Magnitude estimate for what the truncated Laurent sum misses at `w`.
///
/// Pole forms get the exact geometric-tail bound, the position form its
/// first omitted term; bare Laurent data is exact by definition.
pub fn laurent_tail_estimate(f: &ConjugateFunction, w: Complex64) -> f64 {
    let n_top = f.truncation();
    match f.closed_form {
        Some(ClosedForm::Pole { z0 }) => {
            let (r, p) = (w.norm(), z0.norm());
            if r > p {
                (p / r).powi(n_top as i32 + 1) / (r - p)
            } else {
                f64::INFINITY
            }
        }
        Some(ClosedForm::ErfGaussian { q, frame }) => {
            let xi = q / frame.b();
            let phi = std::f64::consts::PI.powf(-0.25) / frame.b().sqrt()
                * (-0.5 * xi * xi).exp()
                * hermite_normalized(n_top + 1, xi);
            (phi * states::sqrt_fact(n_top + 1)).abs() / w.norm().powi(n_top as i32 + 2)
        }
        None => 0.0,
    }
}

/// Forward transform along the rotated ray through `w`: with `x = z* w`
/// the line integral collapses to
/// `f(w) = (1/w) int_0^inf psi(x/w) e^{-x} dx`, a Laplace transform
/// evaluated by Gauss-Laguerre quadrature.
///
/// Exact (to roundoff) for polynomial `psi` of degree `<= 2 nodes - 1`.
/// Truncated coherent states are polynomials too, but the underlying
/// transform only converges for `|z0/w| < 1`; evaluating outside that
/// region is refused so the caller reaches for the continuation instead.
pub fn forward_line_integral(
    psi: &BargmannFunction,
    w: Complex64,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    if rule.kind != RuleKind::GaussLaguerre {
        return Err(CoreError::Parameter(
            "the Laplace route needs a Gauss-Laguerre rule".into(),
        ));
    }
    if w == c64(0.0, 0.0) {
        return Err(CoreError::Singularity {
            at: w,
            what: "the Laplace ray degenerates at w = 0".into(),
        });
    }
    if let StateOrigin::Coherent(z0) = psi.state().origin() {
        if z0.norm() >= w.norm() {
            return Err(CoreError::ConvergenceRegion(format!(
                "coherent source with |z0| = {:.3} >= |w| = {:.3}; use the pole continuation",
                z0.norm(),
                w.norm()
            )));
        }
    }
    let total = rule.integrate(|x| psi.eval(Complex64::from(x) / w));
    Ok(total / w)
}

// ---------------------------------------------------------------------------
// Inverse route 1: the Mellin-style contour integral.

/// Straight contour `Im v = -eps` for the inverse integral
/// `psi(z*) = (1/2 pi z*) int f(iv/z*) e^{iv} dv`, discretized with
/// `nodes` trapezoid intervals on `Re v` in `[-v_max, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinContour {
    pub epsilon: f64,
    pub v_max: f64,
    pub nodes: usize,
}

impl MellinContour {
    pub fn new(epsilon: f64, v_max: f64, nodes: usize) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) || !(v_max.is_finite() && v_max > epsilon) {
            return Err(CoreError::Parameter(format!(
                "need 0 < epsilon < v_max, got epsilon = {epsilon}, v_max = {v_max}"
            )));
        }
        if nodes < 16 {
            return Err(CoreError::Parameter(format!(
                "contour needs at least 16 intervals, got {nodes}"
            )));
        }
        Ok(Self {
            epsilon,
            v_max,
            nodes,
        })
    }

    /// Picks contour parameters for `f` at `z*` so that the discretization,
    /// window-truncation, and rounding errors each land near 1e-10 relative
    /// to the expected answer magnitude.
    ///
    /// Three considerations drive the choice. The integrand term for `c_n`
    /// peaks at `|c_n z*^n| / eps^{n+1}`, so `eps` grows until no peak
    /// exceeds 1e6 times the answer scale (conditioning). A pole from a
    /// coherent form sits at `eps + is = z0 z*` and must stay enclosed,
    /// so `eps > Re(z0 z*)` with margin. The window `v_max` is set from
    /// the first neglected integration-by-parts tail term.
    pub fn automatic(f: &ConjugateFunction, zstar: Complex64) -> Result<Self> {
        if zstar == c64(0.0, 0.0) {
            return Err(CoreError::Singularity {
                at: zstar,
                what: "contour construction needs z* != 0".into(),
            });
        }
        let terms: Vec<f64> = {
            let mut mags = Vec::with_capacity(f.laurent.len());
            let mut zp = 1.0;
            for c in &f.laurent {
                mags.push(c.norm() * zp);
                zp *= zstar.norm();
            }
            mags
        };
        let pole = match f.closed_form {
            Some(ClosedForm::Pole { z0 }) => Some(z0 * zstar),
            _ => None,
        };
        let scale = match pole {
            Some(a) => a.re.exp(),
            None => {
                let mut s = 0.0f64;
                let mut fact = 1.0;
                for (n, t) in terms.iter().enumerate() {
                    if n > 0 {
                        fact *= n as f64;
                    }
                    s = s.max(t / fact);
                }
                s.max(f64::MIN_POSITIVE)
            }
        };

        let mut eps = 0.5f64;
        for (n, t) in terms.iter().enumerate() {
            // Cap each term's on-contour peak at 1e6 * scale.
            eps = eps.max((t / (1e6 * scale)).powf(1.0 / (n as f64 + 1.0)));
        }
        if let Some(a) = pole {
            eps = eps.max(a.re + 0.75);
        }

        let gap = match pole {
            Some(a) => (eps - a.re).min(eps),
            None => eps,
        };

        // Discretization: by Poisson summation, the trapezoid picks up the
        // integrand's spectral images at u = 1 + 2 pi / h. The image of the
        // pole kernel carries e^{eps - gap u}; the image of the c_n term
        // carries |t_n| u^n e^{eps - eps u} / n!. Solve the worst case for
        // the u that pushes every image under the budget.
        let ln_goal = (1e-10 * scale).ln();
        let mut u_req = 16.0f64;
        match pole {
            Some(_) => {
                u_req = u_req.max((eps - ln_goal) / gap);
            }
            None => {
                let mut lnf = 0.0f64;
                for (n, t) in terms.iter().enumerate() {
                    if n > 0 {
                        lnf += (n as f64).ln();
                    }
                    if *t <= 0.0 {
                        continue;
                    }
                    // Need eps u - n ln u >= d on the branch right of the
                    // minimum at u = n/eps; Newton on the convex residual.
                    let d = t.ln() - lnf + eps - ln_goal;
                    let nf = n as f64;
                    let floor = (nf / eps).max(1.0);
                    if eps * floor - nf * floor.ln() >= d {
                        continue;
                    }
                    let mut u = floor + (d.abs() + nf + 4.0) / eps;
                    for _ in 0..60 {
                        let psi = eps * u - nf * u.ln() - d;
                        let step = psi / (eps - nf / u);
                        u -= step;
                        if u <= floor {
                            u = floor * (1.0 + 1e-6);
                        }
                        if step.abs() <= 1e-9 * u {
                            break;
                        }
                    }
                    u_req = u_req.max(u);
                }
            }
        }
        let h = (gap.min(2.0) / 8.0).min(std::f64::consts::TAU / (u_req - 1.0).max(8.0));

        // First neglected tail term is ~ 6 (n+1)(n+2)(n+3) |t_n| / b^{n+4}
        // relative to 2 pi e^{-eps} scale.
        let budget = 2.0 * std::f64::consts::PI * 1e-10 * scale / eps.exp();
        let mut v_max = 40.0f64.max(8.0 * eps);
        for (n, t) in terms.iter().enumerate() {
            let k = ((n + 1) * (n + 2) * (n + 3)) as f64;
            v_max = v_max.max((k * t / budget).powf(1.0 / (n as f64 + 4.0)));
        }
        if let Some(a) = pole {
            v_max = v_max.max(a.im.abs() + (8.0 * gap).max((6.0 / budget).powf(0.25)));
        }

        let nodes = ((2.0 * v_max / h).ceil() as usize).next_multiple_of(2);
        if nodes > 4_000_000 {
            return Err(CoreError::Parameter(format!(
                "contour for this f and z* needs {nodes} nodes; inputs are outside the supported range"
            )));
        }
        Self::new(eps, v_max, nodes.max(16))
    }
}

/// What the contour integrand actually sums: `g(s) = f(i v / z*) / z*`
/// on `v = s - i eps`, either termwise or through the pole form.
enum MellinKernel {
    /// `g(s) = sum t_n (eps + is)^{-(n+1)}` with `t_n = c_n z*^n`.
    Terms(Vec<Complex64>),
    /// `g(s) = 1 / (eps + is - a)` with `a = z0 z*`.
    Pole(Complex64),
}

impl MellinKernel {
    fn build(f: &ConjugateFunction, zstar: Complex64) -> Self {
        match f.closed_form {
            Some(ClosedForm::Pole { z0 }) => MellinKernel::Pole(z0 * zstar),
            _ => {
                let mut terms = Vec::with_capacity(f.laurent.len());
                let mut zp = c64(1.0, 0.0);
                for c in &f.laurent {
                    terms.push(c * zp);
                    zp *= zstar;
                }
                MellinKernel::Terms(terms)
            }
        }
    }

    fn value(&self, eps: f64, s: f64) -> Complex64 {
        let x = c64(eps, s);
        match self {
            MellinKernel::Pole(a) => (x - a).finv(),
            MellinKernel::Terms(terms) => {
                let t = x.finv();
                let mut acc = c64(0.0, 0.0);
                for c in terms.iter().rev() {
                    acc = (acc + c) * t;
                }
                acc
            }
        }
    }

    /// `g` through `g'''` at `s`; only needed at the window ends.
    fn derivs(&self, eps: f64, s: f64) -> [Complex64; 4] {
        let x = c64(eps, s);
        match self {
            MellinKernel::Pole(a) => {
                let t = (x - a).finv();
                [t, -I * t * t, -2.0 * t * t * t, 6.0 * I * t * t * t * t]
            }
            MellinKernel::Terms(terms) => {
                let t = x.finv();
                let mut tp = t;
                let mut g = [c64(0.0, 0.0); 4];
                for (n, c) in terms.iter().enumerate() {
                    let base = c * tp;
                    let k1 = (n + 1) as f64;
                    let k2 = k1 * (n + 2) as f64;
                    let k3 = k2 * (n + 3) as f64;
                    g[0] += base;
                    g[1] += k1 * base * t;
                    g[2] += k2 * base * t * t;
                    g[3] += k3 * base * t * t * t;
                    tp *= t;
                }
                [g[0], -I * g[1], -g[2], I * g[3]]
            }
        }
    }
}

/// Inverse transform by contour integration along `Im v = -eps`.
///
/// The trapezoid sum is corrected with the first two Euler-Maclaurin
/// boundary terms and the `[-v_max, v_max]` window is completed with
/// four integration-by-parts tail terms on each side, so the
/// all-polynomial error budget is controlled by the contour parameters
/// alone. Spot-exactness: each Laurent term integrates to
/// `c_n z*^n / n!` by the residue theorem, independent of `eps`.
pub fn inverse_mellin(
    f: &ConjugateFunction,
    zstar: Complex64,
    contour: &MellinContour,
) -> Result<Complex64> {
    if zstar == c64(0.0, 0.0) {
        return Err(CoreError::Singularity {
            at: zstar,
            what: "the z* -> 0 limit is inverse_mellin_at_zero".into(),
        });
    }
    if let Some(ClosedForm::Pole { z0 }) = f.closed_form {
        let a = z0 * zstar;
        if contour.epsilon <= a.re {
            return Err(CoreError::ConvergenceRegion(format!(
                "contour eps = {:.3} does not enclose the displaced pole at Re(z0 z*) = {:.3}",
                contour.epsilon, a.re
            )));
        }
    }

    let kernel = MellinKernel::build(f, zstar);
    let (eps, b) = (contour.epsilon, contour.v_max);
    let a = -b;
    let h = (b - a) / contour.nodes as f64;

    let mut total = c64(0.0, 0.0);
    for j in 0..=contour.nodes {
        let s = a + h * j as f64;
        let weight = if j == 0 || j == contour.nodes {
            0.5 * h
        } else {
            h
        };
        total += weight * kernel.value(eps, s) * Complex64::from_polar(1.0, s);
    }

    // Euler-Maclaurin boundary corrections for the open-ended trapezoid.
    let ga = kernel.derivs(eps, a);
    let gb = kernel.derivs(eps, b);
    let ea = Complex64::from_polar(1.0, a);
    let eb = Complex64::from_polar(1.0, b);
    let gp = |g: &[Complex64; 4]| g[1] + I * g[0];
    let gppp = |g: &[Complex64; 4]| g[3] + 3.0 * I * g[2] - 3.0 * g[1] - I * g[0];
    total -= h * h / 12.0 * (gp(&gb) * eb - gp(&ga) * ea);
    total += h.powi(4) / 720.0 * (gppp(&gb) * eb - gppp(&ga) * ea);

    // Integration-by-parts closure of the neglected tails.
    total += eb * (I * gb[0] - gb[1] - I * gb[2] + gb[3]);
    total += ea * (-I * ga[0] + ga[1] + I * ga[2] - ga[3]);

    let value = eps.exp() / (2.0 * std::f64::consts::PI) * total;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(CoreError::Evaluation { at: zstar });
    }
    Ok(value)
}

/// The `z* -> 0` limit of the inverse transform, `psi(0) = a_0 = c_0`.
pub fn inverse_mellin_at_zero(f: &ConjugateFunction) -> Complex64 {
    f.coeff(0)
}

// ---------------------------------------------------------------------------
// Inverse route 2: phase space.

/// Inverse transform through the phase-space measure, resolved termwise:
/// `int w^{-n} e^{z* w} d^2 mu(w)` equals `z*^n / n!` analytically, so
/// the whole inversion collapses to `psi(z*) = sum c_n z*^n / n!`.
pub fn inverse_phase_space(f: &ConjugateFunction, zstar: Complex64) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    let mut zp = c64(1.0, 0.0);
    let mut fact = 1.0f64;
    for (n, c) in f.laurent.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        acc += c * zp / fact;
        zp *= zstar;
    }
    acc
}

/// Validation variant of the phase-space inversion by genuine 2-D
/// quadrature, available for pole forms.
///
/// The integrand `w e^{z* w} f(w)` is split around the pole: subtracting
/// `1/(w - z0)` from the exponential kernel leaves the entire function
/// `J(z*) = int (e^{z*(w - z0)} - 1)/(w - z0) d^2 mu(w)`, which the grid
/// handles within its exactness budget, and the result assembles as
/// `psi = 1 + z0 e^{z* z0} J`. The subtracted bare pole contributes
/// nothing here: in the termwise sense that defines the inversion, every
/// term of its exterior Laurent expansion dies under the angular
/// integral. (Its absolutely convergent integral, `-(1 - e^{-|z0|^2})/z0`,
/// is nonzero; adding it would answer a different question and shifts the
/// coherent roundtrip by `e^{-|z0|^2}`.)
pub fn inverse_phase_space_quadrature(
    f: &ConjugateFunction,
    zstar: Complex64,
    grid: &PhaseSpaceGrid,
) -> Result<Complex64> {
    let Some(ClosedForm::Pole { z0 }) = f.closed_form else {
        return Err(CoreError::Parameter(
            "quadrature validation needs a pole-form conjugate function".into(),
        ));
    };
    // Same reliability radius as the reproducing kernel: the Taylor tail
    // of e^{z*(w - z0)} must stay inside the grid's exactness budget.
    let radius = (grid.max_exact_degree() as f64).sqrt() / 2.0;
    if z0.norm() > radius {
        return Err(CoreError::Parameter(format!(
            "pole at |z0| = {:.3} lies beyond the grid's reliable radius {radius:.3}",
            z0.norm()
        )));
    }
    let smooth = phase_space_integrate(grid, |w| {
        let x = zstar * (w - z0);
        if x.norm() < 0.7 {
            // (e^x - 1)/x via Taylor keeps the removable singularity smooth.
            let mut term = c64(1.0, 0.0);
            let mut acc = c64(0.0, 0.0);
            for k in 1..=20 {
                acc += term;
                term *= x / (k + 1) as f64;
            }
            zstar * acc
        } else {
            (x.exp() - 1.0) / (w - z0)
        }
    })?;
    Ok(1.0 + z0 * (zstar * z0).exp() * smooth)
}

/// Extracts `a_n = c_n / sqrt(n!)`; the defining measure integral
/// `(1/sqrt(n!)) int f(w) w^{n+1} d^2 mu(w)` reduces to exactly this by
/// monomial orthogonality, so no quadrature is involved.
pub fn coeff_from_conjugate(f: &ConjugateFunction, n: usize) -> Complex64 {
    f.coeff(n) / states::sqrt_fact(n)
}

// ---------------------------------------------------------------------------
// Dual ladder operators.

/// Creation on the conjugate side, `-d/dw`: `c'_{n+1} = (n+1) c_n`.
///
/// The data grows by one index, so nothing is lost; any attached closed
/// form is dropped because the derivative leaves the tabulated family.
pub fn apply_creation_conjugate(f: &ConjugateFunction) -> ConjugateFunction {
    let mut laurent = Vec::with_capacity(f.laurent.len() + 1);
    laurent.push(c64(0.0, 0.0));
    for (n, c) in f.laurent.iter().enumerate() {
        laurent.push((n + 1) as f64 * c);
    }
    ConjugateFunction::with_form(laurent, None)
}

/// Annihilation on the conjugate side: multiply by `w`, then project the
/// resulting constant `c_0` out of the space, leaving `c'_n = c_{n+1}`.
///
/// The projection is the price of keeping Laurent data closed under the
/// algebra; the discarded constant never influences any inner product
/// or inversion, which depend on negative powers only.
pub fn apply_annihilation_conjugate(f: &ConjugateFunction) -> ConjugateFunction {
    let laurent = if f.laurent.len() == 1 {
        vec![c64(0.0, 0.0)]
    } else {
        f.laurent[1..].to_vec()
    };
    ConjugateFunction::with_form(laurent, None)
}

/// Residual of the oscillator eigenproblem on `f_n = sqrt(n!)/w^{n+1}`:
/// applies `H = hbar omega (-d/dw w + 1/2)` through the Laurent rules and
/// compares against `hbar omega (n + 1/2) f_n`, returning the largest
/// coefficient difference.
///
/// Both sides evaluate the same two products `n * c_k` and `0.5 * c_k`,
/// so the residual is exactly zero, not merely small.
pub fn conjugate_ho_eigencheck(n: usize, frame: &OscillatorFrame) -> f64 {
    let f = to_conjugate(&states::fock_basis_state(n, n).expect("n <= n always"));
    let after = apply_creation_conjugate(&apply_annihilation_conjugate(&f));
    let hw = frame.hbar() * frame.omega();
    let mut worst = 0.0f64;
    for k in 0..=after.truncation().max(n) {
        let op_side = hw * (after.coeff(k) + 0.5 * f.coeff(k));
        let eigen_side = hw * (n as f64 * f.coeff(k) + 0.5 * f.coeff(k));
        worst = worst.max((op_side - eigen_side).norm());
    }
    worst
}

// ---------------------------------------------------------------------------
// Position closed form.

/// `e^{x^2} erfc(x)`, stable for any complex `x` (no huge exponentials
/// are ever formed; the reflection absorbs them into the result only
/// when the result genuinely is large).
fn scaled_erfc(x: Complex64) -> Complex64 {
    if x.re >= 0.0 {
        faddeeva(I * x)
    } else {
        2.0 * (x * x).exp() - faddeeva(-I * x)
    }
}

/// Closed form of the position eigenstate on the conjugate side, valid
/// on the two wedges `Re(w^2) > 0`.
///
/// Completing the square in the defining Laplace integral gives
/// `f_q(w) = (pi^{1/4} b^{-1/2} / sqrt 2) e^{-xi^2/2} sigma E(sigma u)`
/// with `xi = q/b`, `u = w/sqrt 2 - xi`, `E(x) = e^{x^2} erfc(x)` and
/// `sigma` the sign of `Re w`. The sign flips between the wedges because
/// the underlying integral jumps across `Re(w^2) = 0`; that jump is also
/// why the Laurent series at infinity is only asymptotic.
pub fn position_conjugate(q: f64, frame: &OscillatorFrame, w: Complex64) -> Result<Complex64> {
    if w.re * w.re - w.im * w.im <= 0.0 {
        return Err(CoreError::Domain(format!(
            "position closed form needs Re(w^2) > 0, got w = {w}"
        )));
    }
    let xi = q / frame.b();
    let sigma = if w.re > 0.0 { 1.0 } else { -1.0 };
    let u = w / std::f64::consts::SQRT_2 - Complex64::from(xi);
    let amplitude = std::f64::consts::PI.powf(0.25) / (frame.b().sqrt() * std::f64::consts::SQRT_2)
        * (-0.5 * xi * xi).exp();
    Ok(amplitude * sigma * scaled_erfc(sigma * u))
}

/// Termwise conjugate reproducing relation: each measure integral
/// `int w'^{n+1} f(w') d^2 mu(w')` returns `c_n` by orthogonality, so
/// reconstruction is the Laurent sum itself. The formal kernel
/// `w'/(w - w')` behind this identity is never integrated directly.
pub fn conjugate_reproduce(
    f: &ConjugateFunction,
    w: Complex64,
    grid: &PhaseSpaceGrid,
) -> Result<Complex64> {
    if w == c64(0.0, 0.0) {
        return Err(CoreError::Singularity {
            at: w,
            what: "reconstruction point must be away from w = 0".into(),
        });
    }
    let budget = grid.max_exact_degree();
    if f.truncation() > budget {
        return Err(CoreError::Parameter(format!(
            "Laurent truncation {} exceeds the grid budget {budget}",
            f.truncation()
        )));
    }
    Ok(eval_laurent(&f.laurent, w))
}
