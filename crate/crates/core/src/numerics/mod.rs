//! Quadrature rules and special functions used by every other module.
//!
//! The Gaussian phase-space measure `d^2 mu(z) = (1/pi) e^{-|z|^2} d^2 z`
//! factorizes in polar coordinates into a radial integral in `s = r^2`
//! with weight `e^{-s}` and a uniform angular average. [`PhaseSpaceGrid`]
//! is exactly that product: a Gauss-Laguerre rule in `s` crossed with an
//! equally spaced angle grid, which integrates `z^n conj(z)^m` exactly up
//! to a stated polynomial budget.

mod faddeeva;
mod hermite;

pub use faddeeva::{erf_complex, erfc_complex, faddeeva};
pub use hermite::{hermite_eval, hermite_normalized};

use crate::error::{CoreError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Largest supported Gauss-Laguerre order.
pub const MAX_GAUSS_LAGUERRE: usize = 256;

/// What a [`QuadratureRule`] discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Nodes and weights for `int_0^inf g(x) e^{-x} dx`.
    GaussLaguerre,
    /// Equally spaced angles on `[0, 2pi)` with weights `2pi/n`.
    AngularUniform,
    /// Composite trapezoid nodes on a symmetric interval `[-v_max, v_max]`.
    ContourLine,
}

/// One-dimensional nodes-and-weights rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Applies the rule to `g`.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> Complex64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| g(x) * w)
            .sum()
    }

    /// Uniform angle grid: `theta_j = 2 pi j / n`, each weighted `2 pi / n`.
    ///
    /// Sums `e^{i k theta}` to zero exactly for `0 < |k| < n`, which is what
    /// makes the phase-space grid orthogonal on monomials.
    pub fn angular_uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::Parameter("angular rule needs n >= 1".into()));
        }
        let w = TAU / n as f64;
        Ok(Self {
            kind: RuleKind::AngularUniform,
            nodes: (0..n).map(|j| w * j as f64).collect(),
            weights: vec![w; n],
        })
    }

    /// Trapezoid nodes on `[-v_max, v_max]` (endpoints carry half weight).
    pub fn contour_line(v_max: f64, nodes: usize) -> Result<Self> {
        if nodes < 2 || !v_max.is_finite() || v_max <= 0.0 {
            return Err(CoreError::Parameter(
                "contour rule needs v_max > 0 and at least 2 nodes".into(),
            ));
        }
        let h = 2.0 * v_max / (nodes - 1) as f64;
        let xs: Vec<f64> = (0..nodes).map(|k| -v_max + h * k as f64).collect();
        let mut ws = vec![h; nodes];
        ws[0] = 0.5 * h;
        ws[nodes - 1] = 0.5 * h;
        Ok(Self {
            kind: RuleKind::ContourLine,
            nodes: xs,
            weights: ws,
        })
    }
}

/// Gauss-Laguerre rule of order `n` for weight `e^{-x}` on `[0, inf)`.
///
/// Nodes are the roots of the Laguerre polynomial `L_n`; eigenvalues of the
/// symmetric Jacobi matrix seed a Newton polish on the three-term
/// recurrence, and weights come from `w_i = x_i / ((n+1) L_{n+1}(x_i))^2`.
/// Exact on polynomials of degree `2n - 1`; weights sum to one.
pub fn gauss_laguerre_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_LAGUERRE {
        return Err(CoreError::Parameter(format!(
            "Gauss-Laguerre order must be within 1..={MAX_GAUSS_LAGUERRE}, got {n}"
        )));
    }
    // Jacobi matrix for alpha = 0: diagonal 2i+1, off-diagonal i.
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = (2 * i + 1) as f64;
        if i + 1 < n {
            jac[(i, i + 1)] = (i + 1) as f64;
            jac[(i + 1, i)] = (i + 1) as f64;
        }
    }
    let mut nodes: Vec<f64> = jac.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut weights = Vec::with_capacity(n);
    for x in &mut nodes {
        for _ in 0..12 {
            let (ln, ln_prev) = laguerre_pair(n, *x);
            // L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x
            let deriv = n as f64 * (ln - ln_prev) / *x;
            let step = ln / deriv;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs() {
                break;
            }
        }
        let (lnp1, _) = laguerre_pair(n + 1, *x);
        let inv = 1.0 / ((n + 1) as f64 * lnp1);
        weights.push(*x * inv * inv);
    }
    Ok(QuadratureRule {
        kind: RuleKind::GaussLaguerre,
        nodes,
        weights,
    })
}

/// `(L_n(x), L_{n-1}(x))` by the three-term recurrence.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Product grid for `int g(z) d^2 mu(z)`, `d^2 mu = (1/pi) e^{-|z|^2} d^2 z`.
#[derive(Debug, Clone)]
pub struct PhaseSpaceGrid {
    radial: QuadratureRule,
    angular: QuadratureRule,
    max_exact_degree: usize,
}

impl PhaseSpaceGrid {
    /// Builds a grid that integrates `z^n conj(z)^m` exactly (value
    /// `m! delta_{nm}`) for all `n, m <= max_exact_degree`.
    ///
    /// Exactness needs `max_exact_degree <= 2 * radial - 1` (radial moments)
    /// and `max_exact_degree < angular` (no angular aliasing).
    pub fn new(radial: usize, angular: usize, max_exact_degree: usize) -> Result<Self> {
        if max_exact_degree + 1 > 2 * radial {
            return Err(CoreError::Parameter(format!(
                "radial order {radial} cannot integrate degree {max_exact_degree} exactly"
            )));
        }
        if max_exact_degree >= angular {
            return Err(CoreError::Parameter(format!(
                "angular count {angular} aliases degree {max_exact_degree}"
            )));
        }
        Ok(Self {
            radial: gauss_laguerre_rule(radial)?,
            angular: QuadratureRule::angular_uniform(angular)?,
            max_exact_degree,
        })
    }

    /// 64 radial x 128 angular nodes, exact through monomial degree 63.
    pub fn standard() -> Self {
        Self::new(64, 128, 63).expect("standard grid parameters are consistent")
    }

    pub fn max_exact_degree(&self) -> usize {
        self.max_exact_degree
    }

    /// Largest node radius; integrands are never sampled beyond it.
    pub fn radius(&self) -> f64 {
        self.radial.nodes.last().copied().unwrap_or(0.0).sqrt()
    }

    /// Nodes `z = sqrt(s) e^{i theta}` with their measure weights.
    pub fn nodes(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let inv_ang = 1.0 / self.angular.nodes.len() as f64;
        self.radial
            .nodes
            .iter()
            .zip(&self.radial.weights)
            .flat_map(move |(&s, &ws)| {
                let r = s.sqrt();
                self.angular
                    .nodes
                    .iter()
                    .map(move |&theta| (Complex64::from_polar(r, theta), ws * inv_ang))
            })
    }
}

/// Evaluates `int g(z) d^2 mu(z)` on the grid.
///
/// Errors with the offending node if `g` returns a non-finite value.
pub fn phase_space_integrate(
    grid: &PhaseSpaceGrid,
    mut g: impl FnMut(Complex64) -> Complex64,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (z, w) in grid.nodes() {
        let val = g(z);
        if !val.re.is_finite() || !val.im.is_finite() {
            return Err(CoreError::Evaluation { at: z });
        }
        acc += val * w;
    }
    Ok(acc)
}

/// Central difference `(g(x + h) - g(x - h)) / (2h)` for complex-valued `g`.
///
/// `h` is a real step along the real axis; for analytic `g` that recovers
/// the complex derivative. Test scaffolding, not a production integrator.
pub fn complex_fd_derivative(
    mut g: impl FnMut(Complex64) -> Complex64,
    x: Complex64,
    h: f64,
) -> Complex64 {
    (g(x + h) - g(x - h)) / (2.0 * h)
}

/// `n!` as f64. Exact through 22!, correctly rounded growth after; callers
/// needing larger `n` should work with [`sqrt_factorial`] or log space.
pub fn factorial(n: usize) -> f64 {
    let mut acc = 1.0f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// `sqrt(n!)`, valid far past the overflow point of `n!` itself.
pub fn sqrt_factorial(n: usize) -> f64 {
    if n <= 170 {
        factorial(n).sqrt()
    } else {
        let log_sum: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
        (0.5 * log_sum).exp()
    }
}

pub(crate) const SQRT_PI: f64 = 1.772453850905516;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64 as C64;

    #[test]
    fn laguerre_low_orders_match_polynomial_roots() {
        // L_1(x) = 1 - x; L_2(x) = (x^2 - 4x + 2)/2 with roots 2 +- sqrt(2).
        let r1 = gauss_laguerre_rule(1).unwrap();
        assert_abs_diff_eq!(r1.nodes[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r1.weights[0], 1.0, epsilon = 1e-14);

        let r2 = gauss_laguerre_rule(2).unwrap();
        let s2 = 2f64.sqrt();
        assert_abs_diff_eq!(r2.nodes[0], 2.0 - s2, epsilon = 1e-13);
        assert_abs_diff_eq!(r2.nodes[1], 2.0 + s2, epsilon = 1e-13);
        assert_abs_diff_eq!(r2.weights[0], (2.0 + s2) / 4.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r2.weights[1], (2.0 - s2) / 4.0, epsilon = 1e-13);
    }

    #[test]
    fn gauss_laguerre_moments_are_exact() {
        for n in [4usize, 16, 64] {
            let rule = gauss_laguerre_rule(n).unwrap();
            assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            for k in 0..2 * n {
                let quad: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&x, &w)| w * x.powi(k as i32))
                    .sum();
                let exact = factorial(k);
                assert!(
                    (quad - exact).abs() <= 1e-12 * exact,
                    "n={n} k={k}: {quad} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn gauss_laguerre_rejects_out_of_range_orders() {
        assert!(gauss_laguerre_rule(0).is_err());
        assert!(gauss_laguerre_rule(MAX_GAUSS_LAGUERRE + 1).is_err());
        assert!(gauss_laguerre_rule(MAX_GAUSS_LAGUERRE).is_ok());
    }

    #[test]
    fn angular_rule_kills_low_harmonics() {
        let rule = QuadratureRule::angular_uniform(16).unwrap();
        for k in 1..16 {
            let s: C64 = rule.integrate(|t| C64::from_polar(1.0, k as f64 * t));
            assert!(s.norm() < 1e-12, "harmonic {k} leaked: {s}");
        }
        let full: C64 = rule.integrate(|_| C64::new(1.0, 0.0));
        assert_abs_diff_eq!(full.re, TAU, epsilon = 1e-12);
    }

    #[test]
    fn grid_orthogonality_on_monomials() {
        let grid = PhaseSpaceGrid::standard();
        let d = grid.max_exact_degree();
        // Diagonal pairs in full, off-diagonal sampled.
        for m in (0..=d).step_by(7).chain([d]) {
            for n in (0..=d).step_by(9).chain([m]) {
                let exact = if m == n { factorial(m) } else { 0.0 };
                let got =
                    phase_space_integrate(&grid, |z| z.powu(n as u32) * z.conj().powu(m as u32))
                        .unwrap();
                // Roundoff in the cancelling sums scales with the moment
                // of |z|^{n+m}, not with the (possibly zero) exact value.
                let scale = factorial((n + m).div_ceil(2)).max(1.0);
                assert!(
                    (got - exact).norm() <= 1e-12 * scale,
                    "n={n} m={m}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn grid_constructor_enforces_budget() {
        assert!(PhaseSpaceGrid::new(4, 128, 8).is_err());
        assert!(PhaseSpaceGrid::new(64, 32, 40).is_err());
        assert!(PhaseSpaceGrid::new(64, 128, 63).is_ok());
    }

    #[test]
    fn fd_derivative_matches_analytic() {
        // d/dx (1/x) at x = 2i is -1/(2i)^2 = 1/4.
        let d = complex_fd_derivative(|x| 1.0 / x, C64::new(0.0, 2.0), 1e-5);
        assert_abs_diff_eq!(d.re, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn factorial_helpers_agree() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        for n in [10usize, 100, 170] {
            let rel = (sqrt_factorial(n) - factorial(n).sqrt()).abs() / factorial(n).sqrt();
            assert!(rel < 1e-12);
        }
        // Beyond f64 factorial range the log-space branch must stay finite.
        assert!(sqrt_factorial(250).is_finite());
        let r = sqrt_factorial(200) / (sqrt_factorial(199) * (200f64).sqrt());
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-12);
    }
}
