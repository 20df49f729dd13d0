//! The holomorphic side of the story: entire functions `psi(z*)`, the
//! Gaussian-measure inner product, coefficient extraction, the reproducing
//! kernel, and ladder operators realized as `z*` and `d/dz*`.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::numerics::{phase_space_integrate, PhaseSpaceGrid};
use crate::states::{self, FockCoefficients, OscillatorFrame, StateOrigin};

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    /// `a^dag`, i.e. multiplication by `z*`: a plain shift of the Taylor
    /// coefficients.
    Create,
    /// `a`, i.e. `d/dz*`: the weighted shift `d'_k = (k+1) d_{k+1}`.
    Annihilate,
}

/// A truncated entire function `psi(z*) = sum_n a_n z*^n / sqrt(n!)`.
///
/// The Taylor coefficients `d_n = a_n / sqrt(n!)` are stored pre-divided,
/// so evaluation and operator words never touch a bare factorial.
#[derive(Debug, Clone, PartialEq)]
pub struct BargmannFunction {
    state: FockCoefficients,
    taylor: Vec<Complex64>,
}

impl BargmannFunction {
    pub fn new(state: FockCoefficients) -> Self {
        let taylor = state
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, a)| a / states::sqrt_fact(n))
            .collect();
        Self { state, taylor }
    }

    /// Taylor coefficients with tail bookkeeping carried over from `state`.
    fn from_taylor(taylor: Vec<Complex64>, tail_bound: f64) -> Self {
        let coeffs = taylor
            .iter()
            .enumerate()
            .map(|(n, d)| d * states::sqrt_fact(n))
            .collect();
        let state = FockCoefficients::with_origin(coeffs, tail_bound, StateOrigin::Generic);
        Self { state, taylor }
    }

    /// The Fock-coefficient view of the same state.
    pub fn state(&self) -> &FockCoefficients {
        &self.state
    }

    /// Taylor coefficients `d_n = a_n / sqrt(n!)`.
    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    /// Horner evaluation of the truncated series; finite for any finite
    /// argument, and `eval(0) = a_0` exactly.
    pub fn eval(&self, zstar: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for d in self.taylor.iter().rev() {
            acc = acc * zstar + d;
        }
        acc
    }
}

/// Scalar product `<psi|phi> = int conj(psi(z*)) phi(z*) d^2 mu(z)` by
/// phase-space quadrature.
///
/// The grid integrates monomials `z^n conj(z)^m` exactly only up to its
/// stated degree, so both truncations must fit the budget.
pub fn inner_bargmann(
    psi: &BargmannFunction,
    phi: &BargmannFunction,
    grid: &PhaseSpaceGrid,
) -> Result<Complex64> {
    let budget = grid.max_exact_degree();
    let (np, nq) = (psi.state.truncation(), phi.state.truncation());
    if np > budget || nq > budget {
        return Err(CoreError::Parameter(format!(
            "truncations {np}, {nq} exceed the grid exactness budget {budget}"
        )));
    }
    phase_space_integrate(grid, |z| {
        let zbar = z.conj();
        psi.eval(zbar).conj() * phi.eval(zbar)
    })
}

/// Recovers `a_n = (1/sqrt(n!)) int psi(z*) z^n d^2 mu(z)`.
///
/// Both `n` and the truncation must fit the grid budget; the angular rule
/// then kills every cross term exactly and the radial rule is exact on
/// the survivor.
pub fn coeff_extract(psi: &BargmannFunction, n: usize, grid: &PhaseSpaceGrid) -> Result<Complex64> {
    let budget = grid.max_exact_degree();
    if n > budget || psi.state.truncation() > budget {
        return Err(CoreError::Parameter(format!(
            "coefficient index {n} or truncation {} exceeds the grid budget {budget}",
            psi.state.truncation()
        )));
    }
    let value = phase_space_integrate(grid, |z| psi.eval(z.conj()) * z.powu(n as u32))?;
    Ok(value / states::sqrt_fact(n))
}

/// Result of the reproducing-kernel integral, with a reliability flag
/// instead of a hard error when `|w*|` is too large for the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelReproduction {
    pub value: Complex64,
    /// Set when `|w*|` exceeds `sqrt(max_exact_degree)/2`, the radius
    /// inside which the kernel's Taylor tail stays within the exactness
    /// budget. The value is still returned; treat it as degraded.
    pub radius_exceeded: bool,
}

/// Evaluates `psi(w*) = int e^{w* z} psi(z*) d^2 mu(z)`, the reproducing
/// property of the Gaussian measure.
pub fn reproduce(
    psi: &BargmannFunction,
    wstar: Complex64,
    grid: &PhaseSpaceGrid,
) -> Result<KernelReproduction> {
    let radius = (grid.max_exact_degree() as f64).sqrt() / 2.0;
    let radius_exceeded = wstar.norm() > radius;
    let value = phase_space_integrate(grid, |z| (wstar * z).exp() * psi.eval(z.conj()))?;
    Ok(KernelReproduction {
        value,
        radius_exceeded,
    })
}

/// Applies a word of ladder operators, leftmost letter first.
///
/// Creation shifts the Taylor array (exact, the truncation grows by one);
/// annihilation applies `d'_k = (k+1) d_{k+1}` (the truncation shrinks).
/// A carried tail bound is inflated by the worst ladder factor that could
/// act on the first discarded coefficient.
pub fn apply_bargmann_operator(psi: &BargmannFunction, word: &[LadderOp]) -> BargmannFunction {
    let mut taylor = psi.taylor.clone();
    let mut tail = psi.state.tail_bound();
    for op in word {
        let n_max = taylor.len() - 1;
        match op {
            LadderOp::Create => {
                taylor.insert(0, Complex64::new(0.0, 0.0));
                tail *= ((n_max + 2) as f64).sqrt();
            }
            LadderOp::Annihilate => {
                let mut next: Vec<Complex64> = (0..n_max)
                    .map(|k| ((k + 1) as f64) * taylor[k + 1])
                    .collect();
                if next.is_empty() {
                    next.push(Complex64::new(0.0, 0.0));
                }
                taylor = next;
                tail *= ((n_max + 1) as f64).sqrt();
            }
        }
    }
    BargmannFunction::from_taylor(taylor, tail)
}

/// Closed form of `<z|q>` for a position eigenstate:
/// `pi^{-1/4} b^{-1/2} exp{-q^2/2b^2 - z*^2/2 + sqrt(2) z* q / b}`.
pub fn position_overlap(zstar: Complex64, q: f64, frame: &OscillatorFrame) -> Complex64 {
    let xi = q / frame.b();
    let amplitude = std::f64::consts::PI.powf(-0.25) / frame.b().sqrt();
    let exponent = -0.5 * (xi * xi) - 0.5 * zstar * zstar + std::f64::consts::SQRT_2 * xi * zstar;
    amplitude * exponent.exp()
}
