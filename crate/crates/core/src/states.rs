//! Oscillator frames and truncated Fock-coefficient vectors.
//!
//! A state is stored as the coefficients `a_n` of `sum a_n |n>` up to a
//! truncation `N`. Constructors that discard weight (coherent tails, the
//! pushed-out top coefficient of a creation operator) record the discarded
//! magnitude in [`FockCoefficients::tail_bound`] instead of dropping it
//! silently. Coherent and eigenstate constructors also remember their
//! origin so downstream transforms can attach closed forms.

use crate::error::{CoreError, Result};
use crate::numerics::{hermite_normalized, sqrt_factorial};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default truncation used by the CLI and the verification suites.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Mass, frequency and hbar, with the derived length and momentum scales.
///
/// `b = sqrt(hbar / (m omega))` and `c = hbar / b`, so `b * c == hbar`
/// holds at floating-point level, not just on paper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorFrame {
    m: f64,
    omega: f64,
    hbar: f64,
    b: f64,
    c: f64,
}

impl OscillatorFrame {
    pub fn new(m: f64, omega: f64, hbar: f64) -> Result<Self> {
        if !(m > 0.0 && omega > 0.0 && hbar > 0.0)
            || !(m.is_finite() && omega.is_finite() && hbar.is_finite())
        {
            return Err(CoreError::Parameter(
                "frame parameters must be finite and positive".into(),
            ));
        }
        let b = (hbar / (m * omega)).sqrt();
        Ok(Self {
            m,
            omega,
            hbar,
            b,
            c: hbar / b,
        })
    }

    /// `m = omega = hbar = 1`, hence `b = c = 1`.
    pub fn unit() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit frame is valid")
    }

    pub fn mass(&self) -> f64 {
        self.m
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    /// Length scale of the ground-state Gaussian.
    pub fn b(&self) -> f64 {
        self.b
    }
    /// Momentum scale, `c = hbar / b`.
    pub fn c(&self) -> f64 {
        self.c
    }
}

/// How a coefficient vector was produced, kept so transforms can attach
/// the matching closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateOrigin {
    Generic,
    Fock(usize),
    Coherent(Complex64),
    Position { q: f64, frame: OscillatorFrame },
    Momentum { p: f64, frame: OscillatorFrame },
}

/// Coefficients `a_0 .. a_N` of a truncated Fock expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct FockCoefficients {
    coeffs: Vec<Complex64>,
    tail_bound: f64,
    origin: StateOrigin,
}

impl FockCoefficients {
    /// Wraps raw coefficients; rejects empty or non-finite input.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(CoreError::Parameter(
                "a state needs at least the n = 0 coefficient".into(),
            ));
        }
        if let Some(bad) = coeffs
            .iter()
            .find(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(CoreError::Evaluation { at: *bad });
        }
        Ok(Self {
            coeffs,
            tail_bound: 0.0,
            origin: StateOrigin::Generic,
        })
    }

    pub(crate) fn with_origin(
        coeffs: Vec<Complex64>,
        tail_bound: f64,
        origin: StateOrigin,
    ) -> Self {
        Self {
            coeffs,
            tail_bound,
            origin,
        }
    }

    /// Truncation index `N`; coefficients above it are implicitly zero.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_n`, zero beyond the truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Magnitude estimate of everything this vector has discarded.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn origin(&self) -> StateOrigin {
        self.origin
    }

    /// Same ket scaled by `factor`. Normalization is never applied
    /// implicitly; callers wanting a unit coherent state multiply by
    /// `exp(-|z0|^2 / 2)` themselves.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::with_origin(
            self.coeffs.iter().map(|a| a * factor).collect(),
            self.tail_bound * factor.norm(),
            StateOrigin::Generic,
        )
    }

    /// Squared series norm `sum |a_n|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Basis vector `|n>` as coefficients up to `n_max`.
pub fn fock_basis_state(n: usize, n_max: usize) -> Result<FockCoefficients> {
    if n > n_max {
        return Err(CoreError::Parameter(format!(
            "fock index {n} exceeds truncation {n_max}"
        )));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    Ok(FockCoefficients::with_origin(
        coeffs,
        0.0,
        StateOrigin::Fock(n),
    ))
}

/// Unnormalized coherent ket `a_n = z0^n / sqrt(n!)`.
///
/// The first discarded coefficient, `|z0|^{N+1} / sqrt((N+1)!)`, is stored
/// as the tail bound.
pub fn coherent_state(z0: Complex64, n_max: usize) -> FockCoefficients {
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut power = Complex64::new(1.0, 0.0);
    coeffs.push(power);
    for n in 1..=n_max {
        power *= z0 / (n as f64).sqrt();
        coeffs.push(power);
    }
    let tail = power.norm() * z0.norm() / ((n_max + 1) as f64).sqrt();
    FockCoefficients::with_origin(coeffs, tail, StateOrigin::Coherent(z0))
}

/// Position eigenstate `a_n = phi_n(q)` with
/// `phi_n(q) = pi^{-1/4} b^{-1/2} 2^{-n/2} (n!)^{-1/2} e^{-q^2/2b^2} H_n(q/b)`.
///
/// Delta-normalized, so the coefficients decay only algebraically; the
/// reported tail bound is the first coefficient past the truncation.
pub fn position_eigenstate(q: f64, frame: &OscillatorFrame, n_max: usize) -> FockCoefficients {
    let xi = q / frame.b();
    let prefactor = std::f64::consts::PI.powf(-0.25) / frame.b().sqrt() * (-0.5 * xi * xi).exp();
    let coeffs: Vec<Complex64> = (0..=n_max)
        .map(|n| Complex64::new(prefactor * hermite_normalized(n, xi), 0.0))
        .collect();
    let tail = (prefactor * hermite_normalized(n_max + 1, xi)).abs();
    FockCoefficients::with_origin(coeffs, tail, StateOrigin::Position { q, frame: *frame })
}

/// Momentum eigenstate `a_n = i^n pi^{-1/4} c^{-1/2} 2^{-n/2} (n!)^{-1/2}
/// e^{-p^2/2c^2} H_n(p/c)`.
///
/// The `i^n` phase is fixed by requiring that the reconstructed `<q|p>`
/// reproduce the Fourier kernel `(2 pi hbar)^{-1/2} e^{i p q / hbar}`.
pub fn momentum_eigenstate(p: f64, frame: &OscillatorFrame, n_max: usize) -> FockCoefficients {
    let xi = p / frame.c();
    let prefactor = std::f64::consts::PI.powf(-0.25) / frame.c().sqrt() * (-0.5 * xi * xi).exp();
    let phases = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let coeffs: Vec<Complex64> = (0..=n_max)
        .map(|n| phases[n % 4] * prefactor * hermite_normalized(n, xi))
        .collect();
    let tail = (prefactor * hermite_normalized(n_max + 1, xi)).abs();
    FockCoefficients::with_origin(coeffs, tail, StateOrigin::Momentum { p, frame: *frame })
}

/// Annihilation: `a'_n = sqrt(n+1) a_{n+1}` at the same truncation.
///
/// If the input carried a tail, the unknown incoming coefficient inflates
/// the recorded tail bound instead of pretending the top is exact.
pub fn apply_annihilation(state: &FockCoefficients) -> FockCoefficients {
    let n_max = state.truncation();
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..n_max {
        coeffs.push(((n + 1) as f64).sqrt() * state.coeffs[n + 1]);
    }
    coeffs.push(Complex64::new(0.0, 0.0));
    let tail = state.tail_bound * ((n_max + 1) as f64).sqrt();
    FockCoefficients::with_origin(coeffs, tail, StateOrigin::Generic)
}

/// Creation: `a'_n = sqrt(n) a_{n-1}` at the same truncation.
///
/// The coefficient pushed past the truncation, `sqrt(N+1) a_N`, is added
/// to the tail bound; callers wanting the operation lossless must leave
/// the top coefficient zero.
pub fn apply_creation(state: &FockCoefficients) -> FockCoefficients {
    let n_max = state.truncation();
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    for n in 1..=n_max {
        coeffs.push((n as f64).sqrt() * state.coeffs[n - 1]);
    }
    let dropped = ((n_max + 1) as f64).sqrt() * state.coeffs[n_max].norm();
    FockCoefficients::with_origin(coeffs, state.tail_bound + dropped, StateOrigin::Generic)
}

/// Series scalar product `<a|b> = sum conj(a_n) b_n`, zero-padding the
/// shorter truncation.
pub fn inner_series(a: &FockCoefficients, b: &FockCoefficients) -> Complex64 {
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// `sqrt(n!)` lookup shared by the Bargmann and conjugate pictures so that
/// both sides of an operator duality do identical arithmetic.
pub(crate) fn sqrt_fact(n: usize) -> f64 {
    sqrt_factorial(n)
}

// ---------------------------------------------------------------------------
// JSON state descriptor, the CLI-facing construction format.
// ---------------------------------------------------------------------------

/// `{"re": .., "im": ..}` complex number in descriptor files.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<ComplexSpec> for Complex64 {
    fn from(s: ComplexSpec) -> Self {
        Complex64::new(s.re, s.im)
    }
}

impl From<Complex64> for ComplexSpec {
    fn from(z: Complex64) -> Self {
        ComplexSpec { re: z.re, im: z.im }
    }
}

/// `{"m": .., "omega": .., "hbar": ..}` frame in descriptor files.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FrameSpec {
    #[serde(default = "one")]
    pub m: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub hbar: f64,
}

fn one() -> f64 {
    1.0
}

/// Which state a descriptor builds.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", content = "params", rename_all = "lowercase")]
pub enum StateKind {
    Fock { n: usize },
    Coherent { z0: ComplexSpec },
    Position { q: f64 },
    Momentum { p: f64 },
    Coeffs { values: Vec<ComplexSpec> },
}

/// JSON state descriptor:
/// `{"type": "fock" | "coherent" | "position" | "momentum" | "coeffs",
///   "params": {..}, "truncation": N, "frame": {..}}`.
///
/// `truncation` defaults to [`DEFAULT_TRUNCATION`], `frame` to the unit
/// frame.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDescriptor {
    #[serde(flatten)]
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameSpec>,
}

impl StateDescriptor {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json)
            .map_err(|e| CoreError::Parameter(format!("bad state descriptor: {e}")))
    }

    pub fn frame(&self) -> Result<OscillatorFrame> {
        match self.frame {
            None => Ok(OscillatorFrame::unit()),
            Some(f) => OscillatorFrame::new(f.m, f.omega, f.hbar),
        }
    }

    /// Realizes the descriptor as a coefficient vector.
    pub fn build(&self) -> Result<FockCoefficients> {
        let n_max = self.truncation.unwrap_or(DEFAULT_TRUNCATION);
        let frame = self.frame()?;
        match &self.kind {
            StateKind::Fock { n } => fock_basis_state(*n, n_max),
            StateKind::Coherent { z0 } => Ok(coherent_state((*z0).into(), n_max)),
            StateKind::Position { q } => Ok(position_eigenstate(*q, &frame, n_max)),
            StateKind::Momentum { p } => Ok(momentum_eigenstate(*p, &frame, n_max)),
            StateKind::Coeffs { values } => {
                FockCoefficients::new(values.iter().map(|&v| v.into()).collect())
            }
        }
    }
}
