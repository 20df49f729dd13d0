//! Exact harmonic-oscillator propagators in both representations, the
//! diagonal trace series, and position/momentum matrix elements.

use num_complex::Complex64;
use serde::Serialize;

use crate::conjugate::{to_conjugate, ConjugateFunction};
use crate::error::{CoreError, Result};
use crate::states::{apply_annihilation, apply_creation, coherent_state, OscillatorFrame};

const I: Complex64 = Complex64::new(0.0, 1.0);

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// One evaluated propagator point, as emitted by the CLI.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PropagatorSample {
    pub t: f64,
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub argument: Complex64,
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub source: Complex64,
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub value: Complex64,
}

/// Quadrature selecting the position or momentum operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixElementOp {
    X,
    P,
}

/// The evolved coherent label `z0 e^{-i omega t}`.
fn z0_at(z0: Complex64, t: f64, frame: &OscillatorFrame) -> Complex64 {
    z0 * (-I * (frame.omega() * t)).exp()
}

/// Coherent-state propagator of the oscillator in the Bargmann picture:
/// `k(z*, z0, t) = exp(z0 e^{-i omega t} z* - i omega t / 2)`.
pub fn exact_ho_bargmann(
    zstar: Complex64,
    z0: Complex64,
    t: f64,
    frame: &OscillatorFrame,
) -> Complex64 {
    let half_phase = Complex64::new(0.0, -0.5 * frame.omega() * t);
    (z0_at(z0, t, frame) * zstar + half_phase).exp()
}

/// The same propagator on the conjugate side: a single pole that circles
/// the origin, `e^{-i omega t / 2} / (w - z0 e^{-i omega t})`.
pub fn exact_ho_conjugate(
    w: Complex64,
    z0: Complex64,
    t: f64,
    frame: &OscillatorFrame,
) -> Result<Complex64> {
    let pole = z0_at(z0, t, frame);
    let d = w - pole;
    if d.norm() <= 1e-12 * w.norm().max(1.0) {
        return Err(CoreError::Singularity {
            at: w,
            what: "conjugate propagator pole w = z0 e^{-i omega t}".into(),
        });
    }
    Ok(Complex64::new(0.0, -0.5 * frame.omega() * t).exp() / d)
}

/// Diagonal of the conjugate propagator, summed over the first `n_terms`
/// eigenphases: `(1/w) sum_{n<N} e^{-i omega (n + 1/2) t}`.
///
/// The geometric ratio degenerates to 1 when `omega t` is a multiple of
/// `2 pi`; that branch is taken explicitly instead of dividing 0 by 0.
pub fn diagonal_trace_series(
    w: Complex64,
    t: f64,
    n_terms: usize,
    frame: &OscillatorFrame,
) -> Result<Complex64> {
    if w.norm() == 0.0 {
        return Err(CoreError::Singularity {
            at: w,
            what: "trace series carries a 1/w prefactor".into(),
        });
    }
    let q = (-I * (frame.omega() * t)).exp();
    let half = Complex64::new(0.0, -0.5 * frame.omega() * t).exp();
    let one = Complex64::new(1.0, 0.0);
    if (one - q).norm() < 1e-12 {
        return Ok(n_terms as f64 * half / w);
    }
    Ok(half * (one - q.powu(n_terms as u32)) / (one - q) / w)
}

/// Conjugate-side matrix element `f(w)` of `X` or `P` applied to the
/// coherent state `|z'>`, in closed form.
///
/// `X = (b/sqrt2)(a + a^dag)` maps to `(b/sqrt2)(w - d/dw)` acting on
/// `1/(w - z')`; `P = (c/(i sqrt2))(a - a^dag)` maps to
/// `(c/(i sqrt2))(w + d/dw)`. The `w`-multiplication term keeps the
/// constant it generates, matching the closed form the derivation quotes;
/// [`matrix_element_laurent`] carries the projected (decaying) series.
pub fn matrix_element_conjugate(
    op: MatrixElementOp,
    zprime: Complex64,
    w: Complex64,
    frame: &OscillatorFrame,
) -> Result<Complex64> {
    let d = w - zprime;
    if d.norm() <= 1e-12 * w.norm().max(1.0) {
        return Err(CoreError::Singularity {
            at: w,
            what: "matrix-element pole w = z'".into(),
        });
    }
    let ratio = w / d;
    let inv_sq = (d * d).finv();
    Ok(match op {
        MatrixElementOp::X => frame.b() / SQRT_2 * (ratio + inv_sq),
        MatrixElementOp::P => -I * (frame.c() / SQRT_2) * (ratio - inv_sq),
    })
}

/// Same matrix element as honest Laurent data, built by applying the
/// ladder pipeline to the truncated coherent state and transforming.
///
/// Relative to [`matrix_element_conjugate`] the constant generated by
/// `w`-multiplication is projected out, which is invisible to every
/// inverse route (constants integrate to zero against the measure).
pub fn matrix_element_laurent(
    op: MatrixElementOp,
    zprime: Complex64,
    n_max: usize,
    frame: &OscillatorFrame,
) -> Result<ConjugateFunction> {
    let base = coherent_state(zprime, n_max);
    let raised = apply_creation(&base);
    let lowered = apply_annihilation(&base);
    let coeffs: Vec<Complex64> = (0..=n_max)
        .map(|n| {
            let u = raised.coeff(n);
            let d = lowered.coeff(n);
            match op {
                MatrixElementOp::X => frame.b() / SQRT_2 * (d + u),
                MatrixElementOp::P => -I * (frame.c() / SQRT_2) * (d - u),
            }
        })
        .collect();
    let state = crate::states::FockCoefficients::new(coeffs)?;
    Ok(to_conjugate(&state))
}
