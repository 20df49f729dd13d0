//! Numerical toolkit for the Bargmann representation of bosonic states and
//! its conjugate (Laurent) representation.
//!
//! A state with Fock coefficients `a_n` is an entire function
//! `psi(z*) = sum a_n z*^n / sqrt(n!)`. The conjugate picture trades that
//! power series for a Laurent series `f(w) = sum c_n / w^{n+1}` with
//! `c_n = a_n sqrt(n!)`, which turns creation/annihilation into
//! `-d/dw` and multiplication by `w`. The crate provides:
//!
//! * [`numerics`]: Gauss-Laguerre and angular rules, the phase-space grid
//!   for the Gaussian measure, the Faddeeva function, Hermite evaluation.
//! * [`states`]: oscillator frames, Fock-coefficient vectors, ladder
//!   operators, coherent/position/momentum constructors.
//! * [`bargmann`]: evaluation, inner products, coefficient extraction and
//!   the reproducing-kernel identity on the holomorphic side.
//! * [`conjugate`]: the forward transform, both inverse routes (contour
//!   and termwise phase-space), operator duals, closed forms.
//! * [`overlap`]: scalar products computed entirely on the conjugate side.
//! * [`propagators`]: exact harmonic-oscillator kernels in both pictures.
//! * [`semiclassical`]: complex trajectories, shooting, and the
//!   saddle-point propagator in both pictures.
//! * [`verify`]: seeded self-check suites aggregating the invariants above.
//!
//! All routines are pure functions over immutable data; sharing values
//! across threads is safe.

pub mod bargmann;
pub mod conjugate;
mod error;
pub mod numerics;
pub mod overlap;
pub mod propagators;
pub mod semiclassical;
mod serde_util;
pub mod states;
pub mod verify;

pub use error::{CoreError, Result};
pub use num_complex::Complex64;

pub use bargmann::{BargmannFunction, KernelReproduction, LadderOp};
pub use conjugate::{ClosedForm, ConjugateFunction, MellinContour};
pub use numerics::{PhaseSpaceGrid, QuadratureRule};
pub use overlap::OverlapReport;
pub use propagators::{MatrixElementOp, PropagatorSample};
pub use semiclassical::{ComplexTrajectory, WeylHamiltonian};
pub use states::{FockCoefficients, OscillatorFrame, StateDescriptor};
