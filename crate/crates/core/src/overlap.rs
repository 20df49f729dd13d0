//! Scalar products computed on the conjugate side: the double phase-space
//! formula, the oscillatory line-route formula, and the mixed
//! representation, each cross-validated against the series product.

use num_complex::Complex64;
use serde::Serialize;

use crate::bargmann::BargmannFunction;
use crate::conjugate::{to_conjugate, ConjugateFunction};
use crate::error::{CoreError, Result};
use crate::numerics::PhaseSpaceGrid;
use crate::states::{self, inner_series, FockCoefficients};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 16-point Gauss-Legendre abscissae on `[-1, 1]` (positive half).
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_8,
    0.062_253_523_938_647_9,
    0.027_152_459_411_754_1,
];

/// Double phase-space product, reduced termwise: each measure integral
/// extracts one Laurent coefficient, leaving
/// `sum_n (c_n / sqrt(n!))* (c'_n / sqrt(n!))`, the series product of the
/// reconstructed Fock coefficients.
pub fn inner_conjugate_double(fpsi: &ConjugateFunction, fphi: &ConjugateFunction) -> Complex64 {
    let n = fpsi.truncation().min(fphi.truncation());
    let mut acc = c64(0.0, 0.0);
    for k in 0..=n {
        let s = states::sqrt_fact(k);
        acc += (fpsi.coeff(k) / s).conj() * (fphi.coeff(k) / s);
    }
    acc
}

/// Brute 4-D quadrature of the double phase-space product, as a
/// validation of the termwise reduction.
///
/// The integrand `t* w e^{t* w} f*(t) f(w)` carries negative powers down
/// to `|t|^{-N}`, so the mode is restricted to small truncations where
/// the fixed grid (radial 24, angular 64) keeps both the negative powers
/// and the kernel's Taylor tail inside its exactness budget.
pub fn inner_conjugate_double_quadrature(
    fpsi: &ConjugateFunction,
    fphi: &ConjugateFunction,
) -> Result<Complex64> {
    let n_top = fpsi.truncation().max(fphi.truncation());
    if n_top > 6 {
        return Err(CoreError::Parameter(format!(
            "quadrature validation supports truncation <= 6, got {n_top}"
        )));
    }
    let grid = PhaseSpaceGrid::new(24, 64, 40)?;
    let t_nodes: Vec<(Complex64, f64)> = grid.nodes().collect();
    let mut acc = c64(0.0, 0.0);
    for &(t, wt) in &t_nodes {
        let tbar = t.conj();
        // t* f*(t) is a function of t* alone.
        let mut psi_part = c64(0.0, 0.0);
        let tinv = tbar.finv();
        let mut tp = c64(1.0, 0.0);
        for c in fpsi.laurent() {
            psi_part += c.conj() * tp;
            tp *= tinv;
        }
        let mut inner = c64(0.0, 0.0);
        for &(w, ww) in &t_nodes {
            let mut phi_part = c64(0.0, 0.0);
            let winv = w.finv();
            let mut wp = c64(1.0, 0.0);
            for c in fphi.laurent() {
                phi_part += c * wp;
                wp *= winv;
            }
            inner += ww * phi_part * (tbar * w).exp();
        }
        acc += wt * psi_part * inner;
    }
    Ok(acc)
}

/// `S_k = sum_m (m+1)^k c_m u^{-(m+1)}` for `k = 0, 1, 2`; the building
/// block for the line integrand and its first two radial derivatives.
fn s012(coeffs: &[Complex64], u: Complex64) -> [Complex64; 3] {
    let t = u.finv();
    let mut tp = t;
    let mut s = [c64(0.0, 0.0); 3];
    for (m, c) in coeffs.iter().enumerate() {
        let base = c * tp;
        let k = (m + 1) as f64;
        s[0] += base;
        s[1] += k * base;
        s[2] += k * k * base;
        tp *= t;
    }
    s
}

/// Product `fbar_psi(root e^{i a_psi}) * f_phi(root e^{i a_phi})` with
/// `root = sqrt(y + i delta_im)`, together with its first two
/// `y`-derivatives.
///
/// Both factors depend on `y` through `root`, so with
/// `mu = 1/(2(y + i delta))` the chain rule gives
/// `P' = -mu (S1 T0 + S0 T1)` and
/// `P'' = mu^2 (S2 T0 + 2 S1 T1 + S0 T2 + 2 S1 T0 + 2 S0 T1)`.
fn pair_block(
    cpsi_conj: &[Complex64],
    cphi: &[Complex64],
    y: f64,
    delta_im: f64,
    a_psi: f64,
    a_phi: f64,
) -> [Complex64; 3] {
    let base = c64(y, delta_im);
    let root = base.sqrt();
    let u = root * Complex64::from_polar(1.0, a_psi);
    let v = root * Complex64::from_polar(1.0, a_phi);
    let s = s012(cpsi_conj, u);
    let t = s012(cphi, v);
    let mu = (2.0 * base).finv();
    let p0 = s[0] * t[0];
    let cross = s[1] * t[0] + s[0] * t[1];
    let p1 = -mu * cross;
    let p2 = mu * mu * (s[2] * t[0] + 2.0 * s[1] * t[1] + s[0] * t[2] + 2.0 * cross);
    [p0, p1, p2]
}

fn line_pass(
    cpsi_conj: &[Complex64],
    cphi: &[Complex64],
    eps: f64,
    radial_panels: usize,
    angular_nodes: usize,
) -> Complex64 {
    let mut bounds = vec![0.0, eps / 8.0, eps / 4.0, eps / 2.0, eps, 2.0 * eps];
    for k in 1..=radial_panels {
        bounds.push(2.0 * eps + std::f64::consts::PI * k as f64);
    }
    let y_end = *bounds.last().expect("nonempty");

    let mut total = c64(0.0, 0.0);
    for j in 0..angular_nodes {
        let theta = std::f64::consts::TAU * j as f64 / angular_nodes as f64;
        let quarter = std::f64::consts::FRAC_PI_4;
        let (ap_psi, ap_phi) = (quarter - theta, quarter + theta);
        let (aq_psi, aq_phi) = (-(quarter + theta), theta - quarter);

        let mut acc = c64(0.0, 0.0);
        for win in bounds.windows(2) {
            let mid = 0.5 * (win[0] + win[1]);
            let half = 0.5 * (win[1] - win[0]);
            for k in 0..8 {
                for sign in [-1.0, 1.0] {
                    let y = mid + half * sign * GL16_X[k];
                    let p = pair_block(cpsi_conj, cphi, y, -eps, ap_psi, ap_phi)[0];
                    let q = pair_block(cpsi_conj, cphi, y, eps, aq_psi, aq_phi)[0];
                    let osc = Complex64::from_polar(1.0, y);
                    acc += half * GL16_W[k] * (p * osc + q * osc.conj());
                }
            }
        }

        // Integration-by-parts closure of the [y_end, inf) tails.
        let pb = pair_block(cpsi_conj, cphi, y_end, -eps, ap_psi, ap_phi);
        let qb = pair_block(cpsi_conj, cphi, y_end, eps, aq_psi, aq_phi);
        let osc = Complex64::from_polar(1.0, y_end);
        acc += osc * (I * pb[0] - pb[1] - I * pb[2]);
        acc += osc.conj() * (-I * qb[0] - qb[1] + I * qb[2]);

        total += acc;
    }
    eps.exp() * total / (std::f64::consts::TAU * angular_nodes as f64)
}

/// Scalar product by the oscillatory line-route formula.
///
/// The damped form of the underlying derivation is integrated at a fixed
/// regulator `eps` on the contour pair `w_pm = sqrt(r^2 +- i eps) e^{i
/// theta}` rotated by `-+ pi/4`; with `y = r^2` the radial integral gets
/// graded panels across the width-`eps` structure near the origin,
/// pi-long panels through `radial_panels` oscillations, and an
/// integration-by-parts tail. The exact value is independent of `eps`,
/// so the routine runs at `eps = 1` and `eps = 2` and reports an
/// accuracy error if the two disagree, instead of extrapolating a limit.
///
/// `angular_nodes` must exceed the largest Laurent index or the uniform
/// angle average aliases cross terms back onto the diagonal.
pub fn inner_conjugate_line(
    fpsi: &ConjugateFunction,
    fphi: &ConjugateFunction,
    radial_panels: usize,
    angular_nodes: usize,
) -> Result<Complex64> {
    let top = fpsi.truncation().max(fphi.truncation());
    if angular_nodes <= top {
        return Err(CoreError::Parameter(format!(
            "need angular_nodes > top Laurent index {top}, got {angular_nodes}"
        )));
    }
    if radial_panels < 8 {
        return Err(CoreError::Parameter(format!(
            "need at least 8 radial panels, got {radial_panels}"
        )));
    }
    let cpsi_conj: Vec<Complex64> = fpsi.laurent().iter().map(|c| c.conj()).collect();
    let cphi = fphi.laurent().to_vec();

    let v1 = line_pass(&cpsi_conj, &cphi, 1.0, radial_panels, angular_nodes);
    let v2 = line_pass(&cpsi_conj, &cphi, 2.0, radial_panels, angular_nodes);
    let residual = (v1 - v2).norm();
    if residual > 1e-5 * (1.0 + v1.norm()) {
        return Err(CoreError::Accuracy {
            residual,
            what: "line-route value moved when the regulator changed".into(),
        });
    }
    Ok(v1)
}

/// Mixed-representation product `int t* f*_psi(t) phi(t*) d^2 mu(t)`.
///
/// The integrand depends on `t*` alone, so the measure integral keeps
/// only the constant term: `sum_m c_m* d_m` with `d_m` the Taylor
/// coefficients of `phi`. The grid argument documents the quadrature
/// this replaces and bounds the degrees it would have needed.
pub fn inner_mixed(
    fpsi: &ConjugateFunction,
    phi: &BargmannFunction,
    grid: &PhaseSpaceGrid,
) -> Result<Complex64> {
    let budget = grid.max_exact_degree();
    let (np, nq) = (fpsi.truncation(), phi.state().truncation());
    if np > budget || nq > budget {
        return Err(CoreError::Parameter(format!(
            "truncations {np}, {nq} exceed the grid exactness budget {budget}"
        )));
    }
    let n = np.min(nq);
    let mut acc = c64(0.0, 0.0);
    for m in 0..=n {
        acc += fpsi.coeff(m).conj() * phi.taylor()[m];
    }
    Ok(acc)
}

/// The four scalar-product routes evaluated side by side.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapReport {
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub value_series: Complex64,
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub value_double: Complex64,
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub value_line: Complex64,
    #[serde(serialize_with = "crate::serde_util::serialize")]
    pub value_mixed: Complex64,
    pub max_disagreement: f64,
}

/// Runs every implemented route on one pair of states.
pub fn overlap_report(psi: &FockCoefficients, phi: &FockCoefficients) -> Result<OverlapReport> {
    let fpsi = to_conjugate(psi);
    let fphi = to_conjugate(phi);
    let top = fpsi.truncation().max(fphi.truncation());

    let value_series = inner_series(psi, phi);
    let value_double = inner_conjugate_double(&fpsi, &fphi);
    let value_line = inner_conjugate_line(&fpsi, &fphi, 24, (2 * top + 2).max(32))?;
    let value_mixed = inner_mixed(
        &fpsi,
        &BargmannFunction::new(phi.clone()),
        &PhaseSpaceGrid::standard(),
    )?;

    let values = [value_series, value_double, value_line, value_mixed];
    let mut max_disagreement = 0.0f64;
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            max_disagreement = max_disagreement.max((values[a] - values[b]).norm());
        }
    }
    Ok(OverlapReport {
        value_series,
        value_double,
        value_line,
        value_mixed,
        max_disagreement,
    })
}
