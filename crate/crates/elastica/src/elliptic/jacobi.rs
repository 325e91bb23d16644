//! Jacobi elliptic functions sn, cn, dn and the Jacobi zeta function,
//! with the parameter extended to m < 0 by the imaginary-modulus
//! reduction. With μ = −m > 0, m̃ = μ/(1+μ) and v = ξ√(1+μ):
//!
//! ```text
//! sn(ξ|m) = sn(v|m̃) / (√(1+μ)·dn(v|m̃))
//! cn(ξ|m) = cn(v|m̃) / dn(v|m̃)
//! dn(ξ|m) = 1 / dn(v|m̃)
//! Z(ξ|m)  = √(1+μ)·[Z(v|m̃) − m̃·sn(v|m̃)cn(v|m̃)/dn(v|m̃)]
//! ```

use super::integrals::ellint_k_real;
use super::theta::ThetaNome;
use crate::{Error, Result};

/// Descending-Landen evaluation of (sn, cn, dn) for 0 ≤ m < 1.
///
/// Builds the AGM ladder aₙ, cₙ, then recovers the amplitude by the
/// backward angle recurrence φₙ₋₁ = (φₙ + asin((cₙ/aₙ)·sin φₙ))/2.
fn sncndn_classical(xi: f64, m: f64) -> (f64, f64, f64) {
    if m == 0.0 {
        return (xi.sin(), xi.cos(), 1.0);
    }
    let mut a = vec![1.0_f64];
    let mut c = vec![m.sqrt()];
    let mut b = (1.0 - m).sqrt();
    while c.last().unwrap().abs() > f64::EPSILON * a.last().unwrap() {
        let an = 0.5 * (a.last().unwrap() + b);
        let cn = 0.5 * (a.last().unwrap() - b);
        b = (a.last().unwrap() * b).sqrt();
        a.push(an);
        c.push(cn);
        if a.len() > 64 {
            break;
        }
    }
    let n = a.len() - 1;
    if n == 0 {
        return (xi.sin(), xi.cos(), 1.0);
    }
    // Reduce modulo the common period 4K before scaling by 2ⁿ, so the
    // amplitude recurrence never sees large angles.
    let quarter = std::f64::consts::FRAC_PI_2 / a[n];
    let xi_red = xi - 4.0 * quarter * (xi / (4.0 * quarter)).round();
    let mut phi = (1u64 << n) as f64 * a[n] * xi_red;
    for k in (1..=n).rev() {
        phi = 0.5 * (phi + ((c[k] / a[k]) * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    // dn from (1-m) + m·cn² rather than the angle ratio
    // cos φ₀ / cos(φ₁-φ₀), which degenerates to 0/0 at the quarter
    // period. Both summands are nonnegative for 0 ≤ m < 1, so no
    // cancellation, and dn > 0 on this branch fixes the root.
    let dn = ((1.0 - m) + m * cn * cn).sqrt();
    (sn, cn, dn)
}

/// (sn, cn, dn)(ξ|m) for m ≤ 1. m = 1 gives the hyperbolic limit, m < 0
/// goes through the imaginary-modulus reduction.
pub fn jacobi_sn_cn_dn(xi: f64, m: f64) -> Result<(f64, f64, f64)> {
    if !(m <= 1.0) {
        return Err(Error::domain(format!("Jacobi parameter must satisfy m <= 1, got {m}")));
    }
    if m == 1.0 {
        let sech = 1.0 / xi.cosh();
        return Ok((xi.tanh(), sech, sech));
    }
    if m < 0.0 {
        let mu = -m;
        let scale = (1.0 + mu).sqrt();
        let (sn, cn, dn) = sncndn_classical(xi * scale, mu / (1.0 + mu));
        return Ok((sn / (scale * dn), cn / dn, 1.0 / dn));
    }
    Ok(sncndn_classical(xi, m))
}

/// Z(ξ|m) = ∫₀^ξ dn²(u|m) du − (E/K)·ξ, periodic with period 2K(m).
///
/// Evaluated through the theta-function log-derivative
/// Z = (π/2K)·θ₄′(v)/θ₄(v) with v = πξ/(2K), which is spectrally
/// accurate for the nome sizes the chart produces. The quadrature form
/// is retained as the test oracle.
pub fn jacobi_zeta(xi: f64, m: f64) -> Result<f64> {
    if !(m < 1.0) {
        return Err(Error::domain(format!("Jacobi zeta needs m < 1, got {m}")));
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    if m < 0.0 {
        let mu = -m;
        let m_t = mu / (1.0 + mu);
        let scale = (1.0 + mu).sqrt();
        let v = xi * scale;
        let (sn, cn, dn) = sncndn_classical(v, m_t);
        return Ok(scale * (jacobi_zeta(v, m_t)? - m_t * sn * cn / dn));
    }
    let k = ellint_k_real(m)?;
    let k_comp = ellint_k_real(1.0 - m)?;
    let nome = ThetaNome::new((-std::f64::consts::PI * k_comp / k).exp());
    let v = std::f64::consts::FRAC_PI_2 * xi / k;
    let v_red = v - std::f64::consts::PI * (v / std::f64::consts::PI).round();
    Ok(std::f64::consts::FRAC_PI_2 / k * nome.theta4_log_derivative_real(v_red))
}
