//! Complete elliptic integrals of the first and second kind.
//!
//! Fast path: arithmetic-geometric mean iteration (quadratic convergence).
//! The defining integrals are kept in the test suite as the oracle.
//!
//! ```text
//!          π/2                              π/2
//!           ⌠        dθ                      ⌠    ___________
//! K(p)  =   │  ______________ ,    E(m)  =   │  \╱ 1 − m·sin²θ  dθ
//!           ⌡  \╱ 1 − p·sin²θ                ⌡
//!          0                                0
//! ```
//!
//! Extended domains:
//! * K(p) for p ≤ 0 via K(p) = K(−p/p′)/√p′ with p′ = 1 − p;
//! * K(p) for p > 1 is complex: [K(1/p) − i·K(1 − 1/p)]/√p;
//! * E(m) for m < 0 via E(−μ) = √(1+μ)·E(μ/(1+μ)).

use crate::{Complex, Error, Result};

/// AGM loop for 0 ≤ p < 1. Returns (K, Σ 2ⁿ⁻¹cₙ²) so E comes for free.
fn agm_k_and_sum(p: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - p).sqrt();
    let mut c2_sum = 0.5 * p; // n = 0 term: 2⁻¹·c₀² with c₀ = √p
    let mut pow2 = 0.5;
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let cn = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        c2_sum += pow2 * cn * cn;
        if cn.abs() <= f64::EPSILON * a {
            break;
        }
    }
    (std::f64::consts::FRAC_PI_2 / a, c2_sum)
}

/// K(p) restricted to arguments where the value is real (p < 1).
pub fn ellint_k_real(p: f64) -> Result<f64> {
    if !p.is_finite() {
        return Err(Error::domain(format!("K parameter must be finite, got {p}")));
    }
    if (p - 1.0).abs() < crate::Tolerances::default().pole_at_one {
        return Err(Error::PoleAtOne { p });
    }
    if p > 1.0 {
        return Err(Error::domain(format!("K({p}) is complex; use ellint_k")));
    }
    if p < 0.0 {
        let p_prime = 1.0 - p;
        return Ok(ellint_k_real(-p / p_prime)? / p_prime.sqrt());
    }
    Ok(agm_k_and_sum(p).0)
}

/// K(p) on the full real line of the parameter. Real (as a complex value
/// with zero imaginary part) for p < 1, genuinely complex for p > 1.
pub fn ellint_k(p: f64) -> Result<Complex> {
    if (p - 1.0).abs() < crate::Tolerances::default().pole_at_one {
        return Err(Error::PoleAtOne { p });
    }
    if p > 1.0 {
        let re = ellint_k_real(1.0 / p)?;
        let im = ellint_k_real(1.0 - 1.0 / p)?;
        return Ok(Complex::new(re, -im) / p.sqrt());
    }
    Ok(Complex::new(ellint_k_real(p)?, 0.0))
}

/// E(m) for m ≤ 1.
pub fn ellint_e(m: f64) -> Result<f64> {
    if !(m <= 1.0) {
        return Err(Error::domain(format!("E parameter must satisfy m <= 1, got {m}")));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    if m < 0.0 {
        let mu = -m;
        return Ok((1.0 + mu).sqrt() * ellint_e(mu / (1.0 + mu))?);
    }
    let (k, c2_sum) = agm_k_and_sum(m);
    Ok(k * (1.0 - c2_sum))
}
