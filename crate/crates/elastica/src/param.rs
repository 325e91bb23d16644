//! Parameter charts for the curvature solution.
//!
//! Two coordinates cover the solution family. The physical chart is
//! (λ, ν, k0): λ is the length multiplier in units of k0², ν the torsion
//! invariant, k0 the curvature scale at arclength zero. The modulus
//! chart is (m, q0) with m the Jacobi parameter of κ² and q0 a positive
//! scale linked to (λ, ν) by
//!
//! ```text
//! λ  = 3/2 − (1+m)/(2 q0)
//! ν² = (1 − q0)(q0 − m)/q0²
//! ```
//!
//! The cubic of the squared-curvature first integral has roots that
//! depend on m alone once scaled back by q0:
//!
//! ```text
//! m ≤ 0:      e = ( (1−2m)/3, (1+m)/3,  (m−2)/3 )
//! 0 ≤ m ≤ 1:  e = ( (1+m)/3,  (1−2m)/3, (m−2)/3 )
//! m ≥ 1:      e = ( (1+m)/3,  (m−2)/3,  (1−2m)/3 )
//! ```
//!
//! Vertical closure of the reconstructed curve forces q0 = Q0(m) =
//! 2E(m)/K(m) − (1−m), which in turn fixes ν(m) on the closed branch.
//! The involution n(m) = −m/(1−m) exchanges equivalent solutions
//! between the classical branch m ∈ [0, 1) and the extended branch
//! m ≤ 0.

use crate::elliptic::{ellint_e, ellint_k_real};
use crate::error::Error;
use crate::solve::brent;
use crate::Result;

/// Physical-chart coordinates (λ, ν) plus the curvature scale k0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureParams {
    pub lambda: f64,
    pub nu: f64,
    pub k0: f64,
}

impl CurvatureParams {
    pub fn new(lambda: f64, nu: f64, k0: f64) -> Result<Self> {
        if !(k0 > 0.0) || !k0.is_finite() {
            return Err(Error::domain(format!("k0 must be positive, got {k0}")));
        }
        if nu < 0.0 || !nu.is_finite() || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "need finite lambda and nu >= 0, got ({lambda}, {nu})"
            )));
        }
        Ok(Self { lambda, nu, k0 })
    }

    /// λ value at which κ(0) changes from a maximum to a minimum:
    /// λ_Δ = 1 − ν²/2.
    pub fn lambda_delta(&self) -> f64 {
        1.0 - 0.5 * self.nu * self.nu
    }
}

/// Modulus-chart coordinates (m, q0), restricted to the branch m ≤ 1,
/// 0 < q0 ≤ 1 on which ν² ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LangerSingerParams {
    pub m: f64,
    pub q0: f64,
}

impl LangerSingerParams {
    pub fn new(m: f64, q0: f64) -> Result<Self> {
        if !m.is_finite() || m > 1.0 {
            return Err(Error::domain(format!("modulus branch needs m <= 1, got {m}")));
        }
        let (lo, hi) = q0_interval(m);
        if !(q0 > 0.0) || q0 < lo - 1e-12 || q0 > hi + 1e-12 {
            return Err(Error::domain(format!(
                "q0 = {q0} outside [{lo}, {hi}] where nu^2 >= 0 for m = {m}"
            )));
        }
        Ok(Self { m, q0 })
    }

    pub fn lambda(&self) -> f64 {
        lambda_of(self.m, self.q0)
    }

    pub fn nu2(&self) -> f64 {
        nu2_of(self.m, self.q0)
    }

    pub fn nu(&self) -> f64 {
        self.nu2().max(0.0).sqrt()
    }

    /// δ = (1 − m)/q0, the gap between the two non-branch roots over q0.
    pub fn delta(&self) -> f64 {
        (1.0 - self.m) / self.q0
    }

    pub fn to_physical(&self, k0: f64) -> Result<CurvatureParams> {
        CurvatureParams::new(self.lambda(), self.nu(), k0)
    }

    /// Ordered cubic roots for this modulus (independent of q0).
    pub fn roots(&self) -> (f64, f64, f64) {
        ls_roots(self.m)
    }
}

/// Ordered cubic roots (e1, e2, e3) for modulus m, any real m.
pub fn ls_roots(m: f64) -> (f64, f64, f64) {
    let a = (1.0 + m) / 3.0;
    let b = (1.0 - 2.0 * m) / 3.0;
    let c = (m - 2.0) / 3.0;
    if m <= 0.0 {
        (b, a, c)
    } else if m <= 1.0 {
        (a, b, c)
    } else {
        (a, c, b)
    }
}

/// The root tied to the curvature branch: e_a = (1+m)/3. It is e1 for
/// 0 < m <= 1 and e2 for m <= 0.
pub fn branch_root(m: f64) -> f64 {
    (1.0 + m) / 3.0
}

/// Lattice parameter p = (e2 − e3)/(e1 − e3) as a function of m.
pub fn p_of_m(m: f64) -> f64 {
    if m <= 0.0 {
        1.0 / (1.0 - m)
    } else if m <= 1.0 {
        1.0 - m
    } else {
        1.0 - 1.0 / m
    }
}

/// Root spread e1 − e3 as a function of m.
pub fn spread_of_m(m: f64) -> f64 {
    if m <= 0.0 {
        1.0 - m
    } else if m <= 1.0 {
        1.0
    } else {
        m
    }
}

/// λ(m, q0) = 3/2 − (1+m)/(2 q0).
pub fn lambda_of(m: f64, q0: f64) -> f64 {
    1.5 - 0.5 * (1.0 + m) / q0
}

/// ν²(m, q0) = (1 − q0)(q0 − m)/q0².
pub fn nu2_of(m: f64, q0: f64) -> f64 {
    (1.0 - q0) * (q0 - m) / (q0 * q0)
}

/// Inverse of λ(m, q0) in m.
pub fn m_of(lambda: f64, q0: f64) -> f64 {
    q0 * (3.0 - 2.0 * lambda) - 1.0
}

/// The q0 interval on which ν² ≥ 0 for modulus m ≤ 1.
pub fn q0_interval(m: f64) -> (f64, f64) {
    (m.max(0.0), 1.0)
}

/// Solves ν² q0² = (1 − q0)(q0 − m) for q0 given (m, ν); returns the
/// two real branches (q0−, q0+) or `NoRealBoundary` when none exist.
pub fn q0_from_nu(m: f64, nu: f64) -> Result<(f64, f64)> {
    let a = 1.0 + nu * nu;
    let disc = (1.0 + m) * (1.0 + m) - 4.0 * m * a;
    if disc < 0.0 {
        return Err(Error::NoRealBoundary { discriminant: disc });
    }
    let s = disc.sqrt();
    Ok(((1.0 + m - s) / (2.0 * a), (1.0 + m + s) / (2.0 * a)))
}

/// Cubic roots rebuilt from the physical chart: the first integral of
/// κ² factors as −(u−1)(u² − (2λ−1)u − ν²) in u = κ²/k0², and mapping
/// u = 1 + p/q0 − e_a/q0 gives roots q0·(1 − 2λ/3) and
/// q0·(e_a/q0 − 1 + u±). They coincide with `ls_roots(m(λ, q0))`
/// exactly, for every admissible q0.
pub fn roots_from_physical(lambda: f64, nu: f64, q0: f64) -> Result<(f64, f64, f64)> {
    if !(q0 > 0.0) || !q0.is_finite() {
        return Err(Error::domain(format!("q0 must be positive, got {q0}")));
    }
    let ea_bar = 1.0 - 2.0 * lambda / 3.0;
    let half_b = 0.5 * (2.0 * lambda - 1.0);
    let s = (half_b * half_b + nu * nu).sqrt();
    let u_plus = half_b + s;
    let u_minus = half_b - s;
    let mut e = [
        q0 * ea_bar,
        q0 * (ea_bar - 1.0 + u_plus),
        q0 * (ea_bar - 1.0 + u_minus),
    ];
    e.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok((e[0], e[1], e[2]))
}

/// Vertical-closure scale Q0(m) = 2 E(m)/K(m) − (1 − m), for m < 1.
pub fn closure_scale(m: f64) -> Result<f64> {
    if m >= 1.0 {
        return Err(Error::domain(format!("closure scale needs m < 1, got {m}")));
    }
    Ok(2.0 * ellint_e(m)? / ellint_k_real(m)? - (1.0 - m))
}

/// ν(m) on the closed branch: ν² = (1/Q0 − 1)(1 − m/Q0).
pub fn closed_nu(m: f64) -> Result<f64> {
    let q = closure_scale(m)?;
    Ok(((1.0 / q - 1.0) * (1.0 - m / q)).max(0.0).sqrt())
}

/// λ(m) on the closed branch.
pub fn closed_lambda(m: f64) -> Result<f64> {
    Ok(lambda_of(m, closure_scale(m)?))
}

/// Chart parameters on the closed branch for modulus m.
pub fn closed_params(m: f64) -> Result<LangerSingerParams> {
    LangerSingerParams::new(m, closure_scale(m)?)
}

/// The modulus involution n(m) = −m/(1 − m); n∘n = id.
pub fn n_of(m: f64) -> f64 {
    -m / (1.0 - m)
}

/// Moduli at which ν(m) vanishes on the closed branch while m ≠ 0:
/// the classical value m0− solves 2E(m) = K(m); m0+ = n(m0−).
pub fn critical_moduli() -> (f64, f64) {
    let f = |m: f64| {
        let k = ellint_k_real(m).unwrap();
        let e = ellint_e(m).unwrap();
        2.0 * e - k
    };
    let m_minus = brent(f, 0.5, 0.99, 1e-15);
    (m_minus, n_of(m_minus))
}

/// Location and height of the single interior maximum of ν(m) on the
/// classical closed branch. ν vanishes at both ends (m = 0 and m0−), so
/// a coarse scan brackets the peak and golden-section narrows it.
pub fn nu_peak() -> Result<(f64, f64)> {
    let (m_minus, _) = critical_moduli();
    let f = |m: f64| closed_nu(m).unwrap_or(0.0);
    let n = 400;
    let grid = |i: usize| m_minus * (i as f64 + 0.5) / n as f64;
    let best = (0..n)
        .max_by(|&i, &j| f(grid(i)).partial_cmp(&f(grid(j))).unwrap())
        .unwrap();
    let (mut a, mut b) = (grid(best.saturating_sub(1)), grid((best + 1).min(n - 1)));
    let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - phi * (b - a), a + phi * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-12 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    let m_star = 0.5 * (a + b);
    Ok((m_star, closed_nu(m_star)?))
}
