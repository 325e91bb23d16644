//! Scale-invariant functionals of one closed profile: normalized
//! bending energy, total torsion angle, and averaged torsion. All are
//! functions of the modulus m alone once the closure constraint
//! q0 = Q0(m) is imposed, and all are invariant under the modulus
//! involution n(m) = −m/(1−m); that invariance is what makes two knots
//! with moduli (m, n(m)) equivalent.
//!
//! The bending energy per period reduces to complete integrals,
//!
//! ```text
//! F̂(m) = ∫ κ² ds / (2 κ_max) = (2/√(q0 κ̂²)) [E(m) − (1 − q0) K(m)]
//! ```
//!
//! with κ̂² = κ_max²/k0² (1 on the classical branch, 1 − m/q0 on the
//! extended branch). The torsion integral is of the third kind and
//! evaluates through Weierstrass zeta at the point ψ on the ω3 edge
//! where p(ψ) = e_a − q0:
//!
//! ```text
//! T(m)  = [ω3 ζ(ψ) − ψ ζ(ω3)] / (πi)          (net torsion / 2π)
//! ⟨τ⟩(m) = π T / (2 √(q0 κ̂²) |ω3|)             (mean torsion / κ_max)
//! ```
//!
//! The sign convention p'(ψ) = +2 q0^{3/2} ν fixes ψ uniquely; the
//! residual of that identity is checked on every evaluation.

use crate::elliptic::{weier_zeta, wp_inverse, wp_prime, EllipticContext, Strip};
use crate::error::Error;
use crate::param::{
    branch_root, closure_scale, ls_roots, LangerSingerParams,
};
use crate::tol::Tolerances;
use crate::{Complex, Result};

use std::f64::consts::PI;

/// The three invariants of one closed profile, plus its chart data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalSet {
    pub m: f64,
    /// Closure scale q0 = Q0(m).
    pub q0: f64,
    pub lambda: f64,
    pub nu: f64,
    /// Normalized bending energy per period.
    pub f_hat: f64,
    /// Net torsion angle over one period, divided by 2π.
    pub total_torsion: f64,
    /// Mean torsion per arclength in units of the maximum curvature.
    pub avg_torsion: f64,
    /// Torsion branch point ψ on the upper edge of the period rectangle.
    pub psi: Complex,
    /// κ_max²/k0² for this profile.
    pub kappa_hat2: f64,
}

/// κ̂² = κ_max²/k0²: 1 on the classical branch, 1 − m/q0 extended.
pub fn kappa_hat2(m: f64, q0: f64) -> f64 {
    if m >= 0.0 {
        1.0
    } else {
        1.0 - m / q0
    }
}

/// Normalized bending energy at arbitrary chart point (m, q0).
///
/// The curvature scale k0 cancels between ∫κ²ds and the κ_max
/// normalization, so it only enters through a validity check.
pub fn curvature_functional(m: f64, q0: f64, k0: f64) -> Result<f64> {
    if !(k0 > 0.0) {
        return Err(Error::domain(format!("k0 = {k0} must be positive")));
    }
    let k = crate::elliptic::ellint_k_real(m)?;
    let e = crate::elliptic::ellint_e(m)?;
    Ok(2.0 / (q0 * kappa_hat2(m, q0)).sqrt() * (e - (1.0 - q0) * k))
}

/// The point ψ = ω3 + t with p(ψ) = e_a − q0 and p'(ψ) = +2 q0^{3/2} ν.
pub fn psi_point(ls: &LangerSingerParams, ctx: &EllipticContext) -> Result<Complex> {
    let target = branch_root(ls.m) - ls.q0;
    let psi = wp_inverse(target, ctx, Strip::UpperEdge)?;
    let expect = 2.0 * ls.q0.powf(1.5) * ls.nu();
    // At the strip endpoints p' vanishes to second order and the slope
    // check is meaningless, so gate on the distance from both ends.
    let w1 = ctx.omega1.min(1e300);
    let interior =
        psi.re > 1e-6 * w1 && psi.re < (1.0 - 1e-6) * w1 && ls.nu() > 1e-7;
    if interior {
        let slope = wp_prime(psi, ctx)?;
        if (slope.re - expect).abs() > 1e-8 * expect.max(1.0) || slope.re < 0.0 {
            return Err(Error::domain(format!(
                "torsion branch point inconsistent: p'(psi) = {} vs 2 q0^(3/2) nu = {expect}",
                slope.re
            )));
        }
    }
    Ok(psi)
}

/// The torsion branch point for chart coordinates (m, q0).
pub fn psi_of(m: f64, q0: f64) -> Result<Complex> {
    let ls = LangerSingerParams::new(m, q0)?;
    let (e1, e2, e3) = ls_roots(m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, Tolerances::default())?;
    psi_point(&ls, &ctx)
}

/// Net torsion angle over one period divided by 2π, at chart point (m, q0).
pub fn total_torsion_at(ls: &LangerSingerParams, tol: Tolerances) -> Result<f64> {
    let (e1, e2, e3) = ls_roots(ls.m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, tol)?;
    let psi = psi_point(ls, &ctx)?;
    turns_from_psi(psi, &ctx, tol)
}

/// Net torsion angle over one period divided by 2π, on the closed branch.
pub fn total_torsion(m: f64) -> Result<f64> {
    let q0 = closure_scale(m)?;
    total_torsion_at(&LangerSingerParams::new(m, q0)?, Tolerances::default())
}

/// Mean torsion per arclength in units of κ_max, at chart point (m, q0).
pub fn averaged_torsion(m: f64, q0: f64, k0: f64) -> Result<f64> {
    if !(k0 > 0.0) {
        return Err(Error::domain(format!("k0 = {k0} must be positive")));
    }
    let tol = Tolerances::default();
    let ls = LangerSingerParams::new(m, q0)?;
    let (e1, e2, e3) = ls_roots(m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, tol)?;
    let psi = psi_point(&ls, &ctx)?;
    let total = turns_from_psi(psi, &ctx, tol)?;
    Ok(PI * total / (2.0 * (q0 * kappa_hat2(m, q0)).sqrt() * ctx.omega3_abs))
}

/// Mean torsion per arclength in units of k0 (no curvature-maximum
/// normalization): π T / (2 √q0 |ω3|). Differs from `averaged_torsion`
/// by the factor κ̂, so it is not invariant under the modulus
/// involution; published pair tables quote this variant for the
/// negative-modulus member.
pub fn arc_averaged_torsion(m: f64, q0: f64, k0: f64) -> Result<f64> {
    Ok(averaged_torsion(m, q0, k0)? * kappa_hat2(m, q0).sqrt())
}

fn turns_from_psi(psi: Complex, ctx: &EllipticContext, tol: Tolerances) -> Result<f64> {
    let omega3 = ctx.omega3();
    let num = omega3 * weier_zeta(psi, ctx)? - psi * ctx.eta3;
    if num.re.abs() > tol.imaginary_residue * num.norm().max(1.0) {
        return Err(Error::domain(format!(
            "torsion number picked up a real part {:e}",
            num.re
        )));
    }
    // num / (πi) with num on the imaginary axis.
    Ok(num.im / PI)
}

/// Evaluates all functionals of the closed profile with modulus m < 1.
pub fn evaluate(m: f64, tol: Tolerances) -> Result<FunctionalSet> {
    let q0 = closure_scale(m)?;
    let ls = LangerSingerParams::new(m, q0)?;
    let f_hat = curvature_functional(m, q0, 1.0)?;
    let (e1, e2, e3) = ls_roots(m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, tol)?;
    let psi = psi_point(&ls, &ctx)?;
    let total = turns_from_psi(psi, &ctx, tol)?;
    let kh2 = kappa_hat2(m, q0);
    let avg = PI * total / (2.0 * (q0 * kh2).sqrt() * ctx.omega3_abs);
    Ok(FunctionalSet {
        m,
        q0,
        lambda: ls.lambda(),
        nu: ls.nu(),
        f_hat,
        total_torsion: total,
        avg_torsion: avg,
        psi,
        kappa_hat2: kh2,
    })
}

/// Largest discrepancy among the three functionals between m and n(m).
///
/// Zero in exact arithmetic: the involution maps a closed profile to a
/// closed profile with the same invariants.
pub fn symmetry_check(m: f64) -> Result<f64> {
    let tol = Tolerances::default();
    let a = evaluate(m, tol)?;
    let b = evaluate(crate::param::n_of(m), tol)?;
    Ok((a.f_hat - b.f_hat)
        .abs()
        .max((a.total_torsion - b.total_torsion).abs())
        .max((a.avg_torsion - b.avg_torsion).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::CurvatureSolution;
    use crate::param::{closed_nu, critical_moduli, n_of};
    use crate::quad;

    fn eval(m: f64) -> FunctionalSet {
        evaluate(m, Tolerances::default()).unwrap()
    }

    #[test]
    fn circular_limit() {
        let f = eval(0.0);
        assert!((f.f_hat - PI).abs() < 1e-12);
        assert!(f.total_torsion.abs() < 1e-12);
        assert!(f.avg_torsion.abs() < 1e-12);
        assert!((f.q0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn values_at_the_critical_moduli() {
        let (m0, m0_plus) = critical_moduli();
        let k = crate::elliptic::ellint_k_real(m0).unwrap();
        let expect_f = (2.0 * m0 - 1.0) * k / m0.sqrt();
        let expect_avg = PI / (4.0 * m0.sqrt() * k);
        for &m in &[m0, m0_plus] {
            let f = eval(m);
            assert!((f.f_hat - expect_f).abs() < 1e-9, "m={m}: {}", f.f_hat);
            // T and ⟨τ⟩ lose half the digits here: ν = 0 puts ψ at the
            // corner of the rectangle where the inverse of p is a square
            // root of the (rounded) root distance.
            assert!(
                (f.total_torsion - 0.5).abs() < 1e-7,
                "m={m}: T = {}",
                f.total_torsion
            );
            assert!(
                (f.avg_torsion - expect_avg).abs() < 1e-7,
                "m={m}: {}",
                f.avg_torsion
            );
        }
    }

    #[test]
    fn quadrature_oracles_agree() {
        for &m in &[-3.0, -1.0, -0.3, 0.2, 0.5, 0.8] {
            let f = eval(m);
            let ls = LangerSingerParams::new(m, f.q0).unwrap();
            let sol = CurvatureSolution::new(ls, 1.0, Tolerances::default()).unwrap();
            let s_period = sol.period;
            let kappa_max = kappa_hat2(m, f.q0).sqrt();

            let energy = quad::adaptive(|s| sol.kappa2(s).unwrap(), 0.0, s_period, 1e-12);
            let f_hat_oracle = energy / (2.0 * kappa_max);
            assert!(
                (f.f_hat - f_hat_oracle).abs() < 1e-8,
                "m={m}: f_hat {} vs oracle {f_hat_oracle}",
                f.f_hat
            );

            let twist = quad::adaptive(|s| sol.torsion(s).unwrap(), 0.0, s_period, 1e-12);
            let t_oracle = twist / (2.0 * PI);
            assert!(
                (f.total_torsion - t_oracle).abs() < 1e-7,
                "m={m}: T {} vs oracle {t_oracle}",
                f.total_torsion
            );

            let avg_oracle = twist / (s_period * kappa_max);
            assert!(
                (f.avg_torsion - avg_oracle).abs() < 1e-7,
                "m={m}: avg {} vs oracle {avg_oracle}",
                f.avg_torsion
            );
        }
    }

    #[test]
    fn involution_leaves_every_functional_fixed() {
        // Closed profiles only exist for m up to m0 ≈ 0.82611, so the
        // positive samples stop short of that.
        for i in 0..20 {
            let m = 0.04 + 0.78 * i as f64 / 19.0;
            let a = eval(m);
            let b = eval(n_of(m));
            assert!((a.f_hat - b.f_hat).abs() < 1e-8, "m={m}");
            assert!(
                (a.total_torsion - b.total_torsion).abs() < 1e-8,
                "m={m}: {} vs {}",
                a.total_torsion,
                b.total_torsion
            );
            assert!((a.avg_torsion - b.avg_torsion).abs() < 1e-8, "m={m}");
            assert!(symmetry_check(m).unwrap() < 1e-8, "m={m}");
        }
    }

    #[test]
    fn continuous_across_square_lattices() {
        // g3 vanishes at m = 1/2 and m = −1; nothing special may happen.
        for &m in &[0.5, -1.0] {
            let eps = 1e-6;
            let below = eval(m - eps);
            let mid = eval(m);
            let above = eval(m + eps);
            assert!((below.total_torsion - mid.total_torsion).abs() < 1e-4);
            assert!((above.total_torsion - mid.total_torsion).abs() < 1e-4);
            assert!((below.f_hat - mid.f_hat).abs() < 1e-4);
            assert!((above.f_hat - mid.f_hat).abs() < 1e-4);
        }
    }

    #[test]
    fn closed_branch_nu_peaks_near_its_known_maximum() {
        let mut best = (0.0, 0.0);
        for i in 0..2000 {
            let m = 0.3 + 0.5 * i as f64 / 1999.0;
            let nu = closed_nu(m).unwrap();
            if nu > best.1 {
                best = (m, nu);
            }
        }
        assert!((best.0 - 0.6455).abs() < 1e-3, "argmax {}", best.0);
        assert!((best.1 - 0.1632).abs() < 1e-4, "max {}", best.1);
    }
}
