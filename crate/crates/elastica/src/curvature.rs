//! The squared-curvature profile κ²(s) of the solution family and the
//! differential equations it satisfies.
//!
//! One profile, three closed forms (all exercised against each other in
//! the tests):
//!
//! ```text
//! Jacobi:        κ² = k0² (1 − (m/q0) sn²(ξ|m)),        ξ = k0 s/(2√q0)
//! Weierstrass:   κ² = (k0²/q0)(q0 + p(iξ + ω_a) − e_a)
//! two-parameter: κ² = k0² (1 + p(iξ̄ + ω̄_a; ē) − ē_a),  ξ̄ = k0 s/2
//! ```
//!
//! ω_a is the half-period at which p takes the branch root e_a =
//! (1+m)/3: ω1 on the classical branch m > 0, ω2 on the extended branch
//! m < 0. The two-parameter form uses the lattice rebuilt from (λ, ν)
//! at unit scale, whose roots are the modulus-chart roots divided by
//! q0. At m = 0 the branch point escapes to the lattice asymptote and
//! κ is the constant k0 (circular limit).
//!
//! Torsion follows from the conservation law κ²τ = ν k0³/2, and κ obeys
//!
//! ```text
//! κ'' = −κ³/2 + k0⁴ τ0² κ⁻³ + λ k0² κ/2,            τ0 = ν k0/2
//! [(κ²)']² = −κ⁶ + 2λ k0² κ⁴ + k0⁴ κ² (1 − 2λ + ν²) − ν² k0⁶
//! ```

use crate::elliptic::{jacobi_sn_cn_dn, wp_eval, EllipticContext};
use crate::error::Error;
use crate::param::{branch_root, roots_from_physical, ls_roots, LangerSingerParams};
use crate::tol::Tolerances;
use crate::{Complex, Result};

/// A solved curvature profile for one point of the modulus chart.
#[derive(Debug, Clone)]
pub struct CurvatureSolution {
    pub params: LangerSingerParams,
    pub k0: f64,
    /// Lattice of the modulus-chart roots; κ² lives on its ω_a edge.
    ctx: EllipticContext,
    /// Lattice rebuilt from (λ, ν) at unit scale for the two-parameter
    /// form; kept separate so the two routes stay independent.
    two_param_ctx: EllipticContext,
    /// Arclength period S = 4 √q0 |ω3| / k0.
    pub period: f64,
}

impl CurvatureSolution {
    pub fn new(params: LangerSingerParams, k0: f64, tol: Tolerances) -> Result<Self> {
        if !(k0 > 0.0) || !k0.is_finite() {
            return Err(Error::domain(format!("k0 must be positive, got {k0}")));
        }
        let (e1, e2, e3) = ls_roots(params.m);
        let ctx = EllipticContext::from_roots(e1, e2, e3, tol)?;
        let (f1, f2, f3) = roots_from_physical(params.lambda(), params.nu(), 1.0)?;
        let two_param_ctx = EllipticContext::from_roots(f1, f2, f3, tol)?;
        let period = 4.0 * params.q0.sqrt() * ctx.omega3_abs / k0;
        Ok(Self {
            params,
            k0,
            ctx,
            two_param_ctx,
            period,
        })
    }

    /// The modulus-chart lattice (shared with the functional and
    /// geometry layers).
    pub fn elliptic(&self) -> &EllipticContext {
        &self.ctx
    }

    /// The unit-scale (λ, ν) lattice of the two-parameter form.
    pub fn two_parameter(&self) -> &EllipticContext {
        &self.two_param_ctx
    }

    /// Rescaled arclength ξ = k0 s / (2 √q0).
    pub fn xi_of(&self, s: f64) -> f64 {
        0.5 * self.k0 * s / self.params.q0.sqrt()
    }

    /// κ²(s) through sn (the cheapest route; used as the canonical one).
    pub fn kappa2(&self, s: f64) -> Result<f64> {
        let (sn, _, _) = jacobi_sn_cn_dn(self.xi_of(s), self.params.m)?;
        Ok(self.k0 * self.k0 * (1.0 - self.params.m / self.params.q0 * sn * sn))
    }

    /// κ(s) > 0.
    pub fn kappa(&self, s: f64) -> Result<f64> {
        Ok(self.kappa2(s)?.max(0.0).sqrt())
    }

    /// d(κ²)/ds = −k0³ (m/q0^{3/2}) sn cn dn.
    pub fn d_kappa2(&self, s: f64) -> Result<f64> {
        let (sn, cn, dn) = jacobi_sn_cn_dn(self.xi_of(s), self.params.m)?;
        Ok(-self.k0.powi(3) * self.params.m / self.params.q0.powf(1.5) * sn * cn * dn)
    }

    /// κ²(s) through p on the modulus-chart lattice.
    pub fn kappa2_weierstrass(&self, s: f64) -> Result<f64> {
        let m = self.params.m;
        let q0 = self.params.q0;
        if m == 0.0 {
            return Ok(self.k0 * self.k0);
        }
        let omega_a = if m > 0.0 {
            Complex::new(self.ctx.omega1, 0.0)
        } else {
            self.ctx.omega2
        };
        let z = Complex::new(0.0, self.xi_of(s)) + omega_a;
        let p = wp_eval(z, &self.ctx)?;
        Ok(self.k0 * self.k0 / q0 * (q0 + p.re - branch_root(m)))
    }

    /// κ²(s) through p on the unit-scale (λ, ν) lattice.
    pub fn kappa2_two_param(&self, s: f64) -> Result<f64> {
        let m = self.params.m;
        if m == 0.0 {
            return Ok(self.k0 * self.k0);
        }
        let ctx = &self.two_param_ctx;
        let omega_a = if m > 0.0 {
            Complex::new(ctx.omega1, 0.0)
        } else {
            ctx.omega2
        };
        let z = Complex::new(0.0, 0.5 * self.k0 * s) + omega_a;
        let p = wp_eval(z, ctx)?;
        let ea_bar = branch_root(m) / self.params.q0;
        Ok(self.k0 * self.k0 * (1.0 + p.re - ea_bar))
    }

    /// τ(s) = ν k0³ / (2 κ²); identically zero for planar solutions.
    pub fn torsion(&self, s: f64) -> Result<f64> {
        let nu = self.params.nu();
        if nu == 0.0 {
            return Ok(0.0);
        }
        Ok(0.5 * nu * self.k0.powi(3) / self.kappa2(s)?)
    }

    /// τ(0) = ν k0 / 2.
    pub fn tau0(&self) -> f64 {
        0.5 * self.params.nu() * self.k0
    }

    /// λ in units of k0² (the arclength multiplier of the variational
    /// problem).
    pub fn lagrange_multiplier(&self) -> f64 {
        self.params.lambda()
    }

    /// Residuals of the two governing equations at arclength s:
    /// the second-order equation for κ (κ'' by central differences with
    /// step `period/1e4`) and the first integral of κ² (all-analytic).
    pub fn ode_residuals(&self, s: f64) -> Result<(f64, f64)> {
        let lambda = self.params.lambda();
        let nu = self.params.nu();
        let k0 = self.k0;
        let h = self.period * 1e-4;
        let kp = self.kappa(s + h)?;
        let k = self.kappa(s)?;
        let km = self.kappa(s - h)?;
        let second = (kp - 2.0 * k + km) / (h * h);
        let tau0 = self.tau0();
        let euler = second + 0.5 * k.powi(3) - k0.powi(4) * tau0 * tau0 / k.powi(3)
            - 0.5 * lambda * k0 * k0 * k;

        let u = self.kappa2(s)? / (k0 * k0);
        let rhs = -u.powi(3) + 2.0 * lambda * u * u + (1.0 - 2.0 * lambda + nu * nu) * u
            - nu * nu;
        let dk2 = self.d_kappa2(s)?;
        let first = dk2 * dk2 - k0.powi(6) * rhs;
        Ok((euler, first))
    }

    /// The equivalent classical-branch profile for an extended-branch
    /// solution: with μ = −m,
    ///
    /// ```text
    /// κ²(s + S/2; m, q0, k0) = κ²(s; m̂, q̂0, k̂0)
    /// m̂ = μ/(1+μ),  q̂0 = (q0 + μ)/(1 + μ),  k̂0 = k0 √((q0 + μ)/q0)
    /// ```
    ///
    /// so the two profiles trace the same function of arclength up to a
    /// half-period shift.
    pub fn modulus_conjugate(&self) -> Result<CurvatureSolution> {
        let m = self.params.m;
        if m >= 0.0 {
            return Err(Error::domain(format!(
                "conjugate is defined for the extended branch m < 0, got {m}"
            )));
        }
        let mu = -m;
        let m_hat = mu / (1.0 + mu);
        let q0_hat = (self.params.q0 + mu) / (1.0 + mu);
        let k0_hat = self.k0 * ((self.params.q0 + mu) / self.params.q0).sqrt();
        CurvatureSolution::new(LangerSingerParams::new(m_hat, q0_hat)?, k0_hat, self.ctx.tol)
    }
}
