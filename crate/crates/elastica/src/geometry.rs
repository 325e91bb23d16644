//! Cylindrical reconstruction of the space curve from its curvature
//! profile: the constant axis vector decomposed on the Frenet triad,
//! the radial and vertical coordinates in closed form, the azimuth
//! through Weierstrass sigma functions, and the Darboux frame.
//!
//! The conserved vector W of the variational problem fixes an axis ẑ
//! and a length scale R with |W| = R⁻², R⁻⁴ = (k0⁴/4)[(1−λ)² + ν²].
//! On the Frenet triad,
//!
//! ```text
//! ẑ = α t̂ + β n̂ + γ b̂,   α = R²(κ² − λk0²)/2,  β = R²κ′,  γ = μk0/κ
//! ```
//!
//! with μ² = ν²/[(1−λ)² + ν²]. The cylindrical coordinates follow as
//!
//! ```text
//! ρ = R²√(κ² − μ²k0²)
//! z = (k0R²/√q0) Z(ξ|m)                     (Z the Jacobi zeta)
//! θ = ξ[μ√q0 − ζ(Ω+ω3) + ζ(ω3)] + (i/2) ln[σ-ratio](ξ)
//! ```
//!
//! where the real abscissa Ω solves p(Ω+ω3) = q0(μ² − 2λ/3) and the
//! sigma ratio has unit modulus, so the log term is a pure phase that
//! must be unwrapped by continuity. The azimuthal advance over one
//! curvature period has the closed form
//!
//! ```text
//! Δθ(m) = 2μ√q0 |ω3| + 2i[ω3 ζ(Ω+ω3) − (Ω+ω3) ζ(ω3)]
//! ```
//!
//! which is real, lands on −π at both endpoints of the closed-knot
//! modulus interval, and inherits the involution symmetry
//! Δθ[n(m)] = Δθ(m).

use crate::curvature::CurvatureSolution;
use crate::elliptic::{
    ellint_k_real, jacobi_zeta, weier_sigma, weier_zeta, wp_inverse, wp_prime, EllipticContext,
    Strip,
};
use crate::error::Error;
use crate::param::{closure_scale, ls_roots, LangerSingerParams};
use crate::tol::Tolerances;
use crate::{Complex, Result};

/// Components of the axis ẑ on the Frenet triad at one arclength, with
/// the length scale R and the axis parameter μ they derive from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Length scale R = |W|^(−1/2).
    pub r: f64,
    pub mu: f64,
}

/// One reconstructed point: cylindrical coordinates, Frenet triad, and
/// the Darboux rotation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub s: f64,
    pub kappa: f64,
    pub tau: f64,
    pub rho: f64,
    pub theta: f64,
    pub z: f64,
    pub position: [f64; 3],
    pub t_hat: [f64; 3],
    pub n_hat: [f64; 3],
    pub b_hat: [f64; 3],
    pub theta_darboux: f64,
}

/// The azimuth parameter Ω ∈ [0, ω1] with p(Ω+ω3) = q0(μ² − 2λ/3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaParam {
    pub omega: f64,
}

/// Darboux-frame data at one arclength: the rotation angle Θ about the
/// tangent plus geodesic curvature, normal curvature, and relative
/// torsion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxFrame {
    pub theta: f64,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_r: f64,
}

/// μ² = ν²/[(1−λ)²+ν²]. The 0/0 at (λ, ν) = (1, 0), the circular
/// profile m = 0, q0 = 1, takes its closed-branch limit value 1/3.
pub fn mu_squared(lambda: f64, nu: f64) -> f64 {
    let denom = (1.0 - lambda) * (1.0 - lambda) + nu * nu;
    if denom == 0.0 {
        return 1.0 / 3.0;
    }
    nu * nu / denom
}

/// The length scale R from R⁻⁴ = (k0⁴/4)[(1−λ)²+ν²].
pub fn length_scale(lambda: f64, nu: f64, k0: f64) -> Result<f64> {
    let a = (1.0 - lambda) * (1.0 - lambda) + nu * nu;
    if a == 0.0 {
        return Err(Error::Unbounded {
            what: "length scale R",
            at: lambda,
        });
    }
    Ok((4.0 / a).powf(0.25) / k0)
}

/// Scale-free radius R̂(m) = k0 κ̂ R at the closed chart point.
///
/// Evaluated through the q0-cancelling form
///
/// ```text
/// R̂⁴ = 16 (q0 κ̂²)² / [(1−m)² + 2q0(1+m) − 3q0²]
/// ```
///
/// which stays accurate on the extended branch where q0 → 0 and λ, ν
/// individually blow up.
pub fn normalized_radius(m: f64) -> Result<f64> {
    let q0 = closure_scale(m)?;
    let scaled = if m >= 0.0 { q0 } else { q0 - m };
    let denom = (1.0 - m) * (1.0 - m) + 2.0 * q0 * (1.0 + m) - 3.0 * q0 * q0;
    if denom <= 0.0 {
        return Err(Error::Unbounded {
            what: "normalized radius",
            at: m,
        });
    }
    Ok((16.0 * scaled * scaled / denom).powf(0.25))
}

/// Radial coordinate ρ = R²√(κ² − μ²k0²) of a chart profile, closed or
/// not.
pub fn open_radial(sol: &CurvatureSolution, s: f64) -> Result<f64> {
    let lambda = sol.params.lambda();
    let r = length_scale(lambda, sol.params.nu(), sol.k0)?;
    let mu2 = mu_squared(lambda, sol.params.nu());
    let radial2 = sol.kappa2(s)? - mu2 * sol.k0 * sol.k0;
    Ok(r * r * radial2.max(0.0).sqrt())
}

/// Vertical coordinate of a chart profile that need not close:
///
/// ```text
/// z(ξ) = (k0 R²/√q0) [Z(ξ|m) + ξ (Q0(m) − q0)/2]
/// ```
///
/// The periodic Jacobi-zeta part is the whole story exactly when
/// q0 = Q0(m); off the closed branch the linear term accumulates a
/// drift per curvature period, returned by [`vertical_drift`].
pub fn open_vertical(sol: &CurvatureSolution, s: f64) -> Result<f64> {
    let m = sol.params.m;
    let q0 = sol.params.q0;
    let lambda = sol.params.lambda();
    let r = length_scale(lambda, sol.params.nu(), sol.k0)?;
    let xi = sol.xi_of(s);
    let amp = sol.k0 * r * r / q0.sqrt();
    Ok(amp * (jacobi_zeta(xi, m)? + xi * (closure_scale(m)? - q0) / 2.0))
}

/// Vertical advance per curvature period, Δz = (k0R²/√q0) K(m) (Q0 − q0).
/// Zero exactly on the closed branch.
pub fn vertical_drift(sol: &CurvatureSolution) -> Result<f64> {
    let m = sol.params.m;
    let q0 = sol.params.q0;
    let r = length_scale(sol.params.lambda(), sol.params.nu(), sol.k0)?;
    let amp = sol.k0 * r * r / q0.sqrt();
    Ok(amp * ellint_k_real(m)? * (closure_scale(m)? - q0))
}

/// Ω with p(Ω+ω3) = q0(μ² − 2λ/3) on the upper edge, after checking the
/// derivative identity p′(Ω+ω3) = 2μ√(q0³)(λ − μ²) away from the edge
/// endpoints where p′ vanishes identically.
fn omega_point(ls: &LangerSingerParams, ctx: &EllipticContext) -> Result<Complex> {
    let lambda = ls.lambda();
    let mu2 = mu_squared(lambda, ls.nu());
    let target = ls.q0 * (mu2 - 2.0 * lambda / 3.0);
    let z = wp_inverse(target, ctx, Strip::UpperEdge)?;
    let w1 = ctx.omega1.min(1e300);
    let interior = z.re > 1e-6 * w1 && z.re < (1.0 - 1e-6) * w1 && mu2 > 1e-14;
    if interior {
        let slope = wp_prime(z, ctx)?;
        let expect = 2.0 * mu2.sqrt() * ls.q0.powf(1.5) * (lambda - mu2);
        if (slope.re - expect).abs() > 1e-8 * expect.abs().max(1.0) {
            return Err(Error::domain(format!(
                "azimuth branch point inconsistent: p'(Omega + omega3) = {} \
                 vs 2 mu q0^(3/2) (lambda - mu^2) = {expect}",
                slope.re
            )));
        }
    }
    Ok(z)
}

/// The azimuth parameter of the closed profile with modulus m.
pub fn omega_param(m: f64) -> Result<OmegaParam> {
    let q0 = closure_scale(m)?;
    let ls = LangerSingerParams::new(m, q0)?;
    let (e1, e2, e3) = ls_roots(m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, Tolerances::default())?;
    Ok(OmegaParam {
        omega: omega_point(&ls, &ctx)?.re,
    })
}

/// Azimuthal advance per curvature period of the closed profile,
/// through the zeta closed form. Real for every m in the closed-knot
/// interval, zero at m = 0, −π at both interval endpoints.
pub fn delta_theta(m: f64) -> Result<f64> {
    let tol = Tolerances::default();
    let q0 = closure_scale(m)?;
    let ls = LangerSingerParams::new(m, q0)?;
    let (e1, e2, e3) = ls_roots(m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, tol)?;
    let om = omega_point(&ls, &ctx)?;
    let mu = mu_squared(ls.lambda(), ls.nu()).sqrt();
    delta_theta_at(mu, q0, om, &ctx, tol)
}

fn delta_theta_at(
    mu: f64,
    q0: f64,
    om: Complex,
    ctx: &EllipticContext,
    tol: Tolerances,
) -> Result<f64> {
    let omega3 = ctx.omega3();
    let zeta = weier_zeta(om, ctx)?;
    let val = Complex::new(2.0 * mu * q0.sqrt() * ctx.omega3_abs, 0.0)
        + 2.0 * Complex::new(0.0, 1.0) * (omega3 * zeta - om * ctx.eta3);
    if val.im.abs() > tol.imaginary_residue * val.norm().max(1.0) {
        return Err(Error::domain(format!(
            "azimuthal advance picked up an imaginary part {:e}",
            val.im
        )));
    }
    Ok(val.re)
}

/// Reconstruction driver for one closed profile: owns the curvature
/// solution plus the precomputed azimuth data (Ω, the sigma-ratio
/// constants, the linear rate of θ in ξ).
#[derive(Debug, Clone)]
pub struct Geometry {
    sol: CurvatureSolution,
    /// Length scale R.
    pub r: f64,
    pub mu: f64,
    /// Azimuth parameter Ω.
    pub omega: f64,
    /// dθ/dξ linear part: μ√q0 − Re ζ(Ω+ω3).
    lin_rate: f64,
    /// Half-period shift in the sigma arguments: ω2 on the classical
    /// branch, ω1 on the extended one.
    omega_b: Complex,
    /// σ(Ω − ω_b) and σ(−Ω − ω_b).
    sig_num: Complex,
    sig_den: Complex,
    /// Ω + ω3 as a lattice point.
    om_point: Complex,
}

impl Geometry {
    /// Builds the reconstruction for a vertically closed profile. The
    /// chart point must satisfy q0 = Q0(m); anything else cannot close
    /// in z and is rejected.
    pub fn new(sol: CurvatureSolution) -> Result<Self> {
        let m = sol.params.m;
        let q0 = sol.params.q0;
        let q0_closed = closure_scale(m)?;
        let gap = (q0 - q0_closed).abs();
        if gap > 1e-9 * q0_closed.max(1.0) {
            return Err(Error::ClosureViolated { q0, q0_closed, gap });
        }
        let lambda = sol.params.lambda();
        let nu = sol.params.nu();
        let r = length_scale(lambda, nu, sol.k0)?;
        let mu = mu_squared(lambda, nu).sqrt();
        let tol = sol.elliptic().tol;
        let om_point = omega_point(&sol.params, sol.elliptic())?;
        let ctx = sol.elliptic();
        let zeta_om = weier_zeta(om_point, ctx)?;
        let lin = Complex::new(mu * q0.sqrt(), 0.0) - zeta_om + ctx.eta3;
        if lin.im.abs() > tol.imaginary_residue * lin.norm().max(1.0) {
            return Err(Error::domain(format!(
                "azimuth rate picked up an imaginary part {:e}",
                lin.im
            )));
        }
        let omega_b = if m > 0.0 {
            ctx.omega2
        } else {
            Complex::new(ctx.omega1, 0.0)
        };
        if !omega_b.is_finite() {
            return Err(Error::domain(format!(
                "azimuth branch shift is off at infinity for m = {m}"
            )));
        }
        let om = om_point.re;
        let sig_num = weier_sigma(Complex::new(om, 0.0) - omega_b, ctx)?;
        let sig_den = weier_sigma(Complex::new(-om, 0.0) - omega_b, ctx)?;
        Ok(Self {
            sol,
            r,
            mu,
            omega: om,
            lin_rate: lin.re,
            omega_b,
            sig_num,
            sig_den,
            om_point,
        })
    }

    /// Builds the closed profile with modulus m and curvature scale k0.
    pub fn closed(m: f64, k0: f64, tol: Tolerances) -> Result<Self> {
        let q0 = closure_scale(m)?;
        let sol = CurvatureSolution::new(LangerSingerParams::new(m, q0)?, k0, tol)?;
        Geometry::new(sol)
    }

    pub fn solution(&self) -> &CurvatureSolution {
        &self.sol
    }

    /// Arclength period of the curvature profile.
    pub fn period(&self) -> f64 {
        self.sol.period
    }

    /// Axis components on the Frenet triad at arclength s.
    pub fn frame_coeffs(&self, s: f64) -> Result<FrameCoeffs> {
        let k0 = self.sol.k0;
        let lambda = self.sol.params.lambda();
        let kappa2 = self.sol.kappa2(s)?;
        let kappa = kappa2.max(0.0).sqrt();
        let r2 = self.r * self.r;
        let alpha = 0.5 * r2 * (kappa2 - lambda * k0 * k0);
        let beta = 0.5 * r2 * self.sol.d_kappa2(s)? / kappa;
        let gamma = self.mu * k0 / kappa;
        let residual = 1.0 - gamma * gamma;
        if residual < 1e-12 {
            return Err(Error::FrameDegenerate { residual });
        }
        Ok(FrameCoeffs {
            alpha,
            beta,
            gamma,
            r: self.r,
            mu: self.mu,
        })
    }

    /// Radial coordinate ρ(s) = R²√(κ² − μ²k0²) ≥ 0.
    pub fn rho_of(&self, s: f64) -> Result<f64> {
        let k0 = self.sol.k0;
        let kappa2 = self.sol.kappa2(s)?;
        Ok(self.r * self.r * (kappa2 - self.mu * self.mu * k0 * k0).max(0.0).sqrt())
    }

    /// Vertical coordinate z(s) = (k0 R²/√q0) Z(ξ|m), periodic under the
    /// closure constraint the constructor enforced.
    pub fn z_of(&self, s: f64) -> Result<f64> {
        let amp = self.sol.k0 * self.r * self.r / self.sol.params.q0.sqrt();
        Ok(amp * jacobi_zeta(self.sol.xi_of(s), self.sol.params.m)?)
    }

    /// The sigma ratio of the azimuth formula at rescaled arclength ξ.
    /// Unit modulus up to roundoff; its unwrapped phase is −2θ_osc.
    fn sigma_ratio(&self, xi: f64) -> Result<Complex> {
        let ctx = self.sol.elliptic();
        let zi = Complex::new(0.0, xi);
        let om = Complex::new(self.omega, 0.0);
        let num = weier_sigma(zi - om - self.omega_b, ctx)?;
        let den = weier_sigma(zi + om - self.omega_b, ctx)?;
        let scale = num.norm().max(den.norm());
        if num.norm() < 1e-12 * scale.max(1e-300) || den.norm() < 1e-12 * scale.max(1e-300) {
            return Err(Error::PoleError {
                dist: num.norm().min(den.norm()),
            });
        }
        let ratio = num * self.sig_num / (den * self.sig_den);
        if (ratio.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::domain(format!(
                "azimuth phase factor has modulus {} instead of 1",
                ratio.norm()
            )));
        }
        Ok(ratio)
    }

    /// Azimuth θ(ξ) with θ(0) = 0, unwrapped by walking the phase from
    /// the origin in steps small enough that no increment reaches π.
    pub fn theta_of_xi(&self, xi: f64) -> Result<f64> {
        if xi == 0.0 {
            return Ok(0.0);
        }
        let step = 0.05 * self.sol.elliptic().omega3_abs;
        let steps = (xi.abs() / step).ceil().max(1.0) as usize;
        let mut prev = Complex::new(1.0, 0.0);
        let mut phase = 0.0;
        for k in 1..=steps {
            let x = xi * k as f64 / steps as f64;
            let ratio = self.sigma_ratio(x)?;
            phase += (ratio / prev).arg();
            prev = ratio;
        }
        Ok(self.lin_rate * xi - 0.5 * phase)
    }

    /// Azimuth at arclength s.
    pub fn theta_of(&self, s: f64) -> Result<f64> {
        self.theta_of_xi(self.sol.xi_of(s))
    }

    /// Azimuthal advance per period, from the stored Ω and lattice.
    pub fn delta_theta(&self) -> Result<f64> {
        delta_theta_at(
            self.mu,
            self.sol.params.q0,
            self.om_point,
            self.sol.elliptic(),
            self.sol.elliptic().tol,
        )
    }

    /// Darboux angle Θ(s) = arctan[−(κ²)′/(k0³ν)]; zero exactly where
    /// the curvature is extremal, in particular at s = 0.
    fn theta_darboux(&self, s: f64) -> Result<f64> {
        let nu = self.sol.params.nu();
        Ok((-self.sol.d_kappa2(s)? / (self.sol.k0.powi(3) * nu)).atan())
    }

    /// Darboux frame of the tube: rotation angle, geodesic and normal
    /// curvatures, relative torsion (Θ′ by central differences).
    pub fn darboux(&self, s: f64) -> Result<DarbouxFrame> {
        let nu = self.sol.params.nu();
        if nu == 0.0 {
            return Err(Error::domain(
                "Darboux frame needs torsion; profile is planar (nu = 0)".to_string(),
            ));
        }
        let theta = self.theta_darboux(s)?;
        let kappa = self.sol.kappa(s)?;
        let h = self.sol.period / 4096.0;
        let dtheta =
            (self.theta_darboux(s + h)? - self.theta_darboux(s - h)?) / (2.0 * h);
        Ok(DarbouxFrame {
            theta,
            kappa_g: kappa * theta.cos(),
            kappa_n: -kappa * theta.sin(),
            tau_r: self.sol.torsion(s)? + dtheta,
        })
    }

    /// The frame ingredients at arclength s given the already-unwrapped
    /// azimuth. Falls back to a one-sided offset where the cylindrical
    /// decomposition degenerates (ρ → 0 or κ → 0 at the boundary
    /// modulus), keeping every returned vector finite.
    fn frames_at(&self, s: f64, theta: f64) -> Result<([f64; 3], [f64; 3], [f64; 3])> {
        let k0 = self.sol.k0;
        let floor = 1e-10 * k0 * k0;
        let mut s_eval = s;
        let mut kappa2 = self.sol.kappa2(s_eval)?;
        let mut radial2 = kappa2 - self.mu * self.mu * k0 * k0;
        if radial2 < floor || kappa2 < floor {
            s_eval = s + 1e-7 * self.sol.period;
            kappa2 = self.sol.kappa2(s_eval)?;
            radial2 = kappa2 - self.mu * self.mu * k0 * k0;
        }
        let kappa = kappa2.sqrt();
        let lambda = self.sol.params.lambda();
        let r2 = self.r * self.r;
        let radial = radial2.sqrt();
        let rho_p = 0.5 * r2 * self.sol.d_kappa2(s_eval)? / radial;
        let rho_tp = if self.mu == 0.0 {
            0.0
        } else {
            0.5 * k0 * self.mu * r2 * (kappa2 - lambda * k0 * k0) / radial
        };
        let alpha = 0.5 * r2 * (kappa2 - lambda * k0 * k0);
        let gamma = self.mu * k0 / kappa;
        let trans = (1.0 - gamma * gamma).max(0.0).sqrt();
        let (sin_t, cos_t) = theta.sin_cos();
        let rho_hat = [cos_t, sin_t, 0.0];
        let theta_hat = [-sin_t, cos_t, 0.0];
        let t_hat = [
            rho_p * rho_hat[0] + rho_tp * theta_hat[0],
            rho_p * rho_hat[1] + rho_tp * theta_hat[1],
            alpha,
        ];
        let b_hat = [
            -trans * theta_hat[0],
            -trans * theta_hat[1],
            gamma,
        ];
        let n_hat = cross(b_hat, t_hat);
        Ok((t_hat, n_hat, b_hat))
    }

    /// One fully assembled sample at arclength s.
    pub fn sample(&self, s: f64) -> Result<CurveSample> {
        let theta = self.theta_of(s)?;
        self.sample_with_theta(s, theta)
    }

    fn sample_with_theta(&self, s: f64, theta: f64) -> Result<CurveSample> {
        let nu = self.sol.params.nu();
        let kappa = self.sol.kappa(s)?;
        let tau = self.sol.torsion(s)?;
        let rho = self.rho_of(s)?;
        let z = self.z_of(s)?;
        let (t_hat, n_hat, b_hat) = self.frames_at(s, theta)?;
        let theta_darboux = if nu == 0.0 { 0.0 } else { self.theta_darboux(s)? };
        let (sin_t, cos_t) = theta.sin_cos();
        Ok(CurveSample {
            s,
            kappa,
            tau,
            rho,
            theta,
            z,
            position: [rho * cos_t, rho * sin_t, z],
            t_hat,
            n_hat,
            b_hat,
            theta_darboux,
        })
    }

    /// Samples `num_periods` curvature periods at `samples_per_period`
    /// points each (plus the closing endpoint). The sigma-ratio phases
    /// are computed per sample and unwrapped in one sequential pass, so
    /// the result does not depend on evaluation order.
    pub fn reconstruct(
        &self,
        samples_per_period: usize,
        num_periods: usize,
    ) -> Result<Vec<CurveSample>> {
        if samples_per_period < 16 {
            return Err(Error::domain(format!(
                "need at least 16 samples per period, got {samples_per_period}"
            )));
        }
        let total = samples_per_period * num_periods.max(1);
        let step = self.sol.period / samples_per_period as f64;
        let mut ratios = Vec::with_capacity(total + 1);
        for i in 0..=total {
            let xi = self.sol.xi_of(step * i as f64);
            ratios.push(self.sigma_ratio(xi).ok());
        }
        let mut phases = vec![0.0; total + 1];
        let mut acc = 0.0;
        let mut prev = Complex::new(1.0, 0.0);
        for (i, ratio) in ratios.iter().enumerate() {
            if let Some(r) = ratio {
                acc += (r / prev).arg();
                prev = *r;
            }
            phases[i] = acc;
        }
        let mut samples = Vec::with_capacity(total + 1);
        for (i, phase) in phases.iter().enumerate() {
            let s = step * i as f64;
            let theta = self.lin_rate * self.sol.xi_of(s) - 0.5 * phase;
            samples.push(self.sample_with_theta(s, theta)?);
        }
        Ok(samples)
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{critical_moduli, n_of};
    use crate::quad;

    fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    fn norm(a: [f64; 3]) -> f64 {
        dot(a, a).sqrt()
    }

    fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    fn geom(m: f64, k0: f64) -> Geometry {
        Geometry::closed(m, k0, Tolerances::default()).unwrap()
    }

    #[test]
    fn axis_components_are_a_unit_vector() {
        for &m in &[-3.0, -1.0, -0.3, 0.2, 0.5, 0.8] {
            let g = geom(m, 1.0);
            for i in 0..32 {
                let s = g.period() * i as f64 / 32.0;
                let f = g.frame_coeffs(s).unwrap();
                let sum = f.alpha * f.alpha + f.beta * f.beta + f.gamma * f.gamma;
                assert!((sum - 1.0).abs() < 1e-10, "m={m} s={s}: {sum}");
                assert!(f.mu * f.mu <= 1.0);
            }
            let f0 = g.frame_coeffs(0.0).unwrap();
            assert!(f0.beta.abs() < 1e-12, "curvature is extremal at s = 0");
        }
    }

    #[test]
    fn mu_squared_limit_at_the_circular_point() {
        assert!((mu_squared(1.0, 0.0) - 1.0 / 3.0).abs() < 1e-15);
        // Approaching along the closed branch reproduces the limit.
        let q0 = closure_scale(1e-4).unwrap();
        let ls = LangerSingerParams::new(1e-4, q0).unwrap();
        let mu2 = mu_squared(ls.lambda(), ls.nu());
        assert!((mu2 - 1.0 / 3.0).abs() < 1e-3, "{mu2}");
    }

    #[test]
    fn radial_coordinate_matches_the_curvature_extrema() {
        for &m in &[0.2, 0.5, 0.8] {
            let g = geom(m, 1.3);
            let k0 = 1.3_f64;
            let r2 = g.r * g.r;
            let q0 = g.solution().params.q0;
            let outer = k0 * r2 * (1.0 - g.mu * g.mu).sqrt();
            let inner = k0 * r2 * (1.0 - g.mu * g.mu - m / q0).max(0.0).sqrt();
            assert!((g.rho_of(0.0).unwrap() - outer).abs() < 1e-10 * outer);
            let mid = g.rho_of(0.5 * g.period()).unwrap();
            assert!((mid - inner).abs() < 1e-9 * outer, "m={m}: {mid} vs {inner}");
            assert!(mid < g.rho_of(0.0).unwrap());
        }
        // At the top of the classical branch the inner radius closes to 0.
        let (m_minus, _) = critical_moduli();
        let g = geom(m_minus, 1.0);
        assert!(g.rho_of(0.5 * g.period()).unwrap() < 1e-5);
    }

    #[test]
    fn vertical_coordinate_is_periodic_and_matches_jacobi_zeta() {
        for &m in &[-1.0, 0.5] {
            let g = geom(m, 1.0);
            let scale = g.solution().k0 * g.r * g.r;
            assert_eq!(g.z_of(0.0).unwrap(), 0.0);
            assert!(g.z_of(g.period()).unwrap().abs() < 1e-9 * scale);
            let q0 = g.solution().params.q0;
            let want = scale / q0.sqrt()
                * jacobi_zeta(g.solution().xi_of(0.5 * g.period()), m).unwrap();
            assert!((g.z_of(0.5 * g.period()).unwrap() - want).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn open_profiles_drift_vertically_off_the_closed_branch() {
        // On the closed branch the drift vanishes and the open-curve
        // coordinates collapse onto the closed ones.
        let g = geom(0.5, 1.0);
        assert!(vertical_drift(g.solution()).unwrap().abs() < 1e-12);
        for i in 0..7 {
            let s = g.period() * i as f64 / 7.0;
            let dz = open_vertical(g.solution(), s).unwrap() - g.z_of(s).unwrap();
            let dr = open_radial(g.solution(), s).unwrap() - g.rho_of(s).unwrap();
            assert!(dz.abs() < 1e-12 && dr.abs() < 1e-12);
        }

        // Off it the coordinate integrates z' = R²(κ² − λk0²)/2 and
        // advances by exactly one drift per curvature period.
        let params = LangerSingerParams::new(0.5, 0.8).unwrap();
        let sol = CurvatureSolution::new(params, 1.0, Tolerances::default()).unwrap();
        let lambda = params.lambda();
        let r = length_scale(lambda, params.nu(), 1.0).unwrap();
        let zp = |s: f64| r * r * (sol.kappa2(s).unwrap() - lambda) / 2.0;
        for s in [0.3, 1.1, 2.6] {
            let want = quad::adaptive(&zp, 0.0, s, 1e-12);
            assert!((open_vertical(&sol, s).unwrap() - want).abs() < 1e-9);
        }
        let drift = vertical_drift(&sol).unwrap();
        assert!(drift.abs() > 1e-3);
        let gap = open_vertical(&sol, sol.period).unwrap() - open_vertical(&sol, 0.0).unwrap();
        assert!((gap - drift).abs() < 1e-10);
    }

    #[test]
    fn azimuth_parameter_cases() {
        // Circular limit m = 0: the lattice degenerates, the chart is
        // exact (q0 = 1, lambda = 1, mu^2 = 1/3), and Omega has the
        // closed form artanh(1/sqrt(3)).
        let om0 = omega_param(0.0).unwrap().omega;
        let exact = (1.0 / 3.0_f64.sqrt()).atanh();
        assert!((om0 - exact).abs() < 1e-12, "{om0} vs {exact}");
        // Boundary of the closed branch: Omega reaches the real
        // half-period.
        let (m_minus, m_plus) = critical_moduli();
        for &m in &[m_minus, m_plus] {
            let (e1, e2, e3) = ls_roots(m);
            let ctx = EllipticContext::from_roots(e1, e2, e3, Tolerances::default()).unwrap();
            let om = omega_param(m).unwrap().omega;
            assert!(
                (om - ctx.omega1).abs() < 1e-6 * ctx.omega1,
                "m={m}: {om} vs {}",
                ctx.omega1
            );
        }
        // Interior points sit strictly inside [0, omega1].
        for &m in &[-1.0, 0.5] {
            let (e1, e2, e3) = ls_roots(m);
            let ctx = EllipticContext::from_roots(e1, e2, e3, Tolerances::default()).unwrap();
            let om = omega_param(m).unwrap().omega;
            assert!(om > 0.0 && om < ctx.omega1);
        }
    }

    #[test]
    fn azimuthal_advance_special_values_and_symmetry() {
        // Circular limit: no azimuthal defect. The linear and zeta
        // contributions are each pi/sqrt(3) with opposite signs.
        assert!(delta_theta(0.0).unwrap().abs() < 1e-8);
        // Both boundary moduli give exactly a half turn backwards.
        let (m_minus, m_plus) = critical_moduli();
        assert!((delta_theta(m_minus).unwrap() + std::f64::consts::PI).abs() < 1e-6);
        assert!((delta_theta(m_plus).unwrap() + std::f64::consts::PI).abs() < 1e-6);
        // The involution m -> -m/(1-m) leaves the advance unchanged.
        for i in 0..8 {
            let m = 0.08 + 0.72 * i as f64 / 7.0;
            let gap = (delta_theta(m).unwrap() - delta_theta(n_of(m)).unwrap()).abs();
            assert!(gap < 1e-8, "m={m}: {gap:e}");
        }
        // Continuity across the branch junction at m = 0.
        let left = delta_theta(-1e-6).unwrap();
        let right = delta_theta(1e-6).unwrap();
        assert!((left - right).abs() < 1e-4, "{left} vs {right}");
    }

    #[test]
    fn azimuth_closed_form_agrees_with_the_unwrapped_phase() {
        for &m in &[-1.0, 0.5] {
            let g = geom(m, 1.0);
            let xi_period = 2.0 * g.solution().elliptic().omega3_abs;
            let walked = g.theta_of_xi(xi_period).unwrap();
            let closed = g.delta_theta().unwrap();
            assert!(
                (walked - closed).abs() < 1e-9,
                "m={m}: {walked} vs {closed}"
            );
            assert_eq!(g.theta_of_xi(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn azimuth_rate_matches_finite_differences() {
        for &m in &[-1.0, 0.5] {
            let g = geom(m, 1.0);
            let k0 = g.solution().k0;
            let lambda = g.solution().params.lambda();
            for i in 1..8 {
                let s = g.period() * i as f64 / 8.0;
                let h = g.period() * 1e-6;
                let fd =
                    (g.theta_of(s + h).unwrap() - g.theta_of(s - h).unwrap()) / (2.0 * h);
                let kappa2 = g.solution().kappa2(s).unwrap();
                let expect = 0.5 * k0 * g.mu * (kappa2 - lambda * k0 * k0)
                    / (kappa2 - g.mu * g.mu * k0 * k0);
                assert!(
                    (fd - expect).abs() < 1e-6 * expect.abs().max(1.0),
                    "m={m} s={s}: {fd} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn reconstruction_invariants() {
        for &m in &[-1.0, 0.5] {
            let g = geom(m, 1.0);
            let spp = 512;
            let samples = g.reconstruct(spp, 1).unwrap();
            assert_eq!(samples.len(), spp + 1);
            let h = g.period() / 4096.0;
            for i in (0..spp).step_by(5) {
                let p = &samples[i];
                // Orthonormal triad.
                assert!((norm(p.t_hat) - 1.0).abs() < 1e-10);
                assert!((norm(p.n_hat) - 1.0).abs() < 1e-10);
                assert!((norm(p.b_hat) - 1.0).abs() < 1e-10);
                assert!(dot(p.t_hat, p.n_hat).abs() < 1e-10);
                assert!(dot(p.t_hat, p.b_hat).abs() < 1e-10);
                assert!(dot(p.n_hat, p.b_hat).abs() < 1e-10);
                // The axis decomposition holds with the frame
                // coefficients of this arclength.
                let f = g.frame_coeffs(p.s).unwrap();
                let z_axis = [
                    f.alpha * p.t_hat[0] + f.beta * p.n_hat[0] + f.gamma * p.b_hat[0],
                    f.alpha * p.t_hat[1] + f.beta * p.n_hat[1] + f.gamma * p.b_hat[1],
                    f.alpha * p.t_hat[2] + f.beta * p.n_hat[2] + f.gamma * p.b_hat[2],
                ];
                assert!(norm(sub(z_axis, [0.0, 0.0, 1.0])) < 1e-8, "m={m} i={i}");
                // Unit speed: the position derivative matches t_hat.
                let plus = g.sample(p.s + h).unwrap();
                let minus = g.sample(p.s - h).unwrap();
                let v = [
                    (plus.position[0] - minus.position[0]) / (2.0 * h),
                    (plus.position[1] - minus.position[1]) / (2.0 * h),
                    (plus.position[2] - minus.position[2]) / (2.0 * h),
                ];
                assert!((norm(v) - 1.0).abs() < 1e-6, "m={m} i={i}: |v|={}", norm(v));
                assert!(norm(sub(v, p.t_hat)) < 1e-6, "m={m} i={i}");
            }
            // Successive azimuth increments stay well below the
            // unwrapping threshold at this resolution.
            for w in samples.windows(2) {
                assert!((w[1].theta - w[0].theta).abs() < 0.5);
            }
        }
    }

    #[test]
    fn curvature_and_torsion_survive_a_frenet_round_trip() {
        let g = geom(0.5, 1.0);
        let h = g.period() / 4096.0;
        for i in 1..12 {
            let s = g.period() * (0.03 + 0.94 * i as f64 / 12.0);
            let plus = g.sample(s + h).unwrap();
            let minus = g.sample(s - h).unwrap();
            let here = g.sample(s).unwrap();
            let dt = [
                (plus.t_hat[0] - minus.t_hat[0]) / (2.0 * h),
                (plus.t_hat[1] - minus.t_hat[1]) / (2.0 * h),
                (plus.t_hat[2] - minus.t_hat[2]) / (2.0 * h),
            ];
            let kappa_fd = norm(dt);
            assert!(
                (kappa_fd - here.kappa).abs() < 1e-5 * here.kappa,
                "s={s}: {kappa_fd} vs {}",
                here.kappa
            );
            let db = [
                (plus.b_hat[0] - minus.b_hat[0]) / (2.0 * h),
                (plus.b_hat[1] - minus.b_hat[1]) / (2.0 * h),
                (plus.b_hat[2] - minus.b_hat[2]) / (2.0 * h),
            ];
            let tau_fd = -dot(db, here.n_hat);
            assert!(
                (tau_fd - here.tau).abs() < 1e-4 * here.tau.abs().max(1.0),
                "s={s}: {tau_fd} vs {}",
                here.tau
            );
        }
    }

    #[test]
    fn darboux_frame_identities() {
        let g = geom(0.5, 1.0);
        assert_eq!(g.darboux(0.0).unwrap().theta, 0.0);
        for i in 0..16 {
            let s = g.period() * i as f64 / 16.0;
            let d = g.darboux(s).unwrap();
            let kappa = g.solution().kappa(s).unwrap();
            assert!((d.kappa_g * d.kappa_g + d.kappa_n * d.kappa_n - kappa * kappa).abs()
                < 1e-10);
            // Geodesic curvature in closed form from the first integral.
            let k0 = g.solution().k0;
            let nu = g.solution().params.nu();
            let lambda = g.solution().params.lambda();
            let a = (1.0 - lambda) * (1.0 - lambda) + nu * nu;
            let kappa2 = g.solution().kappa2(s).unwrap();
            let want = k0.powi(3) * nu
                / (k0.powi(4) * a - (kappa2 - lambda * k0 * k0).powi(2)).sqrt();
            assert!(
                (d.kappa_g - want).abs() < 1e-7 * want.abs(),
                "s={s}: {} vs {want}",
                d.kappa_g
            );
        }
    }

    #[test]
    fn darboux_angle_solves_the_two_parameter_lattice_equation() {
        // p'(i k0 s / 2 + omega_a) on the unreduced lattice equals
        // 2 i nu tan(theta) pointwise.
        for &m in &[-1.0, 0.5] {
            let g = geom(m, 1.0);
            let sol = g.solution();
            let ctx2 = sol.two_parameter();
            let omega_a = if m > 0.0 {
                Complex::new(ctx2.omega1, 0.0)
            } else {
                ctx2.omega2
            };
            let nu = sol.params.nu();
            for i in 1..8 {
                let s = g.period() * i as f64 / 8.0;
                let z = Complex::new(0.0, 0.5 * sol.k0 * s) + omega_a;
                let lhs = wp_prime(z, ctx2).unwrap();
                let theta = g.darboux(s).unwrap().theta;
                let rhs = Complex::new(0.0, 2.0 * nu * theta.tan());
                assert!(
                    (lhs - rhs).norm() < 1e-8 * rhs.norm().max(1.0),
                    "m={m} s={s}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn planar_chart_points_cannot_close() {
        // q0 = 1 makes the profile planar (nu = 0) for 0 < m < 1, and
        // planar profiles never meet the vertical closure constraint.
        let sol = CurvatureSolution::new(
            LangerSingerParams::new(0.5, 1.0).unwrap(),
            1.0,
            Tolerances::default(),
        )
        .unwrap();
        assert_eq!(sol.params.nu(), 0.0);
        let err = Geometry::new(sol).unwrap_err();
        assert!(matches!(err, Error::ClosureViolated { .. }));
    }

    #[test]
    fn normalized_radius_values() {
        let (m_minus, m_plus) = critical_moduli();
        let want = 2.0 * m_minus.sqrt();
        assert!((normalized_radius(m_minus).unwrap() - want).abs() < 1e-6);
        assert!((normalized_radius(m_plus).unwrap() - want).abs() < 1e-6);
        // Involution-invariant in general.
        let a = normalized_radius(-1.0).unwrap();
        let b = normalized_radius(0.5).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        // The circular profile has an infinite scaled radius.
        assert!(matches!(
            normalized_radius(0.0).unwrap_err(),
            Error::Unbounded { .. }
        ));
    }

    #[test]
    fn closure_gate_rejects_off_branch_chart_points() {
        let m = 0.5;
        let q0 = closure_scale(m).unwrap() + 1e-3;
        let sol = CurvatureSolution::new(
            LangerSingerParams::new(m, q0).unwrap(),
            1.0,
            Tolerances::default(),
        )
        .unwrap();
        assert!(matches!(
            Geometry::new(sol).unwrap_err(),
            Error::ClosureViolated { .. }
        ));
    }

    #[test]
    fn vertical_rate_is_the_tangent_axis_component() {
        // z' = alpha exactly under closure; cross-check by quadrature
        // of alpha against the closed-form z.
        let g = geom(0.5, 1.0);
        let a = 0.2 * g.period();
        let b = 0.7 * g.period();
        let integral =
            quad::adaptive(|s| g.frame_coeffs(s).unwrap().alpha, a, b, 1e-12);
        let want = g.z_of(b).unwrap() - g.z_of(a).unwrap();
        assert!((integral - want).abs() < 1e-10, "{integral} vs {want}");
    }
}
