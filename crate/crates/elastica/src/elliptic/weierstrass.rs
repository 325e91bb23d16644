//! Weierstrass functions p, p', zeta, sigma on rectangular lattices,
//! plus the real-line inverse used to place parameters on the lattice.
//!
//! Generic lattices go through theta series after cell reduction:
//!
//! ```text
//! p(z)     = e3 + (C θ4(v)/θ1(v))²,   v = πz/(2ω1),  C = (π/(2ω1)) θ2(0) θ3(0)
//! zeta(z)  = (η1/ω1) z + (π/(2ω1)) θ1'(v)/θ1(v)
//! sigma(z) = (2ω1/π) exp(η1 z²/(2ω1)) θ1(v)/θ1'(0)
//! ```
//!
//! with zeta picking up 2 n1 η1 + 2 n3 η3 per cell shift and sigma the
//! matching exponential factor and sign. Degenerate lattices use the
//! hyperbolic/trigonometric closed forms from the context module.

use crate::elliptic::context::{EllipticContext, Lattice};
use crate::error::Error;
use crate::solve::brent;
use crate::tol::Tolerances;
use crate::{Complex, Result};

use std::f64::consts::PI;

/// p(z) on the lattice described by `ctx`.
pub fn wp_eval(z: Complex, ctx: &EllipticContext) -> Result<Complex> {
    let (z_red, _, _) = ctx.reduce(z);
    guard_pole(z_red, ctx)?;
    match ctx.lattice {
        Lattice::Generic { nome, t20, t30, .. } => {
            let v = ctx.theta_arg(z_red);
            let c = 0.5 * PI / ctx.omega1 * t20 * t30;
            let ratio = nome.theta4(v) / nome.theta1(v);
            Ok(ctx.e3 + (c * ratio) * (c * ratio))
        }
        Lattice::RightDegenerate { c, a } => {
            let s = (a * z_red).sinh();
            Ok(c + a * a / (s * s))
        }
        Lattice::LeftDegenerate { c, b } => {
            let s = (b * z_red).sin();
            Ok(-c + b * b / (s * s))
        }
    }
}

/// p'(z) on the lattice described by `ctx`.
pub fn wp_prime(z: Complex, ctx: &EllipticContext) -> Result<Complex> {
    let (z_red, _, _) = ctx.reduce(z);
    guard_pole(z_red, ctx)?;
    match ctx.lattice {
        Lattice::Generic { nome, t20, t30, .. } => {
            let v = ctx.theta_arg(z_red);
            let c = 0.5 * PI / ctx.omega1 * t20 * t30;
            let t1 = nome.theta1(v);
            let t4 = nome.theta4(v);
            let t1p = nome.theta1_prime(v);
            let t4p = nome.theta4_prime(v);
            Ok(2.0 * c * c * (0.5 * PI / ctx.omega1) * t4 * (t4p * t1 - t4 * t1p) / (t1 * t1 * t1))
        }
        Lattice::RightDegenerate { a, .. } => {
            let s = (a * z_red).sinh();
            let ch = (a * z_red).cosh();
            Ok(-2.0 * a * a * a * ch / (s * s * s))
        }
        Lattice::LeftDegenerate { b, .. } => {
            let s = (b * z_red).sin();
            let co = (b * z_red).cos();
            Ok(-2.0 * b * b * b * co / (s * s * s))
        }
    }
}

/// zeta(z); quasi-periodic, so cell shifts add 2 n1 η1 + 2 n3 η3.
pub fn weier_zeta(z: Complex, ctx: &EllipticContext) -> Result<Complex> {
    let (z_red, n1, n3) = ctx.reduce(z);
    guard_pole(z_red, ctx)?;
    // Skip the products when a count is zero: on degenerate branches
    // the eta constant along the infinite period is ±inf, and
    // 0 * inf would poison the sum.
    let mut shift = Complex::new(0.0, 0.0);
    if n1 != 0 {
        shift += 2.0 * n1 as f64 * Complex::new(ctx.eta1, 0.0);
    }
    if n3 != 0 {
        shift += 2.0 * n3 as f64 * ctx.eta3;
    }
    match ctx.lattice {
        Lattice::Generic { nome, .. } => {
            let v = ctx.theta_arg(z_red);
            let base = ctx.eta1 / ctx.omega1 * z_red
                + 0.5 * PI / ctx.omega1 * (nome.theta1_prime(v) / nome.theta1(v));
            Ok(base + shift)
        }
        Lattice::RightDegenerate { c, a } => {
            let az = a * z_red;
            Ok(-c * z_red + a * az.cosh() / az.sinh() + shift)
        }
        Lattice::LeftDegenerate { c, b } => {
            let bz = b * z_red;
            Ok(c * z_red + b * bz.cos() / bz.sin() + shift)
        }
    }
}

/// sigma(z); entire, with the usual exponential factor per cell shift.
pub fn weier_sigma(z: Complex, ctx: &EllipticContext) -> Result<Complex> {
    match ctx.lattice {
        Lattice::Generic { nome, t1p0, .. } => {
            let (z_red, n1, n3) = ctx.reduce(z);
            let v = ctx.theta_arg(z_red);
            let base = 2.0 * ctx.omega1 / PI
                * (ctx.eta1 * z_red * z_red / (2.0 * ctx.omega1)).exp()
                * nome.theta1(v)
                / t1p0;
            if n1 == 0 && n3 == 0 {
                return Ok(base);
            }
            let eta_shift =
                2.0 * n1 as f64 * Complex::new(ctx.eta1, 0.0) + 2.0 * n3 as f64 * ctx.eta3;
            let midpoint = z_red
                + n1 as f64 * Complex::new(ctx.omega1, 0.0)
                + n3 as f64 * ctx.omega3();
            let sign = if (n1 * n3 + n1 + n3) % 2 != 0 {
                -1.0
            } else {
                1.0
            };
            Ok(sign * (eta_shift * midpoint).exp() * base)
        }
        Lattice::RightDegenerate { c, a } => {
            Ok((a * z).sinh() / a * (-0.5 * c * z * z).exp())
        }
        Lattice::LeftDegenerate { c, b } => Ok((b * z).sin() / b * (0.5 * c * z * z).exp()),
    }
}

/// Edges of the fundamental rectangle on which p is real and monotone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strip {
    /// z = ω3 + t with t ∈ [0, ω1]; p rises from e3 to e2 and p' ≥ 0.
    UpperEdge,
    /// z = t with t ∈ (0, ω1]; p falls from +inf to e1.
    RealAxis,
}

/// Inverts w = p(z) for real w on the requested rectangle edge.
pub fn wp_inverse(w: f64, ctx: &EllipticContext, strip: Strip) -> Result<Complex> {
    let slack = 1e-9 * ctx.spread().max(1.0);
    match strip {
        Strip::UpperEdge => match ctx.lattice {
            Lattice::LeftDegenerate { .. } => Err(Error::domain(
                "upper-edge inverse needs a finite omega_3, but e2 = e3 here",
            )),
            Lattice::RightDegenerate { c, a } => {
                if w < ctx.e3 - slack || w >= c - slack {
                    return Err(Error::NoSolutionInStrip {
                        w,
                        lo: ctx.e3,
                        hi: c,
                    });
                }
                let ratio = ((w - ctx.e3) / (3.0 * c)).clamp(0.0, 1.0 - 1e-16);
                let t = ratio.sqrt().atanh() / a;
                Ok(Complex::new(t, ctx.omega3_abs))
            }
            Lattice::Generic { .. } => {
                if w < ctx.e3 - slack || w > ctx.e2 + slack {
                    return Err(Error::NoSolutionInStrip {
                        w,
                        lo: ctx.e3,
                        hi: ctx.e2,
                    });
                }
                let wc = w.clamp(ctx.e3, ctx.e2);
                let f = |t: f64| {
                    wp_eval(Complex::new(t, ctx.omega3_abs), ctx)
                        .map(|p| p.re - wc)
                        .unwrap_or(f64::NAN)
                };
                let fa = f(0.0);
                if fa >= 0.0 {
                    return Ok(ctx.omega3());
                }
                if f(ctx.omega1) <= 0.0 {
                    return Ok(Complex::new(ctx.omega1, ctx.omega3_abs));
                }
                let t = brent(f, 0.0, ctx.omega1, 1e-14 * ctx.omega1);
                Ok(Complex::new(t, ctx.omega3_abs))
            }
        },
        Strip::RealAxis => match ctx.lattice {
            Lattice::RightDegenerate { c, a } => {
                if w <= c + slack {
                    return Err(Error::NoSolutionInStrip {
                        w,
                        lo: c,
                        hi: f64::INFINITY,
                    });
                }
                let t = (a / (w - c).sqrt()).asinh() / a;
                Ok(Complex::new(t, 0.0))
            }
            Lattice::LeftDegenerate { c, b } => {
                if w < ctx.e1 - slack {
                    return Err(Error::NoSolutionInStrip {
                        w,
                        lo: ctx.e1,
                        hi: f64::INFINITY,
                    });
                }
                let ratio = (b / (w + c).sqrt()).min(1.0);
                let t = ratio.asin() / b;
                Ok(Complex::new(t, 0.0))
            }
            Lattice::Generic { .. } => {
                if w < ctx.e1 - slack {
                    return Err(Error::NoSolutionInStrip {
                        w,
                        lo: ctx.e1,
                        hi: f64::INFINITY,
                    });
                }
                let wc = w.max(ctx.e1);
                let f = |t: f64| {
                    wp_eval(Complex::new(t, 0.0), ctx)
                        .map(|p| p.re - wc)
                        .unwrap_or(f64::NAN)
                };
                if f(ctx.omega1) >= 0.0 {
                    return Ok(Complex::new(ctx.omega1, 0.0));
                }
                let mut t_lo = 0.5 * ctx.omega1;
                let floor = 100.0 * ctx.tol.lattice_pole;
                while f(t_lo) < 0.0 {
                    t_lo *= 0.5;
                    if t_lo < floor {
                        return Err(Error::NoSolutionInStrip {
                            w,
                            lo: ctx.e1,
                            hi: f64::INFINITY,
                        });
                    }
                }
                let t = brent(f, t_lo, ctx.omega1, 1e-14 * ctx.omega1);
                Ok(Complex::new(t, 0.0))
            }
        },
    }
}

/// Half-periods (ω1, |ω3|) for ordered roots; +inf on degenerate branches.
pub fn half_periods(e1: f64, e2: f64, e3: f64) -> Result<(f64, f64)> {
    let ctx = EllipticContext::from_roots(e1, e2, e3, Tolerances::default())?;
    Ok((ctx.omega1, ctx.omega3_abs))
}

/// Residual of the scaling law t² p(t z; g2/t⁴, g3/t⁶) = p(z; g2, g3),
/// checked by rebuilding the lattice from the scaled roots e_k/t².
pub fn homogeneity_check(t: f64, z: Complex, ctx: &EllipticContext) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("scale factor must be positive, got {t}")));
    }
    let t2 = t * t;
    let scaled = EllipticContext::from_roots(ctx.e1 / t2, ctx.e2 / t2, ctx.e3 / t2, ctx.tol)?;
    let lhs = t2 * wp_eval(t * z, &scaled)?;
    let rhs = wp_eval(z, ctx)?;
    Ok((lhs - rhs).norm())
}

fn guard_pole(z_red: Complex, ctx: &EllipticContext) -> Result<()> {
    let dist = z_red.norm();
    if dist < ctx.tol.lattice_pole {
        return Err(Error::PoleError { dist });
    }
    Ok(())
}
