//! Precomputed lattice data for a Weierstrass system with three real
//! roots e1 >= e2 >= e3, e1 + e2 + e3 = 0.
//!
//! The rectangular lattice has a real half-period omega_1 and a purely
//! imaginary half-period omega_3 (pinned to the positive imaginary
//! axis; the sign of g3 is kept as metadata). Two degenerate limits are
//! handled by closed forms instead of theta series:
//!
//!   right:  e1 = e2 = c > 0,  omega_1 -> +inf,  |omega_3| = pi/(2*sqrt(3c))
//!   left:   e2 = e3 = -c,     omega_1 = pi/(2*sqrt(3c)),  |omega_3| -> +inf

use crate::elliptic::integrals::ellint_k_real;
use crate::elliptic::theta::ThetaNome;
use crate::error::Error;
use crate::tol::Tolerances;
use crate::{Complex, Result};

use std::f64::consts::PI;

/// Which evaluation path the root configuration selects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lattice {
    /// Strictly separated roots: theta-series evaluation with nome q.
    Generic {
        nome: ThetaNome,
        /// theta_1'(0)
        t1p0: f64,
        /// theta_1'''(0)
        t1ppp0: f64,
        /// theta_2(0), theta_3(0), theta_4(0)
        t20: f64,
        t30: f64,
        t40: f64,
    },
    /// e1 = e2 = c: hyperbolic closed forms, real period infinite.
    RightDegenerate {
        c: f64,
        /// sqrt(3c); the imaginary period is i*pi/a.
        a: f64,
    },
    /// e2 = e3 = -c: trigonometric closed forms, imaginary period infinite.
    LeftDegenerate {
        c: f64,
        /// sqrt(3c); the real period is pi/b.
        b: f64,
    },
}

/// Immutable per-lattice context shared by every Weierstrass evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EllipticContext {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// g2 = 2*(e1^2 + e2^2 + e3^2)
    pub g2: f64,
    /// g3 = 4*e1*e2*e3
    pub g3: f64,
    /// delta = g2^3 - 27*g3^2 = 16*(e1-e2)^2*(e2-e3)^2*(e1-e3)^2
    pub delta: f64,
    /// Elliptic parameter p = (e2 - e3)/(e1 - e3), p' = 1 - p.
    pub p: f64,
    pub p_prime: f64,
    /// Real half-period K(p)/sqrt(e1 - e3); +inf on the right-degenerate branch.
    pub omega1: f64,
    /// |omega_3| = K(p')/sqrt(e1 - e3); +inf on the left-degenerate branch.
    /// omega_3 itself is i*omega3_abs.
    pub omega3_abs: f64,
    /// omega_2 = -omega_1 - omega_3.
    pub omega2: Complex,
    /// eta_1 = zeta(omega_1), real; -inf on the right-degenerate branch.
    pub eta1: f64,
    /// eta_3 = zeta(omega_3), purely imaginary up to rounding.
    pub eta3: Complex,
    /// eta_2 = -eta_1 - eta_3.
    pub eta2: Complex,
    /// Sign of g3 at construction (0 when g3 = 0). Recorded because
    /// omega_3 is always placed on the positive imaginary axis
    /// regardless of this sign.
    pub sign_g3: i8,
    pub lattice: Lattice,
    pub tol: Tolerances,
}

impl EllipticContext {
    /// Builds the context from ordered real roots. Fails with
    /// `DegenerateRoots` when all three roots coincide to within
    /// `tol.degenerate_spread`, and with `DomainError` when the inputs
    /// are out of order or do not sum to zero.
    pub fn from_roots(e1: f64, e2: f64, e3: f64, tol: Tolerances) -> Result<Self> {
        let spread = e1 - e3;
        if !spread.is_finite() || spread < tol.degenerate_spread {
            return Err(Error::DegenerateRoots { spread });
        }
        let slack = 1e-9 * spread;
        if e1 - e2 < -slack || e2 - e3 < -slack {
            return Err(Error::domain(format!(
                "roots must satisfy e1 >= e2 >= e3, got ({e1}, {e2}, {e3})"
            )));
        }
        if (e1 + e2 + e3).abs() > 1e-8 * spread {
            return Err(Error::domain(format!(
                "roots must sum to zero, got {}",
                e1 + e2 + e3
            )));
        }

        let g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
        let g3 = 4.0 * e1 * e2 * e3;
        let delta = g2.powi(3) - 27.0 * g3 * g3;
        let p = ((e2 - e3) / spread).clamp(0.0, 1.0);
        let p_prime = 1.0 - p;
        let sign_g3 = if g3 > 0.0 {
            1
        } else if g3 < 0.0 {
            -1
        } else {
            0
        };
        let merged = tol.merged_roots * spread;

        if e1 - e2 <= merged {
            // e1 = e2 = c, e3 = -2c.
            let c = 0.5 * (e1 + e2);
            let a = (3.0 * c).sqrt();
            let omega3_abs = 0.5 * PI / a;
            // zeta(z) = -c z + a coth(a z), so zeta(omega_3) = -c omega_3.
            let eta3 = Complex::new(0.0, -c * omega3_abs);
            return Ok(Self {
                e1,
                e2,
                e3,
                g2,
                g3,
                delta,
                p,
                p_prime,
                omega1: f64::INFINITY,
                omega3_abs,
                omega2: Complex::new(f64::NEG_INFINITY, -omega3_abs),
                eta1: f64::NEG_INFINITY,
                eta3,
                eta2: Complex::new(f64::INFINITY, c * omega3_abs),
                sign_g3,
                lattice: Lattice::RightDegenerate { c, a },
                tol,
            });
        }
        if e2 - e3 <= merged {
            // e2 = e3 = -c, e1 = 2c.
            let c = -0.5 * (e2 + e3);
            let b = (3.0 * c).sqrt();
            let omega1 = 0.5 * PI / b;
            // zeta(z) = c z + b cot(b z), so zeta(omega_1) = c omega_1.
            let eta1 = c * omega1;
            return Ok(Self {
                e1,
                e2,
                e3,
                g2,
                g3,
                delta,
                p,
                p_prime,
                omega1,
                omega3_abs: f64::INFINITY,
                omega2: Complex::new(-omega1, f64::NEG_INFINITY),
                eta1,
                eta3: Complex::new(0.0, f64::INFINITY),
                eta2: Complex::new(-eta1, f64::NEG_INFINITY),
                sign_g3,
                lattice: Lattice::LeftDegenerate { c, b },
                tol,
            });
        }

        let sqrt_spread = spread.sqrt();
        let big_k = ellint_k_real(p)?;
        let big_k_prime = ellint_k_real(p_prime)?;
        let omega1 = big_k / sqrt_spread;
        let omega3_abs = big_k_prime / sqrt_spread;
        let nome = ThetaNome::new((-PI * omega3_abs / omega1).exp());
        let t1p0 = nome.theta1_prime0();
        let t1ppp0 = nome.theta1_triple_prime0();
        let (t20, t30, t40) = nome.zero_values();

        let eta1 = -PI * PI / (12.0 * omega1) * (t1ppp0 / t1p0);
        // eta_3 from the log-derivative of theta_1 at v = pi*omega_3/(2 omega_1),
        // independently of the Legendre relation (which stays available as a
        // cross-check downstream).
        let v3 = Complex::new(0.0, 0.5 * PI * omega3_abs / omega1);
        let omega3 = Complex::new(0.0, omega3_abs);
        let eta3 = eta1 / omega1 * omega3
            + 0.5 * PI / omega1 * (nome.theta1_prime(v3) / nome.theta1(v3));
        let eta2 = -eta1 - eta3;

        Ok(Self {
            e1,
            e2,
            e3,
            g2,
            g3,
            delta,
            p,
            p_prime,
            omega1,
            omega3_abs,
            omega2: Complex::new(-omega1, -omega3_abs),
            eta1,
            eta3,
            eta2,
            sign_g3,
            lattice: Lattice::Generic {
                nome,
                t1p0,
                t1ppp0,
                t20,
                t30,
                t40,
            },
            tol,
        })
    }

    /// omega_3 as a complex number on the positive imaginary axis.
    pub fn omega3(&self) -> Complex {
        Complex::new(0.0, self.omega3_abs)
    }

    /// e1 - e3, the squared frequency scale of the lattice.
    pub fn spread(&self) -> f64 {
        self.e1 - self.e3
    }

    /// Reduces z into the fundamental cell centred on the origin and
    /// returns (z_red, n1, n3) with z = z_red + 2*n1*omega_1 + 2*n3*omega_3.
    /// Degenerate branches only reduce along their finite period.
    pub fn reduce(&self, z: Complex) -> (Complex, i64, i64) {
        let n1 = if self.omega1.is_finite() {
            (z.re / (2.0 * self.omega1)).round() as i64
        } else {
            0
        };
        let n3 = if self.omega3_abs.is_finite() {
            (z.im / (2.0 * self.omega3_abs)).round() as i64
        } else {
            0
        };
        let z_red = Complex::new(
            z.re - 2.0 * n1 as f64 * self.omega1_or_zero(),
            z.im - 2.0 * n3 as f64 * self.omega3_or_zero(),
        );
        (z_red, n1, n3)
    }

    fn omega1_or_zero(&self) -> f64 {
        if self.omega1.is_finite() {
            self.omega1
        } else {
            0.0
        }
    }

    fn omega3_or_zero(&self) -> f64 {
        if self.omega3_abs.is_finite() {
            self.omega3_abs
        } else {
            0.0
        }
    }

    /// Maps a cell-reduced argument to the theta variable v = pi*z/(2 omega_1).
    /// Only meaningful on the generic branch.
    pub fn theta_arg(&self, z_red: Complex) -> Complex {
        0.5 * PI / self.omega1 * z_red
    }
}
