//! Jacobi theta functions with a real nome q ∈ (0, 1), evaluated for
//! complex arguments by direct series summation:
//!
//! ```text
//! θ₁(v) = 2 Σ (−1)ⁿ q^((n+1/2)²) sin((2n+1)v)
//! θ₂(v) = 2 Σ q^((n+1/2)²) cos((2n+1)v)
//! θ₃(v) = 1 + 2 Σ q^(n²) cos(2nv)
//! θ₄(v) = 1 + 2 Σ (−1)ⁿ q^(n²) cos(2nv)
//! ```
//!
//! Arguments are lattice-reduced upstream, so |Im v| ≤ −ln q and the
//! n-th term is bounded by q^(n(n−1)): the series converges for every
//! q < 1 and needs ~a dozen terms for the nome sizes produced by the
//! parameter charts.

use crate::Complex;

/// Maximum series index; reached only for q extremely close to 1.
const N_CAP: usize = 64;

/// Theta-function evaluator for one fixed nome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaNome {
    /// Real nome q = exp(iπτ) with τ = ω₃/ω₁ purely imaginary.
    pub q: f64,
}

impl ThetaNome {
    pub fn new(q: f64) -> Self {
        assert!(
            (0.0..1.0).contains(&q),
            "nome must lie in [0, 1), got {q}"
        );
        ThetaNome { q }
    }

    /// Convergence cutoff for term magnitude.
    fn eps(self) -> f64 {
        1e-18
    }

    /// θ₁(v) for complex v.
    pub fn theta1(self, v: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        let mut sign = 1.0;
        for n in 0..N_CAP {
            let half = n as f64 + 0.5;
            let coef = sign * 2.0 * self.q.powf(half * half);
            let term = coef * ((2.0 * n as f64 + 1.0) * v).sin();
            acc += term;
            if coef.abs() * ((2.0 * n as f64 + 1.0) * v.im.abs()).exp() < self.eps() {
                break;
            }
            sign = -sign;
        }
        acc
    }

    /// θ₁′(v) (derivative in v) for complex v.
    pub fn theta1_prime(self, v: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        let mut sign = 1.0;
        for n in 0..N_CAP {
            let half = n as f64 + 0.5;
            let odd = 2.0 * n as f64 + 1.0;
            let coef = sign * 2.0 * odd * self.q.powf(half * half);
            acc += coef * (odd * v).cos();
            if coef.abs() * ((2.0 * n as f64 + 1.0) * v.im.abs()).exp() < self.eps() {
                break;
            }
            sign = -sign;
        }
        acc
    }

    /// θ₂(v) for complex v.
    pub fn theta2(self, v: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for n in 0..N_CAP {
            let half = n as f64 + 0.5;
            let coef = 2.0 * self.q.powf(half * half);
            acc += coef * ((2.0 * n as f64 + 1.0) * v).cos();
            if coef * ((2.0 * n as f64 + 1.0) * v.im.abs()).exp() < self.eps() {
                break;
            }
        }
        acc
    }

    /// θ₃(v) for complex v.
    pub fn theta3(self, v: Complex) -> Complex {
        let mut acc = Complex::new(1.0, 0.0);
        for n in 1..N_CAP {
            let coef = 2.0 * self.q.powi((n * n) as i32);
            acc += coef * (2.0 * n as f64 * v).cos();
            if coef * (2.0 * n as f64 * v.im.abs()).exp() < self.eps() {
                break;
            }
        }
        acc
    }

    /// θ₄(v) for complex v.
    pub fn theta4(self, v: Complex) -> Complex {
        let mut acc = Complex::new(1.0, 0.0);
        let mut sign = -1.0;
        for n in 1..N_CAP {
            let coef = sign * 2.0 * self.q.powi((n * n) as i32);
            acc += coef * (2.0 * n as f64 * v).cos();
            if coef.abs() * (2.0 * n as f64 * v.im.abs()).exp() < self.eps() {
                break;
            }
            sign = -sign;
        }
        acc
    }

    /// θ₄′(v) (derivative in v) for complex v.
    pub fn theta4_prime(self, v: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        let mut sign = -1.0;
        for n in 1..N_CAP {
            let coef = -sign * 4.0 * n as f64 * self.q.powi((n * n) as i32);
            acc += coef * (2.0 * n as f64 * v).sin();
            if coef.abs() * (2.0 * n as f64 * v.im.abs()).exp() < self.eps() {
                break;
            }
            sign = -sign;
        }
        acc
    }

    /// θ₄′(v)/θ₄(v) for real v (the Jacobi-zeta kernel).
    pub fn theta4_log_derivative_real(self, v: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 1.0;
        let mut sign = -1.0;
        for n in 1..N_CAP {
            let coef = sign * 2.0 * self.q.powi((n * n) as i32);
            den += coef * (2.0 * n as f64 * v).cos();
            num += -coef * 2.0 * n as f64 * (2.0 * n as f64 * v).sin();
            if coef.abs() < self.eps() {
                break;
            }
            sign = -sign;
        }
        num / den
    }

    /// θ₁′(0) = 2 Σ (−1)ⁿ (2n+1) q^((n+1/2)²).
    pub fn theta1_prime0(self) -> f64 {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for n in 0..N_CAP {
            let half = n as f64 + 0.5;
            let term = sign * 2.0 * (2.0 * n as f64 + 1.0) * self.q.powf(half * half);
            acc += term;
            if term.abs() < self.eps() {
                break;
            }
            sign = -sign;
        }
        acc
    }

    /// θ₁‴(0) = −2 Σ (−1)ⁿ (2n+1)³ q^((n+1/2)²).
    pub fn theta1_triple_prime0(self) -> f64 {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for n in 0..N_CAP {
            let half = n as f64 + 0.5;
            let odd = 2.0 * n as f64 + 1.0;
            let term = -sign * 2.0 * odd.powi(3) * self.q.powf(half * half);
            acc += term;
            if term.abs() < self.eps() {
                break;
            }
            sign = -sign;
        }
        acc
    }

    /// θ₂(0), θ₃(0), θ₄(0).
    pub fn zero_values(self) -> (f64, f64, f64) {
        let t2 = self.theta2(Complex::new(0.0, 0.0)).re;
        let t3 = self.theta3(Complex::new(0.0, 0.0)).re;
        let t4 = self.theta4(Complex::new(0.0, 0.0)).re;
        (t2, t3, t4)
    }
}
