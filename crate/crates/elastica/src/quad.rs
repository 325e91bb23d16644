//! Gauss-Legendre quadrature. Used as the independent oracle for every
//! closed-form integral in the library (complete elliptic integrals,
//! curvature/torsion functionals, Jacobi zeta) and exposed so callers can
//! run the same cross-checks.

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Nodes are the roots of the Legendre polynomial P_n, found by Newton
/// iteration from the Chebyshev-like initial guess; weights are
/// 2 / ((1 - x²) P_n'(x)²).
pub fn gauss_legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "rule order must be at least 2");
    let mut out = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess for the i-th positive root (Abramowitz-Stegun 22.16.6 style).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
        if !(n % 2 == 1 && i == m - 1) {
            out.push((-x, w));
        } else {
            // Odd rule: center node, keep exactly one copy.
            out.last_mut().unwrap().0 = 0.0;
        }
    }
    out
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate f over [a, b] with a single n-point rule.
pub fn fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[(f64, f64)]) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for &(x, w) in nodes {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrate f over [a, b] with 64-point panels, doubling the panel count
/// until two successive refinements agree to `tol` (absolute + relative).
///
/// Integrands here are smooth, so convergence is fast; the panel cap only
/// guards against a non-converging (misused) call.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let nodes = gauss_legendre_nodes(64);
    let mut panels = 1usize;
    let mut prev = fixed(&f, a, b, &nodes);
    loop {
        panels *= 2;
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            let lo = a + i as f64 * h;
            acc += fixed(&f, lo, lo + h, &nodes);
        }
        if (acc - prev).abs() <= tol * (1.0 + acc.abs()) || panels >= 1024 {
            return acc;
        }
        prev = acc;
    }
}
