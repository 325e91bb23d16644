//! Bracketed scalar root finding: Brent's method plus a scan utility
//! that locates sign-change brackets on a grid. Deterministic by
//! construction (no randomized restarts), so solved roots are
//! bit-reproducible for identical inputs.

/// Root of f on [a, b] by Brent's method. Requires f(a)·f(b) ≤ 0.
///
/// `tol` is the absolute x-tolerance added to the machine-level term
/// 2·eps·|x|; iteration also stops when f hits exactly zero.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    assert!(
        fa * fb <= 0.0,
        "brent: no sign change on [{a}, {b}] (f = {fa}, {fb})"
    );
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = b - a;
    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, falling back to secant.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else if xm > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = f(b);
    }
    b
}

/// Scan f on an n-point uniform grid over [a, b] and return every
/// subinterval with a sign change (or an exact zero at a grid point).
pub fn scan_brackets<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    n: usize,
) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut out = Vec::new();
    let mut x_prev = a;
    let mut f_prev = f(a);
    for i in 1..n {
        let x = a + (b - a) * i as f64 / (n - 1) as f64;
        let fx = f(x);
        if f_prev == 0.0 || f_prev * fx < 0.0 {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        out.push((x_prev, b));
    }
    out
}
