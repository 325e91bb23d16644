//! Elliptic-function substrate.
//!
//! Parameter convention throughout: the *parameter* (modulus squared)
//! appears everywhere, so `sn(xi, m)` means sn(ξ|m) and `ellint_k(p)`
//! means K(p) with integrand 1/√(1 − p·sin²θ).

mod context;
mod integrals;
mod jacobi;
mod theta;
mod weierstrass;

pub use context::{EllipticContext, Lattice};
pub use integrals::{ellint_e, ellint_k, ellint_k_real};
pub use jacobi::{jacobi_sn_cn_dn, jacobi_zeta};
pub use theta::ThetaNome;
pub use weierstrass::{
    half_periods, homogeneity_check, weier_sigma, weier_zeta, wp_eval, wp_inverse, wp_prime,
    Strip,
};
