//! Closed elastica curves in 3D, built from explicit elliptic-function
//! solutions of the bending-energy variational problem.
//!
//! The library is organized bottom-up:
//!
//! * [`elliptic`]: real/complex elliptic substrate: complete integrals
//!   K and E (AGM fast path), Jacobi sn/cn/dn and zeta with extended
//!   moduli, and the Weierstrass family ℘, ℘′, ℘⁻¹, ζ, σ on rectangular
//!   lattices via Jacobi theta series.
//! * [`param`]: the two parameter charts (physical λ, ν, q₀ and the
//!   modulus chart m, q₀), cubic-root construction, chart boundaries,
//!   the vertical-closure constraint Q₀(m), and the modulus involution
//!   n(m) = −m/(1−m).
//! * [`curvature`]: the squared-curvature solution κ²(s) in its three
//!   equivalent closed forms, torsion, and residual checks of the
//!   governing ODEs.
//! * [`functionals`]: normalized curvature functional, averaged torsion,
//!   total torsion, and their symmetry under n(m).
//! * [`geometry`]: cylindrical reconstruction (ρ, θ, z), Frenet-Serret
//!   and Darboux frames, the azimuthal increment Δθ(m).
//! * [`knot`]: closure solving Δθ = −pπ/q, equivalent-pair search, and
//!   equivalence verification.
//!
//! All numerics are f64. Every closed form has an independent oracle
//! (quadrature or finite differences) exercised in the test suite.

pub mod curvature;
pub mod elliptic;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod knot;
pub mod param;
pub mod quad;
pub mod solve;
pub mod tol;

pub use error::Error;
pub use tol::Tolerances;

/// Complex scalar used throughout the kernel.
pub type Complex = num_complex::Complex<f64>;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
