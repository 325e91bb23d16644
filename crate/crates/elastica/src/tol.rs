/// Central numeric tolerances. Every default is overridable; modules take
/// a `Tolerances` value (or use [`Tolerances::default`]) rather than
/// burying magic numbers at call sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Distance below which K(p) reports its pole at p = 1 instead of a
    /// huge finite value.
    pub pole_at_one: f64,
    /// Lattice-reduced distance below which ℘ and ζ report a pole.
    pub lattice_pole: f64,
    /// Root spread e1 − e3 below which a lattice is fully degenerate.
    pub degenerate_spread: f64,
    /// Root gap (e1 − e2 or e2 − e3) below which the closed-form
    /// single-period lattice replaces the theta series.
    pub merged_roots: f64,
    /// AGM / Landen iteration convergence.
    pub agm: f64,
    /// Theta-series term magnitude at which summation stops.
    pub theta_term: f64,
    /// Bracketed root refinement (Brent) on scalar equations.
    pub root: f64,
    /// Equivalence gate on functional gaps between paired solutions.
    pub equivalence: f64,
    /// Permitted imaginary residue when a complex formula must be real.
    pub imaginary_residue: f64,
    /// Geometric closure gate, relative to the length scale R.
    pub closure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pole_at_one: 1e-12,
            lattice_pole: 1e-8,
            degenerate_spread: 1e-10,
            merged_roots: 1e-9,
            agm: 1e-15,
            theta_term: 1e-18,
            root: 1e-13,
            equivalence: 1e-8,
            imaginary_residue: 1e-9,
            closure: 1e-6,
        }
    }
}
