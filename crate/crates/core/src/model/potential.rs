use super::TrapParams;

/// Soft-Coulomb repulsion between unit charges, `1 / sqrt(s² + a²)`.
pub fn soft_coulomb(separation: f64, a: f64) -> f64 {
    1.0 / separation.hypot(a)
}

/// Harmonic confinement `½ m ω² x²`.
pub fn harmonic(x: f64, mass: f64, omega: f64) -> f64 {
    0.5 * mass * omega * omega * x * x
}

/// Potential of the relative coordinate q = (x₁ − x₂)/√2:
/// `V(q) = ½ m ω₀² q² + V_int(√2 q)`.
pub fn internal_potential(q: f64, params: &TrapParams) -> f64 {
    harmonic(q, params.particle_mass, params.omega0)
        + params.pair_interaction(std::f64::consts::SQRT_2 * q)
}

/// Potential of the centre-of-mass coordinate X, `½ M ω₀² X²`.
pub fn cm_potential(x: f64, params: &TrapParams) -> f64 {
    harmonic(x, params.total_mass(), params.omega0)
}

/// Total two-particle potential on (x₁, x₂).
pub fn two_particle_potential(x1: f64, x2: f64, params: &TrapParams) -> f64 {
    harmonic(x1, params.particle_mass, params.omega0)
        + harmonic(x2, params.particle_mass, params.omega0)
        + params.pair_interaction(x1 - x2)
}

/// Positive location q* of the minima of `V(q)` when it is a double well,
/// `None` when the origin is the only minimum.
///
/// Stationarity gives `(2q² + a²)^{3/2} = 2e² / (m ω₀²)`.
pub fn double_well_minimum(params: &TrapParams) -> Option<f64> {
    if !params.interaction {
        return None;
    }
    let e2 = params.particle_charge.powi(2);
    let m = params.particle_mass;
    let a = params.softening_a;
    let rhs = (2.0 * e2 / (m * params.omega0 * params.omega0)).powf(2.0 / 3.0);
    let q2 = 0.5 * (rhs - a * a);
    (q2 > 0.0).then(|| q2.sqrt())
}

/// Jacobi coordinates `(X, q)` with X = (x₁+x₂)/2 and q = (x₁−x₂)/√2.
pub fn to_jacobi(x1: f64, x2: f64) -> (f64, f64) {
    (0.5 * (x1 + x2), (x1 - x2) / std::f64::consts::SQRT_2)
}

pub fn from_jacobi(big_x: f64, q: f64) -> (f64, f64) {
    let u = q / std::f64::consts::SQRT_2;
    (big_x + u, big_x - u)
}
