//! Core physical types and the exact conversion between physical and
//! billiard coordinates.
//!
//! The dumbbell is two point masses joined by a rigid massless rod of unit
//! length. With the horizontal center-of-mass motion reduced away, the
//! configuration is `(y, phi)`: center-of-mass height and rod angle. Free
//! flight is force-free, so both coordinates evolve linearly in time.
//! Rescaling the height by `sqrt(total_mass / inertia)` makes the kinetic
//! energy isotropic, which is what turns the dynamics into a billiard.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};
use crate::tol;

/// Masses of the dumbbell and the quantities derived from them.
///
/// The rod length is fixed at 1. `beta2` is always computed as
/// `1 - beta1`, so the mass fractions sum to one exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DumbbellParams<F = f64> {
    m1: F,
    m2: F,
    beta1: F,
    beta2: F,
    total_mass: F,
    inertia: F,
}

impl<F: Real> DumbbellParams<F> {
    pub fn new(m1: F, m2: F) -> Result<Self> {
        if !m1.is_finite() || !m2.is_finite() || m1 <= F::zero() || m2 <= F::zero() {
            return Err(Error::NonPositiveMass);
        }
        let total_mass = m1 + m2;
        let beta1 = m1 / total_mass;
        let beta2 = F::one() - beta1;
        if beta1 <= F::zero() || beta2 <= F::zero() {
            return Err(Error::NonPositiveMass);
        }
        let inertia = beta1 * beta2 * total_mass;
        Ok(Self {
            m1,
            m2,
            beta1,
            beta2,
            total_mass,
            inertia,
        })
    }

    /// Parameters with `m1 = 1` and `m2 = ratio`.
    pub fn from_mass_ratio(ratio: F) -> Result<Self> {
        Self::new(F::one(), ratio)
    }

    pub fn m1(&self) -> F {
        self.m1
    }

    pub fn m2(&self) -> F {
        self.m2
    }

    /// Mass fraction `m1 / (m1 + m2)`; also the distance from the center of
    /// mass to `m2`.
    pub fn beta1(&self) -> F {
        self.beta1
    }

    /// Mass fraction `m2 / (m1 + m2)`; also the distance from the center of
    /// mass to `m1`.
    pub fn beta2(&self) -> F {
        self.beta2
    }

    pub fn total_mass(&self) -> F {
        self.total_mass
    }

    /// Moment of inertia `beta1 * beta2 * (m1 + m2)`.
    pub fn inertia(&self) -> F {
        self.inertia
    }

    /// `sqrt(total_mass / inertia)`: multiplies physical heights and vertical
    /// velocities to give their billiard counterparts.
    pub fn scale_factor(&self) -> F {
        (self.total_mass / self.inertia).sqrt()
    }

    /// Interior angle of the straight wedge formed by the boundary tangents
    /// at its corner: `pi - 2 atan sqrt(beta_hi / beta_lo)`.
    ///
    /// Computed with the mass fractions ordered, so swapping the masses
    /// leaves the angle unchanged.
    pub fn wedge_angle(&self) -> F {
        let lo = self.beta1.min(self.beta2);
        let hi = self.beta1.max(self.beta2);
        F::PI() - real::<F>(2.0) * (hi / lo).sqrt().atan()
    }
}

/// Dumbbell state in physical coordinates.
///
/// `phi` is stored unreduced (monotone in time during flight); boundary and
/// trigonometric evaluations reduce it implicitly. This keeps the angular
/// travel between bounces recoverable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysState<F = f64> {
    /// Height of the center of mass, in rod lengths.
    pub y: F,
    /// Rod angle in radians.
    pub phi: F,
    pub y_dot: F,
    pub phi_dot: F,
}

impl<F: Real> PhysState<F> {
    pub fn new(y: F, phi: F, y_dot: F, phi_dot: F) -> Self {
        Self {
            y,
            phi,
            y_dot,
            phi_dot,
        }
    }

    /// Height of `m1`: `y + beta2 sin phi`.
    pub fn mass1_height(&self, params: &DumbbellParams<F>) -> F {
        self.y + params.beta2() * self.phi.sin()
    }

    /// Height of `m2`: `y - beta1 sin phi`.
    pub fn mass2_height(&self, params: &DumbbellParams<F>) -> F {
        self.y - params.beta1() * self.phi.sin()
    }

    /// Both masses at or above the floor, within the geometric tolerance.
    pub fn is_admissible(&self, params: &DumbbellParams<F>) -> bool {
        let slack = -real::<F>(tol::GEOM);
        self.mass1_height(params) >= slack && self.mass2_height(params) >= slack
    }
}

/// Dumbbell state in the rescaled plane where free flight is a straight
/// line. `y` here is the rescaled height `Y = y * sqrt(m / I)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilliardState<F = f64> {
    /// Rescaled height.
    pub y: F,
    /// Rod angle in radians (identical to the physical angle).
    pub phi: F,
    pub y_dot: F,
    pub phi_dot: F,
}

impl<F: Real> BilliardState<F> {
    pub fn new(y: F, phi: F, y_dot: F, phi_dot: F) -> Self {
        Self {
            y,
            phi,
            y_dot,
            phi_dot,
        }
    }
}

/// Kinetic energy `(1/2) m y_dot^2 + (1/2) beta1 beta2 m phi_dot^2`.
pub fn kinetic_energy<F: Real>(params: &DumbbellParams<F>, s: &PhysState<F>) -> F {
    let half = real::<F>(0.5);
    half * params.total_mass() * s.y_dot * s.y_dot + half * params.inertia() * s.phi_dot * s.phi_dot
}

/// Kinetic energy in billiard form, `(I/2)(Y_dot^2 + phi_dot^2)`.
pub fn billiard_kinetic_energy<F: Real>(params: &DumbbellParams<F>, b: &BilliardState<F>) -> F {
    real::<F>(0.5) * params.inertia() * (b.y_dot * b.y_dot + b.phi_dot * b.phi_dot)
}

/// Rescale a physical state into billiard coordinates:
/// `Y = y sqrt(m/I)`, `Y_dot = y_dot sqrt(m/I)`, angle untouched.
pub fn to_billiard<F: Real>(params: &DumbbellParams<F>, s: &PhysState<F>) -> BilliardState<F> {
    let k = params.scale_factor();
    BilliardState::new(s.y * k, s.phi, s.y_dot * k, s.phi_dot)
}

/// Exact inverse of [`to_billiard`].
pub fn from_billiard<F: Real>(params: &DumbbellParams<F>, b: &BilliardState<F>) -> PhysState<F> {
    let k = F::one() / params.scale_factor();
    PhysState::new(b.y * k, b.phi, b.y_dot * k, b.phi_dot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn equal_masses() -> DumbbellParams<f64> {
        DumbbellParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_masses() {
        assert_eq!(DumbbellParams::new(0.0, 1.0), Err(Error::NonPositiveMass));
        assert_eq!(DumbbellParams::new(1.0, -2.0), Err(Error::NonPositiveMass));
        assert_eq!(
            DumbbellParams::new(f64::NAN, 1.0),
            Err(Error::NonPositiveMass)
        );
        assert_eq!(
            DumbbellParams::new(1.0, f64::INFINITY),
            Err(Error::NonPositiveMass)
        );
    }

    #[test]
    fn derived_parameters() {
        let p = DumbbellParams::new(1.0, 3.0).unwrap();
        assert_eq!(p.beta1(), 0.25);
        assert_eq!(p.beta2(), 0.75);
        assert_eq!(p.total_mass(), 4.0);
        assert_relative_eq!(p.inertia(), 0.75, max_relative = 1e-14);
        // The two closed forms of the inertia agree.
        let alt = p.m1() * p.beta2() * p.beta2() + p.m2() * p.beta1() * p.beta1();
        assert_relative_eq!(p.inertia(), alt, max_relative = 1e-14);
    }

    #[test]
    fn mass_fractions_sum_to_one_exactly() {
        for (m1, m2) in [(1.0, 1.0), (0.3, 7.1), (1e-6, 5.0), (2.5, 1e-8)] {
            let p = DumbbellParams::new(m1, m2).unwrap();
            assert_eq!(p.beta1() + p.beta2(), 1.0);
        }
    }

    #[test]
    fn mass_swap_symmetry() {
        let p = DumbbellParams::new(0.4, 2.6).unwrap();
        let q = DumbbellParams::new(2.6, 0.4).unwrap();
        assert_relative_eq!(p.beta1(), q.beta2(), max_relative = 1e-15);
        assert_relative_eq!(p.beta2(), q.beta1(), max_relative = 1e-15);
        assert_relative_eq!(p.inertia(), q.inertia(), max_relative = 1e-15);
        assert_relative_eq!(p.wedge_angle(), q.wedge_angle(), max_relative = 1e-15);
    }

    #[test]
    fn kinetic_energy_examples() {
        let p = equal_masses();
        assert_eq!(kinetic_energy(&p, &PhysState::new(1.0, 0.3, 0.0, 0.0)), 0.0);
        assert_relative_eq!(
            kinetic_energy(&p, &PhysState::new(1.0, 0.3, 1.0, 0.0)),
            1.0,
            max_relative = 1e-15
        );
        // Independent substitution: beta1 = 1/4, beta2 = 3/4, m = 4.
        let q = DumbbellParams::new(1.0, 3.0).unwrap();
        let s = PhysState::new(1.0, 0.0, 0.5, 2.0);
        let expected = 0.5 * 4.0 * 0.25 + 0.5 * (0.25 * 0.75 * 4.0) * 4.0;
        assert_eq!(expected, 2.0);
        assert_relative_eq!(kinetic_energy(&q, &s), expected, max_relative = 1e-14);
    }

    #[test]
    fn to_billiard_example() {
        let p = equal_masses();
        // sqrt(m/I) = sqrt(2 / 0.5) = 2
        let s = PhysState::new(0.5, std::f64::consts::FRAC_PI_4, -0.1, 1.0);
        let b = to_billiard(&p, &s);
        assert_relative_eq!(b.y, 1.0, max_relative = 1e-15);
        assert_relative_eq!(b.y_dot, -0.2, max_relative = 1e-15);
        assert_eq!(b.phi, s.phi);
        assert_eq!(b.phi_dot, s.phi_dot);

        let zero = PhysState::new(0.0, 0.0, 0.0, 0.0);
        let bz = to_billiard(&p, &zero);
        assert_eq!((bz.y, bz.phi, bz.y_dot, bz.phi_dot), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn from_billiard_example() {
        let p = equal_masses();
        let b = BilliardState::new(1.0, std::f64::consts::FRAC_PI_4, -0.2, 1.0);
        let s = from_billiard(&p, &b);
        assert_relative_eq!(s.y, 0.5, max_relative = 1e-15);
        assert_relative_eq!(s.y_dot, -0.1, max_relative = 1e-15);
        assert_eq!(s.phi, b.phi);
        assert_eq!(s.phi_dot, b.phi_dot);
    }

    #[test]
    fn admissibility() {
        let p = equal_masses();
        let phi = 3.0 * std::f64::consts::FRAC_PI_2;
        assert!(PhysState::new(0.5, phi, 0.0, 0.0).is_admissible(&p));
        // m1 below the floor
        assert!(!PhysState::new(0.4, phi, 0.0, 0.0).is_admissible(&p));
    }

    #[test]
    fn works_in_single_precision() {
        let p = DumbbellParams::<f32>::new(1.0, 3.0).unwrap();
        let s = PhysState::new(1.0f32, 0.0, 0.5, 2.0);
        assert!((kinetic_energy(&p, &s) - 2.0).abs() <= 1e-6);
        let back = from_billiard(&p, &to_billiard(&p, &s));
        assert!((back.y - s.y).abs() <= 1e-6);
        assert!((back.y_dot - s.y_dot).abs() <= 1e-6);
    }

    proptest! {
        #[test]
        fn billiard_round_trip(
            m1 in 0.05f64..20.0,
            m2 in 0.05f64..20.0,
            y in -2.0f64..5.0,
            phi in -10.0f64..10.0,
            y_dot in -5.0f64..5.0,
            phi_dot in -5.0f64..5.0,
        ) {
            let p = DumbbellParams::new(m1, m2).unwrap();
            let s = PhysState::new(y, phi, y_dot, phi_dot);
            let back = from_billiard(&p, &to_billiard(&p, &s));
            prop_assert!((back.y - s.y).abs() <= 1e-14 * s.y.abs().max(1.0));
            prop_assert!((back.y_dot - s.y_dot).abs() <= 1e-14 * s.y_dot.abs().max(1.0));
            prop_assert_eq!(back.phi, s.phi);
            prop_assert_eq!(back.phi_dot, s.phi_dot);
        }

        #[test]
        fn energy_equivalence(
            m1 in 0.05f64..20.0,
            m2 in 0.05f64..20.0,
            y_dot in -5.0f64..5.0,
            phi_dot in -5.0f64..5.0,
        ) {
            let p = DumbbellParams::new(m1, m2).unwrap();
            let s = PhysState::new(1.0, 0.7, y_dot, phi_dot);
            let k_phys = kinetic_energy(&p, &s);
            let k_bill = billiard_kinetic_energy(&p, &to_billiard(&p, &s));
            prop_assert!((k_phys - k_bill).abs() <= 1e-12 * k_phys.abs().max(1e-300));
        }
    }
}
