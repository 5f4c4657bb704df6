//! Event-driven simulation of a two-mass rigid rod (a "dumbbell") bouncing
//! elastically on a flat floor.
//!
//! Free flight is force-free, so between floor contacts both configuration
//! coordinates evolve linearly: the center-of-mass height `y` and the rod
//! angle `phi`. Rescaling the height by `sqrt(total_mass / inertia)` makes
//! the kinetic energy isotropic, and the system becomes a billiard: a point
//! particle moving on straight lines in the `(phi, Y)` plane and reflecting
//! specularly off the fixed curve
//! `Y = max(-sqrt(beta2/beta1) sin phi, sqrt(beta1/beta2) sin phi)`.
//!
//! The crate implements both pictures and keeps them independently
//! testable:
//!
//! * [`model`] — parameters, states, energy, exact coordinate conversion;
//! * [`geometry`] — the boundary curve, its normals, and escape tests;
//! * [`collision`] — the closed-form physical impact law and the billiard
//!   reflection, as two separate routes;
//! * [`simulate`] — flight, collision-time root finding, scattering runs;
//! * [`analysis`] — the adiabatic invariant `|phi_dot| (pi - arccos y)`,
//!   the leading-order bounce map, the collision-count bound
//!   `ceil(pi/gamma) + 1`, and a straight-wedge reflection counter with an
//!   unfolding oracle;
//! * [`harness`] — seeded Monte Carlo experiments behind the `dumbbell`
//!   binary.
//!
//! All numerical code is generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the aliases at the crate root fix `f64`, which is what
//! the experiment harness and the stated tolerances assume.

pub mod analysis;
pub mod collision;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod model;
mod scalar;
pub mod simulate;
pub mod tol;
pub mod vec2;

pub use error::{Error, Result};
pub use scalar::Real;

/// Dumbbell parameters over `f64`.
pub type Params = model::DumbbellParams<f64>;
/// Physical state over `f64`.
pub type Phys = model::PhysState<f64>;
/// Billiard state over `f64`.
pub type Billiard = model::BilliardState<f64>;
/// Plane vector over `f64`.
pub type V2 = vec2::Vec2<f64>;
