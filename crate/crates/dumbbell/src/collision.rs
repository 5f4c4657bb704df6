//! Exact impact maps.
//!
//! Two independent routes are implemented on purpose:
//!
//! * [`collide_mass1`] / [`collide_mass2`] apply the closed-form elastic
//!   impact law in physical coordinates (the `m2` law is the mirror of the
//!   `m1` law: swap the mass fractions and negate `cos phi`, `sin phi`);
//! * [`collide_billiard`] reflects the billiard velocity specularly across
//!   the boundary normal.
//!
//! The two must agree state-for-state; the test suites compare them
//! extensionally rather than sharing a code path.

use crate::error::{Error, Result};
use crate::geometry::{outward_normal, BoundaryBranch};
use crate::model::{BilliardState, DumbbellParams, PhysState};
use crate::scalar::{real, Real};
use crate::tol;
use crate::vec2::Vec2;

/// Outcome of an impulsive floor impact: positions frozen, velocities
/// updated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImpactResult<F = f64> {
    pub post: PhysState<F>,
    pub mass_hit: BoundaryBranch,
    /// Billiard-velocity component along the outward normal before impact
    /// (negative for incoming states).
    pub normal_speed_pre: F,
}

/// Specular reflection of `v` in the plane: the component along `n` is
/// negated, the orthogonal component preserved.
pub fn reflect<F: Real>(v: Vec2<F>, n: Vec2<F>) -> Result<Vec2<F>> {
    let nn = n.norm_sq();
    if nn == F::zero() {
        return Err(Error::ZeroNormal);
    }
    let coeff = real::<F>(2.0) * v.dot(n) / nn;
    Ok(v - n.scale(coeff))
}

/// Shared form of the impact law. `beta_c` is the mass fraction of the mass
/// in contact, `beta_o` the other one, and `cos_phi` is signed for the
/// contact in question (negated for an `m2` contact).
fn contact_velocity_map<F: Real>(beta_c: F, beta_o: F, cos_phi: F, y_dot: F, phi_dot: F) -> (F, F) {
    let two = real::<F>(2.0);
    let c2 = cos_phi * cos_phi;
    let denom = beta_c + beta_o * c2;
    let y_post = y_dot * (-F::one() + two * beta_o * c2 / denom)
        - phi_dot * (two * beta_c * beta_o * cos_phi / denom);
    let phi_post =
        phi_dot * (F::one() - two * beta_o * c2 / denom) - y_dot * (two * cos_phi / denom);
    (y_post, phi_post)
}

/// Raw velocity map of an `m1` floor impact at angle `phi`:
/// `(y_dot, phi_dot) -> (y_dot_post, phi_dot_post)`.
///
/// No contact or direction validation; the map is a linear involution on
/// the velocities.
pub fn mass1_velocity_map<F: Real>(
    params: &DumbbellParams<F>,
    phi: F,
    y_dot: F,
    phi_dot: F,
) -> (F, F) {
    contact_velocity_map(params.beta1(), params.beta2(), phi.cos(), y_dot, phi_dot)
}

/// Raw velocity map of an `m2` floor impact at angle `phi` (mirrored form).
pub fn mass2_velocity_map<F: Real>(
    params: &DumbbellParams<F>,
    phi: F,
    y_dot: F,
    phi_dot: F,
) -> (F, F) {
    contact_velocity_map(params.beta2(), params.beta1(), -phi.cos(), y_dot, phi_dot)
}

/// Normal component of the billiard velocity of `s` against the branch
/// normal at `s.phi`.
fn normal_speed<F: Real>(
    params: &DumbbellParams<F>,
    s: &PhysState<F>,
    branch: BoundaryBranch,
) -> Result<F> {
    let n = outward_normal(params, s.phi, branch)?;
    let v = Vec2::new(s.phi_dot, s.y_dot * params.scale_factor());
    Ok(v.dot(n))
}

fn collide_mass<F: Real>(
    params: &DumbbellParams<F>,
    pre: &PhysState<F>,
    branch: BoundaryBranch,
) -> Result<ImpactResult<F>> {
    let height = match branch {
        BoundaryBranch::Mass1 => pre.mass1_height(params),
        BoundaryBranch::Mass2 => pre.mass2_height(params),
        BoundaryBranch::Corner => return Err(Error::CornerBranch),
    };
    if height.abs() > real::<F>(tol::GEOM) {
        return Err(Error::NotInContact);
    }
    let vn = normal_speed(params, pre, branch)?;
    let grazing = real::<F>(tol::GRAZING);
    if vn > grazing {
        return Err(Error::OutgoingState);
    }
    let post = if vn.abs() <= grazing {
        // Grazing contact: pass through unchanged.
        *pre
    } else {
        let (y_dot, phi_dot) = match branch {
            BoundaryBranch::Mass1 => mass1_velocity_map(params, pre.phi, pre.y_dot, pre.phi_dot),
            _ => mass2_velocity_map(params, pre.phi, pre.y_dot, pre.phi_dot),
        };
        PhysState::new(pre.y, pre.phi, y_dot, phi_dot)
    };
    Ok(ImpactResult {
        post,
        mass_hit: branch,
        normal_speed_pre: vn,
    })
}

/// Resolve an `m1` floor impact in physical coordinates.
///
/// Preconditions: `m1` on the floor (`|y + beta2 sin phi| <= tol`) and the
/// normal velocity incoming. Near-corner contacts are rejected as
/// [`Error::CornerBranch`] because the impact law is undefined there.
pub fn collide_mass1<F: Real>(
    params: &DumbbellParams<F>,
    pre: &PhysState<F>,
) -> Result<ImpactResult<F>> {
    if pre.phi.sin().abs() <= real::<F>(tol::CORNER) {
        return Err(Error::CornerBranch);
    }
    collide_mass(params, pre, BoundaryBranch::Mass1)
}

/// Resolve an `m2` floor impact in physical coordinates (mirrored law).
pub fn collide_mass2<F: Real>(
    params: &DumbbellParams<F>,
    pre: &PhysState<F>,
) -> Result<ImpactResult<F>> {
    if pre.phi.sin().abs() <= real::<F>(tol::CORNER) {
        return Err(Error::CornerBranch);
    }
    collide_mass(params, pre, BoundaryBranch::Mass2)
}

/// Specular reflection of a billiard state off the given boundary branch.
///
/// Position is unchanged; the velocity component along the branch normal is
/// negated (grazing contacts pass through unchanged). The billiard speed
/// `sqrt(Y_dot^2 + phi_dot^2)` is preserved.
pub fn collide_billiard<F: Real>(
    params: &DumbbellParams<F>,
    b: &BilliardState<F>,
    branch: BoundaryBranch,
) -> Result<BilliardState<F>> {
    let n = outward_normal(params, b.phi, branch)?;
    let v = Vec2::new(b.phi_dot, b.y_dot);
    if v.dot(n).abs() <= real::<F>(tol::GRAZING) {
        return Ok(*b);
    }
    let r = reflect(v, n)?;
    Ok(BilliardState::new(b.y, b.phi, r.y, r.x))
}
