//! The billiard-plane boundary: evaluation, normals, branch classification,
//! and escape tests.
//!
//! The floor constraint `y1 >= 0`, `y2 >= 0` becomes, after rescaling, the
//! region above the curve
//!
//! `B(phi) = max( -sqrt(beta2/beta1) sin phi, sqrt(beta1/beta2) sin phi )`.
//!
//! The first branch is the contact locus of `m1` (active where `sin phi < 0`),
//! the second of `m2`. The two branches meet in non-smooth corners at
//! `phi = 0, pi (mod 2pi)`, where both masses touch the floor at once.

use crate::error::{Error, Result};
use crate::model::{BilliardState, DumbbellParams};
use crate::scalar::{real, Real};
use crate::tol;
use crate::vec2::Vec2;

/// Which piece of the boundary curve is active at a given angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryBranch {
    /// Contact curve of `m1`: `Y = -sqrt(beta2/beta1) sin phi`.
    Mass1,
    /// Contact curve of `m2`: `Y = sqrt(beta1/beta2) sin phi`.
    Mass2,
    /// `phi = 0, pi (mod 2pi)`: simultaneous contact of both masses.
    Corner,
}

/// Amplitude of the `m1` contact curve, `sqrt(beta2/beta1)`.
pub(crate) fn mass1_amplitude<F: Real>(params: &DumbbellParams<F>) -> F {
    (params.beta2() / params.beta1()).sqrt()
}

/// Amplitude of the `m2` contact curve, `sqrt(beta1/beta2)`.
pub(crate) fn mass2_amplitude<F: Real>(params: &DumbbellParams<F>) -> F {
    (params.beta1() / params.beta2()).sqrt()
}

/// Boundary height `B(phi)` together with the branch achieving the maximum.
pub fn boundary<F: Real>(params: &DumbbellParams<F>, phi: F) -> (F, BoundaryBranch) {
    let s = phi.sin();
    if s.abs() <= real::<F>(tol::CORNER) {
        let height = (-mass1_amplitude(params) * s).max(mass2_amplitude(params) * s);
        (height, BoundaryBranch::Corner)
    } else if s < F::zero() {
        (-mass1_amplitude(params) * s, BoundaryBranch::Mass1)
    } else {
        (mass2_amplitude(params) * s, BoundaryBranch::Mass2)
    }
}

/// Largest boundary height over all angles.
pub fn boundary_max<F: Real>(params: &DumbbellParams<F>) -> F {
    mass1_amplitude(params).max(mass2_amplitude(params))
}

/// Slope `dB/dphi` of the given smooth branch at `phi`.
pub(crate) fn branch_slope<F: Real>(
    params: &DumbbellParams<F>,
    phi: F,
    branch: BoundaryBranch,
) -> F {
    match branch {
        BoundaryBranch::Mass1 => -mass1_amplitude(params) * phi.cos(),
        BoundaryBranch::Mass2 => mass2_amplitude(params) * phi.cos(),
        // Only smooth branches have a slope; corner callers are filtered out
        // before reaching here.
        BoundaryBranch::Corner => F::zero(),
    }
}

/// Unit normal to the active branch at `phi`, oriented into the admissible
/// region (positive height component).
///
/// Components follow the plane convention: `x` along the angle axis, `y`
/// along the rescaled height axis.
pub fn outward_normal<F: Real>(
    params: &DumbbellParams<F>,
    phi: F,
    branch: BoundaryBranch,
) -> Result<Vec2<F>> {
    if branch == BoundaryBranch::Corner {
        return Err(Error::CornerBranch);
    }
    let slope = branch_slope(params, phi, branch);
    Ok(Vec2::new(-slope, F::one())
        .normalized()
        .expect("normal has unit height component"))
}

/// True when the state sits at or above the boundary, within tolerance.
pub fn is_admissible<F: Real>(params: &DumbbellParams<F>, b: &BilliardState<F>) -> bool {
    b.y >= boundary(params, b.phi).0 - real::<F>(tol::GEOM)
}

/// Upper bound on the time of any future boundary contact.
///
/// Returns `None` when no future collision can occur (moving upward from
/// strictly above the highest boundary point). Otherwise returns a finite
/// horizon `T` such that any collision happens in `[0, T]`; the bound is
/// conservative and may be finite even when the trajectory actually escapes.
pub fn escape_horizon<F: Real>(
    params: &DumbbellParams<F>,
    b: &BilliardState<F>,
) -> Result<Option<F>> {
    if b.y_dot == F::zero() && b.phi_dot == F::zero() {
        return Err(Error::StationaryState);
    }
    let b_max = boundary_max(params);
    if b.y_dot >= F::zero() {
        if b.y > b_max {
            return Ok(None);
        }
        if b.y_dot > F::zero() {
            // After (b_max - y) / y_dot the trajectory is strictly above
            // every boundary point.
            Ok(Some((b_max - b.y) / b.y_dot))
        } else {
            // Constant height at or below the peaks: if one full revolution
            // produces no contact, periodicity rules one out forever.
            Ok(Some(F::TAU() / b.phi_dot.abs()))
        }
    } else {
        // Moving down: the boundary is nonnegative, so pick T with Y(T) < 0.
        Ok(Some((b.y + F::one()) / -b.y_dot))
    }
}
