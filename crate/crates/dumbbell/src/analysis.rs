//! Analytical structures as executable checks: the adiabatic invariant and
//! its per-run trace, the leading-order single-bounce map for a light-mass
//! contact, the sharp collision-count bound, and a straight-wedge
//! reflection counter with an independent unfolding oracle.

use crate::error::{Error, Result};
use crate::model::{DumbbellParams, PhysState};
use crate::scalar::{real, Real};
use crate::simulate::ScatterOutcome;
use crate::tol;
use crate::vec2::Vec2;

/// `pi - arccos(y)`: half the angular distance the light mass travels
/// between two consecutive floor contacts at center-of-mass height `y`.
///
/// `y` is clamped into `[-1, 1]` to absorb roundoff at contact extremes;
/// values beyond `1 + tol` are rejected.
pub fn travel_half_angle<F: Real>(y: F) -> Result<F> {
    if y.abs() > F::one() + real::<F>(tol::GEOM) {
        return Err(Error::OutOfRange);
    }
    let clamped = y.min(F::one()).max(-F::one());
    Ok(F::PI() - clamped.acos())
}

/// Adiabatic invariant `|phi_dot| * (pi - arccos y)` of a state.
///
/// In the light-mass fast-rotation regime this quantity is conserved to
/// leading order across bounces.
pub fn adiabatic_invariant<F: Real>(s: &PhysState<F>) -> Result<F> {
    Ok(s.phi_dot.abs() * travel_half_angle(s.y)?)
}

/// Change of the adiabatic invariant between two bounce states.
pub fn invariant_drift_per_bounce<F: Real>(pre: &PhysState<F>, post: &PhysState<F>) -> Result<F> {
    Ok(adiabatic_invariant(post)? - adiabatic_invariant(pre)?)
}

/// Leading-order map of one light-mass bounce: predicted angular velocity
/// after the impact and center-of-mass height at the next contact.
///
/// `phi_dot_plus = -phi_dot - 2 y_dot / sqrt(1 - y^2)` and
/// `y_plus = y - (2 pi - 2 arccos y) y_dot / phi_dot`; the dropped error
/// terms shrink with the mass ratio and the vertical-speed scale, and are
/// measured by the harness rather than modeled here.
pub fn approx_bounce_map<F: Real>(
    params: &DumbbellParams<F>,
    pre: &PhysState<F>,
) -> Result<(F, F)> {
    if pre.mass1_height(params).abs() > real::<F>(tol::GEOM) {
        return Err(Error::NotInContact);
    }
    if pre.phi_dot == F::zero() {
        return Err(Error::StationaryState);
    }
    if pre.y_dot > F::zero() {
        return Err(Error::OutgoingState);
    }
    let two = real::<F>(2.0);
    let under = F::one() - pre.y * pre.y;
    let floor = real::<F>(tol::NEAR_VERTICAL * tol::NEAR_VERTICAL);
    if under <= floor {
        return Err(Error::NearVertical);
    }
    let phi_dot_plus = -pre.phi_dot - two * pre.y_dot / under.sqrt();
    let y_plus = pre.y - (two * F::PI() - two * pre.y.acos()) * pre.y_dot / pre.phi_dot;
    Ok((phi_dot_plus, y_plus))
}

/// Sharp upper bound `ceil(pi / gamma) + 1` on the number of floor
/// collisions in one scattering event, with
/// `gamma = pi - 2 atan sqrt(beta_hi / beta_lo)`.
///
/// When `pi / gamma` sits within the tie tolerance of an integer the exact
/// integer is used as the ceiling.
pub fn collision_bound<F: Real>(params: &DumbbellParams<F>) -> Result<usize> {
    let gamma = params.wedge_angle();
    if gamma <= real::<F>(tol::DEGENERATE_WEDGE) {
        return Err(Error::DegenerateWedge);
    }
    let ratio = (F::PI() / gamma).to_f64().expect("finite ratio");
    let nearest = ratio.round();
    let ceiling = if (ratio - nearest).abs() <= tol::CEILING_TIE {
        nearest
    } else {
        ratio.ceil()
    };
    Ok(ceiling as usize + 1)
}

/// An infinite straight wedge with apex at the origin, one side along the
/// positive x-axis and the other at angle `gamma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WedgeSpec<F = f64> {
    gamma: F,
}

impl<F: Real> WedgeSpec<F> {
    /// Interior angle in `(0, pi]`.
    pub fn new(gamma: F) -> Result<Self> {
        if !gamma.is_finite() || gamma <= real::<F>(tol::DEGENERATE_WEDGE) || gamma > F::PI() {
            return Err(Error::DegenerateWedge);
        }
        Ok(Self { gamma })
    }

    /// The straight wedge a dumbbell's boundary corner approximates.
    pub fn from_params(params: &DumbbellParams<F>) -> Result<Self> {
        Self::new(params.wedge_angle())
    }

    pub fn gamma(&self) -> F {
        self.gamma
    }
}

fn check_wedge_start<F: Real>(spec: &WedgeSpec<F>, start: Vec2<F>, dir: Vec2<F>) -> Result<()> {
    if dir.norm_sq() == F::zero() {
        return Err(Error::StationaryState);
    }
    let r = start.norm();
    if r == F::zero() {
        return Err(Error::OnVertex);
    }
    let angle = start.y.atan2(start.x);
    if angle <= F::zero() || angle >= spec.gamma {
        return Err(Error::OutsideWedge);
    }
    Ok(())
}

/// Reflection count of a point particle in the straight wedge, simulated by
/// sequential specular reflections off the two sides until escape.
pub fn wedge_reflection_count<F: Real>(
    spec: &WedgeSpec<F>,
    start: Vec2<F>,
    dir: Vec2<F>,
) -> Result<usize> {
    check_wedge_start(spec, start, dir)?;
    let vertex_tol = real::<F>(tol::VERTEX);
    let side0 = Vec2::new(F::one(), F::zero());
    let side1 = Vec2::new(spec.gamma.cos(), spec.gamma.sin());

    let mut p = start;
    let mut d = dir;
    let mut last_side: Option<usize> = None;
    let mut count = 0usize;
    // The classical bound plus slack; the loop must terminate well before.
    let cap = (F::PI() / spec.gamma).to_f64().unwrap().ceil() as usize + 8;

    for _ in 0..=cap {
        let mut best: Option<(F, usize, Vec2<F>)> = None;
        for (idx, side) in [side0, side1].iter().enumerate() {
            if last_side == Some(idx) {
                continue;
            }
            // Ray-line intersection with the side's supporting line.
            let normal = Vec2::new(-side.y, side.x);
            let denom = d.dot(normal);
            if denom == F::zero() {
                continue;
            }
            let t = -p.dot(normal) / denom;
            if t <= F::zero() {
                continue;
            }
            let hit = p + d.scale(t);
            let along = hit.dot(*side);
            if along.abs() <= vertex_tol * p.norm().max(F::one()) {
                return Err(Error::OnVertex);
            }
            if along < F::zero() {
                continue;
            }
            if best.is_none_or(|(tb, _, _)| t < tb) {
                best = Some((t, idx, hit));
            }
        }
        match best {
            None => return Ok(count),
            Some((_, idx, hit)) => {
                let side = if idx == 0 { side0 } else { side1 };
                // Reflect the direction across the side.
                let two = real::<F>(2.0);
                d = side.scale(two * d.dot(side)) - d;
                p = hit;
                last_side = Some(idx);
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The same reflection count computed by unfolding: the polar angle along a
/// straight ray not through the origin is strictly monotone, so the count
/// is the number of consecutive mirror rays (multiples of `gamma`) the ray
/// crosses.
pub fn wedge_unfolding_count<F: Real>(
    spec: &WedgeSpec<F>,
    start: Vec2<F>,
    dir: Vec2<F>,
) -> Result<usize> {
    check_wedge_start(spec, start, dir)?;
    let vertex_tol = real::<F>(tol::VERTEX);
    let sweep = start.cross(dir);
    if sweep.abs() <= vertex_tol * start.norm() * dir.norm() {
        return Err(Error::OnVertex);
    }
    // Positive sweep turns counterclockwise: candidate rays at gamma,
    // 2 gamma, ...; negative sweep walks down from the x-axis.
    let step: i64 = if sweep > F::zero() { 1 } else { -1 };
    let mut k: i64 = if step > 0 { 1 } else { 0 };
    let mut count = 0usize;
    let cap = (F::PI() / spec.gamma).to_f64().unwrap().ceil() as i64 + 8;

    while k.abs() <= cap {
        let angle = real::<F>(k as f64) * spec.gamma;
        let e = Vec2::new(angle.cos(), angle.sin());
        let denom = dir.cross(e);
        if denom == F::zero() {
            break;
        }
        let t = -start.cross(e) / denom;
        if t <= F::zero() {
            break;
        }
        let hit = start + dir.scale(t);
        let along = hit.dot(e);
        if along.abs() <= vertex_tol * start.norm().max(F::one()) {
            return Err(Error::OnVertex);
        }
        if along < F::zero() {
            break;
        }
        count += 1;
        k += step;
    }
    Ok(count)
}

/// Per-event invariant sample along a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSample<F = f64> {
    /// `pi - arccos(y)` at the contact.
    pub half_angle: F,
    /// `|phi_dot|` right after the contact.
    pub spin: F,
    /// Product of the two: the invariant itself.
    pub invariant: F,
}

/// Adiabatic-invariant trace of one scattering run.
#[derive(Clone, Debug, PartialEq)]
pub struct AdiabaticTrace<F = f64> {
    pub samples: Vec<InvariantSample<F>>,
    /// Invariant at the first contact, from the incoming state.
    pub initial: F,
    /// Invariant after the last contact.
    pub final_value: F,
    /// Largest deviation from the initial value over the run.
    pub max_drift: F,
    /// Magnitude of the incoming vertical speed at the first contact.
    pub delta: F,
    /// Light-mass ratio `beta1`.
    pub epsilon: F,
}

impl<F: Real> AdiabaticTrace<F> {
    pub fn from_run(params: &DumbbellParams<F>, outcome: &ScatterOutcome<F>) -> Result<Self> {
        let first = outcome.events.first().ok_or(Error::EmptyRun)?;
        // The invariant of the incoming state: spin entering the first
        // contact. The final value uses the outgoing spin, so the trace
        // compares what a scattering experiment compares.
        let initial = adiabatic_invariant(&first.pre)?;
        let mut samples = Vec::with_capacity(outcome.events.len());
        let mut max_drift = F::zero();
        for ev in &outcome.events {
            let half_angle = travel_half_angle(ev.post.y)?;
            let spin = ev.post.phi_dot.abs();
            let invariant = spin * half_angle;
            max_drift = max_drift.max((invariant - initial).abs());
            samples.push(InvariantSample {
                half_angle,
                spin,
                invariant,
            });
        }
        let final_value = samples.last().expect("nonempty").invariant;
        Ok(Self {
            samples,
            initial,
            final_value,
            max_drift,
            delta: first.pre.y_dot.abs(),
            epsilon: params.beta1(),
        })
    }

    /// `|I_N - I_0|` of the run.
    pub fn total_drift(&self) -> F {
        (self.final_value - self.initial).abs()
    }
}
