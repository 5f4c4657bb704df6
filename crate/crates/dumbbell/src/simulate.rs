//! Event-driven propagation: straight-line flight in billiard coordinates,
//! collision-time root finding, and full scattering runs.
//!
//! Flight legs are analytic, so all numerical work sits in one place: the
//! first root of the gap function `g(t) = Y(t) - B(phi(t))`. The search
//! interval is split at the times where `phi(t)` crosses a multiple of pi.
//! Between consecutive crossings `sin(phi(t))` keeps one sign, which makes
//! `g` convex on each piece; a convex piece either changes sign at its
//! endpoints or hides its roots behind a single interior minimum, so
//! bracketing plus one derivative bisection finds every crossing.

use crate::analysis;
use crate::error::{Error, Result};
use crate::geometry::{
    boundary, boundary_max, branch_slope, escape_horizon, outward_normal, BoundaryBranch,
};
use crate::model::{from_billiard, to_billiard, BilliardState, DumbbellParams, PhysState};
use crate::scalar::{real, Real};
use crate::tol;
use crate::vec2::Vec2;

/// One resolved floor contact along a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BounceEvent<F = f64> {
    /// Ordinal of the event within the run, starting at 0.
    pub index: usize,
    /// Absolute time since the start of the run.
    pub time: F,
    pub mass_hit: BoundaryBranch,
    pub pre: PhysState<F>,
    pub post: PhysState<F>,
    /// Unsigned angular distance traveled during the flight leg ending at
    /// this event.
    pub phi_travel: F,
}

/// Why a scattering run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// No future collision: the run left the floor for good.
    Escaped,
    /// The trajectory reached the corner where both masses touch; the
    /// reflection law is undefined there, so the run terminates.
    CornerHit,
    /// A run limit (bounce count or time) was reached.
    HorizonExceeded,
    /// The state has no dynamics at all.
    StationaryState,
}

/// Full record of one scattering run.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterOutcome<F = f64> {
    pub events: Vec<BounceEvent<F>>,
    pub termination: Termination,
    pub final_state: PhysState<F>,
    pub collision_count: usize,
}

/// Caps on a single run. Limits are reported through
/// [`Termination::HorizonExceeded`], never raised as errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits<F = f64> {
    pub max_bounces: usize,
    pub max_time: F,
}

impl<F: Real> Limits<F> {
    /// Generous multiples of the theoretical collision bound, so a bound
    /// violation would be observed rather than masked.
    pub fn for_params(params: &DumbbellParams<F>) -> Self {
        let cap = analysis::collision_bound(params).unwrap_or(1_000_000);
        Limits {
            max_bounces: cap.saturating_mul(10),
            max_time: real::<F>(1e6),
        }
    }
}

/// Straight-line flight for a nonnegative duration `t`.
pub fn flight<F: Real>(b: &BilliardState<F>, t: F) -> BilliardState<F> {
    debug_assert!(t >= F::zero());
    BilliardState::new(b.y + b.y_dot * t, b.phi + b.phi_dot * t, b.y_dot, b.phi_dot)
}

/// Smallest time strictly after `t` at which `phi` crosses a multiple of pi.
fn next_kink_after<F: Real>(phi0: F, phi_dot: F, t: F) -> Option<F> {
    if phi_dot == F::zero() {
        return None;
    }
    let pi = F::PI();
    let phi_t = phi0 + phi_dot * t;
    let dir = if phi_dot > F::zero() {
        F::one()
    } else {
        -F::one()
    };
    let mut k = if phi_dot > F::zero() {
        (phi_t / pi).floor() + F::one()
    } else {
        (phi_t / pi).ceil() - F::one()
    };
    let mut tk = (k * pi - phi0) / phi_dot;
    for _ in 0..8 {
        if tk > t {
            return Some(tk);
        }
        k = k + dir;
        tk = (k * pi - phi0) / phi_dot;
    }
    // Unreachable for finite states; keep the scan strictly advancing.
    Some(t + pi / phi_dot.abs())
}

/// Bisection on a bracket `gap(lo) > 0 >= gap(hi)`, then a bracket-guarded
/// Newton polish.
fn refine_root<F: Real>(gap: &impl Fn(F) -> F, dgap: &impl Fn(F) -> F, mut lo: F, mut hi: F) -> F {
    let tol_t = real::<F>(tol::ROOT_TIME);
    let half = real::<F>(0.5);
    for _ in 0..200 {
        if hi - lo <= tol_t {
            break;
        }
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) > F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = (lo + hi) * half;
    for _ in 0..3 {
        let d = dgap(t);
        if d == F::zero() {
            break;
        }
        let next = t - gap(t) / d;
        if next < lo || next > hi {
            break;
        }
        t = next;
    }
    t
}

/// Bisection for the zero of the increasing derivative of a convex piece.
fn refine_argmin<F: Real>(dgap: &impl Fn(F) -> F, mut lo: F, mut hi: F) -> F {
    let tol_t = real::<F>(tol::ROOT_TIME);
    let half = real::<F>(0.5);
    for _ in 0..200 {
        if hi - lo <= tol_t {
            break;
        }
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if dgap(mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * half
}

/// First `+ -> -` crossing of the convex piece `[a, b]`, if any.
fn scan_segment<F: Real>(
    gap: &impl Fn(F) -> F,
    dgap: &impl Fn(F) -> F,
    a: F,
    b: F,
    ga: F,
    gb: F,
) -> Option<F> {
    let zero = F::zero();
    if ga > zero {
        if gb <= zero {
            return Some(refine_root(gap, dgap, a, b));
        }
        // Both endpoints above the boundary: any root hides behind the
        // single interior minimum of the convex piece.
        if dgap(a) >= zero || dgap(b) <= zero {
            return None;
        }
        let t_min = refine_argmin(dgap, a, b);
        if gap(t_min) < zero {
            return Some(refine_root(gap, dgap, a, t_min));
        }
        None
    } else if gb <= zero {
        // Still at or below the boundary for the whole piece: an unresolved
        // incoming contact at the start of the window.
        Some(a)
    } else {
        // Rising out of a grazing contact.
        None
    }
}

/// Earliest future boundary contact of the state, or `None` when the
/// trajectory provably never touches the boundary again.
///
/// The root is the first true sign change of `Y(t) - B(phi(t))` from
/// positive to negative at a time greater than the post-collision exclusion
/// window, located to the absolute time tolerance of the root finder.
pub fn next_collision<F: Real>(
    params: &DumbbellParams<F>,
    b: &BilliardState<F>,
) -> Result<Option<(F, BoundaryBranch)>> {
    let Some(horizon) = escape_horizon(params, b)? else {
        return Ok(None);
    };
    let t_lo = real::<F>(tol::T_MIN);
    if horizon <= t_lo {
        return Ok(None);
    }

    // Skip the initial stretch spent strictly above every boundary point.
    let b_max = boundary_max(params);
    let mut start = t_lo;
    if b.y_dot < F::zero() && b.y > b_max {
        start = start.max((b.y - b_max) / -b.y_dot);
    }

    let gap = |t: F| b.y + b.y_dot * t - boundary(params, b.phi + b.phi_dot * t).0;

    let half = real::<F>(0.5);
    let mut a = start;
    let mut ga = gap(a);
    let root = loop {
        let end = match next_kink_after(b.phi, b.phi_dot, a) {
            Some(tk) if tk < horizon => tk,
            _ => horizon,
        };
        // The active branch is constant strictly between kinks; segment
        // endpoints sit on kinks where the sign of sin(phi) is noise, so
        // classify at the midpoint.
        let seg_branch = if (b.phi + b.phi_dot * ((a + end) * half)).sin() < F::zero() {
            BoundaryBranch::Mass1
        } else {
            BoundaryBranch::Mass2
        };
        let dgap =
            |t: F| b.y_dot - branch_slope(params, b.phi + b.phi_dot * t, seg_branch) * b.phi_dot;
        let gb = gap(end);
        if let Some(r) = scan_segment(&gap, &dgap, a, end, ga, gb) {
            break Some(r);
        }
        if end >= horizon {
            break None;
        }
        a = end;
        ga = gb;
    };

    Ok(root.map(|t| {
        let (_, branch) = boundary(params, b.phi + b.phi_dot * t);
        (t, branch)
    }))
}

struct RunState<F> {
    events: Vec<BounceEvent<F>>,
    t_abs: F,
}

impl<F: Real> RunState<F> {
    fn push(&mut self, mass_hit: BoundaryBranch, pre: PhysState<F>, post: PhysState<F>, leg: F) {
        self.events.push(BounceEvent {
            index: self.events.len(),
            time: self.t_abs,
            mass_hit,
            pre,
            post,
            phi_travel: pre.phi_dot.abs() * leg,
        });
    }

    fn finish(self, termination: Termination, final_state: PhysState<F>) -> ScatterOutcome<F> {
        let collision_count = self.events.len();
        ScatterOutcome {
            events: self.events,
            termination,
            final_state,
            collision_count,
        }
    }
}

/// Run the event loop from an admissible state until escape, a corner hit,
/// or the limits.
///
/// The run evolves in billiard coordinates internally (flight is exact
/// there); recorded states are physical views. A state that starts exactly
/// in contact with incoming velocity is resolved as the first event at time
/// zero.
pub fn scatter<F: Real>(
    params: &DumbbellParams<F>,
    initial: &PhysState<F>,
    limits: &Limits<F>,
) -> Result<ScatterOutcome<F>> {
    if !initial.is_admissible(params) {
        return Err(Error::Inadmissible);
    }
    let grazing = real::<F>(tol::GRAZING);
    let mut b = to_billiard(params, initial);
    let mut run = RunState {
        events: Vec::new(),
        t_abs: F::zero(),
    };

    // Resolve a contact the run starts in.
    let (h0, br0) = boundary(params, b.phi);
    if (b.y - h0).abs() <= real::<F>(tol::GEOM) {
        match br0 {
            BoundaryBranch::Corner => {
                // Lifting off the corner needs the height to grow faster
                // than the steeper of the two branch slopes; anything else
                // is an undefined corner interaction.
                let slope = escape_slope(params, b.phi, b.phi_dot);
                if b.y_dot <= slope * b.phi_dot.abs() + grazing {
                    let pre = from_billiard(params, &b);
                    run.push(BoundaryBranch::Corner, pre, pre, F::zero());
                    return Ok(run.finish(Termination::CornerHit, pre));
                }
            }
            branch => {
                let n = outward_normal(params, b.phi, branch)?;
                if Vec2::new(b.phi_dot, b.y_dot).dot(n) < -grazing {
                    let pre = from_billiard(params, &b);
                    let post_b = crate::collision::collide_billiard(params, &b, branch)?;
                    run.push(branch, pre, from_billiard(params, &post_b), F::zero());
                    b = post_b;
                }
            }
        }
    }

    loop {
        match next_collision(params, &b) {
            Err(Error::StationaryState) => {
                let fin = from_billiard(params, &b);
                return Ok(run.finish(Termination::StationaryState, fin));
            }
            Err(e) => return Err(e),
            Ok(None) => {
                if b.y_dot > F::zero() {
                    // Fast-forward above the highest boundary point so the
                    // final state certifies its own escape.
                    let lead = ((boundary_max(params) - b.y) / b.y_dot).max(F::zero()) + F::one();
                    b = flight(&b, lead);
                    run.t_abs = run.t_abs + lead;
                }
                let fin = from_billiard(params, &b);
                return Ok(run.finish(Termination::Escaped, fin));
            }
            Ok(Some((t_c, branch))) => {
                if run.t_abs + t_c > limits.max_time {
                    let rest = (limits.max_time - run.t_abs).max(F::zero());
                    b = flight(&b, rest);
                    run.t_abs = limits.max_time;
                    let fin = from_billiard(params, &b);
                    return Ok(run.finish(Termination::HorizonExceeded, fin));
                }
                let pre_b = flight(&b, t_c);
                run.t_abs = run.t_abs + t_c;
                let pre = from_billiard(params, &pre_b);
                if branch == BoundaryBranch::Corner {
                    run.push(BoundaryBranch::Corner, pre, pre, t_c);
                    return Ok(run.finish(Termination::CornerHit, pre));
                }
                let post_b = crate::collision::collide_billiard(params, &pre_b, branch)?;
                let post = from_billiard(params, &post_b);
                run.push(branch, pre, post, t_c);
                b = post_b;
                if run.events.len() >= limits.max_bounces {
                    return Ok(run.finish(Termination::HorizonExceeded, post));
                }
            }
        }
    }
}

/// Slope of the branch the angle is about to move into at a corner.
fn escape_slope<F: Real>(params: &DumbbellParams<F>, phi: F, phi_dot: F) -> F {
    if phi_dot == F::zero() {
        return F::zero();
    }
    // At phi = 0 (mod 2pi) positive spin enters the m2 curve; at phi = pi
    // it enters the m1 curve. cos(phi) distinguishes the two corners.
    let into_mass2 = (phi.cos() > F::zero()) == (phi_dot > F::zero());
    if into_mass2 {
        crate::geometry::mass2_amplitude(params)
    } else {
        crate::geometry::mass1_amplitude(params)
    }
}
