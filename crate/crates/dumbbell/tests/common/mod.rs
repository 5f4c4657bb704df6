//! Shared test support: an independent evolution of the dumbbell entirely
//! in physical coordinates.
//!
//! Nothing here touches the billiard-plane root finder: contacts are found
//! by marching the smaller of the two mass heights on a fine grid and
//! bisecting the first sign change, and impacts use the closed-form
//! physical law. This is the oracle the event-driven simulator is checked
//! against.

use dumbbell::collision::{collide_mass1, collide_mass2};
use dumbbell::geometry::BoundaryBranch;
use dumbbell::model::{DumbbellParams, PhysState};
use dumbbell::tol;

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Smaller of the two mass heights along the free flight from `s`.
fn min_height(params: &DumbbellParams<f64>, s: &PhysState<f64>, t: f64) -> (f64, bool) {
    let y = s.y + s.y_dot * t;
    let phi = s.phi + s.phi_dot * t;
    let y1 = y + params.beta2() * phi.sin();
    let y2 = y - params.beta1() * phi.sin();
    (y1.min(y2), y1 < y2)
}

/// Latest time by which any future contact must have happened, or `None`
/// when the state provably never touches the floor again.
fn phys_horizon(params: &DumbbellParams<f64>, s: &PhysState<f64>) -> Option<f64> {
    let peak = params.beta1().max(params.beta2());
    if s.y_dot >= 0.0 {
        if s.y > peak {
            None
        } else if s.y_dot > 0.0 {
            Some((peak - s.y) / s.y_dot)
        } else {
            Some(std::f64::consts::TAU / s.phi_dot.abs())
        }
    } else {
        Some((s.y + 1.0) / -s.y_dot)
    }
}

/// First floor contact after `s`, found by brute-force marching.
pub fn phys_next_contact(
    params: &DumbbellParams<f64>,
    s: &PhysState<f64>,
) -> Option<(f64, BoundaryBranch)> {
    let t_max = phys_horizon(params, s)?;
    if t_max <= tol::T_MIN {
        return None;
    }
    let dt = (std::f64::consts::PI / (256.0 * (s.phi_dot.abs() + 0.05))).min(t_max / 64.0);
    let mut prev_t = tol::T_MIN;
    let mut prev_g = min_height(params, s, prev_t).0;
    let mut armed = prev_g > 0.0;
    let mut t = prev_t;
    while t < t_max {
        t = (t + dt).min(t_max);
        let (g, _) = min_height(params, s, t);
        if armed && prev_g > 0.0 && g <= 0.0 {
            let (mut lo, mut hi) = (prev_t, t);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if min_height(params, s, mid).0 > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            let phi = s.phi + s.phi_dot * root;
            let branch = if phi.sin().abs() <= tol::CORNER {
                BoundaryBranch::Corner
            } else if min_height(params, s, root).1 {
                BoundaryBranch::Mass1
            } else {
                BoundaryBranch::Mass2
            };
            return Some((root, branch));
        }
        if g > 0.0 {
            armed = true;
        }
        prev_t = t;
        prev_g = g;
    }
    None
}

#[derive(Clone, Copy, Debug)]
pub struct PhysEvent {
    pub time: f64,
    pub branch: BoundaryBranch,
    pub pre: PhysState<f64>,
    pub post: PhysState<f64>,
}

/// Full event loop in physical coordinates with the closed-form impact law.
/// Returns the events and whether the run ended by escaping (as opposed to
/// a corner hit or the bounce cap).
pub fn phys_scatter(
    params: &DumbbellParams<f64>,
    initial: &PhysState<f64>,
    max_bounces: usize,
) -> (Vec<PhysEvent>, bool) {
    let mut s = *initial;
    let mut t_abs = 0.0;
    let mut events = Vec::new();
    while events.len() < max_bounces {
        let Some((t_c, branch)) = phys_next_contact(params, &s) else {
            return (events, true);
        };
        let pre = PhysState::new(
            s.y + s.y_dot * t_c,
            s.phi + s.phi_dot * t_c,
            s.y_dot,
            s.phi_dot,
        );
        t_abs += t_c;
        if branch == BoundaryBranch::Corner {
            events.push(PhysEvent {
                time: t_abs,
                branch,
                pre,
                post: pre,
            });
            return (events, false);
        }
        let result = match branch {
            BoundaryBranch::Mass1 => collide_mass1(params, &pre),
            _ => collide_mass2(params, &pre),
        }
        .expect("marched root is a valid incoming contact");
        events.push(PhysEvent {
            time: t_abs,
            branch,
            pre,
            post: result.post,
        });
        s = result.post;
    }
    (events, false)
}
