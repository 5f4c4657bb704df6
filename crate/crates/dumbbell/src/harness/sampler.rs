//! Initial-condition samplers: the broad scattering ensemble, the
//! constrained ensemble for adiabatic runs, and random straight-wedge
//! trials.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::WedgeSpec;
use crate::geometry::{boundary_max, outward_normal, BoundaryBranch};
use crate::model::{DumbbellParams, PhysState};
use crate::tol;
use crate::vec2::Vec2;

use super::config::SamplerSpec;

/// Deterministic per-trial generator: stream `index` of the run seed.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform(rng: &mut ChaCha8Rng, range: [f64; 2]) -> f64 {
    if range[0] == range[1] {
        range[0]
    } else {
        rng.random_range(range[0]..range[1])
    }
}

/// A state whose angle is frozen on the corner never resolves into a
/// defined reflection; the sampler rejects these upfront.
pub fn is_corner_aimed(s: &PhysState<f64>) -> bool {
    s.phi_dot == 0.0 && s.phi.sin().abs() <= tol::CORNER
}

/// Draw one scattering initial state: height fixed at `y0` (default twice
/// the largest boundary height), everything else uniform over the
/// configured ranges, rejecting inadmissible and corner-aimed draws.
pub fn sample_scatter_state(
    params: &DumbbellParams<f64>,
    spec: &SamplerSpec,
    rng: &mut ChaCha8Rng,
) -> PhysState<f64> {
    let y0 = spec.y0.unwrap_or_else(|| 2.0 * boundary_max(params));
    loop {
        let s = PhysState::new(
            y0,
            uniform(rng, spec.phi),
            uniform(rng, spec.y_dot),
            uniform(rng, spec.phi_dot),
        );
        if s.is_admissible(params) && !is_corner_aimed(&s) {
            return s;
        }
    }
}

/// Post-hoc validator: does a state satisfy the declared constraint set?
pub fn complies(params: &DumbbellParams<f64>, spec: &SamplerSpec, s: &PhysState<f64>) -> bool {
    let y0 = spec.y0.unwrap_or_else(|| 2.0 * boundary_max(params));
    let within = |v: f64, r: [f64; 2]| v >= r[0] && v <= r[1];
    s.y == y0
        && within(s.phi, spec.phi)
        && within(s.y_dot, spec.y_dot)
        && within(s.phi_dot, spec.phi_dot)
        && s.is_admissible(params)
        && !is_corner_aimed(s)
}

/// One draw from the constrained adiabatic ensemble.
#[derive(Clone, Copy, Debug)]
pub struct AdiabaticSample {
    pub params: DumbbellParams<f64>,
    /// Backed-up state strictly before the first contact.
    pub initial: PhysState<f64>,
    /// Rod angle at the intended first contact.
    pub contact_phi: f64,
}

/// Draw a compliant adiabatic initial condition for vertical-speed scale
/// `delta`, with `epsilon = delta^2` and the contact angle in the two-sided
/// annulus `c1 sqrt(delta) <= |phi - 3pi/2| <= c2 sqrt(delta)`.
///
/// The state is constructed at the first light-mass contact (incoming) and
/// then backed up along the exact free flight, so the run begins strictly
/// airborne and meets the sampled contact as its first event. Returns the
/// draw and the number of rejected attempts.
pub fn sample_adiabatic(
    delta: f64,
    annulus: (f64, f64),
    rng: &mut ChaCha8Rng,
) -> (AdiabaticSample, usize) {
    let epsilon = delta * delta;
    let params = DumbbellParams::new(epsilon, 1.0 - epsilon).expect("valid masses");
    let three_half_pi = 1.5 * std::f64::consts::PI;
    let mut rejected = 0usize;
    loop {
        let s_mag = rng.random_range(annulus.0 * delta.sqrt()..annulus.1 * delta.sqrt());
        let side = if rng.random_range(0..2u8) == 0 {
            1.0
        } else {
            -1.0
        };
        let contact_phi = three_half_pi + side * s_mag;
        // The light mass comes down onto the floor only when it rotates
        // toward the contact point, which ties the spin sign to the side.
        let phi_dot = -side * rng.random_range(0.8..1.2);
        let y_dot = -rng.random_range(0.5 * delta..delta);
        let y_contact = -params.beta2() * contact_phi.sin();
        let contact = PhysState::new(y_contact, contact_phi, y_dot, phi_dot);

        if !incoming(&params, &contact) {
            rejected += 1;
            continue;
        }
        // Back up a fifth of a radian of rotation along the exact flight.
        let tau = 0.2 / phi_dot.abs();
        let initial = PhysState::new(
            contact.y - y_dot * tau,
            contact.phi - phi_dot * tau,
            y_dot,
            phi_dot,
        );
        if initial.is_admissible(&params) && leg_stays_airborne(&params, &initial, tau) {
            return (
                AdiabaticSample {
                    params,
                    initial,
                    contact_phi,
                },
                rejected,
            );
        }
        rejected += 1;
    }
}

fn incoming(params: &DumbbellParams<f64>, contact: &PhysState<f64>) -> bool {
    let n = match outward_normal(params, contact.phi, BoundaryBranch::Mass1) {
        Ok(n) => n,
        Err(_) => return false,
    };
    let v = Vec2::new(contact.phi_dot, contact.y_dot * params.scale_factor());
    v.dot(n) < -tol::GRAZING
}

/// Both masses stay strictly above the floor at interior samples of the
/// backed-up flight leg.
fn leg_stays_airborne(params: &DumbbellParams<f64>, initial: &PhysState<f64>, tau: f64) -> bool {
    const PROBES: usize = 32;
    for k in 1..PROBES {
        let t = tau * (k as f64) / (PROBES as f64);
        let s = PhysState::new(
            initial.y + initial.y_dot * t,
            initial.phi + initial.phi_dot * t,
            initial.y_dot,
            initial.phi_dot,
        );
        if s.mass1_height(params) <= tol::GEOM || s.mass2_height(params) <= tol::GEOM {
            return false;
        }
    }
    true
}

/// Random straight-wedge trial: angle, interior start point, heading.
pub fn sample_wedge(rng: &mut ChaCha8Rng) -> (WedgeSpec<f64>, Vec2<f64>, Vec2<f64>) {
    let gamma: f64 = rng.random_range(0.05..3.05);
    let spec = WedgeSpec::new(gamma).expect("gamma in range");
    let frac: f64 = rng.random_range(0.02..0.98);
    let radius: f64 = rng.random_range(0.5..10.0);
    let angle = frac * gamma;
    let start = Vec2::new(radius * angle.cos(), radius * angle.sin());
    let heading = rng.random_range(0.0..std::f64::consts::TAU);
    let dir = Vec2::new(heading.cos(), heading.sin());
    (spec, start, dir)
}
