//! Numerical tolerances used across the crate.
//!
//! All values are in the natural units of the problem (rod lengths, radians,
//! seconds) and are expressed as `f64`; generic code converts them into its
//! scalar type at the use site.

/// Admissibility slack for floor-contact checks, in rod lengths. Well above
/// the root-finder tolerance, well below any physical scale.
pub const GEOM: f64 = 1e-9;

/// `|sin phi|` at or below this classifies a boundary point as the corner
/// where both masses touch simultaneously.
pub const CORNER: f64 = 1e-9;

/// Absolute time tolerance of the collision-time root finder.
pub const ROOT_TIME: f64 = 1e-12;

/// Post-collision exclusion window: collision roots are sought strictly
/// after this time so the just-resolved contact is not re-detected.
pub const T_MIN: f64 = 1e-11;

/// Normal-velocity band treated as a grazing contact: impacts inside it
/// pass the state through unchanged, velocities above it on the outgoing
/// side are rejected.
pub const GRAZING: f64 = 1e-10;

/// Wedge angles at or below this are rejected as degenerate.
pub const DEGENERATE_WEDGE: f64 = 1e-9;

/// When `pi/gamma` is within this of an integer `k`, the collision bound
/// uses `k` as the exact ceiling.
pub const CEILING_TIE: f64 = 1e-12;

/// Lower bound on `sqrt(1 - y^2)` below which the approximate bounce map
/// refuses to evaluate (contact too close to the vertical configuration).
pub const NEAR_VERTICAL: f64 = 1e-6;

/// Relative distance from the wedge apex treated as a vertex hit.
pub const VERTEX: f64 = 1e-12;
