use core::fmt;

/// Errors raised by the simulation and analysis primitives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Error {
    /// Masses must be strictly positive and finite.
    NonPositiveMass,
    /// The requested operation is undefined on the corner branch.
    CornerBranch,
    /// Both velocity components are zero; there is no dynamics.
    StationaryState,
    /// Reflection normal has zero length.
    ZeroNormal,
    /// Contact precondition violated: the mass is not on the floor.
    NotInContact,
    /// Normal velocity points out of the boundary; no collision to resolve.
    OutgoingState,
    /// Center-of-mass height outside the domain of the invariant.
    OutOfRange,
    /// Contact too close to the vertical configuration for the approximate map.
    NearVertical,
    /// Wedge angle too small to be meaningful.
    DegenerateWedge,
    /// Trajectory hits the wedge apex, where reflection is undefined.
    OnVertex,
    /// Start point is not strictly inside the wedge.
    OutsideWedge,
    /// State violates the floor constraint.
    Inadmissible,
    /// A run produced no bounce events to analyze.
    EmptyRun,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::NonPositiveMass => "masses must be strictly positive and finite",
            Error::CornerBranch => "operation undefined on the corner branch",
            Error::StationaryState => "state has no dynamics (both velocities zero)",
            Error::ZeroNormal => "reflection normal has zero length",
            Error::NotInContact => "mass is not in contact with the floor",
            Error::OutgoingState => "normal velocity is outgoing; no collision to resolve",
            Error::OutOfRange => "height outside the domain of the invariant",
            Error::NearVertical => "contact too close to the vertical configuration",
            Error::DegenerateWedge => "wedge angle is degenerate",
            Error::OnVertex => "trajectory hits the wedge apex",
            Error::OutsideWedge => "start point is not strictly inside the wedge",
            Error::Inadmissible => "state violates the floor constraint",
            Error::EmptyRun => "run contains no bounce events",
        };
        f.write_str(msg)
    }
}

impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
