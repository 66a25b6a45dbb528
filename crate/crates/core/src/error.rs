//! Error types for the warehouse model.

use crate::ids::{LocationId, PodId, StationId};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("inconsistent event stream at iteration {iteration}: {detail}")]
    InconsistentStream { iteration: usize, detail: String },

    #[error("iteration {0} has no departure event")]
    NoDeparture(usize),

    #[error("iteration {iteration} is unassigned")]
    Unassigned { iteration: usize },

    #[error("solution is infeasible at iteration {iteration}: {detail}")]
    Infeasible { iteration: usize, detail: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("schema error in {path}: {detail}")]
    Schema { path: String, detail: String },

    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },
}

impl ModelError {
    pub fn stream(iteration: usize, detail: impl Into<String>) -> Self {
        ModelError::InconsistentStream {
            iteration,
            detail: detail.into(),
        }
    }
}

/// One concrete rule violation found while replaying a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A departure iteration has no assigned storage location.
    MissingAssignment { iteration: usize, pod: PodId },
    /// A pod was placed onto a location that is still occupied.
    OccupiedLocation {
        iteration: usize,
        location: LocationId,
        incumbent: PodId,
        placed: PodId,
    },
    /// The event stream itself is inconsistent with the warehouse state.
    InconsistentStream { iteration: usize, detail: String },
}

impl Violation {
    pub fn iteration(&self) -> usize {
        match self {
            Violation::MissingAssignment { iteration, .. }
            | Violation::OccupiedLocation { iteration, .. }
            | Violation::InconsistentStream { iteration, .. } => *iteration,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingAssignment { iteration, pod } => {
                write!(f, "iteration {iteration}: no assignment for departing pod {pod}")
            }
            Violation::OccupiedLocation {
                iteration,
                location,
                incumbent,
                placed,
            } => write!(
                f,
                "iteration {iteration}: pod {placed} placed at {location} which is occupied by {incumbent}"
            ),
            Violation::InconsistentStream { iteration, detail } => {
                write!(f, "iteration {iteration}: inconsistent stream: {detail}")
            }
        }
    }
}

/// Marker for the station side of a stream inconsistency message.
pub fn station_detail(pod: PodId, station: StationId) -> String {
    format!("pod {pod} is not queued at station {station}")
}
