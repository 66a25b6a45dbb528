//! Warehouse model for the pod repositioning problem: instances, the travel
//! cost objective, feasibility reasoning and seeded instance generation.

pub mod error;
pub mod feasibility;
pub mod generate;
pub mod ids;
pub mod instance;
pub mod io;
pub mod layout;
pub mod occupancy;
pub mod solution;
pub mod validate;

pub use error::{ModelError, Violation};
pub use feasibility::{CostedPlacement, DestroySet, WarehouseConfig};
pub use ids::{manhattan, GridPoint, LocationId, PodId, StationId};
pub use instance::{Event, EventStream, Instance, Metadata, Pod};
pub use layout::Layout;
pub use occupancy::Workspace;
pub use solution::{placement_cost, solution_cost, Solution};
pub use validate::{validate_partial, validate_solution};
