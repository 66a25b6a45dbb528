//! Versioned JSON files for instances and solutions.
//!
//! Both formats are self-describing text documents that round-trip
//! bit-exactly: serialization is a pure function of the value, and loading
//! re-validates every instance invariant.

use crate::error::ModelError;
use crate::ids::{GridPoint, LocationId, PodId};
use crate::instance::{Event, EventStream, Instance, Metadata, Pod};
use crate::layout::Layout;
use crate::solution::Solution;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct LayoutFile {
    locations: Vec<GridPoint>,
    stations: Vec<GridPoint>,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    schema_version: u32,
    name: String,
    seed: u64,
    layout: LayoutFile,
    pods: Vec<Pod>,
    queue_capacity: usize,
    initial_config: Vec<Option<PodId>>,
    initial_queues: Vec<Vec<PodId>>,
    arrivals: Vec<Option<Event>>,
    departures: Vec<Option<Event>>,
    next_departure: Vec<Option<usize>>,
}

/// On-disk form of a solved instance.
#[derive(Serialize, Deserialize)]
pub struct SolutionFile {
    pub instance_name: String,
    pub assignments: Vec<Option<LocationId>>,
    pub total_cost: u64,
}

fn io_err(path: &Path, source: std::io::Error) -> ModelError {
    ModelError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn schema_err(path: &Path, err: serde_json::Error) -> ModelError {
    ModelError::Schema {
        path: path.display().to_string(),
        detail: err.to_string(),
    }
}

pub fn save_instance(instance: &Instance, path: &Path) -> Result<(), ModelError> {
    let file = InstanceFile {
        schema_version: INSTANCE_SCHEMA_VERSION,
        name: instance.metadata().name.clone(),
        seed: instance.metadata().seed,
        layout: LayoutFile {
            locations: instance.layout().locations().to_vec(),
            stations: instance.layout().stations().to_vec(),
        },
        pods: instance.pods().to_vec(),
        queue_capacity: instance.queue_capacity(),
        initial_config: instance.initial_config().to_vec(),
        initial_queues: instance.initial_queues().to_vec(),
        arrivals: instance.events().arrivals().to_vec(),
        departures: instance.events().departures().to_vec(),
        next_departure: instance.events().next_departures().to_vec(),
    };
    let mut text = serde_json::to_string(&file).expect("instance serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn load_instance(path: &Path) -> Result<Instance, ModelError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let file: InstanceFile = serde_json::from_str(&text).map_err(|e| schema_err(path, e))?;
    if file.schema_version != INSTANCE_SCHEMA_VERSION {
        return Err(ModelError::SchemaVersion {
            found: file.schema_version,
            expected: INSTANCE_SCHEMA_VERSION,
        });
    }
    Instance::new(
        Layout::new(file.layout.locations, file.layout.stations)?,
        file.pods,
        EventStream::new(file.arrivals, file.departures, file.next_departure)?,
        file.initial_config,
        file.initial_queues,
        file.queue_capacity,
        Metadata {
            name: file.name,
            seed: file.seed,
        },
    )
}

pub fn save_solution(
    instance: &Instance,
    solution: &Solution,
    total_cost: u64,
    path: &Path,
) -> Result<(), ModelError> {
    let file = SolutionFile {
        instance_name: instance.metadata().name.clone(),
        assignments: solution.assignments().to_vec(),
        total_cost,
    };
    let mut text = serde_json::to_string(&file).expect("solution serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Loads a solution file and rebinds it to `instance`, recomputing the cost
/// cache. Fails if the file's total does not match the recomputed value.
pub fn load_solution(instance: &Instance, path: &Path) -> Result<(Solution, u64), ModelError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let file: SolutionFile = serde_json::from_str(&text).map_err(|e| schema_err(path, e))?;
    if file.instance_name != instance.metadata().name {
        return Err(ModelError::Schema {
            path: path.display().to_string(),
            detail: format!(
                "solution is for instance '{}', not '{}'",
                file.instance_name,
                instance.metadata().name
            ),
        });
    }
    let solution = Solution::from_assignments(instance, file.assignments)?;
    let recomputed = solution.cached_total();
    if recomputed != file.total_cost {
        return Err(ModelError::Schema {
            path: path.display().to_string(),
            detail: format!(
                "stored total_cost {} does not match recomputed {}",
                file.total_cost, recomputed
            ),
        });
    }
    Ok((solution, recomputed))
}
