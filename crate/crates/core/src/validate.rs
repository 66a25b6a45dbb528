//! Solution validation by full-horizon replay.

use crate::error::Violation;
use crate::ids::{LocationId, PodId};
use crate::instance::Instance;
use crate::solution::Solution;

/// Replays the full horizon and reports the first rule violation, or `None`
/// when the solution is complete and feasible.
pub fn validate_solution(instance: &Instance, solution: &Solution) -> Option<Violation> {
    replay(instance, solution, false)
}

/// Like [`validate_solution`] but tolerates unassigned departure iterations:
/// their pods simply leave the system and occupy nothing. Used to check
/// whether a partial solution's committed portion is conflict-free.
pub fn validate_partial(instance: &Instance, solution: &Solution) -> Option<Violation> {
    replay(instance, solution, true)
}

fn replay(instance: &Instance, solution: &Solution, allow_unassigned: bool) -> Option<Violation> {
    let n_locations = instance.layout().num_locations();
    let mut occupancy: Vec<Option<PodId>> = instance.initial_config().to_vec();
    // Location of each pod while in storage.
    let mut location_of: Vec<Option<LocationId>> = vec![None; instance.pods().len()];
    for (q, slot) in occupancy.iter().enumerate() {
        if let Some(pod) = slot {
            location_of[pod.index()] = Some(LocationId(q as u32));
        }
    }
    let mut queues: Vec<Vec<PodId>> = instance.initial_queues().to_vec();

    for t in 0..instance.horizon() {
        if let Some(ev) = instance.events().arrival(t) {
            // Pods whose previous placement was left unassigned occupy nothing;
            // their summons frees no location.
            if let Some(q) = location_of[ev.pod.index()].take() {
                occupancy[q.index()] = None;
            }
            queues[ev.station.index()].push(ev.pod);
        }
        if let Some(ev) = instance.events().departure(t) {
            let queue = &mut queues[ev.station.index()];
            match queue.iter().position(|p| *p == ev.pod) {
                Some(pos) => {
                    queue.remove(pos);
                }
                None => {
                    return Some(Violation::InconsistentStream {
                        iteration: t,
                        detail: crate::error::station_detail(ev.pod, ev.station),
                    });
                }
            }
            match solution.assignment(t) {
                Some(q) => {
                    debug_assert!(q.index() < n_locations);
                    if let Some(incumbent) = occupancy[q.index()] {
                        return Some(Violation::OccupiedLocation {
                            iteration: t,
                            location: q,
                            incumbent,
                            placed: ev.pod,
                        });
                    }
                    occupancy[q.index()] = Some(ev.pod);
                    location_of[ev.pod.index()] = Some(q);
                }
                None if allow_unassigned => {}
                None => {
                    return Some(Violation::MissingAssignment {
                        iteration: t,
                        pod: ev.pod,
                    });
                }
            }
        }
    }
    None
}
