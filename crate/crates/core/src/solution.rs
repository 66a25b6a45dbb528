//! Placement decisions and the travel-cost objective.

use crate::error::ModelError;
use crate::ids::LocationId;
use crate::instance::Instance;

/// A (possibly partial) vector of placement decisions, one slot per iteration.
///
/// Only iterations carrying a departure event ever hold an assignment; during
/// destroy/repair some of those slots are temporarily `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    assignments: Vec<Option<LocationId>>,
    /// Cached per-iteration placement cost; 0 wherever unassigned.
    costs: Vec<u64>,
}

impl Solution {
    /// An empty solution with one slot per iteration of `instance`.
    pub fn empty(instance: &Instance) -> Self {
        Self {
            assignments: vec![None; instance.horizon()],
            costs: vec![0; instance.horizon()],
        }
    }

    /// Builds a solution from raw assignments, recomputing the cost cache.
    pub fn from_assignments(
        instance: &Instance,
        assignments: Vec<Option<LocationId>>,
    ) -> Result<Self, ModelError> {
        if assignments.len() != instance.horizon() {
            return Err(ModelError::InvalidInstance(format!(
                "solution has {} slots but the instance horizon is {}",
                assignments.len(),
                instance.horizon()
            )));
        }
        let mut solution = Self {
            costs: vec![0; assignments.len()],
            assignments,
        };
        for t in 0..solution.assignments.len() {
            if let Some(q) = solution.assignments[t] {
                if q.index() >= instance.layout().num_locations() {
                    return Err(ModelError::InvalidInstance(format!(
                        "assignment at iteration {t} references unknown location {q}"
                    )));
                }
                solution.costs[t] = placement_cost(instance, t, q)?;
            }
        }
        Ok(solution)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    #[inline]
    pub fn assignment(&self, t: usize) -> Option<LocationId> {
        self.assignments[t]
    }

    #[inline]
    pub fn cost_at(&self, t: usize) -> u64 {
        self.costs[t]
    }

    pub fn assignments(&self) -> &[Option<LocationId>] {
        &self.assignments
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub(crate) fn set(&mut self, t: usize, q: LocationId, cost: u64) {
        self.assignments[t] = Some(q);
        self.costs[t] = cost;
    }

    pub(crate) fn clear(&mut self, t: usize) {
        self.assignments[t] = None;
        self.costs[t] = 0;
    }

    /// Sum of the cached per-iteration costs.
    pub fn cached_total(&self) -> u64 {
        self.costs.iter().sum()
    }

    /// True when every departure iteration of `instance` is assigned.
    pub fn is_complete(&self, instance: &Instance) -> bool {
        instance
            .departure_iterations()
            .iter()
            .all(|t| self.assignments[*t].is_some())
    }
}

/// Cost of placing the pod departing at iteration `t` onto location `q`:
/// the store leg from the origin station, plus the retrieve leg to the next
/// summoning station when the pod is requested again.
pub fn placement_cost(instance: &Instance, t: usize, q: LocationId) -> Result<u64, ModelError> {
    let departure = instance
        .events()
        .departure(t)
        .ok_or(ModelError::NoDeparture(t))?;
    let mut cost = instance.layout().store_cost(departure.station, q);
    if let Some(d) = instance.events().next_departure(t) {
        let next = instance.events().arrival(d).ok_or_else(|| {
            ModelError::stream(d, "next_departure points at an iteration without an arrival")
        })?;
        cost += instance.layout().retrieve_cost(q, next.station);
    }
    Ok(cost)
}

/// Total objective of a complete solution.
///
/// Validates the solution by replay first, so the reported error names the
/// first unassigned or conflicting iteration.
pub fn solution_cost(instance: &Instance, solution: &Solution) -> Result<u64, ModelError> {
    if let Some(violation) = crate::validate::validate_solution(instance, solution) {
        return Err(ModelError::Infeasible {
            iteration: violation.iteration(),
            detail: violation.to_string(),
        });
    }
    let mut total = 0u64;
    for &t in instance.departure_iterations() {
        let q = solution.assignment(t).expect("validated solutions are complete");
        total += placement_cost(instance, t, q)?;
    }
    Ok(total)
}
