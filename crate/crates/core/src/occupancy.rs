//! Interval-indexed warehouse occupancy and the mutable search workspace.
//!
//! Replaying events from t=0 for every feasibility query (the reference path
//! in [`crate::feasibility`]) costs O(N) per call, which is O(N^2) per repair
//! pass on 20,000-step instances. The [`Workspace`] instead keeps one sorted
//! interval list per location: a placement at iteration `t` whose pod is next
//! summoned at `d` occupies `[t, d)`, initial pods occupy `[0, first summons)`
//! and open-ended stays occupy `[t, infinity)`. A location is feasible for the
//! window `[t, d)` exactly when no committed interval intersects it, which a
//! binary search answers in O(log n).

use crate::error::ModelError;
use crate::feasibility::CostedPlacement;
use crate::ids::{LocationId, PodId};
use crate::instance::Instance;
use crate::solution::{placement_cost, Solution};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

const OPEN_END: usize = usize::MAX;

/// Occupancy interval `[start, end)` at one location.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Interval {
    start: usize,
    end: usize,
}

#[derive(Debug)]
enum JournalOp {
    /// An assignment was removed; `prior` remembers how to restore it.
    Destroy { iteration: usize, prior: CostedPlacement },
    /// A pending iteration was assigned.
    Commit { iteration: usize },
}

/// A problem instance plus one mutable solution under search.
///
/// All destroy/repair mutations go through [`Workspace::destroy`] and
/// [`Workspace::commit`], which keep the solution, its cached costs, the
/// running total and the occupancy index consistent. Mutations are journaled
/// so a rejected candidate can be rolled back in O(changes).
#[derive(Debug)]
pub struct Workspace {
    instance: Arc<Instance>,
    solution: Solution,
    index: Vec<Vec<Interval>>,
    pending: BTreeSet<usize>,
    /// Pre-destruction placements of the current transaction, by iteration.
    prior: HashMap<usize, CostedPlacement>,
    journal: Vec<JournalOp>,
    total_cost: u64,
}

impl Workspace {
    /// Wraps an existing (possibly partial) solution. Unassigned departure
    /// iterations become pending. Fails if the assigned portion overlaps.
    pub fn new(instance: Arc<Instance>, solution: Solution) -> Result<Self, ModelError> {
        if solution.len() != instance.horizon() {
            return Err(ModelError::InvalidInstance(
                "solution horizon does not match the instance".into(),
            ));
        }
        let mut index: Vec<Vec<Interval>> = vec![Vec::new(); instance.layout().num_locations()];

        for (q, slot) in instance.initial_config().iter().enumerate() {
            if let Some(pod) = slot {
                let end = first_arrival(&instance, *pod);
                // A pod summoned at iteration 0 occupies nothing.
                if end > 0 {
                    index[q].push(Interval { start: 0, end });
                }
            }
        }

        let mut pending = BTreeSet::new();
        let mut total_cost = 0u64;
        for &t in instance.departure_iterations() {
            match solution.assignment(t) {
                Some(q) => {
                    let end = instance.events().next_departure(t).unwrap_or(OPEN_END);
                    index[q.index()].push(Interval { start: t, end });
                    total_cost += solution.cost_at(t);
                }
                None => {
                    pending.insert(t);
                }
            }
        }

        for (q, list) in index.iter_mut().enumerate() {
            list.sort_by_key(|iv| iv.start);
            for pair in list.windows(2) {
                if pair[0].end > pair[1].start {
                    return Err(ModelError::Infeasible {
                        iteration: pair[1].start,
                        detail: format!(
                            "overlapping occupancy at {} (intervals [{}, {}) and [{}, {}))",
                            LocationId(q as u32),
                            pair[0].start,
                            pair[0].end,
                            pair[1].start,
                            pair[1].end
                        ),
                    });
                }
            }
        }

        Ok(Self {
            instance,
            solution,
            index,
            pending,
            prior: HashMap::new(),
            journal: Vec::new(),
            total_cost,
        })
    }

    /// A workspace with every departure iteration pending, for forward
    /// construction.
    pub fn empty(instance: Arc<Instance>) -> Self {
        let solution = Solution::empty(&instance);
        Self::new(instance, solution).expect("an empty solution cannot overlap")
    }

    #[inline]
    pub fn instance(&self) -> &Arc<Instance> {
        &self.instance
    }

    #[inline]
    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    /// Consumes the workspace, returning the solution it holds.
    pub fn into_solution(self) -> Solution {
        self.solution
    }

    #[inline]
    pub fn total_cost(&self) -> u64 {
        self.total_cost
    }

    /// Iterations awaiting reassignment, in increasing order.
    pub fn pending(&self) -> impl Iterator<Item = usize> + '_ {
        self.pending.iter().copied()
    }

    #[inline]
    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    #[inline]
    pub fn is_pending(&self, t: usize) -> bool {
        self.pending.contains(&t)
    }

    /// The placement an iteration held before it was destroyed in the current
    /// transaction.
    pub fn prior_placement(&self, t: usize) -> Option<CostedPlacement> {
        self.prior.get(&t).copied()
    }

    /// Removes the assignment at departure iteration `t`, marking it pending.
    pub fn destroy(&mut self, t: usize) {
        let q = self
            .solution
            .assignment(t)
            .expect("destroy requires an assigned iteration");
        let cost = self.solution.cost_at(t);
        self.remove_interval(q, t);
        self.solution.clear(t);
        self.total_cost -= cost;
        self.pending.insert(t);
        let prior = CostedPlacement { location: q, cost };
        self.prior.insert(t, prior);
        self.journal.push(JournalOp::Destroy { iteration: t, prior });
    }

    /// Assigns pending iteration `t` to `placement.location`.
    ///
    /// The caller must pick placements from [`Workspace::feasible_locations`];
    /// committing an infeasible placement corrupts the index.
    pub fn commit(&mut self, t: usize, placement: CostedPlacement) {
        debug_assert!(self.pending.contains(&t), "commit requires a pending iteration");
        debug_assert_eq!(
            placement_cost(&self.instance, t, placement.location).ok(),
            Some(placement.cost),
        );
        let end = self.instance.events().next_departure(t).unwrap_or(OPEN_END);
        self.insert_interval(placement.location, Interval { start: t, end });
        self.solution.set(t, placement.location, placement.cost);
        self.total_cost += placement.cost;
        self.pending.remove(&t);
        self.journal.push(JournalOp::Commit { iteration: t });
    }

    /// Accepts the current transaction, discarding undo information.
    pub fn accept(&mut self) {
        self.journal.clear();
        self.prior.clear();
    }

    /// Rolls the workspace back to the last accepted state.
    pub fn rollback(&mut self) {
        while let Some(op) = self.journal.pop() {
            match op {
                JournalOp::Commit { iteration } => {
                    let q = self
                        .solution
                        .assignment(iteration)
                        .expect("journaled commit must be assigned");
                    let cost = self.solution.cost_at(iteration);
                    self.remove_interval(q, iteration);
                    self.solution.clear(iteration);
                    self.total_cost -= cost;
                    self.pending.insert(iteration);
                }
                JournalOp::Destroy { iteration, prior } => {
                    let end = self
                        .instance
                        .events()
                        .next_departure(iteration)
                        .unwrap_or(OPEN_END);
                    self.insert_interval(prior.location, Interval { start: iteration, end });
                    self.solution.set(iteration, prior.location, prior.cost);
                    self.total_cost += prior.cost;
                    self.pending.remove(&iteration);
                }
            }
        }
        self.prior.clear();
    }

    /// Indexed equivalent of [`crate::feasibility::feasible_locations`]:
    /// feasible placements for the pod departing at `t`, ordered by
    /// `(cost, location id)`, plus the pod's previous storage location.
    pub fn feasible_locations(
        &self,
        t: usize,
    ) -> Result<(Vec<CostedPlacement>, Option<LocationId>), ModelError> {
        let departure = self
            .instance
            .events()
            .departure(t)
            .ok_or(ModelError::NoDeparture(t))?;
        let window_end = self.instance.events().next_departure(t).unwrap_or(OPEN_END);
        let next_station = match self.instance.events().next_departure(t) {
            Some(d) => {
                let next = self.instance.events().arrival(d).ok_or_else(|| {
                    ModelError::stream(d, "next_departure points at an iteration without an arrival")
                })?;
                Some(next.station)
            }
            None => None,
        };

        let layout = self.instance.layout();
        let mut placements = Vec::new();
        for q in layout.location_ids() {
            if self.window_free(q, t, window_end) {
                let mut cost = layout.store_cost(departure.station, q);
                if let Some(s) = next_station {
                    cost += layout.retrieve_cost(q, s);
                }
                placements.push(CostedPlacement { location: q, cost });
            }
        }
        placements.sort_by_key(|p| (p.cost, p.location));
        Ok((placements, self.previous_location(departure.pod, t)))
    }

    /// True when no committed interval at `q` intersects `[start, end)`.
    fn window_free(&self, q: LocationId, start: usize, end: usize) -> bool {
        let list = &self.index[q.index()];
        let i = list.partition_point(|iv| iv.start < end);
        // Every interval from `i` on starts at or after `end`; the only
        // possible intersection is the closest interval starting before it.
        i == 0 || list[i - 1].end <= start
    }

    /// Storage location the pod occupied before its most recent summons at or
    /// before `t`, if that placement is known.
    fn previous_location(&self, pod: PodId, t: usize) -> Option<LocationId> {
        let t_arrival = self.instance.last_arrival_at_or_before(pod, t)?;
        match self.instance.last_departure_before(pod, t_arrival) {
            Some(t_placed) => self.solution.assignment(t_placed),
            None => self.instance.initial_location_of(pod),
        }
    }

    fn insert_interval(&mut self, q: LocationId, interval: Interval) {
        let list = &mut self.index[q.index()];
        let i = list.partition_point(|iv| iv.start < interval.start);
        debug_assert!(i == 0 || list[i - 1].end <= interval.start, "interval overlap");
        debug_assert!(i == list.len() || interval.end <= list[i].start, "interval overlap");
        list.insert(i, interval);
    }

    fn remove_interval(&mut self, q: LocationId, start: usize) {
        let list = &mut self.index[q.index()];
        let i = list.partition_point(|iv| iv.start < start);
        assert!(
            i < list.len() && list[i].start == start,
            "no interval starting at {start} on {q}"
        );
        list.remove(i);
    }
}

fn first_arrival(instance: &Instance, pod: PodId) -> usize {
    instance.arrivals_of(pod).first().copied().unwrap_or(OPEN_END)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::{feasible_locations, DestroySet};
    use crate::generate::build_tiny_instance;
    use rand::seq::IteratorRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Completes an instance greedily (cheapest feasible) for test setup.
    fn greedy_complete(instance: &Arc<Instance>) -> Workspace {
        let mut ws = Workspace::empty(Arc::clone(instance));
        let departures: Vec<usize> = ws.pending().collect();
        for t in departures {
            let (options, _) = ws.feasible_locations(t).unwrap();
            let placement = options[0];
            ws.commit(t, placement);
        }
        ws.accept();
        ws
    }

    #[test]
    fn rollback_restores_everything() {
        let instance = Arc::new(build_tiny_instance(5, 4, 20, 3).unwrap());
        let mut ws = greedy_complete(&instance);
        let before_solution = ws.solution().clone();
        let before_cost = ws.total_cost();

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let victims: Vec<usize> = instance
            .departure_iterations()
            .iter()
            .copied()
            .choose_multiple(&mut rng, 3);
        for &t in &victims {
            ws.destroy(t);
        }
        for &t in &victims {
            let (options, _) = ws.feasible_locations(t).unwrap();
            if let Some(p) = options.last() {
                ws.commit(t, *p);
            }
        }
        ws.rollback();
        assert_eq!(ws.solution(), &before_solution);
        assert_eq!(ws.total_cost(), before_cost);
        assert_eq!(ws.pending_len(), 0);
    }

    #[test]
    fn index_matches_replay_on_random_partials() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for seed in 0..30 {
            let instance = Arc::new(build_tiny_instance(5, 4, 16, seed).unwrap());
            let mut ws = greedy_complete(&instance);
            let departures = instance.departure_iterations().to_vec();
            let k = rng.random_range(0..=departures.len());
            let destroyed: Vec<usize> = departures.iter().copied().choose_multiple(&mut rng, k);
            for &t in &destroyed {
                ws.destroy(t);
            }
            let destroy_set = DestroySet::from_iter(destroyed.iter().copied());
            for &t in &departures {
                if !ws.is_pending(t) {
                    continue;
                }
                let (fast, fast_prev) = ws.feasible_locations(t).unwrap();
                let (slow, slow_prev) =
                    feasible_locations(&instance, ws.solution(), &destroy_set, t).unwrap();
                assert_eq!(fast, slow, "seed {seed}, iteration {t}");
                assert_eq!(fast_prev, slow_prev, "seed {seed}, iteration {t}");
            }
        }
    }

    #[test]
    fn destroying_reduces_total_by_exactly_the_cached_costs() {
        let instance = Arc::new(build_tiny_instance(5, 4, 20, 11).unwrap());
        let mut ws = greedy_complete(&instance);
        let total = ws.total_cost();
        let victims: Vec<usize> = instance.departure_iterations().iter().copied().take(3).collect();
        let removed: u64 = victims.iter().map(|&t| ws.solution().cost_at(t)).sum();
        for &t in &victims {
            ws.destroy(t);
        }
        assert_eq!(ws.total_cost(), total - removed);
    }
}
