//! Problem instances: pods, event streams and the initial warehouse state.

use crate::error::ModelError;
use crate::ids::{LocationId, PodId, StationId};
use crate::layout::Layout;
use serde::{Deserialize, Serialize};

/// A storage pod with its request frequency over the horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pod {
    pub id: PodId,
    /// Number of times the pod appears in the arrival stream.
    pub frequency: u32,
}

/// A pod movement between storage and a station.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub pod: PodId,
    pub station: StationId,
}

/// Per-iteration event record of an instance.
///
/// `arrivals[t]` summons a pod out of storage to a station queue;
/// `departures[t]` releases a pod from a station and requires a storage
/// placement. `next_departure[t]` is the iteration at which the pod placed at
/// `t` is summoned again, if ever: the occupancy interval of that placement
/// is `[t, next_departure[t])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventStream {
    arrivals: Vec<Option<Event>>,
    departures: Vec<Option<Event>>,
    next_departure: Vec<Option<usize>>,
}

impl EventStream {
    pub fn new(
        arrivals: Vec<Option<Event>>,
        departures: Vec<Option<Event>>,
        next_departure: Vec<Option<usize>>,
    ) -> Result<Self, ModelError> {
        if arrivals.len() != departures.len() || arrivals.len() != next_departure.len() {
            return Err(ModelError::InvalidInstance(format!(
                "event arrays disagree on horizon: arrivals={}, departures={}, next_departure={}",
                arrivals.len(),
                departures.len(),
                next_departure.len()
            )));
        }
        for (t, d) in next_departure.iter().enumerate() {
            if let Some(d) = d {
                if *d <= t {
                    return Err(ModelError::InvalidInstance(format!(
                        "next_departure[{t}] = {d} is not strictly after {t}"
                    )));
                }
                if *d >= arrivals.len() {
                    return Err(ModelError::InvalidInstance(format!(
                        "next_departure[{t}] = {d} lies beyond the horizon {}",
                        arrivals.len()
                    )));
                }
            }
        }
        Ok(Self {
            arrivals,
            departures,
            next_departure,
        })
    }

    #[inline]
    pub fn horizon(&self) -> usize {
        self.arrivals.len()
    }

    #[inline]
    pub fn arrival(&self, t: usize) -> Option<Event> {
        self.arrivals[t]
    }

    #[inline]
    pub fn departure(&self, t: usize) -> Option<Event> {
        self.departures[t]
    }

    #[inline]
    pub fn next_departure(&self, t: usize) -> Option<usize> {
        self.next_departure[t]
    }

    pub fn arrivals(&self) -> &[Option<Event>] {
        &self.arrivals
    }

    pub fn departures(&self) -> &[Option<Event>] {
        &self.departures
    }

    pub fn next_departures(&self) -> &[Option<usize>] {
        &self.next_departure
    }
}

/// Instance identity carried through result files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub name: String,
    pub seed: u64,
}

/// An immutable pod repositioning instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    layout: Layout,
    pods: Vec<Pod>,
    events: EventStream,
    /// Storage occupancy at t=0, indexed by location.
    initial_config: Vec<Option<PodId>>,
    /// Queue contents at t=0 (head first), indexed by station.
    initial_queues: Vec<Vec<PodId>>,
    queue_capacity: usize,
    metadata: Metadata,

    // Derived lookups, never serialized.
    departure_iterations: Vec<usize>,
    /// Per pod: iterations at which the pod is summoned (appears in arrivals).
    pod_arrivals: Vec<Vec<usize>>,
    /// Per pod: iterations at which the pod departs a station (appears in departures).
    pod_departures: Vec<Vec<usize>>,
}

impl Instance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        layout: Layout,
        pods: Vec<Pod>,
        events: EventStream,
        initial_config: Vec<Option<PodId>>,
        initial_queues: Vec<Vec<PodId>>,
        queue_capacity: usize,
        metadata: Metadata,
    ) -> Result<Self, ModelError> {
        if queue_capacity == 0 {
            return Err(ModelError::InvalidInstance("queue_capacity must be positive".into()));
        }
        if pods.len() > layout.num_locations() {
            return Err(ModelError::InvalidInstance(format!(
                "{} pods exceed {} storage locations",
                pods.len(),
                layout.num_locations()
            )));
        }
        if initial_config.len() != layout.num_locations() {
            return Err(ModelError::InvalidInstance(
                "initial_config length does not match the number of locations".into(),
            ));
        }
        if initial_queues.len() != layout.num_stations() {
            return Err(ModelError::InvalidInstance(
                "initial_queues length does not match the number of stations".into(),
            ));
        }
        for (i, pod) in pods.iter().enumerate() {
            if pod.id.index() != i {
                return Err(ModelError::InvalidInstance(format!(
                    "pod ids must be dense 0-based indices; found {} at position {i}",
                    pod.id
                )));
            }
        }
        for queue in &initial_queues {
            if queue.len() > queue_capacity {
                return Err(ModelError::InvalidInstance(
                    "an initial queue exceeds queue_capacity".into(),
                ));
            }
        }

        // Every pod is in exactly one place at t=0.
        let mut seen = vec![false; pods.len()];
        let mut place = |pod: PodId| -> Result<(), ModelError> {
            let idx = pod.index();
            if idx >= seen.len() {
                return Err(ModelError::InvalidInstance(format!("unknown pod {pod} in initial state")));
            }
            if seen[idx] {
                return Err(ModelError::InvalidInstance(format!("pod {pod} appears twice at t=0")));
            }
            seen[idx] = true;
            Ok(())
        };
        for slot in initial_config.iter().flatten() {
            place(*slot)?;
        }
        for queue in &initial_queues {
            for pod in queue {
                place(*pod)?;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(ModelError::InvalidInstance(format!(
                "pod {} is nowhere at t=0",
                PodId(missing as u32)
            )));
        }

        let mut instance = Self {
            layout,
            pods,
            events,
            initial_config,
            initial_queues,
            queue_capacity,
            metadata,
            departure_iterations: Vec::new(),
            pod_arrivals: Vec::new(),
            pod_departures: Vec::new(),
        };
        instance.build_lookups()?;
        instance.check_stream()?;
        instance.check_frequencies()?;
        instance.check_next_departures()?;
        Ok(instance)
    }

    fn build_lookups(&mut self) -> Result<(), ModelError> {
        let n_pods = self.pods.len();
        let mut pod_arrivals = vec![Vec::new(); n_pods];
        let mut pod_departures = vec![Vec::new(); n_pods];
        let mut departure_iterations = Vec::new();
        for t in 0..self.events.horizon() {
            if let Some(ev) = self.events.arrival(t) {
                self.check_event_ids(t, ev)?;
                pod_arrivals[ev.pod.index()].push(t);
            }
            if let Some(ev) = self.events.departure(t) {
                self.check_event_ids(t, ev)?;
                pod_departures[ev.pod.index()].push(t);
                departure_iterations.push(t);
            }
        }
        self.pod_arrivals = pod_arrivals;
        self.pod_departures = pod_departures;
        self.departure_iterations = departure_iterations;
        Ok(())
    }

    fn check_event_ids(&self, t: usize, ev: Event) -> Result<(), ModelError> {
        if ev.pod.index() >= self.pods.len() {
            return Err(ModelError::stream(t, format!("unknown pod {}", ev.pod)));
        }
        if ev.station.index() >= self.layout.num_stations() {
            return Err(ModelError::stream(t, format!("unknown station {}", ev.station)));
        }
        Ok(())
    }

    /// Replays the stream against queue dynamics: a pod may only be summoned
    /// while in storage and may only depart a station it is queued at.
    fn check_stream(&self) -> Result<(), ModelError> {
        let mut in_storage = vec![false; self.pods.len()];
        for slot in self.initial_config.iter().flatten() {
            in_storage[slot.index()] = true;
        }
        let mut queues: Vec<Vec<PodId>> = self.initial_queues.clone();
        for t in 0..self.events.horizon() {
            if let Some(ev) = self.events.arrival(t) {
                if !in_storage[ev.pod.index()] {
                    return Err(ModelError::stream(
                        t,
                        format!("pod {} summoned while not in storage", ev.pod),
                    ));
                }
                in_storage[ev.pod.index()] = false;
                queues[ev.station.index()].push(ev.pod);
            }
            if let Some(ev) = self.events.departure(t) {
                let queue = &mut queues[ev.station.index()];
                match queue.iter().position(|p| *p == ev.pod) {
                    Some(pos) => {
                        queue.remove(pos);
                    }
                    None => {
                        return Err(ModelError::stream(
                            t,
                            crate::error::station_detail(ev.pod, ev.station),
                        ))
                    }
                }
                in_storage[ev.pod.index()] = true;
            }
            for (s, queue) in queues.iter().enumerate() {
                if queue.len() > self.queue_capacity {
                    return Err(ModelError::stream(
                        t,
                        format!("queue at {} exceeds capacity", StationId(s as u32)),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_frequencies(&self) -> Result<(), ModelError> {
        for pod in &self.pods {
            let actual = self.pod_arrivals[pod.id.index()].len() as u32;
            if pod.frequency != actual {
                return Err(ModelError::InvalidInstance(format!(
                    "pod {} declares frequency {} but appears {} times in arrivals",
                    pod.id, pod.frequency, actual
                )));
            }
        }
        Ok(())
    }

    fn check_next_departures(&self) -> Result<(), ModelError> {
        for t in 0..self.events.horizon() {
            let declared = self.events.next_departure(t);
            let derived = match self.events.departure(t) {
                Some(ev) => self.next_arrival_after(ev.pod, t),
                None => None,
            };
            if declared != derived {
                return Err(ModelError::InvalidInstance(format!(
                    "next_departure[{t}] = {declared:?} but the stream implies {derived:?}"
                )));
            }
        }
        Ok(())
    }

    /// First iteration strictly after `t` at which `pod` is summoned.
    pub fn next_arrival_after(&self, pod: PodId, t: usize) -> Option<usize> {
        let arrivals = &self.pod_arrivals[pod.index()];
        match arrivals.binary_search(&(t + 1)) {
            Ok(i) => Some(arrivals[i]),
            Err(i) => arrivals.get(i).copied(),
        }
    }

    /// Last iteration at or before `t` at which `pod` was summoned.
    pub fn last_arrival_at_or_before(&self, pod: PodId, t: usize) -> Option<usize> {
        let arrivals = &self.pod_arrivals[pod.index()];
        match arrivals.binary_search(&t) {
            Ok(i) => Some(arrivals[i]),
            Err(0) => None,
            Err(i) => Some(arrivals[i - 1]),
        }
    }

    /// Last iteration strictly before `t` at which `pod` departed a station.
    pub fn last_departure_before(&self, pod: PodId, t: usize) -> Option<usize> {
        let departures = &self.pod_departures[pod.index()];
        match departures.binary_search(&t) {
            Ok(0) | Err(0) => None,
            Ok(i) | Err(i) => Some(departures[i - 1]),
        }
    }

    #[inline]
    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    #[inline]
    pub fn pods(&self) -> &[Pod] {
        &self.pods
    }

    #[inline]
    pub fn events(&self) -> &EventStream {
        &self.events
    }

    #[inline]
    pub fn horizon(&self) -> usize {
        self.events.horizon()
    }

    #[inline]
    pub fn initial_config(&self) -> &[Option<PodId>] {
        &self.initial_config
    }

    #[inline]
    pub fn initial_queues(&self) -> &[Vec<PodId>] {
        &self.initial_queues
    }

    #[inline]
    pub fn queue_capacity(&self) -> usize {
        self.queue_capacity
    }

    #[inline]
    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    /// Iterations that carry a departure event, in increasing order. These are
    /// the decision slots of a solution.
    #[inline]
    pub fn departure_iterations(&self) -> &[usize] {
        &self.departure_iterations
    }

    /// Initial storage location of `pod`, if it starts in storage.
    pub fn initial_location_of(&self, pod: PodId) -> Option<LocationId> {
        self.initial_config
            .iter()
            .position(|slot| *slot == Some(pod))
            .map(|q| LocationId(q as u32))
    }

    /// Iterations at which `pod` is summoned from storage.
    pub fn arrivals_of(&self, pod: PodId) -> &[usize] {
        &self.pod_arrivals[pod.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::GridPoint;

    fn two_slot_layout() -> Layout {
        Layout::new(
            vec![GridPoint::new(1, 0), GridPoint::new(2, 0)],
            vec![GridPoint::new(0, 0)],
        )
        .unwrap()
    }

    #[test]
    fn pod_in_two_places_rejected() {
        let layout = two_slot_layout();
        let pods = vec![Pod { id: PodId(0), frequency: 0 }];
        let events = EventStream::new(vec![None], vec![None], vec![None]).unwrap();
        let err = Instance::new(
            layout,
            pods,
            events,
            vec![Some(PodId(0)), Some(PodId(0))],
            vec![vec![]],
            3,
            Metadata { name: "t".into(), seed: 0 },
        )
        .unwrap_err();
        assert!(err.to_string().contains("twice"));
    }

    #[test]
    fn summon_from_station_rejected() {
        let layout = two_slot_layout();
        let pods = vec![Pod { id: PodId(0), frequency: 1 }];
        // Pod starts in the queue but the stream claims it is summoned from storage.
        let events = EventStream::new(
            vec![Some(Event { pod: PodId(0), station: StationId(0) })],
            vec![None],
            vec![None],
        )
        .unwrap();
        let err = Instance::new(
            layout,
            pods,
            events,
            vec![None, None],
            vec![vec![PodId(0)]],
            3,
            Metadata { name: "t".into(), seed: 0 },
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::InconsistentStream { iteration: 0, .. }));
    }

    #[test]
    fn frequency_mismatch_rejected() {
        let layout = two_slot_layout();
        let pods = vec![Pod { id: PodId(0), frequency: 3 }];
        let events = EventStream::new(vec![None], vec![None], vec![None]).unwrap();
        let err = Instance::new(
            layout,
            pods,
            events,
            vec![Some(PodId(0)), None],
            vec![vec![]],
            3,
            Metadata { name: "t".into(), seed: 0 },
        )
        .unwrap_err();
        assert!(err.to_string().contains("frequency"));
    }

    #[test]
    fn next_departure_must_match_stream() {
        let layout = two_slot_layout();
        let pods = vec![Pod { id: PodId(0), frequency: 1 }];
        let events = EventStream::new(
            vec![Some(Event { pod: PodId(0), station: StationId(0) }), None],
            vec![None, Some(Event { pod: PodId(0), station: StationId(0) })],
            // Pod never arrives again, so Some(..) must be rejected.
            vec![None, None],
        )
        .unwrap();
        let ok = Instance::new(
            layout,
            pods,
            events,
            vec![Some(PodId(0)), None],
            vec![vec![]],
            1,
            Metadata { name: "t".into(), seed: 0 },
        );
        assert!(ok.is_ok());
    }
}
