//! Seeded instance generators.
//!
//! Event streams are produced by simulating the station queues forward: each
//! iteration summons one in-storage pod (weighted by a per-pod request
//! profile) to a station; a pod joining a queue that has reached capacity
//! pushes the head back into storage, which creates the placement decision.
//! Which pods sit in storage never depends on placement choices, so the
//! stream is well-defined independently of any solution.

use crate::error::ModelError;
use crate::ids::{GridPoint, PodId, StationId};
use crate::instance::{Event, EventStream, Instance, Metadata, Pod};
use crate::layout::Layout;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The 10-location, 10-pod line warehouse with two identical stations at the
/// ends, 1,000 iterations.
pub fn build_small_instance(seed: u64) -> Instance {
    // Request profile approximating a 70/20/10 ABC usage split:
    // pods 0-1 carry ~70% of requests, 2-3 ~20%, the rest ~10%.
    let weights = [105.0, 105.0, 30.0, 30.0, 5.0, 5.0, 5.0, 5.0, 5.0, 5.0];
    let spec = GeneratorSpec {
        name: format!("small-{seed}"),
        locations: (1..=10).map(|x| GridPoint::new(x, 0)).collect(),
        stations: vec![GridPoint::new(0, 0), GridPoint::new(11, 0)],
        pod_weights: weights.to_vec(),
        horizon: 1_000,
        queue_capacity: 3,
        favored_station_share: 0.5,
        shuffle_initial: false,
    };
    spec.build(seed).expect("small generator parameters are valid")
}

/// The 504-location (21x24 grid), 441-pod warehouse with two asymmetric
/// stations, 20,000 iterations.
pub fn build_medium_instance(seed: u64) -> Instance {
    grid_instance(format!("medium-{seed}"), 21, 24, 441, 20_000, seed)
}

/// A scaled-down analog of the medium family (126 locations on a 9x14 grid,
/// 110 pods, 5,000 iterations) with the same structure: asymmetric stations,
/// 70/30 station bias and a Zipf-like request profile.
pub fn build_medium_analog_instance(seed: u64) -> Instance {
    grid_instance(format!("medium-analog-{seed}"), 9, 14, 110, 5_000, seed)
}

fn grid_instance(
    name: String,
    width: i32,
    height: i32,
    pods: usize,
    horizon: usize,
    seed: u64,
) -> Instance {
    let mut locations = Vec::with_capacity((width * height) as usize);
    for y in 1..=height {
        for x in 0..width {
            locations.push(GridPoint::new(x, y));
        }
    }
    // Stations sit on the y=0 edge at asymmetric offsets; station 0 is the
    // favored, higher-throughput one.
    let stations = vec![
        GridPoint::new(width / 7, 0),
        GridPoint::new((width * 2) / 3, 0),
    ];
    let pod_weights = (0..pods).map(|i| 1.0 / (i as f64 + 1.0)).collect();
    let spec = GeneratorSpec {
        name,
        locations,
        stations,
        pod_weights,
        horizon,
        queue_capacity: 3,
        favored_station_share: 0.7,
        shuffle_initial: true,
    };
    spec.build(seed).expect("grid generator parameters are valid")
}

/// A line warehouse small enough for exhaustive search. Queue capacity is 1,
/// so every summons bounces the pod straight back to storage and every
/// iteration with an arrival is a placement decision.
pub fn build_tiny_instance(
    locations: usize,
    pods: usize,
    steps: usize,
    seed: u64,
) -> Result<Instance, ModelError> {
    if locations == 0 || pods == 0 {
        return Err(ModelError::InvalidInstance(
            "tiny instances need at least one location and one pod".into(),
        ));
    }
    if pods > locations {
        return Err(ModelError::InvalidInstance(format!(
            "{pods} pods exceed {locations} locations"
        )));
    }
    let spec = GeneratorSpec {
        name: format!("tiny-{locations}x{pods}x{steps}-{seed}"),
        locations: (1..=locations as i32).map(|x| GridPoint::new(x, 0)).collect(),
        stations: vec![GridPoint::new(0, 0), GridPoint::new(locations as i32 + 1, 0)],
        // Mildly skewed so ABC classes stay nondegenerate.
        pod_weights: (0..pods).map(|i| (pods - i) as f64).collect(),
        horizon: steps,
        queue_capacity: 1,
        favored_station_share: 0.5,
        shuffle_initial: false,
    };
    spec.build(seed)
}

struct GeneratorSpec {
    name: String,
    locations: Vec<GridPoint>,
    stations: Vec<GridPoint>,
    pod_weights: Vec<f64>,
    horizon: usize,
    queue_capacity: usize,
    favored_station_share: f64,
    shuffle_initial: bool,
}

impl GeneratorSpec {
    fn build(self, seed: u64) -> Result<Instance, ModelError> {
        let n_pods = self.pod_weights.len();
        let n_stations = self.stations.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let mut initial_config: Vec<Option<PodId>> = vec![None; self.locations.len()];
        let mut slots: Vec<usize> = (0..self.locations.len()).collect();
        if self.shuffle_initial {
            slots.shuffle(&mut rng);
        }
        for pod in 0..n_pods {
            initial_config[slots[pod]] = Some(PodId(pod as u32));
        }

        let mut in_storage = vec![true; n_pods];
        let mut queues: Vec<Vec<PodId>> = vec![Vec::new(); n_stations];
        let mut arrivals: Vec<Option<Event>> = Vec::with_capacity(self.horizon);
        let mut departures: Vec<Option<Event>> = Vec::with_capacity(self.horizon);

        for _ in 0..self.horizon {
            let total: f64 = (0..n_pods)
                .filter(|p| in_storage[*p])
                .map(|p| self.pod_weights[p])
                .sum();
            if total <= 0.0 {
                arrivals.push(None);
                departures.push(None);
                continue;
            }
            let mut roll = rng.random::<f64>() * total;
            let mut chosen = None;
            for p in 0..n_pods {
                if !in_storage[p] {
                    continue;
                }
                roll -= self.pod_weights[p];
                if roll <= 0.0 {
                    chosen = Some(p);
                    break;
                }
            }
            let pod = PodId(chosen.unwrap_or_else(|| {
                (0..n_pods).rev().find(|p| in_storage[*p]).expect("total > 0")
            }) as u32);
            let station = if rng.random::<f64>() < self.favored_station_share {
                StationId(0)
            } else {
                StationId(1)
            };

            in_storage[pod.index()] = false;
            queues[station.index()].push(pod);
            arrivals.push(Some(Event { pod, station }));

            if queues[station.index()].len() >= self.queue_capacity {
                let head = queues[station.index()].remove(0);
                in_storage[head.index()] = true;
                departures.push(Some(Event { pod: head, station }));
            } else {
                departures.push(None);
            }
        }

        // Next summons of each departing pod, scanned backwards.
        let mut next_arrival: Vec<Option<usize>> = vec![None; n_pods];
        let mut next_departure: Vec<Option<usize>> = vec![None; self.horizon];
        for t in (0..self.horizon).rev() {
            if let Some(ev) = departures[t] {
                next_departure[t] = next_arrival[ev.pod.index()];
            }
            if let Some(ev) = arrivals[t] {
                next_arrival[ev.pod.index()] = Some(t);
            }
        }

        let mut frequency = vec![0u32; n_pods];
        for ev in arrivals.iter().flatten() {
            frequency[ev.pod.index()] += 1;
        }
        let pods = frequency
            .into_iter()
            .enumerate()
            .map(|(id, frequency)| Pod { id: PodId(id as u32), frequency })
            .collect();

        Instance::new(
            Layout::new(self.locations, self.stations)?,
            pods,
            EventStream::new(arrivals, departures, next_departure)?,
            initial_config,
            vec![Vec::new(); n_stations],
            self.queue_capacity,
            Metadata { name: self.name, seed },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shape_and_symmetry() {
        let instance = build_small_instance(123);
        assert_eq!(instance.layout().num_locations(), 10);
        assert_eq!(instance.pods().len(), 10);
        assert_eq!(instance.horizon(), 1_000);
        // Stations mirror each other about the line's midpoint.
        let xs: Vec<i32> = instance.layout().locations().iter().map(|p| p.x).collect();
        let (min, max) = (xs.iter().min().unwrap(), xs.iter().max().unwrap());
        let stations = instance.layout().stations();
        assert_eq!(stations[0].x + stations[1].x, min + max);
        assert_eq!(stations[0].y, stations[1].y);
    }

    #[test]
    fn small_is_deterministic() {
        assert_eq!(build_small_instance(42), build_small_instance(42));
        assert_ne!(build_small_instance(42), build_small_instance(43));
    }

    #[test]
    fn medium_shape() {
        let instance = build_medium_instance(5);
        assert_eq!(instance.layout().num_locations(), 504);
        assert_eq!(instance.pods().len(), 441);
        assert_eq!(instance.horizon(), 20_000);
    }

    #[test]
    fn medium_station_bias_in_range() {
        let instance = build_medium_instance(9);
        let favored = instance
            .events()
            .arrivals()
            .iter()
            .flatten()
            .filter(|ev| ev.station == StationId(0))
            .count() as f64;
        let total = instance.events().arrivals().iter().flatten().count() as f64;
        let share = favored / total;
        assert!((0.65..=0.75).contains(&share), "share {share}");
    }

    #[test]
    fn tiny_single_pod_shuttles() {
        let instance = build_tiny_instance(1, 1, 2, 0).unwrap();
        // Capacity-1 queues bounce the pod back immediately: every iteration
        // is both a summons and a placement decision for the same pod.
        for t in 0..2 {
            let a = instance.events().arrival(t).unwrap();
            let d = instance.events().departure(t).unwrap();
            assert_eq!(a.pod, d.pod);
            assert_eq!(a.station, d.station);
        }
        assert_eq!(instance.departure_iterations().len(), 2);
    }

    #[test]
    fn tiny_zero_steps_is_empty() {
        let instance = build_tiny_instance(3, 3, 0, 0).unwrap();
        assert_eq!(instance.horizon(), 0);
        assert!(instance.departure_iterations().is_empty());
    }

    #[test]
    fn tiny_rejects_bad_counts() {
        assert!(build_tiny_instance(2, 3, 5, 0).is_err());
        assert!(build_tiny_instance(0, 0, 5, 0).is_err());
    }
}
