//! Warehouse layout: storage locations, picking stations and travel costs.

use crate::error::ModelError;
use crate::ids::{manhattan, GridPoint, LocationId, StationId};

/// Immutable geometry of a warehouse.
///
/// Travel costs are pure Manhattan distances between station and location
/// coordinates; the two matrices are transposes of each other and are derived
/// once at construction (they are never serialized).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    locations: Vec<GridPoint>,
    stations: Vec<GridPoint>,
    /// `store_cost[s][q]`: cost of moving a pod from station `s` to location `q`.
    store_cost: Vec<Vec<u64>>,
    /// `retrieve_cost[q][s]`: cost of moving a pod from location `q` to station `s`.
    retrieve_cost: Vec<Vec<u64>>,
}

impl Layout {
    pub fn new(locations: Vec<GridPoint>, stations: Vec<GridPoint>) -> Result<Self, ModelError> {
        if locations.is_empty() {
            return Err(ModelError::InvalidLayout("no storage locations".into()));
        }
        if stations.is_empty() {
            return Err(ModelError::InvalidLayout("no stations".into()));
        }
        let store_cost: Vec<Vec<u64>> = stations
            .iter()
            .map(|s| locations.iter().map(|q| manhattan(*s, *q)).collect())
            .collect();
        let retrieve_cost: Vec<Vec<u64>> = locations
            .iter()
            .map(|q| stations.iter().map(|s| manhattan(*q, *s)).collect())
            .collect();
        Ok(Self {
            locations,
            stations,
            store_cost,
            retrieve_cost,
        })
    }

    #[inline]
    pub fn num_locations(&self) -> usize {
        self.locations.len()
    }

    #[inline]
    pub fn num_stations(&self) -> usize {
        self.stations.len()
    }

    #[inline]
    pub fn location(&self, q: LocationId) -> GridPoint {
        self.locations[q.index()]
    }

    #[inline]
    pub fn station(&self, s: StationId) -> GridPoint {
        self.stations[s.index()]
    }

    pub fn locations(&self) -> &[GridPoint] {
        &self.locations
    }

    pub fn stations(&self) -> &[GridPoint] {
        &self.stations
    }

    pub fn location_ids(&self) -> impl Iterator<Item = LocationId> {
        (0..self.locations.len() as u32).map(LocationId)
    }

    /// Cost of storing a pod coming from station `s` at location `q`.
    #[inline]
    pub fn store_cost(&self, s: StationId, q: LocationId) -> u64 {
        self.store_cost[s.index()][q.index()]
    }

    /// Cost of retrieving a pod from location `q` to station `s`.
    #[inline]
    pub fn retrieve_cost(&self, q: LocationId, s: StationId) -> u64 {
        self.retrieve_cost[q.index()][s.index()]
    }

    /// Sum of distances from `q` to every station; used for zone ranking.
    pub fn station_distance_sum(&self, q: LocationId) -> u64 {
        self.stations.iter().map(|s| manhattan(*s, self.location(q))).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_layout() -> Layout {
        let locations = (1..=4).map(|x| GridPoint::new(x, 0)).collect();
        let stations = vec![GridPoint::new(0, 0), GridPoint::new(5, 0)];
        Layout::new(locations, stations).unwrap()
    }

    #[test]
    fn store_and_retrieve_are_transposes() {
        let layout = line_layout();
        for s in 0..layout.num_stations() as u32 {
            for q in 0..layout.num_locations() as u32 {
                assert_eq!(
                    layout.store_cost(StationId(s), LocationId(q)),
                    layout.retrieve_cost(LocationId(q), StationId(s)),
                );
            }
        }
    }

    #[test]
    fn costs_match_manhattan() {
        let layout = line_layout();
        assert_eq!(layout.store_cost(StationId(0), LocationId(2)), 3);
        assert_eq!(layout.store_cost(StationId(1), LocationId(2)), 2);
    }

    #[test]
    fn empty_layout_rejected() {
        assert!(Layout::new(vec![], vec![GridPoint::new(0, 0)]).is_err());
        assert!(Layout::new(vec![GridPoint::new(0, 0)], vec![]).is_err());
    }
}
