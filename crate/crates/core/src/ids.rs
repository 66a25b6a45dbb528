//! Dense-index newtypes and grid geometry.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Identifier of a storage location (dense, 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocationId(pub u32);

/// Identifier of a pod (dense, 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PodId(pub u32);

/// Identifier of a picking station (dense, 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StationId(pub u32);

impl LocationId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl PodId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl StationId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for LocationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

impl fmt::Display for PodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl fmt::Display for StationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.0)
    }
}

/// A point on the integer warehouse grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i32,
    pub y: i32,
}

impl GridPoint {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }
}

/// Manhattan distance |a.x - b.x| + |a.y - b.y|.
pub fn manhattan(a: GridPoint, b: GridPoint) -> u64 {
    let dx = (i64::from(a.x) - i64::from(b.x)).unsigned_abs();
    let dy = (i64::from(a.y) - i64::from(b.y)).unsigned_abs();
    dx + dy
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manhattan_identity() {
        assert_eq!(manhattan(GridPoint::new(0, 0), GridPoint::new(0, 0)), 0);
    }

    #[test]
    fn manhattan_mixed_axes() {
        assert_eq!(manhattan(GridPoint::new(1, 2), GridPoint::new(4, 0)), 5);
    }

    #[test]
    fn manhattan_one_dimensional() {
        assert_eq!(manhattan(GridPoint::new(3, 3), GridPoint::new(3, 7)), 4);
    }

    #[test]
    fn manhattan_symmetric_no_overflow() {
        let a = GridPoint::new(i32::MIN, 0);
        let b = GridPoint::new(i32::MAX, 0);
        assert_eq!(manhattan(a, b), u32::MAX as u64);
        assert_eq!(manhattan(a, b), manhattan(b, a));
    }
}
