//! Polar sector binning, maximal bin point sets and boundary points.
//!
//! Only occupied bins are stored. Fine intervals produce millions of
//! sectors, so the table switches from a dense slot array to a hash map
//! once the sector count is large relative to the point count.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{HullError, Result};
use crate::geometry::{PolarView, Point};

/// Smallest interval `halve_interval` will produce.
pub const MIN_INTERVAL: f64 = 1.0 / (1u64 << 20) as f64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinConfig {
    pub interval: f64,
    pub bin_count: usize,
}

impl BinConfig {
    pub fn new(interval: f64) -> Result<Self> {
        if !(interval > 0.0 && interval <= FRAC_PI_2 * (1.0 + 1e-12)) {
            return Err(HullError::Config(format!(
                "bin interval {interval} rad outside (0, pi/2]"
            )));
        }
        Ok(Self::with_interval(interval))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::new(deg.to_radians())
    }

    fn with_interval(interval: f64) -> Self {
        BinConfig {
            interval,
            bin_count: (TAU / interval).ceil() as usize,
        }
    }

    /// Half-open sector `[interval * i, interval * (i + 1))`, last sector clamped.
    pub fn bin_of(&self, theta: f64) -> usize {
        ((theta / self.interval) as usize).min(self.bin_count - 1)
    }

    pub fn halved(&self) -> Result<Self> {
        let interval = self.interval / 2.0;
        if interval < MIN_INTERVAL {
            return Err(HullError::IntervalUnderflow {
                halvings: 0,
                min: MIN_INTERVAL,
            });
        }
        Ok(Self::with_interval(interval))
    }
}

/// Points of one bin attaining the bin's largest radial distance.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalBinPointSet {
    pub bin_index: usize,
    pub point_indices: Vec<usize>,
    pub max_r: f64,
}

impl MaximalBinPointSet {
    fn empty(bin_index: usize) -> Self {
        MaximalBinPointSet {
            bin_index,
            point_indices: Vec::new(),
            max_r: 0.0,
        }
    }

    fn offer(&mut self, pos: usize, r: f64) {
        // points at the center are never extremal
        if r <= 0.0 {
            return;
        }
        if self.point_indices.is_empty() || r > self.max_r {
            self.point_indices.clear();
            self.point_indices.push(pos);
            self.max_r = r;
        } else if r == self.max_r {
            self.point_indices.push(pos);
        }
    }
}

/// Extreme-coordinate points: for each of min x, max x, min y, max y the two
/// endpoints of the extreme run. Sorted, distinct positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundaryPoints {
    pub indices: Vec<usize>,
}

/// Occupied bins in ascending sector order. All point references are
/// positions into the slice the polar views were computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct BinTable {
    pub config: BinConfig,
    pub bins: Vec<MaximalBinPointSet>,
    pub occupancy: Option<Vec<Vec<usize>>>,
    /// Point records touched while building the table.
    pub visits: usize,
}

impl BinTable {
    /// Maximal set of sector `bin_index`; empty for unoccupied sectors.
    pub fn bin(&self, bin_index: usize) -> MaximalBinPointSet {
        match self.bins.binary_search_by_key(&bin_index, |b| b.bin_index) {
            Ok(i) => self.bins[i].clone(),
            Err(_) => MaximalBinPointSet::empty(bin_index),
        }
    }

    /// Members of sector `bin_index`, if occupancy was retained.
    pub fn members(&self, bin_index: usize) -> Option<&[usize]> {
        let occ = self.occupancy.as_ref()?;
        match self.bins.binary_search_by_key(&bin_index, |b| b.bin_index) {
            Ok(i) => Some(&occ[i]),
            Err(_) => Some(&[]),
        }
    }

    pub fn occupied(&self) -> usize {
        self.bins.len()
    }
}

#[derive(Default)]
struct Slot {
    maximal: Option<MaximalBinPointSet>,
    members: Vec<usize>,
}

/// Single pass over the polar views, updating each bin's maximal set as
/// points enter. Exact radial ties are all retained.
pub fn assign_bins(polar: &[PolarView], config: BinConfig, keep_occupancy: bool) -> BinTable {
    let dense = config.bin_count <= 4 * polar.len() + 1024;
    let mut slots: Vec<Slot> = Vec::new();
    let mut dense_slot: Vec<u32> = Vec::new();
    let mut sparse_slot: HashMap<usize, u32> = HashMap::new();
    if dense {
        dense_slot = vec![u32::MAX; config.bin_count];
    }
    let mut visits = 0;
    for (pos, view) in polar.iter().enumerate() {
        visits += 1;
        let b = config.bin_of(view.theta);
        let slot = (if dense {
            if dense_slot[b] == u32::MAX {
                dense_slot[b] = slots.len() as u32;
                slots.push(Slot::default());
            }
            dense_slot[b]
        } else {
            *sparse_slot.entry(b).or_insert_with(|| {
                slots.push(Slot::default());
                (slots.len() - 1) as u32
            })
        }) as usize;
        let s = &mut slots[slot];
        s.maximal
            .get_or_insert_with(|| MaximalBinPointSet::empty(b))
            .offer(pos, view.r);
        if keep_occupancy {
            s.members.push(pos);
        }
    }

    let mut order: Vec<usize> = (0..slots.len()).collect();
    if dense {
        order = dense_slot
            .iter()
            .filter(|&&s| s != u32::MAX)
            .map(|&s| s as usize)
            .collect();
    } else {
        order.sort_unstable_by_key(|&s| slots[s].maximal.as_ref().map(|m| m.bin_index));
    }

    let mut bins = Vec::with_capacity(order.len());
    let mut occupancy = Vec::with_capacity(if keep_occupancy { order.len() } else { 0 });
    for s in order {
        let slot = std::mem::take(&mut slots[s]);
        bins.push(slot.maximal.expect("occupied slot"));
        if keep_occupancy {
            occupancy.push(slot.members);
        }
    }
    BinTable {
        config,
        bins,
        occupancy: keep_occupancy.then_some(occupancy),
        visits,
    }
}

/// One linear scan for the extreme-run endpoints of each coordinate.
/// Exact duplicates resolve to the smallest position.
pub fn compute_boundary_points(points: &[Point]) -> BoundaryPoints {
    if points.is_empty() {
        return BoundaryPoints::default();
    }

    // (primary, secondary) key; pick the position minimising it
    fn better(points: &[Point], cand: usize, best: usize, key: impl Fn(&Point) -> (f64, f64)) -> bool {
        let (c1, c2) = key(&points[cand]);
        let (b1, b2) = key(&points[best]);
        c1 < b1 || (c1 == b1 && c2 < b2)
    }
    let keys: [fn(&Point) -> (f64, f64); 8] = [
        |p| (p.x, p.y),   // min x, lowest
        |p| (p.x, -p.y),  // min x, highest
        |p| (-p.x, p.y),  // max x, lowest
        |p| (-p.x, -p.y), // max x, highest
        |p| (p.y, p.x),   // min y, leftmost
        |p| (p.y, -p.x),  // min y, rightmost
        |p| (-p.y, p.x),  // max y, leftmost
        |p| (-p.y, -p.x), // max y, rightmost
    ];
    let mut best = [0usize; 8];
    for pos in 1..points.len() {
        for (k, key) in keys.iter().enumerate() {
            if better(points, pos, best[k], key) {
                best[k] = pos;
            }
        }
    }
    let mut indices = best.to_vec();
    indices.sort_unstable();
    indices.dedup();
    BoundaryPoints { indices }
}

/// Rebins at half the interval. Rebinning from scratch is linear and
/// yields exactly the table a fresh `assign_bins` would.
pub fn halve_interval(table: &BinTable, polar: &[PolarView]) -> Result<BinTable> {
    let config = table.config.halved()?;
    Ok(assign_bins(polar, config, table.occupancy.is_some()))
}

/// Union of all maximal sets, in sector order.
pub fn maximal_union(table: &BinTable) -> Vec<usize> {
    table
        .bins
        .iter()
        .flat_map(|b| b.point_indices.iter().copied())
        .collect()
}
