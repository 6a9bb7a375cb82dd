//! Seeded synthetic point clouds standing in for the benchmark datasets.
//!
//! Every family draws from `ChaCha8Rng::seed_from_u64(seed)`, so a spec
//! always yields the same coordinates on every platform.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{HullError, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    DiskUniform,
    /// Thin annulus about the unit circle; `ring_jitter` is its width.
    CircleRing,
    /// A few wide Gaussian blobs far apart, leaving empty polar sectors.
    Blobs,
    /// Many tight clusters scattered over a square.
    Clusters,
    Sinusoid,
    /// Integer lattice filled row by row; heavy on collinear hull points.
    SquareGrid,
    /// Random angles on an ellipse, so every point is extreme.
    ConvexPosition,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::DiskUniform,
        Family::CircleRing,
        Family::Blobs,
        Family::Clusters,
        Family::Sinusoid,
        Family::SquareGrid,
        Family::ConvexPosition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::DiskUniform => "disk_uniform",
            Family::CircleRing => "circle_ring",
            Family::Blobs => "blobs",
            Family::Clusters => "clusters",
            Family::Sinusoid => "sinusoid",
            Family::SquareGrid => "square_grid",
            Family::ConvexPosition => "convex_position",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = HullError;

    /// Accepts the full names and the short forms `disk`, `ring`, `grid`
    /// and `convex`.
    fn from_str(s: &str) -> Result<Self> {
        let s = match s {
            "disk" => "disk_uniform",
            "ring" | "circle" => "circle_ring",
            "grid" => "square_grid",
            "convex" => "convex_position",
            other => other,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| HullError::Config(format!("unknown dataset family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub blob_count: usize,
    /// Standard deviation of each cluster, relative to the unit square.
    pub cluster_spread: f64,
    pub ring_jitter: f64,
    pub amplitude: f64,
    pub frequency: f64,
}

impl DatasetSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        DatasetSpec {
            family,
            n,
            seed,
            blob_count: 3,
            cluster_spread: 0.03,
            ring_jitter: 0.01,
            amplitude: 0.4,
            frequency: 2.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(HullError::Config(format!("invalid {what} for {}", self.family)));
        if self.n == 0 {
            return bad("point count 0");
        }
        if self.blob_count == 0 {
            return bad("blob count");
        }
        if !(self.cluster_spread.is_finite() && self.cluster_spread > 0.0) {
            return bad("cluster spread");
        }
        if !(self.ring_jitter.is_finite() && (0.0..1.0).contains(&self.ring_jitter)) {
            return bad("ring jitter");
        }
        if !self.amplitude.is_finite() {
            return bad("sinusoid amplitude");
        }
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return bad("sinusoid frequency");
        }
        Ok(())
    }
}

pub fn generate(spec: &DatasetSpec) -> Result<Vec<Point>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let normal = |sd: f64| Normal::new(0.0, sd).map_err(|e| HullError::Config(e.to_string()));
    let coords: Vec<(f64, f64)> = match spec.family {
        Family::DiskUniform => (0..n)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                let t = rng.gen_range(0.0..TAU);
                (r * t.cos(), r * t.sin())
            })
            .collect(),
        Family::CircleRing => (0..n)
            .map(|_| {
                let r = 1.0 - spec.ring_jitter * rng.gen::<f64>();
                let t = rng.gen_range(0.0..TAU);
                (r * t.cos(), r * t.sin())
            })
            .collect(),
        Family::Blobs => {
            let phase = rng.gen_range(0.0..TAU);
            let centers: Vec<(f64, f64)> = (0..spec.blob_count)
                .map(|k| {
                    let t = phase + TAU * k as f64 / spec.blob_count as f64;
                    (10.0 * t.cos(), 10.0 * t.sin())
                })
                .collect();
            let noise = normal(1.0)?;
            (0..n)
                .map(|_| {
                    let (cx, cy) = centers[rng.gen_range(0..centers.len())];
                    (cx + noise.sample(&mut rng), cy + noise.sample(&mut rng))
                })
                .collect()
        }
        Family::Clusters => {
            let centers: Vec<(f64, f64)> = (0..spec.blob_count * 4)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let noise = normal(spec.cluster_spread)?;
            (0..n)
                .map(|_| {
                    let (cx, cy) = centers[rng.gen_range(0..centers.len())];
                    (cx + noise.sample(&mut rng), cy + noise.sample(&mut rng))
                })
                .collect()
        }
        Family::Sinusoid => {
            let noise = normal(spec.ring_jitter.max(f64::MIN_POSITIVE))?;
            (0..n)
                .map(|_| {
                    let x: f64 = rng.gen_range(-1.0..1.0);
                    let y = spec.amplitude * (TAU * spec.frequency * x).sin() + noise.sample(&mut rng);
                    (x, y)
                })
                .collect()
        }
        Family::SquareGrid => {
            let side = (n as f64).sqrt().ceil() as usize;
            (0..n).map(|i| ((i % side) as f64, (i / side) as f64)).collect()
        }
        Family::ConvexPosition => (0..n)
            .map(|_| {
                let t = rng.gen_range(0.0..TAU);
                (2.0 * t.cos(), t.sin())
            })
            .collect(),
    };
    Ok(Point::from_coords(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binning::{assign_bins, BinConfig};
    use crate::geometry::{compute_center, to_polar};

    #[test]
    fn deterministic_per_seed() {
        for family in Family::ALL {
            let spec = DatasetSpec::new(family, 500, 7);
            let a = generate(&spec).unwrap();
            assert_eq!(a, generate(&spec).unwrap(), "{family}");
            assert_eq!(a.len(), 500);
            assert!(a.iter().all(|p| p.is_finite()));
            if family != Family::SquareGrid {
                assert_ne!(a, generate(&DatasetSpec { seed: 8, ..spec }).unwrap(), "{family}");
            }
        }
    }

    #[test]
    fn small_disk_in_unit_disk() {
        let p = generate(&DatasetSpec::new(Family::DiskUniform, 4, 1)).unwrap();
        assert!(p.iter().all(|q| q.x.hypot(q.y) <= 1.0));
        assert_eq!(p.iter().map(|q| q.index).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn separated_blobs_leave_empty_sectors() {
        let p = generate(&DatasetSpec::new(Family::Blobs, 3000, 3)).unwrap();
        let c = compute_center(&p).unwrap();
        let table = assign_bins(&to_polar(&p, &c).unwrap(), BinConfig::from_degrees(1.0).unwrap(), false);
        assert!(table.occupied() < table.config.bin_count);
    }

    #[test]
    fn names_round_trip_and_bad_params() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("torus".parse::<Family>().is_err());
        let mut spec = DatasetSpec::new(Family::Clusters, 10, 0);
        spec.cluster_spread = -1.0;
        assert!(matches!(generate(&spec), Err(HullError::Config(_))));
        assert!(generate(&DatasetSpec::new(Family::DiskUniform, 0, 0)).is_err());
    }
}
