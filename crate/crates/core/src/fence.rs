//! The angle-ordered fence point list and its convexity filter.

use crate::binning::BoundaryPoints;
use crate::error::{HullError, Result};
use crate::geometry::{orientation, Orientation, Point, PolarView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FenceSource {
    MaximalBin,
    Boundary,
    Horizon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FenceEntry {
    /// Position in the point slice.
    pub index: usize,
    pub theta: f64,
    pub source: FenceSource,
}

/// Candidate hull points in anticlockwise polar order, one per angle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FencePointList {
    pub entries: Vec<FenceEntry>,
}

impl FencePointList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }

    /// Positions sorted ascending, for set comparisons.
    pub fn index_set(&self) -> Vec<usize> {
        let mut v = self.indices();
        v.sort_unstable();
        v
    }

    /// Orders arbitrary positions by polar angle, applying the same
    /// deduplication as [`build_fence`].
    pub fn from_positions(
        positions: &[usize],
        source: FenceSource,
        polar: &[PolarView],
    ) -> Result<Self> {
        order_entries(positions.iter().map(|&p| (p, source)).collect(), polar)
    }
}

fn order_entries(mut raw: Vec<(usize, FenceSource)>, polar: &[PolarView]) -> Result<FencePointList> {
    // points at the center carry no direction
    raw.retain(|&(p, _)| polar[p].r > 0.0);
    if raw.is_empty() {
        return Err(HullError::EmptyFence);
    }
    // input streams arrive mostly angle-ordered, which the merge sort exploits
    raw.sort_by(|a, b| {
        let (pa, pb) = (&polar[a.0], &polar[b.0]);
        pa.theta
            .total_cmp(&pb.theta)
            .then(pb.r.total_cmp(&pa.r))
            .then(a.0.cmp(&b.0))
    });
    let mut entries: Vec<FenceEntry> = Vec::with_capacity(raw.len());
    for (index, source) in raw {
        let theta = polar[index].theta;
        // equal angle: the farthest point (then smallest position) is already in
        if entries.last().is_some_and(|e| e.theta == theta) {
            continue;
        }
        entries.push(FenceEntry {
            index,
            theta,
            source,
        });
    }
    Ok(FencePointList { entries })
}

/// Merges maximal bin points, boundary points and horizon points into one
/// angle-ordered list without repeated indices or angles.
pub fn build_fence(
    maximal: &[usize],
    boundary: &BoundaryPoints,
    horizon: &[usize],
    polar: &[PolarView],
) -> Result<FencePointList> {
    let raw = maximal
        .iter()
        .map(|&p| (p, FenceSource::MaximalBin))
        .chain(boundary.indices.iter().map(|&p| (p, FenceSource::Boundary)))
        .chain(horizon.iter().map(|&p| (p, FenceSource::Horizon)))
        .collect();
    order_entries(raw, polar)
}

/// Removes fence points that break convexity, cascading to re-test the
/// neighbours of every removal.
///
/// The sweep is a cyclic Graham scan anchored at the first entry (the
/// farthest point in a pipeline fence). An entry survives only if it makes a
/// strict counter-clockwise turn with its surviving neighbours. Whenever the
/// neighbours span less than half a turn about the center this is exactly
/// the test "the entry and the center lie on opposite sides of the segment
/// joining its neighbours"; for wider spans the turn test remains correct
/// while the side test would discard hull vertices.
pub fn enforce_convexity(fence: &FencePointList, points: &[Point]) -> FencePointList {
    let entries = &fence.entries;
    if entries.len() <= 2 {
        return fence.clone();
    }
    let turns_left = |a: usize, b: usize, c: usize| {
        orientation(&points[entries[a].index], &points[entries[b].index], &points[entries[c].index])
            == Orientation::CounterClockwise
    };
    let mut stack: Vec<usize> = Vec::with_capacity(entries.len());
    stack.push(0);
    for i in 1..entries.len() {
        while stack.len() >= 2 && !turns_left(stack[stack.len() - 2], stack[stack.len() - 1], i) {
            stack.pop();
        }
        stack.push(i);
    }
    while stack.len() >= 3 && !turns_left(stack[stack.len() - 2], stack[stack.len() - 1], stack[0]) {
        stack.pop();
    }
    FencePointList {
        entries: stack.into_iter().map(|i| entries[i]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use proptest::prelude::*;

    use super::*;
    use crate::geometry::{compute_center, polygon_contains, to_polar, Center};
    use crate::hulls::brute_force_hull;

    fn polar_of(points: &[Point]) -> (Center, Vec<PolarView>) {
        let c = compute_center(points).unwrap();
        let polar = to_polar(points, &c).unwrap();
        (c, polar)
    }

    #[test]
    fn square_corners_dedup() {
        let pts = Point::from_coords(&[(1., 1.), (-1., 1.), (-1., -1.), (1., -1.)]);
        let (_, polar) = polar_of(&pts);
        let all = [0, 1, 2, 3];
        let b = BoundaryPoints { indices: all.to_vec() };
        let fence = build_fence(&all, &b, &[], &polar).unwrap();
        assert_eq!(fence.len(), 4);
        assert!(fence.entries.windows(2).all(|w| w[0].theta < w[1].theta));
        assert_eq!(fence.entries[0].source, FenceSource::MaximalBin);
        assert_eq!(enforce_convexity(&fence, &pts), fence);
    }

    #[test]
    fn single_entry_and_empty() {
        let polar = [PolarView { r: 1.0, theta: 0.5, index: 0, frame_offset: 0.0 }];
        let fence = build_fence(&[0], &BoundaryPoints::default(), &[], &polar).unwrap();
        assert_eq!(fence.indices(), vec![0]);
        assert!(matches!(
            build_fence(&[], &BoundaryPoints::default(), &[], &polar),
            Err(HullError::EmptyFence)
        ));
    }

    #[test]
    fn equal_angle_keeps_farther_then_smaller_index() {
        let polar = [
            PolarView { r: 1.0, theta: 0.5, index: 0, frame_offset: 0.0 },
            PolarView { r: 2.0, theta: 0.5, index: 1, frame_offset: 0.0 },
            PolarView { r: 2.0, theta: 0.5, index: 2, frame_offset: 0.0 },
        ];
        let fence = build_fence(&[2, 0], &BoundaryPoints::default(), &[1], &polar).unwrap();
        assert_eq!(fence.indices(), vec![1]);
    }

    #[test]
    fn dent_removed() {
        // prev (1,0), p (0.5,0.1), next (0,1): p and the origin are both below x + y = 1
        let pts = Point::from_coords(&[(1., 0.), (0.5, 0.1), (0., 1.), (-1., 0.), (0., -1.)]);
        let polar: Vec<PolarView> = pts
            .iter()
            .map(|p| PolarView {
                r: p.x.hypot(p.y),
                theta: p.y.atan2(p.x).rem_euclid(TAU),
                index: p.index,
                frame_offset: 0.0,
            })
            .collect();
        let fence = FencePointList::from_positions(&[0, 1, 2, 3, 4], FenceSource::MaximalBin, &polar)
            .unwrap();
        assert_eq!(enforce_convexity(&fence, &pts).indices(), vec![0, 2, 3, 4]);
    }

    /// Twelve points around a circle of radius 10, three of them pulled
    /// inwards far enough to become reflex.
    fn twelve_with_three_reflex() -> (Vec<Point>, Vec<usize>) {
        let reflex = [3usize, 8, 10];
        let pts: Vec<Point> = (0..12)
            .map(|i| {
                let t = i as f64 * TAU / 12.0;
                let r = if reflex.contains(&i) { 6.0 } else { 10.0 };
                Point::new(r * t.cos(), r * t.sin(), i)
            })
            .collect();
        (pts, reflex.to_vec())
    }

    #[test]
    fn reflex_entries_of_twelve_point_fence_removed() {
        let (pts, reflex) = twelve_with_three_reflex();
        let (_, polar) = polar_of(&pts);
        let all: Vec<usize> = (0..12).collect();
        let fence = FencePointList::from_positions(&all, FenceSource::MaximalBin, &polar).unwrap();
        let kept = enforce_convexity(&fence, &pts);
        let mut removed: Vec<usize> = all.iter().copied().filter(|i| !kept.indices().contains(i)).collect();
        removed.sort_unstable();
        assert_eq!(removed, reflex);
        let oracle = brute_force_hull(&pts);
        let mut survivors = kept.index_set();
        survivors.sort_unstable();
        let mut hull = oracle.vertices.clone();
        hull.sort_unstable();
        assert_eq!(survivors, hull);
    }

    fn cloud() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec(((-200i32..200), (-200i32..200)), 3..80)
            .prop_map(|v| v.into_iter().map(|(x, y)| (x as f64 / 4.0, y as f64 / 4.0)).collect())
    }

    proptest! {
        #[test]
        fn convexity_invariants(coords in cloud()) {
            let pts = Point::from_coords(&coords);
            let c = compute_center(&pts).unwrap();
            let Ok(polar) = to_polar(&pts, &c) else { return Ok(()); };
            let all: Vec<usize> = (0..pts.len()).collect();
            let fence = FencePointList::from_positions(&all, FenceSource::MaximalBin, &polar).unwrap();
            let once = enforce_convexity(&fence, &pts);
            prop_assert_eq!(enforce_convexity(&once, &pts), once.clone());

            // surviving order is a subsequence of the input order
            let order = fence.indices();
            let mut cursor = 0;
            for idx in once.indices() {
                let pos = order[cursor..].iter().position(|&x| x == idx);
                prop_assert!(pos.is_some());
                cursor += pos.unwrap() + 1;
            }

            // with every point in the fence, survivors are exactly the strict hull
            let oracle = brute_force_hull(&pts);
            let hull_set: std::collections::BTreeSet<usize> = oracle.vertices.iter().copied().collect();
            let survivors: std::collections::BTreeSet<usize> =
                once.indices().into_iter().map(|i| rep(&pts, i)).collect();
            prop_assert_eq!(survivors, hull_set);

            // removed points are inside the surviving polygon
            let ring = once.indices();
            if ring.len() >= 3 {
                for e in &fence.entries {
                    prop_assert!(polygon_contains(&ring, &pts, &pts[e.index]));
                }
            }
        }
    }

    fn rep(pts: &[Point], i: usize) -> usize {
        pts.iter().position(|p| p.same_position(&pts[i])).unwrap()
    }
}
