//! Horizon sets and horizon points: recovering hull vertices that lie
//! between two consecutive fence anchors but were not maximal in their bin.
//!
//! With the center strictly left of the chord `anchor -> terminal` (the two
//! anchors span less than half a turn), `ha(anchor, p) >= ha(anchor, terminal)`
//! holds exactly when `p` is on or beyond the chord, away from the center.
//! Membership and the "largest horizon angle" choice are decided with the
//! exact orientation predicate in that form; the floating-point angles are
//! still computed and carried for inspection.
//!
//! When the anchors span half a turn or more (possible only for sparse,
//! pre-filter fences) the angular ordering argument breaks down, and the
//! pair falls back to a Graham scan over its candidates.

use std::cmp::Ordering;

use crate::binning::BinTable;
use crate::error::{HullError, Result};
use crate::fence::FencePointList;
use crate::geometry::{horizon_angle, orientation, Center, Orientation, Point, PolarView};
use crate::hulls::graham_chain;

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonSet {
    /// Sector holding the anchor.
    pub bin_index: usize,
    pub anchor: usize,
    pub terminal: usize,
    /// Members with their horizon angle at the anchor.
    pub members: Vec<(usize, f64)>,
    /// Anchors span half a turn or more about the center.
    pub wide: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HorizonPointSequence {
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HorizonOutcome {
    /// Union of all horizon points, sorted.
    pub points: Vec<usize>,
    /// Non-anchor points handed to some anchor pair.
    pub candidates_scanned: usize,
    pub pairs: usize,
    pub wide_pairs: usize,
}

fn dist2(a: &Point, b: &Point) -> f64 {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    dx * dx + dy * dy
}

/// Filters `candidates` (points angularly between the two anchors) down to
/// those subtending at least the terminal's horizon angle at the anchor.
pub fn compute_horizon_set(
    bin_index: usize,
    anchor: usize,
    terminal: usize,
    candidates: &[usize],
    points: &[Point],
    center: &Center,
) -> HorizonSet {
    let a = &points[anchor];
    let t = &points[terminal];
    let o = center.as_point(usize::MAX);
    let wide = a.same_position(t) || orientation(a, t, &o) != Orientation::CounterClockwise;
    let members = candidates
        .iter()
        .copied()
        .filter(|&p| p != anchor && !points[p].same_position(a))
        .filter(|&p| wide || orientation(a, t, &points[p]) != Orientation::CounterClockwise)
        .map(|p| {
            let ha = horizon_angle(a, &points[p], center).unwrap_or(0.0);
            (p, ha)
        })
        .collect();
    HorizonSet {
        bin_index,
        anchor,
        terminal,
        members,
        wide,
    }
}

/// Repeatedly takes the member with the largest horizon angle at the current
/// anchor and promotes it to anchor, until no remaining member lies strictly
/// beyond the chord from the current anchor to the terminal.
pub fn extract_horizon_points(hset: &HorizonSet, points: &[Point]) -> HorizonPointSequence {
    if hset.members.is_empty() {
        return HorizonPointSequence::default();
    }
    if hset.wide {
        return wide_sequence(hset, points);
    }
    let terminal = &points[hset.terminal];
    let beyond = |from: &Point, p: usize| orientation(from, terminal, &points[p]) == Orientation::Clockwise;

    let mut anchor = points[hset.anchor];
    let mut remaining: Vec<usize> = hset
        .members
        .iter()
        .map(|m| m.0)
        .filter(|&p| beyond(&anchor, p))
        .collect();
    if remaining.len() > JARVIS_LIMIT {
        return outer_chain(&remaining, hset.anchor, hset.terminal, points);
    }
    let mut sequence = Vec::new();
    while !remaining.is_empty() {
        let a = anchor;
        let pick = remaining
            .iter()
            .copied()
            .reduce(|best, p| match orientation(&a, &points[best], &points[p]) {
                Orientation::Clockwise => p,
                Orientation::CounterClockwise => best,
                Orientation::Collinear => {
                    match dist2(&a, &points[p]).total_cmp(&dist2(&a, &points[best])) {
                        Ordering::Greater => p,
                        Ordering::Less => best,
                        Ordering::Equal => p.min(best),
                    }
                }
            })
            .expect("non-empty");
        sequence.push(pick);
        anchor = points[pick];
        remaining.retain(|&p| p != pick && beyond(&anchor, p));
    }
    HorizonPointSequence { points: sequence }
}

/// Above this many members the repeated selection, quadratic in the worst
/// case, gives way to one sort-based chain.
const JARVIS_LIMIT: usize = 32;

/// The hull chain from `anchor` to `terminal` through `members`, all of
/// which lie strictly beyond that chord. It is exactly the sequence the
/// selection loop produces.
fn outer_chain(members: &[usize], anchor: usize, terminal: usize, points: &[Point]) -> HorizonPointSequence {
    let mut subset = members.to_vec();
    subset.push(anchor);
    subset.push(terminal);
    let mut chain = graham_chain(points, &subset);
    let start = chain.iter().position(|&p| p == anchor).unwrap_or(0);
    chain.rotate_left(start);
    let end = chain.iter().position(|&p| p == terminal).unwrap_or(chain.len());
    HorizonPointSequence {
        points: chain[1.min(end)..end].to_vec(),
    }
}

fn wide_sequence(hset: &HorizonSet, points: &[Point]) -> HorizonPointSequence {
    let mut subset: Vec<usize> = hset.members.iter().map(|m| m.0).collect();
    subset.push(hset.anchor);
    subset.push(hset.terminal);
    let mut chain = graham_chain(points, &subset);
    if let Some(start) = chain.iter().position(|&p| p == hset.anchor) {
        chain.rotate_left(start);
    }
    chain.retain(|&p| p != hset.anchor && p != hset.terminal);
    HorizonPointSequence { points: chain }
}

/// Runs horizon computation between every pair of consecutive fence anchors
/// (cyclically). Each non-anchor point is routed to the pair whose angular
/// interval `[theta(anchor), theta(terminal))` holds it, scanning the bin
/// occupancy lists once.
pub fn horizon_computation(
    table: &BinTable,
    fence: &FencePointList,
    polar: &[PolarView],
    points: &[Point],
    center: &Center,
) -> Result<HorizonOutcome> {
    let occupancy = table
        .occupancy
        .as_ref()
        .ok_or_else(|| HullError::Config("horizon computation needs bin occupancy lists".into()))?;
    let anchors = &fence.entries;
    let k = anchors.len();
    if k == 0 {
        return Ok(HorizonOutcome::default());
    }
    let mut is_anchor = vec![false; points.len()];
    for e in anchors {
        is_anchor[e.index] = true;
    }
    let thetas: Vec<f64> = anchors.iter().map(|e| e.theta).collect();

    let o = center.as_point(usize::MAX);
    let chord = |j: usize| (&points[anchors[j].index], &points[anchors[(j + 1) % k].index]);
    let wide: Vec<bool> = (0..k)
        .map(|j| {
            let (a, t) = chord(j);
            a.same_position(t) || orientation(a, t, &o) != Orientation::CounterClockwise
        })
        .collect();
    // points nearer the center than a chord's line are strictly inside it;
    // the relative margin dwarfs rounding in r and in the distance itself
    let inner: Vec<f64> = (0..k)
        .map(|j| {
            if wide[j] {
                return 0.0;
            }
            let (a, t) = chord(j);
            let (ex, ey) = (t.x - a.x, t.y - a.y);
            let cross = ex * (o.y - a.y) - ey * (o.x - a.x);
            cross.abs() / ex.hypot(ey) * (1.0 - 1e-9)
        })
        .collect();
    // pair j owns [thetas[j], thetas[j + 1]); the last pair wraps through zero
    let owns = |j: usize, theta: f64| {
        if j + 1 < k {
            thetas[j] <= theta && theta < thetas[j + 1]
        } else {
            theta >= thetas[j] || theta < thetas[0]
        }
    };

    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut scanned = 0;
    let mut pair = k - 1;
    for members in occupancy {
        for &p in members {
            if is_anchor[p] || polar[p].r == 0.0 {
                continue;
            }
            scanned += 1;
            let theta = polar[p].theta;
            let r = polar[p].r;
            // members of one bin nearly always share a pair
            if !owns(pair, theta) {
                let j = thetas.partition_point(|&t| t <= theta);
                pair = if j == 0 { k - 1 } else { j - 1 };
            }
            if r < inner[pair] {
                continue;
            }
            let (a, t) = chord(pair);
            if wide[pair] || orientation(a, t, &points[p]) != Orientation::CounterClockwise {
                candidates[pair].push(p);
            }
        }
    }

    let mut found = Vec::new();
    let mut wide_pairs = 0;
    for (j, cands) in candidates.iter().enumerate() {
        if cands.is_empty() {
            continue;
        }
        let anchor = anchors[j].index;
        let terminal = anchors[(j + 1) % k].index;
        let bin = table.config.bin_of(anchors[j].theta);
        let hset = compute_horizon_set(bin, anchor, terminal, cands, points, center);
        wide_pairs += usize::from(hset.wide);
        found.extend(extract_horizon_points(&hset, points).points);
    }
    found.sort_unstable();
    found.dedup();
    Ok(HorizonOutcome {
        points: found,
        candidates_scanned: scanned,
        pairs: k,
        wide_pairs,
    })
}
