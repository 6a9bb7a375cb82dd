//! End-to-end constructions: horizon reduction, contour scanning and the
//! divide-and-conquer driver, each returning a [`PipelineReport`].

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binning::{assign_bins, compute_boundary_points, halve_interval, maximal_union, BoundaryPoints, BinConfig, BinTable, MIN_INTERVAL};
use crate::error::{HullError, Result};
use crate::fence::{build_fence, enforce_convexity, FencePointList, FenceSource};
use crate::geometry::{canonicalize_hull, compute_center, orientation, to_polar, Center, Hull, Orientation, Point, PolarView};
use crate::horizon::horizon_computation;
use crate::hulls::{graham_chain, jarvis_chain};

pub const DEFAULT_HORIZON_INTERVAL_DEG: f64 = 10.0;
pub const DEFAULT_CONTOUR_INTERVAL_DEG: f64 = 1.0;
pub const DEFAULT_MAX_HALVINGS: usize = 20;
pub const DEFAULT_LEAF_SIZE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FinalAlgorithm {
    #[default]
    Graham,
    Jarvis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    OrderedPolar,
    Unordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StageTimings {
    pub center: Duration,
    pub binning: Duration,
    pub boundary: Duration,
    pub fencing: Duration,
    pub horizon: Duration,
    pub final_hull: Duration,
    pub combine: Duration,
}

impl StageTimings {
    pub fn reduction(&self) -> Duration {
        self.center + self.binning + self.boundary + self.fencing + self.horizon
    }

    pub fn total(&self) -> Duration {
        self.reduction() + self.final_hull + self.combine
    }
}

/// Point visits per linear stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Visits {
    pub binning: usize,
    pub boundary: usize,
    pub fencing: usize,
    pub horizon: usize,
}

impl Visits {
    pub fn total(&self) -> usize {
        self.binning + self.boundary + self.fencing + self.horizon
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PipelineReport {
    pub input_size: usize,
    pub reduced_size: usize,
    pub reduction_percent: f64,
    pub hull_size: usize,
    /// Interval halvings performed (contour scanning only).
    pub iterations: usize,
    pub final_interval: f64,
    pub elapsed: StageTimings,
    pub visits: Visits,
    pub combine_work: usize,
    /// Contour scanning hit the interval floor and added the points outside
    /// its contour before the final scan.
    pub contour_repaired: bool,
}

impl PipelineReport {
    fn finish(&mut self, hull: &Hull) {
        self.hull_size = hull.len();
        self.reduction_percent = if self.input_size == 0 {
            0.0
        } else {
            100.0 * (1.0 - self.reduced_size as f64 / self.input_size as f64)
        };
    }
}

impl fmt::Display for PipelineReport {
    /// One `key=value` pair per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        let t = &self.elapsed;
        writeln!(f, "input_size={}", self.input_size)?;
        writeln!(f, "reduced_size={}", self.reduced_size)?;
        writeln!(f, "reduction_percent={:.4}", self.reduction_percent)?;
        writeln!(f, "hull_size={}", self.hull_size)?;
        writeln!(f, "iterations={}", self.iterations)?;
        writeln!(f, "final_interval={:e}", self.final_interval)?;
        writeln!(f, "visits_total={}", self.visits.total())?;
        writeln!(f, "combine_work={}", self.combine_work)?;
        writeln!(f, "contour_repaired={}", u8::from(self.contour_repaired))?;
        writeln!(f, "elapsed_center_ms={:.3}", ms(t.center))?;
        writeln!(f, "elapsed_binning_ms={:.3}", ms(t.binning))?;
        writeln!(f, "elapsed_boundary_ms={:.3}", ms(t.boundary))?;
        writeln!(f, "elapsed_fencing_ms={:.3}", ms(t.fencing))?;
        writeln!(f, "elapsed_horizon_ms={:.3}", ms(t.horizon))?;
        writeln!(f, "elapsed_final_hull_ms={:.3}", ms(t.final_hull))?;
        writeln!(f, "elapsed_combine_ms={:.3}", ms(t.combine))?;
        write!(f, "elapsed_total_ms={:.3}", ms(t.total()))
    }
}

fn timed<T>(slot: &mut Duration, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot += start.elapsed();
    out
}

/// Hull of inputs with no interior: fewer than three points, all points
/// coincident, or all collinear. `None` when the input spans an area.
fn degenerate_hull(points: &[Point]) -> Result<Option<Hull>> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let Some(b) = points.iter().position(|p| !p.same_position(&points[0])) else {
        return canonicalize_hull(&[0], points).map(Some);
    };
    let flat = points
        .iter()
        .all(|q| orientation(&points[0], &points[b], q) == Orientation::Collinear);
    if !flat {
        return Ok(None);
    }
    let all: Vec<usize> = (0..points.len()).collect();
    canonicalize_hull(&all, points).map(Some)
}

fn degenerate_report(points: &[Point], hull: &Hull) -> PipelineReport {
    let mut report = PipelineReport {
        input_size: points.len(),
        reduced_size: points.len(),
        ..Default::default()
    };
    report.finish(hull);
    report
}

struct Frame {
    center: Center,
    polar: Vec<PolarView>,
    boundary: BoundaryPoints,
}

fn frame(points: &[Point], report: &mut PipelineReport) -> Result<Frame> {
    let t = &mut report.elapsed;
    let (center, polar) = timed(&mut t.center, || -> Result<_> {
        let c = compute_center(points)?;
        let polar = to_polar(points, &c)?;
        Ok((c, polar))
    })?;
    let boundary = timed(&mut t.boundary, || compute_boundary_points(points));
    report.visits.boundary += points.len();
    Ok(Frame {
        center,
        polar,
        boundary,
    })
}

/// Bins, fences, recovers horizon points, fences again and finishes with a
/// classical hull on the reduced set.
pub fn hull_via_horizon_reduction(
    points: &[Point],
    interval: f64,
    final_algorithm: FinalAlgorithm,
) -> Result<(Hull, PipelineReport)> {
    let config = BinConfig::new(interval)?;
    if let Some(hull) = degenerate_hull(points)? {
        let report = degenerate_report(points, &hull);
        return Ok((hull, report));
    }
    let mut report = PipelineReport {
        input_size: points.len(),
        final_interval: config.interval,
        ..Default::default()
    };
    let reduced = horizon_fence(points, config, &mut report)?;
    report.reduced_size = reduced.len();

    let ring = timed(&mut report.elapsed.final_hull, || match final_algorithm {
        FinalAlgorithm::Graham => graham_chain(points, &reduced),
        FinalAlgorithm::Jarvis => jarvis_chain(points, &reduced),
    });
    let hull = canonicalize_hull(&ring, points)?;
    report.finish(&hull);
    Ok((hull, report))
}

/// The horizon pipeline's reduced set after its final convexity pass, as an
/// angle-ordered fence. Fails with `DegenerateDataset` when every point sits
/// on the center.
pub fn horizon_reduced_fence(points: &[Point], interval: f64) -> Result<FencePointList> {
    let config = BinConfig::new(interval)?;
    let mut report = PipelineReport::default();
    let reduced = horizon_fence(points, config, &mut report)?;
    let polar = to_polar(points, &compute_center(points)?)?;
    FencePointList::from_positions(&reduced, FenceSource::Horizon, &polar)
}

/// The reduced candidate set of the horizon pipeline, in polar order.
fn horizon_fence(points: &[Point], config: BinConfig, report: &mut PipelineReport) -> Result<Vec<usize>> {
    let Frame {
        center,
        polar,
        boundary,
    } = frame(points, report)?;
    let t = &mut report.elapsed;
    let table = timed(&mut t.binning, || assign_bins(&polar, config, true));
    report.visits.binning += table.visits;

    let first = timed(&mut t.fencing, || -> Result<_> {
        let fence = build_fence(&maximal_union(&table), &boundary, &[], &polar)?;
        Ok(enforce_convexity(&fence, points).indices())
    })?;
    report.visits.fencing += first.len();

    let first_fence = FencePointList::from_positions(&first, FenceSource::MaximalBin, &polar)?;
    let outcome = timed(&mut t.horizon, || horizon_computation(&table, &first_fence, &polar, points, &center))?;
    report.visits.horizon += outcome.candidates_scanned;

    let reduced = timed(&mut t.fencing, || -> Result<_> {
        let fence = build_fence(&first, &boundary, &outcome.points, &polar)?;
        Ok((fence.len(), enforce_convexity(&fence, points).indices()))
    })?;
    report.visits.fencing += reduced.0;
    Ok(reduced.1)
}

/// Halves the bin interval until the convexity-filtered contour stops
/// changing and encloses every point, then scans it.
pub fn hull_via_contour_scanning(
    points: &[Point],
    initial_interval: f64,
    max_halvings: usize,
) -> Result<(Hull, PipelineReport)> {
    let config = BinConfig::new(initial_interval)?;
    if let Some(hull) = degenerate_hull(points)? {
        let report = degenerate_report(points, &hull);
        return Ok((hull, report));
    }
    let mut report = PipelineReport {
        input_size: points.len(),
        ..Default::default()
    };
    let contour = converge_contour(points, config, max_halvings, &mut report)?;
    report.reduced_size = contour.len();
    let hull = timed(&mut report.elapsed.final_hull, || canonicalize_hull(&contour.indices(), points))?;
    report.finish(&hull);
    Ok((hull, report))
}

/// The converged, convexity-filtered contour of the contour-scanning
/// pipeline. Inputs without interior (collinear or coincident points) fail
/// with `DegenerateDataset`.
pub fn converged_contour(
    points: &[Point],
    initial_interval: f64,
    max_halvings: usize,
) -> Result<(FencePointList, PipelineReport)> {
    let config = BinConfig::new(initial_interval)?;
    if degenerate_hull(points)?.is_some() {
        return Err(HullError::DegenerateDataset);
    }
    let mut report = PipelineReport {
        input_size: points.len(),
        ..Default::default()
    };
    let contour = converge_contour(points, config, max_halvings, &mut report)?;
    report.reduced_size = contour.len();
    Ok((contour, report))
}

fn converge_contour(
    points: &[Point],
    config: BinConfig,
    max_halvings: usize,
    report: &mut PipelineReport,
) -> Result<FencePointList> {
    let Frame {
        center,
        polar,
        boundary,
    } = frame(points, report)?;
    let contour_of = |table: &BinTable, report: &mut PipelineReport| -> Result<FencePointList> {
        timed(&mut report.elapsed.fencing, || {
            let fence = build_fence(&maximal_union(table), &boundary, &[], &polar)?;
            Ok(enforce_convexity(&fence, points))
        })
    };

    let mut table = timed(&mut report.elapsed.binning, || assign_bins(&polar, config, false));
    report.visits.binning += table.visits;
    let mut prev = contour_of(&table, report)?;
    loop {
        let underflow = HullError::IntervalUnderflow {
            halvings: report.iterations,
            min: MIN_INTERVAL,
        };
        if report.iterations >= max_halvings {
            return Err(underflow);
        }
        table = match timed(&mut report.elapsed.binning, || halve_interval(&table, &polar)) {
            Ok(t) => t,
            Err(_) => {
                // interval floor: finish exactly rather than give up
                report.contour_repaired = true;
                return timed(&mut report.elapsed.fencing, || repair_contour(&prev, points, &polar, &center));
            }
        };
        report.iterations += 1;
        report.visits.binning += table.visits;
        report.final_interval = table.config.interval;
        let cur = contour_of(&table, report)?;
        let settled = || outside_points(&cur, points, &polar, &center).is_some_and(|o| o.is_empty());
        if cur.indices() == prev.indices() && settled() {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// Points lying outside the contour polygon, or `None` when the center is
/// not strictly inside it. Each point is tested against the edge of its polar
/// wedge and the two neighbouring edges, which absorbs rounding in theta.
fn outside_points(contour: &FencePointList, points: &[Point], polar: &[PolarView], center: &Center) -> Option<Vec<usize>> {
    let e = &contour.entries;
    let k = e.len();
    if k < 3 {
        return None;
    }
    let edge = |j: usize| (&points[e[j % k].index], &points[e[(j + 1) % k].index]);
    let c = center.as_point(usize::MAX);
    if !(0..k).all(|j| {
        let (a, b) = edge(j);
        orientation(a, b, &c) == Orientation::CounterClockwise
    }) {
        return None;
    }
    let thetas: Vec<f64> = e.iter().map(|x| x.theta).collect();
    let outside = points
        .iter()
        .zip(polar)
        .enumerate()
        .filter(|(_, (p, v))| {
            let j = thetas.partition_point(|&t| t <= v.theta) + k - 1;
            [j + k - 1, j, j + 1].iter().any(|&i| {
                let (a, b) = edge(i);
                orientation(a, b, p) == Orientation::Clockwise
            })
        })
        .map(|(i, _)| i)
        .collect();
    Some(outside)
}

/// Closes the gap left when two hull vertices share a bin at every
/// resolution: every such vertex lies outside the contour polygon, so adding
/// the outside points and filtering again yields the hull.
fn repair_contour(contour: &FencePointList, points: &[Point], polar: &[PolarView], center: &Center) -> Result<FencePointList> {
    let mut candidates = contour.indices();
    match outside_points(contour, points, polar, center) {
        Some(outside) => candidates.extend(outside),
        None => candidates = (0..points.len()).collect(),
    }
    let fence = FencePointList::from_positions(&candidates, FenceSource::MaximalBin, polar)?;
    Ok(enforce_convexity(&fence, points))
}

/// Splits the input, solves the leaves by contour scanning about a shared
/// center and merges the partial hulls.
///
/// `OrderedPolar` splits by polar-angle interval so sibling hulls are
/// angle-disjoint chains: merging concatenates them and repairs the seam
/// inside a window of four vertices. `Unordered` splits a seeded shuffle in
/// halves and merges by re-hulling the union of both vertex sets.
/// `combine_work` in the report counts the orientation tests (ordered) or
/// vertices fed to the re-hull (unordered) spent merging.
pub fn divide_and_conquer(points: &[Point], scheme: Scheme, leaf_size: usize) -> Result<(Hull, PipelineReport)> {
    if leaf_size < 3 {
        return Err(HullError::Config(format!("leaf size {leaf_size} below 3")));
    }
    if let Some(hull) = degenerate_hull(points)? {
        let report = degenerate_report(points, &hull);
        return Ok((hull, report));
    }
    let mut report = PipelineReport {
        input_size: points.len(),
        final_interval: DEFAULT_CONTOUR_INTERVAL_DEG.to_radians(),
        ..Default::default()
    };
    let (center, polar) = timed(&mut report.elapsed.center, || -> Result<_> {
        let c = compute_center(points)?;
        let polar = to_polar(points, &c)?;
        Ok((c, polar))
    })?;
    let ctx = Ctx {
        points,
        polar: &polar,
        center,
        leaf_size,
    };

    let start = Instant::now();
    let merged = match scheme {
        Scheme::OrderedPolar => {
            let mut order: Vec<usize> = (0..points.len()).filter(|&i| polar[i].r > 0.0).collect();
            order.sort_by(|&a, &b| polar[a].theta.total_cmp(&polar[b].theta).then(a.cmp(&b)));
            ctx.ordered(&order, 0.0, TAU, 0)?
        }
        Scheme::Unordered => {
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed_cafe));
            ctx.unordered(&order)?
        }
    };
    report.elapsed.combine = start.elapsed();
    report.combine_work = merged.work;
    report.iterations = merged.iterations;
    report.contour_repaired = merged.repaired;
    report.reduced_size = merged.chain.len();

    let hull = timed(&mut report.elapsed.final_hull, || -> Result<_> {
        let fence = FencePointList::from_positions(&merged.chain, FenceSource::MaximalBin, &polar)?;
        canonicalize_hull(&enforce_convexity(&fence, points).indices(), points)
    })?;
    report.finish(&hull);
    Ok((hull, report))
}

/// Subproblems above this size fork onto the rayon pool.
const PARALLEL_CUTOFF: usize = 4096;
const MAX_DEPTH: usize = 60;

struct Ctx<'a> {
    points: &'a [Point],
    polar: &'a [PolarView],
    center: Center,
    leaf_size: usize,
}

struct Partial {
    /// Hull vertices as positions; polar order for the ordered scheme.
    chain: Vec<usize>,
    work: usize,
    iterations: usize,
    repaired: bool,
}

impl Ctx<'_> {
    /// Hull of a subset together with the center, minus the center.
    fn leaf(&self, subset: &[usize]) -> Result<Partial> {
        if subset.is_empty() {
            return Ok(Partial {
                chain: Vec::new(),
                work: 0,
                iterations: 0,
                repaired: false,
            });
        }
        let synthetic = self.points.len();
        // leaf points carry their global position as index
        let mut local: Vec<Point> = subset
            .iter()
            .map(|&i| Point::new(self.points[i].x, self.points[i].y, i))
            .collect();
        local.push(self.center.as_point(synthetic));
        let (hull, report) = hull_via_contour_scanning(
            &local,
            DEFAULT_CONTOUR_INTERVAL_DEG.to_radians(),
            DEFAULT_MAX_HALVINGS,
        )?;
        let mut chain: Vec<usize> = hull.vertices.into_iter().filter(|&v| v != synthetic).collect();
        chain.sort_by(|&a, &b| self.polar[a].theta.total_cmp(&self.polar[b].theta).then(a.cmp(&b)));
        Ok(Partial {
            chain,
            work: 0,
            iterations: report.iterations,
            repaired: report.contour_repaired,
        })
    }

    fn join<A, B>(&self, size: usize, a: A, b: B) -> (Result<Partial>, Result<Partial>)
    where
        A: FnOnce() -> Result<Partial> + Send,
        B: FnOnce() -> Result<Partial> + Send,
    {
        if size > PARALLEL_CUTOFF {
            rayon::join(a, b)
        } else {
            (a(), b())
        }
    }

    /// `order` is sorted by theta and lies in `[lo, hi)`.
    fn ordered(&self, order: &[usize], lo: f64, hi: f64, depth: usize) -> Result<Partial> {
        if (order.len() <= self.leaf_size && hi - lo <= FRAC_PI_2) || depth >= MAX_DEPTH {
            return self.leaf(order);
        }
        let mid = lo + (hi - lo) / 2.0;
        let split = order.partition_point(|&i| self.polar[i].theta < mid);
        let (l, r) = order.split_at(split);
        let (left, right) = self.join(order.len(), || self.ordered(l, lo, mid, depth + 1), || {
            self.ordered(r, mid, hi, depth + 1)
        });
        let (left, right) = (left?, right?);
        let seam = left.chain.len();
        let mut chain = left.chain;
        chain.extend(right.chain);
        let work = self.stitch(&mut chain, seam);
        Ok(Partial {
            chain,
            work: left.work + right.work + work,
            iterations: left.iterations.max(right.iterations),
            repaired: left.repaired || right.repaired,
        })
    }

    /// Drops chain vertices near `seam` that sit inside the triangle formed
    /// by the center and their two neighbours. Returns the tests spent.
    fn stitch(&self, chain: &mut Vec<usize>, seam: usize) -> usize {
        const WINDOW: usize = 4;
        let c = self.center.as_point(usize::MAX);
        let mut work = 0;
        let mut at = seam;
        // every pass either removes a vertex or ends the repair
        for _ in 0..WINDOW {
            let lo = at.saturating_sub(WINDOW / 2).max(1);
            let hi = (at + WINDOW / 2).min(chain.len().saturating_sub(1));
            let mut removed = None;
            for i in lo..hi {
                work += 1;
                let (a, p, b) = (&self.points[chain[i - 1]], &self.points[chain[i]], &self.points[chain[i + 1]]);
                if orientation(a, b, &c) == Orientation::CounterClockwise
                    && orientation(a, b, p) != Orientation::Clockwise
                {
                    removed = Some(i);
                    break;
                }
            }
            match removed {
                Some(i) => {
                    chain.remove(i);
                    at = i;
                }
                None => break,
            }
        }
        work
    }

    fn unordered(&self, order: &[usize]) -> Result<Partial> {
        if order.len() <= self.leaf_size {
            return self.leaf(order);
        }
        let (l, r) = order.split_at(order.len() / 2);
        let (left, right) = self.join(order.len(), || self.unordered(l), || self.unordered(r));
        let (left, right) = (left?, right?);
        let mut union = left.chain;
        union.extend(right.chain);
        let work = union.len();
        Ok(Partial {
            chain: graham_chain(self.points, &union),
            work: left.work + right.work + work,
            iterations: left.iterations.max(right.iterations),
            repaired: left.repaired || right.repaired,
        })
    }
}
