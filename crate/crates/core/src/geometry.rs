//! Core planar types: points, the dataset center, the rotated polar frame,
//! the exact orientation predicate, horizon angles and the canonical hull.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;

use crate::error::{HullError, Result};

/// A planar input point. `index` is its ordinal in the source dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub index: usize,
}

impl Point {
    pub fn new(x: f64, y: f64, index: usize) -> Self {
        Point { x, y, index }
    }

    /// Builds a dataset whose indices are the positions in `coords`.
    pub fn from_coords(coords: &[(f64, f64)]) -> Vec<Point> {
        coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Point::new(x, y, i))
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn same_position(&self, other: &Point) -> bool {
        self.x == other.x && self.y == other.y
    }

    /// Lexicographic order on (x, y).
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    /// Hashable key identifying the coordinate pair (`-0.0` folded onto `0.0`).
    pub(crate) fn coord_key(&self) -> (u64, u64) {
        ((self.x + 0.0).to_bits(), (self.y + 0.0).to_bits())
    }
}

/// Arithmetic mean of the dataset coordinates; the polar origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Center {
    pub x: f64,
    pub y: f64,
}

impl Center {
    pub fn as_point(&self, index: usize) -> Point {
        Point::new(self.x, self.y, index)
    }
}

/// Polar coordinates of one point about the center, in the frame rotated so
/// the farthest point sits at `theta == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarView {
    pub r: f64,
    pub theta: f64,
    pub index: usize,
    pub frame_offset: f64,
}

impl PolarView {
    /// Cartesian coordinates reconstructed from the polar form.
    pub fn to_cartesian(&self, center: &Center) -> (f64, f64) {
        let angle = self.theta + self.frame_offset;
        (center.x + self.r * angle.cos(), center.y + self.r * angle.sin())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    pub fn is_ccw(self) -> bool {
        self == Orientation::CounterClockwise
    }
}

/// Canonical strict convex hull: counter-clockwise, no collinear vertices,
/// starting at the lexicographically smallest vertex. Vertices are the
/// `index` values of the dataset points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hull {
    pub vertices: Vec<usize>,
}

impl Hull {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for Hull {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn pairwise_sum_by(points: &[Point], coord: fn(&Point) -> f64) -> f64 {
    if points.len() <= 8 {
        return points.iter().fold(0.0, |acc, p| acc + coord(p));
    }
    let mid = points.len() / 2;
    pairwise_sum_by(&points[..mid], coord) + pairwise_sum_by(&points[mid..], coord)
}

/// Componentwise mean using a fixed left-to-right pairwise summation tree, so
/// the result only depends on the input order.
pub fn compute_center(points: &[Point]) -> Result<Center> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let n = points.len() as f64;
    Ok(Center {
        x: pairwise_sum_by(points, |p| p.x) / n,
        y: pairwise_sum_by(points, |p| p.y) / n,
    })
}

/// Polar views aligned with `points` (entry `i` describes `points[i]`).
///
/// The frame is rotated so the farthest point (smallest position on radial
/// ties) has `theta == 0`. Points coincident with the center get `r = 0`,
/// `theta = 0`.
pub fn to_polar(points: &[Point], center: &Center) -> Result<Vec<PolarView>> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let mut views: Vec<PolarView> = points
        .iter()
        .map(|p| {
            let dx = p.x - center.x;
            let dy = p.y - center.y;
            PolarView {
                r: (dx * dx + dy * dy).sqrt(),
                theta: dy.atan2(dx),
                index: p.index,
                frame_offset: 0.0,
            }
        })
        .collect();
    let mut far = 0;
    for (i, v) in views.iter().enumerate() {
        if v.r > views[far].r {
            far = i;
        }
    }
    if views[far].r == 0.0 {
        return Err(HullError::DegenerateDataset);
    }
    let offset = views[far].theta;
    for v in &mut views {
        v.theta = if v.r == 0.0 { 0.0 } else { normalize_angle(v.theta - offset) };
        v.frame_offset = offset;
    }
    Ok(views)
}

fn normalize_angle(a: f64) -> f64 {
    let mut t = a;
    if t < 0.0 {
        t += TAU;
    }
    if t >= TAU {
        t -= TAU;
    }
    // a tiny negative input can round up to exactly TAU
    if !(0.0..TAU).contains(&t) {
        t = 0.0;
    }
    t
}

/// Exact sign of `(b - a) x (c - a)`.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    let det = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Interior angle at `anchor` of the triangle `(p, anchor, center)`, in `[0, pi]`.
pub fn horizon_angle(anchor: &Point, p: &Point, center: &Center) -> Result<f64> {
    let ux = center.x - anchor.x;
    let uy = center.y - anchor.y;
    let vx = p.x - anchor.x;
    let vy = p.y - anchor.y;
    if (vx == 0.0 && vy == 0.0) || (ux == 0.0 && uy == 0.0) {
        return Err(HullError::ZeroLengthLeg);
    }
    let cross = ux * vy - uy * vx;
    let dot = ux * vx + uy * vy;
    Ok(cross.abs().atan2(dot))
}

/// Strict point-in-convex-polygon test (inside or on the boundary) against
/// a counter-clockwise vertex ring given as positions into `points`.
pub fn polygon_contains(ring: &[usize], points: &[Point], q: &Point) -> bool {
    match ring.len() {
        0 => false,
        1 => points[ring[0]].same_position(q),
        2 => {
            let (a, b) = (&points[ring[0]], &points[ring[1]]);
            orientation(a, b, q) == Orientation::Collinear && within_box(a, b, q)
        }
        k => (0..k).all(|i| {
            let a = &points[ring[i]];
            let b = &points[ring[(i + 1) % k]];
            orientation(a, b, q) != Orientation::Clockwise
        }),
    }
}

pub(crate) fn within_box(a: &Point, b: &Point, q: &Point) -> bool {
    q.x >= a.x.min(b.x) && q.x <= a.x.max(b.x) && q.y >= a.y.min(b.y) && q.y <= a.y.max(b.y)
}

/// Maps each vertex position to the position of the smallest-index point in
/// `points` sharing its coordinates.
fn representatives(vertices: &[usize], points: &[Point]) -> Vec<usize> {
    let mut rep: HashMap<(u64, u64), usize> = vertices
        .iter()
        .map(|&v| (points[v].coord_key(), v))
        .collect();
    for (pos, p) in points.iter().enumerate() {
        if let Some(best) = rep.get_mut(&p.coord_key()) {
            if p.index < points[*best].index {
                *best = pos;
            }
        }
    }
    vertices.iter().map(|v| rep[&points[*v].coord_key()]).collect()
}

/// Converts a convex vertex ring (positions into `points`, either
/// orientation, collinear runs and duplicate coordinates allowed) into the
/// canonical [`Hull`].
pub fn canonicalize_hull(vertices: &[usize], points: &[Point]) -> Result<Hull> {
    if vertices.is_empty() {
        return Err(HullError::EmptyHull);
    }
    let mut seen = std::collections::HashSet::new();
    let mut ring: Vec<usize> = representatives(vertices, points);
    ring.retain(|&r| seen.insert(r));
    let lex_min = |set: &[usize]| {
        *set.iter()
            .min_by(|&&a, &&b| points[a].lex_cmp(&points[b]))
            .expect("non-empty")
    };
    let lex_max = |set: &[usize]| {
        *set.iter()
            .max_by(|&&a, &&b| points[a].lex_cmp(&points[b]))
            .expect("non-empty")
    };

    let all_collinear = ring.len() < 3 || {
        let (a, b) = (&points[ring[0]], &points[ring[1]]);
        ring[2..]
            .iter()
            .all(|&c| orientation(a, b, &points[c]) == Orientation::Collinear)
    };
    if all_collinear {
        let lo = lex_min(&ring);
        let hi = lex_max(&ring);
        let verts = if lo == hi { vec![lo] } else { vec![lo, hi] };
        return Ok(Hull {
            vertices: verts.iter().map(|&v| points[v].index).collect(),
        });
    }

    // strip vertices interior to an edge until every turn is strict
    loop {
        let k = ring.len();
        let keep: Vec<bool> = (0..k)
            .map(|i| {
                let prev = &points[ring[(i + k - 1) % k]];
                let next = &points[ring[(i + 1) % k]];
                orientation(prev, &points[ring[i]], next) != Orientation::Collinear
            })
            .collect();
        if keep.iter().all(|&x| x) {
            break;
        }
        let mut removed_one = false;
        let mut next_ring = Vec::with_capacity(k);
        for (i, &v) in ring.iter().enumerate() {
            // drop one vertex of each collinear run per sweep so the neighbours stay valid
            if !keep[i] && !removed_one {
                removed_one = true;
                continue;
            }
            next_ring.push(v);
        }
        ring = next_ring;
    }

    let start = ring
        .iter()
        .enumerate()
        .min_by(|a, b| points[*a.1].lex_cmp(&points[*b.1]))
        .map(|(i, _)| i)
        .expect("non-empty");
    ring.rotate_left(start);
    let k = ring.len();
    let turn = orientation(&points[ring[k - 1]], &points[ring[0]], &points[ring[1]]);
    if turn == Orientation::Clockwise {
        ring[1..].reverse();
    }
    Ok(Hull {
        vertices: ring.iter().map(|&v| points[v].index).collect(),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    use super::*;

    fn exact(v: f64) -> BigRational {
        BigRational::from_float(v).unwrap()
    }

    fn exact_orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
        let det = (exact(b.x) - exact(a.x)) * (exact(c.y) - exact(a.y))
            - (exact(b.y) - exact(a.y)) * (exact(c.x) - exact(a.x));
        if det.is_zero() {
            Orientation::Collinear
        } else if det.is_positive() {
            Orientation::CounterClockwise
        } else {
            Orientation::Clockwise
        }
    }

    fn pts(coords: &[(f64, f64)]) -> Vec<Point> {
        Point::from_coords(coords)
    }

    #[test]
    fn center_examples() {
        let square = pts(&[(0., 0.), (2., 0.), (0., 2.), (2., 2.)]);
        assert_eq!(compute_center(&square).unwrap(), Center { x: 1., y: 1. });
        let single = pts(&[(5., 7.)]);
        assert_eq!(compute_center(&single).unwrap(), Center { x: 5., y: 7. });
        assert!(matches!(compute_center(&[]), Err(HullError::EmptyInput)));
    }

    #[test]
    fn center_matches_rational_mean() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let points: Vec<Point> = (0..1000)
            .map(|i| {
                let r = rng.gen::<f64>().sqrt();
                let t = rng.gen::<f64>() * TAU;
                Point::new(r * t.cos(), r * t.sin(), i)
            })
            .collect();
        let c = compute_center(&points).unwrap();
        let n = BigRational::from_integer(BigInt::from(points.len()));
        let mx = points.iter().fold(BigRational::zero(), |s, p| s + exact(p.x)) / n.clone();
        let my = points.iter().fold(BigRational::zero(), |s, p| s + exact(p.y)) / n;
        let err_x = (exact(c.x) - mx.clone()).abs();
        let err_y = (exact(c.y) - my.clone()).abs();
        let tol = exact(1e-15);
        assert!(err_x < tol && err_y < tol);
        assert!(c.x.abs() < 0.05 && c.y.abs() < 0.05);
    }

    #[test]
    fn polar_examples() {
        // no rotation: (1,1) is the farthest point of this pair
        let points = pts(&[(1., 1.), (-0.5, -0.5)]);
        let c = Center { x: 0., y: 0. };
        let polar = to_polar(&points, &c).unwrap();
        assert!((polar[0].r - SQRT_2).abs() < 1e-15);
        assert_eq!(polar[0].theta, 0.0);
        assert!((polar[0].frame_offset - FRAC_PI_4).abs() < 1e-15);

        let points = pts(&[(-1., 0.), (2., 0.)]);
        let polar = to_polar(&points, &c).unwrap();
        assert_eq!(polar[1].theta, 0.0);
        assert_eq!(polar[0].r, 1.0);
        assert!((polar[0].theta - PI).abs() < 1e-15);
    }

    #[test]
    fn polar_center_coincident_and_degenerate() {
        let c = Center { x: 0., y: 0. };
        let points = pts(&[(0., 0.), (1., 0.), (-1., 0.)]);
        let polar = to_polar(&points, &c).unwrap();
        assert_eq!((polar[0].r, polar[0].theta), (0.0, 0.0));
        let same = pts(&[(3., 3.), (3., 3.)]);
        let c = compute_center(&same).unwrap();
        assert!(matches!(to_polar(&same, &c), Err(HullError::DegenerateDataset)));
    }

    #[test]
    fn farthest_tie_goes_to_smallest_position() {
        let c = Center { x: 0., y: 0. };
        let points = pts(&[(0., 1.), (1., 0.), (0., -1.)]);
        let polar = to_polar(&points, &c).unwrap();
        assert_eq!(polar[0].theta, 0.0);
        assert!((polar[1].theta - 3.0 * FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn orientation_examples() {
        let p = pts(&[(0., 0.), (1., 0.), (0., 1.), (1., 1.), (2., 2.)]);
        assert_eq!(orientation(&p[0], &p[1], &p[2]), Orientation::CounterClockwise);
        assert_eq!(orientation(&p[0], &p[3], &p[4]), Orientation::Collinear);
        assert_eq!(orientation(&p[0], &p[2], &p[3]), Orientation::Clockwise);
    }

    #[test]
    fn orientation_near_degenerate_matches_rational() {
        // classic failure case for naive evaluation: points almost on y = x
        let a = Point::new(0.5, 0.5, 0);
        let c = Point::new(24.0, 24.0, 2);
        for i in 0..256 {
            for j in 0..256 {
                let b = Point::new(
                    0.5 + i as f64 * f64::EPSILON,
                    0.5 + j as f64 * f64::EPSILON,
                    1,
                );
                assert_eq!(orientation(&a, &b, &c), exact_orientation(&a, &b, &c));
            }
        }
    }

    #[test]
    fn horizon_angle_examples() {
        let o = Center { x: 0., y: 0. };
        let a = Point::new(2., 0., 0);
        let ha = horizon_angle(&a, &Point::new(1., 1., 1), &o).unwrap();
        assert!((ha - FRAC_PI_4).abs() < 1e-15);
        let ha = horizon_angle(&Point::new(1., 0., 0), &Point::new(0., 0., 1), &o).unwrap();
        assert_eq!(ha, 0.0);
        let ha = horizon_angle(&a, &Point::new(2., 2., 1), &o).unwrap();
        assert!((ha - FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(
            horizon_angle(&a, &Point::new(2., 0., 3), &o),
            Err(HullError::ZeroLengthLeg)
        ));
    }

    #[test]
    fn canonical_square_from_clockwise() {
        let p = pts(&[(1., 1.), (0., 0.), (0., 1.), (1., 0.)]);
        // clockwise starting at (1,1): (1,1) (1,0) (0,0) (0,1)
        let hull = canonicalize_hull(&[0, 3, 1, 2], &p).unwrap();
        assert_eq!(hull.vertices, vec![1, 3, 0, 2]);
    }

    #[test]
    fn canonical_collinear_collapse() {
        let p = pts(&[(0., 0.), (1., 0.), (2., 0.)]);
        assert_eq!(canonicalize_hull(&[0, 1, 2], &p).unwrap().vertices, vec![0, 2]);
        assert!(matches!(canonicalize_hull(&[], &p), Err(HullError::EmptyHull)));
    }

    #[test]
    fn canonical_strips_edge_points_and_duplicates() {
        let p = pts(&[(0., 0.), (1., 0.), (2., 0.), (2., 2.), (0., 2.), (2., 2.)]);
        let hull = canonicalize_hull(&[0, 1, 2, 5, 4], &p).unwrap();
        assert_eq!(hull.vertices, vec![0, 2, 3, 4]);
    }

    fn coord() -> impl Strategy<Value = f64> {
        (-1000i32..1000).prop_map(|v| v as f64 / 8.0)
    }

    fn point() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| Point::new(x, y, 0))
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric(a in point(), b in point(), c in point()) {
            prop_assert_eq!(orientation(&a, &b, &c), orientation(&a, &c, &b).reversed());
            prop_assert_eq!(orientation(&a, &b, &c), exact_orientation(&a, &b, &c));
        }

        #[test]
        fn orientation_exact_on_arbitrary_floats(
            ax in -1e3f64..1e3, ay in -1e3f64..1e3,
            bx in -1e3f64..1e3, by in -1e3f64..1e3,
            t in 0.0f64..1.0,
        ) {
            // c sits (up to rounding) on the line ab: the hard case
            let a = Point::new(ax, ay, 0);
            let b = Point::new(bx, by, 1);
            let c = Point::new(ax + t * (bx - ax), ay + t * (by - ay), 2);
            prop_assert_eq!(orientation(&a, &b, &c), exact_orientation(&a, &b, &c));
        }

        #[test]
        fn horizon_angle_reflection_symmetric(
            ax in 0.5f64..10.0, px in -10.0f64..10.0, py in 0.01f64..10.0,
        ) {
            let o = Center { x: 0.0, y: 0.0 };
            let anchor = Point::new(ax, 0.0, 0);
            let up = horizon_angle(&anchor, &Point::new(px, py, 1), &o).unwrap();
            let down = horizon_angle(&anchor, &Point::new(px, -py, 1), &o).unwrap();
            prop_assert!((up - down).abs() <= 1e-15);
            prop_assert!((0.0..=PI).contains(&up));
        }

        #[test]
        fn polar_round_trip(coords in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..40)) {
            let points = Point::from_coords(&coords);
            let c = compute_center(&points).unwrap();
            if let Ok(polar) = to_polar(&points, &c) {
                let far = polar.iter().enumerate()
                    .max_by(|a, b| a.1.r.total_cmp(&b.1.r).then(b.0.cmp(&a.0)))
                    .unwrap().0;
                prop_assert_eq!(polar[far].theta, 0.0);
                for (p, v) in points.iter().zip(&polar) {
                    prop_assert!((0.0..TAU).contains(&v.theta));
                    let (x, y) = v.to_cartesian(&c);
                    let scale = p.x.abs().max(p.y.abs()).max(c.x.abs()).max(c.y.abs()).max(v.r);
                    let tol = 8.0 * f64::EPSILON * scale;
                    prop_assert!((x - p.x).abs() <= tol, "x {} vs {}", x, p.x);
                    prop_assert!((y - p.y).abs() <= tol, "y {} vs {}", y, p.y);
                    prop_assert!((v.r - (p.x - c.x).hypot(p.y - c.y)).abs() <= f64::EPSILON * v.r);
                }
            }
        }

        #[test]
        fn center_inside_bounding_box(coords in prop::collection::vec((coord(), coord()), 1..60)) {
            let points = Point::from_coords(&coords);
            let c = compute_center(&points).unwrap();
            let (mut lx, mut hx, mut ly, mut hy) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
            for p in &points {
                lx = lx.min(p.x); hx = hx.max(p.x); ly = ly.min(p.y); hy = hy.max(p.y);
            }
            prop_assert!(lx <= c.x && c.x <= hx && ly <= c.y && c.y <= hy);
        }
    }
}
