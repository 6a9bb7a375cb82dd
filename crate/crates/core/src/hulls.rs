//! Baseline hull constructions and the brute-force oracle.
//!
//! The `*_chain` helpers work on a subset of positions inside a larger point
//! slice and return an unordered-start counter-clockwise ring of positions,
//! so the pipelines can run them on reduced sets and still canonicalize
//! against the full dataset.

use std::cmp::Ordering;

use crate::fence::{enforce_convexity, FencePointList};
use crate::geometry::{canonicalize_hull, orientation, within_box, Hull, Orientation, Point};

fn spread(a: &Point, b: &Point) -> f64 {
    (b.x - a.x).abs() + (b.y - a.y).abs()
}

/// Graham scan over `subset`: sort by angle about the lowest point, then a
/// stack scan keeping strict left turns.
pub(crate) fn graham_chain(points: &[Point], subset: &[usize]) -> Vec<usize> {
    let Some(&pivot) = subset.iter().min_by(|&&a, &&b| {
        let (p, q) = (&points[a], &points[b]);
        p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
    }) else {
        return Vec::new();
    };
    let o = points[pivot];
    let mut rest: Vec<usize> = subset
        .iter()
        .copied()
        .filter(|&i| !points[i].same_position(&o))
        .collect();
    rest.sort_by(|&a, &b| match orientation(&o, &points[a], &points[b]) {
        Orientation::CounterClockwise => Ordering::Less,
        Orientation::Clockwise => Ordering::Greater,
        // nearer first so the scan discards it
        Orientation::Collinear => spread(&o, &points[a])
            .total_cmp(&spread(&o, &points[b]))
            .then(a.cmp(&b)),
    });
    let mut stack = vec![pivot];
    for i in rest {
        while stack.len() >= 2
            && orientation(&points[stack[stack.len() - 2]], &points[stack[stack.len() - 1]], &points[i])
                != Orientation::CounterClockwise
        {
            stack.pop();
        }
        if stack.len() == 1 || !points[i].same_position(&points[*stack.last().unwrap()]) {
            stack.push(i);
        }
    }
    stack
}

/// Gift wrapping over `subset`, starting at the lexicographically smallest
/// point and always taking the most clockwise candidate (farthest on ties).
pub(crate) fn jarvis_chain(points: &[Point], subset: &[usize]) -> Vec<usize> {
    let Some(&start) = subset
        .iter()
        .min_by(|&&a, &&b| points[a].lex_cmp(&points[b]))
    else {
        return Vec::new();
    };
    let mut ring = vec![start];
    let mut current = start;
    for _ in 0..=subset.len() {
        let c = points[current];
        let mut cand: Option<usize> = None;
        for &q in subset {
            // zero-length candidate edges would never advance
            if points[q].same_position(&c) {
                continue;
            }
            cand = match cand {
                None => Some(q),
                Some(best) => {
                    let b = &points[best];
                    match orientation(&c, b, &points[q]) {
                        Orientation::Clockwise => Some(q),
                        Orientation::Collinear if spread(&c, &points[q]) > spread(&c, b) => Some(q),
                        _ => Some(best),
                    }
                }
            };
        }
        let Some(next) = cand else { break };
        if points[next].same_position(&points[start]) {
            break;
        }
        ring.push(next);
        current = next;
    }
    ring
}

pub fn graham_scan(points: &[Point]) -> Hull {
    let all: Vec<usize> = (0..points.len()).collect();
    canonical(graham_chain(points, &all), points)
}

pub fn jarvis_march(points: &[Point]) -> Hull {
    let all: Vec<usize> = (0..points.len()).collect();
    canonical(jarvis_chain(points, &all), points)
}

fn canonical(ring: Vec<usize>, points: &[Point]) -> Hull {
    canonicalize_hull(&ring, points).unwrap_or(Hull { vertices: Vec::new() })
}

/// Graham's stack scan over a contour that is already in polar order about
/// an interior point; no sorting takes place.
pub fn contour_scan_hull(contour: &FencePointList, points: &[Point]) -> Hull {
    canonical(enforce_convexity(contour, points).indices(), points)
}

/// O(n^3) oracle: (p, q) is a hull edge iff no point lies strictly right of
/// p -> q and no collinear point lies beyond the segment.
pub fn brute_force_hull(points: &[Point]) -> Hull {
    let n = points.len();
    if n == 0 {
        return Hull { vertices: Vec::new() };
    }
    let is_edge = |p: usize, q: usize| {
        let (a, b) = (&points[p], &points[q]);
        points.iter().all(|r| match orientation(a, b, r) {
            Orientation::CounterClockwise => true,
            Orientation::Clockwise => false,
            Orientation::Collinear => within_box(a, b, r),
        })
    };
    let mut succ: Vec<Option<usize>> = vec![None; n];
    for p in 0..n {
        for q in 0..n {
            if points[p].same_position(&points[q]) || !is_edge(p, q) {
                continue;
            }
            // keep the nearest endpoint so collinear runs chain vertex by vertex
            let better = match succ[p] {
                None => true,
                Some(s) => spread(&points[p], &points[q]) < spread(&points[p], &points[s]),
            };
            if better {
                succ[p] = Some(q);
            }
        }
    }
    let Some(start) = (0..n)
        .filter(|&p| succ[p].is_some())
        .min_by(|&a, &b| points[a].lex_cmp(&points[b]))
    else {
        // every point shares one position
        return canonical(vec![0], points);
    };
    let mut ring = vec![start];
    let mut cur = start;
    while let Some(next) = succ[cur] {
        if points[next].same_position(&points[start]) || ring.len() > n {
            break;
        }
        ring.push(next);
        cur = next;
    }
    canonical(ring, points)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use rand::{Rng, SeedableRng};

    use super::*;

    fn random(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|i| Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), i))
            .collect()
    }

    #[test]
    fn square_with_center() {
        let p = Point::from_coords(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0.5, 0.5)]);
        for h in [graham_scan(&p), jarvis_march(&p), brute_force_hull(&p)] {
            assert_eq!(h.vertices, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn collinear_triple() {
        let p = Point::from_coords(&[(1., 1.), (0., 0.), (2., 2.)]);
        for h in [graham_scan(&p), jarvis_march(&p), brute_force_hull(&p)] {
            assert_eq!(h.vertices, vec![1, 2]);
        }
    }

    #[test]
    fn triangle_and_degenerates() {
        let p = Point::from_coords(&[(0., 0.), (4., 0.), (1., 3.)]);
        for h in [graham_scan(&p), jarvis_march(&p), brute_force_hull(&p)] {
            assert_eq!(h.vertices, vec![0, 1, 2]);
        }
        let one = Point::from_coords(&[(2., 2.)]);
        let dup = Point::from_coords(&[(2., 2.), (2., 2.), (2., 2.)]);
        for p in [&one, &dup] {
            for h in [graham_scan(p), jarvis_march(p), brute_force_hull(p)] {
                assert_eq!(h.vertices, vec![0]);
            }
        }
        let two = Point::from_coords(&[(3., 0.), (1., 1.)]);
        assert_eq!(graham_scan(&two).vertices, vec![1, 0]);
        assert_eq!(jarvis_march(&two).vertices, vec![1, 0]);
        assert_eq!(brute_force_hull(&two).vertices, vec![1, 0]);
    }

    #[test]
    fn regular_polygon_all_vertices() {
        let p: Vec<Point> = (0..100)
            .map(|i| {
                let t = i as f64 * TAU / 100.0;
                Point::new(t.cos(), t.sin(), i)
            })
            .collect();
        let g = graham_scan(&p);
        assert_eq!(jarvis_march(&p), g);
        assert_eq!(brute_force_hull(&p), g);
        // exact circle coordinates may leave a few vertices collinear after rounding
        assert!(g.len() >= 96, "{}", g.len());
    }

    #[test]
    fn square_with_interior_grid() {
        let mut coords = vec![];
        for i in 0..=10 {
            for j in 0..=10 {
                coords.push((i as f64, j as f64));
            }
        }
        let p = Point::from_coords(&coords);
        let h = brute_force_hull(&p);
        assert_eq!(h.vertices, vec![0, 110, 120, 10]);
        assert_eq!(graham_scan(&p), h);
        assert_eq!(jarvis_march(&p), h);
    }

    #[test]
    fn random_agreement() {
        for seed in 0..200 {
            let n = 3 + (seed as usize * 7) % 200;
            let p = random(n, seed);
            let oracle = brute_force_hull(&p);
            assert_eq!(graham_scan(&p), oracle, "seed {seed}");
            assert_eq!(jarvis_march(&p), oracle, "seed {seed}");
            for &v in &oracle.vertices {
                assert_eq!(p[v].index, v);
            }
        }
    }

    #[test]
    fn hull_of_hull_is_hull() {
        let p = random(300, 99);
        let h = graham_scan(&p);
        let sub: Vec<Point> = h.vertices.iter().map(|&v| p[v]).collect();
        let again = graham_scan(&sub);
        let mapped: Vec<usize> = again.vertices.iter().map(|&v| sub.iter().position(|q| q.index == v).unwrap()).collect();
        assert_eq!(mapped.iter().map(|&i| sub[i].index).collect::<Vec<_>>(), h.vertices);
    }

    #[test]
    fn contour_scan_examples() {
        use crate::fence::{FencePointList, FenceSource};
        use crate::geometry::{compute_center, to_polar};

        let p = Point::from_coords(&[(2., 0.), (1., 1.), (0., 2.), (-1., 0.), (0., -1.)]);
        let c = compute_center(&p).unwrap();
        let polar = to_polar(&p, &c).unwrap();
        let convex = FencePointList::from_positions(&[0, 2, 3, 4], FenceSource::MaximalBin, &polar).unwrap();
        let h = contour_scan_hull(&convex, &p);
        assert_eq!(h.vertices, vec![3, 4, 0, 2]);
        let all = FencePointList::from_positions(&[0, 1, 2, 3, 4], FenceSource::MaximalBin, &polar).unwrap();
        assert_eq!(contour_scan_hull(&all, &p), h);
        let dented = Point::from_coords(&[(2., 0.), (0.5, 0.5), (0., 2.), (-1., 0.), (0., -1.)]);
        let polar = to_polar(&dented, &compute_center(&dented).unwrap()).unwrap();
        let fence = FencePointList::from_positions(&[0, 1, 2, 3, 4], FenceSource::MaximalBin, &polar).unwrap();
        assert_eq!(contour_scan_hull(&fence, &dented).vertices, vec![3, 4, 0, 2]);
    }
}
