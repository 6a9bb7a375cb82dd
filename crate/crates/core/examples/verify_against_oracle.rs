//! Every algorithm against the brute-force oracle on a sweep of seeded
//! datasets, including collinear and duplicate-heavy ones.

use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::geometry::Point;
use polarhull::hulls::{brute_force_hull, graham_scan, jarvis_march};
use polarhull::pipeline::{divide_and_conquer, hull_via_contour_scanning, hull_via_horizon_reduction, FinalAlgorithm, Scheme};

fn check(points: &[Point]) -> polarhull::Result<bool> {
    let oracle = brute_force_hull(points);
    let rad = f64::to_radians;
    let hulls = [
        graham_scan(points),
        jarvis_march(points),
        hull_via_horizon_reduction(points, rad(10.0), FinalAlgorithm::Graham)?.0,
        hull_via_contour_scanning(points, rad(1.0), 20)?.0,
        divide_and_conquer(points, Scheme::OrderedPolar, 16)?.0,
        divide_and_conquer(points, Scheme::Unordered, 16)?.0,
    ];
    Ok(hulls.iter().all(|h| *h == oracle))
}

fn main() -> polarhull::Result<()> {
    let mut total = 0;
    for family in Family::ALL {
        for seed in 0..20 {
            let points = generate(&DatasetSpec::new(family, 50 + 20 * seed as usize, seed))?;
            assert!(check(&points)?, "{family} seed {seed}");
            total += 1;
        }
    }
    let line = Point::from_coords(&[(0.0, 0.0), (2.0, 2.0), (1.0, 1.0), (2.0, 2.0)]);
    let dupes = Point::from_coords(&[(1.0, 1.0); 4]);
    assert!(check(&line)? && check(&dupes)?);
    println!("{} datasets agree with the oracle", total + 2);
    Ok(())
}
