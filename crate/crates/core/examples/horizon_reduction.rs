//! Input reduction by horizon computation, then a classical hull on what is
//! left. Prints the key=value report.

use std::time::Instant;

use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::hulls::jarvis_march;
use polarhull::pipeline::{hull_via_horizon_reduction, FinalAlgorithm};

fn main() -> polarhull::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let points = generate(&DatasetSpec::new(Family::DiskUniform, n, 1))?;

    let (hull, report) = hull_via_horizon_reduction(&points, 2f64.to_radians(), FinalAlgorithm::Jarvis)?;
    println!("{report}");

    let start = Instant::now();
    let raw = jarvis_march(&points);
    let raw_ms = start.elapsed().as_secs_f64() * 1e3;
    assert_eq!(raw, hull);
    println!(
        "jarvis on all {n} points: {raw_ms:.1} ms, with reduction: {:.1} ms",
        report.elapsed.total().as_secs_f64() * 1e3
    );
    Ok(())
}
