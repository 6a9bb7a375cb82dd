//! Contour scanning: halve the bin interval until the contour settles, then
//! scan it once.

use std::f64::consts::TAU;

use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::geometry::Point;
use polarhull::pipeline::{converged_contour, hull_via_contour_scanning};

fn main() -> polarhull::Result<()> {
    let pentagon: Vec<Point> = (0..5)
        .map(|i| {
            let t = i as f64 * TAU / 5.0;
            Point::new(t.cos(), t.sin(), i)
        })
        .collect();
    let (hull, report) = hull_via_contour_scanning(&pentagon, 1f64.to_radians(), 20)?;
    println!("pentagon: {hull} after {} halving(s)", report.iterations);

    for family in [Family::DiskUniform, Family::Blobs, Family::Sinusoid, Family::ConvexPosition] {
        let points = generate(&DatasetSpec::new(family, 5000, 9))?;
        let (contour, r) = converged_contour(&points, 1f64.to_radians(), 20)?;
        println!(
            "{family:>16}: contour {:>5} points, {:>2} halvings, final interval {:.2e} rad{}",
            contour.len(),
            r.iterations,
            r.final_interval,
            if r.contour_repaired { ", finished by floor repair" } else { "" }
        );
    }
    Ok(())
}
