//! Draw a blobs dataset with its hull, horizon fence and 10 degree bins.
//! Writes to the path given as the first argument, or a temp file.

use std::path::PathBuf;

use polarhull::binning::BinConfig;
use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::hulls::graham_scan;
use polarhull::pipeline::horizon_reduced_fence;
use polarhull::render::render_svg;

fn main() -> polarhull::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("polarhull-blobs.svg"));
    let points = generate(&DatasetSpec::new(Family::Blobs, 5000, 5))?;
    let hull = graham_scan(&points);
    let fence = horizon_reduced_fence(&points, 10f64.to_radians())?;
    let bins = BinConfig::from_degrees(10.0)?;
    render_svg(&points, &hull, Some(&fence), Some(&bins), &out)?;
    println!("hull {} vertices, fence {} points -> {}", hull.len(), fence.len(), out.display());
    Ok(())
}
