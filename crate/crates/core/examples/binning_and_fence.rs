//! The reduction stages one at a time: polar frame, bins, boundary points,
//! fence, convexity filter and horizon computation.

use polarhull::binning::{assign_bins, compute_boundary_points, maximal_union, BinConfig};
use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::fence::{build_fence, enforce_convexity, FenceSource};
use polarhull::geometry::{compute_center, to_polar};
use polarhull::horizon::horizon_computation;
use polarhull::hulls::graham_scan;

fn main() -> polarhull::Result<()> {
    let points = generate(&DatasetSpec::new(Family::Clusters, 20_000, 3))?;
    let center = compute_center(&points)?;
    let polar = to_polar(&points, &center)?;
    println!("center ({:.4}, {:.4}), frame rotated by {:.4} rad", center.x, center.y, polar[0].frame_offset);

    let config = BinConfig::from_degrees(10.0)?;
    let table = assign_bins(&polar, config, true);
    println!("{} of {} bins occupied", table.occupied(), config.bin_count);

    let boundary = compute_boundary_points(&points);
    let maximal = maximal_union(&table);
    let fence = build_fence(&maximal, &boundary, &[], &polar)?;
    let convex = enforce_convexity(&fence, &points);
    println!(
        "maximal {} + boundary {} -> fence {} -> convex {}",
        maximal.len(),
        boundary.indices.len(),
        fence.len(),
        convex.len()
    );

    let horizon = horizon_computation(&table, &convex, &polar, &points, &center)?;
    println!(
        "horizon: {} candidates scanned, {} points recovered",
        horizon.candidates_scanned,
        horizon.points.len()
    );

    let rebuilt = build_fence(&convex.indices(), &boundary, &horizon.points, &polar)?;
    let reduced = enforce_convexity(&rebuilt, &points);
    let from_horizon = reduced.entries.iter().filter(|e| e.source == FenceSource::Horizon).count();
    println!("reduced set {} points ({from_horizon} from horizon)", reduced.len());
    println!("hull has {} vertices", graham_scan(&points).len());
    Ok(())
}
