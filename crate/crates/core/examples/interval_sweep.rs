//! Reduced-set size and time across bin intervals for each family, the
//! shape of an interval-versus-time plot. Non-monotone rows are flagged.

use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::pipeline::{hull_via_horizon_reduction, FinalAlgorithm};

const INTERVALS: [f64; 5] = [90.0, 45.0, 10.0, 2.0, 1.0];

fn main() -> polarhull::Result<()> {
    println!("{:>16} {}", "family", INTERVALS.map(|d| format!("{d:>14}")).join(""));
    for family in Family::ALL {
        let points = generate(&DatasetSpec::new(family, 50_000, 12))?;
        let mut cells = Vec::new();
        let mut sizes = Vec::new();
        for d in INTERVALS {
            let (_, r) = hull_via_horizon_reduction(&points, d.to_radians(), FinalAlgorithm::Graham)?;
            sizes.push(r.reduced_size);
            cells.push(format!("{:>6} {:>5.1}ms", r.reduced_size, r.elapsed.total().as_secs_f64() * 1e3));
        }
        let monotone = sizes.windows(2).all(|w| w[1] <= w[0]);
        println!(
            "{family:>16} {}{}",
            cells.iter().map(|c| format!("{c:>14}")).collect::<String>(),
            if monotone { "" } else { "  (not monotone)" }
        );
    }
    Ok(())
}
