//! Generate every dataset family, write it in both formats and read it back.

use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::io::{load_points, save_points, Format};
use polarhull::pipeline::{hull_via_horizon_reduction, FinalAlgorithm};

fn main() -> polarhull::Result<()> {
    let dir = std::env::temp_dir().join("polarhull-datasets");
    std::fs::create_dir_all(&dir).map_err(|e| polarhull::HullError::Io { path: dir.clone(), source: e })?;
    for family in Family::ALL {
        let spec = DatasetSpec::new(family, 2000, 42);
        let points = generate(&spec)?;
        for (format, ext) in [(Format::XyWhitespace, "xy"), (Format::Csv, "csv")] {
            let path = dir.join(format!("{family}.{ext}"));
            save_points(&path, &points, format)?;
            assert_eq!(load_points(&path, format)?, points);
        }
        let (hull, report) = hull_via_horizon_reduction(&points, 2f64.to_radians(), FinalAlgorithm::Graham)?;
        println!(
            "{family:>16}: hull {:>4}, reduced to {:>4} ({:.1}% removed)",
            hull.len(),
            report.reduced_size,
            report.reduction_percent
        );
    }
    println!("files in {}", dir.display());
    Ok(())
}
