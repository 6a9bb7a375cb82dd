//! Divide and conquer with angle-ordered versus shuffled subproblems.
//! Ordered siblings are angle-disjoint, so merging them is cheap.

use polarhull::datasets::{generate, DatasetSpec, Family};
use polarhull::pipeline::{divide_and_conquer, hull_via_contour_scanning, Scheme};

fn main() -> polarhull::Result<()> {
    let points = generate(&DatasetSpec::new(Family::DiskUniform, 10_000, 4))?;
    let (direct, _) = hull_via_contour_scanning(&points, 1f64.to_radians(), 20)?;
    for leaf in [16, 64, 256] {
        let (ordered, ro) = divide_and_conquer(&points, Scheme::OrderedPolar, leaf)?;
        let (unordered, ru) = divide_and_conquer(&points, Scheme::Unordered, leaf)?;
        assert_eq!(ordered, direct);
        assert_eq!(unordered, direct);
        println!(
            "leaf {leaf:>3}: combine work ordered {:>6}, unordered {:>6}",
            ro.combine_work, ru.combine_work
        );
    }
    Ok(())
}
