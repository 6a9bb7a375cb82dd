//! Hulls of a small point set with the classical algorithms and the oracle.

use polarhull::geometry::Point;
use polarhull::hulls::{brute_force_hull, graham_scan, jarvis_march};

fn main() {
    let points = Point::from_coords(&[
        (0.0, 0.0),
        (4.0, 0.0),
        (4.0, 3.0),
        (2.0, 1.0),
        (0.0, 3.0),
        (2.0, 0.0), // on the bottom edge, not a vertex
        (1.0, 2.0),
    ]);

    let graham = graham_scan(&points);
    let jarvis = jarvis_march(&points);
    let oracle = brute_force_hull(&points);
    println!("graham: {graham}");
    println!("jarvis: {jarvis}");
    println!("oracle: {oracle}");
    assert_eq!(graham, oracle);
    assert_eq!(jarvis, oracle);

    // canonical form: counter-clockwise from the lexicographically smallest vertex
    for &v in &oracle.vertices {
        println!("  vertex {v}: ({}, {})", points[v].x, points[v].y);
    }
}
