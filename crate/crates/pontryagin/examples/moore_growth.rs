//! Exponential growth of the loop homology and what it means for torsion:
//! every loop degree in the window carries Lie algebra generators, the
//! Hilbert coefficients grow like the reciprocal of the denominator's
//! smallest positive root, and sphere summands of unbounded dimension
//! force unbounded p-torsion for almost all primes.
//!
//!     cargo run --release --example moore_growth

use pontryagin::format::read_descriptor;
use pontryagin::manifold::{presentation_of, validate};
use pontryagin::report::{moore_report, sphere_decomposition, ReportOptions};
use std::path::PathBuf;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/x3.json")
    });
    let desc = read_descriptor(&path).expect("readable descriptor");
    let v = validate(&desc).expect("valid descriptor");
    let p = presentation_of(&v).expect("presentation");

    let dec = sphere_decomposition(&p, 13, &ReportOptions::default()).expect("decomposition");
    let rep = moore_report(&p, &dec).expect("growth report");
    let (a, b) = rep.window.unwrap();
    println!(
        "window {a}..{b}: every degree populated: {}",
        rep.window_fully_populated
    );
    println!("largest sphere summand seen: S^{}", rep.max_sphere_dimension);
    println!("reference growth ratio: {}", rep.reference_ratio);
    for row in &rep.growth {
        println!(
            "  a_{} / a_{} = {}{}",
            row.degree,
            row.degree - 1,
            row.ratio,
            if row.within_tolerance { "  (within 5%)" } else { "" }
        );
    }
    println!("\n{}", rep.conclusion);
}
