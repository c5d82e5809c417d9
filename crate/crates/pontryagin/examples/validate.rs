//! Validate a manifold descriptor against the connectivity/dimension
//! hypotheses and Poincaré duality, listing every violation.
//!
//!     cargo run --example validate -- [descriptor.json]

use pontryagin::format::read_descriptor;
use pontryagin::manifold::{hyperbolicity, validate};
use std::path::PathBuf;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/x3.json")
    });
    let desc = read_descriptor(&path).expect("readable descriptor");
    println!(
        "descriptor {:?}: n={}, d={}, generator degrees {:?}",
        desc.name, desc.connectivity, desc.dimension, desc.generator_degrees
    );
    match validate(&desc) {
        Ok(v) => {
            println!(
                "valid: r = {}, total rank of H* = {}, {:?}",
                v.r(),
                v.total_rank(),
                hyperbolicity(&v)
            );
        }
        Err(violations) => {
            println!("invalid ({} violations):", violations.len());
            for v in violations {
                println!("  - {v}");
            }
            std::process::exit(1);
        }
    }

    // a deliberately broken descriptor: dimension outside d <= 3n-2 and a
    // generator degree outside [n, d-n]
    let mut broken = desc;
    broken.dimension = 5;
    println!("\nperturbed copy with d=5:");
    match validate(&broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(violations) => {
            for v in violations {
                println!("  - {v}");
            }
        }
    }
}
