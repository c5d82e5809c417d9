//! The sphere-summand decomposition of the p-local homotopy groups:
//! multiplicities by Möbius/Witt inversion, witnesses from the standard
//! Lyndon basis, and the rational ranks they imply.
//!
//!     cargo run --release --example sphere_decomposition -- [descriptor.json]

use pontryagin::format::read_descriptor;
use pontryagin::manifold::{presentation_of, validate};
use pontryagin::report::{rational_ranks, sphere_decomposition, ReportOptions};
use std::path::PathBuf;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/x3.json")
    });
    let desc = read_descriptor(&path).expect("readable descriptor");
    let v = validate(&desc).expect("valid descriptor");
    let p = presentation_of(&v).expect("presentation");

    let s = 9;
    let dec = sphere_decomposition(&p, s, &ReportOptions::default()).expect("decomposition");
    println!("pi_*(M) through degree {s}, as a sum of sphere homotopy:");
    for (j, mult) in &dec.multiplicities {
        let witnesses = dec
            .witnesses
            .get(j)
            .map(|ws| {
                ws.iter()
                    .map(|w| w.display_indices().iter().map(u32::to_string).collect())
                    .collect::<Vec<String>>()
                    .join(",")
            })
            .unwrap_or_else(|| "(beyond witness budget)".into());
        println!("  pi_*(S^{j}) x {mult}   witnesses: {witnesses}");
    }
    println!("witnesses cross-checked to loop degree {}", dec.witness_max_degree);

    let ranks = rational_ranks(&dec);
    println!("\nrank of pi_s(M) (x) Q:");
    for (s, r) in ranks.iter().enumerate().filter(|(_, &r)| r > 0) {
        println!("  s={s}: {r}");
    }
    println!("\ncaveat: {}", dec.caveat);
}
