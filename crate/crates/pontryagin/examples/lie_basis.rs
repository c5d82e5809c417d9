//! The standard Lyndon basis of the quadratic Lie algebra: bracketings of
//! Lyndon words kept greedily while their images stay linearly independent
//! in the quotient algebra. Each entry contributes the homotopy of a
//! sphere of dimension (loop degree + 1).
//!
//!     cargo run --release --example lie_basis -- [descriptor.json] [max-degree]

use pontryagin::format::read_descriptor;
use pontryagin::lyndon::standard_basis;
use pontryagin::manifold::{presentation_of, validate};
use pontryagin::quotient::{hilbert_denominator, QuotientEngine, DEFAULT_WORD_GUARD};
use pontryagin::series::lie_dimensions;
use std::path::PathBuf;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/y2.json")
    });
    let max_degree: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let desc = read_descriptor(&path).expect("readable descriptor");
    let v = validate(&desc).expect("valid descriptor");
    assert!(v.is_hyperbolic(), "the Lyndon basis table needs r >= 3");
    let p = presentation_of(&v).expect("presentation");

    let engine = QuotientEngine::new(p.ungraded.clone(), p.leading, DEFAULT_WORD_GUARD);
    let entries = standard_basis(&engine, max_degree).expect("standard basis");
    println!("deg  sphere  word        bracket");
    for e in &entries {
        let word: String = e.word.display_indices().iter().map(u32::to_string).collect();
        println!("{:>3}  S^{:<5} {:<11} {}", e.loop_degree, e.sphere_dim, word, e.bracket);
    }

    // cross-check: per-degree counts match the Möbius dimensions
    let q = hilbert_denominator(&p.alphabet, p.relation_degree(), max_degree as usize);
    let dims = lie_dimensions(&q, max_degree as usize).unwrap();
    for m in 1..=max_degree {
        let got = entries.iter().filter(|e| e.loop_degree == m).count() as u64;
        assert_eq!(got, dims[(m - 1) as usize], "count mismatch at degree {m}");
    }
    println!("counts match the Möbius dimensions {dims:?}");
}
