//! The homotopy-type classification when H*(M;Q) has total rank at most
//! 4: a sphere, a James stage, a connected sum of James stages, or a
//! product of spheres, each valid after inverting finitely many primes.
//!
//!     cargo run --example classify_low_rank

use pontryagin::format::read_descriptor;
use pontryagin::manifold::{classify_low_rank, classify_parts, validate};
use pontryagin::rational::Rational;
use std::path::PathBuf;

fn main() {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    for file in ["sphere.json", "james.json", "s3xs4.json"] {
        let desc = read_descriptor(&data.join(file)).expect("readable descriptor");
        let v = validate(&desc).expect("valid descriptor");
        let t = classify_low_rank(&v).expect("classifiable");
        println!("{:<12} rank {}: {}", desc.name, v.total_rank(), t);
    }

    // rank 4 with equal middle degrees: the pairing decides between the
    // connected-sum James stage (anisotropic) and a product of spheres
    // (hyperbolic)
    let aniso = classify_parts(
        4,
        &[2, 2],
        &[
            vec![Rational::from_int(1), Rational::zero()],
            vec![Rational::zero(), Rational::from_int(1)],
        ],
    )
    .unwrap();
    let hyper = classify_parts(
        4,
        &[2, 2],
        &[
            vec![Rational::zero(), Rational::from_int(1)],
            vec![Rational::from_int(1), Rational::zero()],
        ],
    )
    .unwrap();
    println!("definite middle pairing  -> {aniso}");
    println!("hyperbolic middle pairing -> {hyper}");

    // a middle degree that graded commutativity cannot realize
    match classify_parts(6, &[3], &[vec![Rational::from_int(1)]]) {
        Err(e) => println!("odd middle degree        -> {e}"),
        Ok(t) => println!("unexpected: {t}"),
    }
}
