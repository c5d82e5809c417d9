//! Loop-space homology of highly connected manifolds, and what it says
//! about their homotopy groups.
//!
//! Given the rational cohomology data of a closed (n-1)-connected manifold
//! of dimension d <= 3n-2 (generator degrees plus the Poincaré pairing),
//! this crate computes:
//!
//! - the quadratic presentation of the Pontryagin ring of the based loop
//!   space, normalized so a Diamond-lemma basis is available
//!   ([`manifold`], [`quotient`]);
//! - its Hilbert series three independent ways: generating series,
//!   avoiding-word enumeration, and an exact Gaussian-elimination oracle
//!   on ideal slices, cross-checked degree by degree ([`quotient`],
//!   [`report`]);
//! - a standard Lyndon basis of the associated quadratic Lie algebra by
//!   greedy linear independence in the quotient ([`lyndon`]);
//! - the decomposition of the p-local homotopy groups into homotopy
//!   groups of spheres, with multiplicities from Möbius/Witt inversion
//!   and Lyndon-word witnesses, plus rational ranks and an
//!   exponential-growth report ([`series`], [`report`]);
//! - the homotopy-type classification when the total rank of H* is at
//!   most 4 ([`manifold`]).
//!
//! All arithmetic is exact; there is no floating point anywhere.
//!
//! The `examples/` directory has one runnable example per capability;
//! `pontryagin --help` describes the thin CLI over the same pipeline.

pub mod error;
pub mod format;
pub mod lyndon;
pub mod manifold;
pub mod quotient;
pub mod rational;
pub mod report;
pub mod series;
pub mod word;

pub use error::{Error, Result};
pub use rational::Rational;
