//! The full pipeline on one descriptor: validation, presentation,
//! three-way Hilbert table, Lie dimensions, sphere decomposition, rational
//! ranks, growth report — as the machine-readable JSON document or the
//! text rendering.
//!
//!     cargo run --release --example report -- [descriptor.json] [json|text]

use pontryagin::format::{full_report, read_descriptor, to_json, to_text};
use pontryagin::report::ReportOptions;
use std::path::PathBuf;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/x3.json")
    });
    let format = std::env::args().nth(2).unwrap_or_else(|| "text".into());
    let desc = read_descriptor(&path).expect("readable descriptor");
    let opts = ReportOptions {
        max_degree: 8,
        ..Default::default()
    };
    let doc = full_report(&desc, &opts, None).expect("report");
    match format.as_str() {
        "json" => print!("{}", to_json(&doc)),
        _ => print!("{}", to_text(&doc)),
    }
}
