//! Shared fixtures for the benchmarks.

use cis_core::{build_case, special_constituents, ParabolicCase, ParabolicSpec, SpecialConstituent};

/// Cases benchmarked end to end, smallest first.
pub const CASES: [&str; 4] = ["B7(3)", "D8(4)", "E6(3)", "E7(6)"];

/// The case and its first special constituent.
pub fn fixture(label: &str) -> (ParabolicCase, SpecialConstituent) {
    let spec: ParabolicSpec = label.parse().expect("valid label");
    let case = build_case(&spec).expect("supported case");
    let sc = special_constituents(&case).expect("special constituents").remove(0);
    (case, sc)
}
