//! Checks set families against the pyramid axioms and searches for a
//! compatible total order.
//!
//! Usage: cargo run --example validate_pyramid

use std::collections::BTreeSet;

use symbolic_pyramid::{check_pyramid, find_compatible_order, io, run_caps};

fn family(sets: &[&[usize]]) -> Vec<BTreeSet<usize>> {
    sets.iter().map(|s| s.iter().copied().collect()).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = io::parse_table(include_str!("../fixtures/example_table.json"))?;
    let pyramid = run_caps(&table, 100)?;
    let report = check_pyramid(&pyramid.structure, &table);
    println!("{report}");
    println!("{}\n", report.to_json());

    let members = pyramid.structure.member_sets()?;
    println!("witness order: {:?}", find_compatible_order(&members, 6)?);

    // A star: {1,2}, {1,3}, {1,4} cannot all be intervals of one order.
    let star = family(&[
        &[1],
        &[2],
        &[3],
        &[4],
        &[1, 2],
        &[1, 3],
        &[1, 4],
        &[1, 2, 3, 4],
    ]);
    println!("star family:   {:?}", find_compatible_order(&star, 4)?);
    let chain = family(&[
        &[1],
        &[2],
        &[3],
        &[4],
        &[3, 1],
        &[1, 4],
        &[2, 4],
        &[1, 2, 3, 4],
    ]);
    println!("chain family:  {:?}", find_compatible_order(&chain, 4)?);
    Ok(())
}
