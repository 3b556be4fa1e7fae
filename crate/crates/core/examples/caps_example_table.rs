//! Builds a pyramid over the six-row example table with CAPS and prints every
//! node with its object and extent.
//!
//! Usage: cargo run --example caps_example_table

use symbolic_pyramid::{check_pyramid, io, run_caps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = io::parse_table(include_str!("../fixtures/example_table.json"))?;
    let pyramid = run_caps(&table, 100)?;
    let s = &pyramid.structure;

    println!("order: {:?}", s.final_order);
    let doc = io::emit_pyramid(&pyramid, &table, None)?;
    for node in doc.nodes.iter().filter(|n| n.left != 0) {
        println!(
            "P{} = P{} + P{}  f = {:.6}  extent = {:?}",
            node.id, node.left, node.right, node.f, node.extent
        );
        println!("    {}", serde_json::to_string(&node.object)?);
    }

    let report = check_pyramid(s, &table);
    println!("\n{report}");
    Ok(())
}
