//! Writes the example pyramid as Graphviz DOT to standard output.
//!
//! Usage: cargo run --example dot_export | dot -Tsvg > pyramid.svg

use symbolic_pyramid::{io, run_caps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = io::parse_table(include_str!("../fixtures/example_table.json"))?;
    let pyramid = run_caps(&table, 100)?;
    print!("{}", io::emit_dot(&pyramid.structure));
    Ok(())
}
