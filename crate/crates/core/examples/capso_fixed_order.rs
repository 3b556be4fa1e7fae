//! Builds a pyramid under a fixed row order with CAPSO, then shows what
//! happens when no merge along the order keeps extents additive.
//!
//! Usage: cargo run --example capso_fixed_order

use symbolic_pyramid::{check_pyramid, io, run_capso, Error};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = io::parse_table(include_str!("../fixtures/example_table.json"))?;
    let order = [6, 4, 2, 5, 3, 1];
    let pyramid = run_capso(&table, &order, 100)?;
    let s = &pyramid.structure;
    println!("requested order {order:?}, final order {:?}", s.final_order);
    for q in s.quadruples.iter().filter(|q| !q.is_terminal()) {
        println!(
            "P{:<3} = P{} + P{}  f = {:.6}  extent = {:?}",
            q.id,
            q.left(),
            q.right(),
            q.index,
            s.extent(q.id).unwrap()
        );
    }
    println!(
        "validator: {}",
        if check_pyramid(s, &table).passed() {
            "PASS"
        } else {
            "FAIL"
        }
    );

    let stuck = io::parse_table(
        r#"{
          "variables": [
            {"name": "i", "kind": "interval", "domain": [0, 10]},
            {"name": "c", "kind": "categorical", "domain": ["a", "b"]}
          ],
          "rows": [
            {"id": 1, "cells": [[0, 3], "a"]},
            {"id": 2, "cells": [[2, 5], "b"]},
            {"id": 3, "cells": [[0, 2.5], ["a", "b"]]}
          ]
        }"#,
    )?;
    match run_capso(&stuck, &[1, 2, 3], 10) {
        Err(e @ Error::NoAggregablePair { .. }) => {
            println!("\norder 1,2,3 on the second table: {e}")
        }
        other => println!("\nunexpected: {other:?}"),
    }
    Ok(())
}
