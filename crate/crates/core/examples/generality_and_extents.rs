//! Generalization, degree of generality and extents, including the graded
//! extent of modal objects.
//!
//! Usage: cargo run --example generality_and_extents

use symbolic_pyramid::{
    degree_of_generality, generalize, Description, Schema, SymbolicDataTable, SymbolicObject,
    VariableSchema,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let schema = Schema::new(vec![
        VariableSchema::interval("age", 0.0, 100.0)?,
        VariableSchema::categorical("sport", ["run", "swim", "bike"])?,
        VariableSchema::modal("mood", ["calm", "tense"])?,
    ])?;
    let v = schema.variables().to_vec();
    let rows = vec![
        Description::new(vec![
            v[0].interval_cell(20.0, 30.0)?,
            v[1].category_cell(["run"])?,
            v[2].modal_cell([("calm", 0.7), ("tense", 0.3)])?,
        ]),
        Description::new(vec![
            v[0].interval_cell(25.0, 40.0)?,
            v[1].category_cell(["run", "bike"])?,
            v[2].modal_cell([("calm", 0.4), ("tense", 0.6)])?,
        ]),
        Description::new(vec![
            v[0].interval_cell(22.0, 28.0)?,
            v[1].category_cell(["run"])?,
            v[2].modal_cell([("calm", 0.9), ("tense", 0.1)])?,
        ]),
        Description::new(vec![
            v[0].interval_cell(60.0, 70.0)?,
            v[1].category_cell(["swim"])?,
            v[2].modal_cell([("calm", 0.5), ("tense", 0.5)])?,
        ]),
    ];
    let table = SymbolicDataTable::new(schema.clone(), rows)?;

    for (id, row) in table.iter() {
        println!("row {id}: G = {:.4}", degree_of_generality(&schema, row)?);
    }

    let union = generalize(&schema, &table.rows()[..2])?;
    println!("\nunion of rows 1 and 2: {union:?}");
    println!("G = {:.4}", degree_of_generality(&schema, &union)?);

    let object = SymbolicObject::new(table.schema().clone(), union)?;
    println!("extent: {:?}", object.extent(&table)?);
    println!("complete: {}", object.is_complete(&table)?);
    for alpha in [1.0, 0.9, 0.6, 0.3] {
        println!(
            "extent at alpha {alpha}: {:?}",
            object.extent_at(&table, alpha)?
        );
    }
    for (id, row) in table.iter() {
        println!(
            "row {id} matches to degree {:.3}",
            object.match_degree(row)?
        );
    }
    Ok(())
}
