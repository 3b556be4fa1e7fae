//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symbolic_pyramid::engine::default_max_iterations;
use symbolic_pyramid::{
    check_pyramid, degree_of_generality, find_compatible_order, fuzz, io, run_caps, run_capso,
    Cell, Description, Interval, Pyramid, Schema, SymbolicDataTable, VariableSchema,
};

const FUZZ_TABLES: u64 = 200;
const FUZZ_SEED: u64 = 0x5eed;
const ORDERS_PER_TABLE: usize = 5;
const THEOREM_BUDGET: Duration = Duration::from_secs(30);
const INDEX_TOLERANCE: f64 = 1e-9;
const GENERALITY_TOLERANCE: f64 = 1e-12;
const GENERALITY_SAMPLES: usize = 50;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn fuzz_tables() -> Vec<(u64, SymbolicDataTable)> {
    (0..FUZZ_TABLES)
        .map(|k| {
            let seed = FUZZ_SEED + k;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=8);
            let p = rng.gen_range(1..=4);
            (seed, fuzz::random_table(&mut rng, n, p))
        })
        .collect()
}

fn example_table() -> SymbolicDataTable {
    io::parse_table(include_str!("../fixtures/example_table.json")).expect("fixture parses")
}

fn main() -> ExitCode {
    let tables = fuzz_tables();
    let example = example_table();
    let mut runs: Vec<(&SymbolicDataTable, Pyramid)> = Vec::new();
    let mut results: Vec<(&str, Outcome)> = Vec::new();

    // 1
    let start = Instant::now();
    let mut ok = 0;
    let mut failed_runs = 0;
    let mut problems = Vec::new();
    for (seed, t) in &tables {
        match run_caps(t, default_max_iterations(t.len())) {
            Ok(p) => {
                let report = check_pyramid(&p.structure, t);
                let witness = p
                    .structure
                    .member_sets()
                    .ok()
                    .and_then(|family| find_compatible_order(&family, t.len()).ok().flatten());
                if report.passed() && witness.is_some() {
                    ok += 1;
                } else {
                    problems.push(format!("seed {seed}: {}", report.violations.join("; ")));
                }
                runs.push((t, p));
            }
            Err(e) if e.is_algorithm_failure() => failed_runs += 1,
            Err(e) => problems.push(format!("seed {seed}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    results.push((
        "1 caps on fuzzed tables builds valid pyramids",
        Outcome::new(
            problems.is_empty() && elapsed < THEOREM_BUDGET,
            format!(
                "{ok} valid, {failed_runs} clean failures, {} problems, {:.2?}{}",
                problems.len(),
                elapsed,
                problems
                    .first()
                    .map(|p| format!(" [{p}]"))
                    .unwrap_or_default()
            ),
        ),
    ));

    // 2
    let mut ok = 0;
    let mut clean = 0;
    let mut problems = Vec::new();
    for (seed, t) in &tables {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0de);
        for _ in 0..ORDERS_PER_TABLE {
            let order = fuzz::random_order(&mut rng, t.len());
            let run = catch_unwind(AssertUnwindSafe(|| {
                run_capso(t, &order, default_max_iterations(t.len()))
            }));
            match run {
                Ok(Ok(p)) => {
                    let report = check_pyramid(&p.structure, t);
                    if report.passed() {
                        ok += 1;
                    } else {
                        problems.push(format!(
                            "seed {seed} order {order:?}: {}",
                            report.violations.join("; ")
                        ));
                    }
                    runs.push((t, p));
                }
                Ok(Err(e)) if e.is_algorithm_failure() => clean += 1,
                Ok(Err(e)) => problems.push(format!("seed {seed} order {order:?}: {e}")),
                Err(_) => problems.push(format!("seed {seed} order {order:?}: panic")),
            }
        }
    }
    results.push((
        "2 capso on fuzzed tables and random orders",
        Outcome::new(
            problems.is_empty(),
            format!(
                "{ok} valid, {clean} clean failures, {} problems{}",
                problems.len(),
                problems
                    .first()
                    .map(|p| format!(" [{p}]"))
                    .unwrap_or_default()
            ),
        ),
    ));

    // 3
    let outcome = match run_caps(&example, default_max_iterations(example.len())) {
        Ok(p) => {
            let outcome = example_fixture(&example, &p);
            runs.push((&example, p));
            outcome
        }
        Err(e) => Outcome::new(false, format!("caps failed: {e}")),
    };
    results.push(("3 example table clusters {4,5} and {1,3}", outcome));

    // 4
    let mut nodes = 0;
    let mut problems = Vec::new();
    for (t, p) in &runs {
        let s = &p.structure;
        for (q, (object, extent)) in s.quadruples.iter().zip(s.objects.iter().zip(&s.extents)) {
            nodes += 1;
            let complete = object.is_complete(t).unwrap_or(false);
            let recomputed = object.extent(t).ok();
            if !complete || recomputed.as_ref() != Some(extent) {
                problems.push(format!(
                    "node {}: complete={complete} extent {extent:?} vs {recomputed:?}",
                    q.id
                ));
            }
        }
    }
    results.push((
        "4 every node is complete with its recorded extent",
        Outcome::new(
            problems.is_empty(),
            format!(
                "{nodes} nodes over {} outputs, {} problems",
                runs.len(),
                problems.len()
            ),
        ),
    ));

    // 5
    let mut edges = 0;
    let mut worst = f64::INFINITY;
    for (_, p) in &runs {
        let s = &p.structure;
        for q in &s.quadruples {
            if let Some((l, r)) = q.children {
                edges += 1;
                let fl = s.quadruple(l).map_or(f64::NAN, |c| c.index);
                let fr = s.quadruple(r).map_or(f64::NAN, |c| c.index);
                worst = worst.min(q.index - fl.max(fr));
            }
        }
    }
    results.push((
        "5 index never decreases from child to parent",
        Outcome::new(
            edges > 0 && worst >= -INDEX_TOLERANCE,
            format!("{edges} merges, smallest margin {worst:.3e}"),
        ),
    ));

    // 6
    results.push((
        "6 generality matches direct evaluation",
        generality_oracle(),
    ));

    // 7
    let mut compared = 0;
    let mut problems = Vec::new();
    let mut determinism = |label: String, t: &SymbolicDataTable, order: Option<Vec<usize>>| {
        let build = || -> Result<String, String> {
            let p = match &order {
                Some(o) => run_capso(t, o, default_max_iterations(t.len())),
                None => run_caps(t, default_max_iterations(t.len())),
            }
            .map_err(|e| e.to_string())?;
            Ok(io::emit_pyramid(&p, t, Some(0.5))
                .map_err(|e| e.to_string())?
                .to_json())
        };
        match (build(), build()) {
            (Ok(a), Ok(b)) if a == b => compared += 1,
            (Err(a), Err(b)) if a == b => {}
            _ => problems.push(label),
        }
    };
    determinism("example".into(), &example, None);
    determinism(
        "example capso".into(),
        &example,
        Some(vec![6, 4, 2, 5, 3, 1]),
    );
    for (seed, t) in &tables {
        determinism(format!("seed {seed}"), t, None);
    }
    results.push((
        "7 identical input gives byte-identical documents",
        Outcome::new(
            problems.is_empty(),
            format!("{compared} document pairs, {} mismatches", problems.len()),
        ),
    ));

    // 8
    results.push(("8 one and two row tables", degenerate_cases()));

    let mut all = true;
    for (name, outcome) in &results {
        all &= outcome.passed;
        println!(
            "{} {name}: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn example_fixture(table: &SymbolicDataTable, p: &Pyramid) -> Outcome {
    let s = &p.structure;
    let y2 = &table.schema().variables()[1];
    let check = |members: &[usize], interval: (f64, f64), label: &str| -> Result<(), String> {
        let members: BTreeSet<usize> = members.iter().copied().collect();
        let id = s
            .find_node(&members)
            .ok_or_else(|| format!("no node {members:?}"))?;
        if s.extent(id) != Some(&members) {
            return Err(format!("node {id} extent {:?}", s.extent(id)));
        }
        let cells = s.object(id).expect("node object").description().cells();
        let expected_y2 = y2.category_cell([label]).expect("label exists");
        if cells[0] != Cell::Interval(Interval::new(interval.0, interval.1))
            || cells[1] != expected_y2
        {
            return Err(format!("node {id} object {:?} {:?}", cells[0], cells[1]));
        }
        Ok(())
    };
    let checks = [
        check(&[4, 5], (1.0, 4.0), "1"),
        check(&[1, 3], (1.0, 5.0), "2"),
    ];
    let report = check_pyramid(s, table);
    let order_ok = s.final_order == [5, 4, 2, 1, 3, 6];
    let errors: Vec<String> = checks.into_iter().filter_map(Result::err).collect();
    Outcome::new(
        errors.is_empty() && report.passed() && order_ok,
        if errors.is_empty() {
            format!(
                "{} nodes, order {:?}, validator {}",
                s.node_count(),
                s.final_order,
                report.passed()
            )
        } else {
            errors.join("; ")
        },
    )
}

fn generality_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED ^ 0x6e6e);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut evaluate = |var: VariableSchema, cell: Cell, expected: f64| {
        let schema = Schema::new(vec![var]).expect("one variable");
        let g =
            degree_of_generality(&schema, &Description::new(vec![cell])).expect("cell conforms");
        worst = worst.max((g - expected).abs());
        count += 1;
    };
    for _ in 0..GENERALITY_SAMPLES {
        let lo: f64 = rng.gen_range(-100.0..100.0);
        let hi: f64 = lo + rng.gen_range(0.1..50.0);
        let a: f64 = rng.gen_range(lo..=hi);
        let b = rng.gen_range(lo..=hi);
        let (a, b) = (a.min(b), a.max(b));
        let var = VariableSchema::interval("x", lo, hi).expect("domain");
        let cell = var.interval_cell(a, b).expect("inside domain");
        evaluate(var, cell, (b - a) / (hi - lo));
    }
    for _ in 0..GENERALITY_SAMPLES {
        let k = rng.gen_range(1..=12);
        let labels: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
        let mut chosen: Vec<&String> = labels.iter().filter(|_| rng.gen_bool(0.5)).collect();
        if chosen.is_empty() {
            chosen.push(&labels[0]);
        }
        let var = VariableSchema::categorical("c", labels.clone()).expect("domain");
        let cell = var
            .category_cell(chosen.iter().map(|s| s.as_str()))
            .expect("labels exist");
        evaluate(var, cell, chosen.len() as f64 / k as f64);
    }
    for _ in 0..GENERALITY_SAMPLES {
        let k = rng.gen_range(1..=12);
        let labels: Vec<String> = (0..k).map(|i| format!("m{i}")).collect();
        let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let var = VariableSchema::modal("m", labels.clone()).expect("domain");
        let cell = var
            .modal_cell(
                labels
                    .iter()
                    .map(|s| s.as_str())
                    .zip(weights.iter().copied()),
            )
            .expect("weights in range");
        evaluate(var, cell, weights.iter().sum::<f64>() / k as f64);
    }
    Outcome::new(
        worst <= GENERALITY_TOLERANCE,
        format!("{count} objects, max error {worst:.3e}"),
    )
}

fn degenerate_cases() -> Outcome {
    let mut errors = Vec::new();

    let schema =
        Schema::new(vec![VariableSchema::modal("m", ["a", "b"]).expect("domain")]).expect("schema");
    let var = schema.variables()[0].clone();
    let one = SymbolicDataTable::new(
        schema.clone(),
        vec![Description::new(vec![var
            .modal_cell([("a", 0.3), ("b", 0.6)])
            .expect("cell")])],
    )
    .expect("table");
    match run_caps(&one, default_max_iterations(1)) {
        Ok(p)
            if p.structure.node_count() == 1
                && p.structure.root().is_some_and(|r| r.is_terminal()) => {}
        Ok(p) => errors.push(format!("N=1 gave {} nodes", p.structure.node_count())),
        Err(e) => errors.push(format!("N=1 failed: {e}")),
    }

    let schema = Schema::new(vec![
        VariableSchema::interval("x", 0.0, 8.0).expect("domain"),
        VariableSchema::categorical("c", ["a", "b", "c"]).expect("domain"),
        VariableSchema::modal("m", ["a", "b"]).expect("domain"),
    ])
    .expect("schema");
    let v = schema.variables().to_vec();
    let rows = vec![
        Description::new(vec![
            v[0].interval_cell(1.0, 2.0).expect("cell"),
            v[1].category_cell(["a"]).expect("cell"),
            v[2].modal_cell([("a", 0.2), ("b", 0.5)]).expect("cell"),
        ]),
        Description::new(vec![
            v[0].interval_cell(3.0, 5.0).expect("cell"),
            v[1].category_cell(["b"]).expect("cell"),
            v[2].modal_cell([("a", 0.6), ("b", 0.1)]).expect("cell"),
        ]),
    ];
    let two = SymbolicDataTable::new(schema, rows).expect("table");
    // union: [1, 5] of 8, {a, b} of 3, weights (0.6, 0.5) over 2 labels
    let by_hand = (4.0 / 8.0) * (2.0 / 3.0) * ((0.6 + 0.5) / 2.0);
    match run_caps(&two, default_max_iterations(2)) {
        Ok(p) => {
            let merges: Vec<_> = p
                .structure
                .quadruples
                .iter()
                .filter(|q| !q.is_terminal())
                .collect();
            if merges.len() != 1 || p.structure.node_count() != 3 {
                errors.push(format!("N=2 gave {} merges", merges.len()));
            } else if (merges[0].index - by_hand).abs() > GENERALITY_TOLERANCE {
                errors.push(format!("N=2 index {} vs {by_hand}", merges[0].index));
            }
        }
        Err(e) => errors.push(format!("N=2 failed: {e}")),
    }

    Outcome::new(
        errors.is_empty(),
        if errors.is_empty() {
            format!("N=1 single node, N=2 one merge at f={by_hand:.6}")
        } else {
            errors.join("; ")
        },
    )
}
