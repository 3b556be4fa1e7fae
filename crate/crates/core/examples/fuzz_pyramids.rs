//! Runs CAPS and CAPSO on seeded random tables and tallies valid pyramids
//! and failures by kind.
//!
//! Usage: cargo run --release --example fuzz_pyramids [tables] [seed]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symbolic_pyramid::engine::default_max_iterations;
use symbolic_pyramid::{check_pyramid, fuzz, run_caps, run_capso, Error};

fn kind(e: &Error) -> &'static str {
    match e {
        Error::NoAggregablePair { .. } => "no aggregable pair",
        Error::IterationLimit { .. } => "iteration limit",
        Error::Structure(_) => "structure",
        _ => "input",
    }
}

fn main() {
    let mut args = std::env::args().skip(1);
    let tables: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(500);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);

    let mut tally: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for k in 0..tables {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + k);
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(1..=4);
        let t = fuzz::random_table(&mut rng, n, p);
        let order = fuzz::random_order(&mut rng, n);
        for (name, run) in [
            ("caps", run_caps(&t, default_max_iterations(n))),
            ("capso", run_capso(&t, &order, default_max_iterations(n))),
        ] {
            let outcome = match run {
                Ok(p) if check_pyramid(&p.structure, &t).passed() => "valid",
                Ok(_) => "INVALID",
                Err(e) => kind(&e),
            };
            *tally.entry((name, outcome)).or_default() += 1;
        }
    }
    for ((algorithm, outcome), count) in tally {
        println!("{algorithm:<6} {outcome:<20} {count}");
    }
}
