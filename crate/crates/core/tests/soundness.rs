//! Soundness harness: seeded random triples for every row. A fired row whose
//! conclusion fails direct verification would be an inconsistency.

mod common;

use cmlab_core::lab::{check, CheckInput, CheckOptions, Status, ROWS};
use cmlab_core::Error;
use common::{random_module, test_rings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const TRIPLES_PER_ROW: usize = 200;
const J_MAX: usize = 4;

#[derive(Default, Debug)]
struct Tally {
    fired: usize,
    other: usize,
    inadmissible: usize,
    inconclusive: usize,
    inconsistent: Vec<String>,
}

fn run_row(index: usize) -> Tally {
    let row = &ROWS[index];
    let rings = test_rings();
    let mut t = Tally::default();
    for trial in 0..TRIPLES_PER_ROW {
        let mut g = ChaCha8Rng::seed_from_u64(0x5eed);
        g.set_stream((index * TRIPLES_PER_ROW + trial) as u64);
        let (rname, r) = &rings[g.gen_range(0..rings.len())];
        let (mname, m) = random_module(r, &mut g);
        let (nname, n) = random_module(r, &mut g);
        let j = g.gen_range(0..=J_MAX);
        let input = CheckInput::new(rname, &mname, m).with_n(&nname, n);
        let opts = CheckOptions { bound: 6, ..Default::default() };
        match check(row.id, &input, j, &opts) {
            Ok(v) => {
                if !v.consistent {
                    t.inconsistent.push(format!("{} on {rname}, M = {mname}, N = {nname}, j = {j}: {}", row.id, v.note));
                }
                match v.status {
                    Status::Fired => t.fired += 1,
                    Status::Inconclusive => t.inconclusive += 1,
                    _ => t.other += 1,
                }
            }
            Err(Error::Inadmissible(_)) => t.inadmissible += 1,
            Err(e) => panic!("{} on {rname}, M = {mname}, N = {nname}, j = {j}: {e}", row.id),
        }
    }
    t
}

#[test]
fn no_row_is_ever_inconsistent() {
    let tallies: Vec<Tally> = (0..ROWS.len()).into_par_iter().map(run_row).collect();
    let mut bad = Vec::new();
    let mut fired = 0;
    for (row, t) in ROWS.iter().zip(&tallies) {
        println!("{:<8} fired {:>3} other {:>3} inadmissible {:>3} inconclusive {:>3}", row.id, t.fired, t.other, t.inadmissible, t.inconclusive);
        fired += t.fired;
        bad.extend(t.inconsistent.iter().cloned());
    }
    assert!(bad.is_empty(), "inconsistent verdicts:\n{}", bad.join("\n"));
    assert!(fired > 0);
}
