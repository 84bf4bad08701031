//! `a.Stop` against a process that may silently deadlock before offering
//! `a`. No single weakest congruence tells them apart; two do.
//!
//!     cargo run --example weakest_distinguishers

use ltscong::congruence::{maximal_equating, minimal_distinguishing};
use ltscong::{parse_lts, verdict_table};

fn main() {
    let a_stop = parse_lts(include_str!("data/a_stop.lts")).unwrap();
    let tau_a = parse_lts(include_str!("data/tau_a.lts")).unwrap();
    let table = verdict_table(&a_stop, &tau_a);
    for v in &table {
        match &v.witness {
            Some(w) => println!("{:>2} {:<14} differ: {w}", v.congruence.id(), v.congruence.name()),
            None => println!("{:>2} {:<14} equal", v.congruence.id(), v.congruence.name()),
        }
    }
    let names = |cs: Vec<ltscong::CongruenceId>| cs.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ");
    println!("weakest distinguishing: {}", names(minimal_distinguishing(&table)));
    println!("strongest equating:     {}", names(maximal_equating(&table)));
}
