//! Buckets small random LTSs by canonical form under each congruence and
//! prints how many classes each one induces. Stronger congruences never
//! have fewer classes than weaker ones.
//!
//!     cargo run --release --example equivalence_classes -- [count]

use std::collections::BTreeSet;

use ltscong::congruence::canonical_form;
use ltscong::oracle::{random_lts, GenParams};
use ltscong::CongruenceId;

fn main() {
    let count: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let lts: Vec<_> = (0..count)
        .map(|i| {
            random_lts(&GenParams {
                states: 1 + (i % 4) as usize,
                alphabet_size: 1,
                density: 1.5,
                tau_prob: 0.3,
                seed: i,
            })
        })
        .collect();
    for c in CongruenceId::all() {
        let classes: BTreeSet<String> = lts.iter().map(|l| canonical_form(c, l)).collect();
        println!("{:>2} {:<14} {:>5} classes", c.id(), c.name(), classes.len());
    }
    let example = canonical_form(CongruenceId::CSP_FDI, &lts[5]);
    println!("\ncanonical csp-fdi form of sample 5:\n{example}");
}
