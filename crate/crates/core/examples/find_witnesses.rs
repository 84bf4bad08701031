//! Searches small random LTSs for strictness witnesses: for each Hasse edge
//! (stronger, weaker), a pair equal under the weaker congruence but not the
//! stronger one. Also reports every non-implication that the corpus
//! separates.
//!
//!     cargo run --release --example find_witnesses -- [count] [seed]

use std::collections::HashMap;

use ltscong::congruence::{canonical_form, hasse_edges, implies};
use ltscong::oracle::{random_lts, GenParams};
use ltscong::{render_lts, CongruenceId, Lts};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4000);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let mut corpus: Vec<Lts> = Vec::new();
    for i in 0..count as u64 {
        let p = GenParams {
            states: 1 + (i % 5) as usize,
            alphabet_size: 1 + (i % 2) as usize,
            density: 0.8 + 0.35 * (i % 5) as f64,
            tau_prob: 0.1 + 0.15 * (i % 4) as f64,
            seed: seed.wrapping_mul(1_000_003).wrapping_add(i),
        };
        corpus.push(random_lts(&p).reachable_part());
    }
    // Smaller LTSs first, so the first witness found is a small one.
    corpus.sort_by_key(|l| (l.num_states() + l.num_transitions(), render_lts(l)));
    corpus.dedup_by_key(|l| render_lts(l));

    let all: Vec<CongruenceId> = CongruenceId::all().collect();
    let forms: Vec<Vec<String>> = corpus
        .iter()
        .map(|l| all.iter().map(|&c| canonical_form(c, l)).collect())
        .collect();

    let mut separated = 0;
    let mut missing = Vec::new();
    for &c1 in &all {
        for &c2 in &all {
            let (i1, i2) = (c1.id() as usize - 1, c2.id() as usize - 1);
            if c1 == c2 {
                continue;
            }
            if implies(c1, c2) {
                if find(&forms, i1, i2).is_some() {
                    println!("# VIOLATION: {} equal but {} differs", c1.name(), c2.name());
                }
                continue;
            }
            if find(&forms, i1, i2).is_some() {
                separated += 1;
            } else {
                missing.push((c1, c2));
            }
        }
    }
    println!("# corpus {} LTSs, {} non-implications separated", corpus.len(), separated);
    for (c1, c2) in &missing {
        println!("# not separated: {} equal but {} differs", c1.name(), c2.name());
    }

    for (u, l) in hasse_edges() {
        let (iu, il) = (u.id() as usize - 1, l.id() as usize - 1);
        match find(&forms, il, iu) {
            Some((a, b)) => {
                println!("({}, {}) {} > {}", u.id(), l.id(), u.name(), l.name());
                print!("{}---\n{}===\n", render_lts(&corpus[a]), render_lts(&corpus[b]));
            }
            None => println!("({}, {}) NO WITNESS", u.id(), l.id()),
        }
    }
}

/// Two corpus members with equal form under `eq` and different form under `ne`.
fn find(forms: &[Vec<String>], eq: usize, ne: usize) -> Option<(usize, usize)> {
    let mut buckets: HashMap<&str, usize> = HashMap::new();
    for (i, f) in forms.iter().enumerate() {
        match buckets.get(f[eq].as_str()) {
            Some(&j) if forms[j][ne] != f[ne] => return Some((j, i)),
            Some(_) => {}
            None => {
                buckets.insert(&f[eq], i);
            }
        }
    }
    None
}
