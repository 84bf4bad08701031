//! Compares every semantic component of the normal form with brute-force
//! enumeration on a seeded random corpus.
//!
//!     cargo run --release --example oracle_crosscheck -- [count] [depth] [seed]

use ltscong::oracle::{corpus, crosscheck};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let count = args.first().copied().unwrap_or(200) as usize;
    let depth = args.get(1).copied().unwrap_or(5) as usize;
    let seed = args.get(2).copied().unwrap_or(7);

    let mut words = 0;
    for (i, l) in corpus(count, 8, 3, seed).iter().enumerate() {
        let r = crosscheck(l, depth);
        words += r.words_checked;
        if !r.passed() {
            println!("LTS #{i}: {r}\n{}", ltscong::render_lts(l));
            std::process::exit(1);
        }
    }
    println!("{count} LTSs, depth {depth}: {words} words checked, no mismatch");
}
