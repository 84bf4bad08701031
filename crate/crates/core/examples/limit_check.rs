//! Lasso traces of the normal form, classified by how they meet divergence,
//! and checked against unrolling.
//!
//!     cargo run --example limit_check

use ltscong::parse_lts;
use ltscong::semantics::bounded_limit_check;

fn main() {
    for (name, text) in [
        ("Run({a})", "alphabet: a\ninit: s\ntrans:\ns a s\n"),
        ("fig3", include_str!("data/fig3.lts")),
        ("a then divergent a-loop", "alphabet: a\ninit: s\ntrans:\ns a t\nt a t\nt tau t\n"),
        ("livelock", "alphabet:\ninit: s\ntrans:\ns tau s\n"),
    ] {
        let r = bounded_limit_check(&parse_lts(text).unwrap(), 4);
        println!(
            "{name}: {} lassos, always nondivergent {}, eventually {}, infinitely often {}, {}",
            r.lassos,
            r.always_nondivergent,
            r.eventually_nondivergent,
            r.infinitely_often_nondivergent,
            r.failure.as_deref().unwrap_or("consistent")
        );
    }
}
