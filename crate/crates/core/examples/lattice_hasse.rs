//! The 20 congruences, their Hasse diagram, and a few implication queries.
//!
//!     cargo run --example lattice_hasse

use ltscong::congruence::{hasse_edges, implies, lattice_dot};
use ltscong::CongruenceId;

fn main() {
    for c in CongruenceId::all() {
        let sigma = c.preserves_alphabet().then_some("Σ");
        let sig: Vec<&str> = sigma.into_iter().chain(c.signature().iter().map(|s| s.name())).collect();
        println!("{:>2} {:<14} {{{}}}", c.id(), c.name(), sig.join(","));
    }
    println!();
    for (u, l) in hasse_edges() {
        println!("{} -> {}", u.name(), l.name());
    }
    println!();
    let q = |a: &str, b: &str| {
        let (a, b): (CongruenceId, CongruenceId) = (a.parse().unwrap(), b.parse().unwrap());
        println!("{} implies {}: {}", a.name(), b.name(), implies(a, b));
    };
    q("cffd-fin", "tr");
    q("tr", "sf");
    q("sf", "tr");
    q("csp-fdi", "ant-mind");
    println!();
    print!("{}", lattice_dot());
}
