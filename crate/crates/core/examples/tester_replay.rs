//! The finite testers at work: each turns a question about `L` into a
//! deadlock, trace or divergence question about `L || T`.
//!
//!     cargo run --example tester_replay

use ltscong::lts::{actions, render_trace, trace, Action};
use ltscong::operators::parallel;
use ltscong::oracle::enumerate_bounded;
use ltscong::parse_lts;
use ltscong::testers::{tester_sf, tester_trace_loop, trace_detector, TesterSpec};

fn main() {
    let l = parse_lts(include_str!("data/fig3.lts")).unwrap();
    let sigma = l.alphabet().clone();

    println!("stable failures via deadlock of L || T:");
    for (t, refusal) in [("", &["b"][..]), ("a", &["b"][..]), ("a", &["a"][..]), ("b", &["b"][..])] {
        let spec = TesterSpec::new(trace(t).unwrap(), actions(refusal), sigma.clone()).unwrap();
        let w = spec.trace.clone();
        let dl = enumerate_bounded(&parallel(&l, &tester_sf(&spec)), w.len()).dl.contains(&w);
        println!("  ({}, {{{}}}) in Sf: {dl}", render_trace(&w), refusal.join(","));
    }

    println!("traces via the tagged trace tester:");
    for t in ["a a", "b a", "b b"] {
        let w = trace(t).unwrap();
        let d = trace_detector(&l, &w, &actions(&["z"])).unwrap();
        let found = enumerate_bounded(&d, 1).tr.len() > 1;
        println!("  {} in Tr: {found}", render_trace(&w));
    }

    println!("traces and non-divergent traces via the loop tester:");
    let b = Action::new("probe").unwrap();
    for t in ["", "a", "b"] {
        let w = trace(t).unwrap();
        let m = parallel(&l, &tester_trace_loop(&w, &b, &sigma).unwrap());
        let mut probe = w.clone();
        probe.push(b.clone());
        let s = enumerate_bounded(&m, probe.len());
        println!(
            "  {}: in Tr {}, in anT {}",
            render_trace(&w),
            s.div.contains(&probe),
            s.mind.contains(&probe)
        );
    }
}
