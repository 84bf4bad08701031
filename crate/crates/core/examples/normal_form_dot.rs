//! Determinization, unambiguation and the annotated normal form of a small
//! LTS with a divergent branch. Prints the normal form as DOT.
//!
//!     cargo run --example normal_form_dot | dot -Tsvg > nf.svg

use ltscong::bisim::is_bisimilar;
use ltscong::normal_form::{determinize, normalize};
use ltscong::una::{pd_with_bits, una};
use ltscong::{parse_lts, render_lts};

fn main() {
    let l = parse_lts(include_str!("data/fig3.lts")).unwrap();
    eprintln!("Det(L):\n{}", render_lts(&determinize(&l).to_lts()));
    let u = una(&l);
    let (pd, pre) = pd_with_bits(&l);
    eprintln!(
        "Una(L): {} states, bisimilar: {}; PD(L): {} states ({} post-divergent), bisimilar: {}",
        u.num_states(),
        is_bisimilar(&u, &l),
        pd.num_states(),
        pre.iter().filter(|p| !**p).count(),
        is_bisimilar(&pd, &l)
    );
    print!("{}", normalize(&l, true).to_dot());
}
