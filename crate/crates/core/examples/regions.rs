//! Where the three one-state systems with an empty alphabet (deadlock,
//! livelock, and both) fall in the lattice.
//!
//!     cargo run --example regions

use ltscong::{parse_lts, verdict_table};

fn main() {
    let dlg = parse_lts("alphabet:\ninit: s\ntrans:\n").unwrap();
    let llg = parse_lts("alphabet:\ninit: s\ntrans:\ns tau s\n").unwrap();
    let blg = parse_lts("alphabet:\ninit: s\ntrans:\ns tau s\ns tau d\n").unwrap();

    let rows = [
        verdict_table(&dlg, &llg),
        verdict_table(&dlg, &blg),
        verdict_table(&llg, &blg),
    ];
    println!("{:>3} {:<14} {:^9} {:^9} {:^9}", "id", "congruence", "DLG=LLG", "DLG=BLG", "LLG=BLG");
    let mark = |b: bool| if b { "yes" } else { "-" };
    for i in 0..20 {
        let c = rows[0][i].congruence;
        println!(
            "{:>3} {:<14} {:^9} {:^9} {:^9}",
            c.id(),
            c.name(),
            mark(rows[0][i].equal),
            mark(rows[1][i].equal),
            mark(rows[2][i].equal)
        );
    }
}
