//! The process operators, called directly and through the expression
//! language.
//!
//!     cargo run --example operators_tour

use std::collections::BTreeMap;

use ltscong::expr::eval_str;
use ltscong::lts::actions;
use ltscong::operators::{hide, internal_choice, parallel, prefix, rename, run, stop, RenameRelation};
use ltscong::{render_lts, Action};

fn main() {
    let a = Action::new("a").unwrap();
    let ab = actions(&["a", "b"]);

    let p = prefix(&a, &stop(&ab));
    println!("a.Stop({{a,b}}):\n{}", render_lts(&p));

    let q = parallel(&p, &run(&actions(&["b"])));
    println!("... || Run({{b}}):\n{}", render_lts(&q));

    let phi = RenameRelation::from_strs(&[("a", "x"), ("a", "y")]);
    println!("renamed a to x and y:\n{}", render_lts(&rename(&phi, &p)));

    println!("a hidden:\n{}", render_lts(&hide(&actions(&["a"]), &p)));

    println!("a.Stop ⊓ Run:\n{}", render_lts(&internal_choice(&p, &run(&ab))));

    let mut env = BTreeMap::new();
    env.insert("P".to_string(), p);
    let e = "hide({b}, par(run({a, b}), prefix(b, rdl({a}))))";
    println!("{e}:\n{}", render_lts(&eval_str(e, &env).unwrap()));

    let e = "ichoice_composed(stop({}), rd({a}))";
    println!("{e}:\n{}", render_lts(&eval_str(e, &env).unwrap()));
}
