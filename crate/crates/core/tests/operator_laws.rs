mod common;

use std::collections::BTreeSet;

use common::*;
use ltscong::bisim::is_bisimilar;
use ltscong::congruence::{equivalent, CongruenceId};
use ltscong::lts::Action;
use ltscong::operators::{hide, internal_choice, internal_choice_composed, parallel, retag_down, retag_up};
use proptest::prelude::*;

fn subset(l: &ltscong::Lts, mask: u8) -> BTreeSet<Action> {
    l.alphabet().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn parallel_is_commutative(a in arb_lts(4, 3), b in arb_lts(4, 3)) {
        prop_assert!(is_bisimilar(&parallel(&a, &b), &parallel(&b, &a)));
    }

    #[test]
    fn parallel_is_associative(a in arb_lts(3, 3), b in arb_lts(3, 3), c in arb_lts(3, 3)) {
        let left = parallel(&a, &parallel(&b, &c));
        let right = parallel(&parallel(&a, &b), &c);
        prop_assert!(is_bisimilar(&left, &right));
    }

    #[test]
    fn both_internal_choices_agree(a in arb_lts(4, 3), b in arb_lts(4, 3)) {
        let direct = internal_choice(&a, &b);
        let composed = internal_choice_composed(&a, &b).unwrap();
        prop_assert!(equivalent(CongruenceId::CFFD, &direct, &composed).equal);
    }

    #[test]
    fn internal_choice_equations((a, b) in arb_pair(4, 2)) {
        prop_assert_eq!(ichoice_violation(&a, &b, 4), None);
    }

    #[test]
    fn hiding_composes(l in arb_lts(5, 3), m1 in 0u8..8, m2 in 0u8..8) {
        let (a, b) = (subset(&l, m1), subset(&l, m2));
        let twice = hide(&a, &hide(&b, &l));
        let once = hide(&a.union(&b).cloned().collect(), &l);
        prop_assert!(equivalent(CongruenceId::CFFD, &twice, &once).equal);
        prop_assert!(is_bisimilar(&twice, &once));
    }

    #[test]
    fn untag_undoes_tag(l in arb_lts(5, 3), i in 1u32..4) {
        let back = retag_down(i, &retag_up(i, &l).unwrap()).unwrap();
        prop_assert_eq!(back, l);
    }
}
