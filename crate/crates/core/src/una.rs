//! Unambiguation and the pre/post-divergence refinement of an LTS.

use std::collections::{HashMap, VecDeque};

use crate::lts::{Label, Lts, StateId};
use crate::normal_form::determinize;
use crate::operators::parallel;

/// `Una(L) = L || Det(L)`. Every state remembers which set of states the
/// traces leading to it can reach.
pub fn una(l: &Lts) -> Lts {
    parallel(l, &determinize(l).to_lts())
}

/// `PD(L)`: `Una(L)` with each state split by whether the traces reaching it
/// are outside `extT` (`pre`) or inside (`post`).
pub fn pd(l: &Lts) -> Lts {
    pd_with_bits(l).0
}

/// Like [`pd`], also returning for each state whether it is `pre`.
pub fn pd_with_bits(l: &Lts) -> (Lts, Vec<bool>) {
    let det = determinize(l);
    let div = l.divergence();
    let det_div: Vec<bool> = (0..det.num_states())
        .map(|q| det.members(q).unwrap().iter().any(|&s| div[s]))
        .collect();

    let start = (l.initial(), 0usize, !det_div[0]);
    let mut index: HashMap<(StateId, usize, bool), usize> = HashMap::from([(start, 0)]);
    let mut keys = vec![start];
    let mut succ: Vec<Vec<(Label, StateId)>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (s, q, pre) = keys[i];
        let mut out = Vec::new();
        for (lab, t) in l.succ(s) {
            let key = match lab {
                Label::Tau => (*t, q, pre),
                Label::Vis(a) => {
                    let a = det.action_index(a).expect("label in alphabet");
                    let q2 = det.next(q, a).expect("Det follows every visible step");
                    (*t, q2, pre && !det_div[q2])
                }
            };
            let j = *index.entry(key).or_insert_with(|| {
                keys.push(key);
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
            out.push((lab.clone(), j));
        }
        if succ.len() <= i {
            succ.resize(i + 1, Vec::new());
        }
        succ[i] = out;
    }
    succ.resize(keys.len(), Vec::new());
    let bits = keys.iter().map(|k| k.2).collect();
    let lts = Lts::from_parts(l.alphabet().clone(), succ, 0).expect("refinement of a valid LTS");
    (lts, bits)
}
