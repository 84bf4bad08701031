//! Strong bisimilarity, with τ treated as an ordinary label.

use std::collections::HashMap;

use crate::lts::{Label, Lts, StateId};
use crate::partition::{dense_ids, refine};

/// Coarsest bisimulation blocks on the disjoint union of the given systems.
/// Returns, per system, the block of each state.
fn union_blocks(systems: &[&Lts]) -> Vec<Vec<usize>> {
    let mut labels: HashMap<&Label, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut offsets = Vec::new();
    for l in systems {
        offsets.push(edges.len());
        for s in 0..l.num_states() {
            let base = *offsets.last().unwrap();
            let out = l
                .succ(s)
                .iter()
                .map(|(lab, t)| {
                    let len = labels.len();
                    (*labels.entry(lab).or_insert(len), base + t)
                })
                .collect();
            edges.push(out);
        }
    }
    let block = refine(&edges, &vec![0; edges.len()]);
    systems
        .iter()
        .zip(offsets)
        .map(|(l, off)| block[off..off + l.num_states()].to_vec())
        .collect()
}

/// `Some(relation)` iff the alphabets agree and the initial states are
/// strongly bisimilar. The relation pairs up reachable states.
pub fn bisimilar(l1: &Lts, l2: &Lts) -> Option<Vec<(StateId, StateId)>> {
    if l1.alphabet() != l2.alphabet() {
        return None;
    }
    let blocks = union_blocks(&[l1, l2]);
    let (b1, b2) = (&blocks[0], &blocks[1]);
    if b1[l1.initial()] != b2[l2.initial()] {
        return None;
    }
    let r1 = l1.reachable();
    let r2 = l2.reachable();
    let mut rel = Vec::new();
    for s in (0..l1.num_states()).filter(|&s| r1[s]) {
        for t in (0..l2.num_states()).filter(|&t| r2[t]) {
            if b1[s] == b2[t] {
                rel.push((s, t));
            }
        }
    }
    Some(rel)
}

pub fn is_bisimilar(l1: &Lts, l2: &Lts) -> bool {
    bisimilar(l1, l2).is_some()
}

/// Quotient of the reachable part by the coarsest bisimulation. Each block is
/// named after its first state in BFS order.
pub fn bisim_quotient(l: &Lts) -> Lts {
    let r = l.reachable_part();
    let block = union_blocks(&[&r]).remove(0);
    // reachable_part numbers states in BFS order, so first occurrence is BFS order.
    let ids = dense_ids(block.iter().copied());
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut names = vec![String::new(); count];
    let mut succ: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); count];
    let mut done = vec![false; count];
    for s in 0..r.num_states() {
        let b = ids[s];
        if done[b] {
            continue;
        }
        done[b] = true;
        names[b] = r.name(s).to_string();
        succ[b] = r.succ(s).iter().map(|(lab, t)| (lab.clone(), ids[*t])).collect();
    }
    Lts::with_names(names, r.alphabet().clone(), succ, ids[r.initial()])
        .expect("quotient of a valid LTS")
}
