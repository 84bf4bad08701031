//! Signature-based partition refinement shared by bisimulation and
//! normal-form minimization.

use std::collections::HashMap;

/// Coarsest partition refining `initial` such that states in one block have
/// the same set of `(label, successor block)` pairs. Labels are dense ids.
/// Returns block ids numbered by first occurrence in state order.
pub(crate) fn refine(edges: &[Vec<(usize, usize)>], initial: &[usize]) -> Vec<usize> {
    let n = edges.len();
    let mut block = renumber(initial);
    let mut count = block.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for s in 0..n {
            let mut sig: Vec<(usize, usize)> = edges[s].iter().map(|&(l, t)| (l, block[t])).collect();
            sig.sort_unstable();
            sig.dedup();
            let len = ids.len();
            next.push(*ids.entry((block[s], sig)).or_insert(len));
        }
        let new_count = ids.len();
        block = next;
        if new_count == count {
            return block;
        }
        count = new_count;
    }
}

fn renumber(keys: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.iter()
        .map(|k| {
            let len = ids.len();
            *ids.entry(*k).or_insert(len)
        })
        .collect()
}

/// Assigns dense ids to arbitrary hashable keys, in order of first occurrence.
pub(crate) fn dense_ids<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let len = ids.len();
            *ids.entry(k).or_insert(len)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_collapses() {
        // 0 -> 1 -> 0 and 2 -> 2, all on label 0
        let edges = vec![vec![(0, 1)], vec![(0, 0)], vec![(0, 2)]];
        let b = refine(&edges, &[0, 0, 0]);
        assert_eq!(b, vec![0, 0, 0]);
    }

    #[test]
    fn deadlock_differs_from_loop() {
        let edges = vec![vec![(0, 0)], vec![]];
        let b = refine(&edges, &[0, 0]);
        assert_ne!(b[0], b[1]);
    }
}
