//! Prefix, hiding, relational renaming, parallel composition, internal
//! choice, tagging and the small constant systems.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::lts::{Action, Label, Lts, StateId};

/// `a.L`: a fresh initial state with one `a`-step into `L`.
pub fn prefix(a: &Action, l: &Lts) -> Lts {
    let n = l.num_states();
    let mut names = l.names().to_vec();
    let mut fresh = "pre".to_string();
    let mut k = 0;
    while names.contains(&fresh) {
        k += 1;
        fresh = format!("pre{k}");
    }
    names.push(fresh);
    let mut succ: Vec<Vec<(Label, StateId)>> = (0..n).map(|s| l.succ(s).to_vec()).collect();
    succ.push(vec![(Label::Vis(a.clone()), l.initial())]);
    let mut alphabet = l.alphabet().clone();
    alphabet.insert(a.clone());
    Lts::with_names(names, alphabet, succ, n).expect("prefix of a valid LTS")
}

/// `L \ A`: actions of `A` become τ. Actions outside Σ are ignored.
pub fn hide(set: &BTreeSet<Action>, l: &Lts) -> Lts {
    let alphabet = l.alphabet().difference(set).cloned().collect();
    l.relabel(alphabet, |lab| match lab {
        Label::Vis(a) if set.contains(a) => vec![Label::Tau],
        other => vec![other.clone()],
    })
}

/// A renaming relation Φ. Actions outside its domain map to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RenameRelation {
    pairs: BTreeMap<Action, BTreeSet<Action>>,
}

impl RenameRelation {
    pub fn new(pairs: impl IntoIterator<Item = (Action, Action)>) -> Self {
        let mut map: BTreeMap<Action, BTreeSet<Action>> = BTreeMap::new();
        for (a, b) in pairs {
            map.entry(a).or_default().insert(b);
        }
        RenameRelation { pairs: map }
    }

    /// Convenience constructor from string tokens; panics on bad tokens.
    pub fn from_strs(pairs: &[(&str, &str)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|(a, b)| (Action::new(a).unwrap(), Action::new(b).unwrap())),
        )
    }

    pub fn domain(&self) -> impl Iterator<Item = &Action> {
        self.pairs.keys()
    }

    pub fn range(&self) -> BTreeSet<&Action> {
        self.pairs.values().flatten().collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Action, &Action)> {
        self.pairs
            .iter()
            .flat_map(|(a, bs)| bs.iter().map(move |b| (a, b)))
    }

    /// All `b` with Φ(a, b).
    pub fn images(&self, a: &Action) -> Vec<Action> {
        match self.pairs.get(a) {
            Some(bs) => bs.iter().cloned().collect(),
            None => vec![a.clone()],
        }
    }
}

/// `LΦ`. τ-transitions are untouched.
pub fn rename(phi: &RenameRelation, l: &Lts) -> Lts {
    let alphabet = l.alphabet().iter().flat_map(|a| phi.images(a)).collect();
    l.relabel(alphabet, |lab| match lab {
        Label::Tau => vec![Label::Tau],
        Label::Vis(a) => phi.images(a).into_iter().map(Label::Vis).collect(),
    })
}

/// `L1 || L2`: shared actions synchronise, everything else interleaves.
/// Only the reachable product is built; states are numbered in BFS order.
pub fn parallel(l1: &Lts, l2: &Lts) -> Lts {
    let alphabet: BTreeSet<Action> = l1.alphabet().union(l2.alphabet()).cloned().collect();
    let shared = |a: &Action| l1.alphabet().contains(a) && l2.alphabet().contains(a);

    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(l1.initial(), l2.initial())];
    index.insert(pairs[0], 0);
    let mut succ: Vec<Vec<(Label, StateId)>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (s1, s2) = pairs[i];
        let mut moves: Vec<(Label, (StateId, StateId))> = Vec::new();
        for (lab, t1) in l1.succ(s1) {
            match lab {
                Label::Vis(a) if shared(a) => {
                    for (_, t2) in l2.succ_on(s2, lab) {
                        moves.push((lab.clone(), (*t1, *t2)));
                    }
                }
                _ => moves.push((lab.clone(), (*t1, s2))),
            }
        }
        for (lab, t2) in l2.succ(s2) {
            match lab {
                Label::Vis(a) if shared(a) => {}
                _ => moves.push((lab.clone(), (s1, *t2))),
            }
        }
        let mut out = Vec::with_capacity(moves.len());
        for (lab, target) in moves {
            let j = *index.entry(target).or_insert_with(|| {
                pairs.push(target);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            out.push((lab, j));
        }
        if succ.len() <= i {
            succ.resize(i + 1, Vec::new());
        }
        succ[i] = out;
    }
    succ.resize(pairs.len(), Vec::new());
    Lts::from_parts(alphabet, succ, 0).expect("product of valid LTSs")
}

/// Disjoint union with a fresh initial state that τ-steps into either side.
pub fn internal_choice(l1: &Lts, l2: &Lts) -> Lts {
    let n1 = l1.num_states();
    let mut succ: Vec<Vec<(Label, StateId)>> =
        vec![vec![(Label::Tau, 1 + l1.initial()), (Label::Tau, 1 + n1 + l2.initial())]];
    for s in 0..n1 {
        succ.push(l1.succ(s).iter().map(|(lab, t)| (lab.clone(), 1 + t)).collect());
    }
    for s in 0..l2.num_states() {
        succ.push(
            l2.succ(s)
                .iter()
                .map(|(lab, t)| (lab.clone(), 1 + n1 + t))
                .collect(),
        );
    }
    let alphabet = l1.alphabet().union(l2.alphabet()).cloned().collect();
    Lts::from_parts(alphabet, succ, 0)
        .expect("union of valid LTSs")
        .reachable_part()
}

/// Internal choice built only from the primitive operators:
/// `((L_C || c1.↑1 L1 || c2.↑2 L2) \ {c1, c2}) Φ` with `Φ` removing the tags.
pub fn internal_choice_composed(l1: &Lts, l2: &Lts) -> Result<Lts> {
    // Tag 0 is never produced by ↑1 or ↑2, so these cannot clash.
    let c1 = Action::new("c1")?.tagged(0);
    let c2 = Action::new("c2")?.tagged(0);
    let lc = lc_with(&c1, &c2);
    let left = prefix(&c1, &retag_up(1, l1)?);
    let right = prefix(&c2, &retag_up(2, l2)?);
    let both = parallel(&parallel(&lc, &left), &right);
    let hidden = hide(&[c1, c2].into_iter().collect(), &both);
    let phi = RenameRelation::new(
        l1.alphabet()
            .iter()
            .map(|a| (a.tagged(1), a.clone()))
            .chain(l2.alphabet().iter().map(|a| (a.tagged(2), a.clone()))),
    );
    Ok(rename(&phi, &hidden))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantKind {
    Stop,
    Run,
    Rd,
    Rdl,
    Lc,
}

/// The small systems used as building blocks. `Lc` ignores `set` and uses
/// the alphabet `{c1, c2}`.
pub fn make_constant(kind: ConstantKind, set: &BTreeSet<Action>) -> Lts {
    let loops: Vec<(Label, StateId)> = set.iter().map(|a| (Label::Vis(a.clone()), 0)).collect();
    let (succ, alphabet) = match kind {
        ConstantKind::Stop => (vec![vec![]], set.clone()),
        ConstantKind::Run => (vec![loops], set.clone()),
        ConstantKind::Rd => {
            let mut out = loops;
            out.push((Label::Tau, 1));
            (vec![out, vec![]], set.clone())
        }
        ConstantKind::Rdl => {
            let mut out = loops;
            out.push((Label::Tau, 0));
            out.push((Label::Tau, 1));
            (vec![out, vec![]], set.clone())
        }
        ConstantKind::Lc => {
            return lc_with(&Action::new("c1").unwrap(), &Action::new("c2").unwrap());
        }
    };
    Lts::from_parts(alphabet, succ, 0).expect("constant")
}

fn lc_with(c1: &Action, c2: &Action) -> Lts {
    let succ = vec![
        vec![(Label::Vis(c1.clone()), 1), (Label::Vis(c2.clone()), 1)],
        vec![],
    ];
    Lts::from_parts([c1.clone(), c2.clone()].into_iter().collect(), succ, 0).expect("L_C")
}

pub fn stop(set: &BTreeSet<Action>) -> Lts {
    make_constant(ConstantKind::Stop, set)
}

pub fn run(set: &BTreeSet<Action>) -> Lts {
    make_constant(ConstantKind::Run, set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TagDirection {
    Up,
    Down,
}

pub fn retag(dir: TagDirection, i: u32, l: &Lts) -> Result<Lts> {
    match dir {
        TagDirection::Up => retag_up(i, l),
        TagDirection::Down => retag_down(i, l),
    }
}

/// `↑i L`: every action `a` becomes `a@i`.
pub fn retag_up(i: u32, l: &Lts) -> Result<Lts> {
    if let Some(a) = l
        .alphabet()
        .iter()
        .find(|a| a.split_tag().is_some_and(|(_, j)| j == i))
    {
        return Err(Error::TagCollision(format!("{a} already carries tag {i}")));
    }
    let phi = RenameRelation::new(l.alphabet().iter().map(|a| (a.clone(), a.tagged(i))));
    Ok(rename(&phi, l))
}

/// `↓i L`: every `a@i` becomes `a`; other actions are unchanged.
pub fn retag_down(i: u32, l: &Lts) -> Result<Lts> {
    let mut pairs = Vec::new();
    for a in l.alphabet() {
        if let Some((base, j)) = a.split_tag() {
            if j == i {
                if l.alphabet().contains(&base) {
                    return Err(Error::TagCollision(format!(
                        "untagging {a} would merge it with {base}"
                    )));
                }
                pairs.push((a.clone(), base));
            }
        }
    }
    Ok(rename(&RenameRelation::new(pairs), l))
}
