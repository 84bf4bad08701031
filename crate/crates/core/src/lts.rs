//! Finite labelled transition systems.
//!
//! States are dense indices; names are kept only for the file format.
//! Successor lists are sorted by `(label, target)` and deduplicated, so two
//! structurally equal systems compare equal with `==`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

pub type StateId = usize;

/// A visible action. `tau` is reserved and can never be an `Action`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(Arc<str>);

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '@')
}

impl Action {
    pub fn new(token: &str) -> Result<Action> {
        if token == "tau" {
            return Err(Error::TauNotAllowed("action"));
        }
        if !is_token(token) {
            return Err(Error::InvalidAction(token.to_string()));
        }
        Ok(Action(Arc::from(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `a` becomes `a@i`.
    pub fn tagged(&self, i: u32) -> Action {
        Action(Arc::from(format!("{}@{}", self.0, i)))
    }

    /// Splits off the outermost tag: `a@1@2` gives `("a@1", 2)`.
    pub fn split_tag(&self) -> Option<(Action, u32)> {
        let (base, tag) = self.0.rsplit_once('@')?;
        let tag = tag.parse().ok()?;
        if base.is_empty() || base == "tau" {
            return None;
        }
        Some((Action(Arc::from(base)), tag))
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds a set of actions from string tokens, panicking on bad input.
/// Meant for tests and examples.
pub fn actions(tokens: &[&str]) -> BTreeSet<Action> {
    tokens
        .iter()
        .map(|t| Action::new(t).expect("valid action token"))
        .collect()
}

/// Parses a trace written as space- or comma-separated tokens.
pub fn trace(text: &str) -> Result<Vec<Action>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(Action::new)
        .collect()
}

pub fn render_trace(trace: &[Action]) -> String {
    if trace.is_empty() {
        return "ε".to_string();
    }
    trace
        .iter()
        .map(Action::as_str)
        .collect::<Vec<_>>()
        .join(" ")
}

/// A transition label: τ sorts before every visible action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Tau,
    Vis(Action),
}

impl Label {
    pub fn action(&self) -> Option<&Action> {
        match self {
            Label::Tau => None,
            Label::Vis(a) => Some(a),
        }
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, Label::Tau)
    }
}

impl From<Action> for Label {
    fn from(a: Action) -> Label {
        Label::Vis(a)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Tau => f.write_str("tau"),
            Label::Vis(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateClass {
    pub stable: bool,
    pub deadlock: bool,
    pub divergent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    names: Vec<String>,
    alphabet: BTreeSet<Action>,
    succ: Vec<Vec<(Label, StateId)>>,
    initial: StateId,
}

impl Lts {
    /// Assembles an LTS with generated state names `s0, s1, ...`.
    pub fn from_parts(
        alphabet: BTreeSet<Action>,
        succ: Vec<Vec<(Label, StateId)>>,
        initial: StateId,
    ) -> Result<Lts> {
        let names = (0..succ.len()).map(|i| format!("s{i}")).collect();
        Lts::with_names(names, alphabet, succ, initial)
    }

    pub fn with_names(
        names: Vec<String>,
        alphabet: BTreeSet<Action>,
        mut succ: Vec<Vec<(Label, StateId)>>,
        initial: StateId,
    ) -> Result<Lts> {
        if names.len() != succ.len() {
            return Err(Error::Io("state name count mismatch".into()));
        }
        if initial >= succ.len() {
            return Err(Error::MissingInit);
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !is_token(n) || n == "tau" {
                return Err(Error::InvalidStateName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateState(n.clone()));
            }
        }
        for out in &mut succ {
            for (label, t) in out.iter() {
                if *t >= names.len() {
                    return Err(Error::UnknownState(t.to_string()));
                }
                if let Label::Vis(a) = label {
                    if !alphabet.contains(a) {
                        return Err(Error::LabelNotInAlphabet(a.to_string()));
                    }
                }
            }
            out.sort();
            out.dedup();
        }
        Ok(Lts {
            names,
            alphabet,
            succ,
            initial,
        })
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn alphabet(&self) -> &BTreeSet<Action> {
        &self.alphabet
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    /// Outgoing transitions of `s`, sorted by label then target.
    pub fn succ(&self, s: StateId) -> &[(Label, StateId)] {
        &self.succ[s]
    }

    /// Outgoing transitions of `s` with exactly this label.
    pub fn succ_on(&self, s: StateId, label: &Label) -> &[(Label, StateId)] {
        let out = &self.succ[s];
        let lo = out.partition_point(|(l, _)| l < label);
        let hi = out.partition_point(|(l, _)| l <= label);
        &out[lo..hi]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &Label, StateId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, out)| out.iter().map(move |(l, t)| (s, l, *t)))
    }

    pub fn is_stable(&self, s: StateId) -> bool {
        self.succ[s].first().is_none_or(|(l, _)| !l.is_tau())
    }

    /// Visible actions enabled at `s`.
    pub fn enabled(&self, s: StateId) -> BTreeSet<Action> {
        self.succ[s]
            .iter()
            .filter_map(|(l, _)| l.action().cloned())
            .collect()
    }

    /// Reachable states in first-visit BFS order. Successors are visited in
    /// label order, ties broken by target name.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            let mut out: Vec<&(Label, StateId)> = self.succ[s].iter().collect();
            out.sort_by(|a, b| (&a.0, &self.names[a.1]).cmp(&(&b.0, &self.names[b.1])));
            for &(_, t) in out {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        for s in self.bfs_order() {
            seen[s] = true;
        }
        seen
    }

    /// The sub-LTS on reachable states, renumbered in BFS order.
    pub fn reachable_part(&self) -> Lts {
        let order = self.bfs_order();
        if order.len() == self.num_states() && order.iter().enumerate().all(|(i, &s)| i == s) {
            return self.clone();
        }
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            index[s] = i;
        }
        let names = order.iter().map(|&s| self.names[s].clone()).collect();
        let succ = order
            .iter()
            .map(|&s| {
                self.succ[s]
                    .iter()
                    .map(|(l, t)| (l.clone(), index[*t]))
                    .collect()
            })
            .collect();
        Lts::with_names(names, self.alphabet.clone(), succ, 0).expect("subsystem of a valid LTS")
    }

    /// Per-state divergence: can the state reach a τ-cycle using τ-steps only?
    pub fn divergence(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        let mut self_loop = vec![false; n];
        for (s, out) in self.succ.iter().enumerate() {
            for (l, t) in out {
                if l.is_tau() {
                    g.add_edge(nodes[s], nodes[*t], ());
                    if s == *t {
                        self_loop[s] = true;
                    }
                }
            }
        }
        let mut div = vec![false; n];
        // tarjan_scc yields components in reverse topological order, so every
        // τ-successor outside a component has been decided before it.
        for comp in tarjan_scc(&g) {
            let cyclic = comp.len() > 1 || self_loop[comp[0].index()];
            let reaches = cyclic
                || comp.iter().any(|v| {
                    self.succ[v.index()]
                        .iter()
                        .any(|(l, t)| l.is_tau() && div[*t])
                });
            if reaches {
                for v in comp {
                    div[v.index()] = true;
                }
            }
        }
        div
    }

    pub fn classify_state(&self, s: StateId) -> Result<StateClass> {
        if s >= self.num_states() {
            return Err(Error::UnknownState(s.to_string()));
        }
        Ok(StateClass {
            stable: self.is_stable(s),
            deadlock: self.succ[s].is_empty(),
            divergent: self.divergence()[s],
        })
    }

    /// States reachable from `s` by τ-steps, sorted.
    pub fn tau_closure(&self, s: StateId) -> Vec<StateId> {
        self.tau_closure_of(std::iter::once(s))
    }

    pub fn tau_closure_of(&self, start: impl IntoIterator<Item = StateId>) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut queue: VecDeque<StateId> = VecDeque::new();
        for s in start {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for (l, t) in &self.succ[s] {
                if !l.is_tau() {
                    break;
                }
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        (0..self.num_states()).filter(|&s| seen[s]).collect()
    }

    /// Same states and names, labels rewritten by `f` (one label may become
    /// several), with a new alphabet.
    pub(crate) fn relabel(
        &self,
        alphabet: BTreeSet<Action>,
        mut f: impl FnMut(&Label) -> Vec<Label>,
    ) -> Lts {
        let succ = self
            .succ
            .iter()
            .map(|out| {
                out.iter()
                    .flat_map(|(l, t)| f(l).into_iter().map(move |l2| (l2, *t)))
                    .collect()
            })
            .collect();
        Lts::with_names(self.names.clone(), alphabet, succ, self.initial)
            .expect("relabelling keeps labels inside the new alphabet")
    }
}

/// Incremental construction by state name.
#[derive(Debug, Default)]
pub struct LtsBuilder {
    names: Vec<String>,
    index: HashMap<String, StateId>,
    alphabet: BTreeSet<Action>,
    succ: Vec<Vec<(Label, StateId)>>,
    initial: Option<StateId>,
}

impl LtsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn action(&mut self, a: Action) -> &mut Self {
        self.alphabet.insert(a);
        self
    }

    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&s) = self.index.get(name) {
            return s;
        }
        let s = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), s);
        self.succ.push(Vec::new());
        s
    }

    pub fn initial(&mut self, s: StateId) -> &mut Self {
        self.initial = Some(s);
        self
    }

    pub fn transition(&mut self, src: StateId, label: Label, dst: StateId) -> &mut Self {
        self.succ[src].push((label, dst));
        self
    }

    pub fn build(self) -> Result<Lts> {
        let initial = self.initial.ok_or(Error::MissingInit)?;
        Lts::with_names(self.names, self.alphabet, self.succ, initial)
    }
}
