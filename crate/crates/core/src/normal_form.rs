//! Determinization over τ-closures and the annotated normal form.
//!
//! Every state of a [`NormalForm`] stands for the set of LTS states reachable
//! by one or more traces. Annotations record whether that set contains a
//! divergent state and which maximal refusals its stable members offer. The
//! optional history splits states by whether a divergence trace has already
//! been passed on the way in.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde_json::{json, Value};

use crate::bisim::bisim_quotient;
use crate::lts::{Action, Label, Lts, StateId};
use crate::partition::{dense_ids, refine};
use crate::refusal::{ActionSet, RefusalAntichain};

/// Position of a state relative to minimal divergence traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum History {
    /// No prefix of the access trace (itself included) is divergent.
    Pre,
    /// The access trace is divergent and no proper prefix is.
    MinDiv,
    /// Some proper prefix of the access trace is divergent.
    Post,
}

impl History {
    /// Whether the access trace lies in `extT`.
    pub fn is_post(self) -> bool {
        self != History::Pre
    }

    fn step(self, target_divergent: bool) -> History {
        match self {
            History::Pre if target_divergent => History::MinDiv,
            History::Pre => History::Pre,
            _ => History::Post,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            History::Pre => "pre",
            History::MinDiv => "mindiv",
            History::Post => "post",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Annotation {
    pub divergent: bool,
    pub refusals: RefusalAntichain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizeOptions {
    pub history: bool,
    /// Collapse strongly bisimilar states before the subset construction.
    pub quotient: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions {
            history: true,
            quotient: true,
        }
    }
}

/// A deterministic τ-free automaton, numbered in BFS order from state 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    alphabet: Vec<Action>,
    delta: Vec<Vec<Option<usize>>>,
    members: Option<Vec<Vec<StateId>>>,
    annotations: Option<Vec<Annotation>>,
    history: Option<Vec<History>>,
}

struct Subsets {
    alphabet: Vec<Action>,
    delta: Vec<Vec<Option<usize>>>,
    members: Vec<Vec<StateId>>,
}

fn subset_construction(l: &Lts) -> Subsets {
    let alphabet: Vec<Action> = l.alphabet().iter().cloned().collect();
    let start = l.tau_closure(l.initial());
    let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut members = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in &alphabet {
            let label = Label::Vis(a.clone());
            let step: Vec<StateId> = members[i]
                .iter()
                .flat_map(|&s| l.succ_on(s, &label).iter().map(|(_, t)| *t))
                .collect();
            if step.is_empty() {
                row.push(None);
                continue;
            }
            let closed = l.tau_closure_of(step);
            let len = members.len();
            let j = *index.entry(closed.clone()).or_insert_with(|| {
                members.push(closed);
                len
            });
            row.push(Some(j));
        }
        delta.push(row);
        i += 1;
    }
    Subsets {
        alphabet,
        delta,
        members,
    }
}

/// `Det(L)`: the subset construction without annotations. The state reached
/// by a trace σ holds exactly the LTS states reachable by σ.
pub fn determinize(l: &Lts) -> NormalForm {
    let s = subset_construction(l);
    NormalForm {
        alphabet: s.alphabet,
        delta: s.delta,
        members: Some(s.members),
        annotations: None,
        history: None,
    }
}

/// Annotated normal form with history, after a bisimulation quotient.
pub fn normalize(l: &Lts, with_history: bool) -> NormalForm {
    normalize_with(
        l,
        NormalizeOptions {
            history: with_history,
            quotient: true,
        },
    )
}

pub fn normalize_with(l: &Lts, opts: NormalizeOptions) -> NormalForm {
    let quotient;
    let src = if opts.quotient {
        quotient = bisim_quotient(l);
        &quotient
    } else {
        l
    };
    let s = subset_construction(src);
    let div = src.divergence();
    let k = s.alphabet.len();
    let annotations: Vec<Annotation> = s
        .members
        .iter()
        .map(|q| Annotation {
            divergent: q.iter().any(|&x| div[x]),
            refusals: RefusalAntichain::from_sets(q.iter().filter(|&&x| src.is_stable(x)).map(
                |&x| {
                    let enabled = src.succ(x).iter().filter_map(|(lab, _)| {
                        lab.action()
                            .map(|a| s.alphabet.binary_search(a).expect("label in alphabet"))
                    });
                    ActionSet::full(k).difference(&ActionSet::from_indices(enabled))
                },
            )),
        })
        .collect();
    let nf = NormalForm {
        alphabet: s.alphabet,
        delta: s.delta,
        members: Some(s.members),
        annotations: Some(annotations),
        history: None,
    };
    if opts.history {
        nf.with_history()
    } else {
        nf
    }
}

impl NormalForm {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// The alphabet in sorted order; bit `i` of an [`ActionSet`] is `alphabet()[i]`.
    pub fn alphabet(&self) -> &[Action] {
        &self.alphabet
    }

    pub fn action_index(&self, a: &Action) -> Option<usize> {
        self.alphabet.binary_search(a).ok()
    }

    pub fn next(&self, q: usize, a: usize) -> Option<usize> {
        self.delta[q][a]
    }

    pub fn row(&self, q: usize) -> &[Option<usize>] {
        &self.delta[q]
    }

    /// The state reached by `trace`, if it is a trace.
    pub fn walk(&self, trace: &[Action]) -> Option<usize> {
        let mut q = 0;
        for a in trace {
            q = self.next(q, self.action_index(a)?)?;
        }
        Some(q)
    }

    /// Source LTS states of `q`; absent after minimization.
    pub fn members(&self, q: usize) -> Option<&[StateId]> {
        self.members.as_ref().map(|m| m[q].as_slice())
    }

    pub fn annotation(&self, q: usize) -> Option<&Annotation> {
        self.annotations.as_ref().map(|a| &a[q])
    }

    pub fn history(&self, q: usize) -> Option<History> {
        self.history.as_ref().map(|h| h[q])
    }

    pub fn has_annotations(&self) -> bool {
        self.annotations.is_some()
    }

    pub fn has_history(&self) -> bool {
        self.history.is_some()
    }

    /// Overwrites the refusals of one state. Meant for fault injection.
    pub fn set_refusals(&mut self, q: usize, refusals: RefusalAntichain) {
        if let Some(a) = self.annotations.as_mut() {
            a[q].refusals = refusals;
        }
    }

    /// Splits each state by its [`History`]. At most doubles the state count:
    /// `Pre` states are nondivergent and `MinDiv` states are divergent.
    fn with_history(&self) -> NormalForm {
        let ann = self.annotations.as_ref().expect("history needs annotations");
        let h0 = History::Pre.step(ann[0].divergent);
        let mut index: HashMap<(usize, History), usize> = HashMap::new();
        index.insert((0, h0), 0);
        let mut keys = vec![(0, h0)];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (q, h) = keys[i];
            let row = self.delta[q]
                .iter()
                .map(|t| {
                    t.map(|t| {
                        let key = (t, h.step(ann[t].divergent));
                        let len = keys.len();
                        *index.entry(key).or_insert_with(|| {
                            keys.push(key);
                            len
                        })
                    })
                })
                .collect();
            delta.push(row);
            i += 1;
        }
        NormalForm {
            alphabet: self.alphabet.clone(),
            delta,
            members: self
                .members
                .as_ref()
                .map(|m| keys.iter().map(|&(q, _)| m[q].clone()).collect()),
            annotations: Some(keys.iter().map(|&(q, _)| ann[q].clone()).collect()),
            history: Some(keys.iter().map(|&(_, h)| h).collect()),
        }
    }

    /// Keeps the states marked in `keep` (the initial state always survives),
    /// drops transitions into removed states and renumbers in BFS order.
    pub fn restrict(&self, keep: &[bool]) -> NormalForm {
        let delta: Vec<Vec<Option<usize>>> = self
            .delta
            .iter()
            .map(|row| row.iter().map(|t| t.filter(|&t| keep[t])).collect())
            .collect();
        NormalForm {
            delta,
            ..self.clone()
        }
        .renumbered()
    }

    /// BFS renumbering with sorted actions, dropping unreachable states.
    fn renumbered(&self) -> NormalForm {
        let mut order = vec![0];
        let mut index = vec![usize::MAX; self.num_states()];
        index[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(q) = queue.pop_front() {
            for t in self.delta[q].iter().flatten() {
                if index[*t] == usize::MAX {
                    index[*t] = order.len();
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        NormalForm {
            alphabet: self.alphabet.clone(),
            delta: order
                .iter()
                .map(|&q| self.delta[q].iter().map(|t| t.map(|t| index[t])).collect())
                .collect(),
            members: self
                .members
                .as_ref()
                .map(|m| order.iter().map(|&q| m[q].clone()).collect()),
            annotations: self
                .annotations
                .as_ref()
                .map(|a| order.iter().map(|&q| a[q].clone()).collect()),
            history: self
                .history
                .as_ref()
                .map(|h| order.iter().map(|&q| h[q]).collect()),
        }
    }

    /// The automaton as an LTS with states `q0, q1, ...`.
    pub fn to_lts(&self) -> Lts {
        let succ = self
            .delta
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(a, t)| t.map(|t| (Label::Vis(self.alphabet[a].clone()), t)))
                    .collect()
            })
            .collect();
        let names = (0..self.num_states()).map(|q| format!("q{q}")).collect();
        Lts::with_names(names, self.alphabet.iter().cloned().collect(), succ, 0)
            .expect("automaton over its own alphabet")
    }

    pub fn render_set(&self, set: &ActionSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.alphabet[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn render_refusals(&self, r: &RefusalAntichain) -> String {
        let sets: Vec<String> = r.sets().iter().map(|s| self.render_set(s)).collect();
        format!("{{{}}}", sets.join(","))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph normal_form {\n  node [shape=record];\n");
        for q in 0..self.num_states() {
            let div = self
                .annotation(q)
                .map_or("-".to_string(), |a| (a.divergent as u8).to_string());
            let refusals = self
                .annotation(q)
                .map_or("-".to_string(), |a| self.render_refusals(&a.refusals));
            let hist = self.history(q).map_or("-", History::name);
            let label = format!("{q} | div:{div} | refusals:{refusals} | hist:{hist}")
                .replace('{', "\\{")
                .replace('}', "\\}");
            out.push_str(&format!("  q{q} [label=\"{label}\"];\n"));
        }
        out.push_str("  start [shape=point];\n  start -> q0;\n");
        for q in 0..self.num_states() {
            for (a, t) in self.delta[q].iter().enumerate() {
                if let Some(t) = t {
                    out.push_str(&format!("  q{q} -> q{t} [label=\"{}\"];\n", self.alphabet[a]));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Stable JSON with sorted keys.
    pub fn to_json(&self) -> Value {
        let states: Vec<Value> = (0..self.num_states())
            .map(|q| {
                let mut m = serde_json::Map::new();
                m.insert("id".into(), json!(q));
                let next: serde_json::Map<String, Value> = self.delta[q]
                    .iter()
                    .enumerate()
                    .filter_map(|(a, t)| t.map(|t| (self.alphabet[a].to_string(), json!(t))))
                    .collect();
                m.insert("next".into(), Value::Object(next));
                if let Some(a) = self.annotation(q) {
                    m.insert("divergent".into(), json!(a.divergent));
                    let sets: Vec<Vec<&str>> = a
                        .refusals
                        .sets()
                        .iter()
                        .map(|s| s.iter().map(|i| self.alphabet[i].as_str()).collect())
                        .collect();
                    m.insert("refusals".into(), json!(sets));
                }
                if let Some(h) = self.history(q) {
                    m.insert("history".into(), json!(h.name()));
                }
                if let Some(mem) = self.members(q) {
                    m.insert("members".into(), json!(mem));
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "alphabet": self.alphabet.iter().map(Action::as_str).collect::<Vec<_>>(),
            "initial": 0,
            "states": states,
        })
    }
}

/// Quotient by the coarsest transition-respecting partition that refines
/// equality of `obs`. Each block keeps the annotations of its first state;
/// members are dropped. The result is numbered canonically.
pub fn minimize_normal_form<K: Hash + Eq>(nf: &NormalForm, obs: impl Fn(usize) -> K) -> NormalForm {
    let initial = dense_ids((0..nf.num_states()).map(obs));
    let edges: Vec<Vec<(usize, usize)>> = nf
        .delta
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter_map(|(a, t)| t.map(|t| (a, t)))
                .collect()
        })
        .collect();
    let block = refine(&edges, &initial);
    let count = block.iter().copied().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; count];
    for q in 0..nf.num_states() {
        if rep[block[q]] == usize::MAX {
            rep[block[q]] = q;
        }
    }
    // Block 0 holds state 0, so the quotient's initial state is 0 as required.
    let quotient = NormalForm {
        alphabet: nf.alphabet.clone(),
        delta: rep
            .iter()
            .map(|&q| nf.delta[q].iter().map(|t| t.map(|t| block[t])).collect())
            .collect(),
        members: None,
        annotations: nf
            .annotations
            .as_ref()
            .map(|a| rep.iter().map(|&q| a[q].clone()).collect()),
        history: nf.history.as_ref().map(|h| rep.iter().map(|&q| h[q]).collect()),
    };
    quotient.renumbered()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_lts;

    pub(crate) fn fig3() -> Lts {
        parse_lts(
            "alphabet: a b\ninit: c\ntrans:\nc a r\nc b r\nc b l\nl tau l\nr a r\n",
        )
        .unwrap()
    }

    fn names(l: &Lts, nf: &NormalForm, q: usize) -> Vec<String> {
        nf.members(q)
            .unwrap()
            .iter()
            .map(|&s| l.name(s).to_string())
            .collect()
    }

    #[test]
    fn det_of_fig3() {
        let l = fig3();
        let d = determinize(&l);
        assert_eq!(d.num_states(), 3);
        let (a, b) = (0, 1);
        let qa = d.next(0, a).unwrap();
        let qb = d.next(0, b).unwrap();
        assert_eq!(names(&l, &d, qa), ["r"]);
        assert_eq!(names(&l, &d, qb), ["r", "l"]);
        assert_eq!(d.next(qb, a), Some(qa));
        assert_eq!(d.next(qa, a), Some(qa));
        assert_eq!(d.next(qa, b), None);
        assert!(!d.has_annotations());
    }

    #[test]
    fn deterministic_input_is_isomorphic() {
        let l = parse_lts("alphabet: a b\ninit: x\ntrans:\nx a y\ny b x\ny a z\n").unwrap();
        let d = determinize(&l);
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.to_lts().num_transitions(), 3);
    }

    #[test]
    fn llg_and_blg() {
        let llg = normalize(&parse_lts("alphabet:\ninit: s\ntrans:\ns tau s\n").unwrap(), true);
        assert_eq!(llg.num_states(), 1);
        let a = llg.annotation(0).unwrap();
        assert!(a.divergent);
        assert!(a.refusals.is_empty());

        let blg = normalize(
            &parse_lts("alphabet:\ninit: s\ntrans:\ns tau s\ns tau d\n").unwrap(),
            true,
        );
        assert_eq!(blg.num_states(), 1);
        let a = blg.annotation(0).unwrap();
        assert!(a.divergent);
        assert_eq!(a.refusals.sets(), &[ActionSet::empty()]);
        assert_eq!(blg.history(0), Some(History::MinDiv));
    }

    #[test]
    fn fig3_history() {
        let nf = normalize(&fig3(), true);
        let b = nf.walk(&crate::lts::trace("b").unwrap()).unwrap();
        let a = nf.walk(&crate::lts::trace("a").unwrap()).unwrap();
        assert_eq!(nf.history(b), Some(History::MinDiv));
        assert_eq!(nf.history(a), Some(History::Pre));
        let ba = nf.walk(&crate::lts::trace("b a").unwrap()).unwrap();
        assert_eq!(nf.history(ba), Some(History::Post));
        assert_ne!(a, ba);
        assert_eq!(nf.annotation(0).unwrap().refusals.sets(), &[ActionSet::empty()]);
    }

    #[test]
    fn minimize_merges_and_is_idempotent() {
        let l = parse_lts("alphabet: a\ninit: x\ntrans:\nx a y\ny a x\n").unwrap();
        let nf = normalize_with(
            &l,
            NormalizeOptions {
                history: true,
                quotient: false,
            },
        );
        assert_eq!(nf.num_states(), 2);
        let key = |q: usize| nf.annotation(q).cloned();
        let m = minimize_normal_form(&nf, key);
        assert_eq!(m.num_states(), 1);
        let key2 = |q: usize| m.annotation(q).cloned();
        assert_eq!(minimize_normal_form(&m, key2), m);
    }

    #[test]
    fn dot_and_json_are_stable() {
        let nf = normalize(&fig3(), true);
        let dot = nf.to_dot();
        assert!(dot.contains("div:1"));
        assert!(dot.contains("hist:post"));
        let j = nf.to_json().to_string();
        assert_eq!(j, normalize(&fig3(), true).to_json().to_string());
        assert!(j.starts_with("{\"alphabet\""));
    }
}
