//! Finite tester LTSs that detect a stable failure, a trace, or whether a
//! trace stays clear of divergence, when composed with the system under test.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lts::{Action, Label, Lts, StateId};
use crate::operators::{hide, parallel, retag_down, retag_up};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TesterSpec {
    pub trace: Vec<Action>,
    pub refusal: BTreeSet<Action>,
    pub alphabet: BTreeSet<Action>,
}

impl TesterSpec {
    pub fn new(trace: Vec<Action>, refusal: BTreeSet<Action>, alphabet: BTreeSet<Action>) -> Result<Self> {
        if let Some(a) = trace.iter().chain(&refusal).find(|a| !alphabet.contains(a)) {
            return Err(Error::LabelNotInAlphabet(a.to_string()));
        }
        Ok(TesterSpec {
            trace,
            refusal,
            alphabet,
        })
    }
}

/// A τ-looped chain over `trace`, returning the transitions and the index of
/// the last chain state.
fn looped_chain(trace: &[Action]) -> (Vec<Vec<(Label, StateId)>>, StateId) {
    let mut succ: Vec<Vec<(Label, StateId)>> = Vec::new();
    for (i, b) in trace.iter().enumerate() {
        succ.push(vec![(Label::Tau, i), (Label::Vis(b.clone()), i + 1)]);
    }
    let last = trace.len();
    succ.push(vec![(Label::Tau, last)]);
    (succ, last)
}

/// Detects the stable failure `(σ, A)`: for every `L` over `spec.alphabet`,
/// `(σ, A) ∈ Sf(L)` iff `σ ∈ Dℓ(L || T)`.
///
/// Chain states carry τ-loops so they never deadlock; after `σ` a τ-step
/// leads to a stable state offering exactly `A`, each into a τ-looped sink.
pub fn tester_sf(spec: &TesterSpec) -> Lts {
    let (mut succ, last) = looped_chain(&spec.trace);
    let u = last + 1;
    let v = last + 2;
    succ[last].push((Label::Tau, u));
    succ.push(spec.refusal.iter().map(|a| (Label::Vis(a.clone()), v)).collect());
    succ.push(vec![(Label::Tau, v)]);
    Lts::from_parts(spec.alphabet.clone(), succ, 0).expect("tester over its own alphabet")
}

/// Detects the trace `σ` over `alphabet` and then offers `loops` forever.
/// Chain actions are tagged with 1 and loop actions with 2, ready for
/// [`trace_detector`].
pub fn tester_tr(trace: &[Action], loops: &BTreeSet<Action>, alphabet: &BTreeSet<Action>) -> Lts {
    let tagged: Vec<Action> = trace.iter().map(|a| a.tagged(1)).collect();
    let (mut succ, last) = looped_chain(&tagged);
    for a in loops {
        succ[last].push((Label::Vis(a.tagged(2)), last));
    }
    let sigma = alphabet
        .iter()
        .map(|a| a.tagged(1))
        .chain(loops.iter().map(|a| a.tagged(2)))
        .collect();
    Lts::from_parts(sigma, succ, 0).expect("tester over its own alphabet")
}

/// `↓2((T || ↑1 L) \ ↑1 Σ(L))` with `T = tester_tr(σ, B, Σ(L))`. Its traces
/// and divergence traces are both `B*` if `σ ∈ Tr(L)` and `{ε}` otherwise.
pub fn trace_detector(l: &Lts, trace: &[Action], loops: &BTreeSet<Action>) -> Result<Lts> {
    let t = tester_tr(trace, loops, l.alphabet());
    let up = retag_up(1, l)?;
    let hidden: BTreeSet<Action> = l.alphabet().iter().map(|a| a.tagged(1)).collect();
    let m = hide(&hidden, &parallel(&t, &up));
    retag_down(2, &m)
}

/// The chain `σ` followed by a fresh action `b` into a τ-looped state, over
/// `alphabet ∪ {b}`. For `L` over `alphabet`: `σ ∈ Tr(L)` iff
/// `σb ∈ Div(L || T)`, and `σ ∈ anT(L)` iff `σb ∈ minD(L || T)`.
pub fn tester_trace_loop(trace: &[Action], b: &Action, alphabet: &BTreeSet<Action>) -> Result<Lts> {
    if alphabet.contains(b) {
        return Err(Error::TagCollision(format!("{b} must be fresh")));
    }
    if let Some(a) = trace.iter().find(|a| !alphabet.contains(a)) {
        return Err(Error::LabelNotInAlphabet(a.to_string()));
    }
    let n = trace.len();
    let mut succ: Vec<Vec<(Label, StateId)>> = trace
        .iter()
        .enumerate()
        .map(|(i, a)| vec![(Label::Vis(a.clone()), i + 1)])
        .collect();
    succ.push(vec![(Label::Vis(b.clone()), n + 1)]);
    succ.push(vec![(Label::Tau, n + 1)]);
    let mut sigma = alphabet.clone();
    sigma.insert(b.clone());
    Lts::from_parts(sigma, succ, 0)
}
