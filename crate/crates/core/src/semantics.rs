//! Semantic components as per-state views over a [`NormalForm`].
//!
//! A trace is observed at the normal-form state it reaches. Words that fall
//! off the automaton are observed at an `Off` side, which remembers whether
//! the last state passed was already past a minimal divergence trace; that
//! matters only for the components defined over all words (`EXTT`, `CDIV`,
//! `CFAIL`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::congruence::CongruenceId;
use crate::error::{Error, Result};
use crate::lts::{Action, Lts, StateId};
use crate::normal_form::{normalize_with, History, NormalForm, NormalizeOptions};
use crate::refusal::{ActionSet, RefusalAntichain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentId {
    Tr,
    Dl,
    Div,
    MinD,
    ExtT,
    AnT,
    Sf,
    Nf,
    Snf,
    Anf,
    Sanf,
    CFail,
    CDiv,
}

impl ComponentId {
    pub const ALL: [ComponentId; 13] = [
        ComponentId::Tr,
        ComponentId::Dl,
        ComponentId::Div,
        ComponentId::MinD,
        ComponentId::ExtT,
        ComponentId::AnT,
        ComponentId::Sf,
        ComponentId::Nf,
        ComponentId::Snf,
        ComponentId::Anf,
        ComponentId::Sanf,
        ComponentId::CFail,
        ComponentId::CDiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComponentId::Tr => "TR",
            ComponentId::Dl => "DL",
            ComponentId::Div => "DIV",
            ComponentId::MinD => "MIND",
            ComponentId::ExtT => "EXTT",
            ComponentId::AnT => "ANT",
            ComponentId::Sf => "SF",
            ComponentId::Nf => "NF",
            ComponentId::Snf => "SNF",
            ComponentId::Anf => "ANF",
            ComponentId::Sanf => "SANF",
            ComponentId::CFail => "CFAIL",
            ComponentId::CDiv => "CDIV",
        }
    }

    pub fn needs_history(self) -> bool {
        matches!(
            self,
            ComponentId::MinD
                | ComponentId::ExtT
                | ComponentId::AnT
                | ComponentId::Anf
                | ComponentId::Sanf
                | ComponentId::CFail
                | ComponentId::CDiv
        )
    }

    /// Failure-like components carry refusal families; the rest are
    /// per-trace membership bits.
    pub fn is_failures(self) -> bool {
        matches!(
            self,
            ComponentId::Sf
                | ComponentId::Nf
                | ComponentId::Snf
                | ComponentId::Anf
                | ComponentId::Sanf
                | ComponentId::CFail
        )
    }

    /// Membership bits that speak about divergence.
    pub fn is_divergence(self) -> bool {
        matches!(
            self,
            ComponentId::Div | ComponentId::MinD | ComponentId::ExtT | ComponentId::CDiv
        )
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComponentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComponentId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownComponent(s.to_string()))
    }
}

/// The value of one component at one trace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ObsValue {
    Bit(bool),
    Refusals(RefusalAntichain),
}

/// Observation of the components in a congruence's signature, in signature order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observation(pub Vec<(ComponentId, ObsValue)>);

/// Position of a word relative to a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    State(usize),
    /// The word is not a trace. `chaotic` is set when the longest trace
    /// prefix was already in `extT`.
    Off { chaotic: bool },
}

impl Side {
    pub fn step(self, nf: &NormalForm, a: usize) -> Side {
        match self {
            Side::Off { .. } => self,
            Side::State(q) => match nf.next(q, a) {
                Some(t) => Side::State(t),
                None => Side::Off {
                    chaotic: nf.history(q).is_some_and(History::is_post),
                },
            },
        }
    }
}

fn require(c: ComponentId, nf: &NormalForm) -> Result<()> {
    if c != ComponentId::Tr && !nf.has_annotations() {
        return Err(Error::MissingAnnotations);
    }
    if c.needs_history() && !nf.has_history() {
        return Err(Error::HistoryRequired(c.name()));
    }
    Ok(())
}

/// Value of `c` at a word that is not a trace.
pub fn off_value(c: ComponentId, alphabet_size: usize, chaotic: bool) -> ObsValue {
    match c {
        ComponentId::ExtT | ComponentId::CDiv => ObsValue::Bit(chaotic),
        ComponentId::CFail if chaotic => {
            ObsValue::Refusals(RefusalAntichain::from_sets([ActionSet::full(alphabet_size)]))
        }
        c if c.is_failures() => ObsValue::Refusals(RefusalAntichain::empty()),
        _ => ObsValue::Bit(false),
    }
}

/// Actions whose successor state is divergent.
fn divergent_successors(nf: &NormalForm, q: usize) -> ActionSet {
    ActionSet::from_indices(nf.row(q).iter().enumerate().filter_map(|(a, t)| {
        t.filter(|&t| nf.annotation(t).is_some_and(|x| x.divergent))
            .map(|_| a)
    }))
}

fn state_value(c: ComponentId, nf: &NormalForm, q: usize) -> ObsValue {
    if c == ComponentId::Tr {
        return ObsValue::Bit(true);
    }
    let ann = nf.annotation(q).expect("checked by require");
    let hist = nf.history(q);
    let pre = hist == Some(History::Pre);
    let k = nf.alphabet().len();
    let erased = || ObsValue::Refusals(RefusalAntichain::empty());
    match c {
        ComponentId::Tr => unreachable!(),
        ComponentId::Dl => ObsValue::Bit(ann.refusals.admits(&ActionSet::full(k))),
        ComponentId::Div => ObsValue::Bit(ann.divergent),
        ComponentId::MinD => ObsValue::Bit(hist == Some(History::MinDiv)),
        ComponentId::ExtT | ComponentId::CDiv => ObsValue::Bit(!pre),
        ComponentId::AnT => ObsValue::Bit(pre),
        ComponentId::Sf => ObsValue::Refusals(ann.refusals.clone()),
        ComponentId::Nf if ann.divergent => erased(),
        ComponentId::Nf => ObsValue::Refusals(ann.refusals.clone()),
        ComponentId::Snf if ann.divergent => erased(),
        ComponentId::Snf => {
            let d = divergent_successors(nf, q);
            ObsValue::Refusals(ann.refusals.map(|r| r.difference(&d)))
        }
        ComponentId::Anf | ComponentId::Sanf if !pre => erased(),
        ComponentId::Anf => ObsValue::Refusals(ann.refusals.clone()),
        ComponentId::Sanf => {
            let m = divergent_successors(nf, q);
            ObsValue::Refusals(ann.refusals.map(|r| r.difference(&m)))
        }
        ComponentId::CFail if !pre => {
            ObsValue::Refusals(RefusalAntichain::from_sets([ActionSet::full(k)]))
        }
        ComponentId::CFail => ObsValue::Refusals(ann.refusals.clone()),
    }
}

/// The value of `c` at every state of `nf`.
pub fn component_view(c: ComponentId, nf: &NormalForm) -> Result<Vec<ObsValue>> {
    require(c, nf)?;
    Ok((0..nf.num_states()).map(|q| state_value(c, nf, q)).collect())
}

pub fn observe(c: ComponentId, nf: &NormalForm, side: Side) -> Result<ObsValue> {
    require(c, nf)?;
    Ok(match side {
        Side::State(q) => state_value(c, nf, q),
        Side::Off { chaotic } => off_value(c, nf.alphabet().len(), chaotic),
    })
}

/// The side reached by an arbitrary word over the alphabet. Actions outside
/// the alphabet are rejected.
pub fn walk_side(nf: &NormalForm, word: &[Action]) -> Result<Side> {
    let mut side = Side::State(nf.initial());
    for a in word {
        let i = nf
            .action_index(a)
            .ok_or_else(|| Error::InvalidAction(a.to_string()))?;
        side = side.step(nf, i);
    }
    Ok(side)
}

/// Value of component `c` at `word`.
pub fn trace_observation(c: ComponentId, nf: &NormalForm, word: &[Action]) -> Result<ObsValue> {
    observe(c, nf, walk_side(nf, word)?)
}

pub fn observation_vector(cong: CongruenceId, nf: &NormalForm, q: usize) -> Result<Observation> {
    observation_at(cong, nf, Side::State(q))
}

pub fn observation_at(cong: CongruenceId, nf: &NormalForm, side: Side) -> Result<Observation> {
    cong.signature()
        .iter()
        .map(|&c| Ok((c, observe(c, nf, side)?)))
        .collect::<Result<Vec<_>>>()
        .map(Observation)
}

/// Removes the states from which only ⊥ observations are reachable under
/// `cong`. Observations along every remaining trace are unchanged, and
/// removed traces observe ⊥ from the `Off` side.
pub fn trim_relevant(cong: CongruenceId, nf: &NormalForm) -> Result<NormalForm> {
    let sig = cong.signature();
    for &c in sig {
        require(c, nf)?;
    }
    let k = nf.alphabet().len();
    let n = nf.num_states();
    let mut live: Vec<bool> = (0..n)
        .map(|q| sig.iter().any(|&c| state_value(c, nf, q) != off_value(c, k, false)))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            if !live[q] && nf.row(q).iter().flatten().any(|&t| live[t]) {
                live[q] = true;
                changed = true;
            }
        }
    }
    Ok(nf.restrict(&live))
}

/// Outcome of [`bounded_limit_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub lassos: usize,
    pub always_nondivergent: usize,
    pub eventually_nondivergent: usize,
    pub infinitely_often_nondivergent: usize,
    pub failure: Option<String>,
}

/// Classification of an ultimately periodic trace `stem · cycle^ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LassoClass {
    /// No prefix is divergent.
    pub always: bool,
    /// Only finitely many prefixes are divergent.
    pub eventually: bool,
    /// Infinitely many prefixes are nondivergent.
    pub infinitely_often: bool,
}

/// Classifies a lasso read off the history-refined normal form: the cycle is
/// entered at position `stem` of `path` and closes at its last state.
pub fn classify_lasso(nf: &NormalForm, path: &[usize], stem: usize) -> LassoClass {
    let div = |q: usize| nf.annotation(q).is_some_and(|a| a.divergent);
    let cycle = &path[stem..path.len() - 1];
    LassoClass {
        always: path.iter().all(|&q| nf.history(q) == Some(History::Pre)),
        eventually: cycle.iter().all(|&q| !div(q)),
        infinitely_often: cycle.iter().any(|&q| !div(q)),
    }
}

/// Brute-force lasso classification on the LTS itself, by unrolling the
/// cycle twice with explicit state sets.
fn brute_lasso(l: &Lts, div: &[bool], stem: &[Action], cycle: &[Action]) -> Option<LassoClass> {
    let word: Vec<&Action> = stem.iter().chain(cycle).chain(cycle).collect();
    let mut set: BTreeSet<StateId> = l.tau_closure(l.initial()).into_iter().collect();
    let mut divs = vec![set.iter().any(|&s| div[s])];
    for a in word {
        let label = crate::lts::Label::Vis(a.clone());
        let step: Vec<StateId> = set
            .iter()
            .flat_map(|&s| l.succ_on(s, &label).iter().map(|(_, t)| *t))
            .collect();
        set = l.tau_closure_of(step).into_iter().collect();
        if set.is_empty() {
            return None;
        }
        divs.push(set.iter().any(|&s| div[s]));
    }
    let second = &divs[stem.len() + cycle.len()..stem.len() + 2 * cycle.len()];
    Some(LassoClass {
        always: divs.iter().all(|d| !d),
        eventually: second.iter().all(|d| !d),
        infinitely_often: second.iter().any(|d| !d),
    })
}

/// Enumerates lassos with `|stem| + |cycle| <= k` in the history-refined
/// normal form of `l`, checks that each is an infinite trace of `l`, and
/// compares the cycle-level divergence classification with a brute-force
/// unrolling on `l`.
pub fn bounded_limit_check(l: &Lts, k: usize) -> LimitReport {
    let nf = normalize_with(
        l,
        NormalizeOptions {
            history: true,
            quotient: false,
        },
    );
    let div = l.divergence();
    let mut report = LimitReport {
        lassos: 0,
        always_nondivergent: 0,
        eventually_nondivergent: 0,
        infinitely_often_nondivergent: 0,
        failure: None,
    };
    let mut stack: Vec<(Vec<usize>, Vec<Action>)> = vec![(vec![nf.initial()], Vec::new())];
    while let Some((path, word)) = stack.pop() {
        let last = *path.last().unwrap();
        for stem in 0..word.len() {
            if path[stem] != last {
                continue;
            }
            report.lassos += 1;
            let class = classify_lasso(&nf, &path, stem);
            report.always_nondivergent += class.always as usize;
            report.eventually_nondivergent += class.eventually as usize;
            report.infinitely_often_nondivergent += class.infinitely_often as usize;
            let (s, c) = word.split_at(stem);
            let brute = brute_lasso(l, &div, s, c);
            if brute != Some(class) && report.failure.is_none() {
                report.failure = Some(format!(
                    "lasso ({})({})^ω: normal form says {:?}, unrolling says {:?}",
                    crate::lts::render_trace(s),
                    crate::lts::render_trace(c),
                    class,
                    brute
                ));
            }
        }
        if word.len() == k {
            continue;
        }
        for (a, t) in nf.row(last).iter().enumerate().rev() {
            if let Some(t) = t {
                let mut p = path.clone();
                p.push(*t);
                let mut w = word.clone();
                w.push(nf.alphabet()[a].clone());
                stack.push((p, w));
            }
        }
    }
    report
}
