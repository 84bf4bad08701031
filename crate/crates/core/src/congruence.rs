//! The 20 linear-time congruences of finite LTSs, equivalence checking with
//! witnesses, and the implication lattice.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lts::{render_trace, Action, Lts};
use crate::normal_form::{minimize_normal_form, normalize, NormalForm};
use crate::refusal::RefusalAntichain;
use crate::semantics::{component_view, off_value, trim_relevant, ComponentId, ObsValue, Side};

use ComponentId::*;

/// One of the 20 congruences, numbered 1 to 20.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongruenceId(u8);

struct Entry {
    name: &'static str,
    signature: &'static [ComponentId],
}

const CATALOGUE: [Entry; 20] = [
    Entry { name: "dullest", signature: &[] },
    Entry { name: "alph", signature: &[] },
    Entry { name: "tr", signature: &[Tr] },
    Entry { name: "sf", signature: &[Sf] },
    Entry { name: "tr-sf", signature: &[Tr, Sf] },
    Entry { name: "sf-mind", signature: &[Sf, MinD] },
    Entry { name: "tr-sf-mind", signature: &[Tr, Sf, MinD] },
    Entry { name: "cffd-fin", signature: &[Sf, Div] },
    Entry { name: "ant-mind", signature: &[AnT, MinD] },
    Entry { name: "tr-mind", signature: &[Tr, MinD] },
    Entry { name: "tr-div", signature: &[Tr, Div] },
    Entry { name: "sanf-mind", signature: &[Sanf, MinD] },
    Entry { name: "tr-sanf-mind", signature: &[Tr, Sanf, MinD] },
    Entry { name: "tr-sanf-div", signature: &[Tr, Sanf, Div] },
    Entry { name: "csp-fdi", signature: &[Anf, MinD] },
    Entry { name: "tr-anf-mind", signature: &[Tr, Anf, MinD] },
    Entry { name: "tr-anf-div", signature: &[Tr, Anf, Div] },
    Entry { name: "snf-div", signature: &[Snf, Div] },
    Entry { name: "anf-snf-div", signature: &[Anf, Snf, Div] },
    Entry { name: "ndfd-fin", signature: &[Nf, Div] },
];

impl CongruenceId {
    pub const DULLEST: CongruenceId = CongruenceId(1);
    pub const ALPH: CongruenceId = CongruenceId(2);
    pub const TR: CongruenceId = CongruenceId(3);
    pub const SF: CongruenceId = CongruenceId(4);
    pub const CFFD: CongruenceId = CongruenceId(8);
    pub const SANF_MIND: CongruenceId = CongruenceId(12);
    pub const CSP_FDI: CongruenceId = CongruenceId(15);
    pub const NDFD: CongruenceId = CongruenceId(20);

    pub fn new(id: u8) -> Result<Self> {
        if (1..=20).contains(&id) {
            Ok(CongruenceId(id))
        } else {
            Err(Error::UnknownCongruence(id.to_string()))
        }
    }

    pub fn all() -> impl Iterator<Item = CongruenceId> {
        (1..=20).map(CongruenceId)
    }

    pub fn id(self) -> u8 {
        self.0
    }

    fn entry(self) -> &'static Entry {
        &CATALOGUE[self.0 as usize - 1]
    }

    pub fn name(self) -> &'static str {
        self.entry().name
    }

    /// Components preserved besides the alphabet. Every congruence other than
    /// `dullest` also preserves Σ.
    pub fn signature(self) -> &'static [ComponentId] {
        self.entry().signature
    }

    pub fn preserves_alphabet(self) -> bool {
        self != CongruenceId::DULLEST
    }

    pub fn needs_history(self) -> bool {
        self.signature().iter().any(|c| c.needs_history())
    }
}

impl fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongruenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(n) = s.parse::<u8>() {
            return CongruenceId::new(n);
        }
        CongruenceId::all()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCongruence(s.to_string()))
    }
}

/// Components derivable from the given ones, for finite LTSs.
fn closure(base: &[ComponentId]) -> BTreeSet<ComponentId> {
    let rules: &[(&[ComponentId], &[ComponentId])] = &[
        (&[Div], &[MinD]),
        (&[Div, Sf], &[Tr]),
        (&[Div, Nf], &[Tr]),
        (&[Div, Snf], &[Tr]),
        (&[Sf, MinD], &[AnT, Anf, Sanf]),
        (&[Anf], &[AnT]),
        (&[Sanf], &[AnT]),
        (&[Tr, MinD], &[AnT]),
        (&[Sf, Div], &[Nf, Snf]),
        (&[Nf, MinD], &[Anf]),
        (&[Nf, Div], &[Snf]),
        (&[Snf, MinD], &[Sanf]),
        (&[Anf, MinD], &[Sanf]),
    ];
    let mut set: BTreeSet<ComponentId> = base.iter().copied().collect();
    loop {
        let before = set.len();
        for (from, to) in rules {
            if from.iter().all(|c| set.contains(c)) {
                set.extend(to.iter().copied());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Does equality under `c1` entail equality under `c2`?
pub fn implies(c1: CongruenceId, c2: CongruenceId) -> bool {
    if c2 == CongruenceId::DULLEST {
        return true;
    }
    if c1 == CongruenceId::DULLEST {
        return false;
    }
    let derived = closure(c1.signature());
    c2.signature().iter().all(|c| derived.contains(c))
}

/// Transitive reduction of the strict implication order, as
/// `(stronger, weaker)` pairs.
pub fn hasse_edges() -> Vec<(CongruenceId, CongruenceId)> {
    let all: Vec<_> = CongruenceId::all().collect();
    let strict = |a: CongruenceId, b: CongruenceId| a != b && implies(a, b);
    let mut edges = Vec::new();
    for &u in &all {
        for &l in &all {
            if strict(u, l) && !all.iter().any(|&m| strict(u, m) && strict(m, l)) {
                edges.push((u, l));
            }
        }
    }
    edges
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessDetail {
    AlphabetDifference {
        only_left: Vec<Action>,
        only_right: Vec<Action>,
    },
    /// A refusal set admitted at the trace by one side only. `side` is 1 or 2.
    RefusalOnlyIn { side: u8, set: Vec<Action> },
    DivergenceMismatch { left: bool, right: bool },
    TraceMembership { left: bool, right: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `None` for an alphabet difference.
    pub component: Option<ComponentId>,
    pub trace: Vec<Action>,
    pub detail: WitnessDetail,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: &[Action]| v.iter().map(Action::as_str).collect::<Vec<_>>().join(",");
        match &self.detail {
            WitnessDetail::AlphabetDifference {
                only_left,
                only_right,
            } => write!(
                f,
                "alphabet differs: left-only {{{}}}, right-only {{{}}}",
                names(only_left),
                names(only_right)
            ),
            WitnessDetail::RefusalOnlyIn { side, set } => write!(
                f,
                "{} at trace {}: refusal {{{}}} only in side {}",
                self.component.map_or("-", ComponentId::name),
                render_trace(&self.trace),
                names(set),
                side
            ),
            WitnessDetail::DivergenceMismatch { left, right }
            | WitnessDetail::TraceMembership { left, right } => write!(
                f,
                "{} at trace {}: left {}, right {}",
                self.component.map_or("-", ComponentId::name),
                render_trace(&self.trace),
                left,
                right
            ),
        }
    }
}

impl Witness {
    pub fn to_json(&self) -> Value {
        fn names(v: &[Action]) -> Vec<&str> {
            v.iter().map(Action::as_str).collect()
        }
        let detail = match &self.detail {
            WitnessDetail::AlphabetDifference {
                only_left,
                only_right,
            } => json!({"kind": "alphabet_difference", "only_left": names(only_left), "only_right": names(only_right)}),
            WitnessDetail::RefusalOnlyIn { side, set } => {
                json!({"kind": "refusal_only_in", "side": side, "set": names(set)})
            }
            WitnessDetail::DivergenceMismatch { left, right } => {
                json!({"kind": "divergence_mismatch", "left": left, "right": right})
            }
            WitnessDetail::TraceMembership { left, right } => {
                json!({"kind": "trace_membership", "left": left, "right": right})
            }
        };
        json!({
            "component": self.component.map(ComponentId::name),
            "trace": names(&self.trace),
            "detail": detail,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub congruence: CongruenceId,
    pub equal: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn equal(c: CongruenceId) -> Verdict {
        Verdict {
            congruence: c,
            equal: true,
            witness: None,
        }
    }

    fn unequal(c: CongruenceId, w: Witness) -> Verdict {
        Verdict {
            congruence: c,
            equal: false,
            witness: Some(w),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.congruence.id(),
            "name": self.congruence.name(),
            "equal": self.equal,
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

fn alphabet_witness(l1: &Lts, l2: &Lts) -> Witness {
    Witness {
        component: None,
        trace: Vec::new(),
        detail: WitnessDetail::AlphabetDifference {
            only_left: l1.alphabet().difference(l2.alphabet()).cloned().collect(),
            only_right: l2.alphabet().difference(l1.alphabet()).cloned().collect(),
        },
    }
}

pub fn equivalent(c: CongruenceId, l1: &Lts, l2: &Lts) -> Verdict {
    if !c.preserves_alphabet() {
        return Verdict::equal(c);
    }
    if l1.alphabet() != l2.alphabet() {
        return Verdict::unequal(c, alphabet_witness(l1, l2));
    }
    let h = c.needs_history();
    equivalent_nf(c, &normalize(l1, h), &normalize(l2, h))
}

/// All 20 verdicts, normalizing each side once.
pub fn verdict_table(l1: &Lts, l2: &Lts) -> Vec<Verdict> {
    if l1.alphabet() != l2.alphabet() {
        let w = alphabet_witness(l1, l2);
        return CongruenceId::all()
            .map(|c| {
                if c.preserves_alphabet() {
                    Verdict::unequal(c, w.clone())
                } else {
                    Verdict::equal(c)
                }
            })
            .collect();
    }
    let (n1, n2) = (normalize(l1, true), normalize(l2, true));
    CongruenceId::all()
        .map(|c| {
            if c.preserves_alphabet() {
                equivalent_nf(c, &n1, &n2)
            } else {
                Verdict::equal(c)
            }
        })
        .collect()
}

struct Views<'a> {
    nf: &'a NormalForm,
    per_comp: Vec<Vec<ObsValue>>,
}

impl Views<'_> {
    fn value(&self, i: usize, c: ComponentId, side: Side) -> ObsValue {
        match side {
            Side::State(q) => self.per_comp[i][q].clone(),
            Side::Off { chaotic } => off_value(c, self.nf.alphabet().len(), chaotic),
        }
    }
}

fn mismatch(
    nf: &NormalForm,
    c: ComponentId,
    left: &ObsValue,
    right: &ObsValue,
    trace: Vec<Action>,
) -> Witness {
    let detail = match (left, right) {
        (ObsValue::Bit(l), ObsValue::Bit(r)) if c.is_divergence() => {
            WitnessDetail::DivergenceMismatch { left: *l, right: *r }
        }
        (ObsValue::Bit(l), ObsValue::Bit(r)) => WitnessDetail::TraceMembership { left: *l, right: *r },
        (ObsValue::Refusals(l), ObsValue::Refusals(r)) => {
            let (side, set) = match l.first_outside(r) {
                Some(s) => (1, s),
                None => (2, r.first_outside(l).expect("families differ")),
            };
            WitnessDetail::RefusalOnlyIn {
                side,
                set: set.iter().map(|i| nf.alphabet()[i].clone()).collect(),
            }
        }
        _ => unreachable!("one component has one value kind"),
    };
    Witness {
        component: Some(c),
        trace,
        detail,
    }
}

/// Compares two normal forms over the same alphabet. Words are explored in
/// shortlex order, so the witness trace is the least shortest one.
pub fn equivalent_nf(c: CongruenceId, n1: &NormalForm, n2: &NormalForm) -> Verdict {
    if !c.preserves_alphabet() {
        return Verdict::equal(c);
    }
    assert_eq!(n1.alphabet(), n2.alphabet(), "alphabets must agree");
    let sig = c.signature();
    let views = |nf| Views {
        nf,
        per_comp: sig
            .iter()
            .map(|&comp| component_view(comp, nf).expect("normal form carries what the signature needs"))
            .collect(),
    };
    let (v1, v2) = (views(n1), views(n2));
    let k = n1.alphabet().len();

    let start = (Side::State(n1.initial()), Side::State(n2.initial()));
    let mut parent: HashMap<(Side, Side), Option<((Side, Side), usize)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        for (i, &comp) in sig.iter().enumerate() {
            let (a, b) = (v1.value(i, comp, pair.0), v2.value(i, comp, pair.1));
            if a != b {
                let mut trace = Vec::new();
                let mut cur = pair;
                while let Some((prev, act)) = parent[&cur] {
                    trace.push(n1.alphabet()[act].clone());
                    cur = prev;
                }
                trace.reverse();
                return Verdict::unequal(c, mismatch(n1, comp, &a, &b, trace));
            }
        }
        if matches!(pair, (Side::Off { .. }, Side::Off { .. })) {
            continue;
        }
        for a in 0..k {
            let next = (pair.0.step(n1, a), pair.1.step(n2, a));
            parent.entry(next).or_insert_with(|| {
                queue.push_back(next);
                Some((pair, a))
            });
        }
    }
    Verdict::equal(c)
}

/// Congruences that distinguish, keeping only the weakest ones.
pub fn minimal_distinguishing(verdicts: &[Verdict]) -> Vec<CongruenceId> {
    let unequal: Vec<CongruenceId> = verdicts.iter().filter(|v| !v.equal).map(|v| v.congruence).collect();
    unequal
        .iter()
        .copied()
        .filter(|&c| !unequal.iter().any(|&d| d != c && implies(c, d)))
        .collect()
}

/// Congruences that equate, keeping only the strongest ones.
pub fn maximal_equating(verdicts: &[Verdict]) -> Vec<CongruenceId> {
    let equal: Vec<CongruenceId> = verdicts.iter().filter(|v| v.equal).map(|v| v.congruence).collect();
    equal
        .iter()
        .copied()
        .filter(|&c| !equal.iter().any(|&d| d != c && implies(d, c)))
        .collect()
}

/// A canonical text for the class of `l` under `c`: two LTSs get the same
/// text iff they are equivalent under `c`.
pub fn canonical_form(c: CongruenceId, l: &Lts) -> String {
    if !c.preserves_alphabet() {
        return "dullest".to_string();
    }
    let alphabet: Vec<&str> = l.alphabet().iter().map(Action::as_str).collect();
    let mut out = format!("alphabet: {}\n", alphabet.join(" "));
    if c.signature().is_empty() {
        return out;
    }
    let nf = trim_relevant(c, &normalize(l, c.needs_history())).expect("annotated");
    let views: Vec<Vec<ObsValue>> = c
        .signature()
        .iter()
        .map(|&comp| component_view(comp, &nf).expect("annotated"))
        .collect();
    let key = |q: usize| views.iter().map(|v| v[q].clone()).collect::<Vec<_>>();
    let min = minimize_normal_form(&nf, key);
    let views: Vec<Vec<ObsValue>> = c
        .signature()
        .iter()
        .map(|&comp| component_view(comp, &min).expect("annotated"))
        .collect();
    for q in 0..min.num_states() {
        out.push_str(&format!("q{q}"));
        for (i, comp) in c.signature().iter().enumerate() {
            let v = match &views[i][q] {
                ObsValue::Bit(b) => (*b as u8).to_string(),
                ObsValue::Refusals(r) => min.render_refusals(r),
            };
            out.push_str(&format!(" {}={}", comp.name(), v));
        }
        for (a, t) in min.row(q).iter().enumerate() {
            if let Some(t) = t {
                out.push_str(&format!(" {}->q{}", min.alphabet()[a], t));
            }
        }
        out.push('\n');
    }
    out
}

/// The lattice as a DOT digraph, stronger congruences on top.
pub fn lattice_dot() -> String {
    let mut out = String::from("digraph congruences {\n  rankdir=BT;\n");
    for c in CongruenceId::all() {
        out.push_str(&format!("  c{} [label=\"{} {}\"];\n", c.id(), c.id(), c.name()));
    }
    for (u, l) in hasse_edges() {
        out.push_str(&format!("  c{} -> c{};\n", l.id(), u.id()));
    }
    out.push_str("}\n");
    out
}

/// Refusal antichain rendered with action names, for reports.
pub fn render_refusals(alphabet: &[Action], r: &RefusalAntichain) -> String {
    let sets: Vec<String> = r
        .sets()
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|i| alphabet[i].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    format!("{{{}}}", sets.join(","))
}
