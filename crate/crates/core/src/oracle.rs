//! Bounded semantics by explicit enumeration, and a seeded LTS generator.
//!
//! Nothing here goes through the normal form: the sets are computed word by
//! word from the defining formulas, using only the LTS primitives. That is
//! what makes [`crosscheck`] meaningful.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::lts::{render_trace, Action, Label, Lts, StateId};
use crate::normal_form::{normalize, NormalForm};
use crate::semantics::{trace_observation, ComponentId, ObsValue};

pub type Word = Vec<Action>;
/// A downward-closed family of refusal sets, stored by its maximal elements.
pub type Family = BTreeSet<BTreeSet<Action>>;

/// Every component restricted to words of length at most `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedSemantics {
    pub depth: usize,
    pub alphabet: BTreeSet<Action>,
    pub tr: BTreeSet<Word>,
    pub dl: BTreeSet<Word>,
    pub div: BTreeSet<Word>,
    pub mind: BTreeSet<Word>,
    /// Over all words, not only traces.
    pub extt: BTreeSet<Word>,
    pub ant: BTreeSet<Word>,
    pub sf: BTreeMap<Word, Family>,
    pub nf: BTreeMap<Word, Family>,
    pub snf: BTreeMap<Word, Family>,
    pub anf: BTreeMap<Word, Family>,
    pub sanf: BTreeMap<Word, Family>,
    pub cfail: BTreeMap<Word, Family>,
    pub cdiv: BTreeSet<Word>,
}

fn words(alphabet: &BTreeSet<Action>, k: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet {
                let mut v: Word = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// States `s` with `ŝ =σ=> s`, by search over (state, position) pairs.
fn ends(l: &Lts, word: &[Action]) -> BTreeSet<StateId> {
    let mut seen: BTreeSet<(StateId, usize)> = BTreeSet::new();
    let mut stack = vec![(l.initial(), 0usize)];
    while let Some((s, i)) = stack.pop() {
        if !seen.insert((s, i)) {
            continue;
        }
        for (lab, t) in l.succ(s) {
            match lab {
                Label::Tau => stack.push((*t, i)),
                Label::Vis(a) if i < word.len() && *a == word[i] => stack.push((*t, i + 1)),
                _ => {}
            }
        }
    }
    seen.into_iter()
        .filter(|&(_, i)| i == word.len())
        .map(|(s, _)| s)
        .collect()
}

fn subsets(alphabet: &BTreeSet<Action>) -> Vec<BTreeSet<Action>> {
    let v: Vec<&Action> = alphabet.iter().collect();
    (0..1usize << v.len())
        .map(|m| {
            (0..v.len())
                .filter(|i| m & (1 << i) != 0)
                .map(|i| v[i].clone())
                .collect()
        })
        .collect()
}

fn maximal(family: Vec<BTreeSet<Action>>) -> Family {
    family
        .iter()
        .filter(|a| !family.iter().any(|b| *a != b && a.is_subset(b)))
        .cloned()
        .collect()
}

pub fn enumerate_bounded(l: &Lts, k: usize) -> BoundedSemantics {
    let alphabet = l.alphabet().clone();
    let div_state = l.divergence();
    let all_subsets = subsets(&alphabet);

    // One step deeper for the "σa ∉ Div" clauses.
    let deep = words(&alphabet, k + 1);
    let mut end: BTreeMap<Word, BTreeSet<StateId>> = BTreeMap::new();
    for w in &deep {
        end.insert(w.clone(), ends(l, w));
    }
    let in_div = |w: &Word| end[w].iter().any(|&s| div_state[s]);
    let div_deep: BTreeSet<Word> = deep.iter().filter(|w| in_div(w)).cloned().collect();
    let mind_deep: BTreeSet<Word> = div_deep
        .iter()
        .filter(|w| (0..w.len()).all(|i| !div_deep.contains(&w[..i])))
        .cloned()
        .collect();

    let ws = words(&alphabet, k);
    let mut sem = BoundedSemantics {
        depth: k,
        alphabet: alphabet.clone(),
        tr: BTreeSet::new(),
        dl: BTreeSet::new(),
        div: BTreeSet::new(),
        mind: BTreeSet::new(),
        extt: BTreeSet::new(),
        ant: BTreeSet::new(),
        sf: BTreeMap::new(),
        nf: BTreeMap::new(),
        snf: BTreeMap::new(),
        anf: BTreeMap::new(),
        sanf: BTreeMap::new(),
        cfail: BTreeMap::new(),
        cdiv: BTreeSet::new(),
    };
    for w in &ws {
        let e = &end[w];
        let is_tr = !e.is_empty();
        let is_div = div_deep.contains(w);
        let is_extt = (0..=w.len()).any(|i| mind_deep.contains(&w[..i]));
        let ext = |a: &Action| {
            let mut v = w.clone();
            v.push(a.clone());
            v
        };
        if is_tr {
            sem.tr.insert(w.clone());
        }
        if e.iter().any(|&s| l.succ(s).is_empty()) {
            sem.dl.insert(w.clone());
        }
        if is_div {
            sem.div.insert(w.clone());
        }
        if mind_deep.contains(w) {
            sem.mind.insert(w.clone());
        }
        if is_extt {
            sem.extt.insert(w.clone());
            sem.cdiv.insert(w.clone());
        }
        if is_tr && !is_extt {
            sem.ant.insert(w.clone());
        }

        let refusable = |a: &BTreeSet<Action>| {
            e.iter()
                .any(|&s| l.is_stable(s) && a.iter().all(|x| l.succ_on(s, &Label::Vis(x.clone())).is_empty()))
        };
        let sf: Vec<BTreeSet<Action>> = all_subsets.iter().filter(|a| refusable(a)).cloned().collect();
        let filtered = |keep: &dyn Fn(&BTreeSet<Action>) -> bool| {
            maximal(sf.iter().filter(|a| keep(a)).cloned().collect())
        };
        sem.sf.insert(w.clone(), maximal(sf.clone()));
        sem.nf.insert(w.clone(), filtered(&|_| !is_div));
        sem.snf.insert(
            w.clone(),
            filtered(&|a| !is_div && a.iter().all(|x| !div_deep.contains(&ext(x)))),
        );
        sem.anf.insert(w.clone(), filtered(&|_| !is_extt));
        sem.sanf.insert(
            w.clone(),
            filtered(&|a| !is_extt && a.iter().all(|x| !mind_deep.contains(&ext(x)))),
        );
        let cfail = if is_extt {
            maximal(all_subsets.clone())
        } else {
            maximal(sf.clone())
        };
        sem.cfail.insert(w.clone(), cfail);
    }
    sem
}

impl BoundedSemantics {
    /// Value of a component at a word, in the same shape as the symbolic views.
    pub fn value(&self, c: ComponentId, w: &Word) -> ObsValueRef {
        let bit = |s: &BTreeSet<Word>| ObsValueRef::Bit(s.contains(w));
        let fam = |m: &BTreeMap<Word, Family>| ObsValueRef::Family(m.get(w).cloned().unwrap_or_default());
        match c {
            ComponentId::Tr => bit(&self.tr),
            ComponentId::Dl => bit(&self.dl),
            ComponentId::Div => bit(&self.div),
            ComponentId::MinD => bit(&self.mind),
            ComponentId::ExtT => bit(&self.extt),
            ComponentId::AnT => bit(&self.ant),
            ComponentId::CDiv => bit(&self.cdiv),
            ComponentId::Sf => fam(&self.sf),
            ComponentId::Nf => fam(&self.nf),
            ComponentId::Snf => fam(&self.snf),
            ComponentId::Anf => fam(&self.anf),
            ComponentId::Sanf => fam(&self.sanf),
            ComponentId::CFail => fam(&self.cfail),
        }
    }

    pub fn words(&self) -> Vec<Word> {
        words(&self.alphabet, self.depth)
    }
}

/// A component value in oracle terms: explicit action names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObsValueRef {
    Bit(bool),
    Family(Family),
}

impl std::fmt::Display for ObsValueRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObsValueRef::Bit(b) => write!(f, "{b}"),
            ObsValueRef::Family(fam) => {
                let sets: Vec<String> = fam
                    .iter()
                    .map(|s| {
                        let n: Vec<&str> = s.iter().map(Action::as_str).collect();
                        format!("{{{}}}", n.join(","))
                    })
                    .collect();
                write!(f, "{{{}}}", sets.join(","))
            }
        }
    }
}

fn from_symbolic(nf: &NormalForm, v: ObsValue) -> ObsValueRef {
    match v {
        ObsValue::Bit(b) => ObsValueRef::Bit(b),
        ObsValue::Refusals(r) => ObsValueRef::Family(
            r.sets()
                .iter()
                .map(|s| s.iter().map(|i| nf.alphabet()[i].clone()).collect())
                .collect(),
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub trace: Word,
    pub component: ComponentId,
    pub oracle: String,
    pub symbolic: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub depth: usize,
    pub words_checked: usize,
    pub mismatch: Option<Mismatch>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "words_checked": self.words_checked,
            "pass": self.passed(),
            "mismatch": self.mismatch.as_ref().map(|m| json!({
                "trace": m.trace.iter().map(Action::as_str).collect::<Vec<_>>(),
                "component": m.component.name(),
                "oracle": m.oracle,
                "symbolic": m.symbolic,
            })),
        })
    }
}

/// Compares every component of `normalize(l)` with the oracle on all words
/// of length at most `k`.
pub fn crosscheck(l: &Lts, k: usize) -> CrosscheckReport {
    crosscheck_nf(l, &normalize(l, true), k)
}

// Failures before the deadlock bit, so a damaged antichain is reported as SF.
const CHECK_ORDER: [ComponentId; 13] = [
    ComponentId::Tr,
    ComponentId::Div,
    ComponentId::MinD,
    ComponentId::ExtT,
    ComponentId::AnT,
    ComponentId::CDiv,
    ComponentId::Sf,
    ComponentId::Dl,
    ComponentId::Nf,
    ComponentId::Snf,
    ComponentId::Anf,
    ComponentId::Sanf,
    ComponentId::CFail,
];

/// As [`crosscheck`], against a given normal form (for fault injection).
pub fn crosscheck_nf(l: &Lts, nf: &NormalForm, k: usize) -> CrosscheckReport {
    let oracle = enumerate_bounded(l, k);
    let ws = oracle.words();
    for w in &ws {
        for c in CHECK_ORDER {
            let expected = oracle.value(c, w);
            let got = from_symbolic(nf, trace_observation(c, nf, w).expect("history-refined"));
            if expected != got {
                return CrosscheckReport {
                    depth: k,
                    words_checked: ws.len(),
                    mismatch: Some(Mismatch {
                        trace: w.clone(),
                        component: c,
                        oracle: expected.to_string(),
                        symbolic: got.to_string(),
                    }),
                };
            }
        }
    }
    CrosscheckReport {
        depth: k,
        words_checked: ws.len(),
        mismatch: None,
    }
}

impl std::fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.mismatch {
            None => write!(f, "pass: {} words up to depth {}", self.words_checked, self.depth),
            Some(m) => write!(
                f,
                "FAIL: {} at trace {}: oracle {} vs normal form {}",
                m.component,
                render_trace(&m.trace),
                m.oracle,
                m.symbolic
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub states: usize,
    pub alphabet_size: usize,
    /// Expected number of outgoing transitions per state.
    pub density: f64,
    /// Probability that a transition is labelled τ.
    pub tau_prob: f64,
    pub seed: u64,
}

/// Action names used by the generator: `a`..`z`, then `a1`, `b1`, ...
pub fn action_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        n => format!("{letter}{n}"),
    }
}

/// A random LTS over the first `alphabet_size` action names. State count 0
/// is treated as 1.
pub fn random_lts(p: &GenParams) -> Lts {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.states.max(1);
    let alphabet: Vec<Action> = (0..p.alphabet_size)
        .map(|i| Action::new(&action_name(i)).expect("generated token"))
        .collect();
    let density = p.density.max(0.0);
    let tau_prob = p.tau_prob.clamp(0.0, 1.0);
    let mut succ: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); n];
    for out in succ.iter_mut() {
        let whole = density.floor() as usize;
        let count = whole + rng.gen_bool(density - density.floor()) as usize;
        for _ in 0..count {
            let label = if alphabet.is_empty() || rng.gen_bool(tau_prob) {
                Label::Tau
            } else {
                Label::Vis(alphabet[rng.gen_range(0..alphabet.len())].clone())
            };
            out.push((label, rng.gen_range(0..n)));
        }
    }
    Lts::from_parts(alphabet.into_iter().collect(), succ, 0).expect("generated LTS is valid")
}

/// A deterministic corpus of `count` LTSs with up to `max_states` states
/// and up to `max_actions` actions, mixed densities and τ rates.
pub fn corpus(count: usize, max_states: usize, max_actions: usize, seed: u64) -> Vec<Lts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            random_lts(&GenParams {
                states: rng.gen_range(1..=max_states.max(1)),
                alphabet_size: rng.gen_range(0..=max_actions),
                density: rng.gen_range(0.3..2.5),
                tau_prob: rng.gen_range(0.0..0.6),
                seed: rng.gen(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_lts;
    use crate::lts::{actions, trace};
    use crate::operators::{make_constant, ConstantKind};
    use crate::refusal::RefusalAntichain;

    fn w(t: &str) -> Word {
        trace(t).unwrap()
    }

    fn set(v: &[&str]) -> BTreeSet<Word> {
        v.iter().map(|t| w(t)).collect()
    }

    #[test]
    fn fig3_depth2() {
        let l = parse_lts("alphabet: a b\ninit: c\ntrans:\nc a r\nc b r\nc b l\nl tau l\nr a r\n").unwrap();
        let s = enumerate_bounded(&l, 2);
        assert_eq!(s.tr, set(&["", "a", "b", "a a", "b a"]));
        assert_eq!(s.div, set(&["b"]));
        assert_eq!(s.mind, set(&["b"]));
        assert_eq!(s.ant, set(&["", "a", "a a"]));
    }

    #[test]
    fn dlg_and_rdl() {
        let dlg = parse_lts("alphabet:\ninit: s\ntrans:\n").unwrap();
        let s = enumerate_bounded(&dlg, 3);
        let only_empty: Family = [BTreeSet::new()].into_iter().collect();
        assert_eq!(s.sf[&w("")], only_empty);
        assert!(s.div.is_empty());
        assert_eq!(s.dl, set(&[""]));

        let rdl = make_constant(ConstantKind::Rdl, &actions(&[]));
        let s = enumerate_bounded(&rdl, 3);
        assert_eq!(s.div, set(&[""]));
        assert_eq!(s.sf[&w("")], only_empty);
    }

    #[test]
    fn rd_and_rdl_with_one_action() {
        let rd = make_constant(ConstantKind::Rd, &actions(&["a"]));
        let s = enumerate_bounded(&rd, 3);
        let full: Family = [actions(&["a"])].into_iter().collect();
        for t in ["", "a", "a a", "a a a"] {
            assert_eq!(s.sf[&w(t)], full);
        }
        assert!(s.div.is_empty());
        let rdl = make_constant(ConstantKind::Rdl, &actions(&["a"]));
        let s = enumerate_bounded(&rdl, 3);
        assert_eq!(s.div, set(&["", "a", "a a", "a a a"]));
    }

    #[test]
    fn self_consistency() {
        for l in corpus(200, 6, 2, 11) {
            let s = enumerate_bounded(&l, 4);
            for t in s.words() {
                let sf_nonempty = !s.sf[&t].is_empty();
                assert_eq!(s.tr.contains(&t), s.div.contains(&t) || sf_nonempty);
                assert_eq!(s.dl.contains(&t), s.sf[&t].contains(l.alphabet()));
            }
            // depth k-1 is a restriction of depth k
            let smaller = enumerate_bounded(&l, 3);
            assert!(smaller.tr.iter().all(|t| s.tr.contains(t)));
            assert_eq!(smaller.tr, s.tr.iter().filter(|t| t.len() <= 3).cloned().collect());
            assert_eq!(smaller.mind, s.mind.iter().filter(|t| t.len() <= 3).cloned().collect());
            assert!(s.div.is_subset(&s.tr));
            assert!(s.mind.is_subset(&s.div));
        }
    }

    #[test]
    fn empty_alphabet_systems_pass() {
        for text in [
            "alphabet:\ninit: s\ntrans:\n",
            "alphabet:\ninit: s\ntrans:\ns tau s\n",
            "alphabet:\ninit: s\ntrans:\ns tau s\ns tau d\n",
        ] {
            let r = crosscheck(&parse_lts(text).unwrap(), 4);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn corrupted_refusals_are_reported() {
        let l = parse_lts("alphabet: a\ninit: s\ntrans:\ns a t\n").unwrap();
        let mut nf = normalize(&l, true);
        let q = nf.walk(&w("a")).unwrap();
        nf.set_refusals(q, RefusalAntichain::empty());
        let r = crosscheck_nf(&l, &nf, 3);
        let m = r.mismatch.expect("fault detected");
        assert_eq!(m.trace, w("a"));
        assert_eq!(m.component, ComponentId::Sf);
        let mut nf = normalize(&l, true);
        let q0 = nf.initial();
        nf.set_refusals(q0, RefusalAntichain::empty());
        let m = crosscheck_nf(&l, &nf, 3).mismatch.unwrap();
        assert_eq!((m.trace.len(), m.component), (0, ComponentId::Sf));
    }

    #[test]
    fn generator_contract() {
        let p = GenParams {
            states: 5,
            alphabet_size: 3,
            density: 1.7,
            tau_prob: 0.3,
            seed: 42,
        };
        assert_eq!(random_lts(&p), random_lts(&p));
        let stop = random_lts(&GenParams { density: 0.0, ..p.clone() });
        assert_eq!(stop.num_transitions(), 0);
        assert_eq!(stop.alphabet(), &actions(&["a", "b", "c"]));
        let mut saw_tau_cycle = false;
        let mut saw_unreachable = false;
        for seed in 0..10_000 {
            let l = random_lts(&GenParams { seed, ..p.clone() });
            let text = crate::format::render_lts(&l);
            assert!(parse_lts(&text).is_ok());
            saw_tau_cycle |= l.divergence().iter().any(|d| *d);
            saw_unreachable |= l.reachable().iter().any(|r| !r);
        }
        assert!(saw_tau_cycle && saw_unreachable);
        assert_eq!(action_name(27), "b1");
    }
}
