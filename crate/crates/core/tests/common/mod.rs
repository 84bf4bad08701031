//! Fixtures, corpora and whole-corpus checks shared by the integration
//! tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ltscong::congruence::{canonical_form, implies, verdict_table, CongruenceId};
use ltscong::lts::{Action, Label, Lts, StateId};
use ltscong::normal_form::{determinize, normalize, NormalForm};
use ltscong::operators::{
    hide, internal_choice, internal_choice_composed, parallel, prefix, rename, RenameRelation,
};
use ltscong::oracle::{action_name, corpus, enumerate_bounded, random_lts, BoundedSemantics, Family, GenParams, ObsValueRef, Word};
use ltscong::parse_lts;
use ltscong::semantics::{trace_observation, ComponentId, ObsValue};
use ltscong::una::{pd_with_bits, una};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn p(text: &str) -> Lts {
    parse_lts(text).unwrap()
}

pub fn dlg() -> Lts {
    p("alphabet:\ninit: s\ntrans:\n")
}

pub fn llg() -> Lts {
    p("alphabet:\ninit: s\ntrans:\ns tau s\n")
}

pub fn blg() -> Lts {
    p("alphabet:\ninit: s\ntrans:\ns tau s\ns tau d\n")
}

pub fn a_stop() -> Lts {
    p("alphabet: a\ninit: s\ntrans:\ns a t\n")
}

pub fn tau_a() -> Lts {
    p("alphabet: a\ninit: s\ntrans:\ns tau d\ns a t\n")
}

/// 500 LTSs, up to 8 states and 3 visible actions.
pub fn acceptance_corpus() -> Vec<Lts> {
    corpus(500, 8, 3, SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_lts(rng: &mut ChaCha8Rng, max_states: usize, alphabet_size: usize) -> Lts {
    random_lts(&GenParams {
        states: rng.gen_range(1..=max_states),
        alphabet_size,
        density: rng.gen_range(0.6..2.2),
        tau_prob: rng.gen_range(0.0..0.5),
        seed: rng.gen(),
    })
    .reachable_part()
}

// ---- views -------------------------------------------------------------

/// Component values at words, either from the oracle or the normal form.
pub trait Views {
    fn alphabet(&self) -> &BTreeSet<Action>;
    fn get(&self, c: ComponentId, w: &Word) -> ObsValueRef;

    fn bit(&self, c: ComponentId, w: &Word) -> bool {
        match self.get(c, w) {
            ObsValueRef::Bit(b) => b,
            ObsValueRef::Family(_) => panic!("{c} is not a bit"),
        }
    }

    fn fam(&self, c: ComponentId, w: &Word) -> Family {
        match self.get(c, w) {
            ObsValueRef::Family(f) => f,
            ObsValueRef::Bit(_) => panic!("{c} is not a family"),
        }
    }
}

impl Views for BoundedSemantics {
    fn alphabet(&self) -> &BTreeSet<Action> {
        &self.alphabet
    }

    fn get(&self, c: ComponentId, w: &Word) -> ObsValueRef {
        self.value(c, w)
    }
}

pub struct Symbolic {
    pub nf: NormalForm,
    pub alphabet: BTreeSet<Action>,
}

impl Symbolic {
    pub fn new(l: &Lts) -> Self {
        Symbolic {
            nf: normalize(l, true),
            alphabet: l.alphabet().clone(),
        }
    }
}

impl Views for Symbolic {
    fn alphabet(&self) -> &BTreeSet<Action> {
        &self.alphabet
    }

    fn get(&self, c: ComponentId, w: &Word) -> ObsValueRef {
        match trace_observation(c, &self.nf, w).unwrap() {
            ObsValue::Bit(b) => ObsValueRef::Bit(b),
            ObsValue::Refusals(r) => ObsValueRef::Family(
                r.sets()
                    .iter()
                    .map(|s| s.iter().map(|i| self.nf.alphabet()[i].clone()).collect())
                    .collect(),
            ),
        }
    }
}

pub fn words(alphabet: &BTreeSet<Action>, k: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet {
                let mut v = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Some member of `f` contains `set`.
pub fn admits(f: &Family, set: &BTreeSet<Action>) -> bool {
    f.iter().any(|r| set.is_subset(r))
}

/// Downward closure of `f` is inside that of `g`.
pub fn fam_le(f: &Family, g: &Family) -> bool {
    f.iter().all(|r| admits(g, r))
}

pub fn maximal(f: impl IntoIterator<Item = BTreeSet<Action>>) -> Family {
    let all: Vec<BTreeSet<Action>> = f.into_iter().collect();
    all.iter()
        .filter(|a| !all.iter().any(|b| *a != b && a.is_subset(b)))
        .cloned()
        .collect()
}

fn show(w: &Word) -> String {
    ltscong::lts::render_trace(w)
}

/// The trace and failure identities, checked on every word up to `k`.
/// Returns the first violation.
pub fn identity_violation(v: &impl Views, k: usize) -> Option<String> {
    use ComponentId::*;
    let sigma = v.alphabet().clone();
    for w in words(&sigma, k) {
        let tr = v.bit(Tr, &w);
        let div = v.bit(Div, &w);
        let ant = v.bit(AnT, &w);
        let extt = v.bit(ExtT, &w);
        let sf = v.fam(Sf, &w);
        let (nf, snf, anf, sanf) = (v.fam(Nf, &w), v.fam(Snf, &w), v.fam(Anf, &w), v.fam(Sanf, &w));
        let fail = |what: &str| Some(format!("{what} at {}", show(&w)));
        if tr != (div || !sf.is_empty()) {
            return fail("Tr = Div ∪ Sf^Tr");
        }
        if v.bit(Dl, &w) != admits(&sf, &sigma) {
            return fail("Dl = {σ | (σ,Σ) ∈ Sf}");
        }
        if !nf.is_empty() != (tr && !div) || !snf.is_empty() != (tr && !div) {
            return fail("nF^Tr = snF^Tr = Tr \\ Div");
        }
        if !anf.is_empty() != ant || !sanf.is_empty() != ant {
            return fail("anF^Tr = sanF^Tr = anT");
        }
        if ant != (!sf.is_empty() && !extt) {
            return fail("anT = Sf^Tr \\ extT");
        }
        if !(fam_le(&snf, &nf) && fam_le(&nf, &sf) && fam_le(&sanf, &anf) && fam_le(&anf, &sf)) {
            return fail("snF ⊆ nF ⊆ Sf and sanF ⊆ anF ⊆ Sf");
        }
        let mind = match w.split_last() {
            None => div,
            Some((_, prefix)) => extt && !v.bit(ExtT, &prefix.to_vec()),
        };
        if v.bit(MinD, &w) != mind {
            return fail("minD = {σa ∈ extT | σ ∉ extT} ∪ (ε if ε ∈ Div)");
        }
        if v.bit(CDiv, &w) != extt {
            return fail("CDiv = extT");
        }
        let cfail = if extt { maximal([sigma.clone()]) } else { sf.clone() };
        if v.fam(CFail, &w) != cfail {
            return fail("CFail = Sf ∪ (extT × 2^Σ)");
        }
    }
    None
}

/// The four equations for internal choice, with the bounded trace set
/// standing in for the infinite traces. `l1` and `l2` share an alphabet.
pub fn ichoice_violation(l1: &Lts, l2: &Lts, k: usize) -> Option<String> {
    let (s1, s2) = (enumerate_bounded(l1, k), enumerate_bounded(l2, k));
    for (form, m) in [
        ("direct", internal_choice(l1, l2)),
        ("composed", internal_choice_composed(l1, l2).unwrap()),
    ] {
        let sigma: BTreeSet<Action> = l1.alphabet().union(l2.alphabet()).cloned().collect();
        if m.alphabet() != &sigma {
            return Some(format!("{form}: Σ"));
        }
        let s = enumerate_bounded(&m, k);
        for w in words(&sigma, k) {
            let union = maximal(s1.fam(ComponentId::Sf, &w).into_iter().chain(s2.fam(ComponentId::Sf, &w)));
            if s.fam(ComponentId::Sf, &w) != union {
                return Some(format!("{form}: Sf at {}", show(&w)));
            }
            if s.div.contains(&w) != (s1.div.contains(&w) || s2.div.contains(&w)) {
                return Some(format!("{form}: Div at {}", show(&w)));
            }
            if s.tr.contains(&w) != (s1.tr.contains(&w) || s2.tr.contains(&w)) {
                return Some(format!("{form}: Tr at {}", show(&w)));
            }
        }
    }
    None
}

/// States reached from the initial state by the weak trace `w`.
pub fn weak_reach(l: &Lts, w: &[Action]) -> Vec<StateId> {
    let mut cur = l.tau_closure(l.initial());
    for a in w {
        let label = Label::Vis(a.clone());
        let next: Vec<StateId> = cur
            .iter()
            .flat_map(|&s| l.succ_on(s, &label).iter().map(|(_, t)| *t))
            .collect();
        cur = l.tau_closure_of(next);
    }
    cur
}

/// Every state reached by some word gets the same value of `prop(word)`.
fn uniform_by_state(l: &Lts, ws: &[Word], prop: impl Fn(&Word) -> bool, fixed: Option<&[bool]>) -> Option<String> {
    let mut seen: HashMap<StateId, bool> = HashMap::new();
    for w in ws {
        let b = prop(w);
        for s in weak_reach(l, w) {
            if let Some(f) = fixed {
                if f[s] != b {
                    return Some(format!("state {} vs trace {}", l.name(s), show(w)));
                }
            }
            if *seen.entry(s).or_insert(b) != b {
                return Some(format!("state {} reached by traces on both sides, e.g. {}", l.name(s), show(w)));
            }
        }
    }
    None
}

/// The determinization, unambiguation and pre/post-divergence lemmas.
pub fn lemma_violation(l: &Lts, k: usize) -> Option<String> {
    let sem = enumerate_bounded(l, k);
    let ws = words(l.alphabet(), k);
    let det = determinize(l);
    for w in &ws {
        if det.walk(w).is_some() != sem.tr.contains(w) {
            return Some(format!("Det language vs Tr at {}", show(w)));
        }
    }
    let u = una(l);
    if !ltscong::bisim::is_bisimilar(&u, l) {
        return Some("una(L) not bisimilar to L".into());
    }
    let (pd, pre) = pd_with_bits(l);
    if !ltscong::bisim::is_bisimilar(&pd, l) {
        return Some("pd(L) not bisimilar to L".into());
    }
    let traces: Vec<Word> = ws.into_iter().filter(|w| sem.tr.contains(w)).collect();
    if let Some(e) = uniform_by_state(&u, &traces, |w| sem.div.contains(w), None) {
        return Some(format!("una divergence split: {e}"));
    }
    if let Some(e) = uniform_by_state(&pd, &traces, |w| sem.ant.contains(w), Some(&pre)) {
        return Some(format!("pd pre/post: {e}"));
    }
    for (s, _, t) in pd.transitions() {
        if !pre[s] && pre[t] {
            return Some("pd has a post to pre transition".into());
        }
    }
    None
}

// ---- pairs and contexts -----------------------------------------------

/// Copies one state and redirects a random half of the edges into it to
/// the copy, then shuffles the numbering. The result is bisimilar.
pub fn mutate_bisimilar(l: &Lts, rng: &mut ChaCha8Rng) -> Lts {
    let n = l.num_states();
    let victim = rng.gen_range(0..n);
    let mut succ: Vec<Vec<(Label, StateId)>> = (0..n).map(|s| l.succ(s).to_vec()).collect();
    succ.push(l.succ(victim).to_vec());
    for out in succ.iter_mut() {
        for (_, t) in out.iter_mut() {
            if *t == victim && rng.gen_bool(0.5) {
                *t = n;
            }
        }
    }
    let mut initial = l.initial();
    if initial == victim && rng.gen_bool(0.5) {
        initial = n;
    }
    let mut perm: Vec<StateId> = (0..=n).collect();
    perm.shuffle(rng);
    let mut shuffled = vec![Vec::new(); n + 1];
    for (s, out) in succ.into_iter().enumerate() {
        shuffled[perm[s]] = out.into_iter().map(|(a, t)| (a, perm[t])).collect();
    }
    Lts::from_parts(l.alphabet().clone(), shuffled, perm[initial]).unwrap()
}

#[derive(Clone, Debug)]
pub enum Context {
    Prefix(Action),
    Hide(BTreeSet<Action>),
    Rename(RenameRelation),
    ParLeft(Lts),
    ParRight(Lts),
    ChoiceLeft(Lts),
    ChoiceRight(Lts),
}

impl Context {
    pub fn apply(&self, l: &Lts) -> Lts {
        match self {
            Context::Prefix(a) => prefix(a, l),
            Context::Hide(set) => hide(set, l),
            Context::Rename(phi) => rename(phi, l),
            Context::ParLeft(m) => parallel(m, l),
            Context::ParRight(m) => parallel(l, m),
            Context::ChoiceLeft(m) => internal_choice(m, l),
            Context::ChoiceRight(m) => internal_choice(l, m),
        }
    }
}

/// A random single-operator context over `alphabet` plus one fresh action.
pub fn random_context(rng: &mut ChaCha8Rng, alphabet: &BTreeSet<Action>) -> Context {
    let fresh = Action::new("x").unwrap();
    let mut pool: Vec<Action> = alphabet.iter().cloned().collect();
    pool.push(fresh.clone());
    let pick_subset = |rng: &mut ChaCha8Rng, from: &[Action]| -> BTreeSet<Action> {
        from.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
    };
    let third = |rng: &mut ChaCha8Rng| {
        let size = rng.gen_range(0..=pool.len());
        let m = small_lts(rng, 3, size);
        // Rename the generated names onto a random part of the pool.
        let targets: Vec<Action> = {
            let mut v = pool.clone();
            v.shuffle(rng);
            v
        };
        let phi = RenameRelation::new(m.alphabet().iter().cloned().zip(targets));
        rename(&phi, &m)
    };
    match rng.gen_range(0..7) {
        0 => Context::Prefix(pool.choose(rng).unwrap().clone()),
        1 => Context::Hide(pick_subset(rng, &pool[..pool.len() - 1])),
        2 => {
            let mut pairs = Vec::new();
            for a in alphabet {
                let images = rng.gen_range(1..=2);
                for _ in 0..images {
                    pairs.push((a.clone(), pool.choose(rng).unwrap().clone()));
                }
            }
            Context::Rename(RenameRelation::new(pairs))
        }
        3 => Context::ParLeft(third(rng)),
        4 => Context::ParRight(third(rng)),
        5 => Context::ChoiceLeft(third(rng)),
        _ => Context::ChoiceRight(third(rng)),
    }
}

/// Up to `count` pairs of distinct random LTSs that share a canonical form
/// under `c`.
pub fn bucket_pairs(c: CongruenceId, count: usize, seed: u64) -> Vec<(Lts, Lts)> {
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    let mut buckets: BTreeMap<String, Vec<Lts>> = BTreeMap::new();
    let mut tries = 0;
    while pairs.len() < count && tries < 80 * count {
        tries += 1;
        let size = rng.gen_range(1..=2);
        let l = small_lts(&mut rng, 5, size);
        let bucket = buckets.entry(canonical_form(c, &l)).or_default();
        if let Some(m) = bucket.iter().find(|m| **m != l) {
            pairs.push((m.clone(), l.clone()));
        }
        if bucket.len() < 4 && !bucket.contains(&l) {
            bucket.push(l);
        }
    }
    pairs
}

/// `count` pairs equivalent under `c`: half that share a canonical form,
/// the rest bisimilar mutations.
pub fn equivalent_pairs(c: CongruenceId, count: usize, seed: u64) -> Vec<(Lts, Lts)> {
    let mut pairs = bucket_pairs(c, count / 2, seed);
    let mut rng = rng(seed ^ 0xb15);
    while pairs.len() < count {
        let size = rng.gen_range(0..=3);
        let l = small_lts(&mut rng, 5, size);
        let m = mutate_bisimilar(&l, &mut rng);
        pairs.push((l, m));
    }
    pairs
}

// ---- lattice ----------------------------------------------------------

/// First pair of congruences where the table breaks an implication.
pub fn lattice_violation(l1: &Lts, l2: &Lts) -> Option<(CongruenceId, CongruenceId)> {
    let table = verdict_table(l1, l2);
    for v1 in &table {
        for v2 in &table {
            if v1.equal && !v2.equal && implies(v1.congruence, v2.congruence) {
                return Some((v1.congruence, v2.congruence));
            }
        }
    }
    None
}

/// Pairs for the lattice checks: a third independent random pairs over a
/// shared alphabet, the rest pairs that agree under one congruence, taking
/// the congruences in turn.
pub fn lattice_pairs(count: usize, seed: u64) -> Vec<(Lts, Lts)> {
    let mut rng = rng(seed);
    let all: Vec<CongruenceId> = CongruenceId::all().collect();
    let per = (2 * count / 3) / all.len() + 1;
    let mut by_cong: Vec<Vec<(Lts, Lts)>> = all
        .iter()
        .enumerate()
        .map(|(i, &c)| bucket_pairs(c, per, seed ^ ((i as u64 + 1) << 16)))
        .collect();
    let mut out = Vec::new();
    let mut turn = 0;
    while out.len() < count {
        turn += 1;
        let pick = if turn % 3 == 0 { None } else { by_cong[turn % all.len()].pop() };
        match pick {
            Some(pair) => out.push(pair),
            None => {
                let size = rng.gen_range(1..=2);
                out.push((small_lts(&mut rng, 4, size), small_lts(&mut rng, 4, size)));
            }
        }
    }
    out
}

pub fn fresh_names(n: usize) -> BTreeSet<Action> {
    (0..n).map(|i| Action::new(&action_name(i)).unwrap()).collect()
}

// ---- proptest ---------------------------------------------------------

pub fn arb_lts(max_states: usize, max_actions: usize) -> impl proptest::strategy::Strategy<Value = Lts> {
    use proptest::prelude::*;
    (1..=max_states, 0..=max_actions, 0.3f64..2.5, 0.0f64..0.6, any::<u64>()).prop_map(
        |(states, alphabet_size, density, tau_prob, seed)| {
            random_lts(&GenParams {
                states,
                alphabet_size,
                density,
                tau_prob,
                seed,
            })
        },
    )
}

/// Two LTSs over the same alphabet.
pub fn arb_pair(max_states: usize, max_actions: usize) -> impl proptest::strategy::Strategy<Value = (Lts, Lts)> {
    use proptest::prelude::*;
    (0..=max_actions, any::<u64>(), any::<u64>(), 1..=max_states, 1..=max_states).prop_map(
        move |(alphabet_size, s1, s2, n1, n2)| {
            let gen = |states, seed| {
                random_lts(&GenParams {
                    states,
                    alphabet_size,
                    density: 1.4,
                    tau_prob: 0.25,
                    seed,
                })
            };
            (gen(n1, s1), gen(n2, s2))
        },
    )
}
