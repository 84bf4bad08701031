//! Runs the ten acceptance criteria and prints one PASS/FAIL line each.
//! Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use ltscong::cli::dispatch;
use ltscong::congruence::{hasse_edges, implies, maximal_equating, minimal_distinguishing, verdict_table, CongruenceId};
use ltscong::lts::Action;
use ltscong::normal_form::normalize;
use ltscong::operators::parallel;
use ltscong::oracle::{crosscheck, enumerate_bounded, random_lts, GenParams};
use ltscong::semantics::ComponentId;
use ltscong::testers::{tester_sf, TesterSpec};
use ltscong::witnesses::EDGE_WITNESSES;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn c1_catalogue() -> Outcome {
    let all: Vec<CongruenceId> = CongruenceId::all().collect();
    let names: BTreeSet<&str> = all.iter().map(|c| c.name()).collect();
    let sigs: BTreeSet<(bool, Vec<ComponentId>)> = all
        .iter()
        .map(|c| (c.preserves_alphabet(), c.signature().to_vec()))
        .collect();
    if all.len() != 20 || names.len() != 20 || sigs.len() != 20 {
        return Err(format!("{} congruences, {} names, {} signatures", all.len(), names.len(), sigs.len()));
    }
    let edges = hasse_edges();
    let mut want: Vec<(u8, u8)> = edges.iter().map(|(u, l)| (u.id(), l.id())).collect();
    let mut have: Vec<(u8, u8)> = EDGE_WITNESSES.iter().map(|w| (w.stronger, w.weaker)).collect();
    want.sort();
    have.sort();
    if want != have {
        return Err("stored witnesses do not match the Hasse edges".into());
    }
    let failed: Vec<String> = EDGE_WITNESSES
        .iter()
        .filter(|w| !w.holds().unwrap_or(false))
        .map(|w| format!("{}>{}", w.stronger, w.weaker))
        .collect();
    if !failed.is_empty() {
        return Err(format!("witnesses failing: {}", failed.join(" ")));
    }
    // Pairwise distinct as equivalences: every ordered pair of distinct
    // congruences is separated by a witness path.
    for a in &all {
        for b in &all {
            if a != b && implies(*a, *b) && implies(*b, *a) {
                return Err(format!("{} and {} coincide", a.name(), b.name()));
            }
        }
    }
    Ok(format!("20 congruences, {} Hasse edges, all witnesses hold", edges.len()))
}

fn equating(l1: &ltscong::Lts, l2: &ltscong::Lts) -> BTreeSet<u8> {
    verdict_table(l1, l2).iter().filter(|v| v.equal).map(|v| v.congruence.id()).collect()
}

fn c2_regions() -> Outcome {
    let dl_ll = equating(&dlg(), &llg());
    let dl_bl = equating(&dlg(), &blg());
    let ll_bl = equating(&llg(), &blg());
    let mut counts = [0usize; 4];
    for c in 1..=20u8 {
        let region = match (dl_ll.contains(&c), dl_bl.contains(&c), ll_bl.contains(&c)) {
            (true, true, true) => 0,
            (false, true, false) => 1,
            (false, false, false) => 2,
            (false, false, true) => 3,
            other => return Err(format!("congruence {c} has the impossible pattern {other:?}")),
        };
        counts[region] += 1;
    }
    if counts == [3, 2, 3, 12] {
        Ok("regions 3 / 2 / 3 / 12".into())
    } else {
        Err(format!("regions {counts:?}"))
    }
}

fn c3_two_minimal() -> Outcome {
    let table = verdict_table(&a_stop(), &tau_a());
    let min: Vec<&str> = minimal_distinguishing(&table).iter().map(|c| c.name()).collect();
    if min != ["sf", "sanf-mind"] {
        return Err(format!("library: minimal distinguishing {min:?}"));
    }
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let args = ["ltscong", "distinguish", &format!("{data}/a_stop.lts"), &format!("{data}/tau_a.lts")];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(args, &mut out, &mut err);
    let v: serde_json::Value = serde_json::from_slice(&out).map_err(|e| format!("cli json: {e}"))?;
    let cli: Vec<&str> = v["minimal_distinguishing"]
        .as_array()
        .ok_or("no minimal_distinguishing")?
        .iter()
        .filter_map(|x| x.as_str())
        .collect();
    if code != 0 || cli != ["sf", "sanf-mind"] {
        return Err(format!("cli: exit {code}, {cli:?}"));
    }
    let max: Vec<&str> = maximal_equating(&table).iter().map(|c| c.name()).collect();
    Ok(format!("minimal distinguishing {{sf, sanf-mind}}; maximal equating {max:?}"))
}

fn c4_oracle(corpus: &[ltscong::Lts]) -> Outcome {
    let reports: Vec<_> = corpus.par_iter().map(|l| crosscheck(l, 6)).collect();
    let words: usize = reports.iter().map(|r| r.words_checked).sum();
    match reports.iter().position(|r| !r.passed()) {
        Some(i) => Err(format!("LTS #{i}: {}", reports[i])),
        None => Ok(format!("{} LTSs, {} words, 0 mismatches", corpus.len(), words)),
    }
}

fn c5_identities(corpus: &[ltscong::Lts]) -> Outcome {
    let bad: Option<String> = corpus.par_iter().enumerate().find_map_first(|(i, l)| {
        identity_violation(&Symbolic::new(l), 6)
            .map(|e| format!("LTS #{i} symbolic: {e}"))
            .or_else(|| identity_violation(&enumerate_bounded(l, 6), 6).map(|e| format!("LTS #{i} oracle: {e}")))
    });
    if let Some(e) = bad {
        return Err(e);
    }
    // Internal choice: pair each LTS with the next one over the same alphabet.
    let mut pairs = Vec::new();
    for (i, l) in corpus.iter().enumerate() {
        if let Some(m) = corpus[i + 1..].iter().find(|m| m.alphabet() == l.alphabet()) {
            pairs.push((l, m));
        }
    }
    let bad = pairs
        .par_iter()
        .find_map_first(|(l, m)| ichoice_violation(l, m, 5));
    match bad {
        Some(e) => Err(format!("internal choice: {e}")),
        None => Ok(format!("{} LTSs, {} internal-choice pairs, 0 violations", corpus.len(), pairs.len())),
    }
}

fn c6_lemmas(corpus: &[ltscong::Lts]) -> Outcome {
    let bad = corpus
        .par_iter()
        .enumerate()
        .find_map_first(|(i, l)| lemma_violation(l, 6).map(|e| format!("LTS #{i}: {e}")));
    match bad {
        Some(e) => Err(e),
        None => Ok(format!("{} LTSs, 0 violations", corpus.len())),
    }
}

fn c7_fuzz() -> Outcome {
    let all: Vec<CongruenceId> = CongruenceId::all().collect();
    let results: Vec<Result<usize, String>> = all
        .par_iter()
        .map(|&c| {
            let pairs = equivalent_pairs(c, 200, SEED ^ (c.id() as u64) << 8);
            let mut checks = 0;
            for (i, (l, m)) in pairs.iter().enumerate() {
                if !ltscong::equivalent(c, l, m).equal {
                    return Err(format!("{}: generated pair #{i} is not equivalent", c.name()));
                }
                let mut r = rng(SEED ^ ((c.id() as u64) << 32) ^ i as u64);
                let sigma: BTreeSet<Action> = l.alphabet().union(m.alphabet()).cloned().collect();
                for _ in 0..100 {
                    let ctx = random_context(&mut r, &sigma);
                    checks += 1;
                    if !ltscong::equivalent(c, &ctx.apply(l), &ctx.apply(m)).equal {
                        return Err(format!("{}: pair #{i} separated by {ctx:?}", c.name()));
                    }
                }
            }
            Ok(checks)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("20 congruences x 200 pairs x 100 contexts = {total} checks, 0 violations"))
}

fn c8_lattice() -> Outcome {
    let pairs = lattice_pairs(1000, SEED ^ 8);
    if let Some((i, (a, b))) = pairs
        .par_iter()
        .enumerate()
        .find_map_first(|(i, (l, m))| lattice_violation(l, m).map(|v| (i, v)))
    {
        return Err(format!("pair #{i}: equal under {} but not {}", a.name(), b.name()));
    }
    if implies(CongruenceId::TR, CongruenceId::SF) || implies(CongruenceId::SF, CongruenceId::TR) {
        return Err("tr and sf are comparable".into());
    }
    let equal_counts: Vec<usize> = pairs
        .par_iter()
        .map(|(l, m)| verdict_table(l, m).iter().map(|v| v.equal as usize).collect::<Vec<_>>())
        .reduce(|| vec![0; 20], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(format!(
        "{} pairs, 0 violations (pairs equated per congruence: {:?}); tr and sf incomparable",
        pairs.len(),
        equal_counts
    ))
}

fn c9_tester(corpus: &[ltscong::Lts]) -> Outcome {
    let mut r = rng(SEED ^ 9);
    let (mut yes, mut no) = (0, 0);
    for n in 0..200 {
        let l = corpus.choose(&mut r).unwrap();
        let sigma: Vec<Action> = l.alphabet().iter().cloned().collect();
        let len = r.gen_range(0..=3);
        let trace: Vec<Action> = (0..len).filter_map(|_| sigma.choose(&mut r).cloned()).collect();
        let refusal: BTreeSet<Action> = sigma.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        let spec = TesterSpec::new(trace.clone(), refusal.clone(), l.alphabet().clone()).map_err(|e| e.to_string())?;
        let t = tester_sf(&spec);
        let k = trace.len();
        let in_sf = admits(&enumerate_bounded(l, k).fam(ComponentId::Sf, &trace), &refusal);
        let composed = parallel(l, &t);
        let in_dl = enumerate_bounded(&composed, k).dl.contains(&trace);
        let symbolic = Symbolic::new(&composed).bit(ComponentId::Dl, &trace);
        if in_sf != in_dl || in_dl != symbolic {
            return Err(format!("sample #{n}: Sf {in_sf}, Dl oracle {in_dl}, Dl symbolic {symbolic}"));
        }
        if in_sf {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("200 samples ({yes} in Sf, {no} not), 0 violations"))
}

fn c10_performance() -> Outcome {
    let mut worst = Duration::ZERO;
    for seed in 0..5u64 {
        let gen = |s: u64| {
            random_lts(&GenParams {
                states: 12,
                alphabet_size: 4,
                density: 2.0,
                tau_prob: 0.25,
                seed: SEED ^ (seed << 4) ^ s,
            })
        };
        let (l1, l2) = (gen(1), gen(2));
        let start = Instant::now();
        let _ = (normalize(&l1, true), normalize(&l2, true));
        let table = verdict_table(&l1, &l2);
        let took = start.elapsed();
        assert_eq!(table.len(), 20);
        worst = worst.max(took);
    }
    if worst < Duration::from_secs(1) {
        Ok(format!("worst of 5 pairs: {worst:?}"))
    } else {
        Err(format!("worst of 5 pairs: {worst:?}"))
    }
}

fn main() {
    let corpus = acceptance_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("catalogue and strictness witnesses", Box::new(c1_catalogue)),
        ("region classification", Box::new(c2_regions)),
        ("two minimal distinguishers", Box::new(c3_two_minimal)),
        ("oracle equivalence", Box::new(|| c4_oracle(&corpus))),
        ("identity suite", Box::new(|| c5_identities(&corpus))),
        ("lemma suite", Box::new(|| c6_lemmas(&corpus))),
        ("congruence fuzz", Box::new(c7_fuzz)),
        ("lattice soundness", Box::new(c8_lattice)),
        ("tester contracts", Box::new(|| c9_tester(&corpus))),
        ("performance sanity", Box::new(c10_performance)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
