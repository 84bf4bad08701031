//! Command-line front end. `dispatch` does all the work so that it can be
//! driven from tests with in-memory streams.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bisim::{bisim_quotient, bisimilar};
use crate::congruence::{
    canonical_form, equivalent, hasse_edges, implies, lattice_dot, maximal_equating, minimal_distinguishing,
    verdict_table, CongruenceId, Verdict,
};
use crate::error::{Error, Result};
use crate::expr::eval_str;
use crate::format::{parse_lts, render_lts};
use crate::lts::{render_trace, Lts};
use crate::normal_form::{normalize_with, NormalForm, NormalizeOptions};
use crate::oracle::{crosscheck, random_lts, CrosscheckReport, GenParams};
use crate::semantics::{trace_observation, ComponentId, ObsValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "ltscong", version, about = "Finite LTSs and their linear-time congruences")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse `.lts` or `.pexp` files and report their size.
    Validate { files: Vec<PathBuf> },
    /// Evaluate a process expression and print the resulting `.lts`.
    Eval {
        #[arg(short = 'e', long = "expr")]
        expr: Option<String>,
        file: Option<PathBuf>,
        /// Bind NAME=FILE for use inside the expression.
        #[arg(long = "env")]
        env: Vec<String>,
    },
    /// Print the annotated normal form.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        no_history: bool,
        #[arg(long)]
        no_quotient: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dump one semantic component.
    Sem {
        file: PathBuf,
        #[arg(long)]
        component: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide one congruence. Exit 0 if equal, 1 if not.
    Eq {
        #[arg(long)]
        cong: String,
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide all 20 congruences and report the weakest distinguishing ones.
    Distinguish {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the congruence lattice or query one implication.
    Lattice {
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Two congruences C1 C2: exit 0 if C1 implies C2, 1 otherwise.
        #[arg(long, num_args = 2, value_names = ["C1", "C2"])]
        implies: Option<Vec<String>>,
    },
    /// Strong bisimilarity. Exit 0 if bisimilar, 1 if not.
    Bisim { left: PathBuf, right: PathBuf },
    /// Bisimulation quotient, or the canonical form under `--cong`.
    Minimize {
        file: PathBuf,
        #[arg(long)]
        cong: Option<String>,
    },
    /// Emit a seeded random `.lts`.
    Random {
        #[arg(long, default_value_t = 5)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0.2)]
        tau: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the symbolic semantics with the brute-force oracle.
    Crosscheck {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What `emit_report` can render.
pub enum Report<'a> {
    Verdicts {
        left: &'a str,
        right: &'a str,
        verdicts: &'a [Verdict],
    },
    Lattice,
    Crosscheck {
        file: &'a str,
        report: &'a CrosscheckReport,
    },
}

fn names(cs: &[CongruenceId]) -> Vec<&'static str> {
    cs.iter().map(|c| c.name()).collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn emit_report(r: &Report<'_>, format: Format) -> Result<String> {
    match (r, format) {
        (Report::Verdicts { left, right, verdicts }, Format::Json) => Ok(pretty(&json!({
            "left": left,
            "right": right,
            "verdicts": verdicts.iter().map(Verdict::to_json).collect::<Vec<_>>(),
            "minimal_distinguishing": names(&minimal_distinguishing(verdicts)),
            "maximal_equating": names(&maximal_equating(verdicts)),
        }))),
        (Report::Verdicts { verdicts, .. }, Format::Text) => {
            let mut out = String::new();
            for v in verdicts.iter() {
                let c = v.congruence;
                let tag = if v.equal { "EQUAL" } else { "DIFFER" };
                match &v.witness {
                    Some(w) => out.push_str(&format!("{} {} {} {}\n", c.id(), c.name(), tag, w)),
                    None => out.push_str(&format!("{} {} {}\n", c.id(), c.name(), tag)),
                }
            }
            out.push_str(&format!(
                "minimal distinguishing: {}\n",
                names(&minimal_distinguishing(verdicts)).join(" ")
            ));
            out.push_str(&format!("maximal equating: {}\n", names(&maximal_equating(verdicts)).join(" ")));
            Ok(out)
        }
        (Report::Verdicts { verdicts, .. }, Format::Dot) => {
            // The lattice with equating congruences filled.
            let equal: Vec<CongruenceId> = verdicts.iter().filter(|v| v.equal).map(|v| v.congruence).collect();
            let mut out = String::from("digraph verdicts {\n  rankdir=BT;\n  node [style=filled];\n");
            for c in CongruenceId::all() {
                let color = if equal.contains(&c) { "palegreen" } else { "lightpink" };
                out.push_str(&format!(
                    "  c{} [label=\"{} {}\", fillcolor={}];\n",
                    c.id(),
                    c.id(),
                    c.name(),
                    color
                ));
            }
            for (u, l) in hasse_edges() {
                out.push_str(&format!("  c{} -> c{};\n", l.id(), u.id()));
            }
            out.push_str("}\n");
            Ok(out)
        }
        (Report::Lattice, Format::Dot) => Ok(lattice_dot()),
        (Report::Lattice, Format::Json) => {
            let nodes: Vec<Value> = CongruenceId::all()
                .map(|c| {
                    json!({
                        "id": c.id(),
                        "name": c.name(),
                        "signature": c.signature().iter().map(|s| s.name()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let edges: Vec<Value> = hasse_edges()
                .into_iter()
                .map(|(u, l)| json!({"stronger": u.id(), "weaker": l.id()}))
                .collect();
            Ok(pretty(&json!({"congruences": nodes, "hasse_edges": edges})))
        }
        (Report::Lattice, Format::Text) => {
            let mut out = String::new();
            for c in CongruenceId::all() {
                let sig: Vec<&str> = c.signature().iter().map(|s| s.name()).collect();
                out.push_str(&format!("{} {} {{{}}}\n", c.id(), c.name(), sig.join(",")));
            }
            for (u, l) in hasse_edges() {
                out.push_str(&format!("{} > {}\n", u.name(), l.name()));
            }
            Ok(out)
        }
        (Report::Crosscheck { file, report }, Format::Json) => {
            let mut v = report.to_json();
            v["file"] = json!(file);
            Ok(pretty(&v))
        }
        (Report::Crosscheck { file, report }, Format::Text) => Ok(format!("{file}: {report}\n")),
        (Report::Crosscheck { .. }, Format::Dot) => Err(Error::UnsupportedFormat("dot for crosscheck".into())),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Loads a `.lts` file, or evaluates a `.pexp` file in `env`.
fn load(path: &Path, env: &BTreeMap<String, Lts>) -> Result<Lts> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "pexp") {
        eval_str(&text, env)
    } else {
        parse_lts(&text)
    }
}

fn load_plain(path: &Path) -> Result<Lts> {
    load(path, &BTreeMap::new())
}

fn normal_form_text(nf: &NormalForm) -> String {
    let alphabet: Vec<&str> = nf.alphabet().iter().map(|a| a.as_str()).collect();
    let mut out = format!("alphabet: {}\ninit: q0\n", alphabet.join(" "));
    for q in 0..nf.num_states() {
        out.push_str(&format!("q{q}"));
        if let Some(a) = nf.annotation(q) {
            out.push_str(&format!(" div={} refusals={}", a.divergent as u8, nf.render_refusals(&a.refusals)));
        }
        if let Some(h) = nf.history(q) {
            out.push_str(&format!(" hist={}", h.name()));
        }
        for (a, t) in nf.row(q).iter().enumerate() {
            if let Some(t) = t {
                out.push_str(&format!(" {}->q{}", nf.alphabet()[a], t));
            }
        }
        out.push('\n');
    }
    out
}

/// Words over the alphabet up to `depth`, in shortlex order.
fn shortlex(nf: &NormalForm, depth: usize) -> Vec<Vec<crate::lts::Action>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for a in nf.alphabet() {
                let mut v: Vec<_> = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn sem_text(c: ComponentId, nf: &NormalForm, depth: usize) -> Result<String> {
    let mut out = String::new();
    for w in shortlex(nf, depth) {
        match trace_observation(c, nf, &w)? {
            ObsValue::Bit(true) => out.push_str(&format!("{}\n", render_trace(&w))),
            ObsValue::Refusals(r) if !r.is_empty() => {
                out.push_str(&format!("{} {}\n", render_trace(&w), nf.render_refusals(&r)))
            }
            _ => {}
        }
    }
    Ok(out)
}

enum Outcome {
    Ok(String),
    Exit(String, i32),
}

fn run(cmd: Command) -> Result<Outcome> {
    let out = match cmd {
        Command::Validate { files } => {
            let mut out = String::new();
            for f in files {
                let l = load_plain(&f)?;
                out.push_str(&format!(
                    "{}: ok, {} states, {} transitions, {} actions\n",
                    f.display(),
                    l.num_states(),
                    l.num_transitions(),
                    l.alphabet().len()
                ));
            }
            Outcome::Ok(out)
        }
        Command::Eval { expr, file, env } => {
            let mut bindings = BTreeMap::new();
            for e in env {
                let (name, path) = e
                    .split_once('=')
                    .ok_or_else(|| Error::Expr { offset: 0, message: format!("--env expects NAME=FILE, got `{e}`") })?;
                bindings.insert(name.to_string(), load(Path::new(path), &bindings)?);
            }
            let text = match (expr, file) {
                (Some(e), None) => e,
                (None, Some(f)) => read(&f)?,
                _ => {
                    return Err(Error::Expr {
                        offset: 0,
                        message: "give exactly one of -e EXPR or a .pexp file".into(),
                    })
                }
            };
            Outcome::Ok(render_lts(&eval_str(&text, &bindings)?))
        }
        Command::Normalize {
            file,
            no_history,
            no_quotient,
            format,
        } => {
            let nf = normalize_with(
                &load_plain(&file)?,
                NormalizeOptions {
                    history: !no_history,
                    quotient: !no_quotient,
                },
            );
            Outcome::Ok(match format {
                Format::Text => normal_form_text(&nf),
                Format::Dot => nf.to_dot(),
                Format::Json => pretty(&nf.to_json()),
            })
        }
        Command::Sem {
            file,
            component,
            depth,
            format,
        } => {
            let c: ComponentId = component.parse()?;
            let nf = normalize_with(
                &load_plain(&file)?,
                NormalizeOptions {
                    history: c.needs_history(),
                    quotient: true,
                },
            );
            Outcome::Ok(match format {
                Format::Text => sem_text(c, &nf, depth)?,
                Format::Dot => nf.to_dot(),
                Format::Json => pretty(&nf.to_json()),
            })
        }
        Command::Eq {
            cong,
            left,
            right,
            format,
        } => {
            let c: CongruenceId = cong.parse()?;
            let v = equivalent(c, &load_plain(&left)?, &load_plain(&right)?);
            let text = match format {
                Format::Json => {
                    let mut j = v.to_json();
                    j["left"] = json!(left.display().to_string());
                    j["right"] = json!(right.display().to_string());
                    pretty(&j)
                }
                Format::Text => match &v.witness {
                    Some(w) => format!("{} {} DIFFER {}\n", c.id(), c.name(), w),
                    None => format!("{} {} EQUAL\n", c.id(), c.name()),
                },
                Format::Dot => return Err(Error::UnsupportedFormat("dot for eq".into())),
            };
            Outcome::Exit(text, if v.equal { 0 } else { 1 })
        }
        Command::Distinguish { left, right, format } => {
            let verdicts = verdict_table(&load_plain(&left)?, &load_plain(&right)?);
            let (l, r) = (left.display().to_string(), right.display().to_string());
            Outcome::Ok(emit_report(
                &Report::Verdicts {
                    left: &l,
                    right: &r,
                    verdicts: &verdicts,
                },
                format,
            )?)
        }
        Command::Lattice { dot, format, implies: q } => {
            if let Some(pair) = q {
                let c1: CongruenceId = pair[0].parse()?;
                let c2: CongruenceId = pair[1].parse()?;
                let yes = implies(c1, c2);
                let word = if yes { "implies" } else { "does not imply" };
                return Ok(Outcome::Exit(
                    format!("{} {} {}\n", c1.name(), word, c2.name()),
                    if yes { 0 } else { 1 },
                ));
            }
            let format = if dot { Format::Dot } else { format.unwrap_or(Format::Text) };
            Outcome::Ok(emit_report(&Report::Lattice, format)?)
        }
        Command::Bisim { left, right } => match bisimilar(&load_plain(&left)?, &load_plain(&right)?) {
            Some(rel) => Outcome::Exit(format!("bisimilar ({} related pairs)\n", rel.len()), 0),
            None => Outcome::Exit("not bisimilar\n".into(), 1),
        },
        Command::Minimize { file, cong } => {
            let l = load_plain(&file)?;
            match cong {
                None => Outcome::Ok(render_lts(&bisim_quotient(&l))),
                Some(c) => Outcome::Ok(canonical_form(c.parse()?, &l)),
            }
        }
        Command::Random {
            states,
            alphabet,
            density,
            tau,
            seed,
        } => Outcome::Ok(render_lts(&random_lts(&GenParams {
            states,
            alphabet_size: alphabet,
            density,
            tau_prob: tau,
            seed,
        }))),
        Command::Crosscheck { file, depth, format } => {
            let report = crosscheck(&load_plain(&file)?, depth);
            let f = file.display().to_string();
            let text = emit_report(&Report::Crosscheck { file: &f, report: &report }, format)?;
            Outcome::Exit(text, if report.passed() { 0 } else { 1 })
        }
    };
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code; 2 means a usage or input error.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (text, code) = match run(cli.cmd) {
        Ok(Outcome::Ok(t)) => (t, 0),
        Ok(Outcome::Exit(t, c)) => (t, c),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}
