//! The `.lts` text format.
//!
//! ```text
//! alphabet: a b c   # visible actions
//! init: s0
//! trans:
//! s0 a s1
//! s1 tau s0
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lts::{is_token, Action, Label, Lts, LtsBuilder};

pub fn parse_lts(text: &str) -> Result<Lts> {
    let mut alphabet: Option<BTreeSet<Action>> = None;
    let mut init: Option<String> = None;
    let mut in_trans = false;
    let mut trans: Vec<(usize, String, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| Error::Syntax {
            line: line_no,
            message: message.to_string(),
        };

        if let Some(rest) = line.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(syntax("second alphabet line"));
            }
            let mut set = BTreeSet::new();
            for tok in rest.split_whitespace() {
                if tok == "tau" {
                    return Err(Error::TauInAlphabet { line: line_no });
                }
                if !is_token(tok) {
                    return Err(syntax(&format!("bad action token `{tok}`")));
                }
                if !set.insert(Action::new(tok)?) {
                    return Err(Error::DuplicateAction {
                        line: line_no,
                        action: tok.to_string(),
                    });
                }
            }
            alphabet = Some(set);
        } else if let Some(rest) = line.strip_prefix("init:") {
            if init.is_some() {
                return Err(syntax("second init line"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match toks.as_slice() {
                [s] if is_token(s) && *s != "tau" => init = Some(s.to_string()),
                _ => return Err(syntax("init needs exactly one state name")),
            }
        } else if let Some(rest) = line.strip_prefix("trans:") {
            if in_trans {
                return Err(syntax("second trans section"));
            }
            if !rest.trim().is_empty() {
                return Err(syntax("transitions start on the line after `trans:`"));
            }
            in_trans = true;
        } else if in_trans {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [src, label, dst] = toks.as_slice() else {
                return Err(syntax("expected `source label target`"));
            };
            for t in [src, label, dst] {
                if !is_token(t) {
                    return Err(syntax(&format!("bad token `{t}`")));
                }
            }
            if *src == "tau" || *dst == "tau" {
                return Err(syntax("`tau` is not a state name"));
            }
            trans.push((line_no, src.to_string(), label.to_string(), dst.to_string()));
        } else {
            return Err(syntax("expected `alphabet:`, `init:` or `trans:`"));
        }
    }

    let alphabet = alphabet.ok_or(Error::MissingAlphabet)?;
    let init = init.ok_or(Error::MissingInit)?;
    let mut b = LtsBuilder::new();
    for a in &alphabet {
        b.action(a.clone());
    }
    let s0 = b.state(&init);
    b.initial(s0);
    for (line, src, label, dst) in trans {
        let label = if label == "tau" {
            Label::Tau
        } else {
            let a = Action::new(&label)?;
            if !alphabet.contains(&a) {
                return Err(Error::UndeclaredAction { line, action: label });
            }
            Label::Vis(a)
        };
        let s = b.state(&src);
        let t = b.state(&dst);
        b.transition(s, label, t);
    }
    b.build()
}

/// Canonical text: reachable transitions in BFS order (sorted labels),
/// followed by unreachable ones sorted by name. States without any
/// transition other than the initial one cannot be expressed and are lost.
pub fn render_lts(l: &Lts) -> String {
    let mut out = String::new();
    out.push_str("alphabet:");
    for a in l.alphabet() {
        out.push(' ');
        out.push_str(a.as_str());
    }
    out.push('\n');
    out.push_str(&format!("init: {}\n", l.name(l.initial())));
    out.push_str("trans:\n");

    let mut order = l.bfs_order();
    let reach = l.reachable();
    let mut rest: Vec<usize> = (0..l.num_states()).filter(|&s| !reach[s]).collect();
    rest.sort_by(|&a, &b| l.name(a).cmp(l.name(b)));
    order.extend(rest);

    for s in order {
        let mut lines: Vec<(&Label, &str)> = l.succ(s).iter().map(|(lab, t)| (lab, l.name(*t))).collect();
        lines.sort();
        for (lab, t) in lines {
            out.push_str(&format!("{} {} {}\n", l.name(s), lab, t));
        }
    }
    out
}
