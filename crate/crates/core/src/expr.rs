//! Process expressions over named LTSs.
//!
//! ```text
//! expr   := NAME | const | "prefix(" ACT "," expr ")" | "hide(" aset "," expr ")"
//!         | "rename(" pairs "," expr ")" | "par(" expr "," expr ")"
//!         | "ichoice(" expr "," expr ")" | "ichoice_composed(" expr "," expr ")"
//!         | "tag(" INT "," expr ")" | "untag(" INT "," expr ")"
//!         | "tester_sf(" trace "," aset "," aset ")"
//!         | "tester_tr(" trace "," aset "," aset ")"
//!         | "tester_loop(" trace "," ACT "," aset ")"
//! const  := ("stop"|"run"|"rd"|"rdl") "(" aset ")" | "lc"
//! aset   := "{" [ACT ("," ACT)*] "}"
//! pairs  := "{" [ACT "->" ACT ("," ACT "->" ACT)*] "}"
//! trace  := "[" [ACT ("," ACT)*] "]"
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lts::{is_token, Action, Lts};
use crate::operators::{
    hide, internal_choice, internal_choice_composed, make_constant, parallel, prefix, rename,
    retag_down, retag_up, ConstantKind, RenameRelation,
};
use crate::testers::{tester_sf, tester_tr, tester_trace_loop, TesterSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProcessExpr {
    Ref(String),
    Const(ConstantKind, BTreeSet<Action>),
    Prefix(Action, Box<ProcessExpr>),
    Hide(BTreeSet<Action>, Box<ProcessExpr>),
    Rename(RenameRelation, Box<ProcessExpr>),
    Par(Box<ProcessExpr>, Box<ProcessExpr>),
    IChoice(Box<ProcessExpr>, Box<ProcessExpr>),
    IChoiceComposed(Box<ProcessExpr>, Box<ProcessExpr>),
    Tag(u32, Box<ProcessExpr>),
    Untag(u32, Box<ProcessExpr>),
    TesterSf(TesterSpec),
    TesterTr(Vec<Action>, BTreeSet<Action>, BTreeSet<Action>),
    TesterLoop(Vec<Action>, Action, BTreeSet<Action>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(&'static str),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if text[i..].starts_with("->") {
            out.push((i, Tok::Punct("->")));
            i += 2;
        } else if let Some(p) = ["(", ")", "{", "}", "[", "]", ","].into_iter().find(|p| text[i..].starts_with(p)) {
            out.push((i, Tok::Punct(p)));
            i += 1;
        } else if is_token(&c.to_string()) {
            let start = i;
            while i < bytes.len() && is_token(&(bytes[i] as char).to_string()) {
                i += 1;
            }
            out.push((start, Tok::Word(text[start..i].to_string())));
        } else {
            return Err(Error::Expr {
                offset: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

impl Parser {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Expr {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn punct(&mut self, p: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Punct(q)) if *q == p => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{p}`")),
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn word(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err("expected a name"),
        }
    }

    fn action(&mut self, context: &'static str) -> Result<Action> {
        let w = self.word()?;
        if w == "tau" {
            return Err(Error::TauNotAllowed(context));
        }
        Action::new(&w)
    }

    fn int(&mut self) -> Result<u32> {
        let w = self.word()?;
        w.parse().or_else(|_| self.err(format!("expected an integer, got `{w}`")))
    }

    fn list<T>(
        &mut self,
        open: &str,
        close: &str,
        mut item: impl FnMut(&mut Self) -> Result<T>,
    ) -> Result<Vec<T>> {
        self.punct(open)?;
        let mut out = Vec::new();
        if self.at_punct(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.at_punct(",") {
                self.pos += 1;
            } else {
                self.punct(close)?;
                return Ok(out);
            }
        }
    }

    fn aset(&mut self, context: &'static str) -> Result<BTreeSet<Action>> {
        Ok(self.list("{", "}", |p| p.action(context))?.into_iter().collect())
    }

    fn trace(&mut self) -> Result<Vec<Action>> {
        self.list("[", "]", |p| p.action("trace"))
    }

    fn pairs(&mut self) -> Result<RenameRelation> {
        let pairs = self.list("{", "}", |p| {
            let a = p.action("rename")?;
            p.punct("->")?;
            let b = p.action("rename")?;
            Ok((a, b))
        })?;
        Ok(RenameRelation::new(pairs))
    }

    fn expr(&mut self) -> Result<ProcessExpr> {
        let head = self.word()?;
        if !self.at_punct("(") {
            return Ok(match head.as_str() {
                "lc" => ProcessExpr::Const(ConstantKind::Lc, BTreeSet::new()),
                _ => ProcessExpr::Ref(head),
            });
        }
        self.pos += 1;
        let e = match head.as_str() {
            "stop" | "run" | "rd" | "rdl" => {
                self.pos -= 1;
                let kind = match head.as_str() {
                    "stop" => ConstantKind::Stop,
                    "run" => ConstantKind::Run,
                    "rd" => ConstantKind::Rd,
                    _ => ConstantKind::Rdl,
                };
                self.punct("(")?;
                let set = self.aset("constant")?;
                self.punct(")")?;
                return Ok(ProcessExpr::Const(kind, set));
            }
            "prefix" => {
                let a = self.action("prefix")?;
                self.punct(",")?;
                ProcessExpr::Prefix(a, Box::new(self.expr()?))
            }
            "hide" => {
                let set = self.aset("hide")?;
                self.punct(",")?;
                ProcessExpr::Hide(set, Box::new(self.expr()?))
            }
            "rename" => {
                let phi = self.pairs()?;
                self.punct(",")?;
                ProcessExpr::Rename(phi, Box::new(self.expr()?))
            }
            "par" | "ichoice" | "ichoice_composed" => {
                let l = Box::new(self.expr()?);
                self.punct(",")?;
                let r = Box::new(self.expr()?);
                match head.as_str() {
                    "par" => ProcessExpr::Par(l, r),
                    "ichoice" => ProcessExpr::IChoice(l, r),
                    _ => ProcessExpr::IChoiceComposed(l, r),
                }
            }
            "tag" | "untag" => {
                let i = self.int()?;
                self.punct(",")?;
                let e = Box::new(self.expr()?);
                if head == "tag" {
                    ProcessExpr::Tag(i, e)
                } else {
                    ProcessExpr::Untag(i, e)
                }
            }
            "tester_sf" | "tester_tr" => {
                let t = self.trace()?;
                self.punct(",")?;
                let a = self.aset(if head == "tester_sf" { "tester_sf" } else { "tester_tr" })?;
                self.punct(",")?;
                let sigma = self.aset("tester alphabet")?;
                if head == "tester_sf" {
                    ProcessExpr::TesterSf(TesterSpec::new(t, a, sigma)?)
                } else {
                    ProcessExpr::TesterTr(t, a, sigma)
                }
            }
            "tester_loop" => {
                let t = self.trace()?;
                self.punct(",")?;
                let b = self.action("tester_loop")?;
                self.punct(",")?;
                let sigma = self.aset("tester alphabet")?;
                ProcessExpr::TesterLoop(t, b, sigma)
            }
            other => return self.err(format!("unknown operator `{other}`")),
        };
        self.punct(")")?;
        Ok(e)
    }
}

pub fn parse_expr(text: &str) -> Result<ProcessExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluates bottom-up, trimming to the reachable part after every step.
pub fn eval_expr(e: &ProcessExpr, env: &BTreeMap<String, Lts>) -> Result<Lts> {
    let ev = |x: &ProcessExpr| eval_expr(x, env);
    let l = match e {
        ProcessExpr::Ref(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnresolvedName(name.clone()))?,
        ProcessExpr::Const(kind, set) => make_constant(*kind, set),
        ProcessExpr::Prefix(a, x) => prefix(a, &ev(x)?),
        ProcessExpr::Hide(set, x) => hide(set, &ev(x)?),
        ProcessExpr::Rename(phi, x) => rename(phi, &ev(x)?),
        ProcessExpr::Par(x, y) => parallel(&ev(x)?, &ev(y)?),
        ProcessExpr::IChoice(x, y) => internal_choice(&ev(x)?, &ev(y)?),
        ProcessExpr::IChoiceComposed(x, y) => internal_choice_composed(&ev(x)?, &ev(y)?)?,
        ProcessExpr::Tag(i, x) => retag_up(*i, &ev(x)?)?,
        ProcessExpr::Untag(i, x) => retag_down(*i, &ev(x)?)?,
        ProcessExpr::TesterSf(spec) => tester_sf(spec),
        ProcessExpr::TesterTr(t, loops, sigma) => tester_tr(t, loops, sigma),
        ProcessExpr::TesterLoop(t, b, sigma) => tester_trace_loop(t, b, sigma)?,
    };
    Ok(l.reachable_part())
}

pub fn eval_str(text: &str, env: &BTreeMap<String, Lts>) -> Result<Lts> {
    eval_expr(&parse_expr(text)?, env)
}
