//! Finite labelled transition systems, process operators, annotated normal
//! forms, and decision procedures for the 20 linear-time congruences that
//! exist on finite LTSs.

pub mod bisim;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod expr;
pub mod format;
pub mod lts;
pub mod normal_form;
pub mod operators;
pub mod oracle;
mod partition;
pub mod refusal;
pub mod semantics;
pub mod testers;
pub mod una;
pub mod witnesses;

pub use congruence::{equivalent, verdict_table, CongruenceId, Verdict, Witness};
pub use error::{Error, Result};
pub use format::{parse_lts, render_lts};
pub use lts::{Action, Label, Lts, LtsBuilder, StateId};
pub use normal_form::{normalize, NormalForm};
pub use semantics::ComponentId;
