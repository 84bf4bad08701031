//! A frozen pair of LTSs for every edge of the lattice's Hasse diagram. Each
//! pair is equal under the weaker congruence and different under the
//! stronger one, so no two congruences coincide.
//!
//! The pairs were found by `examples/find_witnesses.rs` and are the smallest
//! ones its corpus produced.

use crate::congruence::{equivalent, CongruenceId};
use crate::error::Result;
use crate::format::parse_lts;
use crate::lts::Lts;

#[derive(Clone, Copy, Debug)]
pub struct EdgeWitness {
    pub stronger: u8,
    pub weaker: u8,
    pub left: &'static str,
    pub right: &'static str,
}

impl EdgeWitness {
    pub fn parse(&self) -> Result<(Lts, Lts)> {
        Ok((parse_lts(self.left)?, parse_lts(self.right)?))
    }

    /// True iff the pair separates the edge.
    pub fn holds(&self) -> Result<bool> {
        let (l, r) = self.parse()?;
        let up = CongruenceId::new(self.stronger)?;
        let down = CongruenceId::new(self.weaker)?;
        Ok(equivalent(down, &l, &r).equal && !equivalent(up, &l, &r).equal)
    }
}

pub const EDGE_WITNESSES: [EdgeWitness; 30] = [
    // alph > dullest
    EdgeWitness {
        stronger: 2,
        weaker: 1,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
        ),
    },
    // tr > alph
    EdgeWitness {
        stronger: 3,
        weaker: 2,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
        ),
    },
    // sf > alph
    EdgeWitness {
        stronger: 4,
        weaker: 2,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
        ),
    },
    // tr-sf > tr
    EdgeWitness {
        stronger: 5,
        weaker: 3,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
    },
    // tr-sf > sf
    EdgeWitness {
        stronger: 5,
        weaker: 4,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s0\n",
        ),
    },
    // sf-mind > sf
    EdgeWitness {
        stronger: 6,
        weaker: 4,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
    },
    // sf-mind > csp-fdi
    EdgeWitness {
        stronger: 6,
        weaker: 15,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
    },
    // tr-sf-mind > tr-sf
    EdgeWitness {
        stronger: 7,
        weaker: 5,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
    },
    // tr-sf-mind > sf-mind
    EdgeWitness {
        stronger: 7,
        weaker: 6,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s0\n",
        ),
    },
    // tr-sf-mind > tr-anf-mind
    EdgeWitness {
        stronger: 7,
        weaker: 16,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 tau s1\n",
            "s1 a s0\n",
        ),
    },
    // cffd-fin > tr-sf-mind
    EdgeWitness {
        stronger: 8,
        weaker: 7,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 tau s1\n",
            "s1 a s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 tau s1\n",
            "s1 a s1\n",
        ),
    },
    // cffd-fin > ndfd-fin
    EdgeWitness {
        stronger: 8,
        weaker: 20,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 tau s1\n",
            "s1 a s1\n",
        ),
    },
    // ant-mind > alph
    EdgeWitness {
        stronger: 9,
        weaker: 2,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
        ),
    },
    // tr-mind > tr
    EdgeWitness {
        stronger: 10,
        weaker: 3,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
    },
    // tr-mind > ant-mind
    EdgeWitness {
        stronger: 10,
        weaker: 9,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s0\n",
        ),
    },
    // tr-div > tr-mind
    EdgeWitness {
        stronger: 11,
        weaker: 10,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 tau s1\n",
            "s1 a s0\n",
        ),
    },
    // sanf-mind > ant-mind
    EdgeWitness {
        stronger: 12,
        weaker: 9,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 a s1\n",
            "s1 b s0\n",
        ),
    },
    // tr-sanf-mind > tr-mind
    EdgeWitness {
        stronger: 13,
        weaker: 10,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 a s1\n",
            "s1 b s0\n",
        ),
    },
    // tr-sanf-mind > sanf-mind
    EdgeWitness {
        stronger: 13,
        weaker: 12,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s0\n",
        ),
    },
    // tr-sanf-div > tr-div
    EdgeWitness {
        stronger: 14,
        weaker: 11,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 a s1\n",
            "s1 b s0\n",
        ),
    },
    // tr-sanf-div > tr-sanf-mind
    EdgeWitness {
        stronger: 14,
        weaker: 13,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 tau s1\n",
            "s1 a s0\n",
        ),
    },
    // csp-fdi > sanf-mind
    EdgeWitness {
        stronger: 15,
        weaker: 12,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s2\n",
            "s2 tau s0\n",
            "s2 b s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s3\n",
            "s3 a s3\n",
            "s3 b s2\n",
            "s2 tau s0\n",
            "s2 tau s2\n",
        ),
    },
    // tr-anf-mind > tr-sanf-mind
    EdgeWitness {
        stronger: 16,
        weaker: 13,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s3\n",
            "s0 b s2\n",
            "s3 tau s2\n",
            "s2 tau s2\n",
            "s2 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s1\n",
            "s0 a s2\n",
            "s1 b s2\n",
            "s2 tau s2\n",
            "s2 b s0\n",
        ),
    },
    // tr-anf-mind > csp-fdi
    EdgeWitness {
        stronger: 16,
        weaker: 15,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s0\n",
        ),
    },
    // tr-anf-div > tr-sanf-div
    EdgeWitness {
        stronger: 17,
        weaker: 14,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s3\n",
            "s0 b s2\n",
            "s3 tau s2\n",
            "s2 tau s2\n",
            "s2 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s1\n",
            "s0 a s2\n",
            "s1 b s2\n",
            "s2 tau s2\n",
            "s2 b s0\n",
        ),
    },
    // tr-anf-div > tr-anf-mind
    EdgeWitness {
        stronger: 17,
        weaker: 16,
        left: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s0\n",
            "s0 a s1\n",
            "s1 tau s1\n",
        ),
        right: concat!(
            "alphabet: a\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s1\n",
            "s1 tau s1\n",
            "s1 a s0\n",
        ),
    },
    // snf-div > tr-sanf-div
    EdgeWitness {
        stronger: 18,
        weaker: 14,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s1\n",
            "s1 a s1\n",
            "s1 b s1\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 tau s2\n",
            "s2 a s2\n",
            "s2 a s3\n",
            "s3 b s2\n",
            "s3 b s3\n",
        ),
    },
    // anf-snf-div > tr-anf-div
    EdgeWitness {
        stronger: 19,
        weaker: 17,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 a s1\n",
            "s1 a s1\n",
            "s1 b s1\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 tau s2\n",
            "s2 a s2\n",
            "s2 a s3\n",
            "s3 b s2\n",
            "s3 b s3\n",
        ),
    },
    // anf-snf-div > snf-div
    EdgeWitness {
        stronger: 19,
        weaker: 18,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 a s3\n",
            "s0 b s2\n",
            "s3 tau s2\n",
            "s2 tau s2\n",
            "s2 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s1\n",
            "s0 a s2\n",
            "s1 b s2\n",
            "s2 tau s2\n",
            "s2 b s0\n",
        ),
    },
    // ndfd-fin > anf-snf-div
    EdgeWitness {
        stronger: 20,
        weaker: 19,
        left: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s0\n",
            "s0 b s3\n",
            "s3 a s0\n",
            "s3 b s0\n",
        ),
        right: concat!(
            "alphabet: a b\n",
            "init: s0\n",
            "trans:\n",
            "s0 tau s2\n",
            "s0 b s3\n",
            "s2 tau s0\n",
            "s3 tau s1\n",
            "s3 a s2\n",
            "s1 b s2\n",
        ),
    },
];
