//! Logical-form construction: quantifier raising, copy reconstruction of the
//! elided comparative complement, WH binding, complement scope enumeration
//! and the acceptability judge.

mod judge;
mod scope;
mod transform;

use std::fmt;

use thiserror::Error;

use crate::grammar::{ConstructionTag, Index, Node, SurfaceTree};

pub use judge::{judge, judge_sentence, Judgment, Verdict};
pub use scope::{enumerate_scopes, ScopeAssignment, ScopeChoice, ScopeOrder};
pub use transform::{acd_reconstruct, build_lf, check_bindings, qr_comparative_np, qr_correlate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LfError {
    #[error("transformation not applicable: {0}")]
    NotApplicable(String),
    #[error("the correlate has already been raised")]
    RedundantQr,
    #[error("trace t_{0} has no unique c-commanding binder")]
    UnboundTrace(Index),
    #[error("the copied clause contains the comparative determiner")]
    DeterminerCopied,
    #[error("unexpected tree shape: {0}")]
    Malformed(String),
}

/// How far along the fixed transformation sequence a tree is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LfStage {
    Surface,
    ComparativeRaised,
    CorrelateRaised,
    Reconstructed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub name: &'static str,
    pub before: String,
    pub after: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfTree {
    pub root: Node,
    pub tag: ConstructionTag,
    pub stage: LfStage,
    /// Index identifications made by WH insertion, e.g. `j = i`.
    pub bindings: Vec<(Index, Index)>,
    pub log: Vec<DerivationStep>,
}

impl LfTree {
    pub fn from_surface(tree: &SurfaceTree) -> Self {
        LfTree {
            root: tree.root.clone(),
            tag: tree.tag(),
            stage: LfStage::Surface,
            bindings: Vec::new(),
            log: Vec::new(),
        }
    }

    pub fn paper(&self) -> String {
        self.root.paper()
    }

    pub fn bracket(&self) -> String {
        self.root.bracket()
    }

    /// The derivation log as numbered snapshots, starting from the input.
    pub fn render_derivation(&self) -> String {
        let mut out = String::new();
        if let Some(first) = self.log.first() {
            out.push_str(&format!("(0) input: {}\n", first.before));
        }
        for (k, step) in self.log.iter().enumerate() {
            out.push_str(&format!("({}) {}: {}\n", k + 1, step.name, step.after));
        }
        out
    }

    pub fn snapshots(&self) -> Vec<String> {
        self.log.iter().map(|s| s.after.clone()).collect()
    }

    pub(crate) fn record(&mut self, name: &'static str, before: String) {
        let after = self.paper();
        self.log.push(DerivationStep { name, before, after });
    }
}

impl fmt::Display for LfTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.paper())
    }
}
