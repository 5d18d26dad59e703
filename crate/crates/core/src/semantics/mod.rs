//! Semantic composition: the lexicon of meanings, the composition engine for
//! each construction and the readings it produces.

mod compose;
mod lexicon;

use std::fmt;

use thiserror::Error;

use crate::grammar::ConstructionTag;
use crate::lambda::{
    alpha_equal, apply_fa, apply_gfa, extend_existential_scope, normalize, print_term, quantify_in, LambdaError, Term,
    Var,
};
use crate::lf::{LfError, ScopeAssignment};

pub use compose::{compose, compose_nra, compose_plain, compose_pred, compose_wra, resolve_p0};
pub use lexicon::{SemLexicon, C0, P0};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemanticsError {
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Lf(#[from] LfError),
    #[error("narrow attributive comparatives need a referential complement, found {0}")]
    QuantifiedComplement(String),
    #[error("no antecedent for the anaphoric relation")]
    NoAntecedent,
    #[error("the anaphoric relation is unresolved in the final form")]
    UnresolvedAnaphor,
    #[error("final form has free variables: {0}")]
    NotClosed(String),
    #[error("not a sentence: {0}")]
    NotASentence(String),
    #[error("no lexical meaning for {0}")]
    MissingEntry(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unexpected structure: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Fa,
    Gfa,
    QuantifyIn,
    ResolveP0,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fa => "FA",
            Mode::Gfa => "GFA",
            Mode::QuantifyIn => "QI",
            Mode::ResolveP0 => "P0",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TraceStep {
    Lexical {
        node: String,
        term: Term,
    },
    Combine {
        node: String,
        mode: Mode,
        function: Term,
        argument: Term,
        target: Option<Var>,
        result: Term,
    },
}

impl TraceStep {
    pub fn node(&self) -> &str {
        match self {
            TraceStep::Lexical { node, .. } | TraceStep::Combine { node, .. } => node,
        }
    }

    pub fn result(&self) -> &Term {
        match self {
            TraceStep::Lexical { term, .. } => term,
            TraceStep::Combine { result, .. } => result,
        }
    }

    /// Recomputes a combination step from its inputs.
    pub fn replay(&self) -> Result<Term, SemanticsError> {
        match self {
            TraceStep::Lexical { term, .. } => Ok(term.clone()),
            TraceStep::Combine {
                mode,
                function,
                argument,
                target,
                ..
            } => combine(*mode, function, argument, target.as_ref()),
        }
    }
}

/// One combination step as performed by the engine, scope extension included.
pub(crate) fn combine(mode: Mode, f: &Term, a: &Term, target: Option<&Var>) -> Result<Term, SemanticsError> {
    let raw = match mode {
        Mode::Fa => apply_fa(f, a)?,
        Mode::Gfa => apply_gfa(f, a)?,
        Mode::QuantifyIn => {
            let v = target.ok_or_else(|| SemanticsError::Malformed("quantifying-in without a target".into()))?;
            quantify_in(f, a, v)?
        }
        Mode::ResolveP0 => normalize(&a.replace_constant(P0, f)),
    };
    Ok(extend_existential_scope(&raw))
}

#[derive(Clone, Debug, PartialEq)]
pub struct P0Resolution {
    /// The degree relation substituted for the anaphor, e.g. `fast' car'`.
    pub antecedent: Term,
    /// The surface material it was taken from.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reading {
    pub form: Term,
    pub scope: ScopeAssignment,
    pub tag: ConstructionTag,
    pub p0: Option<P0Resolution>,
    /// Meaning of the comparative complement before anaphora resolution.
    pub complement: Option<Term>,
    pub trace: Vec<TraceStep>,
}

impl Reading {
    /// The complement meaning with the anaphor instantiated.
    pub fn resolved_complement(&self) -> Option<Term> {
        let c = self.complement.as_ref()?;
        Some(match &self.p0 {
            Some(r) => extend_existential_scope(&normalize(&c.replace_constant(P0, &r.antecedent))),
            None => c.clone(),
        })
    }

    /// Whether replaying every combination step reproduces the recorded
    /// results and the last step yields the final form.
    pub fn verify_trace(&self) -> bool {
        let steps_ok = self
            .trace
            .iter()
            .all(|s| s.replay().is_ok_and(|t| alpha_equal(&t, s.result())));
        steps_ok && self.trace.last().is_some_and(|s| alpha_equal(s.result(), &self.form))
    }

    /// Each step on its own line: node, mode and resulting term.
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        for step in &self.trace {
            match step {
                TraceStep::Lexical { node, term } => {
                    out.push_str(&format!("  lex  {node} => {}\n", print_term(term)));
                }
                TraceStep::Combine { node, mode, result, .. } => {
                    out.push_str(&format!("  {mode:<4} {node} => {}\n", print_term(result)));
                }
            }
        }
        out
    }
}
