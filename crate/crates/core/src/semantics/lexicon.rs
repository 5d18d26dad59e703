//! Meanings of lexical items and of the empty elements of the analysis.

use std::collections::BTreeMap;

use crate::grammar::{AdjUse, Category, LexEntry, Lexicon};
use crate::lambda::{parse_term, type_of, SemType, Signature, Term};

use super::SemanticsError;

/// The anaphoric degree relation supplied by the WH operator.
pub const P0: &str = "P0";
/// Contextual standard of a comparative without an overt complement.
pub const C0: &str = "C0";

const TEMPLATES: &[(&str, &str)] = &[
    (
        "er",
        "lam D:<d,t> . lam P:<<d,t>,t> . exists d':d . P (lam d:d . d' > d) & D d'",
    ),
    ("pos", "lam D:<d,t> . exists d:d . D d"),
    ("than", "lam P:<<d,t>,t> . P"),
    // WH of a reconstructed complement: anaphora plus universal degree quantifier
    (
        "wh_reconstructed",
        "lam Q:<e,t> . lam D':<d,t> . forall d:d . (exists y:e . P0 y d & Q y) -> D' d",
    ),
    // WH of a small-clause complement, applied to the complement NP
    (
        "wh_direct",
        "lam P:<<e,t>,t> . lam D:<d,t> . forall d:d . P (lam x:e . P0 x d) -> D d",
    ),
    ("or", "lam X:<<e,t>,t> . lam Y:<<e,t>,t> . lam Q:<e,t> . X Q | Y Q"),
    ("indeed", "lam p:t . p"),
    ("a", "lam P:<e,t> . lam Q:<e,t> . exists x:e . P x & Q x"),
    ("any", "lam P:<e,t> . lam Q:<e,t> . exists x:e . P x & Q x"),
    ("every", "lam P:<e,t> . lam Q:<e,t> . forall x:e . P x -> Q x"),
    ("atleast2", "lam P:<e,t> . lam Q:<e,t> . atleast 2 x:e . P x & Q x"),
    ("atmost1", "lam P:<e,t> . lam Q:<e,t> . atmost 1 x:e . P x & Q x"),
    // Russellian definite: uniqueness plus existence
    (
        "the",
        "lam P:<e,t> . lam Q:<e,t> . (atmost 1 x:e . P x) & (exists x:e . P x & Q x)",
    ),
];

fn attributive_type() -> SemType {
    SemType::arrow(SemType::pred(), SemType::degree_relation())
}

fn two_place() -> SemType {
    SemType::arrow(SemType::Entity, SemType::pred())
}

#[derive(Clone, Debug)]
pub struct SemLexicon {
    signature: Signature,
    entries: BTreeMap<String, Term>,
    dimensions: BTreeMap<String, String>,
}

impl SemLexicon {
    /// Builds the semantic lexicon for every entry of a syntactic lexicon.
    pub fn new(lexicon: &Lexicon) -> Result<Self, SemanticsError> {
        let mut signature = Signature::new()
            .with(P0, SemType::degree_relation())
            .with(C0, SemType::degree_quantifier());
        for e in lexicon.entries() {
            let ty = match e.category {
                Category::ProperName => SemType::Entity,
                Category::N => SemType::pred(),
                Category::V => two_place(),
                Category::A => match e.adj_use {
                    Some(AdjUse::Attributive) => attributive_type(),
                    _ => SemType::degree_relation(),
                },
                _ => continue,
            };
            if let Some(prev) = signature.get(&e.key) {
                if *prev != ty {
                    return Err(SemanticsError::Malformed(format!("constant {} has two types", e.key)));
                }
            }
            signature.insert(&e.key, ty);
        }
        let mut entries = BTreeMap::new();
        for (key, src) in TEMPLATES {
            let term = parse_term(src, &signature)?;
            type_of(&term)?;
            entries.insert(key.to_string(), term);
        }
        let dimensions = lexicon.dimensions();
        Ok(SemLexicon {
            signature,
            entries,
            dimensions,
        })
    }

    pub fn builtin() -> Self {
        Self::new(&Lexicon::builtin()).expect("builtin semantic lexicon is well formed")
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Adjective constant to measure dimension.
    pub fn dimensions(&self) -> &BTreeMap<String, String> {
        &self.dimensions
    }

    pub fn get(&self, key: &str) -> Result<&Term, SemanticsError> {
        self.entries
            .get(key)
            .ok_or_else(|| SemanticsError::MissingEntry(key.to_string()))
    }

    /// Reads a term against this lexicon's constants.
    pub fn term(&self, src: &str) -> Result<Term, SemanticsError> {
        Ok(parse_term(src, &self.signature)?)
    }

    pub fn constant(&self, name: &str) -> Result<Term, SemanticsError> {
        self.signature
            .get(name)
            .map(|ty| Term::constant(name, ty.clone()))
            .ok_or_else(|| SemanticsError::MissingEntry(name.to_string()))
    }

    /// Meaning of a word as it enters composition. Comparative adjectives
    /// yield their base meaning; the comparative morpheme is added by the
    /// composition engine.
    pub fn word(&self, entry: &LexEntry) -> Result<Term, SemanticsError> {
        match entry.category {
            Category::ProperName => {
                let c = self.constant(&entry.key)?;
                let q = crate::lambda::Var::new("Q", SemType::pred());
                Ok(Term::lam(q.clone(), Term::app(Term::Var(q), c)))
            }
            Category::N | Category::V => self.constant(&entry.key),
            Category::A => {
                let c = entry.key.as_str();
                let src = match entry.adj_use {
                    Some(AdjUse::Attributive) => format!("lam d:d . lam Q:<e,t> . lam x:e . {c} Q x d"),
                    _ => format!("lam d:d . lam x:e . {c} x d"),
                };
                self.term(&src)
            }
            Category::Det | Category::CardDet | Category::Npi | Category::Coord | Category::CompParticle => {
                self.get(&entry.key).cloned()
            }
            Category::Adv => self.get(&entry.key).cloned(),
            Category::Copula | Category::Temporal => Err(SemanticsError::Unsupported(format!(
                "{} has no meaning of its own",
                entry.form
            ))),
        }
    }
}

impl Default for SemLexicon {
    fn default() -> Self {
        Self::builtin()
    }
}
