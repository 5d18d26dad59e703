//! Lexicon, constituent trees and parser for the English comparative fragment.

mod lexicon;
mod parser;
mod tree;

use thiserror::Error;

pub use lexicon::{AdjUse, Category, DetClass, LexEntry, Lexicon, Token};
pub(crate) use parser::np_referential;
pub use parser::parse;
pub use tree::{classify_construction, ConstructionTag, Index, Label, Node, Phrase, SurfaceTree, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("unknown word: {0}")]
    UnknownWord(String),
    #[error("no parse for: {0}")]
    NoParse(String),
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("malformed bracketing: {0}")]
    Bracketing(String),
}
