//! Simply typed lambda calculus over entities, degrees and truth values,
//! extended with the logical constants needed for comparatives.

mod combine;
mod pretty;
mod syntax;
mod term;
mod types;

use thiserror::Error;

pub use combine::{
    apply_fa, apply_fc, apply_gfa, default_var_name, extend_existential_scope, quantify_in, same_result,
};
pub use pretty::pretty;
pub use syntax::{parse_term, parse_type, print_term, Signature};
pub use term::{
    alpha_equal, fresh_name, is_normal, normalize, substitute, type_of, BinOp, Binder, CardKind, Constant, Term, Var,
};
pub use types::SemType;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LambdaError {
    #[error("ill-typed term at {location}: expected {expected}, found {found}")]
    IllTyped {
        location: String,
        expected: String,
        found: SemType,
    },
    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    TypeMismatch {
        context: String,
        expected: SemType,
        found: SemType,
    },
    #[error("not a function type: {0}")]
    NotAFunction(SemType),
    #[error("no GFA split of argument type {argument} for function type {function}")]
    NoGfaSplit { function: SemType, argument: SemType },
    #[error("variable {0} does not occur free in the scope")]
    TargetNotFree(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier {0}")]
    UnknownIdentifier(String),
}
