//! Phrasal comparatives: a fragment grammar, logical-form construction with
//! copy reconstruction, type-driven semantic composition, finite-model
//! evaluation and a direct-analysis baseline.
//!
//! Degree arithmetic is generic over [`numeric::Degree`]; the aliases below
//! fix the scalar type.

pub mod cli;
pub mod grammar;
pub mod heim;
pub mod lambda;
pub mod lf;
pub mod model;
pub mod numeric;
pub mod semantics;

pub use numeric::Degree;

/// Exact rational degrees.
pub type Rational = num_rational::Rational64;
pub type RationalModel = model::Model<Rational>;
pub type F64Model = model::Model<f64>;
pub type F32Model = model::Model<f32>;
