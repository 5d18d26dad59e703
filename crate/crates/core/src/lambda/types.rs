//! Semantic types over the base sorts `e`, `d` and `t`.

use std::fmt;

/// A simple type: entities, degrees, truth values and functions between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemType {
    Entity,
    Degree,
    Truth,
    Arrow(Box<SemType>, Box<SemType>),
}

impl SemType {
    pub fn arrow(argument: SemType, result: SemType) -> SemType {
        SemType::Arrow(Box::new(argument), Box::new(result))
    }

    /// `<e,t>`
    pub fn pred() -> SemType {
        SemType::arrow(SemType::Entity, SemType::Truth)
    }

    /// `<d,t>`
    pub fn degree_pred() -> SemType {
        SemType::arrow(SemType::Degree, SemType::Truth)
    }

    /// `<<e,t>,t>`
    pub fn gq() -> SemType {
        SemType::arrow(SemType::pred(), SemType::Truth)
    }

    /// `<<d,t>,t>`
    pub fn degree_quantifier() -> SemType {
        SemType::arrow(SemType::degree_pred(), SemType::Truth)
    }

    /// `<e,<d,t>>`, the shape of the anaphoric relation and of predicative adjectives.
    pub fn degree_relation() -> SemType {
        SemType::arrow(SemType::Entity, SemType::degree_pred())
    }

    pub fn as_arrow(&self) -> Option<(&SemType, &SemType)> {
        match self {
            SemType::Arrow(a, r) => Some((a, r)),
            _ => None,
        }
    }

    pub fn is_truth(&self) -> bool {
        matches!(self, SemType::Truth)
    }

    /// Splits `a1 -> a2 -> ... -> r` into its argument list and final result.
    pub fn uncurry(&self) -> (Vec<&SemType>, &SemType) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SemType::Arrow(a, r) = cur {
            args.push(a.as_ref());
            cur = r;
        }
        (args, cur)
    }
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemType::Entity => write!(f, "e"),
            SemType::Degree => write!(f, "d"),
            SemType::Truth => write!(f, "t"),
            SemType::Arrow(a, r) => write!(f, "<{a},{r}>"),
        }
    }
}
