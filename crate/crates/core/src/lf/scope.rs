use std::fmt;

use crate::grammar::{DetClass, Index, Node};

use super::transform::complement_np;
use super::{LfStage, LfTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScopeOrder {
    /// The WH operator outscopes the complement NP.
    WhOverNp,
    /// The complement NP outscopes the WH operator.
    NpOverWh,
}

impl fmt::Display for ScopeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScopeOrder::WhOverNp => "WH>NP",
            ScopeOrder::NpOverWh => "NP>WH",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScopeChoice {
    pub np: String,
    pub index: Index,
    pub order: ScopeOrder,
}

/// Relative scope of each complement-internal NP; empty when the scope
/// principle has nothing to decide.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScopeAssignment {
    pub choices: Vec<ScopeChoice>,
}

impl ScopeAssignment {
    pub fn trivial() -> Self {
        ScopeAssignment::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn order(&self) -> Option<ScopeOrder> {
        self.choices.first().map(|c| c.order)
    }
}

impl fmt::Display for ScopeAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.choices.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self
            .choices
            .iter()
            .map(|c| match c.order {
                ScopeOrder::WhOverNp => format!("WH > {}", c.np),
                ScopeOrder::NpOverWh => format!("{} > WH", c.np),
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

fn determiner_class(np: &Node) -> Option<DetClass> {
    np.words().into_iter().find_map(|e| e.det_class)
}

/// Admissible relative scopes of the complement NP and the WH operator.
/// NPI complements need the downward-entailing restriction and stay under
/// WH; universal complements must outscope it; everything else is free.
pub fn enumerate_scopes(lf: &LfTree) -> Vec<ScopeAssignment> {
    if lf.stage != LfStage::Reconstructed {
        return vec![ScopeAssignment::trivial()];
    }
    let Some(np) = complement_np(lf) else {
        return vec![ScopeAssignment::trivial()];
    };
    let orders: &[ScopeOrder] = match determiner_class(np) {
        Some(DetClass::Npi) => &[ScopeOrder::WhOverNp],
        Some(DetClass::Universal) => &[ScopeOrder::NpOverWh],
        _ => &[ScopeOrder::WhOverNp, ScopeOrder::NpOverWh],
    };
    let label = np.words().iter().map(|e| e.form.as_str()).collect::<Vec<_>>().join(" ");
    orders
        .iter()
        .map(|&order| ScopeAssignment {
            choices: vec![ScopeChoice {
                np: label.clone(),
                index: np.index().unwrap_or(Index::Open),
                order,
            }],
        })
        .collect()
}
