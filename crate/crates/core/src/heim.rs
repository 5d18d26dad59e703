//! The direct analysis as a contrast baseline: an `er_than` operator
//! comparing the maximal degrees a degree property assigns to the correlate
//! and the complement.

use std::fmt;

use thiserror::Error;

use crate::grammar::{np_referential, ConstructionTag, Label, Node, SurfaceTree};
use crate::lambda::{apply_fa, normalize, pretty, LambdaError, SemType, Term, Var};
use crate::model::{EvalError, Model};
use crate::numeric::Degree;
use crate::semantics::{SemLexicon, SemanticsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeimError {
    #[error("the baseline does not cover this construction: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeimForm {
    pub correlate: Term,
    pub complement: Term,
    /// `λxλd body`, of type `<e,<d,t>>`.
    pub relation: Term,
    /// `λx ιd body`, the degree function compared by `er_than`.
    pub property: Term,
    pub tag: ConstructionTag,
    pub sentence: String,
}

impl HeimForm {
    /// Degree term assigned to an individual: `ιd body[x := individual]`.
    pub fn degree_of(&self, individual: &Term) -> Term {
        normalize(&Term::app(self.property.clone(), individual.clone()))
    }
}

impl fmt::Display for HeimForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "er_than(<{}, {}>)({})",
            pretty(&self.correlate),
            pretty(&self.complement),
            pretty(&self.property)
        )
    }
}

fn name_constant(np: &Node, lex: &SemLexicon, role: &str) -> Result<Term, HeimError> {
    if !np_referential(np) {
        return Err(HeimError::Unsupported(format!("quantified {role} {}", np.paper())));
    }
    let word = np.children()[0].as_word().expect("referential NPs hold one name");
    Ok(lex.constant(&word.entry.key)?)
}

fn unsupported(tree: &SurfaceTree) -> HeimError {
    HeimError::Unsupported(tree.paper())
}

/// Builds `er_than(<a, b>)(λx ιd[...])` for predicative and wide attributive
/// comparatives with proper-name correlate and complement. The whole matrix,
/// determiner included, ends up inside the ι body.
pub fn build_heim(tree: &SurfaceTree, lex: &SemLexicon) -> Result<HeimForm, HeimError> {
    let tag = tree.tag();
    if !tree.is_sentence() {
        return Err(unsupported(tree));
    }
    let children = tree.root.children();
    let (Some(subject), Some(head), Some(argument)) = (children.first(), children.get(1), children.get(2)) else {
        return Err(unsupported(tree));
    };
    let correlate = name_constant(subject, lex, "correlate")?;
    let x = Var::new("x", SemType::Entity);
    let d = Var::new("d", SemType::Degree);
    let (complement_np, body) = match tag {
        ConstructionTag::Pred => {
            let [adj_phrase, pp] = argument.children() else {
                return Err(unsupported(tree));
            };
            let adj = adj_phrase.children()[0].as_word().ok_or_else(|| unsupported(tree))?;
            let sc = pp.children().last().ok_or_else(|| unsupported(tree))?;
            let np = sc.children().last().ok_or_else(|| unsupported(tree))?;
            let body = Term::apply_all(
                lex.constant(&adj.entry.key)?,
                [Term::Var(x.clone()), Term::Var(d.clone())],
            );
            (np, body)
        }
        ConstructionTag::Wra => {
            let verb = head.as_word().ok_or_else(|| unsupported(tree))?;
            let [inner, pp] = argument.children() else {
                return Err(unsupported(tree));
            };
            let np = pp
                .children()
                .iter()
                .find(|c| c.is(Label::NP))
                .ok_or_else(|| unsupported(tree))?;
            let [Node::Word(det), nbar] = inner.children() else {
                return Err(unsupported(tree));
            };
            let [Node::Word(adj), Node::Word(noun)] = nbar.children() else {
                return Err(unsupported(tree));
            };
            // Det(λy A'(N)(y,d))(λy V(x,y))
            let y = Var::new("y", SemType::Entity);
            let restrictor = Term::lam(
                y.clone(),
                Term::apply_all(
                    lex.constant(&adj.entry.key)?,
                    [
                        lex.constant(&noun.entry.key)?,
                        Term::Var(y.clone()),
                        Term::Var(d.clone()),
                    ],
                ),
            );
            let scope = Term::lam(
                y.clone(),
                Term::apply_all(lex.constant(&verb.entry.key)?, [Term::Var(x.clone()), Term::Var(y)]),
            );
            let det_meaning = lex.get(&det.entry.key)?;
            let body = apply_fa(&apply_fa(det_meaning, &restrictor)?, &scope)?;
            (np, body)
        }
        _ => return Err(unsupported(tree)),
    };
    let complement = name_constant(complement_np, lex, "complement")?;
    let relation = Term::lam(x.clone(), Term::lam(d.clone(), body.clone()));
    let property = Term::lam(x, Term::iota(d, body));
    Ok(HeimForm {
        correlate,
        complement,
        relation,
        property,
        tag,
        sentence: tree.paper(),
    })
}

/// `f(a) > f(b)` with `f` the maximal-degree function; `None` when either
/// maximum does not exist.
pub fn eval_heim<S: Degree>(form: &HeimForm, model: &Model<S>) -> Result<Option<bool>, EvalError> {
    let degree = |who: &Term| match model.evaluate_degree(&form.degree_of(who)) {
        Ok(v) => Ok(Some(v)),
        Err(EvalError::Undefined(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let a = degree(&form.correlate)?;
    let b = degree(&form.complement)?;
    Ok(match (a, b) {
        (Some(a), Some(b)) => Some(a > b),
        _ => None,
    })
}
