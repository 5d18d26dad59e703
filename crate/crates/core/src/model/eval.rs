use std::collections::BTreeSet;

use thiserror::Error;

use crate::lambda::{normalize, BinOp, Binder, CardKind, LambdaError, SemType, Term, Var};
use crate::numeric::Degree;

use super::Model;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("no denotation for {0}")]
    MissingDenotation(String),
    #[error("cannot compare degrees of {0} and {1}")]
    DimensionMismatch(String, String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error("cannot evaluate {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq)]
struct Deg<S> {
    dim: Option<String>,
    value: S,
}

#[derive(Clone, Debug)]
enum Value<S> {
    Entity(usize),
    Degree(Deg<S>),
}

/// Adjective dimensions mentioned by the constants of a term.
fn mentioned_dimensions<S: Degree>(term: &Term, model: &Model<S>) -> BTreeSet<String> {
    term.constants()
        .iter()
        .filter_map(|c| model.dimension_of(c).map(str::to_string))
        .collect()
}

/// All measure values of the dimensions the form mentions, sorted and
/// without duplicates. Quantifying over these values is equivalent to
/// quantifying over all rationals, since every degree atom is a threshold
/// `measure(x) >= d`.
pub fn degree_grid<S: Degree>(form: &Term, model: &Model<S>) -> Vec<S> {
    let mut values: Vec<S> = Vec::new();
    for dim in mentioned_dimensions(form, model) {
        if let Some(ms) = model.measures(&dim) {
            values.extend(ms.values().cloned());
        }
    }
    sort_dedup(&mut values);
    values
}

fn sort_dedup<S: Degree>(values: &mut Vec<S>) {
    values.sort_by(|a, b| a.partial_cmp(b).expect("degrees are totally ordered"));
    values.dedup();
}

pub(super) struct Evaluator<'m, S: Degree> {
    model: &'m Model<S>,
    grid: Vec<Deg<S>>,
    env: Vec<(String, Value<S>)>,
}

impl<'m, S: Degree> Evaluator<'m, S> {
    pub(super) fn new(model: &'m Model<S>, form: &Term, extra: &[S]) -> Self {
        let mut grid = Vec::new();
        let dims = mentioned_dimensions(form, model);
        for dim in &dims {
            let mut values: Vec<S> = model
                .measures(dim)
                .map(|m| m.values().cloned().collect())
                .unwrap_or_default();
            values.extend(extra.iter().cloned());
            sort_dedup(&mut values);
            grid.extend(values.into_iter().map(|value| Deg {
                dim: Some(dim.clone()),
                value,
            }));
        }
        if dims.is_empty() {
            let mut values = extra.to_vec();
            sort_dedup(&mut values);
            grid.extend(values.into_iter().map(|value| Deg { dim: None, value }));
        }
        Evaluator {
            model,
            grid,
            env: Vec::new(),
        }
    }

    pub(super) fn truth(&mut self, form: &Term) -> Result<bool, EvalError> {
        if let Some(v) = form.free_var_list().first() {
            return Err(EvalError::Unbound(v.name.clone()));
        }
        self.eval_t(&normalize(form))
    }

    pub(super) fn degree_value(&mut self, term: &Term) -> Result<S, EvalError> {
        if let Some(v) = term.free_var_list().first() {
            return Err(EvalError::Unbound(v.name.clone()));
        }
        Ok(self.eval_d(&normalize(term))?.value)
    }

    fn lookup(&self, name: &str) -> Result<&Value<S>, EvalError> {
        self.env
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| EvalError::Unbound(name.to_string()))
    }

    fn with<T>(&mut self, name: &str, value: Value<S>, f: impl FnOnce(&mut Self) -> T) -> T {
        self.env.push((name.to_string(), value));
        let out = f(self);
        self.env.pop();
        out
    }

    fn domain(&self, v: &Var) -> Result<Vec<Value<S>>, EvalError> {
        match v.ty {
            SemType::Entity => Ok((0..self.model.entities().len()).map(Value::Entity).collect()),
            SemType::Degree => Ok(self.grid.iter().cloned().map(Value::Degree).collect()),
            _ => Err(EvalError::Unsupported(format!("quantification over {}", v.ty))),
        }
    }

    fn eval_e(&mut self, term: &Term) -> Result<usize, EvalError> {
        match term {
            Term::Var(v) => match self.lookup(&v.name)? {
                Value::Entity(e) => Ok(*e),
                Value::Degree(_) => Err(EvalError::Unsupported(format!("{} used as an entity", v.name))),
            },
            Term::Const(c) => self
                .model
                .constant(&c.name)
                .ok_or_else(|| EvalError::MissingDenotation(c.name.clone())),
            other => Err(EvalError::Unsupported(crate::lambda::print_term(other))),
        }
    }

    fn eval_d(&mut self, term: &Term) -> Result<Deg<S>, EvalError> {
        match term {
            Term::Var(v) => match self.lookup(&v.name)? {
                Value::Degree(d) => Ok(d.clone()),
                Value::Entity(_) => Err(EvalError::Unsupported(format!("{} used as a degree", v.name))),
            },
            Term::Bind(Binder::Iota, v, body) => {
                let mut best: Option<Deg<S>> = None;
                for value in self.domain(v)? {
                    let Value::Degree(d) = value.clone() else {
                        unreachable!()
                    };
                    if self.with(&v.name, value, |ev| ev.eval_t(body))?
                        && best.as_ref().is_none_or(|b| d.value > b.value)
                    {
                        best = Some(d);
                    }
                }
                best.ok_or_else(|| {
                    EvalError::Undefined(format!("no maximal degree for {}", crate::lambda::pretty(term)))
                })
            }
            Term::Const(c) => Err(EvalError::MissingDenotation(c.name.clone())),
            other => Err(EvalError::Unsupported(crate::lambda::print_term(other))),
        }
    }

    /// Whether the `<e,t>` term `pred` holds of `entity`.
    fn holds_of(&mut self, pred: &Term, entity: usize) -> Result<bool, EvalError> {
        match pred {
            Term::Bind(Binder::Lam, v, body) => self.with(&v.name, Value::Entity(entity), |ev| ev.eval_t(body)),
            _ => {
                let name = "\u{0}arg";
                let probe = Term::app(pred.clone(), Term::var(name, SemType::Entity));
                self.with(name, Value::Entity(entity), |ev| ev.eval_t(&probe))
            }
        }
    }

    fn degree_atom(&mut self, adjective: &str, entity: usize, degree: &Term) -> Result<bool, EvalError> {
        let dim = self
            .model
            .dimension_of(adjective)
            .ok_or_else(|| EvalError::MissingDenotation(adjective.to_string()))?
            .to_string();
        let d = self.eval_d(degree)?;
        if let Some(other) = &d.dim {
            if *other != dim {
                return Err(EvalError::DimensionMismatch(dim, other.clone()));
            }
        }
        Ok(self.model.measure(&dim, entity).is_some_and(|m| *m >= d.value))
    }

    fn eval_atom(&mut self, term: &Term) -> Result<bool, EvalError> {
        let (head, args) = term.spine();
        let Term::Const(c) = head else {
            return Err(EvalError::Unsupported(crate::lambda::print_term(term)));
        };
        let ty = &c.ty;
        if *ty == SemType::pred() && args.len() == 1 {
            let x = self.eval_e(args[0])?;
            let sort = self
                .model
                .sort(&c.name)
                .ok_or_else(|| EvalError::MissingDenotation(c.name.clone()))?;
            return Ok(sort.contains(&x));
        }
        if *ty == SemType::arrow(SemType::Entity, SemType::pred()) && args.len() == 2 {
            let a = self.eval_e(args[0])?;
            let b = self.eval_e(args[1])?;
            let rel = self
                .model
                .relation(&c.name)
                .ok_or_else(|| EvalError::MissingDenotation(c.name.clone()))?;
            return Ok(rel.contains(&(a, b)));
        }
        if *ty == SemType::degree_relation() && args.len() == 2 {
            let x = self.eval_e(args[0])?;
            return self.degree_atom(&c.name, x, args[1]);
        }
        if *ty == SemType::arrow(SemType::pred(), SemType::degree_relation()) && args.len() == 3 {
            let x = self.eval_e(args[1])?;
            if !self.holds_of(args[0], x)? {
                return Ok(false);
            }
            return self.degree_atom(&c.name, x, args[2]);
        }
        Err(EvalError::MissingDenotation(c.name.clone()))
    }

    fn eval_t(&mut self, term: &Term) -> Result<bool, EvalError> {
        match term {
            Term::Not(a) => Ok(!self.eval_t(a)?),
            Term::Binary(op, a, b) => match op {
                BinOp::And => Ok(self.eval_t(a)? && self.eval_t(b)?),
                BinOp::Or => Ok(self.eval_t(a)? || self.eval_t(b)?),
                BinOp::Implies => Ok(!self.eval_t(a)? || self.eval_t(b)?),
                BinOp::Greater => {
                    let x = self.eval_d(a)?;
                    let y = self.eval_d(b)?;
                    if let (Some(p), Some(q)) = (&x.dim, &y.dim) {
                        if p != q {
                            return Err(EvalError::DimensionMismatch(p.clone(), q.clone()));
                        }
                    }
                    Ok(x.value > y.value)
                }
            },
            Term::Bind(binder, v, body) => {
                let domain = self.domain(v)?;
                match binder {
                    Binder::Forall => {
                        for value in domain {
                            if !self.with(&v.name, value, |ev| ev.eval_t(body))? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    }
                    Binder::Exists => {
                        for value in domain {
                            if self.with(&v.name, value, |ev| ev.eval_t(body))? {
                                return Ok(true);
                            }
                        }
                        Ok(false)
                    }
                    Binder::Card(kind, n) => {
                        let mut count = 0u32;
                        for value in domain {
                            if self.with(&v.name, value, |ev| ev.eval_t(body))? {
                                count += 1;
                                if *kind == CardKind::AtLeast && count >= *n {
                                    return Ok(true);
                                }
                                if *kind == CardKind::AtMost && count > *n {
                                    return Ok(false);
                                }
                            }
                        }
                        Ok(match kind {
                            CardKind::AtLeast => count >= *n,
                            CardKind::AtMost => count <= *n,
                        })
                    }
                    Binder::Lam | Binder::Iota => Err(EvalError::Unsupported(crate::lambda::print_term(term))),
                }
            }
            Term::App(_, _) => self.eval_atom(term),
            Term::Const(c) => Err(EvalError::MissingDenotation(c.name.clone())),
            Term::Var(v) => Err(EvalError::Unsupported(format!("propositional variable {}", v.name))),
        }
    }
}
