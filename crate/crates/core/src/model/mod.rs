//! Finite models with measure functions, truth evaluation over a finite
//! degree grid, and discourse-referent accessibility.
//!
//! Model files are JSON documents:
//!
//! ```json
//! {
//!   "version": 1,
//!   "entities": ["george", "bill", "c1"],
//!   "sorts": {"car'": ["c1"]},
//!   "relations": {"own'": [["george", "c1"]]},
//!   "measures": {"speed": {"c1": 200}},
//!   "constants": {"g*": "george", "b*": "bill"}
//! }
//! ```
//!
//! `version` is optional and must be 1 when present. Measure values are
//! read from their decimal text, so exact degree types lose nothing.

mod access;
mod eval;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::grammar::Lexicon;
use crate::numeric::Degree;

pub use access::{accessibility, AccessibilityReport, Referent};
pub use eval::{degree_grid, EvalError};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed model: {0}")]
    Json(String),
    #[error("unsupported model format version {0}")]
    Version(u32),
    #[error("duplicate entity {0}")]
    DuplicateEntity(String),
    #[error("unknown entity {0}")]
    UnknownEntity(String),
    #[error("measure {dimension} of {entity} is not a finite number: {value}")]
    BadMeasure {
        dimension: String,
        entity: String,
        value: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    #[serde(default)]
    version: Option<u32>,
    entities: Vec<String>,
    #[serde(default)]
    sorts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    relations: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    measures: BTreeMap<String, BTreeMap<String, serde_json::Number>>,
    #[serde(default)]
    constants: BTreeMap<String, String>,
}

/// A finite first-order model with partial measure functions. Entities are
/// referred to by their position in the universe.
#[derive(Clone, Debug, PartialEq)]
pub struct Model<S: Degree> {
    entities: Vec<String>,
    index: BTreeMap<String, usize>,
    sorts: BTreeMap<String, BTreeSet<usize>>,
    relations: BTreeMap<String, BTreeSet<(usize, usize)>>,
    measures: BTreeMap<String, BTreeMap<usize, S>>,
    constants: BTreeMap<String, usize>,
    /// Adjective constant to measure dimension.
    dimensions: BTreeMap<String, String>,
}

impl<S: Degree> Model<S> {
    /// An empty model over the given entities, with the builtin lexicon's
    /// adjective dimensions.
    pub fn new<I, T>(entities: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let mut m = Model {
            entities: Vec::new(),
            index: BTreeMap::new(),
            sorts: BTreeMap::new(),
            relations: BTreeMap::new(),
            measures: BTreeMap::new(),
            constants: BTreeMap::new(),
            dimensions: Lexicon::builtin().dimensions(),
        };
        for e in entities {
            m.add_entity(e)?;
        }
        Ok(m)
    }

    pub fn add_entity(&mut self, name: impl Into<String>) -> Result<usize, ModelError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(ModelError::DuplicateEntity(name));
        }
        let id = self.entities.len();
        self.index.insert(name.clone(), id);
        self.entities.push(name);
        Ok(id)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        if let Some(v) = file.version {
            if v != MODEL_FORMAT_VERSION {
                return Err(ModelError::Version(v));
            }
        }
        let mut m = Model::new(file.entities)?;
        for (sort, members) in &file.sorts {
            m.sorts.entry(sort.clone()).or_default();
            for e in members {
                m.add_to_sort(sort, e)?;
            }
        }
        for (rel, pairs) in &file.relations {
            m.relations.entry(rel.clone()).or_default();
            for (a, b) in pairs {
                m.add_relation(rel, a, b)?;
            }
        }
        for (dim, values) in &file.measures {
            m.measures.entry(dim.clone()).or_default();
            for (e, n) in values {
                let text = n.to_string();
                let value = S::parse_decimal(&text).ok_or_else(|| ModelError::BadMeasure {
                    dimension: dim.clone(),
                    entity: e.clone(),
                    value: text.clone(),
                })?;
                m.set_measure(dim, e, value)?;
            }
        }
        for (c, e) in &file.constants {
            m.set_constant(c, e)?;
        }
        Ok(m)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    fn id(&self, name: &str) -> Result<usize, ModelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownEntity(name.to_string()))
    }

    pub fn add_to_sort(&mut self, sort: &str, entity: &str) -> Result<(), ModelError> {
        let id = self.id(entity)?;
        self.sorts.entry(sort.to_string()).or_default().insert(id);
        Ok(())
    }

    /// Declares a sort, possibly empty.
    pub fn declare_sort(&mut self, sort: &str) {
        self.sorts.entry(sort.to_string()).or_default();
    }

    pub fn add_relation(&mut self, relation: &str, a: &str, b: &str) -> Result<(), ModelError> {
        let pair = (self.id(a)?, self.id(b)?);
        self.relations.entry(relation.to_string()).or_default().insert(pair);
        Ok(())
    }

    pub fn declare_relation(&mut self, relation: &str) {
        self.relations.entry(relation.to_string()).or_default();
    }

    pub fn set_measure(&mut self, dimension: &str, entity: &str, value: S) -> Result<(), ModelError> {
        let id = self.id(entity)?;
        self.measures
            .entry(dimension.to_string())
            .or_default()
            .insert(id, value);
        Ok(())
    }

    pub fn remove_measure(&mut self, dimension: &str, entity: &str) -> Result<(), ModelError> {
        let id = self.id(entity)?;
        if let Some(m) = self.measures.get_mut(dimension) {
            m.remove(&id);
        }
        Ok(())
    }

    pub fn set_constant(&mut self, constant: &str, entity: &str) -> Result<(), ModelError> {
        let id = self.id(entity)?;
        self.constants.insert(constant.to_string(), id);
        Ok(())
    }

    pub fn set_dimensions(&mut self, dimensions: BTreeMap<String, String>) {
        self.dimensions = dimensions;
    }

    pub fn entities(&self) -> &[String] {
        &self.entities
    }

    pub fn entity_name(&self, id: usize) -> &str {
        &self.entities[id]
    }

    pub fn entity(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn sort(&self, name: &str) -> Option<&BTreeSet<usize>> {
        self.sorts.get(name)
    }

    pub fn relation(&self, name: &str) -> Option<&BTreeSet<(usize, usize)>> {
        self.relations.get(name)
    }

    pub fn measure(&self, dimension: &str, entity: usize) -> Option<&S> {
        self.measures.get(dimension)?.get(&entity)
    }

    pub fn measures(&self, dimension: &str) -> Option<&BTreeMap<usize, S>> {
        self.measures.get(dimension)
    }

    pub fn dimension_of(&self, adjective: &str) -> Option<&str> {
        self.dimensions.get(adjective).map(String::as_str)
    }

    /// Truth of a closed formula of type `t`.
    pub fn evaluate(&self, form: &crate::lambda::Term) -> Result<bool, EvalError> {
        eval::Evaluator::new(self, form, &[]).truth(form)
    }

    /// Like [`Model::evaluate`], with extra degrees added to every dimension's grid.
    pub fn evaluate_with_extra_degrees(&self, form: &crate::lambda::Term, extra: &[S]) -> Result<bool, EvalError> {
        eval::Evaluator::new(self, form, extra).truth(form)
    }

    /// Value of a closed degree-denoting term such as `iota d:d . rich' g* d`.
    pub fn evaluate_degree(&self, term: &crate::lambda::Term) -> Result<S, EvalError> {
        eval::Evaluator::new(self, term, &[]).degree_value(term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn json_round_trip_of_fields() {
        let m: Model<Rational64> = Model::from_json(
            r#"{"version": 1, "entities": ["g", "c"], "sorts": {"car'": ["c"]},
                "relations": {"own'": [["g", "c"]]}, "measures": {"speed": {"c": 0.1}},
                "constants": {"g*": "g"}}"#,
        )
        .unwrap();
        let c = m.entity("c").unwrap();
        assert_eq!(m.measure("speed", c), Some(&Rational64::new(1, 10)));
        assert!(m.relation("own'").unwrap().contains(&(0, 1)));
        assert_eq!(m.constant("g*"), Some(0));
        assert_eq!(m.dimension_of("fast'"), Some("speed"));
    }

    #[test]
    fn malformed_models() {
        assert!(matches!(Model::<f64>::from_json("{"), Err(ModelError::Json(_))));
        assert!(matches!(
            Model::<f64>::from_json(r#"{"entities": ["a"], "constants": {"g*": "b"}}"#),
            Err(ModelError::UnknownEntity(_))
        ));
        assert!(matches!(
            Model::<f64>::from_json(r#"{"entities": ["a", "a"]}"#),
            Err(ModelError::DuplicateEntity(_))
        ));
        assert!(matches!(
            Model::<f64>::from_json(r#"{"version": 2, "entities": []}"#),
            Err(ModelError::Version(2))
        ));
        assert!(matches!(
            Model::<f64>::from_json(r#"{"entities": [], "extra": 1}"#),
            Err(ModelError::Json(_))
        ));
    }
}
