//! The fragment's lexicon and its line-oriented file format:
//! `form<TAB>category<TAB>semantic-key<TAB>attributes`, where attributes are
//! `;`-separated flags or `key=value` pairs (`-` for none).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::GrammarError;

const BUILTIN: &str = include_str!("../../data/lexicon.tsv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    ProperName,
    Det,
    CardDet,
    N,
    A,
    V,
    Copula,
    CompParticle,
    Coord,
    Npi,
    Adv,
    Temporal,
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ProperName" => Category::ProperName,
            "Det" => Category::Det,
            "CardDet" => Category::CardDet,
            "N" => Category::N,
            "A" => Category::A,
            "V" => Category::V,
            "Copula" => Category::Copula,
            "CompParticle" => Category::CompParticle,
            "Coord" => Category::Coord,
            "NPI" => Category::Npi,
            "Adv" => Category::Adv,
            "Temporal" => Category::Temporal,
            other => return Err(format!("unknown category {other}")),
        })
    }
}

/// Determiner classes relevant to the indefiniteness effect and to scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DetClass {
    Indefinite,
    Cardinal,
    Definite,
    Universal,
    Npi,
}

impl FromStr for DetClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "indefinite" => DetClass::Indefinite,
            "cardinal" => DetClass::Cardinal,
            "definite" => DetClass::Definite,
            "universal" => DetClass::Universal,
            "npi" => DetClass::Npi,
            other => return Err(format!("unknown determiner class {other}")),
        })
    }
}

impl fmt::Display for DetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DetClass::Indefinite => "indefinite",
            DetClass::Cardinal => "cardinal",
            DetClass::Definite => "definite",
            DetClass::Universal => "universal",
            DetClass::Npi => "npi",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdjUse {
    Attributive,
    Predicative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexEntry {
    pub form: String,
    pub category: Category,
    /// Link into the semantic lexicon; for names, nouns, verbs and adjectives
    /// this is the logical constant.
    pub key: String,
    pub det_class: Option<DetClass>,
    pub animate: bool,
    pub plural: bool,
    /// Measure dimension of a gradable adjective.
    pub dimension: Option<String>,
    pub adj_use: Option<AdjUse>,
    pub comparative: bool,
}

impl LexEntry {
    pub fn words(&self) -> Vec<&str> {
        self.form.split_whitespace().collect()
    }

    pub fn is_determiner(&self) -> bool {
        matches!(self.category, Category::Det | Category::CardDet | Category::Npi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    entries: Vec<LexEntry>,
}

fn parse_line(lineno: usize, line: &str) -> Result<LexEntry, GrammarError> {
    let bad = |msg: String| GrammarError::Lexicon {
        line: lineno,
        message: msg,
    };
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 4 {
        return Err(bad(format!("expected 4 tab-separated columns, found {}", cols.len())));
    }
    let category: Category = cols[1].parse().map_err(bad)?;
    let mut entry = LexEntry {
        form: cols[0].split_whitespace().collect::<Vec<_>>().join(" "),
        category,
        key: cols[2].to_string(),
        det_class: None,
        animate: false,
        plural: false,
        dimension: None,
        adj_use: None,
        comparative: false,
    };
    if entry.form.is_empty() {
        return Err(bad("empty form".into()));
    }
    for attr in cols[3].split(';').map(str::trim).filter(|a| !a.is_empty() && *a != "-") {
        match attr.split_once('=') {
            Some(("class", v)) => entry.det_class = Some(v.parse().map_err(bad)?),
            Some(("dim", v)) => entry.dimension = Some(v.to_string()),
            Some(("use", "attributive")) => entry.adj_use = Some(AdjUse::Attributive),
            Some(("use", "predicative")) => entry.adj_use = Some(AdjUse::Predicative),
            None if attr == "animate" => entry.animate = true,
            None if attr == "plural" => entry.plural = true,
            None if attr == "comparative" => entry.comparative = true,
            _ => return Err(bad(format!("unknown attribute {attr}"))),
        }
    }
    if category == Category::A && (entry.dimension.is_none() || entry.adj_use.is_none()) {
        return Err(bad(format!("adjective {} needs dim= and use=", entry.form)));
    }
    if entry.is_determiner() && entry.det_class.is_none() {
        return Err(bad(format!("determiner {} needs class=", entry.form)));
    }
    Ok(entry)
}

impl Lexicon {
    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            entries.push(parse_line(i + 1, line)?);
        }
        // one dimension per adjective key
        let mut dims: BTreeMap<&str, &str> = BTreeMap::new();
        for e in entries.iter().filter(|e| e.category == Category::A) {
            let dim = e.dimension.as_deref().unwrap_or_default();
            if let Some(prev) = dims.insert(&e.key, dim) {
                if prev != dim {
                    return Err(GrammarError::Lexicon {
                        line: 0,
                        message: format!("adjective {} has two dimensions ({prev}, {dim})", e.key),
                    });
                }
            }
        }
        Ok(Lexicon { entries })
    }

    /// The lexicon shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin lexicon is well formed")
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    /// Entry with the given form and, if given, category.
    pub fn find(&self, form: &str, category: Option<Category>) -> Option<&LexEntry> {
        self.entries
            .iter()
            .find(|e| e.form.eq_ignore_ascii_case(form) && category.is_none_or(|c| c == e.category))
    }

    /// Measure dimension per adjective constant.
    pub fn dimensions(&self) -> BTreeMap<String, String> {
        self.entries
            .iter()
            .filter_map(|e| e.dimension.as_ref().map(|d| (e.key.clone(), d.clone())))
            .collect()
    }

    pub fn adjective(&self, key: &str) -> Option<&LexEntry> {
        self.entries.iter().find(|e| e.category == Category::A && e.key == key)
    }

    /// Splits a sentence into lexical items by longest match, case-insensitively.
    /// Commas become separate tokens; a final full stop is dropped.
    pub fn tokenize(&self, sentence: &str) -> Result<Vec<Token>, GrammarError> {
        let mut words: Vec<String> = Vec::new();
        for raw in sentence.split_whitespace() {
            let mut w = raw;
            let mut trailing_comma = false;
            if let Some(stripped) = w.strip_suffix(',') {
                w = stripped;
                trailing_comma = true;
            }
            let w = w.trim_end_matches(['.', '!']);
            if !w.is_empty() {
                words.push(w.to_string());
            }
            if trailing_comma {
                words.push(",".into());
            }
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < words.len() {
            if words[i] == "," {
                out.push(Token::Comma);
                i += 1;
                continue;
            }
            let best = self
                .entries
                .iter()
                .filter(|e| {
                    let ws = e.words();
                    ws.len() <= words.len() - i && ws.iter().zip(&words[i..]).all(|(a, b)| a.eq_ignore_ascii_case(b))
                })
                .max_by_key(|e| e.words().len());
            match best {
                Some(e) => {
                    i += e.words().len();
                    out.push(Token::Word(e.clone()));
                }
                None => return Err(GrammarError::UnknownWord(words[i].clone())),
            }
        }
        Ok(out)
    }
}

impl Default for Lexicon {
    fn default() -> Self {
        Self::builtin()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Word(LexEntry),
    Comma,
}

impl Token {
    pub fn entry(&self) -> Option<&LexEntry> {
        match self {
            Token::Word(e) => Some(e),
            Token::Comma => None,
        }
    }
}
