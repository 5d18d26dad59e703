//! Labeled, index-bearing constituent trees shared by surface structures and
//! logical forms, with two printers: a full bracketing that reads back
//! losslessly and the compact labeled bracketing used in derivations.

use std::fmt;

use super::lexicon::{Category, LexEntry, Lexicon};
use super::GrammarError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    IP,
    NP,
    NBar,
    AP,
    A,
    PP,
    CP,
    SC,
    Det,
    N,
    V,
    P,
    Name,
    Conj,
    Adv,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::IP => "IP",
            Label::NP => "NP",
            Label::NBar => "N'",
            Label::AP => "AP",
            Label::A => "A",
            Label::PP => "PP",
            Label::CP => "CP",
            Label::SC => "SC",
            Label::Det => "Det",
            Label::N => "N",
            Label::V => "V",
            Label::P => "P",
            Label::Name => "Name",
            Label::Conj => "Conj",
            Label::Adv => "Adv",
        }
    }

    fn parse(s: &str) -> Option<Label> {
        Some(match s {
            "IP" => Label::IP,
            "NP" => Label::NP,
            "N'" => Label::NBar,
            "AP" => Label::AP,
            "A" => Label::A,
            "PP" => Label::PP,
            "CP" => Label::CP,
            "SC" => Label::SC,
            "Det" => Label::Det,
            "N" => Label::N,
            "V" => Label::V,
            "P" => Label::P,
            "Name" => Label::Name,
            "Conj" => Label::Conj,
            "Adv" => Label::Adv,
            _ => return None,
        })
    }

    pub fn is_lexical(self) -> bool {
        matches!(
            self,
            Label::Det | Label::N | Label::A | Label::V | Label::P | Label::Name | Label::Conj | Label::Adv
        )
    }

    pub fn for_category(c: Category) -> Label {
        match c {
            Category::ProperName => Label::Name,
            Category::Det | Category::CardDet | Category::Npi => Label::Det,
            Category::N => Label::N,
            Category::A => Label::A,
            Category::V | Category::Copula => Label::V,
            Category::CompParticle => Label::P,
            Category::Coord => Label::Conj,
            Category::Adv | Category::Temporal => Label::Adv,
        }
    }
}

/// Comparative construction types, in output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionTag {
    /// Wide reading attributive: the complement is compared through the correlate.
    Wra,
    /// Narrow reading attributive: the complement NP is compared directly.
    Nra,
    /// Comparative AP with its complement (predicative or post-nominal).
    Pred,
    Plain,
}

impl ConstructionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionTag::Wra => "WRA",
            ConstructionTag::Nra => "NRA",
            ConstructionTag::Pred => "PRED",
            ConstructionTag::Plain => "PLAIN",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "WRA" => ConstructionTag::Wra,
            "NRA" => ConstructionTag::Nra,
            "PRED" => ConstructionTag::Pred,
            "PLAIN" => ConstructionTag::Plain,
            _ => return None,
        })
    }
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Binding index: a number, a symbolic index such as `i`/`j`, or the open
/// index `?` of a copied trace that has not found a binder yet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Num(u32),
    Sym(char),
    Open,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Num(n) => write!(f, "{n}"),
            Index::Sym(c) => write!(f, "{c}"),
            Index::Open => f.write_str("?"),
        }
    }
}

impl Index {
    fn parse(s: &str) -> Option<Index> {
        if s == "?" {
            return Some(Index::Open);
        }
        if let Ok(n) = s.parse::<u32>() {
            return Some(Index::Num(n));
        }
        let mut cs = s.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => Some(Index::Sym(c)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub label: Label,
    pub entry: LexEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub label: Label,
    pub tag: Option<ConstructionTag>,
    pub index: Option<Index>,
    pub children: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Phrase(Phrase),
    Word(Word),
    Trace(Index),
    /// Empty operator heading a comparative complement.
    Wh(Option<Index>),
    /// Elided material awaiting reconstruction (`e`).
    Gap,
    /// Empty complementizer.
    Comp,
}

impl Node {
    pub fn phrase(label: Label, children: Vec<Node>) -> Node {
        Node::Phrase(Phrase {
            label,
            tag: None,
            index: None,
            children,
        })
    }

    pub fn tagged(label: Label, tag: ConstructionTag, children: Vec<Node>) -> Node {
        Node::Phrase(Phrase {
            label,
            tag: Some(tag),
            index: None,
            children,
        })
    }

    pub fn word(entry: &LexEntry) -> Node {
        Node::Word(Word {
            label: Label::for_category(entry.category),
            entry: entry.clone(),
        })
    }

    pub fn as_phrase(&self) -> Option<&Phrase> {
        match self {
            Node::Phrase(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_phrase_mut(&mut self) -> Option<&mut Phrase> {
        match self {
            Node::Phrase(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Node::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> Option<Label> {
        match self {
            Node::Phrase(p) => Some(p.label),
            Node::Word(w) => Some(w.label),
            _ => None,
        }
    }

    pub fn is(&self, label: Label) -> bool {
        self.label() == Some(label)
    }

    pub fn index(&self) -> Option<Index> {
        match self {
            Node::Phrase(p) => p.index,
            Node::Trace(i) => Some(*i),
            Node::Wh(i) => *i,
            _ => None,
        }
    }

    pub fn children(&self) -> &[Node] {
        match self {
            Node::Phrase(p) => &p.children,
            _ => &[],
        }
    }

    /// Surface words in order.
    pub fn words(&self) -> Vec<&LexEntry> {
        let mut out = Vec::new();
        self.walk(&mut |n| {
            if let Node::Word(w) = n {
                out.push(&w.entry);
            }
        });
        out
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Finds the first node (pre-order) satisfying the predicate.
    pub fn find(&self, pred: &impl Fn(&Node) -> bool) -> Option<&Node> {
        if pred(self) {
            return Some(self);
        }
        self.children().iter().find_map(|c| c.find(pred))
    }

    /// Path (child positions) to the first node satisfying the predicate.
    pub fn path_to(&self, pred: &impl Fn(&Node) -> bool) -> Option<Vec<usize>> {
        if pred(self) {
            return Some(Vec::new());
        }
        for (i, c) in self.children().iter().enumerate() {
            if let Some(mut p) = c.path_to(pred) {
                p.insert(0, i);
                return Some(p);
            }
        }
        None
    }

    pub fn at(&self, path: &[usize]) -> Option<&Node> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.children().get(*i)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Node> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => match self {
                Node::Phrase(p) => p.children.get_mut(*i)?.at_mut(rest),
                _ => None,
            },
        }
    }

    /// Full bracketing, e.g. `[NP:WRA [NP [Det a] [N' [A faster] [N car]]] ...]`.
    pub fn bracket(&self) -> String {
        let mut out = String::new();
        self.write_full(&mut out);
        out
    }

    fn write_full(&self, out: &mut String) {
        match self {
            Node::Phrase(p) => {
                out.push('[');
                out.push_str(p.label.as_str());
                if let Some(t) = p.tag {
                    out.push(':');
                    out.push_str(t.as_str());
                }
                if let Some(i) = p.index {
                    out.push_str(&format!("_{i}"));
                }
                for c in &p.children {
                    out.push(' ');
                    c.write_full(out);
                }
                out.push(']');
            }
            Node::Word(w) => {
                out.push_str(&format!("[{} {}]", w.label.as_str(), w.entry.form));
            }
            other => other.write_compact(out),
        }
    }

    /// Compact labeled bracketing: words bare, N' transparent, one-word NPs
    /// written as the word with its index.
    pub fn paper(&self) -> String {
        let mut out = String::new();
        self.write_compact(&mut out);
        out
    }

    fn write_compact(&self, out: &mut String) {
        match self {
            Node::Word(w) => out.push_str(&w.entry.form),
            Node::Trace(i) => out.push_str(&format!("t_{i}")),
            Node::Wh(None) => out.push_str("WH"),
            Node::Wh(Some(i)) => out.push_str(&format!("WH_{i}")),
            Node::Gap => out.push('e'),
            Node::Comp => out.push('C'),
            Node::Phrase(p) => {
                if p.label == Label::NBar {
                    for (k, c) in p.children.iter().enumerate() {
                        if k > 0 {
                            out.push(' ');
                        }
                        c.write_compact(out);
                    }
                    return;
                }
                if p.label == Label::NP && p.children.len() == 1 && p.children[0].as_word().is_some() {
                    p.children[0].write_compact(out);
                } else {
                    out.push('[');
                    out.push_str(p.label.as_str());
                    for c in &p.children {
                        out.push(' ');
                        c.write_compact(out);
                    }
                    out.push(']');
                }
                if let Some(i) = p.index {
                    out.push_str(&format!("_{i}"));
                }
            }
        }
    }

    /// Reads the full bracketing back; words are resolved through the lexicon.
    pub fn read(text: &str, lexicon: &Lexicon) -> Result<Node, GrammarError> {
        let toks = bracket_tokens(text);
        let mut pos = 0;
        let node = read_node(&toks, &mut pos, lexicon)?;
        if pos != toks.len() {
            return Err(GrammarError::Bracketing(format!("trailing input after token {pos}")));
        }
        Ok(node)
    }
}

fn bracket_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '[' | ']' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn read_node(toks: &[String], pos: &mut usize, lexicon: &Lexicon) -> Result<Node, GrammarError> {
    let err = |m: String| GrammarError::Bracketing(m);
    let tok = toks.get(*pos).ok_or_else(|| err("unexpected end of input".into()))?;
    *pos += 1;
    if tok != "[" {
        return read_leaf(tok).ok_or_else(|| err(format!("unexpected token {tok}")));
    }
    let head = toks.get(*pos).ok_or_else(|| err("missing label".into()))?;
    *pos += 1;
    let (rest, index) = match head.rsplit_once('_') {
        Some((l, i)) => (l, Some(Index::parse(i).ok_or_else(|| err(format!("bad index {i}")))?)),
        None => (head.as_str(), None),
    };
    let (label_str, tag) = match rest.split_once(':') {
        Some((l, t)) => (
            l,
            Some(ConstructionTag::parse(t).ok_or_else(|| err(format!("bad tag {t}")))?),
        ),
        None => (rest, None),
    };
    let label = Label::parse(label_str).ok_or_else(|| err(format!("unknown label {label_str}")))?;
    if label.is_lexical() {
        let mut words = Vec::new();
        while let Some(t) = toks.get(*pos) {
            if t == "]" {
                break;
            }
            words.push(t.clone());
            *pos += 1;
        }
        *pos += 1;
        let form = words.join(" ");
        let entry = lexicon
            .entries()
            .iter()
            .find(|e| e.form == form && Label::for_category(e.category) == label)
            .ok_or_else(|| GrammarError::UnknownWord(form.clone()))?;
        return Ok(Node::word(entry));
    }
    let mut children = Vec::new();
    loop {
        match toks.get(*pos).map(String::as_str) {
            None => return Err(err("unclosed bracket".into())),
            Some("]") => {
                *pos += 1;
                break;
            }
            Some(_) => children.push(read_node(toks, pos, lexicon)?),
        }
    }
    Ok(Node::Phrase(Phrase {
        label,
        tag,
        index,
        children,
    }))
}

fn read_leaf(tok: &str) -> Option<Node> {
    match tok {
        "e" => Some(Node::Gap),
        "C" => Some(Node::Comp),
        "WH" => Some(Node::Wh(None)),
        _ => {
            if let Some(i) = tok.strip_prefix("t_") {
                Index::parse(i).map(Node::Trace)
            } else if let Some(i) = tok.strip_prefix("WH_") {
                Index::parse(i).map(|i| Node::Wh(Some(i)))
            } else {
                None
            }
        }
    }
}

/// A parsed surface constituent structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceTree {
    pub root: Node,
}

impl SurfaceTree {
    pub fn new(root: Node) -> Self {
        SurfaceTree { root }
    }

    /// Tag of the comparative-hosting node, or `Plain`.
    pub fn tag(&self) -> ConstructionTag {
        classify_construction(self)
    }

    pub fn bracket(&self) -> String {
        self.root.bracket()
    }

    pub fn paper(&self) -> String {
        self.root.paper()
    }

    pub fn read(text: &str, lexicon: &Lexicon) -> Result<Self, GrammarError> {
        Ok(SurfaceTree {
            root: Node::read(text, lexicon)?,
        })
    }

    /// Whether the root is a clause rather than an NP fragment.
    pub fn is_sentence(&self) -> bool {
        self.root.is(Label::IP)
    }

    /// Path to the comparative-hosting node.
    pub fn host_path(&self) -> Option<Vec<usize>> {
        self.root.path_to(&|n| n.as_phrase().is_some_and(|p| p.tag.is_some()))
    }

    pub fn host(&self) -> Option<&Phrase> {
        self.host_path()
            .and_then(|p| self.root.at(&p))
            .and_then(Node::as_phrase)
    }
}

impl fmt::Display for SurfaceTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.paper())
    }
}

/// Construction tag stored on the tree's comparative host, `Plain` when there is none.
pub fn classify_construction(tree: &SurfaceTree) -> ConstructionTag {
    tree.host().and_then(|p| p.tag).unwrap_or(ConstructionTag::Plain)
}
