//! Recursive-descent parser for the comparative fragment. Every function
//! returns all analyses of a prefix, so attachment ambiguities surface as
//! multiple trees.

use super::lexicon::{AdjUse, Category, LexEntry, Lexicon, Token};
use super::tree::{ConstructionTag, Label, Node, SurfaceTree};
use super::GrammarError;

type Partial = Vec<(Node, usize)>;

struct Parser<'a> {
    toks: &'a [Token],
}

impl<'a> Parser<'a> {
    fn entry(&self, i: usize) -> Option<&'a LexEntry> {
        self.toks.get(i).and_then(Token::entry)
    }

    fn cat(&self, i: usize) -> Option<Category> {
        self.entry(i).map(|e| e.category)
    }

    /// Proper names, coordinated names and determiner phrases.
    fn simple_np(&self, i: usize, postnominal: bool) -> Result<Partial, GrammarError> {
        let mut out = Vec::new();
        match self.cat(i) {
            Some(Category::ProperName) => {
                let name = Node::phrase(Label::NP, vec![Node::word(self.entry(i).unwrap())]);
                out.push((name.clone(), i + 1));
                if self.cat(i + 1) == Some(Category::Coord) && self.cat(i + 2) == Some(Category::ProperName) {
                    let second = Node::phrase(Label::NP, vec![Node::word(self.entry(i + 2).unwrap())]);
                    let coord = Node::phrase(Label::NP, vec![name, Node::word(self.entry(i + 1).unwrap()), second]);
                    out.push((coord, i + 3));
                }
            }
            Some(Category::Det | Category::CardDet | Category::Npi) => {
                let det = Node::word(self.entry(i).unwrap());
                for (nbar, j) in self.nbar(i + 1, postnominal)? {
                    out.push((Node::phrase(Label::NP, vec![det.clone(), nbar]), j));
                }
            }
            Some(Category::Temporal) => {
                return Err(GrammarError::NotSupported(
                    "temporal comparative complements are not analysed".into(),
                ))
            }
            _ => {}
        }
        Ok(out)
    }

    /// `N`, `A N` (attributive adjective) or `N AP` (post-nominal comparative).
    fn nbar(&self, i: usize, allow_postnominal: bool) -> Result<Partial, GrammarError> {
        let mut out = Vec::new();
        match self.cat(i) {
            Some(Category::N) => {
                let noun = Node::word(self.entry(i).unwrap());
                out.push((Node::phrase(Label::NBar, vec![noun.clone()]), i + 1));
                if allow_postnominal {
                    for (ap, j) in self.comparative_ap(i + 1, AdjUse::Predicative)? {
                        out.push((Node::phrase(Label::NBar, vec![noun.clone(), ap]), j));
                    }
                }
            }
            Some(Category::A) => {
                let adj = self.entry(i).unwrap();
                if adj.adj_use == Some(AdjUse::Attributive) && self.cat(i + 1) == Some(Category::N) {
                    let nodes = vec![Node::word(adj), Node::word(self.entry(i + 1).unwrap())];
                    out.push((Node::phrase(Label::NBar, nodes), i + 2));
                }
            }
            _ => {}
        }
        Ok(out)
    }

    /// `[AP [AP A-er] [PP than [SC WH NP]]]`.
    fn comparative_ap(&self, i: usize, usage: AdjUse) -> Result<Partial, GrammarError> {
        let mut out = Vec::new();
        let Some(adj) = self.entry(i) else {
            return Ok(out);
        };
        if adj.category != Category::A || !adj.comparative || adj.adj_use != Some(usage) {
            return Ok(out);
        }
        if self.cat(i + 1) != Some(Category::CompParticle) {
            return Ok(out);
        }
        let than = Node::word(self.entry(i + 1).unwrap());
        for (np, j) in self.simple_np(i + 2, false)? {
            let sc = Node::phrase(Label::SC, vec![Node::Wh(None), np]);
            let pp = Node::phrase(Label::PP, vec![than.clone(), sc]);
            let inner = Node::phrase(Label::AP, vec![Node::word(adj)]);
            out.push((Node::tagged(Label::AP, ConstructionTag::Pred, vec![inner, pp]), j));
        }
        Ok(out)
    }

    /// Predicate after the copula: bare AP or comparative AP with complement.
    fn predicate_ap(&self, i: usize) -> Result<Partial, GrammarError> {
        let mut out = self.comparative_ap(i, AdjUse::Predicative)?;
        if let Some(adj) = self.entry(i) {
            if adj.category == Category::A && adj.adj_use == Some(AdjUse::Predicative) {
                out.push((Node::phrase(Label::AP, vec![Node::word(adj)]), i + 1));
            }
        }
        Ok(out)
    }

    /// Object NP: a plain NP, or a comparative NP with an adjoined complement.
    fn object_np(&self, i: usize) -> Result<Partial, GrammarError> {
        let mut out = self.simple_np(i, false)?;
        if !matches!(self.cat(i), Some(Category::Det | Category::CardDet | Category::Npi)) {
            return Ok(out);
        }
        let det = Node::word(self.entry(i).unwrap());
        for (nbar, j) in self.nbar(i + 1, false)? {
            let comparative = nbar
                .children()
                .first()
                .and_then(Node::as_word)
                .is_some_and(|w| w.label == Label::A && w.entry.comparative);
            if !comparative || self.cat(j) != Some(Category::CompParticle) {
                continue;
            }
            let than = Node::word(self.entry(j).unwrap());
            let inner = Node::phrase(Label::NP, vec![det.clone(), nbar.clone()]);
            for (complement, k) in self.simple_np(j + 1, false)? {
                if wra_licensed(&complement) {
                    let pp = Node::phrase(Label::PP, vec![than.clone(), complement.clone()]);
                    out.push((
                        Node::tagged(Label::NP, ConstructionTag::Wra, vec![inner.clone(), pp]),
                        k,
                    ));
                }
                if nra_licensed(&complement) {
                    let sc = Node::phrase(Label::SC, vec![Node::Wh(None), complement]);
                    let pp = Node::phrase(Label::PP, vec![than.clone(), sc]);
                    out.push((
                        Node::tagged(Label::NP, ConstructionTag::Nra, vec![inner.clone(), pp]),
                        k,
                    ));
                }
            }
        }
        Ok(out)
    }

    fn adverb(&self, i: usize) -> Option<(Node, usize)> {
        match self.entry(i) {
            Some(e) if e.category == Category::Adv => Some((Node::word(e), i + 1)),
            _ => None,
        }
    }

    /// Subject, verb and object/predicate in canonical order.
    fn clause(&self, subj: Node, i: usize) -> Result<Partial, GrammarError> {
        let mut out = Vec::new();
        let Some(verb) = self.entry(i) else {
            return Ok(out);
        };
        let rest = match verb.category {
            Category::V => self.object_np(i + 1)?,
            Category::Copula => self.predicate_ap(i + 1)?,
            _ => return Ok(out),
        };
        for (comp, j) in rest {
            let mut children = vec![subj.clone(), Node::word(verb), comp];
            let mut end = j;
            if let Some((adv, k)) = self.adverb(j) {
                children.push(adv);
                end = k;
            }
            out.push((Node::phrase(Label::IP, children.clone()), end));
            if end != j {
                children.pop();
                out.push((Node::phrase(Label::IP, children), j));
            }
        }
        Ok(out)
    }

    fn sentences(&self) -> Result<Vec<Node>, GrammarError> {
        let n = self.toks.len();
        let mut out = Vec::new();
        for (subj, i) in self.simple_np(0, false)? {
            for (ip, j) in self.clause(subj, i)? {
                if j == n {
                    out.push(ip);
                }
            }
        }
        // Topicalized object: "NP , NP V (Adv)", restored to canonical order.
        for (topic, i) in self.object_np(0)? {
            if self.toks.get(i) != Some(&Token::Comma) {
                continue;
            }
            for (subj, j) in self.simple_np(i + 1, false)? {
                let Some(verb) = self.entry(j).filter(|v| v.category == Category::V) else {
                    continue;
                };
                let mut children = vec![subj, Node::word(verb), topic.clone()];
                let mut end = j + 1;
                if let Some((adv, k)) = self.adverb(end) {
                    children.push(adv);
                    end = k;
                }
                if end == n {
                    out.push(Node::phrase(Label::IP, children));
                }
            }
        }
        // NP fragments
        for (np, j) in self.simple_np(0, true)? {
            if j == n {
                out.push(np);
            }
        }
        Ok(out)
    }
}

/// A WRA complement is the subject of the reconstructed clause, so it must
/// be a possible subject of the matrix verb (owners are animate).
fn wra_licensed(np: &Node) -> bool {
    np_animate(np)
}

/// NRA complements are referential; inanimate quantified complements also
/// receive the (marked) NRA structure since no WRA analysis is available.
fn nra_licensed(np: &Node) -> bool {
    np_referential(np) || !np_animate(np)
}

pub(crate) fn np_referential(np: &Node) -> bool {
    np.children().len() == 1 && np.children()[0].is(Label::Name)
}

fn np_animate(np: &Node) -> bool {
    let words = np.words();
    let heads: Vec<_> = words
        .iter()
        .filter(|e| matches!(e.category, Category::ProperName | Category::N))
        .collect();
    !heads.is_empty() && heads.iter().all(|e| e.animate)
}

/// All surface trees for a sentence, ordered by construction tag.
pub fn parse(sentence: &str, lexicon: &Lexicon) -> Result<Vec<SurfaceTree>, GrammarError> {
    let toks = lexicon.tokenize(sentence)?;
    let parser = Parser { toks: &toks };
    let mut trees: Vec<SurfaceTree> = Vec::new();
    for node in parser.sentences()? {
        let t = SurfaceTree::new(node);
        if !trees.contains(&t) {
            trees.push(t);
        }
    }
    if trees.is_empty() {
        return Err(GrammarError::NoParse(sentence.trim().to_string()));
    }
    trees.sort_by_key(|t| t.tag());
    Ok(trees)
}
