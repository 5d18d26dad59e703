use std::fmt;

use crate::grammar::{np_referential, ConstructionTag, DetClass, Label, Node, SurfaceTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Bad,
    Marginal,
    Ok,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Ok => "ok",
            Verdict::Marginal => "marginal",
            Verdict::Bad => "bad",
        })
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ok" => Ok(Verdict::Ok),
            "marginal" => Ok(Verdict::Marginal),
            "bad" => Ok(Verdict::Bad),
            other => Err(format!("unknown verdict {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub verdict: Verdict,
    pub rule: &'static str,
    pub explanation: String,
}

impl Judgment {
    fn new(verdict: Verdict, rule: &'static str, explanation: impl Into<String>) -> Self {
        Judgment {
            verdict,
            rule,
            explanation: explanation.into(),
        }
    }
}

fn comparative_determiner(host: &Node) -> Option<DetClass> {
    let inner = host.children().first()?;
    inner.children().first()?.as_word()?.entry.det_class
}

fn complement_np(host: &Node) -> Option<&Node> {
    let pp = host.children().iter().find(|c| c.is(Label::PP))?;
    let last = pp.children().last()?;
    if last.is(Label::SC) {
        last.children().iter().find(|c| c.is(Label::NP))
    } else if last.is(Label::NP) {
        Some(last)
    } else {
        None
    }
}

/// Acceptability of a single parse, from the determiner class of the
/// comparative NP, the construction tag and where the complement attaches.
pub fn judge(tree: &SurfaceTree) -> Judgment {
    let tag = tree.tag();
    let host = tree.host_path().and_then(|p| tree.root.at(&p).cloned());
    let Some(host) = host else {
        return Judgment::new(Verdict::Ok, "complement-free", "no comparative complement is present");
    };
    match tag {
        ConstructionTag::Plain => Judgment::new(Verdict::Ok, "complement-free", "no comparative complement is present"),
        ConstructionTag::Pred => {
            if host.is(Label::AP) && !tree.is_sentence() {
                Judgment::new(
                    Verdict::Ok,
                    "ap-internal",
                    "the complement sits inside a post-nominal AP, out of the determiner's reach",
                )
            } else {
                Judgment::new(
                    Verdict::Ok,
                    "predicative",
                    "predicative comparatives impose no determiner constraint",
                )
            }
        }
        ConstructionTag::Wra | ConstructionTag::Nra => {
            if tag == ConstructionTag::Nra && !complement_np(&host).is_some_and(np_referential) {
                return Judgment::new(
                    Verdict::Bad,
                    "nra-quantified-complement",
                    "a narrow attributive complement must be referential",
                );
            }
            match comparative_determiner(&host) {
                Some(DetClass::Indefinite) => Judgment::new(
                    Verdict::Ok,
                    "indefinite-host",
                    "an indefinite comparative NP is transparent for the complement",
                ),
                Some(DetClass::Cardinal) => Judgment::new(
                    Verdict::Marginal,
                    "cardinal-host",
                    "cardinal determiners with an adjoined complement are marked in English",
                ),
                Some(class) => Judgment::new(
                    Verdict::Bad,
                    "indefiniteness-effect",
                    format!("a {class} determiner outscopes the adjoined complement"),
                ),
                None => Judgment::new(
                    Verdict::Bad,
                    "indefiniteness-effect",
                    "comparative NP without a determiner",
                ),
            }
        }
    }
}

/// Sentence-level verdict: the best judgment over all parses (first wins on ties).
pub fn judge_sentence(trees: &[SurfaceTree]) -> Option<Judgment> {
    let mut best: Option<Judgment> = None;
    for t in trees {
        let j = judge(t);
        if best.as_ref().is_none_or(|b| j.verdict > b.verdict) {
            best = Some(j);
        }
    }
    best
}
