use crate::grammar::{ConstructionTag, Index, Label, Node, SurfaceTree};

use super::{LfError, LfStage, LfTree};

pub(crate) const OBJECT: Index = Index::Sym('i');
pub(crate) const WH: Index = Index::Sym('j');
pub(crate) const SUBJECT: Index = Index::Num(1);
pub(crate) const COMPLEMENT: Index = Index::Num(2);

fn set_index(node: &mut Node, index: Index) -> Result<(), LfError> {
    match node.as_phrase_mut() {
        Some(p) => {
            p.index = Some(index);
            Ok(())
        }
        None => Err(LfError::Malformed("expected a phrase to index".into())),
    }
}

fn phrase_children(node: &mut Node) -> Result<&mut Vec<Node>, LfError> {
    node.as_phrase_mut()
        .map(|p| &mut p.children)
        .ok_or_else(|| LfError::Malformed("expected a phrase".into()))
}

/// Raises the WRA comparative NP out of the clause, leaving `t_i` and an
/// ellipsis site `e` in the complement. Non-WRA trees pass through unchanged,
/// except NRA/PRED hosts, which are never raised.
pub fn qr_comparative_np(tree: &SurfaceTree) -> Result<LfTree, LfError> {
    let mut lf = LfTree::from_surface(tree);
    match lf.tag {
        ConstructionTag::Plain => return Ok(lf),
        ConstructionTag::Wra => {}
        other => {
            return Err(LfError::NotApplicable(format!(
                "{other} comparatives are interpreted without raising"
            )))
        }
    }
    if !tree.is_sentence() {
        return Err(LfError::Malformed("comparative NP outside a clause".into()));
    }
    let path = tree
        .host_path()
        .ok_or_else(|| LfError::Malformed("no comparative host".into()))?;
    if path.len() != 1 {
        return Err(LfError::Malformed("comparative NP is not a clause argument".into()));
    }
    let before = lf.paper();
    let mut clause = lf.root.clone();
    let slot = &mut phrase_children(&mut clause)?[path[0]];
    let mut np = std::mem::replace(slot, Node::Trace(OBJECT));
    set_index(&mut np, OBJECT)?;
    let pp = phrase_children(&mut np)?
        .iter_mut()
        .find(|c| c.is(Label::PP))
        .ok_or_else(|| LfError::Malformed("comparative NP lacks its complement".into()))?;
    phrase_children(pp)?.push(Node::Gap);
    lf.root = Node::phrase(Label::IP, vec![np, clause]);
    lf.stage = LfStage::ComparativeRaised;
    lf.record("qr_comparative_np", before);
    Ok(lf)
}

/// Raises the subject correlate out of the matrix clause, leaving `t_1`.
pub fn qr_correlate(lf: &LfTree) -> Result<LfTree, LfError> {
    match lf.stage {
        LfStage::ComparativeRaised => {}
        LfStage::Surface => return Err(LfError::NotApplicable("the comparative NP has not been raised".into())),
        _ => return Err(LfError::RedundantQr),
    }
    let mut out = lf.clone();
    let before = out.paper();
    let clause = phrase_children(&mut out.root)?
        .get_mut(1)
        .ok_or_else(|| LfError::Malformed("raised NP without a clause".into()))?;
    let mut inner = clause.clone();
    let subject_slot = phrase_children(&mut inner)?
        .first_mut()
        .ok_or_else(|| LfError::Malformed("clause without a subject".into()))?;
    if !subject_slot.is(Label::NP) {
        return Err(LfError::RedundantQr);
    }
    let mut subject = std::mem::replace(subject_slot, Node::Trace(SUBJECT));
    set_index(&mut subject, SUBJECT)?;
    *clause = Node::phrase(Label::IP, vec![subject, inner]);
    out.stage = LfStage::CorrelateRaised;
    out.record("qr_correlate", before);
    Ok(out)
}

/// Fills the ellipsis site with a copy of the matrix clause (subject trace
/// re-indexed to the complement NP, object trace left open), then binds the
/// open trace by a WH operator with `j = i`.
pub fn acd_reconstruct(lf: &LfTree) -> Result<LfTree, LfError> {
    if lf.tag == ConstructionTag::Nra {
        return Err(LfError::NotApplicable("NRA complements are not reconstructed".into()));
    }
    if lf.stage != LfStage::CorrelateRaised {
        return Err(LfError::NotApplicable(
            "reconstruction needs both raisings first".into(),
        ));
    }
    let mut out = lf.clone();

    // i-copy of the subject trace, strict copy of the object trace
    let matrix = out
        .root
        .at(&[1, 1])
        .ok_or_else(|| LfError::Malformed("no matrix clause below the correlate".into()))?;
    let copy_children: Vec<Node> = matrix
        .children()
        .iter()
        .filter(|c| !c.is(Label::Adv))
        .map(|c| match c {
            Node::Trace(SUBJECT) => Node::Trace(COMPLEMENT),
            Node::Trace(OBJECT) => Node::Trace(Index::Open),
            other => other.clone(),
        })
        .collect();
    let copy = Node::phrase(Label::IP, copy_children);

    let before = out.paper();
    let pp = complement_pp(&mut out.root)?;
    let children = phrase_children(pp)?;
    let gap = children
        .iter()
        .position(|c| *c == Node::Gap)
        .ok_or_else(|| LfError::Malformed("no ellipsis site".into()))?;
    let np = children
        .iter_mut()
        .find(|c| c.is(Label::NP))
        .ok_or_else(|| LfError::Malformed("complement without an NP".into()))?;
    set_index(np, COMPLEMENT)?;
    children[gap] = copy;
    out.record("acd_copy", before);

    let before = out.paper();
    let pp = complement_pp(&mut out.root)?;
    let children = phrase_children(pp)?;
    let mut copy = children.pop().ok_or_else(|| LfError::Malformed("copy lost".into()))?;
    let np = children
        .pop()
        .ok_or_else(|| LfError::Malformed("complement NP lost".into()))?;
    for c in phrase_children(&mut copy)? {
        if *c == Node::Trace(Index::Open) {
            *c = Node::Trace(WH);
        }
    }
    let ip = Node::phrase(Label::IP, vec![np, copy]);
    children.push(Node::phrase(Label::CP, vec![Node::Wh(Some(WH)), Node::Comp, ip]));
    out.bindings.push((WH, OBJECT));
    out.stage = LfStage::Reconstructed;
    out.record("wh_insertion", before);

    check_bindings(&out)?;
    if copied_clause(&out).is_some_and(|ip| ip.find(&|n| n.is(Label::Det)).is_some()) {
        return Err(LfError::DeterminerCopied);
    }
    Ok(out)
}

fn complement_pp(root: &mut Node) -> Result<&mut Node, LfError> {
    root.at_mut(&[0])
        .and_then(|np| match np {
            Node::Phrase(p) => p.children.iter_mut().find(|c| c.is(Label::PP)),
            _ => None,
        })
        .ok_or_else(|| LfError::Malformed("raised NP without a complement".into()))
}

/// The reconstructed clause `[IP t_2 V t_j]` inside the complement CP.
pub(crate) fn copied_clause(lf: &LfTree) -> Option<&Node> {
    let cp = lf.root.find(&|n| n.is(Label::CP))?;
    cp.children().get(2)?.children().get(1)
}

/// The complement NP of a reconstructed LF.
pub(crate) fn complement_np(lf: &LfTree) -> Option<&Node> {
    let cp = lf.root.find(&|n| n.is(Label::CP))?;
    cp.children().get(2)?.children().first()
}

/// Runs the full transformation sequence for WRA trees; other trees are
/// returned as surface LFs.
pub fn build_lf(tree: &SurfaceTree) -> Result<LfTree, LfError> {
    if tree.tag() != ConstructionTag::Wra {
        return Ok(LfTree::from_surface(tree));
    }
    let lf = qr_comparative_np(tree)?;
    let lf = qr_correlate(&lf)?;
    acd_reconstruct(&lf)
}

/// Every trace must have exactly one c-commanding binder with its index.
pub fn check_bindings(lf: &LfTree) -> Result<(), LfError> {
    let mut traces = Vec::new();
    collect_traces(&lf.root, &mut Vec::new(), &mut traces);
    for (index, path) in traces {
        if index == Index::Open {
            return Err(LfError::UnboundTrace(index));
        }
        let binders = (0..path.len())
            .filter(|&depth| {
                let parent = lf.root.at(&path[..depth]).expect("path prefix exists");
                parent
                    .children()
                    .iter()
                    .enumerate()
                    .any(|(k, sister)| k != path[depth] && binds(sister, index))
            })
            .count();
        if binders != 1 {
            return Err(LfError::UnboundTrace(index));
        }
    }
    Ok(())
}

fn binds(node: &Node, index: Index) -> bool {
    match node {
        Node::Phrase(p) => p.index == Some(index),
        Node::Wh(i) => *i == Some(index),
        _ => false,
    }
}

fn collect_traces(node: &Node, path: &mut Vec<usize>, out: &mut Vec<(Index, Vec<usize>)>) {
    if let Node::Trace(i) = node {
        out.push((*i, path.clone()));
    }
    for (k, c) in node.children().iter().enumerate() {
        path.push(k);
        collect_traces(c, path, out);
        path.pop();
    }
}
