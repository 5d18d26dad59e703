use crate::grammar::{np_referential, Category, ConstructionTag, Index, Label, LexEntry, Node, SurfaceTree};
use crate::lambda::{alpha_equal, SemType, Term, Var};
use crate::lf::{build_lf, enumerate_scopes, LfStage, LfTree, ScopeAssignment, ScopeOrder};

use super::{combine, Mode, P0Resolution, Reading, SemLexicon, SemanticsError, TraceStep, C0, P0};

fn trace_var(index: Index) -> Var {
    Var::new(format!("t{index}"), SemType::Entity)
}

fn words(node: &Node) -> String {
    node.words()
        .iter()
        .map(|e| e.form.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn malformed(what: &str, node: &Node) -> SemanticsError {
    SemanticsError::Malformed(format!("{what}: {}", node.paper()))
}

/// A quantifier waiting to be quantified into the clause over `var`.
struct Pending {
    node: String,
    quantifier: Term,
    var: Var,
}

struct Engine<'a> {
    lex: &'a SemLexicon,
    trace: Vec<TraceStep>,
    antecedent: Option<P0Resolution>,
    complement: Option<Term>,
}

impl<'a> Engine<'a> {
    fn new(lex: &'a SemLexicon) -> Self {
        Engine {
            lex,
            trace: Vec::new(),
            antecedent: None,
            complement: None,
        }
    }

    fn lexical(&mut self, node: impl Into<String>, term: Term) -> Term {
        self.trace.push(TraceStep::Lexical {
            node: node.into(),
            term: term.clone(),
        });
        term
    }

    fn key(&mut self, node: &str, key: &str) -> Result<Term, SemanticsError> {
        let t = self.lex.get(key)?.clone();
        Ok(self.lexical(node, t))
    }

    fn word(&mut self, entry: &LexEntry) -> Result<Term, SemanticsError> {
        let t = self.lex.word(entry)?;
        Ok(self.lexical(entry.form.clone(), t))
    }

    fn step(
        &mut self,
        node: impl Into<String>,
        mode: Mode,
        function: &Term,
        argument: &Term,
        target: Option<&Var>,
    ) -> Result<Term, SemanticsError> {
        let result = combine(mode, function, argument, target)?;
        self.trace.push(TraceStep::Combine {
            node: node.into(),
            mode,
            function: function.clone(),
            argument: argument.clone(),
            target: target.cloned(),
            result: result.clone(),
        });
        Ok(result)
    }

    fn fa(&mut self, node: impl Into<String>, f: &Term, a: &Term) -> Result<Term, SemanticsError> {
        self.step(node, Mode::Fa, f, a, None)
    }

    fn gfa(&mut self, node: impl Into<String>, f: &Term, a: &Term) -> Result<Term, SemanticsError> {
        self.step(node, Mode::Gfa, f, a, None)
    }

    fn qi(&mut self, node: impl Into<String>, q: &Term, scope: &Term, var: &Var) -> Result<Term, SemanticsError> {
        self.step(node, Mode::QuantifyIn, q, scope, Some(var))
    }

    fn set_antecedent(&mut self, antecedent: Term, source: String) {
        self.antecedent = Some(P0Resolution { antecedent, source });
    }

    /// Generalized-quantifier meaning of a (non-raised) NP.
    fn np(&mut self, np: &Node) -> Result<Term, SemanticsError> {
        let phrase = np.as_phrase().ok_or_else(|| malformed("expected an NP", np))?;
        if phrase.tag == Some(ConstructionTag::Nra) {
            return self.nra_np(np);
        }
        if phrase.tag.is_some() {
            return Err(malformed("comparative NP in an unexpected position", np));
        }
        match phrase.children.as_slice() {
            [Node::Word(w)] if w.label == Label::Name => self.word(&w.entry),
            [left, Node::Word(conj), right] if conj.label == Label::Conj => {
                let x = self.np(left)?;
                let y = self.np(right)?;
                let or = self.word(&conj.entry)?;
                let partial = self.fa(format!("{} {}", words(left), conj.entry.form), &or, &x)?;
                self.fa(np.paper(), &partial, &y)
            }
            [Node::Word(det), nbar] if det.label == Label::Det => {
                if nbar_is_comparative(nbar) {
                    let quantifier = self.comparative_core(np)?;
                    let standard = self.lex.constant(C0)?;
                    let standard = self.lexical("(contextual standard)", standard);
                    return self.fa(np.paper(), &quantifier, &standard);
                }
                let d = self.word(&det.entry)?;
                let noun = self.plain_nbar(nbar)?;
                self.fa(np.paper(), &d, &noun)
            }
            _ => Err(malformed("unsupported NP", np)),
        }
    }

    /// `<e,t>` meaning of an N' without a comparative.
    fn plain_nbar(&mut self, nbar: &Node) -> Result<Term, SemanticsError> {
        match nbar.children() {
            [Node::Word(n)] if n.label == Label::N => self.word(&n.entry),
            [Node::Word(a), Node::Word(n)] if a.label == Label::A => {
                let adj = self.word(&a.entry)?;
                let pos = self.key("(positive)", "pos")?;
                let modifier = self.gfa(a.entry.form.clone(), &pos, &adj)?;
                let noun = self.word(&n.entry)?;
                self.fa(nbar.paper(), &modifier, &noun)
            }
            _ => Err(malformed("unsupported N'", nbar)),
        }
    }

    /// `[NP Det [N' A-er N]]` up to the determiner, waiting for a degree
    /// quantifier; records the attributive antecedent `A'(N')`.
    fn comparative_core(&mut self, inner: &Node) -> Result<Term, SemanticsError> {
        let [Node::Word(det), nbar] = inner.children() else {
            return Err(malformed("comparative NP without determiner", inner));
        };
        let [Node::Word(adj), Node::Word(noun)] = nbar.children() else {
            return Err(malformed("comparative N'", nbar));
        };
        let er = self.key("-er", "er")?;
        let base = self.word(&adj.entry)?;
        let comparative = self.gfa(adj.entry.form.clone(), &er, &base)?;
        let n = self.word(&noun.entry)?;
        let with_noun = self.fa(nbar.paper(), &comparative, &n)?;
        let d = self.word(&det.entry)?;
        let np = self.gfa(inner.paper(), &d, &with_noun)?;
        let antecedent = Term::app(self.lex.constant(&adj.entry.key)?, self.lex.constant(&noun.entry.key)?);
        self.set_antecedent(antecedent, words(nbar));
        Ok(np)
    }

    /// Narrow attributive comparative: the small-clause complement is
    /// interpreted directly.
    fn nra_np(&mut self, np: &Node) -> Result<Term, SemanticsError> {
        let [inner, pp] = np.children() else {
            return Err(malformed("NRA NP", np));
        };
        let core = self.comparative_core(inner)?;
        let complement = self.small_clause_pp(pp, false, &mut Vec::new())?;
        self.fa(np.paper(), &core, &complement)
    }

    /// `[PP than [SC WH NP]]`. Non-referential complement NPs are only
    /// allowed when they may be raised to the clause (`raise`), in which
    /// case a lifted trace stands in and the NP joins `pending`.
    fn small_clause_pp(&mut self, pp: &Node, raise: bool, pending: &mut Vec<Pending>) -> Result<Term, SemanticsError> {
        let [Node::Word(than), sc] = pp.children() else {
            return Err(malformed("comparative PP", pp));
        };
        let [Node::Wh(_), np] = sc.children() else {
            return Err(malformed("small clause", sc));
        };
        let wh = self.key("WH", "wh_direct")?;
        let subject = if np_referential(np) {
            self.np(np)?
        } else if raise {
            let var = trace_var(Index::Num(2));
            let q = Var::new("Q", SemType::pred());
            let lifted = Term::lam(q.clone(), Term::app(Term::Var(q), Term::Var(var.clone())));
            let lifted = self.lexical("t_2", lifted);
            let quantifier = self.np(np)?;
            pending.push(Pending {
                node: format!("{}_2", words(np)),
                quantifier,
                var,
            });
            lifted
        } else {
            return Err(SemanticsError::QuantifiedComplement(words(np)));
        };
        let sc_meaning = self.fa(sc.paper(), &wh, &subject)?;
        self.complement = Some(sc_meaning.clone());
        let than_meaning = self.word(&than.entry)?;
        self.fa(pp.paper(), &than_meaning, &sc_meaning)
    }

    /// `AP` predicated of `subject`.
    fn predicate(&mut self, ap: &Node, subject: &Term, pending: &mut Vec<Pending>) -> Result<Term, SemanticsError> {
        let phrase = ap.as_phrase().ok_or_else(|| malformed("expected an AP", ap))?;
        if phrase.tag == Some(ConstructionTag::Pred) {
            let [head, pp] = ap.children() else {
                return Err(malformed("predicative comparative", ap));
            };
            let [Node::Word(adj)] = head.children() else {
                return Err(malformed("comparative AP head", head));
            };
            let er = self.key("-er", "er")?;
            let base = self.word(&adj.entry)?;
            let comparative = self.gfa(adj.entry.form.clone(), &er, &base)?;
            let applied = self.fa(format!("{} (subject)", adj.entry.form), &comparative, subject)?;
            self.set_antecedent(self.lex.constant(&adj.entry.key)?, adj.entry.form.clone());
            let complement = self.small_clause_pp(pp, true, pending)?;
            return self.fa(ap.paper(), &applied, &complement);
        }
        let [Node::Word(adj)] = ap.children() else {
            return Err(malformed("unsupported AP", ap));
        };
        let base = self.word(&adj.entry)?;
        if adj.entry.comparative {
            let er = self.key("-er", "er")?;
            let comparative = self.gfa(adj.entry.form.clone(), &er, &base)?;
            let applied = self.fa(format!("{} (subject)", adj.entry.form), &comparative, subject)?;
            let standard = self.lex.constant(C0)?;
            let standard = self.lexical("(contextual standard)", standard);
            self.fa(ap.paper(), &applied, &standard)
        } else {
            let pos = self.key("(positive)", "pos")?;
            let positive = self.gfa(adj.entry.form.clone(), &pos, &base)?;
            self.fa(ap.paper(), &positive, subject)
        }
    }

    /// Composes `[IP subj V obj (Adv)]` or `[IP subj is AP (Adv)]`. Argument
    /// positions holding traces become variables; NPs in them are raised and
    /// quantified in afterwards (object first, so the subject scopes widest),
    /// followed by any NPs raised out of a predicative complement.
    fn clause(&mut self, ip: &Node) -> Result<Term, SemanticsError> {
        let children = ip.children();
        let (subject, rest) = children.split_first().ok_or_else(|| malformed("empty clause", ip))?;
        let (head, rest) = rest.split_first().ok_or_else(|| malformed("clause without verb", ip))?;
        let Some(verb) = head.as_word() else {
            return Err(malformed("clause head", ip));
        };
        let (argument, adverb) = match rest {
            [a] => (a, None),
            [a, Node::Word(adv)] if adv.label == Label::Adv => (a, Some(adv)),
            _ => return Err(malformed("clause shape", ip)),
        };
        let mut raised = Vec::new();
        let mut argument_var = |engine: &mut Self, node: &Node, index: Index| -> Result<Term, SemanticsError> {
            match node {
                Node::Trace(i) => Ok(Term::Var(trace_var(*i))),
                _ => {
                    let var = trace_var(index);
                    let quantifier = engine.np(node)?;
                    raised.push(Pending {
                        node: node.paper(),
                        quantifier,
                        var: var.clone(),
                    });
                    Ok(Term::Var(var))
                }
            }
        };
        let subj = argument_var(self, subject, Index::Num(1))?;
        let mut late = Vec::new();
        let mut body = if verb.entry.category == Category::V {
            let obj = argument_var(self, argument, Index::Sym('i'))?;
            let v = self.word(&verb.entry)?;
            let partial = self.fa(format!("{} {}", subject.paper(), verb.entry.form), &v, &subj)?;
            self.fa(ip.paper(), &partial, &obj)?
        } else {
            self.predicate(argument, &subj, &mut late)?
        };
        if let Some(adv) = adverb {
            let a = self.word(&adv.entry)?;
            body = self.fa(ip.paper(), &a, &body)?;
        }
        raised.reverse();
        raised.extend(late);
        for p in raised {
            body = self.qi(p.node, &p.quantifier, &body, &p.var)?;
        }
        Ok(body)
    }

    /// Complement CP of a reconstructed LF under a scope order.
    fn complement_cp(&mut self, cp: &Node, order: Option<ScopeOrder>) -> Result<Term, SemanticsError> {
        let [Node::Wh(Some(j)), Node::Comp, ip] = cp.children() else {
            return Err(malformed("complement CP", cp));
        };
        let [np, copy] = ip.children() else {
            return Err(malformed("complement clause", ip));
        };
        let np_index = np.index().ok_or_else(|| malformed("unindexed complement NP", np))?;
        let np_var = trace_var(np_index);
        let wh_var = trace_var(*j);
        let wh = self.key(&format!("WH_{j}"), "wh_reconstructed")?;
        let inner = self.clause(copy)?;
        let quantifier = self.np(np)?;
        let node = format!("{}_{np_index}", words(np));
        let result = match order.unwrap_or(ScopeOrder::WhOverNp) {
            ScopeOrder::WhOverNp => {
                let body = self.qi(node, &quantifier, &inner, &np_var)?;
                self.fa(cp.paper(), &wh, &Term::lam(wh_var, body))?
            }
            ScopeOrder::NpOverWh => {
                let open = self.fa(
                    format!("[CP WH_{j} C {}]", copy.paper()),
                    &wh,
                    &Term::lam(wh_var, inner),
                )?;
                self.gfa(cp.paper(), &quantifier, &Term::lam(np_var, open))?
            }
        };
        self.complement = Some(result.clone());
        Ok(result)
    }

    fn finish(mut self, form: Term, tag: ConstructionTag, scope: ScopeAssignment) -> Result<Reading, SemanticsError> {
        let mut form = form;
        if form.mentions_constant(P0) {
            let r = self.antecedent.clone().ok_or(SemanticsError::NoAntecedent)?;
            form = self.step(
                format!("P0 := {}", r.source),
                Mode::ResolveP0,
                &r.antecedent,
                &form,
                None,
            )?;
        }
        if !form.is_closed() {
            let names: Vec<String> = form.free_vars().into_iter().collect();
            return Err(SemanticsError::NotClosed(names.join(", ")));
        }
        let p0 = if self.complement.is_some() {
            self.antecedent
        } else {
            None
        };
        Ok(Reading {
            form,
            scope,
            tag,
            p0,
            complement: self.complement,
            trace: self.trace,
        })
    }
}

fn nbar_is_comparative(nbar: &Node) -> bool {
    nbar.children()
        .first()
        .and_then(Node::as_word)
        .is_some_and(|w| w.label == Label::A && w.entry.comparative)
}

/// Composes a reconstructed WRA logical form under one scope assignment.
pub fn compose_wra(lf: &LfTree, scope: &ScopeAssignment, lex: &SemLexicon) -> Result<Reading, SemanticsError> {
    if lf.stage != LfStage::Reconstructed || lf.tag != ConstructionTag::Wra {
        return Err(SemanticsError::Malformed(
            "expected a reconstructed WRA logical form".into(),
        ));
    }
    let mut e = Engine::new(lex);
    let [raised, matrix] = lf.root.children() else {
        return Err(malformed("WRA logical form", &lf.root));
    };
    let object_index = raised
        .index()
        .ok_or_else(|| malformed("unindexed comparative NP", raised))?;
    let [correlate, clause] = matrix.children() else {
        return Err(malformed("matrix clause", matrix));
    };
    let subject_index = correlate
        .index()
        .ok_or_else(|| malformed("unindexed correlate", correlate))?;

    let body = e.clause(clause)?;
    let subject = e.np(correlate)?;
    let body = e.qi(correlate.paper(), &subject, &body, &trace_var(subject_index))?;

    let [inner, pp] = raised.children() else {
        return Err(malformed("comparative NP", raised));
    };
    let core = e.comparative_core(inner)?;
    let [Node::Word(than), cp] = pp.children() else {
        return Err(malformed("comparative PP", pp));
    };
    let complement = e.complement_cp(cp, scope.order())?;
    let than_meaning = e.word(&than.entry)?;
    let pp_meaning = e.fa(pp.paper(), &than_meaning, &complement)?;
    let np = e.fa(raised.paper(), &core, &pp_meaning)?;
    let form = e.qi(raised.paper(), &np, &body, &trace_var(object_index))?;
    e.finish(form, ConstructionTag::Wra, scope.clone())
}

fn sentence_root(tree: &SurfaceTree) -> Result<&Node, SemanticsError> {
    if tree.is_sentence() {
        Ok(&tree.root)
    } else {
        Err(SemanticsError::NotASentence(tree.paper()))
    }
}

/// Direct interpretation of a narrow attributive comparative.
pub fn compose_nra(tree: &SurfaceTree, lex: &SemLexicon) -> Result<Reading, SemanticsError> {
    let root = sentence_root(tree)?;
    let mut e = Engine::new(lex);
    let form = e.clause(root)?;
    e.finish(form, ConstructionTag::Nra, ScopeAssignment::trivial())
}

/// Direct interpretation of a predicative comparative.
pub fn compose_pred(tree: &SurfaceTree, lex: &SemLexicon) -> Result<Reading, SemanticsError> {
    let root = sentence_root(tree)?;
    let mut e = Engine::new(lex);
    let form = e.clause(root)?;
    e.finish(form, ConstructionTag::Pred, ScopeAssignment::trivial())
}

/// Sentences without a comparative complement.
pub fn compose_plain(tree: &SurfaceTree, lex: &SemLexicon) -> Result<Reading, SemanticsError> {
    let root = sentence_root(tree)?;
    let mut e = Engine::new(lex);
    let form = e.clause(root)?;
    e.finish(form, ConstructionTag::Plain, ScopeAssignment::trivial())
}

/// Instantiates the anaphoric relation of a reading with `antecedent`.
pub fn resolve_p0(reading: &Reading, antecedent: &Term, source: &str) -> Result<Reading, SemanticsError> {
    if !reading.form.mentions_constant(P0) {
        return Ok(reading.clone());
    }
    let form = combine(Mode::ResolveP0, antecedent, &reading.form, None)?;
    let mut out = reading.clone();
    out.trace.push(TraceStep::Combine {
        node: format!("P0 := {source}"),
        mode: Mode::ResolveP0,
        function: antecedent.clone(),
        argument: reading.form.clone(),
        target: None,
        result: form.clone(),
    });
    out.form = form;
    out.p0 = Some(P0Resolution {
        antecedent: antecedent.clone(),
        source: source.to_string(),
    });
    Ok(out)
}

/// All readings of a parse, in scope-assignment order, without
/// alpha-equivalent duplicates.
pub fn compose(tree: &SurfaceTree, lex: &SemLexicon) -> Result<Vec<Reading>, SemanticsError> {
    let readings = match tree.tag() {
        ConstructionTag::Wra => {
            let lf = build_lf(tree)?;
            let mut out: Vec<Reading> = Vec::new();
            for scope in enumerate_scopes(&lf) {
                let r = compose_wra(&lf, &scope, lex)?;
                if !out.iter().any(|o| alpha_equal(&o.form, &r.form)) {
                    out.push(r);
                }
            }
            out
        }
        ConstructionTag::Nra => vec![compose_nra(tree, lex)?],
        ConstructionTag::Pred => vec![compose_pred(tree, lex)?],
        ConstructionTag::Plain => vec![compose_plain(tree, lex)?],
    };
    Ok(readings)
}
