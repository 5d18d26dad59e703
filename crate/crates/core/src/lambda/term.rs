//! Terms of the typed logical language: variables, constants, binders and
//! connectives, with type checking, capture-avoiding substitution,
//! β-normalization and α-equivalence.

use std::collections::BTreeSet;

use super::types::SemType;
use super::LambdaError;

/// A typed variable. Variables are identified by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub ty: SemType,
}

impl Var {
    pub fn new(name: impl Into<String>, ty: SemType) -> Self {
        Var { name: name.into(), ty }
    }
}

/// A typed non-logical constant such as `g*`, `own'` or `P0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constant {
    pub name: String,
    pub ty: SemType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CardKind {
    AtLeast,
    AtMost,
}

/// Variable-binding operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Binder {
    Lam,
    Forall,
    Exists,
    Card(CardKind, u32),
    /// Maximal degree satisfying the body; only binds degree variables.
    Iota,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    /// `d' > d` over degrees.
    Greater,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Const(Constant),
    App(Box<Term>, Box<Term>),
    Bind(Binder, Var, Box<Term>),
    Not(Box<Term>),
    Binary(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>, ty: SemType) -> Term {
        Term::Var(Var::new(name, ty))
    }

    pub fn constant(name: impl Into<String>, ty: SemType) -> Term {
        Term::Const(Constant { name: name.into(), ty })
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Curried application `f a1 a2 ...`.
    pub fn apply_all(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(v: Var, body: Term) -> Term {
        Term::Bind(Binder::Lam, v, Box::new(body))
    }

    pub fn forall(v: Var, body: Term) -> Term {
        Term::Bind(Binder::Forall, v, Box::new(body))
    }

    pub fn exists(v: Var, body: Term) -> Term {
        Term::Bind(Binder::Exists, v, Box::new(body))
    }

    pub fn card(kind: CardKind, n: u32, v: Var, body: Term) -> Term {
        Term::Bind(Binder::Card(kind, n), v, Box::new(body))
    }

    pub fn iota(v: Var, body: Term) -> Term {
        Term::Bind(Binder::Iota, v, Box::new(body))
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::Binary(BinOp::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::Binary(BinOp::Or, Box::new(a), Box::new(b))
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::Binary(BinOp::Implies, Box::new(a), Box::new(b))
    }

    pub fn greater(a: Term, b: Term) -> Term {
        Term::Binary(BinOp::Greater, Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::Not(Box::new(a))
    }

    /// Head and argument list of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    /// Free variables together with their types.
    pub fn free_var_list(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut Vec<Var>) {
            match t {
                Term::Var(v) => {
                    if !bound.contains(&v.name) && !out.iter().any(|o| o.name == v.name) {
                        out.push(v.clone());
                    }
                }
                Term::Const(_) => {}
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
                Term::Bind(_, v, b) => {
                    bound.push(v.name.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Term::Not(a) => go(a, bound, out),
                Term::Binary(_, a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, name: &str) -> bool {
        self.free_vars().contains(name)
    }

    /// All variable names occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Var(v) | Term::Bind(_, v, _) => {
                out.insert(v.name.clone());
            }
            _ => {}
        });
        out
    }

    /// Names of constants occurring in the term.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                out.insert(c.name.clone());
            }
        });
        out
    }

    pub fn mentions_constant(&self, name: &str) -> bool {
        self.constants().contains(name)
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::App(a, b) | Term::Binary(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Term::Bind(_, _, b) | Term::Not(b) => b.visit(f),
        }
    }

    /// Replaces every occurrence of the named constant by `value`, without
    /// normalizing. `value` must be closed.
    pub fn replace_constant(&self, name: &str, value: &Term) -> Term {
        match self {
            Term::Const(c) if c.name == name => value.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, a) => Term::app(f.replace_constant(name, value), a.replace_constant(name, value)),
            Term::Bind(b, v, body) => Term::Bind(*b, v.clone(), Box::new(body.replace_constant(name, value))),
            Term::Not(a) => Term::not(a.replace_constant(name, value)),
            Term::Binary(op, a, b) => Term::Binary(
                *op,
                Box::new(a.replace_constant(name, value)),
                Box::new(b.replace_constant(name, value)),
            ),
        }
    }
}

fn collect_free(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            if !bound.contains(&v.name) {
                out.insert(v.name.clone());
            }
        }
        Term::Const(_) => {}
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Bind(_, v, b) => {
            bound.push(v.name.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::Not(a) => collect_free(a, bound, out),
        Term::Binary(_, a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
    }
}

/// Returns the type of a well-typed term.
pub fn type_of(term: &Term) -> Result<SemType, LambdaError> {
    check(term, &mut Vec::new())
}

fn ill_typed(path: &[&'static str], expected: impl Into<String>, found: SemType) -> LambdaError {
    let location = if path.is_empty() {
        "root".to_string()
    } else {
        path.join("/")
    };
    LambdaError::IllTyped {
        location,
        expected: expected.into(),
        found,
    }
}

fn check(term: &Term, path: &mut Vec<&'static str>) -> Result<SemType, LambdaError> {
    match term {
        Term::Var(v) => Ok(v.ty.clone()),
        Term::Const(c) => Ok(c.ty.clone()),
        Term::App(f, a) => {
            path.push("fun");
            let fty = check(f, path)?;
            path.pop();
            path.push("arg");
            let aty = check(a, path)?;
            path.pop();
            match fty {
                SemType::Arrow(p, r) => {
                    if *p == aty {
                        Ok(*r)
                    } else {
                        path.push("arg");
                        let e = ill_typed(path, p.to_string(), aty);
                        path.pop();
                        Err(e)
                    }
                }
                other => {
                    path.push("fun");
                    let e = ill_typed(path, "a function type", other);
                    path.pop();
                    Err(e)
                }
            }
        }
        Term::Bind(binder, v, body) => {
            path.push(binder_label(*binder));
            let bty = check(body, path)?;
            let res = match binder {
                Binder::Lam => Ok(SemType::arrow(v.ty.clone(), bty)),
                Binder::Iota => {
                    if v.ty != SemType::Degree {
                        Err(ill_typed(path, "d", v.ty.clone()))
                    } else if !bty.is_truth() {
                        Err(ill_typed(path, "t", bty))
                    } else {
                        Ok(SemType::Degree)
                    }
                }
                _ => {
                    if bty.is_truth() {
                        Ok(SemType::Truth)
                    } else {
                        Err(ill_typed(path, "t", bty))
                    }
                }
            };
            path.pop();
            res
        }
        Term::Not(a) => {
            path.push("not");
            let ty = check(a, path)?;
            let res = if ty.is_truth() {
                Ok(SemType::Truth)
            } else {
                Err(ill_typed(path, "t", ty))
            };
            path.pop();
            res
        }
        Term::Binary(op, a, b) => {
            let want = if *op == BinOp::Greater {
                SemType::Degree
            } else {
                SemType::Truth
            };
            for (side, t) in [("left", a), ("right", b)] {
                path.push(side);
                let ty = check(t, path)?;
                if ty != want {
                    let e = ill_typed(path, want.to_string(), ty);
                    path.pop();
                    return Err(e);
                }
                path.pop();
            }
            Ok(SemType::Truth)
        }
    }
}

fn binder_label(b: Binder) -> &'static str {
    match b {
        Binder::Lam => "lam",
        Binder::Forall => "forall",
        Binder::Exists => "exists",
        Binder::Card(CardKind::AtLeast, _) => "atleast",
        Binder::Card(CardKind::AtMost, _) => "atmost",
        Binder::Iota => "iota",
    }
}

/// Deterministic fresh name: `base` with the smallest numeric suffix (placed
/// before any trailing primes or stars) not rejected by `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let split = base
        .char_indices()
        .rev()
        .take_while(|(_, c)| *c == '\'' || *c == '*')
        .last()
        .map(|(i, _)| i)
        .unwrap_or(base.len());
    let (stem, marks) = base.split_at(split);
    let stem = stem.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|n| format!("{stem}{n}{marks}"))
        .find(|cand| !taken(cand))
        .expect("unbounded counter")
}

/// Capture-avoiding substitution `term[var := value]`.
pub fn substitute(term: &Term, var: &Var, value: &Term) -> Result<Term, LambdaError> {
    let vty = type_of(value)?;
    if vty != var.ty {
        return Err(LambdaError::TypeMismatch {
            context: format!("substituting for {}", var.name),
            expected: var.ty.clone(),
            found: vty,
        });
    }
    Ok(subst(term, &var.name, value))
}

pub(crate) fn subst(term: &Term, name: &str, value: &Term) -> Term {
    let fv = value.free_vars();
    subst_with(term, name, value, &fv)
}

fn subst_with(term: &Term, name: &str, value: &Term, fv: &BTreeSet<String>) -> Term {
    match term {
        Term::Var(v) => {
            if v.name == name {
                value.clone()
            } else {
                term.clone()
            }
        }
        Term::Const(_) => term.clone(),
        Term::App(f, a) => Term::app(subst_with(f, name, value, fv), subst_with(a, name, value, fv)),
        Term::Not(a) => Term::not(subst_with(a, name, value, fv)),
        Term::Binary(op, a, b) => Term::Binary(
            *op,
            Box::new(subst_with(a, name, value, fv)),
            Box::new(subst_with(b, name, value, fv)),
        ),
        Term::Bind(binder, v, body) => {
            if v.name == name || !body.has_free(name) {
                return term.clone();
            }
            if fv.contains(&v.name) {
                let body_fv = body.free_vars();
                let fresh = fresh_name(&v.name, |n| fv.contains(n) || body_fv.contains(n) || n == name);
                let renamed = Var::new(fresh.clone(), v.ty.clone());
                let body = subst(body, &v.name, &Term::Var(renamed.clone()));
                Term::Bind(*binder, renamed, Box::new(subst_with(&body, name, value, fv)))
            } else {
                Term::Bind(*binder, v.clone(), Box::new(subst_with(body, name, value, fv)))
            }
        }
    }
}

/// β-normal form. The term must be well typed, which guarantees termination.
pub fn normalize(term: &Term) -> Term {
    nf(term.clone())
}

fn nf(term: Term) -> Term {
    match term {
        Term::App(f, a) => match nf(*f) {
            Term::Bind(Binder::Lam, v, body) => nf(subst(&body, &v.name, &a)),
            head => Term::app(head, nf(*a)),
        },
        Term::Bind(b, v, body) => Term::Bind(b, v, Box::new(nf(*body))),
        Term::Not(a) => Term::not(nf(*a)),
        Term::Binary(op, a, b) => Term::Binary(op, Box::new(nf(*a)), Box::new(nf(*b))),
        atom => atom,
    }
}

pub fn is_normal(term: &Term) -> bool {
    let mut normal = true;
    term.visit(&mut |t| {
        if let Term::App(f, _) = t {
            if matches!(f.as_ref(), Term::Bind(Binder::Lam, _, _)) {
                normal = false;
            }
        }
    });
    normal
}

/// Identity up to renaming of bound variables.
pub fn alpha_equal(a: &Term, b: &Term) -> bool {
    alpha(a, b, &mut Vec::new(), &mut Vec::new())
}

fn lookup(env: &[String], name: &str) -> Option<usize> {
    env.iter().rposition(|n| n == name)
}

fn alpha(a: &Term, b: &Term, ea: &mut Vec<String>, eb: &mut Vec<String>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            if x.ty != y.ty {
                return false;
            }
            match (lookup(ea, &x.name), lookup(eb, &y.name)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x.name == y.name,
                _ => false,
            }
        }
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::App(f1, a1), Term::App(f2, a2)) => alpha(f1, f2, ea, eb) && alpha(a1, a2, ea, eb),
        (Term::Not(x), Term::Not(y)) => alpha(x, y, ea, eb),
        (Term::Binary(o1, l1, r1), Term::Binary(o2, l2, r2)) => {
            o1 == o2 && alpha(l1, l2, ea, eb) && alpha(r1, r2, ea, eb)
        }
        (Term::Bind(b1, v1, t1), Term::Bind(b2, v2, t2)) => {
            if b1 != b2 || v1.ty != v2.ty {
                return false;
            }
            ea.push(v1.name.clone());
            eb.push(v2.name.clone());
            let r = alpha(t1, t2, ea, eb);
            ea.pop();
            eb.pop();
            r
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> SemType {
        SemType::Entity
    }

    fn rel() -> SemType {
        SemType::arrow(e(), SemType::pred())
    }

    fn f_xy(x: Term, y: Term) -> Term {
        Term::apply_all(Term::constant("F", rel()), [x, y])
    }

    #[test]
    fn fresh_name_keeps_primes_at_end() {
        let taken = ["x", "x1"];
        assert_eq!(fresh_name("x", |n| taken.contains(&n)), "x2");
        assert_eq!(fresh_name("d'", |n| n == "d'"), "d1'");
        assert_eq!(fresh_name("y", |_| false), "y");
    }

    #[test]
    fn type_of_lambda_over_relation() {
        let rich = Term::constant("rich'", SemType::degree_relation());
        let t = Term::lam(
            Var::new("x", e()),
            Term::apply_all(rich, [Term::var("x", e()), Term::var("d", SemType::Degree)]),
        );
        assert_eq!(type_of(&t).unwrap(), SemType::pred());
    }

    #[test]
    fn applying_an_entity_is_ill_typed() {
        let t = Term::app(Term::constant("g*", e()), Term::constant("b*", e()));
        match type_of(&t) {
            Err(LambdaError::IllTyped { location, .. }) => assert_eq!(location, "fun"),
            other => panic!("expected IllTyped, got {other:?}"),
        }
    }

    #[test]
    fn connective_operand_must_be_truth() {
        let t = Term::and(Term::constant("g*", e()), Term::constant("p", SemType::Truth));
        assert!(matches!(type_of(&t), Err(LambdaError::IllTyped { .. })));
        let g = Term::greater(Term::constant("g*", e()), Term::var("d", SemType::Degree));
        assert!(type_of(&g).is_err());
    }

    #[test]
    fn iota_binds_degrees_only() {
        let body = Term::constant("p", SemType::Truth);
        assert!(type_of(&Term::iota(Var::new("x", e()), body.clone())).is_err());
        assert_eq!(
            type_of(&Term::iota(Var::new("d", SemType::Degree), body)).unwrap(),
            SemType::Degree
        );
    }

    #[test]
    fn substitution_avoids_capture() {
        // (lam x . F x y)[y := x]  =>  lam x1 . F x1 x
        let t = Term::lam(Var::new("x", e()), f_xy(Term::var("x", e()), Term::var("y", e())));
        let out = substitute(&t, &Var::new("y", e()), &Term::var("x", e())).unwrap();
        let expected = Term::lam(Var::new("x1", e()), f_xy(Term::var("x1", e()), Term::var("x", e())));
        assert_eq!(out, expected);
    }

    #[test]
    fn substitution_rejects_type_mismatch() {
        let t = Term::var("y", e());
        let err = substitute(&t, &Var::new("y", e()), &Term::var("d", SemType::Degree));
        assert!(matches!(err, Err(LambdaError::TypeMismatch { .. })));
    }

    #[test]
    fn substitution_replaces_free_occurrences() {
        let own = Term::constant("own'", rel());
        let t = Term::apply_all(own.clone(), [Term::constant("b*", e()), Term::var("x", e())]);
        let out = substitute(&t, &Var::new("x", e()), &Term::var("y", e())).unwrap();
        assert_eq!(
            out,
            Term::apply_all(own, [Term::constant("b*", e()), Term::var("y", e())])
        );
    }

    #[test]
    fn beta_step() {
        let fx = Term::app(Term::constant("car'", SemType::pred()), Term::var("x", e()));
        let t = Term::app(Term::lam(Var::new("x", e()), fx), Term::constant("a*", e()));
        let nf = normalize(&t);
        assert_eq!(
            nf,
            Term::app(Term::constant("car'", SemType::pred()), Term::constant("a*", e()))
        );
        assert!(is_normal(&nf));
    }

    #[test]
    fn alpha_equality_respects_binding() {
        let a = Term::lam(
            Var::new("x", e()),
            Term::app(Term::constant("F1", SemType::pred()), Term::var("x", e())),
        );
        let b = Term::lam(
            Var::new("y", e()),
            Term::app(Term::constant("F1", SemType::pred()), Term::var("y", e())),
        );
        let c = Term::lam(
            Var::new("x", e()),
            Term::app(Term::constant("G1", SemType::pred()), Term::var("x", e())),
        );
        assert!(alpha_equal(&a, &b));
        assert!(!alpha_equal(&a, &c));
        // free vs bound
        let d = Term::lam(
            Var::new("y", e()),
            Term::app(Term::constant("F1", SemType::pred()), Term::var("x", e())),
        );
        assert!(!alpha_equal(&a, &d));
    }
}
