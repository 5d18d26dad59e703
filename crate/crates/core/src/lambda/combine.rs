//! Modes of semantic combination: functional application, generalized
//! functional application, functional composition and quantifying-in.

use std::collections::BTreeSet;

use super::term::{alpha_equal, fresh_name, normalize, subst, type_of, BinOp, Binder, Term, Var};
use super::types::SemType;
use super::LambdaError;

/// Conventional variable name for a type, used when a binder has to be invented.
pub fn default_var_name(ty: &SemType) -> &'static str {
    match ty {
        SemType::Entity => "x",
        SemType::Degree => "d",
        SemType::Truth => "p",
        SemType::Arrow(a, r) => match (a.as_ref(), r.as_ref()) {
            (SemType::Entity, SemType::Truth) => "Q",
            (SemType::Degree, SemType::Truth) => "D",
            (SemType::Arrow(_, _), SemType::Truth) => {
                if a.as_ref() == &SemType::degree_pred() {
                    "P"
                } else {
                    "G"
                }
            }
            _ => "f",
        },
    }
}

fn mismatch(context: &str, expected: SemType, found: SemType) -> LambdaError {
    LambdaError::TypeMismatch {
        context: context.to_string(),
        expected,
        found,
    }
}

/// Functional application: `normalize(f(a))`.
pub fn apply_fa(f: &Term, a: &Term) -> Result<Term, LambdaError> {
    let fty = type_of(f)?;
    let aty = type_of(a)?;
    match fty.as_arrow() {
        Some((p, _)) if *p == aty => Ok(normalize(&Term::app(f.clone(), a.clone()))),
        Some((p, _)) => Err(mismatch("functional application", p.clone(), aty)),
        None => Err(LambdaError::NotAFunction(fty)),
    }
}

/// Number of residual arguments `n` such that peeling the first argument of
/// `arg_ty` and then `n` more leaves `target`; the smallest such `n`.
fn residual_prefix<'a>(arg_ty: &'a SemType, first: &SemType, target: &SemType) -> Option<Vec<&'a SemType>> {
    let (p, mut rest) = arg_ty.as_arrow()?;
    if p != first {
        return None;
    }
    let mut prefix = Vec::new();
    loop {
        if rest == target {
            return Some(prefix);
        }
        let (s, r) = rest.as_arrow()?;
        prefix.push(s);
        rest = r;
    }
}

/// Generalized functional application `f • a = λs1…λsn f(λv a(v)(s1)…(sn))`,
/// where `n` is the smallest residual prefix that makes the types match.
/// With `n = 0` this is ordinary functional application.
pub fn apply_gfa(f: &Term, a: &Term) -> Result<Term, LambdaError> {
    let fty = type_of(f)?;
    let aty = type_of(a)?;
    let no_split = || LambdaError::NoGfaSplit {
        function: fty.clone(),
        argument: aty.clone(),
    };
    let (param, _) = fty.as_arrow().ok_or_else(no_split)?;
    let (alpha, beta) = param.as_arrow().ok_or_else(no_split)?;
    let prefix = residual_prefix(&aty, alpha, beta).ok_or_else(no_split)?;
    if prefix.is_empty() {
        return apply_fa(f, a);
    }

    // Reuse the argument's own binder names for the passed-up prefix.
    let a_nf = normalize(a);
    let mut hint_names: Vec<Option<String>> = Vec::new();
    let mut cur = &a_nf;
    let mut v_hint = None;
    if let Term::Bind(Binder::Lam, v, body) = cur {
        v_hint = Some(v.name.clone());
        cur = body;
        for _ in 0..prefix.len() {
            if let Term::Bind(Binder::Lam, s, body) = cur {
                hint_names.push(Some(s.name.clone()));
                cur = body;
            } else {
                hint_names.push(None);
            }
        }
    }
    hint_names.resize(prefix.len(), None);

    let mut avoid: BTreeSet<String> = f.free_vars();
    avoid.extend(a.free_vars());
    let mut sigma = Vec::with_capacity(prefix.len());
    for (ty, hint) in prefix.iter().zip(hint_names) {
        let base = hint.unwrap_or_else(|| default_var_name(ty).to_string());
        let name = fresh_name(&base, |n| avoid.contains(n));
        avoid.insert(name.clone());
        sigma.push(Var::new(name, (*ty).clone()));
    }
    let v_base = v_hint.unwrap_or_else(|| default_var_name(alpha).to_string());
    let v = Var::new(fresh_name(&v_base, |n| avoid.contains(n)), alpha.clone());

    let inner = Term::apply_all(
        Term::app(a.clone(), Term::Var(v.clone())),
        sigma.iter().map(|s| Term::Var(s.clone())),
    );
    let body = Term::app(f.clone(), Term::lam(v, inner));
    let wrapped = sigma.into_iter().rev().fold(body, |acc, s| Term::lam(s, acc));
    Ok(normalize(&wrapped))
}

/// Functional composition `λx f(g(x))`.
pub fn apply_fc(f: &Term, g: &Term) -> Result<Term, LambdaError> {
    let fty = type_of(f)?;
    let gty = type_of(g)?;
    let (fb, _) = fty.as_arrow().ok_or_else(|| LambdaError::NotAFunction(fty.clone()))?;
    let (ga, gb) = gty.as_arrow().ok_or_else(|| LambdaError::NotAFunction(gty.clone()))?;
    if fb != gb {
        return Err(mismatch("functional composition", fb.clone(), gb.clone()));
    }
    let mut avoid = f.free_vars();
    avoid.extend(g.free_vars());
    let x = Var::new(fresh_name(default_var_name(ga), |n| avoid.contains(n)), ga.clone());
    let t = Term::lam(x.clone(), Term::app(f.clone(), Term::app(g.clone(), Term::Var(x))));
    Ok(normalize(&t))
}

/// Montague-style quantifying-in: `normalize(quantifier(λtarget. scope))`.
pub fn quantify_in(quantifier: &Term, scope: &Term, target: &Var) -> Result<Term, LambdaError> {
    let qty = type_of(quantifier)?;
    let sty = type_of(scope)?;
    if !sty.is_truth() {
        return Err(mismatch("quantifying-in scope", SemType::Truth, sty));
    }
    if !scope.has_free(&target.name) {
        return Err(LambdaError::TargetNotFree(target.name.clone()));
    }
    let expected = SemType::arrow(SemType::arrow(target.ty.clone(), SemType::Truth), SemType::Truth);
    if qty != expected {
        return Err(mismatch("quantifying-in quantifier", expected, qty));
    }
    Ok(normalize(&Term::app(
        quantifier.clone(),
        Term::lam(target.clone(), scope.clone()),
    )))
}

/// Extends the scope of an existential over a following conjunct:
/// `(∃v A) ∧ B  ⇒  ∃v (A ∧ B)`, renaming `v` when it occurs free in `B`.
/// Only left conjuncts are affected; the result is logically equivalent.
pub fn extend_existential_scope(term: &Term) -> Term {
    match term {
        Term::Var(_) | Term::Const(_) => term.clone(),
        Term::App(f, a) => Term::app(extend_existential_scope(f), extend_existential_scope(a)),
        Term::Bind(b, v, body) => Term::Bind(*b, v.clone(), Box::new(extend_existential_scope(body))),
        Term::Not(a) => Term::not(extend_existential_scope(a)),
        Term::Binary(BinOp::And, l, r) => pull_left(extend_existential_scope(l), extend_existential_scope(r)),
        Term::Binary(op, l, r) => Term::Binary(
            *op,
            Box::new(extend_existential_scope(l)),
            Box::new(extend_existential_scope(r)),
        ),
    }
}

fn pull_left(left: Term, right: Term) -> Term {
    match left {
        Term::Bind(Binder::Exists, v, body) => {
            let (v, body) = if right.has_free(&v.name) {
                let mut avoid = right.free_vars();
                avoid.extend(body.free_vars());
                let fresh = Var::new(fresh_name(&v.name, |n| avoid.contains(n)), v.ty.clone());
                let body = subst(&body, &v.name, &Term::Var(fresh.clone()));
                (fresh, body)
            } else {
                (v, *body)
            };
            Term::exists(v, pull_left(body, right))
        }
        left => Term::and(left, right),
    }
}

/// True when two combination results agree up to renaming.
pub fn same_result(a: &Term, b: &Term) -> bool {
    alpha_equal(a, b)
}
