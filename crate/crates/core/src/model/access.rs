use std::fmt;

use crate::lambda::{pretty, BinOp, Binder, CardKind, SemType, Term};
use crate::semantics::Reading;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Referent {
    pub variable: String,
    /// `∃` or `∃≥n`.
    pub quantifier: String,
    /// Conjuncts of the quantifier's scope that mention the referent.
    pub restriction: Vec<String>,
    /// Operators the referent is embedded under, outermost first; empty at top level.
    pub position: Vec<String>,
}

impl fmt::Display for Referent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{} : {}",
            self.quantifier,
            self.variable,
            self.restriction.join(" ∧ ")
        )?;
        if self.position.is_empty() {
            f.write_str(" [top level]")
        } else {
            write!(f, " [{}]", self.position.join(", "))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AccessibilityReport {
    pub accessible: Vec<Referent>,
    pub inaccessible: Vec<Referent>,
}

impl fmt::Display for AccessibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.accessible {
            writeln!(f, "accessible   {r}")?;
        }
        for r in &self.inaccessible {
            writeln!(f, "inaccessible {r}")?;
        }
        Ok(())
    }
}

/// Conjuncts below a chain of existential binders.
fn conjuncts<'a>(term: &'a Term, out: &mut Vec<&'a Term>) {
    match term {
        Term::Binary(BinOp::And, a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        Term::Bind(Binder::Exists | Binder::Card(CardKind::AtLeast, _), _, body) => conjuncts(body, out),
        other => out.push(other),
    }
}

fn restriction(var: &str, body: &Term) -> Vec<String> {
    let mut cs = Vec::new();
    conjuncts(body, &mut cs);
    cs.into_iter().filter(|c| c.has_free(var)).map(pretty).collect()
}

fn walk(term: &Term, context: &mut Vec<String>, report: &mut AccessibilityReport) {
    match term {
        Term::Bind(binder, v, body) => {
            let introduces =
                v.ty == SemType::Entity && matches!(binder, Binder::Exists | Binder::Card(CardKind::AtLeast, _));
            if introduces {
                let quantifier = match binder {
                    Binder::Card(_, n) => format!("∃≥{n}"),
                    _ => "∃".to_string(),
                };
                let referent = Referent {
                    variable: v.name.clone(),
                    quantifier,
                    restriction: restriction(&v.name, body),
                    position: context.clone(),
                };
                if context.is_empty() {
                    report.accessible.push(referent);
                } else {
                    report.inaccessible.push(referent);
                }
            }
            let blocking = match binder {
                Binder::Exists | Binder::Card(CardKind::AtLeast, _) => None,
                Binder::Forall => Some(format!("scope of ∀{}", v.name)),
                Binder::Card(CardKind::AtMost, n) => Some(format!("scope of ∃≤{n}{}", v.name)),
                Binder::Iota => Some(format!("scope of ι{}", v.name)),
                Binder::Lam => Some(format!("scope of λ{}", v.name)),
            };
            with_context(blocking, context, |c| walk(body, c, report));
        }
        Term::Binary(op, a, b) => match op {
            BinOp::And => {
                walk(a, context, report);
                walk(b, context, report);
            }
            BinOp::Implies => {
                with_context(Some("antecedent of →".into()), context, |c| walk(a, c, report));
                with_context(Some("consequent of →".into()), context, |c| walk(b, c, report));
            }
            BinOp::Or => {
                with_context(Some("disjunct".into()), context, |c| walk(a, c, report));
                with_context(Some("disjunct".into()), context, |c| walk(b, c, report));
            }
            BinOp::Greater => {}
        },
        Term::Not(a) => with_context(Some("scope of ¬".into()), context, |c| walk(a, c, report)),
        Term::App(f, a) => {
            walk(f, context, report);
            with_context(Some("argument position".into()), context, |c| walk(a, c, report));
        }
        Term::Var(_) | Term::Const(_) => {}
    }
}

fn with_context(label: Option<String>, context: &mut Vec<String>, f: impl FnOnce(&mut Vec<String>)) {
    match label {
        Some(l) => {
            context.push(l);
            f(context);
            context.pop();
        }
        None => f(context),
    }
}

/// Entity referents introduced by existential (or at-least) quantifiers,
/// split into those reachable from outside the sentence, which are not
/// embedded under a universal, conditional, disjunction, negation or
/// non-existential operator, and the rest.
pub fn accessibility(reading: &Reading) -> AccessibilityReport {
    accessibility_of(&reading.form)
}

pub(crate) fn accessibility_of(form: &Term) -> AccessibilityReport {
    let mut report = AccessibilityReport::default();
    walk(form, &mut Vec::new(), &mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::SemLexicon;

    #[test]
    fn asymmetry_on_the_standard_form() {
        let form = SemLexicon::builtin()
            .term(
                "exists x:e . exists d':d . (forall d:d . (exists y:e . fast' car' y d & own' b* y) -> d' > d) \
                 & fast' car' x d' & own' g* x",
            )
            .unwrap();
        let r = accessibility_of(&form);
        assert_eq!(r.accessible.len(), 1);
        assert_eq!(r.accessible[0].variable, "x");
        assert_eq!(r.accessible[0].restriction, ["fast'(car')(x,d')", "own'(g*,x)"]);
        assert_eq!(r.inaccessible.len(), 1);
        assert_eq!(r.inaccessible[0].variable, "y");
        assert_eq!(r.inaccessible[0].position, ["scope of ∀d", "antecedent of →"]);
    }
}
