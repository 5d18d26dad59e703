//! Human-oriented notation: `∃x∃d'[∀d[… → d' > d] ∧ fast'(car')(x,d')]`.
//! Output only; the canonical form in [`super::syntax`] is the one to read back.

use super::term::{BinOp, Binder, CardKind, Term};
use super::types::SemType;

pub fn pretty(term: &Term) -> String {
    let mut out = String::new();
    write_term(term, &mut out);
    out
}

fn is_atomic(t: &Term) -> bool {
    matches!(t, Term::Var(_) | Term::Const(_) | Term::App(_, _))
}

fn binder_prefix(b: Binder) -> String {
    match b {
        Binder::Lam => "λ".into(),
        Binder::Forall => "∀".into(),
        Binder::Exists => "∃".into(),
        Binder::Iota => "ι".into(),
        Binder::Card(CardKind::AtLeast, n) => format!("∃≥{n}"),
        Binder::Card(CardKind::AtMost, n) => format!("∃≤{n}"),
    }
}

fn op_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::And => "∧",
        BinOp::Or => "∨",
        BinOp::Implies => "→",
        BinOp::Greater => ">",
    }
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(&v.name),
        Term::Const(c) => out.push_str(&c.name),
        Term::App(_, _) => write_app(t, out),
        Term::Bind(b, v, body) => {
            out.push_str(&binder_prefix(*b));
            out.push_str(&v.name);
            match body.as_ref() {
                Term::Bind(..) => write_term(body, out),
                b if is_atomic(b) => {
                    out.push(' ');
                    write_term(b, out);
                }
                b => {
                    out.push('[');
                    write_term(b, out);
                    out.push(']');
                }
            }
        }
        Term::Not(a) => {
            out.push('¬');
            write_operand(a, None, out);
        }
        Term::Binary(op, l, r) => {
            // left-nested chains of the same connective print flat
            if *op == BinOp::And || *op == BinOp::Or {
                if let Term::Binary(lop, _, _) = l.as_ref() {
                    if lop == op {
                        write_term(l, out);
                    } else {
                        write_operand(l, Some(*op), out);
                    }
                } else {
                    write_operand(l, Some(*op), out);
                }
            } else {
                write_operand(l, Some(*op), out);
            }
            out.push(' ');
            out.push_str(op_symbol(*op));
            out.push(' ');
            write_operand(r, Some(*op), out);
        }
    }
}

fn write_operand(t: &Term, parent: Option<BinOp>, out: &mut String) {
    let wrap = match t {
        Term::Binary(BinOp::Greater, _, _) => parent.is_none(),
        Term::Binary(_, _, _) => true,
        _ => false,
    };
    if wrap {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

fn write_app(t: &Term, out: &mut String) {
    let (head, args) = t.spine();
    match head {
        Term::Var(_) | Term::Const(_) => write_term(head, out),
        _ => {
            out.push('[');
            write_term(head, out);
            out.push(']');
        }
    }
    // A leading predicate-typed argument (the nominal of an attributive
    // adjective) gets its own parenthesis group.
    let split = match (args.first(), head_type_first_arg(head)) {
        (Some(_), Some(SemType::Arrow(_, _))) if args.len() > 1 => 1,
        _ => 0,
    };
    if split == 1 {
        out.push('(');
        write_term(args[0], out);
        out.push(')');
    }
    let rest = &args[split..];
    if !rest.is_empty() {
        out.push('(');
        for (i, a) in rest.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_term(a, out);
        }
        out.push(')');
    }
}

fn head_type_first_arg(head: &Term) -> Option<SemType> {
    let ty = match head {
        Term::Var(v) => &v.ty,
        Term::Const(c) => &c.ty,
        _ => return None,
    };
    ty.as_arrow().map(|(a, _)| a.clone())
}
