mod common;

use common::{ty, TermGen};
use comparatives::lambda::{
    alpha_equal, apply_fa, apply_fc, apply_gfa, extend_existential_scope, is_normal, normalize, parse_term, print_term,
    substitute, type_of, SemType, Term, Var,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gen(seed: u64) -> TermGen {
    TermGen::new(ChaCha8Rng::seed_from_u64(seed))
}

const TYPES: [&str; 6] = ["t", "e", "d", "<e,t>", "<d,t>", "<<d,t>,t>"];

fn random_term(seed: u64, depth: u32) -> (Term, SemType) {
    let mut g = gen(seed);
    let t = ty(TYPES[(seed % TYPES.len() as u64) as usize]);
    (g.term(&t, depth), t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_terms_are_well_typed(seed in any::<u64>()) {
        let (t, expected) = random_term(seed, 5);
        prop_assert_eq!(type_of(&t).unwrap(), expected);
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let (t, _) = random_term(seed, 5);
        let n = normalize(&t);
        prop_assert!(is_normal(&n), "{}", print_term(&n));
        prop_assert_eq!(normalize(&n), n);
    }

    #[test]
    fn subject_reduction(seed in any::<u64>()) {
        let (t, _) = random_term(seed, 5);
        prop_assert_eq!(type_of(&normalize(&t)).unwrap(), type_of(&t).unwrap());
    }

    #[test]
    fn normalization_respects_alpha_equivalence(seed in any::<u64>()) {
        // Renaming every bound variable apart leaves the normal form
        // unchanged up to renaming.
        let (t, _) = random_term(seed, 5);
        let renamed = rename_bound(&t, &mut 0);
        prop_assert!(alpha_equal(&t, &renamed));
        prop_assert!(alpha_equal(&normalize(&t), &normalize(&renamed)));
    }

    #[test]
    fn substitution_free_variables(seed in any::<u64>()) {
        let mut g = gen(seed);
        let t = g.term(&SemType::Truth, 5);
        // The substituted value mentions the names used by binders, so
        // capture has to be avoided.
        let outer = [Var::new("x", SemType::Entity), Var::new("y", SemType::Entity), Var::new("z", SemType::Entity)];
        let value = g.term_in(&SemType::Entity, &outer, 3);
        let u = Var::new("u", SemType::Entity);
        let out = substitute(&t, &u, &value).unwrap();
        let mut allowed = t.free_vars();
        allowed.remove("u");
        if t.has_free("u") {
            allowed.extend(value.free_vars());
        }
        prop_assert!(out.free_vars().is_subset(&allowed), "{} ⊄ {:?}", print_term(&out), allowed);
        if t.has_free("u") {
            for v in value.free_vars() {
                prop_assert!(out.has_free(&v));
            }
        } else {
            prop_assert_eq!(&out, &t);
        }
        prop_assert_eq!(type_of(&out).unwrap(), SemType::Truth);
    }

    #[test]
    fn beta_redex_agrees_with_substitution(seed in any::<u64>()) {
        let mut g = gen(seed);
        let body = g.term(&SemType::Truth, 4);
        let outer = [Var::new("x", SemType::Entity), Var::new("z", SemType::Entity)];
        let value = g.term_in(&SemType::Entity, &outer, 2);
        let u = Var::new("u", SemType::Entity);
        let redex = Term::app(Term::lam(u.clone(), body.clone()), value.clone());
        let direct = normalize(&substitute(&body, &u, &value).unwrap());
        prop_assert!(alpha_equal(&normalize(&redex), &direct));
    }

    #[test]
    fn print_read_round_trip(seed in any::<u64>()) {
        let sig = gen(seed).sig;
        let (t, _) = random_term(seed, 5);
        let printed = print_term(&t);
        let back = parse_term(&printed, &sig).unwrap();
        prop_assert_eq!(&back, &t, "{}", printed);
    }

    #[test]
    fn scope_extension_preserves_type_and_closedness(seed in any::<u64>()) {
        let (t, _) = random_term(seed, 5);
        let n = normalize(&t);
        let ext = extend_existential_scope(&n);
        prop_assert_eq!(type_of(&ext).unwrap(), type_of(&n).unwrap());
        prop_assert_eq!(ext.free_vars(), n.free_vars());
        prop_assert_eq!(extend_existential_scope(&ext), ext.clone());
    }

    #[test]
    fn gfa_without_residue_is_application(seed in any::<u64>()) {
        let mut g = gen(seed);
        let arg_types = ["e", "<e,t>", "<d,t>", "<<d,t>,t>"];
        let a_ty = ty(arg_types[(seed % 4) as usize]);
        let f_ty = SemType::arrow(a_ty.clone(), SemType::Truth);
        let f = g.term(&f_ty, 4);
        let a = g.term(&a_ty, 4);
        // Only function-typed parameters admit GFA at all.
        if a_ty.as_arrow().is_some() {
            let gfa = apply_gfa(&f, &a).unwrap();
            prop_assert!(alpha_equal(&gfa, &normalize(&Term::app(f.clone(), a.clone()))));
            prop_assert!(alpha_equal(&gfa, &apply_fa(&f, &a).unwrap()));
        } else {
            prop_assert!(apply_gfa(&f, &a).is_err());
        }
    }
}

fn rename_bound(t: &Term, counter: &mut usize) -> Term {
    match t {
        Term::Bind(b, v, body) => {
            *counter += 1;
            let fresh = Var::new(format!("r{counter}"), v.ty.clone());
            let body = substitute(body, v, &Term::Var(fresh.clone())).unwrap();
            Term::Bind(*b, fresh, Box::new(rename_bound(&body, counter)))
        }
        Term::App(f, a) => Term::app(rename_bound(f, counter), rename_bound(a, counter)),
        Term::Not(a) => Term::not(rename_bound(a, counter)),
        Term::Binary(op, a, b) => Term::Binary(
            *op,
            Box::new(rename_bound(a, counter)),
            Box::new(rename_bound(b, counter)),
        ),
        Term::Var(_) | Term::Const(_) => t.clone(),
    }
}

#[test]
fn gfa_and_fc_differ_on_a_two_place_relation() {
    let mut g = gen(0);
    g.sig.insert("F", ty("<e,<e,t>>"));
    g.sig.insert("b*", ty("e"));
    let read = |s: &str| parse_term(s, &g.sig).unwrap();
    let lifted = read("lam P:<e,t> . P b*");
    let relation = read("lam y:e . lam x:e . F x y");
    let gfa = apply_gfa(&lifted, &relation).unwrap();
    assert!(alpha_equal(&gfa, &read("lam x':e . F x' b*")), "{}", print_term(&gfa));
    let fc = apply_fc(&lifted, &relation).unwrap();
    assert!(alpha_equal(&fc, &read("lam y:e . F b* y")), "{}", print_term(&fc));
}

#[test]
fn capture_is_avoided() {
    let sig = gen(0).sig;
    let t = parse_term("lam x:e . own' u:e x", &sig).unwrap();
    let u = Var::new("u", SemType::Entity);
    let out = substitute(&t, &u, &Term::var("x", SemType::Entity)).unwrap();
    assert!(out.has_free("x"));
    assert!(alpha_equal(&out, &parse_term("lam z:e . own' x:e z", &sig).unwrap()));
}

#[test]
fn ill_typed_input_is_rejected() {
    let sig = gen(0).sig;
    assert!(parse_term("car' N0", &sig).is_err());
    assert!(parse_term("lam x:e . x & T0", &sig).is_err());
    assert!(parse_term("exists x:e . j*", &sig).is_err());
}
