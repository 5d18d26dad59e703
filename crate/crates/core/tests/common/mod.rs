#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use comparatives::grammar::{parse, ConstructionTag, Lexicon};
use comparatives::lambda::{Binder, CardKind, SemType, Signature, Term, Var};
use comparatives::semantics::{compose, Reading, SemLexicon};
use comparatives::{Rational, RationalModel};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn fixture_model(name: &str) -> RationalModel {
    RationalModel::load(data_path(&format!("models/{name}.json"))).unwrap()
}

pub fn lexicon() -> &'static Lexicon {
    static L: OnceLock<Lexicon> = OnceLock::new();
    L.get_or_init(Lexicon::builtin)
}

pub fn sem() -> &'static SemLexicon {
    static S: OnceLock<SemLexicon> = OnceLock::new();
    S.get_or_init(SemLexicon::builtin)
}

pub fn term(src: &str) -> Term {
    sem().term(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn readings(sentence: &str, tag: ConstructionTag) -> Vec<Reading> {
    let trees = parse(sentence, lexicon()).unwrap();
    let tree = trees
        .iter()
        .find(|t| t.tag() == tag)
        .unwrap_or_else(|| panic!("no {tag} parse for {sentence}"));
    compose(tree, sem()).unwrap()
}

pub fn reading(sentence: &str, tag: ConstructionTag) -> Reading {
    let mut rs = readings(sentence, tag);
    assert_eq!(rs.len(), 1, "{sentence}");
    rs.remove(0)
}

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub const PERSONS: [&str; 5] = ["george", "bill", "richard", "p1", "p2"];
pub const GEORGE: usize = 0;
pub const BILL: usize = 1;

/// A random model over the fragment's vocabulary together with the raw
/// data it was built from, so tests can compute expected values directly.
#[derive(Clone, Debug)]
pub struct World {
    pub model: RationalModel,
    /// Per vehicle: owner (index into `PERSONS`), car-hood and speed.
    pub owner: Vec<Option<usize>>,
    pub is_car: Vec<bool>,
    pub speed: Vec<Option<i64>>,
    pub wealth: Vec<Option<i64>>,
}

impl World {
    pub fn vehicle(i: usize) -> String {
        format!("v{i}")
    }

    /// Speeds of measured cars owned by `person`.
    pub fn car_speeds(&self, person: usize) -> Vec<i64> {
        (0..self.owner.len())
            .filter(|&i| self.owner[i] == Some(person) && self.is_car[i])
            .filter_map(|i| self.speed[i])
            .collect()
    }
}

pub struct WorldSpec {
    pub max_vehicles: usize,
    /// Probability that a measure is left undefined.
    pub missing: f64,
    /// Require George and Bill to own at least one measured car each.
    pub both_own: bool,
}

impl Default for WorldSpec {
    fn default() -> Self {
        WorldSpec {
            max_vehicles: 7,
            missing: 0.1,
            both_own: false,
        }
    }
}

pub fn random_world(rng: &mut ChaCha8Rng, spec: &WorldSpec) -> World {
    loop {
        let w = try_world(rng, spec);
        if !spec.both_own || (!w.car_speeds(GEORGE).is_empty() && !w.car_speeds(BILL).is_empty()) {
            return w;
        }
    }
}

fn try_world(rng: &mut ChaCha8Rng, spec: &WorldSpec) -> World {
    let n = rng.gen_range(0..=spec.max_vehicles);
    let mut entities: Vec<String> = PERSONS.iter().map(|s| s.to_string()).collect();
    entities.extend((0..n).map(World::vehicle));
    entities.push("tower".into());
    let mut m = RationalModel::new(entities).unwrap();
    for s in ["car'", "BMW'", "policeman'", "professor'", "building'"] {
        m.declare_sort(s);
    }
    m.declare_relation("own'");
    m.declare_relation("has'");
    m.set_constant("g*", "george").unwrap();
    m.set_constant("b*", "bill").unwrap();
    m.set_constant("r*", "richard").unwrap();
    m.set_constant("et*", "tower").unwrap();
    m.add_to_sort("building'", "tower").unwrap();
    m.set_measure("height", "tower", r(rng.gen_range(1..=8))).unwrap();
    for p in ["p1", "p2"] {
        if rng.gen_bool(0.7) {
            m.add_to_sort("policeman'", p).unwrap();
        }
    }
    for p in ["richard", "p1", "p2"] {
        if rng.gen_bool(0.5) {
            m.add_to_sort("professor'", p).unwrap();
        }
    }
    let mut wealth = Vec::new();
    for p in PERSONS {
        let v = (!rng.gen_bool(spec.missing)).then(|| rng.gen_range(1..=8));
        if let Some(v) = v {
            m.set_measure("wealth", p, r(v)).unwrap();
        }
        wealth.push(v);
    }
    let (mut owner, mut is_car, mut speed) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        let name = World::vehicle(i);
        let o = match rng.gen_range(0..10) {
            0..=3 => Some(GEORGE),
            4..=6 => Some(BILL),
            7 => Some(rng.gen_range(2..PERSONS.len())),
            _ => None,
        };
        if let Some(o) = o {
            m.add_relation("own'", PERSONS[o], &name).unwrap();
            m.add_relation("has'", PERSONS[o], &name).unwrap();
        }
        let car = rng.gen_bool(0.9);
        if car {
            m.add_to_sort("car'", &name).unwrap();
        }
        let s = (!rng.gen_bool(spec.missing)).then(|| rng.gen_range(1..=8));
        if let Some(s) = s {
            m.set_measure("speed", &name, r(s)).unwrap();
        }
        owner.push(o);
        is_car.push(car);
        speed.push(s);
    }
    let bmw = if n > 0 {
        World::vehicle(rng.gen_range(0..n))
    } else {
        "tower".into()
    };
    m.set_constant("bmw*", &bmw).unwrap();
    m.add_to_sort("BMW'", &bmw).unwrap();
    World {
        model: m,
        owner,
        is_car,
        speed,
        wealth,
    }
}

/// Random sentences of the attributive comparative shape that get a
/// reconstruction analysis: `Subj V Det A N than Complement`.
pub fn random_wra_sentence(rng: &mut ChaCha8Rng) -> (String, &'static str) {
    let subjects = [("George", "g*"), ("Bill", "b*"), ("Richard", "r*")];
    let (subject, constant) = *subjects.choose(rng).unwrap();
    let verb = *["owns", "has"].choose(rng).unwrap();
    let (det, noun) = *[
        ("a", "car"),
        ("a", "BMW"),
        ("at least two", "cars"),
        ("at least two", "BMWs"),
    ]
    .choose(rng)
    .unwrap();
    let complement = *[
        "Bill",
        "George",
        "Richard",
        "any policeman",
        "every policeman",
        "every professor",
        "Bill or Richard",
        "a policeman",
        "the professor",
    ]
    .choose(rng)
    .unwrap();
    (
        format!("{subject} {verb} {det} faster {noun} than {complement}"),
        constant,
    )
}

/// Random well-typed terms over a small signature, for property tests of
/// the lambda kernel.
pub struct TermGen {
    pub rng: ChaCha8Rng,
    pub sig: Signature,
    consts: Vec<(String, SemType)>,
}

pub fn ty(src: &str) -> SemType {
    comparatives::lambda::parse_type(src).unwrap()
}

const BOUND: [&str; 3] = ["x", "y", "z"];

impl TermGen {
    pub fn new(rng: ChaCha8Rng) -> Self {
        let consts: Vec<(String, SemType)> = [
            ("j*", "e"),
            ("N0", "d"),
            ("T0", "t"),
            ("car'", "<e,t>"),
            ("own'", "<e,<e,t>>"),
            ("fast'", "<<e,t>,<e,<d,t>>>"),
            ("R0", "<e,<d,t>>"),
            ("G0", "<<e,t>,t>"),
            ("C0", "<<d,t>,t>"),
        ]
        .into_iter()
        .map(|(n, t)| (n.to_string(), ty(t)))
        .collect();
        let mut sig = Signature::new();
        for (n, t) in &consts {
            sig.insert(n, t.clone());
        }
        TermGen { rng, sig, consts }
    }

    /// Free variables a term may mention: fixed names per type, so that
    /// one name never carries two types.
    pub fn free_pool() -> Vec<Var> {
        vec![
            Var::new("u", SemType::Entity),
            Var::new("v", SemType::Degree),
            Var::new("w", SemType::Truth),
            Var::new("f", SemType::pred()),
        ]
    }

    pub fn term(&mut self, ty: &SemType, depth: u32) -> Term {
        let mut env = Self::free_pool();
        self.gen(ty, &mut env, depth)
    }

    /// A term of type `ty` whose free variables are drawn from `env`.
    pub fn term_in(&mut self, ty: &SemType, env: &[Var], depth: u32) -> Term {
        let mut env = env.to_vec();
        self.gen(ty, &mut env, depth)
    }

    fn visible<'a>(env: &'a [Var], ty: &SemType) -> Vec<&'a Var> {
        env.iter()
            .enumerate()
            .filter(|(i, v)| &v.ty == ty && !env[i + 1..].iter().any(|w| w.name == v.name))
            .map(|(_, v)| v)
            .collect()
    }

    fn leaf(&mut self, ty: &SemType, env: &mut Vec<Var>) -> Term {
        let vars = Self::visible(env, ty);
        let consts: Vec<&(String, SemType)> = self.consts.iter().filter(|(_, t)| t == ty).collect();
        let pick_var = !vars.is_empty() && (consts.is_empty() || self.rng.gen_bool(0.6));
        if pick_var {
            let v = vars[self.rng.gen_range(0..vars.len())].clone();
            return Term::Var(v);
        }
        if !consts.is_empty() {
            let (n, t) = consts[self.rng.gen_range(0..consts.len())].clone();
            return Term::constant(n, t);
        }
        let (a, b) = ty.as_arrow().expect("base types always have a constant");
        let (a, b) = (a.clone(), b.clone());
        self.lambda(&a, &b, env, 0)
    }

    fn lambda(&mut self, a: &SemType, b: &SemType, env: &mut Vec<Var>, depth: u32) -> Term {
        let v = Var::new(BOUND[self.rng.gen_range(0..BOUND.len())], a.clone());
        env.push(v.clone());
        let body = self.gen(b, env, depth);
        env.pop();
        Term::lam(v, body)
    }

    fn binder(&mut self, binder: Binder, var_ty: SemType, env: &mut Vec<Var>, depth: u32) -> Term {
        let v = Var::new(BOUND[self.rng.gen_range(0..BOUND.len())], var_ty);
        env.push(v.clone());
        let body = self.gen(&SemType::Truth, env, depth);
        env.pop();
        Term::Bind(binder, v, Box::new(body))
    }

    fn gen(&mut self, ty: &SemType, env: &mut Vec<Var>, depth: u32) -> Term {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.leaf(ty, env);
        }
        let d = depth - 1;
        // Application, possibly of a lambda, which creates redexes.
        if self.rng.gen_bool(0.35) {
            let args = ["e", "d", "t", "<e,t>", "<d,t>"];
            let a = self::ty(args[self.rng.gen_range(0..args.len())]);
            let f_ty = SemType::arrow(a.clone(), ty.clone());
            let f = if self.rng.gen_bool(0.5) {
                self.lambda(&a, ty, env, d)
            } else {
                self.gen(&f_ty, env, d)
            };
            let arg = self.gen(&a, env, d);
            return Term::app(f, arg);
        }
        match ty {
            SemType::Arrow(a, b) => self.lambda(a, b, env, d),
            SemType::Truth => match self.rng.gen_range(0..8) {
                0 => Term::and(self.gen(ty, env, d), self.gen(ty, env, d)),
                1 => Term::or(self.gen(ty, env, d), self.gen(ty, env, d)),
                2 => Term::implies(self.gen(ty, env, d), self.gen(ty, env, d)),
                3 => Term::not(self.gen(ty, env, d)),
                4 => Term::greater(self.gen(&SemType::Degree, env, d), self.gen(&SemType::Degree, env, d)),
                5 => {
                    let b = if self.rng.gen_bool(0.5) {
                        Binder::Forall
                    } else {
                        Binder::Exists
                    };
                    let vt = if self.rng.gen_bool(0.5) {
                        SemType::Entity
                    } else {
                        SemType::Degree
                    };
                    self.binder(b, vt, env, d)
                }
                6 => {
                    let kind = if self.rng.gen_bool(0.5) {
                        CardKind::AtLeast
                    } else {
                        CardKind::AtMost
                    };
                    let n = self.rng.gen_range(1..=3);
                    self.binder(Binder::Card(kind, n), SemType::Entity, env, d)
                }
                _ => self.leaf(ty, env),
            },
            SemType::Degree => self.binder(Binder::Iota, SemType::Degree, env, d),
            SemType::Entity => self.leaf(ty, env),
        }
    }
}
