//! Command-line front end. Argument parsing lives here so that `run` can be
//! exercised from tests; the binary only prints the outcome.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grammar::{parse, ConstructionTag, GrammarError, Label, Lexicon, SurfaceTree};
use crate::heim::{build_heim, eval_heim};
use crate::lambda::{pretty, print_term};
use crate::lf::{build_lf, judge, judge_sentence, Verdict};
use crate::model::{accessibility, Model};
use crate::numeric::Degree;
use crate::semantics::{compose, Reading, SemLexicon};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_PARSE: i32 = 1;
pub const EXIT_EVAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "comparatives",
    version,
    about = "Parse, interpret and evaluate English phrasal comparatives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Print transformation snapshots and composition traces.
    #[arg(long, global = true)]
    pub derivation: bool,
    /// Compose parses judged bad as well.
    #[arg(long, global = true)]
    pub force: bool,
    /// Read sentences from a corpus file (`id<TAB>sentence<TAB>verdict`).
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    /// Degree arithmetic used for evaluation.
    #[arg(long, global = true, value_enum, default_value_t = Degrees::Exact)]
    pub degrees: Degrees,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Machine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Degrees {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Show the surface parses.
    Parse { sentence: Vec<String> },
    /// Show logical forms and readings.
    Lf { sentence: Vec<String> },
    /// Evaluate every reading in a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        sentence: Vec<String>,
    },
    /// Acceptability judgment.
    Judge { sentence: Vec<String> },
    /// Compare with a baseline analysis.
    Baseline {
        #[command(subcommand)]
        which: BaselineCommand,
    },
    /// Anaphoric accessibility of the referents of each reading.
    Access { sentence: Vec<String> },
}

#[derive(Subcommand, Debug)]
pub enum BaselineCommand {
    /// The direct er_than analysis.
    Heim {
        #[arg(long)]
        model: PathBuf,
        sentence: Vec<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Parse,
    Lf,
    Eval,
    Judge,
    Heim,
    Access,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Sentences with optional corpus id and expected verdict.
    pub sentences: Vec<Item>,
    pub action: Action,
    pub model: Option<PathBuf>,
    pub derivation: bool,
    pub force: bool,
    pub format: Format,
    pub degrees: Degrees,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub id: Option<String>,
    pub sentence: String,
    pub expected: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

/// Reads a corpus file: `id<TAB>sentence<TAB>verdict`, `#` comments.
pub fn read_corpus(path: &Path) -> Result<Vec<Item>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read corpus {}: {e}", path.display()))?;
    let mut items = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let (id, sentence, expected) = match cols.as_slice() {
            [id, s] => (id, s, None),
            [id, s, v] if v.is_empty() || *v == "-" => (id, s, None),
            [id, s, v] => (
                id,
                s,
                Some(
                    v.parse::<Verdict>()
                        .map_err(|e| format!("corpus line {}: {e}", n + 1))?,
                ),
            ),
            _ => return Err(format!("corpus line {}: expected 2 or 3 tab-separated columns", n + 1)),
        };
        items.push(Item {
            id: Some(id.to_string()),
            sentence: sentence.to_string(),
            expected,
        });
    }
    Ok(items)
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, String> {
        let (action, model, words) = match self.command {
            Command::Parse { sentence } => (Action::Parse, None, sentence),
            Command::Lf { sentence } => (Action::Lf, None, sentence),
            Command::Eval { model, sentence } => (Action::Eval, Some(model), sentence),
            Command::Judge { sentence } => (Action::Judge, None, sentence),
            Command::Baseline {
                which: BaselineCommand::Heim { model, sentence },
            } => (Action::Heim, Some(model), sentence),
            Command::Access { sentence } => (Action::Access, None, sentence),
        };
        let sentences = match (&self.common.corpus, words.is_empty()) {
            (Some(path), true) => read_corpus(path)?,
            (Some(_), false) => return Err("give either a sentence or --corpus, not both".into()),
            (None, true) => return Err("no sentence given".into()),
            (None, false) => vec![Item {
                id: None,
                sentence: words.join(" "),
                expected: None,
            }],
        };
        Ok(RunConfig {
            sentences,
            action,
            model,
            derivation: self.common.derivation,
            force: self.common.force,
            format: self.common.format,
            degrees: self.common.degrees,
        })
    }
}

/// Runs a configuration and collects its report and exit status.
pub fn run(config: &RunConfig) -> Outcome {
    match config.degrees {
        Degrees::Exact => run_with::<crate::Rational>(config),
        Degrees::Float => run_with::<f64>(config),
    }
}

struct Ctx<'a, S: Degree> {
    config: &'a RunConfig,
    lexicon: Lexicon,
    semantics: SemLexicon,
    model: Option<Model<S>>,
    out: String,
    status: i32,
}

fn run_with<S: Degree>(config: &RunConfig) -> Outcome {
    let model = match &config.model {
        Some(path) => match Model::<S>::load(path) {
            Ok(m) => Some(m),
            Err(e) => {
                return Outcome {
                    status: EXIT_EVAL,
                    output: format!("error: {e}\n"),
                }
            }
        },
        None => None,
    };
    let mut ctx = Ctx {
        config,
        lexicon: Lexicon::builtin(),
        semantics: SemLexicon::builtin(),
        model,
        out: String::new(),
        status: EXIT_OK,
    };
    let mut matches = 0;
    let mut expected = 0;
    for item in &config.sentences {
        let verdict = ctx.sentence(item);
        if let Some(exp) = item.expected {
            expected += 1;
            if verdict == Some(exp) {
                matches += 1;
            }
        }
    }
    if config.action == Action::Judge && expected > 0 {
        ctx.line(
            &format!("agreement: {matches}/{expected}"),
            &["agreement", &matches.to_string(), &expected.to_string()],
        );
    }
    Outcome {
        status: ctx.status,
        output: ctx.out,
    }
}

impl<S: Degree> Ctx<'_, S> {
    fn machine(&self) -> bool {
        self.config.format == Format::Machine
    }

    fn line(&mut self, plain: &str, machine: &[&str]) {
        if self.machine() {
            let _ = writeln!(self.out, "{}", machine.join("\t"));
        } else {
            let _ = writeln!(self.out, "{plain}");
        }
    }

    fn fail(&mut self, status: i32) {
        self.status = self.status.max(status);
    }

    /// Handles one sentence; returns the sentence-level verdict when it parses.
    fn sentence(&mut self, item: &Item) -> Option<Verdict> {
        let label = match &item.id {
            Some(id) => format!("{id}: {}", item.sentence),
            None => item.sentence.clone(),
        };
        self.line(
            &format!("sentence: {label}"),
            &["sentence", item.id.as_deref().unwrap_or("-"), &item.sentence],
        );
        let trees = match parse(&item.sentence, &self.lexicon) {
            Ok(t) => t,
            Err(e) => {
                let kind = match e {
                    GrammarError::UnknownWord(_) => "unknown-word",
                    GrammarError::NotSupported(_) => "not-supported",
                    _ => "no-parse",
                };
                self.line(&format!("  error: {e}"), &["error", kind, &e.to_string()]);
                self.fail(EXIT_NO_PARSE);
                return None;
            }
        };
        let overall = judge_sentence(&trees).expect("at least one parse");
        if self.config.action == Action::Judge {
            let expected = item.expected.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let status = match item.expected {
                Some(v) if v == overall.verdict => " (as expected)",
                Some(_) => " (MISMATCH)",
                None => "",
            };
            self.line(
                &format!(
                    "  verdict: {}{status} [{}] {}",
                    overall.verdict, overall.rule, overall.explanation
                ),
                &["verdict", &overall.verdict.to_string(), overall.rule, &expected],
            );
        }
        for (k, tree) in trees.iter().enumerate() {
            self.parse_block(k + 1, tree);
        }
        Some(overall.verdict)
    }

    fn parse_block(&mut self, n: usize, tree: &SurfaceTree) {
        let tag = tree.tag();
        let id = n.to_string();
        self.line(
            &format!("parse {n} [{tag}] {}", tree.paper()),
            &["parse", &id, tag.as_str(), &tree.bracket()],
        );
        let j = judge(tree);
        self.line(
            &format!("  judgment: {} [{}] {}", j.verdict, j.rule, j.explanation),
            &["judgment", &id, &j.verdict.to_string(), j.rule],
        );
        if matches!(self.config.action, Action::Parse | Action::Judge) {
            return;
        }
        if self.config.derivation && tag == ConstructionTag::Wra {
            match build_lf(tree) {
                Ok(lf) => {
                    for (k, step) in lf.log.iter().enumerate() {
                        if k == 0 {
                            self.line(
                                &format!("  (0) {}", step.before),
                                &["lf", &id, "0", "input", &step.before],
                            );
                        }
                        let num = (k + 1).to_string();
                        self.line(
                            &format!("  ({num}) {} => {}", step.name, step.after),
                            &["lf", &id, &num, step.name, &step.after],
                        );
                    }
                }
                Err(e) => self.line(&format!("  lf error: {e}"), &["lf-error", &id, &e.to_string()]),
            }
        }
        if self.config.action == Action::Heim {
            self.heim(&id, tree);
        }
        if j.verdict == Verdict::Bad && !self.config.force {
            self.line(
                "  not composed: judged bad (use --force to compose anyway)",
                &["skipped", &id, "judged-bad"],
            );
            return;
        }
        let readings = match compose(tree, &self.semantics) {
            Ok(r) => r,
            Err(e) => {
                self.line(&format!("  no reading: {e}"), &["no-reading", &id, &e.to_string()]);
                return;
            }
        };
        for (k, r) in readings.iter().enumerate() {
            let rid = format!("{n}.{}", k + 1);
            self.reading(&rid, tree, r);
        }
    }

    fn reading(&mut self, rid: &str, tree: &SurfaceTree, r: &Reading) {
        let scope = r.scope.to_string();
        self.line(
            &format!("  reading {rid} [{scope}] {}", pretty(&r.form)),
            &["reading", rid, &scope, &print_term(&r.form)],
        );
        if self.config.derivation {
            if self.machine() {
                for step in &r.trace {
                    self.line("", &["trace", rid, step.node(), &print_term(step.result())]);
                }
            } else {
                let trace = r.render_trace();
                self.out
                    .push_str(&trace.lines().map(|l| format!("  {l}\n")).collect::<String>());
            }
        }
        match self.config.action {
            Action::Eval | Action::Heim => self.truth(rid, tree, r),
            Action::Access => {
                let report = accessibility(r);
                for (status, list) in [
                    ("accessible", &report.accessible),
                    ("inaccessible", &report.inaccessible),
                ] {
                    for referent in list {
                        self.line(
                            &format!("    {status:<12} {referent}"),
                            &[
                                "access",
                                rid,
                                status,
                                &referent.variable,
                                &referent.restriction.join(" & "),
                            ],
                        );
                    }
                }
            }
            _ => {}
        }
    }

    fn truth(&mut self, rid: &str, tree: &SurfaceTree, r: &Reading) {
        let Some(model) = &self.model else { return };
        let result = model.evaluate(&r.form);
        let note = missing_complement_measure(tree, r, model, &self.semantics);
        match result {
            Ok(v) => self.line(&format!("    truth: {v}"), &["truth", rid, &v.to_string()]),
            Err(e) => {
                self.line(
                    &format!("    evaluation error: {e}"),
                    &["truth", rid, "error", &e.to_string()],
                );
                self.fail(EXIT_EVAL);
            }
        }
        if let Some(note) = note {
            self.line(&format!("    note: {note}"), &["note", rid, &note]);
        }
    }

    fn heim(&mut self, id: &str, tree: &SurfaceTree) {
        let Some(model) = &self.model else { return };
        match build_heim(tree, &self.semantics) {
            Ok(form) => {
                let value = match eval_heim(&form, model) {
                    Ok(Some(v)) => v.to_string(),
                    Ok(None) => "undefined".to_string(),
                    Err(e) => {
                        self.fail(EXIT_EVAL);
                        format!("error: {e}")
                    }
                };
                self.line(
                    &format!("  heim: {form}\n    heim truth: {value}"),
                    &["heim", id, &print_term(&form.property), &value],
                );
            }
            Err(e) => self.line(&format!("  heim: {e}"), &["heim", id, "unsupported", &e.to_string()]),
        }
    }
}

/// A note when a referential small-clause complement has no measure on the
/// compared dimension, which makes its degree restriction empty.
fn missing_complement_measure<S: Degree>(
    tree: &SurfaceTree,
    r: &Reading,
    model: &Model<S>,
    lex: &SemLexicon,
) -> Option<String> {
    if !matches!(r.tag, ConstructionTag::Nra | ConstructionTag::Pred) {
        return None;
    }
    let antecedent = &r.p0.as_ref()?.antecedent;
    let (head, _) = antecedent.spine();
    let crate::lambda::Term::Const(adj) = head else {
        return None;
    };
    let dimension = model.dimension_of(&adj.name)?;
    let sc = tree.root.find(&|n| n.is(Label::SC))?;
    let np = sc.children().last()?;
    let word = np.children().first()?.as_word()?;
    let constant = lex.constant(&word.entry.key).ok()?;
    let crate::lambda::Term::Const(c) = constant else {
        return None;
    };
    let entity = model.constant(&c.name)?;
    if model.measure(dimension, entity).is_some() {
        return None;
    }
    Some(format!(
        "{} has no {dimension} measure, so the complement restricts no degree",
        c.name
    ))
}
