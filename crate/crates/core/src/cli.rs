//! The `diffrest` command line.
//!
//! Exit status: 0 when every verdict passes, 1 on a law or verification
//! failure, 2 on unreadable or malformed input, 3 when a search or scan is
//! inconclusive. Verdict lines start with `PASS`, `FAIL` or
//! `INCONCLUSIVE`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::laws::{check_axioms, check_derived_laws, AxiomReport};
use crate::algebra::quotient::domain_quotient;
use crate::algebra::{ElementSet, FiniteAlgebra};
use crate::error::Error;
use crate::filters::{brute_force_maximal_filters, enumerate_filters};
use crate::format::{parse_corpus, parse_document, write_algebra, write_concrete};
use crate::oracle::{
    brute_force_embedding, differential_check, enumerate_axiom_models, random_corpus, EmbeddingVerdict, SearchBudget,
};
use crate::pfun::{boolean_as_diffrest, FieldOfSets};
use crate::representations::{
    all_values_injective, atomic_eta, atomic_theta, canonical_theta, completeness_report_with, injective_eta,
    verify_representation, CompletenessOptions, CompletenessReport, Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// `key=value` fields, one record per line.
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Canonical representation over maximal filters.
    Theta,
    /// Injective variant over filter classes and maximal filters.
    Eta,
    /// Complete representation over atoms.
    AtomicTheta,
    /// Injective complete representation over atom classes and atoms.
    AtomicEta,
}

#[derive(Debug, Parser)]
#[command(name = "diffrest", version, about = "Finite difference-restriction algebras")]
#[command(
    after_help = "EXIT STATUS\n  0 all verdicts pass\n  1 a law or verification fails\n  2 input error\n  3 inconclusive search or scan"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Seed for random corpora and sampled scans.
    #[arg(long, env = "DIFFREST_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the five axioms Ax.1-Ax.5.
    Check { file: PathBuf },
    /// Check the axioms and the laws they imply.
    Laws { file: PathBuf },
    /// List the filters, flag the maximal ones, and show the ≈-classes.
    Filters { file: PathBuf },
    /// The quotient by domain equivalence.
    Quotient { file: PathBuf },
    /// Build a representation by partial functions and verify it.
    Represent {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Theta)]
        mode: Mode,
        /// Write the image as a concrete algebra file.
        #[arg(long, value_name = "PATH")]
        emit_concrete: Option<PathBuf>,
    },
    /// Meet, join and atom completeness of a representation.
    Complete {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Theta)]
        mode: Mode,
        /// Largest algebra scanned over every subset; larger ones are sampled.
        #[arg(long, default_value_t = 20)]
        exhaustive_cap: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
    /// Compare the axiom checker with the embedding search on a corpus.
    Diff {
        /// Concatenated algebra files; omit to use a random corpus.
        file: Option<PathBuf>,
        /// Size of the random corpus.
        #[arg(long, default_value_t = 200, conflicts_with = "file")]
        random: usize,
        #[arg(long, default_value_t = 4)]
        max_base: usize,
        #[arg(long, default_value_t = 20_000_000)]
        node_limit: u64,
    },
    /// The powerset of {1..k} as a difference-restriction algebra.
    InterpBoolean {
        #[arg(long, default_value_t = 2)]
        universe: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchTarget {
    /// All axiom models of a size, up to isomorphism.
    Models {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 20_000_000)]
        node_limit: u64,
        /// Write the models as a corpus file.
        #[arg(long, value_name = "PATH")]
        emit: Option<PathBuf>,
    },
    /// An embedding into partial functions on a small base.
    Embed {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_base: usize,
        #[arg(long, default_value_t = 20_000_000)]
        node_limit: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Input = 2,
    Inconclusive = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// Failures dominate inconclusive results.
    fn merge(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Token {
    Pass,
    Fail,
    Inconclusive,
}

impl Token {
    fn text(self) -> &'static str {
        match self {
            Token::Pass => "PASS",
            Token::Fail => "FAIL",
            Token::Inconclusive => "INCONCLUSIVE",
        }
    }

    fn of(ok: bool) -> Token {
        if ok {
            Token::Pass
        } else {
            Token::Fail
        }
    }
}

fn quote(v: &str) -> String {
    if v.is_empty() || v.contains(char::is_whitespace) || v.contains('"') {
        format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        v.to_string()
    }
}

/// Collects report lines in either output format.
struct Report {
    format: OutputFormat,
    out: String,
    status: Status,
}

impl Report {
    fn new(format: OutputFormat) -> Self {
        Report {
            format,
            out: String::new(),
            status: Status::Pass,
        }
    }

    /// A verdict: `TOKEN subject: text` or `TOKEN check=subject k=v ..`.
    fn verdict(&mut self, token: Token, subject: &str, text: &str, fields: &[(&str, String)]) {
        self.status = self.status.merge(match token {
            Token::Pass => Status::Pass,
            Token::Fail => Status::Fail,
            Token::Inconclusive => Status::Inconclusive,
        });
        let line = match self.format {
            OutputFormat::Text if text.is_empty() => format!("{} {subject}", token.text()),
            OutputFormat::Text => format!("{} {subject}: {text}", token.text()),
            OutputFormat::Structured => {
                let mut line = format!("{} check={}", token.text(), quote(subject));
                for (k, v) in fields {
                    line.push_str(&format!(" {k}={}", quote(v)));
                }
                line
            }
        };
        self.out.push_str(&line);
        self.out.push('\n');
    }

    /// A non-verdict record: free text, or `record k=v ..`.
    fn info(&mut self, record: &str, text: &str, fields: &[(&str, String)]) {
        match self.format {
            OutputFormat::Text => {
                self.out.push_str(text);
                self.out.push('\n');
            }
            OutputFormat::Structured => {
                self.out.push_str(record);
                for (k, v) in fields {
                    self.out.push_str(&format!(" {k}={}", quote(v)));
                }
                self.out.push('\n');
            }
        }
    }

    /// A record emitted only in structured mode.
    fn record(&mut self, record: &str, fields: &[(&str, String)]) {
        if self.format == OutputFormat::Structured {
            self.info(record, "", fields);
        }
    }

    /// Raw text, emitted only in text mode.
    fn text_block(&mut self, block: &str) {
        if self.format == OutputFormat::Text {
            self.out.push_str(block);
            if !block.ends_with('\n') {
                self.out.push('\n');
            }
        }
    }
}

fn set_text(alg: &FiniteAlgebra, s: ElementSet) -> String {
    let names: Vec<String> = s.iter().map(|a| alg.name(a)).collect();
    format!("{{{}}}", names.join(","))
}

fn law_lines(report: &mut Report, alg: &FiniteAlgebra, laws: &AxiomReport) {
    for r in &laws.results {
        let mut fields = vec![("statement", r.statement.to_string())];
        let text = match r.witness_text(alg) {
            None => r.statement.to_string(),
            Some(w) => {
                fields.extend(
                    r.vars
                        .iter()
                        .zip(w.split(' '))
                        .map(|(v, kv)| (*v, kv.split_once('=').map_or(kv, |p| p.1).to_string())),
                );
                format!("{} witness {w}", r.statement)
            }
        };
        report.verdict(Token::of(r.passed()), r.law, &text, &fields);
    }
}

/// Prints the axiom failures and returns false when the axioms fail.
fn axioms_hold(report: &mut Report, alg: &FiniteAlgebra) -> bool {
    let axioms = check_axioms(alg);
    if axioms.passed() {
        return true;
    }
    let failing = AxiomReport {
        results: axioms.failures().cloned().collect(),
    };
    law_lines(report, alg, &failing);
    false
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_algebra(path: &Path) -> Result<FiniteAlgebra> {
    let text = read(path)?;
    let doc = parse_document(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(doc.algebra)
}

fn build(mode: Mode, alg: &FiniteAlgebra) -> crate::Result<Representation> {
    match mode {
        Mode::Theta => canonical_theta(alg),
        Mode::Eta => injective_eta(alg),
        Mode::AtomicTheta => atomic_theta(alg),
        Mode::AtomicEta => atomic_eta(alg),
    }
}

fn representation_lines(report: &mut Report, rep: &Representation) {
    let alg = &rep.source;
    report.info(
        "representation",
        &format!("representation {} on base 1..{}", rep.kind, rep.states.len()),
        &[("kind", rep.kind.to_string()), ("base", rep.states.len().to_string())],
    );
    for i in 0..rep.states.len() {
        let label = rep.state_label(i);
        report.info(
            "state",
            &format!("state {} = {label}", i + 1),
            &[("point", (i + 1).to_string()), ("is", label)],
        );
    }
    for a in alg.elements() {
        let g = rep.value(a).to_string();
        report.info(
            "value",
            &format!("value {} = {g}", alg.name(a)),
            &[("element", alg.name(a)), ("graph", g)],
        );
    }
}

fn verification_lines(report: &mut Report, rep: &Representation) -> bool {
    let v = verify_representation(rep);
    let name = |a| rep.source.name(a);
    use crate::representations::VerificationFailure as F;
    let checks: [(&str, &str, fn(&F) -> bool); 5] = [
        ("functional", "every value is a partial function", |f| {
            matches!(f, F::NotFunctional { .. } | F::BaseMismatch { .. })
        }),
        ("zero", "0 is sent to the empty function", |f| {
            matches!(f, F::ZeroNotEmpty)
        }),
        ("injective", "distinct elements have distinct values", |f| {
            matches!(f, F::NotInjective { .. })
        }),
        ("minus", "a - b is sent to the difference of graphs", |f| {
            matches!(f, F::Minus { .. })
        }),
        ("restrict", "a ▷ b is sent to the restriction", |f| {
            matches!(f, F::Restrict { .. })
        }),
    ];
    for (subject, text, pick) in checks {
        match v.failures.iter().find(|f| pick(f)) {
            None => report.verdict(Token::Pass, subject, text, &[]),
            Some(f) => {
                let (w, fields) = match *f {
                    F::NotInjective { a, b } | F::Minus { a, b } | F::Restrict { a, b } => (
                        format!("a={} b={}", name(a), name(b)),
                        vec![("a", name(a)), ("b", name(b))],
                    ),
                    F::NotFunctional { element, x, y, z } => (
                        format!("element={} pairs ({x},{y}) ({x},{z})", name(element)),
                        vec![
                            ("element", name(element)),
                            ("x", x.to_string()),
                            ("y", y.to_string()),
                            ("z", z.to_string()),
                        ],
                    ),
                    F::BaseMismatch { element } => {
                        (format!("element={}", name(element)), vec![("element", name(element))])
                    }
                    F::ZeroNotEmpty => (String::new(), vec![]),
                };
                report.verdict(Token::Fail, subject, &format!("{text} witness {w}"), &fields);
            }
        }
    }
    v.passed()
}

fn completeness_lines(report: &mut Report, alg: &FiniteAlgebra, c: &CompletenessReport) {
    let scan_token = |ok: bool| match (ok, c.exhaustive) {
        (false, _) => Token::Fail,
        (true, true) => Token::Pass,
        (true, false) => Token::Inconclusive,
    };
    let scope = if c.exhaustive { "all" } else { "sampled" };
    let checked = c.subsets_checked.to_string();
    for (subject, ok, witness, what) in [
        (
            "meet-complete",
            c.meet_complete,
            c.meet_witness,
            "existing meets become intersections",
        ),
        (
            "join-complete",
            c.join_complete,
            c.join_witness,
            "existing joins become unions",
        ),
    ] {
        let mut fields = vec![("subsets", checked.clone()), ("scope", scope.to_string())];
        let text = match witness {
            None => format!("{what} ({checked} subsets, {scope})"),
            Some(s) => {
                fields.push(("witness", set_text(alg, s)));
                format!("{what} witness S={}", set_text(alg, s))
            }
        };
        report.verdict(scan_token(ok), subject, &text, &fields);
    }
    let what = "every pair lies under an atom";
    match c.atomic_witness {
        None => report.verdict(Token::Pass, "atomic", what, &[]),
        Some((a, (x, y))) => report.verdict(
            Token::Fail,
            "atomic",
            &format!("{what} witness element={} pair=({x},{y})", alg.name(a)),
            &[("element", alg.name(a)), ("pair", format!("({x},{y})"))],
        ),
    }
}

fn run_command(cli: &Cli, report: &mut Report) -> Result<()> {
    match &cli.command {
        Command::Check { file } => {
            let alg = load_algebra(file)?;
            law_lines(report, &alg, &check_axioms(&alg));
        }
        Command::Laws { file } => {
            let alg = load_algebra(file)?;
            law_lines(report, &alg, &check_axioms(&alg));
            law_lines(report, &alg, &check_derived_laws(&alg));
        }
        Command::Filters { file } => {
            let alg = load_algebra(file)?;
            if !axioms_hold(report, &alg) {
                return Ok(());
            }
            let fam = enumerate_filters(&alg)?;
            for (i, &f) in fam.all_filters.iter().enumerate() {
                let maximal = fam.maximal.contains(&i);
                report.info(
                    "filter",
                    &format!(
                        "filter {} {}{} class {}",
                        i + 1,
                        set_text(&alg, f),
                        if maximal { " maximal" } else { "" },
                        fam.approx_class[i]
                    ),
                    &[
                        ("index", (i + 1).to_string()),
                        ("members", set_text(&alg, f)),
                        ("maximal", maximal.to_string()),
                        ("class", fam.approx_class[i].to_string()),
                    ],
                );
            }
            // Hasse edges of ⪯̂ between ≈-classes: lower class ⪯̂ upper class
            let reps: Vec<usize> = (0..fam.class_count())
                .map(|c| fam.approx_class.iter().position(|&x| x == c).unwrap())
                .collect();
            let below = |i: usize, j: usize| fam.domhat[reps[i]].contains(reps[j]) && i != j;
            for i in 0..reps.len() {
                for j in 0..reps.len() {
                    if below(i, j) && !(0..reps.len()).any(|k| below(i, k) && below(k, j)) {
                        report.info(
                            "edge",
                            &format!("class {i} ⪯̂ class {j}"),
                            &[("lower", i.to_string()), ("upper", j.to_string())],
                        );
                    }
                }
            }
            if alg.size() <= 20 {
                let brute = brute_force_maximal_filters(&alg)?;
                let agree = brute == fam.maximal_filters();
                report.verdict(
                    Token::of(agree),
                    "maximal-filters",
                    &format!(
                        "{} maximal filters, agreeing with a scan of all subsets",
                        fam.maximal.len()
                    ),
                    &[("count", fam.maximal.len().to_string())],
                );
            }
        }
        Command::Quotient { file } => {
            let alg = load_algebra(file)?;
            if !axioms_hold(report, &alg) {
                return Ok(());
            }
            let q = domain_quotient(&alg)?;
            for c in 0..q.class_count() {
                let members: ElementSet = q.members(c).into_iter().collect();
                report.info(
                    "class",
                    &format!("class {c} = {}", set_text(&alg, members)),
                    &[("index", c.to_string()), ("members", set_text(&alg, members))],
                );
            }
            report.text_block(&write_algebra(&q.as_algebra()));
            let sub = crate::algebra::laws::check_subtraction_axioms(&q.as_algebra());
            report.verdict(
                Token::of(sub.passed()),
                "quotient",
                "well defined and a subtraction algebra",
                &[("classes", q.class_count().to_string())],
            );
        }
        Command::Represent {
            file,
            mode,
            emit_concrete,
        } => {
            let alg = load_algebra(file)?;
            if !axioms_hold(report, &alg) {
                return Ok(());
            }
            let rep = build(*mode, &alg)?;
            representation_lines(report, &rep);
            let ok = verification_lines(report, &rep);
            if matches!(mode, Mode::Eta | Mode::AtomicEta) {
                report.verdict(
                    Token::of(all_values_injective(&rep)),
                    "injective-values",
                    "every value is an injective function",
                    &[],
                );
            }
            let opts = CompletenessOptions {
                seed: cli.seed,
                ..Default::default()
            };
            completeness_lines(report, &alg, &completeness_report_with(&rep, &opts)?);
            if let (true, Some(path)) = (ok, emit_concrete) {
                let image = verify_representation(&rep).certificate.expect("verified");
                fs::write(path, write_concrete(&image)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Complete {
            file,
            mode,
            exhaustive_cap,
            samples,
        } => {
            let alg = load_algebra(file)?;
            if !axioms_hold(report, &alg) {
                return Ok(());
            }
            let rep = build(*mode, &alg)?;
            let opts = CompletenessOptions {
                exhaustive_cap: *exhaustive_cap,
                samples: *samples,
                seed: cli.seed,
                require_exhaustive: false,
            };
            completeness_lines(report, &alg, &completeness_report_with(&rep, &opts)?);
        }
        Command::Search { target } => search(target, report)?,
        Command::Diff {
            file,
            random,
            max_base,
            node_limit,
        } => {
            let corpus: Vec<FiniteAlgebra> = match file {
                Some(path) => parse_corpus(&read(path)?)
                    .with_context(|| format!("parsing {}", path.display()))?
                    .into_iter()
                    .map(|d| d.algebra)
                    .collect(),
                None => random_corpus(cli.seed, *random)
                    .into_iter()
                    .map(|c| c.abstract_alg)
                    .collect(),
            };
            let budget = SearchBudget {
                max_base_size: *max_base,
                node_limit: *node_limit,
                seed: cli.seed,
                ..Default::default()
            };
            let diff = differential_check(&corpus, &budget)?;
            for e in &diff.entries {
                let token = match e.agrees() {
                    Some(true) => Token::Pass,
                    Some(false) => Token::Fail,
                    None => Token::Inconclusive,
                };
                let axioms = if e.axioms_pass { "pass" } else { "fail" };
                report.verdict(
                    token,
                    &format!("algebra-{}", e.index),
                    &format!("size {}, axioms {axioms}, embedding {}", e.size, e.verdict),
                    &[
                        ("size", e.size.to_string()),
                        ("axioms", axioms.to_string()),
                        ("embedding", e.verdict.to_string()),
                    ],
                );
                if e.agrees() == Some(false) {
                    report.text_block(&write_algebra(&corpus[e.index]));
                    report.text_block(&check_axioms(&corpus[e.index]).to_string());
                }
            }
            report.info(
                "summary",
                &format!(
                    "summary: {} agree, {} disagree, {} inconclusive",
                    diff.agreements(),
                    diff.disagreements().len(),
                    diff.inconclusive().len()
                ),
                &[
                    ("agree", diff.agreements().to_string()),
                    ("disagree", diff.disagreements().len().to_string()),
                    ("inconclusive", diff.inconclusive().len().to_string()),
                ],
            );
        }
        Command::InterpBoolean { universe } => {
            if *universe > 6 {
                return Err(Error::SizeCap {
                    what: "powerset universe",
                    actual: *universe as usize,
                    cap: 6,
                }
                .into());
            }
            let c = boolean_as_diffrest(&FieldOfSets::powerset(*universe))?;
            let alg = &c.abstract_alg;
            report.info(
                "algebra",
                &format!("powerset of 1..{universe}: {} elements", alg.size()),
                &[("universe", universe.to_string()), ("size", alg.size().to_string())],
            );
            law_lines(report, alg, &check_axioms(alg));
            let identity = Representation::from_concrete(&c);
            report.verdict(
                Token::of(verify_representation(&identity).passed()),
                "identity-functions",
                "the identity functions represent the algebra",
                &[],
            );
            let rep = atomic_theta(alg)?;
            report.verdict(
                Token::of(verify_representation(&rep).passed()),
                "atomic-theta",
                "the atom representation verifies",
                &[],
            );
            let opts = CompletenessOptions {
                seed: 0,
                ..Default::default()
            };
            completeness_lines(report, alg, &completeness_report_with(&rep, &opts)?);
        }
    }
    Ok(())
}

fn search(target: &SearchTarget, report: &mut Report) -> Result<()> {
    match target {
        SearchTarget::Models { size, node_limit, emit } => {
            let budget = SearchBudget {
                node_limit: *node_limit,
                ..Default::default()
            };
            let m = enumerate_axiom_models(*size, &budget)?;
            let token = if m.exhaustive { Token::Pass } else { Token::Inconclusive };
            report.verdict(
                token,
                "models",
                &format!(
                    "{} models of size {size} up to isomorphism ({} nodes{})",
                    m.models.len(),
                    m.nodes,
                    if m.exhaustive { "" } else { ", stopped early" }
                ),
                &[
                    ("size", size.to_string()),
                    ("count", m.models.len().to_string()),
                    ("exhaustive", m.exhaustive.to_string()),
                    ("nodes", m.nodes.to_string()),
                ],
            );
            let corpus: String = m
                .models
                .iter()
                .enumerate()
                .map(|(i, alg)| format!("# model {}\n{}", i + 1, write_algebra(alg)))
                .collect();
            match emit {
                Some(path) => fs::write(path, &corpus).with_context(|| format!("writing {}", path.display()))?,
                None => report.text_block(&corpus),
            }
            for (i, alg) in m.models.iter().enumerate() {
                let key: Vec<String> = alg.table_key().iter().map(ToString::to_string).collect();
                report.record("model", &[("index", (i + 1).to_string()), ("key", key.join(","))]);
            }
        }
        SearchTarget::Embed {
            file,
            max_base,
            node_limit,
        } => {
            let alg = load_algebra(file)?;
            let budget = SearchBudget {
                max_base_size: *max_base,
                node_limit: *node_limit,
                ..Default::default()
            };
            let axioms = check_axioms(&alg).passed();
            report.info(
                "axioms",
                &format!("axioms {}", if axioms { "hold" } else { "fail" }),
                &[("pass", axioms.to_string())],
            );
            match brute_force_embedding(&alg, &budget)? {
                EmbeddingVerdict::Found(rep) => {
                    report.verdict(
                        Token::Pass,
                        "embedding",
                        &format!("found on base 1..{}", rep.states.len()),
                        &[("base", rep.states.len().to_string())],
                    );
                    for a in alg.elements() {
                        let g = rep.value(a).to_string();
                        report.info(
                            "value",
                            &format!("value {} = {g}", alg.name(a)),
                            &[("element", alg.name(a)), ("graph", g)],
                        );
                    }
                }
                EmbeddingVerdict::None { max_base_size } => report.verdict(
                    Token::Fail,
                    "embedding",
                    &format!("none on any base of size at most {max_base_size}"),
                    &[("max_base", max_base_size.to_string())],
                ),
                EmbeddingVerdict::Inconclusive { nodes } => report.verdict(
                    Token::Inconclusive,
                    "embedding",
                    &format!("node limit reached after {nodes} nodes"),
                    &[("nodes", nodes.to_string())],
                ),
            }
        }
    }
    Ok(())
}

/// Input problems, as opposed to verdicts.
fn is_input_error(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.is::<std::io::Error>()
            || e.downcast_ref::<Error>().is_some_and(|e| {
                matches!(
                    e,
                    Error::Parse { .. }
                        | Error::Table { .. }
                        | Error::Shape(_)
                        | Error::Empty
                        | Error::SizeCap { .. }
                        | Error::NoZero { .. }
                        | Error::NotFunctional { .. }
                        | Error::BaseMismatch(..)
                        | Error::PointOutOfBase { .. }
                        | Error::Precondition(_)
                )
            })
    })
}

/// Parses `args` (program name first), runs the command, writes the report
/// to `out` and errors to `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Status::Input.code() } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let mut report = Report::new(cli.format);
    let result = run_command(&cli, &mut report);
    let _ = out.write_all(report.out.as_bytes());
    match result {
        Ok(()) => report.status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if is_input_error(&e) {
                Status::Input.code()
            } else {
                Status::Fail.code()
            }
        }
    }
}
