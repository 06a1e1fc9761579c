//! Command-line frontend: argument definitions and command runners.
//!
//! Every runner returns the text for stdout and an [`Exit`] status, so the
//! binary stays a thin wrapper and the same code is exercised by tests.

mod parse;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use descartes_core::certificates::{self, CertificateReport, CertificateSpec};
use descartes_core::classifier::{
    self, theorem_rule_engine, ClassificationEntry, ClassifyOptions, Status, TableFormat,
};
use descartes_core::constructor::{bases_to_json, describe, Witness};
use descartes_core::rational::parse_pq;
use descartes_core::search::{search_realization, SearchSpec};
use descartes_core::signs::{enumerate_couples, Couple};
use descartes_core::{is_hyperbolic, moduli_order, sign_pattern, Error, Polynomial, Rational, SignPattern};
use serde::Serialize;

pub use parse::parse_polynomial;

#[derive(Debug, Parser)]
#[command(name = "descartes", version, about = "Realizability of sign patterns with orders of moduli")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sign pattern, hyperbolicity and order of moduli of a polynomial.
    Inspect {
        /// Polynomial text such as "x^3+1/2x^2-11/2x-5", or a file holding
        /// that text or a JSON coefficient array.
        poly: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Witness for a couple, or the rule that rules it out.
    Realize {
        /// "S2,4,2 (2,1,2)" or "pattern=++----++ order=PNNNNNP".
        couple: String,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
        /// Write the witness JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of every couple of a three-block pattern.
    Classify {
        /// "S3,2,2" or "+++--++".
        pattern: String,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one JSON file per witness into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Report couples without a construction as Unknown instead of searching.
        #[arg(long)]
        no_search: bool,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
    /// Run certificate checks; all of them when no --id is given.
    Certify {
        #[arg(long = "id")]
        ids: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Constant override such as h_star=7/5 or d_max=9/1.
        #[arg(long = "set", value_parser = parse_constant)]
        constants: Vec<(String, Rational)>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The couples in the orbit of a couple under i_m and i_r.
    Orbit {
        couple: String,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate the degree-6 Σ_{3,2,2} base witnesses by search.
    Bases {
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Budget {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub restarts: usize,
    #[arg(long = "iters", default_value_t = 2000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub den_bound: u64,
}

impl Budget {
    fn options(&self, search: bool, max_degree: usize) -> ClassifyOptions {
        ClassifyOptions {
            search,
            restarts: self.restarts,
            iterations: self.iterations,
            seed: self.seed,
            denominator_bound: self.den_bound,
            max_degree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => TableFormat::Json,
            Format::Csv => TableFormat::Csv,
            Format::Markdown => TableFormat::Markdown,
        }
    }
}

fn parse_constant(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=p/q")?;
    let v = parse_pq(v).map_err(|e| e.to_string())?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success,
    Soundness,
    SearchExhausted,
    InputError,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Success => 0,
            Exit::Soundness => 2,
            Exit::SearchExhausted => 3,
            Exit::InputError => 4,
        }
    }
}

/// Stdout text, stderr notes and exit status of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub notes: String,
    pub exit: Exit,
}

impl Output {
    fn new(text: String, exit: Exit) -> Self {
        Output { text, notes: String::new(), exit }
    }

    fn ok(text: String) -> Self {
        Self::new(text, Exit::Success)
    }
}

/// A run that stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    pub exit: Exit,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::SoundnessViolation(_) => Exit::Soundness,
            _ => Exit::InputError,
        };
        Failure { message: e.to_string(), exit }
    }
}

type Run = Result<Output, Failure>;

pub fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Inspect { poly, json, out } => inspect(poly, *json, out.as_deref()),
        Command::Realize { couple, budget, json, out } => realize(couple, budget, *json, out.as_deref()),
        Command::Classify {
            pattern,
            budget,
            format,
            out,
            witness_dir,
            no_search,
            max_degree,
        } => classify(
            pattern,
            &budget.options(!no_search, *max_degree),
            (*format).into(),
            out.as_deref(),
            witness_dir.as_deref(),
        ),
        Command::Certify { ids, trials, seed, constants, json, out } => {
            certify(ids, *trials, *seed, constants, *json, out.as_deref())
        }
        Command::Orbit { couple, json } => orbit(couple, *json),
        Command::Bases { budget, out } => bases(budget, out.as_deref()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure {
        message: format!("cannot write {}: {e}", path.display()),
        exit: Exit::InputError,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn read_polynomial(arg: &str) -> Result<Polynomial, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure {
            message: format!("cannot read {arg}: {e}"),
            exit: Exit::InputError,
        })?
    } else {
        arg.to_string()
    };
    let t = text.trim();
    let p = if t.starts_with('[') {
        Polynomial::from_json(t)?
    } else {
        parse_polynomial(t)?
    };
    Ok(p)
}

#[derive(Debug, Serialize)]
pub struct InspectReport {
    pub polynomial: String,
    pub degree: usize,
    pub hyperbolic: bool,
    pub pattern: Option<String>,
    pub blocks: Option<String>,
    pub sign_changes: Option<usize>,
    pub sign_preservations: Option<usize>,
    pub order: Option<String>,
    pub code: Option<String>,
    pub diagnostics: Vec<String>,
}

pub fn inspect_polynomial(p: &Polynomial) -> InspectReport {
    let mut diagnostics = Vec::new();
    let hyperbolic = is_hyperbolic(p);
    let pattern = match sign_pattern(p) {
        Ok(s) => Some(s),
        Err(e) => {
            diagnostics.push(format!("{e:?}: {e}"));
            None
        }
    };
    let order = match moduli_order(p) {
        Ok(o) => Some(o),
        Err(e) => {
            let d = format!("{e:?}: {e}");
            if !diagnostics.contains(&d) {
                diagnostics.push(d);
            }
            None
        }
    };
    let code = match (&pattern, &order) {
        (Some(s), Some(o)) => Couple::new(s.clone(), o.clone()).ok().and_then(|c| c.code_text()),
        _ => None,
    };
    InspectReport {
        polynomial: p.to_string(),
        degree: p.degree(),
        hyperbolic,
        blocks: pattern.as_ref().map(SignPattern::label),
        sign_changes: pattern.as_ref().map(SignPattern::changes),
        sign_preservations: pattern.as_ref().map(SignPattern::preservations),
        pattern: pattern.as_ref().map(|s| s.to_string()),
        order: order.map(|o| o.to_string()),
        code,
        diagnostics,
    }
}

fn inspect(arg: &str, json: bool, out: Option<&Path>) -> Run {
    let p = read_polynomial(arg)?;
    let r = inspect_polynomial(&p);
    let text = if json {
        to_json(&r)
    } else {
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "n/a".into());
        let mut s = format!("polynomial: {}\ndegree: {}\n", r.polynomial, r.degree);
        s += &format!("hyperbolic: {}\n", if r.hyperbolic { "yes" } else { "no" });
        s += &format!("pattern: {} ({})\n", opt(&r.pattern), opt(&r.blocks));
        if let (Some(c), Some(p)) = (r.sign_changes, r.sign_preservations) {
            s += &format!("changes/preservations: {c}/{p}\n");
        }
        s += &format!("order: {}\ncode: {}\n", opt(&r.order), opt(&r.code));
        for d in &r.diagnostics {
            s += &format!("diagnostic: {d}\n");
        }
        s
    };
    if let Some(path) = out {
        write_file(path, &to_json(&r))?;
    }
    Ok(Output::ok(text))
}

fn parse_couple(s: &str) -> Result<Couple, Failure> {
    Ok(s.parse::<Couple>()?)
}

#[derive(Debug, Serialize)]
pub struct RealizeReport {
    pub couple: Couple,
    pub status: Status,
    pub rule: Option<String>,
    pub citation: Option<String>,
    pub provenance: String,
    pub witness: Option<Witness>,
    pub witness_file: Option<String>,
}

fn realize(arg: &str, budget: &Budget, json: bool, out: Option<&Path>) -> Run {
    let c = parse_couple(arg)?;
    let e = classifier::classify_one(&c, &budget.options(true, usize::MAX))?;
    let exit = if e.status == Status::SearchFailed {
        Exit::SearchExhausted
    } else {
        Exit::Success
    };
    let witness_file = match (&e.witness, out) {
        (Some(w), Some(path)) => {
            write_file(path, &(w.to_json() + "\n"))?;
            Some(path.display().to_string())
        }
        _ => None,
    };
    let r = RealizeReport {
        couple: e.couple.clone(),
        status: e.status,
        rule: e.rule.as_ref().map(|d| d.label()),
        citation: e.rule.as_ref().map(|d| d.citation()),
        provenance: e.provenance.clone(),
        witness: e.witness.clone(),
        witness_file,
    };
    let text = if json {
        to_json(&r)
    } else {
        let mut s = format!("{}: {}\n", r.couple, r.status);
        if let (Some(rule), Some(cite)) = (&r.rule, &r.citation) {
            s += &format!("rule: {rule}\ncitation: {cite}\n");
        }
        s += &format!("provenance: {}\n", r.provenance);
        if let Some(w) = &r.witness {
            s += &format!("witness: {}\n", describe(w));
        }
        if let Some(f) = &r.witness_file {
            s += &format!("written: {f}\n");
        }
        s
    };
    Ok(Output::new(text, exit))
}

fn table_exit(entries: &[ClassificationEntry]) -> Exit {
    if entries.iter().any(|e| e.status == Status::SearchFailed) {
        Exit::SearchExhausted
    } else {
        Exit::Success
    }
}

fn classify(
    pattern: &str,
    opts: &ClassifyOptions,
    format: TableFormat,
    out: Option<&Path>,
    witness_dir: Option<&Path>,
) -> Run {
    let p: SignPattern = pattern.parse()?;
    let mut entries = classifier::classify_family(&p, opts)?;
    if let Some(dir) = witness_dir {
        classifier::write_witnesses(&mut entries, dir)?;
    }
    let table = classifier::render_table(&entries, format)?;
    let text = match out {
        Some(path) => {
            write_file(path, &table)?;
            summary(&p, &entries) + &format!("written: {}\n", path.display())
        }
        None => table,
    };
    Ok(Output::new(text, table_exit(&entries)))
}

fn summary(p: &SignPattern, entries: &[ClassificationEntry]) -> String {
    let mut counts = BTreeMap::<String, usize>::new();
    for e in entries {
        *counts.entry(e.status.to_string()).or_default() += 1;
    }
    let parts: Vec<String> = counts.iter().map(|(k, n)| format!("{n} {k}")).collect();
    format!("{}: {} couples: {}\n", p.label(), entries.len(), parts.join(", "))
}

fn certify(
    ids: &[String],
    trials: u64,
    seed: u64,
    constants: &[(String, Rational)],
    json: bool,
    out: Option<&Path>,
) -> Run {
    let ids: Vec<String> = if ids.is_empty() {
        certificates::catalog().iter().map(|s| s.to_string()).collect()
    } else {
        ids.to_vec()
    };
    let mut reports = Vec::new();
    for id in &ids {
        let mut spec = CertificateSpec::new(id, trials, seed);
        spec.constants = constants.iter().cloned().collect();
        reports.push(certificates::run_certificate(&spec)?);
    }
    let exit = if reports.iter().all(|r| r.pass) {
        Exit::Success
    } else {
        Exit::Soundness
    };
    let doc = match &reports[..] {
        [one] => to_json(one),
        many => to_json(&many),
    };
    if let Some(path) = out {
        write_file(path, &doc)?;
    }
    let text = if json { doc } else { certificate_lines(&reports) };
    Ok(Output::new(text, exit))
}

fn certificate_lines(reports: &[CertificateReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let margin = r
                .min_margin
                .as_ref()
                .map(descartes_core::rational::to_pq)
                .unwrap_or_else(|| "-".into());
            format!(
                "{:<18} {:<8} checks={:<6} violations={:<4} min_margin={} {}\n",
                r.id,
                match r.kind {
                    certificates::CertificateKind::Sampled => "sampled",
                    certificates::CertificateKind::Identity => "identity",
                },
                r.trials_run,
                r.violations,
                margin,
                if r.pass { "PASS" } else { "FAIL" }
            )
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct OrbitMember {
    pub map: &'static str,
    pub couple: Couple,
    pub status: Option<Status>,
    pub rule: Option<String>,
}

pub fn orbit_members(c: &Couple) -> Vec<OrbitMember> {
    let images = [
        ("id", c.clone()),
        ("i_m", c.apply_im()),
        ("i_r", c.apply_ir()),
        ("i_m i_r", c.apply_im().apply_ir()),
    ];
    let mut out: Vec<OrbitMember> = Vec::new();
    for (map, x) in images {
        if out.iter().any(|m| m.couple == x) {
            continue;
        }
        let d = theorem_rule_engine(&x);
        out.push(OrbitMember {
            map,
            status: d.as_ref().map(|d| d.status),
            rule: d.as_ref().map(|d| d.label()),
            couple: x,
        });
    }
    out
}

fn orbit(arg: &str, json: bool) -> Run {
    let c = parse_couple(arg)?;
    let members = orbit_members(&c);
    let text = if json {
        to_json(&members)
    } else {
        let mut s = format!("orbit of {c}: {} couples\n", members.len());
        for m in &members {
            let status = match (&m.status, &m.rule) {
                (Some(st), Some(r)) => format!("{st} ({r})"),
                _ => "undecided by rules".into(),
            };
            s += &format!(
                "{:<8} {}  [{} / {}]  {status}\n",
                m.map,
                m.couple,
                m.couple.pattern,
                m.couple.order
            );
        }
        s
    };
    Ok(Output::ok(text))
}

/// Searches for every rule-realizable couple of `Σ_{3,2,2}`.
pub fn search_bases(budget: &Budget) -> (Vec<Witness>, Vec<Couple>) {
    let p = SignPattern::from_blocks(&[3, 2, 2]).expect("three blocks");
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for c in enumerate_couples(&p).expect("three blocks") {
        if !theorem_rule_engine(&c).is_some_and(|d| d.status == Status::Realizable) {
            continue;
        }
        let spec = SearchSpec {
            couple: c.clone(),
            restarts: budget.restarts,
            iterations: budget.iterations,
            seed: budget.seed,
            denominator_bound: budget.den_bound,
        };
        match search_realization(&spec).witness {
            Some(w) => found.push(w),
            None => missing.push(c),
        }
    }
    (found, missing)
}

fn bases(budget: &Budget, out: Option<&Path>) -> Run {
    let (found, missing) = search_bases(budget);
    let doc = bases_to_json(&found);
    let text = match out {
        Some(path) => {
            write_file(path, &doc)?;
            format!("{} witnesses written to {}\n", found.len(), path.display())
        }
        None => doc,
    };
    let exit = if missing.is_empty() {
        Exit::Success
    } else {
        Exit::SearchExhausted
    };
    let mut o = Output::new(text, exit);
    o.notes = missing.iter().map(|c| format!("search exhausted: {c}\n")).collect();
    Ok(o)
}
