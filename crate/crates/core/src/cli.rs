//! The `idealcore` command line: argument types, ideal files, and the JSON
//! and text reports. [`run`] never prints; `main` does.
//!
//! Every report is a JSON object with the keys `command`, `ring`,
//! `input_ideals`, `result`, `checks`, `seed` and `version`, in that order.
//! Ideals appear as arrays of generator strings that parse back to the same
//! ideal.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::core_engine::{core, core_with_reduction, deeper_core_sample, CoreConfig, CoreReport};
use crate::counterexample::{verify_counterexample, CounterexampleReport};
use crate::error::Error;
use crate::formulas::{build_conjecture_ideal, check_conjecture, paper_conjecture_ideal, ConjectureReport, FormsSource};
use crate::groebner::{Ideal, MonomialOrder};
use crate::ring::{parse_polynomial, Field, Ring, RingContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "idealcore", version, about = "Cores of m-primary homogeneous ideals, computed exactly")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Comma-separated variables, largest first.
    #[arg(long, global = true, default_value = "x,y,z,w")]
    pub ring: String,
    /// Field characteristic: 0 for Q, or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Degrevlex)]
    pub order: OrderArg,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Independent random minimal reductions per core.
    #[arg(long, global = true, default_value_t = crate::core_engine::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = crate::core_engine::DEFAULT_REDUCTION_CAP)]
    pub max_reduction_number: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Omit wall-clock timings, making reports byte-reproducible.
    #[arg(long, global = true)]
    pub no_timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Degrevlex => MonomialOrder::DegRevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the reduced Gröbner basis of the ideal in FILE.
    Gb { file: PathBuf },
    /// Compute core(I) = J^(r+1) : I^r from seeded minimal reductions.
    Core {
        file: PathBuf,
        /// Use this minimal reduction instead of random ones.
        #[arg(long)]
        reduction_file: Option<PathBuf>,
    },
    /// Run the six checks of the four-variable counterexample.
    VerifyCounterexample {
        /// Replace w^3 by w^2 in the reduction (test hook).
        #[arg(long, hide = true)]
        tamper_reduction: bool,
    },
    /// Compare the engine's core with m^a I^b for I = (s general d-forms) + m^(d+1).
    CheckConjecture {
        n: u32,
        s: u32,
        d: u32,
        /// Use x^2+yw, y^2+zw, z^2+xw (requires n=4, s=3, d=2).
        #[arg(long)]
        paper_forms: bool,
    },
    /// Intersect core(I) with the cores of ideals containing I.
    DeeperCore {
        file: PathBuf,
        #[arg(required = true)]
        family: Vec<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: {source}")]
    File { path: String, line: usize, source: Error },
    #[error("{0}: no generators")]
    EmptyIdeal(String),
    #[error("{path}: ideal does not contain {ideal}")]
    NotContaining { path: String, ideal: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) => engine_exit_code(e),
            _ => EXIT_USAGE,
        }
    }
}

/// Limits exit 3; bad input, including violated preconditions, exits 2; a
/// failed mathematical check exits 1.
pub fn engine_exit_code(e: &Error) -> i32 {
    if e.is_limit() {
        EXIT_LIMIT
    } else if e.is_usage()
        || matches!(
            e,
            Error::NotMPrimary { .. }
                | Error::NotCompleteIntersection { .. }
                | Error::ZeroColon
                | Error::ReductionNotContained(_)
                | Error::FamilyMemberNotContaining(_)
        )
    {
        EXIT_USAGE
    } else {
        EXIT_VERIFICATION
    }
}

/// What a command produced: the JSON report, its text rendering, and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    /// The report in the requested format, newline-terminated.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => self.text.clone(),
        }
    }
}

pub fn field_of(characteristic: u64) -> Result<Field, CliError> {
    if characteristic == 0 {
        Ok(Field::Rational)
    } else {
        Field::prime(characteristic).map_err(CliError::from)
    }
}

pub fn ring_of(global: &GlobalArgs) -> Result<Ring, CliError> {
    Ok(RingContext::from_spec(&global.ring, field_of(global.characteristic)?, global.order.into())?)
}

/// One generator per line; `#` starts a comment; blank lines are skipped.
pub fn parse_ideal_text(text: &str, ring: &Ring, path: &str) -> Result<Ideal, CliError> {
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = parse_polynomial(line, ring).map_err(|source| CliError::File {
            path: path.to_string(),
            line: k + 1,
            source,
        })?;
        gens.push(f);
    }
    if gens.is_empty() {
        return Err(CliError::EmptyIdeal(path.to_string()));
    }
    Ok(Ideal::new(ring, gens)?)
}

pub fn read_ideal_file(path: &Path, ring: &Ring) -> Result<Ideal, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    parse_ideal_text(&text, ring, &name)
}

/// Removes every `elapsed_ms` entry, at any depth.
pub fn strip_timings(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.shift_remove("elapsed_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn ring_json(ring: &Ring) -> Value {
    json!({
        "vars": ring.var_names(),
        "char": ring.field().characteristic(),
        "order": ring.order().to_string(),
    })
}

fn check_json(pass: bool, evidence: impl Into<String>) -> Value {
    json!({ "status": if pass { "pass" } else { "fail" }, "evidence": evidence.into() })
}

struct Report {
    command: &'static str,
    ring: Value,
    inputs: Map<String, Value>,
    result: Value,
    checks: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str, ring: &Ring) -> Report {
        Report {
            command,
            ring: ring_json(ring),
            inputs: Map::new(),
            result: Value::Null,
            checks: Map::new(),
        }
    }

    fn input(&mut self, name: &str, ideal: &Ideal) {
        self.inputs.insert(name.to_string(), json!(ideal.generator_strings()));
    }

    fn check(&mut self, name: &str, pass: bool, evidence: impl Into<String>) {
        self.checks.insert(name.to_string(), check_json(pass, evidence));
    }

    fn finish(self, global: &GlobalArgs) -> Value {
        let mut v = json!({
            "command": self.command,
            "ring": self.ring,
            "input_ideals": self.inputs,
            "result": self.result,
            "checks": self.checks,
            "seed": global.seed,
            "version": env!("CARGO_PKG_VERSION"),
        });
        if global.no_timings {
            strip_timings(&mut v);
        }
        v
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn config_of(global: &GlobalArgs) -> CoreConfig {
    CoreConfig {
        samples: global.samples,
        max_reduction_number: global.max_reduction_number,
        ..CoreConfig::with_seed(global.seed)
    }
}

fn list(ideal: &Ideal) -> String {
    ideal.to_string()
}

fn basis_lines(out: &mut String, basis: &[String]) {
    for g in basis {
        let _ = writeln!(out, "  {g}");
    }
}

fn timing(global: &GlobalArgs, ms: u128) -> String {
    if global.no_timings {
        String::new()
    } else {
        format!(" [{ms} ms]")
    }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Gb { file } => cmd_gb(g, file),
        Command::Core { file, reduction_file } => cmd_core(g, file, reduction_file.as_deref()),
        Command::VerifyCounterexample { tamper_reduction } => cmd_verify(g, *tamper_reduction),
        Command::CheckConjecture { n, s, d, paper_forms } => cmd_conjecture(g, *n, *s, *d, *paper_forms),
        Command::DeeperCore { file, family } => cmd_deeper(g, file, family),
    }
}

fn cmd_gb(g: &GlobalArgs, file: &Path) -> Result<Outcome, CliError> {
    let ring = ring_of(g)?;
    let ideal = read_ideal_file(file, &ring)?;
    let gb = ideal.groebner_basis();
    let basis = gb.to_strings();
    let mut rep = Report::new("gb", &ring);
    rep.input("I", &ideal);
    rep.result = json!({ "basis": basis, "stats": to_value(gb.stats()) });
    let mut text = String::new();
    for b in &basis {
        let _ = writeln!(text, "{b}");
    }
    Ok(Outcome { report: rep.finish(g), text, exit_code: EXIT_OK })
}

fn core_checks(rep: &mut Report, core: &CoreReport) {
    let c = &core.checks;
    rep.check("core-in-ideal", c.core_in_ideal, "core(I) ⊆ I");
    rep.check(
        "core-in-every-reduction",
        c.core_in_every_reduction,
        format!("core ⊆ J for all {} sampled reductions", core.samples.len()),
    );
    rep.check("samples-agree", c.samples_agree, format!("{} samples give equal colons", core.samples.len()));
    rep.check("stabilized", c.stabilized, "J^(r+1):I^r = J^(r+2):I^(r+1) in every sample");
}

fn core_text(out: &mut String, g: &GlobalArgs, core: &CoreReport) {
    if let Some(note) = core.field_note {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out, "core = {}{}", list(&core.core), timing(g, core.elapsed_ms));
    let _ = writeln!(out, "reduced basis ({} elements):", core.core_basis.len());
    basis_lines(out, &core.core_basis);
    for (k, s) in core.samples.iter().enumerate() {
        let _ = writeln!(
            out,
            "sample {k}: r = {}, J = {}{}",
            s.certificate.reduction_number,
            list(&s.certificate.reduction),
            timing(g, s.elapsed_ms)
        );
    }
    let c = &core.checks;
    for (name, pass) in [
        ("core-in-ideal", c.core_in_ideal),
        ("core-in-every-reduction", c.core_in_every_reduction),
        ("samples-agree", c.samples_agree),
        ("stabilized", c.stabilized),
    ] {
        let _ = writeln!(out, "{} {name}", if pass { "PASS" } else { "FAIL" });
    }
}

fn cmd_core(g: &GlobalArgs, file: &Path, reduction: Option<&Path>) -> Result<Outcome, CliError> {
    let ring = ring_of(g)?;
    let ideal = read_ideal_file(file, &ring)?;
    let config = config_of(g);
    let mut rep = Report::new("core", &ring);
    rep.input("I", &ideal);
    let report = match reduction {
        Some(path) => {
            let j = read_ideal_file(path, &ring)?;
            rep.input("J", &j);
            core_with_reduction(&ideal, j.generators(), &config, 0)?
        }
        None => core(&ideal, &config)?,
    };
    core_checks(&mut rep, &report);
    let mut text = String::new();
    core_text(&mut text, g, &report);
    let exit_code = if report.checks.all() { EXIT_OK } else { EXIT_VERIFICATION };
    rep.result = to_value(&report);
    Ok(Outcome { report: rep.finish(g), text, exit_code })
}

fn cmd_verify(g: &GlobalArgs, tamper: bool) -> Result<Outcome, CliError> {
    let field = field_of(g.characteristic)?;
    let report: CounterexampleReport = verify_counterexample(field, g.seed, tamper)?;
    let ring = RingContext::new(&crate::counterexample::VARIABLES, field, MonomialOrder::DegRevLex)?;
    let mut rep = Report::new("verify-counterexample", &ring);
    rep.input("I2", &report.i2);
    rep.input("I", &report.i);
    rep.input("J", &report.j);
    let mut text = String::new();
    if let Some(note) = report.field_note {
        let _ = writeln!(text, "field {} ({note})", report.field);
    } else {
        let _ = writeln!(text, "field {}", report.field);
    }
    for (k, c) in report.checks.iter().enumerate() {
        rep.check(c.name, c.pass, c.evidence.clone());
        let _ = writeln!(text, "{} ({}) {}: {}", if c.pass { "PASS" } else { "FAIL" }, k + 1, c.name, c.evidence);
    }
    for h in &report.assumed_hypotheses {
        let _ = writeln!(text, "assumed (not verified): {h}");
    }
    let exit_code = match report.first_failure() {
        None => {
            let _ = writeln!(text, "all {} checks pass{}", report.checks.len(), timing(g, report.elapsed_ms));
            EXIT_OK
        }
        Some(c) => {
            let _ = writeln!(text, "first failing check: {}", c.name);
            let _ = writeln!(text, "left basis:");
            basis_lines(&mut text, &c.left);
            let _ = writeln!(text, "right basis:");
            basis_lines(&mut text, &c.right);
            EXIT_VERIFICATION
        }
    };
    let mut result = to_value(&report);
    if let Value::Object(map) = &mut result {
        map.insert("first_failure".into(), json!(report.first_failure().map(|c| c.name)));
        map.insert("passed".into(), json!(report.passed()));
    }
    rep.result = result;
    Ok(Outcome { report: rep.finish(g), text, exit_code })
}

fn conjecture_status(r: &ConjectureReport) -> &'static str {
    if r.failure {
        "FAILURE"
    } else if r.theorem_backed {
        "theorem-backed"
    } else if matches!(r.instance.source, FormsSource::PaperForms) {
        "known-instance"
    } else {
        "finding"
    }
}

fn cmd_conjecture(g: &GlobalArgs, n: u32, s: u32, d: u32, paper_forms: bool) -> Result<Outcome, CliError> {
    let field = field_of(g.characteristic)?;
    let instance = if paper_forms {
        if (n, s, d) != (4, 3, 2) {
            return Err(CliError::Usage("--paper-forms requires n=4 s=3 d=2".into()));
        }
        paper_conjecture_ideal(field)?
    } else {
        build_conjecture_ideal(n, s, d, g.seed, field)?
    };
    let report = check_conjecture(instance, &config_of(g))?;
    let mut rep = Report::new("check-conjecture", &report.instance.ring);
    rep.input("I", &report.instance.ideal);
    let p = report.instance.params;
    let status = conjecture_status(&report);
    rep.check(
        "conjecture",
        !report.failure,
        format!("(n,s,d) = ({},{},{}), (a,b) = ({},{}): {} [{status}]", p.n, p.s, p.d, p.a, p.b, report.verdict),
    );
    core_checks(&mut rep, &report.core);
    let mut text = String::new();
    let source = match &report.instance.source {
        FormsSource::PaperForms => "explicit forms".to_string(),
        FormsSource::Random { seed, attempts } => format!("random forms, seed {seed}, {attempts} draw(s)"),
    };
    let _ = writeln!(text, "(n,s,d) = ({},{},{})  a = {}  b = {}  [{source}]", p.n, p.s, p.d, p.a, p.b);
    let _ = writeln!(text, "forms = ({})", report.instance.forms.join(", "));
    let _ = writeln!(text, "I = {}", list(&report.instance.ideal));
    core_text(&mut text, g, &report.core);
    let _ = writeln!(text, "m^{} I^{} = {}", p.a, p.b, list(&report.conjectured));
    let _ = writeln!(text, "verdict: {} ({status})", report.verdict);
    let exit_code = if report.failure { EXIT_VERIFICATION } else { EXIT_OK };
    let mut result = to_value(&report);
    if let Value::Object(map) = &mut result {
        map.insert("status".into(), json!(status));
    }
    rep.result = result;
    Ok(Outcome { report: rep.finish(g), text, exit_code })
}

fn cmd_deeper(g: &GlobalArgs, file: &Path, family_files: &[PathBuf]) -> Result<Outcome, CliError> {
    if family_files.is_empty() {
        return Err(CliError::Usage("the family of ideals containing I is empty".into()));
    }
    let ring = ring_of(g)?;
    let ideal = read_ideal_file(file, &ring)?;
    let mut rep = Report::new("deeper-core", &ring);
    rep.input("I", &ideal);
    let mut family = Vec::with_capacity(family_files.len());
    for (k, path) in family_files.iter().enumerate() {
        let member = read_ideal_file(path, &ring)?;
        if !member.contains(&ideal)? {
            return Err(CliError::NotContaining {
                path: path.display().to_string(),
                ideal: file.display().to_string(),
            });
        }
        rep.input(&format!("K{}", k + 1), &member);
        family.push(member);
    }
    let report = deeper_core_sample(&ideal, &family, &config_of(g))?;
    core_checks(&mut rep, &report.core_of_ideal);
    rep.check(
        "members-contain-ideal",
        true,
        format!("each of the {} family members contains I", family.len()),
    );
    let mut text = String::new();
    let _ = writeln!(text, "core(I) = {}", list(&report.core_of_ideal.core));
    for (k, c) in report.member_cores.iter().enumerate() {
        let _ = writeln!(text, "core(K{}) = {}  [{}]", k + 1, list(&c.core), family_files[k].display());
    }
    let _ = writeln!(text, "intersection = {}", list(&report.intersection));
    let _ = writeln!(text, "strictly inside core(I): {}", report.strictly_inside_core);
    rep.result = to_value(&report);
    Ok(Outcome { report: rep.finish(g), text, exit_code: EXIT_OK })
}

/// Parses `args`, runs, and returns `(stdout, stderr, exit code)`.
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK { (rendered, String::new(), code) } else { (String::new(), rendered, code) };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let stderr = if outcome.exit_code == EXIT_OK {
                String::new()
            } else {
                "verification failed\n".to_string()
            };
            (outcome.render(cli.global.output), stderr, outcome.exit_code)
        }
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        RingContext::standard(&["x", "y", "z", "w"], Field::Rational)
    }

    #[test]
    fn ideal_file_format() {
        let text = "# the ideal\nx^2+y*w  # first\n\n  y^2 \n";
        let i = parse_ideal_text(text, &ring(), "f").unwrap();
        assert_eq!(i.generator_strings(), vec!["x^2+y*w", "y^2"]);
    }

    #[test]
    fn empty_and_bad_files_are_usage_errors() {
        let e = parse_ideal_text("# nothing\n\n", &ring(), "f").unwrap_err();
        assert!(matches!(e, CliError::EmptyIdeal(_)));
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = parse_ideal_text("x\nx^^2\n", &ring(), "f").unwrap_err();
        assert!(matches!(e, CliError::File { line: 2, .. }), "{e}");
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn strips_nested_timings() {
        let mut v = json!({"elapsed_ms": 3, "a": [{"elapsed_ms": 1, "b": 2}], "c": {"elapsed_ms": 0}});
        strip_timings(&mut v);
        assert_eq!(v, json!({"a": [{"b": 2}], "c": {}}));
    }

    #[test]
    fn exit_code_classes() {
        assert_eq!(engine_exit_code(&Error::RetryCapExceeded { seeds: vec![1] }), EXIT_LIMIT);
        assert_eq!(engine_exit_code(&Error::NotMPrimary { bound: 4 }), EXIT_USAGE);
        assert_eq!(engine_exit_code(&Error::SampleDisagreement { first: 0, second: 1 }), EXIT_VERIFICATION);
    }

    #[test]
    fn top_level_key_order() {
        let (out, _, code) = main_with_args(["idealcore", "--output", "json", "--no-timings", "gb", "/nonexistent"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        let r = ring();
        let mut rep = Report::new("gb", &r);
        rep.input("I", &Ideal::parse(&r, &["x"]).unwrap());
        let v = rep.finish(&Cli::try_parse_from(["idealcore", "gb", "f"]).unwrap().global);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["command", "ring", "input_ideals", "result", "checks", "seed", "version"]);
    }
}
