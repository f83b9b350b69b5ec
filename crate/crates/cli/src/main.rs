//! Batch command line front end for the glnq library.
//!
//! Every subcommand prints a single JSON document on standard output and
//! writes diagnostics to standard error. All orderings are canonical, so
//! output is byte-stable across runs for identical inputs; the only
//! exception is the `elapsed` timing field on the long-running commands,
//! which `--no-timing` pins to zero for diffable fixtures.
//!
//! Exit codes: 0 on success, 1 when a verification ran and found a
//! mismatch, 2 on usage errors (malformed flags, labels outside the
//! supported ranges, guard refusals).

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use glnq::expo::{check_duality_equality, exponent_formula, DualityReport, Family, GroupSpec};
use glnq::ffield::{FieldDescriptor, FqElement};
use glnq::galois::{act_on_label, ambient_exponent, field_of_values, galois_orbits};
use glnq::labels::{
    centralizer_order, character_degree, enumerate_characters, enumerate_semisimple,
    semisimple_order, CharacterLabelDto, SemisimpleLabelDto, MAX_ENUM_Q,
};
use glnq::oracle::gl2::MAX_TABLE_Q;
use glnq::oracle::{
    gl_group, pgl2_group, psp4_group, sl2_group, so5_group, sp4_group, verify_field_of_values,
    verify_induction_commutes, verify_inner_product_property, verify_main_theorem,
    verify_series_compat, Gl2Table, MatrixGroup, VerifyReport, BFS_ORDER_GUARD,
};
use glnq::Error;

#[derive(Parser)]
#[command(
    name = "glnq",
    version,
    about = "Galois actions on the character labels of finite general linear groups",
    max_term_width = 100
)]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the semisimple class labels of GL_n(q) in canonical order.
    Classes(EnumArgs),
    /// List the irreducible character labels of GL_n(q) with their degrees.
    Chars(EnumArgs),
    /// Apply the value substitution zeta -> zeta^r to a character label.
    Act(ActArgs),
    /// Partition the character labels of GL_n(q) into Galois orbits.
    Orbits(EnumArgs),
    /// Describe the field generated by the values of one character.
    Field(FieldArgs),
    /// Evaluate the closed-form group exponent together with its dual.
    Exponent(ExponentArgs),
    /// Check the GL_2(q) character table against the label predictions.
    VerifyGl2(VerifyGl2Args),
    /// Compare the symplectic and odd orthogonal exponent formulas.
    VerifyDualExponent(DualArgs),
    /// Breadth-first closure of a matrix group: order and exponent.
    Bfs(BfsArgs),
}

#[derive(Args)]
struct EnumArgs {
    /// Matrix size n.
    #[arg(long)]
    n: u32,
    /// Field size q, a prime power.
    #[arg(long)]
    q: u64,
    /// Refuse field sizes above this bound.
    #[arg(long, default_value_t = MAX_ENUM_Q)]
    max_q: u64,
}

#[derive(Args)]
struct ActArgs {
    /// Matrix size n; must agree with the label when given.
    #[arg(long)]
    n: Option<u32>,
    /// Field size q; must agree with the label when given.
    #[arg(long)]
    q: Option<u64>,
    /// Exponent of the value substitution, coprime to e(GL_n(q)).
    #[arg(long)]
    r: u64,
    /// Character label as JSON: {"n":..,"q":..,"s":[{"poly":[..],"mult":..}],"nu":[[..]]}.
    #[arg(long)]
    label: String,
}

#[derive(Args)]
struct FieldArgs {
    /// Character label as JSON, same schema as `act --label`.
    #[arg(long)]
    label: String,
}

#[derive(Args)]
struct ExponentArgs {
    /// Group family: gl, sp, or so-odd.
    #[arg(long)]
    family: String,
    /// Rank parameter: n for gl, m for sp and so-odd.
    #[arg(long)]
    rank: u32,
    /// Field size q, a prime power (odd for sp/so-odd duality).
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct VerifyGl2Args {
    /// Field size q, a prime power.
    #[arg(long)]
    q: u64,
    /// Restrict the r-indexed sweeps to this single automorphism.
    #[arg(long)]
    r: Option<u64>,
    /// Refuse field sizes above this bound.
    #[arg(long, default_value_t = MAX_TABLE_Q)]
    max_q: u64,
    /// Report elapsed time as 0 for byte-stable fixtures.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct DualArgs {
    /// Rank m of Sp_{2m} / SO_{2m+1}; sweeps 1..=6 when omitted.
    #[arg(long)]
    rank: Option<u32>,
    /// Odd prime power q; sweeps {3,5,7,9} when omitted.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args)]
struct BfsArgs {
    /// Built-in family: gl, sl2, pgl2, sp4, psp4, or so5.
    #[arg(long, conflicts_with = "gens_file")]
    family: Option<String>,
    /// Matrix size n for the gl family (ignored elsewhere).
    #[arg(long)]
    rank: Option<usize>,
    /// Field size q for a built-in family.
    #[arg(long)]
    q: Option<u64>,
    /// JSON generator file: {"dim":..,"p":..,"k":..,"gens":[[[row],..],..]}.
    #[arg(long)]
    gens_file: Option<PathBuf>,
    /// Identify scalar multiples (projective closure); generator files only.
    #[arg(long)]
    projective: bool,
    /// Assert this closure order; generator files only.
    #[arg(long)]
    expected_order: Option<u64>,
    /// Refuse closures whose predicted order exceeds this bound.
    #[arg(long, default_value_t = BFS_ORDER_GUARD)]
    max_order: u64,
    /// Report elapsed time as 0 for byte-stable fixtures.
    #[arg(long)]
    no_timing: bool,
}

/// A command that produced output: the JSON document, the exit code, and
/// an optional diagnostic line for standard error.
struct Outcome {
    json: String,
    exit: u8,
    note: Option<String>,
}

impl Outcome {
    fn ok(json: String) -> Self {
        Outcome {
            json,
            exit: 0,
            note: None,
        }
    }
}

/// A command that failed before producing output.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Display) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            // a computation ran and contradicted a declared expectation
            Error::OrderMismatch { .. }
            | Error::NoMatchingRow(_)
            | Error::MergeDetected
            | Error::NonIntegralDegree
            | Error::NotRational => 1,
            // everything else is rejected input or a guard refusal
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        usage(format!("malformed JSON: {e}"))
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("output serializes")
    } else {
        serde_json::to_string(value).expect("output serializes")
    }
}

/// Write one line to stdout, treating a closed pipe as a silent success so
/// `glnq ... | head` behaves like any other command line tool.
fn print_line(text: &str) -> std::io::Result<()> {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    writeln!(lock, "{text}").and_then(|()| lock.flush())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli.command, pretty) {
        Ok(outcome) => {
            if let Err(e) = print_line(&outcome.json) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::from(outcome.exit);
                }
                eprintln!("error: cannot write to stdout: {e}");
                return ExitCode::from(2);
            }
            if let Some(note) = outcome.note {
                eprintln!("{note}");
            }
            ExitCode::from(outcome.exit)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command, pretty: bool) -> Result<Outcome, Failure> {
    match command {
        Command::Classes(args) => run_classes(args, pretty),
        Command::Chars(args) => run_chars(args, pretty),
        Command::Act(args) => run_act(args, pretty),
        Command::Orbits(args) => run_orbits(args, pretty),
        Command::Field(args) => run_field(args, pretty),
        Command::Exponent(args) => run_exponent(args, pretty),
        Command::VerifyGl2(args) => run_verify_gl2(args, pretty),
        Command::VerifyDualExponent(args) => run_verify_dual(args, pretty),
        Command::Bfs(args) => run_bfs(args, pretty),
    }
}

fn check_enum_guard(args: &EnumArgs) -> Result<(), Failure> {
    if args.q > args.max_q {
        return Err(usage(format!(
            "field size {} above the requested bound {} (--max-q)",
            args.q, args.max_q
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassRecord {
    label: SemisimpleLabelDto,
    /// Multiplicative order of the class (lcm of the root orders).
    order: u64,
    /// |C_{GL_n(q)}(s)| as a decimal string.
    centralizer_order: String,
}

#[derive(Serialize)]
struct ClassesOutput {
    n: u32,
    q: u64,
    count: usize,
    classes: Vec<ClassRecord>,
}

fn run_classes(args: EnumArgs, pretty: bool) -> Result<Outcome, Failure> {
    check_enum_guard(&args)?;
    let labels = enumerate_semisimple(args.n, args.q)?;
    let mut classes = Vec::with_capacity(labels.len());
    for s in &labels {
        classes.push(ClassRecord {
            label: SemisimpleLabelDto::from(s),
            order: semisimple_order(s)?,
            centralizer_order: centralizer_order(s).to_string(),
        });
    }
    let out = ClassesOutput {
        n: args.n,
        q: args.q,
        count: classes.len(),
        classes,
    };
    Ok(Outcome::ok(emit(&out, pretty)))
}

#[derive(Serialize)]
struct CharRecord {
    label: CharacterLabelDto,
    /// Character degree as a decimal string.
    degree: String,
}

#[derive(Serialize)]
struct CharsOutput {
    n: u32,
    q: u64,
    count: usize,
    characters: Vec<CharRecord>,
}

fn run_chars(args: EnumArgs, pretty: bool) -> Result<Outcome, Failure> {
    check_enum_guard(&args)?;
    let labels = enumerate_characters(args.n, args.q)?;
    let mut characters = Vec::with_capacity(labels.len());
    for label in &labels {
        characters.push(CharRecord {
            label: CharacterLabelDto::from(label),
            degree: character_degree(label)?.to_string(),
        });
    }
    let out = CharsOutput {
        n: args.n,
        q: args.q,
        count: characters.len(),
        characters,
    };
    Ok(Outcome::ok(emit(&out, pretty)))
}

fn parse_label(json: &str) -> Result<glnq::labels::CharacterLabel, Failure> {
    let dto: CharacterLabelDto = serde_json::from_str(json)?;
    Ok(dto.build()?)
}

fn run_act(args: ActArgs, pretty: bool) -> Result<Outcome, Failure> {
    let label = parse_label(&args.label)?;
    if let Some(n) = args.n {
        if n != label.n() {
            return Err(usage(format!("--n {} disagrees with the label's n = {}", n, label.n())));
        }
    }
    if let Some(q) = args.q {
        if q != label.q() {
            return Err(usage(format!("--q {} disagrees with the label's q = {}", q, label.q())));
        }
    }
    let image = act_on_label(&label, args.r)?;
    Ok(Outcome::ok(emit(&CharacterLabelDto::from(&image), pretty)))
}

#[derive(Serialize)]
struct OrbitsOutput {
    n: u32,
    q: u64,
    /// Conductor of the ambient cyclotomic field, m = e(GL_n(q)).
    m: u64,
    count: usize,
    orbits: Vec<Vec<CharacterLabelDto>>,
}

fn run_orbits(args: EnumArgs, pretty: bool) -> Result<Outcome, Failure> {
    check_enum_guard(&args)?;
    let orbits = galois_orbits(args.n, args.q)?;
    let out = OrbitsOutput {
        n: args.n,
        q: args.q,
        m: ambient_exponent(args.n, args.q)?,
        count: orbits.len(),
        orbits: orbits
            .iter()
            .map(|orbit| orbit.iter().map(CharacterLabelDto::from).collect())
            .collect(),
    };
    Ok(Outcome::ok(emit(&out, pretty)))
}

fn run_field(args: FieldArgs, pretty: bool) -> Result<Outcome, Failure> {
    let label = parse_label(&args.label)?;
    let descriptor = field_of_values(&label)?;
    Ok(Outcome::ok(emit(&descriptor, pretty)))
}

#[derive(Serialize)]
struct ExponentOutput {
    family: Family,
    rank: u32,
    q: u64,
    /// Group exponent as a decimal string.
    value: String,
    /// Exponent of the dual-family group (gl is self-dual).
    dual_value: String,
    equal: bool,
}

fn run_exponent(args: ExponentArgs, pretty: bool) -> Result<Outcome, Failure> {
    let family: Family = args.family.parse()?;
    let dual = match family {
        Family::Gl => Family::Gl,
        Family::Sp => Family::SOodd,
        Family::SOodd => Family::Sp,
    };
    let value = exponent_formula(&GroupSpec::new(family, args.rank, args.q)?)?;
    let dual_value = exponent_formula(&GroupSpec::new(dual, args.rank, args.q)?)?;
    let equal = value == dual_value;
    let out = ExponentOutput {
        family,
        rank: args.rank,
        q: args.q,
        value: value.to_string(),
        dual_value: dual_value.to_string(),
        equal,
    };
    Ok(Outcome::ok(emit(&out, pretty)))
}

#[derive(Serialize)]
struct VerifyOutput {
    q: u64,
    checks: u64,
    mismatches: Vec<String>,
    /// Wall-clock seconds, rounded to milliseconds; 0 under --no-timing.
    elapsed: f64,
}

fn run_verify_gl2(args: VerifyGl2Args, pretty: bool) -> Result<Outcome, Failure> {
    if args.q > args.max_q {
        return Err(usage(format!(
            "field size {} above the requested bound {} (--max-q)",
            args.q, args.max_q
        )));
    }
    let start = Instant::now();
    let table = Gl2Table::new(args.q)?;
    let units = match args.r {
        Some(r) => vec![r],
        None => table.units(),
    };
    let mut checks = 0u64;
    let mut mismatches = Vec::new();
    let mut absorb = |report: VerifyReport| {
        checks += report.checks;
        mismatches.extend(report.mismatches);
    };
    for &r in &units {
        absorb(verify_main_theorem(&table, r)?);
        absorb(verify_series_compat(&table, r)?);
        absorb(verify_induction_commutes(&table, r)?);
    }
    absorb(verify_field_of_values(&table)?);
    absorb(verify_inner_product_property(&table)?);
    let elapsed = if args.no_timing {
        0.0
    } else {
        (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0
    };
    let out = VerifyOutput {
        q: args.q,
        checks,
        mismatches,
        elapsed,
    };
    let exit = u8::from(!out.mismatches.is_empty());
    let note = (exit != 0).then(|| format!("{} verification mismatches", out.mismatches.len()));
    Ok(Outcome {
        json: emit(&out, pretty),
        exit,
        note,
    })
}

#[derive(Serialize)]
struct DualSweepOutput {
    reports: Vec<DualityReport>,
    all_equal: bool,
}

fn run_verify_dual(args: DualArgs, pretty: bool) -> Result<Outcome, Failure> {
    match (args.rank, args.q) {
        (Some(rank), Some(q)) => {
            let report = check_duality_equality(rank, q)?;
            let exit = u8::from(!report.equal);
            let note = (exit != 0).then(|| {
                format!(
                    "exponent formulas disagree at rank {} over F_{}",
                    rank, q
                )
            });
            Ok(Outcome {
                json: emit(&report, pretty),
                exit,
                note,
            })
        }
        (None, None) => {
            let mut reports = Vec::new();
            for rank in 1..=glnq::expo::MAX_RANK {
                for q in [3u64, 5, 7, 9] {
                    reports.push(check_duality_equality(rank, q)?);
                }
            }
            let all_equal = reports.iter().all(|r| r.equal);
            let out = DualSweepOutput { reports, all_equal };
            let exit = u8::from(!all_equal);
            let note = (exit != 0).then(|| "exponent formulas disagree somewhere".to_string());
            Ok(Outcome {
                json: emit(&out, pretty),
                exit,
                note,
            })
        }
        _ => Err(usage(
            "provide both --rank and --q, or neither for the full sweep",
        )),
    }
}

#[derive(Deserialize)]
struct GensFile {
    dim: usize,
    p: u64,
    k: u32,
    /// Each generator is a list of rows; entries are packed element indices.
    gens: Vec<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
struct BfsOutput {
    description: String,
    dim: usize,
    q: u64,
    projective: bool,
    generators: usize,
    order: u64,
    exponent: u64,
    /// Wall-clock seconds, rounded to milliseconds; 0 under --no-timing.
    elapsed: f64,
}

fn load_gens_file(path: &PathBuf) -> Result<GensFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn run_bfs(args: BfsArgs, pretty: bool) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (group, description) = if let Some(path) = &args.gens_file {
        let file = load_gens_file(path)?;
        let field = FieldDescriptor::build(file.p, file.k)?;
        let mut gens = Vec::with_capacity(file.gens.len());
        for (idx, matrix) in file.gens.iter().enumerate() {
            if matrix.len() != file.dim || matrix.iter().any(|row| row.len() != file.dim) {
                return Err(usage(format!(
                    "generator {idx} is not a {0} x {0} matrix",
                    file.dim
                )));
            }
            let flat: Vec<FqElement> = matrix
                .iter()
                .flatten()
                .map(|&entry| FqElement(entry))
                .collect();
            gens.push(flat);
        }
        let group = MatrixGroup::new(
            field,
            file.dim,
            gens,
            args.projective,
            args.expected_order.map(BigInt::from),
        )?;
        (group, format!("file:{}", path.display()))
    } else {
        let family = args
            .family
            .as_deref()
            .ok_or_else(|| usage("provide --family or --gens-file"))?;
        let q = args
            .q
            .ok_or_else(|| usage("built-in families need --q"))?;
        if args.projective || args.expected_order.is_some() {
            return Err(usage(
                "--projective and --expected-order apply to generator files only",
            ));
        }
        match family {
            "gl" => {
                let n = args.rank.unwrap_or(2);
                (gl_group(n, q)?, format!("GL_{n}({q})"))
            }
            "sl2" => (sl2_group(q)?, format!("SL_2({q})")),
            "pgl2" => (pgl2_group(q)?, format!("PGL_2({q})")),
            "sp4" => (sp4_group(q)?, format!("Sp_4({q})")),
            "psp4" => (psp4_group(q)?, format!("PSp_4({q})")),
            "so5" => (so5_group(q)?, format!("SO_5({q})")),
            other => {
                return Err(usage(format!(
                    "unknown built-in family {other}; expected gl, sl2, pgl2, sp4, psp4, or so5"
                )))
            }
        }
    };
    if let Some(expected) = group.expected_order() {
        if *expected > BigInt::from(args.max_order) {
            return Err(usage(format!(
                "predicted order {expected} exceeds --max-order {}",
                args.max_order
            )));
        }
    }
    let (order, exponent) = group.survey()?;
    let elapsed = if args.no_timing {
        0.0
    } else {
        (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0
    };
    let out = BfsOutput {
        description,
        dim: group.dimension(),
        q: group.field().q(),
        projective: group.is_projective(),
        generators: group.generator_count(),
        order,
        exponent,
        elapsed,
    };
    Ok(Outcome::ok(emit(&out, pretty)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_errors_map_to_the_right_exit_codes() {
        // rejected input is a usage problem
        assert_eq!(Failure::from(Error::NotPrimePower(6)).code, 2);
        assert_eq!(Failure::from(Error::NonCoprime { r: 2, m: 24 }).code, 2);
        assert_eq!(Failure::from(Error::SizeGuard(7)).code, 2);
        // a computation that contradicts a declared expectation is a
        // verification failure
        assert_eq!(
            Failure::from(Error::OrderMismatch {
                got: 4,
                expected: 5
            })
            .code,
            1
        );
        assert_eq!(Failure::from(Error::NoMatchingRow("row".into())).code, 1);
    }

    #[test]
    fn emit_switches_between_compact_and_pretty() {
        let descriptor = glnq::galois::ValueFieldDescriptor {
            m: 4,
            stabilizer: vec![1],
            degree: 2,
        };
        assert_eq!(
            emit(&descriptor, false),
            "{\"m\":4,\"stabilizer\":[1],\"degree\":2}"
        );
        assert!(emit(&descriptor, true).starts_with("{\n"));
    }

    #[test]
    fn label_parsing_reports_bad_input() {
        assert!(parse_label("{").is_err());
        // structurally valid JSON with a reducible polynomial is refused
        let reducible = r#"{"n":2,"q":3,"s":[{"poly":[0,0,1],"mult":1}],"nu":[[1]]}"#;
        assert!(parse_label(reducible).is_err());
        let good = r#"{"n":2,"q":3,"s":[{"poly":[1,0,1],"mult":1}],"nu":[[1]]}"#;
        assert_eq!(parse_label(good).unwrap().n(), 2);
    }

    #[test]
    fn command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
