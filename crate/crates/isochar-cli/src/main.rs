//! Command-line driver: corpus verification sweeps, single-instance
//! queries, and machine-readable class-number demonstrations.
//!
//! Output is deterministic byte-for-byte for a fixed invocation: canonical
//! field models, deterministic corpus order, and order-preserving parallel
//! collection. The CHARSUM_SEED environment variable is reserved but unused;
//! nothing here is randomized.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 a verified
//! mathematical claim failed, 3 internal invariant breach.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use isochar::charsum::CharacterContext;
use isochar::families::{
    corpus_generate, family_instance, search_torsion_instances, FamilyId, FamilyInstance,
};
use isochar::ff::Field;
use isochar::numutil::{gcd, primes_in};
use isochar::report::{
    charsum_line, dirichlet_row, family_line, json_line, mr_row, normalization_line,
    ordered_par_map, power_row, structure_line, summary_line, theorem_line,
    theorem_line_for_generator, ClassRow, CsvRecord, PowerRow, Summary,
};
use isochar::velu::Isogeny;
use isochar::weierstrass::Point;
use isochar::wire::IsogenyWire;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Points of exact order m found per prime when no family row applies.
const SEARCH_CAP: usize = 10;

#[derive(Parser)]
#[command(name = "isochar", version, about = "Verify character sums attached to cyclic isogenies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check brute = compact = lambda character sums over the corpus
    VerifyTheorem(SweepArgs),
    /// Check family closed forms against both sum forms
    VerifyFamily(SweepArgs),
    /// Check exact sequences, Frobenius factorization, and normalization
    VerifyStructure(StructureArgs),
    /// Character sum report for one instance
    Charsum(InstanceArgs),
    /// Emit one isogeny with kernel and codomain as JSON
    Isogeny(InstanceArgs),
    /// Normalization constant of one instance's isogeny
    NormalizationCheck(NormArgs),
    /// Weighted Legendre sums against -p h* per prime
    Dirichlet(ClassArgs),
    /// Degree-2 isogeny sums: divisibility by p and defect
    MrSum(MrArgs),
    /// Weighted m-th power residue sums, which must vanish
    PowerSum(PowerArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (csv only for dirichlet, mr-sum, power-sum)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all available cores
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Largest characteristic to sweep (primes 5..=pmax)
    #[arg(long)]
    pmax: u64,
    /// Kernel degrees, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3, 4, 5, 6, 8, 10])]
    m: Vec<u64>,
    /// Cap on valid (alpha, beta) pairs per prime for two-parameter rows
    #[arg(long, default_value_t = 50)]
    alpha_cap: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StructureArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Extension degree for the Frobenius factorization check
    #[arg(long, default_value_t = 2)]
    ext: u32,
    /// Residual coefficients certified by the normalization check
    #[arg(long, default_value_t = 12)]
    precision: usize,
}

#[derive(Args)]
struct InstanceArgs {
    /// Kernel degree
    #[arg(long)]
    m: u64,
    /// Characteristic
    #[arg(long)]
    p: u64,
    /// Family parameter (required for catalogued degrees)
    #[arg(long)]
    alpha: Option<u64>,
    /// Second family parameter (degrees 2 and 3)
    #[arg(long)]
    beta: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct NormArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Residual coefficients certified beyond the constant
    #[arg(long, default_value_t = 12)]
    precision: usize,
}

#[derive(Args)]
struct ClassArgs {
    /// Sweep primes 5..=pmax
    #[arg(long)]
    pmax: Option<u64>,
    /// Single prime instead of a sweep
    #[arg(long)]
    p: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MrArgs {
    /// Coefficient a of y^2 = x^3 + ax^2 + bx
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    /// Coefficient b of y^2 = x^3 + ax^2 + bx
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    #[command(flatten)]
    range: ClassArgs,
}

#[derive(Args)]
struct PowerArgs {
    /// Odd order m > 2 of the residue symbol
    #[arg(long)]
    m: u64,
    /// Sweep primes p = 1 mod m up to pmax
    #[arg(long)]
    pmax: u64,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Usage(String),
    Lib(isochar::Error),
}

impl From<isochar::Error> for CliError {
    fn from(e: isochar::Error) -> CliError {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are success paths, not usage errors
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 1 })
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<u8> {
    match cli.cmd {
        Cmd::VerifyTheorem(args) => cmd_verify_theorem(args),
        Cmd::VerifyFamily(args) => cmd_verify_family(args),
        Cmd::VerifyStructure(args) => cmd_verify_structure(args),
        Cmd::Charsum(args) => cmd_charsum(args),
        Cmd::Isogeny(args) => cmd_isogeny(args),
        Cmd::NormalizationCheck(args) => cmd_normalization(args),
        Cmd::Dirichlet(args) => cmd_dirichlet(args),
        Cmd::MrSum(args) => cmd_mr_sum(args),
        Cmd::PowerSum(args) => cmd_power_sum(args),
    }
}

fn check_pmax(pmax: u64) -> CliResult<u64> {
    if pmax < 5 {
        return Err(usage(format!("--pmax {pmax} is below the minimum characteristic 5")));
    }
    Ok(pmax)
}

fn json_only(output: &OutputArgs) -> CliResult<()> {
    if output.format == Format::Csv {
        return Err(usage("csv output is only available for dirichlet, mr-sum, and power-sum"));
    }
    Ok(())
}

fn sorted_degrees(m: &[u64]) -> CliResult<Vec<u64>> {
    if m.is_empty() {
        return Err(usage("--m must list at least one degree"));
    }
    if let Some(&bad) = m.iter().find(|&&v| v < 2) {
        return Err(usage(format!("--m {bad} is not a valid kernel degree (need m >= 2)")));
    }
    let mut degrees = m.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    Ok(degrees)
}

/// Writes buffered lines and the trailing summary; declares success iff no
/// line failed its claim.
fn emit(output: &OutputArgs, lines: Vec<String>, summary: Option<Summary>) -> CliResult<u8> {
    let mut buf = String::new();
    for line in &lines {
        buf.push_str(line);
        buf.push('\n');
    }
    let failures = match &summary {
        Some(s) => {
            match output.format {
                Format::Json => buf.push_str(&summary_line(s)),
                Format::Csv => buf.push_str(&format!(
                    "# {} instances={} failures={}",
                    s.command, s.instances, s.failures
                )),
            }
            buf.push('\n');
            s.failures
        }
        None => 0,
    };
    match &output.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| usage(format!("cannot create {}: {e}", path.display())))?;
            file.write_all(buf.as_bytes())
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        }
        None => print!("{buf}"),
    }
    Ok(if failures == 0 { 0 } else { 2 })
}

/// Corpus generators for one (p, m): family rows where catalogued, a
/// bounded torsion search otherwise.
enum Work {
    Family(FamilyInstance),
    Search { m: u64, generator: Point },
}

fn sweep_worklist(pmax: u64, degrees: &[u64], alpha_cap: usize, families_only: bool) -> CliResult<Vec<Work>> {
    let mut items = Vec::new();
    for p in primes_in(5, pmax) {
        for &m in degrees {
            if gcd(p, m) != 1 {
                continue;
            }
            if !FamilyId::for_degree(m).is_empty() {
                items.extend(corpus_generate(p, p, &[m], alpha_cap).into_iter().map(Work::Family));
            } else if !families_only {
                let field = Field::prime(p)?;
                items.extend(
                    search_torsion_instances(&field, m, SEARCH_CAP)
                        .into_iter()
                        .map(|generator| Work::Search { m, generator }),
                );
            }
        }
    }
    Ok(items)
}

fn cmd_verify_theorem(args: SweepArgs) -> CliResult<u8> {
    json_only(&args.output)?;
    let pmax = check_pmax(args.pmax)?;
    let degrees = sorted_degrees(&args.m)?;
    let items = sweep_worklist(pmax, &degrees, args.alpha_cap, false)?;
    let results = ordered_par_map(args.output.jobs, items, |work| match work {
        Work::Family(inst) => theorem_line(&inst),
        Work::Search { m, generator } => {
            theorem_line_for_generator("search", None, None, &generator, m)
        }
    });
    let mut lines = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for r in results {
        let line = r?;
        if !line.equal {
            failures += 1;
        }
        lines.push(json_line(&line));
    }
    let total = lines.len();
    emit(
        &args.output,
        lines,
        Some(Summary { command: "verify-theorem".into(), instances: total, failures }),
    )
}

fn cmd_verify_family(args: SweepArgs) -> CliResult<u8> {
    json_only(&args.output)?;
    let pmax = check_pmax(args.pmax)?;
    let degrees = sorted_degrees(&args.m)?;
    if let Some(&bad) = degrees.iter().find(|&&m| FamilyId::for_degree(m).is_empty()) {
        return Err(CliError::Lib(isochar::Error::NoSuchFamily(bad)));
    }
    let items = sweep_worklist(pmax, &degrees, args.alpha_cap, true)?;
    let results = ordered_par_map(args.output.jobs, items, |work| match work {
        Work::Family(inst) => family_line(&inst),
        Work::Search { .. } => unreachable!("family sweep contains only family rows"),
    });
    let mut lines = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for r in results {
        let line = r?;
        if !line.equal {
            failures += 1;
        }
        lines.push(json_line(&line));
    }
    let total = lines.len();
    emit(
        &args.output,
        lines,
        Some(Summary { command: "verify-family".into(), instances: total, failures }),
    )
}

fn cmd_verify_structure(args: StructureArgs) -> CliResult<u8> {
    json_only(&args.sweep.output)?;
    let pmax = check_pmax(args.sweep.pmax)?;
    if !(1..=2).contains(&args.ext) {
        return Err(usage(format!("--ext {} is not supported (1 or 2)", args.ext)));
    }
    let degrees = sorted_degrees(&args.sweep.m)?;
    let items = sweep_worklist(pmax, &degrees, args.sweep.alpha_cap, false)?;
    let (ext, precision) = (args.ext, args.precision);
    let results = ordered_par_map(args.sweep.output.jobs, items, |work| match work {
        Work::Family(inst) => structure_line(
            inst.family.label(),
            Some(&inst.alpha),
            &inst.generator,
            inst.m,
            ext,
            precision,
        ),
        Work::Search { m, generator } => {
            structure_line("search", None, &generator, m, ext, precision)
        }
    });
    let mut lines = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for r in results {
        let line = r?;
        if !line.pass {
            failures += 1;
        }
        lines.push(json_line(&line));
    }
    let total = lines.len();
    emit(
        &args.sweep.output,
        lines,
        Some(Summary { command: "verify-structure".into(), instances: total, failures }),
    )
}

/// Resolve one instance from the selector flags: catalogued family rows
/// take their parameters, other degrees fall back to the torsion search.
fn select_generator(args: &InstanceArgs) -> CliResult<Point> {
    if args.p < 5 {
        return Err(usage(format!("--p {} is below the minimum characteristic 5", args.p)));
    }
    let field = Field::prime(args.p)?;
    let rows = FamilyId::for_degree(args.m);
    if rows.is_empty() {
        let found = search_torsion_instances(&field, args.m, 1);
        return found.into_iter().next().ok_or_else(|| {
            usage(format!("no point of exact order {} found over F_{}", args.m, args.p))
        });
    }
    let family = rows[0];
    let alpha = args
        .alpha
        .ok_or_else(|| usage(format!("--alpha is required for the degree-{} family", args.m)))?;
    let mut params = vec![field.from_u64(alpha)];
    if family.param_count() == 2 {
        let beta = args
            .beta
            .ok_or_else(|| usage(format!("--beta is required for the degree-{} family", args.m)))?;
        params.push(field.from_u64(beta));
    } else if args.beta.is_some() {
        return Err(usage(format!("--beta does not apply to the degree-{} family", args.m)));
    }
    Ok(family_instance(family, &field, &params)?.generator)
}

fn cmd_charsum(args: InstanceArgs) -> CliResult<u8> {
    json_only(&args.output)?;
    let generator = select_generator(&args)?;
    let phi = Isogeny::from_kernel(&generator, args.m)?;
    let ctx = CharacterContext::new(&phi)?;
    let line = charsum_line(&ctx)?;
    let failures = usize::from(!line.equal);
    emit(
        &args.output,
        vec![json_line(&line)],
        Some(Summary { command: "charsum".into(), instances: 1, failures }),
    )
}

fn cmd_isogeny(args: InstanceArgs) -> CliResult<u8> {
    json_only(&args.output)?;
    let generator = select_generator(&args)?;
    let phi = Isogeny::from_kernel(&generator, args.m)?;
    let wire = IsogenyWire::from(&phi);
    emit(&args.output, vec![json_line(&wire)], None)
}

fn cmd_normalization(args: NormArgs) -> CliResult<u8> {
    json_only(&args.instance.output)?;
    let generator = select_generator(&args.instance)?;
    let phi = Isogeny::from_kernel(&generator, args.instance.m)?;
    let line = normalization_line(&phi, args.precision)?;
    // separable cyclic-kernel isogenies built here must be normalized
    let failures = usize::from(line.c != vec![1]);
    emit(
        &args.instance.output,
        vec![json_line(&line)],
        Some(Summary { command: "normalization-check".into(), instances: 1, failures }),
    )
}

fn class_primes(range: &ClassArgs) -> CliResult<Vec<u64>> {
    match (range.p, range.pmax) {
        (Some(p), None) => {
            check_pmax(p)?;
            Ok(vec![p])
        }
        (None, Some(pmax)) => Ok(primes_in(5, check_pmax(pmax)?)),
        (None, None) => Err(usage("provide --pmax for a sweep or --p for a single prime")),
        (Some(_), Some(_)) => Err(usage("--p and --pmax are mutually exclusive")),
    }
}

fn emit_rows<R: CsvRecord + serde::Serialize>(
    output: &OutputArgs,
    command: &str,
    rows: Vec<R>,
    failures: usize,
) -> CliResult<u8> {
    let mut lines = Vec::with_capacity(rows.len() + 1);
    match output.format {
        Format::Json => lines.extend(rows.iter().map(json_line)),
        Format::Csv => {
            lines.push(R::csv_header().to_string());
            lines.extend(rows.iter().map(CsvRecord::csv_row));
        }
    }
    let total = rows.len();
    emit(
        output,
        lines,
        Some(Summary { command: command.into(), instances: total, failures }),
    )
}

fn cmd_dirichlet(args: ClassArgs) -> CliResult<u8> {
    let primes = class_primes(&args)?;
    let results = ordered_par_map(args.output.jobs, primes, dirichlet_row);
    let mut rows: Vec<ClassRow> = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for r in results {
        let row = r?;
        if !row.pass {
            failures += 1;
        }
        rows.push(row);
    }
    emit_rows(&args.output, "dirichlet", rows, failures)
}

fn cmd_mr_sum(args: MrArgs) -> CliResult<u8> {
    let single = args.range.p.is_some();
    let primes = class_primes(&args.range)?;
    let (a, b) = (args.a, args.b);
    let results = ordered_par_map(args.range.output.jobs, primes, move |p| mr_row(a, b, p));
    let mut rows: Vec<ClassRow> = Vec::new();
    let mut failures = 0usize;
    for r in results {
        match r {
            Ok(row) => {
                if !row.pass {
                    failures += 1;
                }
                rows.push(row);
            }
            // sweeps skip bad-reduction primes; an explicit --p surfaces it
            Err(isochar::Error::BadReduction(p)) if !single => {
                let _ = p;
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit_rows(&args.range.output, "mr-sum", rows, failures)
}

fn cmd_power_sum(args: PowerArgs) -> CliResult<u8> {
    let pmax = check_pmax(args.pmax)?;
    if args.m < 3 || args.m % 2 == 0 {
        return Err(usage(format!("--m {} must be odd and greater than 2", args.m)));
    }
    let m = args.m;
    let primes: Vec<u64> = primes_in(5, pmax).into_iter().filter(|p| (p - 1) % m == 0).collect();
    let results = ordered_par_map(args.output.jobs, primes, move |p| power_row(p, m));
    let mut rows: Vec<PowerRow> = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for r in results {
        let row = r?;
        if !row.zero {
            failures += 1;
        }
        rows.push(row);
    }
    emit_rows(&args.output, "power-sum", rows, failures)
}
