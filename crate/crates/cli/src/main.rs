use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcap::identities::{self, lookup, registry, run_suite, summarize, Axis, Params, Status, SuiteOptions, VerificationReport};
use qcap::motions::{self, Variant};
use qcap::partitions::{self, Family, Partition};
use serde_json::json;

/// Writes to stdout, ignoring a closed pipe (`qcap registry | head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

/// Exact verification of Capparelli-type partition identities.
#[derive(Parser, Debug)]
#[command(name = "qcap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// More detail: readings and notes for every report (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    /// Only print the summary line.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    quiet: bool,

    /// Truncation order for infinite identities that follow the global default.
    #[arg(long, env = "QCAP_DEFAULT_T", global = true, value_parser = clap::value_parser!(i64).range(1..))]
    default_t: Option<i64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one identity, at one parameter value or over its whole range.
    Verify {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 300)]
        timeout_secs: u64,
    },
    /// Verify every identity whose id matches a glob pattern.
    Suite {
        #[arg(long, conflicts_with = "all")]
        glob: Option<String>,
        /// Same as `--glob '*'`.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        params: ParamArgs,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 300)]
        timeout_secs: u64,
    },
    /// List the partitions of `n` in a family (C1, C2, D1, D2, D1:<max>, B1, B2, dualC1, dualC2, A0, A2).
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
    },
    /// Trace the motion of a partition down to its minimal configuration and back.
    Motions {
        /// Comma separated parts, largest first (ascending input is sorted).
        #[arg(long)]
        partition: String,
        /// pi, pi1-star, pi2-star, pi1-hat or pi2-hat (default: pi2-star if 1 is a part, else pi).
        #[arg(long)]
        variant: Option<String>,
        /// Family bound: parts at most 3N+1 (default: smallest that fits).
        #[arg(long = "N")]
        big_n: Option<u32>,
        /// Reduce to the minimal configuration (the only direction; accepted for clarity).
        #[arg(long)]
        to_minimal: bool,
    },
    /// One line per identity: id, kind, parameter range, statement.
    Registry,
}

#[derive(Args, Debug, Default, Clone, Copy)]
struct ParamArgs {
    #[arg(long = "N", allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long = "M")]
    big_m: Option<i64>,
    #[arg(long)]
    nu: Option<i64>,
    /// Truncation order, for truncated series only.
    #[arg(long = "T")]
    t: Option<i64>,
}

impl From<ParamArgs> for Params {
    fn from(a: ParamArgs) -> Self {
        Params { n: a.n, big_m: a.big_m, nu: a.nu, t: a.t }
    }
}

/// A usage or configuration problem: exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("qcap: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether everything that ran passed.
fn run(cli: &Cli) -> Result<bool, Usage> {
    match &cli.command {
        Command::Verify { id, params, timeout_secs } => {
            let spec = lookup(id)?;
            check_overrides(spec, params)?;
            let p: Params = (*params).into();
            if let (Some(r), Some(v)) = (spec.range, axis_value(&p, spec.range.map(|r| r.axis))) {
                if v < r.lo || v > r.hi {
                    return Err(Usage(format!(
                        "parameter {}={v} is outside the verified range [{}, {}]",
                        r.axis.name(),
                        r.lo,
                        r.hi
                    )));
                }
            }
            if let (Some(t), Some(v)) = (spec.truncation, p.t) {
                if v < 1 || v > t.max {
                    return Err(Usage(format!("T={v} is outside [1, {}] for {id}", t.max)));
                }
            }
            let opts = suite_options(cli, p, None, *timeout_secs);
            let reports: Vec<_> = run_suite(id, &opts)?.into_iter().filter(|r| r.id == *id).collect();
            Ok(emit_reports(cli, &reports))
        }
        Command::Suite { glob, all, params, jobs, timeout_secs } => {
            let pattern = match (glob, all) {
                (Some(g), false) => g.as_str(),
                (None, true) => "*",
                _ => return Err(Usage("suite needs --glob <pattern> or --all".into())),
            };
            let opts = suite_options(cli, (*params).into(), *jobs, *timeout_secs);
            let reports = run_suite(pattern, &opts)?;
            if reports.is_empty() {
                return Err(Usage(format!("no identity matches `{pattern}`")));
            }
            Ok(emit_reports(cli, &reports))
        }
        Command::Enumerate { family, n } => {
            let fam: Family = family.parse()?;
            let list = partitions::enumerate(&fam, *n)?;
            match cli.format {
                Format::Json => {
                    let v = json!({ "family": fam.name(), "n": n, "count": list.len(), "partitions": list });
                    outln!("{v}");
                }
                Format::Text => {
                    if !cli.quiet {
                        for p in &list {
                            outln!("{}", join(p.parts()));
                        }
                    }
                    outln!("{fam}, n = {n}: {} partitions", list.len());
                }
            }
            Ok(true)
        }
        Command::Motions { partition, variant, big_n, .. } => motions_cmd(cli, partition, variant.as_deref(), *big_n),
        Command::Registry => {
            print_registry(cli.format);
            Ok(true)
        }
    }
}

fn axis_value(p: &Params, axis: Option<Axis>) -> Option<i64> {
    match axis? {
        Axis::N => p.n,
        Axis::M => p.big_m,
        Axis::Nu => p.nu,
    }
}

/// Rejects overrides that the entry has no use for.
fn check_overrides(spec: &identities::IdentitySpec, a: &ParamArgs) -> Result<(), Usage> {
    let axis = spec.range.map(|r| r.axis);
    for (given, which) in [(a.n, Axis::N), (a.big_m, Axis::M), (a.nu, Axis::Nu)] {
        if given.is_some() && axis != Some(which) {
            return Err(Usage(format!("{} does not take --{} ({})", spec.id, which.name(), spec.range_text())));
        }
    }
    if a.t.is_some() && spec.truncation.is_none() {
        return Err(Usage(format!("{} is exact and takes no --T", spec.id)));
    }
    Ok(())
}

fn suite_options(cli: &Cli, params: Params, jobs: Option<usize>, timeout_secs: u64) -> SuiteOptions {
    SuiteOptions {
        params,
        global_t: cli.default_t,
        timeout: (timeout_secs > 0).then(|| Duration::from_secs(timeout_secs)),
        jobs,
    }
}

fn join(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn params_text(r: &VerificationReport) -> String {
    if r.params.is_empty() {
        return "-".into();
    }
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// Prints the reports and returns whether none failed. Skipped entries do
/// not count as failures.
fn emit_reports(cli: &Cli, reports: &[VerificationReport]) -> bool {
    let (pass, fail, skip) = summarize(reports);
    match cli.format {
        Format::Json => outln!("{}", serde_json::to_string_pretty(reports).expect("reports serialize")),
        Format::Text => {
            if !cli.quiet {
                let id_w = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
                let par_w = reports.iter().map(|r| params_text(r).len()).max().unwrap_or(6).max(6);
                outln!("{:<id_w$}  {:<par_w$}  {:<7}  {:>10}  detail", "id", "params", "status", "ms");
                for r in reports {
                    let detail = match (&r.discrepancy, r.status) {
                        (Some(w), _) => w.to_string(),
                        (None, Status::Skipped) => r.notes.first().cloned().unwrap_or_default(),
                        _ => String::new(),
                    };
                    let row = format!(
                        "{:<id_w$}  {:<par_w$}  {:<7}  {:>10.1}  {detail}",
                        r.id,
                        params_text(r),
                        r.status.name(),
                        r.wall_ms
                    );
                    outln!("{}", row.trim_end());
                    if cli.verbose > 0 {
                        for rd in &r.readings {
                            let tag = if rd.printed { "printed" } else { "corrected" };
                            let verdict = if rd.matches { "holds" } else { "fails" };
                            out!("    {tag} reading `{}`: {verdict}", rd.name);
                            match &rd.discrepancy {
                                Some(d) => outln!(" ({d})"),
                                None => outln!(),
                            }
                        }
                        for n in &r.notes {
                            outln!("    note: {n}");
                        }
                    }
                }
            }
            outln!("{} reports: {pass} passed, {fail} failed, {skip} skipped", reports.len());
        }
    }
    fail == 0
}

fn print_registry(format: Format) {
    let reg = registry();
    match format {
        Format::Json => {
            let rows: Vec<_> = reg
                .iter()
                .map(|s| json!({ "id": s.id, "kind": s.kind.name(), "range": s.range_text(), "anchor": s.anchor }))
                .collect();
            outln!("{}", serde_json::to_string_pretty(&rows).expect("registry serializes"));
        }
        Format::Text => {
            let id_w = reg.iter().map(|s| s.id.len()).max().unwrap_or(0);
            let kind_w = reg.iter().map(|s| s.kind.name().len()).max().unwrap_or(0);
            let range_w = reg.iter().map(|s| s.range_text().len()).max().unwrap_or(0);
            for s in reg {
                outln!("{:<id_w$}  {:<kind_w$}  {:<range_w$}  {}", s.id, s.kind.name(), s.range_text(), s.anchor);
            }
        }
    }
}

fn parse_partition(text: &str) -> Result<Partition, Usage> {
    let parts = text
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| Usage(format!("bad part `{s}` in partition literal"))))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.windows(2).any(|w| w[0] < w[1]) {
        eprintln!("qcap: warning: partition given in ascending order, sorting it");
    }
    Ok(Partition::from_unsorted(parts)?)
}

fn motions_cmd(cli: &Cli, literal: &str, variant: Option<&str>, big_n: Option<u32>) -> Result<bool, Usage> {
    let p = parse_partition(literal)?;
    let variant: Variant = match variant {
        Some(v) => v.parse()?,
        None if p.contains(1) => Variant::PiStar2,
        None => Variant::Pi,
    };
    let (cfg, path, trace) = motions::to_minimal(&p, variant, big_n)?;
    let (rebuilt, _) = motions::from_minimal(&cfg, &path)?;
    let round_trip = rebuilt == p;
    match cli.format {
        Format::Json => {
            // One line per move, then a summary line.
            for (step, e) in trace.iter().enumerate() {
                let mut v = serde_json::to_value(e).expect("moves serialize");
                v["step"] = json!(step + 1);
                outln!("{v}");
            }
            let v = json!({
                "partition": p,
                "variant": variant.name(),
                "config": cfg,
                "minimal": cfg.minimal_partition(),
                "path": path,
                "moves": trace.len(),
                "round_trip": round_trip,
            });
            outln!("{v}");
        }
        Format::Text => {
            if !cli.quiet {
                for e in &trace {
                    let dir = if e.reverse { "back" } else { "forward" };
                    outln!("{} -> {}  ({:?}, {dir})", join(&e.before), join(&e.after), e.kind);
                }
            }
            outln!(
                "{variant}, N = {}: {} singletons, {} pairs, minimal {}, path x = {:?}, y = {:?}",
                cfg.big_n,
                cfg.m,
                cfg.n,
                join(cfg.minimal_partition().parts()),
                path.x,
                path.y
            );
            outln!("rebuilt {} ({})", join(rebuilt.parts()), if round_trip { "matches" } else { "MISMATCH" });
        }
    }
    Ok(round_trip)
}
