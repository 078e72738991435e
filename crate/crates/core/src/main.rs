use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;

use cyclocode::codegen::{construct, ConstructOptions, Construction, DEFAULT_BETA_CLASS};
use cyclocode::cyclotomy::{build_classes, formula_matrix, solve_diophantine, TableMode};
use cyclocode::distance::{
    exact_distance_exhaustive, theorem_lower_bound, upper_bound_search, CyclicCode, DistanceBounds,
    ExhaustiveResult, SearchConfig, SearchResult, TheoremBound, UpperMethod,
};
use cyclocode::numtheory::{gcd, is_prime};
use cyclocode::sequence::{wgcs1, wgcs2, BinarySequence};
use cyclocode::verify::{run_suite, Status, VerifyOptions};
use cyclocode::{Caps, Error, Result, TwoPrimeParams};

/// Writes a line to stdout; a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed writing to stdout: {e}");
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "cyclocode",
    version,
    about = "Cyclic codes from order-6 two-prime generalized cyclotomic sequences"
)]
struct Cli {
    /// Work-cap overrides as key=value pairs (max_n, field_bits, max_m, exhaustive),
    /// applied after CYCLOCODE_CAPS.
    #[arg(long, global = true)]
    caps: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Instance {
    /// Field characteristic; the code is over GF(p).
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n1: u64,
    #[arg(long)]
    n2: u64,
    /// j in beta = beta0^(u^j); relabels omega_i as omega_(i-j).
    #[arg(long, default_value_t = DEFAULT_BETA_CLASS)]
    beta_class: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Generator polynomial, classification and theorem bounds.
    Construct {
        #[command(flatten)]
        inst: Instance,
        /// Run only the gcd path.
        #[arg(long)]
        skip_verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Oracle checks of every closed form for one instance.
    Verify {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
    /// Cyclotomic numbers (i, j)_6 by direct count and by closed form.
    Tables {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        /// Characteristic used only for parameter validation; defaults to the
        /// smallest prime coprime to n.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// One period of WGCS-II or WGCS-I.
    Sequence {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long, value_enum, default_value_t = Kind::Ii)]
        kind: Kind,
        /// Run-length JSON instead of 0/1 text.
        #[arg(long)]
        json: bool,
    },
    /// Minimum-distance bounds.
    Distance {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = Method::Bounds)]
        method: Method,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iterations: u64,
        /// Rows combined per candidate in the search, 1 to 3.
        #[arg(long, default_value_t = 2)]
        width: usize,
        /// Largest message count q^k for exhaustive enumeration.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Generator polynomial or generator matrix.
    Export {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    I,
    Ii,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bounds,
    Exhaustive,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Coefficients in ascending degree.
    Text,
    /// The full construction report.
    Json,
    /// Rows x^i g(x), one per line.
    Matrix,
}

fn params(inst: &Instance, caps: &Caps) -> Result<TwoPrimeParams> {
    TwoPrimeParams::with_caps(inst.p, inst.n1, inst.n2, caps)
}

fn build(inst: &Instance, caps: &Caps, skip_verify: bool) -> Result<Construction> {
    let pr = params(inst, caps)?;
    let cons = construct(
        &pr,
        caps,
        ConstructOptions {
            skip_verify,
            beta_class: inst.beta_class,
        },
    )?;
    for w in &cons.warnings {
        eprintln!("warning: {w}");
    }
    Ok(cons)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    out!("{s}");
    Ok(())
}

fn cmd_construct(inst: Instance, skip_verify: bool, json: bool, caps: &Caps) -> Result<()> {
    let cons = build(&inst, caps, skip_verify)?;
    let r = &cons.report;
    if json {
        return print_json(r);
    }
    out!(
        "params     p = {}, n1 = {}, n2 = {}, n = {}, e = {}, g = {}, u = {}",
        r.q,
        r.params.n1,
        r.params.n2,
        r.n,
        r.params.e,
        r.params.g,
        r.params.u
    );
    out!(
        "code       [{}, {}] over GF({}), m = ord_n(q) = {}",
        r.n,
        r.k,
        r.q,
        r.m
    );
    out!("case       {}", r.label);
    let factors: Vec<String> = r.factors_removed.iter().map(|f| f.to_string()).collect();
    out!("removed    {}", factors.join(" "));
    out!(
        "layer      {}",
        if r.classification_layer.ran {
            "GF(q^m) classification verified"
        } else {
            "gcd path only"
        }
    );
    let b = &r.bounds;
    if b.no_distance {
        out!("distance   none (zero code)");
    } else {
        let upper = b.upper.map_or("unknown".to_string(), |u| u.to_string());
        let method = serde_json::to_value(b.lower_method)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        out!("distance   lower {} ({method}), upper {upper}", b.lower);
    }
    out!("generator  {}", r.generator);
    Ok(())
}

fn cmd_verify(inst: Instance, json: bool, corrupt: bool, caps: &Caps) -> Result<()> {
    let pr = params(&inst, caps)?;
    let opts = VerifyOptions {
        table_mode: if corrupt {
            TableMode::Corrupted
        } else {
            TableMode::Faithful
        },
        beta_class: inst.beta_class,
    };
    let report = run_suite(&pr, caps, opts)?;
    if json {
        print_json(&report)?;
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out!("{tag}  {:<36} {}", c.name, c.detail);
        }
    }
    match report.first_failure() {
        Some(f) => Err(Error::Verification {
            check: f.name.clone(),
            detail: f.detail.clone(),
        }),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct TablesOutput {
    n1: u64,
    n2: u64,
    eta: u64,
    x: i64,
    y: i64,
    column: u8,
    direct: [[u64; 6]; 6],
    formula: [[u64; 6]; 6],
    equal: bool,
}

fn cmd_tables(n1: u64, n2: u64, p: Option<u64>, json: bool, caps: &Caps) -> Result<()> {
    let p = match p {
        Some(p) => p,
        None => (2..)
            .find(|&c| is_prime(c) && gcd(c, n1.saturating_mul(n2)) == 1)
            .unwrap_or(2),
    };
    let pr = TwoPrimeParams::with_caps(p, n1, n2, caps)?;
    let classes = build_classes(&pr)?;
    let dio = solve_diophantine(&classes)?;
    let direct = classes.cyclotomic_matrix();
    let formula = formula_matrix(&dio, TableMode::Faithful)?;
    let out = TablesOutput {
        n1,
        n2,
        eta: pr.eta(),
        x: dio.x,
        y: dio.y,
        column: dio.column,
        direct,
        formula,
        equal: direct == formula,
    };
    if json {
        print_json(&out)?;
    } else {
        out!(
            "n = {}, eta = {}, (x, y) = ({}, {}), column {}",
            pr.n,
            out.eta,
            dio.x,
            dio.y,
            dio.column
        );
        for row in &direct {
            out!(
                "{}",
                row.iter().map(|v| format!("{v:>4}")).collect::<String>()
            );
        }
        out!(
            "closed forms {} direct counts",
            if out.equal { "equal" } else { "DIFFER from" }
        );
    }
    if !out.equal {
        return Err(Error::Verification {
            check: "cyclotomic tables".into(),
            detail: "closed forms differ".into(),
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct SequenceOutput {
    kind: cyclocode::sequence::SequenceKind,
    n: usize,
    weight: usize,
    runs: Vec<(u8, usize)>,
}

fn cmd_sequence(p: u64, n1: u64, n2: u64, kind: Kind, json: bool, caps: &Caps) -> Result<()> {
    let pr = TwoPrimeParams::with_caps(p, n1, n2, caps)?;
    let classes = build_classes(&pr)?;
    let seq: BinarySequence = match kind {
        Kind::Ii => wgcs2(&classes),
        Kind::I => wgcs1(&classes),
    };
    if json {
        print_json(&SequenceOutput {
            kind: seq.kind,
            n: seq.len(),
            weight: seq.weight(),
            runs: seq.runs(),
        })
    } else {
        out!("{}", seq.to_bit_string());
        Ok(())
    }
}

#[derive(Serialize)]
struct DistanceOutput {
    n: u64,
    k: u64,
    q: u64,
    bounds: DistanceBounds,
    theorem: TheoremBound,
    exhaustive: Option<ExhaustiveResult>,
    search: Option<SearchResult>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_distance(
    inst: Instance,
    method: Method,
    seed: u64,
    iterations: u64,
    width: usize,
    cap: Option<u64>,
    caps: &Caps,
) -> Result<()> {
    let cons = build(&inst, caps, false)?;
    let r = &cons.report;
    let theorem = theorem_lower_bound(&r.case, &r.params);
    let mut bounds = r.bounds.clone();
    let mut out = DistanceOutput {
        n: r.n,
        k: r.k,
        q: r.q,
        bounds: bounds.clone(),
        theorem,
        exhaustive: None,
        search: None,
    };
    if r.k == 0 {
        if !matches!(method, Method::Bounds) {
            return Err(Error::ZeroCode);
        }
        return print_json(&out);
    }
    let code = CyclicCode::from_report(r)?;
    match method {
        Method::Bounds => {}
        Method::Exhaustive => {
            let ex = exact_distance_exhaustive(&code, cap.unwrap_or(caps.exhaustive))?;
            if ex.distance < bounds.lower {
                return Err(Error::Verification {
                    check: "exhaustive vs theorem bound".into(),
                    detail: format!("exhaustive {} < lower bound {}", ex.distance, bounds.lower),
                });
            }
            bounds = bounds.with_exact(ex.distance);
            out.exhaustive = Some(ex);
        }
        Method::Search => {
            info!("search seed {seed}, {iterations} iterations, width {width}");
            let s = upper_bound_search(
                &code,
                &SearchConfig {
                    seed,
                    iterations,
                    width,
                },
            )?;
            if s.weight < bounds.lower {
                return Err(Error::Verification {
                    check: "search vs theorem bound".into(),
                    detail: format!("found weight {} < lower bound {}", s.weight, bounds.lower),
                });
            }
            bounds = bounds.with_upper(s.weight, UpperMethod::Search { seed, iterations });
            out.search = Some(s);
        }
    }
    out.bounds = bounds;
    print_json(&out)
}

fn cmd_export(inst: Instance, format: Format, caps: &Caps) -> Result<()> {
    let cons = build(&inst, caps, false)?;
    let r = &cons.report;
    match format {
        Format::Text => out!("{}", r.generator.to_text()),
        Format::Json => print_json(r)?,
        Format::Matrix => {
            let code = CyclicCode::from_report(r)?;
            for row in code.generator_rows() {
                out!(
                    "{}",
                    row.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let mut caps = Caps::from_env()?;
    if let Some(spec) = &cli.caps {
        caps = caps.with_overrides(spec)?;
    }
    match cli.command {
        Command::Construct {
            inst,
            skip_verify,
            json,
        } => cmd_construct(inst, skip_verify, json, &caps),
        Command::Verify {
            inst,
            json,
            corrupt_table,
        } => cmd_verify(inst, json, corrupt_table, &caps),
        Command::Tables { n1, n2, p, json } => cmd_tables(n1, n2, p, json, &caps),
        Command::Sequence {
            p,
            n1,
            n2,
            kind,
            json,
        } => cmd_sequence(p, n1, n2, kind, json, &caps),
        Command::Distance {
            inst,
            method,
            seed,
            iterations,
            width,
            cap,
        } => cmd_distance(inst, method, seed, iterations, width, cap, &caps),
        Command::Export { inst, format } => cmd_export(inst, format, &caps),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
