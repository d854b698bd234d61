use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use coideal::report::{Report, Status};
use coideal::repl::Session;
use coideal::suites::{exit_code, run_suite, SuiteConfig, SUITE_IDS};
use coideal::uqg::{set_cache_dir, set_default_degree_cap, DEFAULT_DEGREE_CAP};
use coideal::Error;

#[derive(Parser)]
#[command(name = "coideal", version, about = "Exact verification suites for braid group actions on quantum symmetric pairs")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Option<Cmd>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate expressions, one per argument.
    Eval(EvalArgs),
    /// Read expressions from standard input.
    Repl(EvalArgs),
    /// List suite ids.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Suite to run.
    #[arg(long, env = "SUITE", default_value = "all")]
    suite: String,
    /// Comma-separated check groups (default: all).
    #[arg(long, env = "CHECKS", value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Largest rule degree allowed during completion.
    #[arg(long, env = "DEGREE_CAP", default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Resident memory ceiling, e.g. 4G or 512M.
    #[arg(long, env = "MEM_LIMIT", default_value = "4G", value_parser = parse_bytes)]
    mem_limit: u64,
    /// Wall-clock budget per check group, e.g. 30m, 90s, 2h.
    #[arg(long, env = "TIME_BUDGET", default_value = "30m", value_parser = parse_duration)]
    time_budget: Duration,
    /// Include the long G2 braid and order checks.
    #[arg(long, env = "LONG")]
    long: bool,
    /// Write the JSON report here.
    #[arg(long, env = "JSON")]
    json: Option<PathBuf>,
    /// Directory for completed rewriting systems.
    #[arg(long, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Exit 0 even when checks were skipped under a budget.
    #[arg(long, env = "ALLOW_SKIP")]
    allow_skip: bool,
    /// Print every row, not only failures and skips.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Case context, e.g. I-B3 or III-A7.
    #[arg(long)]
    case: Option<String>,
    /// Ambient Cartan type without a case, e.g. A2.
    #[arg(long = "type", conflicts_with = "case")]
    ty: Option<String>,
    #[arg(long, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    exprs: Vec<String>,
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (num, mult) = match s.chars().last() {
        Some('K' | 'k') => (&s[..s.len() - 1], 1u64 << 10),
        Some('M' | 'm') => (&s[..s.len() - 1], 1 << 20),
        Some('G' | 'g') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    let n: f64 = num.parse().map_err(|_| format!("invalid size {s:?}"))?;
    if n <= 0.0 {
        return Err(format!("size must be positive, got {s:?}"));
    }
    Ok((n * mult as f64) as u64)
}

fn parse_duration(s: &str) -> Result<Duration, String> {
    let s = s.trim();
    let (num, mult) = match s.chars().last() {
        Some('s') => (&s[..s.len() - 1], 1.0),
        Some('m') => (&s[..s.len() - 1], 60.0),
        Some('h') => (&s[..s.len() - 1], 3600.0),
        _ => (s, 1.0),
    };
    let n: f64 = num.parse().map_err(|_| format!("invalid duration {s:?}"))?;
    if n <= 0.0 {
        return Err(format!("duration must be positive, got {s:?}"));
    }
    Ok(Duration::from_secs_f64(n * mult))
}

fn summary(rep: &Report) -> String {
    format!(
        "{} rows: {} pass, {} fail, {} skipped",
        rep.rows.len(),
        rep.count(Status::Pass),
        rep.count(Status::Fail),
        rep.count(Status::Skipped)
    )
}

fn run(args: RunArgs) -> ExitCode {
    set_default_degree_cap(args.degree_cap);
    set_cache_dir(args.cache_dir.clone());
    let mut cfg = SuiteConfig::new(&args.suite);
    cfg.checks = args.checks.clone();
    cfg.long = args.long;
    cfg.time_budget = Some(args.time_budget);
    cfg.mem_limit = Some(args.mem_limit);
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let t0 = Instant::now();
    let mut last = Instant::now();
    let mut progress = |group: &str, rep: &Report| {
        let suite = rep.rows.first().map(|r| r.suite.as_str()).unwrap_or("-");
        eprintln!("[{:>7.1}s] {suite} {group}: {} ({} ms)", t0.elapsed().as_secs_f64(), summary(rep), last.elapsed().as_millis());
        last = Instant::now();
    };
    let rep = match run_suite(&cfg, &mut progress) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &rep.rows {
        if args.verbose || r.status != Status::Pass {
            let mut line = format!("{:<8} {:<10} {:<12} {}", r.status, r.suite, r.check, r.identity);
            if let Some(d) = r.detail.as_deref().filter(|_| r.status != Status::Pass) {
                line.push_str("  ");
                line.extend(d.chars().take(300));
            }
            println!("{line}");
        }
    }
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, rep.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let code = exit_code(&rep, args.allow_skip);
    println!("{}: {} in {:.1}s, exit {code}", args.suite, summary(&rep), t0.elapsed().as_secs_f64());
    ExitCode::from(code as u8)
}

fn report_error(line: &str, e: &Error) {
    if let Error::Parse { offset, .. } = e {
        eprintln!("  {line}");
        eprintln!("  {}^", " ".repeat(line[..(*offset).min(line.len())].chars().count()));
    }
    eprintln!("error: {e}");
}

fn session(args: &EvalArgs) -> Result<Session, Error> {
    set_cache_dir(args.cache_dir.clone());
    let mut s = Session::new();
    if let Some(c) = &args.case {
        s.set_case(c)?;
    } else if let Some(t) = &args.ty {
        s.set_type(t)?;
    }
    Ok(s)
}

fn eval(args: EvalArgs) -> ExitCode {
    let mut s = match session(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut ok = true;
    for x in &args.exprs {
        match s.eval(x) {
            Ok(v) => println!("{v}"),
            Err(e) => {
                report_error(x, &e);
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn repl(args: EvalArgs) -> ExitCode {
    let mut s = match session(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdin = io::stdin();
    let mut out = io::stdout();
    loop {
        print!("> ");
        let _ = out.flush();
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) => {}
        }
        let line = line.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        if matches!(line.trim(), "quit" | "exit") {
            break;
        }
        match s.eval(line) {
            Ok(v) => println!("{v}"),
            Err(e) => report_error(line, &e),
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Some(Cmd::Eval(a)) => eval(a),
        Some(Cmd::Repl(a)) => repl(a),
        Some(Cmd::List) => {
            for s in SUITE_IDS {
                println!("{s}");
            }
            ExitCode::SUCCESS
        }
        None => run(cli.run),
    }
}
