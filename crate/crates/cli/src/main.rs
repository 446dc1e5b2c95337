use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use chebycycle::export::{spectrum_json, to_dot, verify_csv};
use chebycycle::{
    build_graph, chebyshev, observed_spectrum, selfloops_p3, verify, BuildOptions, Degree, Error,
    Mismatch, PeriodAux, PeriodRecord, Prime, ResidueClass, RingSpec, VerifyReport, DEFAULT_MAX_STATES,
};

mod sweep;

use sweep::SweepConfig;

const MAX_STATES_ENV: &str = "CHEBY_MAX_STATES";

#[derive(Parser)]
#[command(name = "chebycycle", version, about = "Chebyshev permutation polynomials over Z/2^k and Z/3^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print T_n^i(x) mod p^k.
    Eval(EvalArgs),
    /// Closed-form least period of one state or of every state.
    Period(PeriodArgs),
    /// Functional graph as DOT, or its cycle spectrum as JSON.
    Graph(GraphArgs),
    /// Compare predicted and observed cycle spectra.
    Verify(VerifyArgs),
    /// Fixed points x = +-1 (mod 3) of T_n over Z/3^k.
    Selfloops(SelfloopsArgs),
}

#[derive(Args, Clone, Copy)]
struct RingArgs {
    /// Degree of T_n.
    #[arg(long)]
    n: u64,
    /// Prime, 2 or 3.
    #[arg(long, value_parser = parse_prime)]
    p: Prime,
    /// Exponent k of the modulus p^k.
    #[arg(long)]
    k: u32,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Largest state space to enumerate [env: CHEBY_MAX_STATES] [default: 2^26]
    #[arg(long)]
    max_states: Option<u64>,
    /// Worker threads for the graph build.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    x: u64,
    /// Number of applications of T_n.
    #[arg(long, default_value_t = 1)]
    iters: u64,
    /// Accept degrees that do not permute the ring.
    #[arg(long)]
    allow_any: bool,
}

#[derive(Args)]
struct PeriodArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    x: Option<u64>,
    /// Every state, as CSV with a cycle histogram footer.
    #[arg(long)]
    all: bool,
    /// Also walk each orbit and compare.
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, value_enum, default_value = "dot")]
    format: GraphFormat,
    /// Restrict the JSON spectrum to one residue class.
    #[arg(long, default_value = "all")]
    class: ResidueClass,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    cap: CapArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
    n: Option<u64>,
    #[arg(long, value_parser = parse_prime, required_unless_present = "sweep")]
    p: Option<Prime>,
    #[arg(long, required_unless_present = "sweep")]
    k: Option<u32>,
    /// Sweep configuration file of key=value lines.
    #[arg(long)]
    sweep: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[command(flatten)]
    cap: CapArgs,
}

#[derive(Args)]
struct SelfloopsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u32,
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let p: u64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    Prime::try_from(p).map_err(|e| e.to_string())
}

/// Exit status of a failed command.
enum Failure {
    Mismatch(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // These falsify a prediction rather than reject the input.
            Error::MixedClassCycle { .. } | Error::NonIntegerQ { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Period(a) => cmd_period(a),
        Command::Graph(a) => cmd_graph(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Selfloops(a) => cmd_selfloops(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn ring_of(a: RingArgs) -> Result<(Degree, RingSpec), Failure> {
    Ok((Degree::new(a.n)?, RingSpec::new(a.p, a.k)?))
}

fn require_permutation(n: Degree, p: Prime) -> CmdResult {
    if chebyshev::is_permutation(n.get(), p) {
        Ok(())
    } else {
        Err(Error::NotPermutation { n: n.get(), p }.into())
    }
}

fn build_options(cap: CapArgs) -> Result<BuildOptions, Failure> {
    let max_states = match cap.max_states {
        Some(m) => m,
        None => match std::env::var(MAX_STATES_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{MAX_STATES_ENV} must be a positive integer, got {v:?}")))?,
            Err(_) => DEFAULT_MAX_STATES,
        },
    };
    Ok(BuildOptions::default()
        .with_max_states(max_states)
        .with_workers(cap.workers))
}

fn emit(out: Option<&PathBuf>, text: &str) -> CmdResult {
    let res = match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::Usage(format!("write failed: {e}")))
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let (n, ring) = ring_of(a.ring)?;
    if !a.allow_any {
        require_permutation(n, ring.prime())?;
    }
    ring.check_state(a.x)?;
    println!("{}", chebyshev::iterate(n.get(), a.x, ring.modulus(), a.iters)?);
    Ok(())
}

fn aux_fields(aux: PeriodAux) -> String {
    match aux {
        PeriodAux::Binary { s } => format!("{s},,"),
        PeriodAux::Ternary { l_s, v_s } => format!(",{l_s},{v_s}"),
    }
}

fn cmd_period(a: PeriodArgs) -> CmdResult {
    let (n, ring) = ring_of(a.ring)?;
    require_permutation(n, ring.prime())?;
    let Some(x) = a.x else {
        return period_table(n, ring, a.oracle);
    };
    let r = PeriodRecord::new(n, ring, x, a.oracle)?;
    match r.period_oracle {
        None => println!("{}", r.period_closed),
        Some(o) if o == r.period_closed => println!("{} {o} AGREE", r.period_closed),
        Some(o) => {
            println!("{} {o} DISAGREE", r.period_closed);
            return Err(Failure::Mismatch(String::new()));
        }
    }
    Ok(())
}

fn period_table(n: Degree, ring: RingSpec, oracle: bool) -> CmdResult {
    let cap = build_options(CapArgs {
        max_states: None,
        workers: 1,
    })?;
    if ring.modulus() > cap.max_states {
        return Err(Error::StateSpaceTooLarge {
            states: ring.modulus(),
            cap: cap.max_states,
        }
        .into());
    }
    let mut out = String::from("x,w,s,l_s,v_s,period");
    if oracle {
        out.push_str(",oracle,status");
    }
    out.push('\n');
    let mut states_by_period: BTreeMap<u64, u64> = BTreeMap::new();
    let mut disagreements = 0u64;
    for x in 0..ring.modulus() {
        let r = PeriodRecord::new(n, ring, x, oracle)?;
        let _ = write!(out, "{x},{},{},{}", r.w, aux_fields(r.aux), r.period_closed);
        if let Some(o) = r.period_oracle {
            let ok = o == r.period_closed;
            disagreements += u64::from(!ok);
            let _ = write!(out, ",{o},{}", if ok { "AGREE" } else { "DISAGREE" });
        }
        out.push('\n');
        *states_by_period.entry(r.period_closed).or_default() += 1;
    }
    let hist: Vec<String> = states_by_period
        .iter()
        .map(|(l, c)| format!("{l}:{}", c / l))
        .collect();
    let _ = writeln!(out, "# cycles {{{}}}", hist.join(", "));
    if oracle {
        let _ = writeln!(out, "# disagreements {disagreements}");
    }
    emit(None, &out)?;
    if disagreements > 0 {
        return Err(Failure::Mismatch(format!("{disagreements} states disagree with the oracle")));
    }
    Ok(())
}

fn cmd_graph(a: GraphArgs) -> CmdResult {
    let (n, ring) = ring_of(a.ring)?;
    require_permutation(n, ring.prime())?;
    let opts = build_options(a.cap)?;
    let g = build_graph(n, ring, &opts)?;
    let text = match a.format {
        GraphFormat::Dot => to_dot(&g),
        GraphFormat::Json => {
            let s = observed_spectrum(&g, a.class)?;
            spectrum_json(n, ring, a.class, &s) + "\n"
        }
    };
    emit(a.out.as_ref(), &text)
}

fn report_text(r: &VerifyReport) -> String {
    let mut out = format!(
        "n={} p={} k={} {}\n",
        r.n,
        r.ring.prime(),
        r.ring.exponent(),
        if r.is_match() { "MATCH" } else { "MISMATCH" }
    );
    for c in r.classes.iter().chain(std::iter::once(&r.merged)) {
        let _ = writeln!(out, "  {:<4} predicted {} observed {}", c.class.name(), c.predicted, c.observed);
    }
    for m in &r.mismatches {
        let _ = match m {
            Mismatch::Count {
                class,
                length,
                predicted,
                observed,
            } => writeln!(out, "  mismatch {class} length {length}: predicted {predicted}, observed {observed}"),
            Mismatch::Period {
                state,
                cycle_length,
                closed_form,
            } => writeln!(out, "  mismatch state {state}: cycle length {cycle_length}, closed form {closed_form}"),
        };
    }
    out
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let opts = build_options(a.cap)?;
    if let Some(path) = &a.sweep {
        return run_sweep(path, opts, a.format);
    }
    let (n, p, k) = (a.n.expect("clap"), a.p.expect("clap"), a.k.expect("clap"));
    let n = Degree::new(n)?;
    require_permutation(n, p)?;
    let r = verify(n, p, k, &opts)?;
    let text = match a.format {
        ReportFormat::Text => report_text(&r),
        ReportFormat::Csv => verify_csv(&r),
    };
    emit(None, &text)?;
    if r.is_match() {
        Ok(())
    } else {
        Err(Failure::Mismatch(String::new()))
    }
}

fn run_sweep(path: &PathBuf, opts: BuildOptions, format: ReportFormat) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cfg = SweepConfig::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let tuples = cfg.tuples();
    for &(_, p, k) in &tuples {
        let m = RingSpec::new(p, k)?.modulus();
        if m > opts.max_states {
            return Err(Error::StateSpaceTooLarge {
                states: m,
                cap: opts.max_states,
            }
            .into());
        }
    }
    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let single = opts.with_workers(1);
    let results: Vec<Result<VerifyReport, Error>> = pool.install(|| {
        tuples
            .par_iter()
            .map(|&(n, p, k)| verify(Degree::new(n)?, p, k, &single))
            .collect()
    });

    let (mut matched, mut mismatched, mut failed) = (0u64, 0u64, 0u64);
    let mut stdout = std::io::stdout().lock();
    if matches!(format, ReportFormat::Csv) {
        let _ = writeln!(stdout, "n,p,k,class,length,predicted,observed,match");
    }
    for (&(n, p, k), res) in tuples.iter().zip(results) {
        match res {
            Ok(r) => {
                if r.is_match() {
                    matched += 1;
                } else {
                    mismatched += 1;
                }
                let block = match format {
                    ReportFormat::Text if r.is_match() => format!("n={n} p={p} k={k} MATCH\n"),
                    ReportFormat::Text => report_text(&r),
                    ReportFormat::Csv => verify_csv(&r)
                        .lines()
                        .skip(1)
                        .map(|l| format!("{n},{p},{k},{l}\n"))
                        .collect(),
                };
                let _ = stdout.write_all(block.as_bytes());
                if let Some(dir) = &cfg.out {
                    let file = dir.join(format!("verify_n{n}_p{p}_k{k}.csv"));
                    std::fs::write(&file, verify_csv(&r))
                        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", file.display())))?;
                }
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(stdout, "n={n} p={p} k={k} ERROR {e}");
            }
        }
    }
    let summary = format!(
        "# {} tuples: {matched} match, {mismatched} mismatch, {failed} error\n",
        tuples.len()
    );
    match format {
        ReportFormat::Text => {
            let _ = stdout.write_all(summary.as_bytes());
        }
        ReportFormat::Csv => eprint!("{summary}"),
    }
    if mismatched + failed > 0 {
        Err(Failure::Mismatch(String::new()))
    } else {
        Ok(())
    }
}

fn cmd_selfloops(a: SelfloopsArgs) -> CmdResult {
    let n = Degree::new(a.n)?;
    require_permutation(n, Prime::Three)?;
    let r = selfloops_p3(n, a.k)?;
    let mut out = String::with_capacity(8 * r.len() + 16);
    for x in &r {
        let _ = writeln!(out, "{x}");
    }
    let _ = writeln!(out, "# count {}", r.len());
    emit(None, &out)
}
