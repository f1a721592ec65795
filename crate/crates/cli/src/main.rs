use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use squarepaths_core::checks::{run_check, CheckId, CheckSpec};
use squarepaths_core::paths::{par_records, SecondaryRule};
use squarepaths_core::schedules::{
    pref_all_l_closed_form, pref_closed_form, RunDecomposition, ScheduleData,
};
use squarepaths_core::symfunc::e_nk;
use squarepaths_core::{stats, Census, Error, Perm, PrefFunc};

#[derive(Parser)]
#[command(
    name = "squarepaths",
    version,
    about = "Square paths and preference functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the statistics record of one preference function.
    Stats {
        /// Preference vector, e.g. 1,5,1,2,1
        f: String,
    },
    /// Stream records of every preference function on N cars.
    Enumerate(EnumerateArgs),
    /// Run a registered identity check (or `all`).
    Check(CheckArgs),
    /// Emit a CSV table.
    Table(TableArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    n: usize,
    #[arg(long)]
    parking_only: bool,
    #[arg(long)]
    diagword: Option<String>,
    #[arg(long)]
    deviation: Option<u32>,
    #[arg(long)]
    touch: Option<u32>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Largest n accepted; 8 must be asked for explicitly.
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u8).range(1..=8))]
    max_n: u8,
}

#[derive(Args)]
struct CheckArgs {
    id: String,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, value_parser = parse_range)]
    n: Option<(usize, usize)>,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    max: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Include wall time in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long, hide = true)]
    mutate_secondary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Schedules,
    Polynomials,
    Enk,
}

#[derive(Args)]
struct TableArgs {
    kind: TableKind,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

enum Failure {
    Usage(String),
    Violation(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(msg) => Failure::Violation(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Stats { f } => cmd_stats(&f, &mut out),
        Command::Enumerate(args) => cmd_enumerate(&args, &mut out),
        Command::Check(args) => cmd_check(&args, &mut out),
        Command::Table(args) => cmd_table(&args, &mut out),
    };
    let result = result.and_then(|ok| {
        out.flush()?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_perm(s: &str) -> Result<Perm, Failure> {
    s.parse::<Perm>().map_err(Failure::from)
}

fn cmd_stats(f: &str, out: &mut impl Write) -> Outcome {
    let f: PrefFunc = f.parse()?;
    writeln!(out, "{}", stats(&f).to_json_line())?;
    Ok(true)
}

fn cmd_enumerate(args: &EnumerateArgs, out: &mut impl Write) -> Outcome {
    let diagword = args.diagword.as_deref().map(parse_perm).transpose()?;
    if let Some(t) = &diagword {
        if t.len() != args.n {
            return Err(Failure::Usage(format!(
                "--diagword {t} has length != {}",
                args.n
            )));
        }
    }
    let records = par_records(args.n, args.max_n as usize, args.threads, |r| {
        (!args.parking_only || r.is_parking())
            && diagword.as_ref().is_none_or(|t| &r.diagword == t)
            && args.deviation.is_none_or(|d| r.deviation == d)
            && args.touch.is_none_or(|k| r.touch == k)
    })?;
    for r in records {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(true)
}

fn cmd_check(args: &CheckArgs, out: &mut impl Write) -> Outcome {
    let ids: Vec<CheckId> = if args.id == "all" {
        CheckId::ALL.to_vec()
    } else {
        vec![args.id.parse()?]
    };
    let tau = args.tau.as_deref().map(parse_perm).transpose()?;
    let mut all_pass = true;
    for id in ids {
        let mut spec = CheckSpec::new(id);
        if let Some((a, b)) = args.n {
            spec.n_min = a;
            spec.n_max = b;
        }
        spec.tau = tau.clone();
        spec.l = args.l;
        if let Some(m) = args.max {
            spec.max = m;
        }
        if let Some(s) = args.samples {
            spec.samples = s;
        }
        spec.seed = args.seed;
        spec.threads = args.threads;
        if args.mutate_secondary {
            spec.rule = SecondaryRule::GapTwo;
        }
        let report = run_check(&spec)?;
        writeln!(out, "{}", report.to_json(args.timing))?;
        all_pass &= report.pass;
    }
    Ok(all_pass)
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_table(args: &TableArgs, out: &mut impl Write) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    let ok = match args.kind {
        TableKind::Schedules => {
            let tau = parse_perm(
                args.tau
                    .as_deref()
                    .ok_or_else(|| Failure::Usage("table schedules needs --tau".into()))?,
            )?;
            table_schedules(&tau, args.threads, &mut w)?
        }
        TableKind::Polynomials => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("table polynomials needs --n".into()))?;
            table_polynomials(n, args.threads, &mut w)?
        }
        TableKind::Enk => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("table enk needs --n".into()))?;
            w.write_record(["n", "k", "expansion"])?;
            for (i, e) in e_nk(n)?.iter().enumerate() {
                w.write_record([n.to_string(), (i + 1).to_string(), e.to_json()])?;
            }
            true
        }
    };
    w.flush()?;
    Ok(ok)
}

fn table_schedules<W: Write>(
    tau: &Perm,
    threads: usize,
    w: &mut csv::Writer<W>,
) -> Result<bool, Failure> {
    let census = Census::build(tau.len(), threads)?;
    let data = ScheduleData::new(tau);
    let rd = RunDecomposition::new(tau);
    let rho: Vec<usize> = rd.rho_listed();
    w.write_record([
        "tau",
        "l",
        "maj",
        "rho",
        "schedule",
        "along_tau",
        "multiset",
        "closed_form",
        "brute_force",
        "match",
    ])?;
    let mut all = true;
    for l in 0..rd.num_runs() {
        let along: Vec<String> = data.wl_by_run(l).iter().map(|run| joined(run)).collect();
        let mut multiset = data.wl[l].clone();
        multiset.sort_unstable();
        let closed = pref_closed_form(tau, l)?;
        let brute = census.qt_sum(tau, Some(l as u32));
        let ok = closed == brute;
        all &= ok;
        w.write_record([
            tau.to_string(),
            l.to_string(),
            data.maj.to_string(),
            joined(&rho),
            if l == 0 {
                joined(&data.w0)
            } else {
                joined(&data.wl[l])
            },
            along.join("|"),
            joined(&multiset),
            closed.to_string(),
            brute.to_string(),
            ok.to_string(),
        ])?;
    }
    Ok(all)
}

fn table_polynomials<W: Write>(
    n: usize,
    threads: usize,
    w: &mut csv::Writer<W>,
) -> Result<bool, Failure> {
    let census = Census::build(n, threads)?;
    w.write_record(["tau", "l", "closed_form", "brute_force", "match"])?;
    let mut all = true;
    for tau in Perm::all(n) {
        let mut row = |l: String, closed: String, brute: String, ok: bool| {
            all &= ok;
            w.write_record([tau.to_string(), l, closed, brute, ok.to_string()])
        };
        for l in 0..tau.runs().len() {
            let closed = pref_closed_form(&tau, l)?;
            let brute = census.qt_sum(&tau, Some(l as u32));
            row(
                l.to_string(),
                closed.to_string(),
                brute.to_string(),
                closed == brute,
            )?;
        }
        let closed = pref_all_l_closed_form(&tau)?;
        let brute = census.qt_sum(&tau, None);
        let ok = closed.to_poly().as_ref() == Some(&brute);
        let shown = closed
            .to_poly()
            .map_or_else(|| closed.to_string(), |p| p.to_string());
        row("all".into(), shown, brute.to_string(), ok)?;
    }
    Ok(all)
}
