use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locoh::scenarios::{self, Outcome, Params, Report};
use locoh::toeplitz::{factor_census, FactorCensus};
use locoh::Error;

#[derive(Parser)]
#[command(name = "locoh", version, about = "Verify local cohomology constructions and emit checkable reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in scenarios.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run scenarios by name, or `all`.
    Run {
        #[arg(required = true)]
        names: Vec<String>,
        /// JSON file of parameter overrides.
        #[arg(long)]
        params: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=64))]
        jobs: u32,
    },
    /// Re-check every certificate in a saved JSON report.
    Reverify {
        report: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Factor census of Q_n(1, t) over GF(p).
    Toeplitz {
        #[arg(long = "n-max", default_value_t = 16)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The p-torsion certificate pipeline on its own.
    Torsion {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        #[arg(long = "k-max")]
        k_max: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Complete transcripts in text output.
    #[arg(long)]
    full: bool,
}

impl Output {
    fn check(&self) -> Result<(), Failure> {
        if self.full && self.format == Format::Json {
            return Err(Failure::Usage("--full applies to text output; JSON is always complete".into()));
        }
        Ok(())
    }
}

#[derive(Args)]
struct Overrides {
    #[arg(long = "k-max")]
    k_max: Option<u32>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    p: Option<u64>,
}

impl Overrides {
    fn params(&self) -> Params {
        Params {
            k_max: self.k_max,
            n_max: self.n_max,
            primes: self.primes.clone(),
            p: self.p,
            ..Params::default()
        }
    }
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::List { format } => {
            let list = scenarios::list_scenarios();
            match format {
                Format::Json => emit(&None, &to_json(&list))?,
                Format::Text => {
                    let text: String = list
                        .iter()
                        .map(|s| format!("{:<22} {}\n", s.name, s.description))
                        .collect();
                    emit(&None, &text)?
                }
            }
            Ok(())
        }
        Command::Run { names, params, overrides, output, jobs } => {
            output.check()?;
            let mut base = match params {
                Some(path) => Params::from_json(&read(&path)?)?,
                None => Params::default(),
            };
            base = base.overlay(&overrides.params());
            let names = expand(names)?;
            for name in &names {
                scenarios::resolve_params(name, &base)?;
            }
            let reports = run_all(&names, &base, jobs as usize)?;
            write_reports(&reports, &output)
        }
        Command::Reverify { report, format } => {
            let text = read(&report)?;
            let reports = parse_reports(&text)?;
            let mut all = true;
            let mut lines = String::new();
            for r in &reports {
                let ok = scenarios::reverify(r)?;
                all &= ok && r.passed;
                lines.push_str(&format!(
                    "{}: certificates {}, recorded verdict {}\n",
                    r.scenario,
                    if ok { "verified" } else { "REJECTED" },
                    if r.passed { "PASS" } else { "FAIL" }
                ));
            }
            match format {
                Format::Text => emit(&None, &lines)?,
                Format::Json => {
                    let v = serde_json::json!({ "verified": all });
                    emit(&None, &(v.to_string() + "\n"))?
                }
            }
            if all {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Toeplitz { n_max, p, output } => {
            output.check()?;
            let params = Params { n_max: Some(n_max), p: Some(p), ..Params::default() };
            scenarios::resolve_params("toeplitz-suite", &params)?;
            let census = factor_census(n_max, p)?;
            match output.format {
                Format::Json => emit(&output.out, &to_json(&census)),
                Format::Text => emit(&output.out, &census_table(&census, output.full)),
            }?;
            if census.s_factor_occurs {
                return Err(Failure::Checks);
            }
            Ok(())
        }
        Command::Torsion { primes, k_max, output } => {
            output.check()?;
            let params = Params { primes: Some(primes), k_max, ..Params::default() };
            let report = scenarios::run_scenario("singh-p-torsion", &params)?;
            write_reports(&[report], &output)
        }
    }
}

fn expand(names: Vec<String>) -> Result<Vec<String>, Failure> {
    if names.iter().any(|n| n == "all") {
        if names.len() > 1 {
            return Err(Failure::Usage("`all` cannot be combined with other names".into()));
        }
        return Ok(scenarios::list_scenarios().iter().map(|s| s.name.to_string()).collect());
    }
    for n in &names {
        scenarios::scenario_info(n)?;
    }
    Ok(names)
}

fn run_all(names: &[String], params: &Params, jobs: usize) -> Result<Vec<Report>, Failure> {
    let slots: Vec<Mutex<Option<locoh::Result<Report>>>> = names.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.min(names.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= names.len() {
                    break;
                }
                let r = scenarios::run_scenario(&names[i], params);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    let mut out = Vec::new();
    for slot in slots {
        out.push(slot.into_inner().unwrap().expect("every slot is filled")?);
    }
    Ok(out)
}

fn write_reports(reports: &[Report], output: &Output) -> Result<(), Failure> {
    let text = match output.format {
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => to_json(&reports),
        Format::Text => reports.iter().map(|r| render(r, output.full)).collect(),
    };
    emit(&output.out, &text)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn parse_reports(text: &str) -> Result<Vec<Report>, Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    if items.is_empty() {
        return Err(Error::MalformedReport("empty report list".into()).into());
    }
    items
        .into_iter()
        .map(|v| Report::from_json(&v.to_string()).map_err(Failure::from))
        .collect()
}

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::Unknown => "UNKNOWN",
    }
}

fn render(r: &Report, full: bool) -> String {
    let required = r.required_checks().count();
    let passing = r.required_checks().filter(|c| c.outcome == Outcome::Pass).count();
    let mut s = format!(
        "{}: {} ({passing}/{required} required checks pass)\n",
        r.scenario,
        if r.passed { "PASS" } else { "FAIL" }
    );
    for c in &r.checks {
        let quiet = c.outcome == Outcome::Pass || !c.required;
        if quiet && !full {
            continue;
        }
        let tag = if c.required { "" } else { " (informational)" };
        s.push_str(&format!(
            "  [{}] {}{tag}: {}\n      expected: {}\n",
            outcome_label(c.outcome),
            c.name,
            c.certificate.summary(),
            c.expected
        ));
        if let Some(m) = &c.diagnostics.message {
            s.push_str(&format!("      {m}\n"));
        }
        if full {
            s.push_str(&format!("      elapsed: {:.1} ms\n", c.elapsed_ms));
            let cert = serde_json::to_string_pretty(&c.certificate).expect("certificate serializes");
            for line in cert.lines() {
                s.push_str(&format!("      {line}\n"));
            }
        }
    }
    if full {
        for n in &r.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
    }
    s
}

fn census_table(c: &FactorCensus, full: bool) -> String {
    let mut s = format!("Q_n(1, t) over GF({}), n = 1..{}\n", c.p, c.n_max);
    let label = if full { "factors" } else { "new factors" };
    s.push_str(&format!("{:>4}  {:>10}  {label}\n", "n", "cumulative"));
    for row in &c.rows {
        let shown = if full { &row.factors } else { &row.new_factors };
        s.push_str(&format!("{:>4}  {:>10}  {}\n", row.n, row.cumulative_count, shown.join(", ")));
    }
    s.push_str(&format!("note: {}\n", c.note));
    s
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}
