use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hhfrac::bounds::{c1, c2, c4, c5, k_consts, lambda_consts, mu_consts, ParamSet};
use hhfrac::convexity::{certify, power_abs_derivative, CertStatus, ConvexityClass, DEFAULT_BUDGET};
use hhfrac::harness::report::{json_string, write_csv_path, write_json_path};
use hhfrac::harness::{
    corpus_function, verify_theorem, CertSummary, HarnessOptions, RecordStatus, SweepConfig,
    SweepSummary, TheoremId, VerificationRecord, DEFAULT_SEED,
};
use hhfrac::{FractionalOrder, Interval, QuadratureSpec, Result};

#[derive(Parser)]
#[command(
    name = "hhfrac",
    version,
    about = "Numerical verification of fractional Hermite-Hadamard type bounds \
             for functions with harmonically convex derivative powers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the closed-form bound constants at one parameter point.
    Constants(ConstantsCmd),
    /// Certify a corpus function, or its |f'|^q, against a convexity class.
    Certify(CertifyCmd),
    /// Verify a single theorem bound at one parameter point.
    Verify(VerifyCmd),
    /// Run a parameter-grid sweep and write CSV/JSON reports.
    Sweep(SweepCmd),
    /// Check the two-sided sandwich on the fractional mean of a function.
    Sandwich(SandwichCmd),
}

#[derive(Args)]
struct ConstantsCmd {
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Exponent for the mu and K families; both need q > 1.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CertifyCmd {
    /// Corpus function name; see `sweep --print-config` for the grids.
    #[arg(long)]
    function: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Certify |f'|^q instead of f itself.
    #[arg(long)]
    q: Option<f64>,
    /// Left end of the sampled region.
    #[arg(long)]
    a: f64,
    /// Right end of the sampled region.
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyCmd {
    /// One of thm4..thm9.
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    function: String,
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepCmd {
    /// TOML config; defaults cover the full grid when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV report path (overrides the config).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// JSON report path (overrides the config).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Print the effective configuration as TOML and exit.
    #[arg(long)]
    print_config: bool,
}

#[derive(Args)]
struct SandwichCmd {
    #[arg(long)]
    function: String,
    #[arg(long)]
    theta: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (`hhfrac constants | head`) like any
    // other filter instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Constants(cmd) => run_constants(cmd),
        Cmd::Certify(cmd) => run_certify(cmd),
        Cmd::Verify(cmd) => run_verify(cmd),
        Cmd::Sweep(cmd) => run_sweep_cmd(cmd),
        Cmd::Sandwich(cmd) => run_sandwich(cmd),
    }
}

fn print_map(map: &BTreeMap<String, f64>, json: bool) -> Result<()> {
    if json {
        println!("{}", json_string(map)?);
    } else {
        for (k, v) in map {
            println!("{k} = {v:.16e}");
        }
    }
    Ok(())
}

fn run_constants(cmd: ConstantsCmd) -> Result<ExitCode> {
    let iv = Interval::new(cmd.a, cmd.b)?;
    let theta = FractionalOrder::new(cmd.theta)?;
    let mut out = BTreeMap::new();
    let (l1, l2, l3) = lambda_consts(&iv)?;
    out.insert("lambda1".to_string(), l1);
    out.insert("lambda2".to_string(), l2);
    out.insert("lambda3".to_string(), l3);
    if cmd.q > 1.0 {
        let (m1, m2) = mu_consts(&iv, cmd.q)?;
        out.insert("mu1".to_string(), m1);
        out.insert("mu2".to_string(), m2);
        let p = cmd.q / (cmd.q - 1.0);
        let (k1, k2) = k_consts(theta, p, &iv)?;
        out.insert("K1".to_string(), k1.value);
        out.insert("K2".to_string(), k2.value);
    }
    let one = c1(theta, &iv)?;
    let two = c2(theta, cmd.alpha, &iv)?;
    out.insert("C3".to_string(), one.value - two.value);
    out.insert("C1".to_string(), one.value);
    out.insert("C2".to_string(), two.value);
    if cmd.theta <= 1.0 {
        let four = c4(theta, &iv)?;
        let five = c5(theta, cmd.alpha, &iv)?;
        out.insert("C6".to_string(), four.value - five.value);
        out.insert("C4".to_string(), four.value);
        out.insert("C5".to_string(), five.value);
    }
    print_map(&out, cmd.json)?;
    Ok(ExitCode::SUCCESS)
}

fn run_certify(cmd: CertifyCmd) -> Result<ExitCode> {
    let f = corpus_function(&cmd.function)?;
    let region = Interval::new(cmd.a, cmd.b)?;
    let cls = ConvexityClass::harmonically_alpha_m(cmd.alpha, cmd.m)?;
    let result = match cmd.q {
        Some(q) => {
            let target = power_abs_derivative(&f, q)?;
            certify(|x| target(x), f.domain(), &cls, &region, cmd.budget, cmd.seed)?
        }
        None => certify(|x| f.eval(x), f.domain(), &cls, &region, cmd.budget, cmd.seed)?,
    };
    let summary = CertSummary::of(&cls, &result);
    if cmd.json {
        println!("{}", json_string(&summary)?);
    } else {
        let target = match cmd.q {
            Some(q) => format!("|{}'|^{q}", f.name()),
            None => f.name().to_string(),
        };
        println!("target         = {target}");
        println!("class          = {}", summary.class);
        println!("status         = {}", summary.status);
        println!("samples        = {}", summary.samples);
        println!("skipped        = {}", summary.skipped);
        println!("max_violation  = {:.16e}", summary.max_violation);
        if let Some(w) = summary.witness {
            println!("witness        = x {:.16e}, y {:.16e}, t {:.16e}", w.x, w.y, w.t);
        }
        if summary.convention_dependent {
            println!("note           = verdict depends on the 0^0 = 1 convention");
        }
    }
    Ok(if result.status == CertStatus::Fail { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn print_record(rec: &VerificationRecord, json: bool) -> Result<()> {
    if json {
        println!("{}", json_string(rec)?);
        return Ok(());
    }
    println!("theorem   = {}", rec.theorem);
    println!("function  = {}", rec.function);
    println!(
        "point     = theta {}, alpha {}, m {}, a {}, b {}, q {}",
        rec.theta, rec.alpha, rec.m, rec.a, rec.b, rec.q
    );
    println!("status    = {}", rec.status);
    if let Some(v) = rec.lhs {
        println!("lhs       = {v:.16e}");
    }
    if let Some(v) = rec.bound {
        println!("bound     = {v:.16e}");
    }
    if let Some(v) = rec.slack {
        println!("slack     = {v:.16e}");
    }
    if let Some(v) = rec.lemma_gap {
        println!("lemma_gap = {v:.16e}");
    }
    if let Some(cert) = &rec.cert {
        println!(
            "cert      = {} {} (samples {}, skipped {}, max violation {:.3e})",
            cert.class, cert.status, cert.samples, cert.skipped, cert.max_violation
        );
        if let Some(w) = cert.witness {
            println!("witness   = x {:.16e}, y {:.16e}, t {:.16e}", w.x, w.y, w.t);
        }
    }
    for (name, value) in &rec.constants {
        println!("constant  {name} = {value:.16e}");
    }
    if let Some(note) = &rec.note {
        println!("note      = {note}");
    }
    Ok(())
}

fn exit_for(rec: &VerificationRecord) -> ExitCode {
    if rec.status == RecordStatus::Violated {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<ExitCode> {
    let id: TheoremId = cmd.theorem.parse()?;
    let f = corpus_function(&cmd.function)?;
    let ps = ParamSet::new(
        FractionalOrder::new(cmd.theta)?,
        cmd.alpha,
        cmd.m,
        Interval::new(cmd.a, cmd.b)?,
        cmd.q,
    )?;
    let opts = HarnessOptions {
        quad: QuadratureSpec {
            abs_tol: cmd.abs_tol,
            rel_tol: cmd.rel_tol,
            ..QuadratureSpec::default()
        },
        budget: cmd.budget,
        seed: cmd.seed,
    };
    let rec = verify_theorem(id, &ps, &f, &opts);
    print_record(&rec, cmd.json)?;
    Ok(exit_for(&rec))
}

fn run_sweep_cmd(cmd: SweepCmd) -> Result<ExitCode> {
    let mut cfg = match &cmd.config {
        Some(path) => SweepConfig::from_path(path)?,
        None => SweepConfig::default(),
    };
    if cmd.csv.is_some() {
        cfg.csv = cmd.csv.clone();
    }
    if cmd.json.is_some() {
        cfg.json = cmd.json.clone();
    }
    if cmd.print_config {
        let text = toml::to_string(&cfg)
            .map_err(|e| hhfrac::Error::Config(format!("config encode: {e}")))?;
        print!("{text}");
        return Ok(ExitCode::SUCCESS);
    }
    let records = hhfrac::harness::run_sweep(&cfg)?;
    if let Some(path) = &cfg.csv {
        write_csv_path(&records, path)?;
        eprintln!("wrote {}", path.display());
    }
    if let Some(path) = &cfg.json {
        write_json_path(&records, path)?;
        eprintln!("wrote {}", path.display());
    }
    let summary = SweepSummary::of(&records);
    println!("{summary}");
    Ok(if summary.violated > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn run_sandwich(cmd: SandwichCmd) -> Result<ExitCode> {
    let f = corpus_function(&cmd.function)?;
    let ps = ParamSet::new(
        FractionalOrder::new(cmd.theta)?,
        1.0,
        1.0,
        Interval::new(cmd.a, cmd.b)?,
        1.0,
    )?;
    let opts = HarnessOptions {
        budget: cmd.budget,
        seed: cmd.seed,
        ..HarnessOptions::default()
    };
    let rec = verify_theorem(TheoremId::Thm4, &ps, &f, &opts);
    print_record(&rec, cmd.json)?;
    Ok(exit_for(&rec))
}
