use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lchi::config::split_prime_power;
use lchi::{run_command, Command, Format, RunConfig, XiSpec};

#[derive(Parser)]
#[command(
    name = "lchi",
    version,
    about = "Special values of L(chi_t, alpha) over F_q[theta]"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// pi^(q-1) as a Laurent series in 1/theta
    Pi,
    /// zeta(s) for s in --alpha and the special-value checks for k in --k
    Zeta,
    /// L(chi_t, alpha) by direct sum and Euler product, and the product formula at alpha = 1
    Lseries,
    /// lambda_alpha with the forms phi and psi
    Lambda,
    /// g, h, Delta, Goss polynomials G_k for k in --k, and d_2
    Uexp,
    /// L(chi_xi, 1) and its checks for xi in F_{q^r}
    Dirichlet,
    /// Replay every identity on its window; exits 1 on a nonzero residual
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Characteristic
    #[arg(long, global = true, conflicts_with = "q")]
    p: Option<u32>,
    /// q = p^e
    #[arg(long, global = true, conflicts_with = "q")]
    e: Option<u32>,
    /// Size of the constant field (a prime power at most 16)
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Degree r of F_{q^r} for dirichlet
    #[arg(long, global = true, default_value_t = 1)]
    r: u32,
    #[arg(
        long = "prec-theta",
        global = true,
        default_value_t = 24,
        allow_negative_numbers = true
    )]
    prec_theta: i64,
    #[arg(long = "Nt", global = true, default_value_t = 6)]
    nt: usize,
    #[arg(long = "Nu", global = true)]
    nu: Option<usize>,
    /// Degree cutoff of the direct sum and Euler product
    #[arg(long = "D", global = true)]
    d: Option<usize>,
    #[arg(long, global = true, value_delimiter = ',', default_value = "1")]
    alpha: Vec<u32>,
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2")]
    k: Vec<u32>,
    /// "all", or elements separated by ';' given as comma-separated coordinates
    #[arg(long, global = true, default_value = "all")]
    xi: String,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Fmt,
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

fn parse_xi(s: &str) -> Result<XiSpec, String> {
    if s == "all" {
        return Ok(XiSpec::All);
    }
    s.split(';')
        .map(|e| {
            e.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u32>()
                        .map_err(|err| format!("--xi: {err}"))
                })
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(XiSpec::List)
}

fn config(o: Opts) -> Result<RunConfig, String> {
    let (p, e) = match o.q {
        Some(q) => split_prime_power(q).ok_or(format!("--q {q} is not a prime power"))?,
        None => (o.p.unwrap_or(2), o.e.unwrap_or(1)),
    };
    Ok(RunConfig {
        p,
        e,
        ext_r: o.r,
        prec_theta: o.prec_theta,
        nt: o.nt,
        nu: o.nu,
        deg_cutoff: o.d,
        alpha: o.alpha,
        k: o.k,
        xi: parse_xi(&o.xi)?,
        format: match o.format {
            Fmt::Json => Format::Json,
            Fmt::Text => Format::Text,
        },
        cache_dir: o.cache_dir,
        jobs: o.jobs,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = match cli.cmd {
        Cmd::Pi => Command::Pi,
        Cmd::Zeta => Command::Zeta,
        Cmd::Lseries => Command::Lseries,
        Cmd::Lambda => Command::Lambda,
        Cmd::Uexp => Command::Uexp,
        Cmd::Dirichlet => Command::Dirichlet,
        Cmd::Verify => Command::Verify,
    };
    let result = config(cli.opts)
        .map_err(lchi::RunError::Usage)
        .and_then(|cfg| run_command(cmd, &cfg));
    let mut out = std::io::stdout().lock();
    match result {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let lchi::RunError::Verify { output, .. } = &e {
                let _ = out.write_all(output.as_bytes());
            }
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
