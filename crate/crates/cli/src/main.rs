mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use hyperising::Config;
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "hyperising", version, about = "Partition functions and Lee-Yang zeros of hypergraph Ising models")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = "HYPERISING_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Largest connected-set size the coefficient tables may reach
    #[arg(long, global = true, env = "HYPERISING_M_CAP", default_value_t = Config::default().m_cap)]
    pub m_cap: usize,
    /// Largest Taylor truncation order
    #[arg(long, global = true, env = "HYPERISING_SERIES_CAP", default_value_t = Config::default().series_cap)]
    pub series_cap: usize,
    /// Largest number of label sets the enumerator may hold
    #[arg(long, global = true, env = "HYPERISING_MEMORY_CAP", default_value_t = Config::default().memory_cap)]
    pub memory_cap: usize,
    /// Largest vertex count for brute-force evaluation
    #[arg(long, global = true, env = "HYPERISING_ORACLE_CAP", default_value_t = Config::default().oracle_cap)]
    pub oracle_cap: usize,
    /// Allowed ||r| - 1| when certifying zeros on the unit circle
    #[arg(long, global = true, env = "HYPERISING_TOL_CIRCLE", default_value_t = Config::default().tol_circle)]
    pub tol_circle: f64,
    /// Allowed |Z(r)| / max|c_j| for reported roots
    #[arg(long, global = true, env = "HYPERISING_TOL_RESIDUAL", default_value_t = Config::default().tol_residual)]
    pub tol_residual: f64,
    /// Seed for generated instances
    #[arg(long, global = true, env = "HYPERISING_SEED", default_value_t = 0)]
    pub seed: u64,
}

impl GlobalOpts {
    pub fn config(&self) -> Config {
        Config {
            oracle_cap: self.oracle_cap,
            m_cap: self.m_cap,
            series_cap: self.series_cap,
            memory_cap: self.memory_cap,
            tol_circle: self.tol_circle,
            tol_residual: self.tol_residual,
        }
    }
}

/// Parses `re,im` or `re`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("invalid number {p:?}: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected \"re,im\" or \"re\", got {s:?}")),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(z)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate Z(lambda) by the truncated log-series
    Approx {
        input: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long)]
        epsilon: f64,
    },
    /// Exact coefficients by brute force, optionally Z at a point
    Exact {
        input: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Option<Complex64>,
    },
    /// Roots of Z and their distance from the unit circle
    Zeros { input: PathBuf },
    /// Per-edge Lee-Yang verdicts
    CheckRange { input: PathBuf },
    /// Connected label sets up to size t
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        t: usize,
        /// Also list the sets
        #[arg(long)]
        sets: bool,
    },
    /// Power sums p_1..p_m and elementary values e_1..e_m
    Coeffs {
        input: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Off-circle root of beta(1+z)^k + (1-beta)(1+z^k)
    TightExample {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
    /// Zero locations on random connected instances (exploratory)
    Sweep {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 4)]
        max_edge_size: usize,
        /// Sample beta uniformly from [lo, hi] instead of the Lee-Yang range
        #[arg(long, allow_hyphen_values = true, requires = "beta_hi")]
        beta_lo: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "beta_lo")]
        beta_hi: Option<f64>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.global.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global()
        {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_flags() {
        assert_eq!(parse_complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert_eq!(parse_complex("-1e-1, 2").unwrap(), Complex64::new(-0.1, 2.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("inf").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
