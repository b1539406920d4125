//! Command-line arguments and their validation.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use origami_sv_core::arith::is_prime;
use origami_sv_core::geodesics::LengthBound;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantsMode {
    /// Enumerated orbits up to `--exact-max`, closed-form sizes above.
    Auto,
    /// Always enumerate the orbits.
    Exact,
    /// Always use the closed-form orbit sizes.
    ClosedForm,
}

pub const DEFAULT_MAX_ORBIT_SIZE: usize = 2_000_000;
pub const DEFAULT_MAX_DIRECTIONS: u64 = 4_000_000;
pub const DEFAULT_MAX_SIEVE: usize = 2_000_000;

#[derive(Debug, Clone, Parser)]
#[command(name = "origami-sv", version, about = "Siegel-Veech constants of square-tiled surfaces in H(2)")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Worker threads; 0 uses every available core. Output does not depend on it.
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Primitive SL(2,Z)-orbits of n-square surfaces, with their cusps.
    Orbits(OrbitsArgs),
    /// Cusps of the orbit of one surface, or of every primitive orbit for n.
    Cusps(CuspsArgs),
    /// The constants c̃ of the two orbits for each prime.
    Constants(ConstantsArgs),
    /// The divisor sums S, S^ow, S^oh, S^eo for each prime.
    Sums(SumsArgs),
    /// Brute-force cylinder counts on one surface.
    Geodesics(GeodesicsArgs),
    /// Enumerated against parametric constants for every prime up to a bound.
    Limits(LimitsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orbits(_) => "orbits",
            Command::Cusps(_) => "cusps",
            Command::Constants(_) => "constants",
            Command::Sums(_) => "sums",
            Command::Geodesics(_) => "geodesics",
            Command::Limits(_) => "limits",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OrbitsArgs {
    /// Number of squares.
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ORBIT_SIZE)]
    pub max_orbit_size: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("input").required(true).args(["n", "origami", "coords"])))]
pub struct CuspsArgs {
    /// Every primitive orbit with this many squares.
    #[arg(long)]
    pub n: Option<u64>,
    /// Surface in JSON: {"n":3,"sigma_h":[1,0,2],"sigma_v":[2,1,0]}.
    #[arg(long, value_name = "FILE")]
    pub origami: Option<PathBuf>,
    /// Two-cylinder coordinates in JSON: {"a":1,"b":2,"h":1,"y":1,"t1":0,"t2":0}.
    #[arg(long, value_name = "FILE")]
    pub coords: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORBIT_SIZE)]
    pub max_orbit_size: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstantsArgs {
    /// Comma-separated primes greater than 3.
    #[arg(long, value_delimiter = ',', required = true)]
    pub prime_list: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ConstantsMode::Auto)]
    pub mode: ConstantsMode,
    /// Largest prime enumerated in auto mode.
    #[arg(long, default_value_t = 31)]
    pub exact_max: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ORBIT_SIZE)]
    pub max_orbit_size: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SumsArgs {
    /// Comma-separated odd primes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub prime_list: Vec<u64>,
    /// Largest divisor-sum table allowed.
    #[arg(long, default_value_t = DEFAULT_MAX_SIEVE)]
    pub max_sieve: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("input").required(true).args(["origami", "coords"])))]
pub struct GeodesicsArgs {
    #[arg(long, value_name = "FILE")]
    pub origami: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub coords: Option<PathBuf>,
    /// Comma-separated length bounds in decimal notation.
    #[arg(long, value_delimiter = ',', required = true)]
    pub length: Vec<String>,
    /// Relative tolerance for the comparison with the predicted coefficient.
    #[arg(long, default_value_t = 0.1)]
    pub tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_DIRECTIONS)]
    pub max_directions: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ORBIT_SIZE)]
    pub max_orbit_size: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LimitsArgs {
    /// Largest n considered.
    #[arg(long)]
    pub max_prime: u64,
    /// Also list composite n (enumerated constants only).
    #[arg(long)]
    pub include_nonprime: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ORBIT_SIZE)]
    pub max_orbit_size: usize,
}

fn invalid(msg: String) -> CliError {
    CliError::Validation(msg)
}

impl GeodesicsArgs {
    pub fn lengths(&self) -> Result<Vec<LengthBound>, CliError> {
        self.length
            .iter()
            .map(|s| {
                let l: LengthBound = s.trim().parse().map_err(|e| invalid(format!("--length: {e}")))?;
                if l.as_f64() <= 0.0 {
                    return Err(invalid("--length must be positive".into()));
                }
                Ok(l)
            })
            .collect()
    }
}

impl RunConfig {
    /// Checks every argument before any computation starts.
    pub fn validate(&self) -> Result<(), CliError> {
        match &self.command {
            Command::Orbits(a) => {
                if a.n < 3 {
                    return Err(invalid(format!("--n must be at least 3, got {}", a.n)));
                }
            }
            Command::Cusps(a) => {
                if let Some(n) = a.n {
                    if n < 3 {
                        return Err(invalid(format!("--n must be at least 3, got {n}")));
                    }
                }
            }
            Command::Constants(a) => {
                for &p in &a.prime_list {
                    if p <= 3 || !is_prime(p) {
                        return Err(invalid(format!("--prime-list entries must be primes > 3, got {p}")));
                    }
                }
            }
            Command::Sums(a) => {
                for &p in &a.prime_list {
                    if p < 3 || !is_prime(p) {
                        return Err(invalid(format!("--prime-list entries must be odd primes, got {p}")));
                    }
                }
                let max = a.prime_list.iter().copied().max().unwrap_or(0);
                if max as usize > a.max_sieve {
                    return Err(CliError::Resource(format!(
                        "prime {max} needs a divisor-sum table beyond --max-sieve {}",
                        a.max_sieve
                    )));
                }
            }
            Command::Geodesics(a) => {
                a.lengths()?;
                if a.tolerance.is_nan() || a.tolerance <= 0.0 {
                    return Err(invalid("--tolerance must be positive".into()));
                }
            }
            Command::Limits(a) => {
                if a.max_prime < 5 {
                    return Err(invalid(format!("--max-prime must be at least 5, got {}", a.max_prime)));
                }
            }
        }
        Ok(())
    }

    /// The part of the configuration that determines the output.
    pub fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(&self.command).unwrap_or(serde_json::Value::Null);
        if let Some(map) = v.as_object_mut() {
            map.insert("format".into(), serde_json::to_value(self.format).unwrap_or_default());
        }
        v
    }
}
