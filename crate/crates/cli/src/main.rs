//! Command-line front end over fibrep-core. Every subcommand prints a
//! single JSON envelope {command, params, result, elapsed_ms} on stdout
//! with keys sorted and big integers rendered as decimal strings, except
//! where --csv swaps the envelope for bare rows. Exit codes: 0 success,
//! 2 domain error, 3 resource limit, 64 usage, 1 broken invariant.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use fibrep_core::classgroup::class_number;
use fibrep_core::fibonacci::{fib_with_limit, pisano_period, DEFAULT_MAX_FIB_INDEX};
use fibrep_core::fractal::{
    box_dimension, information_dimension, rasterize_fib, BoxParams, DimensionEstimate,
};
use fibrep_core::geometry::cycle_geometry;
use fibrep_core::primality::fibonacci_prime_indices;
use fibrep_core::represent::{
    cornacchia, decompose_fib_p_squared, represent_enumerate, representation_obstruction,
    survey_representable, MAX_ENUMERATE_TARGET,
};
use fibrep_core::symbols::{
    biquadratic_class_parity, verify_fp_congruence, verify_half_index_congruence,
    verify_neighbor_congruences,
};
use fibrep_core::{Error, Result};

/// Environment override for the Fibonacci index ceiling used by `fib`.
const MAX_INDEX_ENV: &str = "FIBREP_MAX_INDEX";

/// Ceiling for `verify --max`; one modular congruence per prime is
/// cheap, but an unbounded sweep is still a footgun.
const MAX_VERIFY_SWEEP: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "fibrep",
    version,
    about = "Fibonacci primes, their quadratic-form representations, and the geometry they trace"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print F_N exactly (negative N follows the negafibonacci rule)
    #[command(allow_negative_numbers = true)]
    Fib { n: i64 },
    /// Print one full cycle of the Fibonacci sequence modulo M
    Pisano { m: u64 },
    /// List indices p <= bound with p and F_p both (probably) prime
    Primes {
        #[arg(long)]
        bound: u64,
    },
    /// Solve m = x^2 + d y^2; --enumerate scans all solutions instead
    Represent {
        #[arg(long)]
        d: u64,
        #[arg(long, value_parser = parse_biguint)]
        m: BigUint,
        #[arg(long)]
        enumerate: bool,
    },
    /// Decompose F_p^2 = x^2 + p y^2 for a prime p = 1 (mod 4)
    #[command(name = "prop21")]
    Prop21 { p: u64 },
    /// Test the representability obstruction for a prime p = 3, 7 (mod 20)
    #[command(name = "prop22")]
    Prop22 { p: u64 },
    /// Survey F_p = x^2 + p y^2 over prime indices p <= bound
    Survey {
        #[arg(long)]
        bound: u64,
        /// Keep only indices p = 1 (mod 4)
        #[arg(long = "index-1-mod-4")]
        index_1_mod_4: bool,
        /// Emit CSV rows (p,fib_digits,fib_is_prime,representable,x,y)
        #[arg(long)]
        csv: bool,
    },
    /// Class number and prime density for the order of discriminant -4N
    Classnum { n: u64 },
    /// Sweep a Fibonacci congruence over all applicable primes <= max
    Verify {
        #[arg(value_enum)]
        target: TheoremId,
        #[arg(long)]
        max: u64,
    },
    /// Parity of the class number of Q(sqrt(-p q)) for primes p, q
    Parity { p: u64, q: u64 },
    /// Planar geometry of selected residues along a Pisano cycle
    Geometry {
        #[arg(long = "mod")]
        modulus: u64,
        /// Comma-separated residues to decompose, e.g. 1,5,0,2
        #[arg(long, value_delimiter = ',', required = true)]
        select: Vec<u64>,
    },
    /// Box or information dimension of a rasterized Fibonacci spiral
    Fracdim {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        width: u32,
        #[arg(long)]
        height: u32,
        #[arg(long = "largest-box", default_value_t = 343.0)]
        largest_box: f64,
        #[arg(long, default_value_t = 1.1)]
        coef: f64,
        /// Grid rotation sweep increment in degrees
        #[arg(long, default_value_t = 15.0)]
        rot: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Emit the regression series as CSV rows (log_d,response)
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremId {
    #[value(name = "thm12")]
    Thm12,
    #[value(name = "thm13")]
    Thm13,
    #[value(name = "thm14")]
    Thm14,
}

impl TheoremId {
    fn name(self) -> &'static str {
        match self {
            TheoremId::Thm12 => "thm12",
            TheoremId::Thm13 => "thm13",
            TheoremId::Thm14 => "thm14",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Box,
    Info,
}

impl KindArg {
    fn name(self) -> &'static str {
        match self {
            KindArg::Box => "box",
            KindArg::Info => "info",
        }
    }
}

fn parse_biguint(s: &str) -> std::result::Result<BigUint, String> {
    s.parse::<BigUint>()
        .map_err(|_| format!("{s:?} is not a nonnegative decimal integer"))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits with 2 by default, which this tool reserves for
            // domain errors; route usage problems to 64 instead.
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli.command) {
        eprintln!("{err}");
        std::process::exit(match err {
            Error::Domain(_) => 2,
            Error::Resource(_) => 3,
            Error::Internal(_) => 1,
        });
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Fib { n } => {
            let limit = fib_index_limit()?;
            let started = Instant::now();
            let value = fib_with_limit(n, limit)?;
            emit("fib", json!({ "n": n }), json!(value.to_string()), started);
        }
        Cmd::Pisano { m } => {
            let started = Instant::now();
            let cycle = pisano_period(m)?;
            emit(
                "pisano",
                json!({ "m": m }),
                json!({
                    "modulus": cycle.modulus,
                    "period": cycle.period,
                    "residues": cycle.residues,
                }),
                started,
            );
        }
        Cmd::Primes { bound } => {
            let started = Instant::now();
            let indices = fibonacci_prime_indices(bound)?;
            emit("primes", json!({ "bound": bound }), json!(indices), started);
        }
        Cmd::Represent { d, m, enumerate } => {
            let params = json!({ "d": d, "enumerate": enumerate, "m": m.to_string() });
            if enumerate {
                let target = u64::try_from(&m).map_err(|_| {
                    Error::Resource(format!(
                        "enumeration target {m} exceeds the {MAX_ENUMERATE_TARGET} ceiling"
                    ))
                })?;
                let started = Instant::now();
                let pairs = represent_enumerate(d, target)?;
                let rows: Vec<Value> = pairs.iter().map(|&(x, y)| json!([x, y])).collect();
                emit("represent", params, json!(rows), started);
            } else {
                let started = Instant::now();
                let witness = cornacchia(&BigUint::from(d), &m)?;
                let result = match witness {
                    Some((x, y)) => json!({ "x": x.to_string(), "y": y.to_string() }),
                    None => Value::Null,
                };
                emit("represent", params, result, started);
            }
        }
        Cmd::Prop21 { p } => {
            let started = Instant::now();
            let rep = decompose_fib_p_squared(p)?;
            emit(
                "prop21",
                json!({ "p": p }),
                json!({
                    "d": rep.d.to_string(),
                    "m": rep.m.to_string(),
                    "x": rep.x.to_string(),
                    "y": rep.y.to_string(),
                }),
                started,
            );
        }
        Cmd::Prop22 { p } => {
            let started = Instant::now();
            let obstructed = representation_obstruction(p)?;
            emit("prop22", json!({ "p": p }), json!(obstructed), started);
        }
        Cmd::Survey {
            bound,
            index_1_mod_4,
            csv,
        } => {
            let started = Instant::now();
            let rows = survey_representable(bound, index_1_mod_4)?;
            if csv {
                println!("p,fib_digits,fib_is_prime,representable,x,y");
                for row in &rows {
                    let (x, y) = row
                        .witness
                        .as_ref()
                        .map(|w| (w.x.to_string(), w.y.to_string()))
                        .unwrap_or_default();
                    println!(
                        "{},{},{},{},{},{}",
                        row.p, row.fib_digits, row.fib_is_prime, row.representable, x, y
                    );
                }
                return Ok(());
            }
            let out: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "p": row.p,
                        "fib_digits": row.fib_digits,
                        "fib_is_prime": row.fib_is_prime,
                        "representable": row.representable,
                        "witness": row.witness.as_ref().map_or(Value::Null, |w| {
                            json!({ "x": w.x.to_string(), "y": w.y.to_string() })
                        }),
                    })
                })
                .collect();
            emit(
                "survey",
                json!({ "bound": bound, "index_1_mod_4": index_1_mod_4 }),
                json!(out),
                started,
            );
        }
        Cmd::Classnum { n } => {
            let started = Instant::now();
            let data = class_number(n)?;
            emit(
                "classnum",
                json!({ "n": n }),
                json!({
                    "density": data.density.to_string(),
                    "discriminant": data.discriminant,
                    "h": data.h,
                    "n": data.n,
                }),
                started,
            );
        }
        Cmd::Verify { target, max } => {
            if max > MAX_VERIFY_SWEEP {
                return Err(Error::Resource(format!(
                    "verify sweeps are capped at --max {MAX_VERIFY_SWEEP}, got {max}"
                )));
            }
            let started = Instant::now();
            let mut checked = 0u64;
            let mut failures: Vec<u64> = Vec::new();
            for p in primes_through(max) {
                let holds = match target {
                    TheoremId::Thm12 => {
                        if p == 2 {
                            continue;
                        }
                        verify_fp_congruence(p)?.holds
                    }
                    TheoremId::Thm13 => {
                        if p == 2 || p == 5 {
                            continue;
                        }
                        let (below, above) = verify_neighbor_congruences(p)?;
                        below.holds && above.holds
                    }
                    TheoremId::Thm14 => {
                        if p == 2 || p == 5 {
                            continue;
                        }
                        verify_half_index_congruence(p)?.holds
                    }
                };
                checked += 1;
                if !holds {
                    failures.push(p);
                }
            }
            emit(
                "verify",
                json!({ "max": max, "target": target.name() }),
                json!({
                    "all_hold": failures.is_empty(),
                    "checked": checked,
                    "failures": failures,
                }),
                started,
            );
        }
        Cmd::Parity { p, q } => {
            let started = Instant::now();
            let parity = biquadratic_class_parity(p, q)?;
            emit(
                "parity",
                json!({ "p": p, "q": q }),
                json!(parity.label()),
                started,
            );
        }
        Cmd::Geometry { modulus, select } => {
            let started = Instant::now();
            let report = cycle_geometry(modulus, &select)?;
            let points: Vec<Value> = report.points.iter().map(|pt| json!([pt.x, pt.y])).collect();
            emit(
                "geometry",
                json!({ "mod": modulus, "select": select }),
                json!({
                    "given_order_length": report.given_order_length,
                    "max_pairwise_distance": report.max_pairwise_distance,
                    "max_path_length": report.max_path_length,
                    "max_path_order": report.max_path_order,
                    "modulus": report.modulus,
                    "points": points,
                    "selection": report.selection,
                }),
                started,
            );
        }
        Cmd::Fracdim {
            a,
            samples,
            width,
            height,
            largest_box,
            coef,
            rot,
            kind,
            csv,
        } => {
            let box_params = BoxParams {
                largest_box_px: largest_box,
                coef,
                rot_increment_deg: rot,
                smallest_box_px: 1.0,
            };
            let started = Instant::now();
            let cloud = rasterize_fib(a, samples, width, height)?;
            let estimate: DimensionEstimate = match kind {
                KindArg::Box => box_dimension(&cloud, &box_params)?,
                KindArg::Info => information_dimension(&cloud, &box_params)?,
            };
            if csv {
                println!("log_d,response");
                for (log_d, response) in &estimate.series {
                    println!("{log_d},{response}");
                }
                return Ok(());
            }
            emit(
                "fracdim",
                json!({
                    "a": a,
                    "coef": coef,
                    "height": height,
                    "kind": kind.name(),
                    "largest_box": largest_box,
                    "rot": rot,
                    "samples": samples,
                    "width": width,
                }),
                json!({
                    "dimension": estimate.dimension,
                    "kind": estimate.kind.label(),
                    "series": estimate.series,
                    "slope": estimate.slope,
                    "stderr": estimate.stderr,
                }),
                started,
            );
        }
    }
    Ok(())
}

/// Index ceiling for `fib`: the crate default unless FIBREP_MAX_INDEX
/// overrides it.
fn fib_index_limit() -> Result<u64> {
    match std::env::var(MAX_INDEX_ENV) {
        Err(_) => Ok(DEFAULT_MAX_FIB_INDEX),
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            Error::Domain(format!(
                "{MAX_INDEX_ENV} must be a nonnegative integer, got {raw:?}"
            ))
        }),
    }
}

fn emit(command: &str, params: Value, result: Value, started: Instant) {
    let envelope = json!({
        "command": command,
        "elapsed_ms": started.elapsed().as_millis() as u64,
        "params": params,
        "result": result,
    });
    println!("{envelope}");
}

fn primes_through(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        for multiple in (p * p..=n).step_by(p) {
            composite[multiple] = true;
        }
    }
    out
}
