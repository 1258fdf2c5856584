//! `fptool`: F-pure thresholds, F-thresholds and syzygy gap fractals of
//! binary forms over finite fields.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpt_core::arith::{format_rational, parse_rational, Rational};
use fpt_core::fpt::{
    fpt_homogeneous, fpt_quasi_homogeneous, ft_general, nu_oracle, FtConfig, QuasiHomogeneousInput,
};
use fpt_core::fractal::{
    delta_image, grid_sweep, is_critical, region_image, staircase_image, staircase_slice,
    write_csv, GridBox, GridPoint, LinearSystem,
};
use fpt_core::gf::Field;
use fpt_core::parse::{parse_field_spec, parse_form, parse_form_list, parse_sparse};
use fpt_core::poly::{factor_linear_seeded, DEFAULT_SEED};
use fpt_core::syzygy::TwoGenIdeal;
use fpt_core::Error;
use num_bigint::BigUint;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "fptool", version, about = "F-pure thresholds of binary forms over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Digits examined before settling for a certified interval.
    #[arg(long, global = true, env = "FPT_E_MAX", default_value_t = fpt_core::fpt::DEFAULT_E_MAX)]
    e_max: u32,
    /// Seed for randomized root finding.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest number of grid evaluations.
    #[arg(long, global = true, env = "FPT_CELL_CAP", default_value_t = fpt_core::fractal::DEFAULT_CELL_CAP)]
    cell_cap: usize,
    /// Cross-check trivial-region answers against the ν oracle.
    #[arg(long, global = true)]
    debug_oracle: bool,
    /// Include every truncation tested in the JSON output.
    #[arg(long, global = true)]
    trace: bool,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// F-pure threshold of a homogeneous or quasi-homogeneous polynomial.
    Fpt {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        /// Weights `u,v` of x and y.
        #[arg(long)]
        weights: Option<String>,
    },
    /// F-threshold of a product of linear forms with respect to an ideal.
    Ft {
        #[arg(long)]
        field: String,
        /// Comma separated linear forms.
        #[arg(long)]
        ell: String,
        /// Comma separated multiplicities.
        #[arg(long)]
        a: String,
        /// Two comma separated generators; defaults to `x,y`.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Splits a form into linear factors.
    Factor {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Critical points `a/q` inside a box.
    Critical {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Evaluates the fractal on a box; three forms with PGM output give the
    /// slice picture.
    Grid {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, value_enum, default_value_t = Format::Pgm)]
        format: Format,
        /// Write P5 instead of P2.
        #[arg(long)]
        binary: bool,
        /// What a two-dimensional picture shows.
        #[arg(long, value_enum, default_value_t = Picture::Region)]
        picture: Picture,
    },
    /// Boundary cells of the slice `‖t‖ = deg UV` for three forms.
    Staircase {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, value_enum, default_value_t = Format::Pgm)]
        format: Format,
        #[arg(long)]
        binary: bool,
    },
    /// Table of ν(p^e) for e = 1..E.
    Oracle {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 2)]
        e: u32,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    ell: String,
    #[arg(long)]
    ideal: Option<String>,
    /// Denominator, a power of p.
    #[arg(long)]
    q: u64,
    /// Per-coordinate ranges `lo:hi` in units of 1, e.g. `0:1,0:1`.
    #[arg(long)]
    r#box: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Pgm,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Picture {
    Region,
    Delta,
}

const VARS: (&str, &str) = ("x", "y");

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Engine(Error::Domain(msg.into()))
}

fn ideal(spec: Option<&str>, k: &Field) -> Result<TwoGenIdeal, Failure> {
    let Some(spec) = spec else {
        return Ok(TwoGenIdeal::maximal(k));
    };
    let gens = parse_form_list(spec, k, VARS)?;
    let [u, v]: [_; 2] = gens
        .try_into()
        .map_err(|_| usage("an ideal needs exactly two generators"))?;
    Ok(TwoGenIdeal::new(u, v)?)
}

fn pair(spec: &str, what: &str) -> Result<(u64, u64), Failure> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(usage(format!("{what} must be two naturals, got {spec:?}"))),
        },
        _ => Err(usage(format!("{what} must be two naturals, got {spec:?}"))),
    }
}

fn exponent_of(q: u64, p: u64) -> Result<u32, Failure> {
    let mut e = 0;
    let mut r = 1u64;
    while r < q {
        r = r.checked_mul(p).ok_or_else(|| usage("q overflows"))?;
        e += 1;
    }
    if r != q {
        return Err(usage(format!("q = {q} is not a power of p = {p}")));
    }
    Ok(e)
}

struct Sweep {
    ell: LinearSystem,
    b: TwoGenIdeal,
    p: u64,
    e: u32,
    q: u64,
    bx: GridBox,
}

fn sweep_setup(s: &SweepArgs) -> Result<Sweep, Failure> {
    let k = parse_field_spec(&s.field)?;
    let ell = LinearSystem::from_forms(&parse_form_list(&s.ell, &k, VARS)?)?;
    let b = ideal(s.ideal.as_deref(), &k)?;
    let p = k.p();
    let e = exponent_of(s.q, p)?;
    let qr = Rational::from_integer(s.q.into());
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for range in s.r#box.split(',') {
        let (a, b) = range
            .split_once(':')
            .ok_or_else(|| usage(format!("box entry {range:?} is not lo:hi")))?;
        let (a, b) = (parse_rational(a.trim())?, parse_rational(b.trim())?);
        let to_u64 = |r: Rational| -> Result<u64, Failure> {
            u64::try_from(r.to_integer()).map_err(|_| usage("box bounds must be nonnegative"))
        };
        lo.push(to_u64((a * &qr).ceil())?);
        hi.push(to_u64((b * &qr).floor())?);
    }
    if lo.len() != ell.len() {
        return Err(usage(format!("box has {} ranges for {} forms", lo.len(), ell.len())));
    }
    Ok(Sweep { ell, b, p, e, q: s.q, bx: GridBox { lo, hi, e } })
}

fn config(o: &Opts) -> FtConfig {
    FtConfig {
        e_max: o.e_max,
        seed: o.seed,
        debug_oracle: o.debug_oracle,
        trace: o.trace,
    }
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let opts = &cli.opts;
    let cfg = config(opts);
    match cli.command {
        Command::Fpt { field, poly, weights } => {
            let k = parse_field_spec(&field)?;
            let res = match weights {
                Some(w) => {
                    let (u, v) = pair(&w, "weights")?;
                    let g = parse_sparse(&poly, &k, VARS)?;
                    fpt_quasi_homogeneous(&QuasiHomogeneousInput { g, u, v }, &cfg)?
                }
                None => fpt_homogeneous(&parse_form(&poly, &k, VARS)?, &cfg)?,
            };
            emit_json(out, &res.to_json())?;
        }
        Command::Ft { field, ell, a, ideal: id } => {
            let k = parse_field_spec(&field)?;
            let ell = LinearSystem::from_forms(&parse_form_list(&ell, &k, VARS)?)?;
            let a: Vec<u64> = a
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| usage(format!("bad multiplicity {s:?}"))))
                .collect::<Result<_, _>>()?;
            let b = ideal(id.as_deref(), &k)?;
            emit_json(out, &ft_general(&ell, &a, &b, &cfg)?.to_json())?;
        }
        Command::Factor { field, poly } => {
            let k = parse_field_spec(&field)?;
            let f = factor_linear_seeded(&parse_form(&poly, &k, VARS)?, opts.seed)?;
            emit_json(out, &f.to_json())?;
        }
        Command::Critical { sweep } => {
            let s = sweep_setup(&sweep)?;
            if s.bx.cell_count() > opts.cell_cap as u128 {
                return Err(Error::Resource(format!(
                    "{} cells exceed the cap of {}",
                    s.bx.cell_count(),
                    opts.cell_cap
                ))
                .into());
            }
            let mut found = Vec::new();
            let mut a = s.bx.lo.clone();
            'outer: loop {
                let t = GridPoint::from_ints(s.p, s.e, &a);
                if is_critical(&s.ell, &s.b, &t)? {
                    let r = t.reduced();
                    found.push(json!({
                        "a": a,
                        "q": s.q,
                        "point": r.coordinates().iter().map(format_rational).collect::<Vec<_>>(),
                        "delta": format_rational(&(Rational::from_integer(s.b.deg_uv().into()) - t.norm())),
                    }));
                }
                for i in (0..a.len()).rev() {
                    if a[i] < s.bx.hi[i] {
                        a[i] += 1;
                        continue 'outer;
                    }
                    a[i] = s.bx.lo[i];
                }
                break;
            }
            emit_json(out, &json!({ "critical_points": found }))?;
        }
        Command::Grid { sweep, format, binary, picture } => {
            let s = sweep_setup(&sweep)?;
            match (format, s.ell.len()) {
                (Format::Pgm, 3) => staircase(&s, opts, Format::Pgm, binary, out)?,
                (Format::Pgm, 2) => {
                    let cells = grid_sweep(&s.ell, &s.b, &s.bx, opts.cell_cap)?;
                    let img = match picture {
                        Picture::Region => region_image(&cells)?,
                        Picture::Delta => delta_image(&cells)?,
                    };
                    img.write_pgm(out, binary)?;
                }
                (Format::Pgm, n) => return Err(usage(format!("no picture for {n} forms"))),
                (Format::Csv, _) => {
                    let cells = grid_sweep(&s.ell, &s.b, &s.bx, opts.cell_cap)?;
                    write_csv(out, &cells, &BigUint::from(s.q))?;
                }
                (Format::Json, _) => {
                    let cells = grid_sweep(&s.ell, &s.b, &s.bx, opts.cell_cap)?;
                    let rows: Vec<_> = cells
                        .iter()
                        .map(|c| json!({"a": c.a, "delta": format_rational(&c.delta), "upper": c.upper}))
                        .collect();
                    emit_json(out, &json!({ "q": s.q, "cells": rows }))?;
                }
            }
        }
        Command::Staircase { sweep, format, binary } => {
            let s = sweep_setup(&sweep)?;
            staircase(&s, opts, format, binary, out)?;
        }
        Command::Oracle { field, poly, ideal: id, e } => {
            let k = parse_field_spec(&field)?;
            let g = parse_form(&poly, &k, VARS)?;
            let b = ideal(id.as_deref(), &k)?;
            let mut rows = Vec::new();
            for e in 1..=e {
                let nu = nu_oracle(&g, &b, e)?;
                let q = k.p().pow(e);
                rows.push(json!({"e": e, "q": q, "nu": nu, "ratio": format!("{nu}/{q}")}));
            }
            emit_json(out, &json!({ "table": rows }))?;
        }
    }
    Ok(())
}

fn staircase(s: &Sweep, opts: &Opts, format: Format, binary: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let hi = *s.bx.hi.iter().max().unwrap_or(&0);
    if s.bx.hi.iter().any(|&h| h != hi) || s.bx.lo.iter().any(|&l| l != 0) {
        return Err(usage("the slice picture needs a box of the form 0:h,0:h,0:h"));
    }
    let cells = staircase_slice(&s.ell, &s.b, s.e, hi, opts.e_max.max(64), opts.cell_cap)?;
    match format {
        Format::Pgm => staircase_image(&cells, hi).write_pgm(out, binary)?,
        Format::Csv => {
            writeln!(out, "a1,a2,a3,q,boundary")?;
            for c in &cells {
                writeln!(out, "{},{},{},{},{}", c.a[0], c.a[1], c.a[2], s.q, c.boundary as u8)?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = cells.iter().map(|c| json!({"a": c.a, "boundary": c.boundary})).collect();
            emit_json(out, &json!({ "q": s.q, "cells": rows }))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match &cli.opts.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let path = path.clone();
                run(cli, &mut w).and_then(|()| w.flush().map_err(Failure::from)).map_err(|e| (e, Some(path)))
            }
            Err(e) => Err((Failure::Io(e), Some(path.clone()))),
        },
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(cli, &mut lock).map_err(|e| (e, None))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((Failure::Engine(e @ Error::Resource(_)), _)) => {
            eprintln!("fptool: {e}");
            ExitCode::from(3)
        }
        Err((Failure::Engine(e), _)) => {
            eprintln!("fptool: {e}");
            ExitCode::from(2)
        }
        Err((Failure::Io(e), path)) => {
            match path {
                Some(p) => eprintln!("fptool: {}: {e}", p.display()),
                None => eprintln!("fptool: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
