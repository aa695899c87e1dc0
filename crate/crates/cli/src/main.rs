use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mubkit::mub::{mub_alternative, mub_gf, mub_gr, mub_master, mub_w4, MubSet};
use mubkit::pauli::{commuting_classes, gen_pauli, group_check};
use mubkit::sim::{self, MeasureMode, StateVector};
use mubkit::verify::{self, Mode};
use mubkit_cli::{export, pretty};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "mubkit",
    version,
    about = "Exact construction and verification of mutually unbiased bases"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Master,
    Alternative,
    Gf,
    Gr,
    W4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a MUB set
    Gen {
        method: MethodArg,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Monic modulus coefficients c_0,…,c_m (gf only)
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Float amplitudes instead of exponents (csv only)
        #[arg(long)]
        numeric: bool,
    },
    /// Check a MUB set and print a JSON report
    Verify {
        #[arg(long = "in", conflicts_with = "gen", required_unless_present = "gen")]
        input: Option<PathBuf>,
        /// METHOD followed by its parameters, e.g. `--gen gf 3 2`
        #[arg(long, num_args = 1.., value_name = "METHOD PARAMS")]
        gen: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = verify::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = verify::DEFAULT_CONDUCTOR_CAP)]
        conductor_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized Pauli operators
    Pauli {
        #[arg(long)]
        d: usize,
        #[command(subcommand)]
        what: PauliCmd,
    },
    /// State-vector demonstrations
    Sim {
        #[command(subcommand)]
        what: SimCmd,
    },
    /// Known bounds on the number of MUBs
    Bounds {
        #[arg(long)]
        d: u64,
    },
}

#[derive(Subcommand)]
enum PauliCmd {
    Table,
    Classes,
    GroupCheck,
}

#[derive(Subcommand)]
enum SimCmd {
    Teleport {
        /// Amplitudes a,b (complex form like 0.6 or 0.3+0.4i); random if absent
        #[arg(long, value_delimiter = ',')]
        state: Option<Vec<String>>,
        /// Draw one branch instead of listing all four
        #[arg(long)]
        sample: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Dj {
        /// Truth table f(0),f(1),…
        #[arg(long, value_delimiter = ',', required = true)]
        f: Vec<u8>,
    },
    Bell {
        #[arg(long)]
        x: Option<u8>,
        #[arg(long)]
        y: Option<u8>,
    },
    Bloch {
        #[arg(long, value_delimiter = ',')]
        state: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Violation,
}

impl From<mubkit::Error> for Failure {
    fn from(e: mubkit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn need<T>(v: Option<T>, flag: &str, method: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{method} requires --{flag}")))
}

fn build(
    method: MethodArg,
    d: Option<usize>,
    p: Option<u32>,
    m: Option<u32>,
    modulus: Option<&[u32]>,
) -> Result<MubSet, Failure> {
    if modulus.is_some() && !matches!(method, MethodArg::Gf) {
        return Err(Failure::Usage("--modulus only applies to gf".into()));
    }
    Ok(match method {
        MethodArg::Master => mub_master(need(d, "d", "master")?)?,
        MethodArg::Alternative => mub_alternative(need(p, "p", "alternative")? as usize)?,
        MethodArg::Gf => mub_gf(need(p, "p", "gf")?, need(m, "m", "gf")?, modulus)?,
        MethodArg::Gr => mub_gr(need(m, "m", "gr")?)?,
        MethodArg::W4 => mub_w4(),
    })
}

fn build_positional(words: &[String]) -> Result<MubSet, Failure> {
    let method = MethodArg::from_str(&words[0], true).map_err(Failure::Usage)?;
    let nums = words[1..]
        .iter()
        .map(|w| {
            w.parse::<u32>().map_err(|_| {
                Failure::Usage(format!("parameter {w:?} is not a nonnegative integer"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let arity = |k: usize| -> Result<(), Failure> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(Failure::Usage(format!(
                "{} takes {k} parameter(s), got {}",
                words[0],
                nums.len()
            )))
        }
    };
    match method {
        MethodArg::Master => {
            arity(1).and_then(|_| build(method, Some(nums[0] as usize), None, None, None))
        }
        MethodArg::Alternative => {
            arity(1).and_then(|_| build(method, None, Some(nums[0]), None, None))
        }
        MethodArg::Gr => arity(1).and_then(|_| build(method, None, None, Some(nums[0]), None)),
        MethodArg::W4 => arity(0).and_then(|_| build(method, None, None, None, None)),
        MethodArg::Gf => {
            if nums.len() < 2 {
                return Err(Failure::Usage(
                    "gf takes p m [modulus coefficients…]".into(),
                ));
            }
            let modulus = (nums.len() > 2).then(|| &nums[2..]);
            build(method, None, Some(nums[0]), Some(nums[1]), modulus)
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t = s.trim().replace(' ', "");
    match t.as_str() {
        "i" | "+i" => return Ok(Complex64::new(0.0, 1.0)),
        "-i" => return Ok(Complex64::new(0.0, -1.0)),
        _ => {}
    }
    t.parse::<Complex64>()
        .map_err(|_| Failure::Usage(format!("cannot parse amplitude {s:?}")))
}

fn qubit_arg(state: Option<Vec<String>>, seed: u64) -> Result<StateVector, Failure> {
    match state {
        None => Ok(sim::random_state(&[2], &mut sim::seeded_rng(seed))),
        Some(v) if v.len() == 2 => Ok(StateVector::qubit(
            parse_complex(&v[0])?,
            parse_complex(&v[1])?,
        )?),
        Some(v) => Err(Failure::Usage(format!(
            "--state needs two amplitudes, got {}",
            v.len()
        ))),
    }
}

fn num(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn amp(z: Complex64) -> String {
    match (z.re.abs() < 1e-12, z.im.abs() < 1e-12) {
        (_, true) => num(z.re),
        (true, false) => format!("{}i", num(z.im)),
        _ => format!(
            "{}{}{}i",
            num(z.re),
            if z.im < 0.0 { "-" } else { "+" },
            num(z.im.abs())
        ),
    }
}

fn ket(s: &StateVector) -> String {
    let a: Vec<String> = s.amplitudes().iter().map(|&z| amp(z)).collect();
    format!("[{}]", a.join(", "))
}

struct GenArgs {
    method: MethodArg,
    d: Option<usize>,
    p: Option<u32>,
    m: Option<u32>,
    modulus: Option<Vec<u32>>,
    out: Option<PathBuf>,
    format: Format,
    numeric: bool,
}

fn cmd_gen(a: GenArgs) -> Outcome {
    let GenArgs {
        method,
        d,
        p,
        m,
        modulus,
        out,
        format,
        numeric,
    } = a;
    let s = build(method, d, p, m, modulus.as_deref())?;
    if numeric && !matches!(format, Format::Csv) {
        return Err(Failure::Usage(
            "--numeric only applies to --format csv".into(),
        ));
    }
    let text = match format {
        Format::Json => export::to_json(&s),
        Format::Csv => export::to_csv(&s, numeric).map_err(|e| Failure::Usage(e.to_string()))?,
        Format::Pretty => pretty::render(&s),
    };
    emit(&text, out.as_ref())
}

fn cmd_verify(
    input: Option<PathBuf>,
    gen: Option<Vec<String>>,
    mode: ModeArg,
    tol: f64,
    cap: u64,
    out: Option<PathBuf>,
) -> Outcome {
    let s = match (input, gen) {
        (Some(path), _) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            export::from_json(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        (None, Some(words)) => build_positional(&words)?,
        (None, None) => return Err(Failure::Usage("one of --in or --gen is required".into())),
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!(
            "--tol must be a positive number, got {tol}"
        )));
    }
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float { tol },
    };
    if let Some(b) = s.bases.iter().find(|b| b.conductor as u64 > cap) {
        return Err(Failure::Usage(format!(
            "conductor {} of {} exceeds the cap {cap}",
            b.conductor, b.label
        )));
    }
    let report = verify::check_mub_set(&s, mode)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    emit(&text, out.as_ref())?;
    eprintln!(
        "{}/{} pairs unbiased; {}; claims {}",
        report.unbiased_pairs,
        report.total_pairs,
        if report.complete {
            "complete"
        } else {
            "not complete"
        },
        if report.claims_verified {
            "verified"
        } else {
            "violated"
        }
    );
    if report.claims_verified {
        return Ok(());
    }
    let w = report
        .orthonormality_witnesses
        .first()
        .or_else(|| report.first_violation().and_then(|p| p.status.witness()));
    if let Some(w) = w {
        eprintln!(
            "witness: {}[{}] vs {}[{}], |⟨·|·⟩| = {}",
            w.basis_a,
            w.vector_a,
            w.basis_b,
            w.vector_b,
            num(w.modulus)
        );
    }
    Err(Failure::Violation)
}

fn entry_symbol(k: u32, d: usize) -> String {
    match (d, k) {
        (_, 0) => "1".into(),
        (2, _) => "-1".into(),
        (_, 1) => "ω".into(),
        _ => format!("ω^{k}"),
    }
}

fn cmd_pauli(d: usize, what: PauliCmd) -> Outcome {
    if d < 2 {
        return Err(Failure::Usage(format!("d must be at least 2, got {d}")));
    }
    match what {
        PauliCmd::Table => {
            if d > 16 {
                return Err(Failure::Usage("table is limited to d ≤ 16".into()));
            }
            println!("ω = e^{{2πi/{d}}}, U_ab = X^a Z^b");
            let names = ["I", "Z", "X", "Y"];
            for a in 0..d {
                for b in 0..d {
                    let u = gen_pauli(d, a, b);
                    let alias = if d == 2 {
                        format!("{} = ", names[2 * a + b])
                    } else {
                        String::new()
                    };
                    println!("{alias}U_{a}{b} = X^{a} Z^{b}");
                    for r in 0..d {
                        let row: Vec<String> = (0..d)
                            .map(|c| {
                                let t = u.entry(r, c).tally();
                                match t.iter().position(|&x| x != 0) {
                                    Some(k) => entry_symbol(k as u32, d),
                                    None => "0".into(),
                                }
                            })
                            .collect();
                        println!(
                            "  [{}]",
                            row.iter()
                                .map(|s| format!("{s:>4}"))
                                .collect::<Vec<_>>()
                                .join("")
                        );
                    }
                }
            }
            Ok(())
        }
        PauliCmd::Classes => {
            for c in commuting_classes(d)? {
                println!("{c}");
            }
            Ok(())
        }
        PauliCmd::GroupCheck => {
            if d > 12 {
                return Err(Failure::Usage(
                    "group-check enumerates d³ elements; use d ≤ 12".into(),
                ));
            }
            let g = group_check(d);
            println!("order: {} (expected {})", g.order, d.pow(3));
            println!("closed: {}", g.closed);
            println!("associative: {}", g.associative);
            println!("identity: {}", g.identity);
            println!("inverses: {}", g.inverses);
            println!("lower central series orders: {:?}", g.series_orders);
            println!("commutator subgroup central: {}", g.commutator_central);
            println!("{}", if g.ok() { "ok" } else { "FAILED" });
            if g.ok() {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn cmd_sim(what: SimCmd) -> Outcome {
    match what {
        SimCmd::Teleport {
            state,
            sample,
            seed,
        } => {
            let psi = qubit_arg(state, seed)?;
            println!("ψ = {}", ket(&psi));
            let mode = if sample {
                MeasureMode::Sampled(seed)
            } else {
                MeasureMode::Enumerate
            };
            for b in sim::teleport(&psi, mode)? {
                println!(
                    "branch {}{}: p = {}, correction {}, bob = {}, fidelity {}",
                    b.bits.0,
                    b.bits.1,
                    num(b.probability),
                    b.correction,
                    ket(&b.bob),
                    num(b.fidelity)
                );
            }
            Ok(())
        }
        SimCmd::Dj { f } => {
            let o = sim::deutsch_jozsa(&f)?;
            println!("{}", o.class);
            Ok(())
        }
        SimCmd::Bell { x, y } => {
            let pairs: Vec<(u8, u8)> = match (x, y) {
                (Some(x), Some(y)) => vec![(x, y)],
                (None, None) => vec![(0, 0), (0, 1), (1, 0), (1, 1)],
                _ => return Err(Failure::Usage("give both --x and --y or neither".into())),
            };
            for (x, y) in pairs {
                let b = sim::bell(x, y)?;
                println!(
                    "β_{x}{y} = {}, concurrence {}",
                    ket(&b),
                    num(sim::concurrence(&b)?)
                );
            }
            Ok(())
        }
        SimCmd::Bloch { state, seed } => {
            let psi = qubit_arg(state, seed)?;
            let (x, y, z) = sim::bloch_coords(&psi)?;
            println!("({}, {}, {})", num(x), num(y), num(z));
            Ok(())
        }
    }
}

fn cmd_bounds(d: u64) -> Outcome {
    let b = verify::mub_bounds(d)?;
    if b.prime_power {
        println!("N({d}) = {}", b.upper);
    } else {
        println!("{} ≤ N({d}) ≤ {}", b.lower, b.upper);
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Gen {
            method,
            d,
            p,
            m,
            modulus,
            out,
            format,
            numeric,
        } => cmd_gen(GenArgs {
            method,
            d,
            p,
            m,
            modulus,
            out,
            format,
            numeric,
        }),
        Cmd::Verify {
            input,
            gen,
            mode,
            tol,
            conductor_cap,
            out,
        } => cmd_verify(input, gen, mode, tol, conductor_cap, out),
        Cmd::Pauli { d, what } => cmd_pauli(d, what),
        Cmd::Sim { what } => cmd_sim(what),
        Cmd::Bounds { d } => cmd_bounds(d),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
