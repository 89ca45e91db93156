//! Command-line front end. The `rowmotion` binary is a thin wrapper around
//! [`run`].

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::continuous::{run_experiment, Dynamics, ScalarMode, DEFAULT_MAX_ITER, MERSENNE_61};
use crate::error::Error;
use crate::families::{family_homometry, verify_family, Family};
use crate::poset::Poset;
use crate::rowmotion::{all_orbits, Orbit, OrbitDump, DEFAULT_BUDGET};
use crate::statistics::{homomesy_of, stats_csv, stats_table, Statistic};
use crate::tiling::{render_ascii, render_svg, tiling_of_orbit, validate_tiling, Tiling};
use crate::tree::RootedTree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ARITH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rowmotion", version, about = "Rowmotion orbits, tilings and statistics on rooted trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("input").required(true).args(["tree", "family"])))]
pub struct Input {
    /// Tree in nested-parentheses notation, e.g. "(()())".
    #[arg(long)]
    pub tree: Option<String>,
    /// Family descriptor, e.g. star:3,3,2 or cbt:3 (grid:p,q for pl/birational).
    #[arg(long)]
    pub family: Option<String>,
    /// Antichain budget for orbit enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
    Svg,
}

#[derive(Args, Debug, Clone)]
pub struct Continuous {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: u64,
    /// `rational` or `modp:P`.
    #[arg(long, default_value = "rational")]
    pub mode: String,
    /// Number of random starts.
    #[arg(long, default_value_t = 1)]
    pub starts: u32,
    /// Record wall-clock time (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List all rowmotion orbits.
    Orbits {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cylinder tilings of the orbits.
    Tiling {
        #[command(flatten)]
        input: Input,
        /// Only this orbit (by index).
        #[arg(long)]
        orbit: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Per-orbit chi / hatchi table.
    Stats {
        #[command(flatten)]
        input: Input,
        /// Add per-node columns.
        #[arg(long)]
        per_node: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Is the statistic constant on orbit averages?
    Homomesy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stat: String,
    },
    /// Is the statistic constant on orbits of equal size?
    Homometry {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stat: String,
    },
    /// Compare a family's closed-form profile with brute force.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Birational rowmotion order search.
    Birational {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Continuous,
    },
    /// Piecewise-linear rowmotion order search.
    Pl {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Continuous,
    },
    /// Validate and draw a tiling read from a JSON file (or an orbit's own).
    Render {
        #[command(flatten)]
        input: Input,
        /// Tiling JSON file; `-` for standard input.
        #[arg(long)]
        tiling: Option<String>,
        #[arg(long, default_value_t = 0)]
        orbit: usize,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::ZeroDenominator(_) | Error::RetriesExhausted(_) => EXIT_ARITH,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit status. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("cannot write output: {e}")))?;
    Ok(EXIT_OK)
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    emit(out, &s)
}

fn tree_input(input: &Input) -> std::result::Result<(RootedTree, Option<Family>), Failure> {
    match (&input.tree, &input.family) {
        (Some(t), None) => Ok((RootedTree::parse(t)?, None)),
        (None, Some(f)) => {
            let fam: Family = f.parse()?;
            Ok((crate::families::make_family(&fam)?, Some(fam)))
        }
        _ => Err(usage("give exactly one of --tree and --family")),
    }
}

fn orbits_of(input: &Input) -> std::result::Result<(RootedTree, Option<Family>, Vec<Orbit>), Failure> {
    let (tree, fam) = tree_input(input)?;
    let orbits = all_orbits(&tree, input.budget)?;
    Ok((tree, fam, orbits))
}

fn bad_format(verb: &str, f: Format) -> Failure {
    usage(format!("{verb} does not support --format {f:?}").to_lowercase())
}

#[derive(Serialize)]
struct OrbitsOut {
    tree: String,
    antichains: u128,
    orbits: Vec<OrbitDump>,
}

#[derive(Serialize)]
struct TilingOut {
    orbit: usize,
    tiling: Tiling,
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Orbits { input, format } => {
            let (tree, _, orbits) = orbits_of(&input)?;
            let dumps: Vec<OrbitDump> = orbits.iter().enumerate().map(|(i, o)| o.dump(i)).collect();
            match format {
                Format::Json => json(
                    out,
                    &OrbitsOut {
                        tree: tree.notation(),
                        antichains: tree.count_antichains(),
                        orbits: dumps,
                    },
                ),
                Format::Csv => {
                    let mut s = String::from("orbit,size,delta,antichains\n");
                    for d in dumps {
                        let sets: Vec<String> = d
                            .antichains
                            .iter()
                            .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                            .collect();
                        s += &format!("{},{},{},{}\n", d.index, d.size, d.delta, sets.join(";"));
                    }
                    emit(out, &s)
                }
                f => Err(bad_format("orbits", f)),
            }
        }
        Command::Tiling { input, orbit, format } => {
            let (tree, _, orbits) = orbits_of(&input)?;
            let picked: Vec<usize> = match orbit {
                Some(i) if i < orbits.len() => vec![i],
                Some(i) => return Err(usage(format!("orbit {i} out of range (have {})", orbits.len()))),
                None => (0..orbits.len()).collect(),
            };
            let mut tilings = Vec::new();
            for &i in &picked {
                tilings.push(TilingOut {
                    orbit: i,
                    tiling: tiling_of_orbit(&tree, &orbits[i])?,
                });
            }
            match format {
                Format::Json => json(out, &tilings),
                Format::Ascii => {
                    let mut s = String::new();
                    for t in &tilings {
                        let o = &orbits[t.orbit];
                        s += &format!("orbit {} (size {}, delta {})\n", t.orbit, o.len(), o.delta());
                        s += &render_ascii(&t.tiling);
                    }
                    emit(out, &s)
                }
                Format::Svg if tilings.len() == 1 => emit(out, &render_svg(&tilings[0].tiling)),
                Format::Svg => Err(usage("svg output needs --orbit")),
                f => Err(bad_format("tiling", f)),
            }
        }
        Command::Stats { input, per_node, format } => {
            let (tree, _, orbits) = orbits_of(&input)?;
            let rows = stats_table(&tree, &orbits, per_node);
            match format {
                Format::Json => json(out, &rows),
                Format::Csv => emit(out, &stats_csv(&rows, tree.len())),
                f => Err(bad_format("stats", f)),
            }
        }
        Command::Homomesy { input, stat } => {
            let stat: Statistic = stat.parse()?;
            let (tree, _, orbits) = orbits_of(&input)?;
            json(out, &homomesy_of(&tree, &stat, &orbits)?)
        }
        Command::Homometry { input, stat } => {
            let stat: Statistic = stat.parse()?;
            let (tree, fam, orbits) = orbits_of(&input)?;
            let verdict = match &fam {
                Some(f) => family_homometry(f, &tree, &stat, &orbits)?,
                None => crate::statistics::homometry_of(&tree, &stat, &orbits)?,
            };
            json(out, &verdict)
        }
        Command::Verify { input, format } => {
            let Some(f) = &input.family else {
                return Err(usage("verify needs --family"));
            };
            let fam: Family = f.parse()?;
            let report = verify_family(&fam, input.budget)?;
            match format {
                Format::Json => json(out, &report)?,
                Format::Ascii => emit(out, &format!("{report}\n"))?,
                f => return Err(bad_format("verify", f)),
            };
            Ok(if report.all_match { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Birational { input, opts } => continuous(&input, &opts, Dynamics::Birational, out),
        Command::Pl { input, opts } => continuous(&input, &opts, Dynamics::PiecewiseLinear, out),
        Command::Render {
            input,
            tiling,
            orbit,
            format,
        } => {
            let (tree, _) = tree_input(&input)?;
            let t: Tiling = match tiling {
                Some(path) => {
                    let text = if path == "-" {
                        std::io::read_to_string(std::io::stdin())
                    } else {
                        std::fs::read_to_string(&path)
                    }
                    .map_err(|e| usage(format!("cannot read {path}: {e}")))?;
                    parse_tiling(&text)?
                }
                None => {
                    let orbits = all_orbits(&tree, input.budget)?;
                    let o = orbits
                        .get(orbit)
                        .ok_or_else(|| usage(format!("orbit {orbit} out of range (have {})", orbits.len())))?;
                    tiling_of_orbit(&tree, o)?
                }
            };
            if let Some(v) = validate_tiling(&tree, &t).violation {
                return Err(usage(format!("invalid tiling: {v}")));
            }
            match format {
                Format::Ascii => emit(out, &render_ascii(&t)),
                Format::Svg => emit(out, &render_svg(&t)),
                f => Err(bad_format("render", f)),
            }
        }
    }
}

/// Accepts a bare tiling or the single-orbit output of the `tiling` verb.
fn parse_tiling(text: &str) -> std::result::Result<Tiling, Failure> {
    let bad = |e: serde_json::Error| usage(format!("bad tiling JSON: {e}"));
    let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    let value = match value {
        serde_json::Value::Array(mut items) if items.len() == 1 => match items.pop() {
            Some(serde_json::Value::Object(mut m)) => m.remove("tiling").unwrap_or_default(),
            other => other.unwrap_or_default(),
        },
        v => v,
    };
    serde_json::from_value(value).map_err(bad)
}

fn parse_mode(s: &str) -> std::result::Result<ScalarMode, Failure> {
    if s == "rational" {
        return Ok(ScalarMode::Rational);
    }
    let p = s
        .strip_prefix("modp:")
        .ok_or_else(|| usage(format!("unknown mode '{s}'")))?;
    let p: u64 = if p.is_empty() {
        MERSENNE_61
    } else {
        p.parse().map_err(|_| usage(format!("bad prime '{p}'")))?
    };
    if !(3..(1 << 63)).contains(&p) || !is_prime(p) {
        return Err(usage(format!("{p} is not an odd prime below 2^63")));
    }
    Ok(ScalarMode::ModP(p))
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    BASES.iter().all(|&a| {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

fn poset_input(input: &Input) -> std::result::Result<(Poset, String), Failure> {
    if let Some(grid) = input.family.as_deref().and_then(|f| f.strip_prefix("grid:")) {
        let (p, q) = grid
            .split_once(',')
            .ok_or_else(|| usage("grid needs 'grid:p,q'"))?;
        let p: usize = p.trim().parse().map_err(|_| usage(format!("bad grid size '{p}'")))?;
        let q: usize = q.trim().parse().map_err(|_| usage(format!("bad grid size '{q}'")))?;
        if p == 0 || q == 0 || p * q > 4096 {
            return Err(usage("grid sides must be positive with at most 4096 elements"));
        }
        return Ok((Poset::chain_product(p, q), format!("grid:{p},{q}")));
    }
    let (tree, fam) = tree_input(input)?;
    let name = fam.map_or_else(|| tree.notation(), |f| f.to_string());
    Ok((tree.poset().clone(), name))
}

fn continuous(input: &Input, opts: &Continuous, dynamics: Dynamics, out: &mut dyn Write) -> Outcome {
    let mode = parse_mode(&opts.mode)?;
    if dynamics == Dynamics::PiecewiseLinear && mode != ScalarMode::Rational {
        return Err(usage("pl supports only --mode rational"));
    }
    if opts.max_iter == 0 || opts.starts == 0 {
        return Err(usage("--max-iter and --starts must be positive"));
    }
    let (poset, name) = poset_input(input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut records = Vec::new();
    for _ in 0..opts.starts {
        records.push(run_experiment(
            &poset,
            &name,
            dynamics,
            mode,
            opts.seed,
            opts.max_iter,
            &mut rng,
            opts.timing,
        )?);
    }
    json(out, &records)
}
