//! `gridfloer` command-line tool.
//!
//! Exit codes: 0 success, 2 input error, 3 size cap exceeded, 4 internal
//! invariant violation. Results go to stdout, progress to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridfloer::alexander::grid_alexander;
use gridfloer::complex::GridComplex;
use gridfloer::homology::BigradedRanks;
use gridfloer::invariants::{chain_ranks, euler_check, hfk_hat, knot_report, KnotReport};
use gridfloer::moves::{random_move_trace, simplify};
use gridfloer::planar::planar_diagram;
use gridfloer::surgery::{bundled_model, load_model, staircase_model, surgery_cone, surgery_homology, ClassHomology, Flavor, ModelComplex, DEFAULT_CUTOFF};
use gridfloer::{ComputeError, GridDiagram, GridError, LaurentPoly, ModelError};
use serde::Serialize;
use serde_json::json;

/// Environment variable overriding the default size cap.
const CAP_ENV: &str = "GRIDFLOER_MAX_N";
const DEFAULT_MAX_N: usize = 8;
const LARGE_MAX_N: usize = 9;
const HARD_LIMIT: usize = 10;

#[derive(Parser)]
#[command(name = "gridfloer", version, about = "Knot Floer homology from grid diagrams")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Worker threads; 1 runs sequentially. Defaults to available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest grid size accepted (default 8, or $GRIDFLOER_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Allow grids of size 9.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Args)]
struct GridInput {
    /// Inline grid, text (`n=..; O=[..]; X=[..]`) or JSON.
    #[arg(long, conflicts_with = "file")]
    grid: Option<String>,
    /// File holding a grid.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ModelInput {
    /// Bundled model: unknot, trefoil-left, trefoil-right, t34.
    #[arg(long, conflicts_with_all = ["model_file", "staircase"])]
    model: Option<String>,
    /// Model document (JSON).
    #[arg(long, conflicts_with = "staircase")]
    model_file: Option<PathBuf>,
    /// Staircase model from an Alexander polynomial, e.g. "q^-1 - 1 + q".
    #[arg(long)]
    staircase: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a grid and report whether it is valid.
    Validate(GridInput),
    /// Size, components, crossings, writhe and Alexander polynomial.
    Info(GridInput),
    /// Knot Floer homology and the invariants read off from it.
    Hfk(GridInput),
    /// Alexander polynomial and the chain-level Euler characteristic check.
    Oracle(GridInput),
    /// Apply seeded random grid moves, or simplify by destabilizing.
    Moves {
        #[command(flatten)]
        input: GridInput,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Search depth for destabilizations instead of random moves.
        #[arg(long)]
        simplify: Option<usize>,
    },
    /// Compare HFK-hat before and after random moves.
    Invariance {
        #[command(flatten)]
        input: GridInput,
        #[arg(long, default_value_t = 50)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Homology of the surgery mapping cone, per Spin^c class.
    Surgery {
        #[command(flatten)]
        input: ModelInput,
        /// Surgery coefficient.
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value = "plus")]
        flavor: Flavor,
        /// Truncation radius; defaults to max|A| + |p|.
        #[arg(long)]
        smax: Option<i64>,
        /// Largest truncation level tried while waiting for stabilization.
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: i64,
    },
    /// Load and validate a model complex.
    ModelCheck(ModelInput),
}

enum Failure {
    Input(String),
    Cap(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ComputeError> for Failure {
    fn from(e: ComputeError) -> Self {
        match e {
            ComputeError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            ComputeError::Grid(_) | ComputeError::LinkNotSupported(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Compute(c) => c.into(),
            ModelError::TruncationCheck(_) | ModelError::NoStabilization(_) => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn resolve_cap(g: &Global) -> Result<usize, Failure> {
    let requested = match (g.max_n, std::env::var(CAP_ENV)) {
        (Some(n), _) => Some(n),
        (None, Ok(v)) => Some(v.trim().parse().map_err(|_| Failure::Input(format!("{CAP_ENV}={v:?} is not a size")))?),
        (None, Err(_)) => None,
    };
    let cap = requested.unwrap_or(if g.allow_large { LARGE_MAX_N } else { DEFAULT_MAX_N });
    if cap >= HARD_LIMIT {
        return Err(Failure::Input(format!("size cap {cap} is not supported; grids of size {HARD_LIMIT} and above are refused")));
    }
    if cap > DEFAULT_MAX_N && !g.allow_large {
        return Err(Failure::Input(format!("size cap {cap} needs --allow-large")));
    }
    Ok(cap)
}

fn read_grid(input: &GridInput) -> Result<GridDiagram, Failure> {
    let text = match (&input.grid, &input.file) {
        (Some(g), _) => g.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Input("pass --grid or --file".into())),
    };
    Ok(GridDiagram::parse(&text)?)
}

fn check_size(g: &GridDiagram, cap: usize) -> Result<(), Failure> {
    if g.n() > cap {
        return Err(ComputeError::CapExceeded { n: g.n(), cap }.into());
    }
    Ok(())
}

fn read_model(input: &ModelInput) -> Result<(String, ModelComplex), Failure> {
    match (&input.model, &input.model_file, &input.staircase) {
        (Some(name), _, _) => Ok((name.clone(), bundled_model(name)?)),
        (None, Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let m = load_model(&text).map_err(|v| {
                Failure::Input(format!("model failed validation:\n{}", v.0.iter().map(|e| format!("  - {e}")).collect::<Vec<_>>().join("\n")))
            })?;
            Ok((path.display().to_string(), m))
        }
        (None, None, Some(poly)) => {
            let delta: LaurentPoly = poly.parse().map_err(Failure::Input)?;
            Ok((format!("staircase({delta})"), staircase_model(&delta)?))
        }
        (None, None, None) => Err(Failure::Input("pass --model, --model-file or --staircase".into())),
    }
}

fn structured<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn ranks_table(r: &BigradedRanks) -> String {
    let mut out = String::from("    M     A  rank\n");
    for (&(m, a), &v) in r {
        let _ = writeln!(out, "{m:>5} {a:>5} {v:>5}");
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_report(r: &KnotReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "grid size     {}", r.n);
    let _ = writeln!(out, "Alexander     {}", r.delta);
    let _ = writeln!(out, "genus         {}", r.genus);
    let _ = writeln!(out, "fibered       {}", yes(r.fibered));
    let _ = writeln!(out, "tau           {}", r.tau);
    let _ = writeln!(out, "unknot        {}", yes(r.unknot));
    let towers: Vec<String> = r.hfk_minus.towers.iter().map(|(m, a)| format!("({m},{a})")).collect();
    let torsion: Vec<String> = r.hfk_minus.torsions.iter().map(|((m, a), k)| format!("({m},{a})^{k}")).collect();
    let _ = writeln!(out, "minus towers  {}", towers.join(" "));
    let _ = writeln!(out, "minus torsion {}", if torsion.is_empty() { "none".to_string() } else { torsion.join(" ") });
    for (name, ok) in &r.checks {
        let _ = writeln!(out, "check {name:<12}{}", if *ok { "ok" } else { "FAILED" });
    }
    out.push_str("HFK-hat\n");
    out.push_str(&ranks_table(&r.hfk_hat));
    out
}

fn progress(msg: &str) {
    eprintln!("gridfloer: {msg}");
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.global.format;
    match &cli.command {
        Command::Validate(input) => {
            let g = read_grid(input)?;
            let comps = g.link_components().count;
            Ok(match fmt {
                Format::Structured => structured(&json!({"valid": true, "n": g.n(), "components": comps, "grid": g.to_text()})),
                Format::Table => format!("valid {}x{} grid, {comps} component(s)\n", g.n(), g.n()),
            })
        }
        Command::Info(input) => {
            let g = read_grid(input)?;
            let comps = g.link_components().count;
            let pd = planar_diagram(&g);
            let delta = if comps == 1 { Some(grid_alexander(&g)?.to_string()) } else { None };
            let gens = factorial(g.n());
            Ok(match fmt {
                Format::Structured => structured(&json!({
                    "n": g.n(), "components": comps, "crossings": pd.crossings.len(), "writhe": pd.writhe(),
                    "generators": gens, "alexander": delta, "grid": g.to_text(),
                })),
                Format::Table => {
                    let mut out = String::new();
                    let _ = writeln!(out, "grid size    {}", g.n());
                    let _ = writeln!(out, "components   {comps}");
                    let _ = writeln!(out, "crossings    {}", pd.crossings.len());
                    let _ = writeln!(out, "writhe       {}", pd.writhe());
                    let _ = writeln!(out, "generators   {gens}");
                    let _ = writeln!(out, "Alexander    {}", delta.as_deref().unwrap_or("n/a (link)"));
                    out
                }
            })
        }
        Command::Hfk(input) => {
            let g = read_grid(input)?;
            let cap = resolve_cap(&cli.global)?;
            check_size(&g, cap)?;
            g.require_knot()?;
            progress(&format!("computing HFK of a {0}x{0} grid ({1} generators)", g.n(), factorial(g.n())));
            let r = knot_report(&g, cap)?;
            if r.checks.values().any(|ok| !ok) {
                return Err(Failure::Internal(format!("consistency checks failed: {:?}", r.checks)));
            }
            Ok(match fmt {
                Format::Structured => structured(&r),
                Format::Table => render_report(&r),
            })
        }
        Command::Oracle(input) => {
            let g = read_grid(input)?;
            g.require_knot()?;
            let cap = resolve_cap(&cli.global)?;
            check_size(&g, cap)?;
            let c = GridComplex::new(&g, cap)?;
            let delta = c.delta.clone().expect("knot");
            let chain = euler_check(&chain_ranks(&c), &delta, g.n());
            if !chain {
                return Err(Failure::Internal("chain-level Euler characteristic does not match".into()));
            }
            Ok(match fmt {
                Format::Structured => structured(&json!({"alexander": delta.to_string(), "chain_euler_check": chain})),
                Format::Table => format!("Alexander    {delta}\nchain Euler  ok\n"),
            })
        }
        Command::Moves { input, count, seed, simplify: depth } => {
            let g = read_grid(input)?;
            let cap = resolve_cap(&cli.global)?;
            let (out, trace) = match depth {
                Some(d) => (simplify(&g, *d), Vec::new()),
                None => random_move_trace(&g, *count, *seed, cap.max(g.n())),
            };
            Ok(match fmt {
                Format::Structured => structured(&json!({"grid": out.to_text(), "n": out.n(), "moves": trace})),
                Format::Table => format!("{}\n", out.to_text()),
            })
        }
        Command::Invariance { input, moves, seed, corrupt } => {
            let g = read_grid(input)?;
            let cap = resolve_cap(&cli.global)?;
            check_size(&g, cap)?;
            g.require_knot()?;
            progress("computing HFK-hat of the input grid");
            let before = hfk_hat(&g, cap)?;
            let moved = random_move_trace(&g, *moves, *seed, cap).0;
            progress(&format!("computing HFK-hat after {moves} moves ({0}x{0})", moved.n()));
            let mut after = hfk_hat(&moved, cap)?;
            if *corrupt {
                if let Some(v) = after.values_mut().next() {
                    *v += 1;
                }
            }
            let pass = before == after;
            let text = match fmt {
                Format::Structured => structured(&json!({
                    "pass": pass, "moves": moves, "seed": seed, "final_grid": moved.to_text(),
                    "before": before.iter().map(|(&(m, a), &v)| [m, a, v as i64]).collect::<Vec<_>>(),
                    "after": after.iter().map(|(&(m, a), &v)| [m, a, v as i64]).collect::<Vec<_>>(),
                })),
                Format::Table => format!("{} after {moves} moves (seed {seed}, final size {})\n", if pass { "pass" } else { "FAIL" }, moved.n()),
            };
            if pass {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Internal("HFK-hat changed under grid moves".into()))
            }
        }
        Command::Surgery { input, p, flavor, smax, cutoff } => {
            let (name, m) = read_model(input)?;
            let s_max = smax.unwrap_or(m.max_abs_alexander() + p.abs());
            let cone = surgery_cone(&m, *p, *flavor, s_max, *cutoff)?;
            let classes = surgery_homology(&cone)?;
            Ok(match fmt {
                Format::Structured => structured(&json!({"model": name, "p": p, "flavor": flavor, "s_max": s_max, "classes": classes})),
                Format::Table => render_surgery(&name, *p, s_max, &classes),
            })
        }
        Command::ModelCheck(input) => {
            let (name, m) = read_model(input)?;
            let hat = m.hat_ranks()?;
            Ok(match fmt {
                Format::Structured => structured(&json!({
                    "model": name, "valid": true, "generators": m.len(), "arrows": m.arrows.len(),
                    "hat": hat.iter().map(|(&(mm, a), &v)| [mm, a, v as i64]).collect::<Vec<_>>(),
                })),
                Format::Table => format!("{name}: valid, {} generators, {} arrows\nhat ranks\n{}", m.len(), m.arrows.len(), ranks_table(&hat)),
            })
        }
    }
}

fn render_surgery(name: &str, p: i64, s_max: i64, classes: &[ClassHomology]) -> String {
    let mut out = format!("{name}, p = {p}, truncation radius {s_max}\nclass  hat  towers  finite  torsion\n");
    for c in classes {
        let (towers, finite, torsion) = match &c.summary.plus {
            Some(pl) => (
                pl.towers.to_string(),
                pl.finite_rank.to_string(),
                if pl.torsion_orders.is_empty() { "-".into() } else { pl.torsion_orders.iter().map(u32::to_string).collect::<Vec<_>>().join(",") },
            ),
            None => ("-".into(), "-".into(), "-".into()),
        };
        let _ = writeln!(out, "{:>5} {:>4} {towers:>7} {finite:>7}  {torsion}", c.class, c.summary.hat_rank);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
