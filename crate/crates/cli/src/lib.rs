//! The `zxlab` command line: compile, simplify, compare, evaluate and render
//! diagrams, and run the numerical oracle.
//!
//! Exit status is 0 on success or equality, 1 when a comparison or oracle
//! check fails, 2 on any error.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zxlab_core::frontends::{compile_circuit, compile_pattern, graph_state, parse_circuit, parse_pattern};
use zxlab_core::rewrite::{simplify_with, SimplifyOptions, Strategy};
use zxlab_core::{equal_matrices, evaluate, io, CompareMode, Diagram};
use zxlab_oracle::{parse_checks, run_checks, Family};

#[derive(Parser, Debug)]
#[command(name = "zxlab", version, about = "Spider diagram toolkit")]
pub struct Cli {
    /// Machine-readable output, and errors as JSON on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled oracle checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Circuit,
    Pattern,
    Graph,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Exact,
    Scalar,
    Phase,
}

impl From<Mode> for CompareMode {
    fn from(m: Mode) -> CompareMode {
        match m {
            Mode::Exact => CompareMode::Exact,
            Mode::Scalar => CompareMode::UpToGlobalScalar,
            Mode::Phase => CompareMode::UpToGlobalPhase,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Basic,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    /// Standard and Fourier bases of ℂ^d.
    Fourier,
    /// Standard basis and the 4×4 Hadamard family F₄(x).
    F4,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a circuit, one-way pattern or graph description to a diagram.
    Compile {
        kind: Kind,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rewrite a diagram to normal form.
    Simplify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "basic")]
        strategy: StrategyArg,
        /// Write the list of applied rewrites here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Compare the matrices of two diagrams.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print the matrix of a diagram.
    Eval {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a Graphviz rendering of a diagram.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check observable-structure laws on a family of basis pairs.
    Oracle {
        #[arg(long, value_enum, default_value = "fourier")]
        family: FamilyArg,
        /// Comma-separated dimensions (fourier family).
        #[arg(long, default_value = "2")]
        dim: String,
        /// Parameter x of F₄(x).
        #[arg(long, default_value_t = 1.0)]
        param: f64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
    },
}

/// What a command produced: text for stdout and an exit status.
#[derive(Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<Diagram> {
    io::from_json(&read(path)?).with_context(|| format!("invalid diagram in {}", path.display()))
}

/// Writes `text` to `path`, or returns it for stdout.
fn emit(text: String, path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// `vertices N` followed by one `a b` edge per line; `#` comments.
pub fn parse_graph(text: &str) -> anyhow::Result<Diagram> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let words: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let num = |w: &str| w.parse::<usize>().with_context(|| format!("line {}: expected a number, found `{w}`", i + 1));
        match (n, words.as_slice()) {
            (None, ["vertices", k]) => n = Some(num(k)?),
            (None, _) => bail!("line {}: expected `vertices N`", i + 1),
            (Some(_), [a, b]) => edges.push((num(a)?, num(b)?)),
            (Some(_), _) => bail!("line {}: expected an edge `a b`", i + 1),
        }
    }
    let Some(n) = n else { bail!("empty graph description, expected `vertices N`") };
    Ok(graph_state(n, &edges)?)
}

fn fmt_c(z: zxlab_core::C64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Compile { kind, input, output } => {
            let text = read(input)?;
            let d = match kind {
                Kind::Circuit => compile_circuit(&parse_circuit(&text)?),
                Kind::Pattern => compile_pattern(&parse_pattern(&text)?),
                Kind::Graph => parse_graph(&text)?,
            };
            Ok(Outcome::ok(with_newline(emit(io::to_json(&d), output)?)))
        }
        Command::Simplify { input, output, strategy, trace, max_steps } => {
            let d = load(input)?;
            let opts = SimplifyOptions {
                strategy: match strategy {
                    StrategyArg::Basic => Strategy::Basic,
                    StrategyArg::Full => Strategy::Full,
                },
                max_steps: *max_steps,
            };
            let (s, steps) = simplify_with(&d, &opts);
            if let Some(t) = trace {
                fs::write(t, io::trace_to_json(&steps)).with_context(|| format!("cannot write {}", t.display()))?;
            }
            let out = emit(io::to_json(&s), output)?;
            if out.is_empty() && cli.json {
                let summary = json!({"steps": steps.len(), "vertices": s.vertex_count(), "edges": s.edge_count()});
                return Ok(Outcome::ok(format!("{summary}\n")));
            }
            Ok(Outcome::ok(with_newline(out)))
        }
        Command::Verify { a, b, mode, tol } => {
            let (ma, mb) = (evaluate(&load(a)?)?, evaluate(&load(b)?)?);
            let (equal, ratio) = if ma.shape() != mb.shape() {
                (false, None)
            } else {
                let c = equal_matrices(&ma, &mb, (*mode).into(), *tol)?;
                (c.equal, c.ratio)
            };
            let stdout = if cli.json {
                let ratio = ratio.filter(|_| equal).map(|z| json!([z.re, z.im]));
                let v = json!({"equal": equal, "mode": format!("{mode:?}").to_lowercase(), "tol": tol, "ratio": ratio});
                format!("{v}\n")
            } else if equal {
                match ratio {
                    Some(z) if !matches!(mode, Mode::Exact) => format!("equal (ratio {})\n", fmt_c(z)),
                    _ => "equal\n".to_string(),
                }
            } else if ma.shape() != mb.shape() {
                format!("not equal (shapes {:?} and {:?})\n", ma.shape(), mb.shape())
            } else {
                "not equal\n".to_string()
            };
            Ok(Outcome { code: if equal { 0 } else { 1 }, stdout })
        }
        Command::Eval { input, output } => {
            let m = evaluate(&load(input)?)?;
            let text = if cli.json || output.is_some() {
                serde_json::to_string_pretty(&m.to_json_value())?
            } else {
                m.to_string()
            };
            Ok(Outcome::ok(with_newline(emit(text, output)?)))
        }
        Command::Render { input, output } => {
            let d = load(input)?;
            Ok(Outcome::ok(with_newline(emit(io::to_dot(&d), output)?)))
        }
        Command::Oracle { family, dim, param, checks } => {
            let checks = parse_checks(checks)?;
            let families: Vec<Family> = match family {
                FamilyArg::Fourier => dim
                    .split(',')
                    .map(|t| t.trim().parse().map(Family::Fourier).with_context(|| format!("bad dimension `{t}`")))
                    .collect::<anyhow::Result<_>>()?,
                FamilyArg::F4 => vec![Family::F4(*param)],
            };
            let mut all_pass = true;
            let mut lines = Vec::new();
            let mut values = Vec::new();
            for f in families {
                let pair = f.pair()?;
                for r in run_checks(&pair, &checks, cli.seed)? {
                    all_pass &= r.pass;
                    if cli.json {
                        let mut v = r.to_json();
                        v["family"] = json!(f.to_string());
                        values.push(v);
                    } else {
                        let mut line = format!(
                            "{} {} {} residual={:.3e}",
                            if r.pass { "PASS" } else { "FAIL" },
                            f,
                            r.check,
                            r.residual
                        );
                        if !r.witnesses.is_empty() {
                            line.push_str(&format!(" [{}]", r.witnesses.join("; ")));
                        }
                        lines.push(line);
                    }
                }
            }
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&values)?)
            } else {
                lines.join("\n") + "\n"
            };
            Ok(Outcome { code: if all_pass { 0 } else { 1 }, stdout })
        }
    }
}
