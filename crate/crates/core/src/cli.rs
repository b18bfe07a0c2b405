//! Command-line front end. [`run`] is a pure function from arguments (and the
//! files they name) to output text and an exit code: 0 on success, 1 when an
//! input cannot be parsed, 2 when a well-formed request cannot be carried out.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::exec::Execution;
use crate::fi::{self, EnumerationOptions};
use crate::graph::{parse_subgroup_file, StallingsGraph};
use crate::malnormal;
use crate::random::{self, RandomSpec};
use crate::words::{Basis, ReducedWord};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "stallings",
    version,
    about = "Stallings graphs of subgroups of free groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct DotArg {
    /// Also write the resulting graph in DOT format to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fold the generators into the canonical graph text.
    Build {
        file: PathBuf,
        #[command(flatten)]
        dot: DotArg,
    },
    /// Decide membership of a word.
    Member { file: PathBuf, word: String },
    /// Print the tail word, core entry and core vertices.
    Decompose { file: PathBuf },
    /// Index in the free group, or in a second subgroup when given.
    Index {
        file: PathBuf,
        larger: Option<PathBuf>,
    },
    /// Whether the second subgroup is a finite-index extension of the first.
    IsFiExt { smaller: PathBuf, larger: PathBuf },
    /// The maximum finite-index extension.
    Commensurator {
        file: PathBuf,
        #[command(flatten)]
        dot: DotArg,
    },
    /// Every finite-index extension with its index, plus covering pairs.
    FiExtensions {
        file: PathBuf,
        /// Abort past this many extensions.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        /// Run without the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Upper bounds on the number of extensions of an n-vertex core.
    FiBound { n: usize },
    /// Number of subspaces of Z_2^k.
    SubspaceCount { k: usize },
    /// Whether two subgroups have the same commensurator.
    FiEqual { first: PathBuf, second: PathBuf },
    /// Check the tail word and core language against the subgroup shape.
    ValidateLanguage { file: PathBuf },
    /// The intersection of two subgroups.
    Intersect {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        dot: DotArg,
    },
    /// The subgroup generated by two subgroups.
    Join {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        dot: DotArg,
    },
    /// The conjugate g^-1 H g.
    Conjugate {
        file: PathBuf,
        word: String,
        #[command(flatten)]
        dot: DotArg,
    },
    /// A subgroup of index r.
    IndexR {
        file: PathBuf,
        r: usize,
        #[command(flatten)]
        dot: DotArg,
    },
    /// Whether H meets each of its proper conjugates trivially.
    IsMalnormal { file: PathBuf },
    /// The least malnormal extension.
    MalnormalClosure {
        file: PathBuf,
        /// Print every intermediate graph.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        dot: DotArg,
    },
    /// A seeded random subgroup file.
    Random {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        gens: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the commensurator on random graphs.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Parse(String),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Semantic(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match execute(cli.command, &mut out) {
        Ok(()) => Output {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Err(Failure::Parse(m)) => Output {
            code: 1,
            stdout: out,
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Semantic(m)) => Output {
            code: 2,
            stdout: out,
            stderr: format!("error: {m}\n"),
        },
    }
}

/// Reads a subgroup file (`rank: r` header) or canonical graph text
/// (`vertices: n` header).
fn load(path: &Path) -> CliResult<StallingsGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    let result = match first {
        Some(l) if l.starts_with("vertices") => StallingsGraph::parse_text(&text, None),
        _ => parse_subgroup_file(&text).map(|f| f.graph()),
    };
    result.map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_pair(a: &Path, b: &Path) -> CliResult<(StallingsGraph, StallingsGraph)> {
    let (g, h) = (load(a)?, load(b)?);
    let basis = g.basis().max(h.basis());
    Ok((g.with_basis(basis)?, h.with_basis(basis)?))
}

fn word(text: &str, basis: Basis) -> CliResult<ReducedWord> {
    Ok(ReducedWord::parse(text, basis)?)
}

fn emit_graph(out: &mut String, g: &StallingsGraph, dot: &DotArg) -> CliResult<()> {
    out.push_str(&g.to_text());
    if let Some(path) = &dot.dot {
        std::fs::write(path, g.to_dot())
            .map_err(|e| Failure::Semantic(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn join_vertices(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn execute(command: Command, out: &mut String) -> CliResult<()> {
    match command {
        Command::Build { file, dot } => emit_graph(out, &load(&file)?, &dot)?,
        Command::Member { file, word: w } => {
            let g = load(&file)?;
            let w = word(&w, g.basis())?;
            let _ = writeln!(out, "member: {}", g.contains(&w));
        }
        Command::Decompose { file } => {
            let d = load(&file)?.decompose();
            let _ = writeln!(out, "tail: {}", d.tail_word);
            let _ = writeln!(out, "entry: {}", d.core_entry);
            let _ = writeln!(out, "core: {}", join_vertices(&d.core_vertices));
            let _ = writeln!(out, "tail-vertices: {}", join_vertices(&d.tail_vertices));
        }
        Command::Index { file, larger } => {
            let (h, g) = match larger {
                Some(larger) => load_pair(&file, &larger)?,
                None => {
                    let h = load(&file)?;
                    let f = StallingsGraph::whole_group(h.basis());
                    (h, f)
                }
            };
            match h.is_fi_extension(&g) {
                Some(d) => _ = writeln!(out, "index: {d}"),
                None => _ = writeln!(out, "index: infinite"),
            }
        }
        Command::IsFiExt { smaller, larger } => {
            let (h, g) = load_pair(&smaller, &larger)?;
            match h.is_fi_extension(&g) {
                Some(d) => _ = writeln!(out, "fi-extension: true\nindex: {d}"),
                None => _ = writeln!(out, "fi-extension: false"),
            }
        }
        Command::Commensurator { file, dot } => {
            emit_graph(out, &fi::commensurator(&load(&file)?), &dot)?
        }
        Command::FiExtensions {
            file,
            cap,
            sequential,
        } => {
            let h = load(&file)?;
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let lattice = fi::enumerate_fi_extensions_with(
                &h,
                EnumerationOptions {
                    cap,
                    exec,
                    order: false,
                },
            )?;
            let _ = writeln!(out, "count: {}", lattice.len());
            for (i, m) in lattice.members.iter().enumerate() {
                let _ = writeln!(out, "member: {i}\nindex: {}", m.index);
                out.push_str(&m.key);
            }
            for (a, b) in &lattice.hasse {
                let _ = writeln!(out, "hasse: {a} {b}");
            }
        }
        Command::FiBound { n } => {
            let b = fi::fi_extension_bound(n)?;
            let _ = writeln!(
                out,
                "closed-form: {}\nrecurrence: {}",
                b.closed_form, b.recurrence
            );
        }
        Command::SubspaceCount { k } => {
            let c = fi::subspace_count(k)?;
            let _ = writeln!(out, "count: {}", c.total);
            for (d, s) in c.by_dimension.iter().enumerate() {
                let _ = writeln!(out, "dimension {d}: {s}");
            }
        }
        Command::FiEqual { first, second } => {
            let (h, k) = load_pair(&first, &second)?;
            let _ = writeln!(out, "fi-equal: {}", fi::fi_equivalent(&h, &k));
        }
        Command::ValidateLanguage { file } => {
            let report = fi::validate_extension_language(&load(&file)?)?;
            for (name, ok) in report.clauses() {
                let _ = writeln!(out, "{name}: {}", if ok { "pass" } else { "fail" });
            }
            let _ = writeln!(out, "valid: {}", report.passed());
        }
        Command::Intersect { first, second, dot } => {
            let (h, k) = load_pair(&first, &second)?;
            emit_graph(out, &h.intersect(&k), &dot)?;
        }
        Command::Join { first, second, dot } => {
            let (h, k) = load_pair(&first, &second)?;
            emit_graph(out, &h.join(&k), &dot)?;
        }
        Command::Conjugate { file, word: w, dot } => {
            let h = load(&file)?;
            let g = word(&w, h.basis())?;
            emit_graph(out, &h.conjugate(&g), &dot)?;
        }
        Command::IndexR { file, r, dot } => {
            emit_graph(out, &load(&file)?.index_r_subgroup(r)?, &dot)?
        }
        Command::IsMalnormal { file } => {
            let _ = writeln!(out, "malnormal: {}", malnormal::is_malnormal(&load(&file)?));
        }
        Command::MalnormalClosure { file, trace, dot } => {
            let steps = malnormal::malnormal_closure_trace(&load(&file)?);
            let _ = writeln!(out, "rounds: {}", steps.len() - 1);
            if trace {
                for (i, g) in steps.iter().enumerate() {
                    let _ = writeln!(out, "step: {i}");
                    out.push_str(&g.to_text());
                }
                if let Some(path) = &dot.dot {
                    emit_graph(
                        &mut String::new(),
                        steps.last().unwrap(),
                        &DotArg {
                            dot: Some(path.clone()),
                        },
                    )?;
                }
            } else {
                emit_graph(out, steps.last().unwrap(), &dot)?;
            }
        }
        Command::Random {
            rank,
            gens,
            max_len,
            seed,
        } => {
            let spec = RandomSpec {
                rank,
                generators: gens,
                max_len,
                seed,
            };
            out.push_str(&random::random_subgroup(&spec)?.to_string());
        }
        Command::Bench { sizes, rank, seed } => {
            let basis = Basis::new(rank)?;
            for n in sizes {
                let g = random::random_graph(basis, n, 0.9, seed);
                let start = Instant::now();
                let c = fi::commensurator(&g);
                let secs = start.elapsed().as_secs_f64();
                let _ = writeln!(
                    out,
                    "size: {n} vertices: {} commensurator-vertices: {} seconds: {secs:.6}",
                    g.vertex_count(),
                    c.vertex_count()
                );
            }
        }
    }
    Ok(())
}
