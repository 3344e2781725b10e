use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biarc::sweep::{parse_range, report, sweep, Source, SweepSpec};
use biarc::{draw, generate, oracle, parse_chi, render, validate_file, write_arc, Algo, CmdError, GenKind, Outer, SvgOptions};
use biarc_core::diagram::Credit;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "biarc", version, about = "Monotone arc diagrams with few down-up biarcs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Draw a triangulation (.rot) or a 3-tree sequence (.3t).
    Draw {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        algo: Algo,
        #[arg(long, default_value = "1/5", value_parser = parse_chi)]
        chi: Credit,
        /// Outer face "a,b,c", or "random" to pick one with --seed.
        #[arg(long)]
        outer: Option<Outer>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the .arc diagram (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print the step log.
        #[arg(long)]
        trace: bool,
    },
    /// Generate instances.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base triangulation for Kleetopes: a .rot file or k4, octahedron,
        /// icosahedron.
        #[arg(long)]
        base: Option<String>,
        /// Output file, or directory when several files are generated.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a diagram (.arc), optionally against its graph (.rot).
    Validate {
        input: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Exact minimum number of biarcs of a small triangulation.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Run an algorithm over generated instances.
    Sweep {
        #[arg(long, value_enum)]
        algo: Algo,
        /// Inclusive size range "a..b"; base sizes for Kleetopes.
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        source: Source,
        #[arg(long, default_value = "1/5", value_parser = parse_chi)]
        chi: Credit,
    },
    /// Render a diagram (.arc) as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(p: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(p).map_err(|e| CmdError::Input(format!("{}: {e}", p.display())))
}

fn write(p: &Path, s: &str) -> Result<(), CmdError> {
    std::fs::write(p, s).map_err(|e| CmdError::Input(format!("{}: {e}", p.display())))
}

fn emit(out: Option<&Path>, s: &str) -> Result<(), CmdError> {
    match out {
        Some(p) => write(p, s),
        None => {
            out_str(s);
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn out_str(s: &str) {
    let _ = std::io::stdout().write_all(s.as_bytes());
}

fn run(cmd: Cmd) -> Result<(), CmdError> {
    match cmd {
        Cmd::Draw { input, algo, chi, outer, seed, out, svg, trace } => {
            let o = draw(&read(&input)?, algo, chi, outer, seed)?;
            if trace {
                out_str(&o.trace);
            }
            emit(out.as_deref(), &write_arc(&o.diagram))?;
            if let Some(p) = svg {
                write(&p, &biarc::render_svg(&o.diagram, &SvgOptions::default()))?;
            }
            eprintln!("{}", o.summary());
        }
        Cmd::Gen { kind, n, seed, base, out } => {
            let base = match base {
                Some(b) if biarc::named_graph(&b).is_none() => Some(read(Path::new(&b))?),
                b => b,
            };
            let files = generate(kind, n, seed, base.as_deref())?;
            match (files.as_slice(), out) {
                ([(_, s)], out) => emit(out.as_deref(), s)?,
                (_, Some(dir)) => {
                    std::fs::create_dir_all(&dir).map_err(|e| CmdError::Input(format!("{}: {e}", dir.display())))?;
                    for (name, s) in &files {
                        write(&dir.join(name), s)?;
                    }
                    eprintln!("wrote {} files to {}", files.len(), dir.display());
                }
                (_, None) => return Err(CmdError::Input(String::from("several files: --out DIR is required"))),
            }
        }
        Cmd::Validate { input, graph } => {
            let g = graph.map(|p| read(&p)).transpose()?;
            out_str(&format!("{}\n", validate_file(&read(&input)?, g.as_deref())?));
        }
        Cmd::Oracle { input, max_n } => out_str(&oracle(&read(&input)?, max_n)?),
        Cmd::Sweep { algo, n_range: (lo, hi), count, seed, source, chi } => {
            let rows = sweep(&SweepSpec { algo, lo, hi, count, seed, source, chi })?;
            out_str(&report(&rows));
            if let Some(r) = rows.iter().find(|r| !r.pass()) {
                return Err(CmdError::Failed(format!(
                    "instance {} (size {}, seed {}) failed: {}",
                    r.index,
                    r.param,
                    r.seed,
                    r.error.as_deref().unwrap_or_default()
                )));
            }
        }
        Cmd::Render { input, out } => emit(out.as_deref(), &render(&read(&input)?, &SvgOptions::default())?)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
