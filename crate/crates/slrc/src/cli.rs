//! Argument parsing and dispatch for the `slrc` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use slrc_core::config::{build_config_code, build_module_configuration, verify_configuration};
use slrc_core::engine::{repair_plan, sequential_decode, Mode, RecoveryIndex};
use slrc_core::graph::{minimality_audit, rate_bounds, verify_repair_graph, DeltaMode};
use slrc_core::product::build_product_code;
use slrc_core::{Budget, LinearCode, SupportSet};

use crate::error::{Error, Result};
use crate::formats::{self, CfgFile, PcmFile};
use crate::parallel;
use crate::report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "slrc",
    version,
    about = "Build, verify and audit binary sequential locally repairable codes"
)]
pub struct Cli {
    /// Cap on elementary pattern checks for exhaustive loops.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    pub budget: u64,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code and write its parity-check matrix.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Exhaustively check recoverability of all patterns up to size t.
    Verify {
        #[arg(long)]
        pcm: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Sequential)]
        mode: ModeArg,
    },
    /// Largest t for which sequential recovery holds.
    MaxT {
        #[arg(long)]
        pcm: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Repair the erasures in a word file.
    Decode {
        #[arg(long)]
        pcm: PathBuf,
        #[arg(long)]
        r: usize,
        /// One line of 0/1/? characters; `?` marks an erasure.
        #[arg(long)]
        word: PathBuf,
        /// Extra erased coordinates: 1-based positions or labels, comma separated.
        #[arg(long, value_delimiter = ',')]
        erasures: Vec<String>,
        /// Write the repaired word here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum number of sources over all repair graphs.
    DeltaStar {
        #[arg(long)]
        pcm: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = DeltaArg::Exact)]
        mode: DeltaArg,
    },
    /// Check a repair graph against the necessary conditions for minimality.
    GraphAudit {
        #[arg(long)]
        dag: PathBuf,
        #[arg(long)]
        t: usize,
        /// Overrides the locality in the file header.
        #[arg(long)]
        r: Option<usize>,
        /// Also check the graph is a repair graph of this code.
        #[arg(long)]
        pcm: Option<PathBuf>,
    },
    /// Rate bounds for locality r and t erasures.
    Bounds {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        /// Vector for the conjectured rate, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u32>>,
    },
    /// Check a configuration file against the resolvable-configuration axioms.
    ConfigCheck {
        #[arg(long)]
        cfg: PathBuf,
        /// Overrides r from the file header.
        #[arg(long)]
        r: Option<usize>,
        /// Overrides t from the file header.
        #[arg(long)]
        t: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    /// Product-family code on points of Z_{r+1}^m.
    Product(BuildArgs),
    /// Configuration code on the free module Z_r^m (odd t).
    ConfigModule {
        #[command(flatten)]
        args: BuildArgs,
        /// Configuration output (default: next to --out with extension .cfg).
        #[arg(long)]
        cfg_out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Sequential,
    Parallel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaArg {
    Exact,
    Heuristic,
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    use slrc_core::Error as C;
    match err {
        Error::Core(C::ResourceLimit { .. }) => EXIT_RESOURCE,
        Error::Core(C::Unrecoverable(_) | C::Inconsistent) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status. Reports go to `out`, warnings and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load_code(path: &Path) -> Result<LinearCode> {
    formats::parse_pcm(&formats::read_file(path)?)?.into_code()
}

fn index_for(code: &LinearCode, r: usize, err: &mut dyn Write) -> Result<RecoveryIndex> {
    let index = RecoveryIndex::new(code, r)?;
    if index.locality_exceeds_dimension() {
        let _ = writeln!(
            err,
            "warning: r = {r} is at least k = {}; locality is not the binding constraint",
            code.k()
        );
    }
    Ok(index)
}

fn emit(out: &mut dyn Write, json: bool, doc: &impl Report) -> Result<()> {
    out.write_all(doc.render(json).as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

/// A 1-based position or a label.
fn resolve(code: &LinearCode, token: &str) -> Result<usize> {
    let token = token.trim();
    if let Some(p) = code.position(token) {
        return Ok(p);
    }
    match token.parse::<usize>() {
        Ok(p) if (1..=code.n()).contains(&p) => Ok(p - 1),
        _ => Err(slrc_core::Error::Argument(format!("unknown coordinate {token:?}")).into()),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let budget = Budget(cli.budget);
    let pool = || {
        parallel::pool(cli.threads)
            .map_err(|e| Error::from(slrc_core::Error::Argument(format!("thread pool: {e}"))))
    };
    match &cli.command {
        Command::Build(BuildCmd::Product(a)) => {
            let (_, code) = build_product_code(a.r, a.m, a.t)?;
            formats::write_file(&a.out, &formats::write_pcm(&PcmFile::from_code(&code)))?;
            let doc = BuildDoc {
                family: "product",
                r: a.r,
                m: a.m,
                t: a.t,
                n: code.n(),
                k: code.k(),
                rows: code.pcm().rows(),
                pcm: a.out.display().to_string(),
                cfg: None,
            };
            emit(out, cli.json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::Build(BuildCmd::ConfigModule { args: a, cfg_out }) => {
            let (code, _) = build_config_code(a.r, a.m, a.t)?;
            let cfg = build_module_configuration(a.r, a.m, a.t)?;
            let cfg_path = cfg_out
                .clone()
                .unwrap_or_else(|| a.out.with_extension("cfg"));
            formats::write_file(&a.out, &formats::write_pcm(&PcmFile::from_code(&code)))?;
            let cfg_text = formats::write_cfg(&CfgFile {
                config: cfg,
                r: a.r,
                t: a.t,
            });
            formats::write_file(&cfg_path, &cfg_text)?;
            let doc = BuildDoc {
                family: "config-module",
                r: a.r,
                m: a.m,
                t: a.t,
                n: code.n(),
                k: code.k(),
                rows: code.pcm().rows(),
                pcm: a.out.display().to_string(),
                cfg: Some(cfg_path.display().to_string()),
            };
            emit(out, cli.json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::Verify { pcm, r, t, mode } => {
            let code = load_code(pcm)?;
            let start = Instant::now();
            let index = index_for(&code, *r, err)?;
            let mode = match mode {
                ModeArg::Sequential => Mode::Sequential,
                ModeArg::Parallel => Mode::Parallel,
            };
            let rep = parallel::verify(&pool()?, &index, *t, mode, budget)?;
            let doc = VerifyDoc::new(&rep, &code, start.elapsed().as_secs_f64());
            emit(out, cli.json, &doc)?;
            Ok(if rep.verdict { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::MaxT { pcm, r } => {
            let code = load_code(pcm)?;
            let start = Instant::now();
            let index = index_for(&code, *r, err)?;
            let max_t = parallel::max_sequential_t(&pool()?, &index, budget)?;
            let doc = MaxTDoc {
                r: *r,
                max_t,
                elapsed: start.elapsed().as_secs_f64(),
            };
            emit(out, cli.json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::Decode {
            pcm,
            r,
            word,
            erasures,
            out: word_out,
        } => {
            let code = load_code(pcm)?;
            let mut w = formats::parse_word(&formats::read_file(word)?)?;
            if w.len() != code.n() {
                return Err(slrc_core::Error::Argument(format!(
                    "word has length {}, code length is {}",
                    w.len(),
                    code.n()
                ))
                .into());
            }
            for tok in erasures.iter().filter(|t| !t.trim().is_empty()) {
                w[resolve(&code, tok)?] = None;
            }
            let e: SupportSet = (0..w.len()).filter(|&i| w[i].is_none()).collect();
            let index = index_for(&code, *r, err)?;
            let bits: Vec<bool> = w.iter().map(|b| b.unwrap_or(false)).collect();
            let fixed = sequential_decode(&code, &index, &bits, &e)?;
            let order = repair_plan(&index, &e)
                .map_err(slrc_core::Error::from)?
                .order();
            let text = formats::write_word(&fixed.iter().map(|&b| Some(b)).collect::<Vec<_>>());
            if let Some(path) = word_out {
                formats::write_file(path, &text)?;
            }
            let doc = DecodeDoc {
                erasures: code.labels_of(&e),
                order: order.iter().map(|&i| code.label(i).to_string()).collect(),
                word: text.trim_end().to_string(),
            };
            emit(out, cli.json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::DeltaStar { pcm, r, mode } => {
            let code = load_code(pcm)?;
            let start = Instant::now();
            let index = index_for(&code, *r, err)?;
            let (dm, name) = match mode {
                DeltaArg::Exact => (DeltaMode::Exact, "exact"),
                DeltaArg::Heuristic => (DeltaMode::Heuristic, "heuristic"),
            };
            let res = parallel::delta_star_search(&pool()?, &index, code.k(), dm, budget)?;
            let doc = DeltaDoc::new(&res, &code, name, *r, start.elapsed().as_secs_f64());
            emit(out, cli.json, &doc)?;
            Ok(EXIT_OK)
        }
        Command::GraphAudit { dag, t, r, pcm } => {
            let file = formats::parse_dag(&formats::read_file(dag)?)?;
            let r = r.unwrap_or(file.r);
            let g = &file.graph;
            let rep = minimality_audit(g, *t, r, budget)?;
            let mut doc = AuditDoc::new(&rep, g.n(), g.sources().len());
            let mut ok = rep.consistent();
            if let Some(p) = pcm {
                let code = load_code(p)?;
                let gr = verify_repair_graph(&code, g, r);
                ok &= gr.is_valid();
                doc.graph_faults = Some(
                    gr.violations
                        .iter()
                        .map(|v| ViolationDoc {
                            clause: format!("{:?}", v.fault),
                            detail: v.detail.clone(),
                            witness: v.vertices.iter().map(|x| x + 1).collect(),
                        })
                        .collect(),
                );
            }
            emit(out, cli.json, &doc)?;
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Bounds { r, t, alpha } => {
            let b = rate_bounds(*r, *t, alpha.as_deref())?;
            emit(out, cli.json, &BoundsDoc::new(*r, *t, b))?;
            Ok(EXIT_OK)
        }
        Command::ConfigCheck { cfg, r, t } => {
            let file = formats::parse_cfg(&formats::read_file(cfg)?)?;
            let (r, t) = (r.unwrap_or(file.r), t.unwrap_or(file.t));
            let c = &file.config;
            let rep = verify_configuration(c, r, t);
            let doc = ConfigCheckDoc {
                k: c.k(),
                b: c.b(),
                r,
                t,
                classes: c.num_classes(),
                valid: rep.is_valid(),
                violations: rep
                    .violations
                    .iter()
                    .map(|v| ViolationDoc {
                        clause: v.axiom.name().to_string(),
                        detail: v.detail.clone(),
                        witness: v.witness.iter().map(|x| x + 1).collect(),
                    })
                    .collect(),
            };
            emit(out, cli.json, &doc)?;
            Ok(if rep.is_valid() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}
