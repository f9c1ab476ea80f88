//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit status.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bounds::{
    compare_syndromes, gv_stabilizer, gv_subsystem, joint_gv_check, lp_feasible, prime_power, pure_hamming_check,
    pure_singleton_check, FeasibilityReport, ParameterQuery,
};
use crate::codespace::{read_code_file, write_code, AdditiveCode, Ambient, Metric};
use crate::construct::{
    bch_code, euclidean_construction, exchange_info_gauge, gv_random_code, hermitian_construction, rs_code,
    subsystem_from_additive, subsystem_from_quadratic, SubsystemCode,
};
use crate::distance::{min_weight, DistanceOptions, Strategy};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::gauge::reduction_chain;
use crate::report::{feasibility_document, subsystem_document, weight_document, Document, Manifest};
use crate::reproduce::{quadratic_pair, run_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Environment variable holding the default number of search threads.
pub const JOBS_ENV: &str = "SUBSYS_JOBS";

#[derive(Debug, Parser)]
#[command(name = "subsys", version, about = "Construct and analyze quantum subsystem codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a subsystem code and print its report.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// Minimum weight of the code in a code file.
    Distance {
        /// Code file.
        file: PathBuf,
        /// hamming or symplectic; defaults to the ambient's natural metric.
        #[arg(long)]
        metric: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Parameter bounds: existence (gv, joint) and nonexistence (lp, singleton, hamming).
    Bounds {
        check: BoundCheck,
        #[arg(long, required_unless_present = "batch")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "batch")]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, required_unless_present = "batch")]
        d: Option<usize>,
        #[arg(long, required_unless_present = "batch")]
        q: Option<u32>,
        /// File with one `n k r d q` query per line; `#` starts a comment.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Turn gauge qudits of the code defined by X into stabilizers.
    Reduce {
        /// Code file holding X.
        #[arg(long)]
        file: PathBuf,
        /// Number of GF(p) reduction steps, or `all`.
        #[arg(long, default_value = "all")]
        steps: String,
        /// Where to write the final X.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Swap information and gauge qudits of a pure code defined by X.
    Exchange {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Regenerate a reference table and compare it with the expected rows.
    Reproduce {
        #[arg(value_parser = ["table-bch", "table-rs", "table-optimal", "table-lp", "all"])]
        target: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundCheck {
    Lp,
    Gv,
    GvStabilizer,
    Singleton,
    Hamming,
    Compare,
    Joint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bch,
    Rs,
}

#[derive(Debug, Subcommand)]
pub enum Recipe {
    /// From a GF(q²)-linear BCH or RS code with the hermitian form.
    Hermitian {
        #[arg(long)]
        family: Family,
        /// Size of the field of the classical code, q².
        #[arg(long)]
        q2: u32,
        /// Length (BCH only; RS has length q² − 1).
        #[arg(long)]
        n: Option<usize>,
        /// Designed distance (BCH).
        #[arg(long)]
        delta: Option<usize>,
        /// Dimension (RS).
        #[arg(long)]
        k: Option<usize>,
        /// First exponent of the BCH defining set.
        #[arg(long, default_value_t = 1)]
        offset: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// X = C₁ × C₂ for two GF(q)-linear codes in GF(q)^n.
    Euclidean {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// X read from a code file, symplectic or over GF(q²).
    Additive {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Random X with |X| = p^(r+2s) and |X ∩ X^⊥s| = p^r.
    Random {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write X to this code file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Search weights below this; larger minima are reported as ">=cap".
    #[arg(long)]
    pub cap: Option<usize>,
    /// Cap for the purity level search.
    #[arg(long)]
    pub purity_cap: Option<usize>,
    /// auto, vector, support or codeword.
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    /// Worker threads for distance searches.
    #[arg(long, env = JOBS_ENV)]
    pub jobs: Option<usize>,
}

impl SearchArgs {
    pub fn options(&self) -> Result<DistanceOptions> {
        let strategy = Strategy::parse(&self.strategy)
            .filter(|s| *s != Strategy::Inherited)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown strategy {:?}", self.strategy)))?;
        Ok(DistanceOptions {
            cap: self.cap,
            purity_cap: self.purity_cap,
            strategy,
            jobs: self.jobs,
        })
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Invariant(_) => EXIT_OTHER,
        _ => EXIT_HYPOTHESIS,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_HYPOTHESIS } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, doc: &Document) -> Result<()> {
    out.write_all(doc.render().as_bytes())?;
    Ok(())
}

fn write_x(path: &Option<PathBuf>, code: &SubsystemCode) -> Result<()> {
    if let Some(p) = path {
        let x = match code.origin() {
            crate::construct::Origin::Quadratic(c) | crate::construct::Origin::Hermitian(c) => c,
            _ => code.x(),
        };
        std::fs::write(p, write_code(x))?;
    }
    Ok(())
}

fn finish_code(out: &mut dyn Write, code: &SubsystemCode, manifest: &Manifest) -> Result<i32> {
    emit(out, &subsystem_document(code, manifest))?;
    Ok(if code.is_degenerate() { EXIT_DEGENERATE } else { EXIT_OK })
}

/// Subsystem code defined by the X in a code file.
pub fn code_from_file(path: &Path, opts: &DistanceOptions) -> Result<SubsystemCode> {
    let x = read_code_file(path)?;
    code_from_x(&x, opts)
}

pub fn code_from_x(x: &AdditiveCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    match x.space().ambient() {
        Ambient::Symplectic => subsystem_from_additive(x, opts),
        Ambient::Quadratic => subsystem_from_quadratic(x, opts),
        Ambient::Plain => Err(Error::Incompatible(
            "X must live in the symplectic ambient or over GF(q²)".into(),
        )),
    }
}

fn file_manifest(command: &str, path: &Path, opts: &DistanceOptions) -> Manifest {
    let mut m = Manifest::new(command).with_options(opts);
    m.set("file", path.display());
    m
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Construct { recipe } => construct(recipe, out),
        Command::Distance { file, metric, search } => {
            let opts = search.options()?;
            let code = read_code_file(file)?;
            let metric = match metric {
                Some(m) => Metric::parse(m).ok_or_else(|| Error::InvalidParameters(format!("unknown metric {m:?}")))?,
                None => code.space().default_metric(),
            };
            let w = min_weight(&code, metric, &opts)?;
            let mut manifest = file_manifest("distance", file, &opts);
            manifest.set("metric", metric.name());
            emit(out, &weight_document(&w, &manifest))?;
            Ok(EXIT_OK)
        }
        Command::Bounds {
            check,
            n,
            k,
            r,
            d,
            q,
            batch,
        } => {
            let queries: Vec<(usize, usize, usize, usize, u32)> = match batch {
                Some(path) => parse_batch(&std::fs::read_to_string(path)?)?,
                None => vec![(n.unwrap_or(0), k.unwrap_or(0), *r, d.unwrap_or(0), q.unwrap_or(0))],
            };
            let docs = queries
                .par_iter()
                .map(|&(n, k, r, d, q)| bound_document(*check, n, k, r, d, q))
                .collect::<Result<Vec<Document>>>()?;
            for (i, doc) in docs.iter().enumerate() {
                if i > 0 {
                    out.write_all(b"\n")?;
                }
                emit(out, doc)?;
            }
            Ok(EXIT_OK)
        }
        Command::Reduce {
            file,
            steps,
            out: out_path,
            search,
        } => {
            let opts = search.options()?;
            let code = code_from_file(file, &opts)?;
            let steps = match steps.as_str() {
                "all" => None,
                s => Some(
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidParameters(format!("steps must be a number or `all`, got {s:?}")))?,
                ),
            };
            let chain = reduction_chain(&code, steps, &opts)?;
            let manifest = file_manifest("reduce", file, &opts);
            emit(out, &subsystem_document(&code, &manifest))?;
            for c in &chain {
                out.write_all(b"\n")?;
                emit(out, &subsystem_document(c, &manifest))?;
            }
            if let (Some(p), Some(last)) = (out_path, chain.last()) {
                std::fs::write(p, write_code(last.x()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Exchange {
            file,
            out: out_path,
            search,
        } => {
            let opts = search.options()?;
            let code = code_from_file(file, &opts)?;
            let swapped = exchange_info_gauge(&code, &opts)?;
            write_x(out_path, &swapped)?;
            finish_code(out, &swapped, &file_manifest("exchange", file, &opts))
        }
        Command::Reproduce { target, search } => {
            let opts = search.options()?;
            let rows = run_table(target, &opts)
                .ok_or_else(|| Error::InvalidParameters(format!("unknown table {target:?}")))?;
            let mut failures = 0;
            for row in &rows {
                writeln!(out, "{}", row.line())?;
                failures += usize::from(!row.pass);
            }
            writeln!(out, "summary: {} rows, {} passed, {} failed", rows.len(), rows.len() - failures, failures)?;
            Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn construct(recipe: &Recipe, out: &mut dyn Write) -> Result<i32> {
    match recipe {
        Recipe::Hermitian {
            family,
            q2,
            n,
            delta,
            k,
            offset,
            out: o,
        } => {
            let opts = o.search.options()?;
            let (p, m) = prime_power(*q2)
                .filter(|(_, m)| m % 2 == 0)
                .ok_or_else(|| Error::InvalidParameters(format!("q2 = {q2} is not an even power of a prime")))?;
            let pair = quadratic_pair(p.pow(m / 2))?;
            let mut manifest = Manifest::new("construct hermitian").with_options(&opts);
            manifest.set("q2", q2);
            let code = match family {
                Family::Bch => {
                    let n = n.ok_or_else(|| Error::InvalidParameters("BCH needs --n".into()))?;
                    let delta = delta.ok_or_else(|| Error::InvalidParameters("BCH needs --delta".into()))?;
                    let (c, info) = bch_code(&pair, n, delta, *offset)?;
                    manifest.set("family", "bch").set("n", n).set("delta", delta).set("offset", offset);
                    hermitian_construction(&c, &opts)?
                        .with_provenance("family", "bch")
                        .with_provenance("designed_distance", delta)
                        .with_provenance(
                            "splitting_modulus",
                            info.splitting_modulus
                                .iter()
                                .map(|c| c.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                        )
                        .with_provenance("root_of_unity", format!("alpha^{}", info.root_exponent))
                }
                Family::Rs => {
                    let k = k.ok_or_else(|| Error::InvalidParameters("RS needs --k".into()))?;
                    let c = rs_code(&pair, k)?;
                    manifest.set("family", "rs").set("k", k);
                    hermitian_construction(&c, &opts)?
                        .with_provenance("family", "rs")
                        .with_provenance("generator", format!("alpha={}", pair.ext().primitive_element()))
                }
            };
            write_x(&o.out, &code)?;
            finish_code(out, &code, &manifest)
        }
        Recipe::Euclidean { c1, c2, out: o } => {
            let opts = o.search.options()?;
            let code = euclidean_construction(&read_code_file(c1)?, &read_code_file(c2)?, &opts)?;
            let mut manifest = Manifest::new("construct euclidean").with_options(&opts);
            manifest.set("c1", c1.display()).set("c2", c2.display());
            write_x(&o.out, &code)?;
            finish_code(out, &code, &manifest)
        }
        Recipe::Additive { file, out: o } => {
            let opts = o.search.options()?;
            let code = code_from_file(file, &opts)?;
            write_x(&o.out, &code)?;
            finish_code(out, &code, &file_manifest("construct additive", file, &opts))
        }
        Recipe::Random {
            q,
            n,
            r,
            s,
            seed,
            out: o,
        } => {
            let opts = o.search.options()?;
            let (p, m) =
                prime_power(*q).ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
            let field = FieldSpec::new(p, m, None)?;
            let x = gv_random_code(&field, *n, *r, *s, *seed)?;
            let code = subsystem_from_additive(&x, &opts)?.with_provenance("seed", seed);
            let mut manifest = Manifest::new("construct random").with_options(&opts);
            manifest.set("q", q).set("n", n).set("r", r).set("s", s).set("seed", seed);
            write_x(&o.out, &code)?;
            finish_code(out, &code, &manifest)
        }
    }
}

/// Parses `n k r d q` lines.
pub fn parse_batch(text: &str) -> Result<Vec<(usize, usize, usize, usize, u32)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse {
            line: i + 1,
            message: format!("expected `n k r d q`, got {line:?}"),
        };
        let v: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if v.len() != 5 {
            return Err(bad());
        }
        out.push((v[0] as usize, v[1] as usize, v[2] as usize, v[3] as usize, v[4] as u32));
    }
    Ok(out)
}

fn bound_document(check: BoundCheck, n: usize, k: usize, r: usize, d: usize, q: u32) -> Result<Document> {
    let query = ParameterQuery::new(n, q, k, r, d)?;
    let mut manifest = Manifest::new("bounds");
    manifest
        .set("check", format!("{check:?}").to_lowercase())
        .set("n", n)
        .set("k", k)
        .set("r", r)
        .set("d", d)
        .set("q", q);
    let rep: FeasibilityReport = match check {
        BoundCheck::Lp => lp_feasible(&query)?,
        BoundCheck::Gv => gv_subsystem(&query)?,
        BoundCheck::GvStabilizer => gv_stabilizer(&query)?,
        BoundCheck::Singleton => pure_singleton_check(&query),
        BoundCheck::Hamming => pure_hamming_check(&query)?,
        BoundCheck::Joint => joint_gv_check(&query)?,
        BoundCheck::Compare => {
            let c = compare_syndromes(k, d, &query)?;
            let mut doc = Document::new();
            doc.push("check", "compare")
                .push("query", query.label())
                .push("mds_code", format!("[[{},{k},{d}]]_{q}", k + 2 * d - 2))
                .push("mds_syndromes", c.mds_syndromes)
                .push("candidate_syndromes", c.candidate_syndromes)
                .push("precondition_holds", c.precondition_holds)
                .push("candidate_needs_fewer", c.candidate_needs_fewer)
                .push("consistent", c.consistent());
            doc.extend_prefixed("manifest", &manifest.entries);
            return Ok(doc);
        }
    };
    Ok(feasibility_document(&rep, &manifest))
}
