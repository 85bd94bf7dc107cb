//! The `layerlat` command line.
//!
//! Bunch arguments are file paths; a path that does not exist but names a
//! built-in fixture (`s3`, `zb`, `ze`, `lz`, `lz2`) loads that fixture.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bunch::{Bunch, DEFAULT_LAYER_SAMPLES};
use crate::chain::laws::{check_laws, LawConfig};
use crate::chain::{Chain, ChainElement};
use crate::decompose::roundtrip_table;
use crate::densify::{densify, fill_gap};
use crate::embed::{check_embedding, EmbeddingSpec};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::oracle::{enumerate_finite_chains_with_bound, DEFAULT_BOUND};
use crate::standardize::{cantor_map, SupExtension};
use crate::table::CayleyTable;

pub const SAMPLES_ENV: &str = "LAYERLAT_SAMPLES";

#[derive(Debug, Parser)]
#[command(name = "layerlat", version, about = "Involutive FL_e-chains from bunches of layer groups")]
pub struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Mul,
    Neg,
    Res,
    Cmp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bunch conditions.
    Validate {
        bunch: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print Odd, EvenNonIdemF or EvenIdemF.
    Type { bunch: PathBuf },
    /// Print whether the chain is bounded, with its top and bottom.
    Bounded { bunch: PathBuf },
    /// Evaluate one operation on elements written `layer:g` or `layer:d:g`.
    Eval {
        bunch: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: Option<String>,
    },
    /// Export the Cayley table, or the window on the first `--limit` elements.
    Table {
        bunch: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Decompose a finite table into a bunch and check the round trip.
    Decompose {
        table: PathBuf,
        /// Also write the bunch file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an embedding spec between two bunches.
    EmbedCheck {
        src: PathBuf,
        dst: PathBuf,
        spec: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Insert one layer so that a new element separates `x < y`.
    FillGap {
        bunch: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Separate every adjacent pair of an enumerated prefix, `rounds` times.
    Densify {
        bunch: PathBuf,
        #[arg(long)]
        prefix: usize,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
    },
    /// List every odd or even involutive chain on `size` elements.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Write one CSV file per table instead of printing them.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Place an enumerated prefix in the rationals of [0, 1].
    Standardize {
        bunch: PathBuf,
        #[arg(long)]
        prefix: usize,
        /// Also place up to this many products of placed elements.
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Check the chain laws on sampled (or all) triples.
    Laws {
        bunch: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print a built-in fixture as a bunch file.
    Fixture { name: String },
}

/// Flag, then `LAYERLAT_SAMPLES`, then `default`.
fn samples(flag: Option<usize>, default: usize) -> usize {
    flag.or_else(|| std::env::var(SAMPLES_ENV).ok()?.parse().ok()).unwrap_or(default)
}

pub fn load_bunch(path: &Path) -> Result<Bunch> {
    if !path.exists() {
        if let Some(b) = path.to_str().and_then(fixtures::by_name) {
            return Ok(b);
        }
    }
    Bunch::parse(&fs::read_to_string(path)?)
}

fn load_chain(path: &Path) -> Result<Chain> {
    Chain::new(load_bunch(path)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn window(chain: &Chain, limit: Option<usize>) -> Result<Vec<ChainElement>> {
    let mut xs = match limit {
        Some(n) => chain.elements().take(n).collect(),
        None => return chain.sorted_elements(),
    };
    chain.sort_dedup(&mut xs);
    Ok(xs)
}

fn table_json(chain: &Chain, xs: &[ChainElement]) -> Value {
    let show = |x: &ChainElement| chain.format_element(x);
    let product: Vec<Vec<String>> = xs.iter().map(|x| xs.iter().map(|y| show(&chain.mul(x, y))).collect()).collect();
    json!({
        "elements": xs.iter().map(show).collect::<Vec<_>>(),
        "unit": show(&chain.unit()),
        "falsum": show(&chain.falsum()),
        "product": product,
    })
}

fn table_dot(chain: &Chain, xs: &[ChainElement]) -> String {
    let mut out = String::from("digraph chain {\n  rankdir=BT;\n");
    let (t, f) = chain.constants();
    for x in xs {
        let mut attrs = String::new();
        if *x == t || *x == f {
            attrs.push_str(", shape=box");
        }
        out.push_str(&format!("  \"{0}\" [label=\"{0}\"{attrs}];\n", chain.format_element(x)));
    }
    for w in xs.windows(2) {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", chain.format_element(&w[0]), chain.format_element(&w[1])));
    }
    out.push_str("}\n");
    out
}

/// Run one command, writing results to `out`. `Ok(false)` means the command
/// ran but reported a failed check.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let seed = cli.seed;
    match &cli.command {
        Command::Validate { bunch, samples: n } => {
            let b = load_bunch(bunch)?;
            let report = b.validate_with(samples(*n, DEFAULT_LAYER_SAMPLES));
            writeln!(out, "{report}")?;
            Ok(report.is_ok())
        }
        Command::Type { bunch } => {
            writeln!(out, "{}", load_chain(bunch)?.bunch_type())?;
            Ok(true)
        }
        Command::Bounded { bunch } => {
            let c = load_chain(bunch)?;
            match c.bounds() {
                Some(b) => {
                    writeln!(out, "true")?;
                    writeln!(out, "top {}", c.format_element(&b.top))?;
                    writeln!(out, "bottom {}", c.format_element(&b.bottom))?;
                }
                None => writeln!(out, "false")?,
            }
            Ok(true)
        }
        Command::Eval { bunch, op, lhs, rhs } => {
            let c = load_chain(bunch)?;
            let x = c.parse_element(lhs)?;
            let y = match (op, rhs) {
                (Op::Neg, _) => None,
                (_, Some(r)) => Some(c.parse_element(r)?),
                (_, None) => return Err(Error::parse("rhs", "this operation needs --rhs")),
            };
            let line = match (op, y) {
                (Op::Neg, _) => c.format_element(&c.try_negate(&x)?),
                (Op::Mul, Some(y)) => c.format_element(&c.mul(&x, &y)),
                (Op::Res, Some(y)) => c.format_element(&c.residuum(&x, &y)),
                (Op::Cmp, Some(y)) => match c.compare(&x, &y) {
                    std::cmp::Ordering::Less => "<".into(),
                    std::cmp::Ordering::Equal => "=".into(),
                    std::cmp::Ordering::Greater => ">".into(),
                },
                _ => unreachable!("rhs checked above"),
            };
            writeln!(out, "{line}")?;
            Ok(true)
        }
        Command::Table { bunch, limit, format } => {
            let c = load_chain(bunch)?;
            let full = c.is_finite() && limit.is_none_or(|n| n >= c.elements().count());
            let xs = window(&c, if full { None } else { *limit })?;
            match format {
                Format::Csv if full => write!(out, "{}", c.cayley_table()?.0.to_csv())?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let header: Vec<String> =
                        std::iter::once(String::new()).chain(xs.iter().map(|x| c.format_element(x))).collect();
                    w.write_record(&header).map_err(csv_err)?;
                    for x in &xs {
                        let row: Vec<String> = std::iter::once(c.format_element(x))
                            .chain(xs.iter().map(|y| c.format_element(&c.mul(x, y))))
                            .collect();
                        w.write_record(&row).map_err(csv_err)?;
                    }
                    out.write_all(&w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;
                }
                Format::Json => writeln!(out, "{}", pretty(&table_json(&c, &xs)))?,
                Format::Dot => write!(out, "{}", table_dot(&c, &xs))?,
            }
            Ok(true)
        }
        Command::Decompose { table, out: path } => {
            let tbl = CayleyTable::parse_csv(&fs::read_to_string(table)?)?;
            let rt = roundtrip_table(&tbl)?;
            let text = rt.decomposition.bunch.serialize();
            if let Some(p) = path {
                fs::write(p, &text)?;
            }
            let chain = Chain::new(rt.decomposition.bunch.clone())?;
            let report = json!({
                "bunch": rt.decomposition.bunch.to_json(),
                "assignment": rt.decomposition.assignment.iter().map(|x| chain.format_element(x)).collect::<Vec<_>>(),
                "cells_checked": rt.cells_checked,
                "mismatches": 0,
            });
            writeln!(out, "{}", pretty(&report))?;
            Ok(true)
        }
        Command::EmbedCheck { src, dst, spec, samples: n } => {
            let (s, d) = (load_chain(src)?, load_chain(dst)?);
            let spec = EmbeddingSpec::parse(&fs::read_to_string(spec)?, s.bunch(), d.bunch())?;
            let report = check_embedding(&s, &d, &spec, samples(*n, 2000), seed);
            writeln!(out, "{report}")?;
            Ok(report.is_ok())
        }
        Command::FillGap { bunch, x, y } => {
            let c = load_chain(bunch)?;
            let fill = fill_gap(&c, &c.parse_element(x)?, &c.parse_element(y)?)?;
            let r = &fill.receipt;
            let ext = Chain::assume_valid(r.bunch.clone());
            let doc = json!({
                "case": fill.case.tag(),
                "inserted_layer": r.new_layer_name(),
                "x": ext.format_element(&fill.x),
                "y": ext.format_element(&fill.y),
                "witness": ext.format_element(&fill.witness),
                "bunch": r.bunch.to_json(),
            });
            writeln!(out, "{}", pretty(&doc))?;
            Ok(true)
        }
        Command::Densify { bunch, prefix, rounds } => {
            let c = load_chain(bunch)?;
            let d = densify(&c, *prefix, *rounds)?;
            let ext = Chain::assume_valid(d.bunch.clone());
            let trace: Vec<Value> = d
                .trace
                .iter()
                .map(|t| {
                    json!({
                        "case": t.case.tag(),
                        "inserted_layer": t.inserted_layer,
                        "inserted_class": t.inserted_class.code(),
                        "x": t.x,
                        "y": t.y,
                        "witness": t.witness,
                    })
                })
                .collect();
            let mut materialized = d.materialized.clone();
            ext.sort_dedup(&mut materialized);
            let doc = json!({
                "trace": trace,
                "elements": materialized.iter().map(|x| ext.format_element(x)).collect::<Vec<_>>(),
                "bunch": d.bunch.to_json(),
            });
            writeln!(out, "{}", pretty(&doc))?;
            Ok(true)
        }
        Command::Enumerate { size, bound, out_dir } => {
            let tables = enumerate_finite_chains_with_bound(*size, *bound)?;
            match out_dir {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    for (k, t) in tables.iter().enumerate() {
                        fs::write(dir.join(format!("chain-{size}-{k}.csv")), t.to_csv())?;
                    }
                    writeln!(out, "{} table{} written to {}", tables.len(), if tables.len() == 1 { "" } else { "s" }, dir.display())?;
                }
                None => {
                    for (k, t) in tables.iter().enumerate() {
                        if k > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", t.to_csv())?;
                    }
                }
            }
            Ok(true)
        }
        Command::Standardize { bunch, prefix, depth } => {
            let c = load_chain(bunch)?;
            let base = cantor_map(&c, *prefix)?;
            let placement = if *depth == 0 { base } else { SupExtension::new(&c, &base, *depth).placement().clone() };
            write!(out, "{}", placement.to_csv(&c))?;
            Ok(true)
        }
        Command::Laws { bunch, samples: n } => {
            let c = load_chain(bunch)?;
            let config = LawConfig { triples: samples(*n, LawConfig::default().triples), seed, ..LawConfig::default() };
            let report = check_laws(&c, &config);
            writeln!(out, "{report}")?;
            Ok(report.is_ok())
        }
        Command::Fixture { name } => {
            let b = fixtures::by_name(name).ok_or_else(|| Error::parse_msg(format!("no fixture named `{name}`")))?;
            write!(out, "{}", b.serialize())?;
            Ok(true)
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.into())
}
