//! Command implementations for the `adc` binary.
//!
//! Every command reads its main complex from `--input` (or stdin), produces
//! text, and reports failures as [`CliError`]s that map to exit codes.

pub mod document;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use adc_core::{
    composable_pair, composable_triple, count_by_dimension, cube, decompose_full, enumerate_cells_bounded,
    enumerate_morphisms, globe, hom_complex, interchange_quad, presentation, simplex, tensor, AugmentedComplex,
    CompositionTree, HomVariant, LoopFreeness, Sign, StrongLoopFreeness,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use document::{coeffs_of, Coeffs};
pub use document::{CellDocument, ComplexDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Io { .. } => 1,
        }
    }
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "adc", version, about = "Augmented directed complexes and their ω-categories")]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Complex document; stdin when absent.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Simplex,
    Globe,
    Pair,
    Triple,
    Quad,
    Cube,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    Hom,
    HomPrime,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a standard complex: simplex P, globe P, pair P N, triple P N, quad P N M, cube P.
    Gen { family: Family, params: Vec<usize> },
    /// Validate a complex and decide its basis properties.
    Check(Input),
    /// Print the atom of every basis element.
    Atoms(Input),
    /// List all cells of dimension at most N.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'n', long, default_value_t = 1)]
        dimension: usize,
        /// Largest coefficient tried.
        #[arg(long, default_value_t = 1)]
        bound: u32,
        /// Emit cell documents instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compose two cells at a level.
    Compose {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        level: usize,
        left: PathBuf,
        right: PathBuf,
    },
    /// Factor a cell into atoms.
    Decompose {
        #[command(flatten)]
        input: Input,
        cell: PathBuf,
    },
    /// Tensor product of the input complex with another.
    Tensor {
        #[command(flatten)]
        input: Input,
        right: PathBuf,
    },
    /// Internal hom from the input complex to a target, with its morphisms.
    Hom {
        #[command(flatten)]
        input: Input,
        target: PathBuf,
        #[arg(long, value_enum, default_value = "hom")]
        variant: Variant,
        /// Largest coefficient tried when listing morphisms.
        #[arg(long, default_value_t = 1)]
        bound: u32,
    },
    /// Generators and boundary relations.
    Present(Input),
}

/// Text produced by a command and the exit status to report with it.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, status: 0 }
    }
}

fn read_path(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, CliError> {
    match &input.input {
        Some(p) => read_path(p),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
    }
}

fn load_complex(text: &str) -> Result<AugmentedComplex, CliError> {
    ComplexDocument::parse(text)?.to_complex()
}

fn generate(family: Family, params: &[usize]) -> Result<AugmentedComplex, CliError> {
    let want = match family {
        Family::Simplex | Family::Globe | Family::Cube => 1,
        Family::Pair | Family::Triple => 2,
        Family::Quad => 3,
    };
    if params.len() != want {
        let name = family.to_possible_value().expect("no skipped variants");
        return Err(CliError::Parse(format!(
            "{} takes {want} parameter(s), got {}",
            name.get_name(),
            params.len()
        )));
    }
    Ok(match family {
        Family::Simplex => simplex(params[0]),
        Family::Globe => globe(params[0]),
        Family::Cube => cube(params[0]),
        Family::Pair => composable_pair(params[0], params[1]),
        Family::Triple => composable_triple(params[0], params[1]),
        Family::Quad => interchange_quad(params[0], params[1], params[2]).map_err(domain)?,
    })
}

fn join_ids<T: ToString>(ids: &[T]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn check(k: &AugmentedComplex) -> Result<Output, CliError> {
    let mut out = String::new();
    if let Err(report) = k.validate() {
        writeln!(out, "valid=false").unwrap();
        for v in &report.violations {
            writeln!(out, "violation={v}").unwrap();
        }
        return Ok(Output { text: out, status: 1 });
    }
    writeln!(out, "valid=true").unwrap();
    writeln!(out, "unital={}", k.is_unital().map_err(domain)?).unwrap();
    match k.loop_freeness().map_err(domain)? {
        LoopFreeness::LoopFree { orders } => {
            writeln!(out, "loop_free=true").unwrap();
            for (n, o) in orders.iter().enumerate() {
                writeln!(out, "order_{n}={}", join_ids(o)).unwrap();
            }
        }
        LoopFreeness::Loop { level, cycle } => {
            writeln!(out, "loop_free=false").unwrap();
            writeln!(out, "loop_level={level}").unwrap();
            writeln!(out, "loop_cycle={}", join_ids(&cycle)).unwrap();
        }
    }
    match k.strong_loop_freeness().map_err(domain)? {
        StrongLoopFreeness::Ordered(o) => {
            writeln!(out, "strongly_loop_free=true").unwrap();
            writeln!(out, "strong_order={}", join_ids(&o)).unwrap();
        }
        StrongLoopFreeness::Cycle(c) => {
            writeln!(out, "strongly_loop_free=false").unwrap();
            writeln!(out, "strong_cycle={}", join_ids(&c)).unwrap();
        }
    }
    let atoms = k.atoms().map_err(domain)?;
    let disjoint = atoms.iter().all(|a| {
        (0..a.degree()).all(|n| {
            a.part(Sign::Minus, n)
                .meet(&a.part(Sign::Plus, n))
                .is_ok_and(|m| m.is_zero())
        })
    });
    writeln!(out, "atom_invariants={disjoint}").unwrap();
    Ok(Output::ok(out))
}

fn atoms(k: &AugmentedComplex) -> Result<Output, CliError> {
    let mut out = String::new();
    let table = k.atoms().map_err(domain)?;
    for b in k.elements() {
        let a = table.get(&b.id).expect("every basis element has an atom");
        let mut parts: Vec<String> = (0..a.degree())
            .flat_map(|n| Sign::BOTH.map(|s| format!("{s}{n} {}", a.part(s, n))))
            .collect();
        parts.push(format!("{} {}", a.degree(), a.part(Sign::Minus, a.degree())));
        writeln!(out, "⟨{}⟩: {}", b.id, parts.join(" | ")).unwrap();
    }
    Ok(Output::ok(out))
}

fn enumerate(k: &AugmentedComplex, n: usize, bound: u32, as_json: bool) -> Output {
    let cells = enumerate_cells_bounded(k, n, bound);
    if as_json {
        let docs: Vec<CellDocument> = cells.iter().map(CellDocument::from_cell).collect();
        return Output::ok(serde_json::to_string_pretty(&docs).expect("documents serialize") + "\n");
    }
    let mut out = String::new();
    for c in &cells {
        writeln!(out, "{c}").unwrap();
    }
    for (d, count) in count_by_dimension(&cells) {
        writeln!(out, "dimension {d}: {count}").unwrap();
    }
    writeln!(out, "total: {}", cells.len()).unwrap();
    Output::ok(out)
}

#[derive(Serialize)]
struct HomReport {
    variant: &'static str,
    valid: bool,
    zero_cells: usize,
    /// Image of each basis element as a coefficient map.
    morphisms: Vec<BTreeMap<String, Coeffs>>,
    complex: ComplexDocument,
}

fn hom_report(k: &AugmentedComplex, l: &AugmentedComplex, variant: Variant, bound: u32) -> Result<Output, CliError> {
    let variant = match variant {
        Variant::Hom => HomVariant::Hom,
        Variant::HomPrime => HomVariant::HomPrime,
    };
    let h = hom_complex(k, l, variant).map_err(domain)?;
    let morphisms = enumerate_morphisms(k, l, bound);
    let cells = enumerate_cells_bounded(h.complex(), 0, bound);
    let rendered = morphisms
        .iter()
        .map(|m| {
            m.images
                .iter()
                .map(|(b, img)| (b.to_string(), coeffs_of(img)))
                .collect()
        })
        .collect();
    let report = HomReport {
        variant: match variant {
            HomVariant::Hom => "hom",
            HomVariant::HomPrime => "hom-prime",
        },
        valid: h.complex().validate().is_ok(),
        zero_cells: cells.len(),
        morphisms: rendered,
        complex: ComplexDocument::from_complex(h.complex()),
    };
    Ok(Output::ok(
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    ))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, CliError> {
    let main = |input: &Input, stdin: &mut dyn Read| load_complex(&read_input(input, stdin)?);
    match &cli.command {
        Command::Gen { family, params } => {
            let k = generate(*family, params)?;
            Ok(Output::ok(ComplexDocument::from_complex(&k).to_json() + "\n"))
        }
        Command::Check(input) => check(&main(input, stdin)?),
        Command::Atoms(input) => atoms(&main(input, stdin)?),
        Command::Enumerate {
            input,
            dimension,
            bound,
            json,
        } => Ok(enumerate(&main(input, stdin)?, *dimension, *bound, *json)),
        Command::Compose {
            input,
            level,
            left,
            right,
        } => {
            let k = main(input, stdin)?;
            let x = CellDocument::parse(&read_path(left)?)?.to_cell(&k)?;
            let y = CellDocument::parse(&read_path(right)?)?.to_cell(&k)?;
            let xy = x.compose(*level, &y).map_err(domain)?;
            Ok(Output::ok(CellDocument::from_cell(&xy).to_json() + "\n"))
        }
        Command::Decompose { input, cell } => {
            let k = main(input, stdin)?;
            let x = CellDocument::parse(&read_path(cell)?)?.to_cell(&k)?;
            if !x.is_nu() {
                return Err(CliError::Domain("cell is not in νK".into()));
            }
            let tree: CompositionTree = decompose_full(&k, &x).map_err(domain)?;
            Ok(Output::ok(format!("{tree}\n")))
        }
        Command::Tensor { input, right } => {
            let k = main(input, stdin)?;
            let l = load_complex(&read_path(right)?)?;
            let kl = tensor(&k, &l).map_err(domain)?;
            Ok(Output::ok(ComplexDocument::from_complex(&kl).to_json() + "\n"))
        }
        Command::Hom {
            input,
            target,
            variant,
            bound,
        } => {
            let k = main(input, stdin)?;
            let l = load_complex(&read_path(target)?)?;
            hom_report(&k, &l, *variant, *bound)
        }
        Command::Present(input) => {
            let p = presentation(&main(input, stdin)?).map_err(domain)?;
            Ok(Output::ok(p.to_string()))
        }
    }
}
