use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use treespec::graph::{
    enumerate_free_trees_with_max, generate_caterpillar, generate_diameter4, generate_path, generate_star,
    parse_edge_list, random_tree, root_at, tree_from_level_sequence, Tree, DEFAULT_MAX_ENUM_ORDER,
};
use treespec::harness::{
    build_report, cmd_verify, read_records, run_verify, theorem7_closed_form_check, CheckSet, VerifyOptions,
    SCHEMA_VERSION,
};
use treespec::spectral::{default_tolerance, laplacian_energy, localize_laplacian};
use treespec::{count, diagonalize, MatrixKind, Scalar};

#[derive(Parser)]
#[command(name = "treespec", version, about = "Exact eigenvalue location for trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Adjacency,
    Laplacian,
}

impl From<Kind> for MatrixKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Adjacency => MatrixKind::Adjacency,
            Kind::Laplacian => MatrixKind::Laplacian,
        }
    }
}

#[derive(Args)]
struct TreeInput {
    /// Edge-list file, or `-` for stdin.
    input: Option<PathBuf>,
    /// Level sequence of a rooted form, e.g. `0,1,2,2,1`.
    #[arg(long, conflicts_with = "input")]
    code: Option<String>,
}

impl TreeInput {
    fn load(&self) -> Result<Tree> {
        if let Some(code) = &self.code {
            let levels = code
                .split(',')
                .map(|v| v.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .context("bad level sequence")?;
            return Ok(tree_from_level_sequence(&levels)?);
        }
        let text = match self.input.as_deref() {
            None => bail!("no tree given: pass a file, `-` or --code"),
            Some(p) if p.as_os_str() == "-" => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
            Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        };
        Ok(parse_edge_list(&text)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Final diagonal values and inertia of M + xI.
    Diagonalize {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long, value_enum, default_value = "laplacian")]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        x: Scalar,
        /// Root vertex; defaults to the highest id.
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Eigenvalues above, below and at a threshold.
    Count {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long, value_enum, default_value = "laplacian")]
        kind: Kind,
        #[arg(long, alias = "alpha", allow_hyphen_values = true)]
        x: Scalar,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bracket every Laplacian eigenvalue.
    Localize {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long)]
        tol: Option<Scalar>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Laplacian energy.
    Energy {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long)]
        tol: Option<Scalar>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Canonical codes of all free trees of order n.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generate a tree from a named family as an edge list.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value = "text", global = true)]
        format: Format,
    },
    /// Check every free tree in an order range.
    Verify {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "all")]
        checks: CheckSet,
        #[arg(long, default_value_t = 1)]
        shards: u64,
        #[arg(long, default_value_t = 0)]
        shard_index: u64,
        /// Record file; the manifest goes to `<out>.manifest.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow orders 19 and 20.
        #[arg(long)]
        allow_long: bool,
    },
    /// Aggregate record files from one or more runs.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Closed-form diagonal values of diameter-4 trees.
    Theorem7 {
        #[arg(long, default_value_t = 50)]
        r_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Family {
    Path {
        n: usize,
    },
    Star {
        n: usize,
    },
    /// Spine vertex i carries legs[i] pendant leaves.
    Caterpillar {
        #[arg(value_delimiter = ',', required = true)]
        legs: Vec<usize>,
    },
    /// Root with p leaves and one branch of s_i leaves per intermediate vertex.
    Diameter4 {
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<usize>,
    },
    Random {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(format: Format, cmd: &str) -> Result<ExitCode> {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    bail!("format {} is not supported by {}", name, cmd)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Diagonalize { tree, kind, x, root, format } => {
            let t = tree.load()?;
            let rt = root_at(&t, root.unwrap_or(t.order() - 1))?;
            let d = diagonalize(&rt, kind.into(), &x);
            match format {
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": d.matrix_kind,
                    "x": x,
                    "root": rt.root(),
                    "values": d.values,
                    "positive": d.n_pos,
                    "negative": d.n_neg,
                    "zero": d.n_zero,
                }))?,
                Format::Text => {
                    for (v, val) in d.values.iter().enumerate() {
                        println!("{}\t{}", v, val);
                    }
                    println!("inertia\t{} {} {}", d.n_pos, d.n_neg, d.n_zero);
                }
                Format::Csv => return unsupported(format, "diagonalize"),
            }
        }
        Command::Count { tree, kind, x, format } => {
            let t = tree.load()?;
            let c = count(&t, kind.into(), &x);
            match format {
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": MatrixKind::from(kind),
                    "alpha": x,
                    "greater": c.greater,
                    "less": c.less,
                    "multiplicity": c.multiplicity,
                }))?,
                Format::Text => println!("greater={} less={} mult={}", c.greater, c.less, c.multiplicity),
                Format::Csv => println!("greater,less,multiplicity\n{},{},{}", c.greater, c.less, c.multiplicity),
            }
        }
        Command::Localize { tree, tol, format } => {
            let t = tree.load()?;
            let tol = tol.unwrap_or_else(default_tolerance);
            let brackets = localize_laplacian(&t, &tol)?;
            match format {
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "tolerance": tol,
                    "eigenvalues": brackets,
                }))?,
                Format::Text => {
                    for b in &brackets {
                        if b.exact {
                            println!("{} x{}", b.lo, b.multiplicity);
                        } else {
                            println!("({}, {}) x{}", b.lo, b.hi, b.multiplicity);
                        }
                    }
                }
                Format::Csv => {
                    println!("lo,hi,multiplicity,exact");
                    for b in &brackets {
                        println!("{},{},{},{}", b.lo, b.hi, b.multiplicity, b.exact);
                    }
                }
            }
        }
        Command::Energy { tree, tol, format } => {
            let t = tree.load()?;
            let e = laplacian_energy(&t, &tol.unwrap_or_else(default_tolerance))?;
            match format {
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "le_direct": e.le_direct,
                    "le_sigma": e.le_sigma,
                    "le_decimal": e.le_direct.to_decimal_string(12),
                    "sigma": e.sigma,
                    "avg_degree": e.avg_degree,
                    "tolerance": e.tolerance,
                }))?,
                Format::Text => println!("{}", e.le_direct.to_decimal_string(12)),
                Format::Csv => return unsupported(format, "energy"),
            }
        }
        Command::Enumerate { n, format } => {
            let codes: Vec<String> = enumerate_free_trees_with_max(n, DEFAULT_MAX_ENUM_ORDER)?
                .map(|t| treespec::canonical_code(&t).to_string())
                .collect();
            match format {
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "n": n,
                    "count": codes.len(),
                    "codes": codes,
                }))?,
                Format::Text => {
                    let mut out = io::stdout().lock();
                    for c in &codes {
                        writeln!(out, "{}", c)?;
                    }
                }
                Format::Csv => {
                    let mut out = io::stdout().lock();
                    writeln!(out, "index,code")?;
                    for (i, c) in codes.iter().enumerate() {
                        writeln!(out, "{},\"{}\"", i, c)?;
                    }
                }
            }
        }
        Command::Gen { family, format } => {
            let t = match family {
                Family::Path { n } => generate_path(n)?,
                Family::Star { n } => generate_star(n)?,
                Family::Caterpillar { legs } => generate_caterpillar(&legs)?,
                Family::Diameter4 { p, s } => generate_diameter4(p, &s)?,
                Family::Random { n, seed } => random_tree(n, seed)?,
            };
            match format {
                Format::Text => print!("{}", t.to_edge_list()),
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "n": t.order(),
                    "edges": t.edges(),
                    "code": treespec::canonical_code(&t),
                }))?,
                Format::Csv => return unsupported(format, "gen"),
            }
        }
        Command::Verify { n_min, n_max, checks, shards, shard_index, out, seed, allow_long } => {
            let mut opts = VerifyOptions::new(n_min, n_max);
            opts.checks = checks;
            opts.shards = shards;
            opts.shard_index = shard_index;
            opts.seed = seed;
            opts.allow_long = allow_long;
            let manifest = match &out {
                Some(path) => cmd_verify(&opts, path)?,
                None => run_verify(&opts, &mut io::BufWriter::new(io::stdout().lock()))?,
            };
            let t = &manifest.totals;
            eprintln!(
                "checked {} trees: {} violations, {} equality cases, {} with eigenvalues in (avg, 2)",
                t.trees_checked, t.violations, t.equality_cases, t.between_avg_and_2
            );
            for v in manifest.violations.iter().take(20) {
                eprintln!("violation: n={} code={} check={}", v.n, v.code, v.check);
            }
            if !manifest.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Report { inputs, format } => {
            let mut records = Vec::new();
            for p in &inputs {
                records.extend(read_records(p).with_context(|| format!("reading {}", p.display()))?);
            }
            let rep = build_report(&records);
            match format {
                Format::Json => print_json(&serde_json::to_value(&rep)?)?,
                Format::Csv | Format::Text => {
                    let sep = if format == Format::Csv { "," } else { "\t" };
                    println!(
                        "{}",
                        [
                            "n",
                            "trees",
                            "violations",
                            "equality",
                            "path_equality",
                            "min_margin",
                            "between",
                            "min_le",
                            "max_le"
                        ]
                        .join(sep)
                    );
                    for o in &rep.orders {
                        let le = |e: &Option<treespec::harness::EnergyExtreme>| {
                            e.as_ref().map(|e| format!("{}@{}", e.le, e.code).replace(',', " ")).unwrap_or_default()
                        };
                        let row = [
                            o.n.to_string(),
                            o.trees.to_string(),
                            o.violations.to_string(),
                            o.equality_cases.to_string(),
                            o.path_is_equality.map(|b| b.to_string()).unwrap_or_default(),
                            o.min_margin.to_string(),
                            o.between_avg_and_2.to_string(),
                            le(&o.min_le),
                            le(&o.max_le),
                        ];
                        println!("{}", row.join(sep));
                    }
                }
            }
            if rep.violations > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Theorem7 { r_max, format } => {
            let rep = theorem7_closed_form_check(r_max)?;
            match format {
                Format::Json => print_json(&serde_json::to_value(&rep)?)?,
                Format::Text => {
                    for r in &rep.rows {
                        println!(
                            "r={} n={} internal={} root={} ok={}",
                            r.r,
                            r.n,
                            r.internal_value,
                            r.root_value,
                            r.internal_ok && r.root_ok && r.leaves_ok
                        );
                    }
                }
                Format::Csv => return unsupported(format, "theorem7"),
            }
            if !rep.ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
