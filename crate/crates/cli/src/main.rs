//! `boolcat`: check, compose and transform proof nets, and run the equation
//! catalog.
//!
//! Exit status: 0 on success, 1 when a net is incorrect or a suite entry
//! misses its expected verdict, 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use boolcat::axiom_suite::{self, Catalog, Level, Report, SamplerConfig};
use boolcat::dot::{extended_to_dot, simple_to_dot};
use boolcat::json::{extended_to_json, net_from_json, simple_to_json, AnyNet};
use boolcat::morphisms::term::{parse_term, Binding};
use boolcat::morphisms::{elaborate, Category, Hom, TransposeDir};
use boolcat::{ExtendedNet, SimpleNet};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boolcat", version, about = "Proof nets for classical propositional logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a net and decide its correctness.
    Check {
        /// A `.bnet.json` net or a `.mexp` map expression.
        file: PathBuf,
    },
    /// Compose two maps: FIRST is applied first, then SECOND.
    Compose {
        first: PathBuf,
        second: PathBuf,
        /// Compose as extended nets, keeping anchors and multiplicities.
        #[arg(long)]
        extended: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Move formulas across the arrow of a map.
    Transpose {
        file: PathBuf,
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        extended: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sum of two parallel maps.
    Sum {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        extended: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Eliminate anchors of an extended net.
    Eliminate {
        file: PathBuf,
        /// Anchor to eliminate, e.g. `k1`.
        #[arg(long, required_unless_present = "all_orders", conflicts_with = "all_orders")]
        anchor: Option<String>,
        /// Eliminate every anchor in every order and print the distinct results.
        #[arg(long)]
        all_orders: bool,
        /// Refuse nets with more anchors than this.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check catalog entries on sampled bindings.
    Suite(SuiteArgs),
    /// Render a net as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        /// Output file; standard output if omitted.
        out: Option<PathBuf>,
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    /// `A & B -> C` to `A -> ~B | C`.
    Curry,
    /// `A -> ~B | C` to `A & B -> C`.
    Uncurry,
    /// `A -> B` to `~B -> ~A`.
    Dual,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CategoryArg {
    Snet,
    Enet,
    Both,
}

#[derive(Args)]
struct SuiteArgs {
    /// Levels to run (monoidal, star, mix, B1, B2, LK, B3, B4, B5, flat,
    /// contractible, collapse), or `all`.
    #[arg(required = true)]
    levels: Vec<String>,
    #[arg(long, value_enum, default_value = "both")]
    category: CategoryArg,
    /// Random bindings per entry.
    #[arg(long, default_value_t = 25)]
    bindings: usize,
    /// Maximum depth of sampled formulas.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Atoms for sampled formulas.
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    atoms: Vec<String>,
    /// Enumerate all small bindings instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Use this catalog file instead of the built-in one.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn is_expression(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e == "mexp") || text.trim_start().starts_with('(')
}

/// A net from JSON, or the net of a closed map expression.
fn load(path: &Path, extended: bool) -> Result<AnyNet> {
    let text = read(path)?;
    let ctx = || format!("in {}", path.display());
    if is_expression(path, &text) {
        let term = parse_term(&text).with_context(ctx)?;
        let e = term.bind(&Binding::new()).with_context(ctx)?;
        return Ok(if extended {
            AnyNet::Extended(elaborate::<ExtendedNet>(&e).with_context(ctx)?.net)
        } else {
            AnyNet::Simple(elaborate::<SimpleNet>(&e).with_context(ctx)?.net)
        });
    }
    let net = net_from_json(&text).with_context(ctx)?;
    Ok(if extended { AnyNet::Extended(net.into_extended()) } else { net })
}

fn is_extended(n: &AnyNet) -> bool {
    matches!(n, AnyNet::Extended(_))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn simple_hom(n: AnyNet) -> Result<Hom<SimpleNet>> {
    match n {
        AnyNet::Simple(n) => Ok(Hom::from_net(n)?),
        AnyNet::Extended(_) => bail!("expected a simple net"),
    }
}

fn extended_hom(n: AnyNet) -> Result<Hom<ExtendedNet>> {
    Ok(Hom::from_net(n.into_extended())?)
}

/// Loads two maps, lifting both to extended nets if either is one.
fn load_pair(f: &Path, g: &Path, extended: bool) -> Result<(AnyNet, AnyNet)> {
    let (a, b) = (load(f, extended)?, load(g, extended)?);
    if is_extended(&a) || is_extended(&b) {
        Ok((AnyNet::Extended(a.into_extended()), AnyNet::Extended(b.into_extended())))
    } else {
        Ok((a, b))
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Check { file } => check(&file),
        Command::Compose { first, second, extended, out } => {
            let text = match load_pair(&first, &second, extended)? {
                (a @ AnyNet::Simple(_), b) => simple_to_json(&simple_hom(b)?.after(&simple_hom(a)?)?.net),
                (a, b) => extended_to_json(&extended_hom(b)?.after(&extended_hom(a)?)?.net),
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Transpose { file, shape, extended, out } => {
            let dir = match shape {
                Shape::Curry => TransposeDir::Curry,
                Shape::Uncurry => TransposeDir::Uncurry,
                Shape::Dual => TransposeDir::Dual,
            };
            let text = match load(&file, extended)? {
                n @ AnyNet::Simple(_) => simple_to_json(&simple_hom(n)?.transpose(dir)?.net),
                n => extended_to_json(&extended_hom(n)?.transpose(dir)?.net),
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Sum { f, g, extended, out } => {
            // Simple sums are linking unions; extended sums go through the
            // categorical composite.
            let text = match load_pair(&f, &g, extended)? {
                (AnyNet::Simple(a), AnyNet::Simple(b)) => simple_to_json(&a.sum(&b)?),
                (a, b) => extended_to_json(&extended_hom(a)?.plus(&extended_hom(b)?)?.net),
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Eliminate { file, anchor, all_orders, bound, out } => {
            let net = load(&file, true)?.into_extended();
            if all_orders {
                let forms = net.elimination_normal_forms(bound)?;
                eprintln!("{} distinct normal form(s) over all elimination orders", forms.len());
                let docs: Vec<serde_json::Value> = forms
                    .iter()
                    .map(|n| serde_json::from_str(&extended_to_json(n)).expect("net JSON parses"))
                    .collect();
                emit(&serde_json::to_string_pretty(&docs)?, out.as_deref())?;
            } else {
                let name = anchor.expect("clap requires --anchor without --all-orders");
                let k = name
                    .strip_prefix('k')
                    .unwrap_or(&name)
                    .parse::<u32>()
                    .map_err(|_| anyhow!("bad anchor `{name}` (expected k<number>)"))?;
                emit(&extended_to_json(&net.eliminate_anchor(k)?), out.as_deref())?;
            }
            Ok(true)
        }
        Command::Suite(args) => suite(args),
        Command::ExportDot { file, out, extended } => {
            let text = match load(&file, extended)? {
                AnyNet::Simple(n) => simple_to_dot(&n),
                AnyNet::Extended(n) => extended_to_dot(&n),
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
    }
}

fn check(file: &Path) -> Result<bool> {
    let net = load(file, false)?;
    let ok = match &net {
        AnyNet::Simple(n) => {
            let (total, linked) = n.pruning_census()?;
            let ok = total == linked;
            println!("{} ({linked}/{total} prunings linked)", if ok { "correct" } else { "incorrect" });
            ok
        }
        AnyNet::Extended(n) => {
            let ok = n.is_correct()?;
            println!("{} (extended net, {} anchors)", if ok { "correct" } else { "incorrect" }, n.anchors().len());
            ok
        }
    };
    Ok(ok)
}

fn parse_levels(names: &[String]) -> Result<Vec<Level>> {
    let mut out = Vec::new();
    for n in names {
        if n.eq_ignore_ascii_case("all") {
            out.extend(Level::ALL);
        } else {
            out.push(n.parse::<Level>().map_err(|m| anyhow!(m))?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn suite(args: SuiteArgs) -> Result<bool> {
    let levels = parse_levels(&args.levels)?;
    if args.atoms.is_empty() || args.atoms.iter().any(|a| !boolcat::formula::is_atom_name(a)) {
        bail!("--atoms needs a comma-separated list of atom names");
    }
    let owned: Catalog;
    let catalog = match &args.catalog {
        Some(p) => {
            owned = axiom_suite::parse_catalog(&read(p)?).with_context(|| format!("in {}", p.display()))?;
            &owned
        }
        None => axiom_suite::builtin(),
    };
    let cats = match args.category {
        CategoryArg::Snet => vec![Category::SNet],
        CategoryArg::Enet => vec![Category::ENet],
        CategoryArg::Both => vec![Category::SNet, Category::ENet],
    };
    let cfg = SamplerConfig { bindings: args.bindings, max_depth: args.depth, atoms: args.atoms, seed: args.seed };
    let reports: Vec<Report> = cats
        .into_iter()
        .map(|cat| {
            if args.exhaustive {
                axiom_suite::run_sweep(catalog, &levels, cat, args.seed)
            } else {
                axiom_suite::run_suite(catalog, &levels, cat, &cfg)
            }
        })
        .collect();
    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            print!("{}", r.table());
        }
    }
    Ok(reports.iter().all(Report::passed))
}
