//! `dtc`: discrete topological complexity of simplicial complexes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use dtc_core::certificate::Certificate;
use dtc_core::invariants::{is_categorical, is_farber, motion_plan, AdmissibleKind, AdmissibleSet};
use dtc_core::io::{canonical_facets, complex_to_json, parse_facet_lists, serialize_complex};
use dtc_core::{categorical_square, core, parse_complex, scat, tc, Complex, Decision, InvariantResult, Status};

#[derive(Parser)]
#[command(
    name = "dtc",
    version,
    about = "Discrete topological complexity and simplicial LS-category of finite simplicial complexes",
    after_help = "Complexes are read as text (one facet per line, whitespace-separated labels, \
                  '#' comments) or JSON ({\"facets\": [[...], ...]}).\n\n\
                  EXIT STATUS:\n  0  exact result or decisive verdict\n  2  bounded result or budget exhausted\n  1  error or rejected certificate\n\n\
                  EXAMPLES:\n  dtc tc triangle.txt\n  dtc --json scat triangle.txt > scat.json\n  dtc verify scat.json\n  \
                  dtc is-farber triangle.txt --omega 'a|a b|b; a|b'\n  dtc plan triangle.txt --from a --to c"
)]
struct Cli {
    /// Maximum number of maps visited by one contiguity-class search.
    #[arg(long, global = true, default_value_t = dtc_core::DEFAULT_BUDGET)]
    budget: usize,
    /// Print machine-readable JSON (certificates for computing verbs).
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for admissibility checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete topological complexity TC(K).
    Tc { file: PathBuf },
    /// Simplicial LS-category scat(K).
    Scat { file: PathBuf },
    /// Strong-collapse core of K, with the collapse sequence.
    Core { file: PathBuf },
    /// Categorical square K x K.
    Product { file: PathBuf },
    /// Decide whether a subcomplex of K x K is a Farber subcomplex.
    IsFarber {
        file: PathBuf,
        /// Facets of the subcomplex, pair labels "u|v": a file, or inline with
        /// facets separated by ';'.
        #[arg(long)]
        omega: String,
    },
    /// Decide whether a subcomplex of K is categorical.
    IsCategorical {
        file: PathBuf,
        /// Facets of the subcomplex: a file, or inline with facets separated by ';'.
        #[arg(long)]
        sub: String,
    },
    /// Edge-path motion plan from X to Y read off a Farber cover.
    Plan {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Re-check a certificate produced with --json.
    Verify { cert: PathBuf },
}

const EXACT: u8 = 0;
const ERROR: u8 = 1;
const INCONCLUSIVE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Complex> {
    parse_complex(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// A facet list given inline (`;`-separated) or as a file name.
fn facet_arg(arg: &str) -> Result<Vec<Vec<String>>> {
    let text = if Path::new(arg).is_file() { read(Path::new(arg))? } else { arg.replace(';', "\n") };
    let facets = parse_facet_lists(&text)?;
    if facets.is_empty() {
        bail!("empty facet list");
    }
    Ok(facets)
}

fn subcomplex_of(ambient: &Complex, facets: &[Vec<String>]) -> Result<Complex> {
    let gens = facets.iter().map(|f| ambient.simplex_from_labels(f)).collect::<Result<Vec<_>, _>>()?;
    Ok(ambient.subcomplex(&gens)?)
}

fn braces(facet: &[String]) -> String {
    format!("{{{}}}", facet.join(", "))
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| anyhow!("configuring threads: {e}"))?;
    }
    let budget = cli.budget;
    let json = cli.json;
    match cli.command {
        Command::Tc { file } => {
            let k = load(&file)?;
            report_invariant(&k, tc(&k, budget)?, "TC", budget, json)
        }
        Command::Scat { file } => {
            let k = load(&file)?;
            report_invariant(&k, scat(&k, budget)?, "scat", budget, json)
        }
        Command::Core { file } => {
            let k = load(&file)?;
            let seq = core(&k);
            if json {
                println!("{}", Certificate::for_core(&seq).to_json());
            } else {
                println!(
                    "core: {} vertices, {} facets, dimension {}",
                    seq.end().num_vertices(),
                    seq.end().num_facets(),
                    seq.end().dimension()
                );
                print!("{}", serialize_complex(seq.end()));
                println!("collapses ({}):", seq.len());
                for step in seq.steps() {
                    println!("  remove {} (dominated by {})", k.label(step.removed), k.label(step.dominator));
                }
            }
            Ok(EXACT)
        }
        Command::Product { file } => {
            let k = load(&file)?;
            let p = categorical_square(&k);
            if json {
                println!("{}", complex_to_json(p.complex()));
            } else {
                print!("{}", serialize_complex(p.complex()));
            }
            Ok(EXACT)
        }
        Command::IsFarber { file, omega } => {
            let k = load(&file)?;
            let p = categorical_square(&k);
            let sub = subcomplex_of(p.complex(), &facet_arg(&omega)?)?;
            let d = is_farber(&sub, &p, budget)?;
            report_admissible(AdmissibleKind::Farber, &k, &sub, d, budget, json)
        }
        Command::IsCategorical { file, sub } => {
            let k = load(&file)?;
            let sub = subcomplex_of(&k, &facet_arg(&sub)?)?;
            let d = is_categorical(&sub, &k, budget)?;
            report_admissible(AdmissibleKind::Categorical, &k, &sub, d, budget, json)
        }
        Command::Plan { file, from, to } => plan(&load(&file)?, &from, &to, budget, json),
        Command::Verify { cert } => {
            let c = Certificate::from_json(&read(&cert)?).context("reading certificate")?;
            c.verify()?;
            let kind = serde_json::to_value(&c)?["certificate"].as_str().unwrap_or("?").to_owned();
            if json {
                println!("{}", serde_json::json!({ "certificate": kind, "accepted": true }));
            } else {
                println!("certificate accepted ({kind})");
            }
            Ok(if c.is_decisive() { EXACT } else { INCONCLUSIVE })
        }
    }
}

fn report_invariant(k: &Complex, r: InvariantResult, name: &str, budget: usize, json: bool) -> Result<u8> {
    if json {
        println!("{}", Certificate::for_invariant(&r, k, budget).to_json());
    } else {
        match r.status {
            Status::Exact => println!("{name} = {} (exact)", r.value.expect("exact value")),
            Status::Bounded => println!(
                "{} <= {name} <= {} (bounded: budget exhausted in some checks)",
                r.lower_bound,
                r.upper_bound.expect("bounded")
            ),
            Status::BudgetExhausted => println!("{name} >= {} (budget exhausted, no cover certified)", r.lower_bound),
            Status::NotCoverable => {
                println!("{name} undefined: no admissible cover exists (is the complex edge-path connected?)")
            }
        }
        if let Some(cover) = &r.cover {
            let what = match r.kind {
                AdmissibleKind::Farber => "Farber subcomplexes of K x K",
                AdmissibleKind::Categorical => "categorical subcomplexes",
            };
            println!("cover by {} {what}:", cover.len());
            for (i, set) in cover.iter().enumerate() {
                let facets: Vec<String> = canonical_facets(&set.subcomplex).iter().map(|f| braces(f)).collect();
                println!("  {}: {} (witness length {})", i + 1, facets.join(" "), set.witness.len());
            }
        }
    }
    Ok(match r.status {
        Status::Exact | Status::NotCoverable => EXACT,
        Status::Bounded | Status::BudgetExhausted => INCONCLUSIVE,
    })
}

fn report_admissible(
    kind: AdmissibleKind,
    k: &Complex,
    sub: &Complex,
    d: Decision<AdmissibleSet>,
    budget: usize,
    json: bool,
) -> Result<u8> {
    if json {
        println!("{}", Certificate::for_admissible(kind, k, sub, &d, budget).to_json());
    } else {
        let what = match kind {
            AdmissibleKind::Farber => "Farber",
            AdmissibleKind::Categorical => "categorical",
        };
        match &d {
            Decision::Yes(set) => {
                println!("yes: the subcomplex is {what} (witness length {})", set.witness.len());
                for step in set.witness.steps() {
                    println!("  {}", step.to_labels().join(" "));
                }
            }
            Decision::No => println!("no: the subcomplex is not {what}"),
            Decision::Unknown => println!("unknown: budget exhausted"),
        }
    }
    Ok(if matches!(d, Decision::Unknown) { INCONCLUSIVE } else { EXACT })
}

fn plan(k: &Complex, from: &str, to: &str, budget: usize, json: bool) -> Result<u8> {
    let x = k.vertex(from).ok_or_else(|| anyhow!("unknown vertex {from:?}"))?;
    let y = k.vertex(to).ok_or_else(|| anyhow!("unknown vertex {to:?}"))?;
    let p = categorical_square(k);
    let target = p.complex().label(p.pair(x, y)).to_owned();
    let r = tc(k, budget)?;
    let found = r.cover.iter().flatten().find(|s| s.subcomplex.vertex(&target).is_some()).cloned();
    let Some(set) = found else {
        if r.status == Status::NotCoverable {
            bail!("no Farber subcomplex contains ({from}, {to}); the vertices may lie in different components");
        }
        println!("no certified Farber subcomplex contains ({from}, {to}) within the budget");
        return Ok(INCONCLUSIVE);
    };
    let plan = motion_plan(&p, &set, x, y)?;
    plan.validate(k)?;
    if json {
        println!("{}", Certificate::for_plan(k, &set, &plan).to_json());
    } else {
        let path: Vec<&str> = plan.path.iter().map(|v| k.label(*v)).collect();
        println!("{}", path.join(" -> "));
        println!("midpoint: {}", k.label(plan.midpoint));
    }
    Ok(EXACT)
}
