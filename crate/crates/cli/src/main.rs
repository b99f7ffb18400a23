//! Command-line front end: facet counts, geometric verification, the
//! exhaustive census, golden-table reproduction, and the facet bound.
//!
//! Exit codes: 0 success, 2 input error, 3 verification or golden failure,
//! 4 size guard.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use twinchain::census::tables::{self, TableId};
use twinchain::census::{verify_theorem, CensusOptions};
use twinchain::hull::{
    brute_force_facets, hrep_from_chains, is_reflexive, point_cloud, validate_hrep, vertices,
    ValidationRequest, MAX_BRUTE_DIM,
};
use twinchain::io::parse_pair;
use twinchain::twinned::{bound, facet_chains};
use twinchain::Error;

#[derive(Parser)]
#[command(
    name = "twinchain",
    version,
    about = "Facet counts of twinned chain polytopes of posets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    /// Every generating point satisfies every inequality.
    Validity,
    /// Also: each inequality is facet-supporting, the half-space set matches
    /// the brute-force hull (d <= 4), and the polytope is reflexive.
    Facets,
    /// Also: the inequalities carve out exactly the cloud vertices (d <= 4).
    Complete,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the facets of the poset pair in FILE.
    Count {
        /// Pair file: two poset records (text format) or a JSON object.
        file: PathBuf,
        /// Also print the sorted facet label family.
        #[arg(long)]
        chains: bool,
    },
    /// Verify the chain-derived facet description geometrically.
    VerifyGeometry {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Level::Facets)]
        level: Level,
        /// Print the V-representation and H-representation dumps.
        #[arg(long)]
        dump: bool,
    },
    /// Exhaustively verify the facet bound at dimension D.
    Census {
        d: usize,
        /// Worker threads (default: TWINCHAIN_JOBS or all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the record stream and shard manifest here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow d = 6 (minutes of work, millions of records).
        #[arg(long)]
        extended: bool,
        /// Reuse completed shards found in --out.
        #[arg(long)]
        resume: bool,
    },
    /// Recompute the embedded golden tables and diff them cell by cell.
    Tables {
        /// One of: all, t1, t3, t4, d2, ex23.
        #[arg(long, default_value = "all")]
        which: String,
        /// Extend the graph-count table to its two largest dimensions.
        #[arg(long)]
        long: bool,
        /// Emit one JSON record per cell instead of aligned text.
        #[arg(long)]
        json: bool,
    },
    /// Print the exact facet bound for dimension D.
    Bound { d: usize },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Size { .. } => 4,
        Error::GoldenMismatch { .. }
        | Error::BoundViolation { .. }
        | Error::UnvalidatedInput(_) => 3,
        _ => 2,
    }
}

fn jobs_default(explicit: Option<usize>) -> Option<usize> {
    explicit.or_else(|| {
        std::env::var("TWINCHAIN_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Count { file, chains } => {
            let (p, q) = parse_pair(&std::fs::read_to_string(&file)?)?;
            let family = facet_chains(&p, &q)?;
            println!("N = {}", family.len());
            if chains {
                print!("{}", family.to_lines());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyGeometry { file, level, dump } => {
            let (p, q) = parse_pair(&std::fs::read_to_string(&file)?)?;
            verify_geometry(&p, &q, level, dump)
        }
        Cmd::Census {
            d,
            jobs,
            out,
            extended,
            resume,
        } => {
            let opts = CensusOptions {
                extended,
                jobs: jobs_default(jobs),
                out_dir: out,
                resume,
            };
            let summary = verify_theorem(d, &opts)?;
            println!("census d = {}", summary.d);
            println!("graph classes = {}", summary.graph_classes);
            println!("pairs = {}", summary.pairs);
            println!("max = {}", summary.max);
            println!("bound = {}", summary.bound);
            println!("maxima = {}", summary.maxima.len());
            for r in &summary.maxima {
                println!(
                    "  max pair: p_code={} q_code={} relabel={} n={}",
                    r.p_code, r.q_code, r.q_relabel_id, r.n_facets
                );
            }
            match &summary.equality {
                Some(eq) => println!(
                    "equality check: attainers = {}, mismatches = {}, verified = {}",
                    eq.attainers, eq.mismatches, eq.consistent
                ),
                None => println!("equality check: n/a (odd dimension)"),
            }
            if let Some(path) = &summary.records_path {
                println!("records = {}", path.display());
            }
            match &summary.equality {
                Some(eq) if !eq.consistent => Ok(ExitCode::from(3)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Cmd::Tables { which, long, json } => {
            let ids: Vec<TableId> = if which.eq_ignore_ascii_case("all") {
                TableId::all().to_vec()
            } else {
                match TableId::parse(&which) {
                    Some(id) => vec![id],
                    None => {
                        return Err(Error::Parse {
                            line: 0,
                            msg: format!("unknown table `{which}` (use all, t1, t3, t4, d2, ex23)"),
                        })
                    }
                }
            };
            let reports = tables::reproduce(&ids, long)?;
            let mut all_pass = true;
            for report in &reports {
                if json {
                    for cell in &report.cells {
                        all_pass &= cell.pass;
                        let mut record = serde_json::Map::new();
                        record.insert("table".into(), report.id.to_string().into());
                        record.insert("label".into(), cell.label.clone().into());
                        record.insert("expected".into(), cell.expected.clone().into());
                        record.insert("actual".into(), cell.actual.clone().into());
                        record.insert("pass".into(), cell.pass.into());
                        println!("{}", serde_json::Value::Object(record));
                    }
                    continue;
                }
                println!("{}: {}", report.id, report.title);
                for cell in &report.cells {
                    let status = if cell.pass { "PASS" } else { "FAIL" };
                    all_pass &= cell.pass;
                    println!(
                        "  [{status}] {:<40} expected {:<12} got {}",
                        cell.label, cell.expected, cell.actual
                    );
                }
            }
            if all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Cmd::Bound { d } => {
            if d == 0 {
                return Err(Error::Parse {
                    line: 0,
                    msg: "the bound is defined for d >= 1".into(),
                });
            }
            println!("{}", bound(d));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify_geometry(
    p: &twinchain::Poset,
    q: &twinchain::Poset,
    level: Level,
    dump: bool,
) -> Result<ExitCode, Error> {
    let d = p.len();
    if level == Level::Complete && d > MAX_BRUTE_DIM {
        return Err(Error::Size {
            what: "complete geometric verification",
            d,
            min: 1,
            max: MAX_BRUTE_DIM,
        });
    }
    let family = facet_chains(p, q)?;
    let hrep = hrep_from_chains(&family);
    let cloud = point_cloud(p, q)?;
    let request = match level {
        Level::Validity => ValidationRequest::validity_only(),
        Level::Facets => ValidationRequest::facets(),
        Level::Complete => ValidationRequest::complete(),
    };
    let report = validate_hrep(&cloud, &hrep, request)?;
    let mut ok = true;
    for (name, check) in [
        ("validity", &report.validity),
        ("facet-support", &report.facet_support),
        ("completeness", &report.completeness),
    ] {
        if let Some(c) = check {
            println!(
                "{name}: {} ({})",
                if c.pass { "pass" } else { "FAIL" },
                c.detail
            );
            ok &= c.pass;
        }
    }
    println!("{} facets", hrep.len());
    if level != Level::Validity {
        let vrep = vertices(&cloud)?;
        println!("{} vertices", vrep.len());
        if d <= MAX_BRUTE_DIM {
            let brute = brute_force_facets(&cloud)?;
            let same = brute == hrep;
            println!(
                "hull cross-check: {} ({} brute-force facets)",
                if same { "pass" } else { "FAIL" },
                brute.len()
            );
            ok &= same;
        } else {
            println!("hull cross-check: skipped (d > {MAX_BRUTE_DIM})");
        }
        if ok {
            let reflexive = is_reflexive(&hrep, &report)?;
            println!("reflexive: {reflexive}");
            ok &= reflexive;
        }
        if dump {
            print!("vertices:\n{}", vrep.to_text());
        }
    } else if dump {
        print!("vertices:\n{}", vertices(&cloud)?.to_text());
    }
    if dump {
        print!("half-spaces:\n{}", hrep.to_text());
    }
    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("geometric verification failed");
        Ok(ExitCode::from(3))
    }
}
