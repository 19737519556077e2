//! Command-line surface over the secant-dimension and induction drivers.
//!
//! Exit codes: 0 when the requested property is certified (or the closed
//! form settles it, including certified-defective quadrics), 3 when the run
//! is inconclusive or a driver's hypotheses do not apply, 2 on usage errors,
//! 1 on operational failures such as the matrix budget.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

use splitsec::cert::{CertCache, CertificateRecord};
use splitsec::gfp::PrimeModulus;
use splitsec::induction::{
    exp_bound, restriction_fixed_degree, restriction_fixed_dimension, small_s_enumerate,
    small_s_verify, splitting_graph, verify_by_splitting, CaseReport, EnumerationMode,
    InductionReport, ReportVerdict,
};
use splitsec::numbers::FunctionSpec;
use splitsec::secant::{secant_dim, SecantQuery};
use splitsec::statements::{
    evaluate_statement, EvalConfig, StatementOutcome, StatementParams, Verdict,
    DEFAULT_CELL_BUDGET, DEFAULT_MAX_ATTEMPTS, DEFAULT_SEED,
};
use splitsec::Error;

#[derive(Parser)]
#[command(
    name = "splitsec",
    version,
    about = "Exact-rank certificates for dimensions of secant varieties of completely decomposable forms"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Prime modulus for all rank computations
    #[arg(long, global = true, env = "SPLITSEC_PRIME", default_value_t = 32003)]
    prime: u32,
    /// Base seed; every case derives its own deterministic seed from it
    #[arg(long, global = true, env = "SPLITSEC_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Retries with fresh randomness before reporting Inconclusive
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u32,
    /// Abort before building matrices bigger than this many cells
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_BUDGET)]
    cell_budget: u64,
    /// Lift the matrix cell budget entirely
    #[arg(long, global = true)]
    unbounded: bool,
    /// Worker threads for case fan-out (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Certificate cache file (JSONL, append-only)
    #[arg(long, global = true, default_value = "splitsec_certs.jsonl")]
    cache: PathBuf,
    /// Do not append case outcomes to the certificate cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Output format
    #[arg(long, global = true, value_parser = ["text", "json"], default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension and defect of one secant variety
    Dim {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
        #[arg(short)]
        s: u64,
    },
    /// Evaluate a single statement from its descriptor text
    Statement {
        /// e.g. "A:i=0:n=3:d=3:s=const:2:t=const:0:u=const:0:v=const:0"
        descriptor: String,
    },
    /// Run a restriction-induction sweep (fixed dimension or fixed degree)
    #[command(group(ArgGroup::new("mode").required(true).args(["fixed_dim", "fixed_degree"])))]
    Restriction {
        /// Fix the ambient dimension and induct on the degree
        #[arg(long)]
        fixed_dim: bool,
        /// Fix the degree and induct on the ambient dimension
        #[arg(long)]
        fixed_degree: bool,
        #[arg(short)]
        n: Option<u32>,
        #[arg(short)]
        d: Option<u32>,
        /// Restriction step
        #[arg(short)]
        l: u32,
        #[arg(short, value_parser = parse_spec)]
        s: FunctionSpec,
        #[arg(short, value_parser = parse_spec, default_value = "const:0")]
        t: FunctionSpec,
        #[arg(short, value_parser = parse_spec, default_value = "const:0")]
        u: FunctionSpec,
        #[arg(short, value_parser = parse_spec, default_value = "const:0")]
        v: FunctionSpec,
        /// Evaluate base cases only up to this degree
        #[arg(long)]
        max_d: Option<u32>,
        /// Evaluate base cases only up to this ambient dimension
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Verify a pure statement through its splitting graph
    Split {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
        #[arg(short)]
        s: u64,
        /// Write the splitting graph in DOT format (default: split_graph.dot)
        #[arg(long, num_args = 0..=1, default_missing_value = "split_graph.dot")]
        emit_dot: Option<PathBuf>,
        /// Also rank-evaluate every sink instead of relying on the envelope
        #[arg(long)]
        direct: bool,
    },
    /// Sweep the finitely many open cases for one number of summands
    SmallS {
        #[arg(short)]
        s: u64,
        /// Enumerate with the literal iterative scheme instead of the ranges
        #[arg(long)]
        compat: bool,
        /// Print the case list without evaluating
        #[arg(long)]
        enumerate_only: bool,
    },
    /// Largest certified number of summands from the splitting-graph bound
    ExpBound {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
    },
    /// Re-evaluate every cached certificate and compare verdicts
    Replay {
        /// Cache file to replay (defaults to --cache)
        file: Option<PathBuf>,
    },
}

fn parse_spec(text: &str) -> Result<FunctionSpec, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::Parse(_) | Error::InvalidParams(_) | Error::InvalidPrime(_) => ExitCode::from(2),
        Error::NotApplicable(_) => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn run(cli: &Cli) -> splitsec::Result<ExitCode> {
    let g = &cli.global;
    let cfg = EvalConfig {
        prime: PrimeModulus::new(g.prime)?,
        seed: g.seed,
        max_attempts: g.max_attempts,
        cell_budget: if g.unbounded { u64::MAX } else { g.cell_budget },
    };
    let json = g.format == "json";
    let cache = (!g.no_cache).then(|| CertCache::new(&g.cache));

    match &cli.command {
        Command::Dim { n, d, s } => {
            let report = secant_dim(
                &SecantQuery {
                    n: *n,
                    d: *d,
                    s: *s,
                },
                &cfg,
            )?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "sigma_{s}(Split_{d}(P^{n})): expected dim {}, achieved {} ({:?}, {:?})",
                    report.expected_projective_dim,
                    report.achieved_projective_dim,
                    report.verdict,
                    report.provenance
                );
            }
            Ok(if report.is_certified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Statement { descriptor } => {
            let params = StatementParams::parse_descriptor(descriptor)?;
            let out = evaluate_statement(&params, &cfg)?;
            let canonical = params.descriptor();
            if let Some(cache) = &cache {
                cache.append(&CertificateRecord::from_case(&statement_case(
                    &canonical, &out,
                )))?;
            }
            if json {
                println!("{}", statement_json(&canonical, &out));
            } else {
                println!(
                    "{canonical}\n  count {} / ambient {} ({:?}), rank {}/{} -> {:?} ({} attempt(s), seed {}, p={})",
                    out.a_value,
                    out.ambient,
                    out.abundancy,
                    out.achieved_rank,
                    out.target,
                    out.verdict,
                    out.attempts,
                    out.seed,
                    out.prime
                );
            }
            Ok(match out.verdict {
                Verdict::Verified => ExitCode::SUCCESS,
                Verdict::Inconclusive => ExitCode::from(3),
            })
        }
        Command::Restriction {
            fixed_dim,
            n,
            d,
            l,
            s,
            t,
            u,
            v,
            max_d,
            max_n,
            ..
        } => {
            let report = if *fixed_dim {
                let n = n.ok_or_else(|| Error::InvalidParams("--fixed-dim needs -n".into()))?;
                restriction_fixed_dimension(n, *l, s, t, u, v, &cfg, *max_d)?
            } else {
                let d = d.ok_or_else(|| Error::InvalidParams("--fixed-degree needs -d".into()))?;
                restriction_fixed_degree(d, *l, s, t, u, v, &cfg, *max_n)?
            };
            emit_induction_report(&report, json, cache.as_ref())?;
            Ok(report_exit(&report))
        }
        Command::Split {
            n,
            d,
            s,
            emit_dot,
            direct,
        } => {
            if let Some(path) = emit_dot {
                let pow_ok = *n >= 4 && *n <= 60 && *s > 0 && s % (1 << (n - 3)) == 0;
                if pow_ok {
                    let graph = splitting_graph(*n, *d, s >> (n - 3))?;
                    std::fs::write(path, graph.to_dot())?;
                    if !json {
                        println!("wrote {}", path.display());
                    }
                }
            }
            let report = verify_by_splitting(*n, *d, *s, &cfg, *direct)?;
            emit_induction_report(&report, json, cache.as_ref())?;
            Ok(report_exit(&report))
        }
        Command::SmallS {
            s,
            compat,
            enumerate_only,
        } => {
            let mode = if *compat {
                EnumerationMode::Compat
            } else {
                EnumerationMode::Normative
            };
            if *enumerate_only {
                let cases = small_s_enumerate(*s, mode)?;
                if json {
                    println!(
                        "{}",
                        json!({"s": s, "cases": cases.iter().map(|&(n, d)| json!({"n": n, "d": d})).collect::<Vec<_>>()})
                    );
                } else {
                    for (n, d) in cases {
                        println!("n={n} d={d}");
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            let report = small_s_verify(*s, &cfg)?;
            emit_induction_report(&report, json, cache.as_ref())?;
            Ok(report_exit(&report))
        }
        Command::ExpBound { n, d } => {
            let b = exp_bound(*n, *d)?;
            if json {
                println!("{}", json!({"n": n, "d": d, "c": b.c, "bound": b.bound}));
            } else {
                println!("c({n},{d}) = {}, certified summand bound {}", b.c, b.bound);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { file } => {
            let path = file.clone().unwrap_or_else(|| g.cache.clone());
            replay(&path, &cfg, json)
        }
    }
}

fn statement_case(descriptor: &str, out: &StatementOutcome) -> CaseReport {
    use num_traits::ToPrimitive;
    CaseReport {
        descriptor: descriptor.to_string(),
        verdict: out.verdict,
        achieved_rank: out.achieved_rank as u64,
        target: out.target.to_u64().unwrap_or(u64::MAX),
        abundancy: out.abundancy,
        seed: out.seed,
        prime: out.prime,
        attempts: out.attempts,
        millis: 0,
    }
}

fn statement_json(descriptor: &str, out: &StatementOutcome) -> serde_json::Value {
    json!({
        "descriptor": descriptor,
        "count": out.a_value.to_string(),
        "ambient": out.ambient.to_string(),
        "target": out.target.to_string(),
        "abundancy": out.abundancy,
        "achieved_rank": out.achieved_rank,
        "verdict": out.verdict,
        "seed": out.seed,
        "prime": out.prime,
        "attempts": out.attempts,
    })
}

fn emit_induction_report(
    report: &InductionReport,
    json: bool,
    cache: Option<&CertCache>,
) -> splitsec::Result<()> {
    if let Some(cache) = cache {
        cache.append_cases(&report.cases)?;
    }
    if json {
        // one JSONL record per case, then the summary
        for case in &report.cases {
            println!(
                "{}",
                serde_json::to_string(case).map_err(|e| Error::Parse(e.to_string()))?
            );
        }
        println!(
            "{}",
            json!({
                "verdict": report.verdict,
                "covers_full_range": report.covers_full_range,
                "notes": report.notes,
                "cases": report.cases.len(),
            })
        );
    } else {
        for case in &report.cases {
            println!(
                "{} ... {:?} (rank {}/{}, {} attempt(s), {} ms)",
                case.descriptor,
                case.verdict,
                case.achieved_rank,
                case.target,
                case.attempts,
                case.millis
            );
        }
        for note in &report.notes {
            println!("note: {note}");
        }
        println!(
            "overall: {:?}{}",
            report.verdict,
            if report.covers_full_range {
                ""
            } else {
                " (partial range)"
            }
        );
    }
    Ok(())
}

fn report_exit(report: &InductionReport) -> ExitCode {
    match report.verdict {
        ReportVerdict::Verified => ExitCode::SUCCESS,
        _ => ExitCode::from(3),
    }
}

fn replay(path: &std::path::Path, cfg: &EvalConfig, json: bool) -> splitsec::Result<ExitCode> {
    let cache = CertCache::new(path);
    let records = cache.load()?;
    let mut mismatches = Vec::new();
    for rec in &records {
        let params = StatementParams::parse_descriptor(&rec.descriptor)?;
        let case_cfg = EvalConfig {
            prime: PrimeModulus::new(rec.prime)?,
            seed: rec.seed,
            ..*cfg
        };
        let out = evaluate_statement(&params, &case_cfg)?;
        if out.verdict != rec.verdict || out.achieved_rank as u64 != rec.achieved_rank {
            mismatches.push(rec.descriptor.clone());
        }
    }
    if json {
        println!(
            "{}",
            json!({"total": records.len(), "mismatches": mismatches})
        );
    } else {
        println!(
            "replayed {} record(s), {} mismatch(es)",
            records.len(),
            mismatches.len()
        );
        for m in &mismatches {
            println!("mismatch: {m}");
        }
    }
    Ok(if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
