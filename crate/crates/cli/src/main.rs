//! `corelattice` command-line front end.
//!
//! Data goes to stdout (or `--output`) as JSON Lines, a single summary object
//! with `--summary`, or CSV with `--format csv`. Timings go to stderr only.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! validation error, 3 enumeration cap exceeded.

mod output;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use corelattice::ehrhart::{self, RationalPolytope};
use corelattice::simplex::{self, EnumerationCap, SimplexSpec, CAP_ENV};
use corelattice::verify::{self, SuiteConfig};
use corelattice::{perm, qpoly, qt_catalan, Error};

use output::{Format, Sink};

#[derive(Parser, Debug)]
#[command(
    name = "corelattice",
    version,
    about = "Enumerate and analyze simultaneous (a,b)-core partitions"
)]
struct Cli {
    /// Output format for record streams.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Emit one summary JSON object instead of the record stream.
    #[arg(long, global = true)]
    summary: bool,

    /// Maximum number of points a single enumeration may produce.
    #[arg(long, env = CAP_ENV, default_value_t = 10_000_000,
          value_parser = clap::value_parser!(u64).range(1..), global = true)]
    cap: u64,

    /// Worker threads (default: available cores). Output order does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write data to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One record per (a,b)-core, then a footer with count, total and average size.
    ///
    /// CSV header: charges,z,partition,size,length,skew_length,co_skew_length
    /// (vector fields are space separated; the footer is JSON-only).
    Enumerate {
        a: usize,
        b: usize,
        /// Only self-conjugate cores.
        #[arg(long)]
        self_conjugate: bool,
    },
    /// Cat_{a,b}, Cat_{a,b}(q), Cat_{a,b}(q,t), symmetry/specialization verdicts
    /// and per-residue unimodality.
    ///
    /// CSV header: field,value
    Poly { a: usize, b: usize },
    /// Run a named verification suite (or `all`).
    ///
    /// Assertion suites: anderson, armstrong, self-conjugate, oracle, quadratic,
    /// stats, coset-identities, qt3, symmetry, sizmaj1, sizmaj2, ld-weights, sqin,
    /// delta-table, reciprocity, root-structure. Exploration suites (never fail):
    /// unimodality, age-search.
    ///
    /// CSV header: suite,check,params,passed,exploratory
    Verify {
        suite: String,
        #[arg(long)]
        a_max: Option<usize>,
        #[arg(long)]
        b_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        t_max: Option<i64>,
    },
    /// Statistics of every permutation of [n].
    ///
    /// CSV header: permutation,des,maj,inv,siz,sqin,code
    Perm {
        n: usize,
        /// Refuse n above this bound.
        #[arg(long, default_value_t = perm::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Polynomial fits in b and quasipolynomial reciprocity.
    Ehrhart {
        #[command(subcommand)]
        which: EhrhartCommand,
    },
    /// Search for coset shifts expressing Cat_{a,b}(q) as a sum of q-binomials.
    SearchAge {
        a: usize,
        /// Comma-separated b values (default: coprime b in a+1..=3a+1).
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum EhrhartCommand {
    /// Fit the count or size-sum polynomial of b ≡ residue (mod a).
    Cores {
        a: usize,
        #[arg(long, default_value_t = 1)]
        residue: usize,
        #[arg(long, value_enum, default_value_t = Stat::Count)]
        stat: Stat,
        /// Number of b values sampled (at least degree + 2).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Fitted F, G, P = G/F and their root and reflection checks.
    Roots { a: usize },
    /// Fit a bundled polytope's (weighted) Ehrhart quasipolynomial and test reciprocity.
    Polytope {
        #[arg(value_enum)]
        name: PolytopeName,
        /// Exponent vector of a monomial weight, comma-separated.
        #[arg(long, value_delimiter = ',')]
        weight: Vec<u32>,
        #[arg(long, default_value_t = 16)]
        t_max: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Stat {
    Count,
    Size,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolytopeName {
    Segment,
    Triangle,
    Simplex2,
    Simplex3,
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::CapExceeded { .. }) => 3,
        Some(Error::ValidationFailed { .. }) | Some(Error::InexactDivision(_)) => 1,
        Some(_) => 2,
        None => 2,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let cap = EnumerationCap(cli.cap);
    let mut sink = Sink::open(cli.output.as_deref(), cli.format, cli.summary)?;
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Enumerate {
            a,
            b,
            self_conjugate,
        } => enumerate(&mut sink, a, b, self_conjugate, cap)?,
        Command::Poly { a, b } => poly(&mut sink, a, b, cap)?,
        Command::Verify {
            suite,
            a_max,
            b_max,
            n_max,
            k_max,
            t_max,
        } => {
            let cfg = SuiteConfig {
                a_max,
                b_max,
                n_max,
                k_max,
                t_max,
                cap,
            };
            run_verify(&mut sink, &suite, &cfg)?
        }
        Command::Perm { n, max_n } => permutations(&mut sink, n, max_n)?,
        Command::Ehrhart { which } => run_ehrhart(&mut sink, which, cap)?,
        Command::SearchAge { a, b } => search_age(&mut sink, a, b, cap)?,
    };
    sink.finish()?;
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    Ok(outcome)
}

fn spec(a: usize, b: usize) -> Result<SimplexSpec> {
    Ok(SimplexSpec::new(a, b)?)
}

fn enumerate(
    sink: &mut Sink,
    a: usize,
    b: usize,
    self_conjugate: bool,
    cap: EnumerationCap,
) -> Result<Outcome> {
    let spec = spec(a, b)?;
    let cores = if self_conjugate {
        simplex::enumerate_self_conjugate(&spec, cap)?
    } else {
        simplex::enumerate_cores(&spec, cap)?
    };
    let summary = simplex::size_summary(&cores);
    let footer = json!({
        "a": a,
        "b": b,
        "self_conjugate": self_conjugate,
        "count": summary.count,
        "total": summary.total.to_string(),
        "average": summary.average.to_string(),
    });
    if sink.is_summary() {
        sink.summary(&footer)?;
        return Ok(Outcome::Ok);
    }
    sink.header(&[
        "charges",
        "z",
        "partition",
        "size",
        "length",
        "skew_length",
        "co_skew_length",
    ])?;
    for cv in &cores {
        let r = simplex::CoreRecord::new(&spec, cv)?;
        sink.record(&r, || {
            vec![
                output::join(&r.charges),
                output::join(&r.z),
                output::join(r.partition.parts()),
                r.size.to_string(),
                r.length.to_string(),
                r.skew_length.to_string(),
                r.co_skew_length.to_string(),
            ]
        })?;
    }
    sink.footer(&json!({ "footer": footer }))?;
    Ok(Outcome::Ok)
}

fn poly(sink: &mut Sink, a: usize, b: usize, cap: EnumerationCap) -> Result<Outcome> {
    let spec = spec(a, b)?;
    let cat_q = qpoly::cat_q(a, b)?;
    let cat_qt = qt_catalan::cat_qt(&spec, cap)?;
    let symmetric = qt_catalan::check_symmetry(&spec, cap)?;
    let specializes = qt_catalan::check_specialization(&spec, cap)?;
    let unimodality = qpoly::unimodality_report(&cat_q, a);
    let report = json!({
        "a": a,
        "b": b,
        "catalan": spec.catalan().to_string(),
        "cat_q": cat_q.to_string(),
        "cat_q_terms": cat_q,
        "cat_qt": cat_qt.to_string(),
        "cat_qt_terms": cat_qt,
        "symmetric": symmetric,
        "specializes": specializes,
        "unimodality": unimodality,
    });
    if sink.is_summary() || sink.format() == Format::Json {
        sink.summary(&report)?;
    } else {
        sink.header(&["field", "value"])?;
        let Value::Object(map) = &report else {
            unreachable!()
        };
        for (k, v) in map {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            sink.row(vec![k.clone(), cell])?;
        }
    }
    Ok(Outcome::Ok)
}

fn run_verify(sink: &mut Sink, suite: &str, cfg: &SuiteConfig) -> Result<Outcome> {
    if !sink.is_summary() {
        sink.header(&["suite", "check", "params", "passed", "exploratory"])?;
    }
    let mut write_err = None;
    let results = verify::run_suite(suite, cfg, &mut |r| {
        eprintln!(
            "{} {}/{} {} {:.3}s",
            if r.passed {
                "ok  "
            } else if r.exploratory {
                "note"
            } else {
                "FAIL"
            },
            r.suite,
            r.check,
            r.params,
            r.elapsed.as_secs_f64()
        );
        if write_err.is_some() || sink.is_summary() {
            return;
        }
        let res = sink.record(r, || {
            vec![
                r.suite.clone(),
                r.check.clone(),
                r.params.to_string(),
                r.passed.to_string(),
                r.exploratory.to_string(),
            ]
        });
        if let Err(e) = res {
            write_err = Some(e);
        }
    })?;
    if let Some(e) = write_err {
        return Err(e);
    }
    let failures: Vec<&verify::CheckResult> = results.iter().filter(|r| r.is_failure()).collect();
    if sink.is_summary() {
        let notes = results
            .iter()
            .filter(|r| r.exploratory && !r.passed)
            .count();
        sink.summary(&json!({
            "suite": suite,
            "checks": results.len(),
            "passed": failures.is_empty(),
            "failed": failures.len(),
            "exploratory_findings": notes,
            "failures": failures.iter().map(|r| json!({"suite": r.suite, "check": r.check, "params": r.params})).collect::<Vec<_>>(),
        }))?;
    }
    Ok(if failures.is_empty() {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}

fn permutations(sink: &mut Sink, n: usize, max_n: usize) -> Result<Outcome> {
    if n > max_n {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds --max-n {max_n}")).into());
    }
    if sink.is_summary() {
        let sizmaj = perm::check_sizmaj2(n, max_n)?;
        let sqin = perm::check_sqin_relation(n, max_n)?;
        let ld = perm::check_ld_weights(n);
        sink.summary(&json!({
            "n": n,
            "count": perm::all_permutations(n).len(),
            "distribution": perm::distribution(n, max_n)?.to_string(),
            "sizmaj2": sizmaj,
            "sqin": sqin,
            "ld_weights": ld,
        }))?;
        return Ok(if sizmaj && sqin && ld {
            Outcome::Ok
        } else {
            Outcome::ChecksFailed
        });
    }
    sink.header(&["permutation", "des", "maj", "inv", "siz", "sqin", "code"])?;
    for s in perm::all_permutations(n) {
        let code = perm::ld_encode(&s);
        let rec = json!({
            "permutation": s,
            "des": perm::des_set(&s),
            "maj": perm::maj(&s),
            "inv": perm::inv(&s),
            "siz": perm::siz(&s),
            "sqin": perm::sqin(&s),
            "code": code.entries(),
        });
        sink.record(&rec, || {
            vec![
                output::join(s.one_line()),
                output::join(&perm::des_set(&s)),
                perm::maj(&s).to_string(),
                perm::inv(&s).to_string(),
                perm::siz(&s).to_string(),
                perm::sqin(&s).to_string(),
                output::join(code.entries()),
            ]
        })?;
    }
    Ok(Outcome::Ok)
}

fn run_ehrhart(sink: &mut Sink, which: EhrhartCommand, cap: EnumerationCap) -> Result<Outcome> {
    let (report, ok) = match which {
        EhrhartCommand::Cores {
            a,
            residue,
            stat,
            samples,
        } => {
            let degree = match stat {
                Stat::Count => a.saturating_sub(1),
                Stat::Size => a + 1,
            };
            let samples = samples.unwrap_or(degree + 3);
            let series = match stat {
                Stat::Count => ehrhart::core_count_series(a, residue, samples, cap)?,
                Stat::Size => ehrhart::core_qsum_series(a, residue, samples, cap)?,
            };
            let poly = ehrhart::fit_polynomial(&series, degree)?;
            let values: Vec<Value> = series
                .values
                .iter()
                .map(|(b, v)| json!({"b": b, "value": v.to_string()}))
                .collect();
            let report = json!({
                "a": a,
                "residue": residue % a.max(1),
                "stat": format!("{stat:?}").to_lowercase(),
                "polynomial": poly.to_string(),
                "coefficients": poly.coeff_strings(),
                "samples": values,
            });
            (report, true)
        }
        EhrhartCommand::Roots { a } => {
            let r = ehrhart::check_root_structure(a, cap)?;
            (serde_json::to_value(&r)?, r.passed())
        }
        EhrhartCommand::Polytope {
            name,
            weight,
            t_max,
        } => {
            let (p, period, dim) = match name {
                PolytopeName::Segment => (RationalPolytope::segment(), 1, 1),
                PolytopeName::Triangle => (RationalPolytope::half_triangle(), 2, 2),
                PolytopeName::Simplex2 => (RationalPolytope::standard_simplex(2), 1, 2),
                PolytopeName::Simplex3 => (RationalPolytope::standard_simplex(3), 1, 3),
            };
            if !weight.is_empty() && weight.len() != dim {
                return Err(
                    Error::InvalidParameter(format!("weight needs {dim} exponents")).into(),
                );
            }
            let w = (!weight.is_empty()).then_some(weight.as_slice());
            let degree = dim + weight.iter().sum::<u32>() as usize;
            let r = ehrhart::reciprocity_check(&p, w, period, degree, t_max)?;
            (serde_json::to_value(&r)?, r.holds)
        }
    };
    sink.summary(&report)?;
    Ok(if ok {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}

fn search_age(sink: &mut Sink, a: usize, b: Vec<usize>, cap: EnumerationCap) -> Result<Outcome> {
    let bs = if b.is_empty() {
        (a + 1..=3 * a + 1)
            .filter(|&b| SimplexSpec::new(a, b).is_ok())
            .collect()
    } else {
        b
    };
    for &b in &bs {
        spec(a, b)?;
    }
    let r = qpoly::search_age_function(a, &bs, cap)?;
    sink.summary(&serde_json::to_value(&r)?)?;
    Ok(Outcome::Ok)
}
