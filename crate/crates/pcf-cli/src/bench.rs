//! Seeded benchmark trials: generate, solve, and (optionally) certify the
//! applicable approximation guarantee against the brute-force oracle. Trials run in a worker pool capped by PCF_THREADS; records are
//! emitted in trial-index order regardless of completion order.

use crate::{dispatch_auto, run_pf_alg, Alg, Family};
use clap::Args;
use pcf::graph::ColoredMultigraph;
use pcf::ratio::Ratio;
use pcf::{instances, oracle};
use serde::{Deserialize, Serialize};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "random")]
    family: Family,
    #[arg(long, value_enum, default_value = "auto")]
    alg: Alg,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Largest vertex count drawn (source-side for reduction families).
    #[arg(long, default_value_t = 9)]
    nmax: usize,
    /// Largest edge count drawn (source-side for reduction families).
    #[arg(long, default_value_t = 20)]
    mmax: usize,
    /// Color count for the random family.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Generate simple instances (random family only).
    #[arg(long)]
    simple: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Certify size >= ceil(ratio * OPT) against the brute-force oracle.
    #[arg(long)]
    check_ratio: bool,
    /// Oracle cap; trials above it are marked uncertified, not failed.
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    cap: usize,
    /// Emit JSON lines instead of the text table.
    #[arg(long)]
    json: bool,
    /// Include wall-clock times (breaks byte-for-byte determinism).
    #[arg(long)]
    timings: bool,
}

/// One benchmark trial, as emitted in text or JSON-lines form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub alg: String,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<usize>,
    /// Exact ratio "size/opt" when the optimum was computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    /// "ok", "fail", or "skipped" (oracle cap exceeded or no applicable
    /// guarantee); absent without --check-ratio.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<u64>,
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Random => "random",
        Family::Lf2pcf => "lf2pcf",
        Family::Pcf3complete => "pcf3complete",
        Family::Lp2maxpt => "lp2maxpt",
        Family::Tsp12 => "tsp12",
    }
}

fn alg_name(a: Alg) -> &'static str {
    match a {
        Alg::Auto => "auto",
        Alg::Complete2 => "complete2",
        Alg::General => "general",
        Alg::Simplek => "simplek",
        Alg::Maxpt => "maxpt",
    }
}

// Instance for one trial; deterministic in (flags, seed, trial index).
fn trial_instance(args: &BenchArgs, trial: u64) -> Result<ColoredMultigraph, String> {
    let mut s = args.seed ^ trial.wrapping_mul(0xA24BAED4963EE407);
    let n = 2 + (splitmix(&mut s) % (args.nmax.max(2) as u64 - 1)) as usize;
    let gen_seed = splitmix(&mut s);
    match args.family {
        Family::Random => {
            let capacity = if args.simple {
                n * (n - 1) / 2
            } else {
                n * (n - 1) / 2 * args.k
            };
            let m = ((splitmix(&mut s) % (args.mmax as u64 + 1)) as usize).min(capacity);
            instances::gen_random(n, m, args.k, args.simple, gen_seed).map_err(|e| e.to_string())
        }
        Family::Lf2pcf => {
            let m = source_edges(&mut s, n, args.mmax);
            let source =
                instances::gen_random_uncolored(n, m, gen_seed).map_err(|e| e.to_string())?;
            Ok(instances::reduce_lf_to_pcf2(&source)
                .map_err(|e| e.to_string())?
                .target)
        }
        Family::Pcf3complete => {
            let m = source_edges(&mut s, n, args.mmax);
            let source =
                instances::gen_random(n, m, 2, true, gen_seed).map_err(|e| e.to_string())?;
            Ok(instances::reduce_pcf2_to_pcf3_complete(&source)
                .map_err(|e| e.to_string())?
                .target)
        }
        Family::Lp2maxpt => {
            let m = ((splitmix(&mut s) % (args.mmax as u64 + 1)) as usize).min(n * (n - 1));
            let source =
                instances::gen_random_digraph(n, m, gen_seed).map_err(|e| e.to_string())?;
            Ok(instances::reduce_digraph_to_maxpt2(&source)
                .map_err(|e| e.to_string())?
                .target)
        }
        Family::Tsp12 => {
            let m = source_edges(&mut s, n, args.mmax);
            let source =
                instances::gen_random_uncolored(n, m, gen_seed).map_err(|e| e.to_string())?;
            Ok(instances::gen_tsp12_doubling(&source)
                .map_err(|e| e.to_string())?
                .target)
        }
    }
}

fn source_edges(s: &mut u64, n: usize, mmax: usize) -> usize {
    ((splitmix(s) % (mmax as u64 + 1)) as usize).min(n * (n - 1) / 2)
}

/// Applicable approximation guarantee for the algorithm actually run on
/// this instance class, if any.
fn ratio_target(alg: Alg, g: &ColoredMultigraph) -> Option<Ratio> {
    match alg {
        Alg::Complete2 => Some(Ratio::new(1, 1).unwrap()),
        Alg::General => {
            if g.k() == 2 {
                Some(Ratio::new(3, 5).unwrap())
            } else if g.k() == 3 || g.simple_flag() {
                Some(Ratio::new(4, 7).unwrap())
            } else {
                Some(Ratio::new(5, 9).unwrap())
            }
        }
        Alg::Simplek => match g.k() {
            2 => Some(Ratio::new(3, 4).unwrap()),
            3 => Some(Ratio::new(5, 8).unwrap()),
            _ => None,
        },
        Alg::Auto | Alg::Maxpt => None,
    }
}

fn run_trial(args: &BenchArgs, trial: u64) -> Result<BenchRecord, String> {
    let g = trial_instance(args, trial)?;
    let alg = if matches!(args.alg, Alg::Auto) {
        dispatch_auto(&g)
    } else {
        args.alg
    };
    let start = Instant::now();
    let report = run_pf_alg(&g, alg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut record = BenchRecord {
        family: family_name(args.family).to_string(),
        n: g.n(),
        m: g.m(),
        k: g.k(),
        seed: trial,
        alg: alg_name(alg).to_string(),
        size: report.size,
        opt: None,
        ratio: None,
        certified: None,
        time_ms: args.timings.then_some(elapsed.as_millis() as u64),
    };
    if args.check_ratio {
        match oracle::brute_maxpf(&g, args.cap) {
            Ok(res) => {
                record.opt = Some(res.optimum);
                record.ratio = Some(format!("{}/{}", report.size, res.optimum));
                record.certified = Some(match ratio_target(alg, &g) {
                    Some(target) if target.meets_floor(report.size, res.optimum) => "ok".into(),
                    Some(_) => "fail".into(),
                    None => "skipped".into(),
                });
            }
            Err(oracle::OracleError::CapExceeded { .. }) => {
                record.certified = Some("skipped".into());
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(record)
}

fn render_text(r: &BenchRecord) -> String {
    let mut line = format!(
        "family={} n={} m={} k={} seed={} alg={} size={}",
        r.family, r.n, r.m, r.k, r.seed, r.alg, r.size
    );
    if let Some(opt) = r.opt {
        line.push_str(&format!(" opt={opt}"));
    }
    if let Some(ratio) = &r.ratio {
        line.push_str(&format!(" ratio={ratio}"));
    }
    if let Some(c) = &r.certified {
        line.push_str(&format!(" certified={c}"));
    }
    if let Some(t) = r.time_ms {
        line.push_str(&format!(" time_ms={t}"));
    }
    line
}

fn pool_size() -> usize {
    match std::env::var("PCF_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|&t| t >= 1).unwrap_or(1),
        Err(_) => 1,
    }
}

pub fn cmd_bench(args: BenchArgs) -> ExitCode {
    let threads = pool_size().min(args.trials.max(1) as usize);
    let mut results: Vec<Option<Result<BenchRecord, String>>> =
        (0..args.trials).map(|_| None).collect();
    if args.trials > 0 {
        std::thread::scope(|scope| {
            let chunks: Vec<(u64, u64)> = (0..threads as u64)
                .map(|w| (w, (args.trials / threads as u64) + 1))
                .collect();
            let mut handles = Vec::new();
            for (w, _) in chunks {
                let args_ref = &args;
                handles.push(scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut t = w;
                    while t < args_ref.trials {
                        out.push((t, run_trial(args_ref, t)));
                        t += threads as u64;
                    }
                    out
                }));
            }
            for h in handles {
                for (t, r) in h.join().expect("bench worker panicked") {
                    results[t as usize] = Some(r);
                }
            }
        });
    }
    let mut failures = 0u64;
    for r in results.into_iter().flatten() {
        match r {
            Ok(record) => {
                if record.certified.as_deref() == Some("fail") {
                    failures += 1;
                }
                if args.json {
                    println!("{}", serde_json::to_string(&record).unwrap());
                } else {
                    println!("{}", render_text(&record));
                }
            }
            Err(e) => return crate::parse_failure(&e),
        }
    }
    if failures > 0 {
        eprintln!("error: {failures} ratio certification failure(s)");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
