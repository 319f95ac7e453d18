use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use vc_core::graph::format::{serialize_edge_list, serialize_port_graph};
use vc_core::graph::generate::{generate, GraphKind};
use vc_core::graph::{Numbering, PortGraph};
use vc_core::oracle::{solve, OracleOptions};
use vc_core::ratio::ExactRatio;
use vc_core::simulator::{replay, Transcript};

use crate::args::{Format, GenKind, InputArgs, NumberingArg};
use crate::error::CliError;
use crate::load::{load_graph, read, write, Input};
use crate::report::{describe, evaluate, optimum, render, to_line, Failures};

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

pub fn run(input: &InputArgs, trace: Option<&Path>, json: bool) -> Result<(), CliError> {
    let g = load_graph(input)?;
    let eval = evaluate(&g, optimum(&g))?;
    if let Some(path) = trace {
        write(path, &eval.transcript.to_text())?;
    }
    emit(&render(&eval.report, json))?;
    if eval.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("invariant violated: {}", describe(&eval.failures))))
    }
}

fn gen_kind(kind: GenKind, params: &[String], seed: Option<u64>) -> Result<GraphKind, CliError> {
    let usage = |msg: &str| CliError::Usage(msg.to_string());
    let int = |s: &String| s.parse::<usize>().map_err(|_| usage(&format!("not a non-negative integer: {s:?}")));
    let expect = |count: usize, form: &str| {
        if params.len() == count {
            Ok(())
        } else {
            Err(usage(&format!("expected `{form}`")))
        }
    };
    if kind != GenKind::Random && seed.is_some() {
        return Err(usage("--seed only applies to random graphs"));
    }
    Ok(match kind {
        GenKind::Cycle => {
            expect(1, "cycle N")?;
            GraphKind::Cycle { n: int(&params[0])? }
        }
        GenKind::Path => {
            expect(1, "path N")?;
            GraphKind::Path { n: int(&params[0])? }
        }
        GenKind::Clique => {
            expect(1, "clique N")?;
            GraphKind::Clique { n: int(&params[0])? }
        }
        GenKind::Star => {
            expect(1, "star LEAVES")?;
            GraphKind::Star { leaves: int(&params[0])? }
        }
        GenKind::Random => {
            expect(3, "random N MAX_DEGREE P")?;
            let p = params[2].parse::<f64>().map_err(|_| usage(&format!("not a probability: {:?}", params[2])))?;
            let seed = seed.ok_or_else(|| usage("random graphs need --seed"))?;
            GraphKind::RandomBounded { n: int(&params[0])?, max_degree: int(&params[1])?, edge_probability: p, seed }
        }
    })
}

pub fn gen(
    kind: GenKind,
    params: &[String],
    seed: Option<u64>,
    format: Format,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let el = generate(gen_kind(kind, params, seed)?)?;
    let text = match format {
        Format::El => serialize_edge_list(&el),
        Format::Pg => serialize_port_graph(&PortGraph::from_edge_list(&el, Numbering::Sorted, None)?),
    };
    match output {
        Some(path) => write(path, &text),
        None => emit(&text),
    }
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    m: usize,
    optimum_size: usize,
    cover: Vec<usize>,
    explored_nodes: u64,
}

pub fn oracle(input: &InputArgs, json: bool) -> Result<(), CliError> {
    let g = load_graph(input)?;
    let r = solve(&g, OracleOptions::default())?;
    let report = OracleReport {
        n: g.node_count(),
        m: g.edge_count(),
        optimum_size: r.optimum_size,
        cover: r.optimum_cover.into_iter().collect(),
        explored_nodes: r.explored_nodes,
    };
    emit(&render(&report, json))
}

#[derive(Serialize)]
struct Trial {
    record: &'static str,
    trial: u32,
    seed: u64,
    cover_size: usize,
    lower_bound: usize,
    certified_ratio: Option<String>,
    true_ratio: Option<String>,
    cover: Vec<usize>,
    failed_checks: Vec<&'static str>,
}

#[derive(Serialize)]
struct SweepSummary {
    record: &'static str,
    trials: u32,
    seed: u64,
    oracle_size: Option<usize>,
    min_cover_size: usize,
    max_cover_size: usize,
    mean_cover_size: String,
    max_certified_ratio: Option<String>,
    failed_trials: usize,
}

/// Seeds for the trial numberings, derived from the master seed.
pub fn trial_seeds(seed: u64, trials: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.gen()).collect()
}

pub fn sweep(path: &Path, format: Option<Format>, trials: u32, seed: u64, json: bool) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let input = Input::load(path, format)?;
    let oracle_size = optimum(&input.port_graph(None, None)?);
    let seeds = trial_seeds(seed, trials);
    let results: Vec<(Trial, Failures, Option<ExactRatio>)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let g = input.port_graph(Some(NumberingArg::Random), Some(s))?;
            let eval = evaluate(&g, oracle_size)?;
            let ratio = eval.report.certified_ratio.as_deref().and_then(ExactRatio::parse);
            let trial = Trial {
                record: "trial",
                trial: i as u32,
                seed: s,
                cover_size: eval.report.cover_size,
                lower_bound: eval.report.lower_bound,
                certified_ratio: eval.report.certified_ratio,
                true_ratio: eval.report.true_ratio,
                cover: eval.report.cover,
                failed_checks: eval.failures.iter().map(|f| f.0).collect(),
            };
            Ok((trial, eval.failures, ratio))
        })
        .collect::<Result<_, CliError>>()?;

    let sizes: Vec<usize> = results.iter().map(|r| r.0.cover_size).collect();
    let total: usize = sizes.iter().sum();
    let summary = SweepSummary {
        record: "summary",
        trials,
        seed,
        oracle_size,
        min_cover_size: *sizes.iter().min().expect("at least one trial"),
        max_cover_size: *sizes.iter().max().expect("at least one trial"),
        mean_cover_size: ExactRatio::new(total as u64, trials as u64).expect("trials > 0").to_string(),
        max_certified_ratio: results.iter().filter_map(|r| r.2).max().map(|r| r.to_string()),
        failed_trials: results.iter().filter(|r| !r.1.is_empty()).count(),
    };

    let mut out = String::new();
    for r in &results {
        out += &line(&r.0, json);
    }
    out += &line(&summary, json);
    emit(&out)?;

    match results.iter().find(|r| !r.1.is_empty()) {
        None => Ok(()),
        Some((trial, failures, _)) => Err(CliError::Invariant(format!(
            "trial {} (seed {}) failed: {}; reproduce with `vc run --input {} --numbering random --seed {}`",
            trial.trial,
            trial.seed,
            describe(failures),
            path.display(),
            trial.seed
        ))),
    }
}

/// One output line per record: compact JSON or `key=value` pairs.
fn line(record: &impl Serialize, json: bool) -> String {
    let value = serde_json::to_value(record).expect("records serialize");
    if json {
        format!("{value}\n")
    } else {
        format!("{}\n", to_line(&value))
    }
}

pub fn verify(input: &InputArgs, trace: &Path, json: bool) -> Result<(), CliError> {
    let g = load_graph(input)?;
    let transcript =
        Transcript::parse(&read(trace)?).map_err(|source| CliError::Parse { path: trace.to_path_buf(), source })?;
    let divergences: Vec<String> = replay(&g, &transcript).iter().map(ToString::to_string).collect();
    let consistent = divergences.is_empty();
    let report = json!({
        "entries": transcript.entries.len(),
        "consistent": consistent,
        "divergences": divergences,
    });
    emit(&render(&report, json))?;
    if consistent {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("transcript diverges from the algorithm: {}", divergences[0])))
    }
}
