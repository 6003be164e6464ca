use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use kcenter::adversary::EAConfig;
use kcenter::bench::{self, report, AdversarialRun, SetupSpec};
use kcenter::exact::solve_exact_with_cap;
use kcenter::io::{instance_from_json, instance_to_json_pretty};
use kcenter::solvers::{solve, SolveTrace};
use kcenter::{Instance, Solution, SolverConfig, SolverKind};
use serde::{Deserialize, Serialize};

use crate::manifest::RunManifest;
use crate::{
    AdversaryArgs, AverageArgs, Cli, CliError, Command, DumpGeometryArgs, EaArgs, ExactArgs,
    MatrixArgs, SolveArgs, SolverArgs, DEFAULT_SEED,
};

/// Default campaign output directory.
pub const DEFAULT_OUT_DIR: &str = "kcenter-out";

type CliResult<T = ()> = Result<T, CliError>;

/// JSON printed by `solve` and `exact`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionOutput {
    pub solver: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub k: usize,
    pub objective: f64,
    pub centers: Vec<usize>,
    pub center_coordinates: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceOutput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceOutput {
    pub stages: Vec<StageOutput>,
    pub iterations: usize,
    pub accepted_moves: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageOutput {
    pub label: String,
    pub objective: f64,
}

impl SolutionOutput {
    fn new(
        solver: &str,
        seed: Option<u64>,
        inst: &Instance,
        s: &Solution,
        trace: Option<&SolveTrace<f64>>,
    ) -> Self {
        Self {
            solver: solver.to_string(),
            seed,
            k: inst.k(),
            objective: s.objective(),
            centers: s.centers().to_vec(),
            center_coordinates: s.center_points(inst).iter().map(|p| [p.x, p.y]).collect(),
            trace: trace.map(|t| TraceOutput {
                stages: t
                    .stage_objectives
                    .iter()
                    .map(|(label, objective)| StageOutput {
                        label: label.clone(),
                        objective: *objective,
                    })
                    .collect(),
                iterations: t.iterations,
                accepted_moves: t.accepted_moves,
            }),
        }
    }
}

/// Subset of a solution document read by `dump-geometry`.
#[derive(Debug, Deserialize)]
struct SolutionInput {
    centers: Vec<usize>,
    objective: Option<f64>,
}

pub fn execute(cli: Cli, argv: &[String], stdout: &mut dyn Write) -> CliResult {
    let seed = match (cli.seed, cli.entropy) {
        (Some(s), _) => s,
        (None, true) => rand::random(),
        (None, false) => DEFAULT_SEED,
    };
    let ctx = Ctx {
        seed,
        jobs: cli.jobs,
        out: cli.out,
        argv: argv.to_vec(),
    };
    dispatch(cli.command, &ctx, stdout)
}

struct Ctx {
    seed: u64,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    argv: Vec<String>,
}

impl Ctx {
    fn pool(&self) -> CliResult<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            if j == 0 {
                return Err(CliError::Invalid("--jobs must be at least 1".into()));
            }
            b = b.num_threads(j);
        }
        b.build().map_err(|e| CliError::Other(e.into()))
    }

    fn out_dir(&self) -> CliResult<PathBuf> {
        let dir = self
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(dir)
    }

    fn manifest(&self, command: Command) -> RunManifest {
        RunManifest::new(&self.argv, command, self.seed, self.jobs)
    }

    /// Writes `text` to `--out` if given, else to stdout.
    fn emit(&self, text: &str, stdout: &mut dyn Write) -> CliResult {
        match &self.out {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
            }
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn dispatch(command: Command, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    match command {
        Command::Solve(a) => cmd_solve(&a, ctx, stdout),
        Command::Exact(a) => cmd_exact(&a, ctx, stdout),
        Command::Average(a) => cmd_average(a, ctx, stdout),
        Command::Adversary(a) => cmd_adversary(a, ctx, stdout),
        Command::Matrix(a) => cmd_matrix(a, ctx, stdout),
        Command::DumpGeometry(a) => cmd_dump_geometry(&a, ctx, stdout),
        Command::Replay(a) => cmd_replay(&a.manifest, ctx, stdout),
    }
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    instance_from_json(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn solver_config(kind: SolverKind, args: &SolverArgs, seed: u64) -> CliResult<SolverConfig> {
    let cfg = SolverConfig {
        kind,
        seed,
        backtrack_max_steps: args.backtrack_max_steps,
        macqueen_max_iters: args.macqueen_max_iters,
        two_approx_random_start: args.two_approx_random_start,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn to_json(value: &impl Serialize) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value).map_err(anyhow::Error::from)? + "\n")
}

fn cmd_solve(a: &SolveArgs, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    let inst = read_instance(&a.instance)?;
    let cfg = solver_config(a.solver, &a.solver_args, ctx.seed)?;
    let (solution, trace) = solve(&inst, &cfg)?;
    let out = SolutionOutput::new(
        a.solver.name(),
        Some(ctx.seed),
        &inst,
        &solution,
        Some(&trace),
    );
    ctx.emit(&to_json(&out)?, stdout)
}

fn cmd_exact(a: &ExactArgs, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    let inst = read_instance(&a.instance)?;
    let solution = solve_exact_with_cap(&inst, a.cap)?;
    let out = SolutionOutput::new("exact", None, &inst, &solution, None);
    ctx.emit(&to_json(&out)?, stdout)
}

fn cmd_dump_geometry(a: &DumpGeometryArgs, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    let inst = read_instance(&a.instance)?;
    let text = fs::read_to_string(&a.solution)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", a.solution.display())))?;
    let input: SolutionInput = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", a.solution.display())))?;
    let solution = Solution::new(&inst, input.centers)
        .map_err(|e| CliError::Invalid(format!("solution does not match instance: {e}")))?;
    if let Some(d) = input.objective {
        if d != solution.objective() {
            return Err(CliError::Invalid(format!(
                "solution does not match instance: recorded objective {d} but the centers give {}",
                solution.objective()
            )));
        }
    }
    let mut buf = Vec::new();
    report::write_geometry(&mut buf, &inst, &solution)?;
    ctx.emit(&String::from_utf8(buf).expect("csv is utf-8"), stdout)
}

fn resolve_setup(key: &str) -> CliResult<SetupSpec> {
    if let Some(s) = SetupSpec::find(key) {
        return Ok(s);
    }
    let custom = key
        .split_once('/')
        .and_then(|(n, k)| Some((n.trim().parse().ok()?, k.trim().parse().ok()?)));
    match custom {
        Some((n, k)) => Ok(SetupSpec::custom(n, k)?),
        None => Err(CliError::Invalid(format!(
            "unknown setup `{key}`; use I..VI or customers/centers"
        ))),
    }
}

fn check_distinct(kinds: &[SolverKind], what: &str) -> CliResult {
    for (i, k) in kinds.iter().enumerate() {
        if kinds[..i].contains(k) {
            return Err(CliError::Invalid(format!("{what}: `{k}` is listed twice")));
        }
    }
    Ok(())
}

fn cmd_average(mut a: AverageArgs, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    if a.instances == 0 {
        return Err(CliError::Invalid("--instances must be at least 1".into()));
    }
    if a.challengers.is_empty() {
        return Err(CliError::Invalid(
            "--challengers must name at least one solver".into(),
        ));
    }
    check_distinct(&a.challengers, "--challengers")?;

    let mut setups = a
        .setup
        .iter()
        .map(|s| resolve_setup(s))
        .collect::<CliResult<Vec<_>>>()?;
    if let (Some(n), Some(k)) = (a.customers, a.centers) {
        setups.push(SetupSpec::custom(n, k)?);
    }
    if setups.is_empty() {
        setups = bench::catalog();
    }
    a.setup = setups.iter().map(|s| s.label.clone()).collect();
    a.customers = None;
    a.centers = None;

    let challenged = solver_config(a.challenged, &a.solver_args, 0)?;
    let challengers = a
        .challengers
        .iter()
        .map(|&k| solver_config(k, &a.solver_args, 0))
        .collect::<CliResult<Vec<_>>>()?;

    let dir = ctx.out_dir()?;
    let mut manifest = ctx.manifest(Command::Average(a.clone()));
    manifest.artifacts = vec!["records.csv".into(), "summary.csv".into()];
    manifest.write(&dir)?;

    let pool = ctx.pool()?;
    let campaigns = pool.install(|| {
        setups
            .iter()
            .map(|s| {
                bench::run_average_campaign(s, &challenged, &challengers, a.instances, ctx.seed)
            })
            .collect::<kcenter::Result<Vec<_>>>()
    })?;

    report::write_records(create(&dir.join("records.csv"))?, &campaigns)?;
    let summaries: Vec<_> = campaigns.iter().map(|c| c.summary.clone()).collect();
    report::write_summary(create(&dir.join("summary.csv"))?, &summaries)?;
    report::write_summary(&mut *stdout, &summaries)?;
    Ok(())
}

fn resolve_seeds(ea: &mut EaArgs, master: u64) -> CliResult {
    if ea.seeds.is_empty() {
        if ea.runs == 0 {
            return Err(CliError::Invalid("--runs must be at least 1".into()));
        }
        ea.seeds = (0..ea.runs).map(|i| master.wrapping_add(i)).collect();
    }
    ea.runs = ea.seeds.len() as u64;
    Ok(())
}

fn ea_template(setup: &SetupSpec, ea: &EaArgs, solver: SolverConfig) -> CliResult<EAConfig> {
    let mut cfg = EAConfig::new(setup.customers, setup.centers, solver, solver);
    cfg.population = ea.population;
    cfg.generations = ea.generations;
    cfg.mutation_sigma = ea.mutation_sigma;
    cfg.recombination_prob = ea.recombination_prob;
    cfg.recombination_alpha = ea.recombination_alpha;
    cfg.tournament_size = ea.tournament_size;
    cfg.validate()?;
    Ok(cfg)
}

fn instance_artifacts(runs_of: impl Iterator<Item = (SolverKind, SolverKind, u64)>) -> Vec<String> {
    runs_of
        .map(|(a, b, s)| format!("best_{a}_vs_{b}_seed{s}.json"))
        .collect()
}

fn write_runs(dir: &Path, runs: &[AdversarialRun], table: &str) -> CliResult {
    report::write_adversarial(create(&dir.join(table))?, runs)?;
    report::write_histories(create(&dir.join("history.csv"))?, runs)?;
    for run in runs {
        let path = dir.join(format!("{}.json", run.file_stem()));
        fs::write(&path, instance_to_json_pretty(&run.best_instance) + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_adversary(mut a: AdversaryArgs, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    let setup = resolve_setup(&a.setup)?;
    a.setup = setup.label.clone();
    if a.challengers.is_empty() {
        return Err(CliError::Invalid(
            "--challengers must name at least one solver".into(),
        ));
    }
    check_distinct(&a.challengers, "--challengers")?;
    resolve_seeds(&mut a.ea, ctx.seed)?;

    let challenged = solver_config(a.challenged, &a.solver_args, 0)?;
    let template = ea_template(&setup, &a.ea, challenged)?;
    let pairs = a
        .challengers
        .iter()
        .map(|&k| Ok((solver_config(k, &a.solver_args, 0)?, challenged)))
        .collect::<CliResult<Vec<_>>>()?;

    let dir = ctx.out_dir()?;
    let mut manifest = ctx.manifest(Command::Adversary(a.clone()));
    manifest.artifacts = vec!["adversary.csv".into(), "history.csv".into()];
    manifest.artifacts.extend(instance_artifacts(
        a.challengers
            .iter()
            .flat_map(|&c| a.ea.seeds.iter().map(move |&s| (c, a.challenged, s))),
    ));
    manifest.write(&dir)?;

    let pool = ctx.pool()?;
    let runs =
        pool.install(|| bench::run_adversarial_campaign(&setup, &pairs, &template, &a.ea.seeds))?;
    write_runs(&dir, &runs, "adversary.csv")?;
    report::write_adversarial(&mut *stdout, &runs)?;
    Ok(())
}

fn cmd_matrix(mut a: MatrixArgs, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    let setup = resolve_setup(&a.setup)?;
    a.setup = setup.label.clone();
    if a.kinds.len() < 2 {
        return Err(CliError::Invalid(
            "--kinds must name at least two solvers".into(),
        ));
    }
    check_distinct(&a.kinds, "--kinds")?;
    resolve_seeds(&mut a.ea, ctx.seed)?;

    let base = solver_config(a.kinds[0], &a.solver_args, 0)?;
    let template = ea_template(&setup, &a.ea, base)?;

    let dir = ctx.out_dir()?;
    let mut manifest = ctx.manifest(Command::Matrix(a.clone()));
    manifest.artifacts = vec!["matrix.csv".into(), "runs.csv".into(), "history.csv".into()];
    let kinds = a.kinds.clone();
    manifest
        .artifacts
        .extend(instance_artifacts(kinds.iter().flat_map(|&x| {
            let seeds = a.ea.seeds.clone();
            kinds
                .iter()
                .filter(move |&&y| y != x)
                .flat_map(move |&y| seeds.clone().into_iter().map(move |s| (x, y, s)))
        })));
    manifest.write(&dir)?;

    let pool = ctx.pool()?;
    let m =
        pool.install(|| bench::run_matrix_campaign(&setup, &a.kinds, &template, &a.ea.seeds))?;
    report::write_matrix(create(&dir.join("matrix.csv"))?, &m)?;
    write_runs(&dir, &m.runs, "runs.csv")?;
    report::write_matrix(&mut *stdout, &m)?;
    Ok(())
}

fn cmd_replay(path: &Path, ctx: &Ctx, stdout: &mut dyn Write) -> CliResult {
    let manifest = RunManifest::read(path).map_err(|e| CliError::Invalid(format!("{e:#}")))?;
    if matches!(manifest.command, Command::Replay(_)) {
        return Err(CliError::Invalid(
            "a manifest cannot describe a replay".into(),
        ));
    }
    let out = ctx.out.clone().or_else(|| {
        path.parent().map(|p| {
            if p.as_os_str().is_empty() {
                Path::new(".")
            } else {
                p
            }
            .to_path_buf()
        })
    });
    let replay = Ctx {
        seed: manifest.seed,
        jobs: ctx.jobs.or(manifest.jobs),
        out,
        argv: manifest.argv,
    };
    dispatch(manifest.command, &replay, stdout)
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}
