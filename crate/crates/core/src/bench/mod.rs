//! Random instances, the experiment setups, and the comparison campaigns.
//!
//! Three campaigns compare solvers:
//!
//! * [`run_average_campaign`]: mean `ΔD` of each challenger against one
//!   challenged solver over random instances.
//! * [`run_adversarial_campaign`]: evolutionary search for an instance
//!   maximizing the challenger's advantage, per solver pair and seed.
//! * [`run_matrix_campaign`]: the adversarial search for every ordered pair
//!   of a list of solvers.
//!
//! Every random choice is derived from the campaign's master seed, so a
//! campaign is fully determined by its arguments. Per-instance solver seeds
//! are derived from `(master seed, instance index, solver stream)`; adding a
//! challenger never changes the seeds of the others.

pub mod report;

use std::fmt;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{self, EAConfig};
use crate::geometry::Point;
use crate::instance::Instance as GenericInstance;
use crate::io::instance_id;
use crate::seed::{self, derive_seed, Rng};
use crate::solvers::{solve, SolverConfig, SolverKind};
use crate::{Error, Instance, Result, Scalar};

/// Customer and center counts of one experiment setup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupSpec {
    pub customers: usize,
    pub centers: usize,
    pub label: String,
}

impl SetupSpec {
    pub fn new(customers: usize, centers: usize, label: impl Into<String>) -> Result<Self> {
        if customers == 0 || centers == 0 || centers > customers {
            return Err(Error::InvalidConfig(format!(
                "setup needs 1 <= centers <= customers, got {customers} / {centers}"
            )));
        }
        Ok(Self {
            customers,
            centers,
            label: label.into(),
        })
    }

    /// Setup with the label `"<customers>/<centers>"`.
    pub fn custom(customers: usize, centers: usize) -> Result<Self> {
        Self::new(customers, centers, format!("{customers}/{centers}"))
    }

    /// Looks up a catalog setup by roman numeral (`"II"`) or by
    /// `"customers/centers"` (`"25/4"`, spaces allowed).
    pub fn find(key: &str) -> Option<Self> {
        let key: String = key.chars().filter(|c| !c.is_whitespace()).collect();
        catalog().into_iter().find(|s| {
            s.label.eq_ignore_ascii_case(&key) || format!("{}/{}", s.customers, s.centers) == key
        })
    }
}

impl fmt::Display for SetupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} / {})", self.label, self.customers, self.centers)
    }
}

/// The six setups, I to VI.
///
/// Setup V has 49 customers and 4 centers here; the published table of
/// average results labels the corresponding row "64 / 4".
pub fn catalog() -> Vec<SetupSpec> {
    [
        (10, 2, "I"),
        (25, 4, "II"),
        (36, 4, "III"),
        (49, 9, "IV"),
        (49, 4, "V"),
        (64, 16, "VI"),
    ]
    .into_iter()
    .map(|(n, k, l)| SetupSpec::new(n, k, l).expect("catalog setups are valid"))
    .collect()
}

/// Customers drawn i.i.d. uniformly from the open square `(0, 100)^2`.
pub fn random_instance<T: Scalar>(setup: &SetupSpec, rng: &mut Rng) -> GenericInstance<T> {
    let side = T::from_f64(adversary::SQUARE_SIDE).unwrap();
    let mut coord = || loop {
        let v = T::from_f64(rng.random::<f64>()).unwrap() * side;
        if v > T::zero() && v < side {
            return v;
        }
    };
    let customers = (0..setup.customers)
        .map(|_| {
            let x = coord();
            Point::new(x, coord())
        })
        .collect();
    GenericInstance::new(customers, setup.centers).expect("setup is valid")
}

const STREAM_INSTANCE: u64 = 0x1157;
const STREAM_SOLVER: u64 = 0x501F;
const STREAM_EA: u64 = 0xEA;

/// Seed of the `index`-th random instance of a campaign.
pub fn instance_seed(master: u64, index: usize) -> u64 {
    derive_seed(master, &[STREAM_INSTANCE, index as u64])
}

/// Seed a solver of `kind` uses on the `index`-th instance of a campaign.
pub fn solver_seed(master: u64, index: usize, kind: SolverKind) -> u64 {
    derive_seed(master, &[STREAM_SOLVER, index as u64, kind.seed_stream()])
}

/// One solver pair on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub instance_id: String,
    pub setup_label: String,
    pub challenger: SolverKind,
    pub challenged: SolverKind,
    pub d_challenger: f64,
    pub d_challenged: f64,
    pub delta_d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChallengerStats {
    pub challenger: SolverKind,
    pub mean_delta: f64,
    pub min_delta: f64,
    pub max_delta: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub setup: SetupSpec,
    pub challenged: SolverKind,
    pub stats: Vec<ChallengerStats>,
}

impl CampaignSummary {
    pub fn stats_for(&self, kind: SolverKind) -> Option<&ChallengerStats> {
        self.stats.iter().find(|s| s.challenger == kind)
    }
}

/// Output of [`run_average_campaign`].
#[derive(Debug, Clone)]
pub struct AverageCampaign {
    pub summary: CampaignSummary,
    /// Instance-major: all challengers of instance 0, then instance 1, ...
    pub records: Vec<ComparisonRecord>,
    pub instances: Vec<Instance>,
    /// Solver configs, with per-instance seeds, for every record.
    pub configs: Vec<(SolverConfig, SolverConfig)>,
}

impl AverageCampaign {
    /// Re-solves record `i` from its stored instance and configs.
    pub fn replay(&self, i: usize) -> Result<f64> {
        let per_instance = self.summary.stats.len();
        let (a, b) = &self.configs[i];
        adversary::delta_d(&self.instances[i / per_instance], a, b)
    }
}

/// Compares every challenger against `challenged` on `n_instances` random
/// instances of `setup`. The seeds inside the passed configs are ignored in
/// favor of per-instance derived seeds; all other fields are kept.
pub fn run_average_campaign(
    setup: &SetupSpec,
    challenged: &SolverConfig,
    challengers: &[SolverConfig],
    n_instances: usize,
    seed: u64,
) -> Result<AverageCampaign> {
    if n_instances == 0 {
        return Err(Error::InvalidConfig("n_instances must be >= 1".into()));
    }
    if challengers.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one challenger is required".into(),
        ));
    }

    type Row = (
        Instance,
        Vec<ComparisonRecord>,
        Vec<(SolverConfig, SolverConfig)>,
    );
    let rows: Vec<Row> = (0..n_instances)
        .into_par_iter()
        .map(|idx| {
            let mut rng = seed::rng(instance_seed(seed, idx));
            let inst: Instance = random_instance(setup, &mut rng);
            let id = instance_id(&inst);
            let base_cfg = challenged.with_seed(solver_seed(seed, idx, challenged.kind));
            let (base, _) = solve(&inst, &base_cfg)?;
            let mut records = Vec::with_capacity(challengers.len());
            let mut configs = Vec::with_capacity(challengers.len());
            for ch in challengers {
                let cfg = ch.with_seed(solver_seed(seed, idx, ch.kind));
                let d = if cfg == base_cfg {
                    base.objective()
                } else {
                    solve(&inst, &cfg)?.0.objective()
                };
                records.push(ComparisonRecord {
                    instance_id: id.clone(),
                    setup_label: setup.label.clone(),
                    challenger: ch.kind,
                    challenged: challenged.kind,
                    d_challenger: d,
                    d_challenged: base.objective(),
                    delta_d: d - base.objective(),
                });
                configs.push((cfg, base_cfg));
            }
            Ok((inst, records, configs))
        })
        .collect::<Result<_>>()?;

    let mut instances = Vec::with_capacity(n_instances);
    let mut records = Vec::with_capacity(n_instances * challengers.len());
    let mut configs = Vec::with_capacity(records.capacity());
    for (inst, r, c) in rows {
        instances.push(inst);
        records.extend(r);
        configs.extend(c);
    }

    let summary = summarize(setup, challenged.kind, challengers, &records);
    Ok(AverageCampaign {
        summary,
        records,
        instances,
        configs,
    })
}

/// Aggregates records in order, so the result is independent of how the
/// records were computed.
fn summarize(
    setup: &SetupSpec,
    challenged: SolverKind,
    challengers: &[SolverConfig],
    records: &[ComparisonRecord],
) -> CampaignSummary {
    let per_instance = challengers.len();
    let stats = challengers
        .iter()
        .enumerate()
        .map(|(col, ch)| {
            let deltas: Vec<f64> = records
                .iter()
                .skip(col)
                .step_by(per_instance)
                .map(|r| r.delta_d)
                .collect();
            let count = deltas.len();
            let sum: f64 = deltas.iter().sum();
            ChallengerStats {
                challenger: ch.kind,
                mean_delta: sum / count as f64,
                min_delta: deltas.iter().copied().fold(f64::INFINITY, f64::min),
                max_delta: deltas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                count,
            }
        })
        .collect();
    CampaignSummary {
        setup: setup.clone(),
        challenged,
        stats,
    }
}

/// Best instance found by one evolutionary run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdversarialRun {
    pub setup_label: String,
    pub seed: u64,
    pub challenger: SolverConfig,
    pub challenged: SolverConfig,
    pub best_delta: f64,
    pub best_instance: Instance,
    pub fitness_history: Vec<f64>,
}

impl AdversarialRun {
    /// Re-solves the stored instance with the stored configs.
    pub fn replay(&self) -> Result<f64> {
        adversary::delta_d(&self.best_instance, &self.challenger, &self.challenged)
    }

    /// File stem for the persisted instance, e.g. `best_greedy_vs_dragoon_seed7`.
    pub fn file_stem(&self) -> String {
        format!(
            "best_{}_vs_{}_seed{}",
            self.challenger.kind, self.challenged.kind, self.seed
        )
    }
}

/// EA and solver configs for one `(pair, seed)` run.
pub fn adversarial_config(
    setup: &SetupSpec,
    challenger: &SolverConfig,
    challenged: &SolverConfig,
    template: &EAConfig,
    seed: u64,
) -> EAConfig {
    let mut cfg = template.clone();
    cfg.n_customers = setup.customers;
    cfg.k = setup.centers;
    cfg.challenger = challenger.with_seed(solver_seed(seed, 0, challenger.kind));
    cfg.challenged = challenged.with_seed(solver_seed(seed, 0, challenged.kind));
    cfg.seed = derive_seed(seed, &[STREAM_EA]);
    cfg
}

/// One evolutionary run per `(pair, seed)`, in pair-major order.
pub fn run_adversarial_campaign(
    setup: &SetupSpec,
    pairs: &[(SolverConfig, SolverConfig)],
    template: &EAConfig,
    seeds: &[u64],
) -> Result<Vec<AdversarialRun>> {
    if pairs.is_empty() || seeds.is_empty() {
        return Err(Error::InvalidConfig(
            "adversarial campaign needs at least one pair and one seed".into(),
        ));
    }
    let jobs: Vec<(&(SolverConfig, SolverConfig), u64)> = pairs
        .iter()
        .flat_map(|p| seeds.iter().map(move |&s| (p, s)))
        .collect();
    jobs.into_par_iter()
        .map(|((challenger, challenged), seed)| {
            let cfg = adversarial_config(setup, challenger, challenged, template, seed);
            let result = adversary::evolve(&cfg)?;
            Ok(AdversarialRun {
                setup_label: setup.label.clone(),
                seed,
                challenger: cfg.challenger,
                challenged: cfg.challenged,
                best_delta: result.best_fitness,
                best_instance: result.best_instance,
                fitness_history: result.fitness_history,
            })
        })
        .collect()
}

/// Best `ΔD` over seeds for every ordered pair; `cells[i][j]` has
/// challenger `kinds[i]` and challenged `kinds[j]`, empty on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCampaign {
    pub setup: SetupSpec,
    pub kinds: Vec<SolverKind>,
    pub cells: Vec<Vec<Option<f64>>>,
    pub runs: Vec<AdversarialRun>,
}

impl MatrixCampaign {
    pub fn filled_cells(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_some()).count()
    }

    pub fn cell(&self, challenger: SolverKind, challenged: SolverKind) -> Option<f64> {
        let i = self.kinds.iter().position(|&k| k == challenger)?;
        let j = self.kinds.iter().position(|&k| k == challenged)?;
        self.cells[i][j]
    }
}

/// Adversarial search for every ordered pair of distinct `kinds`. Solver
/// caps come from `template.challenger`.
pub fn run_matrix_campaign(
    setup: &SetupSpec,
    kinds: &[SolverKind],
    template: &EAConfig,
    seeds: &[u64],
) -> Result<MatrixCampaign> {
    if kinds.len() < 2 {
        return Err(Error::InvalidConfig(
            "matrix campaign needs at least two solvers".into(),
        ));
    }
    for (i, k) in kinds.iter().enumerate() {
        if kinds[..i].contains(k) {
            return Err(Error::InvalidConfig(format!(
                "solver `{k}` is listed twice"
            )));
        }
    }
    let base = template.challenger;
    let pairs: Vec<(SolverConfig, SolverConfig)> = kinds
        .iter()
        .flat_map(|&a| {
            kinds
                .iter()
                .filter(move |&&b| b != a)
                .map(move |&b| (base.with_kind(a), base.with_kind(b)))
        })
        .collect();
    let runs = run_adversarial_campaign(setup, &pairs, template, seeds)?;

    let mut cells = vec![vec![None; kinds.len()]; kinds.len()];
    for run in &runs {
        let i = kinds
            .iter()
            .position(|&k| k == run.challenger.kind)
            .unwrap();
        let j = kinds
            .iter()
            .position(|&k| k == run.challenged.kind)
            .unwrap();
        let cell: &mut Option<f64> = &mut cells[i][j];
        *cell = Some(cell.map_or(run.best_delta, |c| c.min(run.best_delta)));
    }
    Ok(MatrixCampaign {
        setup: setup.clone(),
        kinds: kinds.to_vec(),
        cells,
        runs,
    })
}

/// Best run per `(challenger, challenged)` pair, in first-seen order.
pub fn best_per_pair(runs: &[AdversarialRun]) -> Vec<&AdversarialRun> {
    let mut best: Vec<&AdversarialRun> = Vec::new();
    for run in runs {
        let same = |r: &&AdversarialRun| {
            r.challenger.kind == run.challenger.kind && r.challenged.kind == run.challenged.kind
        };
        match best.iter_mut().find(|r| same(r)) {
            Some(slot) if run.best_delta < slot.best_delta => *slot = run,
            Some(_) => {}
            None => best.push(run),
        }
    }
    best
}
