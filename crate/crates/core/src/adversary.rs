//! Evolutionary search for instances on which a challenger solver beats a
//! challenged one.
//!
//! A genome holds `2n` genes in the open unit interval, `(x1, y1, ..., xn,
//! yn)`, each scaled by 100 into the square. Fitness is
//! `D_challenger - D_challenged`; lower is better, and a negative value
//! means the challenger found the better placement.
//!
//! Each generation builds `population` offspring (two tournament-selected
//! parents, whole arithmetic recombination, single-point Gaussian mutation)
//! and keeps the best `population` individuals of parents and offspring
//! together. Offspring `i` of generation `g` draws from its own generator
//! derived from the master seed, and fitness is evaluated in parallel, so
//! results do not depend on the number of threads.

use rand::Rng as _;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::seed::{self, derive_seed, Rng};
use crate::solvers::{solve, SolverConfig};
use crate::{Error, Instance, Result};

/// Side length of the square genomes are mapped into.
pub const SQUARE_SIDE: f64 = 100.0;
/// Genes are clamped into `[GENE_MIN, GENE_MAX]`.
pub const GENE_MIN: f64 = 1e-9;
pub const GENE_MAX: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Genome {
    genes: Vec<f64>,
}

impl Genome {
    /// Accepts genes strictly inside `(0, 1)` with an even count.
    pub fn new(genes: Vec<f64>) -> Result<Self> {
        if genes.is_empty() || !genes.len().is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "genome needs a positive even number of genes, got {}",
                genes.len()
            )));
        }
        if let Some((index, &value)) = genes
            .iter()
            .enumerate()
            .find(|(_, &g)| !(g > 0.0 && g < 1.0))
        {
            return Err(Error::GeneOutOfRange { index, value });
        }
        Ok(Self { genes })
    }

    /// Uniform genes for `n_customers` customers.
    pub fn random(n_customers: usize, rng: &mut Rng) -> Self {
        let genes = (0..2 * n_customers)
            .map(|_| clamp_gene(rng.random::<f64>()))
            .collect();
        Self { genes }
    }

    /// Inverse of [`decode`] for coordinates inside the square.
    pub fn encode(inst: &Instance) -> Result<Self> {
        let genes = inst
            .customers()
            .iter()
            .flat_map(|p| [p.x / SQUARE_SIDE, p.y / SQUARE_SIDE])
            .collect();
        Self::new(genes)
    }

    pub fn genes(&self) -> &[f64] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn n_customers(&self) -> usize {
        self.genes.len() / 2
    }

    pub fn is_valid(&self) -> bool {
        self.genes.len().is_multiple_of(2) && self.genes.iter().all(|&g| g > 0.0 && g < 1.0)
    }
}

fn clamp_gene(g: f64) -> f64 {
    g.clamp(GENE_MIN, GENE_MAX)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EAConfig {
    pub n_customers: usize,
    pub k: usize,
    pub challenger: SolverConfig,
    pub challenged: SolverConfig,
    pub population: usize,
    pub generations: usize,
    pub mutation_sigma: f64,
    pub recombination_prob: f64,
    /// Weight of the first parent in arithmetic recombination.
    pub recombination_alpha: f64,
    pub tournament_size: usize,
    pub seed: u64,
}

impl EAConfig {
    pub const DEFAULT_POPULATION: usize = 20;
    pub const DEFAULT_GENERATIONS: usize = 100;
    pub const DEFAULT_MUTATION_SIGMA: f64 = 0.05;
    pub const DEFAULT_RECOMBINATION_PROB: f64 = 0.3;
    pub const DEFAULT_RECOMBINATION_ALPHA: f64 = 0.5;
    pub const DEFAULT_TOURNAMENT_SIZE: usize = 2;

    pub fn new(
        n_customers: usize,
        k: usize,
        challenger: SolverConfig,
        challenged: SolverConfig,
    ) -> Self {
        Self {
            n_customers,
            k,
            challenger,
            challenged,
            population: Self::DEFAULT_POPULATION,
            generations: Self::DEFAULT_GENERATIONS,
            mutation_sigma: Self::DEFAULT_MUTATION_SIGMA,
            recombination_prob: Self::DEFAULT_RECOMBINATION_PROB,
            recombination_alpha: Self::DEFAULT_RECOMBINATION_ALPHA,
            tournament_size: Self::DEFAULT_TOURNAMENT_SIZE,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_customers == 0 {
            return bad("n_customers must be positive".into());
        }
        if self.k == 0 || self.k > self.n_customers {
            return bad(format!(
                "k = {} must satisfy 1 <= k <= n_customers = {}",
                self.k, self.n_customers
            ));
        }
        if self.population == 0 {
            return bad("population must be positive".into());
        }
        if self.tournament_size == 0 {
            return bad("tournament_size must be positive".into());
        }
        if !(self.mutation_sigma.is_finite() && self.mutation_sigma >= 0.0) {
            return bad(format!(
                "mutation_sigma = {} is invalid",
                self.mutation_sigma
            ));
        }
        if !(0.0..=1.0).contains(&self.recombination_prob) {
            return bad(format!(
                "recombination_prob = {} is outside [0, 1]",
                self.recombination_prob
            ));
        }
        if !(0.0..=1.0).contains(&self.recombination_alpha) {
            return bad(format!(
                "recombination_alpha = {} is outside [0, 1]",
                self.recombination_alpha
            ));
        }
        self.challenger.validate()?;
        self.challenged.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionResult {
    pub best_genome: Genome,
    pub best_fitness: f64,
    /// Best fitness in the population after initialization and after each
    /// generation; `generations + 1` entries.
    pub fitness_history: Vec<f64>,
    pub best_instance: Instance,
}

/// Maps genes onto customer locations in the square.
pub fn decode(g: &Genome, k: usize) -> Result<Instance> {
    let customers = g
        .genes
        .chunks_exact(2)
        .map(|xy| Point::new(SQUARE_SIDE * xy[0], SQUARE_SIDE * xy[1]))
        .collect();
    Instance::new(customers, k)
}

/// `D_challenger - D_challenged` on the decoded instance.
pub fn fitness(g: &Genome, cfg: &EAConfig) -> Result<f64> {
    if g.n_customers() != cfg.n_customers {
        return Err(Error::GenomeLengthMismatch {
            left: g.len(),
            right: 2 * cfg.n_customers,
        });
    }
    let inst = decode(g, cfg.k)?;
    delta_d(&inst, &cfg.challenger, &cfg.challenged)
}

/// `D_challenger - D_challenged` for a fixed instance.
pub fn delta_d(
    inst: &Instance,
    challenger: &SolverConfig,
    challenged: &SolverConfig,
) -> Result<f64> {
    let (a, _) = solve(inst, challenger)?;
    let (b, _) = solve(inst, challenged)?;
    Ok(a.objective() - b.objective())
}

/// Record of a single mutation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mutation {
    pub index: usize,
    /// Normal draw added before clamping.
    pub delta: f64,
}

/// Perturbs one uniformly chosen gene by `N(0, sigma)` and clamps it.
pub fn mutate(g: &Genome, sigma: f64, rng: &mut Rng) -> Genome {
    mutate_traced(g, sigma, rng).0
}

pub fn mutate_traced(g: &Genome, sigma: f64, rng: &mut Rng) -> (Genome, Mutation) {
    let index = rng.random_range(0..g.len());
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and non-negative");
    let delta = normal.sample(rng);
    (perturb(g, index, delta), Mutation { index, delta })
}

/// Adds `delta` to gene `index` and clamps the result.
pub fn perturb(g: &Genome, index: usize, delta: f64) -> Genome {
    let mut genes = g.genes.clone();
    genes[index] = clamp_gene(genes[index] + delta);
    Genome { genes }
}

/// With probability `prob` returns `alpha * a + (1 - alpha) * b`; otherwise
/// a copy of `a`. The flag reports whether recombination happened.
pub fn recombine(
    a: &Genome,
    b: &Genome,
    prob: f64,
    alpha: f64,
    rng: &mut Rng,
) -> Result<(Genome, bool)> {
    if a.len() != b.len() {
        return Err(Error::GenomeLengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let fires = rng.random_bool(prob);
    if !fires {
        return Ok((a.clone(), false));
    }
    let genes = a
        .genes
        .iter()
        .zip(&b.genes)
        .map(|(&x, &y)| clamp_gene(alpha * x + (1.0 - alpha) * y))
        .collect();
    Ok((Genome { genes }, true))
}

#[derive(Debug, Clone)]
struct Individual {
    genome: Genome,
    fitness: f64,
    /// Creation order; earlier wins ties.
    id: u64,
}

fn better(a: &Individual, b: &Individual) -> std::cmp::Ordering {
    a.fitness.total_cmp(&b.fitness).then(a.id.cmp(&b.id))
}

/// Tournament winner drawn with replacement.
fn tournament<'a>(pop: &'a [Individual], size: usize, rng: &mut Rng) -> &'a Individual {
    let mut winner = &pop[rng.random_range(0..pop.len())];
    for _ in 1..size {
        let other = &pop[rng.random_range(0..pop.len())];
        if better(other, winner).is_lt() {
            winner = other;
        }
    }
    winner
}

const STREAM_INIT: u64 = 0;

pub fn evolve(cfg: &EAConfig) -> Result<EvolutionResult> {
    cfg.validate()?;
    let mu = cfg.population;

    let genomes: Vec<Genome> = (0..mu)
        .map(|i| {
            let mut rng = seed::rng(derive_seed(cfg.seed, &[STREAM_INIT, i as u64]));
            Genome::random(cfg.n_customers, &mut rng)
        })
        .collect();
    let mut population = evaluate(genomes, 0, cfg)?;
    let mut next_id = mu as u64;
    population.sort_by(better);

    let mut history = Vec::with_capacity(cfg.generations + 1);
    history.push(population[0].fitness);

    for generation in 1..=cfg.generations {
        let offspring: Vec<Genome> = (0..mu)
            .map(|i| {
                let mut rng = seed::rng(derive_seed(cfg.seed, &[generation as u64, i as u64]));
                let a = tournament(&population, cfg.tournament_size, &mut rng);
                let b = tournament(&population, cfg.tournament_size, &mut rng);
                let (child, _) = recombine(
                    &a.genome,
                    &b.genome,
                    cfg.recombination_prob,
                    cfg.recombination_alpha,
                    &mut rng,
                )?;
                Ok(mutate(&child, cfg.mutation_sigma, &mut rng))
            })
            .collect::<Result<_>>()?;
        let offspring = evaluate(offspring, next_id, cfg)?;
        next_id += mu as u64;

        population.extend(offspring);
        population.sort_by(better);
        population.truncate(mu);
        history.push(population[0].fitness);
    }

    let best = population.swap_remove(0);
    let best_instance = decode(&best.genome, cfg.k)?;
    Ok(EvolutionResult {
        best_genome: best.genome,
        best_fitness: best.fitness,
        fitness_history: history,
        best_instance,
    })
}

fn evaluate(genomes: Vec<Genome>, first_id: u64, cfg: &EAConfig) -> Result<Vec<Individual>> {
    genomes
        .into_par_iter()
        .enumerate()
        .map(|(i, genome)| {
            let fitness = fitness(&genome, cfg)?;
            Ok(Individual {
                genome,
                fitness,
                id: first_id + i as u64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SolverKind;

    fn cfg(n: usize, k: usize, a: SolverKind, b: SolverKind) -> EAConfig {
        EAConfig::new(n, k, SolverConfig::new(a), SolverConfig::new(b))
    }

    #[test]
    fn defaults() {
        let c = cfg(10, 2, SolverKind::MacQueen, SolverKind::Dragoon);
        assert_eq!(c.population, 20);
        assert_eq!(c.generations, 100);
        assert_eq!(c.mutation_sigma, 0.05);
        assert_eq!(c.recombination_prob, 0.3);
        assert_eq!(c.tournament_size, 2);
        assert_eq!(c.recombination_alpha, 0.5);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn invalid_configs() {
        let mut c = cfg(3, 4, SolverKind::Greedy, SolverKind::Dragoon);
        assert!(c.validate().is_err());
        c.k = 2;
        c.recombination_prob = 1.5;
        assert!(c.validate().is_err());
        c.recombination_prob = 0.3;
        c.population = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn genome_validation() {
        assert!(Genome::new(vec![0.5, 0.5]).is_ok());
        assert!(Genome::new(vec![0.5]).is_err());
        assert!(matches!(
            Genome::new(vec![0.5, 1.0]),
            Err(Error::GeneOutOfRange { index: 1, .. })
        ));
        assert!(Genome::new(vec![0.0, 0.5]).is_err());
    }

    #[test]
    fn decode_examples() {
        let inst = decode(&Genome::new(vec![0.5; 4]).unwrap(), 1).unwrap();
        assert_eq!(
            inst.customers(),
            &[Point::new(50.0, 50.0), Point::new(50.0, 50.0)]
        );

        let g = Genome::new(vec![0.1, 0.2, 0.9, 0.4]).unwrap();
        let inst = decode(&g, 2).unwrap();
        assert_eq!(
            inst.customers(),
            &[Point::new(10.0, 20.0), Point::new(90.0, 40.0)]
        );
        assert_eq!(Genome::encode(&inst).unwrap(), g);
    }

    #[test]
    fn fitness_of_identical_solvers_is_zero() {
        let mut rng = seed::rng(1);
        let g = Genome::random(10, &mut rng);
        let c = cfg(10, 2, SolverKind::Greedy, SolverKind::Greedy);
        assert_eq!(fitness(&g, &c).unwrap(), 0.0);
    }

    #[test]
    fn fitness_is_zero_when_every_customer_is_a_center() {
        let mut rng = seed::rng(2);
        let g = Genome::random(5, &mut rng);
        let c = cfg(5, 5, SolverKind::MacQueen, SolverKind::Dragoon);
        assert_eq!(fitness(&g, &c).unwrap(), 0.0);
    }

    #[test]
    fn fitness_checks_genome_length() {
        let g = Genome::new(vec![0.5; 6]).unwrap();
        let c = cfg(4, 2, SolverKind::Greedy, SolverKind::Dragoon);
        assert!(matches!(
            fitness(&g, &c),
            Err(Error::GenomeLengthMismatch { .. })
        ));
    }

    #[test]
    fn mutation_clamps_at_the_edges() {
        let g = Genome::new(vec![0.999, 0.001]).unwrap();
        assert_eq!(perturb(&g, 0, 0.5).genes(), &[1.0 - 1e-9, 0.001]);
        assert_eq!(perturb(&g, 1, -0.5).genes(), &[0.999, 1e-9]);
    }

    #[test]
    fn mutation_changes_at_most_one_gene() {
        let mut rng = seed::rng(4);
        let g = Genome::random(8, &mut rng);
        for _ in 0..200 {
            let m = mutate(&g, 0.05, &mut rng);
            let diff = g
                .genes()
                .iter()
                .zip(m.genes())
                .filter(|(a, b)| a != b)
                .count();
            assert!(diff <= 1);
            assert!(m.is_valid());
        }
    }

    #[test]
    fn recombination_examples() {
        let mut rng = seed::rng(5);
        let a = Genome::new(vec![0.2; 4]).unwrap();
        let b = Genome::new(vec![0.6; 4]).unwrap();
        let (child, fired) = recombine(&a, &b, 1.0, 0.5, &mut rng).unwrap();
        assert!(fired);
        for &g in child.genes() {
            assert!((g - 0.4).abs() < 1e-15);
        }
        let (child, fired) = recombine(&a, &b, 0.0, 0.5, &mut rng).unwrap();
        assert!(!fired);
        assert_eq!(child, a);
        let (child, _) = recombine(&a, &a, 1.0, 0.5, &mut rng).unwrap();
        assert_eq!(child, a);

        let short = Genome::new(vec![0.5; 2]).unwrap();
        assert!(matches!(
            recombine(&a, &short, 0.3, 0.5, &mut rng),
            Err(Error::GenomeLengthMismatch { left: 4, right: 2 })
        ));
    }

    #[test]
    fn zero_generations_returns_best_initial() {
        let mut c = cfg(6, 2, SolverKind::TwoApprox, SolverKind::Dragoon);
        c.generations = 0;
        c.seed = 11;
        let r = evolve(&c).unwrap();
        assert_eq!(r.fitness_history.len(), 1);
        let initial: Vec<f64> = (0..c.population)
            .map(|i| {
                let mut rng = seed::rng(derive_seed(c.seed, &[STREAM_INIT, i as u64]));
                fitness(&Genome::random(6, &mut rng), &c).unwrap()
            })
            .collect();
        let min = initial.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(r.best_fitness, min);
    }

    #[test]
    fn evolution_is_reproducible_and_elitist() {
        let mut c = cfg(8, 2, SolverKind::MacQueen, SolverKind::Dragoon);
        c.generations = 15;
        c.seed = 99;
        let a = evolve(&c).unwrap();
        let b = evolve(&c).unwrap();
        assert_eq!(a, b);
        assert!(a.fitness_history.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(fitness(&a.best_genome, &c).unwrap(), a.best_fitness);
        assert!(a.best_genome.is_valid());
    }

    #[test]
    fn evolution_is_independent_of_thread_count() {
        let mut c = cfg(8, 2, SolverKind::Greedy, SolverKind::Dragoon);
        c.generations = 10;
        c.seed = 7;
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| evolve(&c)).unwrap();
        let b = four.install(|| evolve(&c)).unwrap();
        assert_eq!(a, b);
    }
}
