//! Problem definitions, fitness oracles, and exact enumerators for the
//! instance quantities the bound formulas consume.

mod file;
mod knapsack;
mod maxsat;
mod space;
mod tsp;

use serde::{Deserialize, Serialize};

pub use file::{InitialSpec, InstanceFile, StartingPopulation};
pub use knapsack::{KnapsackDerived, KnapsackFitness, KnapsackInstance};
pub use maxsat::{MaxSatDerived, MaxSatInstance};
pub use space::FitnessValueSpace;
pub use tsp::{two_opt_inversion, ConvexTspInstance};

use crate::model::{BitString, Direction, Fitness, Genotype, RandomStream, Tour, Variant};
use crate::{Error, Result};

/// Default limit on `n` for exhaustive `2^n` enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= 64 {
        Err(Error::EnumerationLimit { n, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Knapsack,
    MaxSat,
    Tsp,
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProblemKind::Knapsack => "knapsack",
            ProblemKind::MaxSat => "maxsat",
            ProblemKind::Tsp => "tsp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemInstance {
    Knapsack(KnapsackInstance),
    MaxSat(MaxSatInstance),
    Tsp(ConvexTspInstance),
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemInstance::Knapsack(_) => ProblemKind::Knapsack,
            ProblemInstance::MaxSat(_) => ProblemKind::MaxSat,
            ProblemInstance::Tsp(_) => ProblemKind::Tsp,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ProblemInstance::Knapsack(k) => k.n(),
            ProblemInstance::MaxSat(m) => m.n(),
            ProblemInstance::Tsp(t) => t.n(),
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            ProblemInstance::Tsp(_) => Direction::Minimize,
            _ => Direction::Maximize,
        }
    }

    /// The engine analysed for this problem.
    pub fn default_variant(&self) -> Variant {
        match self {
            ProblemInstance::Knapsack(_) => Variant::Knapsack1,
            ProblemInstance::MaxSat(_) => Variant::MaxSat2,
            ProblemInstance::Tsp(_) => Variant::Tsp3,
        }
    }

    /// Fitness of `genotype`, or `None` for an infeasible knapsack selection.
    pub fn evaluate(&self, genotype: &Genotype) -> Result<Option<Fitness>> {
        match (self, genotype) {
            (ProblemInstance::Knapsack(k), Genotype::Bits(x)) => Ok(match k.fitness(x)? {
                KnapsackFitness::Feasible(v) => Some(v),
                KnapsackFitness::Infeasible => None,
            }),
            (ProblemInstance::MaxSat(m), Genotype::Bits(x)) => m.fitness(x).map(Some),
            (ProblemInstance::Tsp(t), Genotype::Tour(x)) => t.fitness(x).map(Some),
            _ => Err(Error::Shape(format!(
                "genotype kind does not match a {} instance",
                self.kind()
            ))),
        }
    }

    pub fn random_genotype(&self, rng: &mut RandomStream) -> Genotype {
        match self {
            ProblemInstance::Tsp(t) => Genotype::Tour(Tour::random(t.n(), rng)),
            _ => Genotype::Bits(BitString::random(self.n(), rng)),
        }
    }

    /// Reachable fitness values by enumeration (analytic for TSP).
    pub fn fitness_value_space(&self, cap: usize) -> Result<FitnessValueSpace> {
        match self {
            ProblemInstance::Knapsack(k) => k.value_space(cap),
            ProblemInstance::MaxSat(m) => m.value_space(cap),
            ProblemInstance::Tsp(t) => Ok(t.value_space()),
        }
    }
}

/// Problem-specific derived scalars.
#[derive(Clone, Debug, PartialEq)]
pub enum DerivedDetail {
    Knapsack(KnapsackDerived),
    MaxSat(MaxSatDerived),
    Tsp,
}

/// Everything the engines and bounds need to know about an instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceQuantities {
    pub optimum_fitness: Fitness,
    pub space: FitnessValueSpace,
    pub detail: DerivedDetail,
}

/// Derives optimum, value space and problem scalars. Knapsack instances above
/// `cap` fall back to exact counting over the capacity; MAX-SAT above `cap`
/// is an enumeration-limit error.
pub fn derive_quantities(instance: &ProblemInstance, cap: usize) -> Result<InstanceQuantities> {
    match instance {
        ProblemInstance::Knapsack(k) => {
            let (derived, space) = if k.n() <= cap {
                (k.derive(cap)?, k.value_space(cap)?)
            } else {
                (k.derive_by_counting()?, k.value_space_by_counting()?)
            };
            Ok(InstanceQuantities {
                optimum_fitness: derived.optimum_fitness,
                space,
                detail: DerivedDetail::Knapsack(derived),
            })
        }
        ProblemInstance::MaxSat(m) => {
            let derived = m.derive(cap)?;
            Ok(InstanceQuantities {
                optimum_fitness: derived.optimum_fitness,
                space: m.value_space(cap)?,
                detail: DerivedDetail::MaxSat(derived),
            })
        }
        ProblemInstance::Tsp(t) => Ok(InstanceQuantities {
            optimum_fitness: 0,
            space: t.value_space(),
            detail: DerivedDetail::Tsp,
        }),
    }
}

/// The three self-constructed experiment families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExperimentProblem {
    #[serde(rename = "paper-knapsack")]
    Knapsack,
    #[serde(rename = "paper-maxsat")]
    MaxSat,
    #[serde(rename = "paper-tsp")]
    Tsp,
}

impl ExperimentProblem {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentProblem::Knapsack => "paper-knapsack",
            ExperimentProblem::MaxSat => "paper-maxsat",
            ExperimentProblem::Tsp => "paper-tsp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "paper-knapsack" => Some(ExperimentProblem::Knapsack),
            "paper-maxsat" => Some(ExperimentProblem::MaxSat),
            "paper-tsp" => Some(ExperimentProblem::Tsp),
            _ => None,
        }
    }

    pub fn kind(self) -> ProblemKind {
        match self {
            ExperimentProblem::Knapsack => ProblemKind::Knapsack,
            ExperimentProblem::MaxSat => ProblemKind::MaxSat,
            ExperimentProblem::Tsp => ProblemKind::Tsp,
        }
    }
}

impl std::fmt::Display for ExperimentProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Builds an experiment instance of size `n` with its fixed starting genotype.
///
/// - knapsack: `K = 3`, values `(3, 3, 1, 1, ...)`, weights `(1, 1, 1, 2, ...)`,
///   start from the empty selection;
/// - maxsat: clauses `(x1 ∨ ¬xj)` then `(¬x1 ∨ xj)` for `j = 2..=n`, start
///   from `(0, 1, ..., 1)`;
/// - tsp: odd labels ascending, then even labels with the last two swapped
///   into the order `..., n-1, n-3` (odd `n`) or `..., n, n-2` (even `n`).
pub fn build_experiment_instance(
    problem: ExperimentProblem,
    n: usize,
) -> Result<(ProblemInstance, Genotype)> {
    match problem {
        ExperimentProblem::Knapsack => {
            if n < 4 {
                return Err(Error::Argument(format!(
                    "paper-knapsack needs n >= 4, got {n}"
                )));
            }
            let mut values = vec![3, 3, 1];
            let mut weights = vec![1, 1, 1];
            values.resize(n, 1);
            weights.resize(n, 2);
            let inst = KnapsackInstance::favorably_correlated(values, weights, 3)?;
            Ok((
                ProblemInstance::Knapsack(inst),
                Genotype::Bits(BitString::zeros(n)),
            ))
        }
        ExperimentProblem::MaxSat => {
            if n < 2 {
                return Err(Error::Argument(format!(
                    "paper-maxsat needs n >= 2, got {n}"
                )));
            }
            let n_i32 = n as i32;
            let clauses = (2..=n_i32)
                .map(|j| vec![1, -j])
                .chain((2..=n_i32).map(|j| vec![-1, j]))
                .collect();
            let inst = MaxSatInstance::new(n, 2, clauses)?;
            let mut x0 = BitString::ones(n);
            x0.flip(0);
            Ok((ProblemInstance::MaxSat(inst), Genotype::Bits(x0)))
        }
        ExperimentProblem::Tsp => {
            let inst = ConvexTspInstance::new(n)
                .map_err(|_| Error::Argument(format!("paper-tsp needs n > 5, got {n}")))?;
            Ok((
                ProblemInstance::Tsp(inst),
                Genotype::Tour(experiment_tour(n)),
            ))
        }
    }
}

fn experiment_tour(n: usize) -> Tour {
    let n = n as u32;
    let mut order: Vec<u32> = (1..=n).step_by(2).collect();
    let (tail_a, tail_b) = if n % 2 == 1 {
        (n - 1, n - 3)
    } else {
        (n, n - 2)
    };
    order.extend((2..tail_a.min(tail_b)).step_by(2));
    order.extend([tail_a, tail_b]);
    Tour::new(order).expect("construction yields a permutation")
}
