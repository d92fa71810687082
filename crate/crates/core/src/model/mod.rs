//! Types shared by every algorithm: genotypes, individuals, populations,
//! EA configuration, and the deterministic random stream.

mod config;
mod genotype;
mod population;
mod rng;

pub use config::{EaConfig, InitialPopulation, Variant};
pub use genotype::{BitString, Genotype, Tour};
pub use population::{Individual, Population};
pub use rng::RandomStream;

/// Exact fitness in problem units. All three problems have integer fitness.
pub type Fitness = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    /// `true` when `a` is strictly better than `b`.
    pub fn is_better(self, a: Fitness, b: Fitness) -> bool {
        match self {
            Direction::Maximize => a > b,
            Direction::Minimize => a < b,
        }
    }

    /// The better of the two values.
    pub fn pick(self, a: Fitness, b: Fitness) -> Fitness {
        if self.is_better(b, a) {
            b
        } else {
            a
        }
    }

    /// Non-negative distance of `fitness` from `optimum`.
    pub fn potential(self, fitness: Fitness, optimum: Fitness) -> Fitness {
        match self {
            Direction::Maximize => optimum - fitness,
            Direction::Minimize => fitness - optimum,
        }
    }
}
