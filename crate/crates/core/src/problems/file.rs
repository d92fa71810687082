use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{BitString, Genotype, InitialPopulation, Tour};
use crate::{Error, Result};

use super::{
    build_experiment_instance, ConvexTspInstance, ExperimentProblem, KnapsackInstance,
    MaxSatInstance, ProblemInstance,
};

/// `"uniform-random"` or an explicit list of genotypes (bit vectors of 0/1,
/// or tours over `1..=n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialSpec {
    Named(String),
    Explicit(Vec<Vec<u32>>),
}

/// JSON instance description. `problem` is `knapsack`, `maxsat`, `tsp`, or one
/// of the named experiment families (`paper-knapsack`, `paper-maxsat`,
/// `paper-tsp`), which only need `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default)]
    pub problem: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub values: Option<Vec<u64>>,
    #[serde(default)]
    pub weights: Option<Vec<u64>>,
    #[serde(default)]
    pub capacity: Option<u64>,
    #[serde(default)]
    pub clause_width: Option<usize>,
    #[serde(default)]
    pub clauses: Option<Vec<Vec<i32>>>,
    #[serde(default)]
    pub initial_population: Option<InitialSpec>,
}

/// How generation 0 is formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartingPopulation {
    UniformRandom,
    /// One genotype copied `μ` times.
    Replicated(Genotype),
    Explicit(Vec<Genotype>),
}

impl StartingPopulation {
    pub fn materialize(&self, mu: usize) -> InitialPopulation {
        match self {
            StartingPopulation::UniformRandom => InitialPopulation::UniformRandom,
            StartingPopulation::Replicated(g) => InitialPopulation::Explicit(vec![g.clone(); mu]),
            StartingPopulation::Explicit(list) => InitialPopulation::Explicit(list.clone()),
        }
    }
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn experiment_problem(&self) -> Option<ExperimentProblem> {
        self.problem
            .as_deref()
            .and_then(ExperimentProblem::from_name)
    }

    /// Builds the instance and its starting population. Named experiment
    /// families default to their fixed start; explicit instances default to
    /// uniform random initialisation.
    pub fn resolve(&self) -> Result<(ProblemInstance, StartingPopulation)> {
        let problem = self
            .problem
            .as_deref()
            .ok_or_else(|| Error::Config("instance has no `problem` field".into()))?;
        let (instance, default_start) = if let Some(family) = ExperimentProblem::from_name(problem)
        {
            let n = self.require_n()?;
            let (instance, x0) = build_experiment_instance(family, n)?;
            (instance, StartingPopulation::Replicated(x0))
        } else {
            let instance = match problem {
                "knapsack" => {
                    let values = self.values.clone().ok_or_else(|| missing("values"))?;
                    let weights = self.weights.clone().ok_or_else(|| missing("weights"))?;
                    let capacity = self.capacity.ok_or_else(|| missing("capacity"))?;
                    ProblemInstance::Knapsack(KnapsackInstance::new(values, weights, capacity)?)
                }
                "maxsat" => {
                    let clauses = self.clauses.clone().ok_or_else(|| missing("clauses"))?;
                    let width = self
                        .clause_width
                        .or_else(|| clauses.first().map(Vec::len))
                        .unwrap_or(0);
                    ProblemInstance::MaxSat(MaxSatInstance::new(self.require_n()?, width, clauses)?)
                }
                "tsp" => ProblemInstance::Tsp(ConvexTspInstance::new(self.require_n()?)?),
                other => return Err(Error::Config(format!("unknown problem `{other}`"))),
            };
            (instance, StartingPopulation::UniformRandom)
        };
        if let Some(n) = self.n {
            if n != instance.n() {
                return Err(Error::Config(format!(
                    "declared n = {n} but instance has {} variables",
                    instance.n()
                )));
            }
        }
        let start = match &self.initial_population {
            None => default_start,
            Some(InitialSpec::Named(name)) if name == "uniform-random" => {
                StartingPopulation::UniformRandom
            }
            Some(InitialSpec::Named(other)) => {
                return Err(Error::Config(format!(
                    "unknown initial_population `{other}`"
                )))
            }
            Some(InitialSpec::Explicit(list)) => StartingPopulation::Explicit(
                list.iter()
                    .map(|raw| parse_genotype(&instance, raw))
                    .collect::<Result<_>>()?,
            ),
        };
        Ok((instance, start))
    }

    fn require_n(&self) -> Result<usize> {
        self.n.ok_or_else(|| missing("n"))
    }
}

fn missing(field: &str) -> Error {
    Error::Config(format!("instance is missing `{field}`"))
}

fn parse_genotype(instance: &ProblemInstance, raw: &[u32]) -> Result<Genotype> {
    if raw.len() != instance.n() {
        return Err(Error::Config(format!(
            "initial genotype has length {}, instance has n = {}",
            raw.len(),
            instance.n()
        )));
    }
    match instance {
        ProblemInstance::Tsp(_) => Ok(Genotype::Tour(Tour::new(raw.to_vec())?)),
        _ => {
            let bytes: Vec<u8> = raw
                .iter()
                .map(|&b| u8::try_from(b).unwrap_or(u8::MAX))
                .collect();
            Ok(Genotype::Bits(BitString::try_from(bytes)?))
        }
    }
}
