use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{BitString, Direction, Fitness};
use crate::{Error, Result};

use super::{check_cap, FitnessValueSpace};

/// Unweighted k-MAX-SAT. Literals are signed 1-based variable indices:
/// `3` is `x3`, `-3` is `¬x3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxSatInstance {
    n: usize,
    clause_width: usize,
    clauses: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSatDerived {
    /// Number of assignments satisfying the maximum number of clauses.
    pub n_opt: u64,
    pub optimum_fitness: Fitness,
}

impl MaxSatInstance {
    pub fn new(n: usize, clause_width: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument(
                "MAX-SAT needs at least one variable".into(),
            ));
        }
        for (c, clause) in clauses.iter().enumerate() {
            if clause.len() != clause_width {
                return Err(Error::Shape(format!(
                    "clause {c} has {} literals, width is {clause_width}",
                    clause.len()
                )));
            }
            if let Some(&bad) = clause
                .iter()
                .find(|l| **l == 0 || l.unsigned_abs() as usize > n)
            {
                return Err(Error::Shape(format!(
                    "clause {c} has literal {bad} outside ±1..={n}"
                )));
            }
        }
        Ok(Self {
            n,
            clause_width,
            clauses,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clause_width(&self) -> usize {
        self.clause_width
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Number of satisfied clauses.
    pub fn fitness(&self, x: &BitString) -> Result<Fitness> {
        if x.len() != self.n {
            return Err(Error::Shape(format!(
                "assignment of length {} for {} variables",
                x.len(),
                self.n
            )));
        }
        Ok(self.count_satisfied(|var| x.get(var)))
    }

    fn count_satisfied(&self, value: impl Fn(usize) -> bool) -> Fitness {
        self.clauses
            .iter()
            .filter(|clause| {
                clause
                    .iter()
                    .any(|&lit| value(lit.unsigned_abs() as usize - 1) == (lit > 0))
            })
            .count() as Fitness
    }

    /// Optimum and number of optimal assignments by exhaustive scan.
    pub fn derive(&self, cap: usize) -> Result<MaxSatDerived> {
        check_cap(self.n, cap)?;
        let mut optimum = Fitness::MIN;
        let mut n_opt = 0u64;
        for mask in 0..1u64 << self.n {
            let f = self.count_satisfied(|var| mask >> var & 1 == 1);
            if f > optimum {
                optimum = f;
                n_opt = 1;
            } else if f == optimum {
                n_opt += 1;
            }
        }
        Ok(MaxSatDerived {
            n_opt,
            optimum_fitness: optimum,
        })
    }

    /// Distinct reachable clause counts by exhaustive scan.
    pub fn value_space(&self, cap: usize) -> Result<FitnessValueSpace> {
        check_cap(self.n, cap)?;
        let values: BTreeSet<Fitness> = (0..1u64 << self.n)
            .map(|mask| self.count_satisfied(|var| mask >> var & 1 == 1))
            .collect();
        FitnessValueSpace::from_values(values, Direction::Maximize)
    }
}
