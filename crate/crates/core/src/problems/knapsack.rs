use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{BitString, Direction, Fitness};
use crate::{Error, Result};

use super::{check_cap, FitnessValueSpace};

/// Largest capacity accepted by the weight-indexed counting routes.
const MAX_COUNTING_CAPACITY: u64 = 1 << 22;

/// 0/1 knapsack with integer values and weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    values: Vec<u64>,
    weights: Vec<u64>,
    capacity: u64,
    favorably_correlated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnapsackFitness {
    Feasible(Fitness),
    Infeasible,
}

/// Instance scalars used by the knapsack bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct KnapsackDerived {
    /// Length of the all-ones prefix of the optimum `1^q 0^(n-q)`.
    pub q: usize,
    /// Number of feasible solutions.
    pub feasible_count: u128,
    /// `Σ_{i<q} C(q,i)`, the numerator of `p2`.
    pub p2_numerator: u128,
    pub p1: f64,
    pub p2: f64,
    /// Smallest positive difference between two item values.
    pub d_min: u64,
    pub v_min: u64,
    pub optimum_fitness: Fitness,
}

impl KnapsackInstance {
    pub fn new(values: Vec<u64>, weights: Vec<u64>, capacity: u64) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::Shape(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        if values.is_empty() {
            return Err(Error::Argument("knapsack needs at least one item".into()));
        }
        if values.contains(&0) || weights.contains(&0) || capacity == 0 {
            return Err(Error::Argument(
                "values, weights and capacity must be positive".into(),
            ));
        }
        let favorably_correlated =
            values.windows(2).all(|w| w[0] >= w[1]) && weights.windows(2).all(|w| w[0] <= w[1]);
        Ok(Self {
            values,
            weights,
            capacity,
            favorably_correlated,
        })
    }

    /// Like [`KnapsackInstance::new`] but rejects instances whose values are not
    /// non-increasing with non-decreasing weights.
    pub fn favorably_correlated(
        values: Vec<u64>,
        weights: Vec<u64>,
        capacity: u64,
    ) -> Result<Self> {
        let inst = Self::new(values, weights, capacity)?;
        if !inst.favorably_correlated {
            return Err(Error::Argument(
                "weights are not favorably correlated with values".into(),
            ));
        }
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn is_favorably_correlated(&self) -> bool {
        self.favorably_correlated
    }

    pub fn fitness(&self, x: &BitString) -> Result<KnapsackFitness> {
        if x.len() != self.n() {
            return Err(Error::Shape(format!(
                "bit string of length {} for {} items",
                x.len(),
                self.n()
            )));
        }
        let (mut value, mut weight) = (0u64, 0u64);
        for (i, &bit) in x.bits().iter().enumerate() {
            if bit {
                value += self.values[i];
                weight += self.weights[i];
            }
        }
        Ok(if weight <= self.capacity {
            KnapsackFitness::Feasible(value as Fitness)
        } else {
            KnapsackFitness::Infeasible
        })
    }

    pub fn d_min(&self) -> Option<u64> {
        let mut best: Option<u64> = None;
        for (i, &a) in self.values.iter().enumerate() {
            for &b in &self.values[i + 1..] {
                if a != b {
                    let d = a.abs_diff(b);
                    best = Some(best.map_or(d, |m| m.min(d)));
                }
            }
        }
        best
    }

    pub fn v_min(&self) -> u64 {
        *self.values.iter().min().expect("non-empty")
    }

    /// Derived scalars by exhaustive enumeration of `{0,1}^n`.
    pub fn derive(&self, cap: usize) -> Result<KnapsackDerived> {
        self.require_favorable()?;
        check_cap(self.n(), cap)?;
        let mut optimum = 0u64;
        let mut feasible = 0u128;
        for mask in 0..1u64 << self.n() {
            if let Some(v) = self.masked_value(mask) {
                feasible += 1;
                optimum = optimum.max(v);
            }
        }
        self.finish(optimum, feasible)
    }

    /// Derived scalars by dynamic programming over the capacity. Exact and
    /// independent of `n`, used when enumeration is out of reach.
    pub fn derive_by_counting(&self) -> Result<KnapsackDerived> {
        self.require_favorable()?;
        let cap = self.counting_capacity()?;
        // ways[w]: subsets of exact weight w; best[w]: best value within weight w.
        let mut ways = vec![0u128; cap + 1];
        let mut best = vec![0u64; cap + 1];
        ways[0] = 1;
        for (&v, &w) in self.values.iter().zip(&self.weights) {
            let w = w as usize;
            if w > cap {
                continue;
            }
            for c in (w..=cap).rev() {
                ways[c] = ways[c]
                    .checked_add(ways[c - w])
                    .ok_or_else(|| Error::Domain("feasible-solution count overflows".into()))?;
                best[c] = best[c].max(best[c - w] + v);
            }
        }
        let feasible = ways.iter().sum();
        self.finish(best[cap], feasible)
    }

    /// Distinct feasible fitness values by enumeration.
    pub fn value_space(&self, cap: usize) -> Result<FitnessValueSpace> {
        check_cap(self.n(), cap)?;
        let values: BTreeSet<Fitness> = (0..1u64 << self.n())
            .filter_map(|m| self.masked_value(m))
            .map(|v| v as Fitness)
            .collect();
        FitnessValueSpace::from_values(values, Direction::Maximize)
    }

    /// Distinct feasible fitness values by dynamic programming over weight.
    pub fn value_space_by_counting(&self) -> Result<FitnessValueSpace> {
        let cap = self.counting_capacity()?;
        let mut reachable: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); cap + 1];
        reachable[0].insert(0);
        for (&v, &w) in self.values.iter().zip(&self.weights) {
            let w = w as usize;
            if w > cap {
                continue;
            }
            for c in (w..=cap).rev() {
                let shifted: Vec<u64> = reachable[c - w].iter().map(|x| x + v).collect();
                reachable[c].extend(shifted);
            }
        }
        let values: BTreeSet<Fitness> = reachable
            .into_iter()
            .flatten()
            .map(|v| v as Fitness)
            .collect();
        FitnessValueSpace::from_values(values, Direction::Maximize)
    }

    fn masked_value(&self, mask: u64) -> Option<u64> {
        let (mut value, mut weight) = (0u64, 0u64);
        for i in 0..self.n() {
            if mask >> i & 1 == 1 {
                value += self.values[i];
                weight += self.weights[i];
            }
        }
        (weight <= self.capacity).then_some(value)
    }

    fn require_favorable(&self) -> Result<()> {
        if self.favorably_correlated {
            Ok(())
        } else {
            Err(Error::ModelMismatch(
                "instance does not have favorably correlated weights".into(),
            ))
        }
    }

    fn counting_capacity(&self) -> Result<usize> {
        if self.capacity > MAX_COUNTING_CAPACITY {
            return Err(Error::Domain(format!(
                "capacity {} too large for weight-indexed counting",
                self.capacity
            )));
        }
        Ok(self.capacity as usize)
    }

    fn finish(&self, optimum: u64, feasible: u128) -> Result<KnapsackDerived> {
        let q = self.optimal_prefix(optimum).ok_or_else(|| {
            Error::ModelMismatch(format!(
                "no optimum of the form 1^q 0^(n-q) (optimum value {optimum})"
            ))
        })?;
        let d_min = self.d_min().ok_or_else(|| {
            Error::ModelMismatch("all item values are equal, d_min is undefined".into())
        })?;
        // Σ_{i=0}^{q-1} C(q,i) = 2^q - 1
        let p2_numerator = (1u128 << q) - 1;
        let p2 = p2_numerator as f64 / feasible as f64;
        Ok(KnapsackDerived {
            q,
            feasible_count: feasible,
            p2_numerator,
            p1: 1.0 - p2,
            p2,
            d_min,
            v_min: self.v_min(),
            optimum_fitness: optimum as Fitness,
        })
    }

    /// Prefix length `q` such that taking exactly the first `q` items is
    /// feasible and attains `optimum`. Prefix values strictly increase, so at
    /// most one `q` qualifies.
    fn optimal_prefix(&self, optimum: u64) -> Option<usize> {
        let (mut value, mut weight) = (0u64, 0u64);
        if optimum == 0 {
            return Some(0);
        }
        for q in 1..=self.n() {
            value += self.values[q - 1];
            weight += self.weights[q - 1];
            if weight > self.capacity {
                return None;
            }
            if value == optimum {
                return Some(q);
            }
        }
        None
    }
}
