use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{Direction, Fitness};
use crate::{Error, Result};

/// Sorted distinct reachable fitness values with the smallest (`alpha`) and
/// largest (`beta`) gap between adjacent values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitnessValueSpace {
    values: Vec<Fitness>,
    alpha: Fitness,
    beta: Fitness,
    direction: Direction,
}

impl FitnessValueSpace {
    pub fn from_values(values: BTreeSet<Fitness>, direction: Direction) -> Result<Self> {
        let values: Vec<Fitness> = values.into_iter().collect();
        if values.len() < 2 {
            return Err(Error::Domain(
                "fitness value space has fewer than two values; gaps undefined".into(),
            ));
        }
        let gaps = values.windows(2).map(|w| w[1] - w[0]);
        let alpha = gaps.clone().min().expect("non-empty");
        let beta = gaps.max().expect("non-empty");
        Ok(Self {
            values,
            alpha,
            beta,
            direction,
        })
    }

    pub fn values(&self) -> &[Fitness] {
        &self.values
    }

    pub fn alpha(&self) -> Fitness {
        self.alpha
    }

    pub fn beta(&self) -> Fitness {
        self.beta
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}
