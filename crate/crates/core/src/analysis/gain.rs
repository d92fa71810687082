use serde::{Deserialize, Serialize};

use crate::ea::RunOutcome;
use crate::model::{Direction, Fitness};
use crate::{Error, Result};

/// Distance-to-optimum of the best individual per generation, `t = 0..=fht`,
/// with the one-step gains between consecutive generations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GainTrace {
    pub potentials: Vec<Fitness>,
    pub gains: Vec<Fitness>,
    pub fht: u64,
}

impl GainTrace {
    /// Builds a trace from potentials ending in 0. Used by tests and by
    /// callers replaying recorded runs.
    pub fn from_potentials(potentials: Vec<Fitness>) -> Result<Self> {
        match potentials.last() {
            Some(0) => {}
            _ => {
                return Err(Error::Estimation(
                    "potential series must end at the optimum (0)".into(),
                ))
            }
        }
        let gains: Vec<Fitness> = potentials.windows(2).map(|w| w[0] - w[1]).collect();
        if let Some(g) = gains.iter().find(|&&g| g < 0) {
            return Err(Error::Estimation(format!(
                "negative gain {g}: potential series is not monotone"
            )));
        }
        Ok(Self {
            fht: gains.len() as u64,
            potentials,
            gains,
        })
    }

    pub fn initial_potential(&self) -> Fitness {
        self.potentials[0]
    }

    /// `Φ_t`, with `Φ_t = 0` for every `t` past the hitting time.
    pub fn potential_at(&self, t: usize) -> Fitness {
        self.potentials.get(t).copied().unwrap_or(0)
    }
}

pub fn gain_trace(
    outcome: &RunOutcome,
    optimum_fitness: Fitness,
    direction: Direction,
) -> Result<GainTrace> {
    let fht = outcome
        .hit()
        .ok_or_else(|| Error::Estimation(format!("run with seed {} is censored", outcome.seed)))?;
    let potentials: Vec<Fitness> = outcome.events[..=fht as usize]
        .iter()
        .map(|e| direction.potential(e.best_fitness, optimum_fitness))
        .collect();
    GainTrace::from_potentials(potentials)
}

/// Longest run of consecutive zero gains (`k_i` of one run).
pub fn longest_zero_gain_interval(trace: &GainTrace) -> u64 {
    let mut longest = 0;
    let mut current = 0;
    for &g in &trace.gains {
        if g == 0 {
            current += 1;
            longest = longest.max(current);
        } else {
            current = 0;
        }
    }
    longest
}
