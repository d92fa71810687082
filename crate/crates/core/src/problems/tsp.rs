use serde::{Deserialize, Serialize};

use crate::model::{Direction, Fitness, Tour};
use crate::{Error, Result};

use super::FitnessValueSpace;

/// TSP on `n` cities in convex position, labelled `1..=n` in hull order.
///
/// Only the cyclic order of the hull matters, so the instance carries no
/// coordinates. Fitness is the number of tour positions whose successor is
/// not a hull neighbour; the optimal tours score 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexTspInstance {
    n: usize,
}

impl ConvexTspInstance {
    pub fn new(n: usize) -> Result<Self> {
        if n <= 5 {
            return Err(Error::Domain(format!("convex TSP needs n > 5, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fitness(&self, t: &Tour) -> Result<Fitness> {
        if t.len() != self.n {
            return Err(Error::Shape(format!(
                "tour of length {} for {} cities",
                t.len(),
                self.n
            )));
        }
        Ok(misordered_points(t.order()))
    }

    /// `S = {0, 2, 3, ..., n}`: one misplaced successor is impossible.
    pub fn value_space(&self) -> FitnessValueSpace {
        let values = std::iter::once(0).chain(2..=self.n as Fitness);
        FitnessValueSpace::from_values(values.collect(), Direction::Minimize)
            .expect("n > 5 gives at least two values")
    }
}

/// Counts positions `i` where `order[i+1]` (cyclically) is not adjacent to
/// `order[i]` on the hull. Labels `1` and `n` are hull neighbours.
pub(crate) fn misordered_points(order: &[u32]) -> Fitness {
    let n = order.len() as u32;
    let mut count = 0;
    for (i, &a) in order.iter().enumerate() {
        let b = order[(i + 1) % order.len()];
        let d = a.abs_diff(b);
        if d != 1 && d != n - 1 {
            count += 1;
        }
    }
    count
}

/// Reverses the tour segment between 1-based positions `i < j`.
pub fn two_opt_inversion(t: &Tour, i: usize, j: usize) -> Result<Tour> {
    if !(1 <= i && i < j && j <= t.len()) {
        return Err(Error::Argument(format!(
            "2-opt positions must satisfy 1 <= i < j <= {}, got i = {i}, j = {j}",
            t.len()
        )));
    }
    let mut out = t.clone();
    out.reverse_segment(i, j);
    Ok(out)
}
