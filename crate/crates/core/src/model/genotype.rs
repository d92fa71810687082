use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::RandomStream;

/// Fixed-length binary genotype.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u8>", try_from = "Vec<u8>")]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn random(n: usize, rng: &mut RandomStream) -> Self {
        Self((0..n).map(|_| rng.bernoulli(0.5)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Bit string whose bit `i` is bit `i` of `mask` (little-endian), for
    /// exhaustive enumeration of `{0,1}^n`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|i| mask >> i & 1 == 1).collect())
    }
}

impl From<BitString> for Vec<u8> {
    fn from(b: BitString) -> Self {
        b.0.into_iter().map(u8::from).collect()
    }
}

impl TryFrom<Vec<u8>> for BitString {
    type Error = Error;

    fn try_from(raw: Vec<u8>) -> Result<Self> {
        raw.into_iter()
            .map(|b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Shape(format!("gene {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A tour over cities labelled `1..=n`, stored in visiting order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Tour(Vec<u32>);

impl Tour {
    /// Validates that `order` is a permutation of `1..=n`.
    pub fn new(order: Vec<u32>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &c in &order {
            let idx = c as usize;
            if idx == 0 || idx > n {
                return Err(Error::Shape(format!("city label {c} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::Shape(format!("city label {c} repeated")));
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u32).collect())
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random(n: usize, rng: &mut RandomStream) -> Self {
        let mut order: Vec<u32> = (1..=n as u32).collect();
        rng.shuffle(&mut order);
        Self(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> &[u32] {
        &self.0
    }

    /// Reverses positions `i..=j` (1-based) in place. Caller validates.
    pub(crate) fn reverse_segment(&mut self, i: usize, j: usize) {
        self.0[i - 1..j].reverse();
    }
}

impl From<Tour> for Vec<u32> {
    fn from(t: Tour) -> Self {
        t.0
    }
}

impl TryFrom<Vec<u32>> for Tour {
    type Error = Error;

    fn try_from(order: Vec<u32>) -> Result<Self> {
        Tour::new(order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Genotype {
    Bits(BitString),
    Tour(Tour),
}

impl Genotype {
    pub fn len(&self) -> usize {
        match self {
            Genotype::Bits(b) => b.len(),
            Genotype::Tour(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_bits(&self) -> Option<&BitString> {
        match self {
            Genotype::Bits(b) => Some(b),
            Genotype::Tour(_) => None,
        }
    }

    pub fn as_tour(&self) -> Option<&Tour> {
        match self {
            Genotype::Tour(t) => Some(t),
            Genotype::Bits(_) => None,
        }
    }
}
