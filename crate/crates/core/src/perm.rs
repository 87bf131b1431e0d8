use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A permutation `rho` of `{1, ..., k}` acting on variable blocks:
/// `psi(x_1, ..., x_k) = (x_rho(1), ..., x_rho(k))`.
///
/// Stored 0-based; the textual form is 1-based and comma separated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitPermutation {
    image: Vec<usize>,
}

impl BitPermutation {
    pub fn identity(k: usize) -> Self {
        Self { image: (0..k).collect() }
    }

    /// Builds a permutation from its 1-based image `rho(1), ..., rho(k)`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        let mut zero_based = Vec::with_capacity(k);
        for &v in image {
            if v == 0 || v > k {
                return Err(Error::InvalidPermutation(format!("entry {v} outside 1..={k}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("entry {v} repeated")));
            }
            zero_based.push(v - 1);
        }
        Ok(Self { image: zero_based })
    }

    /// Deterministic pseudo-random permutation of size `k`.
    pub fn random(k: usize, seed: u64) -> Self {
        let mut image: Vec<usize> = (0..k).collect();
        image.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self { image }
    }

    /// `rho` composed with the reversal `j -> k + 1 - j`.
    pub fn reversed(&self) -> Self {
        Self { image: self.image.iter().rev().copied().collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// 0-based source position feeding output position `j` (0-based).
    pub fn source(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    /// Applies `psi` to a `k`-bit mask (bit `j` of the result is bit `rho(j)` of `x`).
    pub fn apply_mask(&self, x: u64) -> u64 {
        self.image
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &src)| acc | (((x >> src) & 1) << j))
    }
}

impl fmt::Display for BitPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for BitPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("cannot parse '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(&image)
    }
}
