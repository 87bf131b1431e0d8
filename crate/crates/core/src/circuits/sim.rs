//! Bit-parallel simulation and equivalence certificates.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::netlist::{Netlist, Signal};
use crate::bits::VAR_MASKS;
use crate::constructions::Construction;
use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Largest input count for exhaustive verification.
pub const N_MAX_EXHAUSTIVE: usize = 20;

/// Anything a netlist can be compared against.
pub trait BoolOracle {
    fn num_vars(&self) -> usize;
    /// `x[j]` is `X_{j+1}`.
    fn eval_bits(&self, x: &[bool]) -> bool;
}

impl BoolOracle for TruthTable {
    fn num_vars(&self) -> usize {
        self.n()
    }

    fn eval_bits(&self, x: &[bool]) -> bool {
        let idx = x.iter().enumerate().fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i));
        self.get(idx)
    }
}

impl BoolOracle for Construction {
    fn num_vars(&self) -> usize {
        self.n()
    }

    fn eval_bits(&self, x: &[bool]) -> bool {
        self.eval_unchecked(x)
    }
}

/// Evaluates 64 input vectors at once; `inputs[i]` holds input `i` of every lane.
pub fn simulate_words(nl: &Netlist, inputs: &[u64]) -> Result<u64> {
    if inputs.len() != nl.num_inputs() {
        return Err(Error::VarMismatch { left: nl.num_inputs(), right: inputs.len() });
    }
    let mut values = Vec::with_capacity(nl.gates().len());
    let get = |s: Signal, values: &[u64]| match s {
        Signal::Input(i) => inputs[i],
        Signal::Gate(g) => values[g],
    };
    for g in nl.gates() {
        let v = g.op.apply(get(g.a, &values), get(g.b, &values));
        values.push(v);
    }
    Ok(get(nl.output(), &values))
}

/// Output at one assignment (`x[j]` is `X_{j+1}`).
pub fn simulate(nl: &Netlist, x: &[bool]) -> Result<bool> {
    let words: Vec<u64> = x.iter().map(|&b| b as u64).collect();
    Ok(simulate_words(nl, &words)? & 1 == 1)
}

/// The netlist's function as a truth table.
pub fn netlist_truth_table(nl: &Netlist) -> Result<TruthTable> {
    let n = nl.num_inputs();
    if n > crate::N_MAX_TT {
        return Err(Error::VarCount { n, max: crate::N_MAX_TT });
    }
    let blocks = (1u64 << n).div_ceil(64);
    let mut words = Vec::with_capacity(blocks as usize);
    for block in 0..blocks {
        words.push(simulate_words(nl, &block_inputs(n, block))?);
    }
    if n < 6 {
        words[0] &= (1u64 << (1 << n)) - 1;
    }
    TruthTable::from_words(n, words)
}

/// Inputs for points `64 * block .. 64 * block + 63`.
fn block_inputs(n: usize, block: u64) -> Vec<u64> {
    (0..n)
        .map(|i| if i < 6 { VAR_MASKS[i] } else if (block >> (i - 6)) & 1 == 1 { u64::MAX } else { 0 })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every point (`n <= 20`).
    Exhaustive,
    /// `samples` uniformly random points from a seeded generator.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub mode: VerifyMode,
    pub points_checked: u64,
    pub passed: bool,
    /// First disagreeing input, `x[j]` = `X_{j+1}`.
    pub counterexample: Option<Vec<bool>>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            VerifyMode::Exhaustive => writeln!(f, "mode = exhaustive")?,
            VerifyMode::Sampled { samples, seed } => {
                writeln!(f, "mode = sampled")?;
                writeln!(f, "samples = {samples}")?;
                writeln!(f, "seed = {seed}")?;
            }
        }
        writeln!(f, "points_checked = {}", self.points_checked)?;
        writeln!(f, "result = {}", if self.passed { "pass" } else { "fail" })?;
        if let Some(x) = &self.counterexample {
            let bits: String = x.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "counterexample = {bits}")?;
        }
        Ok(())
    }
}

fn lanes(words: &[u64], lane: usize) -> Vec<bool> {
    words.iter().map(|w| (w >> lane) & 1 == 1).collect()
}

/// Compares the netlist with the oracle on all points or on a seeded sample.
pub fn verify_equivalence<O: BoolOracle + ?Sized>(nl: &Netlist, oracle: &O, mode: VerifyMode) -> Result<Certificate> {
    let n = nl.num_inputs();
    if oracle.num_vars() != n {
        return Err(Error::VarMismatch { left: n, right: oracle.num_vars() });
    }
    let mut checked = 0u64;
    let mut check_batch = |inputs: &[u64], count: usize| -> Result<Option<Vec<bool>>> {
        let got = simulate_words(nl, inputs)?;
        for lane in 0..count {
            let x = lanes(inputs, lane);
            checked += 1;
            if ((got >> lane) & 1 == 1) != oracle.eval_bits(&x) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    };
    let counterexample = match mode {
        VerifyMode::Exhaustive => {
            if n > N_MAX_EXHAUSTIVE {
                return Err(Error::CapExceeded(format!(
                    "exhaustive verification limited to n <= {N_MAX_EXHAUSTIVE}; use sampled mode"
                )));
            }
            let total = 1u64 << n;
            let mut found = None;
            for block in 0..total.div_ceil(64) {
                let count = (total - 64 * block).min(64) as usize;
                if let Some(x) = check_batch(&block_inputs(n, block), count)? {
                    found = Some(x);
                    break;
                }
            }
            found
        }
        VerifyMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            let mut left = samples;
            while left > 0 {
                let count = left.min(64) as usize;
                let inputs: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
                if let Some(x) = check_batch(&inputs, count)? {
                    found = Some(x);
                    break;
                }
                left -= count as u64;
            }
            found
        }
    };
    Ok(Certificate { mode, points_checked: checked, passed: counterexample.is_none(), counterexample })
}
