//! Text file format for truth tables.
//!
//! ```text
//! n 5
//! tt 3c96a569
//! ```
//!
//! Hex character `p` encodes table indices `4p..4p+3`; the most significant bit
//! of the nibble holds index `4p`. Tables with fewer than four entries are
//! padded with zero bits inside a single character.

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Variable ordering used by a file. Internal storage is always LSB-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarOrder {
    /// `X_1` is the least significant index bit.
    #[default]
    LsbFirst,
    /// `X_1` is the most significant index bit.
    MsbFirst,
}

pub fn hex_len(n: usize) -> usize {
    ((1usize << n) / 4).max(1)
}

pub fn to_hex(tt: &TruthTable) -> String {
    let len = tt.len() as usize;
    (0..hex_len(tt.n()))
        .map(|p| {
            let nibble = (0..4).fold(0u32, |acc, k| {
                let idx = 4 * p + k;
                let bit = idx < len && tt.get(idx);
                acc | (u32::from(bit) << (3 - k))
            });
            char::from_digit(nibble, 16).expect("nibble < 16")
        })
        .collect()
}

pub fn from_hex(n: usize, hex: &str) -> Result<TruthTable> {
    let expected = hex_len(n);
    if hex.len() != expected {
        return Err(Error::Parse {
            line: 2,
            msg: format!("expected {expected} hex characters for n = {n}, found {}", hex.len()),
        });
    }
    let nibbles = hex
        .chars()
        .map(|c| {
            c.to_digit(16)
                .ok_or_else(|| Error::Parse { line: 2, msg: format!("invalid hex character '{c}'") })
        })
        .collect::<Result<Vec<u32>>>()?;
    let len = 1usize << n;
    if len < 4 {
        let pad = nibbles[0] & ((1 << (4 - len)) - 1);
        if pad != 0 {
            return Err(Error::Parse { line: 2, msg: "padding bits must be zero".into() });
        }
    }
    TruthTable::from_fn(n, |x| {
        let x = x as usize;
        (nibbles[x / 4] >> (3 - x % 4)) & 1 == 1
    })
}

pub fn write_function(tt: &TruthTable, order: VarOrder) -> String {
    let tt = match order {
        VarOrder::LsbFirst => tt.clone(),
        VarOrder::MsbFirst => tt.reverse_variables(),
    };
    format!("n {}\ntt {}\n", tt.n(), to_hex(&tt))
}

pub fn read_function(text: &str, order: VarOrder) -> Result<TruthTable> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (l1, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing 'n <count>' line".into() })?;
    let n = first
        .strip_prefix("n ")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse { line: l1, msg: format!("expected 'n <count>', found '{first}'") })?;
    let (l2, second) = lines
        .next()
        .ok_or(Error::Parse { line: l1 + 1, msg: "missing 'tt <hex>' line".into() })?;
    let hex = second
        .strip_prefix("tt ")
        .map(str::trim)
        .ok_or_else(|| Error::Parse { line: l2, msg: format!("expected 'tt <hex>', found '{second}'") })?;
    if let Some((l3, _)) = lines.next() {
        return Err(Error::Parse { line: l3, msg: "unexpected trailing content".into() });
    }
    let tt = from_hex(n, hex).map_err(|e| match e {
        Error::Parse { msg, .. } => Error::Parse { line: l2, msg },
        Error::VarCount { n, max } => Error::Parse { line: l1, msg: format!("n = {n} outside 1..={max}") },
        other => other,
    })?;
    Ok(match order {
        VarOrder::LsbFirst => tt,
        VarOrder::MsbFirst => tt.reverse_variables(),
    })
}
