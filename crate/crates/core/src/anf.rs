//! Algebraic normal form and the Möbius transform.

use std::fmt;
use std::str::FromStr;

use crate::bits;
use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Coefficient vector of a polynomial in `F_2[X_1..X_n]/(X_i^2 + X_i)`.
/// Bit `alpha` is the coefficient of the monomial `X^alpha`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AnfPoly {
    n: usize,
    coeffs: Vec<u64>,
}

impl AnfPoly {
    pub fn zero(n: usize) -> Result<Self> {
        let tt = TruthTable::zero(n)?;
        Ok(Self { n, coeffs: tt.words().to_vec() })
    }

    /// Polynomial with the given monomial masks set.
    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut p = Self::zero(n)?;
        for m in monomials {
            if m >> n != 0 {
                return Err(Error::InvalidParams(format!("monomial {m:#b} exceeds {n} variables")));
            }
            bits::flip(&mut p.coeffs, m as usize);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: u64) -> bool {
        bits::get(&self.coeffs, mask as usize)
    }

    pub fn is_zero(&self) -> bool {
        bits::is_zero(&self.coeffs)
    }

    /// Set monomial masks in (degree, mask) order.
    pub fn monomials(&self) -> Vec<u64> {
        let mut out: Vec<u64> = (0..1u64 << self.n).filter(|&m| self.coeff(m)).collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    /// Algebraic degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        let mut best = 0;
        for (w, &word) in self.coeffs.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                best = best.max(((w << 6) | b).count_ones() as usize);
            }
        }
        best
    }
}

/// Truth table to ANF.
pub fn mobius(tt: &TruthTable) -> AnfPoly {
    let mut coeffs = tt.words().to_vec();
    bits::mobius_in_place(&mut coeffs, tt.n());
    AnfPoly { n: tt.n(), coeffs }
}

/// ANF to truth table.
pub fn mobius_inv(anf: &AnfPoly) -> TruthTable {
    let mut words = anf.coeffs.clone();
    bits::mobius_in_place(&mut words, anf.n);
    TruthTable::from_words(anf.n, words).expect("transform preserves the table shape")
}

/// Algebraic degree of a truth table.
pub fn degree(tt: &TruthTable) -> usize {
    mobius(tt).degree()
}

/// Formats as `1 + x1 + x2*x3`, terms sorted by (degree, mask); `0` when empty.
impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials()
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.n)
                        .filter(|i| (m >> i) & 1 == 1)
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl AnfPoly {
    /// Parses the textual form produced by `Display` for an `n`-variable ring.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let s = s.trim();
        if s == "0" {
            return Self::zero(n);
        }
        let mut masks = Vec::new();
        for term in s.split('+').map(str::trim) {
            if term == "1" {
                masks.push(0);
                continue;
            }
            let mut mask = 0u64;
            for factor in term.split('*').map(str::trim) {
                let idx = factor
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| (1..=n).contains(&i))
                    .ok_or_else(|| bad(format!("bad factor '{factor}'")))?;
                mask |= 1 << (idx - 1);
            }
            masks.push(mask);
        }
        Self::from_monomials(n, masks)
    }
}

impl FromStr for AnfPoly {
    type Err = Error;

    /// Parses using the largest variable index mentioned as the ring size.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split(|c: char| !c.is_ascii_digit() && c != 'x')
            .filter_map(|t| t.strip_prefix('x')?.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        Self::parse(n, s)
    }
}
