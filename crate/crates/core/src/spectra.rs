//! Walsh spectrum and the metrics derived from it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::anf;
use crate::error::{Error, Result};
use crate::immunity::{self, AiLimits, AiResult, AnnihilatorWitness};
use crate::truth_table::TruthTable;

/// All `2^n` values `W_f(a) = sum_x (-1)^(f(x) + <a, x>)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, alpha: u64) -> i64 {
        self.values[alpha as usize]
    }

    pub fn max_abs(&self) -> u64 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }
}

/// In-place fast Walsh-Hadamard transform of a +-1 sign vector.
pub fn walsh_transform(f: &TruthTable) -> WalshSpectrum {
    let n = f.n();
    let mut values: Vec<i64> = f.iter().map(|b| if b { -1 } else { 1 }).collect();
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    WalshSpectrum { n, values }
}

/// A non-negative number `numerator / 2^exponent` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: u64,
    exponent: u32,
}

impl DyadicRational {
    pub fn new(numerator: u64, exponent: u32) -> Self {
        if numerator == 0 {
            return Self { numerator: 0, exponent: 0 };
        }
        let shift = numerator.trailing_zeros().min(exponent);
        Self { numerator: numerator >> shift, exponent: exponent - shift }
    }

    /// `2^-e`
    pub fn pow2_neg(e: u32) -> Self {
        Self { numerator: 1, exponent: e }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The `e` with `self == 2^-e`, if it is such a power.
    pub fn as_pow2_neg(&self) -> Option<u32> {
        (self.numerator == 1).then_some(self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / 2f64.powi(self.exponent as i32)
    }

    pub fn scale_pow2(&self, e: i32) -> Self {
        if e >= 0 {
            let e = e as u32;
            let drop = e.min(self.exponent);
            Self::new(self.numerator << (e - drop), self.exponent - drop)
        } else {
            Self::new(self.numerator, self.exponent + e.unsigned_abs())
        }
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = (self.numerator as u128) << (e - self.exponent);
        let b = (other.numerator as u128) << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("expected a/2^e, got {s:?}"));
        let (a, e) = s.trim().split_once("/2^").ok_or_else(bad)?;
        Ok(Self::new(a.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?))
    }
}

pub fn nonlinearity(s: &WalshSpectrum) -> u64 {
    (1u64 << s.n) / 2 - s.max_abs() / 2
}

pub fn linear_bias(s: &WalshSpectrum) -> DyadicRational {
    DyadicRational::new(s.max_abs(), s.n as u32)
}

/// Largest `m` with `W(a) = 0` for every `wt(a) <= m`; `-1` if unbalanced.
pub fn resiliency_order(s: &WalshSpectrum) -> i32 {
    let mut first_bad = s.n as u32 + 1;
    for (alpha, &w) in s.values.iter().enumerate() {
        if w != 0 {
            first_bad = first_bad.min(alpha.count_ones());
        }
    }
    first_bad as i32 - 1
}

pub fn is_bent(s: &WalshSpectrum) -> bool {
    if s.n % 2 == 1 {
        return false;
    }
    let target = 1u64 << (s.n / 2);
    s.values.iter().all(|w| w.unsigned_abs() == target)
}

/// `floor(2^(n/2 - 1))`, the numerator of the covering-radius bound
/// `chi(n) = floor(2^(n/2 - 1)) / 2^(n-1)`.
fn chi_numerator(n: usize) -> u64 {
    if n < 2 {
        0
    } else {
        (1u64 << (n - 2)).isqrt()
    }
}

/// `chi(n)` as an exact value.
pub fn chi(n: usize) -> DyadicRational {
    DyadicRational::new(chi_numerator(n), n as u32 - 1)
}

/// Whether `chi(n) <= LB(f) <= 2 chi(n)`.
pub fn almost_optimal_lb(s: &WalshSpectrum) -> bool {
    // LB = max|W| / 2^n and chi = c / 2^(n-1)
    let c = chi_numerator(s.n);
    let m = s.max_abs();
    2 * c <= m && m <= 4 * c
}

/// Exponent of the power of two dividing every Walsh value of an
/// `m`-resilient function of degree `d`.
pub fn divisibility_exponent(n: usize, m: usize, d: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::InvalidParams("degree must be at least 1".into()));
    }
    if m + 2 > n {
        return Err(Error::InvalidParams(format!("resiliency order {m} exceeds n - 2 = {}", n as i64 - 2)));
    }
    Ok(m + 2 + (n - m - 2) / d)
}

/// Whether every Walsh value is divisible by `2^(m + 2 + floor((n-m-2)/d))`.
pub fn divisibility_check(s: &WalshSpectrum, m: usize, d: usize) -> Result<bool> {
    let e = divisibility_exponent(s.n, m, d)?;
    if e >= 63 {
        return Ok(s.values.iter().all(|&w| w == 0 || w.trailing_zeros() as usize >= e));
    }
    let modulus = 1i64 << e;
    Ok(s.values.iter().all(|w| w % modulus == 0))
}

/// Degree bound for `m`-resilient functions on `n` variables.
pub fn siegenthaler_check(n: usize, m: usize, d: usize) -> bool {
    (m + 1 == n && d == 1) || (m + 2 <= n && d + m < n)
}

/// What `analyze` computes beyond the spectrum.
#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    /// Algebraic immunity under these limits.
    pub ai: Option<AiLimits>,
    /// Fast algebraic immunity, refused above this many variables.
    pub fai: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub exponent: usize,
    pub holds: bool,
}

/// Every metric of one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub n: usize,
    pub weight: u64,
    pub balanced: bool,
    pub nonlinearity: u64,
    pub linear_bias: DyadicRational,
    pub resiliency_order: i32,
    pub degree: usize,
    pub bent: bool,
    pub almost_optimal_lb: bool,
    pub ai: Option<AiResult>,
    pub fai: Option<usize>,
    /// Walsh divisibility for the measured order and degree, when it applies.
    pub divisibility: Option<DivisibilityCheck>,
}

impl PropertyReport {
    pub fn witness(&self) -> Option<&AnnihilatorWitness> {
        match &self.ai {
            Some(AiResult::Exact { witness, .. }) => Some(witness),
            _ => None,
        }
    }
}

pub fn analyze(f: &TruthTable, options: &AnalyzeOptions) -> Result<PropertyReport> {
    let s = walsh_transform(f);
    let resiliency = resiliency_order(&s);
    let degree = anf::degree(f);
    let divisibility = if resiliency >= 0 && degree >= 1 {
        let m = resiliency as usize;
        divisibility_exponent(f.n(), m, degree).ok().map(|exponent| DivisibilityCheck {
            exponent,
            holds: divisibility_check(&s, m, degree).unwrap_or(false),
        })
    } else {
        None
    };
    let ai = options.ai.as_ref().map(|limits| immunity::algebraic_immunity_with(f, limits)).transpose()?;
    let fai = options.fai.map(|cap| immunity::fast_algebraic_immunity_with(f, cap)).transpose()?;
    Ok(PropertyReport {
        n: f.n(),
        weight: f.weight(),
        balanced: f.is_balanced(),
        nonlinearity: nonlinearity(&s),
        linear_bias: linear_bias(&s),
        resiliency_order: resiliency,
        degree,
        bent: is_bent(&s),
        almost_optimal_lb: almost_optimal_lb(&s),
        ai,
        fai,
        divisibility,
    })
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "weight = {}", self.weight)?;
        writeln!(f, "balanced = {}", self.balanced)?;
        writeln!(f, "nonlinearity = {}", self.nonlinearity)?;
        writeln!(f, "linear_bias = {}", self.linear_bias)?;
        writeln!(f, "resiliency_order = {}", self.resiliency_order)?;
        writeln!(f, "degree = {}", self.degree)?;
        writeln!(f, "bent = {}", self.bent)?;
        writeln!(f, "almost_optimal_lb = {}", self.almost_optimal_lb)?;
        match &self.divisibility {
            Some(d) => writeln!(f, "divisibility_exponent_checked = {} ({})", d.exponent, if d.holds { "holds" } else { "fails" })?,
            None => writeln!(f, "divisibility_exponent_checked = none")?,
        }
        if let Some(ai) = &self.ai {
            writeln!(f, "ai = {ai}")?;
            if let Some(w) = self.witness() {
                writeln!(f, "ai_witness_side = {}", w.side)?;
                writeln!(f, "ai_witness = {}", w.g)?;
            }
        }
        if let Some(fai) = self.fai {
            writeln!(f, "fai = {fai}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_transforms() {
        let s = walsh_transform(&TruthTable::zero(3).unwrap());
        assert_eq!(s.values(), &[8, 0, 0, 0, 0, 0, 0, 0]);
        let s = walsh_transform(&TruthTable::variable(1, 1).unwrap());
        assert_eq!(s.values(), &[0, 2]);
        assert_eq!(resiliency_order(&s), 0);
        assert_eq!(linear_bias(&s).to_string(), "1/2^0");
    }

    #[test]
    fn dyadic_normalizes_and_orders() {
        assert_eq!(DyadicRational::new(8, 5), DyadicRational::pow2_neg(2));
        assert_eq!(DyadicRational::new(0, 7).to_string(), "0/2^0");
        assert!(DyadicRational::pow2_neg(3) < DyadicRational::new(3, 4));
        assert_eq!("3/2^4".parse::<DyadicRational>().unwrap(), DyadicRational::new(3, 4));
        assert_eq!(DyadicRational::pow2_neg(3).scale_pow2(-2), DyadicRational::pow2_neg(5));
        assert_eq!(DyadicRational::pow2_neg(3).scale_pow2(4), DyadicRational::new(2, 0));
    }

    #[test]
    fn parity_is_maximally_resilient() {
        let f = TruthTable::from_fn(6, |x| x.count_ones() % 2 == 1).unwrap();
        let s = walsh_transform(&f);
        assert_eq!(resiliency_order(&s), 5);
        assert_eq!(nonlinearity(&s), 0);
        assert!(!almost_optimal_lb(&s));
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(1), DyadicRational::new(0, 0));
        assert_eq!(chi(4), DyadicRational::new(2, 3));
        assert_eq!(chi(5), DyadicRational::new(2, 4));
    }

    #[test]
    fn divisibility_preconditions() {
        let s = walsh_transform(&TruthTable::from_fn(3, |x| x.count_ones() % 2 == 1).unwrap());
        assert!(divisibility_check(&s, 2, 1).is_err());
        assert!(divisibility_check(&s, 0, 0).is_err());
        assert_eq!(divisibility_exponent(5, 1, 3).unwrap(), 3);
    }

    #[test]
    fn siegenthaler_examples() {
        assert!(siegenthaler_check(5, 1, 3));
        assert!(siegenthaler_check(7, 6, 1));
        assert!(!siegenthaler_check(5, 1, 4));
        assert!(!siegenthaler_check(7, 6, 2));
    }
}
