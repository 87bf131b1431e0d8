//! Least-size parameters meeting resiliency, bias and immunity targets.

use std::fmt;

use super::expr::Construction;
use super::families;
use crate::error::{Error, Result};
use crate::perm::BitPermutation;

/// The four families a target can be met with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TradeoffCase {
    /// Parity variables plus a bent block.
    Even = 1,
    /// Parity variables, `f5` and a bent block.
    Odd = 2,
    /// Iterated construction from complementary seeds.
    IterOdd = 3,
    /// Iterated construction from the gadget seeds.
    IterEven = 4,
}

impl TradeoffCase {
    pub const ALL: [TradeoffCase; 4] = [Self::Even, Self::Odd, Self::IterOdd, Self::IterEven];

    pub fn id(self) -> usize {
        self as usize
    }

    pub fn from_id(id: usize) -> Result<Self> {
        Self::ALL.get(id.wrapping_sub(1)).copied().ok_or_else(|| Error::InvalidParams(format!("case must be 1..=4, got {id}")))
    }
}

/// Achieved parameters of one case: `n` variables, resiliency `m`, linear
/// bias `2^-x`, algebraic immunity at least `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseSolution {
    pub case: TradeoffCase,
    pub n: usize,
    pub m: usize,
    pub x: usize,
    pub a: usize,
    /// Number of iteration rounds (cases 3 and 4).
    pub t: Option<usize>,
}

impl CaseSolution {
    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.n, self.m, self.x, self.a)
    }

    /// The function realising this solution.
    pub fn construction(&self, psi: &BitPermutation) -> Result<Construction> {
        match self.case {
            TradeoffCase::Even => families::parity_mm(self.m, self.n, psi),
            TradeoffCase::Odd => families::parity_f5_mm(self.m, self.n, psi),
            TradeoffCase::IterOdd => families::iter_parity_mm(self.n, self.t.unwrap_or(0), psi),
            TradeoffCase::IterEven => families::iter_gadget_mm(self.n, self.t.unwrap_or(0), psi),
        }
    }

    /// Size of the permutation the construction needs.
    pub fn psi_len(&self) -> usize {
        let t = self.t.unwrap_or(0);
        match self.case {
            TradeoffCase::Even => (self.n - self.m - 1) / 2,
            TradeoffCase::Odd => (self.n - self.m - 4) / 2,
            TradeoffCase::IterOdd => (self.n - 3 * t - 2) / 2,
            TradeoffCase::IterEven => (self.n - 3 * t - 5) / 2,
        }
    }
}

impl fmt::Display for CaseSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.m, self.x, self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffSolution {
    pub targets: (usize, usize, usize),
    pub cases: Vec<CaseSolution>,
    pub selected: TradeoffCase,
}

impl TradeoffSolution {
    pub fn case(&self, case: TradeoffCase) -> &CaseSolution {
        self.cases.iter().find(|c| c.case == case).expect("all four cases are solved")
    }

    pub fn selected(&self) -> &CaseSolution {
        self.case(self.selected)
    }
}

/// Least `n >= lower` with `n % 2 == parity`.
fn with_parity(lower: usize, parity: usize) -> usize {
    if lower % 2 == parity % 2 {
        lower
    } else {
        lower + 1
    }
}

fn solve_case(case: TradeoffCase, m0: usize, x0: usize, a0: usize) -> CaseSolution {
    match case {
        TradeoffCase::Even => {
            let n = with_parity((m0 + 1 + 2 * x0).max(m0 + 1 + 4 * a0), m0 + 1);
            CaseSolution { case, n, m: m0, x: (n - m0 - 1) / 2, a: (n - m0 - 1).div_ceil(4), t: None }
        }
        TradeoffCase::Odd => {
            // f5 is already 1-resilient, so resiliency 0 is served by m = 1
            let m = m0.max(1);
            let n = with_parity((m + 2 * x0).max(m + 4 + 4 * a0), m);
            CaseSolution { case, n, m, x: (n - m) / 2, a: (n - m - 4).div_ceil(4), t: None }
        }
        TradeoffCase::IterOdd => {
            let t = m0.div_ceil(2);
            // n - 3t - 1 odd  <=>  n ≡ t (mod 2)
            let n = with_parity((2 * x0 + t + 2).max(4 * a0 + 3 * t + 2), t);
            CaseSolution { case, n, m: 2 * t, x: (n - t - 2) / 2, a: (n - 3 * t - 2).div_ceil(4), t: Some(t) }
        }
        TradeoffCase::IterEven => {
            let t = m0.saturating_sub(1).div_ceil(2);
            let n = with_parity((2 * x0 + t + 1).max(4 * a0 + 3 * t + 5), t + 1);
            CaseSolution { case, n, m: 2 * t + 1, x: (n - t - 1) / 2, a: (n - 3 * t - 5).div_ceil(4), t: Some(t) }
        }
    }
}

/// For each family, the least `n` whose guaranteed parameters meet the
/// targets `m >= m0`, `x >= x0`, `a >= a0`.
pub fn solve_tradeoff(m0: usize, x0: usize, a0: usize) -> Result<TradeoffSolution> {
    if x0 == 0 || a0 == 0 {
        return Err(Error::InvalidParams("bias and immunity targets must be at least 1".into()));
    }
    let cases: Vec<CaseSolution> = TradeoffCase::ALL.iter().map(|&c| solve_case(c, m0, x0, a0)).collect();
    let selected = cases.iter().min_by_key(|c| (c.n, c.case)).expect("four cases").case;
    Ok(TradeoffSolution { targets: (m0, x0, a0), cases, selected })
}

/// Gates any circuit meeting the targets needs: it is non-degenerate on at
/// least `max(m0 + 1, 2 x0, 2 a0 - 1)` variables.
pub fn gate_lower_bound(m0: usize, x0: usize, a0: usize) -> usize {
    (m0 + 1).max(2 * x0).max((2 * a0).saturating_sub(1)).saturating_sub(1)
}

/// The twelve `(m0, x0, a0)` targets of the reference trade-off table.
pub const TABLE1_TARGETS: [(usize, usize, usize); 12] = [
    (4, 6, 3),
    (4, 6, 4),
    (4, 9, 3),
    (4, 9, 4),
    (4, 12, 3),
    (4, 12, 4),
    (7, 6, 3),
    (7, 6, 4),
    (7, 9, 3),
    (7, 9, 4),
    (7, 12, 3),
    (7, 12, 4),
];

pub fn table1() -> Vec<TradeoffSolution> {
    TABLE1_TARGETS
        .iter()
        .map(|&(m0, x0, a0)| solve_tradeoff(m0, x0, a0).expect("targets are positive"))
        .collect()
}
