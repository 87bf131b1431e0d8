//! Function families: majority, Maiorana-McFarland bent functions, the
//! direct parity/bent constructions, the iterated construction, and the
//! trade-off solver that picks the smallest instance for given targets.

mod expr;
pub mod families;
mod tradeoff;

use std::fmt;
use std::str::FromStr;

pub use expr::{Construction, StepOutput};
pub use tradeoff::{
    gate_lower_bound, solve_tradeoff, table1, CaseSolution, TradeoffCase, TradeoffSolution, TABLE1_TARGETS,
};

use crate::error::{Error, Result};
use crate::perm::BitPermutation;
use crate::truth_table::TruthTable;

/// Threshold function `Maj_n`.
pub fn majority(n: usize) -> Result<TruthTable> {
    families::majority(n)?.truth_table()
}

/// `<psi(X), Y> + h(X)` on `2k` variables (X low, Y high).
pub fn mm_bent(psi: &BitPermutation, h: &TruthTable) -> Result<TruthTable> {
    if psi.len() < 2 {
        return Err(Error::InvalidParams(format!("Maiorana-McFarland needs k >= 2, got {}", psi.len())));
    }
    expr::mm_table(psi, h)
}

pub fn f5() -> TruthTable {
    Construction::F5.truth_table().expect("5 variables")
}

pub fn parity_mm(m: usize, n: usize, psi: &BitPermutation) -> Result<TruthTable> {
    families::parity_mm(m, n, psi)?.truth_table()
}

pub fn parity_f5_mm(m: usize, n: usize, psi: &BitPermutation) -> Result<TruthTable> {
    families::parity_f5_mm(m, n, psi)?.truth_table()
}

/// `(G, H)` on `n + 3` variables.
pub fn step(g: &TruthTable, h: &TruthTable) -> Result<(TruthTable, TruthTable)> {
    if g.n() != h.n() {
        return Err(Error::VarMismatch { left: g.n(), right: h.n() });
    }
    expr::step_tables(g, h)
}

/// `t` steps followed by a concatenation; `n + 3t + 1` variables.
pub fn iter(g: &TruthTable, h: &TruthTable, t: usize) -> Result<TruthTable> {
    if g.n() != h.n() {
        return Err(Error::VarMismatch { left: g.n(), right: h.n() });
    }
    let total = g.n() + 3 * t + 1;
    if total > crate::N_MAX_TT {
        return Err(Error::VarCount { n: total, max: crate::N_MAX_TT });
    }
    let (mut g, mut h) = (g.clone(), h.clone());
    for _ in 0..t {
        (g, h) = expr::step_tables(&g, &h)?;
    }
    TruthTable::concat(&g, &h)
}

pub fn iter_parity_mm(n: usize, t: usize, psi: &BitPermutation) -> Result<TruthTable> {
    families::iter_parity_mm(n, t, psi)?.truth_table()
}

pub fn iter_gadget_mm(n: usize, t: usize, psi: &BitPermutation) -> Result<TruthTable> {
    families::iter_gadget_mm(n, t, psi)?.truth_table()
}

/// How the bit permutation of the bent block is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum PsiSpec {
    #[default]
    Identity,
    /// Seeded shuffle.
    Random(u64),
    Explicit(BitPermutation),
}

impl PsiSpec {
    /// The permutation for a block of size `k`.
    pub fn resolve(&self, k: usize) -> Result<BitPermutation> {
        match self {
            PsiSpec::Identity => Ok(BitPermutation::identity(k)),
            PsiSpec::Random(seed) => Ok(BitPermutation::random(k, *seed)),
            PsiSpec::Explicit(p) if p.len() == k => Ok(p.clone()),
            PsiSpec::Explicit(p) => Err(Error::InvalidPermutation(format!(
                "this construction needs a permutation of size {k}, got {} entries",
                p.len()
            ))),
        }
    }
}

impl FromStr for PsiSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "identity" {
            return Ok(PsiSpec::Identity);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(PsiSpec::Random)
                .map_err(|_| Error::InvalidPermutation(format!("bad seed in {s:?}")));
        }
        s.parse().map(PsiSpec::Explicit)
    }
}

impl fmt::Display for PsiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiSpec::Identity => write!(f, "identity"),
            PsiSpec::Random(seed) => write!(f, "random:{seed}"),
            PsiSpec::Explicit(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Maj,
    Mm,
    F5,
    ParityMm,
    ParityF5Mm,
    Step,
    Iter,
    IterParityMm,
    IterGadgetMm,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Maj,
        Family::Mm,
        Family::F5,
        Family::ParityMm,
        Family::ParityF5Mm,
        Family::Step,
        Family::Iter,
        Family::IterParityMm,
        Family::IterGadgetMm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Maj => "maj",
            Family::Mm => "mm",
            Family::F5 => "f5",
            Family::ParityMm => "parity_mm",
            Family::ParityF5Mm => "parity_f5_mm",
            Family::Step => "step",
            Family::Iter => "iter",
            Family::IterParityMm => "iter_parity_mm",
            Family::IterGadgetMm => "iter_gadget_mm",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.iter().copied().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            Error::InvalidParams(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// Everything needed to build one family instance.
///
/// `n` is the total variable count, except for `step` and `iter` where it is
/// the size of the seeds (the output has `n + 3` resp. `n + 3t + 1`
/// variables). For `mm`, `n = 2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    pub family: Family,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub t: Option<usize>,
    pub psi: PsiSpec,
    /// Which output of `step`.
    pub half: StepOutput,
}

impl ConstructionParams {
    pub fn new(family: Family) -> Self {
        Self { family, n: None, m: None, t: None, psi: PsiSpec::Identity, half: StepOutput::G }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_psi(mut self, psi: PsiSpec) -> Self {
        self.psi = psi;
        self
    }

    fn need(&self, v: Option<usize>, flag: &str) -> Result<usize> {
        v.ok_or_else(|| Error::InvalidParams(format!("family {} requires --{flag}", self.family)))
    }

    fn forbid(&self, v: Option<usize>, flag: &str) -> Result<()> {
        match v {
            Some(_) => Err(Error::InvalidParams(format!("family {} does not take --{flag}", self.family))),
            None => Ok(()),
        }
    }

    /// Validates the parameters and builds the construction tree.
    pub fn build(&self) -> Result<Construction> {
        match self.family {
            Family::Maj => {
                self.forbid(self.m, "m")?;
                self.forbid(self.t, "t")?;
                families::majority(self.need(self.n, "n")?)
            }
            Family::Mm => {
                self.forbid(self.m, "m")?;
                self.forbid(self.t, "t")?;
                let n = self.need(self.n, "n")?;
                if n % 2 == 1 {
                    return Err(Error::InvalidParams(format!("mm needs an even n, got {n}")));
                }
                families::mm_majority(&self.psi.resolve(n / 2)?)
            }
            Family::F5 => {
                self.forbid(self.m, "m")?;
                self.forbid(self.t, "t")?;
                if let Some(n) = self.n.filter(|&n| n != 5) {
                    return Err(Error::InvalidParams(format!("f5 has 5 variables, got --n {n}")));
                }
                Ok(Construction::F5)
            }
            Family::ParityMm => {
                self.forbid(self.t, "t")?;
                let (m, n) = (self.need(self.m, "m")?, self.need(self.n, "n")?);
                let k = n.saturating_sub(m + 1) / 2;
                families::parity_mm(m, n, &self.psi.resolve(k)?)
            }
            Family::ParityF5Mm => {
                self.forbid(self.t, "t")?;
                let (m, n) = (self.need(self.m, "m")?, self.need(self.n, "n")?);
                let k = n.saturating_sub(m + 4) / 2;
                families::parity_f5_mm(m, n, &self.psi.resolve(k)?)
            }
            Family::Step => {
                self.forbid(self.t, "t")?;
                let (g, h) = self.seeds()?;
                families::step(g, h, self.half)
            }
            Family::Iter => {
                let t = self.need(self.t, "t")?;
                let (g, h) = self.seeds()?;
                families::iter(g, h, t)
            }
            Family::IterParityMm | Family::IterGadgetMm => {
                self.forbid(self.m, "m")?;
                let (n, t) = (self.need(self.n, "n")?, self.need(self.t, "t")?);
                let seed = n.saturating_sub(3 * t + 1);
                if self.family == Family::IterParityMm {
                    families::iter_parity_mm(n, t, &self.psi.resolve(seed.saturating_sub(1) / 2)?)
                } else {
                    families::iter_gadget_mm(n, t, &self.psi.resolve(seed.saturating_sub(4) / 2)?)
                }
            }
        }
    }

    fn seeds(&self) -> Result<(Construction, Construction)> {
        let (m, n) = (self.need(self.m, "m")?, self.need(self.n, "n")?);
        families::seed_pair(m, n, |k| self.psi.resolve(k))
    }
}
