//! Symbolic description of a constructed function.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::BitPermutation;
use crate::truth_table::{self, TruthTable, N_MAX_TT};

/// Which output of one resiliency-raising step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepOutput {
    G,
    H,
}

/// A function built from the primitive families by composition.
///
/// Every node occupies a contiguous block of variables; composite nodes lay
/// their children out from the lowest bits upward, and the variables a node
/// introduces itself sit above those of its children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// `X_1 + ... + X_vars`
    Parity { vars: usize },
    /// Threshold function: 1 iff more than half of the `k` inputs are 1.
    Majority { k: usize },
    /// `<psi(X), Y> + inner(X)` with the X block low and the Y block high.
    MaioranaMcFarland { psi: BitPermutation, inner: Box<Construction> },
    /// The 5-variable 1-resilient function on `(X_1, X_2, Z_1, Z_2, Z_3)`.
    F5,
    /// `Z_1 + Z_2 + X_1 (Z_1 + Z_3)` on `(X_1, Z_1, Z_2, Z_3)`.
    GadgetG,
    /// `Z_1 + Z_3 + X_1 Z_2` on `(X_1, Z_1, Z_2, Z_3)`.
    GadgetH,
    /// XOR of the parts on consecutive disjoint variable blocks.
    DirectSum(Vec<Construction>),
    Complement(Box<Construction>),
    /// `g` when the new top variable is 0, `h` when it is 1.
    Concat(Box<Construction>, Box<Construction>),
    /// `t` steps starting from `(g, h)`, then a final concatenation.
    Iter { g: Box<Construction>, h: Box<Construction>, t: usize },
    /// One output of a single step applied to `(g, h)`.
    Step { g: Box<Construction>, h: Box<Construction>, which: StepOutput },
}

impl Construction {
    /// Number of variables.
    pub fn n(&self) -> usize {
        match self {
            Construction::Parity { vars } => *vars,
            Construction::Majority { k } => *k,
            Construction::MaioranaMcFarland { psi, .. } => 2 * psi.len(),
            Construction::F5 => 5,
            Construction::GadgetG | Construction::GadgetH => 4,
            Construction::DirectSum(parts) => parts.iter().map(Construction::n).sum(),
            Construction::Complement(inner) => inner.n(),
            Construction::Concat(g, _) => g.n() + 1,
            Construction::Iter { g, t, .. } => g.n() + 3 * t + 1,
            Construction::Step { g, .. } => g.n() + 3,
        }
    }

    /// Checks arities throughout the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            Construction::Parity { vars } | Construction::Majority { k: vars } => {
                if *vars == 0 {
                    return Err(Error::InvalidParams("a primitive needs at least one variable".into()));
                }
            }
            Construction::MaioranaMcFarland { psi, inner } => {
                inner.validate()?;
                if psi.len() != inner.n() {
                    return Err(Error::VarMismatch { left: psi.len(), right: inner.n() });
                }
                if psi.is_empty() {
                    return Err(Error::InvalidParams("empty Maiorana-McFarland block".into()));
                }
            }
            Construction::F5 | Construction::GadgetG | Construction::GadgetH => {}
            Construction::DirectSum(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidParams("empty direct sum".into()));
                }
                parts.iter().try_for_each(Construction::validate)?;
            }
            Construction::Complement(inner) => inner.validate()?,
            Construction::Concat(g, h) | Construction::Iter { g, h, .. } | Construction::Step { g, h, .. } => {
                g.validate()?;
                h.validate()?;
                if g.n() != h.n() {
                    return Err(Error::VarMismatch { left: g.n(), right: h.n() });
                }
            }
        }
        Ok(())
    }

    /// Expands to a truth table (`n <= N_MAX_TT`).
    pub fn truth_table(&self) -> Result<TruthTable> {
        let n = self.n();
        if n > N_MAX_TT {
            return Err(Error::VarCount { n, max: N_MAX_TT });
        }
        self.validate()?;
        self.table_unchecked()
    }

    fn table_unchecked(&self) -> Result<TruthTable> {
        match self {
            Construction::Parity { vars } => truth_table::parity(*vars),
            Construction::Majority { k } => majority_table(*k),
            Construction::MaioranaMcFarland { psi, inner } => mm_table(psi, &inner.table_unchecked()?),
            Construction::F5 | Construction::GadgetG | Construction::GadgetH => {
                let n = self.n();
                TruthTable::from_fn(n, |x| {
                    let bits: Vec<bool> = (0..n).map(|i| (x >> i) & 1 == 1).collect();
                    self.eval_unchecked(&bits)
                })
            }
            Construction::DirectSum(parts) => {
                let mut acc = parts[0].table_unchecked()?;
                for p in &parts[1..] {
                    acc = TruthTable::direct_sum(&acc, &p.table_unchecked()?)?;
                }
                Ok(acc)
            }
            Construction::Complement(inner) => Ok(inner.table_unchecked()?.complement()),
            Construction::Concat(g, h) => TruthTable::concat(&g.table_unchecked()?, &h.table_unchecked()?),
            Construction::Iter { g, h, t } => {
                let (mut g, mut h) = (g.table_unchecked()?, h.table_unchecked()?);
                for _ in 0..*t {
                    (g, h) = step_tables(&g, &h)?;
                }
                TruthTable::concat(&g, &h)
            }
            Construction::Step { g, h, which } => {
                let (big_g, big_h) = step_tables(&g.table_unchecked()?, &h.table_unchecked()?)?;
                Ok(match which {
                    StepOutput::G => big_g,
                    StepOutput::H => big_h,
                })
            }
        }
    }

    /// Evaluates at one point given as `n` bits (`x[j]` is `X_{j+1}`).
    /// Works for any `n`, in time linear in the size of the tree.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n() {
            return Err(Error::VarMismatch { left: self.n(), right: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> bool {
        match self {
            Construction::Parity { .. } => x.iter().filter(|&&b| b).count() % 2 == 1,
            Construction::Majority { k } => x.iter().filter(|&&b| b).count() > k / 2,
            Construction::MaioranaMcFarland { psi, inner } => {
                let k = psi.len();
                let (xs, ys) = x.split_at(k);
                let dot = (0..k).filter(|&i| xs[psi.source(i)] && ys[i]).count() % 2 == 1;
                dot ^ inner.eval_unchecked(xs)
            }
            Construction::F5 => {
                let [x1, x2, z1, z2, z3] = [x[0], x[1], x[2], x[3], x[4]];
                z1 ^ z2 ^ (x1 & (z1 ^ z3)) ^ (x2 & (z2 ^ z3)) ^ (x1 & x2 & (z1 ^ z2 ^ z3))
            }
            Construction::GadgetG => {
                let [x1, z1, z2, z3] = [x[0], x[1], x[2], x[3]];
                z1 ^ z2 ^ (x1 & (z1 ^ z3))
            }
            Construction::GadgetH => {
                let [x1, z1, z2, z3] = [x[0], x[1], x[2], x[3]];
                z1 ^ z3 ^ (x1 & z2)
            }
            Construction::DirectSum(parts) => {
                let mut offset = 0;
                let mut acc = false;
                for p in parts {
                    let w = p.n();
                    acc ^= p.eval_unchecked(&x[offset..offset + w]);
                    offset += w;
                }
                acc
            }
            Construction::Complement(inner) => !inner.eval_unchecked(x),
            Construction::Concat(g, h) => {
                let n = g.n();
                if x[n] {
                    h.eval_unchecked(&x[..n])
                } else {
                    g.eval_unchecked(&x[..n])
                }
            }
            Construction::Iter { g, h, t } => {
                let n = g.n();
                let (gv, hv) = step_rounds(g.eval_unchecked(&x[..n]), h.eval_unchecked(&x[..n]), &x[n..n + 3 * t]);
                if x[n + 3 * t] {
                    hv
                } else {
                    gv
                }
            }
            Construction::Step { g, h, which } => {
                let n = g.n();
                let (gv, hv) = step_rounds(g.eval_unchecked(&x[..n]), h.eval_unchecked(&x[..n]), &x[n..n + 3]);
                match which {
                    StepOutput::G => gv,
                    StepOutput::H => hv,
                }
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Parity { vars } => write!(f, "parity({vars})"),
            Construction::Majority { k } => write!(f, "maj({k})"),
            Construction::MaioranaMcFarland { psi, inner } => write!(f, "mm[{psi}]({inner})"),
            Construction::F5 => write!(f, "f5"),
            Construction::GadgetG => write!(f, "gadget_g"),
            Construction::GadgetH => write!(f, "gadget_h"),
            Construction::DirectSum(parts) => {
                write!(f, "sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Construction::Complement(inner) => write!(f, "not({inner})"),
            Construction::Concat(g, h) => write!(f, "concat({g}, {h})"),
            Construction::Iter { g, h, t } => write!(f, "iter{t}({g}, {h})"),
            Construction::Step { g, h, which } => write!(f, "step_{which:?}({g}, {h})"),
        }
    }
}

/// Applies successive steps to the values `(g, h)`; each round consumes
/// three fresh variables `(a, b, c)` from `vars`.
pub(crate) fn step_rounds(mut g: bool, mut h: bool, vars: &[bool]) -> (bool, bool) {
    for r in vars.chunks_exact(3) {
        let (a, b, c) = (r[0], r[1], r[2]);
        let new_g = c ^ b ^ if a { h } else { g };
        let new_h = c ^ a ^ if c ^ b { h } else { g };
        (g, h) = (new_g, new_h);
    }
    (g, h)
}

pub(crate) fn majority_table(k: usize) -> Result<TruthTable> {
    TruthTable::from_fn(k, |x| x.count_ones() as usize > k / 2)
}

/// `<psi(X), Y> + h(X)` with `X` on the low `k` bits and `Y` on the high `k` bits.
pub(crate) fn mm_table(psi: &BitPermutation, h: &TruthTable) -> Result<TruthTable> {
    let k = psi.len();
    if h.n() != k {
        return Err(Error::VarMismatch { left: k, right: h.n() });
    }
    let n = 2 * k;
    if n > N_MAX_TT {
        return Err(Error::VarCount { n, max: N_MAX_TT });
    }
    let images: Vec<u64> = (0..1u64 << k).map(|x| psi.apply_mask(x)).collect();
    let low = (1u64 << k) - 1;
    TruthTable::from_fn(n, |z| {
        let (x, y) = (z & low, z >> k);
        ((images[x as usize] & y).count_ones() & 1 == 1) ^ h.get(x as usize)
    })
}

/// One step on tables: `(G, H)` on `n + 3` variables `(.., a, b, c)` with
/// `G = c + b + (a ? h : g)` and `H = c + a + ((c + b) ? h : g)`.
pub(crate) fn step_tables(g: &TruthTable, h: &TruthTable) -> Result<(TruthTable, TruthTable)> {
    let f = TruthTable::concat(g, h)?;
    let nf = f.complement();
    // blocks indexed by (b, c) = (bit 0, bit 1)
    let big_g = TruthTable::concat_blocks(&[f.clone(), nf.clone(), nf, f])?;
    let (ng, nh) = (g.complement(), h.complement());
    let big_h = TruthTable::concat_blocks(&[
        TruthTable::concat(g, &ng)?,
        TruthTable::concat(h, &nh)?,
        TruthTable::concat(&nh, h)?,
        TruthTable::concat(&ng, g)?,
    ])?;
    Ok((big_g, big_h))
}
