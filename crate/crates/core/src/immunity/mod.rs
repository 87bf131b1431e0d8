//! Algebraic immunity and fast algebraic immunity.
//!
//! Annihilators are found as kernel vectors of the matrix whose rows are the
//! points of a support set and whose columns are the monomials of bounded
//! degree in (degree, mask) order. Columns are appended one at a time, so the
//! first dependency found is an annihilator of least degree and the sweep over
//! degrees reuses all previous elimination work.

mod f2;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use f2::F2Matrix;
use f2::Echelon;

use crate::anf::{self, AnfPoly};
use crate::bits;
use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Default variable limit for exact algebraic immunity.
pub const N_MAX_AI: usize = 18;
/// Default variable limit for fast algebraic immunity.
pub const N_MAX_FAI: usize = 12;
/// Default memory budget for one elimination.
pub const DEFAULT_MATRIX_BYTES: usize = 2 << 30;

/// Which function an annihilator kills.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `g * f = 0`
    Function,
    /// `g * (1 + f) = 0`
    Complement,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Function => "f",
            Side::Complement => "1+f",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorWitness {
    pub side: Side,
    pub g: AnfPoly,
    pub degree: usize,
}

impl AnnihilatorWitness {
    /// Pointwise check of the annihilation identity on all `2^n` inputs.
    pub fn verify(&self, f: &TruthTable) -> bool {
        if self.g.is_zero() || self.g.n() != f.n() || self.g.degree() != self.degree {
            return false;
        }
        let g = anf::mobius_inv(&self.g);
        let target = match self.side {
            Side::Function => f.clone(),
            Side::Complement => f.complement(),
        };
        g.and(&target).map(|p| p.weight() == 0).unwrap_or(false)
    }
}

/// Resource limits for immunity computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AiLimits {
    /// Largest `n` for an exact answer.
    pub max_vars: usize,
    /// Only search annihilators up to this degree ("bound mode"). When set,
    /// `max_vars` is not enforced, only the memory budget.
    pub max_degree: Option<usize>,
    pub max_matrix_bytes: usize,
}

impl Default for AiLimits {
    fn default() -> Self {
        Self { max_vars: N_MAX_AI, max_degree: None, max_matrix_bytes: DEFAULT_MATRIX_BYTES }
    }
}

impl AiLimits {
    /// Bound mode: decide whether `AI >= target`.
    pub fn at_least(target: usize) -> Self {
        Self { max_degree: Some(target.saturating_sub(1)), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AiResult {
    Exact { value: usize, witness: AnnihilatorWitness },
    /// No annihilator of degree below the value exists on either side.
    AtLeast(usize),
}

impl AiResult {
    pub fn lower_bound(&self) -> usize {
        match self {
            AiResult::Exact { value, .. } => *value,
            AiResult::AtLeast(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            AiResult::Exact { value, .. } => Some(*value),
            AiResult::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for AiResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AiResult::Exact { value, .. } => write!(f, "{value}"),
            AiResult::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Annihilator search on one side, one monomial column at a time.
struct SideSearch {
    n: usize,
    side: Side,
    var_columns: Vec<Vec<u64>>,
    all_ones: Vec<u64>,
    echelon: Echelon,
    columns: Vec<u64>,
}

impl SideSearch {
    fn new(f: &TruthTable, side: Side) -> Self {
        let n = f.n();
        let support: Vec<u64> = (0..f.len()).filter(|&x| f.get(x as usize) == (side == Side::Function)).collect();
        let height = support.len();
        let words = bits::words_for_len(height);
        let mut var_columns = vec![vec![0u64; words]; n];
        for (row, &x) in support.iter().enumerate() {
            for (i, col) in var_columns.iter_mut().enumerate() {
                if (x >> i) & 1 == 1 {
                    bits::set(col, row, true);
                }
            }
        }
        let mut all_ones = vec![u64::MAX; words];
        if !height.is_multiple_of(64) {
            if let Some(last) = all_ones.last_mut() {
                *last = (1u64 << (height % 64)) - 1;
            }
        }
        Self {
            n,
            side,

            var_columns,
            all_ones,
            echelon: Echelon::new(height, true),
            columns: Vec::new(),
        }
    }

    fn column(&self, mask: u64) -> Vec<u64> {
        let mut col = self.all_ones.clone();
        for i in (0..self.n).filter(|i| (mask >> i) & 1 == 1) {
            for (c, v) in col.iter_mut().zip(&self.var_columns[i]) {
                *c &= *v;
            }
        }
        col
    }

    /// Appends all monomials of degree `d`; returns a witness on the first dependency.
    fn extend_degree(&mut self, d: usize) -> Option<AnnihilatorWitness> {
        for mask in bits::masks_of_weight(self.n, d) {
            let col = self.column(mask);
            self.columns.push(mask);
            if let Some(combo) = self.echelon.insert(col) {
                let monomials = self
                    .columns
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits::get(&combo, *i))
                    .map(|(_, &m)| m);
                let g = AnfPoly::from_monomials(self.n, monomials).expect("masks fit in n bits");
                return Some(AnnihilatorWitness { side: self.side, degree: g.degree(), g });
            }
        }
        None
    }
}

fn monomial_count(n: usize, degree: usize) -> usize {
    (0..=degree.min(n)).map(|d| bits::binomial(n, d) as usize).sum()
}

fn check_budget(f: &TruthTable, max_degree: usize, limits: &AiLimits) -> Result<()> {
    let cols = monomial_count(f.n(), max_degree);
    let w = f.weight() as usize;
    let height = w.max(f.len() as usize - w);
    let rank = cols.min(height + 1);
    let bytes = rank.saturating_mul(bits::words_for_len(height) + bits::words_for_len(cols)).saturating_mul(8);
    if bytes > limits.max_matrix_bytes {
        return Err(Error::CapExceeded(format!(
            "annihilator system for n = {} up to degree {max_degree} needs about {} MiB; use a degree cap (bound mode)",
            f.n(),
            bytes >> 20
        )));
    }
    Ok(())
}

fn finish(f: &TruthTable, witness: AnnihilatorWitness) -> AnnihilatorWitness {
    assert!(witness.verify(f), "annihilator witness failed pointwise verification");
    witness
}

/// Least degree of a nonzero annihilator of the chosen side.
///
/// An empty support yields degree 0 with `g = 1`. The constant function on
/// the chosen side's complement (support = everything) has no annihilator.
pub fn min_annihilator_degree(f: &TruthTable, side: Side) -> Result<(usize, AnnihilatorWitness)> {
    let n = f.n();
    let limits = AiLimits::default();
    if n > limits.max_vars {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the annihilator limit {}", limits.max_vars)));
    }
    let full = match side {
        Side::Function => f.weight() == f.len(),
        Side::Complement => f.weight() == 0,
    };
    if full {
        return Err(Error::NoAnnihilator(format!("the {side} side is the constant 1 function")));
    }
    let mut search = SideSearch::new(f, side);
    for d in 0..=n {
        check_budget(f, d, &limits)?;
        if let Some(w) = search.extend_degree(d) {
            return Ok((w.degree, finish(f, w)));
        }
    }
    unreachable!("a non-full support always has an annihilator");
}

/// Exact algebraic immunity with a verified witness.
pub fn algebraic_immunity(f: &TruthTable) -> Result<(usize, AnnihilatorWitness)> {
    match algebraic_immunity_with(f, &AiLimits::default())? {
        AiResult::Exact { value, witness } => Ok((value, witness)),
        AiResult::AtLeast(_) => unreachable!("no degree cap was requested"),
    }
}

/// Algebraic immunity under explicit limits; with `max_degree` set, reports
/// only a lower bound when no annihilator up to that degree exists.
pub fn algebraic_immunity_with(f: &TruthTable, limits: &AiLimits) -> Result<AiResult> {
    let n = f.n();
    let ceiling = n.div_ceil(2);
    let top = match limits.max_degree {
        Some(d) => d.min(ceiling),
        None => {
            if n > limits.max_vars {
                return Err(Error::CapExceeded(format!(
                    "exact algebraic immunity limited to n <= {}; pass a degree cap for a bound",
                    limits.max_vars
                )));
            }
            ceiling
        }
    };
    let mut sides = [SideSearch::new(f, Side::Function), SideSearch::new(f, Side::Complement)];
    for d in 0..=top {
        check_budget(f, d, limits)?;
        for s in sides.iter_mut() {
            if let Some(w) = s.extend_degree(d) {
                return Ok(AiResult::Exact { value: d, witness: finish(f, w) });
            }
        }
    }
    debug_assert!(limits.max_degree.is_some());
    Ok(AiResult::AtLeast(top + 1))
}

/// Whether `AI(f) >= target`, searching only degrees below `target`.
pub fn ai_at_least(f: &TruthTable, target: usize) -> Result<bool> {
    if target == 0 {
        return Ok(true);
    }
    Ok(algebraic_immunity_with(f, &AiLimits::at_least(target))?.lower_bound() >= target)
}

/// Fast algebraic immunity with the default variable limit.
pub fn fast_algebraic_immunity(f: &TruthTable) -> Result<usize> {
    fast_algebraic_immunity_with(f, N_MAX_FAI)
}

/// `min(2 AI, min { deg g + deg(fg) : 1 <= deg g < AI })`.
///
/// For each `e < AI` the products `f * mu` for the monomials `mu` of degree
/// at most `e` are transformed to ANF, with coordinates listed from highest
/// to lowest degree. One elimination then gives, for every `d`, the rank of the
/// projection onto the coordinates of degree above `d`, hence the dimension of
/// `K_d = { g : deg g <= e, deg(fg) <= d }`. A non-constant `g` exists in
/// `K_d` iff `dim K_d >= 2`, or `dim K_d = 1` and `deg f > d`.
pub fn fast_algebraic_immunity_with(f: &TruthTable, max_vars: usize) -> Result<usize> {
    let n = f.n();
    if n > max_vars {
        return Err(Error::CapExceeded(format!("fast algebraic immunity limited to n <= {max_vars}")));
    }
    let (ai, _) = algebraic_immunity(f)?;
    let deg_f = anf::degree(f);
    let size = f.len() as usize;

    // Coordinates ordered by descending degree.
    let mut order: Vec<u64> = (0..size as u64).collect();
    order.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    let mut position = vec![0usize; size];
    for (p, &m) in order.iter().enumerate() {
        position[m as usize] = p;
    }
    // above[d] = number of coordinates with degree > d
    let above: Vec<usize> = (0..=n).map(|d| order.iter().filter(|m| m.count_ones() as usize > d).count()).collect();

    let mut best = 2 * ai;
    for e in 1..ai {
        let monomials = bits::graded_masks(n, e);
        let mut echelon = Echelon::new(size, false);
        for &mu in &monomials {
            let g = TruthTable::from_fn(n, |x| x & mu == mu)?;
            let product = anf::mobius(&f.and(&g)?);
            let mut v = vec![0u64; bits::words_for_len(size)];
            for (m, &row) in position.iter().enumerate() {
                if product.coeff(m as u64) {
                    bits::set(&mut v, row, true);
                }
            }
            echelon.insert(v);
        }
        let pivots: Vec<usize> = echelon.pivots().collect();
        let count = monomials.len();
        for (d, &limit) in above.iter().enumerate() {
            if e + d >= best {
                break;
            }
            let rank = pivots.iter().filter(|&&p| p < limit).count();
            let kernel = count - rank;
            if kernel >= 2 || (kernel == 1 && deg_f > d) {
                best = e + d;
                break;
            }
        }
    }
    Ok(best)
}

/// `min_alpha AI(f_alpha)` over all assignments to the (1-based) variables in
/// `split`; a lower bound on `AI(f)`.
pub fn ai_lower_bound_subfunctions(f: &TruthTable, split: &[usize]) -> Result<usize> {
    let n = f.n();
    let mut vars = split.to_vec();
    vars.sort_unstable();
    vars.dedup();
    if vars.is_empty() || vars.len() >= n || vars.len() != split.len() {
        return Err(Error::InvalidParams("split must be a nonempty proper set of distinct variables".into()));
    }
    if let Some(&bad) = vars.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::InvalidVariable { index: bad, n });
    }
    let mut cache: HashMap<TruthTable, usize> = HashMap::new();
    let mut best = usize::MAX;
    for alpha in 0..1u64 << vars.len() {
        let fixed: BTreeMap<usize, bool> = vars.iter().enumerate().map(|(k, &v)| (v, (alpha >> k) & 1 == 1)).collect();
        let sub = f.restrict(&fixed)?;
        let ai = match cache.get(&sub) {
            Some(&v) => v,
            None => {
                let v = algebraic_immunity(&sub)?.0;
                cache.insert(sub.complement(), v);
                cache.insert(sub, v);
                v
            }
        };
        best = best.min(ai);
    }
    Ok(best)
}
