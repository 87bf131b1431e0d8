use std::collections::BTreeMap;
use std::fmt;

use crate::bits::{self, VAR_MASKS};
use crate::error::{Error, Result};
use crate::perm::BitPermutation;

/// Largest variable count for which truth tables are materialised.
pub const N_MAX_TT: usize = 26;

/// Bit-packed truth table of an `n`-variable Boolean function.
///
/// Bit `i` holds `f(x)` for the assignment where `X_j` is bit `j - 1` of `i`.
/// For `n < 6` the table lives in the low `2^n` bits of a single word and the
/// remaining bits are kept at zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > N_MAX_TT {
        Err(Error::VarCount { n, max: N_MAX_TT })
    } else {
        Ok(())
    }
}

impl TruthTable {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, words: vec![0; bits::words_for(n)] })
    }

    pub fn one(n: usize) -> Result<Self> {
        Ok(Self::zero(n)?.complement())
    }

    /// The projection `X_j` (1-based) on `n` variables.
    pub fn variable(n: usize, j: usize) -> Result<Self> {
        check_n(n)?;
        if j == 0 || j > n {
            return Err(Error::InvalidVariable { index: j, n });
        }
        let i = j - 1;
        let words = if i < 6 {
            vec![VAR_MASKS[i] & bits::tail_mask(n); bits::words_for(n)]
        } else {
            (0..bits::words_for(n))
                .map(|w| if (w >> (i - 6)) & 1 == 1 { u64::MAX } else { 0 })
                .collect()
        };
        Ok(Self { n, words })
    }

    /// Tabulates `f` over all `2^n` assignments.
    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        check_n(n)?;
        let size = 1u64 << n;
        let mut words = vec![0u64; bits::words_for(n)];
        for (w, word) in words.iter_mut().enumerate() {
            let base = (w as u64) << 6;
            let mut acc = 0u64;
            for b in 0..64u64 {
                let x = base + b;
                if x >= size {
                    break;
                }
                if f(x) {
                    acc |= 1 << b;
                }
            }
            *word = acc;
        }
        Ok(Self { n, words })
    }

    /// Wraps raw words. Bits beyond `2^n` must be zero.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if words.len() != bits::words_for(n) {
            return Err(Error::InvalidParams(format!(
                "expected {} words for {n} variables, got {}",
                bits::words_for(n),
                words.len()
            )));
        }
        if n < 6 && words[0] & !bits::tail_mask(n) != 0 {
            return Err(Error::InvalidParams("bits set beyond the table length".into()));
        }
        Ok(Self { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> u64 {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn evaluate(&self, x: u64) -> Result<bool> {
        if x >= self.len() {
            return Err(Error::AssignmentOutOfRange { x, n: self.n });
        }
        Ok(self.get(x as usize))
    }

    /// Unchecked lookup; panics if `x` is out of range.
    #[inline]
    pub fn get(&self, x: usize) -> bool {
        debug_assert!((x as u64) < self.len());
        bits::get(&self.words, x)
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == self.len() / 2
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight();
        w == 0 || w == self.len()
    }

    pub fn complement(&self) -> Self {
        let mask = bits::tail_mask(self.n);
        Self { n: self.n, words: self.words.iter().map(|w| !w & mask).collect() }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VarMismatch { left: self.n, right: other.n });
        }
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect();
        Ok(Self { n: self.n, words })
    }

    /// `(1 + X_{n+1}) g + X_{n+1} h`: the table of `g` followed by the table of `h`.
    pub fn concat(g: &Self, h: &Self) -> Result<Self> {
        Self::concat_blocks(&[g.clone(), h.clone()])
    }

    /// Concatenates `2^r` equal-size tables; block `b` is selected when the
    /// `r` new top variables spell `b`.
    pub fn concat_blocks(blocks: &[Self]) -> Result<Self> {
        let count = blocks.len();
        if count == 0 || !count.is_power_of_two() {
            return Err(Error::InvalidParams(format!("cannot concatenate {count} blocks")));
        }
        let n = blocks[0].n;
        if let Some(b) = blocks.iter().find(|b| b.n != n) {
            return Err(Error::VarMismatch { left: n, right: b.n });
        }
        let new_n = n + count.trailing_zeros() as usize;
        check_n(new_n)?;
        if n >= 6 {
            let words = blocks.iter().flat_map(|b| b.words.iter().copied()).collect();
            return Ok(Self { n: new_n, words });
        }
        let width = 1usize << n;
        Self::from_fn(new_n, |x| blocks[(x as usize) >> n].get(x as usize & (width - 1)))
    }

    /// `g(X_1..X_{n1}) + h(X_{n1+1}..X_{n1+n2})`.
    pub fn direct_sum(g: &Self, h: &Self) -> Result<Self> {
        let n = g.n + h.n;
        check_n(n)?;
        if g.n >= 6 {
            let gc = g.complement();
            let mut words = Vec::with_capacity(bits::words_for(n));
            for j in 0..h.len() as usize {
                words.extend_from_slice(if h.get(j) { &gc.words } else { &g.words });
            }
            return Ok(Self { n, words });
        }
        let low = (1u64 << g.n) - 1;
        Self::from_fn(n, |x| g.get((x & low) as usize) ^ h.get((x >> g.n) as usize))
    }

    /// Direct sum with the parity of `count` fresh variables placed above
    /// the existing ones.
    pub fn add_parity_vars(&self, count: usize) -> Result<Self> {
        if count == 0 {
            return Ok(self.clone());
        }
        Self::direct_sum(self, &parity(count)?)
    }

    /// Sub-function obtained by fixing the given (1-based) variables.
    /// Surviving variables keep their relative order.
    pub fn restrict(&self, fixed: &BTreeMap<usize, bool>) -> Result<Self> {
        if fixed.is_empty() {
            return Ok(self.clone());
        }
        let mut base = 0u64;
        for (&var, &val) in fixed {
            if var == 0 || var > self.n {
                return Err(Error::InvalidVariable { index: var, n: self.n });
            }
            if val {
                base |= 1 << (var - 1);
            }
        }
        let free: Vec<usize> = (0..self.n).filter(|i| !fixed.contains_key(&(i + 1))).collect();
        if free.is_empty() {
            return Err(Error::InvalidParams("restriction fixes every variable".into()));
        }
        Self::from_fn(free.len(), |y| {
            let x = free
                .iter()
                .enumerate()
                .fold(base, |acc, (k, &src)| acc | (((y >> k) & 1) << src));
            self.get(x as usize)
        })
    }

    /// Whether flipping `X_j` (1-based) changes the output somewhere.
    pub fn depends_on(&self, j: usize) -> bool {
        if j == 0 || j > self.n {
            return false;
        }
        let i = j - 1;
        if i < 6 {
            let shift = 1u32 << i;
            let low = !VAR_MASKS[i];
            self.words.iter().any(|&w| (w ^ (w >> shift)) & low & bits::tail_mask(self.n) != 0)
        } else {
            let stride = 1usize << (i - 6);
            (0..self.words.len())
                .filter(|w| w & stride == 0)
                .any(|w| self.words[w] != self.words[w | stride])
        }
    }

    /// 1-based indices of the variables the function actually depends on.
    pub fn nondegenerate_vars(&self) -> Vec<usize> {
        (1..=self.n).filter(|&j| self.depends_on(j)).collect()
    }

    /// Relabels variables: the result at `y` equals `f(x)` where
    /// `x_{rho(j)} = y_j`.
    pub fn permute_vars(&self, perm: &BitPermutation) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::VarMismatch { left: self.n, right: perm.len() });
        }
        Self::from_fn(self.n, |y| {
            let x = (0..self.n).fold(0u64, |acc, j| acc | (((y >> j) & 1) << perm.source(j)));
            self.get(x as usize)
        })
    }

    /// Swaps `X_j` with `X_{n+1-j}` for every `j`.
    pub fn reverse_variables(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |x| self.get((x.reverse_bits() >> (64 - n)) as usize))
            .expect("same size as an existing table")
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as usize).map(move |x| self.get(x))
    }
}

/// Parity `X_1 + ... + X_n`.
pub(crate) fn parity(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |x| x.count_ones() & 1 == 1)
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
            write!(f, "TruthTable(n={}, {s})", self.n)
        } else {
            write!(f, "TruthTable(n={}, weight={})", self.n, self.weight())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tt(bits: &str) -> TruthTable {
        let n = bits.len().trailing_zeros() as usize;
        let v: Vec<bool> = bits.chars().map(|c| c == '1').collect();
        TruthTable::from_fn(n, |x| v[x as usize]).unwrap()
    }

    fn arb_tt(max_n: usize) -> impl Strategy<Value = TruthTable> {
        (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tt(n, seed))
    }

    fn random_tt(n: usize, seed: u64) -> TruthTable {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        TruthTable::from_fn(n, |_| rng.gen()).unwrap()
    }

    #[test]
    fn evaluate_and() {
        let and = tt("0001");
        assert!(and.evaluate(3).unwrap());
        assert!(!and.evaluate(1).unwrap());
        assert!(matches!(and.evaluate(4), Err(Error::AssignmentOutOfRange { .. })));
        let zero = TruthTable::zero(3).unwrap();
        assert!((0..8).all(|x| !zero.evaluate(x).unwrap()));
    }

    #[test]
    fn weights() {
        assert_eq!(TruthTable::zero(3).unwrap().weight(), 0);
        let p = parity(3).unwrap();
        assert_eq!(p.weight(), 4);
        assert!(p.is_balanced());
    }

    #[test]
    fn zero_variables_rejected() {
        assert!(matches!(TruthTable::zero(0), Err(Error::VarCount { .. })));
        assert!(TruthTable::zero(N_MAX_TT + 1).is_err());
    }

    #[test]
    fn variables_match_index_bits() {
        for n in 1..=9 {
            for j in 1..=n {
                let v = TruthTable::variable(n, j).unwrap();
                assert!((0..1u64 << n).all(|x| v.get(x as usize) == ((x >> (j - 1)) & 1 == 1)));
            }
        }
    }

    #[test]
    fn concat_constants_gives_top_variable() {
        let g = TruthTable::zero(1).unwrap();
        let h = TruthTable::one(1).unwrap();
        let f = TruthTable::concat(&g, &h).unwrap();
        assert_eq!(f, tt("0011"));
        assert_eq!(f, TruthTable::variable(2, 2).unwrap());
    }

    #[test]
    fn concat_of_equal_halves_is_degenerate_on_selector() {
        let g = random_tt(7, 3);
        let f = TruthTable::concat(&g, &g).unwrap();
        assert!(!f.depends_on(8));
    }

    #[test]
    fn concat_rejects_mismatch() {
        let g = TruthTable::zero(2).unwrap();
        let h = TruthTable::zero(3).unwrap();
        assert!(matches!(TruthTable::concat(&g, &h), Err(Error::VarMismatch { .. })));
    }

    #[test]
    fn direct_sum_of_projections_is_xor() {
        let x = TruthTable::variable(1, 1).unwrap();
        assert_eq!(TruthTable::direct_sum(&x, &x).unwrap(), tt("0110"));
    }

    #[test]
    fn direct_sum_overflow() {
        let g = TruthTable::zero(20).unwrap();
        assert!(TruthTable::direct_sum(&g, &g).is_err());
    }

    #[test]
    fn add_zero_parity_vars_is_identity() {
        let f = random_tt(5, 11);
        assert_eq!(f.add_parity_vars(0).unwrap(), f);
    }

    #[test]
    fn restrict_parity() {
        let p = parity(3).unwrap();
        let r = p.restrict(&BTreeMap::from([(3, true)])).unwrap();
        assert_eq!(r, parity(2).unwrap().complement());
        assert_eq!(p.restrict(&BTreeMap::new()).unwrap(), p);
        assert!(p.restrict(&BTreeMap::from([(4, true)])).is_err());
    }

    #[test]
    fn nondegenerate_sets() {
        assert!(TruthTable::one(4).unwrap().nondegenerate_vars().is_empty());
        assert_eq!(TruthTable::variable(3, 2).unwrap().nondegenerate_vars(), vec![2]);
        assert_eq!(TruthTable::variable(9, 8).unwrap().nondegenerate_vars(), vec![8]);
    }

    #[test]
    fn reverse_variables_swaps_ends() {
        let x1 = TruthTable::variable(5, 1).unwrap();
        assert_eq!(x1.reverse_variables(), TruthTable::variable(5, 5).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn concat_restricts_back(g in arb_tt(12), seed in any::<u64>()) {
            let h = random_tt(g.n(), seed);
            let f = TruthTable::concat(&g, &h).unwrap();
            let top = g.n() + 1;
            prop_assert_eq!(f.restrict(&BTreeMap::from([(top, false)])).unwrap(), g);
            prop_assert_eq!(f.restrict(&BTreeMap::from([(top, true)])).unwrap(), h);
        }

        #[test]
        fn complement_weight(f in arb_tt(14)) {
            prop_assert_eq!(f.weight() + f.complement().weight(), f.len());
        }

        #[test]
        fn direct_sum_weight_identity(g in arb_tt(8), h in arb_tt(8)) {
            let f = TruthTable::direct_sum(&g, &h).unwrap();
            let (wg, wh) = (g.weight(), h.weight());
            let expect = wg * (h.len() - wh) + (g.len() - wg) * wh;
            prop_assert_eq!(f.weight(), expect);
        }

        #[test]
        fn depends_on_matches_definition(f in arb_tt(9)) {
            for j in 1..=f.n() {
                let bit = 1u64 << (j - 1);
                let brute = (0..f.len()).any(|x| f.get(x as usize) != f.get((x ^ bit) as usize));
                prop_assert_eq!(f.depends_on(j), brute);
            }
        }
    }
}
