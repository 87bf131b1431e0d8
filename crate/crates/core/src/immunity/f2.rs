//! Bit-packed GF(2) linear algebra.

use crate::bits;

/// Dense row-major GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = bits::words_for_len(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        bits::get(self.row(r), c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let s = self.stride;
        bits::set(&mut self.data[r * s..(r + 1) * s], c, v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Rank by elimination, pivoting on the leftmost set column.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, false);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.rank()
    }

    /// A nonzero `x` with `M x = 0`, as a packed bit vector over the columns.
    /// Deterministic: the dependency closed by the leftmost possible column.
    pub fn kernel_vector(&self) -> Option<Vec<u64>> {
        let mut ech = Echelon::new(self.rows, true);
        for c in 0..self.cols {
            let column = self.column(c);
            if let Some(mut combo) = ech.insert(column) {
                combo.resize(bits::words_for_len(self.cols), 0);
                return Some(combo);
            }
        }
        None
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        let mut v = vec![0u64; bits::words_for_len(self.rows)];
        for r in 0..self.rows {
            if self.get(r, c) {
                bits::set(&mut v, r, true);
            }
        }
        v
    }

    /// `M x` for a packed vector `x` over the columns.
    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; bits::words_for_len(self.rows)];
        for r in 0..self.rows {
            let parity = self.row(r).iter().zip(x).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1;
            bits::set(&mut out, r, parity == 1);
        }
        out
    }
}

struct BasisVector {
    pivot: usize,
    bits: Vec<u64>,
    combo: Vec<u64>,
}

/// Incremental echelon basis over vectors of a fixed length.
///
/// Each stored vector's pivot is its lowest set coordinate, and no stored
/// vector has a bit at the pivot of an earlier one. With tracking on, each
/// vector carries the set of inserted vectors it is a combination of, so that
/// a dependency can be reported as an explicit relation.
pub(crate) struct Echelon {
    len_words: usize,
    track: bool,
    inserted: usize,
    basis: Vec<BasisVector>,
}

impl Echelon {
    /// `len` is the vector length in bits.
    pub(crate) fn new(len: usize, track: bool) -> Self {
        Self { len_words: bits::words_for_len(len), track, inserted: 0, basis: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|b| b.pivot)
    }

    /// Reduces `v` and stores it. Returns the dependency (as a set of
    /// insertion indices, including this one) if `v` reduced to zero.
    /// Without tracking the returned set is empty.
    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> Option<Vec<u64>> {
        debug_assert_eq!(v.len(), self.len_words);
        let index = self.inserted;
        self.inserted += 1;
        let mut combo = Vec::new();
        if self.track {
            combo = vec![0u64; bits::words_for_len(index + 1)];
            bits::set(&mut combo, index, true);
        }
        for b in &self.basis {
            if bits::get(&v, b.pivot) {
                bits::xor_into(&mut v, &b.bits);
                // older combos are never longer than the current one
                bits::xor_into(&mut combo[..b.combo.len()], &b.combo);
            }
        }
        match bits::lowest_set(&v) {
            Some(pivot) => {
                self.basis.push(BasisVector { pivot, bits: v, combo });
                None
            }
            None => Some(combo),
        }
    }
}
