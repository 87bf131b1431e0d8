//! Word-level helpers shared by the bit-packed tables.

/// Positions where variable `i` (0-based, `i < 6`) is 1 inside a 64-bit word.
pub(crate) const VAR_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Number of 64-bit words holding `2^n` bits.
pub(crate) fn words_for(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the valid bits in the (single) word of a table with `n < 6`.
pub(crate) fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Number of 64-bit words holding `len` bits.
pub(crate) fn words_for_len(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize, v: bool) {
    let bit = 1u64 << (i & 63);
    if v {
        words[i >> 6] |= bit;
    } else {
        words[i >> 6] &= !bit;
    }
}

#[inline]
pub(crate) fn flip(words: &mut [u64], i: usize) {
    words[i >> 6] ^= 1u64 << (i & 63);
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

pub(crate) fn is_zero(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

pub(crate) fn lowest_set(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

/// In-place GF(2) Möbius (zeta) transform over `n` variables.
/// The transform is an involution.
pub(crate) fn mobius_in_place(words: &mut [u64], n: usize) {
    for (i, &mask) in VAR_MASKS.iter().enumerate().take(n.min(6)) {
        let shift = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w & !mask) << shift;
        }
    }
    if n > 6 {
        let len = words.len();
        let mut step = 1;
        while step < len {
            for base in (0..len).step_by(2 * step) {
                for j in base..base + step {
                    words[j + step] ^= words[j];
                }
            }
            step <<= 1;
        }
    }
}

/// Iterates over all `n`-bit masks of the given weight in increasing order.
pub(crate) fn masks_of_weight(n: usize, weight: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if weight > n {
        None
    } else if weight == 0 {
        Some(0)
    } else {
        Some((1u64 << weight) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nx = (((r ^ cur) >> 2) / c) | r;
            (nx < limit).then_some(nx)
        };
        Some(cur)
    })
}

/// All `n`-bit masks of weight at most `degree`, ordered by (weight, mask).
pub(crate) fn graded_masks(n: usize, degree: usize) -> Vec<u64> {
    (0..=degree.min(n)).flat_map(|d| masks_of_weight(n, d)).collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
