//! Independent reference computations shared by the integration suites.
//! Everything here works from the defining formulas on plain `Vec<bool>`
//! tables and never calls the library's transforms.

#![allow(dead_code)]

use rand::Rng;
use resilient_bf::constructions::{families, Construction, PsiSpec, StepOutput};
use resilient_bf::{BitPermutation, TruthTable};

pub fn bits_of(f: &TruthTable) -> Vec<bool> {
    (0..f.len() as usize).map(|x| f.get(x)).collect()
}

pub fn random_table(n: usize, rng: &mut impl Rng) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).unwrap()
}

/// `W_f(a) = sum_x (-1)^(f(x) + a.x)` straight from the definition.
pub fn walsh_by_definition(f: &TruthTable) -> Vec<i64> {
    let v = bits_of(f);
    let size = v.len();
    (0..size)
        .map(|a| {
            (0..size)
                .map(|x| if v[x] ^ ((a & x).count_ones() % 2 == 1) { -1 } else { 1 })
                .sum()
        })
        .collect()
}

/// Minimum Hamming distance to the `2^(n+1)` affine functions.
pub fn nl_by_affine_distance(f: &TruthTable) -> u64 {
    let v = bits_of(f);
    let size = v.len();
    let mut best = u64::MAX;
    for a in 0..size {
        for c in [false, true] {
            let d = (0..size).filter(|&x| v[x] != (((a & x).count_ones() % 2 == 1) ^ c)).count() as u64;
            best = best.min(d);
        }
    }
    best
}

/// ANF coefficients by the subset-sum definition `a_u = XOR_{x <= u} f(x)`.
pub fn anf_by_definition(f: &TruthTable) -> Vec<bool> {
    let v = bits_of(f);
    (0..v.len()).map(|u| (0..v.len()).filter(|&x| x & u == x).fold(false, |acc, x| acc ^ v[x])).collect()
}

pub fn degree_by_definition(f: &TruthTable) -> usize {
    anf_by_definition(f)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(u, _)| u.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Algebraic immunity for `n <= 5` by trying every polynomial of degree at
/// most 2; when none annihilates either side the answer is `ceil(n/2)`.
pub fn ai_by_exhaustive_search(f: &TruthTable) -> usize {
    let n = f.n();
    assert!(n <= 5);
    let size = 1usize << n;
    let table = |u: usize| -> u32 { (0..size).filter(|&x| x & u == u).fold(0u32, |acc, x| acc | (1 << x)) };
    let support: u32 = (0..size).filter(|&x| f.get(x)).fold(0, |acc, x| acc | (1 << x));
    let full = if size == 32 { u32::MAX } else { (1u32 << size) - 1 };
    let complement = full & !support;
    for d in 0..=2.min(n) {
        let monos: Vec<u32> = (0..size).filter(|u| u.count_ones() as usize <= d).map(table).collect();
        for coeffs in 1u64..1 << monos.len() {
            let g = monos.iter().enumerate().filter(|(i, _)| (coeffs >> i) & 1 == 1).fold(0u32, |acc, (_, &m)| acc ^ m);
            if g != 0 && (g & support == 0 || g & complement == 0) {
                return d;
            }
        }
    }
    n.div_ceil(2)
}

/// `min(2 AI, 1 + min deg(f g))` over every non-constant affine `g`; exact
/// whenever the degree-1 multipliers are the only ones that matter (AI <= 2).
pub fn fai_affine_sweep(f: &TruthTable, ai: usize) -> usize {
    let n = f.n();
    let mut best = 2 * ai;
    for a in 1..1u64 << n {
        for c in [false, true] {
            let g = TruthTable::from_fn(n, |x| ((a & x).count_ones() % 2 == 1) ^ c).unwrap();
            let fg = f.and(&g).unwrap();
            // an annihilator bounds AI, not FAI
            if fg.weight() > 0 {
                best = best.min(1 + degree_by_definition(&fg));
            }
        }
    }
    best
}

/// Resiliency order read off a spectrum given as a plain vector.
pub fn resiliency_from_values(w: &[i64]) -> i32 {
    let n_plus_one = w.len().trailing_zeros() + 1;
    let first = w.iter().enumerate().filter(|(_, &v)| v != 0).map(|(a, _)| a.count_ones()).min().unwrap_or(n_plus_one);
    first as i32 - 1
}

/// One family instance with the parameters it guarantees.
pub struct Instance {
    pub name: String,
    pub c: Construction,
    /// Guaranteed resiliency order (exact for the direct families).
    pub m: i32,
    pub m_exact: bool,
    /// Guaranteed linear bias `2^-x` (None when not a closed form).
    pub x: Option<u32>,
    /// Guaranteed algebraic immunity lower bound.
    pub a: usize,
}

fn inst(name: String, c: Construction, m: i32, m_exact: bool, x: Option<u32>, a: usize) -> Instance {
    Instance { name, c, m, m_exact, x, a }
}

/// Every family instance of moderate size used by the suites.
pub fn catalogue(max_n: usize) -> Vec<Instance> {
    let id = BitPermutation::identity;
    let mut out = Vec::new();
    for n in 1..=max_n.min(15) {
        out.push(inst(format!("maj({n})"), families::majority(n).unwrap(), -1, false, None, n.div_ceil(2)));
    }
    for k in 2..=max_n / 2 {
        out.push(inst(format!("mm({})", 2 * k), families::mm_majority(&id(k)).unwrap(), -1, true, Some(k as u32), k.div_ceil(2)));
        out.push(inst(
            format!("mm({},random:{k})", 2 * k),
            families::mm_majority(&BitPermutation::random(k, k as u64)).unwrap(),
            -1,
            true,
            Some(k as u32),
            k.div_ceil(2),
        ));
    }
    out.push(inst("f5".into(), Construction::F5, 1, true, Some(2), 2));
    for m in 0..=max_n {
        for n in m + 5..=max_n {
            if (n - m) % 2 == 1 {
                let k = (n - m - 1) / 2;
                let c = families::parity_mm(m, n, &id(k)).unwrap();
                out.push(inst(format!("parity_mm({m},{n})"), c, m as i32, true, Some(k as u32), (n - m - 1).div_ceil(4)));
            }
        }
        for n in m + 8..=max_n {
            if m >= 1 && (n - m) % 2 == 0 {
                let k = (n - m - 4) / 2;
                let c = families::parity_f5_mm(m, n, &id(k)).unwrap();
                out.push(inst(format!("parity_f5_mm({m},{n})"), c, m as i32, true, Some(k as u32 + 2), (n - m - 4).div_ceil(4)));
            }
        }
    }
    for (m, n) in [(0, 5), (0, 7), (1, 5), (1, 7), (1, 8), (0, 9), (1, 9)] {
        let (g, h) = seeds(m, n);
        for t in 0..=3 {
            if n + 3 * t < max_n {
                let c = families::iter(g.clone(), h.clone(), t).unwrap();
                out.push(inst(format!("iter(m={m},n={n},t={t})"), c, (m + 2 * t) as i32, false, None, 0));
            }
        }
        if n + 3 <= max_n {
            for which in [StepOutput::G, StepOutput::H] {
                let c = families::step(g.clone(), h.clone(), which).unwrap();
                out.push(inst(format!("step_{which:?}(m={m},n={n})"), c, (m + 2) as i32, false, None, 0));
            }
        }
    }
    for t in 0..=3 {
        for n in 3 * t + 6..=max_n {
            let seed = n - 3 * t - 1;
            if seed % 2 == 1 {
                let k = (seed - 1) / 2;
                let c = families::iter_parity_mm(n, t, &id(k)).unwrap();
                out.push(inst(format!("iter_parity_mm({n},{t})"), c, 2 * t as i32, false, Some(((n - t - 2) / 2) as u32), (n - 3 * t - 2).div_ceil(4)));
            } else if seed >= 8 {
                let k = (seed - 4) / 2;
                let c = families::iter_gadget_mm(n, t, &id(k)).unwrap();
                out.push(inst(format!("iter_gadget_mm({n},{t})"), c, 2 * t as i32 + 1, false, Some(((n - t - 1) / 2) as u32), (n - 3 * t - 5).div_ceil(4)));
            }
        }
    }
    out
}

/// The step/iter seed pair with identity permutations.
pub fn seeds(m: usize, n: usize) -> (Construction, Construction) {
    families::seed_pair(m, n, |k| Ok(BitPermutation::identity(k))).unwrap()
}

pub fn psi_spec(seed: u64) -> PsiSpec {
    PsiSpec::Random(seed)
}
