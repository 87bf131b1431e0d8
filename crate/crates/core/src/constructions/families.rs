//! The named families, as construction trees.

use super::expr::{Construction, StepOutput};
use crate::error::{Error, Result};
use crate::perm::BitPermutation;

fn require_k(k: usize, what: &str) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("{what}: the bent block needs k >= 2, got k = {k}")));
    }
    Ok(())
}

fn require_psi(psi: &BitPermutation, k: usize) -> Result<()> {
    if psi.len() != k {
        return Err(Error::InvalidPermutation(format!("expected a permutation of size {k}, got {}", psi.len())));
    }
    Ok(())
}

pub fn majority(k: usize) -> Result<Construction> {
    if k == 0 {
        return Err(Error::InvalidParams("majority needs at least one variable".into()));
    }
    Ok(Construction::Majority { k })
}

/// `<psi(X), Y> + Maj_k(X)` on `2k` variables.
pub fn mm_majority(psi: &BitPermutation) -> Result<Construction> {
    let k = psi.len();
    require_k(k, "Maiorana-McFarland")?;
    Ok(Construction::MaioranaMcFarland { psi: psi.clone(), inner: Box::new(Construction::Majority { k }) })
}

fn parity_then(vars: usize, rest: Vec<Construction>) -> Construction {
    let mut parts = Vec::with_capacity(rest.len() + 1);
    if vars > 0 {
        parts.push(Construction::Parity { vars });
    }
    parts.extend(rest);
    if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        Construction::DirectSum(parts)
    }
}

/// `X_1 + ... + X_{m+1} + MM_{2k}` with `k = (n - m - 1) / 2`: exactly
/// `m`-resilient with linear bias `2^-k`.
pub fn parity_mm(m: usize, n: usize, psi: &BitPermutation) -> Result<Construction> {
    if n <= m + 1 || (n - m).is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("need n > m + 1 and n - m odd, got n = {n}, m = {m}")));
    }
    let k = (n - m - 1) / 2;
    require_k(k, "even-parity family")?;
    require_psi(psi, k)?;
    Ok(parity_then(m + 1, vec![mm_majority(psi)?]))
}

/// `Y_1 + ... + Y_{m-1} + f5 + MM_{2k}` with `k = (n - m - 4) / 2`: exactly
/// `m`-resilient with linear bias `2^-(k+2)`.
pub fn parity_f5_mm(m: usize, n: usize, psi: &BitPermutation) -> Result<Construction> {
    if m == 0 {
        return Err(Error::InvalidParams("odd-parity family needs m >= 1".into()));
    }
    if n < m + 4 || (n - m) % 2 == 1 {
        return Err(Error::InvalidParams(format!("need n >= m + 4 and n - m even, got n = {n}, m = {m}")));
    }
    let k = (n - m - 4) / 2;
    require_k(k, "odd-parity family")?;
    require_psi(psi, k)?;
    Ok(parity_then(m - 1, vec![Construction::F5, mm_majority(psi)?]))
}

pub fn step(g: Construction, h: Construction, which: StepOutput) -> Result<Construction> {
    let c = Construction::Step { g: Box::new(g), h: Box::new(h), which };
    c.validate()?;
    Ok(c)
}

pub fn iter(g: Construction, h: Construction, t: usize) -> Result<Construction> {
    let c = Construction::Iter { g: Box::new(g), h: Box::new(h), t };
    c.validate()?;
    Ok(c)
}

/// Seeds `X_1 + MM` and its complement, iterated `t` times; `2t`-resilient.
pub fn iter_parity_mm(n: usize, t: usize, psi: &BitPermutation) -> Result<Construction> {
    let seed_n = n.checked_sub(3 * t + 1).filter(|&s| s >= 3 && s % 2 == 1).ok_or_else(|| {
        Error::InvalidParams(format!("need n - 3t - 1 odd and at least 3, got n = {n}, t = {t}"))
    })?;
    let k = (seed_n - 1) / 2;
    require_k(k, "iterated family (case 1)")?;
    require_psi(psi, k)?;
    let g = parity_then(1, vec![mm_majority(psi)?]);
    let h = Construction::Complement(Box::new(g.clone()));
    iter(g, h, t)
}

/// Seeds built from the two 4-variable gadgets plus `MM`, iterated `t`
/// times; `(2t+1)`-resilient.
pub fn iter_gadget_mm(n: usize, t: usize, psi: &BitPermutation) -> Result<Construction> {
    let seed_n = n.checked_sub(3 * t + 1).filter(|&s| s >= 4 && s % 2 == 0).ok_or_else(|| {
        Error::InvalidParams(format!("need n - 3t - 1 even and at least 4, got n = {n}, t = {t}"))
    })?;
    let k = (seed_n - 4) / 2;
    require_k(k, "iterated family (case 2)")?;
    require_psi(psi, k)?;
    let mm = mm_majority(psi)?;
    let g = Construction::DirectSum(vec![Construction::GadgetG, mm.clone()]);
    let h = Construction::DirectSum(vec![Construction::GadgetH, mm]);
    iter(g, h, t)
}

/// A pair of `m`-resilient seeds on `n` variables for the step and iterated
/// constructions (`m` in {0, 1}). The second seed uses the reversed `psi`
/// so that the two differ.
pub fn seed_pair(m: usize, n: usize, psi_for: impl Fn(usize) -> Result<BitPermutation>) -> Result<(Construction, Construction)> {
    let pair = |build: fn(usize, usize, &BitPermutation) -> Result<Construction>, k: usize| -> Result<_> {
        let psi = psi_for(k)?;
        Ok((build(m, n, &psi)?, build(m, n, &psi.reversed())?))
    };
    match (m, n) {
        (0, n) if n % 2 == 1 && n >= 5 => pair(parity_mm, (n - 1) / 2),
        (1, 5) => Ok((Construction::F5, Construction::Complement(Box::new(Construction::F5)))),
        (1, 7) => {
            let maj2 = Construction::Majority { k: 2 };
            Ok((
                Construction::DirectSum(vec![Construction::F5, maj2.clone()]),
                Construction::DirectSum(vec![maj2, Construction::F5]),
            ))
        }
        (1, n) if n % 2 == 0 && n >= 6 => pair(parity_mm, (n - 2) / 2),
        (1, n) if n % 2 == 1 && n >= 9 => pair(parity_f5_mm, (n - 5) / 2),
        _ => Err(Error::InvalidParams(format!(
            "no seed pair for m = {m}, n = {n}: use m = 0 with odd n >= 5, or m = 1 with n >= 5"
        ))),
    }
}
