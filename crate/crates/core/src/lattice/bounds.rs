//! Closed-form bounds on the rank of the truncated lattice.

use crate::error::{Error, Result};

fn checked_binomial(n: u64, k: u64) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}

/// `(2n - 1)!!`, with `(-1)!! = 1`.
fn checked_double_factorial(n: u64) -> Option<i128> {
    (1..=n).try_fold(1i128, |acc, k| acc.checked_mul(2 * k as i128 - 1))
}

fn overflow() -> Error {
    Error::Overflow("rank bound")
}

/// Binomial coefficient, refusing values beyond `i128`.
pub fn binomial(n: u64, k: u64) -> Result<i128> {
    checked_binomial(n, k).ok_or_else(overflow)
}

/// Monomial lower bound `(t + 1)/m · C(m + t, t + 1)`.
pub fn rank_lower(t: u64, m: u64) -> Result<i128> {
    if m == 0 {
        return Err(Error::InvalidSpec("the label bound m must be at least 1".into()));
    }
    let scaled = binomial(m + t, t + 1)?.checked_mul(t as i128 + 1).ok_or_else(overflow)?;
    debug_assert_eq!(scaled % m as i128, 0);
    Ok(scaled / m as i128)
}

/// Diagrams with `k` chords carrying `scale` decorations per chord pattern,
/// minus those made trivial by isolated top-labelled arrows.
fn layer(k: u64, m: u64, scale: i128) -> Option<i128> {
    let mut total = checked_double_factorial(k)?.checked_mul(scale)?.checked_mul((m as i128 + 1).checked_pow(k as u32)?)?;
    for j in 1..=(2 * k + 1) / 3 {
        let base = k - j;
        let term = checked_binomial(2 * base + 1, j)?
            .checked_mul(checked_double_factorial(base)?)?
            .checked_mul(scale)?
            .checked_mul((m as i128).checked_pow(base as u32)?)?;
        total = total.checked_sub(term)?;
    }
    Some(total)
}

/// The upper bound on the rank of the directed lattice with at most `t`
/// arrows and labels up to `m + 1`.
pub fn omega_upper(t: u64, m: u64) -> Result<i128> {
    if t == 0 {
        return Err(Error::InvalidSpec("the upper bound needs t >= 1".into()));
    }
    let compute = || -> Option<i128> {
        let mut total = (4 * m as i128).checked_add(layer(t, m, 1i128.checked_shl(t as u32)?)?)?;
        for k in 2..t {
            total = total.checked_add(layer(k, m, 1i128.checked_shl(2 * k as u32)?)?)?;
        }
        Some(total)
    };
    compute().ok_or_else(overflow)
}

/// The three sides of the lower-bound identity
/// `1 + Σ_{k=1}^{t} C(m+k-1, k) = C(m+t, t) = (t+1)/m · C(m+t, t+1)`.
pub fn lower_bound_identity(t: u64, m: u64) -> Result<[i128; 3]> {
    let mut sum: i128 = 1;
    for k in 1..=t {
        sum = sum.checked_add(binomial(m + k - 1, k)?).ok_or_else(overflow)?;
    }
    Ok([sum, binomial(m + t, t)?, rank_lower(t, m)?])
}
