//! Counts for streets whose preferable spots are `1, g+1, 2g+1, …`.
//!
//! Such a street of length `m` models rows of `g` spaces where cars may only
//! name a row. Closing a street of length `gs - k` into a circle of `gs` spots
//! and sorting the circular lists by how their `k` empty spots cluster gives
//!
//! ```text
//! s^(gs-k) = s · #PF(gs-k) + Σ_{n≥2} (s/n) Σ_{λ⊨k, μ⊨s, |λ|=|μ|=n} (gs-k choose gμ-λ) Π #PF(gμ_i - λ_i)
//! ```
//!
//! where `#PF(m)` is the number of parking functions of length `m` restricted
//! to `{1, g+1, …} ∩ [m]`. A pair `(λ, μ)` only describes a real circular
//! configuration when every filled segment holds at least one car, so pairs
//! with some `gμ_i - λ_i <= 0` contribute nothing.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binomial, int_power, nonnegative, to_integer};
use crate::error::{Error, Result};
use crate::BigCount;

/// An ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Compositions of `total` into `num_parts` positive parts, lexicographic.
pub fn compositions(total: usize, num_parts: usize) -> Result<Compositions> {
    if num_parts == 0 || num_parts > total {
        return Err(Error::Domain(format!(
            "no composition of {total} into {num_parts} positive parts"
        )));
    }
    let mut first = vec![1; num_parts];
    first[num_parts - 1] = total - (num_parts - 1);
    Ok(Compositions { next: Some(first) })
}

#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let p = current.len();
        // Bump the rightmost part whose suffix still has slack, reset the rest.
        let mut suffix = 0;
        for j in (0..p.saturating_sub(1)).rev() {
            suffix += current[j + 1];
            if suffix > p - 1 - j {
                let mut succ = current.clone();
                succ[j] += 1;
                succ[j + 1..].iter_mut().for_each(|x| *x = 1);
                succ[p - 1] = suffix - 1 - (p - 2 - j);
                self.next = Some(succ);
                break;
            }
        }
        Some(Composition { parts: current })
    }
}

/// `n! / Π parts_i!`. Parts must be nonnegative and sum to `n`.
pub fn multinomial(n: usize, parts: &[i64]) -> Result<BigCount> {
    if let Some(bad) = parts.iter().find(|&&p| p < 0) {
        return Err(Error::Domain(format!("negative multinomial part {bad}")));
    }
    let sum: i64 = parts.iter().sum();
    if usize::try_from(sum).ok() != Some(n) {
        return Err(Error::Domain(format!("parts {parts:?} do not sum to {n}")));
    }
    let mut left = n;
    let mut acc = BigInt::one();
    for &p in parts {
        let p = p as usize;
        acc *= binomial(left, p);
        left -= p;
    }
    Ok(acc)
}

fn check_gs(g: usize, s: usize) -> Result<()> {
    if g == 0 || s == 0 {
        return Err(Error::Domain(format!("need g, s >= 1, got g={g}, s={s}")));
    }
    Ok(())
}

/// `#PF_{gs-1 | S} = s^(gs-2)`.
pub fn mod_count_k1(g: usize, s: usize) -> Result<BigCount> {
    check_gs(g, s)?;
    if g * s < 2 {
        return Err(Error::Domain("need gs >= 2".into()));
    }
    Ok(int_power(s as i64, g * s - 2))
}

/// `#PF_{gs-2 | S} = s^(gs-3) - ½ Σ_{i=1}^{s-1} C(gs-2, gi-1) i^(gi-2) (s-i)^(g(s-i)-2)`.
///
/// Terms whose segments `gi - 1` or `g(s-i) - 1` would be empty (only possible
/// for `g = 1`) are dropped.
pub fn mod_count_k2(g: usize, s: usize) -> Result<BigCount> {
    check_gs(g, s)?;
    if g * s < 3 {
        return Err(Error::Domain("need gs >= 3".into()));
    }
    let mut pairs = BigInt::zero();
    for i in 1..s {
        let (left, right) = (g * i - 1, g * (s - i) - 1);
        if left == 0 || right == 0 {
            continue;
        }
        pairs += binomial(g * s - 2, left)
            * int_power(i as i64, left - 1)
            * int_power((s - i) as i64, right - 1);
    }
    let value = BigRational::from_integer(int_power(s as i64, g * s - 3))
        - BigRational::new(pairs, BigInt::from(2));
    nonnegative(to_integer(value)?)
}

/// Solves the circular relation for `#PF_{gs-k | S ∩ [gs-k]}`.
///
/// Shorter segment counts come from the same relation, memoised by length
/// within this call. The empty street (`k = gs`) has exactly one parking
/// function; the relation itself needs at least one car.
pub fn mod_count_general(g: usize, s: usize, k: usize) -> Result<BigCount> {
    check_gs(g, s)?;
    if k == 0 || k > g * s {
        return Err(Error::Domain(format!("need 1 <= k <= gs, got k={k}")));
    }
    let mut memo = HashMap::new();
    memo.insert(0, BigInt::one());
    solve(g, s, k, &mut memo)
}

/// Count for a street of length `m`, via the cheapest relation `(s', k')`
/// with `g s' - k' = m` and `1 <= k' <= g`.
fn by_length(g: usize, m: usize, memo: &mut HashMap<usize, BigInt>) -> Result<BigInt> {
    if let Some(v) = memo.get(&m) {
        return Ok(v.clone());
    }
    let rows = m / g + 1;
    let v = solve(g, rows, g * rows - m, memo)?;
    memo.insert(m, v.clone());
    Ok(v)
}

fn solve(g: usize, s: usize, k: usize, memo: &mut HashMap<usize, BigInt>) -> Result<BigInt> {
    let cars = g * s - k;
    if cars == 0 {
        return Ok(BigInt::one());
    }
    let mut rest = BigRational::zero();
    for n in 2..=k.min(s) {
        let mut class_sum = BigInt::zero();
        for lambda in compositions(k, n)? {
            for mu in compositions(s, n)? {
                let Some(seg) = segment_lengths(g, &lambda, &mu) else {
                    continue;
                };
                let parts: Vec<i64> = seg.iter().map(|&m| m as i64).collect();
                let mut term = multinomial(cars, &parts)?;
                for &m in &seg {
                    term *= by_length(g, m, memo)?;
                }
                class_sum += term;
            }
        }
        rest += BigRational::new(BigInt::from(s) * class_sum, BigInt::from(n));
    }
    let total = BigRational::from_integer(int_power(s as i64, cars));
    let value = (total - rest) / BigRational::from_integer(BigInt::from(s));
    nonnegative(to_integer(value)?)
}

/// `gμ_i - λ_i` for each segment, or `None` if some segment would be carless.
pub(crate) fn segment_lengths(
    g: usize,
    lambda: &Composition,
    mu: &Composition,
) -> Option<Vec<usize>> {
    lambda
        .parts()
        .iter()
        .zip(mu.parts())
        .map(|(&l, &m)| (g * m).checked_sub(l).filter(|&len| len > 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::pf_total;

    fn parts(it: Compositions) -> Vec<Vec<usize>> {
        it.map(|c| c.parts().to_vec()).collect()
    }

    #[test]
    fn compositions_in_order() {
        assert_eq!(
            parts(compositions(3, 2).unwrap()),
            vec![vec![1, 2], vec![2, 1]]
        );
        assert_eq!(parts(compositions(4, 1).unwrap()), vec![vec![4]]);
        assert_eq!(
            parts(compositions(5, 3).unwrap()),
            vec![
                vec![1, 1, 3],
                vec![1, 2, 2],
                vec![1, 3, 1],
                vec![2, 1, 2],
                vec![2, 2, 1],
                vec![3, 1, 1]
            ]
        );
        assert!(compositions(2, 3).is_err());
        assert!(compositions(2, 0).is_err());
    }

    #[test]
    fn composition_counts_are_binomial() {
        for total in 1..=9 {
            for k in 1..=total {
                let all = parts(compositions(total, k).unwrap());
                assert_eq!(BigInt::from(all.len()), binomial(total - 1, k - 1));
                assert!(all.iter().all(|c| c.iter().sum::<usize>() == total));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), 6.into());
        assert_eq!(multinomial(7, &[5, 2]).unwrap(), 21.into());
        assert_eq!(multinomial(6, &[1, 2, 3]).unwrap(), 60.into());
        assert_eq!(multinomial(0, &[0, 0]).unwrap(), 1.into());
        assert!(multinomial(3, &[4, -1]).is_err());
        assert!(multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn k1_values() {
        assert_eq!(mod_count_k1(3, 3).unwrap(), 2187.into());
        assert_eq!(mod_count_k1(2, 2).unwrap(), 4.into());
        for s in 2..=8 {
            assert_eq!(mod_count_k1(1, s).unwrap(), pf_total(s - 1));
        }
        assert!(mod_count_k1(1, 1).is_err());
    }

    #[test]
    fn general_reduces_to_k1_and_classical() {
        for g in 1..=4 {
            for s in 1..=4 {
                if g * s >= 2 {
                    assert_eq!(
                        mod_count_general(g, s, 1).unwrap(),
                        mod_count_k1(g, s).unwrap()
                    );
                }
            }
        }
        for s in 1..=7 {
            for k in 1..=s {
                assert_eq!(mod_count_general(1, s, k).unwrap(), pf_total(s - k));
            }
        }
        assert!(mod_count_general(2, 2, 0).is_err());
        assert!(mod_count_general(2, 2, 5).is_err());
        assert_eq!(mod_count_general(2, 3, 6).unwrap(), 1.into());
    }

    #[test]
    fn k2_matches_general() {
        for g in 1..=4 {
            for s in 1..=5 {
                if g * s >= 3 {
                    assert_eq!(
                        mod_count_k2(g, s).unwrap(),
                        mod_count_general(g, s, 2).unwrap(),
                        "g={g} s={s}"
                    );
                }
            }
        }
    }
}
