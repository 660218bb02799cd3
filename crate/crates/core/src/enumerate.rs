//! Brute-force oracles.
//!
//! These walk preference spaces directly and are the ground truth every closed
//! form in [`crate::formulas`] is checked against. The restricted enumerator
//! prunes prefixes that can no longer satisfy the Catalan condition; nothing
//! else is clever.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::park::{cumulative_counts, defect_raw, park, Permutation, PreferenceList};
use crate::restriction::RestrictionSet;
use crate::BigCount;

/// Which Catalan condition an enumeration enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `#π⁻¹([i]) ≥ i` for all `i`.
    Parking,
    /// `#π⁻¹([i]) > i` for all `i < n`, and every entry in `[n]`.
    Prime,
}

impl Condition {
    fn required(self, i: usize, n: usize) -> usize {
        match self {
            Condition::Parking => i,
            Condition::Prime if i < n => i + 1,
            Condition::Prime => n,
        }
    }

    /// Can `prefix` still be completed to a full list of `n` entries?
    fn feasible(self, prefix: &[usize], n: usize) -> bool {
        let remaining = n - prefix.len();
        let counts = cumulative_counts(prefix, n);
        (1..=n).all(|i| counts[i] + remaining >= self.required(i, n))
    }
}

/// Lexicographic stream of the lists in `S^n` meeting a Catalan condition.
#[derive(Debug, Clone)]
pub struct Restricted {
    n: usize,
    elements: Vec<usize>,
    condition: Condition,
    values: Vec<usize>,
    choice: Vec<usize>,
    resume: Option<(usize, usize)>,
    done: bool,
}

impl Restricted {
    fn new(n: usize, elements: Vec<usize>, condition: Condition) -> Self {
        Restricted {
            n,
            values: vec![0; n],
            choice: vec![0; n],
            resume: Some((0, 0)),
            done: false,
            elements,
            condition,
        }
    }
}

impl Iterator for Restricted {
    type Item = PreferenceList;

    fn next(&mut self) -> Option<PreferenceList> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(PreferenceList::from_vec_unchecked(Vec::new()));
        }
        let (mut pos, mut k) = self.resume.take()?;
        loop {
            let fits = k < self.elements.len() && {
                self.values[pos] = self.elements[k];
                self.condition.feasible(&self.values[..=pos], self.n)
            };
            if fits {
                self.choice[pos] = k;
                if pos + 1 == self.n {
                    self.resume = Some((pos, k + 1));
                    return Some(PreferenceList::from_vec_unchecked(self.values.clone()));
                }
                pos += 1;
                k = 0;
            } else {
                // Raising an entry only lowers the prefix counts, so every
                // later candidate at this position is infeasible too.
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
                k = self.choice[pos] + 1;
            }
        }
    }
}

fn check_inside(n: usize, set: &RestrictionSet) -> Result<()> {
    match set.elements().last() {
        Some(&max) if max > n => Err(Error::InvalidRestriction(format!(
            "{set} is not a subset of [{n}]"
        ))),
        _ => Ok(()),
    }
}

/// Members of `PF_{n|S}` in lexicographic order.
pub fn enum_restricted(n: usize, set: &RestrictionSet) -> Result<Restricted> {
    check_inside(n, set)?;
    if set.is_empty() && n > 0 {
        return Err(Error::EmptyRestriction);
    }
    Ok(Restricted::new(
        n,
        set.elements().to_vec(),
        Condition::Parking,
    ))
}

/// Members of `PPF_{n|S}` in lexicographic order. Empty `S` yields nothing.
pub fn enum_prime_restricted(n: usize, set: &RestrictionSet) -> Result<Restricted> {
    check_inside(n, set)?;
    Ok(Restricted::new(
        n,
        set.elements().to_vec(),
        Condition::Prime,
    ))
}

/// `#PF_{n|S}`.
pub fn count_restricted(n: usize, set: &RestrictionSet) -> Result<BigCount> {
    Ok(BigInt::from(enum_restricted(n, set)?.count()))
}

/// `#PPF_{n|S}`.
pub fn count_prime_restricted(n: usize, set: &RestrictionSet) -> Result<BigCount> {
    Ok(BigInt::from(enum_prime_restricted(n, set)?.count()))
}

/// `#PF_{n|S}` without listing anything: choose, for each allowed spot in
/// turn, how many cars prefer it, keeping the Catalan condition at every
/// threshold between consecutive allowed spots.
pub fn count_restricted_dp(n: usize, set: &RestrictionSet) -> Result<BigCount> {
    check_inside(n, set)?;
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let spots = set.elements();
    if spots.first() != Some(&1) {
        return Ok(BigInt::from(0));
    }
    // ways[c]: lists with c cars placed so far, read as a multiset of cars
    let mut ways = vec![BigInt::from(0); n + 1];
    ways[0] = BigInt::from(1);
    for (j, _) in spots.iter().enumerate() {
        let need = spots.get(j + 1).map_or(n, |&next| next - 1);
        let mut next = vec![BigInt::from(0); n + 1];
        for (placed, w) in ways.iter().enumerate() {
            if w == &BigInt::from(0) {
                continue;
            }
            let lo = placed.max(need);
            for (total, slot) in next.iter_mut().enumerate().skip(lo) {
                *slot += w * crate::formulas::binomial(n - placed, total - placed);
            }
        }
        ways = next;
    }
    Ok(ways.swap_remove(n))
}

fn check_segment(n: usize, s: usize) -> Result<()> {
    if s == 0 || s > n {
        return Err(Error::Domain(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    Ok(())
}

/// Every function `[n] → codomain`, lexicographic, no filtering.
pub fn functions(n: usize, codomain: &[usize]) -> Functions {
    Functions {
        codomain: codomain.to_vec(),
        idx: vec![0; n],
        done: codomain.is_empty() && n > 0,
    }
}

/// Odometer over `codomain^n`.
#[derive(Debug, Clone)]
pub struct Functions {
    codomain: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Functions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.codomain[i]).collect();
        let base = self.codomain.len();
        match (0..self.idx.len()).rev().find(|&j| self.idx[j] + 1 < base) {
            Some(j) => {
                self.idx[j] += 1;
                self.idx[j + 1..].iter_mut().for_each(|i| *i = 0);
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Non-decreasing members of `PF_{n|[s]}`, i.e. the orbits of `S_n` acting by
/// permuting cars. Walks every non-decreasing list in `[s]^n` and parks it.
pub fn count_nondecreasing_restricted(n: usize, s: usize) -> Result<BigCount> {
    check_segment(n, s)?;
    let mut list = vec![1usize; n];
    let mut scratch = Vec::new();
    let mut count = 0u64;
    loop {
        if defect_raw(&list, &mut scratch, n) == 0 {
            count += 1;
        }
        // next non-decreasing list
        match (0..n).rev().find(|&j| list[j] < s) {
            Some(j) => {
                let v = list[j] + 1;
                list[j..].iter_mut().for_each(|x| *x = v);
            }
            None => break,
        }
    }
    Ok(BigInt::from(count))
}

/// `c[i]` = number of `π ∈ PF_{n|[s]}` with exactly `i` cars preferring spot 1,
/// for `i` in `0..=n`.
pub fn ones_distribution(n: usize, s: usize) -> Result<Vec<BigCount>> {
    check_segment(n, s)?;
    let mut tally = vec![0u64; n + 1];
    for pi in enum_restricted(n, &RestrictionSet::initial_segment(n, s)?)? {
        tally[pi.ones()] += 1;
    }
    Ok(tally.into_iter().map(BigInt::from).collect())
}

/// Number of `π ∈ PF_{n|[s]}` whose parking outcome is `sigma`.
pub fn fiber_size_bruteforce(sigma: &Permutation, s: usize) -> Result<BigCount> {
    let n = sigma.n();
    check_segment(n, s)?;
    let mut count = 0u64;
    for pi in enum_restricted(n, &RestrictionSet::initial_segment(n, s)?)? {
        if park(&pi, n)?.outcome().as_ref() == Some(sigma) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// Number of `ψ ∈ [s]^n` that leave exactly `n - s` cars unparked on `s` spots.
pub fn count_min_defect(n: usize, s: usize) -> Result<BigCount> {
    check_segment(n, s)?;
    let codomain: Vec<usize> = (1..=s).collect();
    let mut scratch = Vec::new();
    let count = functions(n, &codomain)
        .filter(|psi| defect_raw(psi, &mut scratch, s) == n - s)
        .count();
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::park::{is_parking_function, is_prime};

    fn set(n: usize, e: &[usize]) -> RestrictionSet {
        RestrictionSet::new(n, e.to_vec()).unwrap()
    }

    fn lists(it: Restricted) -> Vec<Vec<usize>> {
        it.map(PreferenceList::into_vec).collect()
    }

    /// Unpruned filter over `S^n`, the reference for the pruned walk.
    fn naive(n: usize, s: &RestrictionSet, prime: bool) -> Vec<Vec<usize>> {
        functions(n, s.elements())
            .filter(|v| {
                let p = PreferenceList::new(v.clone()).unwrap();
                if prime {
                    is_prime(&p).unwrap()
                } else {
                    is_parking_function(&p).unwrap()
                }
            })
            .collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            lists(enum_restricted(2, &set(2, &[1, 2])).unwrap()),
            vec![vec![1, 1], vec![1, 2], vec![2, 1]]
        );
        assert_eq!(
            lists(enum_restricted(2, &set(2, &[1])).unwrap()),
            vec![vec![1, 1]]
        );
        assert!(lists(enum_restricted(2, &set(2, &[2])).unwrap()).is_empty());
        assert_eq!(
            enum_restricted(2, &set(2, &[])).unwrap_err(),
            Error::EmptyRestriction
        );
        assert_eq!(
            lists(enum_restricted(0, &set(0, &[])).unwrap()),
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn pruned_walk_matches_naive_filter_on_every_subset() {
        for n in 1..=5 {
            for mask in 1u32..(1 << n) {
                let elems: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let s = set(n, &elems);
                assert_eq!(lists(enum_restricted(n, &s).unwrap()), naive(n, &s, false));
                assert_eq!(
                    lists(enum_prime_restricted(n, &s).unwrap()),
                    naive(n, &s, true)
                );
            }
        }
    }

    #[test]
    fn counts_from_known_sequences() {
        assert_eq!(count_restricted(5, &set(5, &[1, 2])).unwrap(), 31.into());
        assert_eq!(
            count_restricted(5, &set(5, &[1, 2, 3])).unwrap(),
            206.into()
        );
        assert_eq!(
            count_restricted(3, &RestrictionSet::full(3)).unwrap(),
            16.into()
        );
    }

    #[test]
    fn prime_counts() {
        assert_eq!(
            count_prime_restricted(4, &RestrictionSet::full(4)).unwrap(),
            27.into()
        );
        assert_eq!(count_prime_restricted(3, &set(3, &[1])).unwrap(), 1.into());
        // PPF_3 = {(1,1,1)} ∪ rearrangements of (1,1,2); only (1,1,1) avoids 2.
        assert_eq!(
            count_prime_restricted(3, &set(3, &[1, 3])).unwrap(),
            1.into()
        );
        assert_eq!(count_prime_restricted(3, &set(3, &[])).unwrap(), 0.into());
    }

    #[test]
    fn nondecreasing_counts() {
        assert_eq!(count_nondecreasing_restricted(2, 2).unwrap(), 2.into());
        for n in 1..=6 {
            assert_eq!(count_nondecreasing_restricted(n, 1).unwrap(), 1.into());
        }
        let catalan = [1, 2, 5, 14, 42, 132];
        for (n, c) in (1..=6).zip(catalan) {
            assert_eq!(count_nondecreasing_restricted(n, n).unwrap(), c.into());
        }
        assert!(count_nondecreasing_restricted(2, 3).is_err());
    }

    #[test]
    fn ones_distributions() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(ones_distribution(2, 2).unwrap(), v(&[0, 2, 1]));
        assert_eq!(ones_distribution(1, 1).unwrap(), v(&[0, 1]));
        let total: BigInt = ones_distribution(4, 3).unwrap().into_iter().sum();
        assert_eq!(total, count_restricted(4, &set(4, &[1, 2, 3])).unwrap());
    }

    #[test]
    fn fibers() {
        let p = |v: &[usize]| Permutation::new(v.to_vec()).unwrap();
        assert_eq!(fiber_size_bruteforce(&p(&[1, 2]), 2).unwrap(), 2.into());
        assert_eq!(fiber_size_bruteforce(&p(&[2, 1]), 1).unwrap(), 0.into());
        assert_eq!(fiber_size_bruteforce(&p(&[2, 1]), 2).unwrap(), 1.into());
    }

    #[test]
    fn min_defect_counts() {
        assert_eq!(count_min_defect(2, 1).unwrap(), 1.into());
        assert_eq!(count_min_defect(3, 2).unwrap(), 7.into());
        assert_eq!(count_min_defect(5, 2).unwrap(), 31.into());
    }

    #[test]
    fn counting_without_listing_matches_enumeration() {
        for n in 0..=5 {
            for mask in 0u32..(1 << n) {
                let e: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
                let s = set(n, &e);
                let listed = if e.is_empty() && n > 0 {
                    BigInt::from(0)
                } else {
                    count_restricted(n, &s).unwrap()
                };
                assert_eq!(count_restricted_dp(n, &s).unwrap(), listed, "n={n} S={s}");
            }
        }
        assert_eq!(
            count_restricted_dp(5, &set(5, &[1, 2, 3])).unwrap(),
            BigInt::from(206)
        );
    }

    #[test]
    fn functions_odometer() {
        assert_eq!(
            functions(2, &[1, 3]).collect::<Vec<_>>(),
            vec![vec![1, 1], vec![1, 3], vec![3, 1], vec![3, 3]]
        );
        assert_eq!(functions(0, &[1]).count(), 1);
        assert_eq!(functions(2, &[]).count(), 0);
    }
}
