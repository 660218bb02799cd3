//! Circular streets with modular preferences.
//!
//! A circle of `gs` spots where cars may only prefer `1, g+1, …, g(s-1)+1`.
//! With fewer cars than spots everybody parks, and the `k` empty spots fall
//! into runs that each end just before a preferable spot. Pairing every empty
//! run with the filled stretch before it cuts the circle into blocks whose
//! lengths are multiples of `g`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::count_restricted_dp;
use crate::error::{Error, Result};
use crate::formulas::{compositions, multinomial, Composition};
use crate::park::PreferenceList;
use crate::restriction::RestrictionSet;

/// Cars parked around a circle of `g * s` spots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularState {
    pub g: usize,
    pub s: usize,
    /// `occupancy[j - 1]` is the car in spot `j`.
    pub occupancy: Vec<Option<usize>>,
    pub prefs: PreferenceList,
}

impl CircularState {
    pub fn circumference(&self) -> usize {
        self.g * self.s
    }

    /// Empty spots, 1-based, in increasing order.
    pub fn empty_spots(&self) -> Vec<usize> {
        (1..=self.occupancy.len())
            .filter(|&j| self.occupancy[j - 1].is_none())
            .collect()
    }

    /// Rotates every preference forward by `g`, i.e. one row.
    pub fn rotated_prefs(&self) -> PreferenceList {
        let gs = self.circumference();
        PreferenceList::from_vec_unchecked(
            self.prefs
                .as_slice()
                .iter()
                .map(|&p| (p - 1 + self.g) % gs + 1)
                .collect(),
        )
    }
}

fn check_dims(g: usize, s: usize) -> Result<()> {
    if g == 0 || s == 0 {
        return Err(Error::Domain(format!("need g, s >= 1, got g={g}, s={s}")));
    }
    Ok(())
}

/// Parks cars around the circle; each takes its preferred spot or the next
/// free one clockwise.
pub fn circular_park(prefs: &PreferenceList, g: usize, s: usize) -> Result<CircularState> {
    check_dims(g, s)?;
    let gs = g * s;
    if prefs.n() > gs {
        return Err(Error::Domain(format!(
            "{} cars do not fit on {gs} spots",
            prefs.n()
        )));
    }
    for (car, &p) in prefs.as_slice().iter().enumerate() {
        if p > gs || (p - 1) % g != 0 {
            return Err(Error::BadModularPreference {
                car: car + 1,
                pref: p,
            });
        }
    }
    let mut occupancy = vec![None; gs];
    for (car, &p) in prefs.as_slice().iter().enumerate() {
        let mut j = p - 1;
        while occupancy[j].is_some() {
            j = (j + 1) % gs;
        }
        occupancy[j] = Some(car + 1);
    }
    Ok(CircularState {
        g,
        s,
        occupancy,
        prefs: prefs.clone(),
    })
}

/// Spots (0-based) that start a filled stretch right after an empty one.
fn anchors(occupied: &[bool]) -> Vec<usize> {
    let len = occupied.len();
    (0..len)
        .filter(|&j| occupied[j] && !occupied[(j + len - 1) % len])
        .collect()
}

/// `(λ_r, μ_r)` for the block opening at each anchor, in anchor order.
fn blocks(occupied: &[bool], anchors: &[usize], g: usize) -> Result<Vec<(usize, usize)>> {
    let len = occupied.len();
    let mut out = Vec::with_capacity(anchors.len());
    for (r, &a) in anchors.iter().enumerate() {
        let next = anchors[(r + 1) % anchors.len()];
        let span = match (next + len - a) % len {
            0 => len,
            d => d,
        };
        if a % g != 0 || span % g != 0 {
            return Err(Error::NotBlockAligned(span));
        }
        let filled = (0..span).take_while(|&d| occupied[(a + d) % len]).count();
        out.push((span - filled, span / g));
    }
    Ok(out)
}

/// Index of the rotation giving the lexicographically smallest `(λ, μ)`;
/// the first such rotation on ties.
fn least_rotation(pairs: &[(usize, usize)]) -> usize {
    let key = |r: usize| -> (Vec<usize>, Vec<usize>) {
        let n = pairs.len();
        (0..n).map(|t| pairs[(r + t) % n]).unzip()
    };
    (0..pairs.len())
        .min_by(|&a, &b| key(a).cmp(&key(b)).then(a.cmp(&b)))
        .unwrap_or(0)
}

/// How the empty spots of a circular configuration cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Sizes of the empty runs.
    pub lambda: Composition,
    /// Lengths of the (filled, empty) blocks divided by `g`.
    pub mu: Composition,
    /// First spot (1-based) of the block the reading starts at.
    pub anchor: usize,
}

/// Reads the blocks starting from the rotation whose `(λ, μ)` is
/// lexicographically smallest, breaking ties by the lowest anchor spot.
pub fn decompose(state: &CircularState) -> Result<Decomposition> {
    let occupied: Vec<bool> = state.occupancy.iter().map(Option::is_some).collect();
    if occupied.iter().all(|&o| o) {
        return Err(Error::Domain("no empty spots to decompose around".into()));
    }
    let anchors = anchors(&occupied);
    if anchors.is_empty() {
        return Err(Error::Domain("circle holds no cars".into()));
    }
    let pairs = blocks(&occupied, &anchors, state.g)?;
    let r = least_rotation(&pairs);
    let n = pairs.len();
    let (lambda, mu): (Vec<usize>, Vec<usize>) = (0..n).map(|t| pairs[(r + t) % n]).unzip();
    Ok(Decomposition {
        lambda: Composition::new(lambda)?,
        mu: Composition::new(mu)?,
        anchor: anchors[r] + 1,
    })
}

/// Cuts the circle open just after its single empty run and relabels the
/// preferences from there, giving a linear restricted parking function of
/// length `gs - k`. `None` when the empty spots form several runs or there
/// are none. With no cars the result is the empty list.
pub fn linearize(state: &CircularState) -> Option<PreferenceList> {
    let occupied: Vec<bool> = state.occupancy.iter().map(Option::is_some).collect();
    if occupied.iter().all(|&o| !o) {
        return Some(PreferenceList::from_vec_unchecked(Vec::new()));
    }
    let anchors = anchors(&occupied);
    let &[a] = anchors.as_slice() else {
        return None;
    };
    let gs = occupied.len();
    Some(PreferenceList::from_vec_unchecked(
        state
            .prefs
            .as_slice()
            .iter()
            .map(|&p| (p - 1 + gs - a) % gs + 1)
            .collect(),
    ))
}

/// One summand of the relation: all `(λ, μ)` with `n` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermRow {
    pub n: usize,
    pub expected: BigRational,
    pub observed: BigInt,
}

/// One cyclic class of `(λ, μ)`, keyed by its least rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub expected: BigRational,
    pub observed: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub g: usize,
    pub s: usize,
    pub k: usize,
    pub total_lists: BigInt,
    pub terms: Vec<TermRow>,
    pub classes: Vec<ClassRow>,
    /// Lists with a single empty run, i.e. those [`linearize`] accepts.
    pub linearizable: BigInt,
    /// `#PF_{gs-k | S ∩ [gs-k]}`, counted directly.
    pub linear_count: BigInt,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        let s = BigInt::from(self.s);
        let lists = s.pow((self.g * self.s - self.k) as u32);
        let term_sum: BigRational = self.terms.iter().map(|t| t.expected.clone()).sum();
        self.terms
            .iter()
            .all(|t| t.expected == BigRational::from_integer(t.observed.clone()))
            && self
                .classes
                .iter()
                .all(|c| c.expected == BigRational::from_integer(c.observed.clone()))
            && term_sum == BigRational::from_integer(self.total_lists.clone())
            && self.linearizable == &s * &self.linear_count
            && self.total_lists == lists
    }
}

type ClassKey = (Vec<usize>, Vec<usize>);

fn canonical(lambda: &[usize], mu: &[usize]) -> ClassKey {
    let pairs: Vec<(usize, usize)> = lambda.iter().copied().zip(mu.iter().copied()).collect();
    let r = least_rotation(&pairs);
    let n = pairs.len();
    (0..n).map(|t| pairs[(r + t) % n]).unzip()
}

/// Tallies every circular list of `gs - k` cars by its block structure.
fn classify_all(g: usize, s: usize, cars: usize) -> BTreeMap<ClassKey, u64> {
    let gs = g * s;
    let split = cars.min(2);
    let chunks = s.pow(split as u32);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut tally = BTreeMap::new();
            let mut idx = vec![0usize; cars];
            let mut c = chunk;
            for slot in idx[..split].iter_mut().rev() {
                *slot = c % s;
                c /= s;
            }
            let mut occupied = vec![false; gs];
            loop {
                occupied.iter_mut().for_each(|o| *o = false);
                for &row in &idx {
                    let mut j = row * g;
                    while occupied[j] {
                        j = (j + 1) % gs;
                    }
                    occupied[j] = true;
                }
                let anchors = anchors(&occupied);
                let pairs = blocks(&occupied, &anchors, g).expect("blocks are always aligned");
                let (lambda, mu): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
                *tally.entry(canonical(&lambda, &mu)).or_insert(0u64) += 1;
                // odometer over the cars after the split prefix
                match (split..cars).rev().find(|&j| idx[j] + 1 < s) {
                    Some(j) => {
                        idx[j] += 1;
                        idx[j + 1..].iter_mut().for_each(|x| *x = 0);
                    }
                    None => break,
                }
            }
            tally
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        })
}

/// Checks the circular counting relation term by term against an exhaustive
/// classification of all `s^(gs-k)` circular lists. Segment counts on the
/// expected side are counted directly, not through the recursion.
pub fn verify_relation(g: usize, s: usize, k: usize, budget: u128) -> Result<RelationReport> {
    check_dims(g, s)?;
    let gs = g * s;
    if k == 0 || k >= gs {
        return Err(Error::Domain(format!("need 1 <= k < gs = {gs}, got k={k}")));
    }
    let cars = gs - k;
    let required = (s as u128).checked_pow(cars as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut segment_counts: HashMap<usize, BigInt> = HashMap::new();
    let mut segment = |len: usize| -> Result<BigInt> {
        if let Some(v) = segment_counts.get(&len) {
            return Ok(v.clone());
        }
        let v = count_restricted_dp(len, &RestrictionSet::modular(g, len)?)?;
        segment_counts.insert(len, v.clone());
        Ok(v)
    };

    let mut expected_classes: BTreeMap<ClassKey, BigRational> = BTreeMap::new();
    let mut terms = Vec::new();
    for n in 1..=k.min(s) {
        let mut term = BigRational::zero();
        for lambda in compositions(k, n)? {
            for mu in compositions(s, n)? {
                let Some(lens) = crate::formulas::modular_segments(g, &lambda, &mu) else {
                    continue;
                };
                let parts: Vec<i64> = lens.iter().map(|&m| m as i64).collect();
                let mut ways = multinomial(cars, &parts)?;
                for &m in &lens {
                    ways *= segment(m)?;
                }
                let contribution = BigRational::new(BigInt::from(s) * ways, BigInt::from(n));
                term += &contribution;
                *expected_classes
                    .entry(canonical(lambda.parts(), mu.parts()))
                    .or_insert_with(BigRational::zero) += contribution;
            }
        }
        terms.push(TermRow {
            n,
            expected: term,
            observed: BigInt::zero(),
        });
    }

    let observed = classify_all(g, s, cars);
    let mut classes: BTreeMap<ClassKey, ClassRow> = expected_classes
        .into_iter()
        .map(|((lambda, mu), expected)| {
            let row = ClassRow {
                lambda: lambda.clone(),
                mu: mu.clone(),
                expected,
                observed: BigInt::zero(),
            };
            ((lambda, mu), row)
        })
        .collect();
    let mut linearizable = BigInt::zero();
    let mut total_lists = BigInt::zero();
    for ((lambda, mu), count) in observed {
        let n = lambda.len();
        total_lists += count;
        if n == 1 {
            linearizable += count;
        }
        if let Some(t) = terms.iter_mut().find(|t| t.n == n) {
            t.observed += count;
        } else {
            terms.push(TermRow {
                n,
                expected: BigRational::zero(),
                observed: count.into(),
            });
        }
        classes
            .entry((lambda.clone(), mu.clone()))
            .or_insert_with(|| ClassRow {
                lambda,
                mu,
                expected: BigRational::zero(),
                observed: BigInt::zero(),
            })
            .observed += count;
    }
    terms.sort_by_key(|t| t.n);

    Ok(RelationReport {
        g,
        s,
        k,
        total_lists,
        terms,
        classes: classes.into_values().collect(),
        linearizable,
        linear_count: segment(cars)?,
    })
}

/// Every `(g, s, k)` with `gs <= max_circumference`, `1 <= k < gs` and
/// `s^(gs-k) <= budget`.
pub fn relation_instances(max_circumference: usize, budget: u128) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for g in 1..=max_circumference {
        for s in 1..=max_circumference / g {
            for k in 1..g * s {
                let size = (s as u128).checked_pow((g * s - k) as u32);
                if size.is_some_and(|v| v <= budget) {
                    out.push((g, s, k));
                }
            }
        }
    }
    out
}
