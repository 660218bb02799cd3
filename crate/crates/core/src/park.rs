//! The one-way-street parking procedure and the pointwise predicates built on it.
//!
//! Everything visible here is 1-based: car `i` is the `i`-th entry of a
//! [`PreferenceList`], and spot `j` is the `j`-th position on the street.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Preferred spots of `n` cars, one entry per car, 1-based.
///
/// The codomain is deliberately not stored: the same list is parked on streets
/// of different lengths, so range checks happen where a street length is known.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PreferenceList(Vec<usize>);

impl PreferenceList {
    pub fn new(prefs: Vec<usize>) -> Result<Self> {
        if let Some(car) = prefs.iter().position(|&p| p == 0) {
            return Err(Error::PreferenceOutOfRange {
                car: car + 1,
                pref: 0,
                spots: prefs.len(),
            });
        }
        Ok(PreferenceList(prefs))
    }

    /// Caller guarantees every entry is at least 1.
    pub(crate) fn from_vec_unchecked(prefs: Vec<usize>) -> Self {
        debug_assert!(prefs.iter().all(|&p| p >= 1));
        PreferenceList(prefs)
    }

    /// Number of cars.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Preference of car `car` (1-based).
    pub fn get(&self, car: usize) -> Option<usize> {
        car.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Largest preferred spot, or 0 for the empty list.
    pub fn max_pref(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of cars preferring spot 1.
    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&p| p == 1).count()
    }

    /// Fails unless every preference lies on a street of `spots` spots.
    pub fn check_range(&self, spots: usize) -> Result<()> {
        match self.0.iter().position(|&p| p > spots) {
            Some(car) => Err(Error::PreferenceOutOfRange {
                car: car + 1,
                pref: self.0[car],
                spots,
            }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for PreferenceList {
    type Error = Error;

    fn try_from(prefs: Vec<usize>) -> Result<Self> {
        PreferenceList::new(prefs)
    }
}

impl From<PreferenceList> for Vec<usize> {
    fn from(p: PreferenceList) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for PreferenceList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses `1,3,2` or the tuple form `(1,3,2)`. The empty string is the empty list.
impl FromStr for PreferenceList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(PreferenceList(Vec::new()));
        }
        let prefs = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Domain(format!("not a spot number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PreferenceList::new(prefs)
    }
}

/// Outcome of running the parking procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParkingResult {
    /// `occupancy[j - 1]` is the car parked in spot `j`, if any.
    pub occupancy: Vec<Option<usize>>,
    /// Cars that drove off the end of the street, in arrival order.
    pub unparked: Vec<usize>,
}

impl ParkingResult {
    pub fn defect(&self) -> usize {
        self.unparked.len()
    }

    pub fn num_cars(&self) -> usize {
        self.occupancy.iter().flatten().count() + self.unparked.len()
    }

    /// Spots left empty, 1-based.
    pub fn empty_spots(&self) -> Vec<usize> {
        self.occupancy
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(j, _)| j + 1)
            .collect()
    }

    /// Cars in spot order, when every spot is filled by exactly the cars present.
    pub fn outcome(&self) -> Option<Permutation> {
        if !self.unparked.is_empty() {
            return None;
        }
        let cars: Option<Vec<usize>> = self.occupancy.iter().copied().collect();
        cars.map(Permutation)
    }
}

/// Parks the cars of `prefs` in order on a street of `num_spots` spots.
///
/// Car `i` takes spot `prefs[i]` if free, otherwise the first free spot after
/// it; a car that finds nothing leaves and is recorded in `unparked`.
pub fn park(prefs: &PreferenceList, num_spots: usize) -> Result<ParkingResult> {
    prefs.check_range(num_spots)?;
    let mut occupancy = vec![None; num_spots];
    let mut unparked = Vec::new();
    for (i, &p) in prefs.as_slice().iter().enumerate() {
        match occupancy[p - 1..].iter().position(Option::is_none) {
            Some(off) => occupancy[p - 1 + off] = Some(i + 1),
            None => unparked.push(i + 1),
        }
    }
    Ok(ParkingResult {
        occupancy,
        unparked,
    })
}

/// Defect of a raw preference slice on `spots` spots, using `occupied` as
/// scratch space. No range checks; hot path for the brute-force oracles.
pub(crate) fn defect_raw(prefs: &[usize], occupied: &mut Vec<bool>, spots: usize) -> usize {
    occupied.clear();
    occupied.resize(spots, false);
    let mut defect = 0;
    for &p in prefs {
        match occupied[p - 1..].iter().position(|&o| !o) {
            Some(off) => occupied[p - 1 + off] = true,
            None => defect += 1,
        }
    }
    defect
}

/// Whether every car parks on a street with one spot per car.
pub fn is_parking_function(prefs: &PreferenceList) -> Result<bool> {
    Ok(park(prefs, prefs.n())?.defect() == 0)
}

/// `counts[i]` is the number of entries `<= i`, for `i` in `0..=len`.
pub(crate) fn cumulative_counts(prefs: &[usize], len: usize) -> Vec<usize> {
    let mut counts = vec![0usize; len + 1];
    for &p in prefs {
        if p <= len {
            counts[p] += 1;
        }
    }
    for i in 1..=len {
        counts[i] += counts[i - 1];
    }
    counts
}

/// At least `i` cars prefer one of the first `i` spots, for every `i`.
pub fn catalan_check(prefs: &PreferenceList) -> Result<bool> {
    let n = prefs.n();
    prefs.check_range(n)?;
    let counts = cumulative_counts(prefs.as_slice(), n);
    Ok((1..=n).all(|i| counts[i] >= i))
}

/// The order-preserving (non-decreasing) rearrangement.
pub fn nondecreasing(prefs: &PreferenceList) -> PreferenceList {
    let mut sorted = prefs.as_slice().to_vec();
    sorted.sort_unstable();
    PreferenceList(sorted)
}

/// Strict Catalan condition: more than `i` cars prefer the first `i` spots for
/// every `i < n`, and some car prefers spot 1. The single list `(1)` is prime.
pub fn is_prime(prefs: &PreferenceList) -> Result<bool> {
    let n = prefs.n();
    prefs.check_range(n)?;
    let counts = cumulative_counts(prefs.as_slice(), n);
    Ok((1..n).all(|i| counts[i] > i) && (n == 0 || counts[1] >= 1))
}

/// Number of cars that fail to park on a street of `s` spots.
pub fn defect(prefs: &PreferenceList, s: usize) -> Result<usize> {
    Ok(park(prefs, s)?.defect())
}

/// Cars written in the order of the spots they end up in.
pub fn outcome_permutation(prefs: &PreferenceList) -> Result<Permutation> {
    park(prefs, prefs.n())?
        .outcome()
        .ok_or(Error::NotAParkingFunction)
}

/// A permutation of `[n]` in one-line notation, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::Domain(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations {
            next: Some((1..=n).collect()),
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PreferenceList(self.0.clone()).fmt(f)
    }
}

/// Lexicographic successor iteration over permutations.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let pivot = i - 1;
            let j = (i..succ.len())
                .rev()
                .find(|&j| succ[j] > succ[pivot])
                .unwrap();
            succ.swap(pivot, j);
            succ[i..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(v: &[usize]) -> PreferenceList {
        PreferenceList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn constant_ones_park_in_order() {
        let r = park(&pl(&[1, 1, 1]), 3).unwrap();
        assert_eq!(r.occupancy, vec![Some(1), Some(2), Some(3)]);
        assert_eq!(r.defect(), 0);
    }

    #[test]
    fn row_parking_example_parks_everyone() {
        let r = park(&pl(&[1, 4, 4, 1, 1, 7, 1]), 7).unwrap();
        assert_eq!(r.defect(), 0);
    }

    #[test]
    fn nobody_prefers_first_spot() {
        let r = park(&pl(&[2, 2]), 2).unwrap();
        assert_eq!(r.occupancy, vec![None, Some(1)]);
        assert_eq!(r.unparked, vec![2]);
        assert_eq!(r.defect(), 1);
        assert!(!is_parking_function(&pl(&[2, 2])).unwrap());
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert_eq!(
            park(&pl(&[1, 3]), 2),
            Err(Error::PreferenceOutOfRange {
                car: 2,
                pref: 3,
                spots: 2
            })
        );
        assert!(PreferenceList::new(vec![1, 0]).is_err());
        assert!(is_parking_function(&pl(&[1, 3])).is_err());
    }

    #[test]
    fn seven_car_street() {
        let p = pl(&[1, 3, 2, 2, 4]);
        assert!(is_parking_function(&p).unwrap());
        assert!(catalan_check(&p).unwrap());
        assert_eq!(nondecreasing(&p), pl(&[1, 2, 2, 3, 4]));
        assert_eq!(
            outcome_permutation(&p).unwrap().as_slice(),
            &[1, 3, 2, 4, 5]
        );
    }

    #[test]
    fn bijections_are_parking_functions() {
        for sigma in Permutation::all(4) {
            assert!(is_parking_function(&pl(sigma.as_slice())).unwrap());
        }
    }

    #[test]
    fn catalan_check_examples() {
        assert!(catalan_check(&pl(&[1; 6])).unwrap());
        assert!(!catalan_check(&pl(&[1, 4, 1, 4, 7, 4, 4])).unwrap());
    }

    #[test]
    fn nondecreasing_examples() {
        assert_eq!(nondecreasing(&pl(&[1, 1, 1])), pl(&[1, 1, 1]));
        assert_eq!(nondecreasing(&pl(&[2, 1])), pl(&[1, 2]));
    }

    #[test]
    fn prime_examples() {
        assert!(is_prime(&pl(&[1, 1])).unwrap());
        assert!(!is_prime(&pl(&[1, 2])).unwrap());
        assert!(!is_prime(&pl(&[2, 1])).unwrap());
        assert!(!is_prime(&pl(&[2, 2])).unwrap());
        assert!(is_prime(&pl(&[1, 1, 2])).unwrap());
        assert!(is_prime(&pl(&[1])).unwrap());
        assert!(!is_prime(&pl(&[1, 1, 3])).unwrap());
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&pl(&[1, 1, 1]), 1).unwrap(), 2);
        assert_eq!(defect(&pl(&[1, 2]), 2).unwrap(), 0);
        assert_eq!(defect(&pl(&[2, 2, 2]), 2).unwrap(), 2);
    }

    #[test]
    fn outcome_examples() {
        assert_eq!(
            outcome_permutation(&pl(&[1, 1])).unwrap().as_slice(),
            &[1, 2]
        );
        assert_eq!(
            outcome_permutation(&pl(&[2, 1])).unwrap().as_slice(),
            &[2, 1]
        );
        assert_eq!(
            outcome_permutation(&pl(&[2, 2])),
            Err(Error::NotAParkingFunction)
        );
    }

    #[test]
    fn empty_list_is_a_parking_function() {
        let empty = pl(&[]);
        assert!(is_parking_function(&empty).unwrap());
        assert_eq!(outcome_permutation(&empty).unwrap().n(), 0);
        assert_eq!(defect(&empty, 0).unwrap(), 0);
    }

    #[test]
    fn parse_and_display() {
        let p: PreferenceList = "(1,4, 4)".parse().unwrap();
        assert_eq!(p, pl(&[1, 4, 4]));
        assert_eq!(p.to_string(), "(1,4,4)");
        assert_eq!("1,2".parse::<PreferenceList>().unwrap(), pl(&[1, 2]));
        assert!("1,x".parse::<PreferenceList>().is_err());
        assert!("1,0".parse::<PreferenceList>().is_err());
    }

    #[test]
    fn permutations_are_lexicographic_and_complete() {
        let all: Vec<_> = Permutation::all(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all(0).count(), 1);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }
}
