//! Invariant suites: closed forms and bijections checked against exhaustive
//! enumeration within configurable bounds.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bijections::{
    build_t, colorings, involution, is_u_parking, prime_to_restricted, restricted_to_prime,
    to_u_parking, u_vector, Color, InvolutionImage, Variant,
};
use crate::circular::{circular_park, decompose, linearize, relation_instances, verify_relation};
use crate::enumerate::{
    count_min_defect, count_nondecreasing_restricted, count_prime_restricted, count_restricted,
    count_restricted_dp, enum_prime_restricted, enum_restricted, fiber_size_bruteforce, functions,
    ones_distribution,
};
use crate::error::{Error, Result};
use crate::formulas::{
    abel_check, abel_defect_in_s, catalan_number, catalan_triangle, fiber_formula,
    mod_count_general, mod_count_k1, mod_count_k2, ones_poly_alternating, ones_poly_subtractive,
    pf_total, ppf_total, prime_abel_sum, prime_alternating, prime_subtractive, restricted_abel_sum,
    restricted_alternating, restricted_subtractive, IntPolynomial,
};
use crate::park::{Permutation, PreferenceList};
use crate::restriction::RestrictionSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Totals,
    Formulas,
    Bijections,
    Involution,
    Abel,
    Orbits,
    Fibers,
    Modular,
    Defect,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Totals,
        Suite::Formulas,
        Suite::Bijections,
        Suite::Involution,
        Suite::Abel,
        Suite::Orbits,
        Suite::Fibers,
        Suite::Modular,
        Suite::Defect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Totals => "totals",
            Suite::Formulas => "formulas",
            Suite::Bijections => "bijections",
            Suite::Involution => "involution",
            Suite::Abel => "abel",
            Suite::Orbits => "orbits",
            Suite::Fibers => "fibers",
            Suite::Modular => "modular",
            Suite::Defect => "defect",
        }
    }

    /// Largest `n` that finishes in seconds.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Totals | Suite::Formulas | Suite::Defect => 6,
            Suite::Bijections | Suite::Involution | Suite::Fibers => 5,
            Suite::Abel => 10,
            Suite::Orbits => 8,
            Suite::Modular => 12,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// Limits for a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest size enumerated exhaustively. For the modular suite, the
    /// largest circumference `gs`.
    pub n_max: usize,
    /// Largest size at which two closed forms are compared to each other.
    pub formula_n_max: usize,
    /// Largest brute-force space, in candidate lists.
    pub budget: u128,
}

impl Bounds {
    pub fn for_suite(suite: Suite) -> Self {
        Bounds {
            n_max: suite.default_n_max(),
            formula_n_max: 12,
            budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, label: impl Into<String>, values: &[T]) {
        let passed = values.windows(2).all(|w| w[0] == w[1]);
        let detail = values
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" / ");
        self.check(label, passed, detail);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Rough count of candidate lists a suite walks at its largest size.
pub fn search_space(suite: Suite, n_max: usize) -> u128 {
    let n = n_max as u128;
    let pow = |base: u128| base.checked_pow(n_max as u32).unwrap_or(u128::MAX);
    match suite {
        Suite::Totals | Suite::Formulas | Suite::Defect => pow(n),
        Suite::Bijections => pow(2 * n),
        Suite::Involution => pow(2 * n),
        Suite::Fibers => (1..=n).product::<u128>().saturating_mul(pow(n)),
        Suite::Abel | Suite::Orbits | Suite::Modular => 0,
    }
}

/// Runs one suite, refusing bounds whose search space exceeds the budget.
pub fn run(suite: Suite, bounds: &Bounds) -> Result<SuiteReport> {
    let required = search_space(suite, bounds.n_max);
    if required > bounds.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: bounds.budget,
        });
    }
    match suite {
        Suite::Totals => totals(bounds.n_max),
        Suite::Formulas => formulas(bounds.n_max, bounds.formula_n_max),
        Suite::Bijections => bijections(bounds.n_max),
        Suite::Involution => involutions(bounds.n_max),
        Suite::Abel => abel(bounds.n_max),
        Suite::Orbits => orbits(bounds.n_max),
        Suite::Fibers => fibers(bounds.n_max),
        Suite::Modular => modular(bounds.n_max, bounds.budget),
        Suite::Defect => defect(bounds.n_max),
    }
}

fn seg(n: usize, s: usize) -> Result<RestrictionSet> {
    RestrictionSet::initial_segment(n, s)
}

fn subsets(n: usize) -> impl Iterator<Item = RestrictionSet> {
    (0u32..(1 << n)).map(move |mask| {
        let e = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        RestrictionSet::new(n, e).expect("subset of [n]")
    })
}

/// `#PF_n = (n+1)^(n-1)` and `#PPF_n = (n-1)^(n-1)` by enumeration.
pub fn totals(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Totals);
    for n in 1..=n_max {
        let full = RestrictionSet::full(n);
        r.equal(
            format!("PF_{n}"),
            &[count_restricted(n, &full)?, pf_total(n)],
        );
        r.equal(
            format!("PPF_{n}"),
            &[count_prime_restricted(n, &full)?, ppf_total(n)?],
        );
    }
    Ok(r)
}

/// Both closed forms for `[s]`-restricted and prime counts against
/// enumeration, then against each other up to `formula_n_max`.
pub fn formulas(n_max: usize, formula_n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Formulas);
    for n in 1..=n_max {
        for s in 1..=n {
            r.equal(
                format!("PF_{{{n}|[{s}]}} subtractive/alternating/enumerated"),
                &[
                    restricted_subtractive(n, s)?,
                    restricted_alternating(n, s)?,
                    count_restricted(n, &seg(n, s)?)?,
                ],
            );
            if s < n {
                r.equal(
                    format!("PPF_{{{n}|[{s}]}} subtractive/alternating/enumerated"),
                    &[
                        prime_subtractive(n, s)?,
                        prime_alternating(n, s)?,
                        count_prime_restricted(n, &seg(n, s)?)?,
                    ],
                );
            }
        }
    }
    for n in n_max + 1..=formula_n_max {
        let mut ok = true;
        for s in 1..=n {
            ok &= restricted_subtractive(n, s)? == restricted_alternating(n, s)?;
            ok &= restricted_subtractive(n, s)? == count_restricted_dp(n, &seg(n, s)?)?;
            if s < n {
                ok &= prime_subtractive(n, s)? == prime_alternating(n, s)?;
            }
        }
        r.check(
            format!("n={n}: subtractive = alternating for all s"),
            ok,
            "",
        );
    }
    for n in 1..=formula_n_max {
        for s in 1..=n {
            let restricted = restricted_abel_sum(n, s);
            let prime = prime_abel_sum(n, s);
            let s_n = BigRational::from_integer(BigInt::from(s).pow(n as u32));
            let s1_n = BigRational::from_integer(BigInt::from(s - 1).pow(n as u32));
            r.check(
                format!("n={n} s={s}: glued sums"),
                restricted == s_n && prime == -s1_n,
                format!("{restricted} / {prime}"),
            );
        }
    }
    Ok(r)
}

/// Prime pushforward and its inverse on every `S ∋ 1`, and the u-parking
/// relabelling on every `S`.
pub fn bijections(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Bijections);
    for n in 1..=n_max {
        for set in subsets(n) {
            if set.contains(1) {
                let t = build_t(&set, n)?;
                let mut images = HashSet::new();
                let mut ok = true;
                let mut primes = 0usize;
                for pi in enum_prime_restricted(n, &set)? {
                    primes += 1;
                    let psi = prime_to_restricted(&pi, &set, n)?;
                    ok &= psi.as_slice().iter().all(|&p| t.contains(p));
                    ok &= restricted_to_prime(&psi, &set, n)? == pi;
                    images.insert(psi);
                }
                let targets: Vec<PreferenceList> = enum_restricted(n, &t)?.collect();
                ok &= images.len() == primes;
                for psi in &targets {
                    ok &= images.contains(psi);
                }
                r.check(
                    format!("n={n} S={set} T={t}: pushforward round trip"),
                    ok && targets.len() == primes,
                    format!("{primes} / {}", targets.len()),
                );
            }

            let u = u_vector(&set, n);
            let sources: Vec<PreferenceList> = if set.is_empty() {
                Vec::new()
            } else {
                enum_restricted(n, &set)?.collect()
            };
            let mut images = HashSet::new();
            let mut ok = true;
            for pi in &sources {
                let img = to_u_parking(pi, &set)?;
                ok &= is_u_parking(img.as_slice(), &u);
                images.insert(img.into_vec());
            }
            let top = u.last().copied().unwrap_or(0);
            let codomain: Vec<usize> = (1..=top).collect();
            let u_parking: HashSet<Vec<usize>> = functions(n, &codomain)
                .filter(|psi| is_u_parking(psi, &u))
                .collect();
            r.check(
                format!("n={n} S={set}: u-parking image"),
                ok && images.len() == sources.len() && images == u_parking,
                format!("{} / {}", sources.len(), u_parking.len()),
            );
        }
    }
    Ok(r)
}

/// The recoloring involution on every valid 2-coloring, both variants.
pub fn involutions(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Involution);
    for n in 1..=n_max {
        for s in 1..=n {
            for variant in [Variant::Plain, Variant::Prime] {
                let all = colorings(n, s, variant)?;
                let valid: HashSet<_> = all.iter().cloned().collect();
                let mut ok = true;
                let mut signed = 0i64;
                let mut fixed = HashSet::new();
                for c in &all {
                    signed += c.sign();
                    match involution(c)? {
                        InvolutionImage::Fixed => {
                            ok &= c.colors().iter().all(|&x| x == Color::Indigo);
                            ok &= c.prefs().as_slice().iter().all(|&p| p <= s);
                            fixed.insert(c.prefs().clone());
                        }
                        InvolutionImage::Paired(d) => {
                            ok &= d.sign() == -c.sign();
                            ok &= valid.contains(&d);
                            ok &= involution(&d)? == InvolutionImage::Paired(c.clone());
                        }
                    }
                }
                let (expected, members): (BigInt, HashSet<PreferenceList>) = match variant {
                    Variant::Plain => (
                        count_restricted(n, &seg(n, s)?)?,
                        enum_restricted(n, &seg(n, s)?)?.collect(),
                    ),
                    Variant::Prime => (
                        count_prime_restricted(n, &seg(n, s)?)?,
                        enum_prime_restricted(n, &seg(n, s)?)?.collect(),
                    ),
                };
                r.check(
                    format!("n={n} s={s} {variant:?}: sign-reversing involution"),
                    ok && fixed == members && BigInt::from(signed) == expected,
                    format!(
                        "{} colorings, signed sum {signed}, expected {expected}",
                        all.len()
                    ),
                );
            }
        }
    }
    Ok(r)
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Abel's identity on a rational grid and at the two specializations, and
/// the number-of-ones enumerators against each other and enumeration.
pub fn abel(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Abel);
    let mut grid: Vec<BigRational> = (-3..=3).map(|v| q(v, 1)).collect();
    grid.extend([q(1, 2), q(-1, 2)]);
    for n in 0..=n_max {
        let mut bad = Vec::new();
        for x in &grid {
            for y in &grid {
                if !abel_check(n, x, y).holds() {
                    bad.push(format!("({x},{y})"));
                }
            }
        }
        r.check(
            format!("n={n}: rational grid"),
            bad.is_empty(),
            bad.join(" "),
        );
    }
    for n in 1..=n_max {
        for s in 1..=n {
            let (n_, s_) = (n as i64, s as i64);
            let one = abel_check(n, &q(1, 1), &q(s_ - n_ - 1, 1));
            r.check(
                format!("n={n} s={s}: x=1, y=s-n-1"),
                one.holds() && one.lhs == q(s_, 1).pow(n as i32),
                one.lhs.to_string(),
            );
            for y in [s_ - n_ + 1, s_ - n_] {
                let e = abel_check(n, &q(-1, 1), &q(y, 1));
                r.check(
                    format!("n={n} s={s}: x=-1, y={y}"),
                    e.holds(),
                    e.lhs.to_string(),
                );
            }
            let minus = abel_check(n, &q(-1, 1), &q(s_ - n_, 1));
            r.check(
                format!("n={n} s={s}: x=-1, y=s-n gives (s-1)^n"),
                minus.lhs == q(s_ - 1, 1).pow(n as i32),
                minus.lhs.to_string(),
            );
        }
    }
    for n in 1..=n_max {
        for s in 1..=n {
            let a = ones_poly_subtractive(n, s)?;
            let b = ones_poly_alternating(n, s)?;
            let mut ok = a == b;
            let mut detail = a.to_string();
            if s == n {
                let tree = &IntPolynomial::x() * &IntPolynomial::x_plus(n as i64).pow(n as u32 - 1);
                ok &= a == tree;
            }
            if n <= 6 {
                let dist = ones_distribution(n, s)?;
                ok &= (0..=n).all(|d| a.coeff(d) == dist[d]) && a.degree() <= Some(n);
                detail = format!("{a} = {dist:?}");
            }
            r.check(format!("n={n} s={s}: ones enumerator"), ok, detail);
        }
        let defects = abel_defect_in_s(n);
        r.check(
            format!("n={n}: difference vanishes at s=1..n"),
            defects.iter().all(IntPolynomial::is_zero),
            "",
        );
    }
    Ok(r)
}

/// Non-decreasing restricted parking functions against Catalan's triangle.
pub fn orbits(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Orbits);
    for n in 1..=n_max {
        for s in 1..=n {
            r.equal(
                format!("n={n} s={s}: orbits / triangle"),
                &[
                    count_nondecreasing_restricted(n, s)?,
                    catalan_triangle(n, s - 1)?,
                ],
            );
        }
        r.equal(
            format!("n={n}: diagonal is Catalan"),
            &[count_nondecreasing_restricted(n, n)?, catalan_number(n)],
        );
    }
    let first: Vec<BigInt> = (0..6).map(catalan_number).collect();
    r.check(
        "Catalan numbers 1,1,2,5,14,42",
        first == [1, 1, 2, 5, 14, 42].map(BigInt::from),
        format!("{first:?}"),
    );
    Ok(r)
}

/// Fiber sizes over every outcome permutation.
pub fn fibers(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Fibers);
    for n in 1..=n_max {
        for s in 1..=n {
            let mut ok = true;
            let mut total = BigInt::zero();
            for sigma in Permutation::all(n) {
                let f = fiber_formula(&sigma, s)?;
                ok &= f == fiber_size_bruteforce(&sigma, s)?;
                total += f;
            }
            let count = count_restricted(n, &seg(n, s)?)?;
            r.check(
                format!("n={n} s={s}: fibers"),
                ok && total == count,
                format!("sum {total}, count {count}"),
            );
        }
    }
    Ok(r)
}

/// Circular relation and its closed specializations. `max_circumference`
/// bounds `gs`.
pub fn modular(max_circumference: usize, budget: u128) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Modular);
    for (g, s) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let len = g * s - 1;
        r.equal(
            format!("g={g} s={s}: k=1 count"),
            &[
                count_restricted(len, &RestrictionSet::modular(g, len)?)?,
                mod_count_k1(g, s)?,
                mod_count_general(g, s, 1)?,
            ],
        );
    }
    for g in 1..=4 {
        for s in 1..=4 {
            if g * s >= 3 {
                let len = g * s - 2;
                r.equal(
                    format!("g={g} s={s}: k=2 count"),
                    &[
                        count_restricted(len, &RestrictionSet::modular(g, len)?)?,
                        mod_count_k2(g, s)?,
                        mod_count_general(g, s, 2)?,
                    ],
                );
            }
        }
    }

    for (g, s, k) in relation_instances(max_circumference, budget) {
        let rep = verify_relation(g, s, k, budget)?;
        let detail = rep
            .terms
            .iter()
            .map(|t| format!("n={}: {}", t.n, t.observed))
            .collect::<Vec<_>>()
            .join(", ");
        r.check(format!("g={g} s={s} k={k}: relation"), rep.passed(), detail);
        let len = g * s - k;
        let listed = count_restricted(len, &RestrictionSet::modular(g, len)?)?;
        r.equal(
            format!("g={g} s={s} k={k}: recursion"),
            &[mod_count_general(g, s, k)?, listed],
        );
    }

    let left = circular_park(&PreferenceList::new(vec![7, 1, 1, 7, 7, 7, 4])?, 3, 3)?;
    let lin = linearize(&left);
    let d = decompose(&left)?;
    r.check(
        "(7,1,1,7,7,7,4) on 3x3",
        left.empty_spots() == [5, 6]
            && lin == Some(PreferenceList::new(vec![1, 4, 4, 1, 1, 1, 7])?)
            && d.lambda.parts() == [2]
            && d.mu.parts() == [3],
        format!("empty {:?}", left.empty_spots()),
    );
    let right = circular_park(&PreferenceList::new(vec![1, 4, 1, 4, 7, 4, 4])?, 3, 3)?;
    let d = decompose(&right)?;
    r.check(
        "(1,4,1,4,7,4,4) on 3x3",
        right.empty_spots() == [3, 9]
            && linearize(&right).is_none()
            && d.lambda.parts() == [1, 1]
            && d.mu.parts() == [1, 2],
        format!("empty {:?}", right.empty_spots()),
    );
    Ok(r)
}

/// Lists in `[s]^n` stranding exactly `n - s` cars against `#PF_{n|[s]}`.
pub fn defect(n_max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Defect);
    for n in 1..=n_max {
        for s in 1..=n {
            r.equal(
                format!("n={n} s={s}: minimal defect"),
                &[count_min_defect(n, s)?, count_restricted(n, &seg(n, s)?)?],
            );
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            let n_max = match suite {
                Suite::Modular => 6,
                _ => suite.default_n_max().min(4),
            };
            let bounds = Bounds {
                n_max,
                formula_n_max: 7,
                budget: 100_000,
            };
            let rep = run(suite, &bounds).unwrap();
            assert!(!rep.checks.is_empty(), "{suite}");
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "{suite}: {bad:?}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
