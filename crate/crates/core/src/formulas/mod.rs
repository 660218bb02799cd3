//! Exact closed forms for restricted parking functions.
//!
//! Conventions used throughout: `0^0 = 1`; a power with exponent `-1` is taken
//! over the rationals, so `(i+1)^(i-1)` at `i = 0` is `1` and `(i-1)^(i-1)` at
//! `i = 0` is `-1`; the forest factor `x(x+i)^(i-1)` is the constant `1` at
//! `i = 0`, for every `x` including `0`.

mod modular;
mod poly;

pub(crate) use modular::segment_lengths as modular_segments;
pub use modular::{
    compositions, mod_count_general, mod_count_k1, mod_count_k2, multinomial, Composition,
    Compositions,
};
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::park::Permutation;
use crate::BigCount;

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `base^exp` over the rationals with `0^0 = 1`. Panics on `0` to a negative power.
pub(crate) fn power(base: i64, exp: i64) -> BigRational {
    let b = BigRational::from_integer(base.into());
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        assert!(base != 0, "0 raised to a negative power");
        num_traits::pow(b.recip(), exp.unsigned_abs() as usize)
    }
}

pub(crate) fn int_power(base: i64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

pub(crate) fn to_integer(q: BigRational) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegerIntermediate(q.to_string()))
    }
}

fn as_i64(v: usize) -> i64 {
    i64::try_from(v).expect("size fits in i64")
}

fn check_segment(n: usize, s: usize) -> Result<()> {
    if s == 0 || s > n {
        return Err(Error::Domain(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    Ok(())
}

fn check_prime_segment(n: usize, s: usize) -> Result<()> {
    if s == 0 || s >= n {
        return Err(Error::Domain(format!("need 1 <= s < n, got s={s}, n={n}")));
    }
    Ok(())
}

/// `(n+1)^(n-1)`.
pub fn pf_total(n: usize) -> BigCount {
    if n == 0 {
        return BigInt::one();
    }
    int_power(as_i64(n) + 1, n - 1)
}

/// `(n-1)^(n-1)`, with `ppf_total(1) = 1`.
pub fn ppf_total(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::Domain("prime parking functions need n >= 1".into()));
    }
    Ok(int_power(as_i64(n) - 1, n - 1))
}

/// Term `C(n,i) (i+1)^(i-1) (s-i-1)^(n-i)` shared by both restricted counts.
fn restricted_term(n: usize, s: usize, i: usize) -> BigRational {
    let (n_, s_, i_) = (as_i64(n), as_i64(s), as_i64(i));
    BigRational::from_integer(binomial(n, i)) * power(i_ + 1, i_ - 1) * power(s_ - i_ - 1, n_ - i_)
}

/// Term `C(n,i) (i-1)^(i-1) (s-i)^(n-i)` shared by both prime counts.
fn prime_term(n: usize, s: usize, i: usize) -> BigRational {
    let (n_, s_, i_) = (as_i64(n), as_i64(s), as_i64(i));
    BigRational::from_integer(binomial(n, i)) * power(i_ - 1, i_ - 1) * power(s_ - i_, n_ - i_)
}

/// `#PF_{n|[s]}` by counting the lists in `[s]^n` that fail to park, grouped
/// by their first empty spot.
pub fn restricted_subtractive(n: usize, s: usize) -> Result<BigCount> {
    check_segment(n, s)?;
    let all = power(as_i64(s), as_i64(n));
    let failing: BigRational = (0..s).map(|i| restricted_term(n, s, i)).sum();
    to_integer(all - failing)
}

/// `#PF_{n|[s]}` as the signed sum left over by the recoloring involution.
pub fn restricted_alternating(n: usize, s: usize) -> Result<BigCount> {
    check_segment(n, s)?;
    to_integer((s..=n).map(|i| restricted_term(n, s, i)).sum())
}

/// `#PPF_{n|[s]}` by subtracting the lists whose first strict-Catalan failure
/// is at each position.
pub fn prime_subtractive(n: usize, s: usize) -> Result<BigCount> {
    check_prime_segment(n, s)?;
    let (n_, s_) = (as_i64(n), as_i64(s));
    let head = power(s_, n_) - power(s_ - 1, n_);
    let failing: BigRational = (1..=s).map(|i| prime_term(n, s, i)).sum();
    to_integer(head - failing)
}

/// `#PPF_{n|[s]}` as the signed sum of the prime recoloring involution.
pub fn prime_alternating(n: usize, s: usize) -> Result<BigCount> {
    check_prime_segment(n, s)?;
    to_integer((s + 1..=n).map(|i| prime_term(n, s, i)).sum())
}

/// Both restricted halves glued together: `Σ_{i=0}^{n} C(n,i)(i+1)^(i-1)(s-i-1)^(n-i)`.
/// Equals `s^n`.
pub fn restricted_abel_sum(n: usize, s: usize) -> BigRational {
    (0..=n).map(|i| restricted_term(n, s, i)).sum()
}

/// Both prime halves glued together: `Σ_{i=0}^{n} C(n,i)(i-1)^(i-1)(s-i)^(n-i)`.
/// Equals `-(s-1)^n`; the `i = 0` term is `-s^n`.
pub fn prime_abel_sum(n: usize, s: usize) -> BigRational {
    (0..=n).map(|i| prime_term(n, s, i)).sum()
}

/// Entry `C(n, k)` of Catalan's triangle, `0 <= k < n`, built row by row from
/// `C(m, 0) = 1` and `C(m, j) = C(m-1, j) + C(m, j-1)`.
pub fn catalan_triangle(n: usize, k: usize) -> Result<BigCount> {
    if n == 0 || k >= n {
        return Err(Error::Domain(format!(
            "Catalan triangle entry ({n}, {k}) needs 0 <= k < n"
        )));
    }
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut row = Vec::with_capacity(m + 1);
        row.push(BigInt::one());
        for j in 1..m {
            let v = &prev[j] + &row[j - 1];
            row.push(v);
        }
        // The diagonal repeats the entry to its left.
        let diag = row[m - 1].clone();
        row.push(diag);
        prev = row;
    }
    Ok(prev.swap_remove(k))
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan_number(n: usize) -> BigCount {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// `x(x+i)^(i-1)`, and `1` when `i = 0`.
fn forest_factor(i: usize) -> IntPolynomial {
    if i == 0 {
        IntPolynomial::constant(1)
    } else {
        &IntPolynomial::x() * &IntPolynomial::x_plus(as_i64(i)).pow((i - 1) as u32)
    }
}

fn ones_term(n: usize, s: usize, i: usize) -> IntPolynomial {
    let c = binomial(n, i) * int_power(as_i64(s) - as_i64(i) - 1, n - i);
    forest_factor(i).scale(&c)
}

/// Number-of-ones enumerator of `PF_{n|[s]}`, computed as all of `[s]^n`
/// minus the non-parking lists.
pub fn ones_poly_subtractive(n: usize, s: usize) -> Result<IntPolynomial> {
    check_segment(n, s)?;
    let all = IntPolynomial::x_plus(as_i64(s) - 1).pow(n as u32);
    Ok((0..s).fold(all, |acc, i| &acc - &ones_term(n, s, i)))
}

/// Number-of-ones enumerator of `PF_{n|[s]}` as the involution's signed sum.
pub fn ones_poly_alternating(n: usize, s: usize) -> Result<IntPolynomial> {
    check_segment(n, s)?;
    Ok((s..=n).fold(IntPolynomial::zero(), |acc, i| &acc + &ones_term(n, s, i)))
}

/// Evaluation of both sides of Abel's identity
/// `(x + y + n)^n = Σ_i C(n,i) x(x+i)^(i-1) (y+n-i)^(n-i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelEvaluation {
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl AbelEvaluation {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn abel_check(n: usize, x: &BigRational, y: &BigRational) -> AbelEvaluation {
    let n_q = BigRational::from_integer(n.into());
    let lhs = num_traits::pow(x + y + &n_q, n);
    let rhs = (0..=n)
        .map(|i| {
            let i_q = BigRational::from_integer(i.into());
            let forest = if i == 0 {
                BigRational::one()
            } else {
                x * num_traits::pow(x + &i_q, i - 1)
            };
            let rest = num_traits::pow(y + &n_q - &i_q, n - i);
            BigRational::from_integer(binomial(n, i)) * forest * rest
        })
        .sum();
    AbelEvaluation { lhs, rhs }
}

/// For each `s` in `[n]`, `(x+s-1)^n - Σ_{i=0}^{n} C(n,i) x(x+i)^(i-1) (s-i-1)^(n-i)`
/// as a polynomial in `x`.
///
/// The two number-of-ones enumerators make every one of these vanish. Read as
/// a polynomial in `s`, the difference has degree below `n` (both sides are
/// monic of degree `n`), so `n` roots force it to vanish identically, and
/// putting `s = n + 1 + y` gives Abel's identity for all `x, y`.
pub fn abel_defect_in_s(n: usize) -> Vec<IntPolynomial> {
    (1..=n)
        .map(|s| {
            let lhs = IntPolynomial::x_plus(as_i64(s) - 1).pow(n as u32);
            (0..=n).fold(lhs, |acc, i| &acc - &ones_term(n, s, i))
        })
        .collect()
}

/// Length of the longest run `σ_{i-L+1} … σ_i` whose maximum is `σ_i`.
pub fn ell(sigma: &Permutation, i: usize) -> Result<usize> {
    let v = sigma.as_slice();
    if i == 0 || i > v.len() {
        return Err(Error::Domain(format!("index {i} outside 1..={}", v.len())));
    }
    let top = v[i - 1];
    Ok(1 + v[..i - 1].iter().rev().take_while(|&&x| x < top).count())
}

/// `Π_i max{0, ℓ_i(σ) - max{0, i - s}}`: the number of `[s]`-restricted
/// parking functions with parking outcome `σ`.
pub fn fiber_formula(sigma: &Permutation, s: usize) -> Result<BigCount> {
    let n = sigma.n();
    check_segment(n, s)?;
    let mut acc = BigInt::one();
    for i in 1..=n {
        let forbidden = i.saturating_sub(s);
        let choices = ell(sigma, i)?.saturating_sub(forbidden);
        if choices == 0 {
            return Ok(BigInt::zero());
        }
        acc *= choices;
    }
    Ok(acc)
}

/// Whether a count is nonnegative, as every cardinality must be.
pub(crate) fn nonnegative(v: BigInt) -> Result<BigInt> {
    if v.is_negative() {
        Err(Error::Domain(format!("negative count {v}")))
    } else {
        Ok(v)
    }
}
