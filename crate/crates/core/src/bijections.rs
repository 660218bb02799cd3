//! Executable bijections between families of parking functions.

use serde::{Deserialize, Serialize};

use crate::enumerate::functions;
use crate::error::{Error, Result};
use crate::park::{catalan_check, is_prime, PreferenceList};
use crate::restriction::RestrictionSet;

/// `T = {1} ∪ {i + 1 : i ∈ S, 1 < i < n}`, the target of the prime pushforward.
pub fn build_t(set: &RestrictionSet, n: usize) -> Result<RestrictionSet> {
    if !set.contains(1) {
        return Err(Error::MissingOne);
    }
    let shifted = set
        .elements()
        .iter()
        .filter(|&&i| 1 < i && i < n)
        .map(|&i| i + 1);
    RestrictionSet::new(n, std::iter::once(1).chain(shifted).collect())
}

fn push(x: usize) -> usize {
    if x == 1 {
        1
    } else {
        x + 1
    }
}

fn pull(x: usize) -> usize {
    if x == 1 {
        1
    } else {
        x - 1
    }
}

fn is_restricted_pf(prefs: &PreferenceList, set: &RestrictionSet) -> bool {
    prefs.as_slice().iter().all(|&p| set.contains(p)) && catalan_check(prefs).unwrap_or(false)
}

/// `f_*`: sends `π ∈ PPF_{n|S}` to `f ∘ π ∈ PF_{n|T}`, where `f(1) = 1` and
/// `f(x) = x + 1` otherwise.
pub fn prime_to_restricted(
    pi: &PreferenceList,
    set: &RestrictionSet,
    n: usize,
) -> Result<PreferenceList> {
    if pi.n() != n {
        return Err(Error::Domain(format!("expected {n} cars, got {}", pi.n())));
    }
    pi.check_range(n)?;
    if n >= 2 && pi.as_slice().contains(&n) {
        return Err(Error::ImageContainsN(n));
    }
    if !is_prime(pi)? {
        return Err(Error::NotPrime);
    }
    if !pi.as_slice().iter().all(|&p| set.contains(p)) {
        return Err(Error::NotRestricted);
    }
    Ok(PreferenceList::from_vec_unchecked(
        pi.as_slice().iter().map(|&p| push(p)).collect(),
    ))
}

/// `f^*`: the inverse of [`prime_to_restricted`], `ψ ↦ f⁻¹ ∘ ψ`.
pub fn restricted_to_prime(
    psi: &PreferenceList,
    set: &RestrictionSet,
    n: usize,
) -> Result<PreferenceList> {
    let t = build_t(set, n)?;
    if psi.n() != n || psi.check_range(n).is_err() || !is_restricted_pf(psi, &t) {
        return Err(Error::NotInT);
    }
    Ok(PreferenceList::from_vec_unchecked(
        psi.as_slice().iter().map(|&p| pull(p)).collect(),
    ))
}

/// `u_i = |S ∩ [i]|` for `i` in `[n]`.
pub fn u_vector(set: &RestrictionSet, n: usize) -> Vec<usize> {
    let mut u = Vec::with_capacity(n);
    let mut seen = 0;
    for i in 1..=n {
        if set.contains(i) {
            seen += 1;
        }
        u.push(seen);
    }
    u
}

/// Whether the `i`-th smallest entry of `psi` is at most `u_i` for every `i`.
pub fn is_u_parking(psi: &[usize], u: &[usize]) -> bool {
    let mut sorted = psi.to_vec();
    sorted.sort_unstable();
    sorted.len() == u.len() && sorted.iter().zip(u).all(|(p, b)| p <= b)
}

/// Relabels `π ∈ PF_{n|S}` by the order-preserving map sending the `j`-th
/// smallest element of `S` to `j`, producing a `u`-parking function.
pub fn to_u_parking(pi: &PreferenceList, set: &RestrictionSet) -> Result<PreferenceList> {
    let n = pi.n();
    if pi.check_range(n).is_err() || !is_restricted_pf(pi, set) {
        return Err(Error::NotRestricted);
    }
    let u = u_vector(set, n);
    Ok(PreferenceList::from_vec_unchecked(
        pi.as_slice().iter().map(|&p| u[p - 1]).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Indigo,
    Red,
}

impl Color {
    fn flipped(self) -> Color {
        match self {
            Color::Indigo => Color::Red,
            Color::Red => Color::Indigo,
        }
    }
}

/// Which family the indigo cars must form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Indigo cars form a parking function on `[i]`; red cars prefer `[i+1] ∖ [s]`.
    Plain,
    /// Indigo cars form a prime parking function on `[i]`; red cars prefer `[i] ∖ [s]`.
    Prime,
}

/// A preference list with every car painted indigo or red, where `i` indigo
/// cars (`i >= s`) carry the parking structure and the red cars prefer
/// forbidden spots above `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPF {
    prefs: PreferenceList,
    colors: Vec<Color>,
    s: usize,
    variant: Variant,
}

impl ColoredPF {
    pub fn new(
        prefs: PreferenceList,
        colors: Vec<Color>,
        s: usize,
        variant: Variant,
    ) -> Result<Self> {
        let bad = |why: String| Err(Error::InvalidColoring(why));
        if colors.len() != prefs.n() {
            return bad(format!("{} colors for {} cars", colors.len(), prefs.n()));
        }
        if s == 0 {
            return bad("restriction bound must be positive".into());
        }
        let indigo: Vec<usize> = prefs
            .as_slice()
            .iter()
            .zip(&colors)
            .filter(|(_, &c)| c == Color::Indigo)
            .map(|(&p, _)| p)
            .collect();
        let i = indigo.len();
        if i < s {
            return bad(format!("{i} indigo cars, fewer than s = {s}"));
        }
        let indigo = PreferenceList::from_vec_unchecked(indigo);
        let structured = indigo.check_range(i).is_ok()
            && match variant {
                Variant::Plain => catalan_check(&indigo)?,
                Variant::Prime => is_prime(&indigo)?,
            };
        if !structured {
            return bad(format!(
                "indigo cars {indigo} do not form the required family on [{i}]"
            ));
        }
        let red_top = match variant {
            Variant::Plain => i + 1,
            Variant::Prime => i,
        };
        for (car, (&p, &c)) in prefs.as_slice().iter().zip(&colors).enumerate() {
            if c == Color::Red && !(s < p && p <= red_top) {
                return bad(format!(
                    "red car {} prefers {p}, outside ({s}, {red_top}]",
                    car + 1
                ));
            }
        }
        Ok(ColoredPF {
            prefs,
            colors,
            s,
            variant,
        })
    }

    pub fn prefs(&self) -> &PreferenceList {
        &self.prefs
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Indigo cars, 1-based.
    pub fn indigo_cars(&self) -> Vec<usize> {
        (1..=self.colors.len())
            .filter(|&c| self.colors[c - 1] == Color::Indigo)
            .collect()
    }

    pub fn red_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Red).count()
    }

    /// `(-1)^(number of red cars)`.
    pub fn sign(&self) -> i64 {
        if self.red_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionImage {
    /// Every preference is in `[s]`; nothing can turn red.
    Fixed,
    Paired(ColoredPF),
}

/// Recolors the first car among those preferring the largest spot.
pub fn involution(c: &ColoredPF) -> Result<InvolutionImage> {
    let prefs = c.prefs.as_slice();
    let Some(&m) = prefs.iter().max() else {
        return Ok(InvolutionImage::Fixed);
    };
    if m <= c.s {
        return Ok(InvolutionImage::Fixed);
    }
    let x = prefs.iter().position(|&p| p == m).expect("max is attained");
    let mut colors = c.colors.clone();
    colors[x] = colors[x].flipped();
    ColoredPF::new(c.prefs.clone(), colors, c.s, c.variant).map(InvolutionImage::Paired)
}

/// Every valid coloring of every list on `n` cars, by brute force over
/// `[n]^n × 2^n`.
pub fn colorings(n: usize, s: usize, variant: Variant) -> Result<Vec<ColoredPF>> {
    if s == 0 || s > n {
        return Err(Error::Domain(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    let spots: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for prefs in functions(n, &spots) {
        for mask in 0u32..(1 << n) {
            let colors = (0..n)
                .map(|j| {
                    if mask & (1 << j) != 0 {
                        Color::Red
                    } else {
                        Color::Indigo
                    }
                })
                .collect();
            let prefs = PreferenceList::from_vec_unchecked(prefs.clone());
            if let Ok(c) = ColoredPF::new(prefs, colors, s, variant) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Indigo as I, Red as R};

    fn pl(v: &[usize]) -> PreferenceList {
        PreferenceList::new(v.to_vec()).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> RestrictionSet {
        RestrictionSet::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn t_sets() {
        for n in 2..=6 {
            let expected: Vec<usize> = (1..=n).filter(|&x| x != 2).collect();
            assert_eq!(
                build_t(&RestrictionSet::full(n), n).unwrap().elements(),
                &expected[..]
            );
        }
        assert_eq!(
            build_t(&set(5, &[1, 2, 3]), 5).unwrap().elements(),
            &[1, 3, 4]
        );
        assert_eq!(build_t(&set(3, &[1]), 3).unwrap().elements(), &[1]);
        assert_eq!(build_t(&set(3, &[2, 3]), 3), Err(Error::MissingOne));
    }

    #[test]
    fn pushforward_examples() {
        let full = |n| RestrictionSet::full(n);
        for (pi, image, n) in [
            (&[1, 1][..], &[1, 1][..], 2),
            (&[1, 1, 2], &[1, 1, 3], 3),
            (&[1, 2, 1, 1], &[1, 3, 1, 1], 4),
        ] {
            let pushed = prime_to_restricted(&pl(pi), &full(n), n).unwrap();
            assert_eq!(pushed, pl(image));
            assert!(catalan_check(&pushed).unwrap());
            assert_eq!(restricted_to_prime(&pushed, &full(n), n).unwrap(), pl(pi));
        }
        assert_eq!(
            prime_to_restricted(&pl(&[1, 1]), &set(2, &[1]), 2).unwrap(),
            pl(&[1, 1])
        );
    }

    #[test]
    fn pushforward_errors() {
        let full3 = RestrictionSet::full(3);
        assert_eq!(
            prime_to_restricted(&pl(&[1, 2, 3]), &full3, 3),
            Err(Error::ImageContainsN(3))
        );
        assert_eq!(
            prime_to_restricted(&pl(&[1, 2, 2]), &full3, 3),
            Err(Error::NotPrime)
        );
        assert_eq!(
            prime_to_restricted(&pl(&[1, 1, 2]), &set(3, &[1]), 3),
            Err(Error::NotRestricted)
        );
        assert_eq!(
            restricted_to_prime(&pl(&[1, 2, 1]), &full3, 3),
            Err(Error::NotInT)
        );
    }

    #[test]
    fn u_vectors() {
        assert_eq!(u_vector(&set(3, &[1, 3]), 3), vec![1, 1, 2]);
        assert_eq!(u_vector(&RestrictionSet::full(4), 4), vec![1, 2, 3, 4]);
        assert_eq!(u_vector(&set(3, &[1]), 3), vec![1, 1, 1]);
    }

    #[test]
    fn u_parking_relabel() {
        assert_eq!(
            to_u_parking(&pl(&[1, 3, 1]), &set(3, &[1, 3])).unwrap(),
            pl(&[1, 2, 1])
        );
        assert_eq!(
            to_u_parking(&pl(&[1, 4, 4, 1, 1, 7, 1]), &set(7, &[1, 4, 7])).unwrap(),
            pl(&[1, 2, 2, 1, 1, 3, 1])
        );
        let p = pl(&[2, 1, 3]);
        assert_eq!(to_u_parking(&p, &RestrictionSet::full(3)).unwrap(), p);
        assert_eq!(
            to_u_parking(&pl(&[1, 2, 1]), &set(3, &[1, 3])),
            Err(Error::NotRestricted)
        );
    }

    #[test]
    fn recoloring_example() {
        let before =
            ColoredPF::new(pl(&[1, 3, 2, 2, 4]), vec![I, R, I, I, R], 2, Variant::Plain).unwrap();
        let InvolutionImage::Paired(after) = involution(&before).unwrap() else {
            panic!("expected a partner");
        };
        assert_eq!(after.indigo_cars(), vec![1, 3, 4, 5]);
        assert_eq!(after.sign(), -before.sign());
        assert_eq!(involution(&after).unwrap(), InvolutionImage::Paired(before));
    }

    #[test]
    fn all_indigo_inside_segment_is_fixed() {
        let c = ColoredPF::new(pl(&[1, 1]), vec![I, I], 2, Variant::Plain).unwrap();
        assert_eq!(involution(&c).unwrap(), InvolutionImage::Fixed);
    }

    #[test]
    fn invalid_colorings_rejected() {
        // red car inside [s]
        assert!(ColoredPF::new(pl(&[1, 2]), vec![I, R], 2, Variant::Plain).is_err());
        // indigo cars not a parking function
        assert!(ColoredPF::new(pl(&[2, 2]), vec![I, I], 1, Variant::Plain).is_err());
        // prime variant: indigo (1,2) is not prime
        assert!(ColoredPF::new(pl(&[1, 2]), vec![I, I], 1, Variant::Prime).is_err());
        assert!(ColoredPF::new(pl(&[1, 1, 2]), vec![I, I, R], 1, Variant::Prime).is_ok());
        assert!(ColoredPF::new(pl(&[1]), vec![I, I], 1, Variant::Plain).is_err());
    }
}
