use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set `S ⊆ [n]` of allowed preferences, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictionSet {
    n: usize,
    elements: Vec<usize>,
}

impl RestrictionSet {
    /// Sorts and deduplicates `elements`; every element must lie in `[1, n]`.
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidRestriction(format!(
                "{bad} is outside 1..={n}"
            )));
        }
        Ok(RestrictionSet { n, elements })
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        RestrictionSet {
            n,
            elements: (1..=n).collect(),
        }
    }

    /// The initial segment `[s]` inside `[n]`.
    pub fn initial_segment(n: usize, s: usize) -> Result<Self> {
        if s > n {
            return Err(Error::Domain(format!("segment [{s}] is not inside [{n}]")));
        }
        Ok(RestrictionSet {
            n,
            elements: (1..=s).collect(),
        })
    }

    /// `{1, g+1, 2g+1, ...} ∩ [len]`, the spots that open a row of size `g`.
    pub fn modular(g: usize, len: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::Domain("row size g must be positive".into()));
        }
        Ok(RestrictionSet {
            n: len,
            elements: (1..=len).step_by(g).collect(),
        })
    }

    /// Parses a comma-separated list such as `1,3,4`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(text);
        let elements = text
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidRestriction(format!("not a spot number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        RestrictionSet::new(n, elements)
    }

    /// Ambient street length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Same elements viewed inside a different ambient length.
    pub fn with_ambient(&self, n: usize) -> Result<Self> {
        RestrictionSet::new(n, self.elements.clone())
    }
}

impl fmt::Display for RestrictionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_sorts_and_validates() {
        let s = RestrictionSet::new(5, vec![4, 1, 3, 1]).unwrap();
        assert_eq!(s.elements(), &[1, 3, 4]);
        assert!(s.contains(3) && !s.contains(2));
        assert!(RestrictionSet::new(3, vec![4]).is_err());
        assert!(RestrictionSet::new(3, vec![0]).is_err());
        assert_eq!(
            RestrictionSet::parse(7, "{1,4,7}").unwrap().to_string(),
            "{1,4,7}"
        );
    }

    #[test]
    fn modular_sets() {
        assert_eq!(
            RestrictionSet::modular(3, 8).unwrap().elements(),
            &[1, 4, 7]
        );
        assert_eq!(RestrictionSet::modular(3, 6).unwrap().elements(), &[1, 4]);
        assert_eq!(
            RestrictionSet::modular(1, 3).unwrap().elements(),
            &[1, 2, 3]
        );
        assert!(RestrictionSet::modular(3, 0).unwrap().is_empty());
    }
}
