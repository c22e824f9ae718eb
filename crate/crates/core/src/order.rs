//! The Gabriel-Roiter order on finite subsets of the positive integers.
//!
//! A measure is stored as a strictly increasing sequence. For two distinct
//! sets `I` and `J`, `I < J` when the smallest element of the symmetric
//! difference belongs to `J`. Walking both sequences in step, the first
//! position where they disagree holds the smallest element of the symmetric
//! difference (everything before it is shared), and it is the smaller of the
//! two entries there; so the sequence holding the *smaller* entry is the
//! *greater* set. If one sequence runs out first, the next entry of the
//! longer one is the smallest element of the difference, so the longer
//! sequence is greater. The empty set is therefore the minimum.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of positive integers under the Gabriel-Roiter order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct GrMeasure(Vec<u32>);

impl GrMeasure {
    /// The measure of the zero module.
    pub fn empty() -> Self {
        GrMeasure(Vec::new())
    }

    pub fn from_elements(elements: Vec<u32>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return Err(Error::Parse("measure elements must be positive".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("measure elements must be strictly increasing".into()));
        }
        Ok(GrMeasure(elements))
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_element(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// `self ∪ {length}`; `length` must exceed every current element.
    pub fn extend(&self, length: u32) -> Result<Self> {
        if length == 0 || self.max_element().is_some_and(|m| length <= m) {
            return Err(Error::InvalidExtension {
                measure: self.to_string(),
                length,
            });
        }
        let mut v = self.0.clone();
        v.push(length);
        Ok(GrMeasure(v))
    }

    /// Drops the largest element.
    pub fn truncated(&self) -> Self {
        let mut v = self.0.clone();
        v.pop();
        GrMeasure(v)
    }

    /// `self ≪ other`: proper inclusion with every new element above `max(self)`.
    pub fn ll(&self, other: &GrMeasure) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }

    /// `self` starts with `prefix`: equal, or `prefix ≪ self`.
    pub fn starts_with(&self, prefix: &GrMeasure) -> bool {
        self.0.starts_with(&prefix.0)
    }
}

impl Ord for GrMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            if a != b {
                // The smaller entry is the least element of the symmetric
                // difference, and its owner is the greater set.
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for GrMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for GrMeasure {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        GrMeasure::from_elements(v)
    }
}

impl From<GrMeasure> for Vec<u32> {
    fn from(m: GrMeasure) -> Self {
        m.0
    }
}

impl fmt::Display for GrMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for GrMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("measure must be wrapped in braces: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(GrMeasure::empty());
        }
        let elements = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad measure entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GrMeasure::from_elements(elements)
    }
}

/// `{1,2,4,…,2m}`.
pub fn mu_lower(m: u32) -> GrMeasure {
    let mut v = vec![1];
    v.extend((1..=m).map(|k| 2 * k));
    GrMeasure(v)
}

/// `{1,2,4,…,2m,2m+1}`.
pub fn mu_upper(m: u32) -> GrMeasure {
    let mut v = mu_lower(m).0;
    v.push(2 * m + 1);
    GrMeasure(v)
}

/// Some element of `catalog` strictly between `lower` and `upper`.
pub fn find_between<'a, I>(lower: &GrMeasure, upper: &GrMeasure, catalog: I) -> Result<Option<GrMeasure>>
where
    I: IntoIterator<Item = &'a GrMeasure>,
{
    if lower >= upper {
        return Err(Error::Precondition(format!(
            "find_between needs lower < upper, got {lower} and {upper}"
        )));
    }
    Ok(catalog
        .into_iter()
        .filter(|k| lower < *k && *k < upper)
        .min()
        .cloned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> GrMeasure {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert!(m("{1,2,4}") < m("{1,2,3}"));
        assert!(m("{1,4}") < m("{1,2}"));
        assert_eq!(m("{1,2,3}").cmp(&m("{1,2,3}")), Ordering::Equal);
        assert!(GrMeasure::empty() < m("{1}"));
    }

    #[test]
    fn starts_with_and_ll() {
        assert!(m("{1,2,4,5}").starts_with(&m("{1,2,4}")));
        assert!(!m("{1,2,5}").starts_with(&m("{1,2,4}")));
        assert!(m("{1,2}").starts_with(&m("{1,2}")));
        assert!(m("{1,2}").ll(&m("{1,2,3}")));
        assert!(!m("{1,3}").ll(&m("{1,2,3}")));
        assert!(!m("{1,3}").ll(&m("{1,3}")));
    }

    #[test]
    fn extend_rules() {
        assert_eq!(m("{1,2,4}").extend(5).unwrap(), m("{1,2,4,5}"));
        assert_eq!(GrMeasure::empty().extend(1).unwrap(), m("{1}"));
        assert!(m("{1,2}").extend(2).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(mu_lower(1), m("{1,2}"));
        assert_eq!(mu_lower(2), m("{1,2,4}"));
        assert_eq!(mu_lower(3), m("{1,2,4,6}"));
        assert_eq!(mu_upper(1), m("{1,2,3}"));
        assert_eq!(mu_upper(2), m("{1,2,4,5}"));
        assert!(mu_upper(2) < mu_upper(1));
    }

    #[test]
    fn between() {
        let cat = [mu_upper(2)];
        assert_eq!(find_between(&m("{1,2,4}"), &m("{1,2,3}"), &cat).unwrap(), Some(m("{1,2,4,5}")));
        assert_eq!(find_between(&m("{1}"), &m("{1,4}"), &[]).unwrap(), None);
        assert!(find_between(&m("{1,2}"), &m("{1,4}"), &cat).is_err());
    }

    #[test]
    fn parse_format() {
        assert_eq!(m("{1,2,4}").elements(), &[1, 2, 4]);
        assert!(m("{}").is_empty());
        assert!("{2,1}".parse::<GrMeasure>().is_err());
        assert!("1,2".parse::<GrMeasure>().is_err());
        assert!("{0,1}".parse::<GrMeasure>().is_err());
        assert_eq!(m(" { 1, 3 } ").to_string(), "{1,3}");
    }
}
