//! Multisets of `[k]` stored as non-decreasing sequences, their classification
//! predicates, statistics, and exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisetError {
    #[error("multiset is empty")]
    Empty,
    #[error("values are not non-decreasing at position {position}: {left} > {right}")]
    NotSorted {
        position: usize,
        left: u32,
        right: u32,
    },
    #[error("value {value} outside [1, {bound}]")]
    OutOfRange { value: i64, bound: u32 },
    #[error("cannot parse multiset token {0:?}")]
    Parse(String),
}

/// An `n`-multiset of `[k]`, held as its non-decreasing value sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    values: Vec<u32>,
    bound: u32,
}

impl Multiset {
    /// Validates `raw` against `bound`; `None` means `bound = raw.len()`.
    pub fn new(raw: &[i64], bound: Option<u32>) -> Result<Self, MultisetError> {
        if raw.is_empty() {
            return Err(MultisetError::Empty);
        }
        let bound = bound.unwrap_or(raw.len() as u32);
        if let Some(&value) = raw.iter().find(|&&v| v < 1 || v > i64::from(bound)) {
            return Err(MultisetError::OutOfRange { value, bound });
        }
        let values: Vec<u32> = raw.iter().map(|&v| v as u32).collect();
        if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(MultisetError::NotSorted {
                position: i + 1,
                left: values[i],
                right: values[i + 1],
            });
        }
        Ok(Multiset { values, bound })
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<u32>, bound: u32) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Multiset { values, bound }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `n`, the number of elements counted with repetition.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `k`, the largest admissible value.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Every point `(i, π_i)` lies on or above the diagonal.
    pub fn is_superdiagonal(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v as usize > i)
    }

    /// No two consecutive integers occur.
    pub fn is_star(&self) -> bool {
        self.adjacencies() == 0
    }

    /// Every value below the bound occurs either not at all or at least twice.
    pub fn no_single_except_bound(&self) -> bool {
        self.runs()
            .all(|(value, count)| value == self.bound || count >= 2)
    }

    pub fn classify(&self) -> Classification {
        Classification {
            superdiagonal: self.is_superdiagonal(),
            star: self.is_star(),
            no_single_except_k: self.no_single_except_bound(),
        }
    }

    /// Number of positions with `π_{i+1} = π_i + 1`.
    pub fn adjacencies(&self) -> usize {
        self.values.windows(2).filter(|w| w[1] == w[0] + 1).count()
    }

    /// `δ(π_i)`: true when the point `(i, π_i)` is not below the diagonal.
    pub fn delta_profile(&self) -> Vec<bool> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| v as usize > i)
            .collect()
    }

    pub fn stats(&self) -> MultisetStats {
        let delta = self.delta_profile();
        let mut gap_profile = Vec::with_capacity(self.len());
        let mut changes = 0i64;
        for (i, &v) in self.values.iter().enumerate() {
            if i > 0 && delta[i] != delta[i - 1] {
                changes += 1;
            }
            let position = i as i64 + 1;
            gap_profile.push((i64::from(v) - position).abs() - changes);
        }
        let gap = *gap_profile.iter().max().expect("multiset is non-empty");
        MultisetStats {
            length: self.len(),
            cross: changes as usize,
            adj: self.adjacencies(),
            gap_profile,
            gap,
            delta_profile: delta.into_iter().map(u8::from).collect(),
        }
    }

    /// `(value, multiplicity)` pairs in increasing value order.
    fn runs(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.values
            .chunk_by(|a, b| a == b)
            .map(|chunk| (chunk[0], chunk.len()))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        if self.bound as usize != self.values.len() {
            write!(f, "|k={}", self.bound)?;
        }
        Ok(())
    }
}

impl FromStr for Multiset {
    type Err = MultisetError;

    /// Parses `"v1,v2,...,vn"` with an optional `"|k=K"` suffix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (body, bound) = match s.split_once('|') {
            Some((body, suffix)) => {
                let k = suffix
                    .trim()
                    .strip_prefix("k=")
                    .and_then(|k| k.trim().parse::<u32>().ok())
                    .ok_or_else(|| MultisetError::Parse(s.to_string()))?;
                (body, Some(k))
            }
            None => (s, None),
        };
        if body.trim().is_empty() {
            return Err(MultisetError::Empty);
        }
        let raw = body
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| MultisetError::Parse(s.to_string()))?;
        Multiset::new(&raw, bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub superdiagonal: bool,
    pub star: bool,
    pub no_single_except_k: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultisetStats {
    pub length: usize,
    pub cross: usize,
    pub adj: usize,
    /// `|π_i - i| - c_i` for every position, negative values included.
    pub gap_profile: Vec<i64>,
    pub gap: i64,
    pub delta_profile: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultisetFamily {
    All,
    Star,
    Superdiagonal,
    SuperdiagonalStar,
    NoSingleExceptK,
}

impl MultisetFamily {
    pub fn contains(self, m: &Multiset) -> bool {
        match self {
            MultisetFamily::All => true,
            MultisetFamily::Star => m.is_star(),
            MultisetFamily::Superdiagonal => m.is_superdiagonal(),
            MultisetFamily::SuperdiagonalStar => m.is_superdiagonal() && m.is_star(),
            MultisetFamily::NoSingleExceptK => m.no_single_except_bound(),
        }
    }
}

/// Lexicographic stream over the `n`-multisets of `[k]` in `family`.
pub fn enumerate(family: MultisetFamily, n: usize, k: u32) -> impl Iterator<Item = Multiset> {
    AllMultisets::new(n, k).filter(move |m| family.contains(m))
}

/// Odometer over non-decreasing sequences of length `n` in `[1, k]`.
#[derive(Debug, Clone)]
struct AllMultisets {
    current: Option<Vec<u32>>,
    bound: u32,
}

impl AllMultisets {
    fn new(n: usize, k: u32) -> Self {
        let current = (n >= 1 && k >= 1).then(|| vec![1; n]);
        AllMultisets { current, bound: k }
    }
}

impl Iterator for AllMultisets {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        let values = self.current.take()?;
        let out = Multiset::from_sorted_unchecked(values.clone(), self.bound);
        if let Some(i) = values.iter().rposition(|&v| v < self.bound) {
            let mut next = values;
            let v = next[i] + 1;
            next[i..].iter_mut().for_each(|x| *x = v);
            self.current = Some(next);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(values: &[i64], k: Option<u32>) -> Multiset {
        Multiset::new(values, k).unwrap()
    }

    #[test]
    fn validate_examples() {
        let m = ms(&[2, 2, 2, 4, 4, 7, 7, 7], Some(8));
        assert_eq!(m.len(), 8);
        assert_eq!(ms(&[1], Some(1)).len(), 1);
        assert!(matches!(
            Multiset::new(&[2, 1], Some(2)),
            Err(MultisetError::NotSorted { position: 1, .. })
        ));
        assert_eq!(Multiset::new(&[], None), Err(MultisetError::Empty));
        assert!(matches!(
            Multiset::new(&[0, 1], None),
            Err(MultisetError::OutOfRange { value: 0, .. })
        ));
        assert!(matches!(
            Multiset::new(&[1, 3], None),
            Err(MultisetError::OutOfRange { value: 3, bound: 2 })
        ));
    }

    #[test]
    fn bound_defaults_to_length() {
        assert_eq!(ms(&[1, 2, 3], None).bound(), 3);
    }

    #[test]
    fn classify_examples() {
        assert!(
            ms(&[2, 5, 5, 7, 7, 7, 8, 8], Some(8))
                .classify()
                .superdiagonal
        );
        assert!(!ms(&[2, 2, 2, 4, 4, 7, 7, 7], Some(8)).is_superdiagonal());
        assert!(!ms(&[1, 2], Some(2)).classify().star);
        assert!(ms(&[1, 1, 3, 3], Some(4)).classify().no_single_except_k);
        assert!(!ms(&[1, 3, 3, 4], Some(4)).no_single_except_bound());
        // a single occurrence of k itself is allowed
        assert!(ms(&[2, 2, 4], Some(4)).no_single_except_bound());
    }

    #[test]
    fn stats_examples() {
        let s = ms(&[2, 2], None).stats();
        assert_eq!((s.cross, s.adj, s.gap), (0, 0, 1));
        assert_eq!(s.gap_profile, vec![1, 0]);

        let s = ms(&[1, 1], None).stats();
        assert_eq!(s.delta_profile, vec![1, 0]);
        assert_eq!((s.cross, s.gap), (1, 0));
        assert_eq!(s.gap_profile, vec![0, 0]);

        let s = ms(&[2, 2, 2, 4, 4, 7, 7, 7], None).stats();
        assert_eq!(s.cross, 5);
        assert_eq!(s.gap_profile, vec![1, 0, 0, -2, -2, -3, -4, -4]);
        assert_eq!(s.gap, 1);
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(ms(&[1, 2], None).adjacencies(), 1);
        assert_eq!(ms(&[2, 2], None).adjacencies(), 0);
        let long = [
            3, 4, 5, 5, 5, 5, 5, 6, 6, 8, 8, 8, 8, 12, 15, 16, 17, 17, 17, 19, 19, 19,
        ];
        assert_eq!(ms(&long, None).adjacencies(), 5);
    }

    #[test]
    fn enumerate_examples() {
        let all: Vec<String> = enumerate(MultisetFamily::All, 3, 2)
            .map(|m| m.values().iter().map(|v| v.to_string()).collect())
            .collect();
        assert_eq!(all, ["111", "112", "122", "222"]);

        let star: Vec<Vec<u32>> = enumerate(MultisetFamily::Star, 2, 2)
            .map(|m| m.values().to_vec())
            .collect();
        assert_eq!(star, vec![vec![1, 1], vec![2, 2]]);

        assert_eq!(enumerate(MultisetFamily::Superdiagonal, 3, 3).count(), 5);
        assert_eq!(enumerate(MultisetFamily::All, 0, 3).count(), 0);
        assert_eq!(enumerate(MultisetFamily::All, 3, 0).count(), 0);
    }

    #[test]
    fn text_format() {
        let m: Multiset = "2,2,2,4,4,7,7,7".parse().unwrap();
        assert_eq!(m.bound(), 8);
        assert_eq!(m.to_string(), "2,2,2,4,4,7,7,7");
        let m: Multiset = "1,1|k=3".parse().unwrap();
        assert_eq!(m.bound(), 3);
        assert_eq!(m.to_string(), "1,1|k=3");
        assert!(matches!(
            "1,x".parse::<Multiset>(),
            Err(MultisetError::Parse(_))
        ));
        assert!(matches!(
            "1|k=".parse::<Multiset>(),
            Err(MultisetError::Parse(_))
        ));
        assert_eq!("".parse::<Multiset>(), Err(MultisetError::Empty));
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_are_binomial() {
        for n in 1..=7 {
            for k in 1..=7u32 {
                let count = enumerate(MultisetFamily::All, n, k).count() as u64;
                assert_eq!(count, binomial(n as u64 + u64::from(k) - 1, n as u64));
            }
        }
    }

    #[test]
    fn superdiagonal_has_no_crossings() {
        for m in enumerate(MultisetFamily::Superdiagonal, 6, 6) {
            assert_eq!(m.stats().cross, 0);
        }
    }
}
