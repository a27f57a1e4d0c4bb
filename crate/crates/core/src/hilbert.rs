use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;

/// A finitely supported function from internal degree to dimension.
///
/// Serializes as an array of `[degree, dim]` pairs in increasing degree.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct HilbertFunction(BTreeMap<i64, usize>);

impl HilbertFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(degree, dim)` pairs; zeros are dropped, repeats add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut h = Self::new();
        for (d, n) in pairs {
            h.add(d, n);
        }
        h
    }

    /// `dims[i]` is the dimension in degree `start + i`.
    pub fn from_dims(start: i64, dims: &[usize]) -> Self {
        Self::from_pairs(dims.iter().enumerate().map(|(i, &n)| (start + i as i64, n)))
    }

    pub fn add(&mut self, degree: i64, n: usize) {
        if n > 0 {
            *self.0.entry(degree).or_insert(0) += n;
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// The same function with every degree moved by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self(self.0.iter().map(|(&d, &n)| (d + by, n)).collect())
    }
}

impl fmt::Debug for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl serde::Serialize for HilbertFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (d, n) in &self.0 {
            seq.serialize_element(&(d, n))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_zeros_and_serializes_pairs() {
        let h = HilbertFunction::from_dims(0, &[1, 4, 3, 0, 0]);
        assert_eq!(h.total(), 8);
        assert_eq!(h.max_degree(), Some(2));
        assert_eq!(serde_json::to_string(&h).unwrap(), "[[0,1],[1,4],[2,3]]");
        assert!(HilbertFunction::from_dims(-3, &[0, 0]).is_zero());
    }
}
