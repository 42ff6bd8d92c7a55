//! Finite formal Z-linear combinations.

use std::collections::BTreeMap;
use std::fmt;

/// A finite Z-linear combination of keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for DiagramSum<K> {
    fn default() -> Self {
        DiagramSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> DiagramSum<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: i64) -> Self {
        let mut s = Self::new();
        s.add(key, coeff);
        s
    }

    pub fn add(&mut self, key: K, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_sum(&mut self, other: &DiagramSum<K>, factor: i64) {
        for (k, &c) in &other.terms {
            self.add(k.clone(), c * factor);
        }
    }

    pub fn coefficient(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut s = Self::new();
        s.add_sum(self, factor);
        s
    }

    /// Image under a linear map defined on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> DiagramSum<L>) -> DiagramSum<L> {
        let mut out = DiagramSum::new();
        for (k, &c) in &self.terms {
            out.add_sum(&f(k), c);
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        DiagramSum {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, &c)| (k.clone(), c)).collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for DiagramSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (k, c) in iter {
            s.add(k, c);
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for DiagramSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, false) => write!(f, "{c}*[{k}]")?,
                (0, true) => write!(f, "-{}*[{k}]", c.unsigned_abs())?,
                (_, false) => write!(f, " + {c}*[{k}]")?,
                (_, true) => write!(f, " - {}*[{k}]", c.unsigned_abs())?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut s = DiagramSum::single("a", 2);
        s.add("b", -1);
        s.add("a", -2);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&"a"), 0);
        assert_eq!(s.to_string(), "-1*[b]");
        s.add("b", 1);
        assert!(s.is_zero());
    }

    #[test]
    fn linear_map() {
        let s: DiagramSum<u32> = [(1, 3), (2, -1)].into_iter().collect();
        let doubled = s.map_linear(|&k| DiagramSum::single(k * 10, 2));
        assert_eq!(doubled.coefficient(&10), 6);
        assert_eq!(doubled.coefficient(&20), -2);
        let merged = s.map_linear(|_| DiagramSum::single(0u32, 1));
        assert_eq!(merged.coefficient(&0), 2);
    }
}
