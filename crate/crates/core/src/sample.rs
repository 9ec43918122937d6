//! Observed samples: label counts and their fingerprint.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::error::{Error, Result};

/// Occurrence counts of the distinct labels in a sample.
///
/// Label identities are dropped; counts are kept in canonical order
/// (descending count, ties by first appearance).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SampleCounts {
    counts: Vec<usize>,
    n: usize,
}

impl SampleCounts {
    /// Builds counts from an explicit list, sorting into canonical order.
    pub fn new(mut counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(pos) = counts.iter().position(|&c| c == 0) {
            return Err(Error::ZeroCount(pos));
        }
        // stable: equal counts keep their given order
        counts.sort_by(|a, b| b.cmp(a));
        let n = counts.iter().sum();
        Ok(Self { counts, n })
    }

    /// Tallies a label sequence.
    pub fn from_labels<L, I>(labels: I) -> Result<Self>
    where
        L: Hash + Eq,
        I: IntoIterator<Item = L>,
    {
        tally_labels(labels).map(|(counts, _)| counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Sample size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct observed labels.
    pub fn observed_support(&self) -> usize {
        self.counts.len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut phi = BTreeMap::new();
        for &c in &self.counts {
            *phi.entry(c).or_insert(0) += 1;
        }
        Fingerprint { phi }
    }

    /// Number of labels seen exactly once.
    pub fn singletons(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 1).count()
    }

    /// Expands back into a label sequence `0, 0, 1, ...` in canonical order.
    pub fn expand(&self) -> Vec<usize> {
        self.counts.iter().enumerate().flat_map(|(label, &c)| std::iter::repeat_n(label, c)).collect()
    }
}

/// Tallies labels and also returns each observed label, aligned with the
/// canonical count order.
pub fn tally_labels<L, I>(labels: I) -> Result<(SampleCounts, Vec<L>)>
where
    L: Hash + Eq,
    I: IntoIterator<Item = L>,
{
    let mut slots: HashMap<L, usize> = HashMap::new();
    let mut tallies: Vec<usize> = Vec::new();
    for label in labels {
        let next = tallies.len();
        let slot = *slots.entry(label).or_insert(next);
        if slot == next {
            tallies.push(0);
        }
        tallies[slot] += 1;
    }
    if tallies.is_empty() {
        return Err(Error::EmptySample);
    }

    // (count, first appearance, label)
    let mut ranked: Vec<(usize, usize, L)> =
        slots.into_iter().map(|(label, slot)| (tallies[slot], slot, label)).collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let n = tallies.iter().sum();
    let (counts, labels): (Vec<usize>, Vec<L>) = ranked.into_iter().map(|(c, _, l)| (c, l)).unzip();
    Ok((SampleCounts { counts, n }, labels))
}

/// Frequency of frequencies: `phi[i]` is the number of labels seen exactly `i` times.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Fingerprint {
    phi: BTreeMap<usize, usize>,
}

impl Fingerprint {
    /// `Φ_i`; zero for absent keys.
    pub fn phi(&self, i: usize) -> usize {
        self.phi.get(&i).copied().unwrap_or(0)
    }

    /// Occupied `(i, Φ_i)` pairs in increasing `i`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.phi.iter().map(|(&i, &p)| (i, p))
    }

    pub fn sample_size(&self) -> usize {
        self.phi.iter().map(|(i, p)| i * p).sum()
    }

    pub fn observed_support(&self) -> usize {
        self.phi.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_examples() {
        let c = SampleCounts::from_labels(["a", "a", "b"]).unwrap();
        assert_eq!(c.counts(), &[2, 1]);
        assert_eq!(c.n(), 3);

        let c = SampleCounts::from_labels(["a"]).unwrap();
        assert_eq!(c.counts(), &[1]);
        assert_eq!(c.n(), 1);

        let c = SampleCounts::from_labels(["a", "b", "c", "d"]).unwrap();
        assert_eq!(c.counts(), &[1, 1, 1, 1]);
        assert_eq!(c.n(), 4);
    }

    #[test]
    fn empty_sample_rejected() {
        let none: [&str; 0] = [];
        assert_eq!(SampleCounts::from_labels(none), Err(Error::EmptySample));
        assert_eq!(SampleCounts::new(vec![]), Err(Error::EmptySample));
        assert_eq!(SampleCounts::new(vec![3, 0]), Err(Error::ZeroCount(1)));
    }

    #[test]
    fn canonical_order_ties_by_first_appearance() {
        let (c, labels) = tally_labels(["x", "y", "y", "z", "x", "w"]).unwrap();
        assert_eq!(c.counts(), &[2, 2, 1, 1]);
        assert_eq!(labels, vec!["x", "y", "z", "w"]);
    }

    #[test]
    fn fingerprint_examples() {
        let fp = SampleCounts::new(vec![2, 1]).unwrap().fingerprint();
        assert_eq!((fp.phi(1), fp.phi(2), fp.phi(3)), (1, 1, 0));
        let fp = SampleCounts::new(vec![1; 4]).unwrap().fingerprint();
        assert_eq!(fp.iter().collect::<Vec<_>>(), vec![(1, 4)]);
        let fp = SampleCounts::new(vec![10]).unwrap().fingerprint();
        assert_eq!(fp.iter().collect::<Vec<_>>(), vec![(10, 1)]);
    }

    #[test]
    fn observed_support_examples() {
        assert_eq!(SampleCounts::new(vec![2, 1]).unwrap().observed_support(), 2);
        assert_eq!(SampleCounts::new(vec![10]).unwrap().observed_support(), 1);
        assert_eq!(SampleCounts::new(vec![1; 10]).unwrap().observed_support(), 10);
    }
}
