//! Multigraded Betti tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// `β_{i,a}`: the multiplicity of `O(-a)` in homological degree `i`. Only
/// nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable(pub BTreeMap<(usize, Vec<i64>), usize>);

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, Vec<i64>), usize)>) -> Self {
        let mut t = BettiTable::default();
        for (key, v) in entries {
            if v > 0 {
                *t.0.entry(key).or_insert(0) += v;
            }
        }
        t
    }

    pub fn get(&self, degree: usize, class: &[i64]) -> usize {
        self.0.get(&(degree, class.to_vec())).copied().unwrap_or(0)
    }

    /// Highest degree with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        self.0.keys().map(|k| k.0).max()
    }

    pub fn classes(&self) -> BTreeSet<Vec<i64>> {
        self.0.keys().map(|k| k.1.clone()).collect()
    }

    /// Total rank in degree `i`.
    pub fn degree_total(&self, i: usize) -> usize {
        self.0.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// `Σ (-1)^i β_{i,a}`.
    pub fn alternating_sum(&self) -> i64 {
        self.0.iter().map(|((i, _), &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum()
    }

    /// Every entry of `self` is at most the matching entry of `other`.
    pub fn bounded_by(&self, other: &BettiTable) -> bool {
        self.0.iter().all(|((i, a), &v)| v <= other.get(*i, a))
    }
}

/// `O`, `O(-2)` or `O(-1,-2)` for the class `a` of `O(-a)`.
pub fn bundle_name(a: &[i64]) -> String {
    if a.iter().all(|&x| x == 0) {
        return "O".to_string();
    }
    let parts: Vec<String> = a.iter().map(|x| (-x).to_string()).collect();
    format!("O({})", parts.join(","))
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<Vec<i64>> = self.classes().into_iter().collect();
        let Some(len) = self.length() else { return write!(f, "(zero)") };
        let names: Vec<String> = classes.iter().map(|c| bundle_name(c)).collect();
        let width = names.iter().map(|n| n.len()).max().unwrap_or(1).max(3);
        write!(f, "{:>6}", "")?;
        for n in &names {
            write!(f, " {n:>width$}")?;
        }
        for i in 0..=len {
            write!(f, "\n{:>5}:", i)?;
            for c in &classes {
                let v = self.get(i, c);
                let cell = if v == 0 { ".".to_string() } else { v.to_string() };
                write!(f, " {cell:>width$}")?;
            }
        }
        Ok(())
    }
}
