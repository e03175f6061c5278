//! Finitely supported multiplicity vectors over a label set.

use std::fmt;
use std::hash::Hash;

use indexmap::IndexMap;

/// A formal sum `Σ m_x · x` with non-negative multiplicities.
///
/// Terms remember the order in which they were first added; equality
/// ignores that order.
#[derive(Clone, Debug)]
pub struct FusionVector<L: Hash + Eq> {
    terms: IndexMap<L, u64>,
}

impl<L: Hash + Eq> PartialEq for FusionVector<L> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<L: Hash + Eq> Eq for FusionVector<L> {}

impl<L: Hash + Eq> Default for FusionVector<L> {
    fn default() -> Self {
        FusionVector {
            terms: IndexMap::new(),
        }
    }
}

impl<L: Hash + Eq + Clone> FusionVector<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: L) -> Self {
        let mut v = Self::new();
        v.add(label, 1);
        v
    }

    pub fn add(&mut self, label: L, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.terms.entry(label).or_insert(0) += mult;
    }

    /// Adds `scale` copies of every term of `other`.
    pub fn add_scaled(&mut self, other: &FusionVector<L>, scale: u64) {
        for (l, m) in other.iter() {
            self.add(l.clone(), m * scale);
        }
    }

    pub fn get(&self, label: &L) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, u64)> + '_ {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> + '_ {
        self.terms.keys()
    }

    /// Number of distinct labels.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.terms.values().copied().max().unwrap_or(0)
    }

    pub fn map_labels<M: Hash + Eq + Clone>(&self, mut f: impl FnMut(&L) -> M) -> FusionVector<M> {
        let mut out = FusionVector::new();
        for (l, m) in self.iter() {
            out.add(f(l), m);
        }
        out
    }

    /// Terms sorted by label.
    pub fn sorted(&self) -> Vec<(L, u64)>
    where
        L: Ord,
    {
        let mut v: Vec<(L, u64)> = self.iter().map(|(l, m)| (l.clone(), m)).collect();
        v.sort();
        v
    }

    /// Bilinear extension of a product defined on labels.
    pub fn product(
        &self,
        other: &FusionVector<L>,
        mut mul: impl FnMut(&L, &L) -> FusionVector<L>,
    ) -> FusionVector<L> {
        let mut out = FusionVector::new();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                out.add_scaled(&mul(a, b), ma * mb);
            }
        }
        out
    }
}

impl<L: Hash + Eq + Clone> FromIterator<L> for FusionVector<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        let mut v = FusionVector::new();
        for l in iter {
            v.add(l, 1);
        }
        v
    }
}

impl<L: Hash + Eq + Clone + fmt::Display> fmt::Display for FusionVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (n, (l, m)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}*{l}")?;
            }
        }
        Ok(())
    }
}
