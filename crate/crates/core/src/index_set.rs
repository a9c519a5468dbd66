use std::fmt;

/// Subset of the cyclic index set {0, ..., n-1}, n ≤ 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(pub u64);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = IndexSet(0);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_predicate(n: usize, pred: impl Fn(usize) -> bool) -> Self {
        Self::from_indices((0..n).filter(|&i| pred(i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self, n: usize) -> bool {
        self == Self::full(n)
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet(!self.0 & Self::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Number of i with exactly one of i, i+1 (cyclically) in the set.
    pub fn transitions(self, n: usize) -> usize {
        (0..n).filter(|&i| self.contains(i) != self.contains((i + 1) % n)).count()
    }

    /// Number of maximal cyclic runs (0 for the empty set, 1 for the full set).
    pub fn arcs(self, n: usize) -> usize {
        if self.is_empty() {
            0
        } else if self.is_full(n) {
            1
        } else {
            self.transitions(n) / 2
        }
    }

    /// Nonempty proper subset forming a single cyclic run.
    pub fn is_arc(self, n: usize) -> bool {
        !self.is_empty() && !self.is_full(n) && self.transitions(n) == 2
    }

    /// Rotate indices by `k` (i ↦ i + k mod n).
    pub fn rotate(self, n: usize, k: usize) -> Self {
        Self::from_indices(self.iter().map(|i| (i + k) % n))
    }

    /// Reflect indices (i ↦ n - 1 - i).
    pub fn reflect(self, n: usize) -> Self {
        Self::from_indices(self.iter().map(|i| n - 1 - i))
    }

    /// 1-based listing, e.g. "{1,3}".
    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
