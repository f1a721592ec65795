use std::fmt;

/// A subset of `{1, ..., 31}` stored as a bitmask (bit `i-1` for `i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub fn empty() -> Self {
        Self(0)
    }

    /// `{1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n <= 1 {
            Self(0)
        } else {
            Self((1u32 << (n - 1)) - 1)
        }
    }

    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn from_elems<I: IntoIterator<Item = u8>>(elems: I) -> Self {
        let mut s = Self::empty();
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: u8) {
        debug_assert!((1..=31).contains(&e));
        self.0 |= 1 << (e - 1);
    }

    pub fn contains(self, e: u8) -> bool {
        e >= 1 && self.0 & (1 << (e - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_elem(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as u8)
        }
    }

    /// Elements in increasing order.
    pub fn elems(self) -> Vec<u8> {
        (1..=32u8).filter(|&e| self.contains(e)).collect()
    }

    /// All subsets of `{1, ..., n-1}`.
    pub fn all_of_degree(n: usize) -> impl Iterator<Item = Subset> {
        (0..=Subset::full(n).0).map(Subset)
    }

    /// Composition of `n` whose partial sums are the elements.
    pub fn to_composition(self, n: usize) -> Vec<u8> {
        let mut parts = Vec::new();
        let mut prev = 0u8;
        for e in self.elems() {
            parts.push(e - prev);
            prev = e;
        }
        parts.push(n as u8 - prev);
        parts
    }

    pub fn from_composition(parts: &[u8]) -> Subset {
        let mut s = Subset::empty();
        let mut acc = 0u8;
        for &p in &parts[..parts.len().saturating_sub(1)] {
            acc += p;
            s.insert(acc);
        }
        s
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_bijection() {
        for n in 1..=6 {
            for s in Subset::all_of_degree(n) {
                let c = s.to_composition(n);
                assert_eq!(c.iter().map(|&p| p as usize).sum::<usize>(), n);
                assert!(c.iter().all(|&p| p >= 1));
                assert_eq!(Subset::from_composition(&c), s);
            }
        }
        assert_eq!(Subset::from_elems([1, 3]).to_composition(5), vec![1, 2, 2]);
    }

    #[test]
    fn set_operations() {
        let a = Subset::from_elems([1, 2, 3]);
        let b = Subset::from_elems([2, 6]);
        assert_eq!(a.union(b).elems(), vec![1, 2, 3, 6]);
        assert!(Subset::from_elems([2]).is_subset_of(a));
        assert!(!b.is_subset_of(a));
        assert_eq!(b.max_elem(), Some(6));
        assert_eq!(a.to_string(), "{1,2,3}");
        assert_eq!(Subset::full(4).elems(), vec![1, 2, 3]);
        assert_eq!(Subset::full(1), Subset::empty());
    }
}
