//! Subsets of a ground set `{1, ..., n}` stored as bit masks.
//!
//! Element `i` (1-based) occupies bit `i - 1`. The total order on subsets is
//! degree first, then lexicographic on the increasing element lists. Every
//! normal form and every basis ordering in the crate is relative to it.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest element id a [`Subset`] can hold.
pub const MAX_ELEMENT: usize = 31;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    /// The set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENT, "ground set too large: {n}");
        Subset(if n == 0 { 0 } else { u32::MAX >> (32 - n) })
    }

    pub fn singleton(x: usize) -> Self {
        assert!((1..=MAX_ELEMENT).contains(&x), "element id out of range: {x}");
        Subset(1 << (x - 1))
    }

    /// Panics on ids outside `1..=31`; use [`Subset::try_from_elements`] for
    /// untrusted input.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |acc, x| acc.with(x))
    }

    pub fn try_from_elements<I: IntoIterator<Item = usize>>(
        elements: I,
        n: usize,
    ) -> Result<Self, usize> {
        let mut s = Subset::EMPTY;
        for x in elements {
            if x == 0 || x > n || x > MAX_ELEMENT {
                return Err(x);
            }
            s = s.with(x);
        }
        Ok(s)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        (1..=MAX_ELEMENT).contains(&x) && self.0 & (1 << (x - 1)) != 0
    }

    pub fn with(self, x: usize) -> Self {
        Subset(self.0 | Subset::singleton(x).0)
    }

    pub fn without(self, x: usize) -> Self {
        Subset(self.0 & !Subset::singleton(x).0)
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based position of `x` among the members, if present.
    pub fn position(self, x: usize) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let below = self.0 & ((1u32 << (x - 1)) - 1);
        Some(below.count_ones() as usize + 1)
    }

    /// Number of members strictly greater than `x`.
    pub fn count_above(self, x: usize) -> usize {
        if x >= 32 {
            return 0;
        }
        let above = if x == 0 { self.0 } else { self.0 & !(u32::MAX >> (32 - x)) };
        above.count_ones() as usize
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> Submasks {
        Submasks {
            outer: self.0,
            next: Some(0),
        }
    }

    /// Apply an element relabeling; `map[x]` is the new id of element `x`.
    pub fn relabel(self, map: &[usize]) -> Subset {
        Subset::from_elements(self.iter().map(|x| map[x]))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            if self.0 == other.0 {
                return Ordering::Equal;
            }
            // equal sizes: the lists first differ at the smallest element of
            // the symmetric difference, and whoever holds it is smaller
            let low = (self.0 ^ other.0) & (self.0 ^ other.0).wrapping_neg();
            if self.0 & low != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        Subset::try_from_elements(elements.iter().copied(), MAX_ELEMENT).map_err(|x| {
            serde::de::Error::custom(format!("element id {x} outside 1..={MAX_ELEMENT}"))
        })
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::from_elements(iter)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl DoubleEndedIterator for Elements {
    fn next_back(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let top = 31 - self.0.leading_zeros();
        self.0 &= !(1 << top);
        Some(top as usize + 1)
    }
}

impl ExactSizeIterator for Elements {}

pub struct Submasks {
    outer: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.outer {
            None
        } else {
            // increment within the bits of `outer`
            Some((cur | !self.outer).wrapping_add(1) & self.outer)
        };
        Some(Subset(cur))
    }
}

/// Sign of the permutation sorting the sequence `seq` (distinct entries).
pub fn sorting_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
