//! Variable subsets `S ⊆ {1..n}` packed into a 128-bit mask.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest arity a [`Subset`] can address.
pub const MAX_VARS: usize = 128;

/// A set of 1-based variable indices. Bit `i` of the mask stands for `x_{i+1}`.
///
/// Ordering is by size first, then lexicographic on the sorted index lists,
/// so `{} < {1} < {2} < {1,2} < {1,3} < {2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u128) -> Self {
        Subset(mask)
    }

    pub fn mask(self) -> u128 {
        self.0
    }

    /// Builds a subset from 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut m = 0u128;
        for &i in indices {
            if i == 0 || i > MAX_VARS {
                return Err(Error::InvalidArgument(format!(
                    "variable index {i} outside 1..={MAX_VARS}"
                )));
            }
            m |= 1u128 << (i - 1);
        }
        Ok(Subset(m))
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_VARS).contains(&i));
        Subset(1u128 << (i - 1))
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARS);
        if n == MAX_VARS {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_VARS).contains(&i) && (self.0 >> (i - 1)) & 1 == 1
    }

    /// Largest index, or 0 for the empty set.
    pub fn max_index(self) -> usize {
        MAX_VARS - self.0.leading_zeros() as usize
    }

    pub fn sym_diff(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Parity of the input bits selected by this set, with `x` packed the
    /// same way as the subset mask.
    pub fn parity(self, x: u128) -> bool {
        (self.0 & x).count_ones() & 1 == 1
    }

    /// Character value `(-1)^{parity}`.
    pub fn character(self, x: u128) -> i32 {
        if self.parity(x) {
            -1
        } else {
            1
        }
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let tz = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(tz + 1)
            }
        })
    }

    /// All subsets of `self` (including the empty set and `self`), in no
    /// particular order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u128);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full {
                None
            } else {
                Some(c.wrapping_sub(full) & full)
            };
            Some(Subset(c))
        })
    }

    /// Re-indexes a subset of `{1..|vars|}` onto the positions listed in `vars`.
    pub fn embed(self, vars: &[usize]) -> Subset {
        let mut m = 0u128;
        for i in self.iter() {
            m |= 1u128 << (vars[i - 1] - 1);
        }
        Subset(m)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Subsets of `{1..n}` with exactly `size` elements, in canonical order.
pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Subset> {
    let mut idx: Option<Vec<usize>> = if size <= n {
        Some((1..=size).collect())
    } else {
        None
    };
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out = Subset::from_indices(cur).expect("indices in range");
        // advance to the next combination in lexicographic order
        let mut pos = size;
        loop {
            if pos == 0 {
                idx = None;
                break;
            }
            pos -= 1;
            if cur[pos] < n - (size - 1 - pos) {
                cur[pos] += 1;
                for q in pos + 1..size {
                    cur[q] = cur[q - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Packs a bit string (`x[0]` is `x_1`) into a mask.
pub fn pack_bits(x: &[bool]) -> u128 {
    x.iter()
        .enumerate()
        .fold(0u128, |m, (i, &b)| if b { m | (1u128 << i) } else { m })
}

/// Unpacks the low `n` bits of a mask.
pub fn unpack_bits(x: u128, n: usize) -> Vec<bool> {
    (0..n).map(|i| (x >> i) & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let s = |v: &[usize]| Subset::from_indices(v).unwrap();
        let mut v = vec![s(&[2, 3]), s(&[1]), s(&[]), s(&[1, 4]), s(&[2]), s(&[1, 2])];
        v.sort();
        assert_eq!(
            v,
            vec![s(&[]), s(&[1]), s(&[2]), s(&[1, 2]), s(&[1, 4]), s(&[2, 3])]
        );
    }

    #[test]
    fn combinations_are_sorted_and_complete() {
        let all: Vec<_> = subsets_of_size(5, 3).collect();
        assert_eq!(all.len(), 10);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(subsets_of_size(4, 0).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
    }

    #[test]
    fn subsets_enumeration() {
        let s = Subset::from_indices(&[1, 3, 6]).unwrap();
        let mut subs: Vec<_> = s.subsets().collect();
        subs.sort();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn full_and_bounds() {
        assert_eq!(Subset::full(128).len(), 128);
        assert_eq!(Subset::full(3).indices(), vec![1, 2, 3]);
        assert!(Subset::from_indices(&[0]).is_err());
        assert!(Subset::from_indices(&[129]).is_err());
        assert_eq!(Subset::from_indices(&[5, 2]).unwrap().max_index(), 5);
    }

    #[test]
    fn embed_moves_indices() {
        let local = Subset::from_indices(&[1, 3]).unwrap();
        assert_eq!(local.embed(&[2, 5, 7]).indices(), vec![2, 7]);
    }
}
