//! Plücker indices written as ordered lists, normalized to `sign * P_sorted`.

use serde::{Deserialize, Serialize};

use crate::valueset::ValueSet;

/// `sign * P_set`; `sign == 0` means the coordinate vanishes identically (repeated index).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignedSubset {
    pub sign: i8,
    pub set: ValueSet,
}

impl SignedSubset {
    pub fn zero() -> Self {
        SignedSubset {
            sign: 0,
            set: ValueSet::EMPTY,
        }
    }

    pub fn plain(set: ValueSet) -> Self {
        SignedSubset { sign: 1, set }
    }

    /// `P_{i_1, ..., i_k}` for an arbitrary ordered list: the sign of the sorting permutation.
    pub fn from_list(list: &[usize]) -> Self {
        let mut inversions = 0usize;
        for a in 0..list.len() {
            for b in a + 1..list.len() {
                if list[a] == list[b] {
                    return Self::zero();
                }
                if list[a] > list[b] {
                    inversions += 1;
                }
            }
        }
        SignedSubset {
            sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
            set: list.iter().copied().collect(),
        }
    }

    /// `P_{I + i}`: append `i` after the sorted members of `I`.
    pub fn plus(self, i: usize) -> Self {
        if self.sign == 0 || self.set.contains(i) {
            return Self::zero();
        }
        let above = self.set.iter().filter(|&x| x > i).count();
        SignedSubset {
            sign: if above % 2 == 0 {
                self.sign
            } else {
                -self.sign
            },
            set: self.set.with(i),
        }
    }

    /// `P_{I - i_j} = (-1)^{k-j} P_{I minus i_j}`, where `i_j` is the `j`-th smallest of `k`.
    pub fn minus(self, i: usize) -> Self {
        if self.sign == 0 || !self.set.contains(i) {
            return Self::zero();
        }
        let above = self.set.iter().filter(|&x| x > i).count();
        SignedSubset {
            sign: if above % 2 == 0 {
                self.sign
            } else {
                -self.sign
            },
            set: self.set.without(i),
        }
    }

    /// `P_{I - B}`: remove the members of `B`, largest first.
    pub fn minus_set(self, b: ValueSet) -> Self {
        let mut out = self;
        for i in b.to_vec().into_iter().rev() {
            out = out.minus(i);
        }
        out
    }

    /// `P_{I + A}`: append the members of `A` in increasing order.
    pub fn plus_set(self, a: ValueSet) -> Self {
        let mut out = self;
        for i in a.iter() {
            out = out.plus(i);
        }
        out
    }
}
