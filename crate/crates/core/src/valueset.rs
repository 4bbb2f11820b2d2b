//! Subsets of `[n]` packed into a bitmask (bit `i - 1` holds value `i`).

use std::fmt;

/// Largest supported ground set.
pub const MAX_N: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ValueSet(u64);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ValueSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ValueSet(u64::MAX)
        } else {
            ValueSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_N).contains(&i));
        ValueSet(1u64 << (i - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_N).contains(&i) && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << (i - 1);
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << (i - 1));
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ValueSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ValueSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ValueSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(t + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `k`-subsets of `[n]`, in increasing bitmask order.
    pub fn subsets_of_size(n: usize, k: usize) -> Vec<ValueSet> {
        if k > n {
            return Vec::new();
        }
        if k == 0 {
            return vec![ValueSet::EMPTY];
        }
        let mut out = Vec::new();
        let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
        let mut x: u64 = (1u64 << k) - 1;
        // Gosper's hack
        while x < limit {
            out.push(ValueSet(x));
            let c = x & x.wrapping_neg();
            let r = x + c;
            if r == 0 {
                break;
            }
            x = (((r ^ x) >> 2) / c) | r;
        }
        out
    }

    /// Comma-separated members, e.g. `1,3,4` (empty string for the empty set).
    pub fn key(self) -> String {
        self.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(s: &str) -> crate::Result<Self> {
        let mut set = ValueSet::EMPTY;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| crate::error::parse_err(tok, "not a positive integer"))?;
            if !(1..=MAX_N).contains(&i) {
                return Err(crate::error::parse_err(tok, "value out of range"));
            }
            set.insert(i);
        }
        Ok(set)
    }
}

impl FromIterator<usize> for ValueSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ValueSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl serde::Serialize for ValueSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for ValueSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = items.iter().find(|&&i| !(1..=MAX_N).contains(&i)) {
            return Err(serde::de::Error::custom(format!(
                "value {bad} out of range"
            )));
        }
        Ok(items.into_iter().collect())
    }
}
