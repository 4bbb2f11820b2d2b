use serde::{Deserialize, Serialize};

use crate::valueset::ValueSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Openness {
    /// `(a, b)_c`
    Open,
    /// `[a, b]_c`
    Closed,
    /// `[a, b)_c`
    LeftClosed,
    /// `(a, b]_c`
    RightClosed,
}

/// A cyclic interval of `[n]` walked forward from `a` to `b`.
///
/// Endpoints are read modulo `n`, so `0` stands for `n`. When `a == b` the closed interval is
/// `{a}` and every other variant is empty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CyclicInterval {
    pub a: usize,
    pub b: usize,
    pub openness: Openness,
    pub n: usize,
}

fn norm(x: usize, n: usize) -> usize {
    (x + n - 1) % n + 1
}

impl CyclicInterval {
    pub fn new(a: usize, b: usize, openness: Openness, n: usize) -> Self {
        CyclicInterval {
            a: norm(a, n),
            b: norm(b, n),
            openness,
            n,
        }
    }

    pub fn open(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, Openness::Open, n)
    }

    pub fn closed(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, Openness::Closed, n)
    }

    pub fn left_closed(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, Openness::LeftClosed, n)
    }

    pub fn right_closed(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, Openness::RightClosed, n)
    }

    pub fn contains(&self, k: usize) -> bool {
        let n = self.n;
        let k = norm(k, n);
        if self.a == self.b {
            return self.openness == Openness::Closed && k == self.a;
        }
        let d = (k + n - self.a) % n;
        let span = (self.b + n - self.a) % n;
        match self.openness {
            Openness::Open => 0 < d && d < span,
            Openness::Closed => d <= span,
            Openness::LeftClosed => d < span,
            Openness::RightClosed => 0 < d && d <= span,
        }
    }

    pub fn members(&self) -> ValueSet {
        (1..=self.n).filter(|&k| self.contains(k)).collect()
    }
}

/// Position of `x` in the order `r < r+1 < ... < n < 1 < ... < r-1` (0-based).
pub fn shifted_position(n: usize, r: usize, x: usize) -> usize {
    (x + n - norm(r, n)) % n
}

/// `a <_r b` in the shifted linear order on `[n]`.
pub fn shifted_less(n: usize, r: usize, a: usize, b: usize) -> bool {
    shifted_position(n, r, a) < shifted_position(n, r, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert!(CyclicInterval::open(1, 3, 4).contains(2));
        assert!(CyclicInterval::open(3, 1, 4).contains(4));
        assert!(!CyclicInterval::open(3, 1, 4).contains(2));
        for k in 1..=5 {
            assert!(!CyclicInterval::left_closed(5, 5, 5).contains(k));
            assert!(!CyclicInterval::right_closed(5, 5, 5).contains(k));
            assert!(!CyclicInterval::open(5, 5, 5).contains(k));
        }
        assert_eq!(CyclicInterval::closed(5, 5, 5).members().to_vec(), vec![5]);
        assert_eq!(
            CyclicInterval::closed(3, 0, 5).members().to_vec(),
            vec![3, 4, 5]
        );
        assert_eq!(CyclicInterval::closed(3, 2, 5).members().len(), 5);
    }

    #[test]
    fn shifted_examples() {
        assert!(shifted_less(5, 1, 2, 5));
        assert!(shifted_less(5, 4, 5, 2));
        assert!(shifted_less(9, 5, 6, 4));
        assert!(!shifted_less(4, 2, 3, 3));
    }

    #[test]
    fn brute_force_walk() {
        for n in 1..=6 {
            for a in 1..=n {
                for b in 1..=n {
                    if a == b {
                        continue;
                    }
                    let mut walk = Vec::new();
                    let mut x = a % n + 1;
                    while x != b {
                        walk.push(x);
                        x = x % n + 1;
                    }
                    let open: ValueSet = walk.iter().copied().collect();
                    assert_eq!(CyclicInterval::open(a, b, n).members(), open);
                    assert_eq!(
                        CyclicInterval::closed(a, b, n).members(),
                        open.with(a).with(b)
                    );
                    assert_eq!(CyclicInterval::left_closed(a, b, n).members(), open.with(a));
                    assert_eq!(
                        CyclicInterval::right_closed(a, b, n).members(),
                        open.with(b)
                    );
                }
            }
        }
    }
}
