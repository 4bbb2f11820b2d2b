//! Incidence Plücker relations, evaluated exactly on a flag.
//!
//! Index lists follow [`SignedSubset`]: `I + i` appends, `I - i` removes with sign `(-1)^{k-j}`,
//! `I - B` removes largest first and `I + A` appends in increasing order.

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::flag::Flag;
use crate::error::{Error, Result};
use crate::signed::SignedSubset;
use crate::valueset::ValueSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Relation {
    /// `P_I P_J = sum_{B in I, |B| = |A|} P_{(I-B)+A} P_{(J-A)+B}`, for `A` inside `J`.
    General {
        i: ValueSet,
        j: ValueSet,
        a: ValueSet,
    },
    /// `P_I P_J = sum_{i in I} P_{I-i} P_{J+i}` with `|I| = |J| + 1`.
    CaseOne { i: ValueSet, j: ValueSet },
    /// `sum_{i in I} P_{I-i} P_{J+i} = 0` with `|I| >= |J| + 2`.
    CaseTwo { i: ValueSet, j: ValueSet },
    /// `P_I P_{J+x} = -sum_{i in I} P_{I+x-i} P_{J+i}`, Case Two applied to `I + x`.
    Exchange { i: ValueSet, j: ValueSet, x: usize },
}

fn plain(s: ValueSet) -> SignedSubset {
    SignedSubset::plain(s)
}

impl Relation {
    fn check_shape(&self, n: usize) -> Result<()> {
        let bad = |msg: &str| Err(Error::Precondition(format!("{self:?}: {msg}")));
        let full = ValueSet::full(n);
        match *self {
            Relation::General { i, j, a } => {
                if !(i.is_subset(full) && j.is_subset(full)) {
                    return bad("indices outside [n]");
                }
                if j.is_empty() || j.len() > i.len() || i.len() >= n || !a.is_subset(j) {
                    return bad("need 1 <= |J| <= |I| < n and A inside J");
                }
            }
            Relation::CaseOne { i, j } => {
                if !(i.is_subset(full) && j.is_subset(full)) {
                    return bad("indices outside [n]");
                }
                if i.len() != j.len() + 1 || i.len() <= 1 || i.len() >= n {
                    return bad("need |I| = |J| + 1 and 1 < |I| < n");
                }
            }
            Relation::CaseTwo { i, j } => {
                if !(i.is_subset(full) && j.is_subset(full)) {
                    return bad("indices outside [n]");
                }
                if j.is_empty() || i.len() < j.len() + 2 || i.len() >= n {
                    return bad("need 1 <= |J|, |J| + 2 <= |I| < n");
                }
            }
            Relation::Exchange { i, j, x } => {
                if !(i.is_subset(full) && j.is_subset(full)) || x == 0 || x > n {
                    return bad("indices outside [n]");
                }
                if i.contains(x) || j.contains(x) {
                    return bad("x must avoid I and J");
                }
                if j.is_empty() || i.len() < j.len() + 1 || i.len() + 1 >= n {
                    return bad("need 1 <= |J|, |J| + 1 <= |I|, |I| + 1 < n");
                }
            }
        }
        Ok(())
    }

    /// Left side minus right side.
    pub fn defect(&self, f: &Flag) -> Result<BigRational> {
        self.check_shape(f.n())?;
        let mut total = BigRational::zero();
        match *self {
            Relation::General { i, j, a } => {
                total += f.plucker(i) * f.plucker(j);
                for b in ValueSet::subsets_of_size(f.n(), a.len()) {
                    if b.is_subset(i) {
                        let left = plain(i).minus_set(b).plus_set(a);
                        let right = plain(j).minus_set(a).plus_set(b);
                        total -= f.signed(left) * f.signed(right);
                    }
                }
            }
            Relation::CaseOne { i, j } => {
                total += f.plucker(i) * f.plucker(j);
                for e in i.iter() {
                    total -= f.signed(plain(i).minus(e)) * f.signed(plain(j).plus(e));
                }
            }
            Relation::CaseTwo { i, j } => {
                for e in i.iter() {
                    total += f.signed(plain(i).minus(e)) * f.signed(plain(j).plus(e));
                }
            }
            Relation::Exchange { i, j, x } => {
                total += f.plucker(i) * f.signed(plain(j).plus(x));
                for e in i.iter() {
                    total += f.signed(plain(i).plus(x).minus(e)) * f.signed(plain(j).plus(e));
                }
            }
        }
        Ok(total)
    }

    pub fn holds(&self, f: &Flag) -> Result<bool> {
        Ok(self.defect(f)?.is_zero())
    }
}

fn random_subset(n: usize, k: usize, rng: &mut ChaCha8Rng) -> ValueSet {
    let mut all: Vec<usize> = (1..=n).collect();
    all.shuffle(rng);
    all.into_iter().take(k).collect()
}

/// `per_shape` random relations of every shape that fits in `n`, interleaved.
pub fn random_relations(n: usize, per_shape: usize, seed: u64) -> Vec<Relation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shapes = Vec::new();
    if n >= 2 {
        shapes.push(0);
    }
    if n >= 3 {
        shapes.push(1);
    }
    if n >= 4 {
        shapes.extend([2, 3]);
    }
    let count = per_shape * shapes.len();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rel = match shapes[out.len() % shapes.len()] {
            0 => {
                let r = rng.gen_range(1..n);
                let s = rng.gen_range(1..=r);
                let j = random_subset(n, s, &mut rng);
                let a: ValueSet = j.iter().filter(|_| rng.gen_bool(0.5)).collect();
                Relation::General {
                    i: random_subset(n, r, &mut rng),
                    j,
                    a,
                }
            }
            1 => {
                let r = rng.gen_range(2..n);
                Relation::CaseOne {
                    i: random_subset(n, r, &mut rng),
                    j: random_subset(n, r - 1, &mut rng),
                }
            }
            2 => {
                let r = rng.gen_range(3..n);
                let s = rng.gen_range(1..=r - 2);
                Relation::CaseTwo {
                    i: random_subset(n, r, &mut rng),
                    j: random_subset(n, s, &mut rng),
                }
            }
            _ => {
                let r = rng.gen_range(2..n - 1);
                let s = rng.gen_range(1..r);
                let mut order: Vec<usize> = (1..=n).collect();
                order.shuffle(&mut rng);
                let x = order[0];
                let i: ValueSet = order[1..=r].iter().copied().collect();
                let rest: Vec<usize> = (1..=n).filter(|&y| y != x).collect();
                let j: ValueSet = rest.choose_multiple(&mut rng, s).copied().collect();
                Relation::Exchange { i, j, x }
            }
        };
        out.push(rel);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::sample::random_flag;
    use crate::perm::Permutation;

    fn set(xs: &[usize]) -> ValueSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn random_flags_satisfy_all_shapes() {
        for n in 2..=5 {
            let f = random_flag(n, 17 + n as u64);
            for rel in random_relations(n, 40, n as u64) {
                assert!(rel.holds(&f).unwrap(), "{rel:?}");
            }
        }
    }

    #[test]
    fn fixed_points_satisfy_relations() {
        let f = Flag::fixed_point(&"35142".parse::<Permutation>().unwrap());
        for rel in random_relations(5, 50, 9) {
            assert!(rel.holds(&f).unwrap(), "{rel:?}");
        }
    }

    #[test]
    fn exchange_with_other_reading_fails() {
        // with (I - i) + x in place of (I + x) - i every term flips sign
        let f = random_flag(5, 2);
        let (i, j, x) = (set(&[1, 3, 4]), set(&[2]), 5);
        let mut flipped = f.plucker(i) * f.signed(plain(j).plus(x));
        for e in i.iter() {
            flipped -= f.signed(plain(i).minus(e).plus(x)) * f.signed(plain(j).plus(e));
        }
        assert!(flipped.is_zero());
        assert!(Relation::Exchange { i, j, x }.holds(&f).unwrap());
    }

    #[test]
    fn shape_errors() {
        let f = random_flag(4, 1);
        let rel = Relation::CaseOne {
            i: set(&[1, 2]),
            j: set(&[1, 2]),
        };
        assert!(matches!(rel.holds(&f), Err(Error::Precondition(_))));
    }
}
