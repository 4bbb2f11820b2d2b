//! Permutations in one-line notation and the small vocabulary built on them.

mod cyclic;
mod reflection;

pub use cyclic::{shifted_less, shifted_position, CyclicInterval, Openness};
pub use reflection::{is_reflection_ordering, reduced_words_of_longest, reflection_ordering};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::valueset::{ValueSet, MAX_N};

/// A permutation of `[n]` stored as its one-line word `w_1 ... w_n` (1-based values).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(parse_err("", "empty permutation"));
        }
        if n > MAX_N {
            return Err(Error::ResourceLimit(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n {
                return Err(parse_err(
                    x.to_string(),
                    format!("value out of range 1..={n}"),
                ));
            }
            if seen[x] {
                return Err(parse_err(x.to_string(), "duplicate value"));
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The longest element `w_0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w_i`, 1-based position.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (pos, &val) in self.word.iter().enumerate() {
            inv[val - 1] = pos + 1;
        }
        Permutation { word: inv }
    }

    /// Composition `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            word: other.word.iter().map(|&i| self.word[i - 1]).collect(),
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right multiplication by `t_ij`: swap the entries at positions `i` and `j`.
    pub fn apply_transposition(&self, t: Root) -> Permutation {
        let mut word = self.word.clone();
        word.swap(t.i - 1, t.j - 1);
        Permutation { word }
    }

    /// `w[k] = {w_1, ..., w_k}`.
    pub fn prefix_set(&self, k: usize) -> ValueSet {
        self.word[..k].iter().copied().collect()
    }

    /// `tau * w`: every value `x` becomes `x + 1` (and `n` becomes `1`).
    pub fn long_cycle_rotate(&self) -> Permutation {
        let n = self.n();
        Permutation {
            word: self.word.iter().map(|&x| x % n + 1).collect(),
        }
    }

    /// Index of `self` in the lexicographic listing of `S_n` (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = self.word[i + 1..]
                .iter()
                .filter(|&&x| x < self.word[i])
                .count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    pub fn from_lex_rank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (1..=n).collect();
        let word = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { word }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let total: usize = (1..=n).product();
        (0..total)
            .map(|r| Permutation::from_lex_rank(n, r))
            .collect()
    }

    /// The permutation matrix pattern: `matrix[r][c] = 1` iff `r = w(c)` (0-based indices).
    pub fn matrix_pattern(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let mut m = vec![vec![false; n]; n];
        for (c, &r) in self.word.iter().enumerate() {
            m[r - 1][c] = true;
        }
        m
    }
}

/// Parses a digit string (`n <= 9`) or comma-separated values.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text.is_empty() {
        return Err(parse_err(text, "empty input"));
    }
    let tokens: Vec<String> = if text.contains(',') {
        text.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        text.chars().map(|c| c.to_string()).collect()
    };
    let n = tokens.len();
    let mut word = Vec::with_capacity(n);
    let mut seen = vec![false; n + 1];
    for tok in tokens {
        let x: usize = tok
            .parse()
            .map_err(|_| parse_err(tok.clone(), "not a positive integer"))?;
        if x == 0 || x > n {
            return Err(parse_err(tok, format!("value out of range 1..={n}")));
        }
        if seen[x] {
            return Err(parse_err(tok, "duplicate value"));
        }
        seen[x] = true;
        word.push(x);
    }
    Permutation::new(word)
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        parse_permutation(&s)
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.word {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The positive root `e_i - e_j`, also read as the transposition `t_ij`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Result<Root> {
        if i == 0 || i >= j {
            return Err(Error::Precondition(format!(
                "root needs 1 <= i < j, got ({i},{j})"
            )));
        }
        Ok(Root { i, j })
    }

    /// All positive roots of `S_n` in the order `e1-e2, e1-e3, ..., e2-e3, ...`.
    pub fn all(n: usize) -> Vec<Root> {
        let mut roots = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                roots.push(Root { i, j });
            }
        }
        roots
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}

pub(crate) fn check_same_n(perms: &[&Permutation]) -> Result<usize> {
    let n = perms[0].n();
    if let Some(p) = perms.iter().find(|p| p.n() != n) {
        return Err(Error::SizeMismatch(format!(
            "{} has size {}, expected {n}",
            p,
            p.n()
        )));
    }
    Ok(n)
}
