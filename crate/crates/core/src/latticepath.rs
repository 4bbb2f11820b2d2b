//! The lattice path `P(A, B)`, its depth, valid cyclic shifts and the shifted Gale order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{check_same_n, shifted_position, CyclicInterval, Permutation};
use crate::valueset::ValueSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
    Flat,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LatticePath {
    pub steps: Vec<Step>,
    /// `heights[x]` is the height after `x` steps; `heights[0] = 0`.
    pub heights: Vec<i64>,
    pub depth: usize,
}

impl LatticePath {
    fn min_height(&self) -> i64 {
        *self.heights.iter().min().unwrap_or(&0)
    }
}

fn check_sizes(a: ValueSet, b: ValueSet, n: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(format!("|{a}| != |{b}|")));
    }
    if !a.union(b).is_subset(ValueSet::full(n)) {
        return Err(Error::Precondition(format!("{a} or {b} not inside [{n}]")));
    }
    Ok(())
}

pub fn build_path(a: ValueSet, b: ValueSet, n: usize) -> Result<LatticePath> {
    check_sizes(a, b, n)?;
    let mut steps = Vec::with_capacity(n);
    let mut heights = vec![0i64];
    let mut h = 0;
    for i in 1..=n {
        let step = match (a.contains(i), b.contains(i)) {
            (true, false) => Step::Up,
            (false, true) => Step::Down,
            _ => Step::Flat,
        };
        h += match step {
            Step::Up => 1,
            Step::Down => -1,
            Step::Flat => 0,
        };
        steps.push(step);
        heights.push(h);
    }
    let depth = (-heights.iter().min().copied().unwrap_or(0)).max(0) as usize;
    Ok(LatticePath {
        steps,
        heights,
        depth,
    })
}

pub fn depth(a: ValueSet, b: ValueSet, n: usize) -> Result<usize> {
    Ok(build_path(a, b, n)?.depth)
}

/// `{r : A <=_r B}`, read off from where the path attains its minimum.
pub fn valid_shifts(a: ValueSet, b: ValueSet, n: usize) -> Result<Vec<usize>> {
    let path = build_path(a, b, n)?;
    let lowest = path.min_height();
    Ok((0..n)
        .filter(|&x| path.heights[x] == lowest)
        .map(|x| x + 1)
        .collect())
}

fn sorted_by_shift(s: ValueSet, n: usize, r: usize) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_by_key(|&x| shifted_position(n, r, x));
    v
}

pub fn shifted_gale_leq(a: ValueSet, b: ValueSet, r: usize, n: usize) -> Result<bool> {
    check_sizes(a, b, n)?;
    let sa = sorted_by_shift(a, n, r);
    let sb = sorted_by_shift(b, n, r);
    Ok(sa
        .iter()
        .zip(&sb)
        .all(|(&x, &y)| shifted_position(n, r, x) <= shifted_position(n, r, y)))
}

/// `[A, B]_r`, by brute force over all subsets of the right size.
pub fn shifted_interval(a: ValueSet, b: ValueSet, r: usize, n: usize) -> Result<Vec<ValueSet>> {
    if !shifted_gale_leq(a, b, r, n)? {
        return Err(Error::Precondition(format!("{a} is not <=_{r} {b}")));
    }
    let mut out = Vec::new();
    for k in ValueSet::subsets_of_size(n, a.len()) {
        if shifted_gale_leq(a, k, r, n)? && shifted_gale_leq(k, b, r, n)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// Number of elements of `s` in the cyclic interval `[r, r')_c`.
pub fn count_in_cut(s: ValueSet, r: usize, r2: usize, n: usize) -> usize {
    s.intersection(CyclicInterval::left_closed(r, r2, n).members())
        .len()
}

/// A shift sequence `a_1, ..., a_{n-1}` with entries in `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ShiftSequence(pub Vec<usize>);

impl ShiftSequence {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if entries.len() + 1 != n {
            return Err(Error::SizeMismatch(format!(
                "shift sequence has {} entries, expected {}",
                entries.len(),
                n.saturating_sub(1)
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::Precondition(format!("shift {bad} not in [{n}]")));
        }
        Ok(ShiftSequence(entries))
    }

    /// The sequence `a`, checked against `u <=_a v`.
    pub fn for_pair(u: &Permutation, v: &Permutation, entries: Vec<usize>) -> Result<Self> {
        let n = check_same_n(&[u, v])?;
        let seq = ShiftSequence::new(entries, n)?;
        if !seq.orders(u, v) {
            return Err(Error::Precondition(format!(
                "{u} is not <=_a {v} for a = {seq}"
            )));
        }
        Ok(seq)
    }

    pub fn ones(n: usize) -> Self {
        ShiftSequence(vec![1; n.saturating_sub(1)])
    }

    /// `a_k`, 1-based.
    pub fn at(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `u[k] <=_{a_k} v[k]` for all `k`.
    pub fn orders(&self, u: &Permutation, v: &Permutation) -> bool {
        let n = u.n();
        (1..n).all(|k| {
            shifted_gale_leq(u.prefix_set(k), v.prefix_set(k), self.at(k), n).unwrap_or(false)
        })
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| crate::error::parse_err(t, "not a positive integer"))
            })
            .collect::<Result<Vec<_>>>()?;
        ShiftSequence::new(entries, n)
    }
}

impl std::fmt::Display for ShiftSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Smallest valid shift per column.
pub fn find_shift_sequence(u: &Permutation, v: &Permutation) -> Result<ShiftSequence> {
    let n = check_same_n(&[u, v])?;
    let mut entries = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let shifts = valid_shifts(u.prefix_set(k), v.prefix_set(k), n)?;
        entries.push(shifts[0]);
    }
    Ok(ShiftSequence(entries))
}

/// Every `a` with `u <=_a v`, in lexicographic order.
pub fn all_shift_sequences(u: &Permutation, v: &Permutation) -> Result<Vec<ShiftSequence>> {
    let n = check_same_n(&[u, v])?;
    let mut out = vec![Vec::with_capacity(n.saturating_sub(1))];
    for k in 1..n {
        let shifts = valid_shifts(u.prefix_set(k), v.prefix_set(k), n)?;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                shifts.iter().map(move |&r| {
                    let mut next = prefix.clone();
                    next.push(r);
                    next
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(ShiftSequence).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ValueSet {
        xs.iter().copied().collect()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lattice_path_depth_example() {
        let path = build_path(set(&[3, 4, 6, 7]), set(&[1, 2, 3, 5]), 7).unwrap();
        assert_eq!(path.heights[1..], [-1, -2, -2, -1, -2, -1, 0]);
        assert_eq!(path.depth, 2);
        assert_eq!(
            valid_shifts(set(&[3, 4, 6, 7]), set(&[1, 2, 3, 5]), 7).unwrap(),
            vec![3, 4, 6]
        );
    }

    #[test]
    fn small_paths() {
        let a = set(&[1, 4]);
        let path = build_path(a, a, 5).unwrap();
        assert!(path.steps.iter().all(|s| *s == Step::Flat));
        assert_eq!(path.depth, 0);
        assert_eq!(valid_shifts(a, a, 5).unwrap(), vec![1, 2, 3, 4, 5]);
        let path = build_path(set(&[1]), set(&[2]), 2).unwrap();
        assert_eq!(path.steps, vec![Step::Up, Step::Down]);
        assert_eq!(path.depth, 0);
        assert_eq!(depth(set(&[7]), set(&[2]), 7).unwrap(), 1);
        assert!(build_path(set(&[1]), set(&[1, 2]), 3).is_err());
    }

    #[test]
    fn gale_examples() {
        assert!(shifted_gale_leq(set(&[1, 2]), set(&[3, 4]), 1, 4).unwrap());
        assert!(shifted_gale_leq(set(&[4, 3]), set(&[3, 1]), 4, 4).unwrap());
        assert!(!shifted_gale_leq(set(&[4, 3]), set(&[3, 1]), 1, 4).unwrap());
        assert_eq!(
            valid_shifts(set(&[4, 3]), set(&[3, 1]), 4).unwrap(),
            vec![2, 3, 4]
        );
    }

    #[test]
    fn intervals() {
        assert_eq!(
            shifted_interval(set(&[1]), set(&[3]), 1, 3).unwrap(),
            vec![set(&[1]), set(&[2]), set(&[3])]
        );
        let a = set(&[2, 5]);
        assert_eq!(shifted_interval(a, a, 3, 5).unwrap(), vec![a]);
        let got = shifted_interval(set(&[4, 3]), set(&[3, 1]), 4, 4).unwrap();
        assert_eq!(got, vec![set(&[1, 3]), set(&[3, 4])]);
        assert!(shifted_interval(set(&[4, 3]), set(&[3, 1]), 1, 4).is_err());
    }

    #[test]
    fn shift_sequences() {
        assert_eq!(
            find_shift_sequence(&p("2413"), &p("2413")).unwrap().0,
            vec![1, 1, 1]
        );
        assert_eq!(
            find_shift_sequence(&p("1234"), &p("4321")).unwrap().0,
            vec![1, 1, 1]
        );
        assert_eq!(
            find_shift_sequence(&p("4321"), &p("3142")).unwrap().0,
            vec![4, 2, 2]
        );
        assert!(ShiftSequence::for_pair(&p("4321"), &p("3142"), vec![4, 4, 2]).is_ok());
        assert!(ShiftSequence::for_pair(&p("4321"), &p("3142"), vec![1, 4, 2]).is_err());
    }

    #[test]
    fn all_sequences_for_running_example() {
        let all = all_shift_sequences(&p("4321"), &p("3142")).unwrap();
        let want: Vec<Vec<usize>> = vec![vec![4, 2, 2], vec![4, 3, 2], vec![4, 4, 2]];
        assert_eq!(all.iter().map(|a| a.0.clone()).collect::<Vec<_>>(), want);
        assert!(all.iter().all(|a| a.orders(&p("4321"), &p("3142"))));
    }
}
