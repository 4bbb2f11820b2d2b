use std::collections::HashMap;

use super::{Permutation, Root};
use crate::error::{Error, Result};

/// Reflection ordering `gamma_k = s_{a_1} ... s_{a_{k-1}} alpha_{a_k}` of a reduced word of `w_0`.
pub fn reflection_ordering(word: &[usize], n: usize) -> Result<Vec<Root>> {
    if word.len() != n * (n - 1) / 2 {
        return Err(Error::NotReduced(word.to_vec()));
    }
    // sigma = s_{a_1} ... s_{a_{k-1}} acting on indices; right multiplication by s_a swaps
    // the entries at positions a and a+1 of its one-line word.
    let mut sigma: Vec<usize> = (1..=n).collect();
    let mut roots = Vec::with_capacity(word.len());
    for &a in word {
        if a == 0 || a >= n {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let (x, y) = (sigma[a - 1], sigma[a]);
        if x > y {
            return Err(Error::NotReduced(word.to_vec()));
        }
        roots.push(Root { i: x, j: y });
        sigma.swap(a - 1, a);
    }
    Ok(roots)
}

/// Checks that `ordering` lists every positive root once and satisfies betweenness.
pub fn is_reflection_ordering(ordering: &[Root], n: usize) -> Result<()> {
    let mut pos = HashMap::new();
    for (idx, r) in ordering.iter().enumerate() {
        if r.i == 0 || r.i >= r.j || r.j > n {
            return Err(Error::InvalidOrdering(format!(
                "{r} is not a root of S_{n}"
            )));
        }
        if pos.insert(*r, idx).is_some() {
            return Err(Error::InvalidOrdering(format!("{r} repeated")));
        }
    }
    if pos.len() != n * (n - 1) / 2 {
        return Err(Error::InvalidOrdering(format!(
            "{} roots listed, expected {}",
            pos.len(),
            n * (n - 1) / 2
        )));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let ij = pos[&Root { i, j }];
                let jk = pos[&Root { i: j, j: k }];
                let ik = pos[&Root { i, j: k }];
                if !(ij.min(jk) < ik && ik < ij.max(jk)) {
                    return Err(Error::InvalidOrdering(format!(
                        "e{i}-e{k} not between e{i}-e{j} and e{j}-e{k}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Every reduced word of `w_0` in `S_n`, by depth-first search over length-increasing steps.
pub fn reduced_words_of_longest(n: usize) -> Vec<Vec<usize>> {
    fn go(w: &mut Permutation, word: &mut Vec<usize>, target: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == target {
            out.push(word.clone());
            return;
        }
        for a in 1..w.n() {
            if w.at(a) < w.at(a + 1) {
                w.word.swap(a - 1, a);
                word.push(a);
                go(w, word, target, out);
                word.pop();
                w.word.swap(a - 1, a);
            }
        }
    }
    let mut out = Vec::new();
    let mut w = Permutation::identity(n);
    go(&mut w, &mut Vec::new(), n * (n - 1) / 2, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(roots: &[Root]) -> Vec<String> {
        roots.iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn worked_orderings() {
        let ord = reflection_ordering(&[3, 1, 2, 1, 3, 2], 4).unwrap();
        assert_eq!(
            names(&ord),
            ["e3-e4", "e1-e2", "e1-e4", "e2-e4", "e1-e3", "e2-e3"]
        );
        let ord = reflection_ordering(&[1, 2, 1], 3).unwrap();
        assert_eq!(names(&ord), ["e1-e2", "e1-e3", "e2-e3"]);
        assert!(matches!(
            reflection_ordering(&[1, 1], 2),
            Err(Error::NotReduced(_))
        ));
        assert!(reflection_ordering(&[1, 2, 2], 3).is_err());
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(reduced_words_of_longest(3).len(), 2);
        assert_eq!(reduced_words_of_longest(4).len(), 16);
        assert_eq!(reduced_words_of_longest(5).len(), 768);
    }

    #[test]
    fn all_orderings_have_betweenness() {
        for n in 2..=5 {
            for word in reduced_words_of_longest(n) {
                let ord = reflection_ordering(&word, n).unwrap();
                is_reflection_ordering(&ord, n).unwrap();
            }
        }
    }

    #[test]
    fn rejects_bad_ordering() {
        let bad = vec![
            Root { i: 1, j: 3 },
            Root { i: 1, j: 2 },
            Root { i: 2, j: 3 },
        ];
        assert!(is_reflection_ordering(&bad, 3).is_err());
        assert!(is_reflection_ordering(&bad[..2], 3).is_err());
    }
}
