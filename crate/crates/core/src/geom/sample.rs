use std::ops::ControlFlow;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::flag::Flag;
use super::matrix::{rat, RationalMatrix};
use super::membership::member_t_plucker;
use crate::diagrams::{equations, find_flat};
use crate::error::{Error, Result};
use crate::perm::{check_same_n, Permutation};
use crate::qbg::{bfp_greedy_path, out_edges, path_length, QbgEdge};

/// Random integer entries are drawn from `[-BOUND, BOUND]`.
pub const BOUND: i64 = 100;
/// Geodesics tried before giving up.
pub const PATH_BUDGET: usize = 6000;

fn random_entry(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(-BOUND..=BOUND))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let x = rng.gen_range(-BOUND..=BOUND);
        if x != 0 {
            return rat(x);
        }
    }
}

/// A random invertible integer matrix.
pub fn random_flag(n: usize, seed: u64) -> Flag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_entry(&mut rng)).collect())
            .collect();
        let m = RationalMatrix::from_rows(rows).expect("square");
        if let Ok(f) = Flag::from_matrix(m) {
            return f;
        }
    }
}

fn scaled_permutation(w: &Permutation, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let mut m = RationalMatrix::permutation(w);
    for r in 0..w.n() {
        let s = random_nonzero(rng);
        for c in 0..w.n() {
            let x = m.get(r, c) * &s;
            m.set(r, c, x);
        }
    }
    m
}

// rows are 1-based values here
fn row_add(m: &mut RationalMatrix, dst: usize, src: usize, c: &BigRational) {
    for col in 0..m.cols() {
        let x = m.get(dst - 1, col) + c * m.get(src - 1, col);
        m.set(dst - 1, col, x);
    }
}

/// Walk the path from `e_u`: an edge `w -> w t_pq` adds a multiple of row `w(p)` to row `w(q)`.
fn forward(u: &Permutation, path: &[QbgEdge], rng: &mut ChaCha8Rng) -> RationalMatrix {
    let mut m = scaled_permutation(u, rng);
    for e in path {
        let c = random_nonzero(rng);
        row_add(&mut m, e.source.at(e.root.j), e.source.at(e.root.i), &c);
    }
    m
}

/// Same, starting from `e_v` and reading the path backwards.
fn backward(v: &Permutation, path: &[QbgEdge], rng: &mut ChaCha8Rng) -> RationalMatrix {
    let mut m = scaled_permutation(v, rng);
    for e in path.iter().rev() {
        let c = random_nonzero(rng);
        row_add(&mut m, e.target.at(e.root.j), e.target.at(e.root.i), &c);
    }
    m
}

/// Depth-first over shortest paths `w -> v`, successors shuffled.
fn geodesics<F>(
    w: &Permutation,
    v: &Permutation,
    remaining: usize,
    prefix: &mut Vec<QbgEdge>,
    rng: &mut ChaCha8Rng,
    visit: &mut F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[QbgEdge], &mut ChaCha8Rng) -> Result<ControlFlow<()>>,
{
    if remaining == 0 {
        return visit(prefix, rng);
    }
    let mut next = Vec::new();
    for e in out_edges(w) {
        if path_length(&e.target, v)? + 1 == remaining {
            next.push(e);
        }
    }
    next.shuffle(rng);
    for e in next {
        let target = e.target.clone();
        prefix.push(e);
        let flow = geodesics(&target, v, remaining - 1, prefix, rng, visit)?;
        prefix.pop();
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// First column where the candidate leaves the open stratum, for error reports.
fn failing_column(u: &Permutation, v: &Permutation, f: &Flag) -> Result<usize> {
    let n = u.n();
    for k in 1..=n {
        if f.plucker(u.prefix_set(k)).is_zero() || f.plucker(v.prefix_set(k)).is_zero() {
            return Ok(k);
        }
    }
    let a = find_flat(u, v)?;
    let bad = equations(u, v, &a)?
        .equations
        .iter()
        .filter(|e| !e.equation.holds(f))
        .map(|e| e.cell.1)
        .min();
    Ok(bad.unwrap_or(n))
}

/// A point of the open stratum `T°_{u,v}`.
///
/// Starting from a torus translate of `e_u`, each step `w -> w t_pq` of a shortest path adds a
/// random multiple of row `w(p)` to row `w(q)`. Not every geodesic lands in the open stratum,
/// so candidates are checked and further geodesics (and the mirrored construction from `e_v`)
/// are tried until one does.
pub fn sample_in_open_stratum(u: &Permutation, v: &Permutation, seed: u64) -> Result<Flag> {
    check_same_n(&[u, v])?;
    let len = path_length(u, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Option<Flag> = None;
    let mut last: Option<Flag> = None;
    let mut tried = 0;

    let mut attempt = |path: &[QbgEdge], rng: &mut ChaCha8Rng| -> Result<ControlFlow<()>> {
        tried += 1;
        for m in [forward(u, path, rng), backward(v, path, rng)] {
            let f = Flag::from_matrix(m)?;
            if member_t_plucker(u, v, &f, true)? {
                found = Some(f);
                return Ok(ControlFlow::Break(()));
            }
            last = Some(f);
        }
        if tried >= PATH_BUDGET {
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    };

    let greedy = bfp_greedy_path(u, v)?;
    if attempt(&greedy, &mut rng)?.is_continue() {
        let _ = geodesics(u, v, len, &mut Vec::new(), &mut rng, &mut attempt)?;
    }
    if let Some(f) = found {
        return Ok(f);
    }
    let column = match &last {
        Some(f) => failing_column(u, v, f)?,
        None => 1,
    };
    Err(Error::SamplingFailed {
        column,
        attempts: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::membership::stratum;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn sample_round_trips() {
        for (u, v) in [
            ("4321", "3142"),
            ("1234", "4321"),
            ("2413", "2413"),
            ("132", "321"),
        ] {
            let (u, v) = (p(u), p(v));
            let f = sample_in_open_stratum(&u, &v, 7).unwrap();
            let s = stratum(&u, &v, &f).unwrap();
            assert_eq!((s.x, s.y), (u, v));
        }
    }

    #[test]
    fn point_stratum_sample_is_scaled_permutation_matrix() {
        let w = p("31524");
        let f = sample_in_open_stratum(&w, &w, 3).unwrap();
        assert!(member_t_plucker(&w, &w, &f, true).unwrap());
        let pattern = w.matrix_pattern();
        for (r, row) in pattern.iter().enumerate() {
            for (c, &set) in row.iter().enumerate() {
                assert_eq!(!f.matrix().get(r, c).is_zero(), set);
            }
        }
    }

    #[test]
    fn every_pair_n3() {
        for u in Permutation::all(3) {
            for v in Permutation::all(3) {
                let f = sample_in_open_stratum(&u, &v, 1).unwrap();
                assert!(member_t_plucker(&u, &v, &f, true).unwrap(), "{u} {v}");
            }
        }
    }

    #[test]
    fn deterministic_by_seed() {
        let (u, v) = (p("4321"), p("3142"));
        let a = sample_in_open_stratum(&u, &v, 11).unwrap();
        let b = sample_in_open_stratum(&u, &v, 11).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }
}
