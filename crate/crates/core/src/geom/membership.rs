use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::flag::Flag;
use crate::diagrams::find_flat;
use crate::error::{Error, Result};
use crate::latticepath::{shifted_interval, ShiftSequence};
use crate::perm::{check_same_n, CyclicInterval, Permutation};
use crate::qbg::path_length;
use crate::tilted::in_interval;
use crate::valueset::ValueSet;

fn check_flag(u: &Permutation, v: &Permutation, f: &Flag) -> Result<usize> {
    let n = check_same_n(&[u, v])?;
    if f.n() != n {
        return Err(Error::SizeMismatch(format!(
            "flag has n = {}, permutations have n = {n}",
            f.n()
        )));
    }
    Ok(n)
}

fn check_shifts(u: &Permutation, v: &Permutation, a: &ShiftSequence) -> Result<()> {
    if a.0.len() + 1 != u.n() || !a.orders(u, v) {
        return Err(Error::Precondition(format!(
            "{u} is not <=_a {v} for a = {a}"
        )));
    }
    Ok(())
}

/// Rank conditions on `[a_i, j]_c` and `[j, a_i - 1]_c` for all `i in [n-1]`, `j in [n]`.
pub fn member_t_rank(
    u: &Permutation,
    v: &Permutation,
    a: &ShiftSequence,
    f: &Flag,
    open: bool,
) -> Result<bool> {
    let n = check_flag(u, v, f)?;
    check_shifts(u, v, a)?;
    let cmp = |rank: usize, bound: usize| if open { rank == bound } else { rank <= bound };
    for i in 1..n {
        let a_i = a.at(i);
        let (ui, vi) = (u.prefix_set(i), v.prefix_set(i));
        for j in 1..=n {
            let low = CyclicInterval::closed(a_i, j, n).members();
            if !cmp(f.rank_region(low, i), ui.intersection(low).len()) {
                return Ok(false);
            }
            let high = CyclicInterval::closed(j, a_i + n - 1, n).members();
            if !cmp(f.rank_region(high, i), vi.intersection(high).len()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every `F_k` lies in the rotated Grassmannian Richardson variety of `(u[k], v[k], a_k)`.
pub fn member_t_grassmann(
    u: &Permutation,
    v: &Permutation,
    a: &ShiftSequence,
    f: &Flag,
    open: bool,
) -> Result<bool> {
    let n = check_flag(u, v, f)?;
    check_shifts(u, v, a)?;
    for k in 1..n {
        let (uk, vk) = (u.prefix_set(k), v.prefix_set(k));
        let allowed = shifted_interval(uk, vk, a.at(k), n)?;
        for s in ValueSet::subsets_of_size(n, k) {
            if !allowed.contains(&s) && !f.plucker(s).is_zero() {
                return Ok(false);
            }
        }
        if open && (f.plucker(uk).is_zero() || f.plucker(vk).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P_w(F) = 0` for every `w` outside `[u, v]`; open adds `P_u P_v != 0`.
pub fn member_t_plucker(u: &Permutation, v: &Permutation, f: &Flag, open: bool) -> Result<bool> {
    let n = check_flag(u, v, f)?;
    if open && (f.plucker_w(u).is_zero() || f.plucker_w(v).is_zero()) {
        return Ok(false);
    }
    for w in Permutation::all(n) {
        if !f.plucker_w(&w).is_zero() && !in_interval(u, v, &w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratumLabel {
    pub x: Permutation,
    pub y: Permutation,
    pub u: Permutation,
    pub v: Permutation,
    pub shifts: ShiftSequence,
}

/// Rows where the rank of `F_k` jumps scanning forward from `a_k`, and backward to `a_k - 1`.
fn jump_sets(f: &Flag, k: usize, a_k: usize) -> (ValueSet, ValueSet) {
    let n = f.n();
    let mut forward = ValueSet::EMPTY;
    let mut backward = ValueSet::EMPTY;
    for j in 1..=n {
        let before = CyclicInterval::left_closed(a_k, j, n).members();
        let upto = CyclicInterval::closed(a_k, j, n).members();
        if f.rank_region(before, k) < f.rank_region(upto, k) {
            forward.insert(j);
        }
        let after = CyclicInterval::right_closed(j, a_k + n - 1, n).members();
        let from = CyclicInterval::closed(j, a_k + n - 1, n).members();
        if f.rank_region(after, k) < f.rank_region(from, k) {
            backward.insert(j);
        }
    }
    (forward, backward)
}

fn word_from_chain(chain: &[ValueSet]) -> Result<Permutation> {
    let mut word = Vec::with_capacity(chain.len() - 1);
    for pair in chain.windows(2) {
        if !pair[0].is_subset(pair[1]) || pair[1].len() != pair[0].len() + 1 {
            return Err(Error::Internal(format!(
                "rank-jump sets {} and {} are not nested",
                pair[0], pair[1]
            )));
        }
        word.push(
            pair[1]
                .difference(pair[0])
                .iter()
                .next()
                .expect("one new element"),
        );
    }
    Permutation::new(word)
}

/// The open stratum `T°_{x,y}` of `T_{u,v}` containing `F`.
pub fn stratum(u: &Permutation, v: &Permutation, f: &Flag) -> Result<StratumLabel> {
    let n = check_flag(u, v, f)?;
    if !member_t_plucker(u, v, f, false)? {
        return Err(Error::Precondition(format!("flag is not in T_{{{u},{v}}}")));
    }
    let a = find_flat(u, v)?;
    let mut lower = vec![ValueSet::EMPTY];
    let mut upper = vec![ValueSet::EMPTY];
    for k in 1..n {
        let (i_k, j_k) = jump_sets(f, k, a.at(k));
        lower.push(i_k);
        upper.push(j_k);
    }
    lower.push(ValueSet::full(n));
    upper.push(ValueSet::full(n));
    let x = word_from_chain(&lower)?;
    let y = word_from_chain(&upper)?;
    let nested = in_interval(u, v, &x)?
        && in_interval(u, v, &y)?
        && path_length(u, &x)? + path_length(&x, &y)? == path_length(u, &y)?;
    if !nested {
        return Err(Error::Internal(format!(
            "[{x}, {y}] is not a subinterval of [{u}, {v}]"
        )));
    }
    if !member_t_plucker(&x, &y, f, true)? {
        return Err(Error::Internal(format!(
            "flag is not in the open stratum of ({x}, {y})"
        )));
    }
    Ok(StratumLabel {
        x,
        y,
        u: u.clone(),
        v: v.clone(),
        shifts: a,
    })
}

/// A permutation `w` with `w[|I|] = I` and `P_w(F) != 0`, extending `I` by greedy chains.
pub fn complete_to_permutation(f: &Flag, set: ValueSet) -> Result<Permutation> {
    let n = f.n();
    if !set.is_subset(ValueSet::full(n)) || f.plucker(set).is_zero() {
        return Err(Error::Precondition(format!("P_{set} vanishes on the flag")));
    }
    let k = set.len();
    let mut chain = vec![ValueSet::EMPTY; n + 1];
    chain[k] = set;
    for j in (1..=k).rev() {
        let cur = chain[j];
        let i = cur
            .iter()
            .find(|&i| !f.plucker(cur.without(i)).is_zero())
            .ok_or_else(|| Error::Internal(format!("no nonzero minor below {cur}")))?;
        chain[j - 1] = cur.without(i);
    }
    for j in k..n {
        let cur = chain[j];
        let i = (1..=n)
            .filter(|&i| !cur.contains(i))
            .find(|&i| !f.plucker(cur.with(i)).is_zero())
            .ok_or_else(|| Error::Internal(format!("no nonzero minor above {cur}")))?;
        chain[j + 1] = cur.with(i);
    }
    word_from_chain(&chain)
}
