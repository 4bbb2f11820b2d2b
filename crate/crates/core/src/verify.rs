//! Invariant suites run by `qbg verify`. Each suite is exhaustive or seeded, and reports how
//! many instances it checked together with the first few failures.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{equations, equations_with_x, find_flat, is_flat, pairs};
use crate::error::{Error, Result};
use crate::geom::{
    member_t_grassmann, member_t_plucker, member_t_rank, random_flag, random_relations,
    sample_in_open_stratum, stratum, Flag,
};
use crate::latticepath::{all_shift_sequences, valid_shifts};
use crate::perm::{reduced_words_of_longest, reflection_ordering, CyclicInterval};
use crate::perm::{Permutation, Root};
use crate::qbg::QuantumBruhatGraph;
use crate::qbg::{bfp_greedy_path, edge_weight, formula_weight, path_length, path_weight};
use crate::tilted::{interval_graph_free, interval_members_criterion, tilted_leq, CriterionMode};

const KEEP_FAILURES: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Distance,
    SamePath,
    Bfp,
    Increasing,
    Rotation,
    Tilted,
    FlatCount,
    FixedPoints,
    Equivalence,
    Stratify,
    Plucker,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Distance,
        Suite::SamePath,
        Suite::Bfp,
        Suite::Increasing,
        Suite::Rotation,
        Suite::Tilted,
        Suite::FlatCount,
        Suite::FixedPoints,
        Suite::Equivalence,
        Suite::Stratify,
        Suite::Plucker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Distance => "distance",
            Suite::SamePath => "samepath",
            Suite::Bfp => "bfp",
            Suite::Increasing => "increasing",
            Suite::Rotation => "rotation",
            Suite::Tilted => "tilted",
            Suite::FlatCount => "flat-count",
            Suite::FixedPoints => "fixedpoints",
            Suite::Equivalence => "equivalence",
            Suite::Stratify => "stratify",
            Suite::Plucker => "plucker",
        }
    }

    // (unit, phrase on success, noun for failures)
    fn wording(self) -> (&'static str, &'static str, &'static str) {
        match self {
            Suite::Distance => ("pairs", "0 mismatches", "mismatches"),
            Suite::SamePath => ("pairs", "same-weight property holds", "violations"),
            Suite::Bfp => ("pairs", "greedy paths are shortest", "mismatches"),
            Suite::Increasing => (
                "(ordering, pair) checks",
                "unique increasing paths",
                "violations",
            ),
            Suite::Rotation => (
                "(w, t) checks",
                "edge set is rotation invariant",
                "violations",
            ),
            Suite::Tilted => ("triples", "equivalences hold", "disagreements"),
            Suite::FlatCount => ("pairs", "count law holds", "violations"),
            Suite::FixedPoints => ("triples", "fixed-point membership matches", "mismatches"),
            Suite::Equivalence => ("flag checks", "definitions agree", "disagreements"),
            Suite::Stratify => ("flag checks", "stratification round-trips", "failures"),
            Suite::Plucker => ("relations", "incidence relations hold", "failures"),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Precondition(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub seed: u64,
    /// Flags per pair (or per kind of flag) for the geometric suites.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 4,
            seed: 0,
            samples: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub n: usize,
    pub checked: usize,
    pub failures: usize,
    /// The first few failures, spelled out.
    pub examples: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// `"576 pairs, 0 mismatches"` and the like.
    pub fn summary(&self) -> String {
        let (unit, ok, noun) = self.suite.wording();
        if self.passed() {
            format!("{} {unit}, {ok}", self.checked)
        } else {
            format!("{} {unit}, {} {noun}", self.checked, self.failures)
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} n={}: {}",
            self.suite,
            self.n,
            self.summary()
        )?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

struct Tally {
    checked: usize,
    failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    // a failure inside an instance that was already counted
    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < KEEP_FAILURES {
            self.examples.push(what);
        }
    }

    fn report(self, suite: Suite, n: usize) -> Report {
        Report {
            suite,
            n,
            checked: self.checked,
            failures: self.failures,
            examples: self.examples,
        }
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let n = opts.n;
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let tally = match suite {
        Suite::Distance => distance(n)?,
        Suite::SamePath => same_path(n)?,
        Suite::Bfp => bfp(n)?,
        Suite::Increasing => increasing(n)?,
        Suite::Rotation => rotation(n),
        Suite::Tilted => tilted(n)?,
        Suite::FlatCount => flat_count(n)?,
        Suite::FixedPoints => fixed_points(n)?,
        Suite::Equivalence => equivalence(opts)?,
        Suite::Stratify => stratify(opts)?,
        Suite::Plucker => plucker(opts)?,
    };
    Ok(tally.report(suite, n))
}

fn distance(n: usize) -> Result<Tally> {
    let g = QuantumBruhatGraph::build(n)?;
    let mut t = Tally::new();
    for u in g.vertices() {
        for v in g.vertices() {
            let (len, weight) = g.oracle_distance(u, v)?;
            let formula = formula_weight(u, v)?;
            let ell = path_length(u, v)?;
            t.check(formula == weight && ell == len, || {
                format!("{u} -> {v}: formula {formula} / {ell}, oracle {weight} / {len}")
            });
        }
    }
    Ok(t)
}

fn same_path(n: usize) -> Result<Tally> {
    let g = QuantumBruhatGraph::build(n)?;
    let mut t = Tally::new();
    for u in g.vertices() {
        for v in g.vertices() {
            let d = formula_weight(u, v)?;
            let ell = g.distance(u, v)?;
            let mut ok = true;
            for p in g.shortest_paths(u, v)? {
                ok &= path_weight(&p, n) == d;
            }
            for (len, w) in g.walks_up_to(u, v, ell + 2)? {
                ok &= w.dominates(&d);
                if w == d {
                    ok &= len == ell;
                }
            }
            t.check(ok, || {
                format!("{u} -> {v}: some path breaks the weight {d}")
            });
        }
    }
    Ok(t)
}

fn bfp(n: usize) -> Result<Tally> {
    let g = QuantumBruhatGraph::build(n)?;
    let mut t = Tally::new();
    for u in g.vertices() {
        let from_u = g.distances_from(u)?;
        for v in g.vertices() {
            let path = bfp_greedy_path(u, v)?;
            let d = formula_weight(u, v)?;
            let labels: Vec<Root> = path.iter().map(|e| e.root).collect();
            let increasing = labels
                .windows(2)
                .all(|w| (w[0].i, w[0].j) < (w[1].i, w[1].j));
            let ok = path.len() == from_u[g.index(v)?]
                && path_weight(&path, n) == d
                && increasing
                && path.last().is_none_or(|e| &e.target == v);
            t.check(ok, || format!("{u} -> {v}: greedy path {labels:?}"));
        }
    }
    Ok(t)
}

fn increasing(n: usize) -> Result<Tally> {
    let g = QuantumBruhatGraph::build(n)?;
    let mut t = Tally::new();
    for word in reduced_words_of_longest(n) {
        let ordering = reflection_ordering(&word, n)?;
        for u in g.vertices() {
            let from_u = g.distances_from(u)?;
            for v in g.vertices() {
                let paths = g.increasing_paths(u, v, &ordering)?;
                let ok = paths.len() == 1
                    && paths[0].len() == from_u[g.index(v)?]
                    && path_weight(&paths[0], n) == formula_weight(u, v)?;
                t.check(ok, || {
                    format!(
                        "{u} -> {v}, word {word:?}: {} increasing paths",
                        paths.len()
                    )
                });
            }
        }
    }
    Ok(t)
}

fn rotation(n: usize) -> Tally {
    let mut t = Tally::new();
    for w in Permutation::all(n) {
        let tw = w.long_cycle_rotate();
        for r in Root::all(n) {
            let a = edge_weight(&w, r).is_some();
            let b = edge_weight(&tw, r).is_some();
            t.check(a == b, || {
                format!("{w} --{r}--> edge {a}, rotated {tw} edge {b}")
            });
        }
    }
    t
}

fn tilted(n: usize) -> Result<Tally> {
    let g = QuantumBruhatGraph::build(n)?;
    let mut t = Tally::new();
    for u in g.vertices() {
        for v in g.vertices() {
            for w in g.vertices() {
                let by_graph = tilted_leq(&g, u, w, v)?;
                let exists = interval_members_criterion(u, v, w, CriterionMode::ExistsShift)?;
                let all = interval_members_criterion(u, v, w, CriterionMode::AllShifts)?;
                t.check(by_graph == exists && exists == all, || {
                    format!("{w} in [{u}, {v}]: graph {by_graph}, some shift {exists}, all shifts {all}")
                });
            }
        }
    }
    Ok(t)
}

/// Coatoms `x -> v` of `[u, v]` that share every prefix set but one with `v`.
pub fn coatoms(u: &Permutation, v: &Permutation) -> Result<Vec<Permutation>> {
    let ell = path_length(u, v)?;
    let mut out = Vec::new();
    if ell == 0 {
        return Ok(out);
    }
    for r in Root::all(u.n()) {
        let x = v.apply_transposition(r);
        if edge_weight(&x, r).is_some() && path_length(u, &x)? + 1 == ell {
            out.push(x);
        }
    }
    Ok(out)
}

fn flat_count(n: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let all = Permutation::all(n);
    for u in &all {
        for v in &all {
            let a = find_flat(u, v)?;
            let ell = path_length(u, v)?;
            let want = pairs(n) - ell;
            let got = equations(u, v, &a)?.len();
            let mut ok = is_flat(u, v, &a) && got == want;
            let mut detail = format!("{u}, {v}, a = {a}: {got} equations, expected {want}");
            if n <= 4 {
                for x in coatoms(u, v)? {
                    let with_x = equations_with_x(u, v, &a, &x)?.len();
                    if with_x != want {
                        ok = false;
                        detail = format!(
                            "{u}, {v}, a = {a}, x = {x}: {with_x} equations, expected {want}"
                        );
                    }
                }
            }
            t.check(ok, || detail);
        }
    }
    Ok(t)
}

fn fixed_points(n: usize) -> Result<Tally> {
    let all = Permutation::all(n);
    let flags: Vec<Flag> = all.iter().map(Flag::fixed_point).collect();
    let mut t = Tally::new();
    for u in &all {
        for v in &all {
            let members = interval_graph_free(u, v)?;
            for (w, f) in all.iter().zip(&flags) {
                let closed = member_t_plucker(u, v, f, false)?;
                let open = member_t_plucker(u, v, f, true)?;
                let inside = members.contains(w);
                let point = u == w && v == w;
                t.check(closed == inside && open == point, || {
                    format!("e_{w} in T[{u}, {v}]: {closed} (open {open}), in interval {inside}")
                });
            }
        }
    }
    Ok(t)
}

/// Pairs for the sampled suites: everything when small, otherwise a seeded sample that always
/// includes the pair `4321, 3142` at `n = 4`.
pub fn test_pairs(n: usize, seed: u64, target: usize) -> Vec<(Permutation, Permutation)> {
    let all = Permutation::all(n);
    let mut every: Vec<(Permutation, Permutation)> = all
        .iter()
        .flat_map(|u| all.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    if every.len() <= target {
        return every;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    every.shuffle(&mut rng);
    let mut out = Vec::with_capacity(target);
    if n == 4 {
        out.push((
            "4321".parse().expect("valid"),
            "3142".parse().expect("valid"),
        ));
    }
    for pair in every {
        if out.len() == target {
            break;
        }
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    out
}

pub const EQUIVALENCE_PAIRS: usize = 50;
pub const STRATIFY_PAIRS: usize = 30;

fn equivalence(opts: &VerifyOptions) -> Result<Tally> {
    let n = opts.n;
    let mut t = Tally::new();
    let fixed: Vec<Flag> = Permutation::all(n).iter().map(Flag::fixed_point).collect();
    for (idx, (u, v)) in test_pairs(n, opts.seed, EQUIVALENCE_PAIRS)
        .into_iter()
        .enumerate()
    {
        let base = opts
            .seed
            .wrapping_mul(1_000_003)
            .wrapping_add(idx as u64 * 97);
        let mut flags: Vec<Flag> = Vec::new();
        for s in 0..opts.samples as u64 {
            flags.push(sample_in_open_stratum(&u, &v, base + s)?);
            flags.push(random_flag(n, base + 50 + s));
        }
        flags.extend(fixed.iter().cloned());
        let seqs = all_shift_sequences(&u, &v)?;
        for f in &flags {
            for open in [false, true] {
                let plucker = member_t_plucker(&u, &v, f, open)?;
                for a in &seqs {
                    let rank = member_t_rank(&u, &v, a, f, open)?;
                    let grass = member_t_grassmann(&u, &v, a, f, open)?;
                    t.check(rank == plucker && grass == plucker, || {
                        format!(
                            "({u}, {v}), a = {a}, open {open}: rank {rank}, grassmann {grass}, plucker {plucker}\n    {}",
                            f.matrix().to_text().replace('\n', " | ")
                        )
                    });
                }
            }
        }
        // direct sums along two valid shifts, on the in-stratum samples
        for f in flags.iter().step_by(2).take(opts.samples) {
            for k in 1..n {
                let shifts = valid_shifts(u.prefix_set(k), v.prefix_set(k), n)?;
                for &r in &shifts {
                    for &s in &shifts {
                        if r == s {
                            continue;
                        }
                        let left = CyclicInterval::left_closed(r, s, n).members();
                        let right = CyclicInterval::left_closed(s, r, n).members();
                        let total = f.rank_region(left, k) + f.rank_region(right, k);
                        t.check(total == k, || {
                            format!("({u}, {v}) k = {k}, shifts {r}, {s}: ranks add to {total}")
                        });
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Subintervals `[x, y]` of `[u, v]`: `u <= x <= y <= v` along a geodesic, that is
/// `x, y in [u, v]` with `l(u, x) + l(x, y) = l(u, y)`. Listed once per member set.
pub fn subintervals(
    u: &Permutation,
    v: &Permutation,
) -> Result<Vec<(Permutation, Permutation, BTreeSet<Permutation>)>> {
    let outer = interval_graph_free(u, v)?;
    let mut seen: HashSet<BTreeSet<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for (x, &rx) in &outer.members {
        for (y, &ry) in &outer.members {
            if ry < rx || rx + path_length(x, y)? != ry {
                continue;
            }
            let inner: BTreeSet<Permutation> =
                interval_graph_free(x, y)?.members.into_keys().collect();
            if seen.insert(inner.clone()) {
                out.push((x.clone(), y.clone(), inner));
            }
        }
    }
    Ok(out)
}

fn stratify(opts: &VerifyOptions) -> Result<Tally> {
    let n = opts.n;
    let mut t = Tally::new();
    let all = Permutation::all(n);
    for (idx, (u, v)) in test_pairs(n, opts.seed, STRATIFY_PAIRS)
        .into_iter()
        .enumerate()
    {
        let base = opts
            .seed
            .wrapping_mul(1_000_003)
            .wrapping_add(idx as u64 * 89);
        let a = find_flat(&u, &v)?;
        let eqs = equations(&u, &v, &a)?;
        let subs = subintervals(&u, &v)?;
        let own: BTreeSet<Permutation> = interval_graph_free(&u, &v)?.members.into_keys().collect();

        let mut flags: Vec<(Flag, bool)> = Vec::new();
        for s in 0..opts.samples as u64 {
            flags.push((sample_in_open_stratum(&u, &v, base + s)?, true));
            flags.push((random_flag(n, base + 50 + s), false));
        }
        for w in &all {
            flags.push((Flag::fixed_point(w), false));
        }

        for (f, inside) in &flags {
            let open_rank = member_t_rank(&u, &v, &a, f, true)?;
            let closed = member_t_plucker(&u, &v, f, false)?;
            let chart = !f.plucker_w(&u).is_zero() && !f.plucker_w(&v).is_zero();
            t.check(open_rank == (closed && chart), || {
                format!("({u}, {v}): open {open_rank}, closed {closed}, chart {chart}")
            });
            if chart {
                let vanish = eqs.all_hold(f);
                let open = member_t_plucker(&u, &v, f, true)?;
                t.check(vanish == open, || {
                    format!("({u}, {v}): chart equations vanish {vanish}, open {open}")
                });
            }
            if !*inside {
                continue;
            }
            let label = stratum(&u, &v, f)?;
            t.check(label.x == u && label.y == v, || {
                format!("({u}, {v}): sample located in ({}, {})", label.x, label.y)
            });
            t.check(eqs.all_hold(f), || {
                format!("({u}, {v}): sample breaks an equation")
            });
            let mut hits = Vec::new();
            for (x, y, set) in &subs {
                if f.plucker_w(x).is_zero() || f.plucker_w(y).is_zero() {
                    continue;
                }
                if member_t_plucker(x, y, f, true)? {
                    hits.push(set);
                }
            }
            t.check(hits.len() == 1 && hits[0] == &own, || {
                format!("({u}, {v}): open in {} subintervals", hits.len())
            });
        }

        // samples from smaller strata are located there (every stratum at n = 3, one at n >= 4)
        let chosen: Vec<&(Permutation, Permutation, BTreeSet<Permutation>)> = if n <= 3 {
            subs.iter().collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(base);
            subs.choose(&mut rng).into_iter().collect()
        };
        for (x, y, set) in chosen {
            let f = sample_in_open_stratum(x, y, base + 7)?;
            let label = stratum(&u, &v, &f)?;
            let found: BTreeSet<Permutation> = interval_graph_free(&label.x, &label.y)?
                .members
                .into_keys()
                .collect();
            t.check(&found == set, || {
                format!(
                    "({u}, {v}): sample of [{x}, {y}] located in [{}, {}]",
                    label.x, label.y
                )
            });
        }
    }
    Ok(t)
}

fn plucker(opts: &VerifyOptions) -> Result<Tally> {
    let n = opts.n;
    let mut t = Tally::new();
    let mut flags = Vec::new();
    for s in 0..opts.samples as u64 {
        flags.push(random_flag(n, opts.seed + s));
    }
    for (idx, (u, v)) in test_pairs(n, opts.seed, opts.samples)
        .into_iter()
        .enumerate()
    {
        flags.push(sample_in_open_stratum(&u, &v, opts.seed + idx as u64)?);
    }
    let all = Permutation::all(n);
    flags.extend(all.iter().take(opts.samples).map(Flag::fixed_point));
    let rotated: Vec<Flag> = flags.iter().map(Flag::chi_rotate).collect();
    flags.extend(rotated);
    // at least 100 relations of each shape per flag
    for (idx, f) in flags.iter().enumerate() {
        for rel in random_relations(n, 100, opts.seed.wrapping_add(idx as u64)) {
            let ok = rel.holds(f)?;
            t.check(ok, || {
                format!(
                    "{rel:?} fails on\n    {}",
                    f.matrix().to_text().replace('\n', " | ")
                )
            });
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: usize) -> VerifyOptions {
        VerifyOptions {
            n,
            seed: 1,
            samples: 2,
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let r = run(s, &opts(3)).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{r}");
        }
    }

    #[test]
    fn summaries() {
        let r = run(Suite::Distance, &opts(3)).unwrap();
        assert_eq!(r.summary(), "36 pairs, 0 mismatches");
        let r = run(Suite::Tilted, &opts(3)).unwrap();
        assert_eq!(r.summary(), "216 triples, equivalences hold");
        assert_eq!(
            r.to_string(),
            "PASS tilted n=3: 216 triples, equivalences hold"
        );
    }

    #[test]
    fn coatoms_of_example() {
        let (u, v) = ("263145".parse().unwrap(), "465123".parse().unwrap());
        let xs = coatoms(&u, &v).unwrap();
        assert!(xs.contains(&"265143".parse().unwrap()));
    }
}
