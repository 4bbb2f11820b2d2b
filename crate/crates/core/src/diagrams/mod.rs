//! Flat shift sequences, tilted Rothe diagrams and their Plücker equation sets.

mod render;

pub use render::render_diagram;

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Flag;
use crate::latticepath::{shifted_gale_leq, valid_shifts, ShiftSequence};
use crate::perm::{check_same_n, shifted_less, CyclicInterval, Permutation};
use crate::qbg::path_length;
use crate::signed::SignedSubset;
use crate::tilted::in_interval;
use crate::valueset::ValueSet;

/// `u <=_a v` and `u[k-1] <=_{a_k} v[k-1]` for `k = 2..n-1`.
pub fn is_flat(u: &Permutation, v: &Permutation, a: &ShiftSequence) -> bool {
    let n = u.n();
    if v.n() != n || a.0.len() + 1 != n || !a.orders(u, v) {
        return false;
    }
    (2..n).all(|k| {
        shifted_gale_leq(u.prefix_set(k - 1), v.prefix_set(k - 1), a.at(k), n).unwrap_or(false)
    })
}

/// Smallest `a_k` valid for both `(u[k-1], v[k-1])` and `(u[k], v[k])`.
pub fn find_flat(u: &Permutation, v: &Permutation) -> Result<ShiftSequence> {
    let n = check_same_n(&[u, v])?;
    let mut entries = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let here = valid_shifts(u.prefix_set(k), v.prefix_set(k), n)?;
        let before = valid_shifts(u.prefix_set(k - 1), v.prefix_set(k - 1), n)?;
        let a_k = here
            .iter()
            .copied()
            .find(|r| before.contains(r))
            .ok_or_else(|| {
                Error::Internal(format!("no common shift for {u}, {v} at column {k}"))
            })?;
        entries.push(a_k);
    }
    Ok(ShiftSequence(entries))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DiagramKind {
    /// `D_a^down(u)`: `i <_{a_k} u_k`.
    Down,
    /// `D_a^up(v)`: `i >_{a_k} v_k`.
    Up,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TiltedDiagram {
    pub kind: DiagramKind,
    pub perm: Permutation,
    pub shifts: ShiftSequence,
    /// Cells `(i, k)`: row value `i`, column `k`.
    pub cells: BTreeSet<(usize, usize)>,
}

pub fn tilted_rothe(
    w: &Permutation,
    a: &ShiftSequence,
    kind: DiagramKind,
) -> Result<TiltedDiagram> {
    let n = w.n();
    if a.0.len() + 1 != n {
        return Err(Error::SizeMismatch(format!(
            "shift sequence {a} does not fit n = {n}"
        )));
    }
    let inv = w.inverse();
    let mut cells = BTreeSet::new();
    for k in 1..n {
        let a_k = a.at(k);
        for i in 1..=n {
            if inv.at(i) <= k {
                continue;
            }
            let hit = match kind {
                DiagramKind::Down => shifted_less(n, a_k, i, w.at(k)),
                DiagramKind::Up => shifted_less(n, a_k, w.at(k), i),
            };
            if hit {
                cells.insert((i, k));
            }
        }
    }
    Ok(TiltedDiagram {
        kind,
        perm: w.clone(),
        shifts: a.clone(),
        cells,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuadTerm {
    pub coeff: i64,
    pub left: ValueSet,
    pub right: ValueSet,
}

/// A Plücker equation in sorted-subset form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PluckerEquation {
    /// `P_set = 0`.
    Vanish { set: ValueSet },
    /// `sum coeff * P_left * P_right = 0`.
    Quadratic { terms: Vec<QuadTerm> },
}

impl PluckerEquation {
    /// `a * b - c * d = 0` for signed indices.
    pub fn binomial(a: SignedSubset, b: SignedSubset, c: SignedSubset, d: SignedSubset) -> Self {
        let mut terms = Vec::new();
        let first = (a.sign * b.sign) as i64;
        if first != 0 {
            terms.push(QuadTerm {
                coeff: first,
                left: a.set,
                right: b.set,
            });
        }
        let second = -((c.sign * d.sign) as i64);
        if second != 0 {
            terms.push(QuadTerm {
                coeff: second,
                left: c.set,
                right: d.set,
            });
        }
        PluckerEquation::Quadratic { terms }
    }

    pub fn evaluate(&self, flag: &Flag) -> BigRational {
        match self {
            PluckerEquation::Vanish { set } => flag.plucker(*set),
            PluckerEquation::Quadratic { terms } => {
                let mut total = BigRational::zero();
                for t in terms {
                    let prod = flag.plucker(t.left) * flag.plucker(t.right);
                    total += prod * BigRational::from_integer(t.coeff.into());
                }
                total
            }
        }
    }

    pub fn holds(&self, flag: &Flag) -> bool {
        self.evaluate(flag).is_zero()
    }
}

impl std::fmt::Display for PluckerEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PluckerEquation::Vanish { set } => write!(f, "P[{}] = 0", set.key()),
            PluckerEquation::Quadratic { terms } => {
                if terms.is_empty() {
                    return write!(f, "0 = 0");
                }
                for (idx, t) in terms.iter().enumerate() {
                    let sign = if t.coeff < 0 { "-" } else { "+" };
                    if idx == 0 {
                        if t.coeff < 0 {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {sign} ")?;
                    }
                    if t.coeff.abs() != 1 {
                        write!(f, "{}*", t.coeff.abs())?;
                    }
                    write!(f, "P[{}]*P[{}]", t.left.key(), t.right.key())?;
                }
                write!(f, " = 0")
            }
        }
    }
}

/// Which clause produced an equation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EquationSource {
    /// A cell of `D^down(u)`.
    Down,
    /// A cell of `D^up(v)`.
    Up,
    /// A cell of `D^up(v)` also in `D^up(x)`.
    Shared,
    /// A cell `(x_p, k)` with `p < k < q`.
    RowOfP,
    /// A cell `(i, q)` with `i` cyclically between `x_p` and `x_q`.
    ColumnQ,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LabeledEquation {
    pub source: EquationSource,
    pub cell: (usize, usize),
    pub equation: PluckerEquation,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EquationSet {
    pub u: Permutation,
    pub v: Permutation,
    pub shifts: ShiftSequence,
    pub x: Option<Permutation>,
    pub equations: Vec<LabeledEquation>,
}

impl EquationSet {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn all_hold(&self, flag: &Flag) -> bool {
        self.equations.iter().all(|e| e.equation.holds(flag))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn vanish(prefix: ValueSet, i: usize) -> PluckerEquation {
    PluckerEquation::Vanish {
        set: prefix.with(i),
    }
}

/// One vanishing coordinate per cell of `D^down(u)` and `D^up(v)`.
pub fn equations(u: &Permutation, v: &Permutation, a: &ShiftSequence) -> Result<EquationSet> {
    check_same_n(&[u, v])?;
    if a.0.len() + 1 != u.n() || !a.orders(u, v) {
        return Err(Error::Precondition(format!(
            "{u} is not <=_a {v} for a = {a}"
        )));
    }
    let mut eqs = Vec::new();
    for &(i, k) in &tilted_rothe(u, a, DiagramKind::Down)?.cells {
        eqs.push(LabeledEquation {
            source: EquationSource::Down,
            cell: (i, k),
            equation: vanish(u.prefix_set(k - 1), i),
        });
    }
    for &(i, k) in &tilted_rothe(v, a, DiagramKind::Up)?.cells {
        eqs.push(LabeledEquation {
            source: EquationSource::Up,
            cell: (i, k),
            equation: vanish(v.prefix_set(k - 1), i),
        });
    }
    Ok(EquationSet {
        u: u.clone(),
        v: v.clone(),
        shifts: a.clone(),
        x: None,
        equations: eqs,
    })
}

/// The equation set attached to a coatom `x = v t_pq` of `[u, v]`.
pub fn equations_with_x(
    u: &Permutation,
    v: &Permutation,
    a: &ShiftSequence,
    x: &Permutation,
) -> Result<EquationSet> {
    let n = check_same_n(&[u, v, x])?;
    if !is_flat(u, v, a) {
        return Err(Error::Precondition(format!(
            "a = {a} is not flat for ({u}, {v})"
        )));
    }
    if !in_interval(u, v, x)? {
        return Err(Error::Precondition(format!("{x} is not in [{u}, {v}]")));
    }
    if path_length(u, x)? + 1 != path_length(u, v)? {
        return Err(Error::Precondition(format!(
            "l({u}, {x}) is not l({u}, {v}) - 1"
        )));
    }
    let diff: Vec<usize> = (1..=n).filter(|&k| x.at(k) != v.at(k)).collect();
    let &[p, q] = diff.as_slice() else {
        return Err(Error::Precondition(format!(
            "{x} is not v t_pq for any p < q"
        )));
    };

    let mut eqs = Vec::new();
    for &(i, k) in &tilted_rothe(u, a, DiagramKind::Down)?.cells {
        eqs.push(LabeledEquation {
            source: EquationSource::Down,
            cell: (i, k),
            equation: vanish(u.prefix_set(k - 1), i),
        });
    }
    let up_x = tilted_rothe(x, a, DiagramKind::Up)?.cells;
    let (xp, xq) = (x.at(p), x.at(q));
    let between = CyclicInterval::open(xp, xq, n);
    for &(i, k) in &tilted_rothe(v, a, DiagramKind::Up)?.cells {
        let (source, equation) = if up_x.contains(&(i, k)) {
            (EquationSource::Shared, vanish(x.prefix_set(k - 1), i))
        } else if i == xp && p < k && k < q {
            (EquationSource::RowOfP, vanish(x.prefix_set(k - 1), xq))
        } else if k == q && between.contains(i) {
            let xq1 = SignedSubset::plain(x.prefix_set(q - 1));
            let xp1 = SignedSubset::plain(x.prefix_set(p - 1));
            (
                EquationSource::ColumnQ,
                PluckerEquation::binomial(xq1.plus(i), xp1.plus(xq), xp1.plus(i), xq1.plus(xq)),
            )
        } else {
            return Err(Error::Internal(format!(
                "cell ({i},{k}) of the up diagram of {v} fits no clause for x = {x}"
            )));
        };
        eqs.push(LabeledEquation {
            source,
            cell: (i, k),
            equation,
        });
    }
    Ok(EquationSet {
        u: u.clone(),
        v: v.clone(),
        shifts: a.clone(),
        x: Some(x.clone()),
        equations: eqs,
    })
}

/// `C(n, 2)`.
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn seq(xs: &[usize]) -> ShiftSequence {
        ShiftSequence(xs.to_vec())
    }

    fn cells(xs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        xs.iter().copied().collect()
    }

    #[test]
    fn diagrams_of_4321_3142() {
        let a = seq(&[4, 4, 2]);
        let down = tilted_rothe(&p("4321"), &a, DiagramKind::Down).unwrap();
        assert_eq!(down.cells, cells(&[(1, 2), (2, 2)]));
        let up = tilted_rothe(&p("3142"), &a, DiagramKind::Up).unwrap();
        assert_eq!(up.cells, cells(&[(2, 2)]));
        let eqs = equations(&p("4321"), &p("3142"), &a).unwrap();
        let sets: Vec<String> = eqs
            .equations
            .iter()
            .map(|e| e.equation.to_string())
            .collect();
        assert_eq!(sets, ["P[1,4] = 0", "P[2,4] = 0", "P[2,3] = 0"]);
    }

    #[test]
    fn identity_diagram_is_empty() {
        let d = tilted_rothe(&p("1234"), &ShiftSequence::ones(4), DiagramKind::Down).unwrap();
        assert!(d.cells.is_empty());
    }

    #[test]
    fn flat_examples() {
        assert!(is_flat(&p("263145"), &p("465123"), &seq(&[2, 2, 2, 6, 6])));
        assert_eq!(find_flat(&p("2413"), &p("2413")).unwrap(), seq(&[1, 1, 1]));
        assert_eq!(find_flat(&p("1234"), &p("4321")).unwrap(), seq(&[1, 1, 1]));
        let a = find_flat(&p("4321"), &p("3142")).unwrap();
        assert_eq!(a, seq(&[4, 4, 2]));
        assert!(is_flat(&p("4321"), &p("3142"), &a));
        // (4,2,2) fails the prefix condition in column 2: {4} is not <=_2 {3}.
        assert!(!is_flat(&p("4321"), &p("3142"), &seq(&[4, 2, 2])));
    }

    #[test]
    fn equation_counts() {
        let e = equations(&p("123"), &p("123"), &seq(&[1, 1])).unwrap();
        assert_eq!(e.len(), 3);
        let e = equations(&p("1234"), &p("4321"), &seq(&[1, 1, 1])).unwrap();
        assert!(e.is_empty());
        assert!(equations(&p("4321"), &p("3142"), &seq(&[1, 1, 1])).is_err());
    }

    #[test]
    fn coatom_equations_example() {
        let (u, v, x) = (p("263145"), p("465123"), p("265143"));
        let a = seq(&[2, 2, 2, 6, 6]);
        let up_v = tilted_rothe(&v, &a, DiagramKind::Up).unwrap().cells;
        assert_eq!(
            up_v,
            cells(&[
                (5, 1),
                (6, 1),
                (1, 1),
                (1, 2),
                (1, 3),
                (2, 4),
                (3, 4),
                (3, 5)
            ])
        );
        let up_x = tilted_rothe(&x, &a, DiagramKind::Up).unwrap().cells;
        assert_eq!(
            up_x,
            cells(&[
                (3, 1),
                (4, 1),
                (5, 1),
                (6, 1),
                (1, 1),
                (1, 2),
                (1, 3),
                (3, 4),
                (4, 4)
            ])
        );
        let eqs = equations_with_x(&u, &v, &a, &x).unwrap();
        let quads: Vec<_> = eqs
            .equations
            .iter()
            .filter(|e| e.source == EquationSource::ColumnQ)
            .collect();
        assert_eq!(quads.len(), 1);
        assert_eq!(quads[0].cell, (3, 5));
        let row: Vec<_> = eqs
            .equations
            .iter()
            .filter(|e| e.source == EquationSource::RowOfP)
            .collect();
        assert_eq!(row.len(), 1);
        assert_eq!(row[0].cell, (2, 4));
        assert_eq!(eqs.len(), pairs(6) - path_length(&u, &v).unwrap());
    }

    #[test]
    fn coatom_preconditions() {
        let (u, v) = (p("263145"), p("465123"));
        let a = seq(&[2, 2, 2, 6, 6]);
        // x = u is not a coatom of the interval
        assert!(matches!(
            equations_with_x(&u, &v, &a, &u),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            equations_with_x(&u, &v, &a, &p("123456")),
            Err(Error::Precondition(_))
        ));
        let (u, v) = (p("4321"), p("3142"));
        assert!(matches!(
            equations_with_x(&u, &v, &seq(&[4, 2, 2]), &p("4312")),
            Err(Error::Precondition(_))
        ));
    }
}
