use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{parse_err, Error, Result};
use crate::perm::Permutation;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// `1` at `(w(i), i)`, zero elsewhere.
    pub fn permutation(w: &Permutation) -> Self {
        let n = w.n();
        let mut m = Self::zeros(n, n);
        for c in 0..n {
            m.set(w.at(c + 1) - 1, c, BigRational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigRational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Rows `rows` (0-based, in the given order) and the first `k` columns.
    pub fn submatrix(&self, rows: &[usize], k: usize) -> RationalMatrix {
        let mut data = Vec::with_capacity(rows.len() * k);
        for &r in rows {
            data.extend_from_slice(&self.row(r)[..k]);
        }
        RationalMatrix {
            rows: rows.len(),
            cols: k,
            data,
        }
    }

    /// Row-reduces a copy; returns the reduced matrix, the pivot columns and the sign of the
    /// row swaps used.
    fn echelon(&self) -> (RationalMatrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                negated = !negated;
            }
            let pivot = m.get(r, c).clone();
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) / &pivot;
                for j in c..m.cols {
                    let delta = &factor * m.get(r, j);
                    let cur = m.get(i, j) - delta;
                    m.set(i, j, cur);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, negated)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().1.len()
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(BigRational::one());
        }
        let (m, pivots, negated) = self.echelon();
        if pivots.len() < self.rows {
            return Ok(BigRational::zero());
        }
        let mut det = BigRational::one();
        for i in 0..self.rows {
            det *= m.get(i, i);
        }
        Ok(if negated { -det } else { det })
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (mut m, pivots, _) = self.echelon();
        // back-substitute to reduced row echelon form
        for (r, &c) in pivots.iter().enumerate().rev() {
            let pivot = m.get(r, c).clone();
            for j in c..m.cols {
                let x = m.get(r, j) / &pivot;
                m.set(r, j, x);
            }
            for i in 0..r {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let delta = &factor * m.get(r, j);
                    let cur = m.get(i, j) - delta;
                    m.set(i, j, cur);
                }
            }
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); m.cols];
                x[f] = BigRational::one();
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = -m.get(r, f).clone();
                }
                x
            })
            .collect()
    }

    /// Cyclic row rotation: new row 1 is old row `n`, new row `i` is old row `i - 1`.
    pub fn chi_rotate(&self) -> RationalMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            let src = (r + self.rows - 1) % self.rows;
            for c in 0..self.cols {
                out.set(r, c, self.get(src, c).clone());
            }
        }
        out
    }

    /// Text format: first line `n`, then `n` lines of `n` rationals (`p/q` or integers).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.rows);
        for r in 0..self.rows {
            let parts: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| parse_err("", "empty matrix file"))?;
        let n: usize = header
            .parse()
            .map_err(|_| parse_err(header, "first line must be the size n"))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    BigRational::from_str(tok).map_err(|_| parse_err(tok, "not a rational number"))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(parse_err(line, format!("expected {n} entries")));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::SizeMismatch(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Self::from_rows(rows)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let m = RationalMatrix::from_integers(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), rat(5));
        let swap = RationalMatrix::from_integers(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.determinant().unwrap(), rat(-1));
        let sing = RationalMatrix::from_integers(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.determinant().unwrap().is_zero());
        assert_eq!(sing.rank(), 1);
    }

    #[test]
    fn determinant_matches_leibniz() {
        let m = RationalMatrix::from_integers(&[
            vec![3, -1, 4, 1],
            vec![5, 9, -2, 6],
            vec![5, 3, 5, -8],
            vec![9, 7, 9, 3],
        ])
        .unwrap();
        let mut total = rat(0);
        for w in Permutation::all(4) {
            let sign = if w.length() % 2 == 0 { 1 } else { -1 };
            let mut prod = rat(sign);
            for c in 0..4 {
                prod *= m.get(w.at(c + 1) - 1, c);
            }
            total += prod;
        }
        assert_eq!(m.determinant().unwrap(), total);
    }

    #[test]
    fn nullspace_is_kernel() {
        let m =
            RationalMatrix::from_integers(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]])
                .unwrap();
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for x in &basis {
            for r in 0..m.rows() {
                let dot: BigRational = m.row(r).iter().zip(x).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rotation_and_text() {
        let id = RationalMatrix::identity(3);
        let rot = id.chi_rotate();
        assert_eq!(rot, RationalMatrix::permutation(&"231".parse().unwrap()));
        let mut back = rot.clone();
        back = back.chi_rotate().chi_rotate();
        assert_eq!(back, id);
        let m = RationalMatrix::parse_text("2\n1/2 -3\n0 7/4\n").unwrap();
        assert_eq!(m.get(0, 0), &(rat(1) / rat(2)));
        assert_eq!(RationalMatrix::parse_text(&m.to_text()).unwrap(), m);
        assert!(RationalMatrix::parse_text("2\n1 2\n").is_err());
        assert!(RationalMatrix::parse_text("2\n1 x\n3 4\n").is_err());
    }
}
