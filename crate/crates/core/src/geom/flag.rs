use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::signed::SignedSubset;
use crate::valueset::ValueSet;

/// Largest `n` for which `plucker_table` materializes all `2^n` coordinates.
pub const MAX_TABLE_N: usize = 7;

/// A complete flag given by an invertible matrix; `F_k` is the span of the first `k` columns.
pub struct Flag {
    matrix: RationalMatrix,
    cache: RwLock<HashMap<ValueSet, BigRational>>,
}

impl Clone for Flag {
    fn clone(&self) -> Self {
        Flag {
            matrix: self.matrix.clone(),
            cache: RwLock::new(self.cache.read().expect("plucker cache poisoned").clone()),
        }
    }
}

impl std::fmt::Debug for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Flag")
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl Flag {
    pub fn from_matrix(matrix: RationalMatrix) -> Result<Flag> {
        if matrix.rows() != matrix.cols() || matrix.rows() == 0 {
            return Err(Error::SizeMismatch(format!(
                "flag needs a nonempty square matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Flag {
            matrix,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// The torus-fixed flag `e_w`.
    pub fn fixed_point(w: &Permutation) -> Flag {
        Flag::from_matrix(RationalMatrix::permutation(w))
            .expect("permutation matrices are invertible")
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// `P_I`: minor on rows `I` (increasing) and the first `|I|` columns; `P_empty = 1`.
    pub fn plucker(&self, set: ValueSet) -> BigRational {
        if set.is_empty() {
            return BigRational::one();
        }
        if let Some(x) = self.cache.read().expect("plucker cache poisoned").get(&set) {
            return x.clone();
        }
        let rows: Vec<usize> = set.iter().map(|i| i - 1).collect();
        let value = self
            .matrix
            .submatrix(&rows, rows.len())
            .determinant()
            .expect("square minor");
        self.cache
            .write()
            .expect("plucker cache poisoned")
            .insert(set, value.clone());
        value
    }

    /// Value of a signed index `sign * P_set`.
    pub fn signed(&self, s: SignedSubset) -> BigRational {
        match s.sign {
            0 => BigRational::zero(),
            x if x > 0 => self.plucker(s.set),
            _ => -self.plucker(s.set),
        }
    }

    /// `P_w = prod_{k=1}^{n-1} P_{w[k]}`.
    pub fn plucker_w(&self, w: &Permutation) -> BigRational {
        let mut prod = BigRational::one();
        for k in 1..self.n() {
            let p = self.plucker(w.prefix_set(k));
            if p.is_zero() {
                return p;
            }
            prod *= p;
        }
        prod
    }

    /// `r_{S,k}`: rank of rows `S`, first `k` columns.
    pub fn rank_region(&self, rows: ValueSet, k: usize) -> usize {
        let idx: Vec<usize> = rows.iter().map(|i| i - 1).collect();
        self.matrix.submatrix(&idx, k).rank()
    }

    /// Every `P_I`, keyed by sorted index string (`""` for the empty set).
    pub fn plucker_table(&self) -> Result<BTreeMap<String, BigRational>> {
        let n = self.n();
        if n > MAX_TABLE_N {
            return Err(Error::ResourceLimit(format!(
                "full Plücker table supports n <= {MAX_TABLE_N}"
            )));
        }
        let mut out = BTreeMap::new();
        for bits in 0..(1u64 << n) {
            let s = ValueSet::from_bits(bits);
            out.insert(s.key(), self.plucker(s));
        }
        Ok(out)
    }

    pub fn plucker_json(&self) -> Result<String> {
        let table: BTreeMap<String, String> = self
            .plucker_table()?
            .into_iter()
            .map(|(k, v)| (k, v.to_string()))
            .collect();
        Ok(serde_json::to_string_pretty(&table)?)
    }

    pub fn chi_rotate(&self) -> Flag {
        Flag::from_matrix(self.matrix.chi_rotate()).expect("row rotation keeps invertibility")
    }
}

/// `chi(K) = {k + 1 mod n}`.
pub fn chi_set(set: ValueSet, n: usize) -> ValueSet {
    set.iter().map(|i| i % n + 1).collect()
}
