//! Finite-dimensional commutative local algebras given by structure constants.

mod base_change;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix, Subspace};
use crate::sparse::{Echelon, SparseVec};

pub use base_change::{free_rank_over_base, BaseChange};

/// Interchange format; `mult[i][j]` is the coordinate vector of `e_i e_j`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub schema: u32,
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: usize,
    pub mult: Vec<Vec<Vec<u32>>>,
    pub maxideal: Vec<usize>,
}

/// A commutative local `F_p`-algebra `A` with basis `{unit} ∪ maxideal`.
///
/// Construction validates commutativity, associativity, the unit axiom and
/// nilpotence of the maximal ideal.
pub struct LocalAlgebra {
    field: Fp,
    labels: Vec<String>,
    n: usize,
    mult: Vec<u32>,
    unit: usize,
    maxideal: Vec<usize>,
    left: Vec<Matrix>,
    left_sparse: Vec<Vec<SparseVec>>,
    powers: Vec<Subspace>,
    generators: Vec<Vec<u32>>,
    fingerprint: String,
}

impl fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalAlgebra(F_{}, dim {}, {:?})", self.field.characteristic(), self.n, self.labels)
    }
}

impl PartialEq for LocalAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl Eq for LocalAlgebra {}

impl LocalAlgebra {
    /// Validates and builds; `mult[i][j]` is the coordinate vector of `e_i e_j`.
    pub fn new(
        field: Fp,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<u32>>>,
        unit: usize,
        maxideal: Vec<usize>,
    ) -> Result<Arc<Self>> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidAlgebra(format!("structure tensor is not {n}x{n}x{n}")));
        }
        if unit >= n {
            return Err(Error::InvalidAlgebra("unit index out of range".into()));
        }
        let mut seen = vec![false; n];
        seen[unit] = true;
        for &i in &maxideal {
            if i >= n || seen[i] {
                return Err(Error::InvalidAlgebra("basis must be the unit plus distinct maximal-ideal indices".into()));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidAlgebra("basis must be the unit plus the maximal-ideal basis".into()));
        }
        let p = field.characteristic();
        let mut flat = Vec::with_capacity(n * n * n);
        for row in &mult {
            for v in row {
                flat.extend(v.iter().map(|&x| x % p));
            }
        }
        let mut maxideal = maxideal;
        maxideal.sort_unstable();
        let mut a = LocalAlgebra {
            field,
            labels,
            n,
            mult: flat,
            unit,
            maxideal,
            left: Vec::new(),
            left_sparse: Vec::new(),
            powers: Vec::new(),
            generators: Vec::new(),
            fingerprint: String::new(),
        };
        a.validate()?;
        a.left = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(field, n, n);
                for j in 0..n {
                    for l in 0..n {
                        m.set(l, j, a.coeff(i, j, l));
                    }
                }
                m
            })
            .collect();
        a.left_sparse = (0..n).map(|i| (0..n).map(|j| SparseVec::from_dense(a.product(i, j))).collect()).collect();
        a.powers = a.compute_powers()?;
        a.generators = a.compute_generators();
        a.fingerprint = a.compute_fingerprint();
        Ok(Arc::new(a))
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        let f = self.field;
        for i in 0..n {
            for j in 0..n {
                if self.product(i, j) != self.product(j, i) {
                    return Err(Error::InvalidAlgebra(format!("e{i}*e{j} != e{j}*e{i}")));
                }
            }
        }
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1 % f.characteristic();
            if self.product(self.unit, i) != e.as_slice() {
                return Err(Error::InvalidAlgebra(format!("unit does not fix e{i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j).to_vec();
                for l in 0..n {
                    let left = self.mul_basis_right(&ij, l);
                    let jl = self.product(j, l).to_vec();
                    let right = self.mul_basis_left(i, &jl);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("(e{i}e{j})e{l} != e{i}(e{j}e{l})")));
                    }
                }
            }
        }
        for i in 0..n {
            for &j in &self.maxideal {
                if self.product(i, j)[self.unit] != 0 {
                    return Err(Error::NotLocal(format!("e{i}*e{j} leaves the maximal ideal")));
                }
            }
        }
        Ok(())
    }

    fn mul_basis_right(&self, a: &[u32], l: usize) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.n];
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(self.product(k, l)) {
                    *o = f.mul_add(*o, c, x);
                }
            }
        }
        out
    }

    fn mul_basis_left(&self, i: usize, b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.n];
        for (k, &c) in b.iter().enumerate() {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(self.product(i, k)) {
                    *o = f.mul_add(*o, c, x);
                }
            }
        }
        out
    }

    fn compute_powers(&self) -> Result<Vec<Subspace>> {
        let f = self.field;
        let n = self.n;
        let unit_vec = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1 % f.characteristic();
            v
        };
        let m1 = Subspace::from_vectors(f, n, &self.maxideal.iter().map(|&i| unit_vec(i)).collect::<Vec<_>>());
        let mut powers = vec![m1];
        loop {
            let last = powers.last().unwrap();
            if last.is_zero() {
                return Ok(powers);
            }
            let mut next = Vec::new();
            for v in last.vectors() {
                for &g in &self.maxideal {
                    next.push(self.mul(&v, &unit_vec(g)));
                }
            }
            let next = Subspace::from_vectors(f, n, &next);
            if next.dim() == last.dim() {
                return Err(Error::NotLocal("the maximal ideal is not nilpotent".into()));
            }
            powers.push(next);
        }
    }

    fn compute_generators(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let n = self.n;
        let mut e = Echelon::new(f, n);
        if let Some(m2) = self.powers.get(1) {
            for v in m2.vectors() {
                e.insert(&SparseVec::from_dense(&v));
            }
        }
        let mut gens = Vec::new();
        for &i in &self.maxideal {
            if e.insert(&SparseVec::unit(i)) {
                let mut v = vec![0; n];
                v[i] = 1 % f.characteristic();
                gens.push(v);
            }
        }
        gens
    }

    fn compute_fingerprint(&self) -> String {
        let json = serde_json::to_string(&self.to_json()).expect("algebra JSON serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn maxideal_indices(&self) -> &[usize] {
        &self.maxideal
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Coefficient of `e_l` in `e_i e_j`.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize, l: usize) -> u32 {
        self.mult[(i * self.n + j) * self.n + l]
    }

    /// Coordinates of `e_i e_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.n + j) * self.n;
        &self.mult[s..s + self.n]
    }

    /// Sparse coordinates of `e_i e_j`.
    #[inline]
    pub fn product_sparse(&self, i: usize, j: usize) -> &SparseVec {
        &self.left_sparse[i][j]
    }

    pub fn one(&self) -> Vec<u32> {
        self.basis_vector(self.unit)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        v[i] = 1 % self.field.characteristic();
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = f.mul(x, y);
                for (o, &z) in out.iter_mut().zip(self.product(i, j)) {
                    if z != 0 {
                        *o = f.mul_add(*o, c, z);
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `e_i`.
    pub fn left_matrix(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of multiplication by an arbitrary element.
    pub fn left_matrix_of(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.n, self.n);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.left[i], c);
            }
        }
        m
    }

    pub fn is_in_maxideal(&self, a: &[u32]) -> bool {
        a[self.unit] == 0
    }

    /// Lifts of a basis of `m/m²`; they generate `m` as an ideal and `A` as an algebra.
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// `m^i` for `i ≥ 0` (with `m^0 = A`).
    pub fn maxideal_power(&self, i: usize) -> Subspace {
        if i == 0 {
            return Subspace::full(self.field, self.n);
        }
        self.powers.get(i - 1).cloned().unwrap_or_else(|| Subspace::zero(self.field, self.n))
    }

    pub fn maxideal(&self) -> Subspace {
        self.maxideal_power(1)
    }

    /// Coefficients `dim m^i/m^{i+1}`, `i = 0, 1, …` up to the last nonzero one.
    pub fn hilbert_series(&self) -> Vec<usize> {
        let mut h = vec![1];
        for w in self.powers.windows(2) {
            h.push(w[0].dim() - w[1].dim());
        }
        while h.len() > 1 && *h.last().unwrap() == 0 {
            h.pop();
        }
        h
    }

    /// `(0 : m)`.
    pub fn socle(&self) -> Subspace {
        let mut stacked = Matrix::zeros(self.field, 0, self.n);
        for g in &self.generators {
            stacked = stacked.vstack(&self.left_matrix_of(g));
        }
        stacked.kernel()
    }

    pub fn edim(&self) -> usize {
        self.generators.len()
    }

    /// Least `N` with `m^N = 0`.
    pub fn loewy_length(&self) -> usize {
        self.powers.len()
    }

    pub fn length(&self) -> usize {
        self.n
    }

    /// The smallest ideal containing the given elements.
    pub fn ideal_generated_by(&self, elements: &[Vec<u32>]) -> Subspace {
        let f = self.field;
        let mut e = Echelon::new(f, self.n);
        for a in elements {
            for b in 0..self.n {
                e.insert(&SparseVec::from_dense(&self.left_matrix(b).apply(a)));
            }
        }
        e.to_subspace()
    }

    /// `A / I` for an ideal `I ⊆ m`; the basis is the original basis elements
    /// outside the pivot columns of `I`.
    pub fn quotient_by_ideal(&self, ideal: &Subspace) -> Result<Arc<LocalAlgebra>> {
        if ideal.ambient() != self.n {
            return Err(Error::DimensionMismatch("ideal lives in a different ambient space".into()));
        }
        for v in ideal.vectors() {
            if !self.is_in_maxideal(&v) {
                return Err(Error::NotLocal("ideal is not contained in the maximal ideal".into()));
            }
            for b in 0..self.n {
                if !ideal.contains(&self.left_matrix(b).apply(&v)) {
                    return Err(Error::InvalidAlgebra("subspace is not an ideal".into()));
                }
            }
        }
        let keep = ideal.free_columns();
        let q = keep.len();
        let mut mult = vec![vec![vec![0; q]; q]; q];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                mult[a][b] = ideal.quotient_coords(self.product(i, j));
            }
        }
        let unit = keep.iter().position(|&i| i == self.unit).expect("unit survives");
        let maxideal = (0..q).filter(|&a| a != unit).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        LocalAlgebra::new(self.field, labels, mult, unit, maxideal)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.n;
        AlgebraJson {
            schema: 1,
            characteristic: self.field.characteristic(),
            dim: n,
            basis: self.labels.clone(),
            unit: self.unit,
            mult: (0..n).map(|i| (0..n).map(|j| self.product(i, j).to_vec()).collect()).collect(),
            maxideal: self.maxideal.clone(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Arc<LocalAlgebra>> {
        if j.schema != 1 {
            return Err(Error::InvalidAlgebra(format!("unsupported schema {}", j.schema)));
        }
        if j.basis.len() != j.dim {
            return Err(Error::InvalidAlgebra("basis label count differs from dim".into()));
        }
        let field = Fp::new(j.characteristic)?;
        LocalAlgebra::new(field, j.basis.clone(), j.mult.clone(), j.unit, j.maxideal.clone())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("algebra JSON serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Arc<LocalAlgebra>> {
        LocalAlgebra::from_json(&serde_json::from_str(s)?)
    }

    /// The field itself as a one-dimensional local algebra.
    pub fn residue_field(field: Fp) -> Arc<LocalAlgebra> {
        LocalAlgebra::new(field, vec!["1".into()], vec![vec![vec![1]]], 0, vec![]).expect("k is local")
    }
}
