//! Finite modules over a local algebra, given by action matrices.

mod constructions;
mod random;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::sparse::{Echelon, SparseVec};

pub use constructions::{
    biduality_map, coinduced, equivariant_maps, fiber_dual_comparison, frobenius_test, hom_module, is_free_rank_one,
    symmetric_square_map, tensor_module, HomModule, SymmetricSquare, TensorModule,
};
pub use random::{random_element, random_maxideal_element, random_module};

/// A module `M` with one `dim M × dim M` matrix per algebra basis element.
#[derive(Clone, Debug)]
pub struct AModule {
    algebra: Arc<LocalAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub schema: u32,
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<Vec<Vec<u32>>>,
}

impl AModule {
    /// Validates the unit and the relation `ρ(e_i)ρ(e_j) = Σ_l c_ijl ρ(e_l)`.
    pub fn new(algebra: Arc<LocalAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let n = algebra.dim();
        if action.len() != n || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule(format!("need {n} action matrices of size {dim}x{dim}")));
        }
        let f = algebra.field();
        if action[algebra.unit_index()] != Matrix::identity(f, dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in i..n {
                let lhs = action[i].mul(&action[j]);
                let mut rhs = Matrix::zeros(f, dim, dim);
                for (l, &c) in algebra.product(i, j).iter().enumerate() {
                    if c != 0 {
                        rhs.add_scaled(&action[l], c);
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("action is not compatible with e{i}*e{j}")));
                }
                if i != j && action[j].mul(&action[i]) != rhs {
                    return Err(Error::InvalidModule(format!("actions of e{i} and e{j} do not commute")));
                }
            }
        }
        Ok(AModule { algebra, dim, action })
    }

    pub(crate) fn new_unchecked(algebra: Arc<LocalAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        AModule { algebra, dim, action }
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_of(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.algebra.field(), self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.action[i], c);
            }
        }
        m
    }

    /// Actions of the algebra generators (lifts of a basis of `m/m²`).
    pub fn generator_actions(&self) -> Vec<Matrix> {
        self.algebra.generators().iter().map(|g| self.action_of(g)).collect()
    }

    pub fn same_algebra(&self, other: &AModule) -> Result<()> {
        if self.algebra.fingerprint() != other.algebra.fingerprint() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn free(algebra: &Arc<LocalAlgebra>, rank: usize) -> AModule {
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|i| {
                let blocks: Vec<&Matrix> = (0..rank).map(|_| algebra.left_matrix(i)).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        AModule::new_unchecked(algebra.clone(), rank * algebra.dim(), action)
    }

    pub fn regular(algebra: &Arc<LocalAlgebra>) -> AModule {
        AModule::free(algebra, 1)
    }

    pub fn residue_field(algebra: &Arc<LocalAlgebra>) -> AModule {
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|i| {
                let v = if i == algebra.unit_index() { 1 } else { 0 };
                Matrix::from_vec(f, 1, 1, vec![v]).unwrap()
            })
            .collect();
        AModule::new_unchecked(algebra.clone(), 1, action)
    }

    pub fn zero(algebra: &Arc<LocalAlgebra>) -> AModule {
        let f = algebra.field();
        AModule::new_unchecked(algebra.clone(), 0, vec![Matrix::zeros(f, 0, 0); algebra.dim()])
    }

    /// `D = Hom_k(A, k)` with `(a·φ)(b) = φ(ab)`, in the dual basis.
    pub fn dualizing(algebra: &Arc<LocalAlgebra>) -> AModule {
        let action = (0..algebra.dim()).map(|i| algebra.left_matrix(i).transpose()).collect();
        AModule::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    /// `Hom_k(M, k)` with the transposed action.
    pub fn k_dual(&self) -> AModule {
        let action = self.action.iter().map(|m| m.transpose()).collect();
        AModule::new_unchecked(self.algebra.clone(), self.dim, action)
    }

    pub fn direct_sum(parts: &[&AModule]) -> Result<AModule> {
        let first = parts.first().ok_or_else(|| Error::InvalidModule("empty direct sum".into()))?;
        for p in parts {
            first.same_algebra(p)?;
        }
        let a = first.algebra.clone();
        let f = a.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..a.dim())
            .map(|i| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.action[i]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Ok(AModule::new_unchecked(a, dim, action))
    }

    /// `m·M` as a subspace.
    pub fn maxideal_times(&self) -> Subspace {
        let f = self.algebra.field();
        let mut e = Echelon::new(f, self.dim);
        for g in self.generator_actions() {
            for c in 0..self.dim {
                e.insert(&SparseVec::from_dense(&g.column(c)));
            }
        }
        e.to_subspace()
    }

    /// `dim M/mM`, the minimal number of generators.
    pub fn num_generators(&self) -> usize {
        self.dim - self.maxideal_times().dim()
    }

    /// Elements whose classes form a basis of `M/mM`.
    pub fn minimal_generators(&self) -> Vec<Vec<u32>> {
        let mm = self.maxideal_times();
        let p = self.algebra.field().characteristic();
        mm.free_columns()
            .into_iter()
            .map(|c| {
                let mut v = vec![0; self.dim];
                v[c] = 1 % p;
                v
            })
            .collect()
    }

    /// The submodule generated by the given elements.
    pub fn submodule_generated_by(&self, elements: &[Vec<u32>]) -> Subspace {
        let f = self.algebra.field();
        let mut e = Echelon::new(f, self.dim);
        for v in elements {
            for m in &self.action {
                e.insert(&SparseVec::from_dense(&m.apply(v)));
            }
        }
        e.to_subspace()
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.ambient() == self.dim && s.vectors().iter().all(|v| self.action.iter().all(|m| s.contains(&m.apply(v))))
    }

    /// The submodule on its canonical basis; fails unless `s` is invariant.
    pub fn submodule(&self, s: &Subspace) -> Result<AModule> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let f = self.algebra.field();
        let basis = s.vectors();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<u32>> = basis.iter().map(|v| s.coords_unchecked(&m.apply(v))).collect();
                Matrix::from_columns(f, s.dim(), &cols)
            })
            .collect();
        Ok(AModule::new_unchecked(self.algebra.clone(), s.dim(), action))
    }

    /// `M/S` on the basis of standard vectors outside the pivots of `S`.
    pub fn quotient(&self, s: &Subspace) -> Result<AModule> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let f = self.algebra.field();
        let free = s.free_columns();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<u32>> = free.iter().map(|&c| s.quotient_coords(&m.column(c))).collect();
                Matrix::from_columns(f, free.len(), &cols)
            })
            .collect();
        Ok(AModule::new_unchecked(self.algebra.clone(), free.len(), action))
    }

    /// `(0 : x)_M`.
    pub fn colon(&self, x: &[u32]) -> Subspace {
        self.action_of(x).kernel()
    }

    /// `x M`.
    pub fn image_of(&self, x: &[u32]) -> Subspace {
        self.action_of(x).column_space()
    }

    /// `Hom_A(k, M)`, the socle of `M`.
    pub fn socle(&self) -> Subspace {
        let f = self.algebra.field();
        let mut stacked = Matrix::zeros(f, 0, self.dim);
        for g in self.generator_actions() {
            stacked = stacked.vstack(&g);
        }
        stacked.kernel()
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            schema: 1,
            algebra: self.algebra.fingerprint().to_string(),
            dim: self.dim,
            action: self.action.iter().map(|m| m.row_vectors()).collect(),
        }
    }

    pub fn from_json(algebra: &Arc<LocalAlgebra>, j: &ModuleJson) -> Result<AModule> {
        if j.schema != 1 {
            return Err(Error::InvalidModule(format!("unsupported schema {}", j.schema)));
        }
        if j.algebra != algebra.fingerprint() {
            return Err(Error::AlgebraMismatch);
        }
        let f = algebra.field();
        let action = j
            .action
            .iter()
            .map(|rows| {
                if rows.len() != j.dim || rows.iter().any(|r| r.len() != j.dim) {
                    return Err(Error::InvalidModule("action matrix has the wrong shape".into()));
                }
                Ok(Matrix::from_row_vectors(f, j.dim, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        AModule::new(algebra.clone(), j.dim, action)
    }
}

/// An `A`-linear map, stored as a `dim target × dim source` matrix.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: AModule,
    pub target: AModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: AModule, target: AModule, matrix: Matrix) -> Result<Self> {
        source.same_algebra(&target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::InvalidMap("matrix shape does not match the modules".into()));
        }
        for (s, t) in source.generator_actions().iter().zip(target.generator_actions()) {
            if t.mul(&matrix) != matrix.mul(s) {
                return Err(Error::InvalidMap("map does not commute with the action".into()));
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.column_space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use crate::poly::quotient_algebra_from_text;

    fn alg(p: u32, ideal: &str) -> Arc<LocalAlgebra> {
        quotient_algebra_from_text(Fp::new(p).unwrap(), ideal, None).unwrap()
    }

    #[test]
    fn dualizing_examples() {
        let k = LocalAlgebra::residue_field(Fp::new(2).unwrap());
        assert_eq!(AModule::dualizing(&k).dim(), 1);
        let a = alg(3, "x^2, x*y, y^2");
        let d = AModule::dualizing(&a);
        assert!(AModule::new(a.clone(), d.dim(), d.actions().to_vec()).is_ok());
        assert_eq!(d.dim(), 3);
        assert_eq!(d.num_generators(), 2);
        assert_eq!(d.socle().dim(), 1);
    }

    #[test]
    fn colon_examples() {
        let a = alg(5, "x^2, x*y, y^2");
        let m = AModule::regular(&a);
        let x = a.basis_vector(a.labels().iter().position(|l| l == "x").unwrap());
        let c = m.colon(&x);
        assert_eq!(c.dim(), 2);
        assert_eq!(m.dim() - m.image_of(&x).dim(), 2);
        assert_eq!(m.colon(&a.one()).dim(), 0);
        assert_eq!(m.colon(&[0; 3]).dim(), 3);
    }

    #[test]
    fn submodules_and_quotients() {
        let a = alg(2, "x^2, y^2");
        let f2 = AModule::free(&a, 2);
        let gen = {
            let mut v = vec![0; 8];
            v[1] = 1;
            v[6] = 1;
            v
        };
        let s = f2.submodule_generated_by(&[gen]);
        let sub = f2.submodule(&s).unwrap();
        let q = f2.quotient(&s).unwrap();
        assert_eq!(sub.dim() + q.dim(), 8);
        assert!(AModule::new(a.clone(), q.dim(), q.actions().to_vec()).is_ok());
        assert!(AModule::new(a.clone(), sub.dim(), sub.actions().to_vec()).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let a = alg(3, "x^3, y^2");
        let d = AModule::dualizing(&a);
        let back = AModule::from_json(&a, &d.to_json()).unwrap();
        assert_eq!(back.actions(), d.actions());
    }
}
