use std::sync::Arc;

use super::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::sparse::{Echelon, SparseVec};

/// A unital algebra map `φ: P → Q` between local algebras.
#[derive(Clone, Debug)]
pub struct BaseChange {
    p: Arc<LocalAlgebra>,
    q: Arc<LocalAlgebra>,
    /// `dim Q × dim P`; column `i` is `φ(e_i)`.
    structure: Matrix,
}

impl BaseChange {
    pub fn new(p: Arc<LocalAlgebra>, q: Arc<LocalAlgebra>, structure: Matrix) -> Result<Self> {
        if p.field() != q.field() {
            return Err(Error::AlgebraMismatch);
        }
        if structure.rows() != q.dim() || structure.cols() != p.dim() {
            return Err(Error::DimensionMismatch("structure map has the wrong shape".into()));
        }
        if structure.column(p.unit_index()) != q.one() {
            return Err(Error::InvalidMap("structure map is not unital".into()));
        }
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                let lhs = structure.apply(p.product(i, j));
                let rhs = q.mul(&structure.column(i), &structure.column(j));
                if lhs != rhs {
                    return Err(Error::InvalidMap(format!("structure map is not multiplicative on e{i}, e{j}")));
                }
            }
        }
        Ok(BaseChange { p, q, structure })
    }

    /// `P = k → Q`.
    pub fn over_field(q: Arc<LocalAlgebra>) -> Self {
        let k = LocalAlgebra::residue_field(q.field());
        let structure = Matrix::from_columns(q.field(), q.dim(), &[q.one()]);
        BaseChange { p: k, q, structure }
    }

    /// `id: Q → Q`.
    pub fn identity(q: Arc<LocalAlgebra>) -> Self {
        let structure = Matrix::identity(q.field(), q.dim());
        BaseChange { p: q.clone(), q, structure }
    }

    pub fn base(&self) -> &Arc<LocalAlgebra> {
        &self.p
    }

    pub fn target(&self) -> &Arc<LocalAlgebra> {
        &self.q
    }

    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    /// `φ(a)` for `a ∈ P`.
    pub fn image(&self, a: &[u32]) -> Vec<u32> {
        self.structure.apply(a)
    }

    /// Matrix of the action of `a ∈ P` on `Q`.
    pub fn base_action(&self, a: &[u32]) -> Matrix {
        self.q.left_matrix_of(&self.image(a))
    }

    /// The ideal `φ(m_P) Q`.
    pub fn extended_maxideal(&self) -> Subspace {
        let imgs: Vec<Vec<u32>> = self.p.generators().iter().map(|g| self.image(g)).collect();
        self.q.ideal_generated_by(&imgs)
    }

    /// The closed fiber `Q / φ(m_P) Q`.
    pub fn fiber(&self) -> Result<Arc<LocalAlgebra>> {
        self.q.quotient_by_ideal(&self.extended_maxideal())
    }

    /// Lifts to `Q` of a basis of `Q / φ(m_P) Q`.
    pub fn fiber_basis_lifts(&self) -> Vec<Vec<u32>> {
        self.extended_maxideal().free_columns().into_iter().map(|c| self.q.basis_vector(c)).collect()
    }
}

/// The rank `r` with `Q ≅ P^r`, or `NotFree`.
///
/// Lifts a basis of the fiber (Nakayama) and checks that `P^r → Q` is bijective.
pub fn free_rank_over_base(b: &BaseChange) -> Result<usize> {
    let lifts = b.fiber_basis_lifts();
    let r = lifts.len();
    let (dp, dq) = (b.p.dim(), b.q.dim());
    if r * dp != dq {
        return Err(Error::NotFree(format!("dim Q = {dq} is not {r} x dim P = {}", r * dp)));
    }
    let f = b.q.field();
    let mut e = Echelon::new(f, dq);
    for q in &lifts {
        for i in 0..dp {
            let v = b.q.mul(&b.structure.column(i), q);
            if !e.insert(&SparseVec::from_dense(&v)) {
                return Err(Error::NotFree("lifted fiber basis is not P-independent".into()));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use crate::poly::{presentation_from_text, quotient_algebra_from_text};

    pub(crate) fn frobenius_example() -> BaseChange {
        let f = Fp::new(2).unwrap();
        let vars = vec!["e".to_string()];
        let p = presentation_from_text(f, "e^2", Some(&vars)).unwrap();
        let qvars = vec!["e".to_string(), "x".to_string()];
        let q = presentation_from_text(f, "e^2, x^2 - e", Some(&qvars)).unwrap();
        let e = q.variable("e").unwrap();
        let cols: Vec<Vec<u32>> = p.monomials.iter().map(|m| q.element(&e.pow(m.0[0]))).collect();
        let s = Matrix::from_columns(f, q.algebra.dim(), &cols);
        BaseChange::new(p.algebra.clone(), q.algebra.clone(), s).unwrap()
    }

    #[test]
    fn ranks() {
        let f = Fp::new(3).unwrap();
        let q = quotient_algebra_from_text(f, "x^2, y^2", None).unwrap();
        assert_eq!(free_rank_over_base(&BaseChange::over_field(q)).unwrap(), 4);
        let b = frobenius_example();
        assert_eq!(b.target().dim(), 4);
        assert_eq!(free_rank_over_base(&b).unwrap(), 2);
        assert_eq!(b.fiber().unwrap().hilbert_series(), vec![1, 1]);
    }

    #[test]
    fn not_free() {
        let f = Fp::new(2).unwrap();
        let p = quotient_algebra_from_text(f, "e^2", None).unwrap();
        let k = LocalAlgebra::residue_field(f);
        let s = Matrix::from_rows(f, &[vec![1, 0]]).unwrap();
        let b = BaseChange::new(p, k, s).unwrap();
        assert!(matches!(free_rank_over_base(&b), Err(Error::NotFree(_))));
    }
}
