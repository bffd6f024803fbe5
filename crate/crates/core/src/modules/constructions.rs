use super::{AModule, ModuleMap};
use crate::algebra::BaseChange;
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix, Subspace};
use crate::sparse::{sparse_kernel, Echelon, SparseVec};

/// Matrices `f` (`rows × cols`) with `target[g] f = f source[g]` for every `g`,
/// as a subspace of row-major vectorizations.
pub fn equivariant_maps(field: Fp, target: &[Matrix], source: &[Matrix], rows: usize, cols: usize) -> Subspace {
    assert_eq!(target.len(), source.len());
    let eq_per = rows * cols;
    if target.is_empty() {
        return Subspace::full(field, eq_per);
    }
    let mut columns: Vec<Vec<(u32, u32)>> = vec![Vec::new(); eq_per];
    for (g, (t, s)) in target.iter().zip(source).enumerate() {
        let base = (g * eq_per) as u32;
        // (t f)[r][c] = Σ_s t[r][s] f[s][c]
        for si in 0..rows {
            for r in 0..rows {
                let x = t.get(r, si);
                if x != 0 {
                    for c in 0..cols {
                        columns[si * cols + c].push((base + (r * cols + c) as u32, x));
                    }
                }
            }
        }
        // -(f s)[r][c] = -Σ_k f[r][k] s[k][c]
        for k in 0..cols {
            for c in 0..cols {
                let x = s.get(k, c);
                if x != 0 {
                    let nx = field.neg(x);
                    for r in 0..rows {
                        columns[r * cols + k].push((base + (r * cols + c) as u32, nx));
                    }
                }
            }
        }
    }
    let cols_sparse: Vec<SparseVec> = columns.into_iter().map(|c| SparseVec::from_pairs(field, c)).collect();
    let kernel = sparse_kernel(field, target.len() * eq_per, &cols_sparse);
    let dense: Vec<Vec<u32>> = kernel.iter().map(|v| v.to_dense(eq_per)).collect();
    Subspace::from_vectors(field, eq_per, &dense)
}

/// `Hom_A(M, N)` with `(a·f)(x) = a·f(x)`, remembering the matrix of each basis element.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: AModule,
    pub space: Subspace,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl HomModule {
    /// The map with the given coordinates.
    pub fn matrix(&self, coords: &[u32]) -> Matrix {
        let v = self.space.combine(coords);
        Matrix::from_vec(self.space.field(), self.target_dim, self.source_dim, v).unwrap()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        (0..self.space.dim())
            .map(|k| {
                let mut c = vec![0; self.space.dim()];
                c[k] = 1;
                self.matrix(&c)
            })
            .collect()
    }

    /// Coordinates of an equivariant matrix, `None` if it is not one.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<u32>> {
        self.space.coords(f.data())
    }
}

pub fn hom_module(m: &AModule, n: &AModule) -> Result<HomModule> {
    m.same_algebra(n)?;
    let a = m.algebra().clone();
    let fld = a.field();
    let space = equivariant_maps(fld, &n.generator_actions(), &m.generator_actions(), n.dim(), m.dim());
    let h = HomModule { module: AModule::zero(&a), space, source_dim: m.dim(), target_dim: n.dim() };
    let basis = h.basis_matrices();
    let action = (0..a.dim())
        .map(|i| {
            let cols: Vec<Vec<u32>> =
                basis.iter().map(|b| h.space.coords_unchecked(n.action(i).mul(b).data())).collect();
            Matrix::from_columns(fld, h.space.dim(), &cols)
        })
        .collect();
    let module = AModule::new_unchecked(a, h.space.dim(), action);
    Ok(HomModule { module, ..h })
}

/// `M ⊗_A N` as the quotient of `M ⊗_k N` by the balancing relations.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: AModule,
    relations: Echelon,
    free_index: Vec<u32>,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl TensorModule {
    /// Class of a vector of `M ⊗_k N` (index `i·dim N + j` for `e_i ⊗ e_j`).
    pub fn class_of(&mut self, v: &SparseVec) -> Vec<u32> {
        let c = self.relations.quotient_coords(v, &self.free_index);
        c.to_dense(self.module.dim())
    }

    /// Class of `x ⊗ y`.
    pub fn class_of_pair(&mut self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.module.algebra().field();
        let mut pairs = Vec::new();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    pairs.push(((i * self.right_dim + j) as u32, f.mul(a, b)));
                }
            }
        }
        self.class_of(&SparseVec::from_pairs(f, pairs))
    }

    /// Index in `M ⊗_k N` of the representative of each basis class.
    pub fn representatives(&self) -> Vec<usize> {
        self.relations.free_columns()
    }
}

pub fn tensor_module(m: &AModule, n: &AModule) -> Result<TensorModule> {
    m.same_algebra(n)?;
    let a = m.algebra().clone();
    let f = a.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut rel = Echelon::new(f, dm * dn);
    for (gm, gn) in m.generator_actions().iter().zip(n.generator_actions()) {
        for i in 0..dm {
            for j in 0..dn {
                // (g e_i) ⊗ e_j − e_i ⊗ (g e_j)
                let mut pairs = Vec::new();
                for r in 0..dm {
                    let x = gm.get(r, i);
                    if x != 0 {
                        pairs.push(((r * dn + j) as u32, x));
                    }
                }
                for s in 0..dn {
                    let x = gn.get(s, j);
                    if x != 0 {
                        pairs.push(((i * dn + s) as u32, f.neg(x)));
                    }
                }
                rel.insert(&SparseVec::from_pairs(f, pairs));
            }
        }
    }
    let free_index = rel.free_index();
    let reps = rel.free_columns();
    let q = reps.len();
    let action = (0..a.dim())
        .map(|b| {
            let act = m.action(b);
            let cols: Vec<Vec<u32>> = reps
                .iter()
                .map(|&c| {
                    let (i, j) = (c / dn, c % dn);
                    let pairs: Vec<(u32, u32)> =
                        (0..dm).filter(|&r| act.get(r, i) != 0).map(|r| ((r * dn + j) as u32, act.get(r, i))).collect();
                    rel.quotient_coords(&SparseVec::from_pairs(f, pairs), &free_index).to_dense(q)
                })
                .collect();
            Matrix::from_columns(f, q, &cols)
        })
        .collect();
    let module = AModule::new_unchecked(a, q, action);
    Ok(TensorModule { module, relations: rel, free_index, left_dim: dm, right_dim: dn })
}

/// The canonical surjection `N ⊗_A N → S²(N)`.
#[derive(Clone, Debug)]
pub struct SymmetricSquare {
    pub map: ModuleMap,
}

impl SymmetricSquare {
    pub fn kernel_dim(&self) -> usize {
        self.map.source.dim() - self.map.rank()
    }

    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }
}

pub fn symmetric_square_map(n: &AModule) -> Result<SymmetricSquare> {
    let a = n.algebra().clone();
    let f = a.field();
    let d = n.dim();
    let t = tensor_module(n, n)?;
    let mut sym = t.relations.clone();
    for i in 0..d {
        for j in (i + 1)..d {
            let v = SparseVec::from_pairs(f, vec![((i * d + j) as u32, 1), ((j * d + i) as u32, f.neg(1))]);
            sym.insert(&v);
        }
    }
    let sym_free = sym.free_index();
    let sym_reps = sym.free_columns();
    let q = sym_reps.len();
    let reps = t.representatives();
    let proj_cols: Vec<Vec<u32>> =
        reps.iter().map(|&c| sym.quotient_coords(&SparseVec::unit(c), &sym_free).to_dense(q)).collect();
    let proj = Matrix::from_columns(f, q, &proj_cols);
    let action = (0..a.dim())
        .map(|b| {
            let act = n.action(b);
            let cols: Vec<Vec<u32>> = sym_reps
                .iter()
                .map(|&c| {
                    let (i, j) = (c / d, c % d);
                    let pairs: Vec<(u32, u32)> =
                        (0..d).filter(|&r| act.get(r, i) != 0).map(|r| ((r * d + j) as u32, act.get(r, i))).collect();
                    sym.quotient_coords(&SparseVec::from_pairs(f, pairs), &sym_free).to_dense(q)
                })
                .collect();
            Matrix::from_columns(f, q, &cols)
        })
        .collect();
    let s2 = AModule::new_unchecked(a, q, action);
    Ok(SymmetricSquare { map: ModuleMap { source: t.module, target: s2, matrix: proj } })
}

/// A generator `x` with `A → N, a ↦ a x` bijective, if `N ≅ A`.
pub fn is_free_rank_one(n: &AModule) -> Option<Vec<u32>> {
    let a = n.algebra();
    if n.dim() != a.dim() {
        return None;
    }
    let gens = n.minimal_generators();
    if gens.len() != 1 {
        return None;
    }
    // A → N is surjective by Nakayama and dimensions agree, so it is bijective
    let x = gens.into_iter().next().unwrap();
    let cols: Vec<Vec<u32>> = n.actions().iter().map(|m| m.apply(&x)).collect();
    let m = Matrix::from_columns(a.field(), n.dim(), &cols);
    if m.is_invertible() {
        Some(x)
    } else {
        None
    }
}

/// The evaluation map `M → Hom_A(Hom_A(M, D), D)`.
pub fn biduality_map(m: &AModule) -> Result<ModuleMap> {
    let a = m.algebra().clone();
    let f = a.field();
    let d = AModule::dualizing(&a);
    let h1 = hom_module(m, &d)?;
    let h2 = hom_module(&h1.module, &d)?;
    let basis1 = h1.basis_matrices();
    let mut cols = Vec::with_capacity(m.dim());
    for c in 0..m.dim() {
        let mut x = vec![0; m.dim()];
        x[c] = 1;
        let values: Vec<Vec<u32>> = basis1.iter().map(|b| b.apply(&x)).collect();
        let ev = Matrix::from_columns(f, d.dim(), &values);
        let coords = h2.coords(&ev).ok_or_else(|| Error::Internal("evaluation is not A-linear".into()))?;
        cols.push(coords);
    }
    let matrix = Matrix::from_columns(f, h2.module.dim(), &cols);
    Ok(ModuleMap { source: m.clone(), target: h2.module, matrix })
}

/// `Hom_P(Q, P)` as a `Q`-module via `(q·f)(x) = f(qx)`, together with its
/// matrices (`dim P × dim Q`).
pub fn coinduced(b: &BaseChange) -> Result<HomModule> {
    crate::algebra::free_rank_over_base(b)?;
    let (p, q) = (b.base(), b.target());
    let f = q.field();
    let pg: Vec<Matrix> = p.generators().iter().map(|g| p.left_matrix_of(g)).collect();
    let qg: Vec<Matrix> = p.generators().iter().map(|g| b.base_action(g)).collect();
    let space = equivariant_maps(f, &pg, &qg, p.dim(), q.dim());
    let h = HomModule { module: AModule::zero(q), space, source_dim: q.dim(), target_dim: p.dim() };
    let basis = h.basis_matrices();
    let action = (0..q.dim())
        .map(|i| {
            let cols: Vec<Vec<u32>> =
                basis.iter().map(|m| h.space.coords_unchecked(m.mul(q.left_matrix(i)).data())).collect();
            Matrix::from_columns(f, h.space.dim(), &cols)
        })
        .collect();
    let module = AModule::new_unchecked(q.clone(), h.space.dim(), action);
    Ok(HomModule { module, ..h })
}

/// Whether `Hom_P(Q, P) ≅ Q` as `Q`-modules.
pub fn frobenius_test(b: &BaseChange) -> Result<bool> {
    Ok(is_free_rank_one(&coinduced(b)?.module).is_some())
}

/// Whether `k ⊗_P Hom_P(Q, P) → Hom_k(Q/m_P Q, k)`, `[f] ↦ (x̄ ↦ f(x) mod m_P)`,
/// is bijective.
pub fn fiber_dual_comparison(b: &BaseChange) -> Result<bool> {
    let h = coinduced(b)?;
    let (p, q) = (b.base(), b.target());
    let f = q.field();
    let mut sub = Vec::new();
    for g in p.generators() {
        let act = h.module.action_of(&b.image(g));
        for c in 0..h.module.dim() {
            sub.push(act.column(c));
        }
    }
    let mh = Subspace::from_vectors(f, h.module.dim(), &sub);
    let reps = mh.free_columns();
    let lifts = b.fiber_basis_lifts();
    let mut cols = Vec::new();
    for &c in &reps {
        let mut coords = vec![0; h.module.dim()];
        coords[c] = 1;
        let fm = h.matrix(&coords);
        cols.push(lifts.iter().map(|x| fm.apply(x)[p.unit_index()]).collect::<Vec<u32>>());
    }
    let m = Matrix::from_columns(f, lifts.len(), &cols);
    Ok(m.is_invertible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{free_rank_over_base, LocalAlgebra};
    use crate::linalg::Fp;
    use crate::poly::{presentation_from_text, quotient_algebra_from_text};
    use std::sync::Arc;

    fn alg(p: u32, ideal: &str) -> Arc<LocalAlgebra> {
        quotient_algebra_from_text(Fp::new(p).unwrap(), ideal, None).unwrap()
    }

    fn frobenius_example() -> BaseChange {
        let f = Fp::new(2).unwrap();
        let vars = vec!["e".to_string()];
        let p = presentation_from_text(f, "e^2", Some(&vars)).unwrap();
        let qvars = vec!["e".to_string(), "x".to_string()];
        let q = presentation_from_text(f, "e^2, x^2 - e", Some(&qvars)).unwrap();
        let e = q.variable("e").unwrap();
        let cols: Vec<Vec<u32>> = p.monomials.iter().map(|m| q.element(&e.pow(m.0[0]))).collect();
        BaseChange::new(p.algebra.clone(), q.algebra.clone(), Matrix::from_columns(f, 4, &cols)).unwrap()
    }

    #[test]
    fn hom_examples() {
        let a = alg(3, "x^2, y^2");
        let d = AModule::dualizing(&a);
        let n = AModule::residue_field(&a);
        assert_eq!(hom_module(&AModule::regular(&a), &d).unwrap().module.dim(), 4);
        let dd = hom_module(&d, &d).unwrap();
        assert_eq!(dd.module.dim(), 4);
        assert!(is_free_rank_one(&dd.module).is_some());
        let ka = hom_module(&n, &AModule::regular(&a)).unwrap();
        assert_eq!(ka.module.dim(), a.socle().dim());
    }

    #[test]
    fn tensor_examples() {
        let a = alg(5, "x^2, x*y, y^2");
        let d = AModule::dualizing(&a);
        assert_eq!(tensor_module(&d, &d).unwrap().module.dim(), 4);
        let k = AModule::residue_field(&a);
        assert_eq!(tensor_module(&k, &d).unwrap().module.dim(), d.num_generators());
        assert_eq!(tensor_module(&AModule::regular(&a), &d).unwrap().module.dim(), 3);
    }

    #[test]
    fn symmetric_square_examples() {
        let a = alg(3, "x^2, x*y, y^2");
        assert!(symmetric_square_map(&AModule::regular(&a)).unwrap().is_bijective());
        assert!(symmetric_square_map(&AModule::residue_field(&a)).unwrap().is_bijective());
        let m = AModule::regular(&a).submodule(&a.maxideal()).unwrap();
        assert_eq!(symmetric_square_map(&m).unwrap().kernel_dim(), 1);
    }

    #[test]
    fn free_rank_one_examples() {
        let a = alg(2, "x^2, y^2");
        assert!(is_free_rank_one(&AModule::regular(&a)).is_some());
        assert!(is_free_rank_one(&AModule::residue_field(&a)).is_none());
        assert!(is_free_rank_one(&AModule::dualizing(&a)).is_some());
        assert!(is_free_rank_one(&AModule::dualizing(&alg(2, "x^2, x*y, y^2"))).is_none());
    }

    #[test]
    fn biduality_examples() {
        let a = alg(3, "x^2, x*y, y^2");
        for m in [AModule::residue_field(&a), AModule::regular(&a), AModule::dualizing(&a)] {
            let b = biduality_map(&m).unwrap();
            assert!(b.is_bijective());
        }
    }

    #[test]
    fn coinduced_examples() {
        let q = alg(2, "x^2, x*y, y^2");
        let over_k = BaseChange::over_field(q.clone());
        let c = coinduced(&over_k).unwrap();
        assert_eq!(c.module.actions(), AModule::dualizing(&q).actions());
        assert!(!frobenius_test(&over_k).unwrap());
        assert!(frobenius_test(&BaseChange::over_field(alg(2, "x^2"))).unwrap());
        let id = BaseChange::identity(q.clone());
        assert!(is_free_rank_one(&coinduced(&id).unwrap().module).is_some());
        let b = frobenius_example();
        assert_eq!(free_rank_over_base(&b).unwrap(), 2);
        assert!(frobenius_test(&b).unwrap());
        assert!(fiber_dual_comparison(&b).unwrap());
        assert!(fiber_dual_comparison(&over_k).unwrap());
    }
}
