use std::sync::Arc;

use crate::algebra::LocalAlgebra;
use crate::complex::{ChainComplex, ComplexMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::AModule;
use crate::sparse::{sparse_kernel, sparse_rank, Echelon, SparseVec};

/// A complex of free modules `F_i = A^{r_i}` with a quasi-isomorphism onto a
/// bounded complex `M`, valid through degree `top`.
///
/// `F_i` has k-coordinates `j·dim A + b` for `e_b · e_j`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    algebra: Arc<LocalAlgebra>,
    source: ChainComplex,
    lo: i32,
    top: i32,
    ranks: Vec<usize>,
    /// `diffs[k][j] = ∂ e_j ∈ F_{lo+k-1}`.
    diffs: Vec<Vec<SparseVec>>,
    /// `aug[k][j] = φ(e_j) ∈ M_{lo+k}`.
    aug: Vec<Vec<SparseVec>>,
}

/// `a · v` for `v` in a free module, given the columns `a · e_c`.
pub(crate) fn mul_free(field: crate::linalg::Fp, cols: &[SparseVec], n: usize, v: &SparseVec) -> SparseVec {
    let mut pairs = Vec::new();
    for &(idx, x) in &v.entries {
        let (j, c) = (idx as usize / n, idx as usize % n);
        let base = (j * n) as u32;
        for &(i, y) in &cols[c].entries {
            pairs.push((base + i, field.mul(x, y)));
        }
    }
    SparseVec::from_pairs(field, pairs)
}

fn element_columns(a: &LocalAlgebra, g: &[u32]) -> Vec<SparseVec> {
    let m = a.left_matrix_of(g);
    (0..a.dim()).map(|c| SparseVec::from_dense(&m.column(c))).collect()
}

impl FreeResolution {
    /// Resolves `source` through degree `top`.
    pub fn new(source: &ChainComplex, top: i32) -> Result<Self> {
        let algebra = source.algebra().clone();
        let lo = source.lo();
        let mut r = FreeResolution {
            algebra,
            source: source.clone(),
            lo,
            top: lo - 1,
            ranks: Vec::new(),
            diffs: Vec::new(),
            aug: Vec::new(),
        };
        r.extend_to(top)?;
        Ok(r)
    }

    /// Resolution of a module in degree 0 through homological degree `bound`.
    pub fn of_module(m: &AModule, bound: usize) -> Result<Self> {
        FreeResolution::new(&ChainComplex::from_module(m, 0), bound as i32)
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree computed.
    pub fn top(&self) -> i32 {
        self.top
    }

    pub fn rank(&self, i: i32) -> usize {
        if i < self.lo || i > self.top {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// `r_lo, …, r_top`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂ e_j` for the generators of `F_i`.
    pub fn boundaries(&self, i: i32) -> &[SparseVec] {
        if i < self.lo || i > self.top {
            &[]
        } else {
            &self.diffs[(i - self.lo) as usize]
        }
    }

    /// `φ(e_j) ∈ M_i` for the generators of `F_i`.
    pub fn augmentation(&self, i: i32) -> &[SparseVec] {
        if i < self.lo || i > self.top {
            &[]
        } else {
            &self.aug[(i - self.lo) as usize]
        }
    }

    /// `∂ e_j = Σ_l a_{lj} e_l` as the nonzero `(l, a_{lj})`.
    pub fn coefficients(&self, i: i32, j: usize) -> Vec<(usize, Vec<u32>)> {
        let n = self.algebra.dim();
        let mut out: Vec<(usize, Vec<u32>)> = Vec::new();
        for &(idx, x) in &self.boundaries(i)[j].entries {
            let (l, b) = (idx as usize / n, idx as usize % n);
            match out.last_mut() {
                Some((last, v)) if *last == l => v[b] = x,
                _ => {
                    let mut v = vec![0; n];
                    v[b] = x;
                    out.push((l, v));
                }
            }
        }
        out
    }

    /// Computes further degrees until `top`.
    pub fn extend_to(&mut self, top: i32) -> Result<()> {
        while self.top < top {
            self.step()?;
        }
        Ok(())
    }

    fn step(&mut self) -> Result<()> {
        let a = self.algebra.clone();
        let f = a.field();
        let n = a.dim();
        let i = self.top + 1;
        let m = &self.source;
        let (r1, r2) = (self.rank(i - 1), self.rank(i - 2));
        let (mi, mi1) = (m.dim(i), m.dim(i - 1));
        let fdim = r1 * n;
        let ydim = r2 * n + mi1;
        let xdim = fdim + mi;

        let mi1_module = m.module(i - 1);
        let mi_module = m.module(i);
        let dm = m.diff(i);

        // (f, m) ↦ (∂f, φ(f) − ∂m) on F_{i-1} ⊕ M_i
        let prev_diffs = self.boundaries(i - 1).to_vec();
        let prev_aug = self.augmentation(i - 1).to_vec();
        let bcols: Vec<Vec<SparseVec>> = (0..n).map(|b| basis_columns(&a, b)).collect();
        let mut columns = Vec::with_capacity(xdim);
        for (d, phi) in prev_diffs.iter().zip(&prev_aug) {
            for (b, cols) in bcols.iter().enumerate() {
                let left = mul_free(f, cols, n, d);
                let act = mi1_module.action(b).apply(&phi.to_dense(mi1));
                columns.push(left.concat(&SparseVec::from_dense(&act).shifted(r2 * n)));
            }
        }
        for c in 0..mi {
            let col: Vec<u32> = dm.column(c).iter().map(|&x| f.neg(x)).collect();
            columns.push(SparseVec::from_dense(&col).shifted(r2 * n));
        }
        let cycles = sparse_kernel(f, ydim, &columns);

        let mut ech = Echelon::new(f, xdim);
        if m.dim(i + 1) > 0 {
            let up = m.diff(i + 1);
            for c in 0..up.cols() {
                ech.insert(&SparseVec::from_dense(&up.column(c)).shifted(fdim));
            }
        }
        for g in a.generators() {
            let gcols = element_columns(&a, g);
            let gm = mi_module.action_of(g);
            for z in &cycles {
                let fpart = mul_free(f, &gcols, n, &z.window(0, fdim));
                let mpart = gm.apply(&z.window(fdim, xdim).to_dense(mi));
                ech.insert(&fpart.concat(&SparseVec::from_dense(&mpart).shifted(fdim)));
            }
        }
        let mut new_diffs = Vec::new();
        let mut new_aug = Vec::new();
        for z in &cycles {
            if ech.insert(z) {
                new_diffs.push(z.window(0, fdim));
                new_aug.push(z.window(fdim, xdim));
            }
        }
        self.top = i;
        self.ranks.push(new_diffs.len());
        self.diffs.push(new_diffs);
        self.aug.push(new_aug);
        Ok(())
    }

    /// `∂_i: F_i → F_{i-1}` as a dense matrix.
    pub fn diff_matrix(&self, i: i32) -> Matrix {
        let a = &self.algebra;
        let f = a.field();
        let n = a.dim();
        let rows = self.rank(i - 1) * n;
        let bcols: Vec<Vec<SparseVec>> = (0..n).map(|b| basis_columns(a, b)).collect();
        let mut cols = Vec::new();
        for d in self.boundaries(i) {
            for bc in &bcols {
                cols.push(mul_free(f, bc, n, d).to_dense(rows));
            }
        }
        Matrix::from_columns(f, rows, &cols)
    }

    /// `φ_i: F_i → M_i` as a dense matrix.
    pub fn augmentation_matrix(&self, i: i32) -> Matrix {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        let mi = self.source.module(i);
        let mut cols = Vec::new();
        for phi in self.augmentation(i) {
            let v = phi.to_dense(mi.dim());
            for b in 0..n {
                cols.push(mi.action(b).apply(&v));
            }
        }
        Matrix::from_columns(f, mi.dim(), &cols)
    }

    /// `F_{lo} … F_{hi}` as a chain complex.
    pub fn to_complex(&self, hi: i32) -> ChainComplex {
        let hi = hi.min(self.top);
        let modules = (self.lo..=hi).map(|i| AModule::free(&self.algebra, self.rank(i))).collect();
        let diffs = (self.lo + 1..=hi).map(|i| self.diff_matrix(i)).collect();
        ChainComplex::new_unchecked(self.algebra.clone(), self.lo, modules, diffs)
    }

    /// The comparison map `F_{⩽hi} → M`.
    pub fn augmentation_map(&self, hi: i32) -> ComplexMap {
        let fc = self.to_complex(hi);
        let lo = self.lo.min(self.source.lo());
        let top = fc.hi().max(self.source.hi());
        let maps = (lo..=top)
            .map(|i| {
                if i <= fc.hi() {
                    self.augmentation_matrix(i)
                } else {
                    Matrix::zeros(self.algebra.field(), self.source.dim(i), 0)
                }
            })
            .collect();
        ComplexMap::new_unchecked(fc, self.source.clone(), lo, maps)
    }

    /// `k ⊗ ∂ = 0`: every `∂ e_j` lies in `m F`.
    pub fn is_minimal(&self) -> bool {
        let n = self.algebra.dim();
        let u = self.algebra.unit_index();
        self.diffs.iter().flatten().all(|d| d.entries.iter().all(|&(idx, _)| idx as usize % n != u))
    }

    /// Checks `∂∂ = 0`, that `φ` is a chain map, and that the mapping cone is
    /// exact in every degree up to `top`, by rank counts independent of the
    /// construction.
    pub fn verify(&self) -> Result<()> {
        let f = self.algebra.field();
        for i in self.lo + 1..=self.top {
            let d = self.diff_matrix(i);
            if i - 1 > self.lo && !self.diff_matrix(i - 1).mul(&d).is_zero() {
                return Err(Error::Internal(format!("∂∂ ≠ 0 at degree {i}")));
            }
            let lhs = self.source.diff(i).mul(&self.augmentation_matrix(i));
            let rhs = self.augmentation_matrix(i - 1).mul(&d);
            if lhs != rhs {
                return Err(Error::Internal(format!("augmentation is not a chain map at degree {i}")));
            }
        }
        // cone_i = F_{i-1} ⊕ M_i, d(f, m) = (−∂f, φf + ∂m)
        let cone_diff = |i: i32| -> Vec<SparseVec> {
            let fd = self.diff_matrix(i - 1);
            let phi = self.augmentation_matrix(i - 1);
            let dm = self.source.diff(i);
            let top_rows = self.rank(i - 2) * self.algebra.dim();
            let mut cols = Vec::new();
            for c in 0..fd.cols() {
                let up: Vec<u32> = fd.column(c).iter().map(|&x| f.neg(x)).collect();
                let down = phi.column(c);
                cols.push(SparseVec::from_dense(&up).concat(&SparseVec::from_dense(&down).shifted(top_rows)));
            }
            for c in 0..dm.cols() {
                cols.push(SparseVec::from_dense(&dm.column(c)).shifted(top_rows));
            }
            cols
        };
        for i in self.lo..=self.top {
            let dim = self.rank(i - 1) * self.algebra.dim() + self.source.dim(i);
            let out = cone_diff(i);
            let rows = self.rank(i - 2) * self.algebra.dim() + self.source.dim(i - 1);
            let kernel = dim - sparse_rank(f, rows, &out);
            let inc = cone_diff(i + 1);
            let image = sparse_rank(f, dim, &inc);
            if kernel != image {
                return Err(Error::Internal(format!("mapping cone has homology in degree {i}")));
            }
        }
        Ok(())
    }

    /// `E_l / Im ∂_{l+1}`.
    pub fn cokernel_module(&self, l: i32) -> Result<AModule> {
        if l + 1 > self.top {
            return Err(Error::BoundExceeded { degree: l + 1, bound: self.top });
        }
        let free = AModule::free(&self.algebra, self.rank(l));
        let gens: Vec<Vec<u32>> = self.boundaries(l + 1).iter().map(|d| d.to_dense(free.dim())).collect();
        let sub = free.submodule_generated_by(&gens);
        free.quotient(&sub)
    }
}

/// Columns `e_b · e_c`.
fn basis_columns(a: &LocalAlgebra, b: usize) -> Vec<SparseVec> {
    (0..a.dim()).map(|c| a.product_sparse(b, c).clone()).collect()
}
