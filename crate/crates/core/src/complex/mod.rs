//! Bounded chain complexes of modules, their maps, truncations and homology.

mod koszul;
mod random;
mod total;

use std::sync::Arc;

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{subquotient, Matrix, Subquotient};
use crate::modules::AModule;

pub use koszul::{koszul_complex, koszul_homology_ranks};
pub use random::{random_complex, random_injective_complex, random_module_map};
pub use total::{hom_complex, tensor_complex, HomComplex, TensorComplex};

/// `… → M_i --∂_i--> M_{i-1} → …`, zero outside `[lo, lo + len)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    algebra: Arc<LocalAlgebra>,
    lo: i32,
    modules: Vec<AModule>,
    /// `diffs[k] = ∂_{lo+k}`; `diffs[0]` is the zero map out of `M_lo`.
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// Validates shapes, equivariance and `∂∂ = 0`.
    ///
    /// `diffs[k]` is `∂_{lo+k+1}: M_{lo+k+1} → M_{lo+k}`, so there is one
    /// differential fewer than modules.
    pub fn new(algebra: Arc<LocalAlgebra>, lo: i32, modules: Vec<AModule>, diffs: Vec<Matrix>) -> Result<Self> {
        if modules.is_empty() {
            if !diffs.is_empty() {
                return Err(Error::InvalidComplex("differentials without modules".into()));
            }
            return Ok(ChainComplex::zero(&algebra));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::InvalidComplex("need one differential between consecutive modules".into()));
        }
        for m in &modules {
            if m.algebra().fingerprint() != algebra.fingerprint() {
                return Err(Error::AlgebraMismatch);
            }
        }
        let f = algebra.field();
        let mut all = vec![Matrix::zeros(f, 0, modules[0].dim())];
        all.extend(diffs);
        let c = ChainComplex { algebra, lo, modules, diffs: all };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        algebra: Arc<LocalAlgebra>,
        lo: i32,
        modules: Vec<AModule>,
        diffs: Vec<Matrix>,
    ) -> Self {
        let f = algebra.field();
        if modules.is_empty() {
            return ChainComplex { algebra, lo: 0, modules, diffs: Vec::new() };
        }
        let mut all = vec![Matrix::zeros(f, 0, modules[0].dim())];
        all.extend(diffs);
        ChainComplex { algebra, lo, modules, diffs: all }
    }

    fn validate(&self) -> Result<()> {
        for k in 1..self.modules.len() {
            let d = &self.diffs[k];
            let (src, tgt) = (&self.modules[k], &self.modules[k - 1]);
            if d.rows() != tgt.dim() || d.cols() != src.dim() {
                return Err(Error::InvalidComplex(format!("differential {} has the wrong shape", self.lo + k as i32)));
            }
            for (s, t) in src.generator_actions().iter().zip(tgt.generator_actions()) {
                if t.mul(d) != d.mul(s) {
                    return Err(Error::InvalidComplex(format!("differential {} is not A-linear", self.lo + k as i32)));
                }
            }
            if k >= 2 && !self.diffs[k - 1].mul(d).is_zero() {
                return Err(Error::InvalidComplex(format!("∂∂ ≠ 0 at degree {}", self.lo + k as i32)));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<LocalAlgebra>) -> Self {
        ChainComplex { algebra: algebra.clone(), lo: 0, modules: Vec::new(), diffs: Vec::new() }
    }

    /// A module concentrated in one degree.
    pub fn from_module(m: &AModule, degree: i32) -> Self {
        ChainComplex::new_unchecked(m.algebra().clone(), degree, vec![m.clone()], Vec::new())
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.dim() == 0)
    }

    /// Lowest degree of the stored window.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree of the stored window (`lo - 1` when empty).
    pub fn hi(&self) -> i32 {
        self.lo + self.modules.len() as i32 - 1
    }

    /// `inf` and `sup` of the nonzero components.
    pub fn support(&self) -> Option<(i32, i32)> {
        let nz: Vec<i32> = (self.lo..=self.hi()).filter(|&i| self.module(i).dim() > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn module(&self, i: i32) -> AModule {
        if i < self.lo || i > self.hi() {
            AModule::zero(&self.algebra)
        } else {
            self.modules[(i - self.lo) as usize].clone()
        }
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.modules[(i - self.lo) as usize].dim()
        }
    }

    /// `∂_i: M_i → M_{i-1}`.
    pub fn diff(&self, i: i32) -> Matrix {
        let f = self.algebra.field();
        if i <= self.lo || i > self.hi() {
            Matrix::zeros(f, self.dim(i - 1), self.dim(i))
        } else {
            self.diffs[(i - self.lo) as usize].clone()
        }
    }

    /// `Σ^n M`: `(Σ^n M)_i = M_{i-n}`, `∂^{Σ^n M}_i = (-1)^n ∂^M_{i-n}`.
    pub fn shift(&self, n: i32) -> ChainComplex {
        let f = self.algebra.field();
        let s = f.sign(n as i64);
        let diffs = (self.lo + 1..=self.hi()).map(|i| self.diff(i).scale(s)).collect();
        ChainComplex::new_unchecked(self.algebra.clone(), self.lo + n, self.modules.clone(), diffs)
    }

    /// The subcomplex of components in degrees `[a, b]` (zero elsewhere).
    fn window(&self, a: i32, b: i32) -> ChainComplex {
        if a > b {
            return ChainComplex::zero(&self.algebra);
        }
        let modules = (a..=b).map(|i| self.module(i)).collect();
        let diffs = (a + 1..=b).map(|i| self.diff(i)).collect();
        ChainComplex::new_unchecked(self.algebra.clone(), a, modules, diffs)
    }

    /// `(M_{<n}, M_{⩾n})`, with `M_{⩾n} = M / M_{<n}`.
    pub fn hard_truncations(&self, n: i32) -> (ChainComplex, ChainComplex) {
        (self.window(self.lo, (n - 1).min(self.hi())), self.window(n.max(self.lo), self.hi()))
    }

    /// `τ_{⩽n} M` and the natural surjection `M → τ_{⩽n} M`.
    pub fn smart_truncation(&self, n: i32) -> Result<(ChainComplex, ComplexMap)> {
        let f = self.algebra.field();
        if n >= self.hi() {
            let id = ComplexMap::identity(self);
            return Ok((self.clone(), id));
        }
        if n < self.lo {
            let z = ChainComplex::zero(&self.algebra);
            let maps = (self.lo..=self.hi()).map(|i| Matrix::zeros(f, 0, self.dim(i))).collect();
            let m = ComplexMap { source: self.clone(), target: z.clone(), lo: self.lo, maps };
            return Ok((z, m));
        }
        let image = self.diff(n + 1).column_space();
        let top = self.module(n).quotient(&image)?;
        let free = image.free_columns();
        let proj_cols: Vec<Vec<u32>> = (0..self.dim(n))
            .map(|c| {
                let mut e = vec![0; self.dim(n)];
                e[c] = 1;
                image.quotient_coords(&e)
            })
            .collect();
        let proj = Matrix::from_columns(f, top.dim(), &proj_cols);
        debug_assert_eq!(free.len(), top.dim());
        let mut modules: Vec<AModule> = (self.lo..n).map(|i| self.module(i)).collect();
        modules.push(top);
        let mut diffs: Vec<Matrix> = (self.lo + 1..n).map(|i| self.diff(i)).collect();
        if n > self.lo {
            // ∂_n factors through the quotient: use the chosen representatives
            let d = self.diff(n);
            let cols: Vec<Vec<u32>> = free.iter().map(|&c| d.column(c)).collect();
            diffs.push(Matrix::from_columns(f, self.dim(n - 1), &cols));
        }
        let tau = ChainComplex::new_unchecked(self.algebra.clone(), self.lo, modules, diffs);
        let mut maps: Vec<Matrix> = (self.lo..n).map(|i| Matrix::identity(f, self.dim(i))).collect();
        maps.push(proj);
        for i in n + 1..=self.hi() {
            maps.push(Matrix::zeros(f, 0, self.dim(i)));
        }
        let map = ComplexMap { source: self.clone(), target: tau.clone(), lo: self.lo, maps };
        Ok((tau, map))
    }

    /// `H_i = ker ∂_i / im ∂_{i+1}` with canonical representatives.
    pub fn homology_at(&self, i: i32) -> Subquotient {
        let z = self.diff(i).kernel();
        let b = self.diff(i + 1).column_space();
        subquotient(&z, &b).expect("∂∂ = 0 puts boundaries inside cycles")
    }

    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi()).map(|i| (i, self.homology_at(i).dim())).collect()
    }

    pub fn homology_dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.homology_at(i).dim()
        }
    }

    /// `H_i(M)` with its induced module structure.
    pub fn homology_module(&self, i: i32) -> AModule {
        let sq = self.homology_at(i);
        let m = self.module(i);
        let f = self.algebra.field();
        let reps = sq.representatives();
        let action = m
            .actions()
            .iter()
            .map(|a| {
                let cols: Vec<Vec<u32>> = reps.iter().map(|r| sq.coords(&a.apply(r))).collect();
                Matrix::from_columns(f, sq.dim(), &cols)
            })
            .collect();
        AModule::new_unchecked(self.algebra.clone(), sq.dim(), action)
    }

    /// Degrees with nonzero homology, as `(inf, sup)`.
    pub fn homology_support(&self) -> Option<(i32, i32)> {
        let nz: Vec<i32> = (self.lo..=self.hi()).filter(|&i| self.homology_dim(i) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }
}

/// Levelwise maps `α_i: M_i → N_i` with `∂^N_i α_i = α_{i-1} ∂^M_i`.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    lo: i32,
    maps: Vec<Matrix>,
}

impl ComplexMap {
    /// `maps[k]` is `α_{lo+k}`; degrees outside are zero.
    pub fn new(source: ChainComplex, target: ChainComplex, lo: i32, maps: Vec<Matrix>) -> Result<Self> {
        let m = ComplexMap { source, target, lo, maps };
        for i in m.joint_window() {
            let a = m.at(i);
            if a.rows() != m.target.dim(i) || a.cols() != m.source.dim(i) {
                return Err(Error::InvalidMap(format!("component {i} has the wrong shape")));
            }
        }
        if !m.commutes() {
            return Err(Error::InvalidMap("levelwise maps do not commute with the differentials".into()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: ChainComplex, target: ChainComplex, lo: i32, maps: Vec<Matrix>) -> Self {
        ComplexMap { source, target, lo, maps }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let f = c.algebra.field();
        let maps = (c.lo()..=c.hi()).map(|i| Matrix::identity(f, c.dim(i))).collect();
        ComplexMap { source: c.clone(), target: c.clone(), lo: c.lo(), maps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ComplexMap { source: source.clone(), target: target.clone(), lo: 0, maps: Vec::new() }
    }

    fn joint_window(&self) -> std::ops::RangeInclusive<i32> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        lo..=hi
    }

    /// `α_i`.
    pub fn at(&self, i: i32) -> Matrix {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            let m = &self.maps[k as usize];
            if m.rows() == self.target.dim(i) && m.cols() == self.source.dim(i) {
                return m.clone();
            }
        }
        Matrix::zeros(self.source.algebra.field(), self.target.dim(i), self.source.dim(i))
    }

    /// Whether every square `∂^N_i α_i = α_{i-1} ∂^M_i` commutes.
    pub fn commutes(&self) -> bool {
        let (lo, hi) = (*self.joint_window().start(), *self.joint_window().end());
        (lo..=hi + 1).all(|i| self.target.diff(i).mul(&self.at(i)) == self.at(i - 1).mul(&self.source.diff(i)))
    }

    /// Matrix of `H_i(α)` in the canonical homology bases.
    pub fn homology_map(&self, i: i32) -> Matrix {
        let f = self.source.algebra.field();
        let hs = self.source.homology_at(i);
        let ht = self.target.homology_at(i);
        let a = self.at(i);
        let cols: Vec<Vec<u32>> = hs.representatives().iter().map(|r| ht.coords(&a.apply(r))).collect();
        Matrix::from_columns(f, ht.dim(), &cols)
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.joint_window().all(|i| {
            let h = self.homology_map(i);
            h.rows() == h.cols() && h.rank() == h.rows()
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.joint_window().all(|i| {
            let a = self.at(i);
            a.rows() == a.cols() && a.rank() == a.rows()
        })
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

    /// `A --x--> A` in degrees 1, 0 over `k[x]/(x²)`.
    fn mult_by_x(a: &Arc<LocalAlgebra>) -> ChainComplex {
        let x = a.labels().iter().position(|l| l == "x").unwrap();
        let m = AModule::regular(a);
        ChainComplex::new(a.clone(), 0, vec![m.clone(), m], vec![a.left_matrix(x).clone()]).unwrap()
    }

    #[test]
    fn shift_examples() {
        let a = alg(3, "x^2");
        let c = mult_by_x(&a);
        let s = c.shift(0);
        assert_eq!(s.diff(1), c.diff(1));
        let back = c.shift(1).shift(-1);
        assert_eq!(back.lo(), c.lo());
        assert_eq!(back.diff(1), c.diff(1));
        assert_eq!(c.shift(1).diff(2), c.diff(1).scale(2));
        let k = ChainComplex::from_module(&AModule::residue_field(&a), 0).shift(3);
        assert_eq!((k.lo(), k.hi()), (3, 3));
        assert_eq!(c.shift(2).homology_dim(2), c.homology_dim(0));
    }

    #[test]
    fn truncation_examples() {
        let a = alg(3, "x^2");
        let c = mult_by_x(&a);
        let (below, above) = c.hard_truncations(0);
        assert!(below.is_zero());
        assert_eq!(above.dim(1), 2);
        let (below, above) = c.hard_truncations(5);
        assert_eq!(below.dim(0), 2);
        assert!(above.is_zero());
        let (below, above) = c.hard_truncations(1);
        assert_eq!((below.dim(0), below.dim(1)), (2, 0));
        assert_eq!((above.dim(0), above.dim(1)), (0, 2));
    }

    #[test]
    fn smart_truncation_preserves_low_homology() {
        let a = alg(3, "x^2");
        let c = mult_by_x(&a);
        let (t, map) = c.smart_truncation(0).unwrap();
        assert!(map.commutes());
        assert_eq!(t.homology_dim(0), c.homology_dim(0));
        assert_eq!(t.homology_dim(1), 0);
        let (t, _) = c.smart_truncation(3).unwrap();
        assert_eq!(t.homology_dims(), c.homology_dims());
        let k = koszul_complex(&alg(5, "x^2, x*y, y^2"));
        let (t, map) = k.smart_truncation(1).unwrap();
        assert!(map.commutes());
        assert_eq!(t.homology_dim(0), 1);
        assert_eq!(t.homology_dim(1), 3);
        assert_eq!(t.homology_dim(2), 0);
    }

    #[test]
    fn homology_examples() {
        let a = alg(3, "x^2");
        let m = AModule::regular(&a);
        let id =
            ChainComplex::new(a.clone(), 0, vec![m.clone(), m.clone()], vec![Matrix::identity(a.field(), 2)]).unwrap();
        assert!(id.homology_dims().iter().all(|&(_, d)| d == 0));
        let zero = ChainComplex::new(a.clone(), 0, vec![m.clone(), m], vec![Matrix::zeros(a.field(), 2, 2)]).unwrap();
        assert_eq!(zero.homology_dims(), vec![(0, 2), (1, 2)]);
        let c = mult_by_x(&a);
        let h0 = c.homology_module(0);
        assert_eq!(h0.dim(), 1);
        assert!(AModule::new(a.clone(), 1, h0.actions().to_vec()).is_ok());
    }

    #[test]
    fn quasi_iso_examples() {
        let a = alg(3, "x^2");
        let c = mult_by_x(&a);
        assert!(ComplexMap::identity(&c).is_quasi_iso());
        assert!(!ComplexMap::zero(&c, &c).is_quasi_iso());
        let (_, proj) = c.smart_truncation(0).unwrap();
        assert!(!proj.is_quasi_iso());
        let (_, proj) = c.smart_truncation(1).unwrap();
        assert!(proj.is_quasi_iso());
    }

    #[test]
    fn rejects_non_complexes() {
        let a = alg(3, "x^2");
        let m = AModule::regular(&a);
        let id = Matrix::identity(a.field(), 2);
        assert!(matches!(
            ChainComplex::new(a.clone(), 0, vec![m.clone(), m.clone(), m], vec![id.clone(), id]),
            Err(Error::InvalidComplex(_))
        ));
    }
}
