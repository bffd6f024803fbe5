use crate::error::Result;
use crate::linalg::Matrix;
use crate::modules::{hom_module, tensor_module, AModule, HomModule, TensorModule};

use super::ChainComplex;

/// One summand `Hom(M_i, N_j)` of `Hom(M, N)_{j-i}`.
#[derive(Clone, Debug)]
pub struct HomBlock {
    pub source_degree: i32,
    pub target_degree: i32,
    pub hom: HomModule,
    pub offset: usize,
}

/// `Hom(M, N)_n = ∏_{j-i=n} Hom(M_i, N_j)` with
/// `∂β = ∂^N β − (−1)^{|β|} β ∂^M`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: ChainComplex,
    lo: i32,
    /// `blocks[n - lo]`, ordered by increasing target degree.
    blocks: Vec<Vec<HomBlock>>,
}

impl HomComplex {
    pub fn blocks(&self, n: i32) -> &[HomBlock] {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.blocks.len() {
            &[]
        } else {
            &self.blocks[k as usize]
        }
    }

    pub fn block(&self, n: i32, source_degree: i32) -> Option<&HomBlock> {
        self.blocks(n).iter().find(|b| b.source_degree == source_degree)
    }

    /// The component `M_i → N_{i+n}` of a degree-`n` element.
    pub fn component(&self, n: i32, source_degree: i32, v: &[u32]) -> Option<Matrix> {
        let b = self.block(n, source_degree)?;
        Some(b.hom.matrix(&v[b.offset..b.offset + b.hom.space.dim()]))
    }

    /// Degree-`n` element with the given components, `None` if one is not A-linear.
    pub fn element(&self, n: i32, components: &[(i32, Matrix)]) -> Option<Vec<u32>> {
        let dim = self.blocks(n).iter().map(|b| b.hom.space.dim()).sum();
        let mut v = vec![0; dim];
        for (i, m) in components {
            let b = self.block(n, *i)?;
            let c = b.hom.coords(m)?;
            v[b.offset..b.offset + c.len()].copy_from_slice(&c);
        }
        Some(v)
    }
}

pub fn hom_complex(m: &ChainComplex, n: &ChainComplex) -> Result<HomComplex> {
    let a = m.algebra().clone();
    let f = a.field();
    if m.hi() < m.lo() || n.hi() < n.lo() {
        return Ok(HomComplex { complex: ChainComplex::zero(&a), lo: 0, blocks: Vec::new() });
    }
    let lo = n.lo() - m.hi();
    let hi = n.hi() - m.lo();
    let mut blocks = Vec::new();
    let mut modules = Vec::new();
    for deg in lo..=hi {
        let mut row = Vec::new();
        let mut parts = Vec::new();
        let mut offset = 0;
        for j in n.lo()..=n.hi() {
            let i = j - deg;
            if i < m.lo() || i > m.hi() {
                continue;
            }
            let hom = hom_module(&m.module(i), &n.module(j))?;
            let d = hom.space.dim();
            parts.push(hom.module.clone());
            row.push(HomBlock { source_degree: i, target_degree: j, hom, offset });
            offset += d;
        }
        modules.push(sum_or_zero(&a, &parts)?);
        blocks.push(row);
    }
    let mut h = HomComplex { complex: ChainComplex::zero(&a), lo, blocks };
    let mut diffs = Vec::new();
    for deg in lo + 1..=hi {
        let sign = f.neg(f.sign(deg as i64));
        let rows = modules[(deg - 1 - lo) as usize].dim();
        let mut cols = Vec::new();
        for b in h.blocks(deg) {
            for beta in b.hom.basis_matrices() {
                let i = b.source_degree;
                let mut comps = Vec::new();
                if n.dim(i + deg - 1) > 0 {
                    comps.push((i, n.diff(i + deg).mul(&beta)));
                }
                if m.dim(i + 1) > 0 {
                    comps.push((i + 1, beta.mul(&m.diff(i + 1)).scale(sign)));
                }
                let v = h.element(deg - 1, &comps).expect("composites of A-linear maps are A-linear");
                debug_assert_eq!(v.len(), rows);
                cols.push(v);
            }
        }
        diffs.push(Matrix::from_columns(f, rows, &cols));
    }
    h.complex = ChainComplex::new_unchecked(a, lo, modules, diffs);
    Ok(h)
}

fn sum_or_zero(a: &std::sync::Arc<crate::algebra::LocalAlgebra>, parts: &[AModule]) -> Result<AModule> {
    if parts.is_empty() {
        return Ok(AModule::zero(a));
    }
    let refs: Vec<&AModule> = parts.iter().collect();
    AModule::direct_sum(&refs)
}

/// One summand `L_h ⊗ M_i` of `(L ⊗ M)_{h+i}`.
#[derive(Clone, Debug)]
pub struct TensorBlock {
    pub left_degree: i32,
    pub right_degree: i32,
    pub tensor: TensorModule,
    pub offset: usize,
}

/// `(L ⊗ M)_n = ⊕_{h+i=n} L_h ⊗ M_i` with `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    lo: i32,
    blocks: Vec<Vec<TensorBlock>>,
}

impl TensorComplex {
    pub fn blocks(&self, n: i32) -> &[TensorBlock] {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.blocks.len() {
            &[]
        } else {
            &self.blocks[k as usize]
        }
    }

    fn block_index(&self, n: i32, left_degree: i32) -> Option<(usize, usize)> {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.blocks.len() {
            return None;
        }
        let pos = self.blocks[k as usize].iter().position(|b| b.left_degree == left_degree)?;
        Some((k as usize, pos))
    }

    /// Adds the class of `x ⊗ y ∈ L_h ⊗ M_{n-h}` into the degree-`n` vector `out`.
    pub fn add_pair(&mut self, n: i32, h: i32, x: &[u32], y: &[u32], scale: u32, out: &mut [u32]) {
        let Some((k, pos)) = self.block_index(n, h) else { return };
        let f = self.complex.algebra().field();
        let b = &mut self.blocks[k][pos];
        let c = b.tensor.class_of_pair(x, y);
        for (t, v) in c.into_iter().enumerate() {
            out[b.offset + t] = f.mul_add(out[b.offset + t], scale, v);
        }
    }

    /// `(h, u, v)` such that basis vector `t` of degree `n` is the class of `e_u ⊗ e_v ∈ L_h ⊗ M_{n-h}`.
    pub fn basis_pairs(&self, n: i32) -> Vec<(i32, usize, usize)> {
        let mut out = Vec::new();
        for b in self.blocks(n) {
            let rd = b.tensor.right_dim;
            for r in b.tensor.representatives() {
                out.push((b.left_degree, r / rd, r % rd));
            }
        }
        out
    }
}

pub fn tensor_complex(l: &ChainComplex, m: &ChainComplex) -> Result<TensorComplex> {
    let a = l.algebra().clone();
    let f = a.field();
    if l.hi() < l.lo() || m.hi() < m.lo() {
        return Ok(TensorComplex { complex: ChainComplex::zero(&a), lo: 0, blocks: Vec::new() });
    }
    let lo = l.lo() + m.lo();
    let hi = l.hi() + m.hi();
    let mut blocks = Vec::new();
    let mut modules = Vec::new();
    for deg in lo..=hi {
        let mut row = Vec::new();
        let mut parts = Vec::new();
        let mut offset = 0;
        for h in l.lo()..=l.hi() {
            let i = deg - h;
            if i < m.lo() || i > m.hi() {
                continue;
            }
            let tensor = tensor_module(&l.module(h), &m.module(i))?;
            let d = tensor.module.dim();
            parts.push(tensor.module.clone());
            row.push(TensorBlock { left_degree: h, right_degree: i, tensor, offset });
            offset += d;
        }
        modules.push(sum_or_zero(&a, &parts)?);
        blocks.push(row);
    }
    let mut t = TensorComplex { complex: ChainComplex::zero(&a), lo, blocks };
    let mut diffs = Vec::new();
    for deg in lo + 1..=hi {
        let rows = modules[(deg - 1 - lo) as usize].dim();
        let pairs = t.basis_pairs(deg);
        let mut cols = Vec::with_capacity(pairs.len());
        for (h, u, v) in pairs {
            let i = deg - h;
            let mut out = vec![0; rows];
            let (dl, dm) = (l.dim(h), m.dim(i));
            let mut eu = vec![0; dl];
            eu[u] = 1;
            let mut ev = vec![0; dm];
            ev[v] = 1;
            if l.dim(h - 1) > 0 {
                let dx = l.diff(h).column(u);
                t.add_pair(deg - 1, h - 1, &dx, &ev, 1, &mut out);
            }
            if m.dim(i - 1) > 0 {
                let dy = m.diff(i).column(v);
                t.add_pair(deg - 1, h, &eu, &dy, f.sign(h as i64), &mut out);
            }
            cols.push(out);
        }
        diffs.push(Matrix::from_columns(f, rows, &cols));
    }
    t.complex = ChainComplex::new_unchecked(a, lo, modules, diffs);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul_complex;
    use crate::linalg::Fp;
    use crate::poly::quotient_algebra_from_text;

    /// `A --x--> A → 0`, the free resolution of `k` over `k[x]/(x²)` cut at degree 1,
    /// and the same extended to `A --x--> A --x--> A` in degrees 0..2.
    fn truncated_resolution(len: i32) -> ChainComplex {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2", None).unwrap();
        let x = a.labels().iter().position(|l| l == "x").unwrap();
        let m = AModule::regular(&a);
        let modules = (0..=len).map(|_| m.clone()).collect();
        let diffs = (0..len).map(|_| a.left_matrix(x).clone()).collect();
        ChainComplex::new(a, 0, modules, diffs).unwrap()
    }

    #[test]
    fn hom_complex_is_a_complex() {
        let f = truncated_resolution(2);
        let h = hom_complex(&f, &f).unwrap();
        let c = &h.complex;
        for n in c.lo()..=c.hi() {
            assert!(c.diff(n - 1).mul(&c.diff(n)).is_zero());
        }
        assert_eq!((c.lo(), c.hi()), (-2, 2));
        assert!(ChainComplex::new(
            c.algebra().clone(),
            c.lo(),
            (c.lo()..=c.hi()).map(|i| c.module(i)).collect(),
            (c.lo() + 1..=c.hi()).map(|i| c.diff(i)).collect()
        )
        .is_ok());
    }

    #[test]
    fn hom_into_module_computes_dual_complex() {
        let f = truncated_resolution(2);
        let a = f.algebra().clone();
        let k = ChainComplex::from_module(&AModule::residue_field(&a), 0);
        let h = hom_complex(&f, &k).unwrap();
        // Hom(F, k) has zero differential, so H_{-i} = k for i = 0, 1, 2
        assert_eq!(h.complex.homology_dims(), vec![(-2, 1), (-1, 1), (0, 1)]);
    }

    #[test]
    fn tensor_of_truncated_resolutions() {
        // F ⊗ F with F: A → A → A over k[x]/(x²); total degrees 0..4
        let f = truncated_resolution(2);
        let t = tensor_complex(&f, &f).unwrap();
        let c = &t.complex;
        for n in c.lo()..=c.hi() {
            assert!(c.diff(n - 1).mul(&c.diff(n)).is_zero());
        }
        let dims: Vec<usize> = (0..=4).map(|n| c.homology_dim(n)).collect();
        assert_eq!(dims, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn tensor_with_residue_field_kills_differentials() {
        let f = truncated_resolution(3);
        let a = f.algebra().clone();
        let k = ChainComplex::from_module(&AModule::residue_field(&a), 0);
        let t = tensor_complex(&f, &k).unwrap();
        assert_eq!(t.complex.homology_dims(), vec![(0, 1), (1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn koszul_tensor_signs() {
        let a = quotient_algebra_from_text(Fp::new(5).unwrap(), "x^2, y^3", None).unwrap();
        let k = koszul_complex(&a);
        let t = tensor_complex(&k, &k).unwrap();
        let c = &t.complex;
        for n in c.lo()..=c.hi() {
            assert!(c.diff(n - 1).mul(&c.diff(n)).is_zero(), "∂∂ at {n}");
        }
        let h = hom_complex(&k, &k).unwrap();
        for n in h.complex.lo()..=h.complex.hi() {
            assert!(h.complex.diff(n - 1).mul(&h.complex.diff(n)).is_zero());
        }
    }
}
