use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use sha2::{Digest, Sha256};

use super::FreeResolution;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::AModule;
use crate::sparse::{sparse_rank, SparseVec};

fn require(res: &FreeResolution, degree: i32) -> Result<()> {
    if degree > res.top() {
        return Err(Error::BoundExceeded { degree, bound: res.top() });
    }
    Ok(())
}

/// Action matrices of `a_{lj}` on `N` for every term of `∂ e_j`, `e_j ∈ F_i`.
fn coefficient_actions(res: &FreeResolution, n: &AModule, i: i32) -> Vec<Vec<(usize, Matrix)>> {
    (0..res.rank(i)).map(|j| res.coefficients(i, j).into_iter().map(|(l, a)| (l, n.action_of(&a))).collect()).collect()
}

/// Rank of `Hom(∂_i, N): Hom(F_{i-1}, N) → Hom(F_i, N)`.
fn hom_rank(res: &FreeResolution, n: &AModule, i: i32) -> usize {
    let f = n.algebra().field();
    let dn = n.dim();
    let (r0, r1) = (res.rank(i - 1), res.rank(i));
    if r0 == 0 || r1 == 0 || dn == 0 {
        return 0;
    }
    let mut cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); r0 * dn];
    for (j, terms) in coefficient_actions(res, n, i).into_iter().enumerate() {
        for (l, m) in terms {
            for c in 0..dn {
                for s in 0..dn {
                    let x = m.get(s, c);
                    if x != 0 {
                        cols[l * dn + c].push(((j * dn + s) as u32, x));
                    }
                }
            }
        }
    }
    let cols: Vec<SparseVec> = cols.into_iter().map(|p| SparseVec::from_pairs(f, p)).collect();
    sparse_rank(f, r1 * dn, &cols)
}

/// Rank of `∂_i ⊗ N: F_i ⊗ N → F_{i-1} ⊗ N`.
fn tensor_rank(res: &FreeResolution, n: &AModule, i: i32) -> usize {
    let f = n.algebra().field();
    let dn = n.dim();
    let (r0, r1) = (res.rank(i - 1), res.rank(i));
    if r0 == 0 || r1 == 0 || dn == 0 {
        return 0;
    }
    let mut cols = Vec::with_capacity(r1 * dn);
    for terms in coefficient_actions(res, n, i) {
        for c in 0..dn {
            let mut pairs = Vec::new();
            for (l, m) in &terms {
                for s in 0..dn {
                    let x = m.get(s, c);
                    if x != 0 {
                        pairs.push(((l * dn + s) as u32, x));
                    }
                }
            }
            cols.push(SparseVec::from_pairs(f, pairs));
        }
    }
    sparse_rank(f, r0 * dn, &cols)
}

/// `dim Ext^i(M, N)` for `i` in `[lo, hi]`, `M` the source of `res`.
pub fn ext_dims(res: &FreeResolution, n: &AModule, lo: i32, hi: i32) -> Result<Vec<usize>> {
    require(res, hi + 1)?;
    let ranks: Vec<usize> = (lo..=hi + 1).map(|i| hom_rank(res, n, i)).collect();
    Ok((lo..=hi)
        .map(|i| {
            let k = (i - lo) as usize;
            res.rank(i) * n.dim() - ranks[k] - ranks[k + 1]
        })
        .collect())
}

pub fn ext_dim(res: &FreeResolution, n: &AModule, i: i32) -> Result<usize> {
    Ok(ext_dims(res, n, i, i)?[0])
}

/// `dim Tor_i(M, N)` for `i` in `[lo, hi]`.
pub fn tor_dims(res: &FreeResolution, n: &AModule, lo: i32, hi: i32) -> Result<Vec<usize>> {
    require(res, hi + 1)?;
    let ranks: Vec<usize> = (lo..=hi + 1).map(|i| tensor_rank(res, n, i)).collect();
    Ok((lo..=hi)
        .map(|i| {
            let k = (i - lo) as usize;
            res.rank(i) * n.dim() - ranks[k] - ranks[k + 1]
        })
        .collect())
}

pub fn tor_dim(res: &FreeResolution, n: &AModule, i: i32) -> Result<usize> {
    Ok(tor_dims(res, n, i, i)?[0])
}

/// Layout of `(E ⊗ M)_d = ⊕_h M_{d-h}^{r_h}`: `(h, offset)` per block.
fn tensor_layout(res: &FreeResolution, m: &ChainComplex, d: i32) -> (Vec<(i32, usize)>, usize) {
    let mut blocks = Vec::new();
    let mut off = 0;
    for h in res.lo()..=res.top() {
        let size = res.rank(h) * m.dim(d - h);
        if size > 0 {
            blocks.push((h, off));
            off += size;
        }
    }
    (blocks, off)
}

/// Columns of `∂_d` on `E ⊗ M`, with `∂(e⊗x) = ∂e⊗x + (−1)^{|e|} e⊗∂x`.
fn tensor_complex_diff(res: &FreeResolution, m: &ChainComplex, d: i32) -> (Vec<SparseVec>, usize) {
    let f = m.algebra().field();
    let (src, _) = tensor_layout(res, m, d);
    let (tgt, rows) = tensor_layout(res, m, d - 1);
    let offset_of = |h: i32| tgt.iter().find(|b| b.0 == h).map(|b| b.1);
    let mut cols = Vec::new();
    for &(h, _) in &src {
        let i = d - h;
        let mi = m.module(i);
        let dmi = mi.dim();
        let dm_low = m.dim(i - 1);
        let dx = m.diff(i);
        let sign = f.sign(h as i64);
        let terms = coefficient_actions(res, &mi, h);
        let down = offset_of(h - 1);
        let side = offset_of(h);
        for (j, t) in terms.iter().enumerate() {
            for c in 0..dmi {
                let mut pairs = Vec::new();
                if let Some(o) = down {
                    for (l, act) in t {
                        for s in 0..dmi {
                            let x = act.get(s, c);
                            if x != 0 {
                                pairs.push(((o + l * dmi + s) as u32, x));
                            }
                        }
                    }
                }
                if let Some(o) = side {
                    for s in 0..dm_low {
                        let x = dx.get(s, c);
                        if x != 0 {
                            pairs.push(((o + j * dm_low + s) as u32, f.mul(sign, x)));
                        }
                    }
                }
                cols.push(SparseVec::from_pairs(f, pairs));
            }
        }
    }
    (cols, rows)
}

/// `dim H_d(E ⊗ M)` where `E` resolves `L`; this is `Tor_d(L, M)`.
pub fn tor_complexes(res: &FreeResolution, m: &ChainComplex, d: i32) -> Result<usize> {
    if m.hi() < m.lo() {
        return Ok(0);
    }
    require(res, d + 1 - m.lo())?;
    let f = m.algebra().field();
    let (out, rows_out) = tensor_complex_diff(res, m, d);
    let (inc, rows_in) = tensor_complex_diff(res, m, d + 1);
    let dim = tensor_layout(res, m, d).1;
    debug_assert_eq!(rows_in, dim);
    Ok(dim - sparse_rank(f, rows_out, &out) - sparse_rank(f, rows_in, &inc))
}

/// `dim Tor_i(M, k)` for `i ⩽ bound`, the Betti numbers.
pub fn poincare_truncation(m: &AModule, bound: usize) -> Result<Vec<usize>> {
    let res = FreeResolution::of_module(m, bound)?;
    debug_assert!(res.is_minimal());
    Ok(res.ranks().to_vec())
}

/// `dim Ext^i(k, M)` for `i ⩽ bound`, the Bass numbers.
pub fn bass_truncation(m: &AModule, bound: usize) -> Result<Vec<usize>> {
    let k = AModule::residue_field(m.algebra());
    let res = FreeResolution::of_module(&k, bound + 1)?;
    ext_dims(&res, m, 0, bound as i32)
}

/// Resolutions keyed by the content of the resolved complex.
#[derive(Default)]
pub struct ResolutionCache {
    map: RwLock<HashMap<String, Arc<FreeResolution>>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

/// Content hash of a complex together with its algebra.
pub fn complex_key(c: &ChainComplex) -> String {
    let mut h = Sha256::new();
    h.update(c.algebra().fingerprint().as_bytes());
    h.update(c.lo().to_le_bytes());
    for i in c.lo()..=c.hi() {
        let m = c.module(i);
        h.update((m.dim() as u64).to_le_bytes());
        for a in m.actions() {
            for x in a.data() {
                h.update(x.to_le_bytes());
            }
        }
        for x in c.diff(i).data() {
            h.update(x.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

impl ResolutionCache {
    pub fn new() -> Self {
        ResolutionCache::default()
    }

    /// A resolution of `c` valid through at least `top`.
    pub fn get(&self, c: &ChainComplex, top: i32) -> Result<Arc<FreeResolution>> {
        let key = complex_key(c);
        if let Some(r) = self.map.read().expect("cache lock").get(&key) {
            if r.top() >= top {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return Ok(r.clone());
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let existing = self.map.read().expect("cache lock").get(&key).cloned();
        let res = match existing {
            Some(r) => {
                let mut r = (*r).clone();
                r.extend_to(top)?;
                r
            }
            None => FreeResolution::new(c, top)?,
        };
        let res = Arc::new(res);
        self.map.write().expect("cache lock").insert(key, res.clone());
        Ok(res)
    }

    pub fn get_module(&self, m: &AModule, bound: usize) -> Result<Arc<FreeResolution>> {
        self.get(&ChainComplex::from_module(m, 0), bound as i32)
    }

    /// `(hits, misses)`.
    pub fn stats(&self) -> (usize, usize) {
        (self.hits.load(Ordering::Relaxed), self.misses.load(Ordering::Relaxed))
    }
}
