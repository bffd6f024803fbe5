use serde::Serialize;

use super::functors::{ext_dims, tor_complexes, tor_dim};
use super::spectral::certify_injective;
use super::FreeResolution;
use crate::complex::{hom_complex, tensor_complex, ChainComplex, ComplexMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{hom_module, AModule};

/// Sign attached to the component `E_h ⊗ J_i → Hom(G_{−h}, J_i)` of `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EvaluationSign {
    /// `(−1)^{|γ||y|} = (−1)^{hi}`.
    GammaY,
    /// `(−1)^{ni}` with `n = h + i`.
    TotalDegree,
    /// `(−1)^{|x|(|y|+1)} = (−1)^{h(i+1)}`, the rule that commutes with the
    /// Hom and tensor differentials used here.
    Corrected,
}

impl EvaluationSign {
    fn exponent(self, h: i32, i: i32) -> i64 {
        match self {
            EvaluationSign::GammaY => (h as i64) * (i as i64),
            EvaluationSign::TotalDegree => ((h + i) as i64) * (i as i64),
            EvaluationSign::Corrected => (h as i64) * (i as i64 + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvaluationMap {
    /// `θ: E ⊗ J → Hom(Hom(E, A), J)`.
    pub map: ComplexMap,
    pub sign: EvaluationSign,
    pub is_chain_map: bool,
    pub bijective: bool,
}

/// `θ(x ⊗ y) = (γ ↦ ± γ(x) y)` with the given sign rule.
pub fn evaluation_map_with(e: &ChainComplex, j: &ChainComplex, sign: EvaluationSign) -> Result<EvaluationMap> {
    let a = e.algebra().clone();
    let f = a.field();
    let areg = ChainComplex::from_module(&AModule::regular(&a), 0);
    let gh = hom_complex(e, &areg)?;
    let g = gh.complex.clone();
    let t = tensor_complex(e, j)?;
    let hj = hom_complex(&g, j)?;
    let src = t.complex.clone();
    let lo = src.lo().min(hj.complex.lo());
    let hi = src.hi().max(hj.complex.hi());
    let mut maps = Vec::new();
    for n in lo..=hi {
        let rows = hj.complex.dim(n);
        let mut cols = Vec::new();
        for (h, u, v) in t.basis_pairs(n) {
            let i = n - h;
            let mut col = vec![0; rows];
            if let Some(gb) = gh.block(-h, h) {
                let s = f.sign(sign.exponent(h, i));
                let jm = j.module(i);
                let evals: Vec<Vec<u32>> = gb
                    .hom
                    .basis_matrices()
                    .iter()
                    .map(|gamma| {
                        let gx = gamma.column(u);
                        let mut y = vec![0; jm.dim()];
                        y[v] = 1;
                        jm.action_of(&gx).apply(&y).into_iter().map(|c| f.mul(c, s)).collect()
                    })
                    .collect();
                let m = Matrix::from_columns(f, jm.dim(), &evals);
                if let Some(c) = hj.element(n, &[(-h, m)]) {
                    col = c;
                }
            }
            cols.push(col);
        }
        maps.push(Matrix::from_columns(f, rows, &cols));
    }
    let map = ComplexMap::new_unchecked(src, hj.complex.clone(), lo, maps);
    let is_chain_map = map.commutes();
    let bijective = map.is_bijective();
    Ok(EvaluationMap { map, sign, is_chain_map, bijective })
}

/// `θ` under the first sign rule, in the order `GammaY`, `TotalDegree`,
/// `Corrected`, that gives a morphism of complexes.
pub fn evaluation_map(e: &ChainComplex, j: &ChainComplex) -> Result<EvaluationMap> {
    let mut first = None;
    for sign in [EvaluationSign::GammaY, EvaluationSign::TotalDegree, EvaluationSign::Corrected] {
        let t = evaluation_map_with(e, j, sign)?;
        if t.is_chain_map {
            return Ok(t);
        }
        first.get_or_insert(t);
    }
    Ok(first.expect("three attempts"))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeVerdict {
    pub degree: i32,
    pub left: usize,
    pub right: usize,
    pub iso: bool,
}

/// `H_i(ϑ): H_i(E ⊗ J) → H_i Hom(N*, J)` for `i ⩽ m + inf J`, where `E` resolves `N`.
///
/// Checks `Ext^i(N, A) = 0` for `i ∈ [1, m]` first.
pub fn vartheta_comparison(n: &AModule, j: &ChainComplex, m: usize) -> Result<Vec<DegreeVerdict>> {
    certify_injective(j)?;
    let (jinf, jsup) = j.support().ok_or_else(|| Error::InvalidComplex("J is zero".into()))?;
    if jsup != 0 {
        return Err(Error::InvalidComplex(format!("sup J = {jsup}, expected 0")));
    }
    let a = n.algebra().clone();
    let f = a.field();
    let top = m as i32 + 2;
    let res = FreeResolution::of_module(n, top as usize)?;
    if m >= 1 {
        let ext = ext_dims(&res, &AModule::regular(&a), 1, m as i32)?;
        if let Some(k) = ext.iter().position(|&d| d != 0) {
            return Err(Error::HypothesisFailed { degree: k + 1 });
        }
    }
    let e = res.to_complex(top);
    let t = tensor_complex(&e, j)?;
    let dual = hom_module(n, &AModule::regular(&a))?;
    let x = hom_complex(&ChainComplex::from_module(&dual.module, 0), j)?;
    let eps = res.augmentation_matrix(0);
    let psis = dual.basis_matrices();
    let src = t.complex.clone();
    let lo = src.lo().min(x.complex.lo());
    let hi = src.hi().max(x.complex.hi());
    let mut maps = Vec::new();
    for d in lo..=hi {
        let rows = x.complex.dim(d);
        let jm = j.module(d);
        let mut cols = Vec::new();
        for (h, u, v) in t.basis_pairs(d) {
            let mut col = vec![0; rows];
            if h == 0 && jm.dim() > 0 {
                let ex = eps.column(u);
                let evals: Vec<Vec<u32>> = psis
                    .iter()
                    .map(|psi| {
                        let mut y = vec![0; jm.dim()];
                        y[v] = 1;
                        jm.action_of(&psi.apply(&ex)).apply(&y)
                    })
                    .collect();
                let mm = Matrix::from_columns(f, jm.dim(), &evals);
                if let Some(c) = x.element(d, &[(0, mm)]) {
                    col = c;
                }
            }
            cols.push(col);
        }
        maps.push(Matrix::from_columns(f, rows, &cols));
    }
    let map = ComplexMap::new_unchecked(src.clone(), x.complex.clone(), lo, maps);
    if !map.commutes() {
        return Err(Error::Internal("ϑ is not a morphism of complexes".into()));
    }
    Ok((jinf..=m as i32 + jinf)
        .map(|i| {
            let hm = map.homology_map(i);
            let (left, right) = (src.homology_dim(i), x.complex.homology_dim(i));
            DegreeVerdict { degree: i, left, right, iso: left == right && hm.rank() == left }
        })
        .collect())
}

/// `Tor_i(L, M)` against `Ext^{−i}(L*, M)` for `i ∈ [0, m]` with `M` injective.
pub fn tor_ext_window(l: &AModule, m_inj: &AModule, m: usize) -> Result<Vec<DegreeVerdict>> {
    let j = ChainComplex::from_module(m_inj, 0);
    let v = vartheta_comparison(l, &j, m)?;
    Ok(v.into_iter().filter(|d| d.degree >= 0).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeShift {
    pub l: i32,
    pub m: i32,
    pub degree: i32,
    pub left: usize,
    pub right: usize,
}

/// `dim Tor_i(L, M)` and `dim Tor_{i−l−m}(L′, M′)` with `L′ = E_l / ∂E_{l+1}`,
/// `M′ = F_m / ∂F_{m+1}`.
pub fn degree_shift_dims(l: &ChainComplex, m: &ChainComplex, i: i32) -> Result<DegreeShift> {
    let (_, ls) = l.homology_support().ok_or_else(|| Error::InvalidComplex("L is acyclic".into()))?;
    let (_, ms) = m.homology_support().ok_or_else(|| Error::InvalidComplex("M is acyclic".into()))?;
    if i <= ls + ms {
        return Err(Error::InvalidComplex(format!("degree {i} is not above sup H(L) + sup H(M) = {}", ls + ms)));
    }
    let el = FreeResolution::new(l, (i + 1 - m.lo()).max(ls + 1))?;
    let left = tor_complexes(&el, m, i)?;
    let fm = FreeResolution::new(m, ms + 1)?;
    let lp = el.cokernel_module(ls)?;
    let mp = fm.cokernel_module(ms)?;
    let j = i - ls - ms;
    let rl = FreeResolution::of_module(&lp, (j + 1) as usize)?;
    let right = tor_dim(&rl, &mp, j)?;
    Ok(DegreeShift { l: ls, m: ms, degree: i, left, right })
}

pub fn degree_shift_check(l: &ChainComplex, m: &ChainComplex, i: i32) -> Result<bool> {
    let d = degree_shift_dims(l, m, i)?;
    Ok(d.left == d.right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{random_complex, random_injective_complex};
    use crate::linalg::Fp;
    use crate::poly::quotient_algebra_from_text;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn alg(p: u32, ideal: &str) -> Arc<crate::algebra::LocalAlgebra> {
        quotient_algebra_from_text(Fp::new(p).unwrap(), ideal, None).unwrap()
    }

    #[test]
    fn theta_examples() {
        let a = alg(3, "x^2");
        let d = ChainComplex::from_module(&AModule::dualizing(&a), 0);
        let e = ChainComplex::from_module(&AModule::free(&a, 2), 0);
        let t = evaluation_map(&e, &d).unwrap();
        assert!(t.is_chain_map && t.bijective);
        assert_eq!(t.sign, EvaluationSign::GammaY);
        let k = AModule::residue_field(&a);
        let res = FreeResolution::of_module(&k, 3).unwrap();
        let t = evaluation_map(&res.to_complex(3), &d).unwrap();
        assert!(t.is_chain_map && t.bijective);
    }

    /// With `J = D[0]` every literal sign is `+1`, yet `θ∂ = −∂θ` on `E_h ⊗ J_0`
    /// for odd shifts; only the corrected rule commutes.
    #[test]
    fn theta_sign_rules() {
        let a = alg(3, "x^2, y^2");
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let k = AModule::residue_field(&a);
        let e = FreeResolution::of_module(&k, 2).unwrap().to_complex(2);
        let d = ChainComplex::from_module(&AModule::dualizing(&a), 0);
        let (j, _) = random_injective_complex(&a, &mut rng, 2, 1);
        for jj in [&d, &j] {
            let gy = evaluation_map_with(&e, jj, EvaluationSign::GammaY).unwrap();
            let td = evaluation_map_with(&e, jj, EvaluationSign::TotalDegree).unwrap();
            let co = evaluation_map_with(&e, jj, EvaluationSign::Corrected).unwrap();
            assert!(!gy.is_chain_map && !td.is_chain_map);
            assert!(co.is_chain_map);
            assert!(gy.bijective && td.bijective && co.bijective);
        }
        assert_eq!(evaluation_map(&e, &j).unwrap().sign, EvaluationSign::Corrected);
    }

    #[test]
    fn vartheta_examples() {
        let a = alg(3, "x^2, y^2");
        let j = ChainComplex::from_module(&AModule::dualizing(&a), 0);
        for v in vartheta_comparison(&AModule::regular(&a), &j, 3).unwrap() {
            assert!(v.iso);
        }
        for v in vartheta_comparison(&AModule::dualizing(&a), &j, 2).unwrap() {
            assert!(v.iso);
        }
        let b = alg(3, "x^2, x*y, y^2");
        let jb = ChainComplex::from_module(&AModule::dualizing(&b), 0);
        assert!(matches!(
            vartheta_comparison(&AModule::residue_field(&b), &jb, 2),
            Err(Error::HypothesisFailed { degree: 1 })
        ));
    }

    #[test]
    fn vartheta_random_injective_targets() {
        let a = alg(2, "x^2, y^2");
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..3 {
            let (j, _) = random_injective_complex(&a, &mut rng, 2, 2);
            if j.support().map(|s| s.1) != Some(0) {
                continue;
            }
            // over a Gorenstein ring every Ext^{>0}(N, A) vanishes for N = A^r
            let n = AModule::free(&a, 1);
            for v in vartheta_comparison(&n, &j, 2).unwrap() {
                assert!(v.iso, "{v:?}");
            }
        }
    }

    #[test]
    fn degree_shift_examples() {
        let a = alg(3, "x^2");
        let k = AModule::residue_field(&a);
        let sk = ChainComplex::from_module(&k, 1);
        let d = degree_shift_dims(&sk, &sk, 3).unwrap();
        assert_eq!((d.left, d.right), (1, 1));
        let km = ChainComplex::from_module(&k, 0);
        for i in 1..=3 {
            assert!(degree_shift_check(&km, &km, i).unwrap());
        }
        let b = alg(3, "x^2, y^2");
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let l = random_complex(&b, &mut rng, 0, 2, 3);
            let m = random_complex(&b, &mut rng, 0, 2, 3);
            let (Some((_, ls)), Some((_, ms))) = (l.homology_support(), m.homology_support()) else { continue };
            for i in ls + ms + 1..=ls + ms + 3 {
                assert!(degree_shift_check(&l, &m, i).unwrap(), "degree {i}");
            }
        }
    }
}
