use std::sync::Arc;

use crate::algebra::LocalAlgebra;
use crate::linalg::Matrix;
use crate::modules::AModule;

use super::ChainComplex;

/// Sorted `j`-subsets of `0..e` in lexicographic order.
fn subsets(e: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, e: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for s in start..e {
            cur.push(s);
            rec(s + 1, e, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, e, j, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex on a minimal generating set of `m`.
///
/// `K_j = ⋀^j A^e` on basis `e_S`, `∂ e_S = Σ_t (−1)^t x_{s_t} e_{S ∖ s_t}`.
pub fn koszul_complex(a: &Arc<LocalAlgebra>) -> ChainComplex {
    let f = a.field();
    let n = a.dim();
    let gens = a.generators();
    let e = gens.len();
    let mult: Vec<Matrix> = gens.iter().map(|g| a.left_matrix_of(g)).collect();
    let levels: Vec<Vec<Vec<usize>>> = (0..=e).map(|j| subsets(e, j)).collect();
    let modules = levels.iter().map(|s| AModule::free(a, s.len())).collect();
    let mut diffs = Vec::new();
    for j in 1..=e {
        let (src, tgt) = (&levels[j], &levels[j - 1]);
        let mut d = Matrix::zeros(f, tgt.len() * n, src.len() * n);
        for (si, s) in src.iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let x = rest.remove(t);
                let ti = tgt.binary_search(&rest).expect("faces of a subset are subsets");
                let block = mult[x].scale(f.sign(t as i64));
                let mut cur = d.block(ti * n, si * n, n, n);
                cur.add_scaled(&block, 1);
                d.set_block(ti * n, si * n, &cur);
            }
        }
        diffs.push(d);
    }
    ChainComplex::new_unchecked(a.clone(), 0, modules, diffs)
}

/// `dim_k H_j(K)` for `j = 0..=edim`.
pub fn koszul_homology_ranks(a: &Arc<LocalAlgebra>) -> Vec<usize> {
    let k = koszul_complex(a);
    (0..=a.edim() as i32).map(|j| k.homology_dim(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use crate::poly::quotient_algebra_from_text;

    fn ranks(p: u32, ideal: &str) -> Vec<usize> {
        koszul_homology_ranks(&quotient_algebra_from_text(Fp::new(p).unwrap(), ideal, None).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(ranks(5, "x^2, x*y, y^2"), vec![1, 3, 2]);
        // complete intersections: exterior algebra on the relations
        assert_eq!(ranks(3, "x^2, y^2"), vec![1, 2, 1]);
        assert_eq!(ranks(2, "x^3"), vec![1, 1]);
        assert_eq!(ranks(7, "x^2, y^2, z^2"), vec![1, 3, 3, 1]);
    }

    #[test]
    fn is_a_complex() {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2, y^2 - x*z, z^3, x*y", None).unwrap();
        let k = koszul_complex(&a);
        assert!(ChainComplex::new(
            a.clone(),
            0,
            (0..=k.hi()).map(|i| k.module(i)).collect(),
            (1..=k.hi()).map(|i| k.diff(i)).collect()
        )
        .is_ok());
        assert_eq!(k.homology_dim(0), 1);
    }
}
