use std::sync::Arc;

use rand::Rng;

use super::ChainComplex;
use crate::algebra::LocalAlgebra;
use crate::linalg::Matrix;
use crate::modules::{hom_module, random_module, AModule};

/// A uniformly random A-linear map `X → Y`.
pub fn random_module_map<R: Rng>(x: &AModule, y: &AModule, rng: &mut R) -> Matrix {
    let h = hom_module(x, y).expect("modules over one algebra");
    let p = x.algebra().field().characteristic();
    let c: Vec<u32> = (0..h.space.dim()).map(|_| rng.gen_range(0..p)).collect();
    h.matrix(&c)
}

/// Extends `… → M_{lo+1} → M_lo` downward by one term: `M_lo → Coker(∂) → Z`.
fn random_extension<R: Rng>(d_above: Option<&Matrix>, top: &AModule, next: &AModule, rng: &mut R) -> Matrix {
    let f = top.algebra().field();
    match d_above {
        None => random_module_map(top, next, rng),
        Some(d) => {
            let image = d.column_space();
            let coker = top.quotient(&image).expect("image of an A-linear map is a submodule");
            let free = image.free_columns();
            let cols: Vec<Vec<u32>> = (0..top.dim())
                .map(|c| {
                    let mut e = vec![0; top.dim()];
                    e[c] = 1;
                    image.quotient_coords(&e)
                })
                .collect();
            debug_assert_eq!(free.len(), coker.dim());
            let proj = Matrix::from_columns(f, coker.dim(), &cols);
            random_module_map(&coker, next, rng).mul(&proj)
        }
    }
}

/// A random bounded complex with `len` terms starting at `lo`.
pub fn random_complex<R: Rng>(a: &Arc<LocalAlgebra>, rng: &mut R, lo: i32, len: usize, max_dim: usize) -> ChainComplex {
    let modules: Vec<AModule> = (0..len).map(|_| random_module(a, rng, max_dim)).collect();
    build(a, lo, modules, rng)
}

/// A random complex of the shape `D^{a_0} ← … ← D^{a_{len-1}}`, living in degrees
/// `[-(len-1), 0]`, and the multiplicities listed from the lowest degree up.
pub fn random_injective_complex<R: Rng>(
    a: &Arc<LocalAlgebra>,
    rng: &mut R,
    len: usize,
    max_mult: usize,
) -> (ChainComplex, Vec<usize>) {
    let mults: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=max_mult)).collect();
    let d = AModule::dualizing(a);
    // degree 0 first, then -1, …
    let mut modules: Vec<AModule> = mults
        .iter()
        .map(|&m| {
            let parts: Vec<&AModule> = (0..m).map(|_| &d).collect();
            AModule::direct_sum(&parts).expect("nonempty")
        })
        .collect();
    modules.reverse();
    let lo = -(len as i32 - 1);
    let c = build(a, lo, modules, rng);
    let mut m = mults;
    m.reverse();
    (c, m)
}

/// Random differentials from the top down, each factoring through the cokernel
/// of the previous one so that `∂∂ = 0`.
fn build<R: Rng>(a: &Arc<LocalAlgebra>, lo: i32, modules: Vec<AModule>, rng: &mut R) -> ChainComplex {
    let len = modules.len();
    let mut diffs_top_down: Vec<Matrix> = Vec::new();
    for k in (1..len).rev() {
        let d = random_extension(diffs_top_down.last(), &modules[k], &modules[k - 1], rng);
        diffs_top_down.push(d);
    }
    diffs_top_down.reverse();
    ChainComplex::new(a.clone(), lo, modules, diffs_top_down).expect("construction yields a complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use crate::poly::quotient_algebra_from_text;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_complexes() {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2, y^2", None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let c = random_complex(&a, &mut rng, -1, 3, 4);
            assert_eq!((c.lo(), c.hi()), (-1, 1));
            let (j, m) = random_injective_complex(&a, &mut rng, 3, 2);
            assert_eq!((j.lo(), j.hi()), (-2, 0));
            assert_eq!(j.dim(0), m[2] * a.dim());
        }
    }
}
