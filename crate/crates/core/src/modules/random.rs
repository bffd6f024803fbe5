use std::sync::Arc;

use rand::Rng;

use super::AModule;
use crate::algebra::LocalAlgebra;

pub fn random_element<R: Rng>(a: &LocalAlgebra, rng: &mut R) -> Vec<u32> {
    let p = a.field().characteristic();
    (0..a.dim()).map(|_| rng.gen_range(0..p)).collect()
}

pub fn random_maxideal_element<R: Rng>(a: &LocalAlgebra, rng: &mut R) -> Vec<u32> {
    let mut v = random_element(a, rng);
    v[a.unit_index()] = 0;
    v
}

/// A random nonzero module of dimension at most `max_dim`.
///
/// Draws a quotient `A^r / (v_1, …, v_s)` and then, at random, keeps it, passes
/// to a submodule generated by one element, or dualizes.
pub fn random_module<R: Rng>(a: &Arc<LocalAlgebra>, rng: &mut R, max_dim: usize) -> AModule {
    let p = a.field().characteristic();
    loop {
        let r = rng.gen_range(1..=2);
        let free = AModule::free(a, r);
        let s = rng.gen_range(0..=2);
        let rels: Vec<Vec<u32>> = (0..s)
            .map(|_| {
                let mut v: Vec<u32> = (0..free.dim()).map(|_| rng.gen_range(0..p)).collect();
                // keep relations inside m·A^r half of the time so quotients stay larger
                if rng.gen_bool(0.5) {
                    for b in 0..r {
                        v[b * a.dim() + a.unit_index()] = 0;
                    }
                }
                v
            })
            .collect();
        let sub = free.submodule_generated_by(&rels);
        let mut m = free.quotient(&sub).expect("generated subspace is a submodule");
        match rng.gen_range(0..3) {
            0 => {}
            1 if m.dim() > 0 => {
                let x: Vec<u32> = (0..m.dim()).map(|_| rng.gen_range(0..p)).collect();
                let s = m.submodule_generated_by(&[x]);
                m = m.submodule(&s).expect("generated subspace is a submodule");
            }
            _ => m = m.k_dual(),
        }
        if m.dim() > 0 && m.dim() <= max_dim {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use crate::poly::quotient_algebra_from_text;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid() {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2, x*y, y^2", None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_module(&a, &mut rng, 5);
            assert!(m.dim() >= 1 && m.dim() <= 5);
            assert!(AModule::new(a.clone(), m.dim(), m.actions().to_vec()).is_ok());
        }
    }
}
