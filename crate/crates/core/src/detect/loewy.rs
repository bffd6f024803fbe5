use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::LocalAlgebra;
use crate::derived::{ext_dims, tor_dim, FreeResolution};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{hom_module, tensor_module, AModule, ModuleMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Loewy3Branch {
    /// `m² = 0`.
    SquareZero,
    /// `ℓ(m²) = 1`.
    SquareLengthOne,
    /// `ℓ(m²) = 2`, the case of the inequality chain.
    SquareLengthTwo,
    /// `ℓ(m²) ≥ 3`.
    SquareLengthLarger,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// `lhs_label = lhs (relation) rhs = rhs_label`, with `relation` one of `=`, `>=`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub lhs_label: String,
    pub lhs: usize,
    pub relation: String,
    pub rhs_label: String,
    pub rhs: usize,
    pub holds: bool,
}

/// Every length entering the argument for `m³ = 0`, computed unconditionally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loewy3Report {
    pub length: usize,
    pub edim: usize,
    pub square_length: usize,
    pub socle_dim: usize,
    pub square_is_socle: bool,
    pub branch: Loewy3Branch,
    pub gorenstein: bool,
    /// `ℓ(D/mD)`, the rank of the free cover `F → D`.
    pub cover_rank: usize,
    /// `C = ker(F → D)`.
    pub kernel_dim: usize,
    pub kernel_generators: usize,
    pub kernel_killed_by_maxideal: bool,
    pub tor1_dd: usize,
    pub kernel_tensor_dual_dim: usize,
    pub hom_dd_dim: usize,
    pub ext1_d_a: usize,
    pub ext2_d_a: usize,
    pub ext1_c_a: usize,
    pub ext2_c_a: usize,
    pub ext2_k_a: usize,
    pub steps: Vec<StepCheck>,
    /// Present when `m² ≠ 0`; evaluated with the first generator outside the socle.
    pub chain: Option<Vec<ChainLink>>,
    /// Names of the steps and links that fail.
    pub failed: Vec<String>,
}

/// `(ℓ((0:x)_M), ℓ(M/xM))`; the two agree for every finite-length `M`.
pub fn colon_length_identity(m: &AModule, x: &[u32]) -> (usize, usize) {
    (m.colon(x).dim(), m.dim() - m.image_of(x).dim())
}

/// The minimal free cover `A^r → D` and its kernel.
fn free_cover_kernel(d: &AModule) -> Result<(usize, AModule)> {
    let a = d.algebra();
    let gens = d.minimal_generators();
    let n = a.dim();
    let cols: Vec<Vec<u32>> = gens.iter().flat_map(|g| (0..n).map(move |b| d.action(b).apply(g))).collect();
    let f = AModule::free(a, gens.len());
    let cover = ModuleMap::new(f.clone(), d.clone(), Matrix::from_columns(a.field(), d.dim(), &cols))?;
    if !cover.is_surjective() {
        return Err(Error::Internal("free cover is not surjective".into()));
    }
    Ok((gens.len(), f.submodule(&cover.kernel())?))
}

fn step(name: &str, holds: bool, detail: String) -> StepCheck {
    StepCheck { name: name.into(), holds, detail }
}

fn link(lhs_label: &str, lhs: usize, relation: &str, rhs_label: &str, rhs: usize) -> ChainLink {
    let holds = if relation == "=" { lhs == rhs } else { lhs >= rhs };
    ChainLink { lhs_label: lhs_label.into(), lhs, relation: relation.into(), rhs_label: rhs_label.into(), rhs, holds }
}

/// Replays the argument for algebras with `m³ = 0`, reporting every length
/// and every step, whether or not `Ext¹(D, A)` vanishes.
pub fn loewy3_diagnostic(a: &Arc<LocalAlgebra>) -> Result<Loewy3Report> {
    if a.loewy_length() > 3 {
        return Err(Error::LoewyTooLarge(a.loewy_length()));
    }
    let length = a.dim();
    let edim = a.edim();
    let m2 = a.maxideal_power(2);
    let socle = a.socle();
    let square_length = m2.dim();
    let socle_dim = socle.dim();
    let square_is_socle = m2 == socle;
    let branch = match square_length {
        0 => Loewy3Branch::SquareZero,
        1 => Loewy3Branch::SquareLengthOne,
        2 => Loewy3Branch::SquareLengthTwo,
        _ => Loewy3Branch::SquareLengthLarger,
    };

    let reg = AModule::regular(a);
    let d = AModule::dualizing(a);
    let k = AModule::residue_field(a);
    let (cover_rank, c) = free_cover_kernel(&d)?;
    let kernel_generators = c.num_generators();
    let kernel_killed_by_maxideal = c.maxideal_times().is_zero();

    let res_d = FreeResolution::of_module(&d, 3)?;
    let ext_d = ext_dims(&res_d, &reg, 1, 2)?;
    let tor1_dd = tor_dim(&res_d, &d, 1)?;
    let res_c = FreeResolution::of_module(&c, 3)?;
    let ext_c = ext_dims(&res_c, &reg, 1, 2)?;
    let res_k = FreeResolution::of_module(&k, 3)?;
    let ext2_k_a = ext_dims(&res_k, &reg, 2, 2)?[0];
    let cd = tensor_module(&c, &d)?.module;
    let hom_dd_dim = hom_module(&d, &d)?.module.dim();

    let mut steps = vec![
        step("m^2 = (0:m)", square_is_socle, format!("l(m^2) = {square_length}, l((0:m)) = {socle_dim}")),
        step("l(m^2) <= 2", square_length <= 2, format!("l(m^2) = {square_length}")),
        step("Ext^2(D,A) = Ext^1(C,A)", ext_d[1] == ext_c[0], format!("dims {} and {}", ext_d[1], ext_c[0])),
        step("Tor_1(D,D) = 0", tor1_dd == 0, format!("dim Tor_1(D,D) = {tor1_dd}")),
        step(
            "C (x) D embeds in Tor_1(D,D) + Hom(D,D)",
            cd.dim() <= tor1_dd + hom_dd_dim,
            format!("{} <= {} + {}", cd.dim(), tor1_dd, hom_dd_dim),
        ),
    ];
    match branch {
        Loewy3Branch::SquareZero => {
            steps.push(step("mC = 0", kernel_killed_by_maxideal, format!("dim C = {}", c.dim())));
            steps.push(step("Ext^2(k,A) = 0", ext2_k_a == 0, format!("dim Ext^2(k,A) = {ext2_k_a}")));
        }
        Loewy3Branch::SquareLengthOne => {
            steps.push(step("(0:m) = k", socle_dim == 1, format!("l((0:m)) = {socle_dim}")));
        }
        Loewy3Branch::SquareLengthTwo => {
            steps.push(step("l(C/mC) = l(m/m^2)", kernel_generators == edim, format!("{kernel_generators} vs {edim}")));
            steps.push(step("l(D/mD) = 2", cover_rank == 2, format!("l(D/mD) = {cover_rank}")));
        }
        Loewy3Branch::SquareLengthLarger => {}
    }

    let chain = if square_length == 0 {
        None
    } else {
        let x = a
            .generators()
            .iter()
            .find(|g| !socle.contains(g))
            .cloned()
            .ok_or_else(|| Error::Internal("m^2 != 0 but every generator lies in the socle".into()))?;
        let rx = reg.image_of(&x).dim();
        let (colon_r, _) = colon_length_identity(&reg, &x);
        let (colon_cd, quot_cd) = colon_length_identity(&cd, &x);
        let top_cd = cd.num_generators();
        Some(vec![
            link("1 + l(m/m^2)", 1 + edim, "=", "l(R) - 2", length.saturating_sub(2)),
            link("l(R) - 2", length.saturating_sub(2), ">=", "l(R) - l(Rx)", length - rx),
            link("l(R) - l(Rx)", length - rx, "=", "l((0:x)_R)", colon_r),
            link("l((0:x)_R)", colon_r, ">=", "l((0:x)_{C(x)D})", colon_cd),
            link("l((0:x)_{C(x)D})", colon_cd, "=", "l(C(x)D / x)", quot_cd),
            link("l(C(x)D / x)", quot_cd, ">=", "l(C(x)D / m)", top_cd),
            link("l(C(x)D / m)", top_cd, "=", "l(C/mC) l(D/mD)", kernel_generators * cover_rank),
            link("l(C/mC) l(D/mD)", kernel_generators * cover_rank, "=", "2 l(m/m^2)", 2 * edim),
        ])
    };

    let mut failed: Vec<String> = steps.iter().filter(|s| !s.holds).map(|s| s.name.clone()).collect();
    if let Some(links) = &chain {
        failed.extend(
            links.iter().filter(|l| !l.holds).map(|l| format!("{} {} {}", l.lhs_label, l.relation, l.rhs_label)),
        );
    }
    Ok(Loewy3Report {
        length,
        edim,
        square_length,
        socle_dim,
        square_is_socle,
        branch,
        gorenstein: socle_dim == 1,
        cover_rank,
        kernel_dim: c.dim(),
        kernel_generators,
        kernel_killed_by_maxideal,
        tor1_dd,
        kernel_tensor_dual_dim: cd.dim(),
        hom_dd_dim,
        ext1_d_a: ext_d[0],
        ext2_d_a: ext_d[1],
        ext1_c_a: ext_c[0],
        ext2_c_a: ext_c[1],
        ext2_k_a,
        steps,
        chain,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use crate::modules::{random_maxideal_element, random_module};
    use crate::poly::quotient_algebra_from_text;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(p: u32, ideal: &str) -> Arc<LocalAlgebra> {
        quotient_algebra_from_text(Fp::new(p).unwrap(), ideal, None).unwrap()
    }

    #[test]
    fn gorenstein_branch() {
        let r = loewy3_diagnostic(&alg(2, "x^2, y^2")).unwrap();
        assert_eq!(r.branch, Loewy3Branch::SquareLengthOne);
        assert!(r.gorenstein);
        assert_eq!(r.ext1_d_a, 0);
        assert_eq!(r.cover_rank, 1);
        assert_eq!(r.kernel_dim, 0);
        assert!(r.square_is_socle);
    }

    #[test]
    fn square_zero_branch() {
        let r = loewy3_diagnostic(&alg(3, "x^2, x*y, y^2")).unwrap();
        assert_eq!(r.branch, Loewy3Branch::SquareZero);
        assert!(r.ext1_d_a != 0);
        assert!(r.ext2_k_a != 0);
        assert!(r.kernel_killed_by_maxideal);
        assert!(!r.square_is_socle);
        assert!(r.failed.iter().any(|f| f == "m^2 = (0:m)"));
        assert!(r.chain.is_none());
        // F = A^2 has dimension 6 and D has dimension 3.
        assert_eq!(r.kernel_dim, 3);
        assert_eq!(r.ext2_d_a, r.ext1_c_a);
    }

    #[test]
    fn square_length_two_chain() {
        let a = alg(3, "x^3, y^3, z^3, x*y, x*z, y*z, x^2 - y^2");
        assert_eq!(a.maxideal_power(2).dim(), 2);
        let r = loewy3_diagnostic(&a).unwrap();
        assert_eq!(r.branch, Loewy3Branch::SquareLengthTwo);
        assert!(!r.gorenstein);
        assert!(r.ext1_d_a != 0);
        let chain = r.chain.as_ref().unwrap();
        assert_eq!(chain.len(), 8);
        assert!(chain[2].holds && chain[4].holds && chain[6].holds);
        assert!(!r.failed.is_empty());
    }

    #[test]
    fn loewy_too_large() {
        assert!(matches!(loewy3_diagnostic(&alg(2, "x^4")), Err(Error::LoewyTooLarge(4))));
    }

    #[test]
    fn colon_identity_on_random_modules() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = alg(3, "x^2, y^3");
        for _ in 0..20 {
            let m = random_module(&a, &mut rng, 6);
            let x = random_maxideal_element(&a, &mut rng);
            let (l, r) = colon_length_identity(&m, &x);
            assert_eq!(l, r);
        }
    }
}
