use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{hom_complex, ChainComplex, HomComplex};
use crate::error::{Error, Result};
use crate::linalg::{subquotient, Matrix, Subquotient, Subspace};

/// Multiplicities `a_j` with `J_j ≅ D^{a_j}`, or `NotInjective`.
///
/// A module is a sum of copies of `D` exactly when its k-dual is free.
pub fn certify_injective(j: &ChainComplex) -> Result<Vec<usize>> {
    let n = j.algebra().dim();
    (j.lo()..=j.hi())
        .map(|deg| {
            let m = j.module(deg);
            let dual = m.k_dual();
            let g = dual.num_generators();
            if g * n == m.dim() {
                Ok(g)
            } else {
                Err(Error::NotInjective(deg))
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub p: i32,
    pub q: i32,
    pub dim: usize,
    /// Representatives in `Hom(G, J)_{p+q}`.
    pub basis: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageDifferential {
    pub p: i32,
    pub q: i32,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Page {
    /// `None` for `E^∞`.
    pub r: Option<usize>,
    pub cells: Vec<Cell>,
    /// `d^r_{pq}: E^r_{pq} → E^r_{p−r, q+r−1}`.
    pub differentials: Vec<PageDifferential>,
}

impl Page {
    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.cells.iter().find(|c| c.p == p && c.q == q).map_or(0, |c| c.dim)
    }

    fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.cells.iter().map(|c| ((c.p, c.q), c.dim)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequencePages {
    pub pages: Vec<Page>,
    pub infinity: Page,
    /// `(n, dim H_n Hom(G, J))`.
    pub abutment: Vec<(i32, usize)>,
    /// `(p, q, dim H_p Hom(H_{−q}(G), J))`.
    pub e2_formula: Vec<(i32, i32, usize)>,
    pub e2_matches: bool,
    /// `Σ_q dim E^∞_{n−q,q} = dim H_n` for every `n`.
    pub converges: bool,
    /// Each page is the homology of the previous one.
    pub pages_consistent: bool,
    /// First `r` with `E^r = E^{r+1}` and all `d^r = 0`.
    pub stable_from: usize,
}

struct Filtered {
    h: HomComplex,
    diffs: BTreeMap<i32, Matrix>,
}

impl Filtered {
    fn new(h: HomComplex) -> Self {
        let c = &h.complex;
        let diffs = (c.lo()..=c.hi() + 1).map(|n| (n, c.diff(n))).collect();
        Filtered { h, diffs }
    }

    fn dim(&self, n: i32) -> usize {
        self.h.complex.dim(n)
    }

    fn diff(&self, n: i32) -> Matrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| self.h.complex.diff(n))
    }

    /// Length of the prefix `F_p Hom(G, J)_n` (blocks with J-degree `⩽ p`).
    fn end(&self, n: i32, p: i32) -> usize {
        self.h.blocks(n).iter().filter(|b| b.target_degree <= p).map(|b| b.hom.space.dim()).sum()
    }

    fn pad(&self, n: i32, s: &Subspace) -> Subspace {
        let d = self.dim(n);
        let f = s.field();
        let vs: Vec<Vec<u32>> = s
            .vectors()
            .into_iter()
            .map(|mut v| {
                v.resize(d, 0);
                v
            })
            .collect();
        Subspace::from_vectors(f, d, &vs)
    }

    /// `Z^r_p = {x ∈ F_p : ∂x ∈ F_{p−r}}` in degree `n`; `r = −1` gives `F_p`.
    fn z(&self, n: i32, p: i32, r: i32) -> Subspace {
        let e = self.end(n, p);
        let d = self.diff(n);
        let low = self.end(n - 1, p - r);
        let sub = d.block(low, 0, d.rows() - low, e);
        self.pad(n, &sub.kernel())
    }

    /// `E^r_p` in degree `n`.
    fn page(&self, n: i32, p: i32, r: i32) -> Subquotient {
        let num = self.z(n, p, r);
        let below = self.z(n, p - 1, r - 1);
        let bd = self.z(n + 1, p + r - 1, r - 1).image_under(&self.diff(n + 1));
        subquotient(&num, &below.sum(&bd)).expect("filtration pages are nested")
    }

    fn infinity(&self, n: i32, p: i32) -> Subquotient {
        let f = self.h.complex.algebra().field();
        let cycles = self.diff(n).kernel();
        let fp = Subspace::coordinate(f, self.dim(n), &(0..self.end(n, p)).collect::<Vec<_>>());
        let fp1 = Subspace::coordinate(f, self.dim(n), &(0..self.end(n, p - 1)).collect::<Vec<_>>());
        let bd = self.diff(n + 1).column_space();
        let num = fp.intersection(&cycles);
        let den = fp1.intersection(&cycles).sum(&fp.intersection(&bd));
        subquotient(&num, &den).expect("boundaries are cycles")
    }
}

/// The spectral sequence of `Hom(G, J)` filtered by `J_{⩽p}`.
pub fn spectral_sequence(g: &ChainComplex, j: &ChainComplex) -> Result<SpectralSequencePages> {
    certify_injective(j)?;
    let h = hom_complex(g, j)?;
    let total = h.complex.clone();
    let fl = Filtered::new(h);
    let (nlo, nhi) = (total.lo(), total.hi());
    let (plo, phi) = (j.lo(), j.hi());
    let width = (phi - plo + 1).max(1);
    let last_r = width + 1;

    let mut pages = Vec::new();
    let mut cached: BTreeMap<(i32, i32, i32), Subquotient> = BTreeMap::new();
    let mut get =
        |n: i32, p: i32, r: i32| -> Subquotient { cached.entry((n, p, r)).or_insert_with(|| fl.page(n, p, r)).clone() };
    for r in 0..=last_r {
        let mut cells = Vec::new();
        let mut differentials = Vec::new();
        for n in nlo..=nhi {
            for p in plo..=phi {
                let e = get(n, p, r);
                if e.dim() > 0 {
                    cells.push(Cell { p, q: n - p, dim: e.dim(), basis: e.representatives() });
                }
                let tgt = get(n - 1, p - r, r);
                if e.dim() > 0 && tgt.dim() > 0 {
                    let d = fl.diff(n);
                    let cols: Vec<Vec<u32>> = e.representatives().iter().map(|x| tgt.coords(&d.apply(x))).collect();
                    let rank = Matrix::from_columns(total.algebra().field(), tgt.dim(), &cols).rank();
                    if rank > 0 {
                        differentials.push(PageDifferential { p, q: n - p, rank });
                    }
                }
            }
        }
        pages.push(Page { r: Some(r as usize), cells, differentials });
    }

    let mut cells = Vec::new();
    for n in nlo..=nhi {
        for p in plo..=phi {
            let e = fl.infinity(n, p);
            if e.dim() > 0 {
                cells.push(Cell { p, q: n - p, dim: e.dim(), basis: e.representatives() });
            }
        }
    }
    let infinity = Page { r: None, cells, differentials: Vec::new() };

    let mut pages_consistent = true;
    for w in pages.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        let r = cur.r.unwrap_or(0) as i32;
        let rank = |p: i32, q: i32| cur.differentials.iter().find(|d| d.p == p && d.q == q).map_or(0, |d| d.rank);
        for n in nlo..=nhi {
            for p in plo..=phi {
                let q = n - p;
                let out = rank(p, q);
                let inc = rank(p + r, q - r + 1);
                if cur.dim(p, q) as i64 - out as i64 - inc as i64 != next.dim(p, q) as i64 {
                    pages_consistent = false;
                }
            }
        }
    }
    let last = pages.last().expect("at least one page");
    if last.dims() != infinity.dims() {
        pages_consistent = false;
    }
    let stable_from = (0..pages.len())
        .find(|&k| pages[k..].iter().all(|pg| pg.differentials.is_empty() && pg.dims() == pages[k].dims()))
        .unwrap_or(pages.len());

    let abutment: Vec<(i32, usize)> = (nlo..=nhi).map(|n| (n, total.homology_dim(n))).collect();
    let converges = abutment.iter().all(|&(n, d)| (plo..=phi).map(|p| infinity.dim(p, n - p)).sum::<usize>() == d);

    let mut e2_formula = Vec::new();
    let mut e2_matches = true;
    for gq in g.lo()..=g.hi() {
        let q = -gq;
        let x = g.homology_module(gq);
        let c = hom_complex(&ChainComplex::from_module(&x, 0), j)?;
        for p in plo..=phi {
            let d = c.complex.homology_dim(p);
            if d != pages[2.min(pages.len() - 1)].dim(p, q) {
                e2_matches = false;
            }
            e2_formula.push((p, q, d));
        }
    }
    // cells outside the G range must vanish on page 2
    if pages.len() > 2 {
        for c in &pages[2].cells {
            if -c.q < g.lo() || -c.q > g.hi() {
                e2_matches = false;
            }
        }
    }

    Ok(SpectralSequencePages {
        pages,
        infinity,
        abutment,
        e2_formula,
        e2_matches,
        converges,
        pages_consistent,
        stable_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{random_complex, random_injective_complex};
    use crate::linalg::Fp;
    use crate::modules::AModule;
    use crate::poly::quotient_algebra_from_text;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_cell() {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2, x*y, y^2", None).unwrap();
        let g = ChainComplex::from_module(&AModule::residue_field(&a), 0);
        let j = ChainComplex::from_module(&AModule::dualizing(&a), 0);
        let s = spectral_sequence(&g, &j).unwrap();
        assert_eq!(s.pages[2].dim(0, 0), 1);
        assert_eq!(s.infinity.dim(0, 0), 1);
        assert!(s.e2_matches && s.converges && s.pages_consistent);
    }

    #[test]
    fn zero_differentials_degenerate() {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2, y^2", None).unwrap();
        let k = AModule::residue_field(&a);
        let g = ChainComplex::new(
            a.clone(),
            0,
            vec![k.clone(), AModule::regular(&a)],
            vec![Matrix::zeros(a.field(), 1, 4)],
        )
        .unwrap();
        let j = ChainComplex::from_module(&AModule::dualizing(&a), 0);
        let s = spectral_sequence(&g, &j).unwrap();
        assert_eq!(s.pages[2].dims(), s.infinity.dims());
        assert!(s.e2_matches && s.converges);
    }

    #[test]
    fn rejects_non_injective() {
        let a = quotient_algebra_from_text(Fp::new(3).unwrap(), "x^2, x*y, y^2", None).unwrap();
        let g = ChainComplex::from_module(&AModule::residue_field(&a), 0);
        let j = ChainComplex::from_module(&AModule::regular(&a), 0);
        assert!(matches!(spectral_sequence(&g, &j), Err(Error::NotInjective(0))));
    }

    #[test]
    fn random_pairs() {
        let a = quotient_algebra_from_text(Fp::new(2).unwrap(), "x^2, x*y, y^2", None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let g = random_complex(&a, &mut rng, 0, 2, 3);
            let (j, _) = random_injective_complex(&a, &mut rng, 2, 2);
            let s = spectral_sequence(&g, &j).unwrap();
            assert!(s.e2_matches, "E2");
            assert!(s.converges, "convergence");
            assert!(s.pages_consistent, "pages");
        }
    }
}
