use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{BaseChange, LocalAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};
use crate::poly::{quotient_algebra, Monomial, MultiPoly};

const VARIABLES: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    MonomialEnumerate,
    RandomHomogeneous,
    Loewy3Random,
}

/// Which algebras a sweep visits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub nvars: usize,
    #[serde(rename = "char")]
    pub characteristic: u32,
    /// Upper bound on `dim A`; 30 at most.
    pub max_dim: usize,
    /// Power of the maximal ideal added to random homogeneous ideals.
    #[serde(default = "default_degree")]
    pub max_degree: u32,
    /// Number of random forms; drawn per sample when absent.
    #[serde(default)]
    pub forms: Option<usize>,
    /// Number of random samples.
    #[serde(default)]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_degree() -> u32 {
    3
}

pub const MAX_ALGEBRA_DIM: usize = 30;

impl GeneratorSpec {
    pub fn monomial(nvars: usize, characteristic: u32, max_dim: usize) -> Self {
        GeneratorSpec {
            family: Family::MonomialEnumerate,
            nvars,
            characteristic,
            max_dim,
            max_degree: default_degree(),
            forms: None,
            samples: 0,
            seed: 0,
        }
    }

    pub fn loewy3(nvars: usize, characteristic: u32, samples: usize, seed: u64) -> Self {
        GeneratorSpec {
            family: Family::Loewy3Random,
            nvars,
            characteristic,
            max_dim: MAX_ALGEBRA_DIM,
            max_degree: 3,
            forms: None,
            samples,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nvars == 0 || self.nvars > VARIABLES.len() {
            return Err(Error::InvalidAlgebra(format!("variable count {} outside 1..=4", self.nvars)));
        }
        if self.family == Family::MonomialEnumerate && self.nvars > 3 {
            return Err(Error::InvalidAlgebra("monomial enumeration supports at most 3 variables".into()));
        }
        if self.max_dim > MAX_ALGEBRA_DIM {
            return Err(Error::InvalidAlgebra(format!("dimension cap {} exceeds {MAX_ALGEBRA_DIM}", self.max_dim)));
        }
        if self.family == Family::RandomHomogeneous && self.max_degree < 2 {
            return Err(Error::InvalidAlgebra("homogeneous family needs max_degree >= 2".into()));
        }
        Fp::new(self.characteristic)?;
        Ok(())
    }
}

/// How an instance was produced; enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Family,
    pub index: usize,
    pub seed: Option<u64>,
    pub variables: Vec<String>,
    pub ideal: String,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: Arc<LocalAlgebra>,
    pub provenance: Provenance,
}

fn variables(n: usize) -> Vec<String> {
    VARIABLES[..n].iter().map(|s| s.to_string()).collect()
}

fn format_ideal(gens: &[MultiPoly], vars: &[String]) -> String {
    gens.iter().map(|g| g.format(vars)).collect::<Vec<_>>().join(", ")
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - a) {
            rest.0.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// All finite down-closed sets of exponent vectors in `n` variables with at
/// most `cap` elements that contain every variable.
pub fn staircases(n: usize, cap: usize) -> Vec<BTreeSet<Vec<u32>>> {
    let mut seen: HashSet<BTreeSet<Vec<u32>>> = HashSet::new();
    let mut start = BTreeSet::new();
    start.insert(vec![0; n]);
    let mut stack = vec![start.clone()];
    seen.insert(start);
    while let Some(s) = stack.pop() {
        if s.len() == cap {
            continue;
        }
        let mut corners = BTreeSet::new();
        for e in &s {
            for i in 0..n {
                let mut c = e.clone();
                c[i] += 1;
                if !s.contains(&c) && (0..n).all(|j| c[j] == 0 || s.contains(&lower(&c, j))) {
                    corners.insert(c);
                }
            }
        }
        for c in corners {
            let mut t = s.clone();
            t.insert(c);
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().filter(|s| (0..n).all(|i| s.contains(&unit(n, i)))).collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn lower(c: &[u32], j: usize) -> Vec<u32> {
    let mut d = c.to_vec();
    d[j] -= 1;
    d
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(s: &BTreeSet<Vec<u32>>, perms: &[Vec<usize>]) -> BTreeSet<Vec<u32>> {
    perms
        .iter()
        .map(|p| s.iter().map(|e| p.iter().map(|&i| e[i]).collect()).collect::<BTreeSet<Vec<u32>>>())
        .min()
        .expect("at least one permutation")
}

/// Minimal monomial generators of the ideal whose complement is `s`.
fn staircase_generators(s: &BTreeSet<Vec<u32>>, n: usize) -> Vec<Vec<u32>> {
    let mut gens = BTreeSet::new();
    for e in s {
        for i in 0..n {
            let mut c = e.clone();
            c[i] += 1;
            if !s.contains(&c) && (0..n).all(|j| c[j] == 0 || s.contains(&lower(&c, j))) {
                gens.insert(c);
            }
        }
    }
    gens.into_iter().collect()
}

/// Quotients by `m`-primary monomial ideals contained in `m²`, up to permutation of the variables.
pub fn enumerate_monomial_algebras(spec: &GeneratorSpec) -> Result<Vec<Instance>> {
    spec.validate()?;
    let n = spec.nvars;
    let field = Fp::new(spec.characteristic)?;
    let vars = variables(n);
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for s in staircases(n, spec.max_dim) {
        classes.insert(canonical(&s, &perms));
    }
    let mut classes: Vec<_> = classes.into_iter().collect();
    classes.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    classes
        .into_iter()
        .enumerate()
        .map(|(index, s)| {
            let gens: Vec<MultiPoly> =
                staircase_generators(&s, n).into_iter().map(|e| MultiPoly::monomial(field, Monomial(e), 1)).collect();
            let algebra = quotient_algebra(&gens, &vars)?;
            Ok(Instance {
                algebra,
                provenance: Provenance {
                    family: Family::MonomialEnumerate,
                    index,
                    seed: None,
                    variables: vars.clone(),
                    ideal: format_ideal(&gens, &vars),
                },
            })
        })
        .collect()
}

/// Per-sample generator, independent of every other sample.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_form<R: Rng>(field: Fp, monomials: &[Monomial], rng: &mut R) -> MultiPoly {
    let p = field.characteristic();
    let terms = monomials.iter().map(|m| (m.clone(), rng.gen_range(0..p))).collect();
    MultiPoly::from_terms(field, monomials[0].nvars(), terms)
}

fn power_of_maxideal(field: Fp, n: usize, d: u32) -> Vec<MultiPoly> {
    monomials_of_degree(n, d).into_iter().map(|m| MultiPoly::monomial(field, m, 1)).collect()
}

/// `k[x_1..x_n] / ((x)^3 + span of random quadrics)`.
pub fn random_loewy3(spec: &GeneratorSpec, index: usize) -> Result<Instance> {
    spec.validate()?;
    let mut rng = sample_rng(spec.seed, index);
    random_truncated(spec, index, 3, &mut rng, Family::Loewy3Random)
}

/// `k[x_1..x_n] / ((x)^D + random forms of degrees 2..D-1)` with `D = max_degree`.
pub fn random_homogeneous(spec: &GeneratorSpec, index: usize) -> Result<Instance> {
    spec.validate()?;
    let mut rng = sample_rng(spec.seed, index);
    random_truncated(spec, index, spec.max_degree, &mut rng, Family::RandomHomogeneous)
}

fn random_truncated<R: Rng>(
    spec: &GeneratorSpec,
    index: usize,
    top: u32,
    rng: &mut R,
    family: Family,
) -> Result<Instance> {
    let n = spec.nvars;
    let field = Fp::new(spec.characteristic)?;
    let vars = variables(n);
    for _ in 0..64 {
        let mut gens = power_of_maxideal(field, n, top);
        let degrees: Vec<u32> = (2..top).collect();
        let count = spec.forms.unwrap_or_else(|| {
            let available: usize = degrees.iter().map(|&d| monomials_of_degree(n, d).len()).sum();
            rng.gen_range(0..=available)
        });
        let mut forms = Vec::new();
        for _ in 0..count {
            if degrees.is_empty() {
                break;
            }
            let d = degrees[rng.gen_range(0..degrees.len())];
            let f = random_form(field, &monomials_of_degree(n, d), rng);
            if !f.is_zero() {
                forms.push(f);
            }
        }
        let ideal = std::iter::once(format!("(x)^{top}"))
            .chain(forms.iter().map(|f| f.format(&vars)))
            .collect::<Vec<_>>()
            .join(", ");
        gens.extend(forms);
        let algebra = quotient_algebra(&gens, &vars)?;
        if algebra.dim() > spec.max_dim || algebra.loewy_length() > top as usize {
            continue;
        }
        return Ok(Instance {
            algebra,
            provenance: Provenance { family, index, seed: Some(spec.seed), variables: vars, ideal },
        });
    }
    Err(Error::RetryExhausted(format!("no sample within dimension {} after 64 draws", spec.max_dim)))
}

/// Every instance the generator describes, in index order.
pub fn generate(spec: &GeneratorSpec) -> Result<Vec<Instance>> {
    match spec.family {
        Family::MonomialEnumerate => enumerate_monomial_algebras(spec),
        Family::Loewy3Random => (0..spec.samples).map(|i| random_loewy3(spec, i)).collect(),
        Family::RandomHomogeneous => (0..spec.samples).map(|i| random_homogeneous(spec, i)).collect(),
    }
}

/// `P ⊗_k B` with `B` supplied, as a free `P`-algebra of rank `dim B`.
pub fn tensor_base_change(p: &Arc<LocalAlgebra>, b: &Arc<LocalAlgebra>) -> Result<BaseChange> {
    if p.field() != b.field() {
        return Err(Error::AlgebraMismatch);
    }
    let field = p.field();
    let (np, nb) = (p.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut mult = vec![vec![vec![0u32; np * nb]; np * nb]; np * nb];
    for i in 0..np {
        for j in 0..nb {
            for k in 0..np {
                for l in 0..nb {
                    let pp = p.product(i, k);
                    let bb = b.product(j, l);
                    let out = &mut mult[idx(i, j)][idx(k, l)];
                    for (s, &x) in pp.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (t, &y) in bb.iter().enumerate() {
                            if y != 0 {
                                out[idx(s, t)] = field.add(out[idx(s, t)], field.mul(x, y));
                            }
                        }
                    }
                }
            }
        }
    }
    let labels = (0..np)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", p.labels()[i], b.labels()[j]))
        .collect();
    let unit = idx(p.unit_index(), b.unit_index());
    let maxideal = (0..np * nb).filter(|&i| i != unit).collect();
    let q = LocalAlgebra::new(field, labels, mult, unit, maxideal)?;
    let cols: Vec<Vec<u32>> = (0..np)
        .map(|i| {
            let mut v = vec![0; np * nb];
            v[idx(i, b.unit_index())] = 1;
            v
        })
        .collect();
    let structure = Matrix::from_columns(field, np * nb, &cols);
    BaseChange::new(p.clone(), q, structure)
}

/// `P[x]/(x^d - sum_{i<d} c_i x^i)` with every `c_i` in the maximal ideal of `P`.
pub fn monic_base_change<R: Rng>(p: &Arc<LocalAlgebra>, d: usize, rng: &mut R) -> Result<BaseChange> {
    let field = p.field();
    let np = p.dim();
    let coeffs: Vec<Vec<u32>> = (0..d).map(|_| crate::modules::random_maxideal_element(p, rng)).collect();
    let idx = |i: usize, j: usize| j * np + i;
    let n = np * d;
    // x^e for e < 2d - 1 expressed as a P-combination of 1, x, ..., x^{d-1}
    let mut powers: Vec<Vec<Vec<u32>>> =
        (0..d).map(|e| (0..d).map(|j| if j == e { p.one() } else { vec![0; np] }).collect()).collect();
    for e in d..2 * d - 1 {
        let prev = &powers[e - 1];
        let mut next = vec![vec![0; np]; d];
        for j in 0..d {
            let shifted = if j == 0 { vec![0; np] } else { prev[j - 1].clone() };
            let top = &prev[d - 1];
            let extra = p.mul(top, &coeffs[j]);
            next[j] = shifted.iter().zip(&extra).map(|(&a, &b)| field.add(a, b)).collect();
        }
        powers.push(next);
    }
    let mut mult = vec![vec![vec![0u32; n]; n]; n];
    for i in 0..np {
        for a in 0..d {
            for k in 0..np {
                for b in 0..d {
                    let base = p.product(i, k);
                    let out = &mut mult[idx(i, a)][idx(k, b)];
                    for (j, c) in powers[a + b].iter().enumerate() {
                        let prod = p.mul(base, c);
                        for (s, &v) in prod.iter().enumerate() {
                            out[idx(s, j)] = field.add(out[idx(s, j)], v);
                        }
                    }
                }
            }
        }
    }
    let labels = (0..d)
        .flat_map(|j| (0..np).map(move |i| (i, j)))
        .map(|(i, j)| match j {
            0 => p.labels()[i].clone(),
            1 => format!("{}·x", p.labels()[i]),
            _ => format!("{}·x^{j}", p.labels()[i]),
        })
        .collect();
    let unit = idx(p.unit_index(), 0);
    let maxideal = (0..n).filter(|&i| i != unit).collect();
    let q = LocalAlgebra::new(field, labels, mult, unit, maxideal)?;
    let cols: Vec<Vec<u32>> = (0..np)
        .map(|i| {
            let mut v = vec![0; n];
            v[idx(i, 0)] = 1;
            v
        })
        .collect();
    BaseChange::new(p.clone(), q, Matrix::from_columns(field, n, &cols))
}

/// A random free base change of `P`: a tensor product with a small random
/// algebra or a monic extension.
pub fn random_base_change<R: Rng>(p: &Arc<LocalAlgebra>, rng: &mut R) -> Result<BaseChange> {
    if rng.gen_bool(0.5) {
        let spec = GeneratorSpec {
            family: Family::Loewy3Random,
            nvars: rng.gen_range(1..=2),
            characteristic: p.field().characteristic(),
            max_dim: 6,
            max_degree: 3,
            forms: None,
            samples: 1,
            seed: rng.gen(),
        };
        let b = random_loewy3(&spec, 0)?.algebra;
        tensor_base_change(p, &b)
    } else {
        monic_base_change(p, rng.gen_range(2..=3), rng)
    }
}
