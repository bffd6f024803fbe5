use super::field::Fp;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A subspace of `F_p^n` stored by its reduced row-echelon basis.
///
/// The basis is canonical, so two `Subspace`s are equal exactly when they are
/// the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Subspace::from_matrix_rows(&Matrix::from_row_vectors(field, ambient, vectors))
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let r = m.rref();
        Subspace { ambient: m.cols(), basis: r.matrix, pivots: r.pivots }
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(field: Fp, ambient: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let vectors: Vec<Vec<u32>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient];
                v[i] = 1 % field.characteristic();
                v
            })
            .collect();
        Subspace::from_vectors(field, ambient, &vectors)
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vectors()
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field();
        let p = f.characteristic();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                if b != 0 {
                    *o = f.mul_add(*o, neg, b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Coordinates without the membership check.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let f = self.field();
        let mut out = vec![0u32; self.ambient];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                if b != 0 {
                    *o = f.mul_add(*o, c, b);
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_matrix_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x in both iff x = a·B1 = b·B2, i.e. (a, -b) in the left kernel of [B1; B2]
        let stacked = self.basis.vstack(&other.basis);
        let left = stacked.transpose().kernel();
        let f = self.field();
        let vectors: Vec<Vec<u32>> = left.vectors().iter().map(|c| self.combine(&c[..self.dim()])).collect();
        Subspace::from_vectors(f, self.ambient, &vectors)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vectors: Vec<Vec<u32>> = (0..self.dim()).map(|i| m.apply(self.basis.row(i))).collect();
        Subspace::from_vectors(self.field(), m.rows(), &vectors)
    }

    /// Standard basis indices complementary to the pivots; they index a
    /// canonical basis of the quotient `F_p^n / self`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in `F_p^n / self` relative to
    /// [`free_columns`](Self::free_columns).
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.free_columns().iter().map(|&c| r[c]).collect()
    }
}

/// The quotient `Z / B` of nested subspaces with canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    numerator: Subspace,
    denominator: Subspace,
    reps: Subspace,
}

impl Subquotient {
    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Canonical representatives, reduced against the denominator.
    pub fn representatives(&self) -> Vec<Vec<u32>> {
        self.reps.vectors()
    }

    /// Coordinates of the class of `v ∈ Z` in the representative basis.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.denominator.reduce(v);
        self.reps.coords_unchecked(&r)
    }
}

/// `dim Z − dim B` together with representatives; fails unless `B ⊆ Z`.
pub fn subquotient(numerator: &Subspace, denominator: &Subspace) -> Result<Subquotient> {
    if numerator.ambient() != denominator.ambient() {
        return Err(Error::DimensionMismatch("subquotient ambient dimensions differ".into()));
    }
    if !numerator.contains_subspace(denominator) {
        return Err(Error::ContainmentViolation(format!(
            "a {}-dimensional subspace is not inside the {}-dimensional numerator",
            denominator.dim(),
            numerator.dim()
        )));
    }
    let reduced: Vec<Vec<u32>> = numerator.vectors().iter().map(|v| denominator.reduce(v)).collect();
    let reps = Subspace::from_vectors(numerator.field(), numerator.ambient(), &reduced);
    Ok(Subquotient { numerator: numerator.clone(), denominator: denominator.clone(), reps })
}

pub fn subquotient_dim(numerator: &Subspace, denominator: &Subspace) -> Result<usize> {
    subquotient(numerator, denominator).map(|s| s.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn subquotient_examples() {
        let f = Fp::new(3).unwrap();
        let z = Subspace::full(f, 3);
        assert_eq!(subquotient_dim(&z, &z).unwrap(), 0);
        assert_eq!(subquotient_dim(&z, &Subspace::zero(f, 3)).unwrap(), 3);

        let z4 = Subspace::coordinate(f, 5, &[0, 1, 2, 3]);
        let b = Subspace::from_vectors(f, 5, &[vec![1, 2, 0, 1, 0]]);
        let sq = subquotient(&z4, &b).unwrap();
        assert_eq!(sq.dim(), 3);
        assert_eq!(sq.coords(&[1, 2, 0, 1, 0]), vec![0, 0, 0]);
    }

    #[test]
    fn containment_violation() {
        let f = f2();
        let z = Subspace::coordinate(f, 3, &[0]);
        let b = Subspace::coordinate(f, 3, &[1]);
        assert!(matches!(subquotient(&z, &b), Err(Error::ContainmentViolation(_))));
    }

    #[test]
    fn intersection_and_sum() {
        let f = Fp::new(5).unwrap();
        let a = Subspace::coordinate(f, 3, &[0, 1]);
        let b = Subspace::coordinate(f, 3, &[1, 2]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(f, 3, &[1]));
        assert_eq!(a.sum(&b), Subspace::full(f, 3));
    }

    #[test]
    fn quotient_coordinates() {
        let f = f2();
        let s = Subspace::from_vectors(f, 3, &[vec![1, 1, 0]]);
        assert_eq!(s.free_columns(), vec![1, 2]);
        assert_eq!(s.quotient_coords(&[1, 0, 0]), vec![1, 0]);
        assert_eq!(s.quotient_coords(&[1, 1, 1]), vec![0, 1]);
    }
}
