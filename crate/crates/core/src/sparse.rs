//! Sparse vectors and incremental echelon forms over `F_p`.
//!
//! Resolutions and the Hom/tensor complexes built from them reach thousands of
//! coordinates while each vector touches only a handful. Vectors here are
//! sorted `(index, value)` lists and elimination only visits touched indices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::linalg::{Fp, Subspace};

/// Sorted list of nonzero `(index, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    pub entries: Vec<(u32, u32)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn from_dense(v: &[u32]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x)).collect() }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(field: Fp, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable_by_key(|&(i, _)| i);
        let mut entries: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some(last) if last.0 == i => last.1 = field.add(last.1, v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|&(_, v)| v != 0);
        SparseVec { entries }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec { entries: vec![(index as u32, 1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|&(i, _)| i as usize)
    }

    pub fn get(&self, index: usize) -> u32 {
        match self.entries.binary_search_by_key(&(index as u32), |&(i, _)| i) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for &(i, x) in &self.entries {
            v[i as usize] = x;
        }
        v
    }

    pub fn scale(&self, field: Fp, s: u32) -> SparseVec {
        if s == 0 {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|&(i, v)| (i, field.mul(v, s))).collect() }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, field: Fp, other: &SparseVec, s: u32) -> SparseVec {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let take_a = y == b.len() || (x < a.len() && a[x].0 < b[y].0);
            let take_b = x == a.len() || (y < b.len() && b[y].0 < a[x].0);
            if take_a {
                out.push(a[x]);
                x += 1;
            } else if take_b {
                let v = field.mul(b[y].1, s);
                if v != 0 {
                    out.push((b[y].0, v));
                }
                y += 1;
            } else {
                let v = field.mul_add(a[x].1, s, b[y].1);
                if v != 0 {
                    out.push((a[x].0, v));
                }
                x += 1;
                y += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// Adds `offset` to every index.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|&(i, v)| (i + offset as u32, v)).collect() }
    }

    /// Entries with index in `[lo, hi)`, re-indexed from `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|&&(i, _)| (i as usize) >= lo && (i as usize) < hi)
                .map(|&(i, v)| (i - lo as u32, v))
                .collect(),
        }
    }

    /// Concatenation where every index of `other` is larger than those of `self`.
    pub fn concat(&self, other: &SparseVec) -> SparseVec {
        debug_assert!(match (self.entries.last(), other.entries.first()) {
            (Some(a), Some(b)) => a.0 < b.0,
            _ => true,
        });
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        SparseVec { entries }
    }
}

const NO_PIVOT: u32 = u32::MAX;

/// An echelon basis built incrementally; rows have a leading coefficient 1.
///
/// Reduction is full: the remainder of a vector has no entry in any pivot
/// column, so it is the canonical representative of its class modulo the span.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    dim: usize,
    pivot_of: Vec<u32>,
    rows: Vec<SparseVec>,
    buf: Vec<u32>,
}

impl Echelon {
    pub fn new(field: Fp, dim: usize) -> Self {
        Echelon { field, dim, pivot_of: vec![NO_PIVOT; dim], rows: Vec::new(), buf: vec![0; dim] }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NO_PIVOT
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Remainder of `v` modulo the current span.
    pub fn reduce(&mut self, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let p = f.characteristic();
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(v.nnz() * 2);
        for &(i, x) in &v.entries {
            self.buf[i as usize] = x;
            heap.push(Reverse(i));
        }
        let mut out = Vec::new();
        let mut last = NO_PIVOT;
        while let Some(Reverse(i)) = heap.pop() {
            if i == last {
                continue;
            }
            last = i;
            let c = std::mem::take(&mut self.buf[i as usize]);
            if c == 0 {
                continue;
            }
            let r = self.pivot_of[i as usize];
            if r == NO_PIVOT {
                out.push((i, c));
                continue;
            }
            let neg = p - c;
            for &(k, val) in &self.rows[r as usize].entries[1..] {
                let slot = &mut self.buf[k as usize];
                if *slot == 0 {
                    heap.push(Reverse(k));
                }
                *slot = f.mul_add(*slot, neg, val);
            }
        }
        SparseVec { entries: out }
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a reduced nonzero vector as a new row.
    fn push_reduced(&mut self, r: SparseVec) {
        let (lead, c) = r.entries[0];
        let r = if c == 1 { r } else { r.scale(self.field, self.field.inv(c)) };
        self.pivot_of[lead as usize] = self.rows.len() as u32;
        self.rows.push(r);
    }

    /// Inserts `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        self.push_reduced(r);
        true
    }

    /// Coordinates of the class of `v` in the quotient, indexed by
    /// [`free_columns`](Self::free_columns) order.
    pub fn quotient_coords(&mut self, v: &SparseVec, free_index: &[u32]) -> SparseVec {
        let r = self.reduce(v);
        SparseVec { entries: r.entries.iter().map(|&(i, x)| (free_index[i as usize], x)).collect() }
    }

    /// Map from column to its position among the free columns (`u32::MAX` for pivots).
    pub fn free_index(&self) -> Vec<u32> {
        let mut idx = vec![NO_PIVOT; self.dim];
        for (k, c) in self.free_columns().into_iter().enumerate() {
            idx[c] = k as u32;
        }
        idx
    }

    /// Dense canonical form of the span.
    pub fn to_subspace(&self) -> Subspace {
        let vectors: Vec<Vec<u32>> = self.rows.iter().map(|r| r.to_dense(self.dim)).collect();
        Subspace::from_vectors(self.field, self.dim, &vectors)
    }
}

/// Rank of a family of vectors in `F_p^dim`.
pub fn sparse_rank(field: Fp, dim: usize, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the kernel of the map sending the `j`-th standard basis vector of
/// `F_p^columns.len()` to `columns[j] ∈ F_p^image_dim`.
pub fn sparse_kernel(field: Fp, image_dim: usize, columns: &[SparseVec]) -> Vec<SparseVec> {
    let n = columns.len();
    let mut e = Echelon::new(field, image_dim + n);
    let mut kernel = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut tagged = c.clone();
        tagged.entries.push(((image_dim + j) as u32, 1));
        let r = e.reduce(&tagged);
        match r.leading() {
            Some(l) if l >= image_dim => kernel.push(r.window(image_dim, image_dim + n)),
            Some(_) => e.push_reduced(r),
            None => unreachable!("tag coordinate cannot cancel"),
        }
    }
    kernel
}

/// Rank and kernel of a column family in one elimination pass.
pub fn sparse_rank_kernel(field: Fp, image_dim: usize, columns: &[SparseVec]) -> (usize, Vec<SparseVec>) {
    let kernel = sparse_kernel(field, image_dim, columns);
    (columns.len() - kernel.len(), kernel)
}

/// Image of a sparse vector under a column-indexed sparse map.
pub fn apply_columns(field: Fp, columns: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut pairs = Vec::new();
    for &(j, x) in &v.entries {
        for &(i, y) in &columns[j as usize].entries {
            pairs.push((i, field.mul(x, y)));
        }
    }
    SparseVec::from_pairs(field, pairs)
}
