//! Sparse rational vectors and column-major sparse matrices, plus
//! incremental subspaces in reduced echelon form. Permutation-like
//! representations of dimension several hundred stay cheap this way.

use std::fmt;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::dense::Matrix;
use super::field::Q;

/// Sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SVec {
    entries: Vec<(usize, Q)>,
}

impl SVec {
    pub fn new() -> Self {
        SVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SVec {
            entries: vec![(i, Q::one())],
        }
    }

    /// From arbitrary pairs; duplicates are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut acc: FxHashMap<usize, Q> = FxHashMap::default();
        for (i, v) in pairs {
            *acc.entry(i).or_insert_with(Q::zero) += v;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<usize, Q>) -> Self {
        let mut entries: Vec<(usize, Q)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SVec { entries }
    }

    pub fn from_dense(v: &[Q]) -> Self {
        SVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    fn get_ref(&self, i: usize) -> Option<&Q> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &Q) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &SVec) -> SVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map_or(usize::MAX, |e| e.0);
            let ib = other.entries.get(b).map_or(usize::MAX, |e| e.0);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + c * &other.entries[b].1;
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &SVec) -> SVec {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn dot(&self, other: &SVec) -> Q {
        let mut acc = Q::zero();
        for (i, v) in &self.entries {
            if let Some(w) = other.get_ref(*i) {
                acc += v * w;
            }
        }
        acc
    }

    /// Indices shifted by `offset`.
    pub fn shifted(&self, offset: usize) -> SVec {
        SVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }
}

impl fmt::Debug for SVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "SVec[{}]", parts.join(", "))
    }
}

/// Column-major sparse matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<SVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            cols: vec![SVec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            cols: (0..n).map(SVec::unit).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.entries.last().map_or(true, |e| e.0 < nrows)));
        SparseMatrix {
            nrows,
            ncols: cols.len(),
            cols,
        }
    }

    /// Matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        SparseMatrix {
            nrows: perm.len(),
            ncols: perm.len(),
            cols: perm.iter().map(|&i| SVec::unit(i)).collect(),
        }
    }

    /// Map sending basis vector `j` to basis vector `map[j]` of a space of
    /// dimension `nrows`.
    pub fn injection(nrows: usize, map: &[usize]) -> Self {
        SparseMatrix {
            nrows,
            ncols: map.len(),
            cols: map.iter().map(|&i| SVec::unit(i)).collect(),
        }
    }

    pub fn from_dense(m: &Matrix<Q>) -> Self {
        SparseMatrix {
            nrows: m.nrows(),
            ncols: m.ncols(),
            cols: (0..m.ncols()).map(|j| SVec::from_dense(&m.column(j))).collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix<Q> {
        let mut m = Matrix::zeros(self.nrows, self.ncols);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.entries() {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        match v.entries() {
            [] => SVec::new(),
            [(j, c)] => self.cols[*j].scale(c),
            entries => {
                let mut acc: FxHashMap<usize, Q> = FxHashMap::default();
                for (j, c) in entries {
                    for (i, a) in self.cols[*j].entries() {
                        *acc.entry(*i).or_insert_with(Q::zero) += a * c;
                    }
                }
                SVec::from_map(acc)
            }
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.entries() {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            cols: rows.into_iter().map(|entries| SVec { entries }).collect(),
        }
    }

    /// Kronecker product with index `(i1 * r2 + i2, j1 * c2 + j2)`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut cols = Vec::with_capacity(self.ncols * other.ncols);
        for a in &self.cols {
            for b in &other.cols {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i1, x) in a.entries() {
                    for (i2, y) in b.entries() {
                        entries.push((i1 * other.nrows + i2, x * y));
                    }
                }
                cols.push(SVec { entries });
            }
        }
        SparseMatrix {
            nrows: self.nrows * other.nrows,
            ncols: self.ncols * other.ncols,
            cols,
        }
    }

    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.shifted(self.nrows)));
        SparseMatrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols + other.ncols,
            cols,
        }
    }

    pub fn pow(&self, mut e: u64) -> SparseMatrix {
        assert_eq!(self.nrows, self.ncols);
        let mut base = self.clone();
        let mut acc = SparseMatrix::identity(self.nrows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for (j, col) in self.cols.iter().enumerate() {
            t += col.get(j);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.entries().len() == 1 && c.entries()[0].0 == j && c.entries()[0].1.is_one())
    }

    /// The permutation if every column is a distinct standard basis vector.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.nrows != self.ncols {
            return None;
        }
        let mut seen = vec![false; self.nrows];
        let mut perm = Vec::with_capacity(self.ncols);
        for c in &self.cols {
            match c.entries() {
                [(i, v)] if v.is_one() && !seen[*i] => {
                    seen[*i] = true;
                    perm.push(*i);
                }
                _ => return None,
            }
        }
        Some(perm)
    }

    pub fn rank(&self) -> usize {
        let mut s = Subspace::new(self.nrows);
        for c in &self.cols {
            s.insert(c);
        }
        s.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.nrows != self.ncols {
            return None;
        }
        if let Some(p) = self.as_permutation() {
            let mut inv = vec![0; p.len()];
            for (j, &i) in p.iter().enumerate() {
                inv[i] = j;
            }
            return Some(SparseMatrix::permutation(&inv));
        }
        let basis = ColumnBasis::new(self.clone())?;
        Some(SparseMatrix::from_columns(
            self.ncols,
            (0..self.nrows)
                .map(|i| basis.coordinates(&SVec::unit(i)).expect("full rank"))
                .collect(),
        ))
    }

    /// Columns restricted to the given row indices, reindexed in order.
    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrix {
        let mut pos: FxHashMap<usize, usize> = FxHashMap::default();
        for (k, &r) in rows.iter().enumerate() {
            pos.insert(r, k);
        }
        SparseMatrix {
            nrows: rows.len(),
            ncols: self.ncols,
            cols: self
                .cols
                .iter()
                .map(|c| SVec {
                    entries: c
                        .entries()
                        .iter()
                        .filter_map(|(i, v)| pos.get(i).map(|&k| (k, v.clone())))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl SparseMatrix {
    /// Matrix of the restriction to an invariant subspace, in the subspace's
    /// reduced basis; `None` if the subspace is not invariant.
    pub fn restrict_to(&self, sub: &Subspace) -> Option<SparseMatrix> {
        let cols = sub
            .basis()
            .iter()
            .map(|b| sub.try_coords(&self.apply(b)))
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix::from_columns(sub.dim(), cols))
    }
}

impl From<Matrix<Q>> for SparseMatrix {
    fn from(m: Matrix<Q>) -> Self {
        SparseMatrix::from_dense(&m)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix{}x{}{:?}", self.nrows, self.ncols, self.cols)
    }
}

/// Subspace of `Q^ambient` kept in fully reduced echelon form: each basis
/// vector has a 1 at its pivot and every other basis vector vanishes there.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SVec>,
    pivots: Vec<usize>,
    pivot_of: FxHashMap<usize, usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
            pivot_of: FxHashMap::default(),
        }
    }

    pub fn spanned_by<'a>(ambient: usize, vecs: impl IntoIterator<Item = &'a SVec>) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace::spanned_by(ambient, &(0..ambient).map(SVec::unit).collect::<Vec<_>>())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the subspace, zero at every pivot.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let hits: Vec<(usize, Q)> = v
            .entries()
            .iter()
            .filter_map(|(i, x)| self.pivot_of.get(i).map(|&k| (k, x.clone())))
            .collect();
        match hits.len() {
            0 => v.clone(),
            1 => v.add_scaled(&-&hits[0].1, &self.basis[hits[0].0]),
            _ => {
                let mut acc: FxHashMap<usize, Q> = FxHashMap::default();
                for (i, x) in v.entries() {
                    acc.insert(*i, x.clone());
                }
                for (k, x) in hits {
                    for (i, b) in self.basis[k].entries() {
                        *acc.entry(*i).or_insert_with(Q::zero) -= &x * b;
                    }
                }
                SVec::from_map(acc)
            }
        }
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.entries().first().cloned() else {
            return false;
        };
        let r = r.scale(&lead.recip());
        for b in self.basis.iter_mut() {
            if let Some(c) = b.get_ref(p).cloned() {
                *b = b.add_scaled(&-c, &r);
            }
        }
        self.pivot_of.insert(p, self.basis.len());
        self.pivots.push(p);
        self.basis.push(r);
        true
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the basis order.
    pub fn coords(&self, v: &SVec) -> SVec {
        SVec::from_pairs(
            v.entries()
                .iter()
                .filter_map(|(i, x)| self.pivot_of.get(i).map(|&k| (k, x.clone()))),
        )
    }

    /// Coordinates if `v` lies in the subspace.
    pub fn try_coords(&self, v: &SVec) -> Option<SVec> {
        self.contains(v).then(|| self.coords(v))
    }

    /// Ambient indices that are not pivots, ascending. Their unit vectors
    /// span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivot_of.contains_key(i)).collect()
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Projection onto `V / W` in coordinates indexed by the complement of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    complement: Vec<usize>,
    position: FxHashMap<usize, usize>,
}

impl Quotient {
    pub fn new(sub: Subspace) -> Self {
        let complement = sub.complement_indices();
        let position = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Quotient {
            sub,
            complement,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Ambient index of quotient basis vector `k`.
    pub fn lift_index(&self, k: usize) -> usize {
        self.complement[k]
    }

    pub fn project(&self, v: &SVec) -> SVec {
        let r = self.sub.reduce(v);
        SVec {
            entries: r.entries().iter().map(|(i, x)| (self.position[i], x.clone())).collect(),
        }
    }

    pub fn lift(&self, v: &SVec) -> SVec {
        SVec::from_pairs(v.entries().iter().map(|(k, x)| (self.complement[*k], x.clone())))
    }
}

/// A linearly independent family of columns with a coordinate solver.
#[derive(Clone, Debug)]
pub struct ColumnBasis {
    columns: SparseMatrix,
    span: Subspace,
    /// `to_columns.column(k)` expresses reduced basis vector `k` in terms of
    /// the original columns.
    to_columns: Vec<SVec>,
}

impl ColumnBasis {
    /// `None` when the columns are dependent.
    pub fn new(columns: SparseMatrix) -> Option<Self> {
        let n = columns.ncols();
        // Row reduce [columns | I] column-wise by tracking combinations.
        let mut span = Subspace::new(columns.nrows());
        let mut combos: Vec<SVec> = Vec::new();
        for (j, c) in columns.columns().iter().enumerate() {
            // express reduction of c in terms of existing reduced vectors
            let coeffs = span.coords(c);
            let reduced = span.reduce(c);
            let (p, lead) = reduced.entries().first().cloned()?;
            // reduced = c - Σ coeffs_k basis_k ; basis_k = Σ combos_k original
            let mut combo = SVec::unit(j);
            for (k, x) in coeffs.entries() {
                combo = combo.add_scaled(&-x, &combos[*k]);
            }
            let inv = lead.recip();
            let r = reduced.scale(&inv);
            let combo = combo.scale(&inv);
            for (k, b) in span.basis.iter_mut().enumerate() {
                if let Some(cv) = b.get_ref(p).cloned() {
                    *b = b.add_scaled(&-&cv, &r);
                    combos[k] = combos[k].add_scaled(&-&cv, &combo);
                }
            }
            span.pivot_of.insert(p, span.basis.len());
            span.pivots.push(p);
            span.basis.push(r);
            combos.push(combo);
        }
        debug_assert_eq!(span.dim(), n);
        Some(ColumnBasis {
            columns,
            span,
            to_columns: combos,
        })
    }

    pub fn columns(&self) -> &SparseMatrix {
        &self.columns
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.to_columns.len()
    }

    /// Coefficients `x` with `columns · x = v`, if `v` is in the span.
    pub fn coordinates(&self, v: &SVec) -> Option<SVec> {
        let c = self.span.try_coords(v)?;
        let mut out = SVec::new();
        for (k, x) in c.entries() {
            out = out.add_scaled(x, &self.to_columns[*k]);
        }
        Some(out)
    }
}

/// Right kernel `{x : A x = 0}`.
pub fn kernel(a: &SparseMatrix) -> Vec<SVec> {
    let rows = a.transpose();
    kernel_of_rows(a.ncols(), rows.columns())
}

/// Vectors orthogonal to every given row.
pub fn kernel_of_rows(n: usize, rows: &[SVec]) -> Vec<SVec> {
    let s = Subspace::spanned_by(n, rows);
    let free = s.complement_indices();
    let free_pos: FxHashMap<usize, usize> = free.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let mut out: Vec<Vec<(usize, Q)>> = free.iter().map(|&f| vec![(f, Q::one())]).collect();
    for (k, b) in s.basis().iter().enumerate() {
        let p = s.pivots()[k];
        for (j, v) in b.entries() {
            if let Some(&fk) = free_pos.get(j) {
                out[fk].push((p, -v));
            }
        }
    }
    out.into_iter().map(SVec::from_pairs).collect()
}

/// Common fixed vectors of the given square matrices.
pub fn fixed_space(mats: &[&SparseMatrix]) -> Vec<SVec> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let n = first.nrows();
    let id = SparseMatrix::identity(n);
    let mut rows = Vec::new();
    for m in mats {
        rows.extend_from_slice(m.sub(&id).transpose().columns());
    }
    kernel_of_rows(n, &rows)
}

/// `Σ im(M_k - I)`, the augmentation submodule.
pub fn augmentation_span(mats: &[&SparseMatrix]) -> Subspace {
    let n = mats.first().map_or(0, |m| m.nrows());
    let id = SparseMatrix::identity(n);
    let mut s = Subspace::new(n);
    for m in mats {
        for c in m.sub(&id).columns() {
            s.insert(c);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::q;

    #[test]
    fn subspace_reduction() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&SVec::from_dense(&[q(1), q(1), q(0)])));
        assert!(s.insert(&SVec::from_dense(&[q(0), q(1), q(1)])));
        assert!(!s.insert(&SVec::from_dense(&[q(1), q(2), q(1)])));
        assert_eq!(s.dim(), 2);
        let v = SVec::from_dense(&[q(2), q(3), q(1)]);
        let c = s.coords(&v);
        let rebuilt = s.basis_matrix().apply(&c);
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn kernel_and_fixed() {
        let swap = SparseMatrix::permutation(&[1, 0, 2]);
        assert_eq!(fixed_space(&[&swap]).len(), 2);
        let k = kernel(&swap.sub(&SparseMatrix::identity(3)));
        for v in &k {
            assert_eq!(swap.apply(v), *v);
        }
    }

    #[test]
    fn inverse_and_basis() {
        let m = SparseMatrix::from_dense(&Matrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let b = ColumnBasis::new(m.clone()).unwrap();
        let v = SVec::from_dense(&[q(5), q(6)]);
        let x = b.coordinates(&v).unwrap();
        assert_eq!(m.apply(&x), v);
    }

    #[test]
    fn quotient_projection() {
        let w = Subspace::spanned_by(3, &[SVec::from_dense(&[q(1), q(-1), q(0)])]);
        let quo = Quotient::new(w);
        assert_eq!(quo.dim(), 2);
        let a = quo.project(&SVec::unit(0));
        let b = quo.project(&SVec::unit(1));
        assert_eq!(a, b);
    }

    #[test]
    fn kron_matches_dense() {
        let a = Matrix::from_i64_rows(&[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_i64_rows(&[vec![0, 1], vec![1, 3]]);
        let s = SparseMatrix::from_dense(&a).kron(&SparseMatrix::from_dense(&b));
        assert_eq!(s.to_dense(), a.kron(&b));
    }
}
