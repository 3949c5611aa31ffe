//! Dense matrices over an exact field.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{q_parse, q_to_string, Field, Q};
use super::poly::Poly;
use crate::error::{invalid, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return invalid("ragged matrix rows");
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, indices `(i1 * r2 + i2, j1 * c2 + j2)`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if a.is_zero() {
                return F::zero();
            }
            a.mul(other.get(i % other.rows, j % other.cols))
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        a.is_one()
                    } else {
                        a.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = r.get(k, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Upper Hessenberg form similar to `self`.
    pub fn hessenberg(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if p != m {
                h.swap_rows(p, m);
                h.swap_cols(p, m);
            }
            let pivot_inv = h.get(m, m - 1).inv();
            for i in m + 1..n {
                if h.get(i, m - 1).is_zero() {
                    continue;
                }
                let f = h.get(i, m - 1).mul(&pivot_inv);
                // row_i -= f row_m, then col_m += f col_i
                for j in 0..n {
                    let v = h.get(i, j).sub(&f.mul(h.get(m, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, m).add(&f.mul(h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        h
    }

    /// Characteristic polynomial `det(xI - M)`, via Hessenberg reduction.
    pub fn char_poly(&self) -> Poly<F> {
        let n = self.rows;
        let h = self.hessenberg();
        let mut p: Vec<Poly<F>> = Vec::with_capacity(n + 1);
        p.push(Poly::one());
        for k in 1..=n {
            let mut pk = Poly::linear(h.get(k - 1, k - 1).clone()).mul(&p[k - 1]);
            let mut prod = F::one();
            for i in (1..k).rev() {
                prod = prod.mul(h.get(i, i - 1));
                if prod.is_zero() {
                    break;
                }
                let c = prod.mul(h.get(i - 1, k - 1));
                if !c.is_zero() {
                    pk = pk.sub(&p[i - 1].scale(&c));
                }
            }
            p.push(pk);
        }
        p.pop().expect("nonempty")
    }

    /// Whether `(M - I)^dim = 0`.
    pub fn is_unipotent(&self) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        let nil = self.sub(&Self::identity(n));
        let mut power = nil.clone();
        let mut k = 1usize;
        while k < n {
            if power.is_zero() {
                return true;
            }
            power = power.mul(&power);
            k *= 2;
        }
        power.is_zero()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Common fixed space `∩ ker(M_k - I)` as a list of column vectors.
pub fn fixed_space<F: Field>(mats: &[Matrix<F>]) -> Vec<Vec<F>> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let n = first.nrows();
    let mut stacked = Vec::with_capacity(mats.len() * n);
    for m in mats {
        let d = m.sub(&Matrix::identity(n));
        stacked.extend(d.to_rows());
    }
    Matrix::from_rows(stacked).expect("square blocks").nullspace()
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl Matrix<Q> {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Q::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(q_to_string).collect())
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| q_parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

impl Serialize for Matrix<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_string_rows(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::q;

    fn m(rows: &[Vec<i64>]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn char_poly_companion() {
        // companion matrix of x^3 - 2x + 5
        let c = m(&[vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]]);
        let p = c.char_poly();
        assert_eq!(p.coeffs(), &[q(5), q(-2), q(0), q(1)]);
    }

    #[test]
    fn char_poly_needs_pivoting() {
        let a = m(&[vec![1, 0, 0], vec![0, 2, 1], vec![0, 0, 3]]);
        let p = a.char_poly();
        let expected = Poly::linear(q(1)).mul(&Poly::linear(q(2))).mul(&Poly::linear(q(3)));
        assert_eq!(p, expected);
    }

    #[test]
    fn unipotent_and_inverse() {
        let e = m(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert!(e.is_unipotent());
        assert!(!m(&[vec![0, 1], vec![1, 0]]).is_unipotent());
        let inv = e.inverse().unwrap();
        assert!(e.mul(&inv).is_identity());
        assert!(m(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn fixed_space_of_swap() {
        let s = m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(fixed_space(&[s]).len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let a = Matrix::from_rows(vec![vec![q(1), Q::new(1.into(), 2.into())]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1","1/2"]]"#);
        let b: Matrix<Q> = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
