//! Square matrices over `Z/ℓ` stored as flat byte arrays.

use crate::arith::mod_inv;
use crate::error::{invalid, Result};
use crate::words::IntMat;

/// Shape and modulus of `M_n(Z/ℓ)`, plus the bit packing used for hashing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixRing {
    pub n: usize,
    pub modulus: u64,
    bits: u32,
}

impl MatrixRing {
    pub fn new(n: usize, modulus: u64) -> Result<Self> {
        if n == 0 {
            return invalid("matrix size must be positive");
        }
        if !(2..=255).contains(&modulus) {
            return invalid(format!("modulus {modulus} outside 2..=255"));
        }
        let bits = 64 - (modulus - 1).leading_zeros();
        if (n * n) as u32 * bits > 128 {
            return invalid(format!(
                "{n}x{n} matrices mod {modulus} do not fit the 128-bit element key"
            ));
        }
        Ok(MatrixRing { n, modulus, bits })
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn key(&self, a: &[u8]) -> u128 {
        a.iter().fold(0u128, |acc, &v| (acc << self.bits) | v as u128)
    }

    pub fn identity(&self) -> Vec<u8> {
        let mut m = vec![0u8; self.len()];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        m
    }

    /// `I + c e_ij`.
    pub fn elementary(&self, i: usize, j: usize, c: u64) -> Vec<u8> {
        let mut m = self.identity();
        m[i * self.n + j] = ((m[i * self.n + j] as u64 + c) % self.modulus) as u8;
        m
    }

    pub fn diagonal(&self, k: usize, u: u64) -> Vec<u8> {
        let mut m = self.identity();
        m[k * self.n + k] = (u % self.modulus) as u8;
        m
    }

    pub fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let n = self.n;
        let m = self.modulus as u32;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc += a[i * n + k] as u32 * b[k * n + j] as u32;
                }
                out[i * n + j] = (acc % m) as u8;
            }
        }
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.len()];
        self.mul_into(a, b, &mut out);
        out
    }

    pub fn pow(&self, a: &[u8], mut e: u64) -> Vec<u8> {
        let mut base = a.to_vec();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_identity(&self, a: &[u8]) -> bool {
        a == self.identity().as_slice()
    }

    /// Multiplicative order of an invertible element.
    pub fn order(&self, a: &[u8]) -> u64 {
        let id = self.identity();
        let mut cur = a.to_vec();
        let mut k = 1;
        while cur != id {
            cur = self.mul(&cur, a);
            k += 1;
        }
        k
    }

    pub fn det(&self, a: &[u8]) -> u64 {
        let d = int_det(&self.to_int(a));
        d.rem_euclid(self.modulus as i128) as u64
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self, a: &[u8]) -> Option<Vec<u8>> {
        let n = self.n;
        let ell = self.modulus as i128;
        let det_inv = mod_inv(self.det(a), self.modulus)? as i128;
        if n == 1 {
            return Some(vec![det_inv as u8]);
        }
        let full = self.to_int(a);
        let mut out = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                // cofactor C_ji goes to position (i, j)
                let minor = minor_of(&full, n, j, i);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let c = sign * int_det_sized(&minor, n - 1);
                out[i * n + j] = (c * det_inv).rem_euclid(ell) as u8;
            }
        }
        Some(out)
    }

    pub fn to_int(&self, a: &[u8]) -> Vec<i128> {
        a.iter().map(|&v| v as i128).collect()
    }

    pub fn to_intmat(&self, a: &[u8]) -> IntMat {
        IntMat::from_flat(self.n, &a.iter().map(|&v| v as i64).collect::<Vec<_>>())
    }

    pub fn from_intmat(&self, m: &IntMat) -> Vec<u8> {
        m.reduce(self.modulus).to_i64().iter().map(|&v| v as u8).collect()
    }

    /// Reduction to `Z/d` for a divisor `d`.
    pub fn reduce_to(&self, a: &[u8], d: u64) -> Vec<u8> {
        a.iter().map(|&v| (v as u64 % d) as u8).collect()
    }

    pub fn is_congruent_to_identity(&self, a: &[u8], d: u64) -> bool {
        let n = self.n;
        a.iter().enumerate().all(|(k, &v)| {
            let target = if k / n == k % n { 1 % d } else { 0 };
            v as u64 % d == target
        })
    }

    pub fn rows(&self, a: &[u8]) -> Vec<Vec<u8>> {
        a.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

fn minor_of(a: &[i128], n: usize, skip_row: usize, skip_col: usize) -> Vec<i128> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        if i == skip_row {
            continue;
        }
        for j in 0..n {
            if j != skip_col {
                out.push(a[i * n + j]);
            }
        }
    }
    out
}

fn int_det(a: &[i128]) -> i128 {
    let n = (a.len() as f64).sqrt().round() as usize;
    int_det_sized(a, n)
}

/// Fraction-free (Bareiss) determinant of a small integer matrix.
fn int_det_sized(a: &[i128], n: usize) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut m = a.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
        }
        prev = m[k * n + k];
    }
    sign * m[(n - 1) * n + (n - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_4() {
        let r = MatrixRing::new(3, 4).unwrap();
        let a = vec![1, 2, 0, 3, 3, 1, 0, 1, 2];
        let inv = r.inverse(&a).unwrap();
        assert!(r.is_identity(&r.mul(&a, &inv)));
        assert_eq!(r.order(&r.elementary(0, 1, 1)), 4);
        assert_eq!(int_det_sized(&[2, 1, 1, 1, 3, 2, 1, 0, 0], 3), -1);
    }

    #[test]
    fn key_is_injective_on_small_sample() {
        let r = MatrixRing::new(2, 3).unwrap();
        assert_ne!(r.key(&[1, 0, 0, 1]), r.key(&[0, 1, 1, 0]));
        assert!(MatrixRing::new(5, 255).is_err());
    }
}
