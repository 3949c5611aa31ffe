//! Labels of an algebraic level read off from its Lie algebra action.
//!
//! For unipotent `ρ(E_ij)` the logarithms `X_ij` span the action of
//! `sl_n`. Highest weight vectors are the common kernel of the raising
//! operators `X_{i,i+1}`, and `H_i = [X_{i,i+1}, X_{i+1,i}]` acts on them by
//! the differences of consecutive weight entries.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix, Q};
use crate::partition::Bipartition;
use crate::weights::{label_dimension, normalize_weight};
use crate::words::GenRep;

/// Largest level dimension handled with dense matrices.
const MAX_DIM: usize = 256;

fn log_unipotent(u: &Matrix<Q>) -> Option<Matrix<Q>> {
    let d = u.nrows();
    let nil = u.sub(&Matrix::identity(d));
    let mut acc = Matrix::zeros(d, d);
    let mut power = nil.clone();
    for k in 1..=d {
        if power.is_zero() {
            return Some(acc);
        }
        let c = Q::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into());
        acc = acc.add(&power.scale(&c));
        power = power.mul(&nil);
    }
    power.is_zero().then_some(acc)
}

/// Multiset of labels `V_n(λ⁺, λ⁻)` of an algebraic level. Weights are
/// only determined up to a power of the determinant, so each label is the
/// smallest one in its class.
pub fn detect_labels(level: &GenRep<SparseMatrix>) -> Result<BTreeMap<Bipartition, u64>> {
    let n = level.rank();
    let d = level.dim();
    if d > MAX_DIM {
        return Err(Error::Cap(format!(
            "label detection handles dimension up to {MAX_DIM}, got {d}"
        )));
    }
    if n < 2 {
        return Ok(BTreeMap::from([(Bipartition::trivial(), d as u64)]));
    }
    let log = |i: usize, j: usize| {
        log_unipotent(&level.elementary(i, j).to_dense()).ok_or_else(|| {
            Error::Precondition(format!(
                "ρ(E_{}{}) is not unipotent; the level is not algebraic",
                i + 1,
                j + 1
            ))
        })
    };
    let mut raise = Vec::with_capacity(n - 1);
    let mut cartan = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let x = log(i, i + 1)?;
        let y = log(i + 1, i)?;
        cartan.push(x.mul(&y).sub(&y.mul(&x)));
        raise.push(x);
    }
    let stacked: Vec<Vec<Q>> = raise.iter().flat_map(|x| x.to_rows()).collect();
    let hw = if stacked.is_empty() {
        Vec::new()
    } else {
        Matrix::from_rows(stacked)?.nullspace()
    };
    let m = hw.len();
    if m == 0 {
        return Err(Error::Integrity("no highest weight vectors".into()));
    }
    let basis = Matrix::from_fn(d, m, |r, c| hw[c][r].clone());
    // Coordinates of H_i on the span of the highest weight vectors.
    let (_, pivots) = basis.transpose().rref();
    let restrict = |h: &Matrix<Q>| -> Matrix<Q> {
        let hb = h.mul(&basis);
        // basis has full column rank: read coordinates from pivot rows
        let sub = Matrix::from_fn(m, m, |r, c| basis.get(pivots[r], c).clone());
        let inv = sub.inverse().expect("pivot rows of a full-rank basis are invertible");
        let rhs = Matrix::from_fn(m, m, |r, c| hb.get(pivots[r], c).clone());
        inv.mul(&rhs)
    };
    let coords: Vec<Matrix<Q>> = cartan.iter().map(restrict).collect();
    // Joint eigenspaces, each as a list of column vectors in Q^m.
    let mut spaces: Vec<(Vec<i64>, Vec<Vec<Q>>)> = vec![(
        Vec::new(),
        (0..m)
            .map(|k| (0..m).map(|r| if r == k { Q::one() } else { Q::zero() }).collect())
            .collect(),
    )];
    for c in &coords {
        let mut next = Vec::new();
        for (eig, vecs) in spaces {
            let s = vecs.len();
            let sm = Matrix::from_fn(m, s, |r, k| vecs[k][r].clone());
            let mut found = 0;
            for value in 0..=d as i64 {
                let shifted = c.sub(&Matrix::identity(m).scale(&Q::from_integer(value.into())));
                let kernel = shifted.mul(&sm).nullspace();
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let new_vecs: Vec<Vec<Q>> = kernel.iter().map(|k| sm.mul_vec(k)).collect();
                let mut e = eig.clone();
                e.push(value);
                next.push((e, new_vecs));
                if found == s {
                    break;
                }
            }
            if found != s {
                return Err(Error::Integrity(
                    "Cartan elements are not diagonalizable with nonnegative integer eigenvalues".into(),
                ));
            }
        }
        spaces = next;
    }
    let mut out: BTreeMap<Bipartition, u64> = BTreeMap::new();
    let mut total = 0u128;
    for (a, vecs) in spaces {
        let mut w = vec![0i64; n];
        for i in (0..n - 1).rev() {
            w[i] = w[i + 1] + a[i];
        }
        // For SL_n only the differences matter; take the determinant shift
        // giving the smallest label, preferring a larger λ⁺ on ties.
        let k = (w[n - 1]..=w[0])
            .min_by_key(|k| w.iter().map(|x| (x - k).abs()).sum::<i64>())
            .expect("nonempty range");
        let shifted: Vec<i64> = w.iter().map(|x| x - k).collect();
        let (b, _) = normalize_weight(&shifted)?;
        total += label_dimension(&b, n)? * vecs.len() as u128;
        *out.entry(b).or_insert(0) += vecs.len() as u64;
    }
    if total != d as u128 {
        return Err(Error::Integrity(format!(
            "labels account for dimension {total}, level has {d}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vic::VicModule;

    #[test]
    fn standard_and_dual_labels() {
        let std = VicModule::standard((3, 4)).unwrap();
        let l = detect_labels(std.level(4)).unwrap();
        assert_eq!(l, BTreeMap::from([(Bipartition::from_parts(&[1], &[]), 1)]));
        let dual = VicModule::dual_standard((3, 4)).unwrap();
        let l = detect_labels(dual.level(3)).unwrap();
        assert_eq!(l, BTreeMap::from([(Bipartition::from_parts(&[], &[1]), 1)]));
        let sum = std.tensor(&dual).unwrap();
        let l = detect_labels(sum.level(3)).unwrap();
        assert_eq!(
            l,
            BTreeMap::from([(Bipartition::trivial(), 1), (Bipartition::from_parts(&[1], &[1]), 1)])
        );
    }

    #[test]
    fn finite_level_is_rejected() {
        let p = VicModule::projective(2, (3, 3)).unwrap();
        assert!(detect_labels(p.level(3)).is_err());
    }
}
