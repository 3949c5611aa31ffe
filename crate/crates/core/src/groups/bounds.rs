//! Lower bounds on the dimension of representations of congruence
//! quotients, as functions of the level.

use num_traits::One;
use serde::Serialize;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::linalg::{q, q_frac, Q};

/// `(p^n - p) / (p - 1)`, the smallest dimension of a nontrivial
/// representation of `SL_n(F_p)` when `n ≥ 5` or `p > 3`.
pub fn min_nontrivial_dim(n: u32, p: u64) -> Result<u128> {
    if !crate::arith::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if n < 5 && p <= 3 {
        return Err(Error::Hypothesis(format!(
            "the minimal-degree formula needs n ≥ 5 or p > 3 (got n = {n}, p = {p})"
        )));
    }
    let p = p as u128;
    Ok((p.pow(n) - p) / (p - 1))
}

/// `p^{(n-1)k} (1 - 1/p)`: lower bound for representations of
/// `SL_n(Z/p^k)` that do not factor through `Z/p^{k-1}`.
pub fn bmk_lower_bound(n: u32, p: u64, k: u32) -> Result<Q> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let pk = Q::from_integer((p as i64).into()).pow(((n - 1) * k) as i32);
    Ok(pk * (Q::one() - q_frac(1, p as i64)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthBound {
    /// `ℓ^{n-1} ∏_{p | ℓ} (1 - 1/p)`.
    #[serde(with = "crate::linalg::field::q_string")]
    pub bound: Q,
    /// The weaker `ℓ^{n-2}`.
    pub floor: u128,
}

pub fn depth_dim_lower_bound(ell: u64, n: u32) -> Result<DepthBound> {
    if ell == 0 || n < 2 {
        return Err(Error::Precondition("need ℓ ≥ 1 and n ≥ 2".into()));
    }
    let mut bound = Q::from_integer((ell as i64).into()).pow(n as i32 - 1);
    for (p, _) in factorize(ell) {
        bound *= Q::one() - q_frac(1, p as i64);
    }
    Ok(DepthBound {
        bound,
        floor: (ell as u128).pow(n - 2),
    })
}

/// Largest `ℓ` whose depth bound is at most `dim`.
pub fn max_depth_for_dim(dim: u64, n: u32) -> Result<u64> {
    if dim == 0 || n < 3 {
        return Err(Error::Precondition("need N ≥ 1 and n ≥ 3".into()));
    }
    // ℓ^{n-2} ≤ bound, so ℓ ≤ N^{1/(n-2)}
    let mut limit = 1u64;
    while (limit as u128 + 1).pow(n - 2) <= dim as u128 {
        limit += 1;
    }
    let target = q(dim as i64);
    let mut best = 1;
    for ell in 1..=limit + 1 {
        if depth_dim_lower_bound(ell, n)?.bound <= target {
            best = ell;
        }
    }
    Ok(best)
}

/// Is `dim` below every bound for depth `> 1`, i.e. must an irreducible of
/// this dimension be algebraic?
pub fn forces_algebraic(dim: u64, n: u32) -> Result<bool> {
    Ok(max_depth_for_dim(dim.max(1), n)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_values() {
        assert_eq!(min_nontrivial_dim(5, 2).unwrap(), 30);
        assert_eq!(min_nontrivial_dim(3, 5).unwrap(), 30);
        assert!(matches!(min_nontrivial_dim(3, 2), Err(Error::Hypothesis(_))));
        assert_eq!(bmk_lower_bound(3, 2, 2).unwrap(), q(8));
        assert_eq!(bmk_lower_bound(3, 2, 1).unwrap(), q(2));
        assert_eq!(bmk_lower_bound(4, 3, 1).unwrap(), q(18));
        assert_eq!(depth_dim_lower_bound(6, 4).unwrap().bound, q(72));
        assert_eq!(depth_dim_lower_bound(2, 5).unwrap().bound, q(8));
        assert_eq!(max_depth_for_dim(1, 4).unwrap(), 1);
        assert_eq!(max_depth_for_dim(8, 5).unwrap(), 2);
    }
}
