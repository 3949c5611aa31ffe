//! Highest weights of rational `GL_n` representations labelled by
//! bipartitions: dimensions, dimension polynomials and branching to
//! `GL_{n-1}` (Pieri) and `GL_m × GL_{n-m}` (Littlewood-Richardson).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{q, Field, Poly, Q};
use crate::partition::{partitions_of, Bipartition, Partition};

/// The irreducible `V_n(λ⁺, λ⁻)` of `GL_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LabelJson", into = "LabelJson")]
pub struct AlgebraicLabel {
    pub label: Bipartition,
    pub rank: usize,
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    plus: Partition,
    minus: Partition,
    rank: usize,
}

impl TryFrom<LabelJson> for AlgebraicLabel {
    type Error = Error;
    fn try_from(j: LabelJson) -> Result<Self> {
        AlgebraicLabel::new(Bipartition::new(j.plus, j.minus), j.rank)
    }
}

impl From<AlgebraicLabel> for LabelJson {
    fn from(a: AlgebraicLabel) -> Self {
        LabelJson {
            plus: a.label.plus,
            minus: a.label.minus,
            rank: a.rank,
        }
    }
}

impl AlgebraicLabel {
    pub fn new(label: Bipartition, rank: usize) -> Result<Self> {
        if label.length() > rank {
            return Err(Error::RankTooSmall {
                rank,
                needed: label.length(),
            });
        }
        Ok(AlgebraicLabel { label, rank })
    }

    pub fn weight(&self) -> Vec<i64> {
        weight_of(&self.label, self.rank).expect("rank checked at construction")
    }

    pub fn dimension(&self) -> u128 {
        weyl_dimension(&self.weight())
    }
}

impl fmt::Display for AlgebraicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V_{}{}", self.rank, self.label)
    }
}

impl fmt::Debug for AlgebraicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Highest weight `(λ⁺_1, …, 0, …, 0, …, -λ⁻_1)` of length `n`.
pub fn weight_of(b: &Bipartition, n: usize) -> Result<Vec<i64>> {
    if b.length() > n {
        return Err(Error::RankTooSmall {
            rank: n,
            needed: b.length(),
        });
    }
    let mut w = vec![0i64; n];
    for (i, &p) in b.plus.parts().iter().enumerate() {
        w[i] = p as i64;
    }
    for (i, &p) in b.minus.parts().iter().enumerate() {
        w[n - 1 - i] = -(p as i64);
    }
    Ok(w)
}

fn check_dominant(w: &[i64]) -> Result<()> {
    if w.is_empty() {
        return invalid("empty weight");
    }
    if w.windows(2).any(|p| p[0] < p[1]) {
        return invalid(format!("weight {w:?} is not weakly decreasing"));
    }
    Ok(())
}

/// Writes a dominant weight as `weight_of(b, n) + k·(1, …, 1)`.
///
/// The shift `k` is the value in `[w_n, w_1]` closest to zero, so that the
/// shifted weight either has a zero entry or has entries of both signs; `k`
/// is 0 whenever that already holds for `w`.
pub fn normalize_weight(w: &[i64]) -> Result<(Bipartition, i64)> {
    check_dominant(w)?;
    let hi = w[0];
    let lo = *w.last().expect("nonempty");
    let k = 0i64.clamp(lo, hi);
    let plus: Vec<u32> = w.iter().filter(|&&a| a > k).map(|&a| (a - k) as u32).collect();
    let minus: Vec<u32> = w.iter().rev().filter(|&&a| a < k).map(|&a| (k - a) as u32).collect();
    let b = Bipartition::new(Partition::new(plus)?, Partition::new(minus)?);
    Ok((b, k))
}

/// Weyl dimension `∏_{i<j} (a_i - a_j + j - i) / (j - i)`.
pub fn weyl_dimension(w: &[i64]) -> u128 {
    let n = w.len();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= w[i] - w[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let d = num / den;
    d.to_u128().expect("dimension must fit in u128")
}

pub fn label_dimension(b: &Bipartition, n: usize) -> Result<u128> {
    Ok(weyl_dimension(&weight_of(b, n)?))
}

/// `dim V_n(b)` as a polynomial in `n`, valid for `n >= ℓ⁺ + ℓ⁻`.
/// Degree `|λ⁺| + |λ⁻|`; obtained by exact interpolation.
pub fn dimension_polynomial(b: &Bipartition) -> Poly<Q> {
    let d = b.size() as usize;
    let start = b.length().max(1);
    let xs: Vec<Q> = (0..=d).map(|i| q((start + i) as i64)).collect();
    let ys: Vec<Q> = (0..=d)
        .map(|i| {
            let dim = label_dimension(b, start + i).expect("rank is large enough");
            Q::from_integer(BigInt::from(dim))
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> Poly<Q> {
    let mut acc = Poly::zero();
    for i in 0..xs.len() {
        let mut term = Poly::constant(ys[i].clone());
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            let denom = (&xs[i] - &xs[j]).inv();
            term = term.mul(&Poly::linear(xs[j].clone())).scale(&denom);
        }
        acc = acc.add(&term);
    }
    acc
}

/// One summand `V_{n-1}(μ) ⊗ ℂ_t` of a Pieri restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieriBranch {
    pub label: AlgebraicLabel,
    pub torus_exponent: i64,
}

/// Restriction of `V_n(b)` to `GL_{n-1} × GL_1`; requires `ℓ⁺ + ℓ⁻ < n`.
pub fn pieri_restrict(b: &Bipartition, n: usize) -> Result<Vec<PieriBranch>> {
    if b.length() >= n {
        return Err(Error::Precondition(format!(
            "Pieri restriction of {b} from rank {n} needs ℓ⁺ + ℓ⁻ < n"
        )));
    }
    let outer_plus = b.plus.size() as i64;
    let outer_minus = b.minus.size() as i64;
    b.hs_pairs()
        .into_iter()
        .map(|mu| {
            let t = outer_plus - mu.plus.size() as i64 - outer_minus + mu.minus.size() as i64;
            Ok(PieriBranch {
                label: AlgebraicLabel::new(mu, n - 1)?,
                torus_exponent: t,
            })
        })
        .collect()
}

/// One summand `(V_m(α) ⊗ det^{a}) ⊠ (V_{n-m}(β) ⊗ det^{b})` of a
/// restriction to the block diagonal `GL_m × GL_{n-m}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LrBranch {
    pub left: AlgebraicLabel,
    pub left_det: i64,
    pub right: AlgebraicLabel,
    pub right_det: i64,
    pub multiplicity: u64,
}

/// Littlewood-Richardson restriction of `V_n(b)` to `GL_m × GL_{n-m}`.
///
/// The weight is first shifted by a power of the determinant to become
/// polynomial, expanded with LR coefficients, and each factor is shifted back
/// and renormalized.
pub fn lr_restrict(label: &AlgebraicLabel, m: usize) -> Result<Vec<LrBranch>> {
    let n = label.rank;
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!("block size {m} must satisfy 0 < m < {n}")));
    }
    let w = label.weight();
    let shift = *w.last().expect("rank >= 1");
    let nu = Partition::new(w.iter().map(|&a| (a - shift) as u32).collect())?;
    let mut acc: BTreeMap<(AlgebraicLabel, i64, AlgebraicLabel, i64), u64> = BTreeMap::new();
    for lambda in nu.subpartitions() {
        if lambda.len() > m {
            continue;
        }
        let rest = nu.size() - lambda.size();
        for mu in partitions_of(rest, n - m) {
            let c = crate::partition::lr_coefficient(&nu, &lambda, &mu);
            if c == 0 {
                continue;
            }
            let (l, ldet) = shifted_label(&lambda, m, shift)?;
            let (r, rdet) = shifted_label(&mu, n - m, shift)?;
            *acc.entry((l, ldet, r, rdet)).or_insert(0) += c;
        }
    }
    Ok(acc
        .into_iter()
        .map(|((left, left_det, right, right_det), multiplicity)| LrBranch {
            left,
            left_det,
            right,
            right_det,
            multiplicity,
        })
        .collect())
}

fn shifted_label(p: &Partition, rank: usize, shift: i64) -> Result<(AlgebraicLabel, i64)> {
    let w: Vec<i64> = (0..rank).map(|i| p.part(i) as i64 + shift).collect();
    let (b, k) = normalize_weight(&w)?;
    Ok((AlgebraicLabel::new(b, rank)?, k))
}

/// Necessary condition for `V_n(b)` to contain a vector fixed by the bottom
/// right `GL_{n-m}`: `ℓ⁺ + ℓ⁻ <= 2m`.
pub fn trivial_factor_length_bound(b: &Bipartition, m: usize) -> bool {
    b.length() <= 2 * m
}

/// Multiplicity of `V_m(b) ⊠ trivial` in `V_n(b)` restricted to
/// `GL_m × GL_{n-m}`; it is 1 whenever `ℓ⁺ + ℓ⁻ <= m < n`.
pub fn unique_copy_check(b: &Bipartition, m: usize, n: usize) -> Result<u64> {
    if b.length() > m || m >= n {
        return Err(Error::Precondition(format!(
            "unique copy needs ℓ⁺ + ℓ⁻ <= m < n, got label {b}, m = {m}, n = {n}"
        )));
    }
    let full = AlgebraicLabel::new(b.clone(), n)?;
    let target = AlgebraicLabel::new(b.clone(), m)?;
    let trivial = AlgebraicLabel::new(Bipartition::trivial(), n - m)?;
    Ok(lr_restrict(&full, m)?
        .iter()
        .filter(|br| br.left == target && br.left_det == 0 && br.right == trivial && br.right_det == 0)
        .map(|br| br.multiplicity)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(plus: &[u32], minus: &[u32]) -> Bipartition {
        Bipartition::from_parts(plus, minus)
    }

    #[test]
    fn weights_and_normalization() {
        assert_eq!(weight_of(&bp(&[2, 1], &[1]), 4).unwrap(), vec![2, 1, 0, -1]);
        assert!(matches!(
            weight_of(&bp(&[1, 1], &[1]), 2),
            Err(Error::RankTooSmall { .. })
        ));
        assert_eq!(normalize_weight(&[3, 2, 2]).unwrap(), (bp(&[1], &[]), 2));
        assert_eq!(normalize_weight(&[1, 1, 1]).unwrap(), (bp(&[], &[]), 1));
        assert_eq!(normalize_weight(&[1, 0, -1]).unwrap(), (bp(&[1], &[1]), 0));
        assert_eq!(normalize_weight(&[-1, -2]).unwrap(), (bp(&[], &[1]), -1));
        assert!(normalize_weight(&[0, 1]).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(label_dimension(&bp(&[1], &[1]), 3).unwrap(), 8);
        assert_eq!(label_dimension(&bp(&[2, 1], &[1]), 4).unwrap(), 64);
        let p = dimension_polynomial(&bp(&[1], &[1]));
        assert_eq!(p.coeffs(), &[q(-1), q(0), q(1)]);
    }

    #[test]
    fn pieri_adjoint() {
        let br = pieri_restrict(&bp(&[1], &[1]), 3).unwrap();
        assert_eq!(br.len(), 4);
        let total: u128 = br.iter().map(|b| b.label.dimension()).sum();
        assert_eq!(total, 8);
        assert!(pieri_restrict(&bp(&[1], &[1]), 2).is_err());
    }

    #[test]
    fn lr_agrees_with_pieri_for_adjoint() {
        let label = AlgebraicLabel::new(bp(&[1], &[1]), 3).unwrap();
        let lr = lr_restrict(&label, 2).unwrap();
        let pieri = pieri_restrict(&bp(&[1], &[1]), 3).unwrap();
        assert_eq!(lr.len(), pieri.len());
        for p in &pieri {
            assert!(lr.iter().any(|l| l.left == p.label
                && l.left_det == 0
                && l.right.label.is_trivial()
                && l.right_det == p.torus_exponent
                && l.multiplicity == 1));
        }
        assert_eq!(unique_copy_check(&bp(&[1], &[1]), 2, 3).unwrap(), 1);
    }

    #[test]
    fn label_json() {
        let l = AlgebraicLabel::new(bp(&[2], &[1]), 3).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"plus":[2],"minus":[1],"rank":3}"#);
        assert!(serde_json::from_str::<AlgebraicLabel>(r#"{"plus":[1,1],"minus":[1],"rank":2}"#).is_err());
    }
}
