//! Partitions, bipartitions and the combinatorics used by the branching rules:
//! horizontal strips, Littlewood-Richardson coefficients and a containment
//! compatible total order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// An integer partition stored as its weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates that `parts` is weakly decreasing. Trailing zeros are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts {parts:?} are not weakly decreasing"));
        }
        if parts.contains(&0) {
            return invalid(format!("zero part inside {parts:?}"));
        }
        Ok(Partition(parts))
    }

    /// Panicking constructor for literals in code and tests.
    pub fn from_parts(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("invalid partition literal")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Diagram containment `mu ⊆ self`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && (0..mu.len()).all(|i| mu.0[i] <= self.0[i])
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let mut out = Vec::with_capacity(width);
        for c in 0..width {
            out.push(self.0.iter().filter(|&&p| p as usize > c).count() as u32);
        }
        Partition(out)
    }

    /// All `mu ⊆ self` such that `self / mu` has at most one cell per column,
    /// including `self` and the empty partition. Listed in decreasing
    /// lexicographic order.
    pub fn horizontal_strips(&self) -> Vec<Partition> {
        // mu interlaces: self_1 >= mu_1 >= self_2 >= mu_2 >= ...
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        self.strips_rec(0, &mut cur, &mut out);
        out
    }

    fn strips_rec(&self, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == self.len() {
            out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            return;
        }
        let hi = self.0[i];
        let lo = self.part(i + 1);
        for v in (lo..=hi).rev() {
            cur.push(v);
            self.strips_rec(i + 1, cur, out);
            cur.pop();
        }
    }

    /// Every partition contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.sub_rec(0, u32::MAX, &mut cur, &mut out);
        out
    }

    fn sub_rec(&self, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if i == self.len() {
            return;
        }
        for v in 1..=self.0[i].min(cap) {
            cur.push(v);
            self.sub_rec(i + 1, v, cur, out);
            cur.pop();
        }
    }
}

/// All partitions of `k` with at most `max_len` parts, in decreasing
/// lexicographic order.
pub fn partitions_of(k: u32, max_len: usize) -> Vec<Partition> {
    fn rec(rem: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for v in (1..=rem.min(cap)).rev() {
            cur.push(v);
            rec(rem - v, v, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, max_len, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A pair of partitions labelling a rational representation family.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bipartition {
    pub plus: Partition,
    pub minus: Partition,
}

impl Bipartition {
    pub fn new(plus: Partition, minus: Partition) -> Self {
        Bipartition { plus, minus }
    }

    pub fn from_parts(plus: &[u32], minus: &[u32]) -> Self {
        Bipartition::new(Partition::from_parts(plus), Partition::from_parts(minus))
    }

    pub fn trivial() -> Self {
        Bipartition::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.plus.size() + self.minus.size()
    }

    /// `ℓ(λ⁺) + ℓ(λ⁻)`, the least rank at which the label is defined.
    pub fn length(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn contains(&self, other: &Bipartition) -> bool {
        self.plus.contains(&other.plus) && self.minus.contains(&other.minus)
    }

    /// The label of the dual family.
    pub fn swapped(&self) -> Bipartition {
        Bipartition::new(self.minus.clone(), self.plus.clone())
    }

    /// Componentwise horizontal strips.
    pub fn hs_pairs(&self) -> Vec<Bipartition> {
        let plus = self.plus.horizontal_strips();
        let minus = self.minus.horizontal_strips();
        let mut out = Vec::with_capacity(plus.len() * minus.len());
        for p in &plus {
            for m in &minus {
                out.push(Bipartition::new(p.clone(), m.clone()));
            }
        }
        out
    }

    fn refinement_cmp(&self, other: &Bipartition) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.plus.size().cmp(&self.plus.size()))
            .then_with(|| self.plus.cmp(&other.plus))
            .then_with(|| self.minus.cmp(&other.minus))
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plus, self.minus)
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.plus, &self.minus).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bipartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (plus, minus) = <(Partition, Partition)>::deserialize(d)?;
        Ok(Bipartition::new(plus, minus))
    }
}

/// Total order refining containment: total size, then larger `|λ⁺|` first,
/// then `λ⁺` and `λ⁻` lexicographically. Duplicates are removed.
pub fn containment_refinement(labels: &[Bipartition]) -> Vec<Bipartition> {
    let mut v = labels.to_vec();
    v.sort_by(|a, b| a.refinement_cmp(b));
    v.dedup();
    v
}

/// Littlewood-Richardson coefficient `c^ν_{λ,μ}`: the number of
/// semistandard fillings of `ν/λ` with content `μ` whose reverse reading word
/// is a lattice word.
pub fn lr_coefficient(nu: &Partition, lambda: &Partition, mu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let rows = nu.len();
    let mut filling: Vec<Vec<u32>> = (0..rows)
        .map(|r| vec![0; (nu.part(r) - lambda.part(r)) as usize])
        .collect();
    let mut counts = vec![0u32; mu.len() + 1];
    let mut search = LrSearch {
        nu,
        lambda,
        mu,
        filling: &mut filling,
        counts: &mut counts,
    };
    search.fill(0, nu.part(0) as i64 - 1)
}

struct LrSearch<'a> {
    nu: &'a Partition,
    lambda: &'a Partition,
    mu: &'a Partition,
    filling: &'a mut Vec<Vec<u32>>,
    counts: &'a mut Vec<u32>,
}

impl LrSearch<'_> {
    fn value_at(&self, r: usize, c: usize) -> Option<u32> {
        let start = self.lambda.part(r) as usize;
        if c >= start && c < self.nu.part(r) as usize {
            Some(self.filling[r][c - start])
        } else {
            None
        }
    }

    /// Fill row `r` from column `c` leftwards, then continue with later rows.
    fn fill(&mut self, r: usize, c: i64) -> u64 {
        if r == self.nu.len() {
            return 1;
        }
        let start = self.lambda.part(r) as i64;
        if c < start {
            let next_c = self.nu.part(r + 1) as i64 - 1;
            return self.fill(r + 1, next_c);
        }
        let cu = c as usize;
        let mut hi = (self.mu.len() as u32).min(r as u32 + 1);
        if let Some(right) = self.value_at(r, cu + 1) {
            hi = hi.min(right);
        }
        let lo = match (r > 0).then(|| self.value_at(r - 1, cu)).flatten() {
            Some(above) => above + 1,
            None => 1,
        };
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if self.counts[vi] >= self.mu.part(vi - 1) {
                continue;
            }
            if vi > 1 && self.counts[vi] + 1 > self.counts[vi - 1] {
                continue;
            }
            self.counts[vi] += 1;
            self.filling[r][cu - start as usize] = v;
            total += self.fill(r, c - 1);
            self.counts[vi] -= 1;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn strips_of_21() {
        let hs = p(&[2, 1]).horizontal_strips();
        assert_eq!(hs, vec![p(&[2, 1]), p(&[2]), p(&[1, 1]), p(&[1])]);
        assert_eq!(Partition::empty().horizontal_strips(), vec![Partition::empty()]);
        assert_eq!(p(&[1]).horizontal_strips(), vec![p(&[1]), Partition::empty()]);
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn small_lr_values() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[1]), &p(&[1, 1])), 0);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[2]), &Partition::empty()), 0);
    }

    #[test]
    fn refinement_example() {
        let a = Bipartition::from_parts(&[1], &[]);
        let b = Bipartition::from_parts(&[], &[1]);
        assert_eq!(containment_refinement(&[b.clone(), a.clone()]), vec![a, b]);
    }

    #[test]
    fn json_shape() {
        let b = Bipartition::from_parts(&[2, 1], &[1]);
        assert_eq!(serde_json::to_string(&b).unwrap(), "[[2,1],[1]]");
        let back: Bipartition = serde_json::from_str("[[2,1],[1]]").unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<Bipartition>("[[1,2],[]]").is_err());
    }

    #[test]
    fn conjugate_and_subpartitions() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1]).subpartitions().len(), 5);
        assert_eq!(partitions_of(4, 4).len(), 5);
        assert_eq!(partitions_of(4, 2).len(), 3);
    }
}
