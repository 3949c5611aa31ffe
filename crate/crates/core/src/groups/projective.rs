//! Permutation representations on projective space `P(F_p^n)`.

use std::sync::Arc;

use num_traits::One;
use rustc_hash::FxHashMap;

use super::group::{enumerate_group, FiniteMatrixGroup, GroupVariant};
use super::rep::FiniteRep;
use crate::arith::{is_prime, mod_inv};
use crate::error::{Error, Result};
use crate::linalg::{SVec, SparseMatrix, Subspace, Q};
use crate::words::{GenRep, Letter};

/// Points of `P(F_p^n)` as vectors whose first nonzero entry is 1, listed in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    n: usize,
    p: u64,
    points: Vec<Vec<u8>>,
    index: FxHashMap<Vec<u8>, usize>,
}

impl ProjectiveSpace {
    pub fn new(n: usize, p: u64) -> Result<Self> {
        if !is_prime(p) || p > 255 {
            return Err(Error::Precondition(format!("{p} is not a prime below 256")));
        }
        if n == 0 {
            return Err(Error::Invalid("projective space needs n ≥ 1".into()));
        }
        let mut points = Vec::new();
        for lead in 0..n {
            let free = n - lead - 1;
            let count = p.pow(free as u32);
            for code in 0..count {
                let mut v = vec![0u8; n];
                v[lead] = 1;
                let mut c = code;
                for k in (lead + 1..n).rev() {
                    v[k] = (c % p) as u8;
                    c /= p;
                }
                points.push(v);
            }
        }
        points.sort();
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(ProjectiveSpace { n, p, points, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u8] {
        &self.points[i]
    }

    pub fn index_of(&self, v: &[u8]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Scales a nonzero vector so its first nonzero entry is 1.
    pub fn normalize(&self, v: &[u64]) -> Option<Vec<u8>> {
        let lead = v.iter().copied().find(|&x| x % self.p != 0)?;
        let inv = mod_inv(lead % self.p, self.p)?;
        Some(v.iter().map(|&x| (x % self.p * inv % self.p) as u8).collect())
    }

    /// Index of `[g v_i]` for a row-major matrix `g` with integer entries
    /// (reduced mod `p` here).
    pub fn act(&self, g: &[u8], i: usize) -> usize {
        let n = self.n;
        let v = &self.points[i];
        let w: Vec<u64> = (0..n)
            .map(|r| (0..n).map(|c| g[r * n + c] as u64 * v[c] as u64).sum::<u64>())
            .collect();
        let w = self.normalize(&w).expect("invertible matrix maps points to points");
        self.index[&w]
    }

    pub fn permutation(&self, g: &[u8]) -> Vec<usize> {
        (0..self.len()).map(|i| self.act(g, i)).collect()
    }

    pub fn permutation_matrix(&self, g: &[u8]) -> SparseMatrix {
        SparseMatrix::permutation(&self.permutation(g))
    }

    /// The permutation representation as a representation of `SL_n(Z)` (with
    /// `sign`, of `SL^±_n(Z)`; with `units`, also the diagonals over `F_p`).
    pub fn genrep(&self, with_sign: bool, units: &[u64]) -> Result<GenRep<SparseMatrix>> {
        let n = self.n;
        let p = self.p;
        let letter_matrix = |l: &Letter| -> Vec<u8> {
            let mut m = vec![0u8; n * n];
            for k in 0..n {
                m[k * n + k] = 1;
            }
            match *l {
                Letter::Elem { i, j, power } => {
                    m[i * n + j] = power.rem_euclid(p as i64) as u8;
                }
                Letter::Sign { k } => m[k * n + k] = (p - 1) as u8,
                Letter::Diag { k, unit } => m[k * n + k] = (unit % p) as u8,
            }
            m
        };
        GenRep::from_fn(
            n,
            |l| self.permutation_matrix(&letter_matrix(l)),
            with_sign,
            Some(p),
            units,
        )
    }

    /// Span of `δ_i - δ_last`: the functions with total sum zero.
    pub fn sum_zero_subspace(&self) -> Subspace {
        let last = self.len() - 1;
        let vecs: Vec<SVec> = (0..last)
            .map(|i| SVec::from_pairs([(i, Q::one()), (last, -Q::one())]))
            .collect();
        Subspace::spanned_by(self.len(), vecs.iter())
    }

    /// Number of orbits of the group generated by `gens` on ordered pairs of
    /// points. This is the norm of the permutation character.
    pub fn orbital_count(&self, gens: &[Vec<u8>]) -> usize {
        let n = self.len();
        let perms: Vec<Vec<usize>> = gens.iter().map(|g| self.permutation(g)).collect();
        let mut uf = UnionFind::new(n * n);
        for perm in &perms {
            for a in 0..n {
                for b in 0..n {
                    uf.union(a * n + b, perm[a] * n + perm[b]);
                }
            }
        }
        uf.components()
    }

    /// Orbitals as a list of pair-sets, each sorted; ordered by first pair.
    pub fn orbitals(&self, gens: &[Vec<u8>]) -> Vec<Vec<(usize, usize)>> {
        let n = self.len();
        let perms: Vec<Vec<usize>> = gens.iter().map(|g| self.permutation(g)).collect();
        let mut uf = UnionFind::new(n * n);
        for perm in &perms {
            for a in 0..n {
                for b in 0..n {
                    uf.union(a * n + b, perm[a] * n + perm[b]);
                }
            }
        }
        let mut groups: FxHashMap<usize, Vec<(usize, usize)>> = FxHashMap::default();
        for a in 0..n {
            for b in 0..n {
                groups.entry(uf.find(a * n + b)).or_default().push((a, b));
            }
        }
        let mut out: Vec<Vec<(usize, usize)>> = groups.into_values().collect();
        out.sort();
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// The permutation representation of `SL_n(F_p)` on `P(F_p^n)` and its
/// sum-zero subrepresentation.
#[derive(Clone, Debug)]
pub struct ProjectiveReps {
    pub space: ProjectiveSpace,
    pub permutation: FiniteRep,
    pub sum_zero: FiniteRep,
}

pub fn projective_space_rep(n: usize, p: u64, cap: u64, seed: u64) -> Result<ProjectiveReps> {
    let space = ProjectiveSpace::new(n, p)?;
    let group: Arc<FiniteMatrixGroup> = Arc::new(enumerate_group(n, p, GroupVariant::Sl, cap)?);
    let sp = space.clone();
    let permutation = FiniteRep::from_action(group.clone(), space.len(), move |g, i| sp.act(g, i), seed)?;
    let sub = space.sum_zero_subspace();
    let images = permutation
        .generator_images()
        .iter()
        .map(|m| {
            m.restrict_to(&sub)
                .ok_or_else(|| Error::Integrity("sum-zero subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let sum_zero = FiniteRep::new(group, images, seed)?;
    Ok(ProjectiveReps {
        space,
        permutation,
        sum_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_GROUP_CAP;

    #[test]
    fn fano_plane() {
        let reps = projective_space_rep(3, 2, DEFAULT_GROUP_CAP, 0).unwrap();
        assert_eq!(reps.space.len(), 7);
        assert_eq!(reps.sum_zero.dim(), 6);
        let gens = reps.permutation.group().generators().to_vec();
        assert_eq!(reps.space.orbital_count(&gens), 2);
        assert_eq!(reps.permutation.factoring_level().unwrap(), 2);
    }

    #[test]
    fn genrep_satisfies_relations() {
        let space = ProjectiveSpace::new(3, 3).unwrap();
        let rep = space.genrep(true, &[2]).unwrap();
        rep.check_relations().unwrap();
        assert_eq!(rep.dim(), 13);
    }
}
