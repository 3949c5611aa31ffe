//! Representations of enumerated finite groups, given by images of the
//! group's generators.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chartable::CharacterTable;
use super::group::{FiniteMatrixGroup, GroupVariant};
use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, Q};
use crate::words::{factor_residue, GenRep, LinearOp};

/// Homomorphism checks run on every Schreier edge up to this many, and on
/// a seeded sample beyond it.
const FULL_CHECK_EDGES: usize = 4000;
const SAMPLED_EDGES: usize = 400;

#[derive(Clone, Debug)]
pub struct FiniteRep {
    group: Arc<FiniteMatrixGroup>,
    images: Vec<SparseMatrix>,
    dim: usize,
}

impl FiniteRep {
    /// `images[k]` is the image of `group.generators()[k]`. The images are
    /// checked against the multiplication table on Schreier edges.
    pub fn new(group: Arc<FiniteMatrixGroup>, images: Vec<SparseMatrix>, seed: u64) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::Invalid("one image per generator required".into()));
        }
        let dim = images.first().map_or(0, |m| m.nrows());
        if images.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Invalid("generator images must be square of equal size".into()));
        }
        let rep = FiniteRep { group, images, dim };
        rep.check_homomorphism(seed)?;
        Ok(rep)
    }

    /// Restricts a representation of `SL_n(Z)` (or `GL_n`) that factors
    /// through `Z/m` to an enumerated group mod `ℓ`, where `m | ℓ`.
    pub fn from_genrep<M: LinearOp + Into<SparseMatrix>>(
        group: Arc<FiniteMatrixGroup>,
        rep: &GenRep<M>,
        seed: u64,
    ) -> Result<Self> {
        let m = rep
            .modulus()
            .ok_or_else(|| Error::Precondition("representation does not declare a modulus".into()))?;
        if group.modulus() % m != 0 {
            return Err(Error::Precondition(format!(
                "representation modulus {m} does not divide group modulus {}",
                group.modulus()
            )));
        }
        let ring = *group.ring();
        let images = group
            .generators()
            .iter()
            .map(|g| {
                let reduced = ring.to_intmat(&ring.reduce_to(g, m));
                let word = factor_residue(&reduced, m, rep.has_sign())?;
                Ok(rep.eval(&word)?.into())
            })
            .collect::<Result<Vec<SparseMatrix>>>()?;
        Self::new(group, images, seed)
    }

    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_images(&self) -> &[SparseMatrix] {
        &self.images
    }

    fn image_of_index(&self, i: usize) -> SparseMatrix {
        self.group
            .word_of(i)
            .iter()
            .fold(SparseMatrix::identity(self.dim), |acc, &g| acc.mul(&self.images[g]))
    }

    pub fn image(&self, g: &[u8]) -> Result<SparseMatrix> {
        let i = self
            .group
            .index_of(g)
            .ok_or_else(|| Error::Precondition("element is not in the group".into()))?;
        Ok(self.image_of_index(i))
    }

    pub fn trace_at(&self, g: &[u8]) -> Result<Q> {
        Ok(self.image(g)?.trace())
    }

    fn check_homomorphism(&self, seed: u64) -> Result<()> {
        let order = self.group.order();
        let gens = self.images.len();
        let edges = order * gens;
        let picks: Vec<usize> = if edges <= FULL_CHECK_EDGES {
            (0..edges).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = sample(&mut rng, edges, SAMPLED_EDGES).into_vec();
            v.sort_unstable();
            v
        };
        for e in picks {
            let (x, s) = (e / gens, e % gens);
            let prod = self
                .group
                .ring()
                .mul(self.group.element(x), &self.group.generators()[s]);
            let lhs = self.image_of_index(x).mul(&self.images[s]);
            if lhs != self.image(&prod)? {
                return Err(Error::Integrity(format!(
                    "images violate the multiplication table at element {x}, generator {s}"
                )));
            }
        }
        Ok(())
    }

    /// Character values at the class representatives of `table`.
    pub fn character(&self, table: &CharacterTable) -> Result<Vec<Q>> {
        table.classes().iter().map(|c| self.trace_at(&c.rep)).collect()
    }

    /// Irreducible constituents with multiplicities.
    pub fn decompose(&self, table: &CharacterTable) -> Result<Vec<(String, u64)>> {
        if table.group_order() != self.group.order() as u64 || table.modulus() != self.group.modulus() {
            return Err(Error::Precondition("character table is for a different group".into()));
        }
        table.decompose_class_function(&self.character(table)?)
    }

    /// Smallest `ℓ' | ℓ` such that the reduction kernel acts trivially.
    pub fn factoring_level(&self) -> Result<u64> {
        let ring = *self.group.ring();
        let mut ds = divisors(self.group.modulus());
        ds.sort_unstable();
        for d in ds {
            let kernel = self.group.filtered(GroupVariant::Kernel { level: d }, |a| {
                ring.is_congruent_to_identity(a, d)
            })?;
            let mut trivial = true;
            for g in kernel.generators() {
                if !self.image(g)?.is_identity() {
                    trivial = false;
                    break;
                }
            }
            if trivial {
                return Ok(d);
            }
        }
        Ok(self.group.modulus())
    }

    /// Permutation representation from an action on `0..points`.
    pub fn from_action(
        group: Arc<FiniteMatrixGroup>,
        points: usize,
        act: impl Fn(&[u8], usize) -> usize,
        seed: u64,
    ) -> Result<Self> {
        let images = group
            .generators()
            .iter()
            .map(|g| {
                let perm: Vec<usize> = (0..points).map(|x| act(g, x)).collect();
                SparseMatrix::permutation(&perm)
            })
            .collect();
        Self::new(group, images, seed)
    }

    /// Left regular representation.
    pub fn regular(group: Arc<FiniteMatrixGroup>, seed: u64) -> Result<Self> {
        let g2 = group.clone();
        Self::from_action(
            group,
            g2.order(),
            |s, x| {
                let prod = g2.ring().mul(s, g2.element(x));
                g2.index_of(&prod).expect("closed")
            },
            seed,
        )
    }

    pub fn trivial(group: Arc<FiniteMatrixGroup>) -> Result<Self> {
        let k = group.generators().len();
        Self::new(group, vec![SparseMatrix::identity(1); k], 0)
    }

    /// `⟨χ, χ⟩` computed from the table.
    pub fn norm(&self, table: &CharacterTable) -> Result<Q> {
        let chi = self.character(table)?;
        let mut acc = Q::zero();
        for (c, info) in table.classes().iter().enumerate() {
            acc += &chi[c] * &chi[c] * crate::linalg::q(info.size as i64);
        }
        Ok(acc / crate::linalg::q(table.group_order() as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{character_table, enumerate_group, DEFAULT_GROUP_CAP};

    #[test]
    fn regular_rep_of_unitriangular() {
        let g = Arc::new(enumerate_group(3, 2, GroupVariant::U, DEFAULT_GROUP_CAP).unwrap());
        let table = character_table(g.clone()).unwrap();
        let reg = FiniteRep::regular(g.clone(), 1).unwrap();
        for (id, m) in reg.decompose(&table).unwrap() {
            assert_eq!(m, table.character(&id).unwrap().dim);
        }
        let triv = FiniteRep::trivial(g).unwrap();
        let dec = triv.decompose(&table).unwrap();
        assert_eq!(dec.len(), 1);
        assert!(table.character(&dec[0].0).unwrap().is_trivial());
    }
}
