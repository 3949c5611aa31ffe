//! Conjugacy classes by orbits under conjugation by the generators.

use std::collections::VecDeque;

use super::group::FiniteMatrixGroup;

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    orders: Vec<u64>,
    inverse: Vec<usize>,
}

impl ConjugacyClasses {
    /// Classes are numbered in order of first appearance, so the identity
    /// class is 0.
    pub fn new(group: &FiniteMatrixGroup) -> Self {
        let ring = group.ring();
        let conj: Vec<(Vec<u8>, Vec<u8>)> = group
            .generators()
            .iter()
            .map(|s| (s.clone(), ring.inverse(s).expect("generator invertible")))
            .collect();
        let total = group.order();
        let mut class_of = vec![u32::MAX; total];
        let mut members: Vec<Vec<u32>> = Vec::new();
        let mut buf = vec![0u8; ring.len()];
        let mut buf2 = vec![0u8; ring.len()];
        for start in 0..total {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            class_of[start] = c;
            let mut orbit = vec![start as u32];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (s, s_inv) in &conj {
                    ring.mul_into(s, group.element(x), &mut buf);
                    ring.mul_into(&buf, s_inv, &mut buf2);
                    let y = group.index_of(&buf2).expect("conjugate stays in group");
                    if class_of[y] == u32::MAX {
                        class_of[y] = c;
                        orbit.push(y as u32);
                        queue.push_back(y);
                    }
                }
            }
            members.push(orbit);
        }
        let orders = members
            .iter()
            .map(|m| ring.order(group.element(m[0] as usize)))
            .collect();
        let inverse = members
            .iter()
            .map(|m| class_of[group.inverse_index(m[0] as usize)] as usize)
            .collect();
        ConjugacyClasses {
            class_of,
            members,
            orders,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn class_of_matrix(&self, group: &FiniteMatrixGroup, a: &[u8]) -> Option<usize> {
        group.index_of(a).map(|i| self.class_of(i))
    }

    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }

    pub fn size(&self, c: usize) -> u64 {
        self.members[c].len() as u64
    }

    pub fn rep(&self, c: usize) -> usize {
        self.members[c][0] as usize
    }

    pub fn order(&self, c: usize) -> u64 {
        self.orders[c]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power_class(&self, group: &FiniteMatrixGroup, c: usize, k: u64) -> usize {
        let ring = group.ring();
        let g = ring.pow(group.element(self.rep(c)), k);
        self.class_of_matrix(group, &g).expect("power stays in group")
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| crate::arith::lcm(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate_group, GroupVariant, DEFAULT_GROUP_CAP};

    #[test]
    fn sl3_f2_has_six_classes() {
        let g = enumerate_group(3, 2, GroupVariant::Sl, DEFAULT_GROUP_CAP).unwrap();
        let cl = ConjugacyClasses::new(&g);
        assert_eq!(cl.len(), 6);
        let mut sizes: Vec<u64> = (0..6).map(|c| cl.size(c)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 21, 24, 24, 42, 56]);
        assert_eq!(cl.order(0), 1);
        assert_eq!(cl.exponent(), 84);
    }
}
