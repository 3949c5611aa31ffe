//! Finite matrix groups over `Z/ℓ`, enumerated by closure.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::ring::MatrixRing;
use crate::arith::{factorize, gcd};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_GROUP_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupVariant {
    Sl,
    SlPm,
    Gl,
    /// Upper unitriangular matrices.
    U,
    /// Kernel of reduction `SL_n(Z/ℓ) → SL_n(Z/level)`.
    Kernel {
        level: u64,
    },
    /// Closure of an explicit generating set.
    Generated,
}

impl fmt::Display for GroupVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupVariant::Sl => write!(f, "SL"),
            GroupVariant::SlPm => write!(f, "SL±"),
            GroupVariant::Gl => write!(f, "GL"),
            GroupVariant::U => write!(f, "U"),
            GroupVariant::Kernel { level } => write!(f, "ker(mod {level})"),
            GroupVariant::Generated => write!(f, "generated"),
        }
    }
}

impl std::str::FromStr for GroupVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "sl" => Ok(GroupVariant::Sl),
            "slpm" | "sl+-" | "sl±" => Ok(GroupVariant::SlPm),
            "gl" => Ok(GroupVariant::Gl),
            "u" => Ok(GroupVariant::U),
            _ => {
                if let Some(rest) = lower.strip_prefix("kernel:") {
                    let level = rest
                        .parse()
                        .map_err(|_| Error::Invalid(format!("bad kernel level in {s:?}")))?;
                    return Ok(GroupVariant::Kernel { level });
                }
                invalid(format!("unknown group variant {s:?} (sl, slpm, gl, u, kernel:<d>)"))
            }
        }
    }
}

fn pow_u128(b: u128, e: u32) -> u128 {
    b.saturating_pow(e)
}

/// `|GL_n(Z/ℓ)|`, saturating.
pub fn gl_order(n: usize, ell: u64) -> u128 {
    let mut total: u128 = 1;
    for (p, k) in factorize(ell) {
        let p = p as u128;
        let mut g: u128 = 1;
        let pn = pow_u128(p, n as u32);
        for i in 0..n {
            g = g.saturating_mul(pn - pow_u128(p, i as u32));
        }
        g = g.saturating_mul(pow_u128(p, (k - 1) * (n * n) as u32));
        total = total.saturating_mul(g);
    }
    total
}

/// `|SL_n(Z/ℓ)|`, saturating.
pub fn sl_order(n: usize, ell: u64) -> u128 {
    if ell == 1 {
        return 1;
    }
    gl_order(n, ell) / crate::arith::euler_phi(ell) as u128
}

/// Predicted order of the group without enumerating it.
pub fn predicted_order(n: usize, ell: u64, variant: GroupVariant) -> Result<u128> {
    Ok(match variant {
        GroupVariant::Sl => sl_order(n, ell),
        GroupVariant::SlPm => sl_order(n, ell) * if ell > 2 { 2 } else { 1 },
        GroupVariant::Gl => gl_order(n, ell),
        GroupVariant::U => pow_u128(ell as u128, (n * (n - 1) / 2) as u32),
        GroupVariant::Kernel { level } => {
            if level == 0 || ell % level != 0 {
                return invalid(format!("kernel level {level} does not divide {ell}"));
            }
            sl_order(n, ell) / sl_order(n, level)
        }
        GroupVariant::Generated => return invalid("generated groups have no predicted order"),
    })
}

/// A finite group of `n × n` matrices over `Z/ℓ`, with every element listed.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    ring: MatrixRing,
    variant: GroupVariant,
    elements: Vec<u8>,
    index: FxHashMap<u128, u32>,
    generators: Vec<Vec<u8>>,
    /// Schreier tree: element `i > 0` equals `element(parent) · generator`.
    tree: Vec<(u32, u16)>,
}

impl FiniteMatrixGroup {
    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus
    }

    pub fn ring(&self) -> &MatrixRing {
        &self.ring
    }

    pub fn variant(&self) -> GroupVariant {
        self.variant
    }

    pub fn order(&self) -> usize {
        self.elements.len() / self.ring.len()
    }

    pub fn element(&self, i: usize) -> &[u8] {
        let s = self.ring.len();
        &self.elements[i * s..(i + 1) * s]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u8]> {
        self.elements.chunks(self.ring.len())
    }

    pub fn index_of(&self, a: &[u8]) -> Option<usize> {
        self.index.get(&self.ring.key(a)).map(|&i| i as usize)
    }

    pub fn contains(&self, a: &[u8]) -> bool {
        self.index_of(a).is_some()
    }

    pub fn generators(&self) -> &[Vec<u8>] {
        &self.generators
    }

    /// Generator indices whose product, left to right, is element `i`.
    pub fn word_of(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while i != 0 {
            let (parent, g) = self.tree[i];
            word.push(g as usize);
            i = parent as usize;
        }
        word.reverse();
        word
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let prod = self.ring.mul(self.element(a), self.element(b));
        self.index_of(&prod).expect("group closed under products")
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        let inv = self.ring.inverse(self.element(a)).expect("group element invertible");
        self.index_of(&inv).expect("group closed under inverses")
    }

    pub fn describe(&self) -> String {
        format!("{}_{}(Z/{})", self.variant, self.n(), self.modulus())
    }

    /// Elements as row lists, for reports.
    pub fn element_rows(&self, i: usize) -> Vec<Vec<u8>> {
        self.ring.rows(self.element(i))
    }

    fn from_closure(ring: MatrixRing, variant: GroupVariant, generators: Vec<Vec<u8>>, cap: u64) -> Result<Self> {
        let (elements, index, tree) = closure(&ring, &generators, cap)?;
        Ok(FiniteMatrixGroup {
            ring,
            variant,
            elements,
            index,
            generators,
            tree,
        })
    }

    /// Subgroup generated by `gens`.
    pub fn generated(ring: MatrixRing, gens: Vec<Vec<u8>>, cap: u64) -> Result<Self> {
        Self::from_closure(ring, GroupVariant::Generated, gens, cap)
    }

    /// Subgroup of elements satisfying `keep`, with a generating set picked
    /// greedily.
    pub fn filtered(&self, variant: GroupVariant, keep: impl Fn(&[u8]) -> bool) -> Result<Self> {
        let ring = self.ring;
        let members: Vec<&[u8]> = self.elements().filter(|a| keep(a)).collect();
        if !members.iter().any(|a| ring.is_identity(a)) {
            return Err(Error::Integrity("filtered subset misses the identity".into()));
        }
        let wanted: rustc_hash::FxHashSet<u128> = members.iter().map(|a| ring.key(a)).collect();
        // greedy generating set
        let mut gens: Vec<Vec<u8>> = Vec::new();
        let mut span = closure(&ring, &gens, u64::MAX)?;
        for a in &members {
            if span.1.len() == members.len() {
                break;
            }
            if !span.1.contains_key(&ring.key(a)) {
                gens.push(a.to_vec());
                span = closure(&ring, &gens, u64::MAX)?;
                if span.1.keys().any(|k| !wanted.contains(k)) {
                    return Err(Error::Integrity("filtered subset is not a subgroup".into()));
                }
            }
        }
        let (elements, index, tree) = span;
        Ok(FiniteMatrixGroup {
            ring,
            variant,
            elements,
            index,
            generators: gens,
            tree,
        })
    }

    /// Is `sub` (all its elements) contained in `self`?
    pub fn contains_group(&self, sub: &FiniteMatrixGroup) -> bool {
        sub.elements().all(|a| self.contains(a))
    }
}

/// Breadth-first closure of `gens` under right multiplication.
fn closure(ring: &MatrixRing, gens: &[Vec<u8>], cap: u64) -> Result<(Vec<u8>, FxHashMap<u128, u32>, Vec<(u32, u16)>)> {
    let s = ring.len();
    let id = ring.identity();
    let mut elements = id.clone();
    let mut index = FxHashMap::default();
    index.insert(ring.key(&id), 0u32);
    let mut tree = vec![(0u32, 0u16)];
    let mut queue = VecDeque::from([0usize]);
    let mut buf = vec![0u8; s];
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            ring.mul_into(&elements[i * s..(i + 1) * s], g, &mut buf);
            let key = ring.key(&buf);
            if index.contains_key(&key) {
                continue;
            }
            let next = elements.len() / s;
            if next as u64 >= cap {
                return Err(Error::GroupTooLarge {
                    predicted: next as u128 + 1,
                    cap,
                });
            }
            index.insert(key, next as u32);
            tree.push((i as u32, gi as u16));
            elements.extend_from_slice(&buf);
            queue.push_back(next);
        }
    }
    Ok((elements, index, tree))
}

/// Standard generators of the variant.
pub fn standard_generators(ring: &MatrixRing, variant: GroupVariant) -> Vec<Vec<u8>> {
    let n = ring.n;
    let ell = ring.modulus;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || (variant == GroupVariant::U && i > j) {
                continue;
            }
            gens.push(ring.elementary(i, j, 1));
        }
    }
    match variant {
        GroupVariant::SlPm if ell > 2 => gens.push(ring.diagonal(0, ell - 1)),
        GroupVariant::Gl => {
            for u in 2..ell {
                if gcd(u, ell) == 1 {
                    gens.push(ring.diagonal(0, u));
                }
            }
        }
        _ => {}
    }
    gens
}

/// Enumerates `variant_n(Z/ℓ)` after checking its predicted order against `cap`.
pub fn enumerate_group(n: usize, ell: u64, variant: GroupVariant, cap: u64) -> Result<FiniteMatrixGroup> {
    if n == 0 {
        return invalid("rank must be positive");
    }
    let predicted = predicted_order(n, ell, variant)?;
    if predicted > cap as u128 {
        return Err(Error::GroupTooLarge { predicted, cap });
    }
    let ring = MatrixRing::new(n, ell)?;
    let group = match variant {
        GroupVariant::Kernel { level } => {
            let sl = FiniteMatrixGroup::from_closure(
                ring,
                GroupVariant::Sl,
                standard_generators(&ring, GroupVariant::Sl),
                cap,
            )?;
            sl.filtered(variant, |a| ring.is_congruent_to_identity(a, level))?
        }
        _ => FiniteMatrixGroup::from_closure(ring, variant, standard_generators(&ring, variant), cap)?,
    };
    if group.order() as u128 != predicted {
        return Err(Error::Integrity(format!(
            "{} has {} elements, expected {predicted}",
            group.describe(),
            group.order()
        )));
    }
    Ok(group)
}

/// Smallest normal subgroup of `group` containing `g`.
pub fn normal_closure(g: &[u8], group: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
    if !group.contains(g) {
        return Err(Error::Precondition("element is not in the group".into()));
    }
    let ring = *group.ring();
    let conj: Vec<(Vec<u8>, Vec<u8>)> = group
        .generators()
        .iter()
        .map(|s| (s.clone(), ring.inverse(s).expect("generator invertible")))
        .collect();
    let mut gens = if ring.is_identity(g) { vec![] } else { vec![g.to_vec()] };
    let cap = group.order() as u64 + 1;
    let mut sub = FiniteMatrixGroup::generated(ring, gens.clone(), cap)?;
    loop {
        let mut grew = false;
        let snapshot = gens.clone();
        for t in &snapshot {
            for (s, s_inv) in &conj {
                let c = ring.mul(&ring.mul(s, t), s_inv);
                if !sub.contains(&c) {
                    gens.push(c);
                    sub = FiniteMatrixGroup::generated(ring, gens.clone(), cap)?;
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(sub);
        }
    }
}

/// Prime-power factorization of the modulus, with the reduction maps
/// `Z/ℓ → Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrtSplit {
    pub modulus: u64,
    pub factors: Vec<(u64, u32)>,
}

impl CrtSplit {
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    /// Componentwise reductions of one element.
    pub fn reduce(&self, a: &[u8]) -> Vec<Vec<u8>> {
        self.prime_powers()
            .iter()
            .map(|&q| a.iter().map(|&v| (v as u64 % q) as u8).collect())
            .collect()
    }

    /// Inverse of `reduce`.
    pub fn lift(&self, parts: &[Vec<u8>]) -> Vec<u8> {
        let qs = self.prime_powers();
        let len = parts[0].len();
        (0..len)
            .map(|idx| {
                let mut x = 0u64;
                let mut m = 1u64;
                for (q, part) in qs.iter().zip(parts) {
                    // solve x' ≡ x mod m, x' ≡ part mod q
                    let r = part[idx] as u64;
                    let inv = crate::arith::mod_inv(m % q, *q).unwrap_or(0);
                    let t = ((r + q - x % q) % q) * inv % q;
                    x += m * t;
                    m *= q;
                }
                x as u8
            })
            .collect()
    }

    /// Enumerates `SL_n(Z/ℓ)` and its prime-power factors and checks that the
    /// reduction map is a bijection onto the product. Returns the orders.
    pub fn verify(&self, n: usize, cap: u64) -> Result<(usize, Vec<usize>)> {
        let whole = enumerate_group(n, self.modulus, GroupVariant::Sl, cap)?;
        let parts: Vec<FiniteMatrixGroup> = self
            .prime_powers()
            .iter()
            .map(|&q| enumerate_group(n, q, GroupVariant::Sl, cap))
            .collect::<Result<_>>()?;
        for a in whole.elements() {
            let comps = self.reduce(a);
            for (c, g) in comps.iter().zip(&parts) {
                if !g.contains(c) {
                    return Err(Error::Integrity("reduction leaves the factor group".into()));
                }
            }
            if self.lift(&comps) != a {
                return Err(Error::Integrity("CRT lift does not invert reduction".into()));
            }
        }
        let orders: Vec<usize> = parts.iter().map(|g| g.order()).collect();
        if orders.iter().product::<usize>() != whole.order() {
            return Err(Error::Integrity("CRT order identity fails".into()));
        }
        Ok((whole.order(), orders))
    }
}

pub fn crt_split(ell: u64) -> Result<CrtSplit> {
    if ell < 2 {
        return invalid("modulus must be at least 2");
    }
    Ok(CrtSplit {
        modulus: ell,
        factors: factorize(ell),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let cap = DEFAULT_GROUP_CAP;
        assert_eq!(enumerate_group(3, 2, GroupVariant::Sl, cap).unwrap().order(), 168);
        assert_eq!(enumerate_group(3, 2, GroupVariant::U, cap).unwrap().order(), 8);
        assert_eq!(enumerate_group(2, 3, GroupVariant::SlPm, cap).unwrap().order(), 48);
        assert_eq!(enumerate_group(2, 3, GroupVariant::Gl, cap).unwrap().order(), 48);
        let k = enumerate_group(3, 4, GroupVariant::Kernel { level: 2 }, cap).unwrap();
        assert_eq!(k.order(), 256);
        assert!(matches!(
            enumerate_group(3, 7, GroupVariant::Sl, 1000),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn closures() {
        let g = enumerate_group(3, 2, GroupVariant::Sl, DEFAULT_GROUP_CAP).unwrap();
        let e = g.ring().elementary(0, 1, 1);
        assert_eq!(normal_closure(&e, &g).unwrap().order(), 168);
        assert_eq!(normal_closure(&g.ring().identity(), &g).unwrap().order(), 1);
    }

    #[test]
    fn crt() {
        let s = crt_split(6).unwrap();
        assert_eq!(s.factors, vec![(2, 1), (3, 1)]);
        assert_eq!(crt_split(4).unwrap().factors, vec![(2, 2)]);
        let (whole, parts) = s.verify(2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(whole, 144);
        assert_eq!(parts, vec![6, 24]);
    }
}
