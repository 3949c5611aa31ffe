//! Exact character tables by Dixon's method: the class-multiplication
//! matrices are diagonalized simultaneously over a prime field containing
//! the relevant roots of unity, and each value is lifted back through its
//! eigenvalue multiplicities.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;
use rustc_hash::FxHasher;
use serde::Serialize;

use super::classes::ConjugacyClasses;
use super::group::{crt_split, enumerate_group, FiniteMatrixGroup, GroupVariant};
use crate::arith::{euler_phi, factorize, gcd, is_prime, lcm, mobius, mod_inv, mod_pow};
use crate::error::{Error, Result};
use crate::linalg::{q, CyclotomicNumber, Q};

/// Eigenvalue multiplicities of `ρ(g)` for `g` of order `order`:
/// `mult[k]` counts the eigenvalue `ζ_order^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Spectrum {
    pub order: u64,
    pub mult: Vec<u64>,
}

impl Spectrum {
    pub fn trivial(dim: u64) -> Self {
        Spectrum {
            order: 1,
            mult: vec![dim],
        }
    }

    pub fn dim(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// Multiplicative orders of the eigenvalues that occur.
    pub fn eigenvalue_orders(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, _)| self.order / gcd(k as u64, self.order))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `lcm` of the eigenvalue orders.
    pub fn order_lcm(&self) -> u64 {
        self.eigenvalue_orders().into_iter().fold(1, lcm)
    }

    /// Is `ρ(g)^t` the identity?
    pub fn power_is_trivial(&self, t: u64) -> bool {
        self.eigenvalue_orders().iter().all(|&o| t % o == 0)
    }

    /// Spectrum of `ρ(g^t)`.
    pub fn power(&self, t: u64) -> Spectrum {
        let o = self.order / gcd(t, self.order);
        let mut mult = vec![0u64; o as usize];
        for (k, &m) in self.mult.iter().enumerate() {
            // ζ_order^{k t} = ζ_o^{k t / (order / o)}
            let e = (k as u64 * t) % self.order;
            mult[(e / (self.order / o)) as usize] += m;
        }
        Spectrum { order: o, mult }
    }

    /// The character value, written over the smallest `Q(ζ_c)` with `c` the
    /// lcm of the eigenvalue orders.
    pub fn value(&self) -> CyclotomicNumber {
        let c = self.order_lcm();
        let step = self.order / c;
        let mut mult = vec![0u64; c as usize];
        for (k, &m) in self.mult.iter().enumerate() {
            if m > 0 {
                mult[k / step as usize] += m;
            }
        }
        CyclotomicNumber::from_exponent_counts(c, &mult)
    }

    /// Normalized trace of the value; the rational part that survives
    /// averaging over Galois conjugates.
    pub fn value_trace(&self) -> Q {
        let mut by_gcd: Vec<(u64, i64)> = Vec::new();
        for (k, &m) in self.mult.iter().enumerate() {
            if m > 0 {
                add_by_gcd(&mut by_gcd, gcd(k as u64, self.order), m as i64);
            }
        }
        trace_sum(self.order, &by_gcd)
    }

    /// Normalized trace of `χ(g) · conj(ψ(g))` for two spectra at the same
    /// element.
    pub fn inner_trace(&self, other: &Spectrum) -> Q {
        assert_eq!(self.order, other.order);
        let o = self.order as usize;
        let mut by_gcd: Vec<(u64, i64)> = Vec::new();
        for delta in 0..o {
            let mut c = 0i64;
            for a in 0..o {
                let ma = self.mult[a];
                if ma == 0 {
                    continue;
                }
                let mb = other.mult[(a + o - delta) % o];
                c += (ma * mb) as i64;
            }
            if c != 0 {
                add_by_gcd(&mut by_gcd, gcd(delta as u64, o as u64), c);
            }
        }
        trace_sum(self.order, &by_gcd)
    }
}

fn add_by_gcd(acc: &mut Vec<(u64, i64)>, g: u64, c: i64) {
    match acc.iter_mut().find(|(h, _)| *h == g) {
        Some(slot) => slot.1 += c,
        None => acc.push((g, c)),
    }
}

/// `Σ c_g · tr(ζ_o^g)` with `tr(ζ_o^g) = μ(o/g)/φ(o/g)`.
fn trace_sum(o: u64, by_gcd: &[(u64, i64)]) -> Q {
    let mut acc = Q::zero();
    for &(g, c) in by_gcd {
        let d = o / g;
        let mu = mobius(d);
        if mu != 0 {
            acc += q(c * mu) / q(euler_phi(d) as i64);
        }
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct Character {
    pub id: String,
    pub dim: u64,
    /// One spectrum per conjugacy class.
    pub spectra: Vec<Spectrum>,
}

impl Character {
    pub fn values(&self) -> Vec<CyclotomicNumber> {
        self.spectra.iter().map(Spectrum::value).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.spectra.iter().all(|s| s.mult[0] == 1)
    }

    /// `dim:hash`, hashing the values in class order. Hashing the sorted
    /// multiset of values would give complex conjugate characters the same
    /// id.
    fn compute_id(&mut self) {
        let vals: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        let mut h = FxHasher::default();
        vals.hash(&mut h);
        self.id = format!("{}:{:016x}", self.dim, h.finish());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    /// Representative, row-major over `Z/ℓ`.
    pub rep: Vec<u8>,
    pub size: u64,
    pub order: u64,
}

#[derive(Clone, Debug)]
enum ClassLookup {
    Direct {
        group: Arc<FiniteMatrixGroup>,
        classes: Arc<ConjugacyClasses>,
    },
    Product {
        moduli: (u64, u64),
        left: Box<CharacterTable>,
        right: Box<CharacterTable>,
    },
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    modulus: u64,
    variant: GroupVariant,
    group_order: u64,
    classes: Vec<ClassInfo>,
    characters: Vec<Character>,
    lookup: ClassLookup,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn variant(&self) -> GroupVariant {
        self.variant
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn character(&self, id: &str) -> Option<&Character> {
        self.characters.iter().find(|c| c.id == id)
    }

    /// Class index of an element of the group, given row-major over `Z/ℓ`.
    pub fn class_of(&self, a: &[u8]) -> Option<usize> {
        match &self.lookup {
            ClassLookup::Direct { group, classes } => classes.class_of_matrix(group, a),
            ClassLookup::Product { moduli, left, right } => {
                let ra: Vec<u8> = a.iter().map(|&v| (v as u64 % moduli.0) as u8).collect();
                let rb: Vec<u8> = a.iter().map(|&v| (v as u64 % moduli.1) as u8).collect();
                Some(left.class_of(&ra)? * right.classes.len() + right.class_of(&rb)?)
            }
        }
    }

    /// Spectrum of `χ` at the element `a`.
    pub fn spectrum_at(&self, chi: &Character, a: &[u8]) -> Option<Spectrum> {
        self.class_of(a).map(|c| chi.spectra[c].clone())
    }

    /// Exact row orthogonality and `Σ dim² = |G|`.
    pub fn verify(&self) -> Result<()> {
        let g = q(self.group_order as i64);
        let dims: u64 = self.characters.iter().map(|c| c.dim * c.dim).sum();
        if dims != self.group_order {
            return Err(Error::Integrity(format!(
                "sum of squared dimensions {dims} differs from |G| = {}",
                self.group_order
            )));
        }
        for (a, x) in self.characters.iter().enumerate() {
            for y in &self.characters[a..] {
                let mut acc = Q::zero();
                for (c, info) in self.classes.iter().enumerate() {
                    acc += x.spectra[c].inner_trace(&y.spectra[c]) * q(info.size as i64);
                }
                let expected = if std::ptr::eq(x, y) { g.clone() } else { Q::zero() };
                if acc != expected {
                    return Err(Error::Integrity(format!(
                        "characters {} and {} fail orthogonality",
                        x.id, y.id
                    )));
                }
            }
        }
        Ok(())
    }

    /// Multiplicities of the irreducibles in a class function with rational
    /// values given per class.
    pub fn decompose_class_function(&self, values: &[Q]) -> Result<Vec<(String, u64)>> {
        let mut out = Vec::new();
        for chi in &self.characters {
            let mut acc = Q::zero();
            for (c, info) in self.classes.iter().enumerate() {
                acc += &values[c] * chi.spectra[c].value_trace() * q(info.size as i64);
            }
            acc /= q(self.group_order as i64);
            if !acc.is_integer() || acc < Q::zero() {
                return Err(Error::Integrity(format!(
                    "multiplicity of {} is {acc}, not a character",
                    chi.id
                )));
            }
            let m = crate::linalg::field::q_to_u64(&acc).expect("nonnegative integer");
            if m > 0 {
                out.push((chi.id.clone(), m));
            }
        }
        Ok(out)
    }

    /// Smallest divisor `ℓ'` of `ℓ` whose reduction kernel lies in `ker χ`.
    pub fn factoring_level(&self, chi: &Character) -> u64 {
        let mut divisors = crate::arith::divisors(self.modulus);
        divisors.sort_unstable();
        for d in divisors {
            let trivial = self
                .classes
                .iter()
                .enumerate()
                .all(|(c, info)| !is_congruent_identity(&info.rep, self.n, d) || chi.spectra[c].mult[0] == chi.dim);
            if trivial {
                return d;
            }
        }
        self.modulus
    }

    /// Table of `G × H` from tables of `G` mod `a` and `H` mod `b`, `gcd(a, b) = 1`,
    /// realized as a group mod `ab` through the Chinese remainder theorem.
    pub fn direct_product(left: CharacterTable, right: CharacterTable) -> Result<CharacterTable> {
        let (a, b) = (left.modulus, right.modulus);
        if gcd(a, b) != 1 || left.n != right.n {
            return Err(Error::Invalid(
                "product tables need coprime moduli and equal rank".into(),
            ));
        }
        let lift = |x: &[u8], y: &[u8]| -> Vec<u8> {
            x.iter()
                .zip(y)
                .map(|(&u, &v)| crt_pair(u as u64, a, v as u64, b) as u8)
                .collect()
        };
        let mut classes = Vec::new();
        for ca in &left.classes {
            for cb in &right.classes {
                classes.push(ClassInfo {
                    rep: lift(&ca.rep, &cb.rep),
                    size: ca.size * cb.size,
                    order: lcm(ca.order, cb.order),
                });
            }
        }
        let mut characters = Vec::new();
        for x in &left.characters {
            for y in &right.characters {
                let mut spectra = Vec::new();
                for sa in &x.spectra {
                    for sb in &y.spectra {
                        spectra.push(spectrum_product(sa, sb));
                    }
                }
                let mut chi = Character {
                    id: String::new(),
                    dim: x.dim * y.dim,
                    spectra,
                };
                chi.compute_id();
                characters.push(chi);
            }
        }
        sort_characters(&mut characters);
        Ok(CharacterTable {
            n: left.n,
            modulus: a * b,
            variant: left.variant,
            group_order: left.group_order * right.group_order,
            classes,
            characters,
            lookup: ClassLookup::Product {
                moduli: (a, b),
                left: Box::new(left),
                right: Box::new(right),
            },
        })
    }
}

fn crt_pair(u: u64, a: u64, v: u64, b: u64) -> u64 {
    // x ≡ u mod a, x ≡ v mod b
    let inv = mod_inv(a % b, b).expect("coprime moduli");
    let t = ((v + b - u % b) % b) * inv % b;
    u + a * t
}

fn spectrum_product(x: &Spectrum, y: &Spectrum) -> Spectrum {
    let o = lcm(x.order, y.order);
    let (sx, sy) = (o / x.order, o / y.order);
    let mut mult = vec![0u64; o as usize];
    for (i, &a) in x.mult.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.mult.iter().enumerate() {
            if b > 0 {
                mult[((i as u64 * sx + j as u64 * sy) % o) as usize] += a * b;
            }
        }
    }
    Spectrum { order: o, mult }
}

fn is_congruent_identity(a: &[u8], n: usize, d: u64) -> bool {
    a.iter().enumerate().all(|(k, &v)| {
        let target = if k / n == k % n { 1 % d } else { 0 };
        v as u64 % d == target
    })
}

fn sort_characters(chars: &mut [Character]) {
    chars.sort_by(|x, y| (!x.is_trivial(), x.dim, &x.id).cmp(&(!y.is_trivial(), y.dim, &y.id)));
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√|G|` and `p ∤ |G|`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let bound = 2 * (order as f64).sqrt().ceil() as u64 + 1;
    let mut p = exponent + 1;
    loop {
        if p > bound && is_prime(p) && order % p != 0 {
            return p;
        }
        p += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let fac = factorize(p - 1);
    (2..p)
        .find(|&g| fac.iter().all(|&(r, _)| mod_pow(g, (p - 1) / r, p) != 1))
        .expect("prime fields are cyclic")
}

/// Character table of an enumerated group.
pub fn character_table(group: Arc<FiniteMatrixGroup>) -> Result<CharacterTable> {
    let classes = Arc::new(ConjugacyClasses::new(&group));
    let r = classes.len();
    let order = group.order() as u64;
    let e = classes.exponent();
    let p = dixon_prime(e, order);
    if p >= 1 << 31 {
        return Err(Error::Cap(format!("Dixon prime {p} too large")));
    }

    // a[j][i][k] = #{w ∈ C_{j'} : z_k w ∈ C_i}
    let ring = group.ring();
    let mut a = vec![0u64; r * r * r];
    let mut buf = vec![0u8; ring.len()];
    for k in 0..r {
        let z = group.element(classes.rep(k));
        for j in 0..r {
            for &w in classes.members(classes.inverse_class(j)) {
                ring.mul_into(z, group.element(w as usize), &mut buf);
                let i = classes.class_of_matrix(&group, &buf).expect("closed");
                a[(j * r + i) * r + k] += 1;
            }
        }
    }
    for v in a.iter_mut() {
        *v %= p;
    }

    let vectors = modp::split_common_eigenvectors(&a, r, p)?;
    let zeta_e = mod_pow(primitive_root(p), (p - 1) / e, p);

    // power maps: classes of g_c^t, t < order(c)
    let powers: Vec<Vec<usize>> = (0..r)
        .map(|c| {
            (0..classes.order(c))
                .map(|t| classes.power_class(&group, c, t))
                .collect()
        })
        .collect();

    let sqrt_bound = (order as f64).sqrt().floor() as u64 + 1;
    let mut characters = Vec::with_capacity(r);
    for v in vectors {
        let v0_inv = mod_inv(v[0], p).ok_or_else(|| Error::Integrity("central character vanishes at 1".into()))?;
        let omega: Vec<u64> = v.iter().map(|x| x * v0_inv % p).collect();
        let mut s = 0u64;
        for c in 0..r {
            let size_inv = mod_inv(classes.size(c) % p, p).expect("p does not divide |G|");
            s = (s + omega[c] * omega[classes.inverse_class(c)] % p * size_inv) % p;
        }
        let target = order % p * mod_inv(s, p).ok_or_else(|| Error::Integrity("degenerate norm".into()))? % p;
        let dim = (1..=sqrt_bound)
            .find(|d| d * d % p == target)
            .ok_or_else(|| Error::Integrity("no degree fits the character norm".into()))?;
        let chi_p: Vec<u64> = (0..r)
            .map(|c| dim % p * omega[c] % p * mod_inv(classes.size(c) % p, p).unwrap() % p)
            .collect();
        let mut spectra = Vec::with_capacity(r);
        for c in 0..r {
            let o = classes.order(c);
            let z = mod_pow(zeta_e, e / o, p);
            let z_inv = mod_inv(z, p).unwrap();
            let o_inv = mod_inv(o % p, p).unwrap();
            let mut mult = vec![0u64; o as usize];
            for (k, slot) in mult.iter_mut().enumerate() {
                let step = mod_pow(z_inv, k as u64, p);
                let mut acc = 0u64;
                let mut w = 1u64;
                for t in 0..o as usize {
                    acc = (acc + chi_p[powers[c][t]] * w) % p;
                    w = w * step % p;
                }
                let m = acc * o_inv % p;
                if m > dim {
                    return Err(Error::Integrity(format!(
                        "eigenvalue multiplicity {m} exceeds degree {dim}"
                    )));
                }
                *slot = m;
            }
            if mult.iter().sum::<u64>() != dim {
                return Err(Error::Integrity(
                    "eigenvalue multiplicities do not sum to the degree".into(),
                ));
            }
            spectra.push(Spectrum { order: o, mult });
        }
        let mut chi = Character {
            id: String::new(),
            dim,
            spectra,
        };
        chi.compute_id();
        characters.push(chi);
    }
    sort_characters(&mut characters);

    let class_info = (0..r)
        .map(|c| ClassInfo {
            rep: group.element(classes.rep(c)).to_vec(),
            size: classes.size(c),
            order: classes.order(c),
        })
        .collect();
    let table = CharacterTable {
        n: group.n(),
        modulus: group.modulus(),
        variant: group.variant(),
        group_order: order,
        classes: class_info,
        characters,
        lookup: ClassLookup::Direct { group, classes },
    };
    table.verify()?;
    Ok(table)
}

/// Table of `SL_n(Z/ℓ)`; composite moduli are assembled from their
/// prime-power factors.
pub fn sl_character_table(n: usize, ell: u64, cap: u64) -> Result<CharacterTable> {
    let split = crt_split(ell)?;
    let mut tables = split
        .prime_powers()
        .into_iter()
        .map(|m| enumerate_group(n, m, GroupVariant::Sl, cap).and_then(|g| character_table(Arc::new(g))));
    let mut acc = tables.next().expect("at least one factor")?;
    for t in tables {
        acc = CharacterTable::direct_product(acc, t?)?;
    }
    acc.verify()?;
    Ok(acc)
}

mod modp {
    use crate::arith::mod_inv;
    use crate::error::{Error, Result};

    /// Rows of a matrix in reduced row echelon form, zero rows dropped.
    pub fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = mod_inv(rows[rank][col], p).unwrap();
            for v in rows[rank].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for j in 0..ncols {
                        rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    /// Kernel of a square matrix given by rows.
    pub fn nullspace(m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let n = m.len();
        let (rows, pivots) = rref(m, p);
        let mut out = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][free]) % p;
            }
            out.push(v);
        }
        out
    }

    /// Characteristic polynomial via Hessenberg reduction; coefficients low
    /// to high, monic.
    pub fn char_poly(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
        let n = h.len();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = mod_inv(h[m][m - 1], p).unwrap();
            for i in m + 1..n {
                let u = h[i][m - 1] * inv % p;
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    h[i][j] = (h[i][j] + (p - u) * h[m][j]) % p;
                }
                for row in h.iter_mut() {
                    row[m] = (row[m] + u * row[i]) % p;
                }
            }
        }
        // p_k(x) for leading k×k block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            // p_{k+1} = (x - h_kk) p_k - Σ_{i<k} h_ik (∏_{j=i+1..k} h_{j,j-1}) p_i
            let mut next = vec![0u64; k + 2];
            for (d, &c) in polys[k].iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % p;
                next[d] = (next[d] + (p - h[k][k]) * c) % p;
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = prod * h[i + 1][i] % p;
                let coef = h[i][k] * prod % p;
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + (p - coef) * c % p) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    fn roots(poly: &[u64], p: u64) -> Vec<u64> {
        (0..p)
            .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
            .collect()
    }

    /// Simultaneous eigenvectors of the class matrices `A_j`, with
    /// `(A_j)_{ik} = a[(j r + i) r + k]`.
    pub fn split_common_eigenvectors(a: &[u64], r: usize, p: u64) -> Result<Vec<Vec<u64>>> {
        let mut whole = vec![vec![0u64; r]; r];
        for (i, row) in whole.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut spaces = vec![(whole, (0..r).collect::<Vec<_>>())];
        for j in 1..r {
            if spaces.iter().all(|(b, _)| b.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for (basis, pivots) in spaces {
                if basis.len() == 1 {
                    next.push((basis, pivots));
                    continue;
                }
                let d = basis.len();
                let images: Vec<Vec<u64>> = basis
                    .iter()
                    .map(|b| {
                        (0..r)
                            .map(|i| {
                                let row = &a[(j * r + i) * r..(j * r + i + 1) * r];
                                row.iter().zip(b).fold(0u64, |acc, (x, y)| (acc + x * y) % p)
                            })
                            .collect()
                    })
                    .collect();
                // restricted[s][t] = coordinate s of A_j b_t
                let restricted: Vec<Vec<u64>> =
                    (0..d).map(|s| (0..d).map(|t| images[t][pivots[s]]).collect()).collect();
                let mut found = 0;
                for lambda in roots(&char_poly(restricted.clone(), p), p) {
                    let shifted: Vec<Vec<u64>> = restricted
                        .iter()
                        .enumerate()
                        .map(|(s, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(t, &x)| if s == t { (x + p - lambda) % p } else { x })
                                .collect()
                        })
                        .collect();
                    let kernel = nullspace(shifted, p);
                    let vecs: Vec<Vec<u64>> = kernel
                        .iter()
                        .map(|c| {
                            (0..r)
                                .map(|i| c.iter().zip(&basis).fold(0u64, |acc, (x, b)| (acc + x * b[i]) % p))
                                .collect()
                        })
                        .collect();
                    found += vecs.len();
                    next.push(rref(vecs, p));
                }
                if found != d {
                    return Err(Error::Integrity(
                        "class matrix is not diagonalizable over the Dixon prime".into(),
                    ));
                }
            }
            spaces = next;
        }
        if spaces.iter().any(|(b, _)| b.len() != 1) {
            return Err(Error::Integrity("class matrices do not separate the characters".into()));
        }
        Ok(spaces.into_iter().map(|(mut b, _)| b.pop().unwrap()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_GROUP_CAP;

    #[test]
    fn sl3_f2_table() {
        let t = sl_character_table(3, 2, DEFAULT_GROUP_CAP).unwrap();
        let dims: Vec<u64> = t.characters().iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![1, 3, 3, 6, 7, 8]);
        assert!(t.characters()[0].is_trivial());
    }

    #[test]
    fn spectrum_power_and_value() {
        let s = Spectrum {
            order: 4,
            mult: vec![1, 1, 0, 1],
        };
        assert_eq!(s.power(2).mult, vec![1, 2]);
        assert_eq!(s.value().to_string(), "1");
        assert_eq!(s.order_lcm(), 4);
        assert_eq!(s.inner_trace(&s), q(1));
    }

    #[test]
    fn product_table_for_modulus_six() {
        let t = sl_character_table(2, 6, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(t.group_order(), 144);
        let dims: u64 = t.characters().iter().map(|c| c.dim * c.dim).sum();
        assert_eq!(dims, 144);
    }
}
