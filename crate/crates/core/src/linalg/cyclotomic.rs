//! Cyclotomic polynomials, cyclotomic factor detection, and exact elements
//! of cyclotomic fields.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::dense::Matrix;
use super::field::{q, q_to_string, Field, Q};
use super::poly::Poly;
use crate::arith::{euler_phi, factorize, gcd, lcm, mobius, radical};
use crate::error::{Error, Result};

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (ascending) of the cyclotomic polynomial `Φ_d`.
pub fn cyclotomic_coeffs(d: u64) -> Arc<Vec<i64>> {
    assert!(d >= 1);
    if let Some(c) = cyclo_cache().lock().expect("cache lock").get(&d) {
        return c.clone();
    }
    let computed = Arc::new(compute_cyclotomic(d));
    cyclo_cache().lock().expect("cache lock").insert(d, computed.clone());
    computed
}

fn compute_cyclotomic(d: u64) -> Vec<i64> {
    // Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x) for squarefree m and p ∤ m,
    // and Φ_d(x) = Φ_{rad d}(x^{d / rad d}).
    let mut cur: Vec<i128> = vec![-1, 1];
    for (p, _) in factorize(d) {
        let p = p as usize;
        let mut stretched = vec![0i128; (cur.len() - 1) * p + 1];
        for (i, c) in cur.iter().enumerate() {
            stretched[i * p] = *c;
        }
        cur = exact_div_monic(&stretched, &cur);
    }
    let stretch = (d / radical(d)) as usize;
    let mut out = vec![0i64; (cur.len() - 1) * stretch + 1];
    for (i, c) in cur.iter().enumerate() {
        out[i * stretch] = i64::try_from(*c).expect("cyclotomic coefficient overflow");
    }
    out
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        if c == 0 {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn cyclotomic_poly(d: u64) -> Poly<Q> {
    Poly::new(cyclotomic_coeffs(d).iter().map(|&c| q(c)).collect())
}

/// Result of stripping cyclotomic factors from a rational polynomial.
#[derive(Clone, Debug)]
pub struct CyclotomicSplit {
    /// `(d, e)`: `Φ_d` divides with multiplicity `e`. Increasing in `d`.
    pub factors: Vec<(u64, u32)>,
    /// What is left after removing every `Φ_d` with `d <= cap`.
    pub remainder: Poly<Q>,
    pub cap: u64,
}

impl CyclotomicSplit {
    /// Orders of the roots, provided every root of the input is a root of
    /// unity. Distinguishes a genuine non-root-of-unity from a cap that was
    /// too small to see a large order.
    pub fn require_roots_of_unity(&self) -> Result<&[(u64, u32)]> {
        let deg = self.remainder.degree().unwrap_or(0);
        if deg == 0 {
            return Ok(&self.factors);
        }
        // φ(d) >= sqrt(d / 2), so any cyclotomic factor of the remainder has
        // order at most 2 deg^2.
        let bound = 2 * (deg as u64) * (deg as u64);
        let hidden = (self.cap + 1..=bound).find(|&d| euler_phi(d) <= deg as u64);
        match hidden {
            Some(d) => Err(Error::CyclotomicCap {
                cap: self.cap,
                detail: format!("remainder of degree {deg} could still contain Φ_{d}; raise the cap"),
            }),
            None => Err(Error::NotRootOfUnity(format!(
                "characteristic polynomial has a factor of degree {deg} with no root of unity"
            ))),
        }
    }

    /// Least common multiple of the orders found.
    pub fn order_lcm(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &(d, _)| lcm(acc, d))
    }
}

/// Strips every `Φ_d` with `d <= cap` from `p`, recording multiplicities.
pub fn cyclotomic_orders(p: &Poly<Q>, cap: u64) -> CyclotomicSplit {
    let mut rem = p.clone();
    let mut factors = Vec::new();
    let mut d = 1u64;
    while d <= cap {
        let deg = rem.degree().unwrap_or(0) as u64;
        if deg == 0 {
            break;
        }
        if 2 * deg * deg < d {
            break;
        }
        if euler_phi(d) <= deg {
            let phi = cyclotomic_poly(d);
            let mut e = 0;
            loop {
                let (quot, r) = rem.div_rem(&phi);
                if !r.is_zero() {
                    break;
                }
                rem = quot;
                e += 1;
            }
            if e > 0 {
                factors.push((d, e));
            }
        }
        d += 1;
    }
    CyclotomicSplit {
        factors,
        remainder: rem,
        cap,
    }
}

/// `Tr_{Q(ζ_m)/Q}(ζ_m^k)`.
fn trace_root(m: u64, k: u64) -> i64 {
    let g = gcd(k % m, m);
    let order = m / g;
    mobius(order) * (euler_phi(m) / euler_phi(order)) as i64
}

/// An element of `Q(ζ_m)` in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct CyclotomicNumber {
    conductor: u64,
    #[serde(with = "super::field::q_vec_string")]
    coeffs: Vec<Q>,
}

impl CyclotomicNumber {
    pub fn rational(v: Q) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![v],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(q(v))
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Q::zero(); m as usize];
        raw[e] = q(1);
        Self::reduce(m, raw)
    }

    /// `Σ mult[k] ζ_m^k`.
    pub fn from_exponent_counts(m: u64, mult: &[u64]) -> Self {
        let mut raw = vec![Q::zero(); m as usize];
        for (k, c) in mult.iter().enumerate() {
            raw[k % m as usize] += q(*c as i64);
        }
        Self::reduce(m, raw)
    }

    /// Reduces a polynomial in `ζ_m` (any degree) modulo `Φ_m`.
    fn reduce(m: u64, raw: Vec<Q>) -> Self {
        let phi = cyclotomic_coeffs(m);
        let deg = phi.len() - 1;
        let mut c = raw;
        for i in (deg..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let lead = c[i].clone();
            for (j, pj) in phi.iter().enumerate() {
                if *pj != 0 {
                    c[i - deg + j] -= &lead * q(*pj);
                }
            }
        }
        c.truncate(deg);
        c.resize(deg, Q::zero());
        CyclotomicNumber {
            conductor: m,
            coeffs: c,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// The same element written over `Q(ζ_target)`; `conductor | target`.
    pub fn embed(&self, target: u64) -> Self {
        assert_eq!(target % self.conductor, 0, "conductor must divide target");
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![Q::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::reduce(target, raw)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = lcm(self.conductor, other.conductor);
        (self.embed(l), other.embed(l))
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut raw = vec![Q::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(m - i) % m] += c;
        }
        Self::reduce(self.conductor, raw)
    }

    /// `Tr(x) / φ(m)`, which does not depend on the chosen conductor.
    pub fn normalized_trace(&self) -> Q {
        let m = self.conductor;
        let mut acc = Q::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * q(trace_root(m, i as u64));
            }
        }
        acc / q(euler_phi(m) as i64)
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    /// Multiplication-by-`self` matrix on the power basis.
    fn mult_matrix(&self) -> Matrix<Q> {
        let m = self.conductor;
        let d = self.coeffs.len();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut raw = vec![Q::zero(); m as usize + d];
            for (i, c) in self.coeffs.iter().enumerate() {
                raw[i + j] += c;
            }
            cols.push(Self::reduce(m, raw).coeffs);
        }
        Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Field for CyclotomicNumber {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        CyclotomicNumber {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let m = a.conductor as usize;
        let mut raw = vec![Q::zero(); 2 * a.coeffs.len().max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        if raw.len() < m {
            raw.resize(m, Q::zero());
        }
        Self::reduce(a.conductor, raw)
    }
    fn neg(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let mm = self.mult_matrix();
        let inv = mm.inverse().expect("nonzero element of a field is invertible");
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: inv.column(0),
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", q_to_string(&r));
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, i),
            };
            let cs = q_to_string(c);
            let term = match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => z,
                (_, "-1") => format!("-{z}"),
                _ => format!("{cs}*{z}"),
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_coeffs(1).as_slice(), &[-1, 1]);
        assert_eq!(cyclotomic_coeffs(4).as_slice(), &[1, 0, 1]);
        assert_eq!(cyclotomic_coeffs(6).as_slice(), &[1, -1, 1]);
        assert_eq!(cyclotomic_coeffs(12).as_slice(), &[1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient -2.
        assert!(cyclotomic_coeffs(105).contains(&-2));
        assert_eq!(cyclotomic_coeffs(105).len() as u64 - 1, euler_phi(105));
    }

    #[test]
    fn orders_of_x4_minus_1() {
        let p = Poly::new(vec![q(-1), q(0), q(0), q(0), q(1)]);
        let split = cyclotomic_orders(&p, 5040);
        assert_eq!(split.factors, vec![(1, 1), (2, 1), (4, 1)]);
        assert_eq!(split.order_lcm(), 4);
        assert!(split.require_roots_of_unity().is_ok());
    }

    #[test]
    fn non_root_of_unity_and_cap() {
        let p = Poly::new(vec![q(-2), q(1)]);
        let split = cyclotomic_orders(&p, 5040);
        assert!(matches!(split.require_roots_of_unity(), Err(Error::NotRootOfUnity(_))));
        let p7 = cyclotomic_poly(7);
        let split = cyclotomic_orders(&p7, 5);
        assert!(matches!(
            split.require_roots_of_unity(),
            Err(Error::CyclotomicCap { .. })
        ));
    }

    #[test]
    fn field_arithmetic() {
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let z3b = CyclotomicNumber::root_of_unity(3, 2);
        // 1 + ζ + ζ² = 0
        let s = CyclotomicNumber::one().add(&z3).add(&z3b);
        assert!(s.is_zero());
        assert_eq!(z3.mul(&z3b), CyclotomicNumber::one());
        assert_eq!(z3.conj(), z3b);
        assert_eq!(z3.inv(), z3b);
        // ζ_6 = -ζ_3^2 across conductors
        let z6 = CyclotomicNumber::root_of_unity(6, 1);
        assert_eq!(z6, z3b.neg());
        assert_eq!(z6.normalized_trace(), Q::new(1.into(), 2.into()));
        assert_eq!(CyclotomicNumber::root_of_unity(4, 1).normalized_trace(), q(0));
    }
}
