//! Independent brute-force oracles shared by the integration tests. None of
//! these call into the library's own formulas.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Number of Gelfand-Tsetlin patterns with top row `top` (weakly
/// decreasing, entries may be negative).
pub fn gt_pattern_count(top: &[i64]) -> u128 {
    if top.len() <= 1 {
        return 1;
    }
    // rows below interlace: top[i] >= row[i] >= top[i+1]
    let mut total = 0;
    let mut row = vec![0i64; top.len() - 1];
    fn rec(top: &[i64], row: &mut Vec<i64>, i: usize, total: &mut u128) {
        if i == row.len() {
            *total += gt_pattern_count(row);
            return;
        }
        for x in top[i + 1]..=top[i] {
            row[i] = x;
            rec(top, row, i + 1, total);
        }
    }
    rec(top, &mut row, 0, &mut total);
    total
}

/// All partitions of `k` with at most `max_len` parts, as plain vectors.
pub fn partitions(k: u32, max_len: usize) -> Vec<Vec<u32>> {
    fn rec(k: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(k)).rev() {
            cur.push(p);
            rec(k - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, max_len, &mut Vec::new(), &mut out);
    out
}

/// The weight `(λ⁺_1, …, 0, …, -λ⁻_1)` of length `n`.
pub fn weight(plus: &[u32], minus: &[u32], n: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for (i, &p) in plus.iter().enumerate() {
        w[i] = p as i64;
    }
    for (i, &m) in minus.iter().enumerate() {
        w[n - 1 - i] = -(m as i64);
    }
    w
}

/// Polynomials in `nvars` variables with integer coefficients, keyed by
/// exponent vectors.
pub type MonoPoly = BTreeMap<Vec<u32>, i64>;

/// Schur polynomial `s_λ(x_1, …, x_nvars)` as a sum over semistandard
/// tableaux.
pub fn schur_monomial(lambda: &[u32], nvars: usize) -> MonoPoly {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut out = MonoPoly::new();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn rec(
        cells: &[(usize, usize)],
        k: usize,
        nvars: usize,
        filling: &mut BTreeMap<(usize, usize), usize>,
        out: &mut MonoPoly,
    ) {
        if k == cells.len() {
            let mut e = vec![0u32; nvars];
            for &v in filling.values() {
                e[v] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[k];
        // rows weakly increase, columns strictly increase
        let lo_row = if c > 0 { filling[&(r, c - 1)] } else { 0 };
        let lo_col = if r > 0 { filling[&(r - 1, c)] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..nvars {
            filling.insert((r, c), v);
            rec(cells, k + 1, nvars, filling, out);
        }
        filling.remove(&(r, c));
    }
    rec(&cells, 0, nvars, &mut filling, &mut out);
    out
}

pub fn mono_mul(a: &MonoPoly, b: &MonoPoly) -> MonoPoly {
    let mut out = MonoPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Expansion of a symmetric polynomial in the Schur basis, by repeatedly
/// removing the lexicographically largest monomial.
pub fn schur_expand(p: &MonoPoly, nvars: usize) -> BTreeMap<Vec<u32>, i64> {
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, &c)) = rest.iter().next_back() {
        let lead = lead.clone();
        assert!(
            lead.windows(2).all(|w| w[0] >= w[1]),
            "leading monomial is not a partition"
        );
        let lambda: Vec<u32> = lead.iter().copied().filter(|&x| x > 0).collect();
        for (e, v) in schur_monomial(&lambda, nvars) {
            let slot = rest.entry(e).or_insert(0);
            *slot -= c * v;
        }
        rest.retain(|_, x| *x != 0);
        out.insert(lambda, c);
    }
    out
}

/// `ℓ^{n-1} ∏_{p | ℓ} (1 - 1/p)`, as an exact fraction `(num, den)`.
pub fn depth_bound(ell: u64, n: u32) -> (u128, u128) {
    let mut num = (ell as u128).pow(n - 1);
    let mut den = 1u128;
    let mut m = ell;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            num *= (p - 1) as u128;
            den *= p as u128;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    (num, den)
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}
