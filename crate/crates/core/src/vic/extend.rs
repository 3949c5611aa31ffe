//! Extending a triple of `SL^±_n(Z/ℓ)`-representations to `GL_n(Z/ℓ)`.
//!
//! `GL_r` acts on `V_r` through `A ↦ diag(A, det(A)^{-1}) ∈ SL_{r+1}`
//! restricted to the image of `V_r` in `V_{r+1}`. The top level has no level
//! above it; there the diagonal `d = diag(1, …, 1, t)` is defined to fix the
//! image of the level below and extended by
//! `d ρ(w) T(v) = ρ(d w d^{-1}) T(v)`, using that the level is generated by
//! that image.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::ops::{complement_fixes, equivariance_failure, TripleVerdict};
use super::{nontrivial_units, VicModule};
use crate::arith::mod_inv;
use crate::error::{Error, Result};
use crate::linalg::sparse::ColumnBasis;
use crate::linalg::{SVec, SparseMatrix, Subspace};
use crate::words::{GenRep, IntMat, Letter, Word};

#[derive(Clone, Debug, Serialize)]
pub struct GlExtensionChecks {
    pub triple: TripleVerdict,
    /// The two constructions agree on the middle level.
    pub routes_agree: bool,
    /// `diag(-1, 1, …)` acts as the given sign and the elementary images are
    /// unchanged.
    pub restricts_to_input: bool,
    /// Unit diagonals multiply correctly and conjugate elementary matrices
    /// as in `GL_n`.
    pub homomorphism: bool,
    /// Both structure maps are equivariant for the new generators.
    pub equivariant: bool,
    /// The complementary `GL_1` (and `GL_2`) fixes the images.
    pub complement_trivial: bool,
}

#[derive(Clone, Debug)]
pub struct GlExtension {
    pub modulus: u64,
    pub units: Vec<u64>,
    /// The three levels with images of `diag(u, 1, …, 1)` for every unit.
    pub module: VicModule,
    pub checks: GlExtensionChecks,
}

/// Extends the triple `V_{n-1} → V_n → V_{n+1}` of `v`. Fails with an
/// integrity error if any verification fails, which means the input was not
/// a genuine triple.
pub fn extend_sl_to_gl(v: &VicModule, n: usize) -> Result<GlExtension> {
    let triple = v.triple(n)?;
    if !triple.is_triple() {
        return Err(Error::Precondition(format!(
            "levels {}..{} do not form an injective generated triple: {}",
            n - 1,
            n + 1,
            triple.failures.join("; ")
        )));
    }
    let ell = v
        .level(n)
        .modulus()
        .ok_or_else(|| Error::Precondition("the levels must factor through Z/ℓ".into()))?;
    if (n - 1..=n + 1).any(|k| v.level(k).modulus() != Some(ell)) {
        return Err(Error::Precondition("all three levels need the same modulus".into()));
    }
    let units = nontrivial_units(ell);
    let (l0, l1, l2) = (v.level(n - 1), v.level(n), v.level(n + 1));
    let (t0, t1) = (v.map(n - 1), v.map(n));

    let bottom = embedding_route(l0, l1, t0, ell, &units)?;
    let middle = embedding_route(l1, l2, t1, ell, &units)?;
    let routes_agree = torus_route(l0, l1, t0, ell, &units)? == middle;
    let top = torus_route(l1, l2, t1, ell, &units)?;

    let module = v.truncate(n - 1, n + 1)?.with_diagonals(vec![bottom, middle, top])?;
    let levels = [module.level(n - 1), module.level(n), module.level(n + 1)];

    let restricts_to_input = levels.iter().zip([l0, l1, l2]).all(|(new, old)| match old.sign() {
        Some(s) => new.diagonals().get(&(ell - 1)) == Some(s),
        None => true,
    });
    let mut homomorphism = true;
    for l in levels {
        homomorphism &= diagonal_relations_hold(l, ell);
    }
    let equivariant =
        (n - 1..n + 1).all(|k| equivariance_failure(module.level(k), module.level(k + 1), module.map(k)).is_none());
    let complement_trivial = (n - 1..n + 1).all(|k| complement_fixes(module.level(k + 1), k, module.map(k)).is_none())
        && complement_fixes(module.level(n + 1), n - 1, &module.composite(n - 1, n + 1)).is_none();
    let checks = GlExtensionChecks {
        triple,
        routes_agree,
        restricts_to_input,
        homomorphism,
        equivariant,
        complement_trivial,
    };
    if !(checks.routes_agree
        && checks.restricts_to_input
        && checks.homomorphism
        && checks.equivariant
        && checks.complement_trivial)
    {
        return Err(Error::Integrity(format!(
            "GL extension failed verification: {checks:?}"
        )));
    }
    Ok(GlExtension {
        modulus: ell,
        units,
        module: module.with_name(format!("GL extension of {}", v.name())),
        checks,
    })
}

/// `diag(u, 1, …)` on `V_r` as the restriction of
/// `diag(u, 1, …, 1, u^{-1}) ∈ SL_{r+1}` to the image of `T`.
fn embedding_route(
    lower: &GenRep<SparseMatrix>,
    upper: &GenRep<SparseMatrix>,
    t: &SparseMatrix,
    ell: u64,
    units: &[u64],
) -> Result<BTreeMap<u64, SparseMatrix>> {
    let r = lower.rank();
    let basis =
        ColumnBasis::new(t.clone()).ok_or_else(|| Error::Precondition("structure map is not injective".into()))?;
    let mut out = BTreeMap::new();
    for &u in units {
        let mut g = IntMat::identity(r + 1);
        g.set(0, 0, u as i128);
        g.set(r, r, mod_inv(u, ell).expect("unit") as i128);
        let m = upper.eval_matrix(&g)?;
        let cols = t
            .columns()
            .iter()
            .map(|c| {
                basis
                    .coordinates(&m.apply(c))
                    .ok_or_else(|| Error::Integrity(format!("diag({u}, …, {u}^-1) does not preserve the image")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert(u, SparseMatrix::from_columns(lower.dim(), cols));
    }
    Ok(out)
}

/// `diag(u, 1, …)` on the upper level from the torus at the last
/// coordinate, which fixes the image of `T`.
fn torus_route(
    lower: &GenRep<SparseMatrix>,
    upper: &GenRep<SparseMatrix>,
    t: &SparseMatrix,
    ell: u64,
    units: &[u64],
) -> Result<BTreeMap<u64, SparseMatrix>> {
    let last = upper.rank() - 1;
    let dim = upper.dim();
    // Basis vectors ρ(w) T(e_j), with the word w and the index j.
    let mut span = Subspace::new(dim);
    let mut basis: Vec<(SVec, Vec<Letter>, usize)> = Vec::new();
    for j in 0..lower.dim() {
        if span.insert(t.column(j)) {
            basis.push((t.column(j).clone(), Vec::new(), j));
        }
    }
    let gens: Vec<(Letter, SparseMatrix)> = (0..=last)
        .flat_map(|a| (0..=last).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .map(|(i, j)| (Letter::Elem { i, j, power: 1 }, upper.elementary(i, j).clone()))
        .collect();
    let mut head = 0;
    while head < basis.len() && span.dim() < dim {
        let (v, w, j) = basis[head].clone();
        for (l, g) in &gens {
            let nv = g.apply(&v);
            if span.insert(&nv) {
                let mut nw = vec![*l];
                nw.extend_from_slice(&w);
                basis.push((nv, nw, j));
            }
        }
        head += 1;
    }
    if span.dim() < dim {
        return Err(Error::Precondition(format!(
            "rank {} level is not generated by the image of the level below",
            upper.rank()
        )));
    }
    let b = SparseMatrix::from_columns(dim, basis.iter().map(|(v, _, _)| v.clone()).collect());
    let b_inv = b.inverse().expect("basis vectors are independent");
    let swap = upper.eval(&Word::signed_swap(0, last))?;
    let swap_inv = upper.eval(&Word::signed_swap(0, last).inverse(Some(ell)))?;
    let mut cache: FxHashMap<(usize, usize, i64), SparseMatrix> = FxHashMap::default();
    let mut out = BTreeMap::new();
    for &u in units {
        let u_inv = mod_inv(u, ell).expect("unit") as i64;
        let cols = basis
            .iter()
            .map(|(_, w, j)| {
                let mut x = t.column(*j).clone();
                for l in w.iter().rev() {
                    let Letter::Elem { i, j, power } = *l else {
                        unreachable!("basis words use elementary letters")
                    };
                    let p = if j == last {
                        power * u_inv
                    } else if i == last {
                        power * u as i64
                    } else {
                        power
                    }
                    .rem_euclid(ell as i64);
                    let m = cache
                        .entry((i, j, p))
                        .or_insert_with(|| upper.elementary_power(i, j, p));
                    x = m.apply(&x);
                }
                x
            })
            .collect();
        let at_last = SparseMatrix::from_columns(dim, cols).mul(&b_inv);
        out.insert(u, swap_inv.mul(&at_last).mul(&swap));
    }
    Ok(out)
}

fn diagonal_relations_hold(level: &GenRep<SparseMatrix>, ell: u64) -> bool {
    let diag = level.diagonals();
    let n = level.rank();
    let image = |u: u64| -> Option<SparseMatrix> {
        if u == 1 {
            Some(SparseMatrix::identity(level.dim()))
        } else {
            diag.get(&u).cloned()
        }
    };
    for (&u, du) in diag {
        for (&v, dv) in diag {
            if image(u * v % ell).as_ref() != Some(&du.mul(dv)) {
                return false;
            }
        }
        let Some(du_inv) = image(mod_inv(u, ell).expect("unit")) else {
            return false;
        };
        let u_inv = mod_inv(u, ell).expect("unit") as i64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let c = if i == 0 {
                    u as i64
                } else if j == 0 {
                    u_inv
                } else {
                    1
                };
                let lhs = du.mul(level.elementary(i, j)).mul(&du_inv);
                if lhs != level.elementary_power(i, j, c) {
                    return false;
                }
            }
        }
        if let Some(s) = level.sign() {
            if s.mul(du) != du.mul(s) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ProjectiveSpace;

    #[test]
    fn projective_over_f5_matches_natural_action() {
        let p = VicModule::projective(5, (2, 4)).unwrap();
        let ext = extend_sl_to_gl(&p, 3).unwrap();
        for r in 2..=4 {
            let space = ProjectiveSpace::new(r, 5).unwrap();
            for (&u, m) in ext.module.level(r).diagonals() {
                let mut g = vec![0u8; r * r];
                for k in 0..r {
                    g[k * r + k] = 1;
                }
                g[0] = u as u8;
                assert_eq!(*m, space.permutation_matrix(&g), "rank {r}, unit {u}");
            }
        }
    }

    #[test]
    fn trivial_extension_is_trivial() {
        let t = VicModule::trivial((2, 4)).unwrap();
        let levels = t
            .levels()
            .iter()
            .map(|l| GenRep::from_fn(l.rank(), |_| SparseMatrix::identity(1), true, Some(5), &[]).unwrap())
            .collect();
        let t5 = VicModule::new(
            "trivial mod 5",
            2,
            levels,
            t.maps().to_vec(),
            super::super::Structure::FiniteType,
        )
        .unwrap();
        let ext = extend_sl_to_gl(&t5, 3).unwrap();
        assert!(ext
            .module
            .levels()
            .iter()
            .all(|l| l.diagonals().values().all(|d| d.is_identity())));
    }

    #[test]
    fn sum_zero_subtriple_extends() {
        let s = VicModule::sum_zero(5, (2, 4)).unwrap();
        let ext = extend_sl_to_gl(&s, 3).unwrap();
        assert!(ext.checks.routes_agree);
    }
}
