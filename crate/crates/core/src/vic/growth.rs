//! Growth of dimensions along a window, polynomial degree through iterated
//! shift cokernels, and bounds on the number of irreducible summands.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::labels::detect_labels;
use super::ops::{generation_degree, injectivity_degree, is_unipotent, stable_depth, top_left_letters};
use super::{Structure, VicModule};
use crate::arith::lcm;
use crate::depth::{depth, IntegralRep, DEFAULT_CYCLOTOMIC_CAP};
use crate::error::Result;
use crate::groups::projective::UnionFind;
use crate::linalg::field::q_to_string;
use crate::linalg::sparse::kernel_of_rows;
use crate::linalg::{q, Poly, SVec, SparseMatrix, Subspace, Q};
use crate::weights::interpolate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    Torsion,
    Polynomial,
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolynomialDegree {
    /// Degree `≤ degree` in degrees at least `from`, and not `≤ degree - 1`.
    Degree { degree: i64, from: usize },
    /// The cokernel recursion ran out of levels before terminating.
    ExceedsWindowBudget { steps: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub module: String,
    pub window: (usize, usize),
    pub dims: Vec<usize>,
    pub class: GrowthClass,
    pub polynomial_degree: PolynomialDegree,
    /// Dimensions of the iterated cokernels of `V → SV`.
    pub cokernel_dims: Vec<Vec<usize>>,
    /// Structure maps of the iterated cokernels are injective from the head
    /// boundary on.
    pub cokernels_injective: bool,
    /// Coefficients (constant term first) of the polynomial through the
    /// dimensions, when the class is polynomial.
    pub dimension_polynomial: Option<Vec<String>>,
    pub polynomial_fits_window: Option<bool>,
    /// Every level past the head boundary is algebraic (`E_ij` unipotent).
    pub pointwise_algebraic: Option<bool>,
    /// Least integer `C` with `dim V_n ≤ C^n` on the window.
    pub exponential_base: Option<u64>,
    pub stable_depth: Option<u64>,
}

pub fn growth_classify(v: &VicModule) -> Result<GrowthReport> {
    let dims = v.dims();
    let past = v.n_max() + 1;
    let boundary = generation_degree(v)?
        .unwrap_or(past)
        .max(injectivity_degree(v).unwrap_or(past))
        .max(v.n_min());
    let class_torsion = *dims.last().expect("nonempty") == 0;

    let mut cokernel_dims = Vec::new();
    let mut injective = true;
    let mut current = v.clone();
    let mut degree = None;
    for step in 0.. {
        let tail: Vec<usize> = current.ranks().filter(|&n| n >= boundary).collect();
        if tail.is_empty() {
            break;
        }
        injective &= tail
            .iter()
            .filter(|&&n| n < current.n_max())
            .all(|&n| current.map(n).is_injective());
        if tail.iter().all(|&n| current.dim(n) == 0) {
            degree = Some(step as i64 - 1);
            break;
        }
        if current.len() < 2 {
            break;
        }
        current = current.shift_cokernel()?;
        cokernel_dims.push(current.dims());
    }
    let polynomial_degree = match degree {
        Some(d) if injective || d < 0 => PolynomialDegree::Degree {
            degree: d,
            from: boundary,
        },
        _ => PolynomialDegree::ExceedsWindowBudget {
            steps: cokernel_dims.len(),
        },
    };
    let class = match (&polynomial_degree, class_torsion) {
        (_, true) | (PolynomialDegree::Degree { degree: -1, .. }, _) => GrowthClass::Torsion,
        (PolynomialDegree::Degree { .. }, _) => GrowthClass::Polynomial,
        (PolynomialDegree::ExceedsWindowBudget { .. }, _) => GrowthClass::Exponential,
    };

    let tail: Vec<usize> = v.ranks().filter(|&n| n >= boundary).collect();
    let (mut dimension_polynomial, mut polynomial_fits_window, mut pointwise_algebraic) = (None, None, None);
    if let (GrowthClass::Polynomial, PolynomialDegree::Degree { degree, .. }) = (class, &polynomial_degree) {
        let need = *degree as usize + 1;
        if tail.len() >= need {
            let xs: Vec<Q> = tail[..need].iter().map(|&n| q(n as i64)).collect();
            let ys: Vec<Q> = tail[..need].iter().map(|&n| q(v.dim(n) as i64)).collect();
            let p: Poly<Q> = interpolate(&xs, &ys);
            polynomial_fits_window = Some(tail.iter().all(|&n| p.eval(&q(n as i64)) == q(v.dim(n) as i64)));
            dimension_polynomial = Some(p.coeffs().iter().map(q_to_string).collect());
        }
        pointwise_algebraic = Some(tail.iter().all(|&n| {
            let l = v.level(n);
            (0..n).all(|i| (0..n).all(|j| i == j || is_unipotent(l.elementary(i, j), l.modulus())))
        }));
    }
    let exponential_base = (class == GrowthClass::Exponential).then(|| {
        let mut c = 1u64;
        while v.ranks().any(|n| (v.dim(n) as f64) > (c as f64).powi(n as i32)) {
            c += 1;
        }
        c
    });
    let depth = match v.structure() {
        Structure::FiniteType => Some(stable_depth(v)?.ell),
        Structure::Pairs(pieces) => {
            let mut acc = 1;
            for p in pieces {
                acc = lcm(acc, stable_depth(&p.multiplicity)?.ell);
            }
            Some(acc)
        }
        Structure::Algebraic(_) => Some(1),
        Structure::Opaque => opaque_depth(v),
    };
    Ok(GrowthReport {
        module: v.name().to_string(),
        window: v.window(),
        dims,
        class,
        polynomial_degree,
        cokernel_dims,
        cokernels_injective: injective,
        dimension_polynomial,
        polynomial_fits_window,
        pointwise_algebraic,
        exponential_base,
        stable_depth: depth,
    })
}

/// Largest level whose characteristic polynomial is factored for the depth
/// of a module without known structure.
const MAX_OPAQUE_DEPTH_DIM: usize = 200;

/// lcm of the eigenvalue depths of the levels; `None` when a level is too
/// large or `ρ(E_12)` has an eigenvalue that is not a root of unity.
fn opaque_depth(v: &VicModule) -> Option<u64> {
    let mut acc = 1;
    for l in v.levels() {
        if l.dim() > MAX_OPAQUE_DEPTH_DIM {
            return None;
        }
        let rep = IntegralRep::from_sparse(l).ok()?;
        acc = lcm(acc, depth(&rep, DEFAULT_CYCLOTOMIC_CAP).ok()?);
    }
    Some(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthBound {
    pub module: String,
    /// Number of irreducible summands (over `C`) per level, when computable.
    pub per_level: Vec<Option<u64>>,
    pub bound: Option<u64>,
    pub constant_past_stabilization: bool,
    pub method: String,
}

/// Number of irreducible summands of each level. Finite permutation levels
/// use their orbitals: the commutant is spanned by orbital matrices, and
/// the minimal polynomial of a random element of it has degree equal to the
/// number of summands.
pub fn length_bound(v: &VicModule, seed: u64) -> Result<LengthBound> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (per_level, method): (Vec<Option<u64>>, &str) = match v.structure() {
        Structure::Algebraic(labels) => (labels.iter().map(|m| Some(m.values().sum())).collect(), "labels"),
        Structure::FiniteType => (
            v.levels().iter().map(|l| level_summands(l, &mut rng)).collect(),
            "commutant",
        ),
        Structure::Pairs(pieces) => {
            let mut acc = vec![Some(0u64); v.len()];
            for p in pieces {
                let alg = length_bound(&p.algebraic, seed)?.per_level;
                let fin = length_bound(&p.multiplicity, seed)?.per_level;
                for k in 0..v.len() {
                    acc[k] = match (acc[k], alg[k], fin[k]) {
                        (Some(s), Some(a), Some(f)) => Some(s + a * f),
                        _ => None,
                    };
                }
            }
            (acc, "label count times multiplicity summands")
        }
        Structure::Opaque => (
            v.levels()
                .iter()
                .map(|l| detect_labels(l).ok().map(|m| m.values().sum()))
                .collect(),
            "detected labels",
        ),
    };
    let bound = per_level.iter().flatten().copied().max();
    let start = generation_degree(v)?.unwrap_or(v.n_max()) - v.n_min();
    let constant_past_stabilization = per_level[start..].windows(2).all(|w| w[0] == w[1] && w[0].is_some());
    Ok(LengthBound {
        module: v.name().to_string(),
        per_level,
        bound,
        constant_past_stabilization,
        method: method.to_string(),
    })
}

/// Largest non-permutation level whose commutant is solved for directly.
const MAX_COMMUTANT_DIM: usize = 40;

fn level_summands(level: &crate::words::GenRep<SparseMatrix>, rng: &mut ChaCha8Rng) -> Option<u64> {
    let d = level.dim();
    if d == 0 {
        return Some(0);
    }
    let gens = top_left_letters(level, level.rank())
        .iter()
        .map(|l| level.letter(l).ok())
        .collect::<Option<Vec<_>>>()?;
    let perms: Option<Vec<Vec<usize>>> = gens.iter().map(SparseMatrix::as_permutation).collect();
    let generic = match perms {
        Some(perms) => orbital_combination(d, &perms, rng),
        None if d <= MAX_COMMUTANT_DIM => commutant_combination(d, &gens, rng),
        None => return None,
    };
    // A generic element of the commutant ⊕ M_{m_i} has minimal polynomial
    // of degree Σ m_i, the number of summands.
    let mut krylov = Subspace::new(d);
    let mut x = SVec::from_pairs((0..d).map(|i| (i, q(rng.gen_range(-50..=50)))));
    let mut degree = 0;
    while krylov.insert(&x) {
        degree += 1;
        x = generic.apply(&x);
    }
    Some(degree)
}

/// Random combination of the orbital matrices, which span the commutant of
/// a permutation action.
fn orbital_combination(d: usize, perms: &[Vec<usize>], rng: &mut ChaCha8Rng) -> SparseMatrix {
    let mut uf = UnionFind::new(d * d);
    for p in perms {
        for a in 0..d {
            for b in 0..d {
                uf.union(a * d + b, p[a] * d + p[b]);
            }
        }
    }
    // weights are drawn in index order so the result depends only on the seed
    let mut weight = rustc_hash::FxHashMap::default();
    let mut cols = Vec::with_capacity(d);
    for b in 0..d {
        let mut entries = Vec::with_capacity(d);
        for a in 0..d {
            let root = uf.find(a * d + b);
            let w = *weight.entry(root).or_insert_with(|| rng.gen_range(1..=1000i64));
            entries.push((a, q(w)));
        }
        cols.push(SVec::from_pairs(entries));
    }
    SparseMatrix::from_columns(d, cols)
}

fn commutant_combination(d: usize, gens: &[SparseMatrix], rng: &mut ChaCha8Rng) -> SparseMatrix {
    // unknown X[a][b] has index a * d + b; rows of (gX - Xg)
    let mut rows = Vec::new();
    for g in gens {
        let dense = g.to_dense();
        for a in 0..d {
            for b in 0..d {
                let mut pairs = Vec::new();
                for k in 0..d {
                    let x = dense.get(a, k);
                    if !x.is_zero() {
                        pairs.push((k * d + b, x.clone()));
                    }
                    let y = dense.get(k, b);
                    if !y.is_zero() {
                        pairs.push((a * d + k, -y.clone()));
                    }
                }
                let row = SVec::from_pairs(pairs);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let basis = kernel_of_rows(d * d, &rows);
    let mut flat = SVec::new();
    for v in &basis {
        flat = flat.add_scaled(&q(rng.gen_range(1..=1000)), v);
    }
    let mut cols = vec![Vec::new(); d];
    for (idx, x) in flat.entries() {
        cols[idx % d].push((idx / d, x.clone()));
    }
    SparseMatrix::from_columns(d, cols.into_iter().map(SVec::from_pairs).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_of_canonical_modules() {
        let std = growth_classify(&VicModule::standard((3, 7)).unwrap()).unwrap();
        assert_eq!(std.class, GrowthClass::Polynomial);
        assert_eq!(std.polynomial_degree, PolynomialDegree::Degree { degree: 1, from: 3 });
        assert_eq!(std.dimension_polynomial, Some(vec!["0".to_string(), "1".to_string()]));
        assert_eq!(std.pointwise_algebraic, Some(true));
        let triv = growth_classify(&VicModule::trivial((3, 7)).unwrap()).unwrap();
        assert_eq!(triv.polynomial_degree, PolynomialDegree::Degree { degree: 0, from: 3 });
        let p = growth_classify(&VicModule::projective(2, (3, 7)).unwrap()).unwrap();
        assert_eq!(p.class, GrowthClass::Exponential);
        assert_eq!(p.exponential_base, Some(2));
        assert_eq!(p.stable_depth, Some(2));
    }

    #[test]
    fn summand_counts() {
        let w = (3, 5);
        assert_eq!(
            length_bound(&VicModule::standard(w).unwrap(), 0).unwrap().bound,
            Some(1)
        );
        let p = length_bound(&VicModule::projective(2, w).unwrap(), 0).unwrap();
        assert_eq!(p.per_level, vec![Some(2); 3]);
        let s = length_bound(&VicModule::sum_zero(2, w).unwrap(), 0).unwrap();
        assert_eq!(s.per_level, vec![Some(1); 3]);
        let t = VicModule::standard(w)
            .unwrap()
            .tensor(&VicModule::projective(2, w).unwrap())
            .unwrap();
        assert_eq!(length_bound(&t, 0).unwrap().bound, Some(2));
    }
}
