//! Depth of representations of `SL_n(Z)` given by images of the elementary
//! generators: the lcm of the orders of the eigenvalues of `ρ(E_12)`, and
//! the split into algebraic, finite type and mixed.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, lcm, valuation};
use crate::error::{Error, Result};
use crate::groups::bounds::{depth_dim_lower_bound, max_depth_for_dim};
use crate::groups::{Character, CharacterTable, ProjectiveSpace};
use crate::linalg::{cyclotomic_orders, cyclotomic_poly, fixed_space, Matrix, Poly, SVec, SparseMatrix, Q};
use crate::words::{factor_integral, GenRep, IntMat, Letter, Word};

pub const DEFAULT_CYCLOTOMIC_CAP: u64 = 5040;

/// A representation of `SL_n(Z)`, `n ≥ 3`, by exact rational matrices.
#[derive(Clone, Debug)]
pub struct IntegralRep {
    rep: GenRep<Matrix<Q>>,
}

impl IntegralRep {
    /// Checks the elementary (Steinberg) relations.
    pub fn new(rep: GenRep<Matrix<Q>>) -> Result<Self> {
        if rep.rank() < 3 {
            return Err(Error::RankTooSmall {
                rank: rep.rank(),
                needed: 3,
            });
        }
        rep.check_relations()?;
        Ok(IntegralRep { rep })
    }

    pub fn from_sparse(rep: &GenRep<SparseMatrix>) -> Result<Self> {
        Self::new(rep.to_dense())
    }

    pub fn genrep(&self) -> &GenRep<Matrix<Q>> {
        &self.rep
    }

    pub fn rank(&self) -> usize {
        self.rep.rank()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// `ρ(E_12)`.
    pub fn elementary(&self) -> &Matrix<Q> {
        self.rep.elementary(0, 1)
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(GenRep::from_fn(n, |_| Matrix::identity(1), true, None, &[])?)
    }

    /// The inclusion `SL_n(Z) ⊂ GL_n(Q)`.
    pub fn standard(n: usize) -> Result<Self> {
        let image = |l: &Letter| {
            let m = Word { letters: vec![*l] }.to_matrix(n, None);
            Matrix::from_i64_rows(&m.to_i64().chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>())
        };
        Self::new(GenRep::from_fn(n, image, true, None, &[])?)
    }

    /// Functions on `P(F_p^n)` pulled back along reduction mod `p`.
    pub fn projective(n: usize, p: u64) -> Result<Self> {
        let space = ProjectiveSpace::new(n, p)?;
        Self::from_sparse(&space.genrep(true, &[])?)
    }

    /// Sum-zero functions on `P(F_p^n)`.
    pub fn projective_sum_zero(n: usize, p: u64) -> Result<Self> {
        let space = ProjectiveSpace::new(n, p)?;
        let rep = space.genrep(true, &[])?.restrict_to(&space.sum_zero_subspace())?;
        Self::from_sparse(&rep)
    }

    /// `g ↦ ρ(g)^{-⊤}`, the contragredient.
    pub fn dual(&self) -> Result<Self> {
        Self::from_sparse(&self.rep.to_sparse().inverse_transpose())
    }

    pub fn tensor(&self, other: &IntegralRep) -> Result<Self> {
        Self::from_sparse(&self.rep.to_sparse().tensor(&other.rep.to_sparse())?)
    }

    pub fn direct_sum(&self, other: &IntegralRep) -> Result<Self> {
        Self::from_sparse(&self.rep.to_sparse().direct_sum(&other.rep.to_sparse())?)
    }

    pub fn to_file(&self) -> RepFile {
        let n = self.rank();
        let mut elementary = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    elementary.push(GeneratorImage {
                        i: i + 1,
                        j: j + 1,
                        matrix: self.rep.elementary(i, j).to_string_rows(),
                    });
                }
            }
        }
        RepFile {
            rank: n,
            dim: self.dim(),
            elementary,
            sign: self.rep.sign().map(|m| m.to_string_rows()),
        }
    }

    pub fn from_file(file: &RepFile) -> Result<Self> {
        let mut elem = BTreeMap::new();
        for g in &file.elementary {
            if g.i == 0 || g.j == 0 || g.i > file.rank || g.j > file.rank || g.i == g.j {
                return Err(Error::Invalid(format!("bad generator index E_{},{}", g.i, g.j)));
            }
            let m = Matrix::from_string_rows(&g.matrix)?;
            if m.nrows() != file.dim || m.ncols() != file.dim {
                return Err(Error::Invalid(format!(
                    "image of E_{},{} is not {}x{}",
                    g.i, g.j, file.dim, file.dim
                )));
            }
            elem.insert((g.i - 1, g.j - 1), m);
        }
        let sign = file.sign.as_ref().map(|s| Matrix::from_string_rows(s)).transpose()?;
        Self::new(GenRep::new(file.rank, elem, sign, None)?)
    }
}

/// JSON form of an [`IntegralRep`]; generator indices are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub rank: usize,
    pub dim: usize,
    pub elementary: Vec<GeneratorImage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub i: usize,
    pub j: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Algebraic,
    FiniteType,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthReport {
    pub rank: usize,
    pub dim: usize,
    pub depth: u64,
    pub p_depths: BTreeMap<u64, u32>,
    /// `(d, multiplicity)`: `Φ_d^multiplicity` divides the characteristic
    /// polynomial of `ρ(E_12)`.
    pub eigenvalue_orders: Vec<(u64, u32)>,
    pub classification: Classification,
    pub dim_fin: usize,
    pub dim_alg: Option<usize>,
}

fn eigenvalue_orders(rep: &IntegralRep, cap: u64) -> Result<Vec<(u64, u32)>> {
    let split = cyclotomic_orders(&rep.elementary().char_poly(), cap);
    Ok(split.require_roots_of_unity()?.to_vec())
}

/// `lcm` of the orders of the eigenvalues of `ρ(E_12)`.
pub fn depth(rep: &IntegralRep, cap: u64) -> Result<u64> {
    Ok(eigenvalue_orders(rep, cap)?.iter().fold(1, |acc, &(d, _)| lcm(acc, d)))
}

/// Does `ρ(E_12)^ℓ` act unipotently?
pub fn depth_divides(rep: &IntegralRep, ell: u64) -> bool {
    rep.elementary().pow(ell).is_unipotent()
}

pub fn p_depth(rep: &IntegralRep, p: u64, cap: u64) -> Result<u32> {
    if !crate::arith::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    Ok(valuation(depth(rep, cap)?, p))
}

/// Least `ℓ` with `depth_divides(rep, ℓ)`, scanning upward.
pub fn least_unipotent_power(rep: &IntegralRep, limit: u64) -> Option<u64> {
    (1..=limit).find(|&l| depth_divides(rep, l))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaUVerdict {
    pub ell: u64,
    pub samples: usize,
    pub pass: bool,
    /// First sampled element acting non-unipotently.
    pub witness: Option<Word>,
    /// The exact criterion: `ρ(E_12)^ℓ` unipotent.
    pub exact: bool,
}

/// Samples elements of `ΓU_n(ℓ)`, the unitriangular matrices congruent to
/// the identity mod `ℓ`, and tests that each acts unipotently.
pub fn gamma_u_check(rep: &IntegralRep, ell: u64, samples: usize, seed: u64) -> Result<GammaUVerdict> {
    if samples == 0 || ell == 0 {
        return Err(Error::Precondition("need ℓ ≥ 1 and at least one sample".into()));
    }
    let n = rep.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut witness = None;
    for s in 0..samples {
        let word = if s == 0 {
            Word::elem(0, 1, ell as i64)
        } else if s % 2 == 1 {
            // random word in the E_ij^ℓ
            let len = rng.gen_range(1..=8);
            let mut w = Word::new();
            for _ in 0..len {
                let (i, j) = upper[rng.gen_range(0..upper.len())];
                let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                w.push(Letter::Elem {
                    i,
                    j,
                    power: e * ell as i64,
                });
            }
            w
        } else {
            // random unitriangular ℓ-multiple, written in the generators
            let mut m = IntMat::identity(n);
            for &(i, j) in &upper {
                m.set(i, j, (ell as i64 * rng.gen_range(-2..=2)) as i128);
            }
            factor_integral(&m, false)?
        };
        if !rep.rep.eval(&word)?.is_unipotent() {
            witness = Some(word);
            break;
        }
    }
    Ok(GammaUVerdict {
        ell,
        samples,
        pass: witness.is_none(),
        witness,
        exact: depth_divides(rep, ell),
    })
}

/// Common fixed space of `ρ(E_ij)^ℓ` for `i < j`.
pub fn finite_part(rep: &IntegralRep, ell: u64) -> Vec<Vec<Q>> {
    let n = rep.rank();
    let mats: Vec<Matrix<Q>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| rep.rep.elementary(i, j).pow(ell))
        .collect();
    fixed_space(&mats)
}

pub fn finite_part_dimension(rep: &IntegralRep, ell: u64) -> usize {
    finite_part(rep, ell).len()
}

fn poly_at(p: &Poly<Q>, m: &Matrix<Q>) -> Matrix<Q> {
    let mut acc = Matrix::zeros(m.nrows(), m.ncols());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(m.nrows()).scale(c));
    }
    acc
}

/// Is `ρ(E_12)` semisimple? Its eigenvalues are roots of unity, so this
/// holds exactly when the product of the distinct cyclotomic factors
/// annihilates it.
pub fn elementary_is_semisimple(rep: &IntegralRep, cap: u64) -> Result<bool> {
    let orders = eigenvalue_orders(rep, cap)?;
    let radical = orders
        .iter()
        .fold(Poly::one(), |acc: Poly<Q>, &(d, _)| acc.mul(&cyclotomic_poly(d)));
    Ok(poly_at(&radical, rep.elementary()).is_zero())
}

/// Full report. `irreducible` is the caller's assertion, used only to
/// report `dim_alg = dim / dim_fin`.
pub fn classify(rep: &IntegralRep, irreducible: bool, cap: u64) -> Result<DepthReport> {
    let orders = eigenvalue_orders(rep, cap)?;
    let ell = orders.iter().fold(1, |acc, &(d, _)| lcm(acc, d));
    let classification = if ell == 1 {
        Classification::Algebraic
    } else if elementary_is_semisimple(rep, cap)? {
        Classification::FiniteType
    } else {
        Classification::Mixed
    };
    let dim_fin = finite_part_dimension(rep, ell);
    let dim_alg = (irreducible && dim_fin > 0 && rep.dim() % dim_fin == 0).then(|| rep.dim() / dim_fin);
    Ok(DepthReport {
        rank: rep.rank(),
        dim: rep.dim(),
        depth: ell,
        p_depths: factorize(ell).into_iter().collect(),
        eigenvalue_orders: orders,
        classification,
        dim_fin,
        dim_alg,
    })
}

/// Dimension of the space of matrices commuting with every generator image.
/// Equal to 1 exactly when the representation is absolutely irreducible,
/// provided it is semisimple.
pub fn commutant_dimension(rep: &IntegralRep) -> usize {
    let d = rep.dim();
    let n = rep.rank();
    let mut gens: Vec<&Matrix<Q>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(rep.rep.elementary(i, j));
            }
        }
    }
    if let Some(s) = rep.rep.sign() {
        gens.push(s);
    }
    // unknown X[k][b] has index k * d + b
    let mut rows = Vec::new();
    for g in gens {
        for a in 0..d {
            for b in 0..d {
                let mut pairs = Vec::new();
                for k in 0..d {
                    let x = g.get(a, k);
                    if !x.is_zero() {
                        pairs.push((k * d + b, x.clone()));
                    }
                    let y = g.get(k, b);
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
    crate::linalg::sparse::kernel_of_rows(d * d, &rows).len()
}

// Depth of irreducible characters of SL_n(Z/ℓ), read off from the table.

/// Class of `E_12^t` in the table's group.
fn elementary_power(table: &CharacterTable, t: u64) -> Vec<u8> {
    let n = table.n();
    let mut a = vec![0u8; n * n];
    for k in 0..n {
        a[k * n + k] = 1;
    }
    a[1] = (t % table.modulus()) as u8;
    a
}

/// Eigenvalue-lcm depth of the pullback of `χ` to `SL_n(Z)`.
pub fn character_depth(table: &CharacterTable, chi: &Character) -> Result<u64> {
    let spectrum = table
        .spectrum_at(chi, &elementary_power(table, 1))
        .ok_or_else(|| Error::Integrity("E_12 missing from the class lookup".into()))?;
    Ok(spectrum.order_lcm())
}

/// `ρ(E_12^ℓ)` trivial, read from the class of `E_12^ℓ` itself.
pub fn character_depth_divides(table: &CharacterTable, chi: &Character, ell: u64) -> Result<bool> {
    let spectrum = table
        .spectrum_at(chi, &elementary_power(table, ell))
        .ok_or_else(|| Error::Integrity("E_12^ℓ missing from the class lookup".into()))?;
    Ok(spectrum.mult[0] == chi.dim)
}

/// Smallest divisor of the table modulus at which `character_depth_divides`
/// holds.
pub fn character_least_divisor(table: &CharacterTable, chi: &Character) -> Result<u64> {
    let mut ds = divisors(table.modulus());
    ds.sort_unstable();
    for d in ds {
        if character_depth_divides(table, chi, d)? {
            return Ok(d);
        }
    }
    Ok(table.modulus())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthVerdict {
    /// The depths end in a run of 1s.
    EventuallyAlgebraic,
    /// Some depth above 1 persists to the end of the window.
    BoundedDepth,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport {
    pub verdict: GrowthVerdict,
    /// First level of the final run of depth-1 levels.
    pub algebraic_from: Option<usize>,
    /// First level from which the dimension bound itself forces depth 1.
    pub forced_from: Option<usize>,
    pub max_depth: u64,
}

/// Arithmetic consistency of a sequence of irreducible dimensions and
/// depths with the bound `dim ≥ ℓ^{n-1} ∏ (1 - 1/p)`. A level violating the
/// bound is an error naming that level.
pub fn check_growth_dichotomy(levels: &[usize], dims: &[u64], depths: &[u64]) -> Result<DichotomyReport> {
    if levels.len() != dims.len() || dims.len() != depths.len() || levels.is_empty() {
        return Err(Error::Invalid(
            "levels, dims and depths must align and be nonempty".into(),
        ));
    }
    let mut forced_from = None;
    let mut algebraic_from = None;
    for ((&n, &dim), &ell) in levels.iter().zip(dims).zip(depths) {
        let bound = depth_dim_lower_bound(ell, n as u32)?.bound;
        if Q::from_integer((dim as i64).into()) < bound {
            return Err(Error::Precondition(format!(
                "n = {n}: dimension {dim} is below the depth-{ell} bound {bound}"
            )));
        }
        if n >= 3 && max_depth_for_dim(dim.max(1), n as u32)? == 1 {
            forced_from.get_or_insert(n);
        } else {
            forced_from = None;
        }
        if ell == 1 {
            algebraic_from.get_or_insert(n);
        } else {
            algebraic_from = None;
        }
    }
    Ok(DichotomyReport {
        verdict: if algebraic_from.is_some() {
            GrowthVerdict::EventuallyAlgebraic
        } else {
            GrowthVerdict::BoundedDepth
        },
        algebraic_from,
        forced_from,
        max_depth: *depths.iter().max().unwrap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_and_sum_zero() {
        let cap = DEFAULT_CYCLOTOMIC_CAP;
        let std = IntegralRep::standard(3).unwrap();
        assert_eq!(depth(&std, cap).unwrap(), 1);
        assert_eq!(finite_part_dimension(&std, 1), 1);
        let w = IntegralRep::projective_sum_zero(3, 2).unwrap();
        assert_eq!(w.dim(), 6);
        let r = classify(&w, true, cap).unwrap();
        assert_eq!(
            (r.depth, r.classification, r.dim_fin),
            (2, Classification::FiniteType, 6)
        );
        assert!(depth_divides(&w, 2) && !depth_divides(&w, 1));
        let mixed = std.tensor(&w).unwrap();
        let r = classify(&mixed, true, cap).unwrap();
        assert_eq!(r.classification, Classification::Mixed);
        assert_eq!((r.dim_fin, r.dim_alg), (6, Some(3)));
        assert_eq!(commutant_dimension(&w), 1);
    }

    #[test]
    fn gamma_u() {
        let w = IntegralRep::projective_sum_zero(3, 2).unwrap();
        assert!(gamma_u_check(&w, 2, 20, 7).unwrap().pass);
        let fail = gamma_u_check(&w, 1, 20, 7).unwrap();
        assert!(!fail.pass);
        assert_eq!(fail.witness, Some(Word::elem(0, 1, 1)));
    }

    #[test]
    fn dichotomy() {
        let ns = [5usize, 6, 7];
        let r = check_growth_dichotomy(&ns, &[25, 36, 49], &[1, 1, 1]).unwrap();
        assert_eq!(
            (r.verdict, r.algebraic_from),
            (GrowthVerdict::EventuallyAlgebraic, Some(5))
        );
        let r = check_growth_dichotomy(&[8, 9, 10], &[64, 81, 100], &[1, 1, 1]).unwrap();
        assert_eq!(r.forced_from, Some(9));
        let r = check_growth_dichotomy(&ns, &[32, 64, 128], &[2, 2, 2]).unwrap();
        assert_eq!((r.verdict, r.max_depth), (GrowthVerdict::BoundedDepth, 2));
        assert!(check_growth_dichotomy(&[10], &[10], &[3]).is_err());
    }
}
