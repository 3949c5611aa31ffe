//! Window truncations of VIC(Z)-modules.
//!
//! A module is stored as its levels `V_n` for `n_min ≤ n ≤ n_max`, each a
//! representation of `GL_n(Z)` (or `SL_n(Z)`, or of a congruence quotient)
//! given by generator images, together with structure maps
//! `T_n: V_n → V_{n+1}`. Every conclusion drawn from a module holds only
//! within its window.

mod extend;
mod filtration;
mod growth;
mod io;
mod labels;
mod ops;

use std::collections::BTreeMap;

use crate::arith::mod_inv;
use crate::error::{invalid, Error, Result};
use crate::groups::ProjectiveSpace;
use crate::linalg::{Matrix, SVec, SparseMatrix, Subspace, Q};
use crate::partition::Bipartition;
use crate::words::{GenRep, IntMat, Letter, Word};

pub use extend::{extend_sl_to_gl, GlExtension, GlExtensionChecks};
pub use filtration::{algebraic_isotypic_filtration, kronecker_right_factor, Filtration, FiltrationLayer};
pub use growth::{growth_classify, length_bound, GrowthClass, GrowthReport, LengthBound, PolynomialDegree};
pub use io::{ExplicitModule, LevelFile, LevelKind, ModuleExpr, ModuleFile};
pub use labels::detect_labels;
pub use ops::{
    covariants_phi, depth_propagation_check, generation_degree, injectivity_degree, level_depth, noetherian_witness,
    stabilization_degree, stable_depth, validate_weak_triple, Covariants, DepthPropagation, NoetherianWitness,
    PropagationVerdict, StableDepth, TripleVerdict,
};

pub const DEFAULT_WINDOW: (usize, usize) = (3, 7);

/// What is known about how the levels decompose.
#[derive(Clone, Debug)]
pub enum Structure {
    Opaque,
    /// Every level is a representation of a finite congruence quotient.
    FiniteType,
    /// Every level is algebraic; the multiset of labels per level.
    Algebraic(Vec<BTreeMap<Bipartition, u64>>),
    /// Levels are `⊕_i A_i ⊗ M_i` with the summands in the order of the
    /// level bases, each `A_i` algebraic with a single label and each `M_i`
    /// of finite type.
    Pairs(Vec<Piece>),
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub label: Bipartition,
    pub algebraic: VicModule,
    pub multiplicity: VicModule,
}

#[derive(Clone, Debug)]
pub struct VicModule {
    name: String,
    n_min: usize,
    levels: Vec<GenRep<SparseMatrix>>,
    maps: Vec<SparseMatrix>,
    structure: Structure,
}

impl VicModule {
    /// `levels[k]` has rank `n_min + k`; `maps[k]` goes from `levels[k]` to
    /// `levels[k + 1]`. Only shapes are checked here; see
    /// [`VicModule::verify`] for the module axioms.
    pub fn new(
        name: impl Into<String>,
        n_min: usize,
        levels: Vec<GenRep<SparseMatrix>>,
        maps: Vec<SparseMatrix>,
        structure: Structure,
    ) -> Result<Self> {
        if levels.is_empty() {
            return invalid("a module needs at least one level");
        }
        if maps.len() + 1 != levels.len() {
            return invalid(format!(
                "{} levels need {} maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            ));
        }
        for (k, l) in levels.iter().enumerate() {
            if l.rank() != n_min + k {
                return invalid(format!("level {} has rank {}", n_min + k, l.rank()));
            }
        }
        for (k, t) in maps.iter().enumerate() {
            if t.ncols() != levels[k].dim() || t.nrows() != levels[k + 1].dim() {
                return Err(Error::Invalid(format!(
                    "T_{} is {}x{}, expected {}x{}",
                    n_min + k,
                    t.nrows(),
                    t.ncols(),
                    levels[k + 1].dim(),
                    levels[k].dim()
                )));
            }
        }
        Ok(VicModule {
            name: name.into(),
            n_min,
            levels,
            maps,
            structure,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_min(&self) -> usize {
        self.n_min
    }

    pub fn n_max(&self) -> usize {
        self.n_min + self.levels.len() - 1
    }

    pub fn window(&self) -> (usize, usize) {
        (self.n_min, self.n_max())
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, n: usize) -> &GenRep<SparseMatrix> {
        &self.levels[n - self.n_min]
    }

    pub fn levels(&self) -> &[GenRep<SparseMatrix>] {
        &self.levels
    }

    /// `T_n: V_n → V_{n+1}`.
    pub fn map(&self, n: usize) -> &SparseMatrix {
        &self.maps[n - self.n_min]
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn with_structure(mut self, structure: Structure) -> Self {
        self.structure = structure;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self, n: usize) -> usize {
        self.level(n).dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim()).collect()
    }

    pub fn ranks(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max()
    }

    /// `T_{m-1} ⋯ T_n: V_n → V_m`.
    pub fn composite(&self, n: usize, m: usize) -> SparseMatrix {
        assert!(n <= m);
        let mut acc = SparseMatrix::identity(self.dim(n));
        for k in n..m {
            acc = self.map(k).mul(&acc);
        }
        acc
    }

    pub fn is_finite_type(&self) -> bool {
        matches!(self.structure, Structure::FiniteType)
    }

    /// The levels `lo..=hi`.
    pub fn truncate(&self, lo: usize, hi: usize) -> Result<VicModule> {
        if lo < self.n_min || hi > self.n_max() || lo > hi {
            return Err(Error::Precondition(format!(
                "window [{lo}, {hi}] is not inside [{}, {}]",
                self.n_min,
                self.n_max()
            )));
        }
        let structure = match &self.structure {
            Structure::Algebraic(labels) => Structure::Algebraic(labels[lo - self.n_min..=hi - self.n_min].to_vec()),
            Structure::Pairs(pieces) => Structure::Pairs(
                pieces
                    .iter()
                    .map(|p| {
                        Ok(Piece {
                            label: p.label.clone(),
                            algebraic: p.algebraic.truncate(lo, hi)?,
                            multiplicity: p.multiplicity.truncate(lo, hi)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            s => s.clone(),
        };
        VicModule::new(
            self.name.clone(),
            lo,
            self.levels[lo - self.n_min..=hi - self.n_min].to_vec(),
            self.maps[lo - self.n_min..hi - self.n_min].to_vec(),
            structure,
        )
    }

    /// Checks the module axioms on the window: relations at each level,
    /// equivariance of every `T_n`, and that the complementary `GL_1` and
    /// `GL_2` fix the images of `V_n` in `V_{n+1}` and `V_{n+2}`.
    pub fn verify(&self) -> Result<()> {
        for l in &self.levels {
            l.check_relations()?;
        }
        for n in self.n_min..self.n_max() {
            if let Some(msg) = ops::equivariance_failure(self.level(n), self.level(n + 1), self.map(n)) {
                return Err(Error::Integrity(format!("T_{n}: {msg}")));
            }
            for m in 1..=2 {
                if n + m > self.n_max() {
                    break;
                }
                let image = self.composite(n, n + m);
                if let Some(msg) = ops::complement_fixes(self.level(n + m), n, &image) {
                    return Err(Error::Integrity(format!("image of V_{n} in V_{}: {msg}", n + m)));
                }
            }
        }
        Ok(())
    }

    fn from_levels(
        name: &str,
        window: (usize, usize),
        structure: Structure,
        level: impl Fn(usize) -> Result<GenRep<SparseMatrix>>,
        map: impl Fn(usize) -> Result<SparseMatrix>,
    ) -> Result<VicModule> {
        check_window(window)?;
        let (lo, hi) = window;
        let levels = (lo..=hi).map(&level).collect::<Result<Vec<_>>>()?;
        let maps = (lo..hi).map(&map).collect::<Result<Vec<_>>>()?;
        VicModule::new(name, lo, levels, maps, structure)
    }

    pub fn trivial(window: (usize, usize)) -> Result<VicModule> {
        let labels = constant_labels(window, Bipartition::trivial());
        Self::from_levels(
            "trivial",
            window,
            Structure::Algebraic(labels),
            |n| GenRep::from_fn(n, |_| SparseMatrix::identity(1), true, None, &[]),
            |_| Ok(SparseMatrix::identity(1)),
        )
    }

    /// `V_n = Q^n` with the coordinate inclusions.
    pub fn standard(window: (usize, usize)) -> Result<VicModule> {
        let labels = constant_labels(window, Bipartition::from_parts(&[1], &[]));
        Self::from_levels(
            "standard",
            window,
            Structure::Algebraic(labels),
            |n| GenRep::from_fn(n, |l| letter_matrix(n, l), true, None, &[]),
            |n| Ok(SparseMatrix::injection(n + 1, &(0..n).collect::<Vec<_>>())),
        )
    }

    /// The dual of [`VicModule::standard`]: `g` acts by `g^{-⊤}`.
    pub fn dual_standard(window: (usize, usize)) -> Result<VicModule> {
        Ok(VicModule::standard(window)?
            .inverse_transpose_twist()
            .with_name("dual standard"))
    }

    /// Functions on `P(F_p^n)`; `T_n` sends the line `[v]` to `[v, 0]`.
    pub fn projective(p: u64, window: (usize, usize)) -> Result<VicModule> {
        check_window(window)?;
        let spaces = (window.0..=window.1 + 1)
            .map(|n| ProjectiveSpace::new(n, p))
            .collect::<Result<Vec<_>>>()?;
        let space = |n: usize| &spaces[n - window.0];
        Self::from_levels(
            &format!("C[P(F_{p}^n)]"),
            window,
            Structure::FiniteType,
            |n| space(n).genrep(true, &[]),
            |n| {
                let (src, dst) = (space(n), space(n + 1));
                let targets = (0..src.len())
                    .map(|i| {
                        let mut v = src.point(i).to_vec();
                        v.push(0);
                        dst.index_of(&v).expect("padded point is normalized")
                    })
                    .collect::<Vec<_>>();
                Ok(SparseMatrix::injection(dst.len(), &targets))
            },
        )
    }

    /// The sum-zero functions inside [`VicModule::projective`].
    pub fn sum_zero(p: u64, window: (usize, usize)) -> Result<VicModule> {
        let full = VicModule::projective(p, window)?;
        let subs = full
            .ranks()
            .map(|n| ProjectiveSpace::new(n, p).map(|s| s.sum_zero_subspace()))
            .collect::<Result<Vec<_>>>()?;
        Ok(full.restrict_to(&subs)?.with_name(format!("sum-zero C[P(F_{p}^n)]")))
    }

    /// Functions on `(Z/ℓ)^n`; `T_n` sends `v` to `(v, 0)`. The depth of
    /// each level is `ℓ`.
    pub fn affine(ell: u64, window: (usize, usize)) -> Result<VicModule> {
        check_window(window)?;
        if !(2..=16).contains(&ell) {
            return Err(Error::Precondition(format!(
                "affine modules need 2 ≤ ℓ ≤ 16, got {ell}"
            )));
        }
        if (ell as f64).powi(window.1 as i32) > 2e5 {
            return Err(Error::Cap(format!("(Z/{ell})^{} has too many points", window.1)));
        }
        Self::from_levels(
            &format!("C[(Z/{ell})^n]"),
            window,
            Structure::FiniteType,
            |n| {
                let points = (ell as usize).pow(n as u32);
                let image = |l: &Letter| {
                    let g = Word { letters: vec![*l] }.to_matrix(n, Some(ell));
                    let perm = (0..points)
                        .map(|x| encode(&apply_mod(&g, &decode(x, n, ell), ell), ell))
                        .collect::<Vec<_>>();
                    SparseMatrix::permutation(&perm)
                };
                GenRep::from_fn(n, image, true, Some(ell), &[])
            },
            |n| {
                // base-ℓ digits with coordinate 0 most significant, so
                // appending a zero coordinate multiplies the code by ℓ
                let points = (ell as usize).pow(n as u32);
                let targets = (0..points).map(|x| x * ell as usize).collect::<Vec<_>>();
                Ok(SparseMatrix::injection(points * ell as usize, &targets))
            },
        )
    }

    /// Restriction to invariant subspaces `subs[k] ⊂ V_{n_min + k}` with
    /// `T_n(subs_n) ⊂ subs_{n+1}`, in the reduced bases of the subspaces.
    pub fn restrict_to(&self, subs: &[Subspace]) -> Result<VicModule> {
        if subs.len() != self.len() {
            return invalid("one subspace per level required");
        }
        let levels = self
            .levels
            .iter()
            .zip(subs)
            .map(|(l, s)| l.restrict_to(s))
            .collect::<Result<Vec<_>>>()?;
        let maps = (0..self.maps.len())
            .map(|k| {
                let cols = subs[k]
                    .basis()
                    .iter()
                    .map(|b| {
                        subs[k + 1]
                            .try_coords(&self.maps[k].apply(b))
                            .ok_or_else(|| Error::Integrity(format!("T_{} leaves the submodule", self.n_min + k)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseMatrix::from_columns(subs[k + 1].dim(), cols))
            })
            .collect::<Result<Vec<_>>>()?;
        let structure = match self.structure {
            Structure::FiniteType => Structure::FiniteType,
            _ => Structure::Opaque,
        };
        VicModule::new(
            format!("submodule of {}", self.name),
            self.n_min,
            levels,
            maps,
            structure,
        )
    }

    /// Levelwise tensor product with Kronecker structure maps.
    ///
    /// When exactly one factor is algebraic with a single label and the
    /// other is of finite type, the algebraic factor is put first so that
    /// the result is recorded as a label-multiplicity pair.
    pub fn tensor(&self, other: &VicModule) -> Result<VicModule> {
        if self.window() != other.window() {
            return Err(Error::Precondition(format!(
                "windows differ: {:?} and {:?}",
                self.window(),
                other.window()
            )));
        }
        if self.is_trivial_module() {
            return Ok(other.clone());
        }
        if other.is_trivial_module() {
            return Ok(self.clone());
        }
        let (a, b) = match (&self.structure, &other.structure) {
            (Structure::FiniteType, Structure::Algebraic(_)) if other.single_label().is_some() => (other, self),
            _ => (self, other),
        };
        let levels = a
            .levels
            .iter()
            .zip(&b.levels)
            .map(|(x, y)| x.tensor(y))
            .collect::<Result<Vec<_>>>()?;
        let maps = a.maps.iter().zip(&b.maps).map(|(x, y)| x.kron(y)).collect();
        let structure = match (&a.structure, &b.structure) {
            (Structure::FiniteType, Structure::FiniteType) => Structure::FiniteType,
            (Structure::Algebraic(_), Structure::FiniteType) => match a.single_label() {
                Some(label) => Structure::Pairs(vec![Piece {
                    label,
                    algebraic: a.clone(),
                    multiplicity: b.clone(),
                }]),
                None => Structure::Opaque,
            },
            (Structure::Pairs(pieces), Structure::FiniteType) => Structure::Pairs(
                pieces
                    .iter()
                    .map(|p| {
                        Ok(Piece {
                            label: p.label.clone(),
                            algebraic: p.algebraic.clone(),
                            multiplicity: p.multiplicity.tensor(b)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => Structure::Opaque,
        };
        VicModule::new(format!("{} ⊗ {}", a.name, b.name), a.n_min, levels, maps, structure)
    }

    pub fn direct_sum(&self, other: &VicModule) -> Result<VicModule> {
        if self.window() != other.window() {
            return Err(Error::Precondition(format!(
                "windows differ: {:?} and {:?}",
                self.window(),
                other.window()
            )));
        }
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(x, y)| x.direct_sum(y))
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(x, y)| x.direct_sum(y))
            .collect();
        let structure = match (&self.structure, &other.structure) {
            (Structure::FiniteType, Structure::FiniteType) => Structure::FiniteType,
            (Structure::Algebraic(x), Structure::Algebraic(y)) => Structure::Algebraic(
                x.iter()
                    .zip(y)
                    .map(|(p, q)| {
                        let mut m = p.clone();
                        for (k, v) in q {
                            *m.entry(k.clone()).or_insert(0) += v;
                        }
                        m
                    })
                    .collect(),
            ),
            _ => match (self.as_pieces()?, other.as_pieces()?) {
                (Some(mut x), Some(y)) => {
                    x.extend(y);
                    Structure::Pairs(x)
                }
                _ => Structure::Opaque,
            },
        };
        VicModule::new(
            format!("{} ⊕ {}", self.name, other.name),
            self.n_min,
            levels,
            maps,
            structure,
        )
    }

    /// Twists every action by `g ↦ g^{-⊤}`. Structure maps are unchanged,
    /// since the standard inclusions commute with the twist; labels swap.
    pub fn inverse_transpose_twist(&self) -> VicModule {
        let structure = match &self.structure {
            Structure::Algebraic(labels) => Structure::Algebraic(
                labels
                    .iter()
                    .map(|m| m.iter().map(|(b, k)| (b.swapped(), *k)).collect())
                    .collect(),
            ),
            Structure::Pairs(pieces) => Structure::Pairs(
                pieces
                    .iter()
                    .map(|p| Piece {
                        label: p.label.swapped(),
                        algebraic: p.algebraic.inverse_transpose_twist(),
                        multiplicity: p.multiplicity.inverse_transpose_twist(),
                    })
                    .collect(),
            ),
            s => s.clone(),
        };
        VicModule {
            name: format!("twist of {}", self.name),
            n_min: self.n_min,
            levels: self.levels.iter().map(|l| l.inverse_transpose()).collect(),
            maps: self.maps.clone(),
            structure,
        }
    }

    /// `SV_n = V_{n+1}` restricted to the top-left `GL_n`, with structure
    /// maps `ρ(s) ∘ T_{n+1}` where `s ∈ SL_{n+2}(Z)` sends `e_n ↦ e_{n+1}`
    /// and `e_{n+1} ↦ -e_n` (0-based).
    pub fn shift(&self) -> Result<VicModule> {
        if self.len() < 2 {
            return Err(Error::Precondition("shift needs a window of length at least 2".into()));
        }
        let levels = self.levels[1..]
            .iter()
            .map(|l| l.restrict_top_left(l.rank() - 1))
            .collect::<Vec<_>>();
        let mut maps = Vec::with_capacity(levels.len() - 1);
        for n in self.n_min..self.n_max() - 1 {
            let s = self.level(n + 2).eval(&Word::signed_swap(n + 1, n))?;
            maps.push(s.mul(self.map(n + 1)));
        }
        let structure = match &self.structure {
            Structure::FiniteType => Structure::FiniteType,
            Structure::Algebraic(labels) => {
                let mut out = Vec::with_capacity(labels.len() - 1);
                for (k, m) in labels[1..].iter().enumerate() {
                    let rank = self.n_min + k + 1;
                    let mut acc = BTreeMap::new();
                    for (b, mult) in m {
                        for br in crate::weights::pieri_restrict(b, rank)? {
                            *acc.entry(br.label.label).or_insert(0) += mult;
                        }
                    }
                    out.push(acc);
                }
                Structure::Algebraic(out)
            }
            _ => Structure::Opaque,
        };
        VicModule::new(format!("S({})", self.name), self.n_min, levels, maps, structure)
    }

    /// Cokernel of the natural map `V → SV`, given levelwise by `T_n`.
    pub fn shift_cokernel(&self) -> Result<VicModule> {
        let shifted = self.shift()?;
        let mut levels = Vec::with_capacity(shifted.len());
        let mut quotients = Vec::with_capacity(shifted.len());
        for n in shifted.ranks() {
            let sub = Subspace::spanned_by(self.dim(n + 1), self.map(n).columns());
            let quo = crate::linalg::sparse::Quotient::new(sub);
            levels.push(shifted.level(n).quotient_by(&quo)?);
            quotients.push(quo);
        }
        let mut maps = Vec::with_capacity(levels.len() - 1);
        for (k, n) in (shifted.n_min..shifted.n_max()).enumerate() {
            let t = shifted.map(n);
            let (src, dst) = (&quotients[k], &quotients[k + 1]);
            for b in src.sub().basis() {
                if !dst.sub().contains(&t.apply(b)) {
                    return Err(Error::Integrity(format!(
                        "shifted T_{n} does not preserve the image of V; the complementary GL_2 moves it"
                    )));
                }
            }
            let cols = (0..src.dim())
                .map(|i| dst.project(&t.apply(&SVec::unit(src.lift_index(i)))))
                .collect();
            maps.push(SparseMatrix::from_columns(dst.dim(), cols));
        }
        let structure = match self.structure {
            Structure::FiniteType => Structure::FiniteType,
            _ => Structure::Opaque,
        };
        VicModule::new(
            format!("coker({} → S)", self.name),
            shifted.n_min,
            levels,
            maps,
            structure,
        )
    }

    /// Every level is one-dimensional with trivial action and all maps are
    /// the identity.
    pub fn is_trivial_module(&self) -> bool {
        self.levels.iter().all(|l| {
            l.dim() == 1
                && (0..l.rank())
                    .flat_map(|i| (0..l.rank()).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .all(|(i, j)| l.elementary(i, j).is_identity())
                && l.sign().is_none_or(|s| s.is_identity())
                && l.diagonals().values().all(|d| d.is_identity())
        }) && self.maps.iter().all(|t| t.is_identity())
    }

    /// The label if every level is a single copy of the same label.
    pub fn single_label(&self) -> Option<Bipartition> {
        let Structure::Algebraic(labels) = &self.structure else {
            return None;
        };
        let first = labels.first()?;
        if first.len() != 1 || labels.iter().any(|m| m != first) {
            return None;
        }
        let (b, &k) = first.iter().next()?;
        (k == 1).then(|| b.clone())
    }

    fn as_pieces(&self) -> Result<Option<Vec<Piece>>> {
        Ok(match &self.structure {
            Structure::Pairs(p) => Some(p.clone()),
            Structure::FiniteType => Some(vec![Piece {
                label: Bipartition::trivial(),
                algebraic: VicModule::trivial(self.window())?,
                multiplicity: self.clone(),
            }]),
            Structure::Algebraic(_) => match self.single_label() {
                Some(label) => Some(vec![Piece {
                    label,
                    algebraic: self.clone(),
                    multiplicity: VicModule::trivial(self.window())?.with_structure(Structure::FiniteType),
                }]),
                None => None,
            },
            Structure::Opaque => None,
        })
    }

    /// Adds images of the unit diagonals `diag(u, 1, …, 1)` to every level.
    pub(crate) fn with_diagonals(mut self, diags: Vec<BTreeMap<u64, SparseMatrix>>) -> Result<VicModule> {
        if diags.len() != self.levels.len() {
            return invalid("one diagonal map per level required");
        }
        self.levels = self
            .levels
            .into_iter()
            .zip(diags)
            .map(|(l, d)| l.with_diagonals(d))
            .collect::<Result<_>>()?;
        Ok(self)
    }
}

fn check_window(window: (usize, usize)) -> Result<()> {
    if window.0 < 1 || window.0 > window.1 {
        return Err(Error::Precondition(format!("bad window [{}, {}]", window.0, window.1)));
    }
    Ok(())
}

fn constant_labels(window: (usize, usize), b: Bipartition) -> Vec<BTreeMap<Bipartition, u64>> {
    (window.0..=window.1)
        .map(|_| BTreeMap::from([(b.clone(), 1)]))
        .collect()
}

/// The integer matrix of a generator, as a sparse rational matrix.
pub(crate) fn letter_matrix(n: usize, l: &Letter) -> SparseMatrix {
    int_to_sparse(&Word { letters: vec![*l] }.to_matrix(n, None))
}

pub(crate) fn int_to_sparse(m: &IntMat) -> SparseMatrix {
    let n = m.n();
    SparseMatrix::from_dense(&Matrix::from_fn(n, n, |i, j| Q::from_integer(m.get(i, j).into())))
}

fn decode(mut x: usize, n: usize, ell: u64) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for k in (0..n).rev() {
        v[k] = (x % ell as usize) as u64;
        x /= ell as usize;
    }
    v
}

fn encode(v: &[u64], ell: u64) -> usize {
    v.iter().fold(0usize, |acc, &d| acc * ell as usize + d as usize)
}

fn apply_mod(g: &IntMat, v: &[u64], ell: u64) -> Vec<u64> {
    let n = v.len();
    (0..n)
        .map(|r| {
            let s: i128 = (0..n).map(|c| g.get(r, c) * v[c] as i128).sum();
            s.rem_euclid(ell as i128) as u64
        })
        .collect()
}

/// Units of `Z/ℓ` other than 1, ascending.
pub(crate) fn nontrivial_units(ell: u64) -> Vec<u64> {
    (2..ell).filter(|&u| mod_inv(u, ell).is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_modules_satisfy_the_axioms() {
        for m in [
            VicModule::trivial((3, 6)).unwrap(),
            VicModule::standard((3, 6)).unwrap(),
            VicModule::dual_standard((3, 5)).unwrap(),
            VicModule::projective(2, (3, 6)).unwrap(),
            VicModule::sum_zero(3, (3, 4)).unwrap(),
            VicModule::affine(4, (2, 4)).unwrap(),
        ] {
            m.verify().unwrap_or_else(|e| panic!("{}: {e}", m.name()));
        }
    }

    #[test]
    fn shift_dimensions() {
        let p = VicModule::projective(2, (3, 6)).unwrap();
        let s = p.shift().unwrap();
        assert_eq!(s.dims(), vec![15, 31, 63]);
        s.verify().unwrap();
        let std = VicModule::standard((3, 6)).unwrap().shift().unwrap();
        let Structure::Algebraic(labels) = std.structure() else {
            panic!("labels lost")
        };
        let expect = BTreeMap::from([(Bipartition::from_parts(&[1], &[]), 1), (Bipartition::trivial(), 1)]);
        assert!(labels.iter().all(|m| *m == expect));
        let t = VicModule::trivial((3, 6)).unwrap();
        assert!(t.shift().unwrap().is_trivial_module());
    }

    #[test]
    fn tensor_records_pairs() {
        let m = VicModule::standard((3, 5))
            .unwrap()
            .tensor(&VicModule::projective(2, (3, 5)).unwrap())
            .unwrap();
        assert_eq!(m.dims(), vec![21, 60, 155]);
        assert!(matches!(m.structure(), Structure::Pairs(p) if p.len() == 1));
        m.verify().unwrap();
    }
}
