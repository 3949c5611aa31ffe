//! Weak triples, covariants, stability degrees and depth along a module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VicModule;
use crate::arith::{divisors, lcm};
use crate::error::{Error, Result};
use crate::linalg::sparse::{augmentation_span, fixed_space, Quotient};
use crate::linalg::{q, SVec, SparseMatrix, Subspace};
use crate::words::{GenRep, Letter};

/// Generators of the top-left `GL_m` inside a level: elementary matrices,
/// the sign at coordinate 0, and the unit diagonals at coordinate 0.
pub(crate) fn top_left_letters(level: &GenRep<SparseMatrix>, m: usize) -> Vec<Letter> {
    block_letters(level, 0, m)
}

/// Generators of the block `GL` on coordinates `start..end`.
pub(crate) fn block_letters(level: &GenRep<SparseMatrix>, start: usize, end: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in start..end {
        for j in start..end {
            if i != j {
                out.push(Letter::Elem { i, j, power: 1 });
            }
        }
    }
    if end > start {
        if level.has_sign() {
            out.push(Letter::Sign { k: start });
        }
        for &unit in level.diagonals().keys() {
            out.push(Letter::Diag { k: start, unit });
        }
    }
    out
}

fn letter_name(l: &Letter) -> String {
    match *l {
        Letter::Elem { i, j, power } if power == 1 => format!("E_{}{}", i + 1, j + 1),
        Letter::Elem { i, j, power } => format!("E_{}{}^{power}", i + 1, j + 1),
        Letter::Sign { k } => format!("D_{}", k + 1),
        Letter::Diag { k, unit } => format!("diag({unit} at {})", k + 1),
    }
}

/// First generator `g` of the lower group with `T ρ(g) ≠ ρ(g ⊕ 1) T`.
pub(crate) fn equivariance_failure(
    lower: &GenRep<SparseMatrix>,
    upper: &GenRep<SparseMatrix>,
    t: &SparseMatrix,
) -> Option<String> {
    for l in top_left_letters(lower, lower.rank()) {
        let (Ok(a), Ok(b)) = (lower.letter(&l), upper.letter(&l)) else {
            return Some(format!("no image of {} on both levels", letter_name(&l)));
        };
        if t.mul(&a) != b.mul(t) {
            return Some(format!("not equivariant for {}", letter_name(&l)));
        }
    }
    None
}

/// First generator of the complementary group on coordinates
/// `start..rank` that moves a column of `image`.
pub(crate) fn complement_fixes(level: &GenRep<SparseMatrix>, start: usize, image: &SparseMatrix) -> Option<String> {
    for l in block_letters(level, start, level.rank()) {
        let Ok(g) = level.letter(&l) else {
            return Some(format!("no image of {}", letter_name(&l)));
        };
        if g.mul(image) != *image {
            return Some(format!("{} moves the image", letter_name(&l)));
        }
    }
    None
}

/// Span of the orbit of `start` under the group generated by `letters`.
pub(crate) fn orbit_span(level: &GenRep<SparseMatrix>, letters: &[Letter], start: &[SVec]) -> Result<Subspace> {
    let gens = letters.iter().map(|l| level.letter(l)).collect::<Result<Vec<_>>>()?;
    let mut span = Subspace::new(level.dim());
    let mut queue: Vec<SVec> = Vec::new();
    for v in start {
        if span.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if span.dim() == level.dim() {
            break;
        }
        for g in &gens {
            let w = g.apply(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    Ok(span)
}

/// Is `V` generated, as a representation, by the columns of `t`?
pub(crate) fn generated_by(level: &GenRep<SparseMatrix>, t: &SparseMatrix) -> Result<bool> {
    if level.dim() == 0 {
        return Ok(true);
    }
    let letters = top_left_letters(level, level.rank());
    Ok(orbit_span(level, &letters, t.columns())?.dim() == level.dim())
}

/// Which of the weak-triple conditions hold for `V_{n-1} → V_n → V_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleVerdict {
    pub ranks: [usize; 3],
    /// Each level satisfies the defining relations of its group.
    pub representations: bool,
    /// Both maps are equivariant for the standard inclusions.
    pub equivariant: bool,
    /// `V_n` is generated by the image of `V_{n-1}`, and `V_{n+1}` by the
    /// image of `V_n`.
    pub generated: bool,
    /// The complementary `GL_1` fixes both images.
    pub gl1_fixes_images: bool,
    /// The complementary `GL_2` fixes the image of `V_{n-1}` in `V_{n+1}`.
    pub gl2_fixes_image: bool,
    pub injective: [bool; 2],
    pub failures: Vec<String>,
}

impl TripleVerdict {
    pub fn is_weak_triple(&self) -> bool {
        self.representations && self.equivariant && self.generated && self.gl1_fixes_images && self.gl2_fixes_image
    }

    /// Weak triple with injective maps.
    pub fn is_triple(&self) -> bool {
        self.is_weak_triple() && self.injective.iter().all(|&b| b)
    }
}

pub fn validate_weak_triple(levels: [&GenRep<SparseMatrix>; 3], maps: [&SparseMatrix; 2]) -> Result<TripleVerdict> {
    let n = levels[1].rank();
    if levels[0].rank() + 1 != n || levels[2].rank() != n + 1 {
        return Err(Error::Invalid("triple levels must have consecutive ranks".into()));
    }
    for k in 0..2 {
        if maps[k].ncols() != levels[k].dim() || maps[k].nrows() != levels[k + 1].dim() {
            return Err(Error::Invalid(format!(
                "map {} is {}x{}, levels have dimensions {} and {}",
                k + 1,
                maps[k].nrows(),
                maps[k].ncols(),
                levels[k].dim(),
                levels[k + 1].dim()
            )));
        }
    }
    let mut failures = Vec::new();
    let mut representations = true;
    for l in levels {
        if let Err(e) = l.check_relations() {
            representations = false;
            failures.push(format!("rank {}: {e}", l.rank()));
        }
    }
    let mut equivariant = true;
    for k in 0..2 {
        if let Some(msg) = equivariance_failure(levels[k], levels[k + 1], maps[k]) {
            equivariant = false;
            failures.push(format!("map {}: {msg}", k + 1));
        }
    }
    let mut generated = true;
    for k in 0..2 {
        if !generated_by(levels[k + 1], maps[k])? {
            generated = false;
            failures.push(format!("rank {} is not generated by the image", levels[k + 1].rank()));
        }
    }
    let mut gl1_fixes_images = true;
    for k in 0..2 {
        let start = levels[k].rank();
        if let Some(msg) = complement_fixes(levels[k + 1], start, maps[k]) {
            gl1_fixes_images = false;
            failures.push(format!("complementary GL_1 on rank {}: {msg}", levels[k + 1].rank()));
        }
    }
    let composite = maps[1].mul(maps[0]);
    let gl2_fixes_image = match complement_fixes(levels[2], levels[0].rank(), &composite) {
        Some(msg) => {
            failures.push(format!("complementary GL_2: {msg}"));
            false
        }
        None => true,
    };
    Ok(TripleVerdict {
        ranks: [n - 1, n, n + 1],
        representations,
        equivariant,
        generated,
        gl1_fixes_images,
        gl2_fixes_image,
        injective: [maps[0].is_injective(), maps[1].is_injective()],
        failures,
    })
}

impl VicModule {
    /// The triple `V_{n-1} → V_n → V_{n+1}` centred at `n`.
    pub fn triple(&self, n: usize) -> Result<TripleVerdict> {
        if n <= self.n_min() || n >= self.n_max() {
            return Err(Error::Precondition(format!(
                "triple centred at {n} needs levels {} to {} in the window [{}, {}]",
                n - 1,
                n + 1,
                self.n_min(),
                self.n_max()
            )));
        }
        validate_weak_triple(
            [self.level(n - 1), self.level(n), self.level(n + 1)],
            [self.map(n - 1), self.map(n)],
        )
    }
}

/// `Φ_a(V)_n`: coinvariants of the bottom-right `GL_{n-a}` for `n > a`,
/// with the maps induced by `T_n`.
#[derive(Clone, Debug, Serialize)]
pub struct Covariants {
    pub a: usize,
    pub n_min: usize,
    pub dims: Vec<usize>,
    pub map_ranks: Vec<usize>,
    /// Invariants of the same group have the same dimension at every level.
    pub invariants_agree: bool,
    #[serde(skip)]
    pub maps: Vec<SparseMatrix>,
}

impl Covariants {
    pub fn n_max(&self) -> usize {
        self.n_min + self.dims.len() - 1
    }

    /// `T_n` on covariants is an isomorphism.
    pub fn is_iso(&self, n: usize) -> bool {
        let k = n - self.n_min;
        self.dims[k] == self.dims[k + 1] && self.map_ranks[k] == self.dims[k]
    }
}

pub fn covariants_phi(v: &VicModule, a: usize) -> Result<Covariants> {
    let lo = v.n_min().max(a + 1);
    if lo > v.n_max() {
        return Err(Error::Precondition(format!(
            "Φ_{a} needs a level above {a}; window is [{}, {}]",
            v.n_min(),
            v.n_max()
        )));
    }
    let mut quotients = Vec::new();
    let mut invariants_agree = true;
    for n in lo..=v.n_max() {
        let level = v.level(n);
        let gens = block_letters(level, a, n)
            .iter()
            .map(|l| level.letter(l))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&SparseMatrix> = gens.iter().collect();
        let quo = if refs.is_empty() {
            Quotient::new(Subspace::new(level.dim()))
        } else {
            if fixed_space(&refs).len() + augmentation_span(&refs).dim() != level.dim() {
                invariants_agree = false;
            }
            Quotient::new(augmentation_span(&refs))
        };
        quotients.push(quo);
    }
    let mut maps = Vec::new();
    for (k, n) in (lo..v.n_max()).enumerate() {
        let (src, dst) = (&quotients[k], &quotients[k + 1]);
        let t = v.map(n);
        let cols = (0..src.dim())
            .map(|i| dst.project(&t.apply(&SVec::unit(src.lift_index(i)))))
            .collect();
        maps.push(SparseMatrix::from_columns(dst.dim(), cols));
    }
    Ok(Covariants {
        a,
        n_min: lo,
        dims: quotients.iter().map(|q| q.dim()).collect(),
        map_ranks: maps.iter().map(|m| m.rank()).collect(),
        invariants_agree,
        maps,
    })
}

/// Least `n` from which every map of `phi` is an isomorphism; `None` if
/// the last map in the window is not.
pub fn stabilization_degree(phi: &Covariants) -> Option<usize> {
    let mut degree = phi.n_max();
    for n in (phi.n_min..phi.n_max()).rev() {
        if !phi.is_iso(n) {
            break;
        }
        degree = n;
    }
    if phi.n_max() > phi.n_min && !phi.is_iso(phi.n_max() - 1) {
        return None;
    }
    Some(degree)
}

/// Least `n` from which every `T_m` is injective; `None` if the last map
/// in the window is not.
pub fn injectivity_degree(v: &VicModule) -> Option<usize> {
    let mut degree = v.n_max();
    for n in (v.n_min()..v.n_max()).rev() {
        if !v.map(n).is_injective() {
            return (n < v.n_max() - 1).then_some(n + 1);
        }
        degree = n;
    }
    Some(degree)
}

/// Least `d ≥ n_min` such that every `V_n` with `d < n ≤ n_max` is
/// generated by the image of `V_{n-1}`; `None` if the top level is not.
pub fn generation_degree(v: &VicModule) -> Result<Option<usize>> {
    let mut degree = v.n_min();
    for n in (v.n_min() + 1..=v.n_max()).rev() {
        if !generated_by(v.level(n), v.map(n - 1))? {
            if n == v.n_max() {
                return Ok(None);
            }
            degree = n;
            break;
        }
    }
    Ok(Some(degree))
}

/// Does `ρ(E_ij)^ℓ` act unipotently for every `i ≠ j`? Returns the first
/// failing pair.
fn elementary_power_witness(level: &GenRep<SparseMatrix>, ell: u64) -> Option<(usize, usize)> {
    let n = level.rank();
    for i in 0..n {
        for j in 0..n {
            if i != j && !is_unipotent(&level.elementary(i, j).pow(ell), level.modulus()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Unipotence of a matrix of some finite order (when the representation has
/// a modulus or the matrix is a permutation) is equality with the identity;
/// otherwise `M - I` is tested for nilpotence by repeated squaring.
pub(crate) fn is_unipotent(m: &SparseMatrix, modulus: Option<u64>) -> bool {
    if m.is_identity() {
        return true;
    }
    if modulus.is_some() || m.as_permutation().is_some() {
        return false;
    }
    let mut nil = m.sub(&SparseMatrix::identity(m.nrows()));
    let mut power = 1usize;
    while power < m.nrows() {
        nil = nil.mul(&nil);
        if nil.is_zero() {
            return true;
        }
        power *= 2;
    }
    nil.is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropagationVerdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

/// Depth propagation along a triple: if `E^ℓ` acts unipotently on the two
/// lower levels, it does on the upper level. For finite type, unipotent
/// means trivial, i.e. the level factors through `SL^±(Z/ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthPropagation {
    pub ell: u64,
    pub ranks: [usize; 3],
    /// `E_ij^ℓ` acts trivially at each level.
    pub factors: [bool; 3],
    pub verdict: PropagationVerdict,
    /// `(rank, i, j)` (1-based indices) of an `E_ij^ℓ` that is not
    /// unipotent at the upper level.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn depth_propagation_check(levels: [&GenRep<SparseMatrix>; 3], ell: u64) -> Result<DepthPropagation> {
    if ell == 0 {
        return Err(Error::Precondition("ℓ must be positive".into()));
    }
    let ranks = [levels[0].rank(), levels[1].rank(), levels[2].rank()];
    let factors = levels.map(|l| {
        let n = l.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || l.elementary(i, j).pow(ell).is_identity()))
    });
    let hypothesis = levels[..2].iter().all(|l| elementary_power_witness(l, ell).is_none());
    if !hypothesis {
        return Ok(DepthPropagation {
            ell,
            ranks,
            factors,
            verdict: PropagationVerdict::HypothesisNotMet,
            witness: None,
        });
    }
    let witness = elementary_power_witness(levels[2], ell).map(|(i, j)| (ranks[2], i + 1, j + 1));
    Ok(DepthPropagation {
        ell,
        ranks,
        factors,
        verdict: if witness.is_none() {
            PropagationVerdict::Pass
        } else {
            PropagationVerdict::Fail
        },
        witness,
    })
}

/// Order of `ρ(E_12)`, which is the depth of a finite-type level.
pub fn level_depth(level: &GenRep<SparseMatrix>) -> Result<u64> {
    if level.rank() < 2 {
        return Ok(1);
    }
    let e = level.elementary(0, 1);
    if let Some(perm) = e.as_permutation() {
        let mut seen = vec![false; perm.len()];
        let mut order = 1u64;
        for s in 0..perm.len() {
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            if len > 0 {
                order = lcm(order, len);
            }
        }
        return Ok(order);
    }
    if let Some(m) = level.modulus() {
        let mut ds = divisors(m);
        ds.sort_unstable();
        for d in ds {
            if e.pow(d).is_identity() {
                return Ok(d);
            }
        }
    }
    const SEARCH: u64 = 720;
    let mut acc = e.clone();
    for k in 1..=SEARCH {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(e);
    }
    Err(Error::Precondition(format!(
        "ρ(E_12) at rank {} has no finite order up to {SEARCH}; the level is not of finite type",
        level.rank()
    )))
}

#[derive(Clone, Debug, Serialize)]
pub struct StableDepth {
    pub ell: u64,
    pub per_level: Vec<u64>,
    pub generation_degree: Option<usize>,
    /// Depth propagation checks on every triple centred above the
    /// generation degree.
    pub propagation: Vec<DepthPropagation>,
    pub constant_past_generation: bool,
}

pub fn stable_depth(v: &VicModule) -> Result<StableDepth> {
    let per_level = v.levels().iter().map(level_depth).collect::<Result<Vec<_>>>()?;
    let ell = per_level.iter().fold(1, |a, &b| lcm(a, b));
    let gen = generation_degree(v)?;
    let mut propagation = Vec::new();
    if let Some(d) = gen {
        for n in (d + 1).max(v.n_min() + 1)..v.n_max() {
            propagation.push(depth_propagation_check(
                [v.level(n - 1), v.level(n), v.level(n + 1)],
                ell,
            )?);
        }
    }
    let start = gen.unwrap_or(v.n_max()) - v.n_min();
    let constant_past_generation = per_level[start..].windows(2).all(|w| w[0] == w[1])
        && propagation.iter().all(|p| p.verdict == PropagationVerdict::Pass);
    Ok(StableDepth {
        ell,
        per_level,
        generation_degree: gen,
        propagation,
        constant_past_generation,
    })
}

/// The submodule generated by one vector at the bottom level, with its
/// covariant stabilization.
#[derive(Clone, Debug, Serialize)]
pub struct NoetherianWitness {
    pub module: String,
    pub dims: Vec<usize>,
    pub generation_degree: Option<usize>,
    /// `(a, stabilization degree of Φ_a)` for each `a` computed.
    pub phi_stabilization: Vec<(usize, Option<usize>)>,
    pub holds: bool,
}

/// Generates a submodule from a seeded random integer vector in
/// `V_{n_min}`, then checks that its covariants `Φ_a`, `a < a_max`,
/// stabilize in the window and that it is generated no later than they
/// stabilize.
pub fn noetherian_witness(v: &VicModule, a_max: usize, seed: u64) -> Result<NoetherianWitness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = v.dim(v.n_min());
    let start = SVec::from_pairs((0..d).map(|i| (i, q(rng.gen_range(-3..=3)))));
    let mut subs = Vec::with_capacity(v.len());
    let mut seeds = vec![start];
    for n in v.ranks() {
        let level = v.level(n);
        let span = orbit_span(level, &top_left_letters(level, n), &seeds)?;
        seeds = if n < v.n_max() {
            span.basis().iter().map(|b| v.map(n).apply(b)).collect()
        } else {
            Vec::new()
        };
        subs.push(span);
    }
    let sub = v.restrict_to(&subs)?;
    let generation = generation_degree(&sub)?;
    let mut phi_stabilization = Vec::new();
    let mut holds = generation.is_some();
    for a in 0..a_max {
        if a + 1 > sub.n_max() {
            break;
        }
        let phi = covariants_phi(&sub, a)?;
        let s = stabilization_degree(&phi);
        holds &= match (s, generation) {
            (Some(s), Some(g)) => g <= s.max(sub.n_min()),
            _ => false,
        };
        phi_stabilization.push((a, s));
    }
    Ok(NoetherianWitness {
        module: v.name().to_string(),
        dims: sub.dims(),
        generation_degree: generation,
        phi_stabilization,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_triple_is_weak_and_injective() {
        let p = VicModule::projective(2, (3, 5)).unwrap();
        let v = p.triple(4).unwrap();
        assert!(v.is_triple(), "{:?}", v.failures);
        let std = VicModule::standard((3, 5)).unwrap();
        assert!(std.triple(4).unwrap().is_triple());
    }

    #[test]
    fn zero_maps_fail_generation() {
        let p = VicModule::projective(2, (3, 5)).unwrap();
        let zero = [
            SparseMatrix::zeros(p.dim(4), p.dim(3)),
            SparseMatrix::zeros(p.dim(5), p.dim(4)),
        ];
        let v = validate_weak_triple([p.level(3), p.level(4), p.level(5)], [&zero[0], &zero[1]]).unwrap();
        assert!(!v.generated);
        assert!(v.equivariant);
        let bad = SparseMatrix::zeros(2, 2);
        assert!(validate_weak_triple([p.level(3), p.level(4), p.level(5)], [&bad, &zero[1]]).is_err());
    }

    #[test]
    fn covariants_of_canonical_modules() {
        let std = VicModule::standard((3, 7)).unwrap();
        let phi0 = covariants_phi(&std, 0).unwrap();
        assert!(phi0.dims.iter().all(|&d| d == 0));
        let phi1 = covariants_phi(&std, 1).unwrap();
        assert!(phi1.dims.iter().all(|&d| d == 1));
        assert!(phi1.map_ranks.iter().all(|&r| r == 1));
        assert_eq!(stabilization_degree(&phi1), Some(3));
        let triv = covariants_phi(&VicModule::trivial((3, 7)).unwrap(), 0).unwrap();
        assert!(triv.dims.iter().all(|&d| d == 1));
        assert_eq!(stabilization_degree(&triv), Some(3));
        assert!(phi1.invariants_agree && triv.invariants_agree);
    }

    #[test]
    fn degrees() {
        let p = VicModule::projective(2, (3, 6)).unwrap();
        assert_eq!(injectivity_degree(&p), Some(3));
        assert_eq!(generation_degree(&p).unwrap(), Some(3));
        // A torsion head: the trivial module with T_3 = 0.
        let t = VicModule::trivial((3, 6)).unwrap();
        let mut maps = t.maps().to_vec();
        maps[0] = SparseMatrix::zeros(1, 1);
        let head = VicModule::new("head", 3, t.levels().to_vec(), maps, super::super::Structure::Opaque).unwrap();
        assert_eq!(injectivity_degree(&head), Some(4));
        assert_eq!(generation_degree(&head).unwrap(), Some(4));
    }

    #[test]
    fn depth_propagation() {
        let p = VicModule::projective(2, (3, 5)).unwrap();
        let v = depth_propagation_check([p.level(3), p.level(4), p.level(5)], 2).unwrap();
        assert_eq!(v.verdict, PropagationVerdict::Pass);
        let std = VicModule::standard((3, 5)).unwrap();
        let v = depth_propagation_check([std.level(3), std.level(4), std.level(5)], 1).unwrap();
        assert_eq!(v.verdict, PropagationVerdict::Pass);
        let a4 = VicModule::affine(4, (5, 5)).unwrap();
        let v = depth_propagation_check([p.level(3), p.level(4), a4.level(5)], 2).unwrap();
        assert_eq!(v.verdict, PropagationVerdict::Fail);
        assert!(v.witness.is_some());
    }

    #[test]
    fn stable_depths() {
        assert_eq!(stable_depth(&VicModule::projective(2, (3, 6)).unwrap()).unwrap().ell, 2);
        assert_eq!(stable_depth(&VicModule::trivial((3, 6)).unwrap()).unwrap().ell, 1);
        let six = VicModule::projective(2, (3, 4))
            .unwrap()
            .tensor(&VicModule::projective(3, (3, 4)).unwrap())
            .unwrap();
        let s = stable_depth(&six).unwrap();
        assert_eq!(s.ell, 6);
        assert!(s.constant_past_generation);
        assert!(stable_depth(&VicModule::standard((3, 4)).unwrap()).is_err());
    }

    #[test]
    fn noetherian_witness_on_projective() {
        let w = noetherian_witness(&VicModule::projective(2, (3, 6)).unwrap(), 2, 7).unwrap();
        assert!(w.holds, "{w:?}");
    }
}
