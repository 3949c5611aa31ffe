//! Words in the standard generators of `GL_n(Z)` and of `GL_n(Z/ℓ)`, the
//! row-reduction that writes a matrix as such a word, and representations
//! given by images of the generators.
//!
//! Generators: elementary matrices `E_ij = I + e_ij` (0-based `i ≠ j`), the
//! sign `D_k = diag(…, -1 at k, …)`, and over `Z/ℓ` the unit diagonals
//! `diag(…, u at k, …)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::mod_inv;
use crate::error::{invalid, Error, Result};
use crate::linalg::{Matrix, SparseMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Letter {
    /// `E_ij^power`.
    Elem { i: usize, j: usize, power: i64 },
    /// `D_k`.
    Sign { k: usize },
    /// `diag(1, …, u at k, …, 1)` for a unit `u` of `Z/ℓ`.
    Diag { k: usize, unit: u64 },
}

/// A product `L_1 L_2 ⋯ L_r` of generators of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn elem(i: usize, j: usize, power: i64) -> Self {
        Word {
            letters: vec![Letter::Elem { i, j, power }],
        }
    }

    pub fn sign(k: usize) -> Self {
        Word {
            letters: vec![Letter::Sign { k }],
        }
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn then(mut self, other: &Word) -> Word {
        self.letters.extend_from_slice(&other.letters);
        self
    }

    /// Inverse word; `modulus` is needed only for unit diagonals.
    pub fn inverse(&self, modulus: Option<u64>) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| match *l {
                    Letter::Elem { i, j, power } => Letter::Elem { i, j, power: -power },
                    Letter::Sign { k } => Letter::Sign { k },
                    Letter::Diag { k, unit } => {
                        let m = modulus.expect("unit diagonal needs a modulus");
                        Letter::Diag {
                            k,
                            unit: mod_inv(unit, m).expect("unit"),
                        }
                    }
                })
                .collect(),
        }
    }

    /// The signed swap `E_ab E_ba^{-1} E_ab`, sending `e_a ↦ -e_b`, `e_b ↦ e_a`.
    pub fn signed_swap(a: usize, b: usize) -> Word {
        Word {
            letters: vec![
                Letter::Elem { i: a, j: b, power: 1 },
                Letter::Elem { i: b, j: a, power: -1 },
                Letter::Elem { i: a, j: b, power: 1 },
            ],
        }
    }

    /// Integer matrix of the word (`modulus` reduces entries when given).
    pub fn to_matrix(&self, n: usize, modulus: Option<u64>) -> IntMat {
        let mut m = IntMat::identity(n);
        for l in &self.letters {
            m = m.mul(&letter_matrix(n, l), modulus);
        }
        m
    }
}

fn letter_matrix(n: usize, l: &Letter) -> IntMat {
    let mut m = IntMat::identity(n);
    match *l {
        Letter::Elem { i, j, power } => m.set(i, j, power as i128),
        Letter::Sign { k } => m.set(k, k, -1),
        Letter::Diag { k, unit } => m.set(k, k, unit as i128),
    }
    m
}

/// Small square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat {
    n: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMat { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("integer matrix must be square");
        }
        Ok(IntMat {
            n,
            data: rows.iter().flatten().map(|&v| v as i128).collect(),
        })
    }

    pub fn from_flat(n: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), n * n);
        IntMat {
            n,
            data: data.iter().map(|&v| v as i128).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.n + j] = v;
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.data.iter().map(|&v| v as i64).collect()
    }

    pub fn mul(&self, other: &IntMat, modulus: Option<u64>) -> IntMat {
        let n = self.n;
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        if let Some(m) = modulus {
            for v in out.iter_mut() {
                *v = v.rem_euclid(m as i128);
            }
        }
        IntMat { n, data: out }
    }

    pub fn reduce(&self, modulus: u64) -> IntMat {
        IntMat {
            n: self.n,
            data: self.data.iter().map(|v| v.rem_euclid(modulus as i128)).collect(),
        }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &IntMat) -> IntMat {
        let n = self.n + other.n;
        let mut m = IntMat {
            n,
            data: vec![0; n * n],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        m
    }

    fn row_add(&mut self, target: usize, source: usize, c: i128, modulus: Option<u64>) {
        let n = self.n;
        for j in 0..n {
            let mut v = self.data[target * n + j] + c * self.data[source * n + j];
            if let Some(m) = modulus {
                v = v.rem_euclid(m as i128);
            }
            self.data[target * n + j] = v;
        }
    }
}

/// Writes `g ∈ GL_n(Z)` as a word. With `allow_sign = false`, `g` must have
/// determinant 1 and the word uses elementary matrices only.
pub fn factor_integral(g: &IntMat, allow_sign: bool) -> Result<Word> {
    factor(g, None, allow_sign)
}

/// Writes `g ∈ GL_n(Z/ℓ)` as a word. Elementary letters have exponents in
/// `[0, ℓ)`; a final unit diagonal letter carries the determinant unless it
/// is 1 (or -1 and `allow_sign`).
pub fn factor_residue(g: &IntMat, modulus: u64, allow_sign: bool) -> Result<Word> {
    factor(&g.reduce(modulus), Some(modulus), allow_sign)
}

fn factor(g: &IntMat, modulus: Option<u64>, allow_sign: bool) -> Result<Word> {
    let n = g.n;
    let mut m = g.clone();
    // ops: left multiplications L_t applied in order; g = L_1^{-1} ⋯ L_T^{-1} D.
    let mut ops: Vec<(usize, usize, i128)> = Vec::new();
    let mut apply = |m: &mut IntMat, target: usize, source: usize, c: i128| {
        if c == 0 {
            return;
        }
        m.row_add(target, source, c, modulus);
        ops.push((target, source, c));
    };
    for c in 0..n {
        // Euclid on column c among rows c..n.
        loop {
            let nonzero: Vec<usize> = (c..n).filter(|&r| m.get(r, c) != 0).collect();
            if nonzero.is_empty() {
                return Err(Error::Precondition("matrix is not invertible".into()));
            }
            if nonzero.len() == 1 {
                let r = nonzero[0];
                if r != c {
                    apply(&mut m, c, r, 1);
                    let factor = m.get(r, c) / m.get(c, c);
                    apply(&mut m, r, c, -factor);
                }
                break;
            }
            let s = *nonzero.iter().min_by_key(|&&r| m.get(r, c).abs()).expect("nonempty");
            for &r in &nonzero {
                if r != s {
                    let quo = m.get(r, c) / m.get(s, c);
                    apply(&mut m, r, s, -quo);
                }
            }
        }
        let pivot = m.get(c, c);
        match modulus {
            None => {
                if pivot.abs() != 1 {
                    return Err(Error::Precondition("determinant is not ±1".into()));
                }
            }
            Some(ell) => {
                let Some(inv) = mod_inv(pivot as u64, ell) else {
                    return Err(Error::Precondition("matrix is not invertible mod ℓ".into()));
                };
                if c + 1 < n && pivot != 1 {
                    // make the pivot 1 using the (zero) row below
                    apply(&mut m, c + 1, c, 1);
                    apply(&mut m, c, c + 1, inv as i128 - 1);
                    let below = m.get(c + 1, c);
                    apply(&mut m, c + 1, c, -below);
                }
            }
        }
    }
    // clear above the diagonal
    for c in (0..n).rev() {
        let pivot = m.get(c, c);
        for r in 0..c {
            let a = m.get(r, c);
            if a == 0 {
                continue;
            }
            let factor = match modulus {
                None => a / pivot,
                Some(ell) => {
                    let inv = mod_inv(pivot as u64, ell).expect("pivot is a unit") as i128;
                    a * inv % ell as i128
                }
            };
            apply(&mut m, r, c, -factor);
        }
    }
    // m is now diagonal
    let mut word = Word::new();
    for &(t, s, c) in ops.iter() {
        let power = match modulus {
            None => -c,
            Some(ell) => (-c).rem_euclid(ell as i128),
        };
        if power != 0 {
            word.push(Letter::Elem {
                i: t,
                j: s,
                power: power as i64,
            });
        }
    }
    let mut signs: Vec<usize> = Vec::new();
    for k in 0..n {
        let d = m.get(k, k);
        match modulus {
            None => {
                if d == -1 {
                    signs.push(k);
                }
            }
            Some(ell) => {
                let d = d.rem_euclid(ell as i128) as u64;
                if d == 1 % ell {
                    continue;
                }
                if d == ell - 1 && allow_sign {
                    signs.push(k);
                } else {
                    word.push(Letter::Diag { k, unit: d });
                }
            }
        }
    }
    if allow_sign {
        for k in signs {
            word.push(Letter::Sign { k });
        }
    } else {
        if signs.len() % 2 == 1 {
            return Err(Error::Precondition(
                "determinant -1 but no sign generator is available".into(),
            ));
        }
        // diag(-1, -1) on coordinates (a, b) is the square of a signed swap
        for pair in signs.chunks(2) {
            let s = Word::signed_swap(pair[0], pair[1]);
            word = word.then(&s).then(&s);
        }
    }
    Ok(word)
}

/// What a representation needs from its matrix type.
pub trait LinearOp: Clone + PartialEq + std::fmt::Debug {
    fn identity_op(dim: usize) -> Self;
    fn compose(&self, other: &Self) -> Self;
    fn op_dim(&self) -> usize;
    fn op_is_identity(&self) -> bool;
    fn op_inverse(&self) -> Option<Self>;
    fn op_pow(&self, e: u64) -> Self;
}

impl LinearOp for Matrix<Q> {
    fn identity_op(dim: usize) -> Self {
        Matrix::identity(dim)
    }
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn op_dim(&self) -> usize {
        self.nrows()
    }
    fn op_is_identity(&self) -> bool {
        self.is_identity()
    }
    fn op_inverse(&self) -> Option<Self> {
        self.inverse()
    }
    fn op_pow(&self, e: u64) -> Self {
        self.pow(e)
    }
}

impl LinearOp for SparseMatrix {
    fn identity_op(dim: usize) -> Self {
        SparseMatrix::identity(dim)
    }
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn op_dim(&self) -> usize {
        self.nrows()
    }
    fn op_is_identity(&self) -> bool {
        self.is_identity()
    }
    fn op_inverse(&self) -> Option<Self> {
        self.inverse()
    }
    fn op_pow(&self, e: u64) -> Self {
        self.pow(e)
    }
}

/// A representation of `SL_n(Z)`, `GL_n(Z)` or a congruence quotient, given
/// by images of the generators.
#[derive(Clone, Debug)]
pub struct GenRep<M: LinearOp> {
    rank: usize,
    dim: usize,
    /// Indexed by `i * rank + j`; diagonal slots hold the identity.
    elem: Vec<M>,
    elem_inv: Vec<M>,
    /// Image of `D_0`, when the group contains it.
    sign: Option<M>,
    /// Images of `diag(u, 1, …, 1)` for units `u` of `Z/ℓ`.
    diag: BTreeMap<u64, M>,
    /// Set when the action factors through `Z/ℓ`.
    modulus: Option<u64>,
}

impl<M: LinearOp> GenRep<M> {
    /// `elem` maps `(i, j)` to the image of `E_ij` for every `i ≠ j`.
    pub fn new(rank: usize, elem: BTreeMap<(usize, usize), M>, sign: Option<M>, modulus: Option<u64>) -> Result<Self> {
        if rank < 1 {
            return invalid("rank must be positive");
        }
        let dim = match elem.values().next().or(sign.as_ref()) {
            Some(m) => m.op_dim(),
            None => return invalid("no generator images"),
        };
        let id = M::identity_op(dim);
        let mut e = vec![id.clone(); rank * rank];
        let mut e_inv = vec![id; rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let Some(m) = elem.get(&(i, j)) else {
                    return invalid(format!("missing image of E_{}{}", i + 1, j + 1));
                };
                if m.op_dim() != dim {
                    return invalid("generator images have different dimensions");
                }
                let inv = match modulus {
                    Some(ell) => m.op_pow(ell - 1),
                    None => m
                        .op_inverse()
                        .ok_or_else(|| Error::Invalid(format!("image of E_{}{} is singular", i + 1, j + 1)))?,
                };
                e[i * rank + j] = m.clone();
                e_inv[i * rank + j] = inv;
            }
        }
        if let Some(s) = &sign {
            if s.op_dim() != dim {
                return invalid("sign image has the wrong dimension");
            }
        }
        Ok(GenRep {
            rank,
            dim,
            elem: e,
            elem_inv: e_inv,
            sign,
            diag: BTreeMap::new(),
            modulus,
        })
    }

    pub fn with_diagonals(mut self, diag: BTreeMap<u64, M>) -> Result<Self> {
        if self.modulus.is_none() {
            return invalid("unit diagonals need a modulus");
        }
        self.diag = diag;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn has_sign(&self) -> bool {
        self.sign.is_some()
    }

    pub fn elementary(&self, i: usize, j: usize) -> &M {
        assert_ne!(i, j);
        &self.elem[i * self.rank + j]
    }

    pub fn elementary_inv(&self, i: usize, j: usize) -> &M {
        assert_ne!(i, j);
        &self.elem_inv[i * self.rank + j]
    }

    pub fn sign(&self) -> Option<&M> {
        self.sign.as_ref()
    }

    pub fn diagonals(&self) -> &BTreeMap<u64, M> {
        &self.diag
    }

    pub fn elementary_power(&self, i: usize, j: usize, power: i64) -> M {
        match self.modulus {
            Some(ell) => self.elementary(i, j).op_pow(power.rem_euclid(ell as i64) as u64),
            None if power >= 0 => self.elementary(i, j).op_pow(power as u64),
            None => self.elementary_inv(i, j).op_pow(power.unsigned_abs()),
        }
    }

    fn conjugate_to(&self, k: usize, base: &M) -> M {
        if k == 0 {
            return base.clone();
        }
        let s = Word::signed_swap(0, k);
        let s_img = self.eval_elementary_word(&s);
        let s_inv = self.eval_elementary_word(&s.inverse(self.modulus));
        s_img.compose(base).compose(&s_inv)
    }

    fn eval_elementary_word(&self, w: &Word) -> M {
        let mut acc = M::identity_op(self.dim);
        for l in &w.letters {
            if let Letter::Elem { i, j, power } = *l {
                acc = acc.compose(&self.elementary_power(i, j, power));
            }
        }
        acc
    }

    pub fn letter(&self, l: &Letter) -> Result<M> {
        match *l {
            Letter::Elem { i, j, power } => Ok(self.elementary_power(i, j, power)),
            Letter::Sign { k } => {
                let s = self
                    .sign
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("representation has no sign image".into()))?;
                Ok(self.conjugate_to(k, s))
            }
            Letter::Diag { k, unit } => {
                if let (Some(ell), Some(s)) = (self.modulus, self.sign.as_ref()) {
                    if unit == ell - 1 {
                        return Ok(self.conjugate_to(k, s));
                    }
                }
                let d = self
                    .diag
                    .get(&unit)
                    .ok_or_else(|| Error::Precondition(format!("representation has no image of diag({unit}, 1, …)")))?;
                Ok(self.conjugate_to(k, d))
            }
        }
    }

    pub fn eval(&self, w: &Word) -> Result<M> {
        let mut acc = M::identity_op(self.dim);
        for l in &w.letters {
            acc = acc.compose(&self.letter(l)?);
        }
        Ok(acc)
    }

    /// Image of an integer matrix of determinant ±1 (reduced mod ℓ when the
    /// representation has a modulus).
    pub fn eval_matrix(&self, g: &IntMat) -> Result<M> {
        if g.n() != self.rank {
            return invalid(format!("expected a {0}x{0} matrix", self.rank));
        }
        let w = match self.modulus {
            Some(ell) => factor_residue(g, ell, self.sign.is_some())?,
            None => factor_integral(g, self.sign.is_some())?,
        };
        self.eval(&w)
    }

    /// Checks the defining relations of `SL_n(Z)` (Steinberg relations and
    /// `(E_12 E_21^{-1} E_12)^4 = 1`), plus `E^ℓ = 1` with a modulus and the
    /// action of `D_0` when a sign image is present.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.rank;
        let fail = |msg: String| Err(Error::Integrity(msg));
        if let Some(ell) = self.modulus {
            for i in 0..n {
                for j in 0..n {
                    if i != j && !self.elementary(i, j).op_pow(ell).op_is_identity() {
                        return fail(format!("E_{}{}^{} is not the identity", i + 1, j + 1, ell));
                    }
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        for &(i, j) in &pairs {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let comm = self
                    .elementary(i, j)
                    .compose(self.elementary(j, k))
                    .compose(self.elementary_inv(i, j))
                    .compose(self.elementary_inv(j, k));
                if comm != *self.elementary(i, k) {
                    return fail(format!(
                        "[E_{}{}, E_{}{}] differs from E_{}{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    ));
                }
            }
        }
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a + 1..] {
                if j == k || i == l {
                    continue;
                }
                let x = self.elementary(i, j);
                let y = self.elementary(k, l);
                if x.compose(y) != y.compose(x) {
                    return fail(format!("E_{}{} and E_{}{} do not commute", i + 1, j + 1, k + 1, l + 1));
                }
            }
        }
        if n >= 2 {
            let w = self.eval_elementary_word(&Word::signed_swap(0, 1));
            if !w.op_pow(4).op_is_identity() {
                return fail("(E_12 E_21^{-1} E_12)^4 is not the identity".into());
            }
        }
        if let Some(s) = &self.sign {
            if !s.compose(s).op_is_identity() {
                return fail("sign image does not square to the identity".into());
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let flipped = (i == 0) != (j == 0);
                    let expect = if flipped {
                        self.elementary_inv(i, j)
                    } else {
                        self.elementary(i, j)
                    };
                    if s.compose(self.elementary(i, j)).compose(s) != *expect {
                        return fail(format!("sign acts wrongly on E_{}{}", i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn map<N: LinearOp>(&self, f: impl Fn(&M) -> N) -> GenRep<N> {
        GenRep {
            rank: self.rank,
            dim: self.dim,
            elem: self.elem.iter().map(&f).collect(),
            elem_inv: self.elem_inv.iter().map(&f).collect(),
            sign: self.sign.as_ref().map(&f),
            diag: self.diag.iter().map(|(k, v)| (*k, f(v))).collect(),
            modulus: self.modulus,
        }
    }

    /// Restriction to the top-left `GL_m`.
    pub fn restrict_top_left(&self, m: usize) -> GenRep<M> {
        assert!(m >= 1 && m <= self.rank);
        let mut elem = Vec::with_capacity(m * m);
        let mut elem_inv = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                elem.push(self.elem[i * self.rank + j].clone());
                elem_inv.push(self.elem_inv[i * self.rank + j].clone());
            }
        }
        GenRep {
            rank: m,
            dim: self.dim,
            elem,
            elem_inv,
            sign: self.sign.clone(),
            diag: self.diag.clone(),
            modulus: self.modulus,
        }
    }

    /// Builds a representation from a closure giving the image of every
    /// generator; `sign` and unit diagonals are optional.
    pub fn from_fn(
        rank: usize,
        image: impl Fn(&Letter) -> M,
        with_sign: bool,
        modulus: Option<u64>,
        diag_units: &[u64],
    ) -> Result<Self> {
        let mut elem = BTreeMap::new();
        for i in 0..rank {
            for j in 0..rank {
                if i != j {
                    elem.insert((i, j), image(&Letter::Elem { i, j, power: 1 }));
                }
            }
        }
        let sign = with_sign.then(|| image(&Letter::Sign { k: 0 }));
        let rep = GenRep::new(rank, elem, sign, modulus)?;
        if diag_units.is_empty() {
            return Ok(rep);
        }
        let diag = diag_units
            .iter()
            .map(|&u| (u, image(&Letter::Diag { k: 0, unit: u })))
            .collect();
        rep.with_diagonals(diag)
    }
}

impl GenRep<Matrix<Q>> {
    pub fn to_sparse(&self) -> GenRep<SparseMatrix> {
        self.map(SparseMatrix::from_dense)
    }
}

impl GenRep<SparseMatrix> {
    pub fn to_dense(&self) -> GenRep<Matrix<Q>> {
        self.map(SparseMatrix::to_dense)
    }

    /// Tensor product of two representations of the same rank.
    pub fn tensor(&self, other: &GenRep<SparseMatrix>) -> Result<GenRep<SparseMatrix>> {
        if self.rank != other.rank {
            return invalid("tensor factors have different ranks");
        }
        let modulus = match (self.modulus, other.modulus) {
            (Some(a), Some(b)) => Some(crate::arith::lcm(a, b)),
            _ => None,
        };
        let sign = match (&self.sign, &other.sign) {
            (Some(a), Some(b)) => Some(a.kron(b)),
            _ => None,
        };
        let n = self.rank;
        let mut out = GenRep {
            rank: n,
            dim: self.dim * other.dim,
            elem: Vec::with_capacity(n * n),
            elem_inv: Vec::with_capacity(n * n),
            sign,
            diag: BTreeMap::new(),
            modulus,
        };
        for k in 0..n * n {
            out.elem.push(self.elem[k].kron(&other.elem[k]));
            out.elem_inv.push(self.elem_inv[k].kron(&other.elem_inv[k]));
        }
        for (u, a) in &self.diag {
            if let Some(b) = other.diag.get(u) {
                out.diag.insert(*u, a.kron(b));
            }
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &GenRep<SparseMatrix>) -> Result<GenRep<SparseMatrix>> {
        if self.rank != other.rank {
            return invalid("summands have different ranks");
        }
        let modulus = match (self.modulus, other.modulus) {
            (Some(a), Some(b)) => Some(crate::arith::lcm(a, b)),
            _ => None,
        };
        let sign = match (&self.sign, &other.sign) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        let n = self.rank;
        let mut out = GenRep {
            rank: n,
            dim: self.dim + other.dim,
            elem: Vec::with_capacity(n * n),
            elem_inv: Vec::with_capacity(n * n),
            sign,
            diag: BTreeMap::new(),
            modulus,
        };
        for k in 0..n * n {
            out.elem.push(self.elem[k].direct_sum(&other.elem[k]));
            out.elem_inv.push(self.elem_inv[k].direct_sum(&other.elem_inv[k]));
        }
        for (u, a) in &self.diag {
            if let Some(b) = other.diag.get(u) {
                out.diag.insert(*u, a.direct_sum(b));
            }
        }
        Ok(out)
    }

    /// Representation `g ↦ ρ(g^{-T})`.
    pub fn inverse_transpose(&self) -> GenRep<SparseMatrix> {
        let n = self.rank;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                // E_ij^{-T} = E_ji^{-1}
                out.elem[i * n + j] = self.elem_inv[j * n + i].clone();
                out.elem_inv[i * n + j] = self.elem[j * n + i].clone();
            }
        }
        if let Some(ell) = self.modulus {
            out.diag = self
                .diag
                .keys()
                .filter_map(|&u| {
                    let inv = mod_inv(u, ell)?;
                    self.diag.get(&inv).map(|m| (u, m.clone()))
                })
                .collect();
        }
        out
    }

    /// Restriction to an invariant subspace given by a reduced basis.
    pub fn restrict_to(&self, sub: &crate::linalg::Subspace) -> Result<GenRep<SparseMatrix>> {
        let restrict = |m: &SparseMatrix| -> Result<SparseMatrix> {
            m.restrict_to(sub)
                .ok_or_else(|| Error::Integrity("subspace is not invariant".into()))
        };
        self.try_map(restrict)
    }

    /// Induced action on `V / W` for an invariant `W`.
    pub fn quotient_by(&self, quo: &crate::linalg::sparse::Quotient) -> Result<GenRep<SparseMatrix>> {
        let induced = |m: &SparseMatrix| -> Result<SparseMatrix> {
            for b in quo.sub().basis() {
                if !quo.sub().contains(&m.apply(b)) {
                    return Err(Error::Integrity("subspace is not invariant".into()));
                }
            }
            let cols = (0..quo.dim())
                .map(|k| quo.project(&m.apply(&crate::linalg::SVec::unit(quo.lift_index(k)))))
                .collect();
            Ok(SparseMatrix::from_columns(quo.dim(), cols))
        };
        self.try_map(induced)
    }

    fn try_map(&self, f: impl Fn(&SparseMatrix) -> Result<SparseMatrix>) -> Result<GenRep<SparseMatrix>> {
        let elem = self.elem.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let elem_inv = self.elem_inv.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let sign = self.sign.as_ref().map(&f).transpose()?;
        let diag = self
            .diag
            .iter()
            .map(|(k, v)| Ok((*k, f(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let dim = elem.first().map_or_else(
            || sign.as_ref().map_or(0, |s: &SparseMatrix| s.nrows()),
            |m: &SparseMatrix| m.nrows(),
        );
        Ok(GenRep {
            rank: self.rank,
            dim,
            elem,
            elem_inv,
            sign,
            diag,
            modulus: self.modulus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows).unwrap()
    }

    #[test]
    fn factor_integral_round_trip() {
        let g = int(&[vec![2, 1, 0], vec![3, 2, 0], vec![0, 0, -1]]);
        let w = factor_integral(&g, true).unwrap();
        assert_eq!(w.to_matrix(3, None), g);
        let h = int(&[vec![0, -1, 0], vec![1, 0, 0], vec![5, 7, 1]]);
        let w = factor_integral(&h, false).unwrap();
        assert!(w.letters.iter().all(|l| matches!(l, Letter::Elem { .. })));
        assert_eq!(w.to_matrix(3, None), h);
        let neg = int(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]);
        assert_eq!(factor_integral(&neg, false).unwrap().to_matrix(3, None), neg);
        assert!(factor_integral(&int(&[vec![2, 0], vec![0, 1]]), true).is_err());
    }

    #[test]
    fn factor_residue_round_trip() {
        let g = int(&[vec![2, 3, 1], vec![4, 0, 2], vec![1, 1, 1]]);
        // det = 2*(0-2) - 3*(4-2) + 1*(4-0) = -4-6+4 = -6 ≡ 4 mod 5
        let w = factor_residue(&g, 5, true).unwrap();
        assert_eq!(w.to_matrix(3, Some(5)), g.reduce(5));
        let w = factor_residue(&g, 5, false).unwrap();
        assert_eq!(w.to_matrix(3, Some(5)), g.reduce(5));
        let u = int(&[vec![3, 0], vec![0, 3]]);
        assert_eq!(factor_residue(&u, 4, false).unwrap().to_matrix(2, Some(4)), u);
    }

    #[test]
    fn standard_rep_relations() {
        let rep: GenRep<Matrix<Q>> = GenRep::from_fn(
            3,
            |l| {
                let m = letter_matrix(3, l);
                Matrix::from_fn(3, 3, |i, j| crate::linalg::q(m.get(i, j) as i64))
            },
            true,
            None,
            &[],
        )
        .unwrap();
        rep.check_relations().unwrap();
        let g = int(&[vec![2, 1, 0], vec![3, 2, 0], vec![0, 0, -1]]);
        let img = rep.eval_matrix(&g).unwrap();
        assert_eq!(
            img,
            Matrix::from_i64_rows(&[vec![2, 1, 0], vec![3, 2, 0], vec![0, 0, -1]])
        );
    }
}
