//! JSON descriptions of modules: built-in families, combinations of them, or
//! explicit generator images and structure maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::labels::detect_labels;
use super::{Structure, VicModule, DEFAULT_WINDOW};
use crate::depth::GeneratorImage;
use crate::error::{invalid, Error, Result};
use crate::linalg::field::{q_parse, q_to_string};
use crate::linalg::{SVec, SparseMatrix};
use crate::words::GenRep;

/// A module expression with an optional window; the window applies to the
/// built-in families and truncates explicit modules.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(usize, usize)>,
    pub module: ModuleExpr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleExpr {
    /// One of `trivial`, `standard`, `dual_standard`, `projective` (needs
    /// `p`), `sum_zero` (needs `p`) and `affine` (needs `ell`).
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ell: Option<u64>,
    },
    Tensor(Vec<ModuleExpr>),
    DirectSum(Vec<ModuleExpr>),
    /// Inverse transpose twist.
    Twist(Box<ModuleExpr>),
    Explicit(ExplicitModule),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelKind {
    /// The action factors through a finite congruence quotient.
    Finite,
    /// Polynomial in the matrix entries; labels are detected.
    Algebraic,
    /// No known structure.
    #[default]
    Integral,
    /// A label tensored with a finite-type module. The factors are not
    /// recovered from generator images, so such levels are treated as
    /// integral.
    Pair,
}

/// One level; generator indices are 1-based and matrices are rows of
/// rationals written as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelFile {
    pub rank: usize,
    pub dim: usize,
    #[serde(default)]
    pub kind: LevelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub elementary: Vec<GeneratorImage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExplicitModule {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n_min: usize,
    pub levels: Vec<LevelFile>,
    /// `maps[k]` is `T_{n_min + k}`.
    pub maps: Vec<Vec<Vec<String>>>,
}

impl ModuleFile {
    pub fn from_json(text: &str) -> Result<ModuleFile> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("module file: {e}")))
    }

    /// Builds the module. `window` overrides the one in the file.
    pub fn build(&self, window: Option<(usize, usize)>) -> Result<VicModule> {
        let w = window.or(self.window);
        let v = self.module.build(w.unwrap_or(DEFAULT_WINDOW))?;
        match (w, &self.module) {
            (Some((lo, hi)), ModuleExpr::Explicit(_)) => v.truncate(lo.max(v.n_min()), hi.min(v.n_max())),
            _ => Ok(v),
        }
    }
}

impl ModuleExpr {
    pub fn build(&self, window: (usize, usize)) -> Result<VicModule> {
        match self {
            ModuleExpr::Builtin { name, p, ell } => {
                let need = |x: &Option<u64>, what: &str| {
                    x.ok_or_else(|| Error::Invalid(format!("built-in module {name:?} needs {what}")))
                };
                match name.as_str() {
                    "trivial" => VicModule::trivial(window),
                    "standard" => VicModule::standard(window),
                    "dual_standard" => VicModule::dual_standard(window),
                    "projective" => VicModule::projective(need(p, "p")?, window),
                    "sum_zero" => VicModule::sum_zero(need(p, "p")?, window),
                    "affine" => VicModule::affine(need(ell, "ell")?, window),
                    other => invalid(format!("unknown built-in module {other:?}")),
                }
            }
            ModuleExpr::Tensor(parts) => fold(parts, window, VicModule::tensor),
            ModuleExpr::DirectSum(parts) => fold(parts, window, VicModule::direct_sum),
            ModuleExpr::Twist(inner) => Ok(inner.build(window)?.inverse_transpose_twist()),
            ModuleExpr::Explicit(e) => e.build(),
        }
    }
}

fn fold(
    parts: &[ModuleExpr],
    window: (usize, usize),
    op: fn(&VicModule, &VicModule) -> Result<VicModule>,
) -> Result<VicModule> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Invalid("empty list of modules".into()))?;
    let mut acc = first.build(window)?;
    for p in rest {
        acc = op(&acc, &p.build(window)?)?;
    }
    Ok(acc)
}

impl ExplicitModule {
    pub fn build(&self) -> Result<VicModule> {
        let levels = self.levels.iter().map(LevelFile::build).collect::<Result<Vec<_>>>()?;
        if self.maps.len() + 1 != levels.len() {
            return invalid(format!(
                "{} levels need {} maps",
                levels.len(),
                levels.len().saturating_sub(1)
            ));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, rows)| parse_matrix(rows, levels[k + 1].dim(), levels[k].dim()))
            .collect::<Result<Vec<_>>>()?;
        let kinds: Vec<LevelKind> = self.levels.iter().map(|l| l.kind).collect();
        let structure = if kinds.iter().all(|&k| k == LevelKind::Finite) {
            Structure::FiniteType
        } else if kinds.iter().all(|&k| k == LevelKind::Algebraic) {
            Structure::Algebraic(levels.iter().map(detect_labels).collect::<Result<Vec<_>>>()?)
        } else {
            Structure::Opaque
        };
        let name = self.name.clone().unwrap_or_else(|| "explicit".into());
        let v = VicModule::new(name, self.n_min, levels, maps, structure)?;
        v.verify()?;
        Ok(v)
    }

    /// The explicit form of any module; reading it back gives the same
    /// levels and maps.
    pub fn from_module(v: &VicModule) -> ExplicitModule {
        let kind = match v.structure() {
            Structure::FiniteType => LevelKind::Finite,
            Structure::Algebraic(_) => LevelKind::Algebraic,
            _ => LevelKind::Integral,
        };
        let levels = v
            .levels()
            .iter()
            .map(|l| {
                let n = l.rank();
                let elementary = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| GeneratorImage {
                        i: i + 1,
                        j: j + 1,
                        matrix: matrix_rows(l.elementary(i, j)),
                    })
                    .collect();
                LevelFile {
                    rank: n,
                    dim: l.dim(),
                    kind,
                    modulus: l.modulus(),
                    elementary,
                    sign: l.sign().map(matrix_rows),
                }
            })
            .collect();
        ExplicitModule {
            name: Some(v.name().to_string()),
            n_min: v.n_min(),
            levels,
            maps: v.maps().iter().map(matrix_rows).collect(),
        }
    }
}

impl LevelFile {
    fn build(&self) -> Result<GenRep<SparseMatrix>> {
        if self.kind == LevelKind::Finite && self.modulus.is_none() {
            return invalid(format!("finite level of rank {} needs a modulus", self.rank));
        }
        let mut elem = BTreeMap::new();
        for g in &self.elementary {
            if g.i == 0 || g.j == 0 || g.i > self.rank || g.j > self.rank || g.i == g.j {
                return invalid(format!("bad generator index E_{},{}", g.i, g.j));
            }
            elem.insert((g.i - 1, g.j - 1), parse_matrix(&g.matrix, self.dim, self.dim)?);
        }
        let sign = self
            .sign
            .as_ref()
            .map(|s| parse_matrix(s, self.dim, self.dim))
            .transpose()?;
        if self.rank == 1 && sign.is_none() {
            // rank one has no elementary matrices
            return GenRep::from_fn(1, |_| SparseMatrix::identity(self.dim), true, self.modulus, &[]);
        }
        GenRep::new(self.rank, elem, sign, self.modulus)
    }
}

fn parse_matrix(rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<SparseMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return invalid(format!("expected a {nrows}x{ncols} matrix"));
    }
    let mut cols = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let x = q_parse(s)?;
            if x != num_traits::Zero::zero() {
                cols[j].push((i, x));
            }
        }
    }
    Ok(SparseMatrix::from_columns(
        nrows,
        cols.into_iter().map(SVec::from_pairs).collect(),
    ))
}

fn matrix_rows(m: &SparseMatrix) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["0".to_string(); m.ncols()]; m.nrows()];
    for (j, c) in m.columns().iter().enumerate() {
        for (i, x) in c.entries() {
            rows[*i][j] = q_to_string(x);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_expressions() {
        let f = ModuleFile::from_json(
            r#"{"window": [3, 5], "module": {"tensor": [
                {"builtin": {"name": "standard"}},
                {"builtin": {"name": "projective", "p": 2}}]}}"#,
        )
        .unwrap();
        assert_eq!(f.build(None).unwrap().dims(), vec![21, 60, 155]);
        let bad = ModuleFile::from_json(r#"{"module": {"builtin": {"name": "projective"}}}"#).unwrap();
        assert!(matches!(bad.build(None), Err(Error::Invalid(_))));
    }

    #[test]
    fn explicit_round_trip() {
        let v = VicModule::sum_zero(3, (2, 3)).unwrap();
        let e = ExplicitModule::from_module(&v);
        let text = serde_json::to_string(&ModuleFile {
            window: None,
            module: ModuleExpr::Explicit(e),
        })
        .unwrap();
        let back = ModuleFile::from_json(&text).unwrap().build(None).unwrap();
        assert_eq!(back.dims(), v.dims());
        assert_eq!(back.maps(), v.maps());
        assert!(back.is_finite_type());
    }
}
