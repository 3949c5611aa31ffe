//! Report builders behind the `superrigid` binary. Every command returns a
//! [`Report`] that embeds the [`Config`] it ran with, so identical inputs
//! and seeds give byte-identical JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::depth::{classify, gamma_u_check, DepthReport, GammaUVerdict, IntegralRep, RepFile, DEFAULT_CYCLOTOMIC_CAP};
use crate::error::{invalid, Error, Result};
use crate::groups::bounds::{bmk_lower_bound, depth_dim_lower_bound, max_depth_for_dim};
use crate::groups::{character_table, enumerate_group, sl_character_table, GroupVariant, DEFAULT_GROUP_CAP};
use crate::linalg::field::q_to_string;
use crate::partition::{Bipartition, Partition};
use crate::vic::{self, ModuleFile, VicModule};
use crate::weights::{dimension_polynomial, lr_restrict, pieri_restrict, AlgebraicLabel};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub group_cap: u64,
    pub cyclotomic_cap: u64,
    pub seed: u64,
    pub samples: usize,
    pub window: (usize, usize),
}

impl Default for Config {
    fn default() -> Self {
        Config {
            group_cap: DEFAULT_GROUP_CAP,
            cyclotomic_cap: DEFAULT_CYCLOTOMIC_CAP,
            seed: 0,
            samples: 32,
            window: vic::DEFAULT_WINDOW,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.group_cap == 0 || self.cyclotomic_cap == 0 || self.samples == 0 {
            return Err(Error::Precondition("caps and sample counts must be positive".into()));
        }
        let (lo, hi) = self.window;
        if lo == 0 || lo > hi {
            return Err(Error::Precondition(format!("bad window [{lo}, {hi}]")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T> {
    pub version: &'static str,
    pub command: String,
    pub config: Config,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: impl Into<String>, config: &Config, result: T) -> Self {
        Report {
            version: VERSION,
            command: command.into(),
            config: config.clone(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

/// Parses `"2,1"` (or an empty string) as a partition.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad partition part {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

pub fn parse_label(json: &str) -> Result<AlgebraicLabel> {
    serde_json::from_str(json).map_err(|e| Error::Precondition(format!("label: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchMode {
    Pieri,
    Lr { m: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchLine {
    /// `GL_{n-1}` label (Pieri) or the `GL_m` factor (LR).
    pub label: AlgebraicLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<AlgebraicLabel>,
    /// Torus exponent (Pieri) or the two determinant twists (LR).
    pub twists: Vec<i64>,
    pub multiplicity: u64,
    pub dimension: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub input: AlgebraicLabel,
    pub mode: BranchMode,
    pub dimension: u128,
    pub branches: Vec<BranchLine>,
    pub total_dimension: u128,
}

pub fn cmd_branch(label: &AlgebraicLabel, mode: BranchMode, config: &Config) -> Result<Report<BranchReport>> {
    config.validate()?;
    let branches: Vec<BranchLine> = match mode {
        BranchMode::Pieri => pieri_restrict(&label.label, label.rank)?
            .into_iter()
            .map(|b| BranchLine {
                dimension: b.label.dimension(),
                label: b.label,
                right: None,
                twists: vec![b.torus_exponent],
                multiplicity: 1,
            })
            .collect(),
        BranchMode::Lr { m } => lr_restrict(label, m)?
            .into_iter()
            .map(|b| BranchLine {
                dimension: b.multiplicity as u128 * b.left.dimension() * b.right.dimension(),
                label: b.left,
                right: Some(b.right),
                twists: vec![b.left_det, b.right_det],
                multiplicity: b.multiplicity,
            })
            .collect(),
    };
    let total_dimension = branches.iter().map(|b| b.dimension).sum();
    let report = BranchReport {
        input: label.clone(),
        mode,
        dimension: label.dimension(),
        branches,
        total_dimension,
    };
    Ok(Report::new("branch", config, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub label: AlgebraicLabel,
    pub weight: Vec<i64>,
    pub dimension: u128,
    /// Coefficients in `n`, constant term first, valid for
    /// `n ≥ ℓ(λ⁺) + ℓ(λ⁻)`.
    pub dimension_polynomial: Vec<String>,
}

pub fn cmd_dim(label: &AlgebraicLabel, config: &Config) -> Result<Report<DimReport>> {
    config.validate()?;
    let report = DimReport {
        weight: label.weight(),
        dimension: label.dimension(),
        dimension_polynomial: dimension_polynomial(&label.label)
            .coeffs()
            .iter()
            .map(q_to_string)
            .collect(),
        label: label.clone(),
    };
    Ok(Report::new("dim", config, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthCommandReport {
    #[serde(flatten)]
    pub depth: DepthReport,
    /// Sampled check that `ΓU_n(ℓ)` acts unipotently at the computed depth.
    pub gamma_u: GammaUVerdict,
}

pub fn cmd_depth(file: &RepFile, irreducible: bool, config: &Config) -> Result<Report<DepthCommandReport>> {
    config.validate()?;
    let rep = IntegralRep::from_file(file)?;
    let depth = classify(&rep, irreducible, config.cyclotomic_cap)?;
    let gamma_u = gamma_u_check(&rep, depth.depth, config.samples, config.seed)?;
    Ok(Report::new("depth", config, DepthCommandReport { depth, gamma_u }))
}

pub fn read_rep_file(text: &str) -> Result<RepFile> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("representation file: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsQuery {
    /// What a representation of this dimension can have as depth.
    Dim { dim: u64 },
    /// Least dimension of an irreducible of depth `ℓ`.
    Ell { ell: u64 },
    /// Least dimension of an irreducible of `SL_n(Z/p^k)` not factoring
    /// through `Z/p^{k-1}`.
    PrimePower { p: u64, k: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: u32,
    pub query: BoundsQuery,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<u64>,
    /// `2^n - 2`, for dimension queries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub low_dimension_threshold: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebraic_forced: Option<bool>,
    pub summary: String,
}

pub fn cmd_bounds(n: u32, query: BoundsQuery, config: &Config) -> Result<Report<BoundsReport>> {
    config.validate()?;
    if n < 3 {
        return Err(Error::RankTooSmall {
            rank: n as usize,
            needed: 3,
        });
    }
    let mut report = BoundsReport {
        n,
        query,
        lower_bound: None,
        max_depth: None,
        low_dimension_threshold: None,
        algebraic_forced: None,
        summary: String::new(),
    };
    match query {
        BoundsQuery::Dim { dim } => {
            let threshold = (1u128 << n) - 2;
            let max_depth = max_depth_for_dim(dim, n)?;
            let forced = (n >= 5 && (dim as u128) < threshold) || max_depth == 1;
            report.summary = if n < 5 {
                format!("the 2^n-2 threshold needs n ≥ 5; depth at most {max_depth}")
            } else if (dim as u128) < threshold {
                format!("below 2^n-2 = {threshold}: algebraic forced")
            } else {
                format!("at least 2^n-2 = {threshold}: depth at most {max_depth}")
            };
            report.max_depth = Some(max_depth);
            report.low_dimension_threshold = Some(threshold);
            report.algebraic_forced = Some(forced);
        }
        BoundsQuery::Ell { ell } => {
            let b = depth_dim_lower_bound(ell, n)?;
            report.summary = format!(
                "an irreducible of depth {ell} has dimension ≥ {}",
                q_to_string(&b.bound)
            );
            report.lower_bound = Some(q_to_string(&b.bound));
        }
        BoundsQuery::PrimePower { p, k } => {
            let b = bmk_lower_bound(n, p, k)?;
            report.summary = format!("an irreducible of level {p}^{k} has dimension ≥ {}", q_to_string(&b));
            report.lower_bound = Some(q_to_string(&b));
        }
    }
    Ok(Report::new("bounds", config, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterLine {
    pub id: String,
    pub dim: u64,
    pub factoring_level: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupTableReport {
    pub n: usize,
    pub modulus: u64,
    pub variant: GroupVariant,
    pub order: u64,
    pub class_count: usize,
    pub irreducible_dims: Vec<u64>,
    pub characters: Vec<CharacterLine>,
}

pub fn cmd_group_table(n: usize, ell: u64, variant: &str, config: &Config) -> Result<Report<GroupTableReport>> {
    config.validate()?;
    let variant = GroupVariant::from_str(variant)?;
    let table = match variant {
        GroupVariant::Sl => sl_character_table(n, ell, config.group_cap)?,
        v => character_table(Arc::new(enumerate_group(n, ell, v, config.group_cap)?))?,
    };
    let characters: Vec<CharacterLine> = table
        .characters()
        .iter()
        .map(|chi| CharacterLine {
            id: chi.id.clone(),
            dim: chi.dim,
            factoring_level: table.factoring_level(chi),
        })
        .collect();
    let mut irreducible_dims: Vec<u64> = characters.iter().map(|c| c.dim).collect();
    irreducible_dims.sort_unstable();
    let report = GroupTableReport {
        n,
        modulus: ell,
        variant,
        order: table.group_order(),
        class_count: table.classes().len(),
        irreducible_dims,
        characters,
    };
    Ok(Report::new("group-table", config, report))
}

/// Operations understood by `vic-run`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VicOp {
    Verify,
    Filtration,
    /// `Φ_a`.
    Phi(usize),
    Growth,
    Length,
    Depth,
    Triples,
    GlExtension,
    Noetherian,
}

impl FromStr for VicOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "verify" => VicOp::Verify,
            "filtration" => VicOp::Filtration,
            "growth" => VicOp::Growth,
            "length" => VicOp::Length,
            "depth" => VicOp::Depth,
            "triples" => VicOp::Triples,
            "gl-extension" => VicOp::GlExtension,
            "noetherian" => VicOp::Noetherian,
            _ => match s.strip_prefix("phi").and_then(|a| a.parse().ok()) {
                Some(a) => VicOp::Phi(a),
                None => return invalid(format!("unknown vic operation {s:?}")),
            },
        })
    }
}

impl VicOp {
    pub const NAMES: &'static str =
        "verify, filtration, phi<a>, growth, length, depth, triples, gl-extension, noetherian";

    pub fn name(&self) -> String {
        match self {
            VicOp::Verify => "verify".into(),
            VicOp::Filtration => "filtration".into(),
            VicOp::Phi(a) => format!("phi{a}"),
            VicOp::Growth => "growth".into(),
            VicOp::Length => "length".into(),
            VicOp::Depth => "depth".into(),
            VicOp::Triples => "triples".into(),
            VicOp::GlExtension => "gl-extension".into(),
            VicOp::Noetherian => "noetherian".into(),
        }
    }
}

/// Parses a comma-separated list of operations.
pub fn parse_ops(list: &str) -> Result<Vec<VicOp>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(VicOp::from_str)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VicRunReport {
    pub module: String,
    pub window: (usize, usize),
    pub dims: Vec<usize>,
    pub results: BTreeMap<String, Value>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

pub fn cmd_vic_run(file: &ModuleFile, ops: &[VicOp], config: &Config) -> Result<Report<VicRunReport>> {
    config.validate()?;
    let window = file.window.unwrap_or(config.window);
    let v = file.build(Some(window))?;
    let results = run_ops(&v, ops, config)?;
    let report = VicRunReport {
        module: v.name().to_string(),
        window: v.window(),
        dims: v.dims(),
        results,
    };
    Ok(Report::new("vic-run", config, report))
}

pub fn run_ops(v: &VicModule, ops: &[VicOp], config: &Config) -> Result<BTreeMap<String, Value>> {
    let mut results = BTreeMap::new();
    for op in ops {
        let value = match *op {
            VicOp::Verify => {
                v.verify()?;
                Value::Bool(true)
            }
            VicOp::Filtration => to_value(&vic::algebraic_isotypic_filtration(v)?),
            VicOp::Phi(a) => {
                let c = vic::covariants_phi(v, a)?;
                let mut value = to_value(&c);
                value["stabilization_degree"] = to_value(&vic::stabilization_degree(&c));
                value
            }
            VicOp::Growth => to_value(&vic::growth_classify(v)?),
            VicOp::Length => to_value(&vic::length_bound(v, config.seed)?),
            VicOp::Depth => to_value(&vic::stable_depth(v)?),
            VicOp::Triples => {
                let verdicts = (v.n_min() + 1..v.n_max())
                    .map(|n| Ok((n.to_string(), to_value(&v.triple(n)?))))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                to_value(&verdicts)
            }
            VicOp::GlExtension => {
                if v.len() < 3 {
                    return Err(Error::Precondition("GL extension needs three levels".into()));
                }
                let centre = v.n_min() + 1;
                let ext = vic::extend_sl_to_gl(v, centre)?;
                serde_json::json!({
                    "centre": centre,
                    "modulus": ext.modulus,
                    "units": ext.units,
                    "checks": ext.checks,
                })
            }
            VicOp::Noetherian => to_value(&vic::noetherian_witness(v, 2, config.seed)?),
        };
        results.insert(op.name(), value);
    }
    Ok(results)
}

/// Plain-text rendering of a JSON report: one `path: value` line per
/// scalar, with short scalar arrays kept on one line.
pub fn render_table(value: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, "", value);
    out
}

fn render_into(out: &mut String, path: &str, value: &Value) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                render_into(out, &p, v);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{path:<40} [{}]", parts.join(", "));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                render_into(out, &format!("{path}[{i}]"), v);
            }
        }
        v => {
            let _ = writeln!(out, "{path:<40} {}", scalar(v));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// The label `V_rank(plus, minus)` from comma-separated parts.
pub fn label_from_parts(plus: &str, minus: &str, rank: usize) -> Result<AlgebraicLabel> {
    AlgebraicLabel::new(Bipartition::new(parse_partition(plus)?, parse_partition(minus)?), rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ops_parse() {
        assert_eq!(
            parse_ops("filtration,phi0,growth").unwrap(),
            vec![VicOp::Filtration, VicOp::Phi(0), VicOp::Growth]
        );
        assert!(matches!(parse_ops("growth,frobnicate"), Err(Error::Invalid(_))));
    }

    #[test]
    fn adjoint_pieri_branches() {
        let label = label_from_parts("1", "1", 3).unwrap();
        let r = cmd_branch(&label, BranchMode::Pieri, &Config::default()).unwrap();
        assert_eq!(r.result.branches.len(), 4);
        assert_eq!(r.result.total_dimension, 8);
    }

    #[test]
    fn quoted_bounds() {
        let c = Config::default();
        let r = cmd_bounds(5, BoundsQuery::Dim { dim: 29 }, &c).unwrap();
        assert_eq!(r.result.summary, "below 2^n-2 = 30: algebraic forced");
        let r = cmd_bounds(4, BoundsQuery::Ell { ell: 6 }, &c).unwrap();
        assert_eq!(r.result.lower_bound.as_deref(), Some("72"));
        let r = cmd_bounds(3, BoundsQuery::PrimePower { p: 2, k: 2 }, &c).unwrap();
        assert_eq!(r.result.lower_bound.as_deref(), Some("8"));
    }
}
