//! The filtration of a module by algebraic isotypic layers, each a label
//! tensored with a finite-type multiplicity module, above a torsion head.

use std::collections::BTreeMap;

use serde::Serialize;

use super::labels::detect_labels;
use super::ops::{generation_degree, injectivity_degree, stable_depth};
use super::{Piece, Structure, VicModule};
use crate::error::{Error, Result};
use crate::linalg::{SVec, SparseMatrix};
use crate::partition::{containment_refinement, Bipartition};
use crate::weights::label_dimension;

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationLayer {
    pub label: Bipartition,
    /// Stable depth of the multiplicity module.
    pub level: u64,
    /// `dim V_n(label)` per window level (0 in the head).
    pub label_dims: Vec<u128>,
    pub multiplicity_dims: Vec<usize>,
    /// The structure maps factor as `ι ⊗ τ`, with `ι` the maps of the label
    /// and `τ` those of the multiplicity module. `None` when no model of
    /// the label's maps is available.
    pub maps_factor: Option<bool>,
    #[serde(skip)]
    pub multiplicity: Option<VicModule>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    pub module: String,
    pub window: (usize, usize),
    pub generation_degree: Option<usize>,
    pub injectivity_degree: Option<usize>,
    /// Levels below this form the torsion head.
    pub head_boundary: usize,
    pub head_dims: Vec<usize>,
    pub layers: Vec<FiltrationLayer>,
    /// `Σ dim V_n(λ_i) · dim M^i_n + head = dim V_n` at every level.
    pub dimension_identity: bool,
}

pub fn algebraic_isotypic_filtration(v: &VicModule) -> Result<Filtration> {
    let gen = generation_degree(v)?;
    let inj = injectivity_degree(v);
    let past = v.n_max() + 1;
    let boundary = gen.unwrap_or(past).max(inj.unwrap_or(past)).max(v.n_min());
    let in_head = |n: usize| n < boundary;
    let head_dims: Vec<usize> = v.ranks().map(|n| if in_head(n) { v.dim(n) } else { 0 }).collect();

    let mut layers = match v.structure() {
        Structure::FiniteType => vec![FiltrationLayer {
            label: Bipartition::trivial(),
            level: stable_depth(v)?.ell,
            label_dims: vec![1; v.len()],
            multiplicity_dims: v.dims(),
            maps_factor: Some(true),
            multiplicity: Some(v.clone()),
        }],
        Structure::Algebraic(labels) => algebraic_layers(v, labels)?,
        Structure::Pairs(pieces) => pair_layers(v, pieces)?,
        Structure::Opaque => {
            let labels = v
                .levels()
                .iter()
                .map(detect_labels)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| {
                    Error::Precondition(format!(
                        "levels are neither of finite type nor presented as label-multiplicity pairs, \
                         and are not algebraic ({e}); mixed levels must be given as pairs"
                    ))
                })?;
            algebraic_layers(v, &labels)?
        }
    };
    for layer in &mut layers {
        for (k, n) in v.ranks().enumerate() {
            if in_head(n) {
                layer.label_dims[k] = 0;
                layer.multiplicity_dims[k] = 0;
            }
        }
    }
    let dimension_identity = v.ranks().enumerate().all(|(k, n)| {
        let body: u128 = layers
            .iter()
            .map(|l| l.label_dims[k] * l.multiplicity_dims[k] as u128)
            .sum();
        body + head_dims[k] as u128 == v.dim(n) as u128
    });
    Ok(Filtration {
        module: v.name().to_string(),
        window: v.window(),
        generation_degree: gen,
        injectivity_degree: inj,
        head_boundary: boundary,
        head_dims,
        layers,
        dimension_identity,
    })
}

fn algebraic_layers(v: &VicModule, labels: &[BTreeMap<Bipartition, u64>]) -> Result<Vec<FiltrationLayer>> {
    let all: Vec<Bipartition> = labels.iter().flat_map(|m| m.keys().cloned()).collect();
    let single = v.single_label().is_some();
    containment_refinement(&all)
        .into_iter()
        .map(|b| {
            let mut label_dims = Vec::with_capacity(v.len());
            let mut multiplicity_dims = Vec::with_capacity(v.len());
            for (k, n) in v.ranks().enumerate() {
                let m = labels[k].get(&b).copied().unwrap_or(0);
                label_dims.push(if b.length() <= n { label_dimension(&b, n)? } else { 0 });
                multiplicity_dims.push(m as usize);
            }
            Ok(FiltrationLayer {
                label: b,
                level: 1,
                label_dims,
                multiplicity_dims,
                // a single label is its own model, with τ = 1
                maps_factor: single.then_some(true),
                multiplicity: None,
            })
        })
        .collect()
}

fn pair_layers(v: &VicModule, pieces: &[Piece]) -> Result<Vec<FiltrationLayer>> {
    let mut by_label: BTreeMap<Bipartition, Vec<(usize, &Piece)>> = BTreeMap::new();
    for (k, p) in pieces.iter().enumerate() {
        by_label.entry(p.label.clone()).or_default().push((k, p));
    }
    // offsets of each piece inside the level bases
    let mut offsets = vec![vec![0usize; pieces.len() + 1]; v.len()];
    for (k, n) in v.ranks().enumerate() {
        for (i, p) in pieces.iter().enumerate() {
            offsets[k][i + 1] = offsets[k][i] + p.algebraic.dim(n) * p.multiplicity.dim(n);
        }
        if offsets[k][pieces.len()] != v.dim(n) {
            return Err(Error::Integrity(format!(
                "pieces do not add up to the level at rank {n}"
            )));
        }
    }
    let order = containment_refinement(&by_label.keys().cloned().collect::<Vec<_>>());
    let mut layers = Vec::new();
    for b in order {
        let group = &by_label[&b];
        let mut mult: Option<VicModule> = None;
        let mut factor = true;
        for &(i, p) in group {
            for (k, n) in (v.n_min()..v.n_max()).enumerate() {
                let t = block(
                    v.map(n),
                    offsets[k + 1][i]..offsets[k + 1][i + 1],
                    offsets[k][i]..offsets[k][i + 1],
                );
                factor &= kronecker_right_factor(&t, p.algebraic.map(n)).as_ref() == Some(p.multiplicity.map(n));
            }
            mult = Some(match mult {
                None => p.multiplicity.clone(),
                Some(m) => m.direct_sum(&p.multiplicity)?,
            });
        }
        let mult = mult.expect("group is nonempty");
        let label_dims = v
            .ranks()
            .map(|n| if b.length() <= n { label_dimension(&b, n) } else { Ok(0) })
            .collect::<Result<Vec<_>>>()?;
        layers.push(FiltrationLayer {
            label: b,
            level: stable_depth(&mult)?.ell,
            label_dims,
            multiplicity_dims: mult.dims(),
            maps_factor: Some(factor),
            multiplicity: Some(mult),
        });
    }
    Ok(layers)
}

/// The submatrix with the given row and column ranges, reindexed from 0.
fn block(m: &SparseMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> SparseMatrix {
    let nrows = rows.len();
    let start = rows.start;
    SparseMatrix::from_columns(
        nrows,
        cols.map(|c| {
            SVec::from_pairs(
                m.column(c)
                    .entries()
                    .iter()
                    .filter(|(i, _)| rows.contains(i))
                    .map(|(i, x)| (i - start, x.clone())),
            )
        })
        .collect(),
    )
}

/// `τ` with `t = ι ⊗ τ`, if one exists.
pub fn kronecker_right_factor(t: &SparseMatrix, iota: &SparseMatrix) -> Option<SparseMatrix> {
    let (a_out, a_in) = (iota.nrows(), iota.ncols());
    if a_out == 0 || a_in == 0 || t.nrows() % a_out != 0 || t.ncols() % a_in != 0 {
        return None;
    }
    let (b_out, b_in) = (t.nrows() / a_out, t.ncols() / a_in);
    let (i, pivot) = (0..a_in).find_map(|c| iota.column(c).entries().first().map(|(r, x)| ((*r, c), x.clone())))?;
    let (r0, c0) = i;
    let tau = block(t, r0 * b_out..(r0 + 1) * b_out, c0 * b_in..(c0 + 1) * b_in).scale(&pivot.recip());
    if iota.kron(&tau) != *t {
        return None;
    }
    Some(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_has_one_layer_and_no_head() {
        let f = algebraic_isotypic_filtration(&VicModule::standard((3, 6)).unwrap()).unwrap();
        assert_eq!(f.layers.len(), 1);
        assert_eq!(f.layers[0].label, Bipartition::from_parts(&[1], &[]));
        assert!(f.layers[0].multiplicity_dims.iter().all(|&d| d == 1));
        assert!(f.head_dims.iter().all(|&d| d == 0));
        assert!(f.dimension_identity);
    }

    #[test]
    fn projective_is_one_trivial_layer() {
        let f = algebraic_isotypic_filtration(&VicModule::projective(2, (3, 6)).unwrap()).unwrap();
        assert_eq!(f.layers.len(), 1);
        assert!(f.layers[0].label.is_trivial());
        assert_eq!(f.layers[0].level, 2);
        assert_eq!(f.layers[0].multiplicity_dims, vec![7, 15, 31, 63]);
    }

    #[test]
    fn kronecker_factor_round_trip() {
        let iota = SparseMatrix::injection(4, &[0, 1, 2]);
        let tau = SparseMatrix::injection(3, &[2, 0]);
        assert_eq!(kronecker_right_factor(&iota.kron(&tau), &iota), Some(tau));
        assert_eq!(kronecker_right_factor(&SparseMatrix::identity(12), &iota), None);
    }
}
