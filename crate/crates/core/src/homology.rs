//! Reduced and relative simplicial homology over a field.
//!
//! Chains of dimension `i` are indexed by the `i`-faces in canonical order and
//! `∂[v_0<…<v_i] = Σ_j (-1)^j [v_0<…<v̂_j<…<v_i]`. The reduced complex
//! includes the empty face in degree -1, so `∂_0` is the augmentation.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;
use crate::simplicial::{ComplexKind, Face, SimplicialComplex};

/// Homology dimensions indexed by degree. Every degree in the computed range
/// is present, zeros included.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(BTreeMap<i32, usize>);

impl BettiVector {
    pub fn from_map(dims: BTreeMap<i32, usize>) -> Self {
        BettiVector(dims)
    }

    /// Dimension in degree `j`; zero outside the computed range.
    pub fn get(&self, j: i32) -> usize {
        self.0.get(&j).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&v| v == 0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// `Σ_j (-1)^j dim H_j`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(j, b)| if j.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Nonzero entries only, for comparisons across differently sized ranges.
    pub fn support(&self) -> BTreeMap<i32, usize> {
        self.0.iter().filter(|(_, &v)| v != 0).map(|(&k, &v)| (k, v)).collect()
    }

    pub fn as_map(&self) -> &BTreeMap<i32, usize> {
        &self.0
    }
}

/// `Σ_{σ ∈ Δ} (-1)^{dim σ}`, the empty face included.
pub fn reduced_euler_from_faces(complex: &SimplicialComplex) -> Result<i64> {
    Ok(complex
        .f_vector()?
        .iter()
        .enumerate()
        .map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 })
        .sum())
}

/// Matrix of `∂` from the chains spanned by `cols` into those spanned by
/// `rows`; boundary faces missing from `rows` are dropped (relative chains).
fn boundary_between(cols: &[Face], rows: &[Face], field: FieldSpec) -> ExactMatrix {
    let index: HashMap<&Face, usize> = rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = ExactMatrix::zeros(field, rows.len(), cols.len());
    for (c, face) in cols.iter().enumerate() {
        for (pos, b) in face.boundary_faces().enumerate() {
            if let Some(&r) = index.get(&b) {
                m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// `∂_i` from `i`-chains to `(i-1)`-chains. Degrees outside
/// `-1..=dim Δ + 1` give 0×0 matrices.
pub fn boundary_matrix(complex: &SimplicialComplex, i: i32, field: FieldSpec) -> Result<ExactMatrix> {
    let Some(d) = complex.dim() else {
        return Ok(ExactMatrix::zeros(field, 0, 0));
    };
    if i < -1 || i > d + 1 {
        return Ok(ExactMatrix::zeros(field, 0, 0));
    }
    let cols = complex.faces_of_dim(i)?;
    let rows = complex.faces_of_dim(i - 1)?;
    Ok(boundary_between(&cols, &rows, field))
}

/// Homology of the chain complex spanned by `layers`, where `layers[k]` holds
/// the faces of degree `first_degree + k`.
fn layered_betti(layers: &[Vec<Face>], first_degree: i32, field: FieldSpec) -> BettiVector {
    let ranks: Vec<usize> = (0..layers.len())
        .map(|k| {
            if k == 0 {
                0
            } else {
                boundary_between(&layers[k], &layers[k - 1], field).rank()
            }
        })
        .collect();
    let mut dims = BTreeMap::new();
    for k in 0..layers.len() {
        let next = ranks.get(k + 1).copied().unwrap_or(0);
        dims.insert(first_degree + k as i32, layers[k].len() - ranks[k] - next);
    }
    BettiVector(dims)
}

/// `dim_k H̃_j(Δ; k)` for `j = -1..=dim Δ`.
pub fn reduced_betti(complex: &SimplicialComplex, field: FieldSpec) -> Result<BettiVector> {
    if complex.kind() == ComplexKind::Void {
        return Err(Error::Degenerate {
            expected: "non-void",
            found: ComplexKind::Void,
        });
    }
    let layers = complex.faces_by_dim()?;
    Ok(layered_betti(&layers, -1, field))
}

/// `dim_k H_j(Δ, Γ; k)` from the chains on faces of `Δ` outside `Γ`.
///
/// This is unreduced relative homology: with `Γ` the Empty complex it is the
/// ordinary homology of `Δ` (so degree 0 is `dim H̃_0(Δ) + 1`), and with
/// `Γ` void it is the reduced homology of `Δ`, degree -1 included. Over a
/// field these are also the relative cohomology dimensions. Degrees run from
/// 0 (or -1 when `Γ` is void) to `dim Δ`.
pub fn relative_betti(
    complex: &SimplicialComplex,
    sub: &SimplicialComplex,
    field: FieldSpec,
) -> Result<BettiVector> {
    complex.check_subcomplex(sub)?;
    let Some(_) = complex.dim() else {
        return Ok(BettiVector::default());
    };
    let sub_faces: HashSet<Face> = sub.faces()?.into_iter().collect();
    let mut layers = complex.faces_by_dim()?;
    for layer in &mut layers {
        layer.retain(|f| !sub_faces.contains(f));
    }
    if sub.kind() == ComplexKind::Void {
        Ok(layered_betti(&layers, -1, field))
    } else {
        Ok(layered_betti(&layers[1..], 0, field))
    }
}
