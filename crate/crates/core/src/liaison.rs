//! Linkage through facet partitions.
//!
//! Splitting the facets of `Δ` into `A ⊔ B` links the Stanley–Reisner ideals
//! of `Δ_A` and `Δ_B` through `I_Δ`. This module computes the dimension side
//! of the resulting Lefschetz-type long exact sequence and the local checks
//! that come with it. Sequence indices follow the topological dimension
//! `d = dim Δ`; Hochster indices follow the Krull dimension `dim Δ + 1`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::classify::{is_connected, is_quasi_gorenstein};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hochster::{first_low_homology, is_buchsbaum, local_cohomology_table, LinkHomology};
use crate::homology::{reduced_betti, relative_betti};
use crate::simplicial::{Face, SimplicialComplex};

/// A split of the facets (0-based positions) into two nonempty parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetPartition {
    a: BTreeSet<usize>,
    b: BTreeSet<usize>,
}

impl FacetPartition {
    /// `A` as given, `B` its complement among `n_facets` facets.
    pub fn from_a(n_facets: usize, a: impl IntoIterator<Item = usize>) -> Result<Self> {
        let a: BTreeSet<usize> = a.into_iter().collect();
        if a.is_empty() {
            return Err(Error::InvalidPartition("A is empty".into()));
        }
        if let Some(&i) = a.iter().find(|&&i| i >= n_facets) {
            return Err(Error::InvalidPartition(format!(
                "facet #{} does not exist ({n_facets} facets)",
                i + 1
            )));
        }
        let b: BTreeSet<usize> = (0..n_facets).filter(|i| !a.contains(i)).collect();
        if b.is_empty() {
            return Err(Error::InvalidPartition("B is empty".into()));
        }
        Ok(FacetPartition { a, b })
    }

    pub fn a(&self) -> &BTreeSet<usize> {
        &self.a
    }

    pub fn b(&self) -> &BTreeSet<usize> {
        &self.b
    }

    /// Every partition with `1 ≤ |A| ≤ max_a`, by size then lexicographically.
    pub fn enumerate(n_facets: usize, max_a: usize) -> Vec<FacetPartition> {
        (1..=max_a.min(n_facets.saturating_sub(1)))
            .flat_map(|k| (0..n_facets).combinations(k))
            .map(|a| FacetPartition::from_a(n_facets, a).expect("sizes checked"))
            .collect()
    }

    fn check(&self, complex: &SimplicialComplex) -> Result<()> {
        let n = complex.facets().len();
        if self.a.iter().chain(&self.b).any(|&i| i >= n) || self.a.len() + self.b.len() != n {
            return Err(Error::InvalidPartition(format!(
                "partition does not cover the {n} facets exactly"
            )));
        }
        Ok(())
    }

    /// `(Δ_A, Δ_B)`.
    pub fn split(&self, complex: &SimplicialComplex) -> Result<(SimplicialComplex, SimplicialComplex)> {
        self.check(complex)?;
        Ok((complex.restrict_to_facets(&self.a)?, complex.restrict_to_facets(&self.b)?))
    }
}

fn pure_dim(complex: &SimplicialComplex) -> Result<i32> {
    let d = complex.require_ordinary()?;
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceTerm {
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityPair {
    pub i: i32,
    /// `dim H^i(Δ, Δ_B)`.
    pub relative: usize,
    /// `dim H̃_{d-i}(Δ_A)`.
    pub dual: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub quasi_gorenstein: bool,
    pub buchsbaum_a: bool,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.quasi_gorenstein && self.buchsbaum_a
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub d: i32,
    pub field: FieldSpec,
    /// 1-based facet numbers of `A`.
    pub facets_a: Vec<usize>,
    pub terms: Vec<SequenceTerm>,
    pub alternating_sum: i64,
    /// Alternating sum when the last slot holds `H~_1(Delta_A)` instead of
    /// `H~_0(Delta_A)`.
    pub printed_final_term: String,
    pub printed_alternating_sum: i64,
    pub neighbor_bound_ok: bool,
    pub duality_pairs: Vec<DualityPair>,
    pub hypotheses: Hypotheses,
}

impl LefschetzReport {
    pub fn duality_holds(&self) -> bool {
        self.duality_pairs.iter().all(|p| p.relative == p.dual)
    }
}

fn alternating(dims: impl IntoIterator<Item = usize>) -> i64 {
    dims.into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Dimensions of
/// `0 → H̃^0(Δ_B) → H̃_{d-1}(Δ_A) → H̃^1(Δ) → H̃^1(Δ_B) → … → H̃^{d-1}(Δ_B) → H̃_0(Δ_A) → 0`
/// with the necessary conditions for exactness and the relative duality
/// pairs. Hypotheses only annotate the report.
pub fn lefschetz_report(
    complex: &SimplicialComplex,
    partition: &FacetPartition,
    field: FieldSpec,
) -> Result<LefschetzReport> {
    let d = pure_dim(complex)?;
    let (da, db) = partition.split(complex)?;
    let h = reduced_betti(complex, field)?;
    let ha = reduced_betti(&da, field)?;
    let hb = reduced_betti(&db, field)?;

    let mut terms = Vec::new();
    for i in 0..d {
        terms.push(SequenceTerm {
            label: format!("H~^{i}(Delta_B)"),
            dim: hb.get(i),
        });
        let j = d - 1 - i;
        terms.push(SequenceTerm {
            label: format!("H~_{j}(Delta_A)"),
            dim: ha.get(j),
        });
        if i + 1 < d {
            terms.push(SequenceTerm {
                label: format!("H~^{}(Delta)", i + 1),
                dim: h.get(i + 1),
            });
        }
    }
    let dims: Vec<usize> = terms.iter().map(|t| t.dim).collect();
    let alternating_sum = alternating(dims.iter().copied());
    let mut printed = dims.clone();
    if let Some(last) = printed.last_mut() {
        *last = ha.get(1);
    }
    let printed_alternating_sum = alternating(printed);
    let neighbor_bound_ok = (0..dims.len()).all(|k| {
        let before = if k == 0 { 0 } else { dims[k - 1] };
        let after = dims.get(k + 1).copied().unwrap_or(0);
        dims[k] <= before + after
    });

    let rel = relative_betti(complex, &db, field)?;
    let duality_pairs = (1..d)
        .map(|i| DualityPair {
            i,
            relative: rel.get(i),
            dual: ha.get(d - i),
        })
        .collect();

    Ok(LefschetzReport {
        d,
        field,
        facets_a: partition.a.iter().map(|i| i + 1).collect(),
        terms,
        alternating_sum,
        printed_final_term: "H~_1(Delta_A)".into(),
        printed_alternating_sum,
        neighbor_bound_ok,
        duality_pairs,
        hypotheses: hypotheses(complex, &da, field)?,
    })
}

fn hypotheses(complex: &SimplicialComplex, da: &SimplicialComplex, field: FieldSpec) -> Result<Hypotheses> {
    Ok(Hypotheses {
        quasi_gorenstein: is_quasi_gorenstein(complex, field)?,
        buchsbaum_a: is_buchsbaum(da, field)?.holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkMismatch {
    pub face: Face,
    pub degree: i32,
    /// `dim H̃^i(lk_{Δ_B} σ)`, zero when `σ ∉ Δ_B`.
    pub in_b: usize,
    pub in_delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkRestrictionReport {
    pub holds: bool,
    pub hypotheses: Hypotheses,
    pub note: Option<String>,
    pub mismatches: Vec<LinkMismatch>,
}

/// `H̃^i(lk_{Δ_B} σ) = H̃^i(lk_Δ σ)` for every nonempty face `σ` of `Δ` and
/// every `i < dim lk_Δ σ`, where the left side is zero for `σ ∉ Δ_B`.
///
/// This is the Hochster-indexed range: through the formula it is exactly
/// `H^j_m(k[Δ_B])_{-σ} ≅ H^j_m(k[Δ])_{-σ}` for `j` below the Krull dimension.
pub fn link_restriction_check(
    complex: &SimplicialComplex,
    partition: &FacetPartition,
    field: FieldSpec,
) -> Result<LinkRestrictionReport> {
    let d = pure_dim(complex)?;
    let (da, db) = partition.split(complex)?;
    let hyp = hypotheses(complex, &da, field)?;
    let links = LinkHomology::new(complex, field)?;
    let links_b = LinkHomology::new(&db, field)?;

    let mut mismatches = Vec::new();
    for sigma in complex.faces()?.into_iter().filter(|s| !s.is_empty()) {
        let top = d - sigma.len() as i32;
        let full = links.link_betti(&sigma)?;
        let restricted = if db.contains(&sigma) {
            Some(links_b.link_betti(&sigma)?)
        } else {
            None
        };
        for i in -1..top {
            let in_delta = full.get(i);
            let in_b = restricted.as_ref().map_or(0, |b| b.get(i));
            if in_b != in_delta {
                mismatches.push(LinkMismatch {
                    face: sigma.clone(),
                    degree: i,
                    in_b,
                    in_delta,
                });
            }
        }
    }
    Ok(LinkRestrictionReport {
        holds: mismatches.is_empty(),
        hypotheses: hyp,
        note: (!hyp.hold()).then(|| "hypotheses not met".to_owned()),
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmLinkageReport {
    /// `None` when the check was skipped.
    pub holds: Option<bool>,
    pub quasi_gorenstein: bool,
    pub cohen_macaulay_a: bool,
    pub skipped: Option<String>,
    /// `(i, σ, dim in Δ, dim in Δ_B)` for every disagreeing entry.
    pub mismatches: Vec<(usize, Face, usize, usize)>,
}

/// With `Δ` quasi-Gorenstein and `Δ_A` Cohen–Macaulay, the multigraded
/// local cohomology of `k[Δ]` and `k[Δ_B]` agrees below the Krull dimension.
pub fn cm_linkage_check(
    complex: &SimplicialComplex,
    partition: &FacetPartition,
    field: FieldSpec,
) -> Result<CmLinkageReport> {
    let d = pure_dim(complex)? as usize + 1;
    let (da, db) = partition.split(complex)?;
    let qg = is_quasi_gorenstein(complex, field)?;
    let links_a = LinkHomology::new(&da, field)?;
    let cm_a = first_low_homology(&links_a, |_| true, |_, ld| ld)?.is_none();

    let skipped = match (qg, cm_a) {
        (true, true) => None,
        (false, _) => Some("Delta is not quasi-Gorenstein".to_owned()),
        (true, false) => Some("Delta_A is not Cohen-Macaulay".to_owned()),
    };
    if skipped.is_some() {
        return Ok(CmLinkageReport {
            holds: None,
            quasi_gorenstein: qg,
            cohen_macaulay_a: cm_a,
            skipped,
            mismatches: Vec::new(),
        });
    }

    let full = local_cohomology_table(complex, field)?.below(d);
    let part = local_cohomology_table(&db, field)?.below(d);
    let keys: BTreeSet<&(usize, Face)> = full.keys().chain(part.keys()).collect();
    let mismatches: Vec<_> = keys
        .into_iter()
        .filter_map(|k| {
            let (x, y) = (full.get(k).copied().unwrap_or(0), part.get(k).copied().unwrap_or(0));
            (x != y).then(|| (k.0, k.1.clone(), x, y))
        })
        .collect();
    Ok(CmLinkageReport {
        holds: Some(mismatches.is_empty()),
        quasi_gorenstein: qg,
        cohen_macaulay_a: cm_a,
        skipped: None,
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TconnReport {
    pub connected: bool,
    /// Vertex sets of the connected components of `Δ_B`.
    pub components: Vec<Vec<u32>>,
}

fn vertex_components(complex: &SimplicialComplex) -> Vec<Vec<u32>> {
    let mut groups: Vec<BTreeSet<u32>> = Vec::new();
    for f in complex.facets() {
        let vs: BTreeSet<u32> = f.vertices().iter().copied().collect();
        let (touching, rest): (Vec<_>, Vec<_>) = groups.into_iter().partition(|g| !g.is_disjoint(&vs));
        let merged = touching.into_iter().fold(vs, |mut acc, g| {
            acc.extend(g);
            acc
        });
        groups = rest;
        groups.push(merged);
    }
    let mut out: Vec<Vec<u32>> = groups.into_iter().map(|g| g.into_iter().collect()).collect();
    out.sort();
    out
}

/// `Δ_B` is connected when `Δ` is quasi-Gorenstein, `Δ_A` is Buchsbaum and
/// `|A| < dim Δ + 1`.
pub fn tconn_check(
    complex: &SimplicialComplex,
    partition: &FacetPartition,
    field: FieldSpec,
) -> Result<TconnReport> {
    let d = pure_dim(complex)?;
    let (da, db) = partition.split(complex)?;
    let hyp = hypotheses(complex, &da, field)?;
    let mut failed = Vec::new();
    if !hyp.quasi_gorenstein {
        failed.push(format!("Delta is not quasi-Gorenstein over {field}"));
    }
    if !hyp.buchsbaum_a {
        failed.push(format!("Delta_A is not Buchsbaum over {field}"));
    }
    if partition.a.len() as i32 >= d + 1 {
        failed.push(format!("|A| = {} is not below {}", partition.a.len(), d + 1));
    }
    if !failed.is_empty() {
        return Err(Error::HypothesesNotMet(failed));
    }
    Ok(TconnReport {
        connected: is_connected(&db),
        components: vertex_components(&db),
    })
}

/// Betti vectors of `Δ_A` and of its faces avoiding the vertices of `Δ_B`,
/// by degree (supports only).
pub fn homotopy_comparison(
    complex: &SimplicialComplex,
    partition: &FacetPartition,
    field: FieldSpec,
) -> Result<(BTreeMap<i32, usize>, BTreeMap<i32, usize>)> {
    let (da, db) = partition.split(complex)?;
    let avoid = da.faces_avoiding(&db.vertex_set());
    Ok((
        reduced_betti(&da, field)?.support(),
        reduced_betti(&avoid, field)?.support(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cx(facets: &[&[i64]], n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    fn sphere() -> SimplicialComplex {
        cx(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], 4)
    }

    fn c4() -> SimplicialComplex {
        cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4)
    }

    #[test]
    fn partitions_validate() {
        assert!(FacetPartition::from_a(3, []).is_err());
        assert!(FacetPartition::from_a(3, [0, 1, 2]).is_err());
        assert!(FacetPartition::from_a(3, [5]).is_err());
        let p = FacetPartition::from_a(3, [1]).unwrap();
        assert_eq!(p.b().iter().copied().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(FacetPartition::enumerate(4, 2).len(), 4 + 6);
        assert_eq!(FacetPartition::enumerate(2, 5).len(), 2);
    }

    #[test]
    fn sphere_sequence_is_zero() {
        // facets in canonical order: 123, 124, 134, 234
        let p = FacetPartition::from_a(4, [0, 1]).unwrap();
        let r = lefschetz_report(&sphere(), &p, Q).unwrap();
        let labels: Vec<_> = r.terms.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(
            labels,
            ["H~^0(Delta_B)", "H~_1(Delta_A)", "H~^1(Delta)", "H~^1(Delta_B)", "H~_0(Delta_A)"]
        );
        assert!(r.terms.iter().all(|t| t.dim == 0));
        assert_eq!(r.alternating_sum, 0);
        assert!(r.neighbor_bound_ok && r.duality_holds() && r.hypotheses.hold());
    }

    #[test]
    fn broken_hypotheses_still_report() {
        let cex = cx(&[&[1, 2, 5], &[2, 3, 5], &[3, 4, 5], &[1, 4, 5], &[1, 2, 3]], 5);
        let a: Vec<usize> = [[1, 2, 5], [3, 4, 5]]
            .iter()
            .map(|f| cex.facets().iter().position(|g| g == &Face::from(*f)).unwrap())
            .collect();
        let p = FacetPartition::from_a(5, a).unwrap();
        let r = lefschetz_report(&cex, &p, Q).unwrap();
        assert!(!r.hypotheses.buchsbaum_a);
        let l = link_restriction_check(&cex, &p, Q).unwrap();
        assert_eq!(l.note.as_deref(), Some("hypotheses not met"));
    }

    #[test]
    fn link_restriction_on_the_sphere() {
        for p in FacetPartition::enumerate(4, 3) {
            assert!(link_restriction_check(&sphere(), &p, Q).unwrap().holds);
        }
    }

    #[test]
    fn cm_linkage() {
        let p = FacetPartition::from_a(4, [0]).unwrap();
        assert_eq!(cm_linkage_check(&sphere(), &p, Q).unwrap().holds, Some(true));
        assert_eq!(cm_linkage_check(&c4(), &p, Q).unwrap().holds, Some(true));
        let two = cx(&[&[1, 2, 3], &[4, 5, 6]], 6);
        let p = FacetPartition::from_a(2, [0]).unwrap();
        let r = cm_linkage_check(&two, &p, Q).unwrap();
        assert_eq!(r.holds, None);
        assert!(!r.quasi_gorenstein);
    }

    #[test]
    fn tconn() {
        let p = FacetPartition::from_a(4, [0]).unwrap();
        let r = tconn_check(&c4(), &p, Q).unwrap();
        assert!(r.connected);
        assert_eq!(r.components, vec![vec![1, 2, 3, 4]]);
        let p = FacetPartition::from_a(4, [0, 3]).unwrap();
        assert!(matches!(tconn_check(&c4(), &p, Q), Err(Error::HypothesesNotMet(_))));
    }

    #[test]
    fn report_json_labels() {
        let p = FacetPartition::from_a(4, [0]).unwrap();
        let v = serde_json::to_value(lefschetz_report(&sphere(), &p, Q).unwrap()).unwrap();
        assert_eq!(v["terms"][0]["label"], "H~^0(Delta_B)");
        assert_eq!(v["facets_a"], serde_json::json!([1]));
        assert_eq!(v["hypotheses"]["quasi_gorenstein"], true);
    }
}
