//! Graded local cohomology of `k[Δ]` through Hochster's formula
//!
//! `dim H^i_m(k[Δ])_{-σ} = dim H̃^{i-|σ|-1}(lk σ; k)` for every face `σ`
//! (the empty face included); all other squarefree multidegrees vanish.
//! On top of the table: depth, the Cohen–Macaulay and Buchsbaum predicates,
//! the a-invariant and Serre's conditions `(S_ℓ)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::{reduced_betti, BettiVector};
use crate::simplicial::{ComplexKind, Face, SimplicialComplex};

/// Memoized link homology of one complex over one field.
///
/// Safe to share between threads; the cache is keyed by canonical face.
pub struct LinkHomology<'a> {
    complex: &'a SimplicialComplex,
    field: FieldSpec,
    cache: Mutex<HashMap<Face, BettiVector>>,
}

impl<'a> LinkHomology<'a> {
    pub fn new(complex: &'a SimplicialComplex, field: FieldSpec) -> Result<Self> {
        if complex.kind() == ComplexKind::Void {
            return Err(Error::Degenerate {
                expected: "non-void",
                found: ComplexKind::Void,
            });
        }
        Ok(LinkHomology {
            complex,
            field,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.complex
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `H̃_*(lk σ)`; errors if `σ` is not a face.
    pub fn link_betti(&self, sigma: &Face) -> Result<BettiVector> {
        if let Some(b) = self.cache.lock().expect("cache poisoned").get(sigma) {
            return Ok(b.clone());
        }
        let link = self.complex.link(sigma)?;
        let b = reduced_betti(&link, self.field)?;
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(sigma.clone(), b.clone());
        Ok(b)
    }

    /// A single table entry `dim H^i_m(k[Δ])_{-σ}`; zero when `σ ∉ Δ`.
    pub fn entry(&self, i: usize, sigma: &Face) -> Result<usize> {
        if !self.complex.contains(sigma) {
            return Ok(0);
        }
        let j = i as i32 - sigma.len() as i32 - 1;
        Ok(self.link_betti(sigma)?.get(j))
    }
}

/// Squarefree-multidegree dimensions of `H^i_m(k[Δ])`, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCohomologyTable {
    krull_dim: usize,
    entries: BTreeMap<(usize, Face), usize>,
}

impl LocalCohomologyTable {
    /// Krull dimension `d = dim Δ + 1`.
    pub fn krull_dim(&self) -> usize {
        self.krull_dim
    }

    pub fn entry(&self, i: usize, sigma: &Face) -> usize {
        self.entries.get(&(i, sigma.clone())).copied().unwrap_or(0)
    }

    /// Nonzero entries ordered by `(i, σ)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Face, usize)> + '_ {
        self.entries.iter().map(|((i, s), &v)| (*i, s, v))
    }

    /// `dim H^i_m(k[Δ])_j`; zero for every `j > 0`.
    pub fn total(&self, i: usize, j: i64) -> usize {
        if j > 0 {
            return 0;
        }
        self.entries
            .iter()
            .filter(|((ii, s), _)| *ii == i && s.len() as i64 == -j)
            .map(|(_, &v)| v)
            .sum()
    }

    /// All nonzero `(i, j, dim)` totals, ordered by `i` then descending `j`.
    pub fn totals(&self) -> Vec<(usize, i64, usize)> {
        let mut acc: BTreeMap<(usize, std::cmp::Reverse<i64>), usize> = BTreeMap::new();
        for ((i, s), &v) in &self.entries {
            *acc.entry((*i, std::cmp::Reverse(-(s.len() as i64)))).or_default() += v;
        }
        acc.into_iter().map(|((i, j), v)| (i, j.0, v)).collect()
    }

    /// Whether `H^i_m(k[Δ]) ≠ 0`.
    pub fn is_nonzero(&self, i: usize) -> bool {
        self.entries.keys().any(|(ii, _)| *ii == i)
    }

    /// Entries with `i` below `bound`, as a comparable map.
    pub fn below(&self, bound: usize) -> BTreeMap<(usize, Face), usize> {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i < bound)
            .map(|(k, &v)| (k.clone(), v))
            .collect()
    }
}

impl Serialize for LocalCohomologyTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            i: usize,
            sigma: &'a [u32],
            dim: usize,
        }
        #[derive(Serialize)]
        struct Total {
            i: usize,
            j: i64,
            dim: usize,
        }
        let entries: Vec<Entry> = self
            .entries()
            .map(|(i, sigma, dim)| Entry {
                i,
                sigma: sigma.vertices(),
                dim,
            })
            .collect();
        let totals: Vec<Total> = self
            .totals()
            .into_iter()
            .map(|(i, j, dim)| Total { i, j, dim })
            .collect();
        let mut st = s.serialize_struct("LocalCohomologyTable", 3)?;
        st.serialize_field("d", &self.krull_dim)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("total", &totals)?;
        st.end()
    }
}

pub fn local_cohomology_table(complex: &SimplicialComplex, field: FieldSpec) -> Result<LocalCohomologyTable> {
    let links = LinkHomology::new(complex, field)?;
    table_from(&links)
}

pub(crate) fn table_from(links: &LinkHomology<'_>) -> Result<LocalCohomologyTable> {
    let complex = links.complex();
    let krull_dim = (complex.dim_or_err()? + 1) as usize;
    let mut entries = BTreeMap::new();
    for sigma in complex.faces()? {
        let b = links.link_betti(&sigma)?;
        for (j, dim) in b.iter().filter(|&(_, d)| d > 0) {
            let i = j + sigma.len() as i32 + 1;
            debug_assert!(i >= 0);
            entries.insert((i as usize, sigma.clone()), dim);
        }
    }
    Ok(LocalCohomologyTable { krull_dim, entries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    pub krull_dim: usize,
    pub is_cohen_macaulay: bool,
    /// First `(i, σ)` with a nonzero entry below the Krull dimension.
    pub witness: Option<(usize, Face)>,
}

pub fn depth_report(complex: &SimplicialComplex, field: FieldSpec) -> Result<DepthReport> {
    let table = local_cohomology_table(complex, field)?;
    Ok(depth_from_table(&table))
}

pub fn depth_from_table(table: &LocalCohomologyTable) -> DepthReport {
    let d = table.krull_dim();
    // H^d is never zero, so the minimum exists.
    let depth = table.entries().map(|(i, _, _)| i).min().unwrap_or(d);
    let witness = table
        .entries()
        .find(|(i, _, _)| *i < d)
        .map(|(i, s, _)| (i, s.clone()));
    DepthReport {
        depth,
        krull_dim: d,
        is_cohen_macaulay: depth == d,
        witness,
    }
}

/// First `(σ, i)` in canonical face order with `H̃_i(lk σ) ≠ 0` for some
/// `i < bound(σ, dim lk σ)`, scanning only faces accepted by `scope`.
pub(crate) fn first_low_homology(
    links: &LinkHomology<'_>,
    scope: impl Fn(&Face) -> bool,
    bound: impl Fn(&Face, i32) -> i32,
) -> Result<Option<(Face, i32)>> {
    let complex = links.complex();
    for sigma in complex.faces()?.into_iter().filter(|s| scope(s)) {
        let link_dim = complex.link_unchecked(&sigma).dim().unwrap_or(-1);
        let limit = bound(&sigma, link_dim);
        let b = links.link_betti(&sigma)?;
        let hit = b.iter().find(|&(j, v)| j < limit && v > 0).map(|(j, _)| j);
        if let Some(j) = hit {
            return Ok(Some((sigma, j)));
        }
    }
    Ok(None)
}

/// Reisner's criterion read directly off the links: `H̃_i(lk σ) = 0` for
/// every face `σ` (empty face included) and every `i < dim lk σ`.
pub fn is_cohen_macaulay_reisner(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let links = LinkHomology::new(complex, field)?;
    Ok(first_low_homology(&links, |_| true, |_, ld| ld)?.is_none())
}

/// `max{j : H^d_m(k[Δ])_j ≠ 0} = -min{|σ| : H̃^{d-|σ|-1}(lk σ) ≠ 0}`.
pub fn a_invariant(complex: &SimplicialComplex, field: FieldSpec) -> Result<i64> {
    let table = local_cohomology_table(complex, field)?;
    Ok(a_invariant_from_table(&table))
}

pub fn a_invariant_from_table(table: &LocalCohomologyTable) -> i64 {
    let d = table.krull_dim();
    table
        .entries()
        .filter(|(i, _, _)| *i == d)
        .map(|(_, s, _)| -(s.len() as i64))
        .max()
        .expect("top local cohomology of a Stanley-Reisner ring is nonzero")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuchsbaumReport {
    pub holds: bool,
    /// Violating `(σ, i)`: `H̃_i(lk σ) ≠ 0` with `i < dim lk σ`.
    pub witness: Option<(Face, i32)>,
}

/// `H̃_i(lk σ) = 0` for every nonempty face `σ` and `i < dim lk σ`.
pub fn is_buchsbaum(complex: &SimplicialComplex, field: FieldSpec) -> Result<BuchsbaumReport> {
    let links = LinkHomology::new(complex, field)?;
    buchsbaum_with(&links)
}

pub(crate) fn buchsbaum_with(links: &LinkHomology<'_>) -> Result<BuchsbaumReport> {
    let witness = first_low_homology(links, |s| !s.is_empty(), |_, ld| ld)?;
    Ok(BuchsbaumReport {
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub ell: usize,
    pub holds: bool,
    /// `ℓ > 2`: the link criterion is used beyond the normality case.
    pub extended: bool,
    pub witness: Option<(Face, i32)>,
}

/// `(S_ℓ)` via links: `H̃_i(lk σ) = 0` for all faces `σ` (empty face
/// included) and `i < min(ℓ - 1, dim lk σ)`.
pub fn serre_condition(complex: &SimplicialComplex, field: FieldSpec, ell: usize) -> Result<SerreReport> {
    if ell == 0 {
        return Err(Error::InvalidSerreIndex(ell));
    }
    let links = LinkHomology::new(complex, field)?;
    let cap = ell as i32 - 1;
    let witness = first_low_homology(&links, |_| true, |_, ld| ld.min(cap))?;
    Ok(SerreReport {
        ell,
        holds: witness.is_none(),
        extended: ell > 2,
        witness,
    })
}
