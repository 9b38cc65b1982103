//! The shipped test corpus and a brute-force Betti oracle.
//!
//! The oracle enumerates faces and eliminates dense matrices on its own; it
//! deliberately shares no code with [`crate::homology`] or [`crate::matrix`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::facet_file::parse_facet_file;
use crate::field::FieldSpec;
use crate::homology::BettiVector;
use crate::simplicial::SimplicialComplex;

/// Face-count ceiling for [`oracle_betti`].
pub const ORACLE_LIMIT: usize = 4096;

const FILES: &[(&str, &str)] = &[
    ("boundary-2-simplex.cplx", include_str!("../../../fixtures/boundary-2-simplex.cplx")),
    ("boundary-3-simplex.cplx", include_str!("../../../fixtures/boundary-3-simplex.cplx")),
    ("boundary-4-simplex.cplx", include_str!("../../../fixtures/boundary-4-simplex.cplx")),
    ("cone-four-cycle.cplx", include_str!("../../../fixtures/cone-four-cycle.cplx")),
    ("csaszar-torus.cplx", include_str!("../../../fixtures/csaszar-torus.cplx")),
    ("four-cycle.cplx", include_str!("../../../fixtures/four-cycle.cplx")),
    ("octahedron.cplx", include_str!("../../../fixtures/octahedron.cplx")),
    ("homotopy-cex1-A.cplx", include_str!("../../../fixtures/homotopy-cex1-A.cplx")),
    ("homotopy-cex1.cplx", include_str!("../../../fixtures/homotopy-cex1.cplx")),
    ("homotopy-cex2-A.cplx", include_str!("../../../fixtures/homotopy-cex2-A.cplx")),
    ("homotopy-cex2.cplx", include_str!("../../../fixtures/homotopy-cex2.cplx")),
    ("moebius-5.cplx", include_str!("../../../fixtures/moebius-5.cplx")),
    ("rp2-6.cplx", include_str!("../../../fixtures/rp2-6.cplx")),
    ("simplex-2.cplx", include_str!("../../../fixtures/simplex-2.cplx")),
    ("simplex-3.cplx", include_str!("../../../fixtures/simplex-3.cplx")),
    ("two-points.cplx", include_str!("../../../fixtures/two-points.cplx")),
    ("two-triangles.cplx", include_str!("../../../fixtures/two-triangles.cplx")),
    ("wedge-triangles.cplx", include_str!("../../../fixtures/wedge-triangles.cplx")),
];

const MANIFEST: &str = include_str!("../../../fixtures/manifest.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Facet list taken from the source literature.
    Published,
    Standard,
}

/// A recorded value with the tag saying where it came from.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Tagged {
    pub provenance: String,
    pub value: serde_json::Value,
}

#[derive(Debug, Deserialize)]
struct Manifest {
    fixtures: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
struct Entry {
    name: String,
    file: String,
    provenance: Provenance,
    note: String,
    expected: BTreeMap<String, BTreeMap<String, Tagged>>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub file: String,
    pub provenance: Provenance,
    pub note: String,
    pub text: &'static str,
    pub complex: SimplicialComplex,
    /// Field tag (`q`, `2`, `3`) to property name to recorded value.
    pub expected: BTreeMap<String, BTreeMap<String, Tagged>>,
}

impl Fixture {
    pub fn expected(&self, field: FieldSpec, key: &str) -> Option<&Tagged> {
        self.expected.get(&field.tag())?.get(key)
    }

    pub fn expected_bool(&self, field: FieldSpec, key: &str) -> Option<bool> {
        self.expected(field, key)?.value.as_bool()
    }

    pub fn expected_int(&self, field: FieldSpec, key: &str) -> Option<i64> {
        self.expected(field, key)?.value.as_i64()
    }

    /// Recorded reduced Betti numbers, degree by degree.
    pub fn expected_betti(&self, field: FieldSpec) -> Option<BTreeMap<i32, usize>> {
        let obj = self.expected(field, "betti")?.value.as_object()?;
        obj.iter()
            .map(|(k, v)| Some((k.parse().ok()?, v.as_u64()? as usize)))
            .collect()
    }
}

/// Every fixture listed in the manifest, in manifest order.
pub fn corpus() -> Vec<Fixture> {
    let manifest: Manifest = serde_json::from_str(MANIFEST).expect("fixture manifest is valid JSON");
    let files: HashMap<&str, &'static str> = FILES.iter().copied().collect();
    manifest
        .fixtures
        .into_iter()
        .map(|e| {
            let text = files
                .get(e.file.as_str())
                .unwrap_or_else(|| panic!("fixture file {} is not bundled", e.file));
            let complex = parse_facet_file(text)
                .unwrap_or_else(|err| panic!("fixture {} does not parse: {err}", e.name));
            Fixture {
                name: e.name,
                file: e.file,
                provenance: e.provenance,
                note: e.note,
                text,
                complex,
                expected: e.expected,
            }
        })
        .collect()
}

pub fn fixture(name: &str) -> Option<Fixture> {
    corpus().into_iter().find(|f| f.name == name)
}

/// Rank of a dense integer matrix over `field` by plain Gauss–Jordan
/// elimination (rationals) or elimination with Fermat inverses (GF(p)).
pub fn oracle_rank(matrix: &[Vec<i64>], field: FieldSpec) -> usize {
    if matrix.is_empty() || matrix[0].is_empty() {
        return 0;
    }
    match field {
        FieldSpec::Rationals => {
            let mut m: Vec<Vec<BigRational>> = matrix
                .iter()
                .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect();
            let (rows, cols) = (m.len(), m[0].len());
            let mut rank = 0;
            for c in 0..cols {
                let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
                    continue;
                };
                m.swap(rank, p);
                let inv = BigRational::one() / m[rank][c].clone();
                for x in m[rank].iter_mut() {
                    *x = x.clone() * inv.clone();
                }
                for r in 0..rows {
                    if r != rank && !m[r][c].is_zero() {
                        let f = m[r][c].clone();
                        for k in 0..cols {
                            let sub = f.clone() * m[rank][k].clone();
                            m[r][k] = m[r][k].clone() - sub;
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
        FieldSpec::Prime(p) => {
            let p = p as i128;
            let pow = |mut b: i128, mut e: i128| {
                let mut acc = 1i128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                acc
            };
            let mut m: Vec<Vec<i128>> = matrix
                .iter()
                .map(|row| row.iter().map(|&x| (x as i128).rem_euclid(p)).collect())
                .collect();
            let (rows, cols) = (m.len(), m[0].len());
            let mut rank = 0;
            for c in 0..cols {
                let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else {
                    continue;
                };
                m.swap(rank, pr);
                let inv = pow(m[rank][c], p - 2);
                for x in m[rank].iter_mut() {
                    *x = *x * inv % p;
                }
                for r in 0..rows {
                    if r != rank && m[r][c] != 0 {
                        let f = m[r][c];
                        for k in 0..cols {
                            m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
    }
}

/// Reduced Betti numbers for degrees `-1..=dim Δ` from scratch.
pub fn oracle_betti(complex: &SimplicialComplex, field: FieldSpec) -> Result<BettiVector> {
    let facets = complex.facet_lists();
    if facets.is_empty() {
        return Err(Error::Degenerate {
            expected: "non-void",
            found: complex.kind(),
        });
    }
    // All subsets of all facets, the empty face included.
    let mut faces: BTreeSet<Vec<u32>> = BTreeSet::new();
    for f in &facets {
        if f.len() >= 20 {
            return Err(Error::TooLarge {
                faces: 1 << f.len().min(62),
                limit: ORACLE_LIMIT,
            });
        }
        for mask in 0u32..(1 << f.len()) {
            let s: Vec<u32> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            faces.insert(s);
            if faces.len() > ORACLE_LIMIT {
                return Err(Error::TooLarge {
                    faces: faces.len(),
                    limit: ORACLE_LIMIT,
                });
            }
        }
    }
    let top = facets.iter().map(Vec::len).max().unwrap_or(0);
    let mut by_size: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    for f in faces {
        by_size[f.len()].push(f);
    }
    // rank of the boundary from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<&Vec<u32>, usize> =
            by_size[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut m = vec![vec![0i64; by_size[k].len()]; by_size[k - 1].len()];
        for (c, f) in by_size[k].iter().enumerate() {
            for drop in 0..f.len() {
                let mut b = f.clone();
                b.remove(drop);
                m[index[&b]][c] = if drop % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[k] = oracle_rank(&m, field);
    }
    let dims = (0..=top)
        .map(|k| (k as i32 - 1, by_size[k].len() - ranks[k] - ranks[k + 1]))
        .collect();
    Ok(BettiVector::from_map(dims))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_complete() {
        let c = corpus();
        assert_eq!(c.len(), FILES.len());
        let moebius = fixture("moebius-5").unwrap();
        assert_eq!(moebius.provenance, Provenance::Published);
        assert_eq!(moebius.complex.facets().len(), 5);
        assert!(fixture("boundary-3-simplex").is_some());
        let torus = fixture("csaszar-torus").unwrap();
        assert_eq!(torus.complex.facets().len(), 14);
        assert_eq!(torus.expected_bool(FieldSpec::Rationals, "quasi_gorenstein"), Some(true));
    }

    #[test]
    fn oracle_on_small_complexes() {
        let s = fixture("boundary-3-simplex").unwrap().complex;
        assert_eq!(oracle_betti(&s, FieldSpec::Rationals).unwrap().support(), [(2, 1)].into());
        let rp2 = fixture("rp2-6").unwrap().complex;
        assert_eq!(
            oracle_betti(&rp2, FieldSpec::Prime(2)).unwrap().support(),
            [(1, 1), (2, 1)].into()
        );
        assert!(oracle_betti(&rp2, FieldSpec::Rationals).unwrap().is_zero());
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        let big = SimplicialComplex::simplex(13);
        assert!(matches!(
            oracle_betti(&big, FieldSpec::Rationals),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn oracle_rank_basics() {
        assert_eq!(oracle_rank(&[vec![1, 2], vec![2, 4]], FieldSpec::Rationals), 1);
        assert_eq!(oracle_rank(&[vec![2, 0], vec![0, 2]], FieldSpec::Prime(2)), 0);
        assert_eq!(oracle_rank(&[], FieldSpec::Prime(3)), 0);
    }
}
