//! Simplicial complexes on the vertex set `1..=n` and the face-level
//! combinatorics (links, facet restrictions, deletions, cores, non-faces).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of faces any single enumeration may produce.
pub const DEFAULT_FACE_CAP: usize = 1 << 24;

/// A face, stored as its strictly increasing vertex ids.
///
/// Faces order canonically: first by cardinality, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<u32>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Builds a face from arbitrary ids; duplicates are merged.
    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub(crate) fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|σ| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for a in &self.0 {
            for b in it.by_ref() {
                match b.cmp(a) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn intersection_len(&self, other: &Face) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    pub fn with_vertex(&self, v: u32) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    pub fn without_vertex(&self, v: u32) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Codimension-one faces, in the order of the omitted position.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |skip| {
            Face(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All subsets of cardinality `k`, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<Face> {
        let n = self.0.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl From<&[u32]> for Face {
    fn from(v: &[u32]) -> Self {
        Face::new(v.iter().copied())
    }
}

impl<const N: usize> From<[u32; N]> for Face {
    fn from(v: [u32; N]) -> Self {
        Face::new(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplexKind {
    /// No faces at all, not even the empty face.
    Void,
    /// Only the empty face.
    Empty,
    Ordinary,
}

/// A simplicial complex on the ambient vertex set `1..=n_vertices`, stored by
/// its facets in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    n_vertices: u32,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Canonical complex generated by `raw_facets`. Non-maximal entries are
    /// dropped and duplicates merged.
    pub fn from_facets<I, F>(raw_facets: I, n_vertices: u32) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = i64>,
    {
        let mut faces = Vec::new();
        for (idx, raw) in raw_facets.into_iter().enumerate() {
            let mut verts = Vec::new();
            for v in raw {
                if v <= 0 || v > i64::from(n_vertices) {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        facet: idx,
                        n_vertices,
                    });
                }
                verts.push(v as u32);
            }
            faces.push(Face::new(verts));
        }
        Ok(Self::from_faces(n_vertices, faces))
    }

    /// Complex generated by already-validated faces.
    pub fn from_faces<I: IntoIterator<Item = Face>>(n_vertices: u32, faces: I) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort();
        faces.dedup();
        // Larger faces come later in canonical order, so only look ahead.
        let mut keep = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let dominated = faces[i + 1..]
                .iter()
                .any(|g| g.len() > f.len() && f.is_subset(g));
            if !dominated {
                keep.push(f.clone());
            }
        }
        if let Some(max) = keep.iter().flat_map(|f| f.vertices().last()).max() {
            debug_assert!(*max <= n_vertices);
        }
        SimplicialComplex {
            n_vertices,
            facets: keep,
        }
    }

    pub fn void(n_vertices: u32) -> Self {
        SimplicialComplex {
            n_vertices,
            facets: Vec::new(),
        }
    }

    pub fn empty(n_vertices: u32) -> Self {
        SimplicialComplex {
            n_vertices,
            facets: vec![Face::empty()],
        }
    }

    /// The full simplex on `1..=n`.
    pub fn simplex(n_vertices: u32) -> Self {
        SimplicialComplex {
            n_vertices,
            facets: vec![Face::new(1..=n_vertices)],
        }
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn kind(&self) -> ComplexKind {
        match self.facets.as_slice() {
            [] => ComplexKind::Void,
            [f] if f.is_empty() => ComplexKind::Empty,
            _ => ComplexKind::Ordinary,
        }
    }

    /// `max dim σ`; `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.last().map(Face::dim)
    }

    /// Dimension of a complex that is known to contain at least the empty face.
    pub(crate) fn dim_or_err(&self) -> Result<i32> {
        self.dim().ok_or(Error::Degenerate {
            expected: "non-void",
            found: ComplexKind::Void,
        })
    }

    pub(crate) fn require_ordinary(&self) -> Result<i32> {
        match self.kind() {
            ComplexKind::Ordinary => Ok(self.dim().unwrap_or(-1)),
            found => Err(Error::Degenerate {
                expected: "non-void, non-empty",
                found,
            }),
        }
    }

    pub fn is_pure(&self) -> bool {
        match (self.facets.first(), self.facets.last()) {
            (Some(a), Some(b)) => a.len() == b.len(),
            _ => true,
        }
    }

    /// Vertices that lie in some face.
    pub fn vertex_set(&self) -> BTreeSet<u32> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    /// Faces of dimension `k`, canonical order.
    pub fn faces_of_dim(&self, k: i32) -> Result<Vec<Face>> {
        self.faces_of_dim_capped(k, DEFAULT_FACE_CAP)
    }

    pub fn faces_of_dim_capped(&self, k: i32, cap: usize) -> Result<Vec<Face>> {
        if k < -1 {
            return Ok(Vec::new());
        }
        let size = (k + 1) as usize;
        let mut seen: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            if f.len() < size {
                continue;
            }
            if binomial_exceeds(f.len(), size, cap) {
                return Err(Error::CapacityExceeded { cap });
            }
            for s in f.subsets_of_size(size) {
                seen.insert(s);
                if seen.len() > cap {
                    return Err(Error::CapacityExceeded { cap });
                }
            }
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Every face including the empty one, grouped by dimension: index 0
    /// holds dimension -1.
    pub fn faces_by_dim(&self) -> Result<Vec<Vec<Face>>> {
        self.faces_by_dim_capped(DEFAULT_FACE_CAP)
    }

    pub fn faces_by_dim_capped(&self, cap: usize) -> Result<Vec<Vec<Face>>> {
        let Some(d) = self.dim() else {
            return Ok(Vec::new());
        };
        // A facet with s vertices alone contributes 2^s faces.
        if d + 1 >= 63 || 1u64 << (d + 1) > cap as u64 {
            return Err(Error::CapacityExceeded { cap });
        }
        let mut total = 0usize;
        let mut out = Vec::with_capacity((d + 2) as usize);
        for k in -1..=d {
            let layer = self
                .faces_of_dim_capped(k, cap - total)
                .map_err(|_| Error::CapacityExceeded { cap })?;
            total += layer.len();
            if total > cap {
                return Err(Error::CapacityExceeded { cap });
            }
            out.push(layer);
        }
        Ok(out)
    }

    /// All faces in canonical order.
    pub fn faces(&self) -> Result<Vec<Face>> {
        Ok(self.faces_by_dim()?.into_iter().flatten().collect())
    }

    /// `f_k` for `k = -1..=dim`.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        Ok(self.faces_by_dim()?.iter().map(Vec::len).collect())
    }

    /// `lk σ = {τ : τ ∪ σ ∈ Δ, τ ∩ σ = ∅}` on the same ambient vertex set.
    pub fn link(&self, sigma: &Face) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(sigma.clone()));
        }
        Ok(self.link_unchecked(sigma))
    }

    pub(crate) fn link_unchecked(&self, sigma: &Face) -> SimplicialComplex {
        Self::from_faces(
            self.n_vertices,
            self.facets
                .iter()
                .filter(|f| sigma.is_subset(f))
                .map(|f| f.difference(sigma)),
        )
    }

    /// Subcomplex generated by the facets at the given (0-based) positions.
    pub fn restrict_to_facets(&self, indices: &BTreeSet<usize>) -> Result<SimplicialComplex> {
        if indices.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut chosen = Vec::with_capacity(indices.len());
        for &i in indices {
            let f = self.facets.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                len: self.facets.len(),
            })?;
            chosen.push(f.clone());
        }
        // Facets of a canonical complex are an antichain already sorted.
        Ok(SimplicialComplex {
            n_vertices: self.n_vertices,
            facets: chosen,
        })
    }

    /// Faces of `self` that contain none of `forbidden`.
    pub fn faces_avoiding(&self, forbidden: &BTreeSet<u32>) -> SimplicialComplex {
        let forbidden = Face::new(forbidden.iter().copied());
        Self::from_faces(
            self.n_vertices,
            self.facets.iter().map(|f| f.difference(&forbidden)),
        )
    }

    /// Deletes every cone point (vertex lying in all facets).
    pub fn core(&self) -> SimplicialComplex {
        let Some(first) = self.facets.first() else {
            return self.clone();
        };
        let apex: Vec<u32> = first
            .vertices()
            .iter()
            .copied()
            .filter(|&v| self.facets.iter().all(|f| f.contains_vertex(v)))
            .collect();
        if apex.is_empty() {
            return self.clone();
        }
        let apex = Face::from_sorted(apex);
        // Removing the common part keeps the facets an antichain.
        SimplicialComplex {
            n_vertices: self.n_vertices,
            facets: {
                let mut fs: Vec<Face> = self.facets.iter().map(|f| f.difference(&apex)).collect();
                fs.sort();
                fs
            },
        }
    }

    /// Cone points of the complex, ascending.
    pub fn cone_points(&self) -> Vec<u32> {
        match self.facets.first() {
            None => Vec::new(),
            Some(first) => first
                .vertices()
                .iter()
                .copied()
                .filter(|&v| self.facets.iter().all(|f| f.contains_vertex(v)))
                .collect(),
        }
    }

    /// Inclusion-minimal subsets of `1..=n` that are not faces: the minimal
    /// monomial generators of the Stanley–Reisner ideal.
    pub fn minimal_nonfaces(&self) -> Result<Vec<Face>> {
        if self.kind() == ComplexKind::Void {
            return Ok(vec![Face::empty()]);
        }
        let faces: HashSet<Face> = self.faces()?.into_iter().collect();
        let mut out = BTreeSet::new();
        for tau in &faces {
            for v in 1..=self.n_vertices {
                if tau.contains_vertex(v) {
                    continue;
                }
                let cand = tau.with_vertex(v);
                if faces.contains(&cand) || out.contains(&cand) {
                    continue;
                }
                if cand.boundary_faces().all(|b| faces.contains(&b)) {
                    out.insert(cand);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Whether every facet of `sub` is a face of `self`; returns the first
    /// offending facet otherwise.
    pub fn check_subcomplex(&self, sub: &SimplicialComplex) -> Result<()> {
        match sub.facets.iter().find(|f| !self.contains(f)) {
            Some(f) => Err(Error::NotASubcomplex(f.clone())),
            None => Ok(()),
        }
    }

    /// Facets as plain vertex lists, for serialization.
    pub fn facet_lists(&self) -> Vec<Vec<u32>> {
        self.facets.iter().map(|f| f.vertices().to_vec()).collect()
    }
}

fn binomial_exceeds(n: usize, k: usize, cap: usize) -> bool {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return true;
        }
    }
    false
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ComplexKind::Void => f.write_str("<void>"),
            ComplexKind::Empty => f.write_str("<{}>"),
            ComplexKind::Ordinary => {
                f.write_str("<")?;
                for (i, face) in self.facets.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{face}")?;
                }
                f.write_str(">")
            }
        }
    }
}
