//! Elementary collapses and guided vertex elimination.
//!
//! A nonempty face `β` is free when exactly one face `γ` of the complex
//! strictly contains it; `γ` is then a facet with `|γ| = |β| + 1`. Removing
//! both is an elementary collapse, which preserves homotopy type. The empty
//! face is never free, so a collapse never removes the last vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::reduced_betti;
use crate::simplicial::{Face, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseStep {
    pub free: Face,
    pub coface: Face,
}

impl Serialize for CollapseStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CollapseStep", 2)?;
        st.serialize_field("free", self.free.vertices())?;
        st.serialize_field("coface", self.coface.vertices())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseTrace {
    pub start: SimplicialComplex,
    pub end: SimplicialComplex,
    pub steps: Vec<CollapseStep>,
}

impl Serialize for CollapseTrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CollapseTrace", 4)?;
        st.serialize_field("n", &self.start.n_vertices())?;
        st.serialize_field("start", &self.start.facet_lists())?;
        st.serialize_field("end", &self.end.facet_lists())?;
        st.serialize_field("steps", &self.steps)?;
        st.end()
    }
}

/// Result of [`collapse_onto`]. Failure is an expected outcome when the
/// hypotheses behind the procedure do not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CollapseOutcome {
    Success {
        trace: CollapseTrace,
    },
    Failure {
        reason: String,
        #[serde(serialize_with = "facets_of")]
        stuck: SimplicialComplex,
        #[serde(serialize_with = "facets_of")]
        target: SimplicialComplex,
        trace: CollapseTrace,
    },
}

fn facets_of<S: Serializer>(c: &SimplicialComplex, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.facet_lists().serialize(s)
}

impl CollapseOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, CollapseOutcome::Success { .. })
    }

    pub fn trace(&self) -> &CollapseTrace {
        match self {
            CollapseOutcome::Success { trace } | CollapseOutcome::Failure { trace, .. } => trace,
        }
    }
}

/// All faces of a complex, mutated by collapses.
struct FaceSet {
    n: u32,
    faces: BTreeSet<Face>,
}

impl FaceSet {
    fn of(complex: &SimplicialComplex) -> Result<Self> {
        Ok(FaceSet {
            n: complex.n_vertices(),
            faces: complex.faces()?.into_iter().collect(),
        })
    }

    /// Free pairs in canonical order of the free face.
    fn free_pairs(&self) -> Vec<(Face, Face)> {
        let mut covers: BTreeMap<Face, (usize, Face)> = BTreeMap::new();
        for g in self.faces.iter().filter(|g| g.len() >= 2) {
            for b in g.boundary_faces() {
                let e = covers.entry(b).or_insert((0, g.clone()));
                e.0 += 1;
            }
        }
        covers
            .into_iter()
            .filter(|(_, (count, _))| *count == 1)
            .map(|(b, (_, g))| (b, g))
            .collect()
    }

    /// Why `(β, γ)` is not an elementary collapse here, if it is not.
    fn reject(&self, beta: &Face, gamma: &Face) -> Option<String> {
        if beta.is_empty() {
            return Some("the empty face is never free".into());
        }
        if !self.faces.contains(gamma) {
            return Some(format!("{gamma} is not a face"));
        }
        if gamma.len() != beta.len() + 1 || !beta.is_subset(gamma) {
            return Some(format!("{beta} is not a ridge of {gamma}"));
        }
        let others = self
            .faces
            .iter()
            .filter(|f| f.len() == gamma.len() && f != &gamma && beta.is_subset(f))
            .count();
        if others > 0 {
            return Some(format!("{beta} lies in {} faces of dimension {}", others + 1, gamma.dim()));
        }
        if self.faces.iter().any(|f| f.len() > gamma.len() && gamma.is_subset(f)) {
            return Some(format!("{gamma} is not a facet"));
        }
        None
    }

    fn remove(&mut self, beta: &Face, gamma: &Face) {
        self.faces.remove(beta);
        self.faces.remove(gamma);
    }

    fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_faces(self.n, self.faces.iter().cloned())
    }
}

/// Free pairs `(β, γ)` of the complex, ordered by `β`.
pub fn free_faces(complex: &SimplicialComplex) -> Result<Vec<(Face, Face)>> {
    Ok(FaceSet::of(complex)?.free_pairs())
}

/// Eliminates the forbidden vertices of `complex` one at a time.
///
/// For the smallest forbidden vertex `v` left, the link `L = lk v` is
/// collapsed greedily onto a vertex `v'` of `L` (non-forbidden first, then
/// smallest id), always taking a free pair with the largest coface and then
/// the smallest free face, never `{v'}` itself. Each step `(β, γ)` of `L`
/// is performed as `(β ∪ v, γ ∪ v)` in the complex, and `({v}, {v, v'})`
/// finishes the vertex. Succeeds iff the result is the subcomplex of faces
/// avoiding `forbidden`.
pub fn collapse_onto(complex: &SimplicialComplex, forbidden: &BTreeSet<u32>) -> Result<CollapseOutcome> {
    let target = complex.faces_avoiding(forbidden);
    let mut k = FaceSet::of(complex)?;
    let mut steps = Vec::new();

    let fail = |reason: String, k: &FaceSet, steps: Vec<CollapseStep>| {
        let stuck = k.complex();
        Ok(CollapseOutcome::Failure {
            reason,
            stuck: stuck.clone(),
            target: target.clone(),
            trace: CollapseTrace {
                start: complex.clone(),
                end: stuck,
                steps,
            },
        })
    };

    loop {
        let current = k.complex();
        let Some(&v) = current.vertex_set().intersection(forbidden).next() else {
            break;
        };
        let vf = Face::new([v]);
        let mut link = FaceSet::of(&current.link(&vf)?)?;
        let link_vertices = link.complex().vertex_set();
        let Some(&v2) = link_vertices
            .iter()
            .find(|u| !forbidden.contains(u))
            .or_else(|| link_vertices.iter().next())
        else {
            return fail(format!("vertex {v} is isolated"), &k, steps);
        };
        let keep = Face::new([v2]);

        while link.faces.iter().any(|f| f.len() >= 2) {
            let choice = link
                .free_pairs()
                .into_iter()
                .filter(|(b, _)| b != &keep)
                .max_by(|(b1, g1), (b2, g2)| g1.len().cmp(&g2.len()).then(b2.cmp(b1)));
            let Some((beta, gamma)) = choice else {
                return fail(format!("link of vertex {v} has no free face to collapse"), &k, steps);
            };
            link.remove(&beta, &gamma);
            let (b, g) = (beta.with_vertex(v), gamma.with_vertex(v));
            k.remove(&b, &g);
            steps.push(CollapseStep { free: b, coface: g });
        }
        // The link is now a set of points; only {v'} may remain.
        let extra: Vec<&Face> = link.faces.iter().filter(|f| f.len() == 1 && **f != keep).collect();
        if !extra.is_empty() {
            return fail(format!("link of vertex {v} is disconnected"), &k, steps);
        }
        let edge = vf.with_vertex(v2);
        k.remove(&vf, &edge);
        steps.push(CollapseStep { free: vf, coface: edge });
    }

    let end = k.complex();
    let trace = CollapseTrace {
        start: complex.clone(),
        end: end.clone(),
        steps,
    };
    if end == target {
        Ok(CollapseOutcome::Success { trace })
    } else {
        Ok(CollapseOutcome::Failure {
            reason: "end complex differs from the faces avoiding the forbidden vertices".into(),
            stuck: end,
            target,
            trace,
        })
    }
}

/// Replays a trace. Every step must be an elementary collapse of the current
/// complex (`InvalidStep` otherwise); returns whether the replay ends at
/// `trace.end` with the reduced Betti numbers of `trace.start`.
pub fn verify_trace(trace: &CollapseTrace, field: FieldSpec) -> Result<bool> {
    let mut k = FaceSet::of(&trace.start)?;
    for (index, step) in trace.steps.iter().enumerate() {
        if !k.faces.contains(&step.free) {
            return Err(Error::InvalidStep {
                index,
                reason: format!("{} is not a face", step.free),
            });
        }
        if let Some(reason) = k.reject(&step.free, &step.coface) {
            return Err(Error::InvalidStep { index, reason });
        }
        k.remove(&step.free, &step.coface);
    }
    let end = k.complex();
    if end != trace.end {
        return Ok(false);
    }
    Ok(reduced_betti(&trace.start, field)?.support() == reduced_betti(&end, field)?.support())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cx(facets: &[&[i64]], n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    fn set(vs: &[u32]) -> BTreeSet<u32> {
        vs.iter().copied().collect()
    }

    #[test]
    fn free_faces_of_a_triangle() {
        let pairs = free_faces(&cx(&[&[1, 2, 3]], 3)).unwrap();
        let want: Vec<(Face, Face)> = [[1, 2], [1, 3], [2, 3]]
            .into_iter()
            .map(|b| (Face::from(b), Face::from([1, 2, 3])))
            .collect();
        assert_eq!(pairs, want);
    }

    #[test]
    fn closed_surface_has_no_free_faces() {
        let s = cx(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], 4);
        assert!(free_faces(&s).unwrap().is_empty());
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let pairs = free_faces(&cx(&[&[1, 2, 3], &[2, 3, 4]], 4)).unwrap();
        let betas: Vec<Face> = pairs.into_iter().map(|(b, _)| b).collect();
        // vertices lie in at least two edges, so only the outer edges are free
        assert_eq!(
            betas,
            vec![Face::from([1, 2]), Face::from([1, 3]), Face::from([2, 4]), Face::from([3, 4])]
        );
    }

    #[test]
    fn eliminating_two_vertices() {
        let a = cx(&[&[1, 2, 3], &[2, 3, 4]], 4);
        let out = collapse_onto(&a, &set(&[1, 4])).unwrap();
        assert!(out.is_success());
        let t = out.trace();
        assert_eq!(t.end, cx(&[&[2, 3]], 4));
        assert_eq!(t.steps.len(), 4);
        assert_eq!(t.steps[0].free, Face::from([1, 3]));
        assert!(verify_trace(t, Q).unwrap());
    }

    #[test]
    fn counterexample_fails() {
        let a = cx(&[&[1, 2, 3], &[1, 2, 4]], 5);
        let out = collapse_onto(&a, &set(&[1, 2, 5])).unwrap();
        assert!(!out.is_success());
        let avoid = a.faces_avoiding(&set(&[1, 2, 5]));
        assert_eq!(reduced_betti(&avoid, Q).unwrap().get(0), 1);
        assert_eq!(reduced_betti(&a, Q).unwrap().get(0), 0);
    }

    #[test]
    fn triangle_to_vertex() {
        let tri = cx(&[&[1, 2, 3]], 3);
        let trace = CollapseTrace {
            start: tri,
            end: cx(&[&[1]], 3),
            steps: vec![
                CollapseStep { free: Face::from([2, 3]), coface: Face::from([1, 2, 3]) },
                CollapseStep { free: Face::from([3]), coface: Face::from([1, 3]) },
                CollapseStep { free: Face::from([2]), coface: Face::from([1, 2]) },
            ],
        };
        assert!(verify_trace(&trace, Q).unwrap());
    }

    #[test]
    fn forged_steps_are_rejected() {
        let tri = cx(&[&[1, 2, 3]], 3);
        let trace = CollapseTrace {
            start: tri.clone(),
            end: tri.clone(),
            steps: vec![CollapseStep { free: Face::from([1]), coface: Face::from([1, 2]) }],
        };
        assert!(matches!(verify_trace(&trace, Q), Err(Error::InvalidStep { index: 0, .. })));
        let wrong_end = CollapseTrace {
            start: tri.clone(),
            end: tri,
            steps: vec![CollapseStep { free: Face::from([2, 3]), coface: Face::from([1, 2, 3]) }],
        };
        assert!(!verify_trace(&wrong_end, Q).unwrap());
    }

    #[test]
    fn outcome_json() {
        let a = cx(&[&[1, 2, 3], &[2, 3, 4]], 4);
        let v = serde_json::to_value(collapse_onto(&a, &set(&[1, 4])).unwrap()).unwrap();
        assert_eq!(v["status"], "success");
        assert_eq!(v["trace"]["steps"][0], serde_json::json!({"free": [1, 3], "coface": [1, 2, 3]}));
        assert_eq!(v["trace"]["end"], serde_json::json!([[2, 3]]));
    }
}
