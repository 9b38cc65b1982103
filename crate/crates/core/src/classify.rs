//! Combinatorial and homological classification of complexes.
//!
//! Every predicate that fails reports its first witness in canonical face
//! order, so a failing verdict can be replayed by hand.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hochster::{buchsbaum_with, first_low_homology, LinkHomology};
use crate::homology::{reduced_betti, BettiVector};
use crate::simplicial::{ComplexKind, Face, SimplicialComplex};

/// Counterexample attached to a failed predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Face(Face),
    /// A face together with the offending homological degree of its link.
    FaceDegree { face: Face, degree: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalPseudomanifoldReport {
    pub pure: bool,
    pub normal: bool,
    pub ridge_condition: bool,
    pub holds: bool,
    pub pure_witness: Option<Face>,
    pub normal_witness: Option<Face>,
    pub ridge_witness: Option<Face>,
}

impl NormalPseudomanifoldReport {
    /// First failing check in the order purity, normality, ridges.
    pub fn witness(&self) -> Option<&Face> {
        self.pure_witness
            .as_ref()
            .or(self.normal_witness.as_ref())
            .or(self.ridge_witness.as_ref())
    }
}

fn require_nonempty(complex: &SimplicialComplex) -> Result<i32> {
    match complex.kind() {
        ComplexKind::Ordinary => Ok(complex.dim().expect("ordinary complexes have a dimension")),
        found => Err(Error::Degenerate {
            expected: "nonempty",
            found,
        }),
    }
}

/// Whether a complex is path connected; the Empty complex is not.
pub fn is_connected(complex: &SimplicialComplex) -> bool {
    let facets = complex.facets();
    if facets.is_empty() || facets[0].is_empty() {
        return false;
    }
    // Union-find over vertices, one union per facet.
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(parent: &mut HashMap<u32, u32>, v: u32) -> u32 {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    for f in facets {
        let vs = f.vertices();
        let root = find(&mut parent, vs[0]);
        for &v in &vs[1..] {
            let r = find(&mut parent, v);
            parent.insert(r, root);
        }
    }
    let roots: BTreeSet<u32> = complex
        .vertex_set()
        .into_iter()
        .map(|v| find(&mut parent, v))
        .collect();
    roots.len() == 1
}

/// Ridges with the number of top-dimensional facets containing each.
fn ridge_counts(complex: &SimplicialComplex, d: i32) -> BTreeMap<Face, usize> {
    let mut counts = BTreeMap::new();
    for f in complex.facets().iter().filter(|f| f.dim() == d) {
        for r in f.boundary_faces() {
            *counts.entry(r).or_insert(0) += 1;
        }
    }
    counts
}

/// Purity, normality (connected links for faces of dimension at most
/// `dim Δ - 2`, the empty face included) and the ridge condition.
pub fn normal_pseudomanifold_report(complex: &SimplicialComplex) -> Result<NormalPseudomanifoldReport> {
    let d = require_nonempty(complex)?;
    let pure_witness = complex.facets().iter().find(|f| f.dim() != d).cloned();
    let mut normal_witness = None;
    for k in -1..=d - 2 {
        let found = complex
            .faces_of_dim(k)?
            .into_iter()
            .find(|s| !is_connected(&complex.link_unchecked(s)));
        if found.is_some() {
            normal_witness = found;
            break;
        }
    }
    let ridge_witness = ridge_counts(complex, d)
        .into_iter()
        .find(|&(_, c)| c != 2)
        .map(|(r, _)| r);
    let (pure, normal, ridge_condition) = (
        pure_witness.is_none(),
        normal_witness.is_none(),
        ridge_witness.is_none(),
    );
    Ok(NormalPseudomanifoldReport {
        pure,
        normal,
        ridge_condition,
        holds: pure && normal && ridge_condition,
        pure_witness,
        normal_witness,
        ridge_witness,
    })
}

/// Facets (0-based) reachable from the first facet through shared ridges.
fn facet_ridge_component(complex: &SimplicialComplex) -> BTreeSet<usize> {
    let facets = complex.facets();
    let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary_faces() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        if !seen.insert(i) {
            continue;
        }
        for r in facets[i].boundary_faces() {
            stack.extend(by_ridge[&r].iter().copied().filter(|j| !seen.contains(j)));
        }
    }
    seen
}

/// First facet not reachable from the first one, if any.
fn strong_connectivity_witness(complex: &SimplicialComplex) -> Option<Face> {
    let comp = facet_ridge_component(complex);
    complex
        .facets()
        .iter()
        .enumerate()
        .find(|(i, _)| !comp.contains(i))
        .map(|(_, f)| f.clone())
}

/// The facet–ridge graph is connected.
pub fn is_strongly_connected(complex: &SimplicialComplex) -> Result<bool> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    if complex.facets().is_empty() {
        return Ok(false);
    }
    Ok(strong_connectivity_witness(complex).is_none())
}

/// Orientability of a pseudomanifold: `H̃_{dim Δ}(Δ; Q) ≠ 0`.
pub fn is_orientable(complex: &SimplicialComplex) -> Result<bool> {
    let d = match complex.kind() {
        ComplexKind::Ordinary => complex.dim().unwrap_or(-1),
        _ => return Err(Error::NotAPseudomanifold("complex has no vertices".into())),
    };
    let np = normal_pseudomanifold_report(complex)?;
    if !np.pure {
        return Err(Error::NotAPseudomanifold("not pure".into()));
    }
    if let Some(r) = np.ridge_witness {
        return Err(Error::NotAPseudomanifold(format!(
            "ridge {r} does not lie in exactly two facets"
        )));
    }
    if let Some(f) = strong_connectivity_witness(complex) {
        return Err(Error::NotAPseudomanifold(format!(
            "facet {f} is not reachable through ridges"
        )));
    }
    Ok(reduced_betti(complex, FieldSpec::Rationals)?.get(d) != 0)
}

fn is_sphere_homology(b: &BettiVector, dim: i32) -> bool {
    b.iter().all(|(j, v)| v == if j == dim { 1 } else { 0 })
}

fn manifold_witness(links: &LinkHomology<'_>) -> Result<Option<Face>> {
    let complex = links.complex();
    for sigma in complex.faces()?.into_iter().filter(|s| !s.is_empty()) {
        let link_dim = complex.dim().unwrap_or(-1) - sigma.len() as i32;
        if !is_sphere_homology(&links.link_betti(&sigma)?, link_dim) {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// `(homology manifold, homology sphere)` over `field`.
pub fn is_homology_manifold(complex: &SimplicialComplex, field: FieldSpec) -> Result<(bool, bool)> {
    require_nonempty(complex)?;
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let links = LinkHomology::new(complex, field)?;
    let (manifold, sphere) = manifold_with(&links)?;
    Ok((manifold.is_none(), sphere.is_none()))
}

/// Witnesses for the manifold and sphere checks; `∅` marks a complex that is
/// a manifold without sphere homology.
fn manifold_with(links: &LinkHomology<'_>) -> Result<(Option<Face>, Option<Face>)> {
    let manifold = manifold_witness(links)?;
    let sphere = match &manifold {
        Some(f) => Some(f.clone()),
        None => {
            let d = links.complex().dim().unwrap_or(-1);
            (!is_sphere_homology(&links.link_betti(&Face::empty())?, d)).then(Face::empty)
        }
    };
    Ok((manifold, sphere))
}

/// Normal pseudomanifold with `H̃_{dim Δ}(Δ; k) ≠ 0`.
pub fn is_quasi_gorenstein(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let d = require_nonempty(complex)?;
    Ok(normal_pseudomanifold_report(complex)?.holds && reduced_betti(complex, field)?.get(d) != 0)
}

/// Gorenstein iff the core is Empty, or is quasi-Gorenstein and
/// Cohen–Macaulay.
pub fn is_gorenstein(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_nonempty(complex)?;
    let core = complex.core();
    if core.kind() == ComplexKind::Empty {
        return Ok(true);
    }
    if !is_quasi_gorenstein(&core, field)? {
        return Ok(false);
    }
    let links = LinkHomology::new(&core, field)?;
    Ok(first_low_homology(&links, |_| true, |_, ld| ld)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub pure: bool,
    pub strongly_connected: bool,
    pub normal: bool,
    pub pseudomanifold_ridge_condition: bool,
    pub normal_pseudomanifold: bool,
    pub orientable: bool,
    pub buchsbaum: bool,
    pub homology_manifold: bool,
    pub homology_sphere: bool,
    pub cohen_macaulay: bool,
    pub quasi_gorenstein: bool,
    pub gorenstein: bool,
    pub field: FieldSpec,
    pub witnesses: BTreeMap<String, Option<Witness>>,
}

/// Runs every predicate, sharing link homology between them.
///
/// Predicates whose preconditions fail (orientability off pseudomanifolds,
/// manifold checks on impure complexes) are reported false.
pub fn classify(complex: &SimplicialComplex, field: FieldSpec) -> Result<ClassificationReport> {
    let d = require_nonempty(complex)?;
    let np = normal_pseudomanifold_report(complex)?;
    let links = LinkHomology::new(complex, field)?;

    let sc_witness = if np.pure { strong_connectivity_witness(complex) } else { None };
    let strongly_connected = np.pure && sc_witness.is_none();
    let orientable = np.pure
        && np.ridge_condition
        && strongly_connected
        && reduced_betti(complex, FieldSpec::Rationals)?.get(d) != 0;

    let buchsbaum = buchsbaum_with(&links)?;
    let cm_witness = first_low_homology(&links, |_| true, |_, ld| ld)?;
    let (manifold_w, sphere_w) = if np.pure {
        manifold_with(&links)?
    } else {
        (np.pure_witness.clone(), np.pure_witness.clone())
    };
    let top_nonzero = links.link_betti(&Face::empty())?.get(d) != 0;
    let quasi_gorenstein = np.holds && top_nonzero;
    let gorenstein = is_gorenstein(complex, field)?;

    let face = |f: &Option<Face>| f.clone().map(Witness::Face);
    let fd = |w: &Option<(Face, i32)>| {
        w.clone()
            .map(|(face, degree)| Witness::FaceDegree { face, degree })
    };
    let qg_witness = match np.witness() {
        Some(f) => Some(f.clone()),
        None => (!top_nonzero).then(Face::empty),
    };
    let mut witnesses = BTreeMap::new();
    witnesses.insert("pure".into(), face(&np.pure_witness));
    witnesses.insert("strongly_connected".into(), face(&sc_witness.clone().or(np.pure_witness.clone())));
    witnesses.insert("normal".into(), face(&np.normal_witness));
    witnesses.insert("pseudomanifold_ridge_condition".into(), face(&np.ridge_witness));
    witnesses.insert("normal_pseudomanifold".into(), face(&np.witness().cloned()));
    witnesses.insert("buchsbaum".into(), fd(&buchsbaum.witness));
    witnesses.insert("homology_manifold".into(), face(&manifold_w));
    witnesses.insert("homology_sphere".into(), face(&sphere_w));
    witnesses.insert("cohen_macaulay".into(), fd(&cm_witness));
    witnesses.insert("quasi_gorenstein".into(), face(&qg_witness));

    Ok(ClassificationReport {
        pure: np.pure,
        strongly_connected,
        normal: np.normal,
        pseudomanifold_ridge_condition: np.ridge_condition,
        normal_pseudomanifold: np.holds,
        orientable,
        buchsbaum: buchsbaum.holds,
        homology_manifold: manifold_w.is_none(),
        homology_sphere: sphere_w.is_none(),
        cohen_macaulay: cm_witness.is_none(),
        quasi_gorenstein,
        gorenstein,
        field,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn cx(facets: &[&[i64]], n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    fn sphere() -> SimplicialComplex {
        cx(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], 4)
    }

    fn rp2() -> SimplicialComplex {
        cx(
            &[
                &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
                &[2, 3, 5], &[2, 4, 5], &[2, 4, 6], &[3, 4, 6], &[3, 5, 6],
            ],
            6,
        )
    }

    fn moebius() -> SimplicialComplex {
        cx(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 4, 5], &[1, 2, 5]], 5)
    }

    #[test]
    fn sphere_is_everything() {
        let r = classify(&sphere(), Q).unwrap();
        assert!(r.normal_pseudomanifold && r.orientable && r.homology_sphere);
        assert!(r.cohen_macaulay && r.quasi_gorenstein && r.gorenstein);
        assert!(r.witnesses.values().all(Option::is_none));
    }

    #[test]
    fn moebius_fails_the_ridge_condition() {
        let r = normal_pseudomanifold_report(&moebius()).unwrap();
        assert!(r.pure && r.normal && !r.ridge_condition && !r.holds);
        assert_eq!(r.ridge_witness, Some(Face::from([1, 3])));
        assert!(matches!(is_orientable(&moebius()), Err(Error::NotAPseudomanifold(_))));
    }

    #[test]
    fn wedge_is_not_normal() {
        let w = cx(&[&[1, 2, 3], &[1, 4, 5]], 5);
        let r = normal_pseudomanifold_report(&w).unwrap();
        assert!(!r.normal);
        assert_eq!(r.normal_witness, Some(Face::from([1])));
        assert_eq!(is_homology_manifold(&w, Q).unwrap(), (false, false));
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(&sphere()).unwrap());
        let two = cx(&[&[1, 2, 3], &[4, 5, 6]], 6);
        assert!(!is_strongly_connected(&two).unwrap());
        assert_eq!(is_strongly_connected(&cx(&[&[1, 2], &[3]], 3)), Err(Error::NotPure));
    }

    #[test]
    fn projective_plane_depends_on_the_field() {
        assert!(!is_orientable(&rp2()).unwrap());
        assert!(is_quasi_gorenstein(&rp2(), GF2).unwrap());
        assert!(!is_quasi_gorenstein(&rp2(), Q).unwrap());
        assert!(is_gorenstein(&rp2(), Q).unwrap() == false);
        let r = classify(&rp2(), Q).unwrap();
        assert!(r.cohen_macaulay && !r.quasi_gorenstein && r.homology_manifold);
        assert_eq!(r.witnesses["quasi_gorenstein"], Some(Witness::Face(Face::empty())));
    }

    #[test]
    fn gorenstein_through_the_core() {
        assert!(is_gorenstein(&SimplicialComplex::simplex(3), Q).unwrap());
        let cone = cx(&[&[1, 2, 5], &[2, 3, 5], &[3, 4, 5], &[1, 4, 5]], 5);
        assert!(is_gorenstein(&cone, Q).unwrap());
        assert!(!is_quasi_gorenstein(&cone, Q).unwrap());
    }

    #[test]
    fn four_cycle_and_points() {
        let c4 = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        for f in FieldSpec::standard() {
            assert!(is_quasi_gorenstein(&c4, f).unwrap());
        }
        let pts = cx(&[&[1], &[2]], 2);
        assert_eq!(is_homology_manifold(&pts, Q).unwrap(), (true, true));
        assert!(is_quasi_gorenstein(&pts, Q).unwrap());
    }

    #[test]
    fn degenerate_inputs() {
        assert!(normal_pseudomanifold_report(&SimplicialComplex::empty(3)).is_err());
        assert!(classify(&SimplicialComplex::void(3), Q).is_err());
    }

    #[test]
    fn report_json_is_flat() {
        let v = serde_json::to_value(classify(&moebius(), Q).unwrap()).unwrap();
        assert_eq!(v["pseudomanifold_ridge_condition"], false);
        assert_eq!(v["field"], "Q");
        assert_eq!(v["witnesses"]["pseudomanifold_ridge_condition"], serde_json::json!([1, 3]));
        assert_eq!(
            v["witnesses"]["cohen_macaulay"],
            serde_json::json!({"face": [], "degree": 1})
        );
    }
}
