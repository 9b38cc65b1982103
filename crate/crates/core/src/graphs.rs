//! The graphs `Γ_t` on the facets of a pure complex.
//!
//! Facets `σ, τ` are adjacent in `Γ_t` when the sum of their minimal primes
//! has height at most `t`, i.e. when `|σ ∩ τ| ≥ dim Δ + 1 - t`. `Γ_1` is the
//! facet–ridge dual graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// `Γ_t` on 0-based facet indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    t: usize,
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GammaGraph {
    /// Graph on `order` vertices; edges are normalized to `(min, max)`.
    pub fn from_edges(t: usize, order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        GammaGraph { t, order, edges }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Induced subgraph on the complement of `removed`, relabelled densely.
    pub fn without(&self, removed: &BTreeSet<usize>) -> GammaGraph {
        let keep: BTreeMap<usize, usize> = (0..self.order)
            .filter(|v| !removed.contains(v))
            .enumerate()
            .map(|(new, old)| (old, new))
            .collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(a, b)| Some((*keep.get(a)?, *keep.get(b)?)));
        GammaGraph::from_edges(self.t, keep.len(), edges)
    }

    /// DOT text with 1-based facet numbers.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph gamma_{} {{\n", self.t);
        for v in 0..self.order {
            let _ = writeln!(out, "  {};", v + 1);
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  {} -- {};", a + 1, b + 1);
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for GammaGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let adjacency: BTreeMap<String, Vec<usize>> = self
            .neighbors()
            .into_iter()
            .enumerate()
            .map(|(v, ns)| ((v + 1).to_string(), ns.into_iter().map(|n| n + 1).collect()))
            .collect();
        let mut st = s.serialize_struct("GammaGraph", 3)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("vertices", &(1..=self.order).collect::<Vec<_>>())?;
        st.serialize_field("adjacency", &adjacency)?;
        st.end()
    }
}

/// `dim Δ` of a pure, nonempty complex.
fn pure_dim(complex: &SimplicialComplex) -> Result<i32> {
    let d = complex.require_ordinary()?;
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(d)
}

fn build(complex: &SimplicialComplex, d: i32, t: usize) -> GammaGraph {
    let facets = complex.facets();
    let need = d + 1 - t as i32;
    let mut edges = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if facets[i].intersection_len(&facets[j]) as i32 >= need {
                edges.push((i, j));
            }
        }
    }
    GammaGraph::from_edges(t, facets.len(), edges)
}

/// `Γ_t(Δ)` for `0 ≤ t ≤ dim Δ + 1`.
pub fn gamma_graph(complex: &SimplicialComplex, t: usize) -> Result<GammaGraph> {
    let d = pure_dim(complex)?;
    let max = (d + 1) as usize;
    if t > max {
        return Err(Error::TOutOfRange { t, max });
    }
    Ok(build(complex, d, t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub components: usize,
    pub two_connected: bool,
    /// 0-based vertices whose removal disconnects their component.
    pub articulation_points: Vec<usize>,
    /// At most two vertices: 2-connectivity holds only in the trivial sense.
    pub degenerate: bool,
}

/// Components and articulation points by depth-first search (Tarjan).
pub fn connectivity_report(graph: &GammaGraph) -> ConnectivityReport {
    let n = graph.order();
    let adj = graph.neighbors();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut cut = vec![false; n];
    let mut timer = 0;
    let mut components = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        components += 1;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            cut[root] = true;
        }
    }

    let articulation_points: Vec<usize> = (0..n).filter(|&v| cut[v]).collect();
    ConnectivityReport {
        components,
        two_connected: components == 1 && articulation_points.is_empty(),
        articulation_points,
        degenerate: n <= 2,
    }
}

/// Whether `Γ_1` stays connected after deleting the facets `removed`
/// (0-based), which must be pairwise non-adjacent in `Γ_2`.
///
/// The error reports the offending pair as 1-based facet numbers.
pub fn removal_experiment(complex: &SimplicialComplex, removed: &BTreeSet<usize>) -> Result<bool> {
    let d = pure_dim(complex)?;
    let len = complex.facets().len();
    if let Some(&index) = removed.iter().find(|&&i| i >= len) {
        return Err(Error::IndexOutOfRange { index, len });
    }
    let gamma2 = build(complex, d, 2);
    for &a in removed {
        for &b in removed.range(a + 1..) {
            if gamma2.has_edge(a, b) {
                return Err(Error::GammaTwoNotIsolated(a + 1, b + 1));
            }
        }
    }
    let rest = build(complex, d, 1).without(removed);
    Ok(rest.order() == 0 || connectivity_report(&rest).components == 1)
}

/// All nonempty facet sets (0-based) that are independent in `Γ_2`.
pub fn gamma_two_independent_sets(complex: &SimplicialComplex) -> Result<Vec<BTreeSet<usize>>> {
    let d = pure_dim(complex)?;
    let adj = build(complex, d, 2).neighbors();
    let n = adj.len();
    let mut out = Vec::new();
    fn extend(
        start: usize,
        n: usize,
        adj: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        for v in start..n {
            if current.iter().any(|u| adj[v].binary_search(u).is_ok()) {
                continue;
            }
            current.push(v);
            out.push(current.iter().copied().collect());
            extend(v + 1, n, adj, current, out);
            current.pop();
        }
    }
    extend(0, n, &adj, &mut Vec::new(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[i64]], n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied()), n).unwrap()
    }

    fn sphere() -> SimplicialComplex {
        cx(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], 4)
    }

    fn path(n: usize) -> GammaGraph {
        GammaGraph::from_edges(1, n, (1..n).map(|i| (i - 1, i)))
    }

    #[test]
    fn sphere_graphs() {
        assert!(gamma_graph(&sphere(), 0).unwrap().edges().is_empty());
        assert_eq!(gamma_graph(&sphere(), 1).unwrap().edges().len(), 6);
        assert_eq!(
            gamma_graph(&sphere(), 4),
            Err(Error::TOutOfRange { t: 4, max: 3 })
        );
        assert_eq!(gamma_graph(&cx(&[&[1, 2], &[3]], 3), 1), Err(Error::NotPure));
    }

    #[test]
    fn four_cycle_dual_graph() {
        let c4 = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]], 4);
        // canonical order: 12, 14, 23, 34
        let g = gamma_graph(&c4, 1).unwrap();
        let want: BTreeSet<_> = [(0, 1), (0, 2), (1, 3), (2, 3)].into_iter().collect();
        assert_eq!(g.edges(), &want);
        let r = connectivity_report(&g);
        assert!(r.two_connected && !r.degenerate);
    }

    #[test]
    fn articulation_points() {
        let r = connectivity_report(&path(3));
        assert_eq!((r.components, r.two_connected), (1, false));
        assert_eq!(r.articulation_points, vec![1]);
        let k4 = GammaGraph::from_edges(1, 4, (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))));
        let r = connectivity_report(&k4);
        assert_eq!((r.components, r.two_connected, r.articulation_points.len()), (1, true, 0));
        // two triangles glued at a vertex
        let bow = GammaGraph::from_edges(1, 5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(connectivity_report(&bow).articulation_points, vec![2]);
        let r = connectivity_report(&GammaGraph::from_edges(1, 2, []));
        assert_eq!((r.components, r.two_connected, r.degenerate), (2, false, true));
    }

    #[test]
    fn removal() {
        let one: BTreeSet<usize> = [0].into_iter().collect();
        assert!(removal_experiment(&sphere(), &one).unwrap());
        let two: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(
            removal_experiment(&sphere(), &two),
            Err(Error::GammaTwoNotIsolated(1, 2))
        );
    }

    #[test]
    fn independent_sets_of_the_sphere_are_singletons() {
        let sets = gamma_two_independent_sets(&sphere()).unwrap();
        assert_eq!(sets.len(), 4);
        assert!(sets.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn json_and_dot_are_one_based() {
        let g = gamma_graph(&sphere(), 0).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["vertices"], serde_json::json!([1, 2, 3, 4]));
        assert_eq!(v["adjacency"]["1"], serde_json::json!([]));
        let dot = path(2).to_dot();
        assert!(dot.contains("1 -- 2;"));
    }
}
