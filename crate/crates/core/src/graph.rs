//! Weighted graphs, vertex sets, and subset families.
//!
//! A weighted graph (G, mu) is a finite connected simple graph together with a
//! symmetric weight function mu on vertex pairs that is positive exactly on
//! edges. The vertex weight mu(x) is the sum of incident edge weights and
//! mu(Omega) sums vertex weights over a set. Distances are hop counts: edge
//! weights never enter the metric.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Finite connected simple graph with symmetric positive edge weights.
///
/// Immutable after construction; all accessors are read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    /// Adjacency lists sorted by neighbor index; each undirected edge appears
    /// in both endpoint lists with the same weight.
    adj: Vec<Vec<(usize, f64)>>,
    /// Cached vertex weights mu(x).
    vertex_weights: Vec<f64>,
    /// Cached mu(V) = sum of vertex weights = twice the total edge weight.
    total_weight: f64,
    labels: Option<Vec<String>>,
}

impl WeightedGraph {
    /// Builds a graph from an undirected edge list over vertices `0..n`.
    ///
    /// Rejects self-loops, nonpositive or non-finite weights, duplicate or
    /// asymmetric edge entries, isolated vertices, and disconnected input.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { index: u, count: n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, count: n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidEdgeWeight { x: u, y: v, weight: w });
            }
            if let Some(&(_, prev)) = adj[u].iter().find(|&&(y, _)| y == v) {
                if prev != w {
                    return Err(Error::AsymmetricWeight {
                        x: u,
                        y: v,
                        forward: prev,
                        backward: w,
                    });
                }
                return Err(Error::InvalidEdgeWeight { x: u, y: v, weight: w });
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(y, _)| y);
        }
        Self::finish(n, adj, None)
    }

    /// Builds a graph from a full weight matrix, rejecting asymmetric input.
    pub fn from_weight_matrix(weights: &[Vec<f64>]) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges = Vec::new();
        for x in 0..n {
            if weights[x].len() != n {
                return Err(Error::InvalidParameter {
                    name: "weights",
                    reason: format!("row {x} has length {} != {n}", weights[x].len()),
                });
            }
            if weights[x][x] != 0.0 {
                return Err(Error::SelfLoop(x));
            }
            for y in (x + 1)..n {
                let w = weights[x][y];
                let back = weights[y][x];
                if w != back {
                    return Err(Error::AsymmetricWeight {
                        x,
                        y,
                        forward: w,
                        backward: back,
                    });
                }
                if w < 0.0 || !w.is_finite() {
                    return Err(Error::InvalidEdgeWeight { x, y, weight: w });
                }
                if w > 0.0 {
                    edges.push((x, y, w));
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    fn finish(n: usize, adj: Vec<Vec<(usize, f64)>>, labels: Option<Vec<String>>) -> Result<Self> {
        for (x, list) in adj.iter().enumerate() {
            if list.is_empty() {
                return Err(if n == 1 {
                    Error::EmptyGraph
                } else {
                    Error::IsolatedVertex(x)
                });
            }
        }
        // Connectivity check by BFS from vertex 0.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if let Some(unreached) = seen.iter().position(|&s| !s) {
            return Err(Error::Disconnected { unreached });
        }
        let vertex_weights: Vec<f64> = adj
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        let total_weight = vertex_weights.iter().sum();
        Ok(WeightedGraph {
            n,
            adj,
            vertex_weights,
            total_weight,
            labels,
        })
    }

    /// Attaches vertex labels (must match the vertex count).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParameter {
                name: "labels",
                reason: format!("expected {} labels, got {}", self.n, labels.len()),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Neighbors of `x` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adj[x]
    }

    /// Edge weight mu[x,y]; zero when {x,y} is not an edge.
    pub fn edge_weight(&self, x: usize, y: usize) -> f64 {
        self.adj[x]
            .binary_search_by_key(&y, |&(v, _)| v)
            .map(|i| self.adj[x][i].1)
            .unwrap_or(0.0)
    }

    /// Undirected edges (x < y) with weights.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for &(y, w) in &self.adj[x] {
                if x < y {
                    out.push((x, y, w));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Vertex weight mu(x), strictly positive for every vertex.
    pub fn vertex_weight(&self, x: usize) -> Result<f64> {
        if x >= self.n {
            return Err(Error::VertexOutOfRange {
                index: x,
                count: self.n,
            });
        }
        Ok(self.vertex_weights[x])
    }

    /// Unchecked vertex weight for hot paths.
    pub fn mu(&self, x: usize) -> f64 {
        self.vertex_weights[x]
    }

    /// mu(V), twice the total edge weight.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// mu(Omega): sum of vertex weights over the set; zero on the empty set.
    pub fn set_volume(&self, set: &VertexSet) -> f64 {
        // The empty f64 sum is -0.0; keep volumes at plain zero.
        set.iter().map(|x| self.vertex_weights[x]).sum::<f64>().max(0.0)
    }

    /// Hop distances from vertex `x` to every vertex (multi-source BFS with a
    /// single source). Finite for all vertices by connectivity.
    pub fn distances_from_vertex(&self, x: usize) -> Vec<usize> {
        self.distances_from(std::iter::once(x))
    }

    /// Hop distances from a set of sources to every vertex.
    pub fn distances_from<I: IntoIterator<Item = usize>>(&self, sources: I) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x] + 1;
            for &(y, _) in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = d;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Graph distance: minimum hop count between `x` and `y`.
    pub fn graph_distance(&self, x: usize, y: usize) -> Result<usize> {
        for v in [x, y] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    index: v,
                    count: self.n,
                });
            }
        }
        Ok(self.distances_from_vertex(x)[y])
    }

    /// Minimum hop distance between two nonempty sets.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        if a.is_empty() {
            return Err(Error::EmptySet {
                context: "set_distance",
            });
        }
        if b.is_empty() {
            return Err(Error::EmptySet {
                context: "set_distance",
            });
        }
        let dist = self.distances_from(a.iter());
        Ok(b.iter().map(|y| dist[y]).min().unwrap())
    }

    /// Vertex boundary of Omega: members with a neighbor outside Omega.
    pub fn vertex_boundary(&self, omega: &VertexSet) -> VertexSet {
        let mask = omega.mask();
        let members = omega
            .iter()
            .filter(|&x| self.adj[x].iter().any(|&(y, _)| !mask[y]))
            .collect();
        VertexSet::from_sorted(self.n, members)
    }

    /// Closed r-neighborhood of a nonempty set in the hop metric.
    pub fn ball(&self, a: &VertexSet, r: usize) -> Result<VertexSet> {
        if a.is_empty() {
            return Err(Error::EmptySet { context: "ball" });
        }
        let dist = self.distances_from(a.iter());
        let members = (0..self.n).filter(|&x| dist[x] <= r).collect();
        Ok(VertexSet::from_sorted(self.n, members))
    }

    /// Graph diameter in hops.
    pub fn diameter(&self) -> usize {
        (0..self.n)
            .map(|x| self.distances_from_vertex(x).into_iter().max().unwrap())
            .max()
            .unwrap()
    }

    /// Rescales all edge weights by one common factor so that mu(V) = 1.
    pub fn normalize(&self) -> WeightedGraph {
        self.scale_weights(1.0 / self.total_weight)
    }

    /// Rescales all edge weights by `factor` (must be positive).
    pub fn scale_weights(&self, factor: f64) -> WeightedGraph {
        let adj = self
            .adj
            .iter()
            .map(|list| list.iter().map(|&(y, w)| (y, w * factor)).collect())
            .collect::<Vec<Vec<(usize, f64)>>>();
        let vertex_weights: Vec<f64> = adj
            .iter()
            .map(|list: &Vec<(usize, f64)>| list.iter().map(|&(_, w)| w).sum())
            .collect();
        let total_weight = vertex_weights.iter().sum();
        WeightedGraph {
            n: self.n,
            adj,
            vertex_weights,
            total_weight,
            labels: self.labels.clone(),
        }
    }

    /// The full vertex set.
    pub fn full_set(&self) -> VertexSet {
        VertexSet::from_sorted(self.n, (0..self.n).collect())
    }
}

/// A subset of the vertices of a specific graph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSet {
    n: usize,
    members: Vec<usize>,
}

impl VertexSet {
    /// Builds a set from arbitrary indices, sorting and deduplicating.
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = indices.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last >= n {
                return Err(Error::VertexOutOfRange {
                    index: last,
                    count: n,
                });
            }
        }
        Ok(VertexSet { n, members })
    }

    pub(crate) fn from_sorted(n: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { n, members }
    }

    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            members: Vec::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Boolean membership mask of length `n`.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &x in &self.members {
            mask[x] = true;
        }
        mask
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        VertexSet { n: self.n, members }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        VertexSet { n: self.n, members }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| !other.contains(x))
            .collect();
        VertexSet { n: self.n, members }
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.mask();
        let members = (0..self.n).filter(|&x| !mask[x]).collect();
        VertexSet { n: self.n, members }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&x| !other.contains(x))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// An ordered family of pairwise-disjoint nonempty vertex sets with cached
/// volumes.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetFamily {
    graph_vertices: usize,
    sets: Vec<VertexSet>,
    volumes: Vec<f64>,
}

impl SubsetFamily {
    pub fn new(graph: &WeightedGraph, sets: Vec<VertexSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::TooFewSets {
                required: 1,
                got: 0,
            });
        }
        let n = graph.vertex_count();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet {
                    context: "subset family",
                });
            }
            if set.universe_size() != n {
                return Err(Error::InvalidParameter {
                    name: "sets",
                    reason: format!(
                        "set {i} is over {} vertices, graph has {n}",
                        set.universe_size()
                    ),
                });
            }
            for x in set.iter() {
                if let Some(prev) = owner[x] {
                    return Err(Error::SetsNotDisjoint {
                        a: prev,
                        b: i,
                        vertex: x,
                    });
                }
                owner[x] = Some(i);
            }
        }
        let volumes = sets.iter().map(|s| graph.set_volume(s)).collect();
        Ok(SubsetFamily {
            graph_vertices: n,
            sets,
            volumes,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn set(&self, alpha: usize) -> &VertexSet {
        &self.sets[alpha]
    }

    /// Cached mu(A_alpha).
    pub fn volume(&self, alpha: usize) -> f64 {
        self.volumes[alpha]
    }

    pub fn volumes(&self) -> &[f64] {
        &self.volumes
    }

    pub fn graph_vertices(&self) -> usize {
        self.graph_vertices
    }

    /// Minimum pairwise hop distance D({A_alpha}); requires at least 2 sets.
    pub fn separation(&self, graph: &WeightedGraph) -> Result<usize> {
        if self.sets.len() < 2 {
            return Err(Error::TooFewSets {
                required: 2,
                got: self.sets.len(),
            });
        }
        let mut best = usize::MAX;
        for i in 0..self.sets.len() {
            let dist = graph.distances_from(self.sets[i].iter());
            for j in (i + 1)..self.sets.len() {
                let d = self.sets[j].iter().map(|y| dist[y]).min().unwrap();
                best = best.min(d);
            }
        }
        Ok(best)
    }

    /// Separation against a designated boundary set: the minimum of the
    /// pairwise separation (when there are >= 2 sets) and each set's distance
    /// to the boundary. Sets must be disjoint from the boundary.
    pub fn boundary_separation(
        &self,
        graph: &WeightedGraph,
        boundary: &VertexSet,
    ) -> Result<usize> {
        if boundary.is_empty() {
            return Err(Error::EmptySet {
                context: "boundary_separation",
            });
        }
        for (i, set) in self.sets.iter().enumerate() {
            if let Some(v) = set.iter().find(|&x| boundary.contains(x)) {
                return Err(Error::SetIntersectsBoundary { set: i, vertex: v });
            }
        }
        let bdist = graph.distances_from(boundary.iter());
        let to_boundary = self
            .sets
            .iter()
            .map(|s| s.iter().map(|x| bdist[x]).min().unwrap())
            .min()
            .unwrap();
        if self.sets.len() >= 2 {
            Ok(self.separation(graph)?.min(to_boundary))
        } else {
            Ok(to_boundary)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph, path_graph, random_weighted_graph, WeightDist};
    use proptest::prelude::*;

    fn p3() -> WeightedGraph {
        path_graph(3)
    }

    #[test]
    fn vertex_weight_path() {
        let g = p3();
        assert_eq!(g.vertex_weight(1).unwrap(), 2.0);
        assert_eq!(g.vertex_weight(0).unwrap(), 1.0);
        assert_eq!(g.vertex_weight(2).unwrap(), 1.0);
    }

    #[test]
    fn vertex_weight_complete() {
        let g = complete_graph(4);
        for x in 0..4 {
            assert_eq!(g.vertex_weight(x).unwrap(), 3.0);
        }
    }

    #[test]
    fn vertex_weight_out_of_range() {
        let g = p3();
        assert!(matches!(
            g.vertex_weight(3),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn set_volume_cases() {
        let k4 = complete_graph(4);
        assert_eq!(k4.set_volume(&k4.full_set()), 12.0);
        assert_eq!(k4.set_volume(&VertexSet::empty(4)), 0.0);
        let p2 = path_graph(2);
        let one = VertexSet::new(2, [0]).unwrap();
        assert_eq!(p2.set_volume(&one), 1.0);
    }

    #[test]
    fn distances() {
        let g = p3();
        assert_eq!(g.graph_distance(0, 2).unwrap(), 2);
        assert_eq!(g.graph_distance(1, 1).unwrap(), 0);
        let k5 = complete_graph(5);
        assert_eq!(k5.graph_distance(0, 4).unwrap(), 1);
    }

    #[test]
    fn set_distance_cases() {
        let p5 = path_graph(5);
        let a = VertexSet::new(5, [0]).unwrap();
        let b = VertexSet::new(5, [4]).unwrap();
        assert_eq!(p5.set_distance(&a, &b).unwrap(), 4);
        let overlapping = VertexSet::new(5, [0, 1]).unwrap();
        let other = VertexSet::new(5, [1, 2]).unwrap();
        assert_eq!(p5.set_distance(&overlapping, &other).unwrap(), 0);
        assert!(p5.set_distance(&a, &VertexSet::empty(5)).is_err());
    }

    #[test]
    fn family_separation_cases() {
        let p5 = path_graph(5);
        let fam = SubsetFamily::new(
            &p5,
            vec![
                VertexSet::new(5, [0]).unwrap(),
                VertexSet::new(5, [1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(fam.separation(&p5).unwrap(), 1);

        let fam3 = SubsetFamily::new(
            &p5,
            vec![
                VertexSet::new(5, [0]).unwrap(),
                VertexSet::new(5, [2]).unwrap(),
                VertexSet::new(5, [4]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(fam3.separation(&p5).unwrap(), 2);

        let single = SubsetFamily::new(&p5, vec![VertexSet::new(5, [0]).unwrap()]).unwrap();
        assert!(single.separation(&p5).is_err());
    }

    #[test]
    fn boundary_separation_cases() {
        let p5 = path_graph(5);
        let boundary = VertexSet::new(5, [4]).unwrap();
        let single = SubsetFamily::new(&p5, vec![VertexSet::new(5, [3]).unwrap()]).unwrap();
        assert_eq!(single.boundary_separation(&p5, &boundary).unwrap(), 1);

        // Two sets at mutual distance 3, each at distance >= 1 from the boundary.
        let fam = SubsetFamily::new(
            &p5,
            vec![
                VertexSet::new(5, [0]).unwrap(),
                VertexSet::new(5, [3]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(fam.boundary_separation(&p5, &boundary).unwrap(), 1);

        let touching = SubsetFamily::new(&p5, vec![VertexSet::new(5, [4]).unwrap()]).unwrap();
        assert!(touching.boundary_separation(&p5, &boundary).is_err());
    }

    #[test]
    fn vertex_boundary_cases() {
        let g = p3();
        assert!(g.vertex_boundary(&g.full_set()).is_empty());
        assert!(g.vertex_boundary(&VertexSet::empty(3)).is_empty());
        let omega = VertexSet::new(3, [0, 1]).unwrap();
        assert_eq!(g.vertex_boundary(&omega).members(), &[1]);
    }

    #[test]
    fn ball_cases() {
        let p5 = path_graph(5);
        let a = VertexSet::new(5, [2]).unwrap();
        assert_eq!(p5.ball(&a, 0).unwrap(), a);
        assert_eq!(p5.ball(&a, 1).unwrap().members(), &[1, 2, 3]);
        assert_eq!(p5.ball(&a, p5.diameter()).unwrap(), p5.full_set());
        assert!(p5.ball(&VertexSet::empty(5), 1).is_err());
    }

    #[test]
    fn normalize_cases() {
        let p2 = path_graph(2);
        let norm = p2.normalize();
        assert!((norm.edge_weight(0, 1) - 0.5).abs() < 1e-15);
        assert!((norm.total_weight() - 1.0).abs() < 1e-15);
        // Idempotence.
        let again = norm.normalize();
        assert!((again.edge_weight(0, 1) - 0.5).abs() < 1e-12);

        let k4 = complete_graph(4).normalize();
        for (x, y, w) in k4.edges() {
            assert!((w - 1.0 / 12.0).abs() < 1e-15, "mu[{x},{y}] = {w}");
        }
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            WeightedGraph::from_edges(2, &[(0, 0, 1.0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            WeightedGraph::from_edges(2, &[(0, 1, -1.0)]),
            Err(Error::InvalidEdgeWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]),
            Err(Error::Disconnected { .. })
        ));
        assert!(matches!(
            WeightedGraph::from_edges(3, &[(0, 1, 1.0)]),
            Err(Error::IsolatedVertex(2))
        ));
        let asym = vec![
            vec![0.0, 1.0, 0.0],
            vec![2.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
        ];
        assert!(matches!(
            WeightedGraph::from_weight_matrix(&asym),
            Err(Error::AsymmetricWeight { .. })
        ));
    }

    #[test]
    fn family_rejects_overlap_and_empty() {
        let g = p3();
        let overlap = SubsetFamily::new(
            &g,
            vec![
                VertexSet::new(3, [0, 1]).unwrap(),
                VertexSet::new(3, [1, 2]).unwrap(),
            ],
        );
        assert!(matches!(overlap, Err(Error::SetsNotDisjoint { .. })));
        let empty = SubsetFamily::new(&g, vec![VertexSet::empty(3)]);
        assert!(matches!(empty, Err(Error::EmptySet { .. })));
    }

    #[test]
    fn cached_volumes_match_recomputation() {
        let g = random_weighted_graph(12, 0.4, WeightDist::Uniform(0.5, 2.0), 7).unwrap();
        let fam = SubsetFamily::new(
            &g,
            vec![
                VertexSet::new(12, [0, 1, 2]).unwrap(),
                VertexSet::new(12, [5, 6]).unwrap(),
            ],
        )
        .unwrap();
        for alpha in 0..fam.len() {
            let recomputed = g.set_volume(fam.set(alpha));
            assert!((fam.volume(alpha) - recomputed).abs() <= 1e-12 * recomputed.max(1.0));
        }
    }

    #[test]
    fn volume_additive_over_disjoint_sets() {
        let g = random_weighted_graph(15, 0.3, WeightDist::Uniform(0.1, 3.0), 3).unwrap();
        let a = VertexSet::new(15, [0, 3, 7]).unwrap();
        let b = VertexSet::new(15, [1, 4, 9, 12]).unwrap();
        let both = a.union(&b);
        let sum = g.set_volume(&a) + g.set_volume(&b);
        assert!((g.set_volume(&both) - sum).abs() <= 1e-12 * sum.max(1.0));
    }

    #[test]
    fn boundary_is_subset_and_matches_scan() {
        let g = random_weighted_graph(10, 0.35, WeightDist::Unit, 11).unwrap();
        let omega = VertexSet::new(10, [0, 2, 3, 5, 8]).unwrap();
        let boundary = g.vertex_boundary(&omega);
        assert!(boundary.is_subset(&omega));
        // Exhaustive scan oracle over all pairs.
        let expected: Vec<usize> = omega
            .iter()
            .filter(|&x| {
                (0..10).any(|y| !omega.contains(y) && g.edge_weight(x, y) > 0.0)
            })
            .collect();
        assert_eq!(boundary.members(), expected.as_slice());
    }

    #[test]
    fn normalize_preserves_adjacency() {
        let g = random_weighted_graph(9, 0.4, WeightDist::Uniform(0.2, 4.0), 5).unwrap();
        let norm = g.normalize();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(g.edge_weight(x, y) > 0.0, norm.edge_weight(x, y) > 0.0);
            }
        }
        assert!((norm.total_weight() - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn triangle_inequality_on_cycles_and_random(seed in 0u64..40, n in 3usize..12) {
            let g = random_weighted_graph(n, 0.4, WeightDist::Unit, seed).unwrap();
            let dists: Vec<Vec<usize>> = (0..n).map(|x| g.distances_from_vertex(x)).collect();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        prop_assert!(dists[x][y] <= dists[x][z] + dists[z][y]);
                    }
                }
            }
        }

        #[test]
        fn balls_are_nested(seed in 0u64..40) {
            let g = random_weighted_graph(10, 0.3, WeightDist::Unit, seed).unwrap();
            let a = VertexSet::new(10, [seed as usize % 10]).unwrap();
            let mut prev = g.ball(&a, 0).unwrap();
            for r in 1..=g.diameter() {
                let next = g.ball(&a, r).unwrap();
                prop_assert!(prev.is_subset(&next));
                prev = next;
            }
            prop_assert_eq!(prev, g.full_set());
        }
    }

    #[test]
    fn cycle_distance_matches_formula() {
        let g = cycle_graph(7);
        for x in 0..7usize {
            for y in 0..7usize {
                let direct = (x as i64 - y as i64).unsigned_abs() as usize;
                let expected = direct.min(7 - direct);
                assert_eq!(g.graph_distance(x, y).unwrap(), expected);
            }
        }
    }
}
