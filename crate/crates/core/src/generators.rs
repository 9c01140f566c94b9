//! Instance generators: the chain-of-cliques graph, grid meshes of
//! rectangle-union domains, meshes of Euclidean domains with a designated
//! boundary, seeded random weighted graphs, and exhaustive small-graph
//! enumeration for sweeps.

use crate::error::{Error, Result};
use crate::graph::{SubsetFamily, VertexSet, WeightedGraph};
use crate::variational::{Certification, Flavor, PEstimate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Unit-weight path on n vertices (0-1-...-n-1).
pub fn path_graph(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges).expect("path graph is valid")
}

/// Unit-weight cycle on n >= 3 vertices.
pub fn cycle_graph(n: usize) -> WeightedGraph {
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    edges.push((n - 1, 0, 1.0));
    WeightedGraph::from_edges(n, &edges).expect("cycle graph is valid")
}

/// Unit-weight complete graph on n >= 2 vertices.
pub fn complete_graph(n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            edges.push((x, y, 1.0));
        }
    }
    WeightedGraph::from_edges(n, &edges).expect("complete graph is valid")
}

/// Unit-weight star: vertex 0 joined to 1..n-1.
pub fn star_graph(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|i| (0, i, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges).expect("star graph is valid")
}

/// Weight distribution for random graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightDist {
    Unit,
    Uniform(f64, f64),
}

impl WeightDist {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            WeightDist::Unit => 1.0,
            WeightDist::Uniform(lo, hi) => lo + (hi - lo) * rng.random::<f64>(),
        }
    }
}

/// Seeded, reproducible, connected Erdos-Renyi-style weighted graph.
/// Resamples up to a retry budget until the sample is connected.
pub fn random_weighted_graph(
    n: usize,
    edge_prob: f64,
    dist: WeightDist,
    seed: u64,
) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("need n >= 2, got {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 400;
    for _ in 0..ATTEMPTS {
        let mut edges = Vec::new();
        for x in 0..n {
            for y in (x + 1)..n {
                if rng.random::<f64>() < edge_prob {
                    edges.push((x, y, dist.sample(&mut rng)));
                }
            }
        }
        if let Ok(g) = WeightedGraph::from_edges(n, &edges) {
            return Ok(g);
        }
    }
    Err(Error::RetryBudgetExhausted { attempts: ATTEMPTS })
}

/// Chain of k+1 complete graphs joined by paths: clique alpha's designated
/// vertex is joined to clique alpha+1's by a path with `path_len` interior
/// vertices. Unit weights, then normalized to mu(V) = 1. Returns the graph
/// and the natural family A_alpha = V_alpha, whose separation is path_len + 1.
pub fn chain_of_cliques(
    k: usize,
    clique_size: usize,
    path_len: usize,
) -> Result<(WeightedGraph, SubsetFamily)> {
    if k < 1 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "need k >= 1".into(),
        });
    }
    if clique_size < 2 {
        return Err(Error::InvalidParameter {
            name: "clique_size",
            reason: "need clique_size >= 2".into(),
        });
    }
    if path_len < 1 {
        return Err(Error::InvalidParameter {
            name: "path_len",
            reason: "need path_len >= 1".into(),
        });
    }
    let s = clique_size;
    let clique_base = |alpha: usize| alpha * s;
    let path_base = (k + 1) * s;
    let n = path_base + k * path_len;

    let mut edges = Vec::new();
    for alpha in 0..=k {
        let base = clique_base(alpha);
        for i in 0..s {
            for j in (i + 1)..s {
                edges.push((base + i, base + j, 1.0));
            }
        }
    }
    // Paths between designated vertices (vertex 0 of each clique).
    for alpha in 0..k {
        let connector_a = clique_base(alpha);
        let connector_b = clique_base(alpha + 1);
        let first = path_base + alpha * path_len;
        let mut prev = connector_a;
        for i in 0..path_len {
            edges.push((prev, first + i, 1.0));
            prev = first + i;
        }
        edges.push((prev, connector_b, 1.0));
    }
    let graph = WeightedGraph::from_edges(n, &edges)?.normalize();
    let sets = (0..=k)
        .map(|alpha| VertexSet::new(n, clique_base(alpha)..clique_base(alpha) + s))
        .collect::<Result<Vec<_>>>()?;
    let family = SubsetFamily::new(&graph, sets)?;
    Ok((graph, family))
}

/// A grid graph with retained vertex positions and spacing.
#[derive(Debug, Clone)]
pub struct MeshGraph {
    pub graph: WeightedGraph,
    pub positions: Vec<(f64, f64)>,
    pub spacing: f64,
}

impl MeshGraph {
    /// Conversion factor from the graph-level p-Rayleigh quotient to the
    /// physical continuum normalization: interior vertices of the unit-weight
    /// 4-neighbor lattice have mu(x) = 4 and difference quotients carry
    /// h^{-p}, so physical = graph * 4 / h^p.
    pub fn quotient_scale(&self, p: f64) -> f64 {
        4.0 / self.spacing.powf(p)
    }

    /// Maximum hop distance from any vertex to the given set.
    pub fn inscribed_radius_hops(&self, boundary: &VertexSet) -> usize {
        self.graph
            .distances_from(boundary.iter())
            .into_iter()
            .max()
            .unwrap()
    }
}

const GRID_EPS: f64 = 1e-9;

fn divides(h: f64, dim: f64) -> Result<usize> {
    let ratio = dim / h;
    let rounded = ratio.round();
    if (ratio - rounded).abs() > 1e-9 * ratio.abs().max(1.0) || rounded < 1.0 {
        return Err(Error::SpacingMismatch { h, dim, ratio });
    }
    Ok(rounded as usize)
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 - GRID_EPS
            && x <= self.x1 + GRID_EPS
            && y >= self.y0 - GRID_EPS
            && y <= self.y1 + GRID_EPS
    }
}

/// Builds a unit-weight 4-neighbor grid graph over the lattice points of a
/// rectangle union. Returns the mesh plus the lattice index of each vertex.
fn mesh_of_rects(rects: &[Rect], h: f64) -> Result<(MeshGraph, Vec<(i64, i64)>)> {
    let x_max = rects.iter().fold(0.0f64, |m, r| m.max(r.x1));
    let y_max = rects.iter().fold(0.0f64, |m, r| m.max(r.y1));
    let nx = (x_max / h).round() as i64;
    let ny = (y_max / h).round() as i64;
    let inside =
        |i: i64, j: i64| rects.iter().any(|r| r.contains(i as f64 * h, j as f64 * h));

    let mut id = vec![vec![usize::MAX; (ny + 1) as usize]; (nx + 1) as usize];
    let mut positions = Vec::new();
    let mut lattice = Vec::new();
    for i in 0..=nx {
        for j in 0..=ny {
            if inside(i, j) {
                id[i as usize][j as usize] = positions.len();
                positions.push((i as f64 * h, j as f64 * h));
                lattice.push((i, j));
            }
        }
    }
    let mut edges = Vec::new();
    for (v, &(i, j)) in lattice.iter().enumerate() {
        for (di, dj) in [(1i64, 0i64), (0, 1)] {
            let (ni, nj) = (i + di, j + dj);
            if ni <= nx && nj <= ny {
                let u = id[ni as usize][nj as usize];
                if u != usize::MAX {
                    edges.push((v, u, 1.0));
                }
            }
        }
    }
    let graph = WeightedGraph::from_edges(positions.len(), &edges)?;
    Ok((
        MeshGraph {
            graph,
            positions,
            spacing: h,
        },
        lattice,
    ))
}

/// Grid mesh of the comb-shaped union of k+1 tall rectangles (width
/// 1/(2(k+1)), height a) alternating with short rectangles (height a/(k+1)).
///
/// Returns the mesh plus two families: the k+2 disjoint test sets {A_alpha}
/// (the tall strips, with the last tall strip split into two width-1/(6(k+1))
/// columns separated by a gap of the same width) and the k+1 covering blocks
/// {B_alpha} (each tall strip together with its short neighbor, shared
/// columns assigned leftward so the blocks partition the vertices).
pub fn mesh_ma(k: usize, a: f64, h: f64) -> Result<(MeshGraph, SubsetFamily, SubsetFamily)> {
    if k < 1 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "need k >= 1".into(),
        });
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            reason: format!("need a in (0,1), got {a}"),
        });
    }
    let kp1 = (k + 1) as f64;
    let w = 1.0 / (2.0 * kp1);
    let u = w / 3.0;
    let short = a / kp1;
    divides(h, u)?;
    divides(h, a)?;
    divides(h, short)?;

    let mut rects = Vec::new();
    for alpha in 0..=k {
        let x0 = 2.0 * alpha as f64 * w;
        rects.push(Rect {
            x0,
            x1: x0 + w,
            y0: 0.0,
            y1: a,
        });
        rects.push(Rect {
            x0: x0 + w,
            x1: x0 + 2.0 * w,
            y0: 0.0,
            y1: short,
        });
    }
    let (mesh, _) = mesh_of_rects(&rects, h)?;
    let n = mesh.graph.vertex_count();

    let in_x_range = |x: f64, lo: f64, hi: f64| x >= lo - GRID_EPS && x <= hi + GRID_EPS;
    let mut a_sets = Vec::new();
    for alpha in 0..k {
        let x0 = 2.0 * alpha as f64 * w;
        let members = (0..n)
            .filter(|&v| in_x_range(mesh.positions[v].0, x0, x0 + w))
            .collect::<Vec<_>>();
        a_sets.push(VertexSet::new(n, members)?);
    }
    let last = 2.0 * k as f64 * w;
    for (lo, hi) in [(last, last + u), (last + 2.0 * u, last + 3.0 * u)] {
        let members = (0..n)
            .filter(|&v| in_x_range(mesh.positions[v].0, lo, hi))
            .collect::<Vec<_>>();
        a_sets.push(VertexSet::new(n, members)?);
    }
    let a_family = SubsetFamily::new(&mesh.graph, a_sets)?;

    let mut b_sets = Vec::new();
    for alpha in 0..=k {
        let x0 = 2.0 * alpha as f64 * w;
        let x1 = x0 + 2.0 * w;
        let members = (0..n)
            .filter(|&v| {
                let x = mesh.positions[v].0;
                let in_left = x >= x0 - GRID_EPS;
                let in_right = if alpha == k {
                    x <= x1 + GRID_EPS
                } else {
                    x < x1 - GRID_EPS
                };
                in_left && in_right
            })
            .collect::<Vec<_>>();
        b_sets.push(VertexSet::new(n, members)?);
    }
    let b_family = SubsetFamily::new(&mesh.graph, b_sets)?;
    Ok((mesh, a_family, b_family))
}

/// Domain shape for boundary meshes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "shape")]
pub enum MeshShape {
    Rectangle { width: f64, height: f64 },
    Disk { radius: f64 },
}

/// Boundary handling for generated meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryHandling {
    Neumann,
    DesignatedBoundarySet,
}

/// Mesh request: a domain, a spacing, and how the boundary is treated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub shape: MeshShape,
    pub spacing: f64,
    pub boundary: BoundaryHandling,
}

/// Grid mesh of a Euclidean domain. The boundary set consists of the mesh
/// vertices with a lattice neighbor outside the domain, so every free vertex
/// keeps all four lattice neighbors.
pub fn mesh_domain_with_boundary(spec: &MeshSpec) -> Result<(MeshGraph, VertexSet)> {
    let h = spec.spacing;
    if !(h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "spacing",
            reason: format!("need positive spacing, got {h}"),
        });
    }
    match spec.shape {
        MeshShape::Rectangle { width, height } => {
            divides(h, width)?;
            divides(h, height)?;
            let rect = Rect {
                x0: 0.0,
                x1: width,
                y0: 0.0,
                y1: height,
            };
            let (mesh, lattice) = mesh_of_rects(&[rect], h)?;
            let nx = (width / h).round() as i64;
            let ny = (height / h).round() as i64;
            let n = mesh.graph.vertex_count();
            let boundary = VertexSet::new(
                n,
                (0..n).filter(|&v| {
                    let (i, j) = lattice[v];
                    i == 0 || j == 0 || i == nx || j == ny
                }),
            )?;
            Ok((mesh, boundary))
        }
        MeshShape::Disk { radius } => {
            if !(radius > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "radius",
                    reason: format!("need positive radius, got {radius}"),
                });
            }
            let half = (radius / h).ceil() as i64;
            let r2 = radius * radius + GRID_EPS;
            let inside = |i: i64, j: i64| {
                let x = i as f64 * h;
                let y = j as f64 * h;
                x * x + y * y <= r2
            };
            let span = (2 * half + 1) as usize;
            let mut id = vec![vec![usize::MAX; span]; span];
            let mut positions = Vec::new();
            let mut lattice = Vec::new();
            for i in -half..=half {
                for j in -half..=half {
                    if inside(i, j) {
                        id[(i + half) as usize][(j + half) as usize] = positions.len();
                        positions.push((i as f64 * h, j as f64 * h));
                        lattice.push((i, j));
                    }
                }
            }
            let mut edges = Vec::new();
            for (v, &(i, j)) in lattice.iter().enumerate() {
                for (di, dj) in [(1i64, 0i64), (0, 1)] {
                    let (ni, nj) = (i + di, j + dj);
                    if ni <= half && nj <= half && inside(ni, nj) {
                        let u = id[(ni + half) as usize][(nj + half) as usize];
                        if u != usize::MAX {
                            edges.push((v, u, 1.0));
                        }
                    }
                }
            }
            let graph = WeightedGraph::from_edges(positions.len(), &edges)?;
            let n = graph.vertex_count();
            let boundary = VertexSet::new(
                n,
                (0..n).filter(|&v| {
                    let (i, j) = lattice[v];
                    [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)]
                        .iter()
                        .any(|&(di, dj)| !inside(i + di, j + dj))
                }),
            )?;
            Ok((
                MeshGraph {
                    graph,
                    positions,
                    spacing: h,
                },
                boundary,
            ))
        }
    }
}

/// Outcome of the inscribed-radius check against a first Dirichlet estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InradReport {
    pub inrad_hops: usize,
    pub inrad_physical: f64,
    /// Dirichlet estimate rescaled to physical units (graph value * 4/h^p).
    pub nu_physical: f64,
    pub p: f64,
    pub dimension_parameter: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passes: bool,
}

/// Checks the inscribed-radius bound on a mesh: physical inscribed radius
/// against (2 / nu^{1/p}) (1 + N log 2), with a certified-upper or exact
/// estimate of the first Dirichlet constant (a larger estimate only shrinks
/// the right-hand side, so a pass is direction-safe).
pub fn inrad_check(
    mesh: &MeshGraph,
    boundary: &VertexSet,
    p: f64,
    dimension_parameter: f64,
    estimate: &PEstimate,
) -> Result<InradReport> {
    if estimate.flavor != Flavor::Dirichlet || estimate.order != 1 {
        return Err(Error::EstimateMismatch {
            expected: "dirichlet estimate of order 1".into(),
            got: format!("{:?} of order {}", estimate.flavor, estimate.order),
        });
    }
    if estimate.p != p {
        return Err(Error::EstimateMismatch {
            expected: format!("estimate at p = {p}"),
            got: format!("p = {}", estimate.p),
        });
    }
    if matches!(estimate.certification, Certification::Heuristic) {
        return Err(Error::IncompatibleCertification(
            "inscribed-radius check needs a certified-upper or exact estimate".into(),
        ));
    }
    let inrad_hops = mesh.inscribed_radius_hops(boundary);
    let inrad_physical = inrad_hops as f64 * mesh.spacing;
    let nu_physical = estimate.value * mesh.quotient_scale(p);
    let rhs = 2.0 / nu_physical.powf(1.0 / p) * (1.0 + dimension_parameter * 2.0f64.ln());
    Ok(InradReport {
        inrad_hops,
        inrad_physical,
        nu_physical,
        p,
        dimension_parameter,
        rhs,
        margin: rhs - inrad_physical,
        passes: inrad_physical <= rhs,
    })
}

/// All connected unit-weight graphs on exactly `n` labeled vertices, up to
/// isomorphism (canonical form = minimum edge bitmask over permutations).
pub fn enumerate_connected_graphs(n: usize) -> Vec<WeightedGraph> {
    assert!((2..=6).contains(&n), "enumeration supported for 2..=6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let m = pairs.len();
    let pair_index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pairs.iter().position(|&(x, y)| (x, y) == (a, b)).unwrap()
    };
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permutations(&mut idx, 0, &mut perms);

    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let canonical = perms
            .iter()
            .map(|perm| {
                let mut relabeled = 0u32;
                for b in 0..m {
                    if mask & (1 << b) != 0 {
                        let (x, y) = pairs[b];
                        relabeled |= 1 << pair_index(perm[x], perm[y]);
                    }
                }
                relabeled
            })
            .min()
            .unwrap();
        if canonical != mask || !seen.insert(canonical) {
            continue;
        }
        let edges: Vec<(usize, usize, f64)> = (0..m)
            .filter(|&b| mask & (1 << b) != 0)
            .map(|b| (pairs[b].0, pairs[b].1, 1.0))
            .collect();
        if let Ok(g) = WeightedGraph::from_edges(n, &edges) {
            out.push(g);
        }
    }
    out
}

fn permutations(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, out);
        idx.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{full_spectrum, partial_spectrum};

    #[test]
    fn chain_smallest_instance() {
        let (g, fam) = chain_of_cliques(1, 2, 1).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.separation(&g).unwrap(), 2);
        assert!((g.total_weight() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chain_family_measures_near_uniform() {
        let (g, fam) = chain_of_cliques(4, 6, 2).unwrap();
        let total = g.total_weight();
        for alpha in 0..fam.len() {
            let share = fam.volume(alpha) / total;
            assert!((share - 1.0 / 5.0).abs() < 0.06, "share = {share}");
        }
        assert_eq!(fam.separation(&g).unwrap(), 3);
        // Family measures sum to mu(V) minus the path mass.
        let family_mass: f64 = fam.volumes().iter().sum();
        assert!(family_mass < total);
        assert!(family_mass > 0.8 * total);
    }

    #[test]
    fn chain_is_deterministic() {
        let (g1, _) = chain_of_cliques(3, 4, 2).unwrap();
        let (g2, _) = chain_of_cliques(3, 4, 2).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn random_graph_determinism_and_shape() {
        let a = random_weighted_graph(2, 1.0, WeightDist::Unit, 0).unwrap();
        assert_eq!(a.vertex_count(), 2);
        assert_eq!(a.edge_weight(0, 1), 1.0);

        let g1 = random_weighted_graph(50, 0.2, WeightDist::Uniform(0.5, 1.5), 42).unwrap();
        let g2 = random_weighted_graph(50, 0.2, WeightDist::Uniform(0.5, 1.5), 42).unwrap();
        assert_eq!(g1, g2);
        for (_, _, w) in g1.edges() {
            assert!((0.5..=1.5).contains(&w));
        }
    }

    #[test]
    fn mesh_ma_small_instance() {
        let (mesh, a_fam, b_fam) = mesh_ma(1, 0.5, 1.0 / 24.0).unwrap();
        let g = &mesh.graph;
        assert!(g.vertex_count() > 0);
        assert_eq!(a_fam.len(), 3);
        assert_eq!(b_fam.len(), 2);
        // Family measures roughly match area ratios: tall strip area over
        // total = 1/(k+2) = 1/3 for k = 1.
        let share = a_fam.volume(0) / g.total_weight();
        assert!((share - 1.0 / 3.0).abs() < 0.13, "share = {share}");
        // B blocks partition the vertices.
        let covered: usize = b_fam.sets().iter().map(|s| s.len()).sum();
        assert_eq!(covered, g.vertex_count());
        // Physical separation of the A family.
        let k = 1.0;
        let sep_phys = a_fam.separation(g).unwrap() as f64 * mesh.spacing;
        assert!(sep_phys >= 1.0 / (6.0 * (k + 1.0)) - 2.0 * mesh.spacing);
    }

    #[test]
    fn mesh_ma_separation_invariant_nontrivial() {
        // At a finer spacing the guaranteed lower bound is strictly positive.
        let (mesh, a_fam, _) = mesh_ma(1, 0.5, 1.0 / 48.0).unwrap();
        let sep_phys = a_fam.separation(&mesh.graph).unwrap() as f64 * mesh.spacing;
        let guaranteed = 1.0 / 12.0 - 2.0 * mesh.spacing;
        assert!(guaranteed > 0.0);
        assert!(sep_phys >= guaranteed, "{sep_phys} vs {guaranteed}");
    }

    #[test]
    fn mesh_ma_rejects_bad_spacing() {
        assert!(matches!(
            mesh_ma(1, 0.5, 0.3),
            Err(Error::SpacingMismatch { .. })
        ));
    }

    #[test]
    fn mesh_refinement_scaling_is_stable() {
        // Eigenvalues scaled by h^{-2} should move by less than 10% under
        // one refinement: a grid-convergence indicator.
        let (mesh1, fam1, _) = mesh_ma(1, 0.5, 1.0 / 12.0).unwrap();
        let (mesh2, _, _) = mesh_ma(1, 0.5, 1.0 / 24.0).unwrap();
        let k_index = fam1.len() - 1; // lambda_{k+1} with k = 1
        let s1 = full_spectrum(&mesh1.graph).unwrap();
        let s2 = partial_spectrum(&mesh2.graph, k_index + 1).unwrap();
        let v1 = s1.eigenvalues[k_index] / (mesh1.spacing * mesh1.spacing);
        let v2 = s2.eigenvalues[k_index] / (mesh2.spacing * mesh2.spacing);
        assert!(
            (v1 - v2).abs() / v2 < 0.10,
            "h-scaled values {v1} vs {v2} differ by more than 10%"
        );
    }

    #[test]
    fn square_mesh_inrad() {
        let spec = MeshSpec {
            shape: MeshShape::Rectangle {
                width: 1.0,
                height: 1.0,
            },
            spacing: 0.1,
            boundary: BoundaryHandling::DesignatedBoundarySet,
        };
        let (mesh, boundary) = mesh_domain_with_boundary(&spec).unwrap();
        assert_eq!(mesh.graph.vertex_count(), 121);
        assert_eq!(mesh.inscribed_radius_hops(&boundary), 5);
    }

    #[test]
    fn rectangle_mesh_inrad() {
        let spec = MeshSpec {
            shape: MeshShape::Rectangle {
                width: 2.0,
                height: 1.0,
            },
            spacing: 0.1,
            boundary: BoundaryHandling::DesignatedBoundarySet,
        };
        let (mesh, boundary) = mesh_domain_with_boundary(&spec).unwrap();
        assert_eq!(mesh.inscribed_radius_hops(&boundary), 5);
    }

    #[test]
    fn disk_mesh_inrad() {
        let spec = MeshSpec {
            shape: MeshShape::Disk { radius: 1.0 },
            spacing: 1.0 / 16.0,
            boundary: BoundaryHandling::DesignatedBoundarySet,
        };
        let (mesh, boundary) = mesh_domain_with_boundary(&spec).unwrap();
        let hops = mesh.inscribed_radius_hops(&boundary);
        assert!((15..=17).contains(&hops), "hops = {hops}");
    }

    #[test]
    fn disk_free_vertices_have_full_degree() {
        let spec = MeshSpec {
            shape: MeshShape::Disk { radius: 1.0 },
            spacing: 1.0 / 8.0,
            boundary: BoundaryHandling::DesignatedBoundarySet,
        };
        let (mesh, boundary) = mesh_domain_with_boundary(&spec).unwrap();
        for v in 0..mesh.graph.vertex_count() {
            if !boundary.contains(v) {
                assert_eq!(mesh.graph.mu(v), 4.0, "free vertex {v}");
            }
        }
    }

    #[test]
    fn enumeration_counts_match_oeis() {
        // Connected graphs on n nodes: 1, 2, 6, 21 for n = 2..5.
        assert_eq!(enumerate_connected_graphs(2).len(), 1);
        assert_eq!(enumerate_connected_graphs(3).len(), 2);
        assert_eq!(enumerate_connected_graphs(4).len(), 6);
        assert_eq!(enumerate_connected_graphs(5).len(), 21);
    }

    #[test]
    fn generated_graphs_pass_construction_invariants() {
        // Constructors already validate; spot-check symmetry and positivity.
        let (g, _) = chain_of_cliques(2, 3, 2).unwrap();
        for (x, y, w) in g.edges() {
            assert!(w > 0.0);
            assert_eq!(g.edge_weight(x, y), g.edge_weight(y, x));
        }
        for x in 0..g.vertex_count() {
            assert!(g.mu(x) > 0.0);
        }
    }
}
