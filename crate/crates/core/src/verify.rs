//! Batch verification suites: seeded sweeps that exercise the bound formulas
//! against exact spectra, the lemma chain, the sandwich and Federer-Fleming
//! identities, the chain-of-cliques trend, the mesh sharpness envelope, and
//! the inscribed-radius bound. Each suite returns a serializable report with
//! one line per check; identical configurations produce byte-identical JSON.

use crate::bounds::{
    boundary_concentration_check, cgy_bound_discrete, compare_bounds, lemma_chain_check,
    main_bound, main_bound_from_measures,
};
use crate::error::{Error, Result};
use crate::generators::{
    chain_of_cliques, complete_graph, cycle_graph, enumerate_connected_graphs, inrad_check,
    mesh_domain_with_boundary, mesh_ma, path_graph, random_weighted_graph, star_graph,
    BoundaryHandling, MeshShape, MeshSpec, WeightDist,
};
use crate::graph::{SubsetFamily, VertexSet, WeightedGraph};
use crate::multiway::{self, SearchMode};
use crate::spectral::{
    dirichlet_spectrum_for, full_spectrum, laplacian_apply, partial_spectrum, DirichletProblem,
};
use crate::variational::{
    brute_force_nu, nu_upper, sandwich_check, Flavor, OptimizerOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Sizing and seeding for the verification suites.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Largest vertex count in the exhaustive-family sweeps.
    pub max_v: usize,
    /// Number of random instances in the soundness sweeps.
    pub trials: usize,
    /// Reduced sizes for smoke runs.
    pub quick: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            max_v: 9,
            trials: 300,
            quick: false,
        }
    }
}

/// One named check with its outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub counterexamples: usize,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    fn from_checks(suite: &str, cases: usize, counterexamples: usize, checks: Vec<CheckLine>) -> Self {
        let passed = counterexamples == 0 && checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.into(),
            passed,
            cases,
            counterexamples,
            checks,
        }
    }
}

/// Full verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: String,
    pub toolkit_version: String,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    fn new(seed: u64, suites: Vec<SuiteReport>) -> Self {
        let passed = suites.iter().all(|s| s.passed);
        VerifyReport {
            schema_version: "1".into(),
            toolkit_version: env!("CARGO_PKG_VERSION").into(),
            seed,
            suites,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "main",
    "dirichlet",
    "lemma-chain",
    "sandwich",
    "spectrum",
    "federer-fleming",
    "chain-trend",
    "sharpness",
    "inrad",
    "multiway",
];

/// Runs one suite by name, or every suite for "all".
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let suites = match name {
        "all" => run_all_suites(cfg),
        "main" => vec![run_main_soundness(cfg)],
        "dirichlet" => vec![run_dirichlet_soundness(cfg)],
        "lemma-chain" => vec![run_lemma_chain(cfg)],
        "sandwich" => vec![run_sandwich(cfg)],
        "spectrum" => vec![run_spectrum_invariants(cfg)],
        "federer-fleming" => vec![run_federer_fleming(cfg)],
        "chain-trend" => vec![run_chain_trend(cfg)],
        "sharpness" => vec![run_sharpness(cfg)],
        "inrad" => vec![run_inrad(cfg)],
        "multiway" => vec![run_multiway_sweep(cfg)],
        other => {
            return Err(Error::InvalidParameter {
                name: "suite",
                reason: format!(
                    "unknown suite `{other}`; expected one of {:?} or `all`",
                    SUITE_NAMES
                ),
            })
        }
    };
    Ok(VerifyReport::new(cfg.seed, suites))
}

fn run_all_suites(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    vec![
        run_main_soundness(cfg),
        run_dirichlet_soundness(cfg),
        run_lemma_chain(cfg),
        run_sandwich(cfg),
        run_spectrum_invariants(cfg),
        run_federer_fleming(cfg),
        run_chain_trend(cfg),
        run_sharpness(cfg),
        run_inrad(cfg),
        run_multiway_sweep(cfg),
    ]
}

// --- shared sweep helpers ---------------------------------------------------

/// Seeded random sweep instance i (connected, 5..=max_v vertices).
fn sweep_random_graph(seed: u64, i: usize, max_v: usize) -> Option<WeightedGraph> {
    let span = max_v.saturating_sub(4).max(1);
    let n = 5 + (i % span);
    let probs = [0.3, 0.45, 0.6, 0.85];
    let prob = probs[i % probs.len()];
    let dist = if i % 3 == 0 {
        WeightDist::Uniform(0.3, 2.5)
    } else {
        WeightDist::Unit
    };
    random_weighted_graph(n, prob, dist, seed.wrapping_mul(1009).wrapping_add(i as u64)).ok()
}

/// The generators' small named instances with at most max_v vertices.
fn small_named_instances(max_v: usize) -> Vec<(String, WeightedGraph)> {
    let mut out = Vec::new();
    for n in 2..=max_v {
        out.push((format!("path_{n}"), path_graph(n)));
    }
    for n in 3..=max_v {
        out.push((format!("cycle_{n}"), cycle_graph(n)));
    }
    for n in 3..=max_v.min(6) {
        out.push((format!("complete_{n}"), complete_graph(n)));
    }
    for n in 4..=max_v.min(7) {
        out.push((format!("star_{n}"), star_graph(n)));
    }
    for (k, s, l) in [(1, 2, 1), (1, 3, 1), (1, 2, 2), (2, 2, 1)] {
        if let Ok((g, _)) = chain_of_cliques(k, s, l) {
            if g.vertex_count() <= max_v {
                out.push((format!("chain_k{k}_s{s}_l{l}"), g));
            }
        }
    }
    out
}

/// Calls `f` on every canonical assignment of `n` items into `labels`
/// nonempty classes (0 = unassigned; a new label only after all smaller).
fn enumerate_families(n: usize, labels: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        assign: &mut Vec<usize>,
        pos: usize,
        used: usize,
        labels: usize,
        f: &mut impl FnMut(&[usize]),
    ) {
        let n = assign.len();
        if pos == n {
            if used == labels {
                f(assign);
            }
            return;
        }
        if labels - used > n - pos {
            return;
        }
        for label in 0..=(used + 1).min(labels) {
            assign[pos] = label;
            rec(assign, pos + 1, used.max(label), labels, f);
        }
        assign[pos] = 0;
    }
    let mut assign = vec![0usize; n];
    rec(&mut assign, 0, 0, labels, f);
}

fn all_pairs_distances(graph: &WeightedGraph) -> Vec<Vec<usize>> {
    (0..graph.vertex_count())
        .map(|x| graph.distances_from_vertex(x))
        .collect()
}

// --- suite 1: main-theorem exhaustive soundness --------------------------------

pub fn run_main_soundness(cfg: &VerifyConfig) -> SuiteReport {
    let trials = if cfg.quick { cfg.trials.min(30) } else { cfg.trials };
    let mut graphs: Vec<WeightedGraph> = Vec::new();
    for i in 0..trials {
        if let Some(g) = sweep_random_graph(cfg.seed, i, cfg.max_v) {
            graphs.push(g);
        }
    }
    for (_, g) in small_named_instances(cfg.max_v) {
        graphs.push(g);
    }

    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut worst_margin = f64::INFINITY;
    for g in &graphs {
        let n = g.vertex_count();
        let Ok(spectrum) = full_spectrum(g) else {
            continue;
        };
        let dists = all_pairs_distances(g);
        let total = g.total_weight();
        for k in 1..=2usize {
            let labels = k + 1;
            if n < labels {
                continue;
            }
            let lambda_sqrt = spectrum.eigenvalues[k].max(0.0).sqrt();
            enumerate_families(n, labels, &mut |assign| {
                // Separation and volumes of the encoded family.
                let mut separation = usize::MAX;
                for x in 0..n {
                    if assign[x] == 0 {
                        continue;
                    }
                    for y in (x + 1)..n {
                        if assign[y] != 0 && assign[y] != assign[x] {
                            separation = separation.min(dists[x][y]);
                        }
                    }
                }
                if separation < 2 || separation == usize::MAX {
                    return;
                }
                let mut volumes = vec![0.0; labels];
                for x in 0..n {
                    if assign[x] > 0 {
                        volumes[assign[x] - 1] += g.mu(x);
                    }
                }
                let Ok(bound) = main_bound_from_measures(separation, total, &volumes) else {
                    return;
                };
                cases += 1;
                let margin = bound + 1e-9 - lambda_sqrt;
                if margin < 0.0 {
                    counterexamples += 1;
                }
                worst_margin = worst_margin.min(bound - lambda_sqrt);
            });
        }
    }
    let checks = vec![check(
        "lambda_k^(1/2) <= main bound over all admissible families (D >= 2, k <= 2)",
        counterexamples == 0,
        format!(
            "{} graphs, {cases} families, worst margin {worst_margin:.3e}",
            graphs.len()
        ),
    )];
    SuiteReport::from_checks("main", cases, counterexamples, checks)
}

// --- suite 2: Dirichlet transplant soundness ------------------------------------

pub fn run_dirichlet_soundness(cfg: &VerifyConfig) -> SuiteReport {
    let trials = if cfg.quick { cfg.trials.min(30) } else { cfg.trials };
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut worst_margin = f64::INFINITY;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0xD1));

    let mut graphs: Vec<WeightedGraph> = Vec::new();
    for i in 0..trials {
        if let Some(g) = sweep_random_graph(cfg.seed.wrapping_add(1), i, cfg.max_v) {
            graphs.push(g);
        }
    }
    for (_, g) in small_named_instances(cfg.max_v) {
        graphs.push(g);
    }

    for g in &graphs {
        let n = g.vertex_count();
        // Random nonempty boundary leaving at least two free vertices.
        let boundary_size = 1 + (rng.random_range(0..n.max(3)) % (n / 3).max(1));
        let mut picks: Vec<usize> = (0..n).collect();
        for i in 0..boundary_size {
            let j = rng.random_range(i..n);
            picks.swap(i, j);
        }
        let boundary = match VertexSet::new(n, picks[0..boundary_size].iter().copied()) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let Ok(problem) = DirichletProblem::designated(g, boundary.clone()) else {
            continue;
        };
        if problem.free_count() < 2 {
            continue;
        }
        let Ok(spectrum) = dirichlet_spectrum_for(g, &problem) else {
            continue;
        };
        let free = problem.free_vertices().to_vec();
        let dists = all_pairs_distances(g);
        let bdist = g.distances_from(boundary.iter());
        let total = g.total_weight();
        for k in 1..=2usize.min(problem.free_count()) {
            let lambda_sqrt = spectrum.eigenvalues[k - 1].max(0.0).sqrt();
            enumerate_families(free.len(), k, &mut |assign| {
                let mut separation = usize::MAX;
                for (i, &x) in free.iter().enumerate() {
                    if assign[i] == 0 {
                        continue;
                    }
                    separation = separation.min(bdist[x]);
                    for (j, &y) in free.iter().enumerate().skip(i + 1) {
                        if assign[j] != 0 && assign[j] != assign[i] {
                            separation = separation.min(dists[x][y]);
                        }
                    }
                }
                if separation < 2 || separation == usize::MAX {
                    return;
                }
                let mut volumes = vec![0.0; k];
                for (i, &x) in free.iter().enumerate() {
                    if assign[i] > 0 {
                        volumes[assign[i] - 1] += g.mu(x);
                    }
                }
                let Ok(bound) = main_bound_from_measures(separation, total, &volumes) else {
                    return;
                };
                cases += 1;
                if lambda_sqrt > bound + 1e-9 {
                    counterexamples += 1;
                }
                worst_margin = worst_margin.min(bound - lambda_sqrt);
            });
        }
    }
    let checks = vec![check(
        "Dirichlet lambda_k^(1/2) <= boundary-separation bound (D^b >= 2, k <= 2)",
        counterexamples == 0,
        format!("{cases} families, worst margin {worst_margin:.3e}"),
    )];
    SuiteReport::from_checks("dirichlet", cases, counterexamples, checks)
}

// --- suite 3: lemma chain ---------------------------------------------------------

pub fn run_lemma_chain(cfg: &VerifyConfig) -> SuiteReport {
    let target = if cfg.quick { 25 } else { 200 };
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut checks = Vec::new();
    let mut worst_a = f64::INFINITY;
    let mut worst_b = f64::INFINITY;
    let mut worst_conc = f64::INFINITY;
    let mut attempts = 0u64;
    let opts = OptimizerOptions::default();

    while cases < target && attempts < 40 * target as u64 {
        attempts += 1;
        let idx = attempts as usize;
        let Some(g) = sweep_random_graph(cfg.seed.wrapping_add(3), idx, 10) else {
            continue;
        };
        let n = g.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(31).wrapping_add(attempts));
        let sets_count = 2 + (idx % 2);
        // Random singleton seeds, then require separation >= 3 so r = 1 works.
        let mut picks: Vec<usize> = (0..n).collect();
        for i in 0..sets_count.min(n) {
            let j = rng.random_range(i..n);
            picks.swap(i, j);
        }
        let sets: Vec<VertexSet> = picks[0..sets_count]
            .iter()
            .map(|&x| VertexSet::new(n, [x]).unwrap())
            .collect();
        let Ok(family) = SubsetFamily::new(&g, sets) else {
            continue;
        };
        let Ok(sep) = family.separation(&g) else {
            continue;
        };
        if sep < 3 {
            continue;
        }
        let r = 1;
        let Ok(report) = lemma_chain_check(&g, &family, r, 2.0) else {
            continue;
        };
        cases += 1;
        if !report.all_hold() {
            counterexamples += 1;
        }
        worst_a = worst_a.min(report.margin_a);
        worst_b = worst_b.min(report.margin_b);

        // Boundary concentration on each neighborhood with the exact p = 2
        // first Dirichlet value.
        for a in family.sets() {
            let omega = g.ball(a, r).unwrap();
            let Ok(problem) = DirichletProblem::intrinsic(&g, omega) else {
                continue;
            };
            if problem.dirichlet_set().is_empty() {
                continue;
            }
            let Ok(est) = nu_upper(&g, 1, 2.0, Flavor::Dirichlet, Some(&problem), &opts) else {
                continue;
            };
            let Ok(conc) = boundary_concentration_check(&g, &problem, 2.0, &est) else {
                continue;
            };
            if !conc.all_hold {
                counterexamples += 1;
            }
            for row in &conc.rows {
                worst_conc = worst_conc.min(row.rhs - row.mass_fraction);
            }
        }
    }
    checks.push(check(
        "domain monotonicity margin >= -1e-9",
        worst_a >= -1e-9,
        format!("worst {worst_a:.3e} over {cases} configurations"),
    ));
    checks.push(check(
        "decomposition margin >= -1e-9",
        worst_b >= -1e-9,
        format!("worst {worst_b:.3e}"),
    ));
    checks.push(check(
        "boundary concentration at every integer radius",
        worst_conc >= -1e-9,
        format!("worst rhs - mass {worst_conc:.3e}"),
    ));
    checks.push(check(
        "configuration target reached",
        cases >= target,
        format!("{cases} of {target}"),
    ));
    SuiteReport::from_checks("lemma-chain", cases, counterexamples, checks)
}

// --- suite 4: sandwich --------------------------------------------------------------

pub fn run_sandwich(cfg: &VerifyConfig) -> SuiteReport {
    let trials = if cfg.quick { 15 } else { 100 };
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut equal_count = 0usize;

    for i in 0..trials {
        let Some(g) = sweep_random_graph(cfg.seed.wrapping_add(4), i, 9) else {
            continue;
        };
        let k = 1 + i % 2;
        if g.vertex_count() <= k + 1 {
            continue;
        }
        let Ok(report) = sandwich_check(&g, k, 2.0, 9) else {
            continue;
        };
        cases += 1;
        if report.equality_p2 == Some(true) && report.holds() {
            equal_count += 1;
        } else {
            counterexamples += 1;
        }
    }
    let p2_check = check(
        "nu_{k,2} = nu-hat_{k,2} to 1e-8 relative",
        counterexamples == 0,
        format!("{equal_count} of {cases} graphs"),
    );

    // Grid-oracle sandwich on all connected graphs with at most 5 vertices.
    let max_n = if cfg.quick { 4 } else { 5 };
    let mut oracle_cases = 0usize;
    let mut oracle_failures = 0usize;
    for n in 2..=max_n {
        for g in enumerate_connected_graphs(n) {
            for p in [1.0, 1.5, 3.0] {
                let Ok(report) = sandwich_check(&g, 1, p, 5) else {
                    oracle_failures += 1;
                    continue;
                };
                oracle_cases += 1;
                if !(report.holds_lower && report.holds_upper) {
                    oracle_failures += 1;
                }
            }
        }
    }
    let oracle_check = check(
        "nu <= nu-hat <= 2^p nu by the grid oracle (p in {1, 1.5, 3})",
        oracle_failures == 0,
        format!("{oracle_cases} cases on all connected graphs |V| <= {max_n}"),
    );
    SuiteReport::from_checks(
        "sandwich",
        cases + oracle_cases,
        counterexamples + oracle_failures,
        vec![p2_check, oracle_check],
    )
}

// --- suite 5: spectrum invariants -----------------------------------------------------

pub fn run_spectrum_invariants(cfg: &VerifyConfig) -> SuiteReport {
    let mut graphs: Vec<(String, WeightedGraph)> = small_named_instances(9);
    let extra = if cfg.quick { 6 } else { 40 };
    for i in 0..extra {
        let n = 5 + (i * 7) % 36;
        if let Ok(g) = random_weighted_graph(
            n,
            0.35,
            if i % 2 == 0 {
                WeightDist::Unit
            } else {
                WeightDist::Uniform(0.4, 2.2)
            },
            cfg.seed.wrapping_mul(17).wrapping_add(i as u64),
        ) {
            graphs.push((format!("random_{i}"), g));
        }
    }
    if let Ok((mesh, _, _)) = mesh_ma(1, 0.5, 1.0 / 12.0) {
        graphs.push(("mesh_ma_1".into(), mesh.graph));
    }
    if let Ok((mesh, _)) = mesh_domain_with_boundary(&MeshSpec {
        shape: MeshShape::Rectangle {
            width: 1.0,
            height: 1.0,
        },
        spacing: 0.125,
        boundary: BoundaryHandling::Neumann,
    }) {
        graphs.push(("square_mesh_8".into(), mesh.graph));
    }

    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut range_ok = true;
    let mut zero_simple_ok = true;
    let mut top_ok = true;
    let mut residual_ok = true;
    let mut worst_residual = 0.0f64;
    for (name, g) in &graphs {
        let Ok(spectrum) = full_spectrum(g) else {
            counterexamples += 1;
            continue;
        };
        cases += 1;
        let n = g.vertex_count() as f64;
        let eigenvalues = &spectrum.eigenvalues;
        if !(eigenvalues[0].abs() <= 1e-10 && eigenvalues[1] > 1e-10) {
            zero_simple_ok = false;
            counterexamples += 1;
        }
        if !eigenvalues
            .iter()
            .all(|&l| (-1e-10..=2.0 + 1e-10).contains(&l))
        {
            range_ok = false;
            counterexamples += 1;
        }
        if spectrum.lambda_max() < n / (n - 1.0) - 1e-10 {
            top_ok = false;
            counterexamples += 1;
        }
        // Eigenresiduals against the unsymmetrized operator.
        let vectors = spectrum.eigenvectors.as_ref().unwrap();
        for (lam, phi) in eigenvalues.iter().zip(vectors) {
            let image = laplacian_apply(g, phi);
            let scale = phi.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
            let resid = image
                .iter()
                .zip(phi)
                .map(|(ax, x)| (ax - lam * x).abs())
                .fold(0.0f64, f64::max)
                / scale.max(1e-300);
            worst_residual = worst_residual.max(resid / lam.abs().max(1.0));
            if resid > 1e-8 * lam.abs().max(1.0) {
                residual_ok = false;
                counterexamples += 1;
            }
        }
        let _ = name;
    }
    let checks = vec![
        check("eigenvalues lie in [0, 2]", range_ok, format!("{cases} graphs")),
        check("lambda_0 = 0 is simple", zero_simple_ok, ""),
        check(
            "lambda_{N-1} in [N/(N-1), 2]",
            top_ok,
            "",
        ),
        check(
            "eigenresiduals <= 1e-8",
            residual_ok,
            format!("worst {worst_residual:.3e}"),
        ),
    ];
    SuiteReport::from_checks("spectrum", cases, counterexamples, checks)
}

// --- suite 6: Federer-Fleming p = 1 -----------------------------------------------------

pub fn run_federer_fleming(cfg: &VerifyConfig) -> SuiteReport {
    let max_n = if cfg.quick { 4 } else { 5 };
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut worst_gap = 0.0f64;
    let mut partition_cases = 0usize;
    let mut partition_failures = 0usize;

    for n in 2..=max_n {
        for g in enumerate_connected_graphs(n) {
            // I-hat_1 = I_1 exactly.
            let i1 = multiway::multiway_constant(&g, 1, SearchMode::Exhaustive, false);
            let ihat1 = multiway::multiway_constant(&g, 1, SearchMode::Exhaustive, true);
            if let (Ok(a), Ok(b)) = (i1, ihat1) {
                partition_cases += 1;
                if (a.value - b.value).abs() > 1e-12 {
                    partition_failures += 1;
                }
            }
            // Dirichlet Federer-Fleming on every proper domain with interior.
            for mask in 1u32..(1 << n) - 1 {
                let omega = VertexSet::new(n, (0..n).filter(|&x| mask & (1 << x) != 0)).unwrap();
                let Ok(problem) = DirichletProblem::intrinsic(&g, omega.clone()) else {
                    continue;
                };
                let Ok(combinatorial) = multiway::dirichlet_cheeger_for(&g, &problem) else {
                    continue;
                };
                let Ok(brute) =
                    brute_force_nu(&g, 1, 1.0, Flavor::Dirichlet, 9, Some(&problem))
                else {
                    continue;
                };
                cases += 1;
                let gap = (combinatorial - brute.value).abs();
                worst_gap = worst_gap.max(gap);
                if gap > 1e-9 * combinatorial.max(1.0) {
                    counterexamples += 1;
                }
            }
        }
    }
    let checks = vec![
        check(
            "exhaustive Dirichlet Cheeger equals brute-force nu^D_{1,1}",
            counterexamples == 0,
            format!("{cases} domains, worst gap {worst_gap:.3e}"),
        ),
        check(
            "I-hat_1 = I_1 exactly",
            partition_failures == 0,
            format!("{partition_cases} graphs"),
        ),
    ];
    SuiteReport::from_checks(
        "federer-fleming",
        cases + partition_cases,
        counterexamples + partition_failures,
        checks,
    )
}

// --- suite 7: chain-of-cliques trend ------------------------------------------------------

pub fn run_chain_trend(cfg: &VerifyConfig) -> SuiteReport {
    let ks: &[usize] = if cfg.quick { &[4, 8] } else { &[4, 8, 16] };
    let mut checks = Vec::new();
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut fitted: Vec<f64> = Vec::new();
    let mut cgy_values: Vec<f64> = Vec::new();
    let mut winners_ok = true;
    let mut sound_ok = true;

    for &k in ks {
        let path_len = (k as f64).ln().ceil() as usize;
        let Ok((g, family)) = chain_of_cliques(k, k, path_len) else {
            counterexamples += 1;
            continue;
        };
        let Ok(spectrum) = full_spectrum(&g) else {
            counterexamples += 1;
            continue;
        };
        cases += 1;
        let bound = main_bound(&g, &family, 2.0).unwrap();
        fitted.push(bound * (k as f64).ln());
        if spectrum.eigenvalues[k].max(0.0).sqrt() > bound + 1e-9 {
            sound_ok = false;
            counterexamples += 1;
        }
        let cgy = cgy_bound_discrete(&g, &family, &spectrum).unwrap();
        if let Some(v) = cgy.value {
            cgy_values.push(v);
        }
        let cmp = compare_bounds(&g, &family, Some(&spectrum)).unwrap();
        if cmp.numeric_winner != "main" || cmp.predicted_winner != "main" {
            winners_ok = false;
            counterexamples += 1;
        }
    }
    let mean = fitted.iter().sum::<f64>() / fitted.len().max(1) as f64;
    let stable = fitted
        .iter()
        .all(|c| (c - mean).abs() <= 0.25 * mean);
    checks.push(check(
        "main bound ~ C / log k with C stable within 25%",
        stable,
        format!("fitted C values {fitted:?}"),
    ));
    let cgy_min = cgy_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let cgy_max = cgy_values.iter().cloned().fold(0.0f64, f64::max);
    checks.push(check(
        "discrete CGY bound stays Theta(1)",
        cgy_values.len() == ks.len() && cgy_max <= 2.0 && cgy_max <= 2.5 * cgy_min,
        format!("values {cgy_values:?}"),
    ));
    checks.push(check(
        "comparator reports main as winner at every k",
        winners_ok,
        "",
    ));
    checks.push(check(
        "main bound sound against lambda_k",
        sound_ok,
        "",
    ));
    SuiteReport::from_checks("chain-trend", cases, counterexamples, checks)
}

// --- suite 8: sharpness envelope ------------------------------------------------------------

pub fn run_sharpness(cfg: &VerifyConfig) -> SuiteReport {
    // (k, coarse h, fine h): spacings divide the strip width 1/(6(k+1)) and
    // both rectangle heights with a = 1/(k+1).
    let configs: &[(usize, f64, f64)] = if cfg.quick {
        &[(2, 1.0 / 18.0, 1.0 / 36.0)]
    } else {
        &[
            (2, 1.0 / 36.0, 1.0 / 72.0),
            (4, 1.0 / 150.0, 1.0 / 300.0),
            (8, 1.0 / 162.0, 1.0 / 324.0),
        ]
    };
    let mut checks = Vec::new();
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut ratios = Vec::new();
    let mut upper_fits = Vec::new();
    let mut lower_fits = Vec::new();

    for &(k, coarse_h, fine_h) in configs {
        let a = 1.0 / (k as f64 + 1.0);
        let result: Result<(f64, f64, f64, f64)> = (|| {
            let (coarse, _, _) = mesh_ma(k, a, coarse_h)?;
            let (fine, fam, _) = mesh_ma(k, a, fine_h)?;
            let idx = k + 1;
            let coarse_spec = partial_spectrum(&coarse.graph, idx)?;
            let fine_spec = partial_spectrum(&fine.graph, idx)?;
            let scaled_coarse = coarse_spec.eigenvalues[idx] / (coarse_h * coarse_h);
            let scaled_fine = fine_spec.eigenvalues[idx] / (fine_h * fine_h);
            let convergence = (scaled_coarse - scaled_fine).abs() / scaled_fine;
            let bound = main_bound(&fine.graph, &fam, 2.0)?;
            // Physical units: both sides scale as 1/h, so the ratio is
            // bound / (2 sqrt(lambda)).
            let bound_phys = bound / fine_h;
            let value_phys = 2.0 * fine_spec.eigenvalues[idx].sqrt() / fine_h;
            Ok((convergence, bound_phys / value_phys, bound_phys, value_phys))
        })();
        match result {
            Ok((convergence, ratio, bound_phys, value_phys)) => {
                cases += 1;
                ratios.push(ratio);
                upper_fits.push(bound_phys / (k as f64 + 1.0));
                lower_fits.push(value_phys / k as f64);
                checks.push(check(
                    format!("k = {k}: grid convergence within 10%"),
                    convergence <= 0.10,
                    format!("relative change {convergence:.4}"),
                ));
                checks.push(check(
                    format!("k = {k}: bound/value ratio within [1, 20]"),
                    (1.0..=20.0).contains(&ratio),
                    format!("ratio {ratio:.3}"),
                ));
                if !(1.0..=20.0).contains(&ratio) || convergence > 0.10 {
                    counterexamples += 1;
                }
            }
            Err(e) => {
                counterexamples += 1;
                checks.push(check(format!("k = {k}: computation"), false, e.to_string()));
            }
        }
    }
    checks.push(check(
        "ratio stays in one band across k",
        ratios.iter().all(|r| (1.0..=20.0).contains(r)),
        format!("ratios {ratios:?}"),
    ));
    // Two-sided envelope with fitted constants: bound_phys ~ c_up (k+1) and
    // value_phys ~ c_lo k, each stable within a factor 2 across k.
    let stable = |fits: &[f64]| {
        let lo = fits.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = fits.iter().cloned().fold(0.0f64, f64::max);
        !fits.is_empty() && hi <= 2.0 * lo
    };
    checks.push(check(
        "upper envelope bound/(k+1) stable within 2x",
        stable(&upper_fits),
        format!("fitted {upper_fits:?}"),
    ));
    checks.push(check(
        "lower envelope value/k stable within 2x",
        stable(&lower_fits),
        format!("fitted {lower_fits:?}"),
    ));
    SuiteReport::from_checks("sharpness", cases, counterexamples, checks)
}

// --- suite 9: inscribed radius ------------------------------------------------------------------

pub fn run_inrad(cfg: &VerifyConfig) -> SuiteReport {
    let spacings: &[f64] = if cfg.quick {
        &[1.0 / 8.0]
    } else {
        &[1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0]
    };
    let shapes = [
        (
            "square",
            MeshShape::Rectangle {
                width: 1.0,
                height: 1.0,
            },
        ),
        ("disk", MeshShape::Disk { radius: 1.0 }),
    ];
    let mut checks = Vec::new();
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let opts = OptimizerOptions::default();

    for (name, shape) in shapes {
        for &h in spacings {
            for p in [1.5, 2.0] {
                let outcome: Result<(f64, bool)> = (|| {
                    let (mesh, boundary) = mesh_domain_with_boundary(&MeshSpec {
                        shape,
                        spacing: h,
                        boundary: BoundaryHandling::DesignatedBoundarySet,
                    })?;
                    let problem = DirichletProblem::designated(&mesh.graph, boundary.clone())?;
                    let estimate =
                        nu_upper(&mesh.graph, 1, p, Flavor::Dirichlet, Some(&problem), &opts)?;
                    let report = inrad_check(&mesh, &boundary, p, 2.0, &estimate)?;
                    Ok((report.margin, report.passes))
                })();
                match outcome {
                    Ok((margin, passes)) => {
                        cases += 1;
                        let ok = passes && margin > 0.0;
                        if !ok {
                            counterexamples += 1;
                        }
                        checks.push(check(
                            format!("{name} h = {h:.5} p = {p}"),
                            ok,
                            format!("margin {margin:.4}"),
                        ));
                    }
                    Err(e) => {
                        counterexamples += 1;
                        checks.push(check(
                            format!("{name} h = {h:.5} p = {p}"),
                            false,
                            e.to_string(),
                        ));
                    }
                }
            }
        }
    }
    SuiteReport::from_checks("inrad", cases, counterexamples, checks)
}

// --- suite: multiway isoperimetric sweep --------------------------------------------

/// Checks the k-way isoperimetric constant against the subset-family bound
/// over every admissible family with separation at least 2 (the bound exceeds
/// 2 at separation 1 while expansions never do), on all connected graphs up
/// to 5 vertices plus seeded random instances up to the sweep cap.
pub fn run_multiway_sweep(cfg: &VerifyConfig) -> SuiteReport {
    let max_v = cfg.max_v.clamp(5, 8);
    let mut graphs: Vec<WeightedGraph> = Vec::new();
    for n in 2..=5usize {
        graphs.extend(enumerate_connected_graphs(n));
    }
    let extra = if cfg.quick { 5 } else { 25 };
    for i in 0..extra {
        if let Some(g) = sweep_random_graph(cfg.seed.wrapping_add(9), i, max_v) {
            graphs.push(g);
        }
    }
    let mut cases = 0usize;
    let mut counterexamples = 0usize;
    let mut worst_margin = f64::INFINITY;
    for g in &graphs {
        let n = g.vertex_count();
        let dists = all_pairs_distances(g);
        let total = g.total_weight();
        for k in 1..=2usize {
            let labels = k + 1;
            if n < labels {
                continue;
            }
            let Ok(profile) = multiway::multiway_constant(g, k, SearchMode::Exhaustive, false)
            else {
                continue;
            };
            let ik = profile.value;
            enumerate_families(n, labels, &mut |assign| {
                let mut separation = usize::MAX;
                for x in 0..n {
                    if assign[x] == 0 {
                        continue;
                    }
                    for y in (x + 1)..n {
                        if assign[y] != 0 && assign[y] != assign[x] {
                            separation = separation.min(dists[x][y]);
                        }
                    }
                }
                if separation < 2 || separation == usize::MAX {
                    return;
                }
                let mut volumes = vec![0.0; labels];
                for x in 0..n {
                    if assign[x] > 0 {
                        volumes[assign[x] - 1] += g.mu(x);
                    }
                }
                let Ok(bound) = main_bound_from_measures(separation, total, &volumes) else {
                    return;
                };
                cases += 1;
                if ik > bound + 1e-9 {
                    counterexamples += 1;
                }
                worst_margin = worst_margin.min(bound - ik);
            });
        }
    }
    let checks = vec![check(
        "I_k <= subset-family bound over admissible families (D >= 2, k <= 2)",
        counterexamples == 0,
        format!(
            "{} graphs, {cases} families, worst margin {worst_margin:.3e}",
            graphs.len()
        ),
    )];
    SuiteReport::from_checks("multiway", cases, counterexamples, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> VerifyConfig {
        VerifyConfig {
            seed: 7,
            max_v: 7,
            trials: 12,
            quick: true,
        }
    }

    #[test]
    fn quick_main_suite_passes() {
        let report = run_main_soundness(&quick_config());
        assert!(report.passed, "{report:?}");
        assert!(report.cases > 100);
    }

    #[test]
    fn quick_dirichlet_suite_passes() {
        let report = run_dirichlet_soundness(&quick_config());
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn quick_lemma_chain_passes() {
        let report = run_lemma_chain(&quick_config());
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn quick_sandwich_passes() {
        let report = run_sandwich(&quick_config());
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn quick_spectrum_passes() {
        let report = run_spectrum_invariants(&quick_config());
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn quick_federer_fleming_passes() {
        let report = run_federer_fleming(&quick_config());
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nonsense", &quick_config()).is_err());
    }

    #[test]
    fn report_json_is_deterministic() {
        let cfg = quick_config();
        let a = run_suite("federer-fleming", &cfg).unwrap().to_json();
        let b = run_suite("federer-fleming", &cfg).unwrap().to_json();
        assert_eq!(a, b);
    }
}
