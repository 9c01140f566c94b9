//! Exact p = 2 machinery: the random-walk weighted graph Laplacian, its full
//! spectrum, and Dirichlet spectra on vertex subsets.
//!
//! The Laplacian acts as `(Delta phi)(x) = phi(x) - sum_y phi(y) mu_xy / mu(x)`.
//! All solves go through the symmetric conjugate `I - D^{-1/2} W D^{-1/2}`:
//! scale by mu(x)^{1/2}, solve the symmetric problem, scale back. The spectrum
//! lies in [0, 2] with a simple zero eigenvalue on connected graphs.

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default cap on the dense eigensolver.
pub const DEFAULT_DENSE_BUDGET: usize = 4096;

/// Which eigenvalue problem a spectrum solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    NeumannOnGraph,
    DirichletOnSubset,
}

/// Ascending eigenvalues with eigenvectors of the weighted graph Laplacian or
/// its Dirichlet restriction. Eigenvectors are full-length vertex functions
/// (zero off the free set in the Dirichlet case), normalized in the mu-weighted
/// 2-norm with the largest-magnitude entry positive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub kind: SpectrumKind,
    pub eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

impl SpectrumResult {
    /// k-th nontrivial eigenvalue lambda_k (Neumann indexing: lambda_0 = 0).
    pub fn lambda(&self, k: usize) -> Option<f64> {
        self.eigenvalues.get(k).copied()
    }

    /// Largest eigenvalue lambda_{N-1}.
    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub fn eigenvector(&self, k: usize) -> Option<&[f64]> {
        self.eigenvectors.as_ref().and_then(|v| v.get(k)).map(Vec::as_slice)
    }

    /// Serializes, optionally dropping eigenvectors.
    pub fn to_json(&self, include_vectors: bool) -> serde_json::Value {
        let mut copy = self.clone();
        if !include_vectors {
            copy.eigenvectors = None;
        }
        serde_json::to_value(copy).expect("spectrum serialization cannot fail")
    }
}

/// Applies the weighted graph Laplacian to a vertex function.
pub fn laplacian_apply(graph: &WeightedGraph, phi: &[f64]) -> Vec<f64> {
    let n = graph.vertex_count();
    assert_eq!(phi.len(), n, "function must be defined on all of V");
    (0..n)
        .map(|x| {
            let avg: f64 = graph
                .neighbors(x)
                .iter()
                .map(|&(y, w)| phi[y] * w)
                .sum::<f64>()
                / graph.mu(x);
            phi[x] - avg
        })
        .collect()
}

/// Full spectrum of the weighted graph Laplacian with the default budget.
pub fn full_spectrum(graph: &WeightedGraph) -> Result<SpectrumResult> {
    full_spectrum_with_budget(graph, DEFAULT_DENSE_BUDGET)
}

/// Full spectrum with an explicit dense-solver budget.
pub fn full_spectrum_with_budget(graph: &WeightedGraph, budget: usize) -> Result<SpectrumResult> {
    let n = graph.vertex_count();
    if n > budget {
        return Err(Error::DenseBudgetExceeded { size: n, budget });
    }
    let free: Vec<usize> = (0..n).collect();
    let (eigenvalues, eigenvectors) = dense_conjugate_solve(graph, &free)?;
    let result = SpectrumResult {
        kind: SpectrumKind::NeumannOnGraph,
        eigenvalues,
        eigenvectors: Some(eigenvectors),
    };
    validate_neumann_residuals(graph, &result)?;
    Ok(result)
}

/// The smallest k+1 eigenpairs by Lanczos iteration with deflation against the
/// constant eigenvector; agrees with the dense path where both run.
pub fn partial_spectrum(graph: &WeightedGraph, k: usize) -> Result<SpectrumResult> {
    let n = graph.vertex_count();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!("need 1 <= k < |V| = {n}, got {k}"),
        });
    }
    let sqrt_mu: Vec<f64> = (0..n).map(|x| graph.mu(x).sqrt()).collect();
    // Known eigenpair: lambda_0 = 0 with symmetric-coordinate vector D^{1/2} 1.
    let norm = sqrt_mu.iter().map(|s| s * s).sum::<f64>().sqrt();
    let constant: Vec<f64> = sqrt_mu.iter().map(|s| s / norm).collect();
    let matvec = neumann_operator(graph, &sqrt_mu);
    let (vals, vecs) = lanczos_smallest(n, &matvec, k, &[constant.clone()], 0x5eed, 1e-11)?;

    let mut eigenvalues = vec![0.0];
    eigenvalues.extend(vals);
    let mut eigenvectors = vec![back_transform(&constant, &sqrt_mu, graph)];
    for v in vecs {
        eigenvectors.push(back_transform(&v, &sqrt_mu, graph));
    }
    let result = SpectrumResult {
        kind: SpectrumKind::NeumannOnGraph,
        eigenvalues,
        eigenvectors: Some(eigenvectors),
    };
    validate_neumann_residuals(graph, &result)?;
    Ok(result)
}

/// A Dirichlet eigenvalue problem: functions on `domain` vanishing on the
/// `dirichlet` set, with the quadratic form summed over edges inside `domain`.
///
/// The intrinsic form takes `dirichlet` to be the vertex boundary of the
/// domain; the designated form imposes the condition on a user-chosen set with
/// the domain equal to the whole graph. Either way the free vertices keep all
/// their neighbors inside the domain, so the stiffness diagonal is mu(x).
#[derive(Debug, Clone)]
pub struct DirichletProblem {
    domain: VertexSet,
    dirichlet: VertexSet,
    free: Vec<usize>,
}

impl DirichletProblem {
    /// Dirichlet condition on the vertex boundary of `omega`.
    pub fn intrinsic(graph: &WeightedGraph, omega: VertexSet) -> Result<Self> {
        let dirichlet = graph.vertex_boundary(&omega);
        Self::build(omega, dirichlet)
    }

    /// Dirichlet condition on a designated nonempty boundary set, with the
    /// domain equal to the whole vertex set.
    pub fn designated(graph: &WeightedGraph, boundary: VertexSet) -> Result<Self> {
        if boundary.is_empty() {
            return Err(Error::EmptySet {
                context: "designated boundary",
            });
        }
        Self::build(graph.full_set(), boundary)
    }

    fn build(domain: VertexSet, dirichlet: VertexSet) -> Result<Self> {
        let free: Vec<usize> = domain.iter().filter(|&x| !dirichlet.contains(x)).collect();
        if free.is_empty() {
            return Err(Error::EmptyInterior);
        }
        Ok(DirichletProblem {
            domain,
            dirichlet,
            free,
        })
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn dirichlet_set(&self) -> &VertexSet {
        &self.dirichlet
    }

    /// Free vertices (the interior), sorted.
    pub fn free_vertices(&self) -> &[usize] {
        &self.free
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }
}

/// Full Dirichlet spectrum on `omega` with the condition on its vertex
/// boundary. Only edges with both endpoints inside `omega` enter the form.
pub fn dirichlet_spectrum(graph: &WeightedGraph, omega: &VertexSet) -> Result<SpectrumResult> {
    let problem = DirichletProblem::intrinsic(graph, omega.clone())?;
    dirichlet_spectrum_for(graph, &problem)
}

/// Full Dirichlet spectrum for an explicit problem.
pub fn dirichlet_spectrum_for(
    graph: &WeightedGraph,
    problem: &DirichletProblem,
) -> Result<SpectrumResult> {
    let m = problem.free_count();
    if m > DEFAULT_DENSE_BUDGET {
        return Err(Error::DenseBudgetExceeded {
            size: m,
            budget: DEFAULT_DENSE_BUDGET,
        });
    }
    let (eigenvalues, eigenvectors) = dense_conjugate_solve(graph, &problem.free)?;
    let result = SpectrumResult {
        kind: SpectrumKind::DirichletOnSubset,
        eigenvalues,
        eigenvectors: Some(eigenvectors),
    };
    validate_dirichlet_residuals(graph, problem, &result)?;
    Ok(result)
}

/// The smallest `count` Dirichlet eigenpairs by Lanczos iteration; suited to
/// large meshes where only the bottom of the spectrum is needed.
pub fn dirichlet_smallest(
    graph: &WeightedGraph,
    problem: &DirichletProblem,
    count: usize,
) -> Result<SpectrumResult> {
    let m = problem.free_count();
    if count == 0 || count > m {
        return Err(Error::InvalidParameter {
            name: "count",
            reason: format!("need 1 <= count <= {m}, got {count}"),
        });
    }
    let sqrt_mu: Vec<f64> = problem.free.iter().map(|&x| graph.mu(x).sqrt()).collect();
    let matvec = dirichlet_operator(graph, &problem.free, &sqrt_mu);
    let (vals, vecs) = lanczos_smallest(m, &matvec, count, &[], 0xd1eed, 1e-11)?;
    let eigenvectors = vecs
        .into_iter()
        .map(|v| expand_free_vector(&v, &problem.free, &sqrt_mu, graph.vertex_count()))
        .collect();
    let result = SpectrumResult {
        kind: SpectrumKind::DirichletOnSubset,
        eigenvalues: vals,
        eigenvectors: Some(eigenvectors),
    };
    validate_dirichlet_residuals(graph, problem, &result)?;
    Ok(result)
}

// --- internals -------------------------------------------------------------

/// Dense solve of the symmetric conjugate restricted to `free` indices.
/// Returns ascending eigenvalues and back-transformed full-length vectors.
fn dense_conjugate_solve(
    graph: &WeightedGraph,
    free: &[usize],
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let m = free.len();
    let n = graph.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in free.iter().enumerate() {
        pos[x] = i;
    }
    let sqrt_mu: Vec<f64> = free.iter().map(|&x| graph.mu(x).sqrt()).collect();
    let mut sym = DMatrix::<f64>::zeros(m, m);
    for (i, &x) in free.iter().enumerate() {
        sym[(i, i)] = 1.0;
        for &(y, w) in graph.neighbors(x) {
            let j = pos[y];
            if j != usize::MAX {
                sym[(i, j)] -= w / (sqrt_mu[i] * sqrt_mu[j]);
            }
        }
    }
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut eigenvalues = Vec::with_capacity(m);
    let mut eigenvectors = Vec::with_capacity(m);
    for &idx in &order {
        eigenvalues.push(eig.eigenvalues[idx]);
        let col = eig.eigenvectors.column(idx);
        let sym_vec: Vec<f64> = col.iter().copied().collect();
        eigenvectors.push(expand_free_vector(&sym_vec, free, &sqrt_mu, n));
    }
    Ok((eigenvalues, eigenvectors))
}

/// Back-transforms a symmetric-coordinate vector over `free` to a full-length
/// vertex function, mu-normalized with deterministic sign.
fn expand_free_vector(sym_vec: &[f64], free: &[usize], sqrt_mu: &[f64], n: usize) -> Vec<f64> {
    let mut full = vec![0.0; n];
    for (i, &x) in free.iter().enumerate() {
        full[x] = sym_vec[i] / sqrt_mu[i];
    }
    // The conjugate vector has unit 2-norm, which makes `full` mu-normalized
    // already; re-normalize defensively and fix the sign.
    let norm: f64 = free
        .iter()
        .enumerate()
        .map(|(i, &x)| full[x] * full[x] * sqrt_mu[i] * sqrt_mu[i])
        .sum::<f64>()
        .sqrt();
    if norm > 0.0 {
        for v in &mut full {
            *v /= norm;
        }
    }
    fix_sign(&mut full);
    full
}

fn back_transform(sym_vec: &[f64], sqrt_mu: &[f64], graph: &WeightedGraph) -> Vec<f64> {
    let free: Vec<usize> = (0..graph.vertex_count()).collect();
    expand_free_vector(sym_vec, &free, sqrt_mu, graph.vertex_count())
}

/// Makes the largest-magnitude entry positive (first index on ties).
fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    let mut best_abs = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best_abs {
            best_abs = x.abs();
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn neumann_operator<'a>(
    graph: &'a WeightedGraph,
    sqrt_mu: &'a [f64],
) -> impl Fn(&[f64], &mut [f64]) + 'a {
    move |x: &[f64], y: &mut [f64]| {
        for (v, out) in y.iter_mut().enumerate() {
            let mut acc = x[v];
            for &(u, w) in graph.neighbors(v) {
                acc += x[u] * w / (sqrt_mu[v] * sqrt_mu[u]);
            }
            *out = acc;
        }
    }
}

fn dirichlet_operator<'a>(
    graph: &'a WeightedGraph,
    free: &'a [usize],
    sqrt_mu: &'a [f64],
) -> impl Fn(&[f64], &mut [f64]) + 'a {
    let n = graph.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in free.iter().enumerate() {
        pos[x] = i;
    }
    move |x: &[f64], y: &mut [f64]| {
        for (i, out) in y.iter_mut().enumerate() {
            let v = free[i];
            let mut acc = x[i];
            for &(u, w) in graph.neighbors(v) {
                let j = pos[u];
                if j != usize::MAX {
                    acc += x[j] * w / (sqrt_mu[i] * sqrt_mu[j]);
                }
            }
            *out = acc;
        }
    }
}

/// Lanczos with full reorthogonalization for the smallest eigenvalues of a
/// symmetric operator `L = 2I - A_hat`, where the closure applies
/// `A_hat = I + B` with spectrum in [0, 2]. Deflation vectors are projected
/// out of the Krylov basis. Converged Ritz pairs are locked and deflated
/// between restarts (top-down, so spectral order is preserved); breakdowns
/// restart with a fresh orthogonal vector, which handles invariant subspaces
/// such as disconnected free sets.
fn lanczos_smallest(
    n: usize,
    matvec: &impl Fn(&[f64], &mut [f64]),
    count: usize,
    deflate: &[Vec<f64>],
    seed: u64,
    tol: f64,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let effective_dim = n - deflate.len();
    let want = count.min(effective_dim);
    let mut deflate_all: Vec<Vec<f64>> = deflate.to_vec();
    let mut locked: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut last_residual = f64::NAN;
    let mut iterations = 0usize;
    // Warm restart: the best unconverged Ritz vector seeds the next sweep.
    let mut warm: Option<Vec<f64>> = None;
    let mut stalls = 0usize;

    for sweep in 0..400u64 {
        if locked.len() >= want {
            break;
        }
        let remaining = want - locked.len();
        let room = n - deflate_all.len();
        if room == 0 {
            break;
        }
        let cap = room.min(460);
        let outcome = lanczos_sweep(
            n,
            matvec,
            &deflate_all,
            seed.wrapping_add(sweep),
            remaining,
            cap,
            tol,
            warm.take(),
        )?;
        iterations += outcome.steps;
        if outcome.spanned {
            // Krylov space exhausted the deflated complement: Ritz pairs are
            // exact there; lock everything still needed.
            for (theta, vec) in outcome
                .values
                .into_iter()
                .zip(outcome.vectors)
                .take(remaining)
            {
                deflate_all.push(vec.clone());
                locked.push((theta, vec));
            }
            continue;
        }
        let mut progressed = false;
        for ((theta, resid), vec) in outcome
            .values
            .iter()
            .zip(&outcome.residuals)
            .zip(&outcome.vectors)
        {
            if locked.len() >= want {
                break;
            }
            if *resid > tol {
                last_residual = *resid;
                warm = Some(vec.clone());
                break;
            }
            deflate_all.push(vec.clone());
            locked.push((*theta, vec.clone()));
            progressed = true;
        }
        if progressed {
            stalls = 0;
        } else {
            stalls += 1;
            if stalls > 60 {
                break;
            }
        }
    }
    if locked.len() < want {
        return Err(Error::NoConvergence {
            residual: last_residual,
            iterations,
        });
    }
    // theta are A_hat values; eigenvalues of L ascend as 2 - theta.
    let mut pairs: Vec<(f64, Vec<f64>)> = locked
        .into_iter()
        .map(|(theta, v)| (2.0 - theta, v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.truncate(want);
    Ok(pairs.into_iter().unzip())
}

struct SweepOutcome {
    /// Ritz values of A_hat, descending.
    values: Vec<f64>,
    residuals: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    /// The basis spans the whole deflated complement, so pairs are exact.
    spanned: bool,
    steps: usize,
}

/// One full-reorthogonalization Krylov sweep; stops at convergence of the
/// `want` largest Ritz values, at the basis cap, or when the deflated space
/// is exhausted.
#[allow(clippy::too_many_arguments)]
fn lanczos_sweep(
    n: usize,
    matvec: &impl Fn(&[f64], &mut [f64]),
    deflate: &[Vec<f64>],
    seed: u64,
    want: usize,
    cap: usize,
    tol: f64,
    start: Option<Vec<f64>>,
) -> Result<SweepOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    // betas[j] couples basis[j] and basis[j+1]; kept one behind `alphas`,
    // with the out-coupling of the last step in `beta_out`.
    let mut betas: Vec<f64> = Vec::new();
    let room = n - deflate.len();

    let warm = start.and_then(|mut v| {
        orthogonalize(&mut v, deflate);
        orthogonalize(&mut v, deflate);
        let nv = norm(&v);
        (nv > 1e-12).then(|| {
            for x in &mut v {
                *x /= nv;
            }
            v
        })
    });
    let mut current = match warm {
        Some(v) => v,
        None => fresh_vector(n, &mut rng, deflate, &basis).ok_or(Error::NoConvergence {
            residual: f64::NAN,
            iterations: 0,
        })?,
    };
    let mut work = vec![0.0; n];

    loop {
        matvec(&current, &mut work);
        let alpha = dot(&work, &current);
        basis.push(current.clone());
        alphas.push(alpha);
        for (w, q) in work.iter_mut().zip(&current) {
            *w -= alpha * q;
        }
        orthogonalize(&mut work, deflate);
        orthogonalize(&mut work, &basis);
        orthogonalize(&mut work, deflate);
        orthogonalize(&mut work, &basis);
        let beta_out = norm(&work);
        let m = basis.len();

        if beta_out <= 1e-12 {
            // Invariant subspace. Continue in its orthogonal complement or
            // finish if the complement is exhausted.
            if m >= room {
                let (values, residuals, vectors) = ritz_pairs(&alphas, &betas, 0.0, &basis, want);
                return Ok(SweepOutcome {
                    values,
                    residuals,
                    vectors,
                    spanned: true,
                    steps: m,
                });
            }
            match fresh_vector(n, &mut rng, deflate, &basis) {
                Some(v) => {
                    betas.push(0.0);
                    current = v;
                    continue;
                }
                None => {
                    let (values, residuals, vectors) =
                        ritz_pairs(&alphas, &betas, 0.0, &basis, want);
                    return Ok(SweepOutcome {
                        values,
                        residuals,
                        vectors,
                        spanned: true,
                        steps: m,
                    });
                }
            }
        }

        let exhausted = m >= cap || m >= room;
        let check = exhausted || (m >= 2 * want + 8 && m % 12 == 0);
        if check {
            let (values, residuals, vectors) = ritz_pairs(&alphas, &betas, beta_out, &basis, want);
            let converged =
                values.len() >= want && residuals.iter().take(want).all(|&r| r <= tol);
            if converged || exhausted {
                return Ok(SweepOutcome {
                    values,
                    residuals,
                    vectors,
                    spanned: m >= room,
                    steps: m,
                });
            }
        }
        betas.push(beta_out);
        current = work.iter().map(|w| w / beta_out).collect();
    }
}

/// Ritz values (descending), residual bounds |beta_out s_m|, and Ritz vectors
/// of the current tridiagonal, for the `want` largest.
fn ritz_pairs(
    alphas: &[f64],
    betas: &[f64],
    beta_out: f64,
    basis: &[Vec<f64>],
    want: usize,
) -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
    let m = alphas.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = nalgebra::SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let take = want.min(m);
    let mut vals = Vec::with_capacity(take);
    let mut residuals = Vec::with_capacity(take);
    let mut vecs = Vec::with_capacity(take);
    for &idx in order.iter().take(take) {
        vals.push(eig.eigenvalues[idx]);
        let s = eig.eigenvectors.column(idx);
        residuals.push(beta_out.abs() * s[m - 1].abs());
        let n = basis[0].len();
        let mut v = vec![0.0; n];
        for (j, q) in basis.iter().enumerate() {
            let c = s[j];
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi += c * qi;
            }
        }
        let nv = norm(&v);
        if nv > 0.0 {
            for x in &mut v {
                *x /= nv;
            }
        }
        vecs.push(v);
    }
    (vals, residuals, vecs)
}

fn fresh_vector(
    n: usize,
    rng: &mut ChaCha8Rng,
    deflate: &[Vec<f64>],
    basis: &[Vec<f64>],
) -> Option<Vec<f64>> {
    for _ in 0..40 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        orthogonalize(&mut v, deflate);
        orthogonalize(&mut v, basis);
        orthogonalize(&mut v, deflate);
        orthogonalize(&mut v, basis);
        let nv = norm(&v);
        if nv > 1e-9 {
            for x in &mut v {
                *x /= nv;
            }
            return Some(v);
        }
    }
    None
}

fn orthogonalize(v: &mut [f64], against: &[Vec<f64>]) {
    for q in against {
        let c = dot(v, q);
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= c * qi;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Residual check for Neumann spectra: the unsymmetrized operator applied to
/// each eigenvector must reproduce it within 1e-8 * max(1, lambda).
fn validate_neumann_residuals(graph: &WeightedGraph, result: &SpectrumResult) -> Result<()> {
    let vectors = result.eigenvectors.as_ref().expect("vectors present");
    for (lam, phi) in result.eigenvalues.iter().zip(vectors) {
        let image = laplacian_apply(graph, phi);
        let scale = phi.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
        let resid = image
            .iter()
            .zip(phi)
            .map(|(ax, x)| (ax - lam * x).abs())
            .fold(0.0f64, f64::max)
            / scale;
        if resid > 1e-8 * lam.abs().max(1.0) {
            return Err(Error::NoConvergence {
                residual: resid,
                iterations: 0,
            });
        }
    }
    Ok(())
}

/// Residual check for Dirichlet spectra on the free vertices.
fn validate_dirichlet_residuals(
    graph: &WeightedGraph,
    problem: &DirichletProblem,
    result: &SpectrumResult,
) -> Result<()> {
    let vectors = result.eigenvectors.as_ref().expect("vectors present");
    let domain_mask = problem.domain().mask();
    for (lam, phi) in result.eigenvalues.iter().zip(vectors) {
        let scale = phi.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
        for &x in problem.free_vertices() {
            let mut acc = phi[x] * graph.mu(x);
            for &(y, w) in graph.neighbors(x) {
                if domain_mask[y] {
                    acc -= phi[y] * w;
                }
            }
            // acc = (A phi)(x); compare against lam * mu(x) * phi(x).
            let resid = (acc - lam * graph.mu(x) * phi[x]).abs() / (graph.mu(x) * scale);
            if resid > 1e-8 * lam.abs().max(1.0) {
                return Err(Error::NoConvergence {
                    residual: resid,
                    iterations: 0,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        chain_of_cliques, complete_graph, path_graph, random_weighted_graph, WeightDist,
    };

    #[test]
    fn laplacian_on_constant_is_zero() {
        let g = random_weighted_graph(8, 0.5, WeightDist::Uniform(0.5, 2.0), 1).unwrap();
        let phi = vec![3.25; 8];
        for v in laplacian_apply(&g, &phi) {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn laplacian_on_p2() {
        let g = path_graph(2);
        let image = laplacian_apply(&g, &[1.0, -1.0]);
        assert_eq!(image, vec![2.0, -2.0]);
    }

    #[test]
    fn laplacian_matches_dense_matrix_oracle() {
        let g = random_weighted_graph(9, 0.45, WeightDist::Uniform(0.2, 3.0), 4).unwrap();
        let phi: Vec<f64> = (0..9).map(|i| ((i * 7 + 3) % 5) as f64 - 2.0).collect();
        // Explicit assembly: Delta = I - D^{-1} W.
        let n = 9;
        let mut expected = vec![0.0; n];
        for x in 0..n {
            let mut row = phi[x];
            for y in 0..n {
                row -= phi[y] * g.edge_weight(x, y) / g.mu(x);
            }
            expected[x] = row;
        }
        let got = laplacian_apply(&g, &phi);
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn p2_spectrum() {
        let g = path_graph(2);
        let s = full_spectrum(&g).unwrap();
        assert!((s.eigenvalues[0]).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_spectrum() {
        let g = complete_graph(4);
        let s = full_spectrum(&g).unwrap();
        assert!(s.eigenvalues[0].abs() < 1e-12);
        for k in 1..4 {
            assert!((s.eigenvalues[k] - 4.0 / 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_max_range() {
        for seed in 0..10 {
            let g = random_weighted_graph(9, 0.4, WeightDist::Uniform(0.3, 2.5), seed).unwrap();
            let s = full_spectrum(&g).unwrap();
            let n = 9.0;
            assert!(s.lambda_max() >= n / (n - 1.0) - 1e-10);
            assert!(s.lambda_max() <= 2.0 + 1e-10);
        }
    }

    #[test]
    fn zero_eigenvalue_is_simple() {
        let g = random_weighted_graph(12, 0.3, WeightDist::Unit, 9).unwrap();
        let s = full_spectrum(&g).unwrap();
        assert!(s.eigenvalues[0].abs() < 1e-10);
        assert!(s.eigenvalues[1] > 1e-8);
    }

    #[test]
    fn scaling_invariance() {
        let g = random_weighted_graph(10, 0.4, WeightDist::Uniform(0.5, 2.0), 6).unwrap();
        let a = full_spectrum(&g).unwrap();
        let b = full_spectrum(&g.scale_weights(37.5)).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn partial_matches_full_on_k4() {
        let g = complete_graph(4);
        let s = partial_spectrum(&g, 1).unwrap();
        assert!((s.eigenvalues[1] - 4.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn partial_matches_full_on_p2() {
        let g = path_graph(2);
        let s = partial_spectrum(&g, 1).unwrap();
        assert!((s.eigenvalues[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn partial_matches_full_on_chain_of_cliques() {
        let (g, _) = chain_of_cliques(8, 8, 3).unwrap();
        let full = full_spectrum(&g).unwrap();
        let part = partial_spectrum(&g, 8).unwrap();
        for k in 0..=8 {
            assert!(
                (part.eigenvalues[k] - full.eigenvalues[k]).abs() < 1e-7,
                "k = {k}: {} vs {}",
                part.eigenvalues[k],
                full.eigenvalues[k]
            );
        }
    }

    #[test]
    fn dirichlet_p3_whole_graph_has_zero() {
        let g = path_graph(3);
        let s = dirichlet_spectrum(&g, &g.full_set()).unwrap();
        assert!(s.eigenvalues[0].abs() < 1e-12);
    }

    #[test]
    fn dirichlet_p3_single_free_vertex() {
        // Omega = {0, 1} in the path 0-1-2: boundary {1}, free {0}. The 1x1
        // form gives eigenvalue mu_01 * phi(0)^2 / (mu(0) phi(0)^2) = 1.
        let g = path_graph(3);
        let omega = VertexSet::new(3, [0, 1]).unwrap();
        let s = dirichlet_spectrum(&g, &omega).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_matches_dense_form_oracle() {
        let g = random_weighted_graph(10, 0.3, WeightDist::Uniform(0.4, 1.8), 13).unwrap();
        // A hop ball keeps its center interior, so the problem is nonempty.
        let seed = VertexSet::new(10, [0]).unwrap();
        let mut omega = g.ball(&seed, 2).unwrap();
        if omega.len() == g.vertex_count() {
            omega = g.ball(&seed, 1).unwrap();
        }
        let problem = DirichletProblem::intrinsic(&g, omega.clone()).unwrap();
        let s = dirichlet_spectrum(&g, &omega).unwrap();

        // Explicit form-matrix oracle over the free vertices.
        let free = problem.free_vertices();
        let m = free.len();
        let mask = omega.mask();
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut mass = DMatrix::<f64>::zeros(m, m);
        for (i, &x) in free.iter().enumerate() {
            mass[(i, i)] = g.mu(x);
            let within: f64 = g
                .neighbors(x)
                .iter()
                .filter(|&&(y, _)| mask[y])
                .map(|&(_, w)| w)
                .sum();
            a[(i, i)] = within;
            for (j, &y) in free.iter().enumerate() {
                if i != j {
                    a[(i, j)] = -g.edge_weight(x, y);
                }
            }
        }
        // Generalized problem via mass^{-1/2}.
        let mut c = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                c[(i, j)] = a[(i, j)] / (mass[(i, i)].sqrt() * mass[(j, j)].sqrt());
            }
        }
        let eig = nalgebra::SymmetricEigen::new(c);
        let mut expected: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in s.eigenvalues.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn dirichlet_positive_on_proper_subset() {
        for seed in 0..8 {
            let g = random_weighted_graph(9, 0.4, WeightDist::Unit, seed).unwrap();
            let omega = VertexSet::new(9, 0..7).unwrap();
            if let Ok(s) = dirichlet_spectrum(&g, &omega) {
                assert!(s.eigenvalues[0] > 0.0);
            }
        }
    }

    #[test]
    fn dirichlet_monotone_in_domain() {
        for seed in 0..8 {
            let g = random_weighted_graph(10, 0.4, WeightDist::Uniform(0.5, 2.0), seed).unwrap();
            let small = VertexSet::new(10, 0..6).unwrap();
            let large = VertexSet::new(10, 0..9).unwrap();
            let (Ok(s_small), Ok(s_large)) =
                (dirichlet_spectrum(&g, &small), dirichlet_spectrum(&g, &large))
            else {
                continue;
            };
            let k = s_small.eigenvalues.len().min(s_large.eigenvalues.len());
            for i in 0..k {
                assert!(
                    s_large.eigenvalues[i] <= s_small.eigenvalues[i] + 1e-10,
                    "seed {seed}, index {i}"
                );
            }
        }
    }

    #[test]
    fn dirichlet_smallest_agrees_with_dense() {
        let g = random_weighted_graph(30, 0.2, WeightDist::Uniform(0.5, 2.0), 21).unwrap();
        let omega = VertexSet::new(30, 0..24).unwrap();
        let problem = DirichletProblem::intrinsic(&g, omega.clone()).unwrap();
        if problem.free_count() < 4 {
            return;
        }
        let dense = dirichlet_spectrum(&g, &omega).unwrap();
        let part = dirichlet_smallest(&g, &problem, 3).unwrap();
        for i in 0..3 {
            assert!((dense.eigenvalues[i] - part.eigenvalues[i]).abs() < 1e-7);
        }
    }

    #[test]
    fn designated_boundary_problem() {
        let g = path_graph(5);
        let boundary = VertexSet::new(5, [0, 4]).unwrap();
        let problem = DirichletProblem::designated(&g, boundary).unwrap();
        assert_eq!(problem.free_vertices(), &[1, 2, 3]);
        let s = dirichlet_spectrum_for(&g, &problem).unwrap();
        // Interior path with fixed ends: eigenvalues 1 - cos(j pi / 4).
        for (j, lam) in s.eigenvalues.iter().enumerate() {
            let expected = 1.0 - ((j + 1) as f64 * std::f64::consts::PI / 4.0).cos();
            assert!((lam - expected).abs() < 1e-10, "j={j}: {lam} vs {expected}");
        }
    }

    #[test]
    fn spectrum_json_roundtrip() {
        let g = path_graph(3);
        let s = full_spectrum(&g).unwrap();
        let with_vectors = s.to_json(true);
        assert!(with_vectors.get("eigenvectors").is_some());
        let without = s.to_json(false);
        assert!(without.get("eigenvectors").is_none());
        let parsed: SpectrumResult = serde_json::from_value(with_vectors).unwrap();
        assert_eq!(parsed.eigenvalues.len(), 3);
    }
}
