//! Turning the bound into an estimator: exhaustive, greedy, and annealed
//! search for the subset family minimizing the main bound.
//!
//! ```bash
//! cargo run --release --example family_search
//! ```

use spectral_bounds::bounds::{search_best_family, FamilySearchMode};
use spectral_bounds::generators::{chain_of_cliques, random_weighted_graph, WeightDist};
use spectral_bounds::spectral::full_spectrum;

fn main() -> spectral_bounds::Result<()> {
    // On the chain of cliques the natural blocks are near-optimal.
    let (g, natural) = chain_of_cliques(2, 3, 2)?;
    let exhaustive = search_best_family(&g, 2, FamilySearchMode::Exhaustive, 50_000_000, 7)?;
    println!(
        "chain: natural-family bound {:.6}, exhaustive optimum {:.6}",
        spectral_bounds::bounds::main_bound(&g, &natural, 2.0)?,
        exhaustive.bound
    );
    println!(
        "optimal sets: {:?} (separation {})",
        exhaustive
            .sets
            .iter()
            .map(|s| s.members().to_vec())
            .collect::<Vec<_>>(),
        exhaustive.separation
    );

    // Heuristics on a random instance; they never beat the exhaustive value.
    let g = random_weighted_graph(12, 0.3, WeightDist::Unit, 5)?;
    let lambda2 = full_spectrum(&g)?.eigenvalues[2];
    let exact = search_best_family(&g, 2, FamilySearchMode::Exhaustive, 50_000_000, 7)?;
    println!(
        "\nrandom |V| = 12: lambda_2^(1/2) = {:.6}, exhaustive bound {:.6} ({} evaluations)",
        lambda2.sqrt(),
        exact.bound,
        exact.evaluations
    );
    for mode in [FamilySearchMode::Greedy, FamilySearchMode::Anneal] {
        let result = search_best_family(&g, 2, mode, 4000, 7)?;
        println!(
            "{mode:?}: bound {:.6}, budget exhausted = {}",
            result.bound, result.budget_exhausted
        );
    }
    Ok(())
}
