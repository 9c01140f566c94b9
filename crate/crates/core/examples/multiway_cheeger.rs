//! Multi-way isoperimetric constants: expansions, exhaustive and heuristic
//! k-way constants, the Dirichlet Cheeger constant, and the exact p = 1
//! Federer-Fleming identity.
//!
//! ```bash
//! cargo run --example multiway_cheeger
//! ```

use spectral_bounds::generators::chain_of_cliques;
use spectral_bounds::multiway::{
    cheeger_constant, cover_lower_bound_check, dirichlet_cheeger, expansion, multiway_constant,
    SearchMode,
};
use spectral_bounds::spectral::DirichletProblem;
use spectral_bounds::variational::{brute_force_nu, Flavor};
use spectral_bounds::VertexSet;

fn main() -> spectral_bounds::Result<()> {
    let (g, family) = chain_of_cliques(2, 4, 2)?;
    let n = g.vertex_count();
    println!("chain of 3 cliques on {n} vertices");

    // Expansion of a natural block.
    let h = expansion(&g, family.set(0))?;
    println!("expansion of the first clique: {h:.6}");

    // 1-way and 2-way constants; partitions never beat free families.
    let i1 = cheeger_constant(&g)?;
    let i2 = multiway_constant(&g, 2, SearchMode::Exhaustive, false)?;
    let ihat2 = multiway_constant(&g, 2, SearchMode::Exhaustive, true)?;
    println!("I_1 = {i1:.6}, I_2 = {:.6} <= I-hat_2 = {:.6}", i2.value, ihat2.value);

    // Heuristic rounding of the spectral embedding stays above the optimum.
    let heur = multiway_constant(&g, 2, SearchMode::Heuristic, false)?;
    println!("heuristic I_2 = {:.6} (>= exhaustive)", heur.value);

    // Federer-Fleming at p = 1 is exact: the Dirichlet Cheeger constant
    // equals the brute-force first Dirichlet 1-Poincare constant.
    let omega = VertexSet::new(n, 0..5)?;
    let combinatorial = dirichlet_cheeger(&g, &omega)?;
    let problem = DirichletProblem::intrinsic(&g, omega)?;
    let oracle = brute_force_nu(&g, 1, 1.0, Flavor::Dirichlet, 9, Some(&problem))?;
    println!(
        "Dirichlet Cheeger {combinatorial:.9} vs nu^D_(1,1) oracle {:.9}",
        oracle.value
    );

    // Cover-based lower bound for the partition constant.
    let clique: Vec<usize> = family.set(0).iter().collect();
    let mut block0 = clique;
    block0.extend(family.set(1).iter());
    let rest: Vec<usize> = (0..n).filter(|v| !block0.contains(v)).collect();
    let covers = vec![VertexSet::new(n, block0)?, VertexSet::new(n, rest)?];
    let report = cover_lower_bound_check(&g, &covers)?;
    println!(
        "min block Cheeger {:.6} <= I-hat_2 = {:.6} (holds = {})",
        report.min_block_cheeger, report.partition_constant, report.holds
    );
    Ok(())
}
