//! The subset-family eigenvalue bounds and their comparison: the main bound,
//! the Chung-Grigor'yan-Yau bounds, and the Gozlan-Herry bound.
//!
//! ```bash
//! cargo run --example subset_family_bounds
//! ```

use spectral_bounds::bounds::{
    cgy_bound_continuous_form, cgy_bound_discrete, compare_bounds, gozlan_herry_bound,
    gozlan_herry_family, main_bound, main_bound_dirichlet,
};
use spectral_bounds::generators::cycle_graph;
use spectral_bounds::spectral::full_spectrum;
use spectral_bounds::{SubsetFamily, VertexSet};

fn main() -> spectral_bounds::Result<()> {
    let g = cycle_graph(16);
    let family = SubsetFamily::new(
        &g,
        vec![VertexSet::new(16, [0, 1])?, VertexSet::new(16, [8, 9])?],
    )?;
    let spectrum = full_spectrum(&g)?;

    // The main bound dominates lambda_1^(1/2).
    let bound = main_bound(&g, &family, 2.0)?;
    println!(
        "main bound {bound:.6} vs lambda_1^(1/2) = {:.6} at separation {}",
        spectrum.eigenvalues[1].sqrt(),
        family.separation(&g)?
    );

    // Competing bounds on the same family.
    let cgy_cont = cgy_bound_continuous_form(&g, &family)?;
    println!("continuous-form CGY bound: {cgy_cont:.6}");
    let cgy = cgy_bound_discrete(&g, &family, &spectrum)?;
    println!(
        "discrete CGY: delta = {:.4}, lambda_1 <= {:.6}",
        cgy.delta.unwrap(),
        cgy.value.unwrap()
    );

    // The comparison criterion predicts the winner, and the numbers agree.
    let cmp = compare_bounds(&g, &family, Some(&spectrum))?;
    println!(
        "criterion holds = {}, predicted = {}, numeric = {}",
        cmp.main_vs_cgy_criterion, cmp.predicted_winner, cmp.numeric_winner
    );

    // Gozlan-Herry needs its mass condition; one heavy core set satisfies it.
    let core = vec![VertexSet::new(16, 4..13)?];
    if let Some(gh_family) = gozlan_herry_family(&g, &core, 1)? {
        let gh = gozlan_herry_bound(&g, &gh_family, None)?;
        println!(
            "Gozlan-Herry applicable = {}, value = {:?}, main better = {:?}",
            gh.applicable, gh.value, gh.main_better
        );
    }

    // Dirichlet variant: separation also counts the designated boundary.
    let boundary = VertexSet::new(16, [12])?;
    let single = SubsetFamily::new(&g, vec![VertexSet::new(16, [2, 3, 4])?])?;
    let db = main_bound_dirichlet(&g, &single, &boundary, 2.0)?;
    println!("Dirichlet bound with boundary at one vertex: {db:.6}");
    Ok(())
}
