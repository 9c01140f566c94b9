//! Dirichlet spectra on vertex subsets: intrinsic boundaries, designated
//! boundaries, and domain monotonicity.
//!
//! ```bash
//! cargo run --example dirichlet_problems
//! ```

use spectral_bounds::generators::path_graph;
use spectral_bounds::spectral::{dirichlet_spectrum, dirichlet_spectrum_for, DirichletProblem};
use spectral_bounds::{VertexSet, WeightedGraph};

fn main() -> spectral_bounds::Result<()> {
    let g = path_graph(9);

    // Intrinsic problem: functions on omega vanish on its vertex boundary.
    let omega = VertexSet::new(9, 0..6)?;
    let s = dirichlet_spectrum(&g, &omega)?;
    println!("omega = 0..6, boundary = {{5}}: eigenvalues {:?}", s.eigenvalues);

    // Bigger domains have smaller eigenvalues (domain monotonicity).
    let larger = VertexSet::new(9, 0..8)?;
    let s2 = dirichlet_spectrum(&g, &larger)?;
    println!(
        "first Dirichlet value shrinks {:.6} -> {:.6} as the domain grows",
        s.eigenvalues[0], s2.eigenvalues[0]
    );

    // Designated boundary: fix both endpoints of the path; the interior is a
    // free chain whose eigenvalues are 1 - cos(j pi / 8).
    let boundary = VertexSet::new(9, [0, 8])?;
    let problem = DirichletProblem::designated(&g, boundary)?;
    let s3 = dirichlet_spectrum_for(&g, &problem)?;
    println!("both ends fixed: eigenvalues {:?}", s3.eigenvalues);
    let expected: Vec<f64> = (1..=7)
        .map(|j| 1.0 - (j as f64 * std::f64::consts::PI / 8.0).cos())
        .collect();
    println!("closed form:            {expected:?}");

    // A disconnected union of intervals: the form decomposes blockwise.
    let union = VertexSet::new(9, [0, 1, 2, 5, 6, 7])?;
    let s4 = dirichlet_spectrum(&g, &union)?;
    println!("disjoint union of two intervals: {:?}", s4.eigenvalues);
    drop::<WeightedGraph>(g);
    Ok(())
}
