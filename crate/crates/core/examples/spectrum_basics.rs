//! Build weighted graphs and compute Laplacian spectra.
//!
//! ```bash
//! cargo run --example spectrum_basics
//! ```

use spectral_bounds::generators::{complete_graph, path_graph, random_weighted_graph, WeightDist};
use spectral_bounds::spectral::{full_spectrum, laplacian_apply, partial_spectrum};

fn main() -> spectral_bounds::Result<()> {
    // The two-vertex path has spectrum {0, 2}.
    let p2 = path_graph(2);
    let s = full_spectrum(&p2)?;
    println!("P_2 spectrum: {:?}", s.eigenvalues);

    // Complete graph K_n: the nontrivial eigenvalue n/(n-1) with multiplicity n-1.
    let k4 = complete_graph(4);
    let s = full_spectrum(&k4)?;
    println!("K_4 spectrum: {:?}", s.eigenvalues);

    // The Laplacian kills constants.
    let image = laplacian_apply(&k4, &[5.0; 4]);
    println!("Delta applied to a constant: {image:?}");

    // Iterative solver for the bottom of the spectrum of a bigger instance.
    let g = random_weighted_graph(400, 0.02, WeightDist::Uniform(0.5, 2.0), 42)?;
    let s = partial_spectrum(&g, 3)?;
    println!(
        "random graph on {} vertices, smallest four eigenvalues: {:?}",
        g.vertex_count(),
        s.eigenvalues
    );

    // Spectra are invariant under global weight scaling.
    let scaled = g.scale_weights(10.0);
    let s2 = partial_spectrum(&scaled, 3)?;
    let drift: f64 = s
        .eigenvalues
        .iter()
        .zip(&s2.eigenvalues)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("largest eigenvalue drift after scaling weights by 10: {drift:.2e}");
    Ok(())
}
