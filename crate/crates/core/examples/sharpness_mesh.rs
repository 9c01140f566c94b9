//! Sharpness experiment on comb-shaped rectangle-union meshes: the bound on
//! nu_(k+1,2)^(1/2) grows like k+1 and the computed mesh value like k, so
//! their ratio sits in one band across k.
//!
//! ```bash
//! cargo run --release --example sharpness_mesh
//! ```

use spectral_bounds::bounds::main_bound;
use spectral_bounds::generators::mesh_ma;
use spectral_bounds::spectral::partial_spectrum;

fn main() -> spectral_bounds::Result<()> {
    println!("k   h       |V|    bound/h      2*sqrt(lambda)/h   ratio");
    for (k, h) in [(1usize, 1.0 / 24.0), (2, 1.0 / 36.0), (4, 1.0 / 150.0)] {
        let a = 1.0 / (k as f64 + 1.0);
        let (mesh, family, _) = mesh_ma(k, a, h)?;
        let idx = k + 1;
        let spectrum = partial_spectrum(&mesh.graph, idx)?;
        let bound = main_bound(&mesh.graph, &family, 2.0)?;
        // Physical normalization: hop quantities scale by 1/h on both sides.
        let bound_phys = bound / h;
        let value_phys = 2.0 * spectrum.eigenvalues[idx].sqrt() / h;
        println!(
            "{k:<3} 1/{:<5} {:<6} {bound_phys:<12.4} {value_phys:<18.4} {:.4}",
            (1.0 / h).round(),
            mesh.graph.vertex_count(),
            bound_phys / value_phys
        );
    }
    println!("\nthe mesh families realize the guaranteed geometry:");
    let (mesh, family, blocks) = mesh_ma(2, 1.0 / 3.0, 1.0 / 36.0)?;
    let sep_phys = family.separation(&mesh.graph)? as f64 * mesh.spacing;
    println!(
        "  separation {sep_phys:.4} >= 1/(6(k+1)) - 2h = {:.4}",
        1.0 / 18.0 - 2.0 * mesh.spacing
    );
    let total = mesh.graph.total_weight();
    for (alpha, volume) in family.volumes().iter().enumerate() {
        println!(
            "  m(A_{alpha}) = {:.4} (>= 1/(12(k+1)) = {:.4})",
            volume / total,
            1.0 / 36.0
        );
    }
    println!("  covering blocks: {}", blocks.len());
    Ok(())
}
