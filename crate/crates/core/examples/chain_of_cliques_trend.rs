//! The chain-of-cliques experiment: the subset-family bound decays like
//! 1/log k while the discrete CGY bound stays flat, so the comparator picks
//! the subset-family bound at every size.
//!
//! ```bash
//! cargo run --release --example chain_of_cliques_trend
//! ```

use spectral_bounds::bounds::{cgy_bound_discrete, compare_bounds, main_bound};
use spectral_bounds::generators::chain_of_cliques;
use spectral_bounds::spectral::full_spectrum;

fn main() -> spectral_bounds::Result<()> {
    println!("k   |V|   D   lambda_k^(1/2)  main bound  C = bound*ln k  CGY (on lambda_k)  winner");
    for k in [4usize, 8, 16] {
        let path_len = (k as f64).ln().ceil() as usize;
        let (g, family) = chain_of_cliques(k, k, path_len)?;
        let spectrum = full_spectrum(&g)?;
        let bound = main_bound(&g, &family, 2.0)?;
        let cgy = cgy_bound_discrete(&g, &family, &spectrum)?;
        let cmp = compare_bounds(&g, &family, Some(&spectrum))?;
        println!(
            "{k:<3} {:<5} {:<3} {:<15.6} {bound:<11.6} {:<15.6} {:<18.6} {}",
            g.vertex_count(),
            family.separation(&g)?,
            spectrum.eigenvalues[k].sqrt(),
            bound * (k as f64).ln(),
            cgy.value.unwrap_or(f64::NAN),
            cmp.numeric_winner,
        );
    }
    Ok(())
}
