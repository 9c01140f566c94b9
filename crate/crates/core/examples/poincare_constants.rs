//! p-Poincare constants: Rayleigh quotients, certified upper estimates, the
//! quantized brute-force oracle, and the nu/nu-hat sandwich.
//!
//! ```bash
//! cargo run --example poincare_constants
//! ```

use spectral_bounds::generators::path_graph;
use spectral_bounds::variational::{
    brute_force_nu, median_poincare_check, nu_upper, rayleigh_p, sandwich_check, weighted_median,
    Flavor, OptimizerOptions,
};

fn main() -> spectral_bounds::Result<()> {
    let g = path_graph(5);
    let opts = OptimizerOptions::default();

    // A hand-rolled test function and its quotients.
    let phi = [0.0, 0.2, 1.0, 1.8, 2.0];
    for p in [1.0, 1.5, 2.0, 3.0] {
        let q = rayleigh_p(&g, &phi, p, Flavor::Neumann, None)?;
        println!("neumann quotient of a ramp at p = {p}: {q:.6}");
    }

    // Exact at p = 2 through the eigensolver; certified upper bounds otherwise.
    for p in [1.0, 1.5, 2.0, 3.0] {
        let est = nu_upper(&g, 1, p, Flavor::Neumann, None, &opts)?;
        println!(
            "nu_(1,{p}) estimate {:.6} [{:?}]",
            est.value, est.certification
        );
    }

    // The quantized oracle refines monotonically toward the true infimum.
    for levels in [3, 5, 7, 9] {
        let est = brute_force_nu(&g, 1, 1.5, Flavor::Neumann, levels, None)?;
        println!("brute force at {levels} grid levels: {:.6}", est.value);
    }

    // Sandwich nu <= nu-hat <= 2^p nu, equality at p = 2.
    let report = sandwich_check(&g, 1, 2.0, 9)?;
    println!(
        "p = 2 sandwich: nu = {:.9}, nu-hat = {:.9}, equal = {:?}",
        report.nu.value, report.nu_hat.value, report.equality_p2
    );
    let report = sandwich_check(&g, 1, 3.0, 7)?;
    println!(
        "p = 3 sandwich: nu = {:.6} <= nu-hat = {:.6} <= 8 nu = {:.6}",
        report.nu.value,
        report.nu_hat.value,
        8.0 * report.nu.value
    );

    // The median Poincare inequality with the exhaustive Cheeger constant.
    let med = weighted_median(&g, &phi);
    let mp = median_poincare_check(&g, &phi, med)?;
    println!(
        "median inequality: {:.6} <= {:.6} (I_1 = {:.6})",
        mp.lhs, mp.rhs, mp.cheeger
    );
    Ok(())
}
