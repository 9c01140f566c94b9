//! The on-disk formats: TSV edge lists and JSON subset families, round-tripped
//! through the library.
//!
//! ```bash
//! cargo run --example file_formats
//! ```

use spectral_bounds::generators::cycle_graph;
use spectral_bounds::io::{graph_to_tsv, parse_graph_tsv, FamilySpec};
use spectral_bounds::{SubsetFamily, VertexSet};

fn main() -> spectral_bounds::Result<()> {
    let g = cycle_graph(6);
    let tsv = graph_to_tsv(&g);
    println!("cycle C_6 as TSV:\n{tsv}");
    let parsed = parse_graph_tsv(&tsv, "roundtrip")?;
    assert_eq!(g, parsed);

    let family = SubsetFamily::new(
        &g,
        vec![VertexSet::new(6, [0])?, VertexSet::new(6, [3])?],
    )?;
    let boundary = VertexSet::new(6, [5])?;
    let spec = FamilySpec::from_family(&family, Some(&boundary));
    println!("family JSON:\n{}", serde_json::to_string_pretty(&spec).unwrap());

    let (family_back, boundary_back) = spec.realize(&g)?;
    println!(
        "round-trip: {} sets, boundary {:?}",
        family_back.unwrap().len(),
        boundary_back.unwrap().members()
    );

    // Parse errors carry the offending line.
    let err = parse_graph_tsv("0\t1\t1.0\nbroken line\n", "demo").unwrap_err();
    println!("parse error: {err}");
    Ok(())
}
