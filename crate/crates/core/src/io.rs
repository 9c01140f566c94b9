//! File formats: tab-separated edge lists for graphs and JSON for subset
//! families.
//!
//! Graph TSV: one line per undirected edge, `u<TAB>v<TAB>w` with 0-based
//! integer ids and a positive decimal weight; `#` starts a comment line; the
//! vertex count is 1 + max id and isolated vertices are rejected.
//!
//! Family JSON: `{"sets": [[ids...], ...], "boundary": [ids...]}` with the
//! boundary optional.

use crate::error::{Error, Result};
use crate::graph::{SubsetFamily, VertexSet, WeightedGraph};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Parses the TSV edge-list format.
pub fn parse_graph_tsv(text: &str, source: &str) -> Result<WeightedGraph> {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut max_id = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                path: source.into(),
                line: line_no,
                message: format!("expected `u<TAB>v<TAB>w`, got {} field(s)", fields.len()),
            });
        }
        let parse_id = |s: &str| -> Result<usize> {
            s.trim().parse().map_err(|_| Error::Parse {
                path: source.into(),
                line: line_no,
                message: format!("invalid vertex id `{s}`"),
            })
        };
        let u = parse_id(fields[0])?;
        let v = parse_id(fields[1])?;
        let w: f64 = fields[2].trim().parse().map_err(|_| Error::Parse {
            path: source.into(),
            line: line_no,
            message: format!("invalid weight `{}`", fields[2]),
        })?;
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::Parse {
                path: source.into(),
                line: line_no,
                message: format!("weight must be positive, got {w}"),
            });
        }
        max_id = max_id.max(u).max(v);
        edges.push((u, v, w));
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            path: source.into(),
            line: 0,
            message: "no edges found".into(),
        });
    }
    WeightedGraph::from_edges(max_id + 1, &edges)
}

pub fn read_graph_tsv(path: &Path) -> Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_graph_tsv(&text, &path.display().to_string())
}

/// Serializes a graph back to the TSV format (edges sorted by endpoints).
pub fn graph_to_tsv(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    for (u, v, w) in graph.edges() {
        out.push_str(&format!("{u}\t{v}\t{w}\n"));
    }
    out
}

pub fn write_graph_tsv(graph: &WeightedGraph, path: &Path) -> Result<()> {
    std::fs::write(path, graph_to_tsv(graph))?;
    Ok(())
}

/// On-disk shape of a subset family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub sets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<usize>>,
}

impl FamilySpec {
    pub fn from_family(family: &SubsetFamily, boundary: Option<&VertexSet>) -> Self {
        FamilySpec {
            sets: family
                .sets()
                .iter()
                .map(|s| s.iter().collect())
                .collect(),
            boundary: boundary.map(|b| b.iter().collect()),
        }
    }

    /// Validates against a graph, yielding the family (when any sets are
    /// present) and the optional boundary.
    pub fn realize(
        &self,
        graph: &WeightedGraph,
    ) -> Result<(Option<SubsetFamily>, Option<VertexSet>)> {
        let n = graph.vertex_count();
        let family = if self.sets.is_empty() {
            None
        } else {
            let sets = self
                .sets
                .iter()
                .map(|ids| VertexSet::new(n, ids.iter().copied()))
                .collect::<Result<Vec<_>>>()?;
            Some(SubsetFamily::new(graph, sets)?)
        };
        let boundary = match &self.boundary {
            Some(ids) => Some(VertexSet::new(n, ids.iter().copied())?),
            None => None,
        };
        Ok((family, boundary))
    }
}

pub fn read_family_json(
    path: &Path,
    graph: &WeightedGraph,
) -> Result<(Option<SubsetFamily>, Option<VertexSet>)> {
    let text = std::fs::read_to_string(path)?;
    let spec: FamilySpec = serde_json::from_str(&text)?;
    spec.realize(graph)
}

pub fn write_family_json(
    family: &SubsetFamily,
    boundary: Option<&VertexSet>,
    path: &Path,
) -> Result<()> {
    let spec = FamilySpec::from_family(family, boundary);
    std::fs::write(path, serde_json::to_string_pretty(&spec)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path_graph;

    #[test]
    fn tsv_roundtrip() {
        let g = path_graph(4);
        let text = graph_to_tsv(&g);
        let parsed = parse_graph_tsv(&text, "test").unwrap();
        assert_eq!(g, parsed);
    }

    #[test]
    fn tsv_comments_and_errors() {
        let ok = parse_graph_tsv("# comment\n0\t1\t1.0\n\n1\t2\t0.5\n", "test").unwrap();
        assert_eq!(ok.vertex_count(), 3);

        let err = parse_graph_tsv("0\t1\n", "test").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = parse_graph_tsv("0\t1\t-2.0\n", "test").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        // Isolated vertex 2 implied by max id 3 without incident edges.
        let err = parse_graph_tsv("0\t1\t1.0\n0\t3\t1.0\n", "test").unwrap_err();
        assert!(matches!(err, Error::IsolatedVertex(2)));
    }

    #[test]
    fn family_json_roundtrip() {
        let g = path_graph(5);
        let spec: FamilySpec =
            serde_json::from_str(r#"{"sets": [[0], [3, 4]], "boundary": [2]}"#).unwrap();
        let (family, boundary) = spec.realize(&g).unwrap();
        let family = family.unwrap();
        assert_eq!(family.len(), 2);
        assert_eq!(boundary.unwrap().members(), &[2]);

        let back = FamilySpec::from_family(&family, None);
        assert_eq!(back.sets, vec![vec![0], vec![3, 4]]);
        assert!(back.boundary.is_none());
    }

    #[test]
    fn boundary_only_family_file() {
        let g = path_graph(5);
        let spec: FamilySpec = serde_json::from_str(r#"{"sets": [], "boundary": [0, 4]}"#).unwrap();
        let (family, boundary) = spec.realize(&g).unwrap();
        assert!(family.is_none());
        assert_eq!(boundary.unwrap().members(), &[0, 4]);
    }

    #[test]
    fn family_json_rejects_overlap() {
        let g = path_graph(5);
        let spec: FamilySpec = serde_json::from_str(r#"{"sets": [[0, 1], [1, 2]]}"#).unwrap();
        assert!(spec.realize(&g).is_err());
    }
}
