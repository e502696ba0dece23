//! JSON hypergraph documents.
//!
//! ```text
//! {"n": 3,
//!  "names": ["a", "b", "c"],                       (optional)
//!  "edges": [{"v": [0, 1], "beta": 0.5},
//!            {"v": [1, 2], "phi": {"--": [1, 0], "+-": [0.3, 0.1],
//!                                  "-+": [0.3, -0.1], "++": [1, 0]}}]}
//! ```
//!
//! Spin-table keys list one sign per vertex in the order of `v`; both the
//! ASCII hyphen and U+2212 are accepted for minus.

use super::{EdgeActivity, Hypergraph, SpinTable};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    edges: Vec<EdgeDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDocument {
    v: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<BTreeMap<String, [f64; 2]>>,
}

fn parse_key(key: &str, k: usize, edge: usize) -> Result<usize> {
    let signs: Vec<char> = key.chars().collect();
    if signs.len() != k {
        return Err(Error::Schema(format!(
            "edge {edge}: spin key {key:?} has length {}, expected {k}",
            signs.len()
        )));
    }
    let mut mask = 0usize;
    for (j, c) in signs.into_iter().enumerate() {
        match c {
            '+' => mask |= 1 << j,
            '-' | '\u{2212}' => {}
            other => {
                return Err(Error::Schema(format!(
                    "edge {edge}: invalid spin character {other:?} in key {key:?}"
                )))
            }
        }
    }
    Ok(mask)
}

fn table_from_doc(phi: &BTreeMap<String, [f64; 2]>, k: usize, edge: usize) -> Result<SpinTable> {
    if phi.len() != 1 << k {
        return Err(Error::TableSize {
            edge,
            got: phi.len(),
            expected: 1 << k,
        });
    }
    let mut values: Vec<Option<Complex64>> = vec![None; 1 << k];
    for (key, [re, im]) in phi {
        let mask = parse_key(key, k, edge)?;
        if values[mask].replace(Complex64::new(*re, *im)).is_some() {
            return Err(Error::Schema(format!(
                "edge {edge}: spin configuration {key:?} given twice"
            )));
        }
    }
    // all 2^k slots are filled: the count matches and keys are distinct
    Ok(SpinTable::from_values(values.into_iter().flatten().collect()))
}

/// Parses and validates a hypergraph document.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let mut parts = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        if let Some(&id) = e.v.iter().find(|&&v| v as usize >= doc.n) {
            return Err(Error::VertexOutOfRange { id, n: doc.n });
        }
        let activity = match (&e.beta, &e.phi) {
            (Some(beta), None) => EdgeActivity::IsingBeta(*beta),
            (None, Some(phi)) => {
                if e.v.len() < 2 {
                    return Err(Error::EdgeTooSmall {
                        edge: i,
                        size: e.v.len(),
                    });
                }
                if e.v.len() > 20 {
                    return Err(Error::Schema(format!(
                        "edge {i}: spin tables are limited to 20 vertices"
                    )));
                }
                EdgeActivity::SpinTable(table_from_doc(phi, e.v.len(), i)?)
            }
            _ => {
                return Err(Error::Schema(format!(
                    "edge {i}: exactly one of \"beta\" and \"phi\" is required"
                )))
            }
        };
        parts.push((e.v.clone(), activity));
    }
    let g = Hypergraph::from_parts(doc.n, parts)?;
    match doc.names {
        Some(names) => g.with_names(names),
        None => Ok(g),
    }
}

/// Serializes a hypergraph to the document format (tables keyed in sorted
/// vertex order, ASCII minus).
pub fn to_json(g: &Hypergraph) -> serde_json::Value {
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let k = e.size();
            match e.activity() {
                EdgeActivity::IsingBeta(beta) => EdgeDocument {
                    v: e.vertices().to_vec(),
                    beta: Some(*beta),
                    phi: None,
                },
                EdgeActivity::SpinTable(table) => {
                    let phi = (0..1usize << k)
                        .map(|mask| {
                            let key: String = (0..k)
                                .map(|j| if mask >> j & 1 == 1 { '+' } else { '-' })
                                .collect();
                            let v = table.get(mask);
                            (key, [v.re, v.im])
                        })
                        .collect();
                    EdgeDocument {
                        v: e.vertices().to_vec(),
                        beta: None,
                        phi: Some(phi),
                    }
                }
            }
        })
        .collect();
    let doc = Document {
        n: g.n(),
        names: g.names().map(<[String]>::to_vec),
        edges,
    };
    serde_json::to_value(doc).expect("hypergraph documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge() {
        let g = parse_hypergraph(r#"{"n":2,"edges":[{"v":[0,1],"beta":0.5}]}"#).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].activity(), &EdgeActivity::IsingBeta(0.5));
    }

    #[test]
    fn rejects_duplicate_vertex() {
        let err = parse_hypergraph(r#"{"n":2,"edges":[{"v":[0,0,1],"beta":0.5}]}"#).unwrap_err();
        assert_eq!(err, Error::DuplicateVertex { edge: 0, id: 0 });
    }

    #[test]
    fn rejects_unnormalized_table() {
        let doc = r#"{"n":2,"edges":[{"v":[0,1],"phi":{"--":[2,0],"+-":[0.5,0],"-+":[0.5,0],"++":[1,0]}}]}"#;
        assert!(matches!(
            parse_hypergraph(doc),
            Err(Error::NotNormalized { edge: 0, .. })
        ));
    }

    #[test]
    fn rejects_schema_problems() {
        assert!(matches!(
            parse_hypergraph(r#"{"n":2,"edges":[{"v":[0,1]}]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            parse_hypergraph(r#"{"n":2,"edges":[{"v":[0,1],"beta":0.1,"phi":{}}]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            parse_hypergraph(r#"{"n":2,"edgez":[]}"#),
            Err(Error::Schema(_))
        ));
        assert_eq!(
            parse_hypergraph(r#"{"n":2,"edges":[{"v":[0,5],"beta":0.1}]}"#),
            Err(Error::VertexOutOfRange { id: 5, n: 2 })
        );
        assert_eq!(
            parse_hypergraph(r#"{"n":2,"edges":[{"v":[0],"beta":0.1}]}"#),
            Err(Error::EdgeTooSmall { edge: 0, size: 1 })
        );
        let short = r#"{"n":2,"edges":[{"v":[0,1],"phi":{"--":[1,0],"++":[1,0]}}]}"#;
        assert!(matches!(parse_hypergraph(short), Err(Error::TableSize { .. })));
    }

    #[test]
    fn unsorted_vertices_reorder_the_table() {
        // listed as [1, 0]: key position 0 is vertex 1
        let doc = "{\"n\":2,\"edges\":[{\"v\":[1,0],\"phi\":{\"\u{2212}\u{2212}\":[1,0],\"+-\":[0.25,0],\"-+\":[0.75,0],\"++\":[1,0]}}]}";
        let g = parse_hypergraph(doc).unwrap();
        let e = &g.edges()[0];
        assert_eq!(e.vertices(), &[0, 1]);
        // only vertex 1 plus: that was key "+-" in the input
        assert_eq!(e.activity().value(2, 0b10).re, 0.25);
        assert_eq!(e.activity().value(2, 0b01).re, 0.75);
    }

    #[test]
    fn names_are_preserved() {
        let g = parse_hypergraph(r#"{"n":2,"names":["a","b"],"edges":[{"v":[0,1],"beta":0.5}]}"#)
            .unwrap();
        assert_eq!(g.names().unwrap(), &["a".to_string(), "b".to_string()]);
        let back = parse_hypergraph(&to_json(&g).to_string()).unwrap();
        assert_eq!(back, g);
    }
}
