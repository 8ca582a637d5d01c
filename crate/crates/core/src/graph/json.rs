//! Wire format for graphs and relations.
//!
//! ```json
//! {"vertices":["1","2"],"edges":[{"src":"1","dst":"2","mult":1}]}
//! ```
//!
//! `mult` is a positive integer or the string `"inf"`. Relations use the same
//! layout without `mult`.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DagRelation, GraphError, MultiGraph, Multiplicity};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub src: String,
    pub dst: String,
    #[serde(default = "one")]
    pub mult: Multiplicity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<RelationEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEdge {
    pub src: String,
    pub dst: String,
}

fn one() -> Multiplicity {
    Multiplicity::ONE
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(m) => s.serialize_u64(*m),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct MultVisitor;

        impl Visitor<'_> for MultVisitor {
            type Value = Multiplicity;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Multiplicity, E> {
                if v == 0 {
                    return Err(E::custom("multiplicity must be at least 1"));
                }
                Ok(Multiplicity::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Multiplicity, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom("multiplicity must be positive"))
                    .and_then(|v| self.visit_u64(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Multiplicity, E> {
                if v == "inf" {
                    Ok(Multiplicity::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(MultVisitor)
    }
}

impl TryFrom<GraphJson> for MultiGraph {
    type Error = GraphError;

    fn try_from(json: GraphJson) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new(json.vertices)?;
        for e in json.edges {
            g.add_edge(&e.src, &e.dst, e.mult)?;
        }
        Ok(g)
    }
}

impl From<MultiGraph> for GraphJson {
    fn from(g: MultiGraph) -> Self {
        let edges = g
            .edges()
            .map(|e| EdgeRecord {
                src: g.vertices[e.src].clone(),
                dst: g.vertices[e.dst].clone(),
                mult: e.mult,
            })
            .collect();
        GraphJson {
            vertices: g.vertices,
            edges,
        }
    }
}

impl TryFrom<RelationJson> for DagRelation {
    type Error = GraphError;

    fn try_from(json: RelationJson) -> Result<Self, GraphError> {
        DagRelation::new(json.vertices, json.edges.iter().map(|e| (&e.src, &e.dst)))
    }
}

impl From<DagRelation> for RelationJson {
    fn from(r: DagRelation) -> Self {
        let edges = r
            .named_pairs()
            .into_iter()
            .map(|(s, t)| RelationEdge {
                src: s.to_string(),
                dst: t.to_string(),
            })
            .collect();
        RelationJson {
            vertices: r.vertices().to_vec(),
            edges,
        }
    }
}

impl MultiGraph {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }
}

impl DagRelation {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let g = MultiGraph::from_json(
            r#"{"vertices":["1","2"],"edges":[{"src":"1","dst":"2","mult":1}]}"#,
        )
        .unwrap();
        assert_eq!(g.multiplicity(0, 1), Some(Multiplicity::ONE));
        assert_eq!(
            g.to_json(),
            r#"{"vertices":["1","2"],"edges":[{"src":"1","dst":"2","mult":1}]}"#
        );
    }

    #[test]
    fn infinite_token() {
        let f = DagRelation::chain(2).amplify();
        let text = f.to_json();
        assert!(text.contains(r#""mult":"inf""#));
        assert_eq!(MultiGraph::from_json(&text).unwrap(), f);
    }

    #[test]
    fn rejects_bad_multiplicities_and_fields() {
        for bad in [
            r#"{"vertices":["a"],"edges":[{"src":"a","dst":"a","mult":0}]}"#,
            r#"{"vertices":["a"],"edges":[{"src":"a","dst":"a","mult":"many"}]}"#,
            r#"{"vertices":["a"],"edges":[{"src":"a","dst":"a","mult":-2}]}"#,
            r#"{"vertices":["a"],"extra":1}"#,
        ] {
            assert!(
                matches!(MultiGraph::from_json(bad), Err(GraphError::Json(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn relation_json_rejects_cycles() {
        let text =
            r#"{"vertices":["a","b"],"edges":[{"src":"a","dst":"b"},{"src":"b","dst":"a"}]}"#;
        let err = DagRelation::from_json(text).unwrap_err();
        assert!(matches!(err, GraphError::Json(msg) if msg.contains("cycle")));
    }
}
