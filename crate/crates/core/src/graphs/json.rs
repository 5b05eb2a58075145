use serde::{Deserialize, Serialize};

use super::{paley, Edge, Graph, GraphError};

/// Wire form of a graph: `{"n": 5, "edges": [[0,1], ...]}` or the shorthand
/// `{"paley": 17}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphJson {
    Explicit { n: usize, edges: Vec<[usize; 2]> },
    Paley { paley: usize },
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        match self {
            GraphJson::Explicit { n, edges } => Graph::new(*n, edges.iter().map(|&[a, b]| (a, b))),
            GraphJson::Paley { paley: q } => paley(*q),
        }
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson::Explicit {
            n: g.order(),
            edges: g.edges().map(|e: Edge| [e.u(), e.v()]).collect(),
        }
    }
}

impl Graph {
    pub fn from_json_str(s: &str) -> Result<Graph, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        j.to_graph()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .to_graph()
            .map_err(serde::de::Error::custom)
    }
}
