//! System architecture input: components with ports, port-to-port
//! interconnects, and the vertex model used for comparison.
//!
//! JSON shape:
//!
//! ```json
//! {
//!   "model": "pliable",
//!   "nodes": [{"id": "n1", "ports": ["p1", "p2", "p3"], "fixed_port_order": false}],
//!   "edges": [{"id": "e1", "from": ["n1", "p1"], "to": ["n2", "p1"]}]
//! }
//! ```

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::yamada::Mode;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArchNode {
    pub id: String,
    /// Ordered port list; the order is the counterclockwise rotation when
    /// `fixed_port_order` is set.
    pub ports: Vec<String>,
    #[serde(default)]
    pub fixed_port_order: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArchEdge {
    pub id: String,
    pub from: (String, String),
    pub to: (String, String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SystemArchitecture {
    pub model: Mode,
    pub nodes: Vec<ArchNode>,
    pub edges: Vec<ArchEdge>,
}

impl SystemArchitecture {
    pub fn from_json(text: &str) -> Result<Self> {
        let arch: SystemArchitecture =
            serde_json::from_str(text).map_err(|e| Error::Arch(format!("bad JSON: {e}")))?;
        arch.validate()?;
        Ok(arch)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("architecture serializes")
    }

    /// Structural validation: unique ids, every port used exactly once,
    /// endpoints resolve, and fixed port orders wherever the model needs
    /// rigid disks.
    pub fn validate(&self) -> Result<()> {
        let mut node_ids = HashSet::new();
        for n in &self.nodes {
            if !node_ids.insert(n.id.as_str()) {
                return Err(Error::Arch(format!("duplicate node id `{}`", n.id)));
            }
            let mut ports = HashSet::new();
            for p in &n.ports {
                if !ports.insert(p.as_str()) {
                    return Err(Error::Arch(format!(
                        "duplicate port `{p}` on node `{}`",
                        n.id
                    )));
                }
            }
        }
        let mut edge_ids = HashSet::new();
        let mut used: HashSet<(String, String)> = HashSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.as_str()) {
                return Err(Error::Arch(format!("duplicate edge id `{}`", e.id)));
            }
            for (node, port) in [&e.from, &e.to] {
                let n = self
                    .node(node)
                    .ok_or_else(|| Error::Arch(format!("edge `{}` references unknown node `{node}`", e.id)))?;
                if !n.ports.contains(port) {
                    return Err(Error::Arch(format!(
                        "edge `{}` references unknown port `{node}.{port}`",
                        e.id
                    )));
                }
                if !used.insert((node.clone(), port.clone())) {
                    return Err(Error::Arch(format!("port `{node}.{port}` used twice")));
                }
            }
        }
        for n in &self.nodes {
            for p in &n.ports {
                if !used.contains(&(n.id.clone(), p.clone())) {
                    return Err(Error::Arch(format!("port `{}.{p}` is unused", n.id)));
                }
            }
        }
        if self.model != Mode::Pliable {
            if let Some(n) = self.nodes.iter().find(|n| !n.fixed_port_order) {
                return Err(Error::Arch(format!(
                    "model `{}` requires fixed_port_order on every node (node `{}`)",
                    self.model, n.id
                )));
            }
        }
        Ok(())
    }

    pub fn node(&self, id: &str) -> Option<&ArchNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn valency(&self, id: &str) -> usize {
        self.node(id).map_or(0, |n| n.ports.len())
    }

    /// Edges with endpoints resolved to (node index, port index).
    pub(crate) fn resolved_edges(&self) -> Vec<(usize, (usize, usize), (usize, usize))> {
        let node_index: BTreeMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();
        self.edges
            .iter()
            .enumerate()
            .map(|(ei, e)| {
                let f = node_index[e.from.0.as_str()];
                let t = node_index[e.to.0.as_str()];
                let fp = self.nodes[f].ports.iter().position(|p| *p == e.from.1).unwrap();
                let tp = self.nodes[t].ports.iter().position(|p| *p == e.to.1).unwrap();
                (ei, (f, fp), (t, tp))
            })
            .collect()
    }

    /// True when the node-edge incidence graph is connected.
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let edges = self.resolved_edges();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (_, (f, _), (t, _)) in &edges {
            adj[*f].push(*t);
            adj[*t].push(*f);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The standard two-node, three-edge test architecture.
#[cfg(test)]
pub(crate) fn theta_arch() -> SystemArchitecture {
    SystemArchitecture::from_json(
        r#"{
          "model": "pliable",
          "nodes": [
            {"id": "1", "ports": ["a", "b", "c"]},
            {"id": "2", "ports": ["a", "b", "c"]}
          ],
          "edges": [
            {"id": "e1", "from": ["1", "a"], "to": ["2", "a"]},
            {"id": "e2", "from": ["1", "b"], "to": ["2", "b"]},
            {"id": "e3", "from": ["1", "c"], "to": ["2", "c"]}
          ]
        }"#,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let arch = theta_arch();
        assert_eq!(arch.nodes.len(), 2);
        assert_eq!(arch.valency("1"), 3);
        assert!(arch.is_connected());
    }

    #[test]
    fn rejects_double_port_use() {
        let bad = r#"{
          "model": "pliable",
          "nodes": [{"id": "1", "ports": ["a", "b"]}],
          "edges": [
            {"id": "e1", "from": ["1", "a"], "to": ["1", "a"]},
            {"id": "e2", "from": ["1", "b"], "to": ["1", "b"]}
          ]
        }"#;
        assert!(SystemArchitecture::from_json(bad).is_err());
    }

    #[test]
    fn flat_requires_fixed_ports() {
        let bad = r#"{
          "model": "flat",
          "nodes": [
            {"id": "1", "ports": ["a", "b"], "fixed_port_order": true},
            {"id": "2", "ports": ["a", "b"]}
          ],
          "edges": [
            {"id": "e1", "from": ["1", "a"], "to": ["2", "a"]},
            {"id": "e2", "from": ["1", "b"], "to": ["2", "b"]}
          ]
        }"#;
        let err = SystemArchitecture::from_json(bad).unwrap_err();
        assert!(err.to_string().contains("fixed_port_order"), "{err}");
    }

    #[test]
    fn loops_and_parallels_allowed() {
        let ok = r#"{
          "model": "pliable",
          "nodes": [{"id": "1", "ports": ["a", "b", "c", "d"]}],
          "edges": [
            {"id": "e1", "from": ["1", "a"], "to": ["1", "b"]},
            {"id": "e2", "from": ["1", "c"], "to": ["1", "d"]}
          ]
        }"#;
        assert!(SystemArchitecture::from_json(ok).is_ok());
    }
}
