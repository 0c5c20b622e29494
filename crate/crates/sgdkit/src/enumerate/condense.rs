//! Sub-graph condensation: split an architecture along a node subset.
//!
//! The outer system replaces the subset with one super-node carrying a
//! port per severed boundary edge; the inner system keeps the subset and
//! aggregates everything outside into a single boundary node. Port counts
//! across the cut are conserved, so the two pieces reassemble.

use std::collections::HashSet;

use super::arch::{ArchEdge, ArchNode, SystemArchitecture};
use crate::{Error, Result};

fn fresh_node_id(arch: &SystemArchitecture, base: &str) -> String {
    if arch.node(base).is_none() {
        return base.to_string();
    }
    let mut i = 1;
    loop {
        let cand = format!("{base}{i}");
        if arch.node(&cand).is_none() {
            return cand;
        }
        i += 1;
    }
}

/// Splits `arch` along `subset`, returning `(outer, inner)`.
pub fn condense(
    arch: &SystemArchitecture,
    subset: &[String],
) -> Result<(SystemArchitecture, SystemArchitecture)> {
    arch.validate()?;
    let subset: HashSet<&str> = subset.iter().map(|s| s.as_str()).collect();
    if subset.is_empty() {
        return Err(Error::Arch("subset is empty".into()));
    }
    for id in &subset {
        if arch.node(id).is_none() {
            return Err(Error::Arch(format!("unknown node `{id}` in subset")));
        }
    }
    if subset.len() == arch.nodes.len() {
        return Err(Error::Arch("subset covers every node".into()));
    }
    let in_subset = |n: &str| subset.contains(n);

    // Boundary edges in declaration order define the new port orders.
    let boundary: Vec<&ArchEdge> = arch
        .edges
        .iter()
        .filter(|e| in_subset(&e.from.0) != in_subset(&e.to.0))
        .collect();
    if boundary.is_empty() {
        return Err(Error::Arch(
            "subset has no boundary edges; the system splits into disconnected parts".into(),
        ));
    }
    let super_id = fresh_node_id(arch, "super");
    let rest_id = fresh_node_id(arch, "rest");
    let boundary_ports: Vec<String> = boundary.iter().map(|e| e.id.clone()).collect();

    let mut outer = SystemArchitecture {
        model: arch.model,
        nodes: arch
            .nodes
            .iter()
            .filter(|n| !in_subset(&n.id))
            .cloned()
            .collect(),
        edges: Vec::new(),
    };
    outer.nodes.push(ArchNode {
        id: super_id.clone(),
        ports: boundary_ports.clone(),
        fixed_port_order: true,
    });
    for e in &arch.edges {
        let from_in = in_subset(&e.from.0);
        let to_in = in_subset(&e.to.0);
        match (from_in, to_in) {
            (false, false) => outer.edges.push(e.clone()),
            (true, true) => {}
            _ => {
                let mut e2 = e.clone();
                if from_in {
                    e2.from = (super_id.clone(), e.id.clone());
                } else {
                    e2.to = (super_id.clone(), e.id.clone());
                }
                outer.edges.push(e2);
            }
        }
    }

    let mut inner = SystemArchitecture {
        model: arch.model,
        nodes: arch
            .nodes
            .iter()
            .filter(|n| in_subset(&n.id))
            .cloned()
            .collect(),
        edges: Vec::new(),
    };
    inner.nodes.push(ArchNode {
        id: rest_id.clone(),
        ports: boundary_ports,
        fixed_port_order: true,
    });
    for e in &arch.edges {
        let from_in = in_subset(&e.from.0);
        let to_in = in_subset(&e.to.0);
        match (from_in, to_in) {
            (true, true) => inner.edges.push(e.clone()),
            (false, false) => {}
            _ => {
                let mut e2 = e.clone();
                if !from_in {
                    e2.from = (rest_id.clone(), e.id.clone());
                } else {
                    e2.to = (rest_id.clone(), e.id.clone());
                }
                inner.edges.push(e2);
            }
        }
    }

    outer.validate()?;
    inner.validate()?;
    Ok((outer, inner))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> SystemArchitecture {
        // n nodes in a cycle, consecutive nodes connected.
        let nodes: Vec<String> = (1..=n)
            .map(|i| format!(r#"{{"id": "n{i}", "ports": ["l", "r"]}}"#))
            .collect();
        let edges: Vec<String> = (1..=n)
            .map(|i| {
                let j = i % n + 1;
                format!(r#"{{"id": "e{i}", "from": ["n{i}", "r"], "to": ["n{j}", "l"]}}"#)
            })
            .collect();
        SystemArchitecture::from_json(&format!(
            r#"{{"model": "pliable", "nodes": [{}], "edges": [{}]}}"#,
            nodes.join(","),
            edges.join(",")
        ))
        .unwrap()
    }

    #[test]
    fn conservation_across_the_cut() {
        let arch = chain(6);
        let subset: Vec<String> = vec!["n1".into(), "n2".into()];
        let (outer, inner) = condense(&arch, &subset).unwrap();
        let b = 2; // two severed cycle edges
        assert_eq!(outer.valency("super"), b);
        assert_eq!(inner.valency("rest"), b);
        assert_eq!(
            outer.edges.len() + inner.edges.len() - b,
            arch.edges.len()
        );
        assert_eq!(outer.nodes.len(), 6 - 2 + 1);
        assert_eq!(inner.nodes.len(), 2 + 1);
    }

    #[test]
    fn empty_and_full_subsets_rejected() {
        let arch = chain(4);
        assert!(condense(&arch, &[]).is_err());
        let all: Vec<String> = (1..=4).map(|i| format!("n{i}")).collect();
        assert!(condense(&arch, &all).is_err());
        assert!(condense(&arch, &["bogus".into()]).is_err());
    }

    #[test]
    fn disconnected_subset_rejected() {
        // A two-component architecture: condensing one whole component
        // leaves no boundary.
        let json = r#"{
          "model": "pliable",
          "nodes": [
            {"id": "a", "ports": ["p", "q"]},
            {"id": "b", "ports": ["p", "q"]},
            {"id": "c", "ports": ["p", "q"]},
            {"id": "d", "ports": ["p", "q"]}
          ],
          "edges": [
            {"id": "e1", "from": ["a", "p"], "to": ["b", "p"]},
            {"id": "e2", "from": ["a", "q"], "to": ["b", "q"]},
            {"id": "e3", "from": ["c", "p"], "to": ["d", "p"]},
            {"id": "e4", "from": ["c", "q"], "to": ["d", "q"]}
          ]
        }"#;
        let arch = SystemArchitecture::from_json(json).unwrap();
        let err = condense(&arch, &["a".into(), "b".into()]).unwrap_err();
        assert!(err.to_string().contains("boundary"), "{err}");
    }
}
