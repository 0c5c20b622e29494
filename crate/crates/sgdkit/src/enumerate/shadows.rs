//! Exhaustive shadow generation.
//!
//! A shadow with `k` crossings is built by distributing the `2k` strand
//! passes over the architecture's edges, ordering the passes along each
//! edge, pairing passes into transversal crossings (two interleavings
//! each), and — at nodes without a fixed port order — enumerating cyclic
//! port orders. Candidates are kept when connected and planar, and
//! deduplicated by canonical PD text under crossing/arc relabeling.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;

use super::arch::SystemArchitecture;
use crate::diagram::{canonical_pd, Diagram, Site, SiteKind};
use crate::{Error, Result};

/// A diagram whose over/under markings carry no meaning yet.
#[derive(Clone, Debug)]
pub struct Shadow(pub Diagram);

impl Shadow {
    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn crossing_count(&self) -> usize {
        self.0.crossing_count()
    }

    pub fn canonical_text(&self) -> String {
        canonical_pd(&self.0, true)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions {
    /// Cap crossings between any pair of edges (and self-crossings of one
    /// edge) at one, suppressing multiple intertwining.
    pub pair_crossing_cap: bool,
}

/// All distinct `k`-crossing shadows of the architecture.
pub fn enumerate_shadows(
    arch: &SystemArchitecture,
    k: usize,
    opts: EnumOptions,
) -> Result<Vec<Shadow>> {
    arch.validate()?;
    let edges = arch.resolved_edges();
    let n_edges = edges.len();
    let mut seen: HashSet<String> = HashSet::new();
    let mut out: Vec<(String, Shadow)> = Vec::new();

    let rotation_options: Vec<Vec<Vec<usize>>> = arch
        .nodes
        .iter()
        .map(|n| {
            let v = n.ports.len();
            if n.fixed_port_order || v <= 2 {
                vec![(0..v).collect()]
            } else {
                // Cyclic orders: first port pinned, the rest permuted.
                (1..v)
                    .permutations(v - 1)
                    .map(|rest| {
                        let mut rot = vec![0usize];
                        rot.extend(rest);
                        rot
                    })
                    .collect()
            }
        })
        .collect();

    for dist in compositions(2 * k, n_edges) {
        // Pass slots: (edge, position along edge).
        let slots: Vec<(usize, usize)> = dist
            .iter()
            .enumerate()
            .flat_map(|(e, &m)| (0..m).map(move |i| (e, i)))
            .collect();
        for matching in perfect_matchings(slots.len()) {
            if opts.pair_crossing_cap {
                let mut pair_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                let mut ok = true;
                for &(a, b) in &matching {
                    let (ea, eb) = (slots[a].0, slots[b].0);
                    let key = (ea.min(eb), ea.max(eb));
                    let c = pair_counts.entry(key).or_default();
                    *c += 1;
                    if *c > 1 {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
            }
            for bits in 0..(1u32 << k) {
                for rots in rotation_options.iter().multi_cartesian_product() {
                    let d = build_shadow(arch, &edges, &dist, &slots, &matching, bits, &rots)?;
                    if !d.is_connected() || !d.is_planar() {
                        continue;
                    }
                    let key = canonical_pd(&d, true);
                    if seen.insert(key.clone()) {
                        out.push((key, Shadow(d)));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, s)| s).collect())
}

/// All over/under assignments of a shadow: exactly `2^c` diagrams.
pub fn resolve(shadow: &Shadow) -> Vec<Diagram> {
    let d = shadow.diagram();
    let crossings: Vec<usize> = d
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.kind == SiteKind::Crossing)
        .map(|(i, _)| i)
        .collect();
    let c = crossings.len();
    let mut out = Vec::with_capacity(1 << c);
    for bits in 0..(1u64 << c) {
        let sites: Vec<Site> = d
            .sites()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut s = s.clone();
                if let Some(pos) = crossings.iter().position(|&ci| ci == i) {
                    if bits >> pos & 1 == 1 {
                        s.rot.rotate_left(1);
                    }
                }
                s
            })
            .collect();
        out.push(Diagram::new(sites).expect("resolution of a valid shadow"));
    }
    out
}

fn build_shadow(
    arch: &SystemArchitecture,
    edges: &[(usize, (usize, usize), (usize, usize))],
    dist: &[usize],
    slots: &[(usize, usize)],
    matching: &[(usize, usize)],
    bits: u32,
    rots: &[&Vec<usize>],
) -> Result<Diagram> {
    // Arc ids along each edge chain: edge e with m passes owns arcs
    // offset..offset+m, from the `from` port to the `to` port.
    let mut offset = Vec::with_capacity(dist.len());
    let mut next = 0u32;
    for &m in dist {
        offset.push(next);
        next += m as u32 + 1;
    }
    let arc = |e: usize, j: usize| offset[e] + j as u32;

    let mut sites = Vec::new();
    for (ni, node) in arch.nodes.iter().enumerate() {
        let rot = rots[ni]
            .iter()
            .map(|&pi| {
                // The arc attached to this port.
                for &(e, (fnode, fport), (tnode, tport)) in edges {
                    if fnode == ni && fport == pi {
                        return Ok(arc(e, 0));
                    }
                    if tnode == ni && tport == pi {
                        return Ok(arc(e, dist[e]));
                    }
                }
                Err(Error::Internal(format!(
                    "port {}.{} not on any edge",
                    node.id, pi
                )))
            })
            .collect::<Result<Vec<u32>>>()?;
        sites.push(Site::vertex(node.id.clone(), rot));
    }
    for (ci, &(a, b)) in matching.iter().enumerate() {
        let (ea, ia) = slots[a];
        let (eb, ib) = slots[b];
        let (in_a, out_a) = (arc(ea, ia), arc(ea, ia + 1));
        let (in_b, out_b) = (arc(eb, ib), arc(eb, ib + 1));
        let rot = if bits >> ci & 1 == 0 {
            [in_a, in_b, out_a, out_b]
        } else {
            [in_a, out_b, out_a, in_b]
        };
        sites.push(Site::crossing(format!("{}", ci + 1), rot));
    }
    Diagram::new(sites)
}

/// Weak compositions of `total` into `parts` nonnegative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(total: usize, idx: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx == cur.len() - 1 {
            cur[idx] = total;
            out.push(cur.clone());
            return;
        }
        for v in 0..=total {
            cur[idx] = v;
            rec(total - v, idx + 1, cur, out);
        }
    }
    rec(total, 0, &mut cur, &mut out);
    out
}

/// Perfect matchings of `0..n` as sorted pairs; empty input gives the
/// empty matching.
fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    debug_assert!(n % 2 == 0);
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut cur = Vec::new();
    fn rec(
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(first) = used.iter().position(|&u| !u) else {
            out.push(cur.clone());
            return;
        };
        used[first] = true;
        for second in first + 1..used.len() {
            if used[second] {
                continue;
            }
            used[second] = true;
            cur.push((first, second));
            rec(used, cur, out);
            cur.pop();
            used[second] = false;
        }
        used[first] = false;
    }
    rec(&mut used, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::arch::theta_arch;
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 3).len(), 1);
        assert_eq!(compositions(4, 1), vec![vec![4]]);
    }

    #[test]
    fn matchings_count() {
        assert_eq!(perfect_matchings(0).len(), 1);
        assert_eq!(perfect_matchings(2).len(), 1);
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(6).len(), 15);
    }

    #[test]
    fn theta_zero_crossing_shadows_exist() {
        let shadows = enumerate_shadows(&theta_arch(), 0, EnumOptions::default()).unwrap();
        assert!(!shadows.is_empty());
        for s in &shadows {
            assert_eq!(s.crossing_count(), 0);
            assert!(s.diagram().is_planar());
            assert_eq!(s.diagram().genus_per_component(), vec![0]);
        }
    }

    #[test]
    fn negative_k_is_unrepresentable_zero_is_fine() {
        // k is unsigned by construction; k = 0 must work.
        assert!(enumerate_shadows(&theta_arch(), 0, EnumOptions::default()).is_ok());
    }

    #[test]
    fn resolve_cardinality() {
        let shadows = enumerate_shadows(&theta_arch(), 1, EnumOptions::default()).unwrap();
        assert!(!shadows.is_empty());
        for s in shadows.iter().take(4) {
            let resolved = resolve(s);
            assert_eq!(resolved.len(), 2);
            let texts: HashSet<String> =
                resolved.iter().map(crate::diagram::emit_pd).collect();
            assert_eq!(texts.len(), 2, "resolutions must differ as PD text");
            for d in &resolved {
                assert_eq!(canonical_pd(d, true), s.canonical_text());
            }
        }
    }

    #[test]
    fn zero_crossing_resolution_is_identity() {
        let shadows = enumerate_shadows(&theta_arch(), 0, EnumOptions::default()).unwrap();
        let r = resolve(&shadows[0]);
        assert_eq!(r.len(), 1);
    }
}
