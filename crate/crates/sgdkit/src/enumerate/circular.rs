//! Circular-layout shadows: nodes on a circle, edges as chords.
//!
//! Two chords cross exactly when their endpoints interleave around the
//! circle, so the representation never lets two edges twist around each
//! other more than once. Parallel edges are drawn as nested non-crossing
//! arcs, loops as crossing-free petals outside the circle.
//!
//! Geometry is exact: node `i` sits at the rational circle point with
//! tangent-half-angle parameter `t_i`, chords are straight segments, and
//! crossing order along a chord and rotation order at nodes and crossings
//! come from exact rational comparisons. Parallel copies perturb their
//! endpoint parameters by a fraction small enough not to disturb the
//! cyclic order.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::arch::SystemArchitecture;
use super::shadows::Shadow;
use crate::diagram::{Diagram, Site};
use crate::{Error, Result};

type Q = BigRational;

fn q(n: i64) -> Q {
    BigRational::from(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pt {
    x: Q,
    y: Q,
}

/// Rational point on the unit circle at tangent-half-angle `t`; `t`
/// increasing sweeps counterclockwise from (1, 0).
fn circle_point(t: &Q) -> Pt {
    let one = q(1);
    let t2 = t * t;
    let den = &one + &t2;
    Pt { x: (&one - &t2) / &den, y: (q(2) * t) / &den }
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    Pt { x: &a.x - &b.x, y: &a.y - &b.y }
}

fn cross(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

/// Strict counterclockwise angle comparison of direction vectors starting
/// from the positive x-axis.
fn angle_less(a: &Pt, b: &Pt) -> bool {
    let zero = q(0);
    let half = |p: &Pt| if p.y < zero || (p.y == zero && p.x < zero) { 1u8 } else { 0u8 };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha < hb;
    }
    cross(a, b) > zero
}

/// Segment intersection parameter of `p1 + s (p2 - p1)` meeting `q1..q2`,
/// if the open segments cross transversally.
fn seg_intersect(p1: &Pt, p2: &Pt, q1: &Pt, q2: &Pt) -> Option<Q> {
    let r = sub(p2, p1);
    let s = sub(q2, q1);
    let denom = cross(&r, &s);
    let zero = q(0);
    if denom == zero {
        return None;
    }
    let qp = sub(q1, p1);
    let t = cross(&qp, &s) / denom.clone();
    let u = cross(&qp, &r) / denom;
    let one = q(1);
    if t > zero && t < one && u > zero && u < one {
        Some(t)
    } else {
        None
    }
}

/// One shadow per node ordering. With `order` given, exactly that cyclic
/// arrangement; otherwise every cyclic order with the first node pinned.
pub fn enumerate_circular(
    arch: &SystemArchitecture,
    order: Option<&[String]>,
) -> Result<Vec<Shadow>> {
    arch.validate()?;
    let orderings: Vec<Vec<usize>> = match order {
        Some(names) => {
            let mut idx = Vec::with_capacity(names.len());
            for name in names {
                let i = arch
                    .nodes
                    .iter()
                    .position(|n| n.id == *name)
                    .ok_or_else(|| Error::Arch(format!("unknown node `{name}` in ordering")))?;
                idx.push(i);
            }
            if idx.len() != arch.nodes.len() {
                return Err(Error::Arch("ordering must list every node once".into()));
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != arch.nodes.len() {
                return Err(Error::Arch("ordering repeats a node".into()));
            }
            vec![idx]
        }
        None => {
            use itertools::Itertools;
            let n = arch.nodes.len();
            if n == 0 {
                return Ok(Vec::new());
            }
            (1..n)
                .permutations(n.saturating_sub(1))
                .map(|rest| {
                    let mut o = vec![0usize];
                    o.extend(rest);
                    o
                })
                .collect()
        }
    };
    orderings
        .into_iter()
        .map(|o| circular_shadow(arch, &o))
        .collect()
}

fn circular_shadow(arch: &SystemArchitecture, order: &[usize]) -> Result<Shadow> {
    let n = arch.nodes.len();
    // Circle parameter of each node (by its position in the ordering).
    let mut t_of_node: Vec<Q> = vec![q(0); n];
    for (pos, &ni) in order.iter().enumerate() {
        t_of_node[ni] = q(pos as i64);
    }
    let edges = arch.resolved_edges();
    let eps = Q::new(BigInt::from(1), BigInt::from(1000 * (edges.len() as i64 + 1)));

    // Geometry per non-loop edge: exact endpoints with parallel-bundle
    // perturbation (copy j of the chord between the same node pair shifts
    // both parameters inward by j * eps).
    struct ChordGeom {
        from_node: usize,
        to_node: usize,
        p_from: Pt,
        p_to: Pt,
    }
    let mut chords: Vec<ChordGeom> = Vec::new();
    let mut loops: Vec<(usize, usize)> = Vec::new(); // (edge, node)
    let mut bundle_counts: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    for &(e, (fnode, _), (tnode, _)) in &edges {
        if fnode == tnode {
            loops.push((e, fnode));
            continue;
        }
        let key = (fnode.min(tnode), fnode.max(tnode));
        let j = *bundle_counts
            .entry(key)
            .and_modify(|c| *c += 1)
            .or_insert(0);
        let jq = q(j as i64) * &eps;
        let (tf, tt) = if fnode < tnode {
            (&t_of_node[fnode] + &jq, &t_of_node[tnode] - &jq)
        } else {
            (&t_of_node[fnode] - &jq, &t_of_node[tnode] + &jq)
        };
        chords.push(ChordGeom {
            from_node: fnode,
            to_node: tnode,
            p_from: circle_point(&tf),
            p_to: circle_point(&tt),
        });
    }

    // Crossings: pairwise transversal chord intersections.
    struct CrossPoint {
        chord_a: usize,
        chord_b: usize,
        s_a: Q,
        s_b: Q,
    }
    let mut points: Vec<CrossPoint> = Vec::new();
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let (a, b) = (&chords[i], &chords[j]);
            if let Some(s_a) = seg_intersect(&a.p_from, &a.p_to, &b.p_from, &b.p_to) {
                let s_b = seg_intersect(&b.p_from, &b.p_to, &a.p_from, &a.p_to)
                    .expect("intersection is symmetric");
                points.push(CrossPoint { chord_a: i, chord_b: j, s_a, s_b });
            }
        }
    }
    // Passes along each chord ordered by parameter.
    let mut passes_on: Vec<Vec<(usize, Q)>> = vec![Vec::new(); chords.len()];
    for (pi, p) in points.iter().enumerate() {
        passes_on[p.chord_a].push((pi, p.s_a.clone()));
        passes_on[p.chord_b].push((pi, p.s_b.clone()));
    }
    for v in &mut passes_on {
        v.sort_by(|a, b| a.1.cmp(&b.1));
    }

    // Arc ids: chord c with m passes owns arcs offset..offset+m.
    let mut offset = Vec::with_capacity(chords.len());
    let mut next = 0u32;
    for (c, _) in chords.iter().enumerate() {
        offset.push(next);
        next += passes_on[c].len() as u32 + 1;
    }
    let arc = |c: usize, j: usize| offset[c] + j as u32;
    // Loop petal arcs come after chord arcs.
    let mut loop_arc: std::collections::BTreeMap<usize, u32> = std::collections::BTreeMap::new();
    for &(e, _) in &loops {
        loop_arc.insert(e, next);
        next += 1;
    }

    // Vertex rotations: all incident ends sorted counterclockwise by exact
    // direction, petals outward.
    let mut sites: Vec<Site> = Vec::new();
    for (ni, node) in arch.nodes.iter().enumerate() {
        let p_node = circle_point(&t_of_node[ni]);
        // (direction, arc id)
        let mut ends: Vec<(Pt, u32)> = Vec::new();
        for (c, chord) in chords.iter().enumerate() {
            if chord.from_node == ni {
                ends.push((sub(&chord.p_to, &chord.p_from), arc(c, 0)));
            }
            if chord.to_node == ni {
                ends.push((sub(&chord.p_from, &chord.p_to), arc(c, passes_on[c].len())));
            }
        }
        let tangent = Pt { x: -p_node.y.clone(), y: p_node.x.clone() };
        for (k, &(e, lnode)) in loops.iter().filter(|(_, ln)| *ln == ni).enumerate() {
            let _ = lnode;
            let scale = &eps * q((k + 1) as i64);
            for sign in [1i64, -1] {
                let dir = Pt {
                    x: &p_node.x + &(&tangent.x * &scale) * q(sign),
                    y: &p_node.y + &(&tangent.y * &scale) * q(sign),
                };
                ends.push((dir, loop_arc[&e]));
            }
        }
        ends.sort_by(|a, b| {
            if a.0 == b.0 {
                std::cmp::Ordering::Equal
            } else if angle_less(&a.0, &b.0) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        sites.push(Site::vertex(
            node.id.clone(),
            ends.into_iter().map(|(_, a)| a).collect(),
        ));
    }

    // Crossing rotations: the four local directions sorted counterclockwise.
    for (pi, p) in points.iter().enumerate() {
        let a = &chords[p.chord_a];
        let b = &chords[p.chord_b];
        let ja = passes_on[p.chord_a]
            .iter()
            .position(|(idx, _)| *idx == pi)
            .unwrap();
        let jb = passes_on[p.chord_b]
            .iter()
            .position(|(idx, _)| *idx == pi)
            .unwrap();
        let da = sub(&a.p_to, &a.p_from);
        let db = sub(&b.p_to, &b.p_from);
        let neg = |v: &Pt| Pt { x: -v.x.clone(), y: -v.y.clone() };
        let mut ends: Vec<(Pt, u32)> = vec![
            (neg(&da), arc(p.chord_a, ja)),      // back toward a's from side
            (da.clone(), arc(p.chord_a, ja + 1)), // onward along a
            (neg(&db), arc(p.chord_b, jb)),
            (db.clone(), arc(p.chord_b, jb + 1)),
        ];
        ends.sort_by(|x, y| {
            if x.0 == y.0 {
                std::cmp::Ordering::Equal
            } else if angle_less(&x.0, &y.0) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let rot = [ends[0].1, ends[1].1, ends[2].1, ends[3].1];
        sites.push(Site::crossing(format!("{}", pi + 1), rot));
    }

    let d = Diagram::new(sites)?;
    debug_assert!(d.is_planar(), "circular shadows are drawn in the plane");
    Ok(Shadow(d))
}

/// Independent crossing count: interleaving chord pairs, counting parallel
/// bundles member by member (they never cross each other).
pub fn interleaving_pairs(arch: &SystemArchitecture, order: &[usize]) -> usize {
    let mut pos = vec![0usize; arch.nodes.len()];
    for (p, &ni) in order.iter().enumerate() {
        pos[ni] = p;
    }
    let edges = arch.resolved_edges();
    let n = arch.nodes.len();
    let mut count = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (_, (a1, _), (a2, _)) = edges[i];
            let (_, (b1, _), (b2, _)) = edges[j];
            if a1 == a2 || b1 == b2 {
                continue; // loops never cross
            }
            // Same node pair: parallel, nested, no crossing.
            if (a1.min(a2), a1.max(a2)) == (b1.min(b2), b1.max(b2)) {
                continue;
            }
            let between = |x: usize, lo: usize, hi: usize| {
                // strictly between lo and hi going counterclockwise
                let rel = |p: usize| (p + n - pos[lo]) % n;
                rel(pos[x]) > 0 && rel(pos[x]) < rel(pos[hi])
            };
            if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                continue; // shared endpoint: generic chords meet only there
            }
            let inside = between(b1, a1, a2);
            let inside2 = between(b2, a1, a2);
            if inside != inside2 {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle_with_diagonals(edges: &[(&str, &str)]) -> SystemArchitecture {
        // Builds a pliable architecture on nodes 1..4 with the given edges.
        let mut ports: std::collections::BTreeMap<&str, Vec<String>> =
            std::collections::BTreeMap::new();
        let mut edge_docs = Vec::new();
        for (i, (a, b)) in edges.iter().enumerate() {
            let pa = format!("p{i}a");
            let pb = format!("p{i}b");
            ports.entry(a).or_default().push(pa.clone());
            ports.entry(b).or_default().push(pb.clone());
            edge_docs.push(format!(
                r#"{{"id": "e{i}", "from": ["{a}", "{pa}"], "to": ["{b}", "{pb}"]}}"#
            ));
        }
        let nodes: Vec<String> = ["1", "2", "3", "4"]
            .iter()
            .map(|id| {
                let plist = ports
                    .get(id)
                    .map(|v| {
                        v.iter()
                            .map(|p| format!("\"{p}\""))
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .unwrap_or_default();
                format!(r#"{{"id": "{id}", "ports": [{plist}]}}"#)
            })
            .collect();
        let json = format!(
            r#"{{"model": "pliable", "nodes": [{}], "edges": [{}]}}"#,
            nodes.join(","),
            edge_docs.join(",")
        );
        SystemArchitecture::from_json(&json).unwrap()
    }

    #[test]
    fn interleaved_chords_cross_once() {
        let arch = four_cycle_with_diagonals(&[("1", "3"), ("2", "4")]);
        let order: Vec<String> = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
        let shadows = enumerate_circular(&arch, Some(&order)).unwrap();
        assert_eq!(shadows.len(), 1);
        assert_eq!(shadows[0].crossing_count(), 1);
        assert_eq!(interleaving_pairs(&arch, &[0, 1, 2, 3]), 1);
    }

    #[test]
    fn nested_chords_do_not_cross() {
        let arch = four_cycle_with_diagonals(&[("1", "2"), ("3", "4")]);
        let order: Vec<String> = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
        let shadows = enumerate_circular(&arch, Some(&order)).unwrap();
        assert_eq!(shadows[0].crossing_count(), 0);
        assert_eq!(interleaving_pairs(&arch, &[0, 1, 2, 3]), 0);
    }

    #[test]
    fn all_orderings_enumerated() {
        let arch = four_cycle_with_diagonals(&[("1", "3"), ("2", "4")]);
        let shadows = enumerate_circular(&arch, None).unwrap();
        assert_eq!(shadows.len(), 6); // (4-1)! cyclic orders
    }
}
