//! Planarity of the rotation system by recursive contraction.
//!
//! Over/under markings are irrelevant: crossings are treated as ordinary
//! 4-valent map-vertices. The procedure contracts non-loop arcs one at a
//! time (splicing the two rotations at the contracted arc, which preserves
//! the surface), then repeatedly strips self-loops whose two ends sit in
//! consecutive rotation slots, and drops empty vertices. The map is planar
//! exactly when everything disappears; a leftover loop word with no
//! consecutive pair forces positive genus.

use super::Diagram;

/// Rotation of a single working vertex; entries are arc ids.
type Rot = Vec<u32>;

impl Diagram {
    /// True iff the combinatorial map embeds in the sphere.
    pub fn is_planar(&self) -> bool {
        // Working copy: vertex index -> rotation. Arc ids are shared.
        let mut rots: Vec<Rot> = self.sites.iter().map(|s| s.rot.clone()).collect();

        // Contract non-loop arcs until every arc is a loop.
        loop {
            let mut target: Option<(usize, usize, usize, usize, u32)> = None;
            'outer: for (vi, rot) in rots.iter().enumerate() {
                for (si, &a) in rot.iter().enumerate() {
                    if let Some((vj, sj)) = find_other(&rots, vi, si, a) {
                        if vj != vi {
                            target = Some((vi, si, vj, sj, a));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((vi, si, vj, sj, _)) = target else { break };
            // Splice: rotation of the merged vertex is vi's rotation after
            // slot si followed by vj's after slot sj, dropping both ends.
            let ra = rots[vi].clone();
            let rb = rots[vj].clone();
            let mut merged: Rot = Vec::with_capacity(ra.len() + rb.len() - 2);
            for k in 1..ra.len() {
                merged.push(ra[(si + k) % ra.len()]);
            }
            for k in 1..rb.len() {
                merged.push(rb[(sj + k) % rb.len()]);
            }
            rots[vi] = merged;
            rots.swap_remove(vj);
        }

        // Now every vertex carries only loops: reduce each loop word by
        // deleting consecutive equal pairs (cyclically).
        rots.iter().all(|rot| reduces_to_empty(rot))
    }
}

fn find_other(rots: &[Rot], vi: usize, si: usize, arc: u32) -> Option<(usize, usize)> {
    for (vj, rot) in rots.iter().enumerate() {
        for (sj, &a) in rot.iter().enumerate() {
            if a == arc && (vj, sj) != (vi, si) {
                return Some((vj, sj));
            }
        }
    }
    None
}

/// Reduction of a cyclic word where each symbol occurs twice: repeatedly
/// remove a symbol whose two occurrences are cyclically adjacent. Succeeds
/// exactly when the chord diagram of the word is noncrossing.
fn reduces_to_empty(rot: &[u32]) -> bool {
    let mut word: Vec<u32> = rot.to_vec();
    loop {
        if word.is_empty() {
            return true;
        }
        let n = word.len();
        let mut removed = false;
        for i in 0..n {
            let j = (i + 1) % n;
            if word[i] == word[j] && i != j {
                let (lo, hi) = (i.min(j), i.max(j));
                word.remove(hi);
                word.remove(lo);
                removed = true;
                break;
            }
        }
        if !removed {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{example2, theta};
    use super::super::{Diagram, Site};

    #[test]
    fn theta_planar() {
        assert!(theta().is_planar());
    }

    #[test]
    fn twisted_theta_planar() {
        assert!(example2().is_planar());
    }

    #[test]
    fn mismatched_theta_rotations_nonplanar() {
        // Same cyclic order on both sides embeds theta on the torus.
        let d = Diagram::new(vec![
            Site::vertex("1", vec![0, 1, 2]),
            Site::vertex("2", vec![0, 1, 2]),
        ])
        .unwrap();
        assert!(!d.is_planar());
        assert_eq!(d.genus_oracle().unwrap(), 1);
    }

    #[test]
    fn k5_nonplanar_any_rotation() {
        // K5 admits no genus-0 rotation system.
        let mut arcs = Vec::new();
        for i in 0..5u32 {
            for j in (i + 1)..5 {
                arcs.push((i, j));
            }
        }
        let rot_of = |v: u32| -> Vec<u32> {
            arcs.iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i as u32)
                .collect()
        };
        let d = Diagram::new(
            (0..5u32)
                .map(|v| Site::vertex(format!("{}", v + 1), rot_of(v)))
                .collect(),
        )
        .unwrap();
        assert!(!d.is_planar());
    }

    #[test]
    fn planarity_ignores_markings() {
        let d = example2();
        assert_eq!(d.is_planar(), d.mirror().is_planar());
    }

    #[test]
    fn empty_and_isolated_planar() {
        assert!(Diagram::empty().is_planar());
        let d = Diagram::new(vec![Site::vertex("1", vec![])]).unwrap();
        assert!(d.is_planar());
    }
}
