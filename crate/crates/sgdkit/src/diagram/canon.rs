//! Canonical PD text for dedup and memoization.
//!
//! Vertex names are semantic (they identify architecture components) and
//! stay fixed, as does their sorted order. Everything else is searched:
//! the rotation shift of every site, the emission order of crossings, and
//! arc labels (assigned by first appearance). Crossings may rotate by two
//! slots without changing the marking; shadows (markings ignored) may
//! rotate by any amount. The lexicographically least label stream wins.

use std::collections::HashMap;

use super::{ArcId, Diagram, SiteKind};

/// Canonical text of a diagram. With `shadow` set, over/under markings are
/// quotiented away (crossing rotations may shift by one slot).
pub fn canonical_pd(d: &Diagram, shadow: bool) -> String {
    let verts: Vec<usize> = d
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.kind == SiteKind::Vertex)
        .map(|(i, _)| i)
        .collect();
    let crossings: Vec<usize> = d
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.kind == SiteKind::Crossing)
        .map(|(i, _)| i)
        .collect();

    let mut search = Search {
        d,
        verts: &verts,
        crossings: &crossings,
        cross_shifts: if shadow { vec![0, 1, 2, 3] } else { vec![0, 2] },
        best: None,
    };
    let mut naming = HashMap::new();
    let mut stream = Vec::new();
    let mut used = vec![false; crossings.len()];
    search.visit_vertex(0, &mut stream, &mut naming, &mut used, false);
    let best = search.best.unwrap_or_default();

    // Render the winning stream back into PD text.
    let mut lines = Vec::new();
    let mut pos = 0usize;
    for &vi in &verts {
        let len = d.site(vi).rot.len();
        let labels: Vec<String> = best[pos..pos + len].iter().map(|l| l.to_string()).collect();
        lines.push(format!("V{}[{}]", d.site(vi).name, labels.join(",")));
        pos += len;
    }
    for k in 0..crossings.len() {
        let labels: Vec<String> = best[pos..pos + 4].iter().map(|l| l.to_string()).collect();
        lines.push(format!("X{}[{}]", k + 1, labels.join(",")));
        pos += 4;
    }
    lines.join("\n")
}

/// True when the diagrams differ only by arc/crossing relabeling and
/// rotation shifts (vertex names must correspond).
pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    canonical_pd(a, false) == canonical_pd(b, false)
}

struct Search<'a> {
    d: &'a Diagram,
    verts: &'a [usize],
    crossings: &'a [usize],
    cross_shifts: Vec<usize>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    /// Compare-and-extend: pushes `labels` onto the stream, returning
    /// whether this branch can still win. `strict` means the prefix is
    /// already strictly less than the best.
    fn admissible(&self, stream: &[u32], strict: bool) -> (bool, bool) {
        if strict {
            return (true, true);
        }
        match &self.best {
            None => (true, true),
            Some(best) => {
                let n = stream.len();
                match stream.cmp(&best[..n].to_vec()) {
                    std::cmp::Ordering::Less => (true, true),
                    std::cmp::Ordering::Equal => (true, false),
                    std::cmp::Ordering::Greater => (false, false),
                }
            }
        }
    }

    fn visit_vertex(
        &mut self,
        vi: usize,
        stream: &mut Vec<u32>,
        naming: &mut HashMap<ArcId, u32>,
        used: &mut Vec<bool>,
        strict: bool,
    ) {
        if vi == self.verts.len() {
            self.visit_crossings(stream, naming, used, strict);
            return;
        }
        let site = self.d.site(self.verts[vi]);
        let deg = site.rot.len();
        let shifts = if deg == 0 { 1 } else { deg };
        for shift in 0..shifts {
            let mut labels = Vec::with_capacity(deg);
            let mut local = naming.clone();
            for k in 0..deg {
                let arc = site.rot[(shift + k) % deg];
                let next = local.len() as u32 + 1;
                labels.push(*local.entry(arc).or_insert(next));
            }
            let base = stream.len();
            stream.extend_from_slice(&labels);
            let (ok, strict2) = self.admissible(stream, strict);
            if ok {
                self.visit_vertex(vi + 1, stream, &mut local, used, strict2);
            }
            stream.truncate(base);
        }
    }

    fn visit_crossings(
        &mut self,
        stream: &mut Vec<u32>,
        naming: &mut HashMap<ArcId, u32>,
        used: &mut Vec<bool>,
        strict: bool,
    ) {
        if used.iter().all(|&u| u) {
            if self
                .best
                .as_ref()
                .map_or(true, |b| stream.as_slice() < b.as_slice())
            {
                self.best = Some(stream.clone());
            }
            return;
        }
        for ci in 0..self.crossings.len() {
            if used[ci] {
                continue;
            }
            let rot = self.d.site(self.crossings[ci]).rot.clone();
            let shifts = self.cross_shifts.clone();
            for &shift in &shifts {
                let mut labels = Vec::with_capacity(4);
                let mut local = naming.clone();
                for k in 0..4 {
                    let arc = rot[(shift + k) % 4];
                    let next = local.len() as u32 + 1;
                    labels.push(*local.entry(arc).or_insert(next));
                }
                let base = stream.len();
                stream.extend_from_slice(&labels);
                let (ok, strict2) = self.admissible(stream, strict);
                if ok {
                    used[ci] = true;
                    self.visit_crossings(stream, &mut local, used, strict2);
                    used[ci] = false;
                }
                stream.truncate(base);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_pd, Diagram, Site};
    use super::*;

    #[test]
    fn rotation_shift_is_quotiented() {
        let a = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
        let b = parse_pd("V1[b,c,a] V2[a,c,b]").unwrap();
        assert_eq!(canonical_pd(&a, false), canonical_pd(&b, false));
    }

    #[test]
    fn vertex_names_are_semantic() {
        let a = parse_pd("V1[a,b,c] V2[c,b,a] V3[d,d]").unwrap();
        let b = parse_pd("V1[a,b,c] V3[c,b,a] V2[d,d]").unwrap();
        assert_ne!(canonical_pd(&a, false), canonical_pd(&b, false));
    }

    #[test]
    fn crossing_rotation_by_two_is_same_marking() {
        let a = parse_pd("V1[a,b,c] V2[c,e,d] X1[d,e,b,a]").unwrap();
        let b = parse_pd("V1[a,b,c] V2[c,e,d] X1[b,a,d,e]").unwrap();
        assert_eq!(canonical_pd(&a, false), canonical_pd(&b, false));
        // Rotation by one changes the marking unless treated as a shadow.
        let m = parse_pd("V1[a,b,c] V2[c,e,d] X1[e,b,a,d]").unwrap();
        assert_ne!(canonical_pd(&a, false), canonical_pd(&m, false));
        assert_eq!(canonical_pd(&a, true), canonical_pd(&m, true));
    }

    #[test]
    fn isomorphism_ignores_arc_names() {
        let a = parse_pd("V1[x,y,z] V2[z,y,x]").unwrap();
        let b = parse_pd("V1[p,q,r] V2[r,q,p]").unwrap();
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn crossing_names_are_free() {
        let a = parse_pd("V1[a,b,c] V2[c,e,d] X7[d,e,b,a]").unwrap();
        let b = parse_pd("V1[a,b,c] V2[c,e,d] X9[d,e,b,a]").unwrap();
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn canonical_of_empty() {
        assert_eq!(canonical_pd(&Diagram::empty(), false), "");
        let iso = Diagram::new(vec![Site::vertex("1", vec![])]).unwrap();
        assert_eq!(canonical_pd(&iso, false), "V1[]");
    }
}
