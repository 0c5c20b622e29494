//! Spatial graph diagrams as combinatorial maps.
//!
//! A diagram is a set of *sites* — flat vertices of any valence and
//! 4-valent crossings — each carrying a counterclockwise cyclic sequence of
//! arc ends. Arcs are identified by id; every arc id occurs exactly twice
//! across all rotations. At a crossing the strand through slots 0 and 2
//! passes *under* the strand through slots 1 and 3.

mod canon;
mod faces;
pub mod moves;
mod pd;
mod planarity;

pub use canon::{canonical_pd, isomorphic};
pub use faces::{Dart, End};
pub use moves::{Chirality, MoveSpec};

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::absgraph::AbstractGraph;
use crate::{Error, Result};

pub type ArcId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SiteKind {
    Vertex,
    Crossing,
}

/// One map-vertex: a flat vertex or a crossing, with its rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub kind: SiteKind,
    pub name: String,
    /// Arc ends in counterclockwise cyclic order. Crossings have exactly
    /// four; the strand through slots (0,2) is the understrand.
    pub rot: Vec<ArcId>,
}

impl Site {
    pub fn vertex(name: impl Into<String>, rot: Vec<ArcId>) -> Self {
        Site { kind: SiteKind::Vertex, name: name.into(), rot }
    }

    pub fn crossing(name: impl Into<String>, rot: [ArcId; 4]) -> Self {
        Site { kind: SiteKind::Crossing, name: name.into(), rot: rot.to_vec() }
    }

    /// Sort key giving numeric names numeric order.
    pub(crate) fn name_key(&self) -> (u8, u64, String) {
        name_key(&self.name)
    }
}

pub(crate) fn name_key(name: &str) -> (u8, u64, String) {
    match name.parse::<u64>() {
        Ok(n) => (0, n, String::new()),
        Err(_) => (1, 0, name.to_string()),
    }
}

/// Kinds of crossing smoothing. `Plus` joins slot pairs (0-1) and (2-3),
/// `Minus` joins (1-2) and (3-0), `Zero` replaces the crossing by a flat
/// 4-valent vertex with the same rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothing {
    Plus,
    Minus,
    Zero,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    sites: Vec<Site>,
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram::default()
    }

    /// Builds a diagram after validating map invariants: arc ids dense in
    /// `0..n` with each appearing exactly twice, crossing arity 4, unique
    /// site names per kind. Sites are sorted and arcs renumbered in first-
    /// appearance order so equal diagrams compare equal structurally.
    pub fn new(mut sites: Vec<Site>) -> Result<Self> {
        sites.sort_by_key(|s| (s.kind, s.name_key()));
        let mut d = Diagram { sites };
        d.renumber_arcs();
        d.validate()?;
        Ok(d)
    }

    fn renumber_arcs(&mut self) {
        let mut map: HashMap<ArcId, ArcId> = HashMap::new();
        for site in &mut self.sites {
            for a in &mut site.rot {
                let next = map.len() as ArcId;
                *a = *map.entry(*a).or_insert(next);
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut names: HashSet<(SiteKind, &str)> = HashSet::new();
        for s in &self.sites {
            if !names.insert((s.kind, s.name.as_str())) {
                let prefix = match s.kind {
                    SiteKind::Vertex => "V",
                    SiteKind::Crossing => "X",
                };
                return Err(Error::InvalidDiagram(format!(
                    "duplicate site id {prefix}{}",
                    s.name
                )));
            }
            if s.kind == SiteKind::Crossing && s.rot.len() != 4 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing X{} has {} arc ends; crossings need exactly 4",
                    s.name,
                    s.rot.len()
                )));
            }
        }
        let mut counts: BTreeMap<ArcId, usize> = BTreeMap::new();
        for s in &self.sites {
            for &a in &s.rot {
                *counts.entry(a).or_default() += 1;
            }
        }
        for (&a, &c) in &counts {
            if c != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} occurs {c} times; every arc needs exactly 2 ends"
                )));
            }
        }
        for (i, (&a, _)) in counts.iter().enumerate() {
            if a as usize != i {
                return Err(Error::Internal("arc ids are not dense".into()));
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, idx: usize) -> &Site {
        &self.sites[idx]
    }

    pub fn arc_count(&self) -> usize {
        self.sites.iter().map(|s| s.rot.len()).sum::<usize>() / 2
    }

    pub fn crossing_count(&self) -> usize {
        self.sites.iter().filter(|s| s.kind == SiteKind::Crossing).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.sites.iter().filter(|s| s.kind == SiteKind::Vertex).count()
    }

    pub fn crossings(&self) -> impl Iterator<Item = (usize, &Site)> {
        self.sites
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SiteKind::Crossing)
    }

    pub fn find_site(&self, kind: SiteKind, name: &str) -> Option<usize> {
        self.sites.iter().position(|s| s.kind == kind && s.name == name)
    }

    /// Both ends of every arc as (site index, slot) pairs, indexed by arc.
    pub fn arc_ends(&self) -> Vec<[End; 2]> {
        let n = self.arc_count();
        let mut out: Vec<Vec<End>> = vec![Vec::with_capacity(2); n];
        for (si, s) in self.sites.iter().enumerate() {
            for (slot, &a) in s.rot.iter().enumerate() {
                out[a as usize].push(End { site: si, slot });
            }
        }
        out.into_iter()
            .map(|v| {
                debug_assert_eq!(v.len(), 2);
                [v[0], v[1]]
            })
            .collect()
    }

    /// The other end of arc `a`, given one end.
    pub fn other_end(&self, a: ArcId, end: End) -> End {
        let ends = &self.arc_ends()[a as usize];
        if ends[0] == end {
            ends[1]
        } else {
            ends[0]
        }
    }

    /// A fresh site name of the given kind with the given prefix.
    fn fresh_name(&self, kind: SiteKind, prefix: &str) -> String {
        let mut i = 1u32;
        loop {
            let cand = format!("{prefix}{i}");
            if self.find_site(kind, &cand).is_none() {
                return cand;
            }
            i += 1;
        }
    }

    fn max_arc(&self) -> ArcId {
        self.sites
            .iter()
            .flat_map(|s| s.rot.iter().copied())
            .max()
            .map_or(0, |a| a + 1)
    }

    /// Swaps every crossing's over/under marking by rotating its stored
    /// labels one slot. Flat vertices are untouched.
    pub fn mirror(&self) -> Diagram {
        let sites = self
            .sites
            .iter()
            .map(|s| {
                let mut s = s.clone();
                if s.kind == SiteKind::Crossing {
                    s.rot.rotate_left(1);
                }
                s
            })
            .collect();
        Diagram::new(sites).expect("mirroring preserves validity")
    }

    /// Replaces crossing `c` with one of the three smoothings. Crossing
    /// count always drops by exactly one; `Plus`/`Minus` may spawn free
    /// circles, which materialize as 2-valent loop vertices.
    pub fn smooth(&self, c: &str, kind: Smoothing) -> Result<Diagram> {
        let idx = self
            .find_site(SiteKind::Crossing, c)
            .ok_or_else(|| Error::UnknownSite(format!("X{c}")))?;
        match kind {
            Smoothing::Zero => {
                let mut sites = self.sites.clone();
                let name = self.fresh_name(SiteKind::Vertex, "s");
                let s = &mut sites[idx];
                s.kind = SiteKind::Vertex;
                s.name = name;
                Diagram::new(sites)
            }
            Smoothing::Plus => self.splice_out(&[(idx, vec![(0, 1), (2, 3)])]),
            Smoothing::Minus => self.splice_out(&[(idx, vec![(1, 2), (3, 0)])]),
        }
    }

    /// Removes the listed sites, reconnecting strands through the given
    /// slot joins. Arc chains that close up without touching a surviving
    /// site become free circles, materialized as fresh 2-valent loop
    /// vertices. Slots of removed sites that appear in no join may only
    /// carry arcs that vanish entirely with the site.
    pub(crate) fn splice_out(
        &self,
        removals: &[(usize, Vec<(usize, usize)>)],
    ) -> Result<Diagram> {
        let removed: HashSet<usize> = removals.iter().map(|&(i, _)| i).collect();
        // join partner for each removed end
        let mut joined: HashMap<End, End> = HashMap::new();
        for (site, joins) in removals {
            for &(a, b) in joins {
                let ea = End { site: *site, slot: a };
                let eb = End { site: *site, slot: b };
                joined.insert(ea, eb);
                joined.insert(eb, ea);
            }
        }
        let ends = self.arc_ends();
        let partner = |e: End| -> End {
            let a = self.sites[e.site].rot[e.slot];
            let [x, y] = ends[a as usize];
            if x == e {
                y
            } else {
                x
            }
        };

        let mut visited: HashSet<End> = HashSet::new();
        // (surviving end, surviving end) pairs for rebuilt arcs
        let mut new_arcs: Vec<(End, End)> = Vec::new();
        let mut circles = 0usize;

        // Walk chains starting from every surviving end.
        for (si, s) in self.sites.iter().enumerate() {
            if removed.contains(&si) {
                continue;
            }
            for slot in 0..s.rot.len() {
                let start = End { site: si, slot };
                if visited.contains(&start) {
                    continue;
                }
                visited.insert(start);
                let mut cur = partner(start);
                loop {
                    if !removed.contains(&cur.site) {
                        visited.insert(cur);
                        new_arcs.push((start, cur));
                        break;
                    }
                    visited.insert(cur);
                    let j = *joined.get(&cur).ok_or_else(|| {
                        Error::Internal("spliced strand runs into a discarded slot".into())
                    })?;
                    visited.insert(j);
                    cur = partner(j);
                }
            }
        }
        // Remaining unvisited ends on removed sites form closed chains:
        // joined cycles are free circles, unjoined ones vanish.
        for &(si, _) in removals {
            for slot in 0..self.sites[si].rot.len() {
                let start = End { site: si, slot };
                if visited.contains(&start) {
                    continue;
                }
                if joined.contains_key(&start) {
                    // Trace the circle to mark it visited.
                    let mut cur = start;
                    loop {
                        visited.insert(cur);
                        let j = joined[&cur];
                        visited.insert(j);
                        cur = partner(j);
                        if cur == start {
                            break;
                        }
                    }
                    circles += 1;
                } else {
                    // Discarded slot: its arc must close among removed sites.
                    let p = partner(start);
                    if !removed.contains(&p.site) {
                        return Err(Error::Internal(
                            "discarded slot carries an arc to a surviving site".into(),
                        ));
                    }
                    visited.insert(start);
                    visited.insert(p);
                }
            }
        }

        // Rebuild sites with fresh arc ids.
        let mut arc_of_end: HashMap<End, ArcId> = HashMap::new();
        for (i, &(a, b)) in new_arcs.iter().enumerate() {
            arc_of_end.insert(a, i as ArcId);
            arc_of_end.insert(b, i as ArcId);
        }
        let mut sites: Vec<Site> = Vec::new();
        for (si, s) in self.sites.iter().enumerate() {
            if removed.contains(&si) {
                continue;
            }
            let rot = (0..s.rot.len())
                .map(|slot| arc_of_end[&End { site: si, slot }])
                .collect();
            sites.push(Site { kind: s.kind, name: s.name.clone(), rot });
        }
        let mut next_arc = new_arcs.len() as ArcId;
        let mut probe = Diagram { sites: sites.clone() };
        for _ in 0..circles {
            let name = probe.fresh_name(SiteKind::Vertex, "o");
            let site = Site::vertex(name, vec![next_arc, next_arc]);
            probe.sites.push(site.clone());
            sites.push(site);
            next_arc += 1;
        }
        Diagram::new(sites)
    }

    /// Site-connected components (arcs connect sites).
    pub fn components(&self) -> Vec<Diagram> {
        let n = self.sites.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for ends in self.arc_ends() {
            let (a, b) = (find(&mut parent, ends[0].site), find(&mut parent, ends[1].site));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<Site>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(self.sites[i].clone());
        }
        groups
            .into_values()
            .map(|sites| Diagram::new(sites).expect("component of a valid diagram"))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The underlying abstract graph: sites become vertices, arcs become
    /// edges, and 2-valent flat vertices are erased by concatenating their
    /// two arcs (edge subdivision does not change `H`). A component that is
    /// entirely 2-valent keeps one vertex and becomes a single loop.
    pub fn abstract_graph(&self) -> AbstractGraph {
        // Union arcs through 2-valent flat vertices.
        let n_arcs = self.arc_count();
        let mut parent: Vec<usize> = (0..n_arcs).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        let erasable: Vec<bool> = self
            .sites
            .iter()
            .map(|s| s.kind == SiteKind::Vertex && s.rot.len() == 2)
            .collect();
        for (si, s) in self.sites.iter().enumerate() {
            if erasable[si] {
                let (a, b) = (s.rot[0] as usize, s.rot[1] as usize);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        // Each surviving site end contributes one edge endpoint.
        let mut endpoints: HashMap<usize, Vec<u32>> = HashMap::new();
        for (si, s) in self.sites.iter().enumerate() {
            if erasable[si] {
                continue;
            }
            for &a in &s.rot {
                let root = find(&mut parent, a as usize);
                endpoints.entry(root).or_default().push(si as u32);
            }
        }
        let mut g = AbstractGraph::new();
        for (si, _) in self.sites.iter().enumerate() {
            if !erasable[si] {
                g.add_vertex(si as u32);
            }
        }
        let mut next_vertex = self.sites.len() as u32;
        let mut next_edge = 0u32;
        let mut seen_roots: HashSet<usize> = HashSet::new();
        for (root, eps) in endpoints {
            seen_roots.insert(root);
            debug_assert_eq!(eps.len(), 2);
            g.add_edge(next_edge, eps[0], eps[1]);
            next_edge += 1;
        }
        // Arc classes with no surviving endpoint are pure circles.
        let mut circle_roots: HashSet<usize> = HashSet::new();
        for a in 0..n_arcs {
            let root = find(&mut parent, a);
            if !seen_roots.contains(&root) {
                circle_roots.insert(root);
            }
        }
        for _ in 0..circle_roots.len() {
            g.add_vertex(next_vertex);
            g.add_edge(next_edge, next_vertex, next_vertex);
            next_vertex += 1;
            next_edge += 1;
        }
        g
    }
}

pub use pd::{emit_pd, parse_pd, parse_pd_blocks};

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn theta() -> Diagram {
        // Planar theta: rotations reversed between the two vertices.
        Diagram::new(vec![
            Site::vertex("1", vec![0, 1, 2]),
            Site::vertex("2", vec![2, 1, 0]),
        ])
        .unwrap()
    }

    pub(crate) fn example2() -> Diagram {
        // One-crossing diagram isotopic to theta by a vertex twist.
        Diagram::new(vec![
            Site::vertex("1", vec![0, 1, 2]),
            Site::vertex("2", vec![2, 4, 3]),
            Site::crossing("1", [3, 4, 1, 0]),
        ])
        .unwrap()
    }

    #[test]
    fn validation_catches_bad_arcs() {
        let err = Diagram::new(vec![Site::vertex("1", vec![0, 1, 1])]).unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));

        let err = Diagram::new(vec![
            Site::vertex("1", vec![0, 0]),
            Site::vertex("1", vec![1, 1]),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));
    }

    #[test]
    fn smoothing_reduces_crossings() {
        let d = example2();
        for kind in [Smoothing::Plus, Smoothing::Minus, Smoothing::Zero] {
            let s = d.smooth("1", kind).unwrap();
            assert_eq!(s.crossing_count(), 0, "{kind:?}");
        }
        let z = d.smooth("1", Smoothing::Zero).unwrap();
        assert_eq!(z.vertex_count(), 3);
        assert!(z.sites().iter().any(|s| s.rot.len() == 4));
        assert!(d.smooth("9", Smoothing::Zero).is_err());
    }

    #[test]
    fn smoothing_can_shed_circles() {
        // A single kinked unknot: smoothing the kink one way splits off a
        // free circle, which must materialize as a loop vertex.
        let d = Diagram::new(vec![
            Site::vertex("1", vec![0, 1]),
            Site::crossing("1", [0, 2, 2, 1]),
        ])
        .unwrap();
        let plus = d.smooth("1", Smoothing::Plus).unwrap();
        // Joins (0-1) and (2-3): arc0-arc2 chain plus arc2-arc1 chain give
        // one strand through V1; no circle here.
        assert!(plus.validate().is_ok());
        let minus = d.smooth("1", Smoothing::Minus).unwrap();
        assert!(minus.validate().is_ok());
        let total: usize = plus.vertex_count() + minus.vertex_count();
        // One of the two smoothings sheds a circle.
        assert_eq!(total, 3);
    }

    #[test]
    fn mirror_is_involution() {
        let d = example2();
        assert!(canon::isomorphic(&d.mirror().mirror(), &d));
        let t = theta();
        assert_eq!(t.mirror(), t);
    }

    #[test]
    fn abstract_graph_of_theta() {
        let g = theta().abstract_graph();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn abstract_graph_erases_two_valent() {
        // Circle drawn with two 2-valent vertices.
        let d = Diagram::new(vec![
            Site::vertex("1", vec![0, 1]),
            Site::vertex("2", vec![1, 0]),
        ])
        .unwrap();
        let g = d.abstract_graph();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.edges().all(|(_, (u, v))| u == v));
    }

    #[test]
    fn components_split() {
        let d = Diagram::new(vec![
            Site::vertex("1", vec![0, 1, 2]),
            Site::vertex("2", vec![2, 1, 0]),
            Site::vertex("3", vec![3, 3]),
        ])
        .unwrap();
        let comps = d.components();
        assert_eq!(comps.len(), 2);
        assert!(!d.is_connected());
        assert!(theta().is_connected());
    }
}
