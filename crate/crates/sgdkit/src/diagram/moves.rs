//! Site-directed Reidemeister rewrites.
//!
//! Each move is applied at a caller-supplied site; nothing is searched.
//! Legality depends on the vertex model: pliable diagrams admit R1-R6,
//! flat vertex diagrams admit R1-R5 (R6 reorders edges at a disk), and
//! ribbon diagrams admit R2-R5 (an R1 curl twists the band).
//!
//! Move vocabulary:
//! - R1: insert or remove a curl on an arc.
//! - R2: poke one strand across another along a shared face / collapse a
//!   compatible bigon.
//! - R3: slide a strand across the opposite crossing of a trigon.
//! - R4: slide a disjoint strand over (under) a vertex, crossing all of
//!   its edges once.
//! - R5: slide one edge end over (under) its own vertex, crossing the
//!   other edges once.
//! - R6: twist two rotation-adjacent strands at a vertex (pliable only).

use std::collections::{HashMap, HashSet};

use super::faces::{Dart, End};
use super::{ArcId, Diagram, Site, SiteKind};
use crate::yamada::Mode;
use crate::{Error, Result};

/// Handedness selector where a move has two mirror variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chirality {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveSpec {
    /// Curl `arc` near its tail end; `Plus` carries an `A^2` Yamada factor,
    /// `Minus` an `A^-2` factor.
    R1Insert { arc: ArcId, chirality: Chirality },
    /// Remove the curl at this crossing.
    R1Remove { crossing: String },
    /// Push the strand of `dart1` across the strand of `dart2`; both darts
    /// must lie on one face. `over` puts dart1's strand on top at both new
    /// crossings.
    R2Insert { dart1: Dart, dart2: Dart, over: bool },
    /// Collapse the bigon between two crossings.
    R2Remove { c1: String, c2: String },
    /// Slide the strand of `dart` across the opposite corner of its
    /// trigon face.
    R3 { dart: Dart },
    /// Slide the strand of `dart` across vertex `vertex`, entering at the
    /// rotation gap before slot `corner`.
    R4Insert { dart: Dart, vertex: String, corner: usize, over: bool, ccw: bool },
    /// Undo a full strand-over-vertex slide.
    R4Remove { vertex: String },
    /// Slide the edge at `slot` of `vertex` across the vertex.
    R5Insert { vertex: String, slot: usize, over: bool, ccw: bool },
    /// Undo an edge-over-vertex slide anchored at `slot`.
    R5Remove { vertex: String, slot: usize },
    /// Twist the strands at rotation slots (`position`, `position + 1`) of
    /// `vertex`; `first_over` puts the strand at `position` on top.
    R6Insert { vertex: String, position: usize, first_over: bool },
    /// Untwist the crossing attached at slots (`position`, `position + 1`).
    R6Remove { vertex: String, position: usize },
}

impl MoveSpec {
    pub fn legal_in(&self, mode: Mode) -> bool {
        match self {
            MoveSpec::R1Insert { .. } | MoveSpec::R1Remove { .. } => mode != Mode::Ribbon,
            MoveSpec::R6Insert { .. } | MoveSpec::R6Remove { .. } => mode == Mode::Pliable,
            _ => true,
        }
    }
}

impl Diagram {
    /// Applies a Reidemeister move, validating legality for the vertex
    /// model and local applicability of the site.
    pub fn apply_move(&self, spec: &MoveSpec, mode: Mode) -> Result<Diagram> {
        if !spec.legal_in(mode) {
            return Err(Error::MoveMode(mode));
        }
        let out = match spec {
            MoveSpec::R1Insert { arc, chirality } => self.r1_insert(*arc, *chirality),
            MoveSpec::R1Remove { crossing } => self.r1_remove(crossing),
            MoveSpec::R2Insert { dart1, dart2, over } => self.r2_insert(*dart1, *dart2, *over),
            MoveSpec::R2Remove { c1, c2 } => self.r2_remove(c1, c2),
            MoveSpec::R3 { dart } => self.r3(*dart),
            MoveSpec::R4Insert { dart, vertex, corner, over, ccw } => {
                self.r4_insert(*dart, vertex, *corner, *over, *ccw)
            }
            MoveSpec::R4Remove { vertex } => self.r4_remove(vertex),
            MoveSpec::R5Insert { vertex, slot, over, ccw } => {
                self.r5_insert(vertex, *slot, *over, *ccw)
            }
            MoveSpec::R5Remove { vertex, slot } => self.r5_remove(vertex, *slot),
            MoveSpec::R6Insert { vertex, position, first_over } => {
                self.r6_insert(vertex, *position, *first_over)
            }
            MoveSpec::R6Remove { vertex, position } => self.r6_remove(vertex, *position),
        }?;
        out.validate()?;
        Ok(out)
    }

    fn vertex_index(&self, name: &str) -> Result<usize> {
        self.find_site(SiteKind::Vertex, name)
            .ok_or_else(|| Error::UnknownSite(format!("V{name}")))
    }

    fn crossing_index(&self, name: &str) -> Result<usize> {
        self.find_site(SiteKind::Crossing, name)
            .ok_or_else(|| Error::UnknownSite(format!("X{name}")))
    }

    fn check_dart(&self, d: Dart) -> Result<()> {
        let ends = self.arc_ends();
        let a = d.arc as usize;
        if a >= ends.len() || !ends[a].contains(&d.head) {
            return Err(Error::Move(format!("dart on arc {} does not exist", d.arc)));
        }
        Ok(())
    }

    // ---- R1 --------------------------------------------------------

    fn r1_insert(&self, arc: ArcId, chirality: Chirality) -> Result<Diagram> {
        let ends = self.arc_ends();
        if arc as usize >= ends.len() {
            return Err(Error::Move(format!("unknown arc {arc}")));
        }
        let e1 = ends[arc as usize][1];
        let mut sites = self.sites().to_vec();
        let loop_arc = self.max_arc();
        let tail = loop_arc + 1;
        sites[e1.site].rot[e1.slot] = tail;
        let name = self.fresh_name(SiteKind::Crossing, "");
        let rot = match chirality {
            Chirality::Minus => [arc, loop_arc, loop_arc, tail],
            Chirality::Plus => [loop_arc, loop_arc, tail, arc],
        };
        sites.push(Site::crossing(name, rot));
        Diagram::new(sites)
    }

    fn r1_remove(&self, crossing: &str) -> Result<Diagram> {
        let ci = self.crossing_index(crossing)?;
        let rot = &self.site(ci).rot;
        let ends = self.arc_ends();
        let curl = (0..4).find(|&i| {
            let j = (i + 1) % 4;
            rot[i] == rot[j] && {
                let e = ends[rot[i] as usize];
                e == [End { site: ci, slot: i }, End { site: ci, slot: j }]
                    || e == [End { site: ci, slot: j }, End { site: ci, slot: i }]
            }
        });
        let Some(i) = curl else {
            return Err(Error::Move(format!("X{crossing} is not a curl")));
        };
        self.splice_out(&[(ci, vec![((i + 2) % 4, (i + 3) % 4)])])
    }

    // ---- R2 --------------------------------------------------------

    fn r2_insert(&self, d1: Dart, d2: Dart, over: bool) -> Result<Diagram> {
        self.check_dart(d1)?;
        self.check_dart(d2)?;
        if d1.arc == d2.arc {
            return Err(Error::Move("R2 strands must be distinct arcs".into()));
        }
        let faces = self.faces();
        let shared = faces
            .iter()
            .any(|f| f.contains(&d1) && f.contains(&d2));
        if !shared {
            return Err(Error::Move("R2 darts do not share a face".into()));
        }
        let alpha = d1.arc;
        let beta = d2.arc;
        let a2 = d1.head;
        let b2 = d2.head;
        let next = self.max_arc();
        let (alpha2, alpha3, beta2, beta3) = (next, next + 1, next + 2, next + 3);
        let mut sites = self.sites().to_vec();
        sites[a2.site].rot[a2.slot] = alpha3;
        sites[b2.site].rot[b2.slot] = beta3;
        let xn = self.fresh_name(SiteKind::Crossing, "");
        let mut probe = Diagram { sites: sites.clone() };
        probe.sites.push(Site::crossing(xn.clone(), [0, 0, 0, 0]));
        let yn = probe.fresh_name(SiteKind::Crossing, "");
        // dart1's strand through the odd slots when it goes over. The
        // shared face lies to the right of both darts; X is the crossing
        // nearer dart2's head, Y the one nearer dart1's head.
        let (x_rot, y_rot) = if over {
            ([beta, alpha3, beta2, alpha2], [beta2, alpha, beta3, alpha2])
        } else {
            ([alpha3, beta2, alpha2, beta], [alpha, beta3, alpha2, beta2])
        };
        sites.push(Site::crossing(xn, x_rot));
        sites.push(Site::crossing(yn, y_rot));
        Diagram::new(sites)
    }

    fn r2_remove(&self, c1: &str, c2: &str) -> Result<Diagram> {
        let i1 = self.crossing_index(c1)?;
        let i2 = self.crossing_index(c2)?;
        if i1 == i2 {
            return Err(Error::Move("R2 removal needs two distinct crossings".into()));
        }
        let bigon = self.faces().into_iter().find(|f| {
            f.len() == 2 && {
                let s: HashSet<usize> = f.iter().map(|d| d.head.site).collect();
                s == HashSet::from([i1, i2])
            }
        });
        let Some(face) = bigon else {
            return Err(Error::Move(format!("no bigon between X{c1} and X{c2}")));
        };
        // The strand that is over at one crossing must be over at the other.
        let mut over_slots = Vec::new();
        for d in &face {
            over_slots.push(d.head.slot % 2 == 1);
        }
        // face darts arrive at opposite crossings carrying the two bigon
        // arcs; each arc's other end sits at the other crossing.
        let ends = self.arc_ends();
        let mut compatible = true;
        for d in &face {
            let [ea, eb] = ends[d.arc as usize];
            let other = if ea == d.head { eb } else { ea };
            let over_here = d.head.slot % 2 == 1;
            let over_there = other.slot % 2 == 1;
            if over_here != over_there {
                compatible = false;
            }
        }
        if !compatible {
            return Err(Error::Move("bigon strands alternate over/under (a clasp)".into()));
        }
        self.splice_out(&[
            (i1, vec![(0, 2), (1, 3)]),
            (i2, vec![(0, 2), (1, 3)]),
        ])
    }

    // ---- R3 --------------------------------------------------------

    fn r3(&self, dart: Dart) -> Result<Diagram> {
        self.check_dart(dart)?;
        let faces = self.faces();
        let face = faces
            .into_iter()
            .find(|f| f.contains(&dart))
            .ok_or_else(|| Error::Move("dart has no face".into()))?;
        if face.len() != 3 {
            return Err(Error::Move("R3 needs a trigon face".into()));
        }
        // Rotate so the supplied dart is the middle (slider) segment.
        let pos = face.iter().position(|d| *d == dart).unwrap();
        let d_a = face[(pos + 2) % 3];
        let d_b = face[pos];
        let d_c = face[(pos + 1) % 3];
        let (y, z, x) = (d_a.head.site, d_b.head.site, d_c.head.site);
        for &i in &[x, y, z] {
            if self.site(i).kind != SiteKind::Crossing {
                return Err(Error::Move("trigon corner is not a crossing".into()));
            }
        }
        if x == y || y == z || x == z {
            return Err(Error::Move("trigon visits a crossing twice".into()));
        }
        let (a, b, c) = (d_a.arc, d_b.arc, d_c.arc);
        if a == b || b == c || a == c {
            return Err(Error::Move("trigon boundary reuses an arc".into()));
        }
        let t = d_a.head.slot; // a at Y
        let u = d_b.head.slot; // b at Z
        let s = d_c.head.slot; // c at X
        // The slider must pass on one side of both its corners.
        let over_at_y = (t + 1) % 2 == 1;
        let over_at_z = u % 2 == 1;
        if over_at_y != over_at_z {
            return Err(Error::Move("slider strand alternates over/under".into()));
        }
        let slider_over = over_at_y;

        let rot_y = &self.site(y).rot;
        let rot_z = &self.site(z).rot;
        let m = self.sites().len();
        // Indices into the rebuilt site list (Y, Z removed, Y', Z' added at
        // the end). Survivors keep relative order.
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut shapes: Vec<Site> = Vec::new();
        for i in 0..m {
            if i == y || i == z {
                continue;
            }
            remap.insert(i, shapes.len());
            let mut site = self.site(i).clone();
            site.rot = vec![u32::MAX; site.rot.len()];
            shapes.push(site);
        }
        let yp = shapes.len();
        let zp = yp + 1;
        shapes.push(Site::crossing(self.site(y).name.clone(), [u32::MAX; 4]));
        shapes.push(Site::crossing(self.site(z).name.clone(), [u32::MAX; 4]));

        // Routing for ends that die with Y/Z or detach from X.
        #[derive(Clone, Copy)]
        enum Route {
            Wire(End),
            NewEnd(usize, usize),
        }
        let mut route: HashMap<End, Route> = HashMap::new();
        let yend = |slot: usize| End { site: y, slot: slot % rot_y.len() };
        let zend = |slot: usize| End { site: z, slot: slot % rot_z.len() };
        // Alpha and gamma pass straight through where Y and Z were.
        route.insert(yend(t), Route::Wire(yend(t + 2)));
        route.insert(yend(t + 2), Route::Wire(yend(t)));
        route.insert(zend(u + 1), Route::Wire(zend(u + 3)));
        route.insert(zend(u + 3), Route::Wire(zend(u + 1)));
        // Strand ends re-anchor on the new crossings.
        route.insert(yend(t + 1), Route::NewEnd(yp, 1)); // b at Y'
        route.insert(yend(t + 3), Route::NewEnd(yp, 3)); // beta outer 1
        route.insert(zend(u), Route::NewEnd(zp, 3)); // b at Z'
        route.insert(zend(u + 2), Route::NewEnd(zp, 1)); // beta outer 2
        // X's far-side slots detach: the arcs formerly leaving X there are
        // truncated at the new crossings.
        let x_go = End { site: x, slot: (s + 2) % 4 };
        let x_ao = End { site: x, slot: (s + 3) % 4 };
        route.insert(x_go, Route::NewEnd(yp, 0));
        route.insert(x_ao, Route::NewEnd(zp, 0));

        let ends = self.arc_ends();
        let old_partner = |e: End| -> End {
            let arc = self.site(e.site).rot[e.slot] as usize;
            let [p, q] = ends[arc];
            if p == e {
                q
            } else {
                p
            }
        };
        // Final end address of a surviving or new end.
        let translate = |e: End| -> (usize, usize) { (remap[&e.site], e.slot) };
        enum Chased {
            Survivor(End),
            Fresh(usize, usize),
        }
        let chase = |start: End| -> Chased {
            let mut cur = start;
            loop {
                match route.get(&cur) {
                    None => return Chased::Survivor(cur),
                    Some(Route::NewEnd(site, slot)) => return Chased::Fresh(*site, *slot),
                    Some(Route::Wire(w)) => cur = old_partner(*w),
                }
            }
        };

        let mut pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
        let mut satisfied: HashSet<(usize, usize)> = HashSet::new();
        // Short arcs binding X's far-side slots to the new crossings.
        pairs.push(((remap[&x], (s + 2) % 4), (yp, 2))); // c'
        pairs.push(((remap[&x], (s + 3) % 4), (zp, 2))); // a'
        satisfied.insert((yp, 2));
        satisfied.insert((zp, 2));
        // Arcs launched from surviving ends.
        let mut launched: HashSet<End> = HashSet::new();
        for (si, site) in self.sites().iter().enumerate() {
            if si == y || si == z {
                continue;
            }
            for slot in 0..site.rot.len() {
                let e = End { site: si, slot };
                if route.contains_key(&e) || launched.contains(&e) {
                    continue;
                }
                launched.insert(e);
                match chase(old_partner(e)) {
                    Chased::Survivor(e2) => {
                        launched.insert(e2);
                        pairs.push((translate(e), translate(e2)));
                    }
                    Chased::Fresh(site, slot) => {
                        satisfied.insert((site, slot));
                        pairs.push((translate(e), (site, slot)));
                    }
                }
            }
        }
        // Remaining new ends pair among themselves via their walk sources.
        let sources: [((usize, usize), End); 6] = [
            ((yp, 0), x_go),
            ((yp, 1), yend(t + 1)),
            ((yp, 3), yend(t + 3)),
            ((zp, 0), x_ao),
            ((zp, 1), zend(u + 2)),
            ((zp, 3), zend(u)),
        ];
        for (ne, src) in sources {
            if satisfied.contains(&ne) {
                continue;
            }
            satisfied.insert(ne);
            match chase(old_partner(src)) {
                Chased::Survivor(e) => {
                    pairs.push((ne, translate(e)));
                }
                Chased::Fresh(site, slot) => {
                    satisfied.insert((site, slot));
                    pairs.push((ne, (site, slot)));
                }
            }
        }

        // Slider marking: with the slider under, the new crossings' slot
        // labeling shifts one place so its strand sits at slots (0,2).
        if !slider_over {
            for p in pairs.iter_mut() {
                for end in [&mut p.0, &mut p.1] {
                    if end.0 == yp || end.0 == zp {
                        end.1 = (end.1 + 1) % 4;
                    }
                }
            }
        }

        build_from_pairs(shapes, pairs)
    }

    // ---- R4 --------------------------------------------------------

    fn r4_insert(
        &self,
        dart: Dart,
        vertex: &str,
        corner: usize,
        over: bool,
        ccw: bool,
    ) -> Result<Diagram> {
        self.check_dart(dart)?;
        let vi = self.vertex_index(vertex)?;
        let n = self.site(vi).rot.len();
        if n == 0 {
            return Err(Error::Move("vertex has no edges to slide across".into()));
        }
        if corner >= n {
            return Err(Error::Move("corner index out of range".into()));
        }
        let ends = self.arc_ends();
        let [a1_end, a2_end] = ends[dart.arc as usize];
        let (tail, head) = if a2_end == dart.head { (a1_end, a2_end) } else { (a2_end, a1_end) };
        if tail.site == vi || head.site == vi {
            return Err(Error::Move("slide strand is incident to the vertex".into()));
        }
        // The face of the dart must touch the corner gap before `corner`.
        let faces = self.faces();
        let face = faces
            .iter()
            .find(|f| f.contains(&dart))
            .ok_or_else(|| Error::Move("dart has no face".into()))?;
        let corner_dart = face.iter().any(|d| {
            d.head.site == vi && (d.head.slot + 1) % n == corner
        });
        if !corner_dart {
            return Err(Error::Move("vertex corner is not on the dart's face".into()));
        }

        let crossed: Vec<usize> = if ccw {
            (0..n).map(|k| (corner + k) % n).collect()
        } else {
            (0..n).map(|k| (corner + n - 1 - k) % n).collect()
        };
        // The sweep that first crosses the edge counterclockwise of the
        // gap starts at the dart's tail; the clockwise sweep starts at its
        // head. The other assignment threads the bulge through itself.
        let anchors = if ccw { (Some(tail), Some(head)) } else { (Some(head), Some(tail)) };
        self.vertex_slide(vi, &crossed, anchors, None, over, ccw)
    }

    fn r4_remove(&self, vertex: &str) -> Result<Diagram> {
        let vi = self.vertex_index(vertex)?;
        let pattern = self.detect_slide(vi, None)?;
        self.splice_out(&pattern)
    }

    // ---- R5 --------------------------------------------------------

    fn r5_insert(&self, vertex: &str, slot: usize, over: bool, ccw: bool) -> Result<Diagram> {
        let vi = self.vertex_index(vertex)?;
        let n = self.site(vi).rot.len();
        if slot >= n {
            return Err(Error::Move("slot out of range".into()));
        }
        if n < 2 {
            return Err(Error::Move("vertex has no other edges to slide across".into()));
        }
        let arc = self.site(vi).rot[slot];
        let ends = self.arc_ends();
        let [ea, eb] = ends[arc as usize];
        let far = if (End { site: vi, slot }) == ea { eb } else { ea };
        if far.site == vi {
            return Err(Error::Move("cannot slide a loop edge across its vertex".into()));
        }
        let crossed: Vec<usize> = if ccw {
            (1..n).map(|k| (slot + k) % n).collect()
        } else {
            (1..n).map(|k| (slot + n - k) % n).collect()
        };
        let far_name = (self.site(far.site).kind, self.site(far.site).name.clone());
        let slid = self.vertex_slide(vi, &crossed, (None, Some(far)), Some(slot), over, ccw)?;
        // Sweeping the clamped edge end once around the disk puts a full
        // twist in it; a counter-curl on the swept edge keeps the move an
        // isotopy of the ribbon structure.
        let far_site = slid
            .find_site(far_name.0, &far_name.1)
            .ok_or_else(|| Error::Internal("slide lost the far site".into()))?;
        let outer_arc = slid.site(far_site).rot[far.slot];
        let chirality = if over == ccw { Chirality::Minus } else { Chirality::Plus };
        slid.r1_insert(outer_arc, chirality)
    }

    fn r5_remove(&self, vertex: &str, slot: usize) -> Result<Diagram> {
        let vi = self.vertex_index(vertex)?;
        if slot >= self.site(vi).rot.len() {
            return Err(Error::Move("slot out of range".into()));
        }
        let pattern = self.detect_slide(vi, Some(slot))?;
        let unslid = self.splice_out(&pattern)?;
        // Undo the compensating curl sitting on the reconnected edge.
        let vi2 = unslid
            .find_site(SiteKind::Vertex, vertex)
            .ok_or_else(|| Error::Internal("splice lost the vertex".into()))?;
        let edge_arc = unslid.site(vi2).rot[slot];
        let ends = unslid.arc_ends();
        let anchor = End { site: vi2, slot };
        let [p, q] = ends[edge_arc as usize];
        let other = if p == anchor { q } else { p };
        let curl = &unslid.site(other.site);
        if curl.kind != SiteKind::Crossing {
            return Err(Error::Move("slide chain carries no compensating curl".into()));
        }
        unslid.r1_remove(&curl.name.clone())
    }

    /// Shared construction for R4/R5: a strand sweeps across vertex `vi`
    /// crossing the edges at `crossed` slots in order. The strand runs
    /// from `anchors.0` (or from `(vi, start_slot)` for an edge slide) to
    /// `anchors.1`.
    fn vertex_slide(
        &self,
        vi: usize,
        crossed: &[usize],
        anchors: (Option<End>, Option<End>),
        start_slot: Option<usize>,
        over: bool,
        ccw: bool,
    ) -> Result<Diagram> {
        let m = self.sites().len();
        let k = crossed.len();
        let mut shapes: Vec<Site> = self
            .sites()
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.rot = vec![u32::MAX; s.rot.len()];
                s
            })
            .collect();
        let mut xnames: Vec<String> = Vec::new();
        {
            let mut probe = Diagram { sites: self.sites().to_vec() };
            for _ in 0..k {
                let name = probe.fresh_name(SiteKind::Crossing, "");
                probe.sites.push(Site::crossing(name.clone(), [0, 0, 0, 0]));
                xnames.push(name);
            }
        }
        for name in &xnames {
            shapes.push(Site::crossing(name.clone(), [u32::MAX; 4]));
        }
        // Pattern slots at crossing j. Sweeping counterclockwise the bulge
        // arrives on the clockwise side of each edge.
        //   ccw, strand over:  [outer, next, inner, prev]
        //   ccw, strand under: [prev, outer, next, inner]
        //   cw,  strand over:  [outer, prev, inner, next]
        //   cw,  strand under: [next, outer, prev, inner]
        let (outer_s, next_s, inner_s, prev_s) = match (ccw, over) {
            (true, true) => (0, 1, 2, 3),
            (true, false) => (1, 2, 3, 0),
            (false, true) => (0, 3, 2, 1),
            (false, false) => (1, 0, 3, 2),
        };

        let ends = self.arc_ends();
        let consumed: HashSet<End> = crossed
            .iter()
            .map(|&sl| End { site: vi, slot: sl })
            .chain(start_slot.map(|sl| End { site: vi, slot: sl }))
            .chain(anchors.0)
            .chain(anchors.1)
            .collect();

        let mut pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
        // Untouched arcs persist.
        let mut done: HashSet<End> = HashSet::new();
        for (si, site) in self.sites().iter().enumerate() {
            for slot in 0..site.rot.len() {
                let e = End { site: si, slot };
                if consumed.contains(&e) || done.contains(&e) {
                    continue;
                }
                let arc = site.rot[slot] as usize;
                let [p, q] = ends[arc];
                let other = if p == e { q } else { p };
                if consumed.contains(&other) {
                    continue; // re-paired below
                }
                done.insert(e);
                done.insert(other);
                pairs.push(((si, slot), (other.site, other.slot)));
            }
        }
        // Crossed edges: inner stubs and outer reconnections.
        let xsite = |j: usize| m + j;
        let mut outer_done: HashSet<usize> = HashSet::new();
        for (j, &sl) in crossed.iter().enumerate() {
            pairs.push(((vi, sl), (xsite(j), inner_s)));
            if outer_done.contains(&j) {
                continue;
            }
            let e = End { site: vi, slot: sl };
            let arc = self.site(vi).rot[sl] as usize;
            let [p, q] = ends[arc];
            let other = if p == e { q } else { p };
            if other.site == vi {
                if let Some(j2) = crossed.iter().position(|&s2| s2 == other.slot) {
                    // Loop at the vertex crossed twice: outer halves join.
                    pairs.push(((xsite(j), outer_s), (xsite(j2), outer_s)));
                    outer_done.insert(j);
                    outer_done.insert(j2);
                    continue;
                }
            }
            pairs.push(((xsite(j), outer_s), (other.site, other.slot)));
            outer_done.insert(j);
        }
        // The sweeping strand chain.
        let chain_start: (usize, usize) = match (anchors.0, start_slot) {
            (Some(t), None) => (t.site, t.slot),
            (None, Some(sl)) => (vi, sl),
            _ => return Err(Error::Internal("bad slide anchors".into())),
        };
        let chain_end = anchors.1.ok_or_else(|| Error::Internal("missing slide end".into()))?;
        pairs.push((chain_start, (xsite(0), prev_s)));
        for j in 0..k.saturating_sub(1) {
            pairs.push(((xsite(j), next_s), (xsite(j + 1), prev_s)));
        }
        pairs.push(((xsite(k - 1), next_s), (chain_end.site, chain_end.slot)));

        build_from_pairs(shapes, pairs)
    }

    /// Detects a completed slide around `vi`: every non-anchor slot leads
    /// to its own crossing, bulge arcs chain those crossings consecutively
    /// with uniform marking, and exactly the chain's two outer ends leave
    /// the pattern. Returns the splice plan (through-joins everywhere).
    fn detect_slide(
        &self,
        vi: usize,
        anchor_slot: Option<usize>,
    ) -> Result<Vec<(usize, Vec<(usize, usize)>)>> {
        let rot = &self.site(vi).rot;
        let n = rot.len();
        let ends = self.arc_ends();
        let crossed: Vec<usize> = (0..n).filter(|&s| Some(s) != anchor_slot).collect();
        if crossed.is_empty() {
            return Err(Error::Move("vertex has no crossed edges".into()));
        }
        let mut xs: Vec<usize> = Vec::new();
        let mut inner_slot: Vec<usize> = Vec::new();
        for &s in &crossed {
            let arc = rot[s] as usize;
            let [p, q] = ends[arc];
            let e = End { site: vi, slot: s };
            let other = if p == e { q } else { p };
            if other.site == vi {
                return Err(Error::Move("edge is not split by a slide crossing".into()));
            }
            if self.site(other.site).kind != SiteKind::Crossing {
                return Err(Error::Move("edge does not meet a crossing".into()));
            }
            if xs.contains(&other.site) {
                return Err(Error::Move("two edges meet the same crossing".into()));
            }
            xs.push(other.site);
            inner_slot.push(other.slot);
        }
        // Uniform marking: all stubs on the understrand or all on the over.
        let parities: HashSet<usize> = inner_slot.iter().map(|s| s % 2).collect();
        if parities.len() != 1 {
            return Err(Error::Move("slide crossings have mixed markings".into()));
        }
        // Bulge adjacency: each crossing's two side slots hold chain arcs.
        let side_ends = |j: usize| -> [End; 2] {
            [
                End { site: xs[j], slot: (inner_slot[j] + 1) % 4 },
                End { site: xs[j], slot: (inner_slot[j] + 3) % 4 },
            ]
        };
        let mut links = 0usize;
        let mut external = 0usize;
        for j in 0..xs.len() {
            for e in side_ends(j) {
                let arc = self.site(e.site).rot[e.slot] as usize;
                let [p, q] = ends[arc];
                let other = if p == e { q } else { p };
                if let Some(j2) = xs.iter().position(|&x| x == other.site) {
                    let is_side = side_ends(j2).contains(&other);
                    if !is_side {
                        return Err(Error::Move("chain arc hits a stub slot".into()));
                    }
                    // Adjacent around the vertex?
                    let d = (j as i64 - j2 as i64).rem_euclid(xs.len() as i64);
                    if xs.len() > 1 && d != 1 && d != xs.len() as i64 - 1 {
                        return Err(Error::Move("chain skips around the vertex".into()));
                    }
                    links += 1;
                } else {
                    if let Some(a) = anchor_slot {
                        let anchor_end = End { site: vi, slot: a };
                        if other == anchor_end {
                            external += 1;
                            continue;
                        }
                    }
                    if other.site == vi {
                        return Err(Error::Move("chain arc returns to the vertex".into()));
                    }
                    external += 1;
                }
            }
        }
        // links counts each internal connection twice.
        if links != 2 * (xs.len() - 1) || external != 2 {
            return Err(Error::Move("crossings do not form a single slide chain".into()));
        }
        Ok(xs
            .iter()
            .map(|&x| (x, vec![(0usize, 2usize), (1usize, 3usize)]))
            .collect())
    }

    // ---- R6 --------------------------------------------------------

    fn r6_insert(&self, vertex: &str, position: usize, first_over: bool) -> Result<Diagram> {
        let vi = self.vertex_index(vertex)?;
        let n = self.site(vi).rot.len();
        if n < 2 {
            return Err(Error::Move("vertex needs two strands to twist".into()));
        }
        if position >= n {
            return Err(Error::Move("position out of range".into()));
        }
        let i = position;
        let j = (position + 1) % n;
        let x_arc = self.site(vi).rot[i];
        let y_arc = self.site(vi).rot[j];
        let next = self.max_arc();
        let (stub_x, stub_y) = (next, next + 1);
        let mut sites = self.sites().to_vec();
        sites[vi].rot[i] = stub_y;
        sites[vi].rot[j] = stub_x;
        let name = self.fresh_name(SiteKind::Crossing, "");
        let rot = if first_over {
            [y_arc, stub_x, stub_y, x_arc]
        } else {
            [stub_x, stub_y, x_arc, y_arc]
        };
        sites.push(Site::crossing(name, rot));
        Diagram::new(sites)
    }

    fn r6_remove(&self, vertex: &str, position: usize) -> Result<Diagram> {
        let vi = self.vertex_index(vertex)?;
        let n = self.site(vi).rot.len();
        if n == 0 || position >= n {
            return Err(Error::Move("position out of range".into()));
        }
        let i = position;
        let j = (position + 1) % n;
        if i == j {
            return Err(Error::Move("vertex needs two slots".into()));
        }
        let ends = self.arc_ends();
        let stub = |slot: usize| -> Result<End> {
            let arc = self.site(vi).rot[slot] as usize;
            let [p, q] = ends[arc];
            let e = End { site: vi, slot };
            let other = if p == e { q } else { p };
            if other.site == vi {
                return Err(Error::Move("twist stubs must leave the vertex".into()));
            }
            Ok(other)
        };
        let pi = stub(i)?;
        let pj = stub(j)?;
        if pi.site != pj.site || self.site(pi.site).kind != SiteKind::Crossing {
            return Err(Error::Move("slots do not meet a common crossing".into()));
        }
        if self.site(vi).rot[i] == self.site(vi).rot[j] {
            return Err(Error::Move("stubs must be distinct arcs".into()));
        }
        // Insert leaves the slot-i stub one slot counterclockwise of the
        // slot-i+1 stub at the crossing.
        if (pj.slot + 1) % 4 != pi.slot {
            return Err(Error::Move("stubs are not twist-adjacent at the crossing".into()));
        }
        let mut sites = self.sites().to_vec();
        sites[vi].rot.swap(i, j);
        let staged = Diagram { sites };
        staged.splice_out(&[(pi.site, vec![(0, 2), (1, 3)])])
    }
}

/// Assembles a diagram from explicit site shapes and a complete pairing of
/// their slots.
fn build_from_pairs(
    mut shapes: Vec<Site>,
    pairs: Vec<((usize, usize), (usize, usize))>,
) -> Result<Diagram> {
    let total: usize = shapes.iter().map(|s| s.rot.len()).sum();
    if pairs.len() * 2 != total {
        return Err(Error::Internal(format!(
            "pairing covers {} ends, diagram has {total}",
            pairs.len() * 2
        )));
    }
    for (arc, ((s1, p1), (s2, p2))) in pairs.into_iter().enumerate() {
        for (s, p) in [(s1, p1), (s2, p2)] {
            if shapes[s].rot[p] != u32::MAX {
                return Err(Error::Internal(format!(
                    "end ({s},{p}) paired twice in rebuild"
                )));
            }
            shapes[s].rot[p] = arc as u32;
        }
    }
    Diagram::new(shapes)
}

/// Enumeration helpers used to generate random legal moves in tests and to
/// find removable patterns.
pub mod find {
    use super::*;

    pub fn r1_inserts(d: &Diagram) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for arc in 0..d.arc_count() as u32 {
            for ch in [Chirality::Plus, Chirality::Minus] {
                out.push(MoveSpec::R1Insert { arc, chirality: ch });
            }
        }
        out
    }

    pub fn r1_removes(d: &Diagram) -> Vec<MoveSpec> {
        let ends = d.arc_ends();
        d.crossings()
            .filter(|(ci, s)| {
                (0..4).any(|i| {
                    let j = (i + 1) % 4;
                    s.rot[i] == s.rot[j] && {
                        let e = ends[s.rot[i] as usize];
                        e.contains(&End { site: *ci, slot: i })
                            && e.contains(&End { site: *ci, slot: j })
                    }
                })
            })
            .map(|(_, s)| MoveSpec::R1Remove { crossing: s.name.clone() })
            .collect()
    }

    pub fn r2_inserts(d: &Diagram, cap: usize) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for face in d.faces() {
            for (i, &d1) in face.iter().enumerate() {
                for &d2 in face.iter().skip(i + 1) {
                    if d1.arc != d2.arc {
                        for over in [true, false] {
                            out.push(MoveSpec::R2Insert { dart1: d1, dart2: d2, over });
                        }
                    }
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
        out
    }

    pub fn r2_removes(d: &Diagram) -> Vec<MoveSpec> {
        let ends = d.arc_ends();
        let mut out = Vec::new();
        for face in d.faces() {
            if face.len() != 2 {
                continue;
            }
            let (s1, s2) = (face[0].head.site, face[1].head.site);
            if s1 == s2
                || d.site(s1).kind != SiteKind::Crossing
                || d.site(s2).kind != SiteKind::Crossing
            {
                continue;
            }
            let compatible = face.iter().all(|dart| {
                let [ea, eb] = ends[dart.arc as usize];
                let other = if ea == dart.head { eb } else { ea };
                (dart.head.slot % 2) == (other.slot % 2)
            });
            if compatible {
                out.push(MoveSpec::R2Remove {
                    c1: d.site(s1).name.clone(),
                    c2: d.site(s2).name.clone(),
                });
            }
        }
        out
    }

    pub fn r3_sites(d: &Diagram) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for face in d.faces() {
            if face.len() != 3 {
                continue;
            }
            let sites: HashSet<usize> = face.iter().map(|x| x.head.site).collect();
            if sites.len() != 3
                || !sites.iter().all(|&s| d.site(s).kind == SiteKind::Crossing)
            {
                continue;
            }
            let arcs: HashSet<u32> = face.iter().map(|x| x.arc).collect();
            if arcs.len() != 3 {
                continue;
            }
            for (pos, &dart) in face.iter().enumerate() {
                let d_a = face[(pos + 2) % 3];
                let d_b = face[pos];
                let over_at_y = (d_a.head.slot + 1) % 2 == 1;
                let over_at_z = d_b.head.slot % 2 == 1;
                if over_at_y == over_at_z {
                    out.push(MoveSpec::R3 { dart });
                }
            }
        }
        out
    }

    pub fn r4_inserts(d: &Diagram, cap: usize) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        let faces = d.faces();
        for face in &faces {
            for dart in face {
                let ends = d.arc_ends();
                let [p, q] = ends[dart.arc as usize];
                for corner_dart in face {
                    let vi = corner_dart.head.site;
                    let site = d.site(vi);
                    if site.kind != SiteKind::Vertex || site.rot.is_empty() {
                        continue;
                    }
                    if p.site == vi || q.site == vi {
                        continue;
                    }
                    let corner = (corner_dart.head.slot + 1) % site.rot.len();
                    for over in [true, false] {
                        for ccw in [true, false] {
                            out.push(MoveSpec::R4Insert {
                                dart: *dart,
                                vertex: site.name.clone(),
                                corner,
                                over,
                                ccw,
                            });
                        }
                    }
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
        out
    }

    pub fn r4_removes(d: &Diagram) -> Vec<MoveSpec> {
        d.sites()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SiteKind::Vertex)
            .filter(|(vi, _)| d.detect_slide(*vi, None).is_ok())
            .map(|(_, s)| MoveSpec::R4Remove { vertex: s.name.clone() })
            .collect()
    }

    pub fn r5_inserts(d: &Diagram, cap: usize) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        let ends = d.arc_ends();
        for (vi, s) in d.sites().iter().enumerate() {
            if s.kind != SiteKind::Vertex || s.rot.len() < 2 {
                continue;
            }
            for slot in 0..s.rot.len() {
                let e = End { site: vi, slot };
                let [p, q] = ends[s.rot[slot] as usize];
                let other = if p == e { q } else { p };
                if other.site == vi {
                    continue;
                }
                for over in [true, false] {
                    for ccw in [true, false] {
                        out.push(MoveSpec::R5Insert {
                            vertex: s.name.clone(),
                            slot,
                            over,
                            ccw,
                        });
                    }
                }
                if out.len() >= cap {
                    return out;
                }
            }
        }
        out
    }

    pub fn r5_removes(d: &Diagram) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for (vi, s) in d.sites().iter().enumerate() {
            if s.kind != SiteKind::Vertex {
                continue;
            }
            for slot in 0..s.rot.len() {
                if d.detect_slide(vi, Some(slot)).is_ok() {
                    out.push(MoveSpec::R5Remove { vertex: s.name.clone(), slot });
                }
            }
        }
        out
    }

    pub fn r6_inserts(d: &Diagram) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for s in d.sites() {
            if s.kind != SiteKind::Vertex || s.rot.len() < 2 {
                continue;
            }
            for position in 0..s.rot.len() {
                for first_over in [true, false] {
                    out.push(MoveSpec::R6Insert {
                        vertex: s.name.clone(),
                        position,
                        first_over,
                    });
                }
            }
        }
        out
    }

    pub fn r6_removes(d: &Diagram) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for (vi, s) in d.sites().iter().enumerate() {
            if s.kind != SiteKind::Vertex {
                continue;
            }
            for position in 0..s.rot.len() {
                let probe = MoveSpec::R6Remove { vertex: s.name.clone(), position };
                let _ = vi;
                if d.apply_move(&probe, Mode::Pliable).is_ok() {
                    out.push(probe);
                }
            }
        }
        out
    }

    /// Every applicable move for the mode, grouped for random selection.
    pub fn legal_moves(d: &Diagram, mode: Mode, cap: usize) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        out.extend(r2_inserts(d, cap));
        out.extend(r2_removes(d));
        out.extend(r3_sites(d));
        out.extend(r4_inserts(d, cap));
        out.extend(r4_removes(d));
        out.extend(r5_inserts(d, cap));
        out.extend(r5_removes(d));
        if mode != Mode::Ribbon {
            out.extend(r1_inserts(d));
            out.extend(r1_removes(d));
        }
        if mode == Mode::Pliable {
            out.extend(r6_inserts(d));
            out.extend(r6_removes(d));
        }
        out.retain(|m| m.legal_in(mode));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::canonical_pd;
    use super::super::tests::theta;
    use super::*;

    #[test]
    fn r1_insert_remove_round_trip() {
        let t = theta();
        for ch in [Chirality::Plus, Chirality::Minus] {
            let kinked = t
                .apply_move(&MoveSpec::R1Insert { arc: 0, chirality: ch }, Mode::Pliable)
                .unwrap();
            assert_eq!(kinked.crossing_count(), 1);
            assert!(kinked.is_planar());
            let name = kinked.crossings().next().unwrap().1.name.clone();
            let back = kinked
                .apply_move(&MoveSpec::R1Remove { crossing: name }, Mode::Pliable)
                .unwrap();
            assert_eq!(canonical_pd(&back, false), canonical_pd(&t, false));
        }
    }

    #[test]
    fn r1_forbidden_in_ribbon() {
        let t = theta();
        let err = t.apply_move(
            &MoveSpec::R1Insert { arc: 0, chirality: Chirality::Plus },
            Mode::Ribbon,
        );
        assert!(matches!(err, Err(Error::MoveMode(Mode::Ribbon))));
    }

    #[test]
    fn r2_insert_adds_two_and_removes() {
        let t = theta();
        let specs = find::r2_inserts(&t, 64);
        assert!(!specs.is_empty());
        let poked = t.apply_move(&specs[0], Mode::Ribbon).unwrap();
        assert_eq!(poked.crossing_count(), 2);
        assert!(poked.is_planar());
        let removes = find::r2_removes(&poked);
        assert!(!removes.is_empty());
        let back = poked.apply_move(&removes[0], Mode::Ribbon).unwrap();
        assert_eq!(canonical_pd(&back, false), canonical_pd(&t, false));
    }

    #[test]
    fn r6_insert_remove_round_trip() {
        let t = theta();
        let twisted = t
            .apply_move(
                &MoveSpec::R6Insert { vertex: "2".into(), position: 1, first_over: true },
                Mode::Pliable,
            )
            .unwrap();
        assert_eq!(twisted.crossing_count(), 1);
        assert!(twisted.is_planar());
        let back = twisted
            .apply_move(&MoveSpec::R6Remove { vertex: "2".into(), position: 1 }, Mode::Pliable)
            .unwrap();
        assert_eq!(canonical_pd(&back, false), canonical_pd(&t, false));
    }

    #[test]
    fn r6_forbidden_in_flat_and_ribbon() {
        let t = theta();
        let spec = MoveSpec::R6Insert { vertex: "2".into(), position: 0, first_over: true };
        assert!(t.apply_move(&spec, Mode::Flat).is_err());
        assert!(t.apply_move(&spec, Mode::Ribbon).is_err());
        assert!(t.apply_move(&spec, Mode::Pliable).is_ok());
    }

    #[test]
    fn r4_slide_round_trip() {
        // The slid strand may not touch the vertex, so use a planar K4
        // where disjoint strand/vertex pairs exist.
        let k4 = super::super::parse_pd(
            "V1[a,b,c] V2[a,f,d] V3[b,d,e] V4[c,e,f]",
        )
        .unwrap();
        assert!(k4.is_planar());
        let specs = find::r4_inserts(&k4, 256);
        assert!(!specs.is_empty());
        for spec in specs.iter().take(12) {
            let slid = k4.apply_move(spec, Mode::Ribbon).unwrap();
            assert_eq!(slid.crossing_count(), 3);
            assert!(slid.is_planar(), "slide must stay planar: {spec:?}");
            let vertex = match spec {
                MoveSpec::R4Insert { vertex, .. } => vertex.clone(),
                _ => unreachable!(),
            };
            let back = slid
                .apply_move(&MoveSpec::R4Remove { vertex }, Mode::Ribbon)
                .unwrap();
            assert_eq!(canonical_pd(&back, false), canonical_pd(&k4, false));
        }
    }

    #[test]
    fn r5_slide_round_trip() {
        let t = theta();
        let specs = find::r5_inserts(&t, 64);
        assert!(!specs.is_empty());
        for spec in specs.iter().take(8) {
            let slid = t.apply_move(spec, Mode::Ribbon).unwrap();
            assert_eq!(slid.crossing_count(), 2);
            assert!(slid.is_planar(), "slide must stay planar: {spec:?}");
            let (vertex, slot) = match spec {
                MoveSpec::R5Insert { vertex, slot, .. } => (vertex.clone(), *slot),
                _ => unreachable!(),
            };
            let back = slid
                .apply_move(&MoveSpec::R5Remove { vertex, slot }, Mode::Ribbon)
                .unwrap();
            assert_eq!(canonical_pd(&back, false), canonical_pd(&t, false));
        }
    }

    #[test]
    fn r3_repositions_trigon() {
        // Build a trigon by poking twice; find an R3 site on some diagram
        // derived from theta.
        let t = theta();
        let mut found = false;
        for spec in find::r2_inserts(&t, 16) {
            let d1 = t.apply_move(&spec, Mode::Pliable).unwrap();
            for spec2 in find::r4_inserts(&d1, 64) {
                let d2 = d1.apply_move(&spec2, Mode::Pliable).unwrap();
                for r3 in find::r3_sites(&d2) {
                    let d3 = d2.apply_move(&r3, Mode::Pliable).unwrap();
                    assert_eq!(d3.crossing_count(), d2.crossing_count());
                    assert!(d3.is_planar());
                    found = true;
                }
                if found {
                    return;
                }
            }
        }
        assert!(found, "no trigon found in derived diagrams");
    }
}
