//! Abstract multigraphs (loops and parallel edges allowed) and the graph
//! polynomial `H` computed by deletion–contraction.
//!
//! `H` is pinned down by five facts: it is 1 on the empty graph, `B` on a
//! simple loop, multiplicative over disjoint unions, negated-multiplicative
//! over one-point wedges, zero in the presence of a cut edge, and satisfies
//! `H(G) = H(G/e) + H(G-e)` on any non-loop edge `e`. Two consequences fix
//! the terminal cases of the recursion and are locked by tests below:
//! a single isolated vertex has `H = -1` (wedging a point onto a graph
//! changes nothing, so the point must contribute a factor of -1), and a
//! vertex carrying `m` loops has `H = (-1)^(m-1) * B^m` (peel one petal at
//! a time with the wedge rule).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// Multigraph over `u32` vertex ids with explicitly identified edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbstractGraph {
    verts: BTreeSet<u32>,
    edges: BTreeMap<u32, (u32, u32)>,
}

impl AbstractGraph {
    pub fn new() -> Self {
        AbstractGraph::default()
    }

    /// Builds a graph from an edge list, adding endpoints as vertices.
    pub fn from_edges(edges: &[(u32, (u32, u32))]) -> Self {
        let mut g = AbstractGraph::new();
        for &(id, (u, v)) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_edge(id, u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.verts.insert(v);
    }

    pub fn add_edge(&mut self, id: u32, u: u32, v: u32) {
        assert!(
            self.verts.contains(&u) && self.verts.contains(&v),
            "edge endpoints must exist"
        );
        let prev = self.edges.insert(id, (u, v));
        assert!(prev.is_none(), "duplicate edge id {id}");
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.verts.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, (u32, u32))> + '_ {
        self.edges.iter().map(|(&id, &uv)| (id, uv))
    }

    pub fn endpoints(&self, e: u32) -> Result<(u32, u32)> {
        self.edges.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn is_loop(&self, e: u32) -> Result<bool> {
        let (u, v) = self.endpoints(e)?;
        Ok(u == v)
    }

    /// Graph with edge `e` removed; vertices untouched.
    pub fn delete_edge(&self, e: u32) -> Result<Self> {
        if !self.edges.contains_key(&e) {
            return Err(Error::UnknownEdge(e));
        }
        let mut g = self.clone();
        g.edges.remove(&e);
        Ok(g)
    }

    /// Graph with the non-loop edge `e` contracted: its endpoints merge
    /// (keeping the smaller id) and every other edge is retained, so
    /// parallel copies of `e` become loops.
    pub fn contract_edge(&self, e: u32) -> Result<Self> {
        let (u, v) = self.endpoints(e)?;
        if u == v {
            return Err(Error::ContractLoop(e));
        }
        let keep = u.min(v);
        let gone = u.max(v);
        let rename = |w: u32| if w == gone { keep } else { w };
        let mut g = AbstractGraph::new();
        for &w in &self.verts {
            if w != gone {
                g.verts.insert(w);
            }
        }
        for (&id, &(a, b)) in &self.edges {
            if id != e {
                g.edges.insert(id, (rename(a), rename(b)));
            }
        }
        Ok(g)
    }

    /// True iff removing `e` increases the number of connected components.
    /// Loops are never cut edges.
    pub fn is_cut_edge(&self, e: u32) -> Result<bool> {
        let (u, v) = self.endpoints(e)?;
        if u == v {
            return Ok(false);
        }
        // Search for another u-v path avoiding e.
        let mut adj: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (&id, &(a, b)) in &self.edges {
            adj.entry(a).or_default().push((id, b));
            adj.entry(b).or_default().push((id, a));
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![u];
        seen.insert(u);
        while let Some(w) = stack.pop() {
            if w == v {
                return Ok(false);
            }
            for &(id, x) in adj.get(&w).into_iter().flatten() {
                if id != e && seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        Ok(true)
    }

    /// Connected components as separate graphs (isolated vertices count).
    pub fn components(&self) -> Vec<AbstractGraph> {
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &(a, b) in self.edges.values() {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.verts {
            if seen.contains(&start) {
                continue;
            }
            let mut comp_verts = BTreeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            comp_verts.insert(start);
            while let Some(w) = stack.pop() {
                for &x in adj.get(&w).into_iter().flatten() {
                    if seen.insert(x) {
                        comp_verts.insert(x);
                        stack.push(x);
                    }
                }
            }
            let mut g = AbstractGraph::new();
            g.verts = comp_verts;
            for (&id, &(a, b)) in &self.edges {
                if g.verts.contains(&a) {
                    g.edges.insert(id, (a, b));
                }
            }
            out.push(g);
        }
        out
    }

    /// Any cut edge, if one exists.
    fn find_cut_edge(&self) -> Option<u32> {
        self.edges
            .keys()
            .copied()
            .find(|&e| self.is_cut_edge(e).unwrap_or(false))
    }

    /// A canonical label for the graph up to isomorphism, used as a
    /// memoization key. Vertices are grouped by (degree, loop count) and a
    /// backtracking search picks the ordering whose adjacency encoding is
    /// lexicographically least. Fine at the small sizes the recursion sees.
    pub fn canonical_key(&self) -> Vec<u8> {
        let verts: Vec<u32> = self.verts.iter().copied().collect();
        let n = verts.len();
        let index: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // Multiplicity matrix; loops counted separately on the diagonal.
        let mut mult = vec![vec![0u8; n]; n];
        for &(a, b) in self.edges.values() {
            let (i, j) = (index[&a], index[&b]);
            mult[i][j] = mult[i][j].saturating_add(1);
            if i != j {
                mult[j][i] = mult[j][i].saturating_add(1);
            }
        }
        // Invariant per vertex: (degree with loops doubled, loop count).
        let sig: Vec<(u8, u8)> = (0..n)
            .map(|i| {
                let loops = mult[i][i];
                let deg: u8 = (0..n)
                    .map(|j| if j == i { 2 * mult[i][i] } else { mult[i][j] })
                    .fold(0u8, |a, b| a.saturating_add(b));
                (deg, loops)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (sig[i], i));

        let mut best: Option<Vec<u8>> = None;
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        search_canonical(&mult, &sig, &order, &mut perm, &mut used, &mut best);
        best.unwrap_or_default()
    }
}

fn encode_row(mult: &[Vec<u8>], perm: &[usize], row: usize) -> Vec<u8> {
    let i = perm[row];
    let mut out = Vec::with_capacity(row + 1);
    for &j in perm.iter().take(row + 1) {
        out.push(mult[i][j]);
    }
    out
}

fn search_canonical(
    mult: &[Vec<u8>],
    sig: &[(u8, u8)],
    order: &[usize],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u8>>,
) {
    let n = order.len();
    if perm.len() == n {
        let mut enc: Vec<u8> = Vec::new();
        for row in 0..n {
            enc.extend(encode_row(mult, perm, row));
            enc.push(255);
        }
        if best.as_ref().map_or(true, |b| enc < *b) {
            *best = Some(enc);
        }
        return;
    }
    // Candidates must share the signature class to be interchangeable.
    let mut cands: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
    cands.sort_by_key(|&i| (sig[i], i));
    let class = sig[cands[0]];
    for &i in cands.iter().take_while(|&&i| sig[i] == class) {
        perm.push(i);
        used[i] = true;
        // Prefix prune against the current best encoding.
        let prune = if let Some(b) = best.as_ref() {
            let mut offset = 0usize;
            let mut worse = false;
            let mut better = false;
            for r in 0..perm.len() {
                let enc = encode_row(mult, perm, r);
                let slice = &b[offset..offset + enc.len()];
                match enc.as_slice().cmp(slice) {
                    std::cmp::Ordering::Less => {
                        better = true;
                        break;
                    }
                    std::cmp::Ordering::Greater => {
                        worse = true;
                        break;
                    }
                    std::cmp::Ordering::Equal => {}
                }
                offset += enc.len() + 1;
            }
            worse && !better
        } else {
            false
        };
        if !prune {
            search_canonical(mult, sig, order, perm, used, best);
        }
        perm.pop();
        used[i] = false;
    }
}

/// Deletion–contraction evaluation of `H` with a caller-supplied choice of
/// which non-loop edge to resolve first. The result does not depend on the
/// choice; randomized choosers are used in tests to check exactly that.
pub fn h_polynomial_with<F>(g: &AbstractGraph, choose: &mut F) -> LaurentPoly
where
    F: FnMut(&[u32]) -> u32,
{
    let mut memo = HashMap::new();
    h_rec(g, choose, &mut memo)
}

/// The graph polynomial `H`.
pub fn h_polynomial(g: &AbstractGraph) -> LaurentPoly {
    h_polynomial_with(g, &mut |nonloops| nonloops[0])
}

pub(crate) fn h_polynomial_memo(
    g: &AbstractGraph,
    memo: &mut HashMap<Vec<u8>, LaurentPoly>,
) -> LaurentPoly {
    h_rec(g, &mut |nonloops| nonloops[0], memo)
}

fn h_rec<F>(
    g: &AbstractGraph,
    choose: &mut F,
    memo: &mut HashMap<Vec<u8>, LaurentPoly>,
) -> LaurentPoly
where
    F: FnMut(&[u32]) -> u32,
{
    if g.vertex_count() == 0 {
        return LaurentPoly::one();
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut acc = LaurentPoly::one();
        for c in comps {
            acc = acc.mul(&h_rec(&c, choose, memo));
            if acc.is_zero() {
                return acc;
            }
        }
        return acc;
    }
    // Connected from here on.
    if g.vertex_count() == 1 {
        // A bouquet of m loops, m = 0 giving the single point.
        let m = g.edge_count();
        let mut p = LaurentPoly::one();
        let b = LaurentPoly::b();
        for _ in 0..m {
            p = p.mul(&b);
        }
        if m % 2 == 0 {
            p = p.neg();
        }
        return p;
    }
    let key = g.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let value = if g.find_cut_edge().is_some() {
        LaurentPoly::zero()
    } else {
        let nonloops: Vec<u32> = g
            .edges()
            .filter(|&(_, (u, v))| u != v)
            .map(|(id, _)| id)
            .collect();
        // A connected graph on >= 2 vertices always has a non-loop edge.
        let e = choose(&nonloops);
        let contracted = g.contract_edge(e).expect("chooser must pick a non-loop edge");
        let deleted = g.delete_edge(e).expect("chooser picked an unknown edge");
        h_rec(&contracted, choose, memo).add(&h_rec(&deleted, choose, memo))
    };
    memo.insert(key, value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> AbstractGraph {
        AbstractGraph::from_edges(&[(0, (0, 1)), (1, (0, 1)), (2, (0, 1))])
    }

    fn b() -> LaurentPoly {
        LaurentPoly::b()
    }

    #[test]
    fn delete_keeps_vertices() {
        let g = theta().delete_edge(1).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);

        let single = AbstractGraph::from_edges(&[(0, (0, 1))]);
        let g = single.delete_edge(0).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);

        assert!(matches!(theta().delete_edge(9), Err(Error::UnknownEdge(9))));
    }

    #[test]
    fn contract_merges_and_rejects_loops() {
        let g = theta().contract_edge(0).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert!(g.edges().all(|(_, (u, v))| u == v));

        let single = AbstractGraph::from_edges(&[(0, (0, 1))]);
        let g = single.contract_edge(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));

        let mut loopy = AbstractGraph::new();
        loopy.add_vertex(0);
        loopy.add_edge(0, 0, 0);
        assert!(matches!(loopy.contract_edge(0), Err(Error::ContractLoop(0))));
    }

    #[test]
    fn cut_edge_detection() {
        let single = AbstractGraph::from_edges(&[(0, (0, 1))]);
        assert!(single.is_cut_edge(0).unwrap());

        let mut loopy = AbstractGraph::new();
        loopy.add_vertex(0);
        loopy.add_edge(0, 0, 0);
        assert!(!loopy.is_cut_edge(0).unwrap());

        for e in 0..3 {
            assert!(!theta().is_cut_edge(e).unwrap());
        }
    }

    #[test]
    fn h_theta() {
        let expect = b().sub(&b().mul(&b()));
        assert_eq!(h_polynomial(&theta()), expect);
        assert_eq!(
            h_polynomial(&theta()).to_string(),
            "-A^2 - A - 2 - A^-1 - A^-2"
        );
    }

    #[test]
    fn h_cut_edge_zero() {
        let single = AbstractGraph::from_edges(&[(0, (0, 1))]);
        assert!(h_polynomial(&single).is_zero());
        // Pendant edge on a triangle.
        let g = AbstractGraph::from_edges(&[(0, (0, 1)), (1, (1, 2)), (2, (2, 0)), (3, (0, 3))]);
        assert!(h_polynomial(&g).is_zero());
    }

    #[test]
    fn h_bouquets() {
        let mut pt = AbstractGraph::new();
        pt.add_vertex(0);
        assert_eq!(h_polynomial(&pt), LaurentPoly::monomial(-1, 0));

        let mut one = AbstractGraph::new();
        one.add_vertex(0);
        one.add_edge(0, 0, 0);
        assert_eq!(h_polynomial(&one), b());

        let mut two = AbstractGraph::new();
        two.add_vertex(0);
        two.add_edge(0, 0, 0);
        two.add_edge(1, 0, 0);
        assert_eq!(h_polynomial(&two), b().mul(&b()).neg());
    }

    #[test]
    fn h_cycles_are_b() {
        // Cycles of every length reduce to a single loop.
        let digon = AbstractGraph::from_edges(&[(0, (0, 1)), (1, (0, 1))]);
        assert_eq!(h_polynomial(&digon), b());
        let tri = AbstractGraph::from_edges(&[(0, (0, 1)), (1, (1, 2)), (2, (2, 0))]);
        assert_eq!(h_polynomial(&tri), b());
        let quad =
            AbstractGraph::from_edges(&[(0, (0, 1)), (1, (1, 2)), (2, (2, 3)), (3, (3, 0))]);
        assert_eq!(h_polynomial(&quad), b());
    }

    #[test]
    fn h_cycles_exhaustive_expansion() {
        // Independent check of the cycle value: expand H over *every*
        // possible sequence of non-loop edge choices and require all
        // results to agree.
        fn h_all_orders(g: &AbstractGraph) -> Vec<LaurentPoly> {
            let comps = g.components();
            if g.vertex_count() == 0 {
                return vec![LaurentPoly::one()];
            }
            if comps.len() > 1 {
                let mut acc = vec![LaurentPoly::one()];
                for c in comps {
                    let sub = h_all_orders(&c);
                    let mut next = Vec::new();
                    for a in &acc {
                        for s in &sub {
                            next.push(a.mul(s));
                        }
                    }
                    acc = next;
                }
                return acc;
            }
            if g.vertex_count() == 1 {
                return vec![h_polynomial(g)];
            }
            let nonloops: Vec<u32> = g
                .edges()
                .filter(|&(_, (u, v))| u != v)
                .map(|(id, _)| id)
                .collect();
            if g.find_cut_edge().is_some() {
                return vec![LaurentPoly::zero()];
            }
            let mut out = Vec::new();
            for e in nonloops {
                let c = h_all_orders(&g.contract_edge(e).unwrap());
                let d = h_all_orders(&g.delete_edge(e).unwrap());
                for x in &c {
                    for y in &d {
                        out.push(x.add(y));
                    }
                }
            }
            out
        }

        let tri = AbstractGraph::from_edges(&[(0, (0, 1)), (1, (1, 2)), (2, (2, 0))]);
        let all = h_all_orders(&tri);
        assert!(all.iter().all(|p| *p == b()));
    }

    #[test]
    fn disjoint_union_multiplies() {
        let g1 = theta();
        let mut g2 = AbstractGraph::new();
        g2.add_vertex(10);
        g2.add_edge(10, 10, 10);
        let mut both = AbstractGraph::new();
        for v in g1.vertices() {
            both.add_vertex(v);
        }
        for v in g2.vertices() {
            both.add_vertex(v);
        }
        for (id, (u, v)) in g1.edges().chain(g2.edges()) {
            both.add_edge(id, u, v);
        }
        assert_eq!(
            h_polynomial(&both),
            h_polynomial(&g1).mul(&h_polynomial(&g2))
        );
    }

    #[test]
    fn canonical_key_identifies_isomorphs() {
        let tri1 = AbstractGraph::from_edges(&[(0, (0, 1)), (1, (1, 2)), (2, (2, 0))]);
        let tri2 = AbstractGraph::from_edges(&[(7, (10, 20)), (8, (20, 30)), (9, (30, 10))]);
        assert_eq!(tri1.canonical_key(), tri2.canonical_key());

        let path = AbstractGraph::from_edges(&[(0, (0, 1)), (1, (1, 2))]);
        assert_ne!(tri1.canonical_key(), path.canonical_key());
    }
}
