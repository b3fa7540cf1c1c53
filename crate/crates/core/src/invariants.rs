//! Exact matching, covering and coloring numbers.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, VertexSet};

/// Largest `n` accepted by [`chromatic_number`].
pub const CHROMATIC_MAX_VERTICES: usize = 20;

/// Maximum matching size `ν(G)` via Edmonds' blossom algorithm.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).len()
}

/// A maximum matching as a list of edges `(u, v)` with `u < v`.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mut b = Blossom::new(g);
    for v in 0..g.n() {
        if b.mate[v].is_none() {
            if let Some(u) = Bits(g.row(v)).find(|&u| b.mate[u].is_none()) {
                b.mate[v] = Some(u);
                b.mate[u] = Some(v);
            }
        }
    }
    for root in 0..g.n() {
        if b.mate[root].is_none() {
            if let Some(end) = b.find_path(root) {
                b.augment(end);
            }
        }
    }
    (0..g.n()).filter_map(|v| b.mate[v].filter(|&u| v < u).map(|u| (v, u))).collect()
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("alternating tree parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("matched vertex on tree path");
            b = self.parent[m].expect("alternating tree parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("matched vertex in blossom");
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("alternating tree parent");
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for to in Bits(self.g.row(v)) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, end: usize) {
        let mut v = Some(end);
        while let Some(x) = v {
            let pv = self.parent[x].expect("augmenting path parent");
            let next = self.mate[pv];
            self.mate[x] = Some(pv);
            self.mate[pv] = Some(x);
            v = next;
        }
    }
}

/// Minimum vertex cover size `β(G)`.
pub fn vertex_cover_number(g: &Graph) -> usize {
    cover_rec(g.rows(), VertexSet::full(g.n()).0)
}

fn cover_rec(adj: &[u64], mut alive: u64) -> usize {
    let mut taken = 0;
    // Pendant reduction: some minimum cover uses the neighbor of a leaf.
    'reduce: loop {
        for v in Bits(alive) {
            let nb = adj[v] & alive;
            if nb.count_ones() == 1 {
                alive &= !(nb | 1 << v);
                taken += 1;
                continue 'reduce;
            }
        }
        break;
    }
    let mut best_v = None;
    let mut best_d = 0;
    for v in Bits(alive) {
        let d = (adj[v] & alive).count_ones();
        if d > best_d {
            best_d = d;
            best_v = Some(v);
        }
    }
    let Some(v) = best_v else {
        return taken;
    };
    if best_d == 2 {
        // Only disjoint cycles remain.
        let mut rest = 0;
        let mut seen = 0u64;
        for s in Bits(alive) {
            if seen >> s & 1 == 1 || adj[s] & alive == 0 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for x in Bits(frontier) {
                    next |= adj[x] & alive;
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            rest += (comp.count_ones() as usize).div_ceil(2);
        }
        return taken + rest;
    }
    let nb = adj[v] & alive;
    let with_v = 1 + cover_rec(adj, alive & !(1 << v));
    let without_v = nb.count_ones() as usize + cover_rec(adj, alive & !nb & !(1 << v));
    taken + with_v.min(without_v)
}

/// Minimum independent covering size `q(G)` of a bipartite graph.
///
/// In a connected bipartite component an independent covering takes exactly
/// one endpoint of every edge, so it is one full color class.
pub fn independent_covering_number(g: &Graph) -> Result<usize> {
    let sides = component_sides(g)?;
    Ok(sides.iter().map(|(a, b)| a.len().min(b.len())).sum())
}

/// The two color classes of every component that has an edge.
fn component_sides(g: &Graph) -> Result<Vec<(VertexSet, VertexSet)>> {
    let (s0, s1) = g.bipartition().ok_or(Error::NotBipartite)?;
    Ok(g.components().into_iter().filter(|c| c.len() > 1).map(|c| (c.intersection(s0), c.intersection(s1))).collect())
}

/// Every independent set of size exactly `k` meeting all edges.
pub fn independent_coverings_of_size(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    let sides = component_sides(g)?;
    let isolated: Vec<usize> = g.isolated_vertices().iter().collect();
    let mut out = Vec::new();
    let mut partial = vec![(VertexSet::EMPTY, 0usize)];
    for (a, b) in &sides {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for &(s, size) in &partial {
            for side in [*a, *b] {
                if size + side.len() <= k {
                    next.push((s.union(side), size + side.len()));
                }
            }
        }
        partial = next;
    }
    for (s, size) in partial {
        let extra = k - size;
        if extra > isolated.len() {
            continue;
        }
        for combo in combinations(isolated.len(), extra) {
            let add = VertexSet::from_iter(combo.iter().map(|&i| isolated[i]));
            out.push(s.union(add));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All vertex covers `S` with `|S| < k`, by size then bitmask.
pub fn coverings_strictly_below(g: &Graph, k: usize) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    for size in 0..k.min(n + 1) {
        for combo in combinations(n, size) {
            let s = VertexSet::from_iter(combo);
            if g.is_vertex_cover(s) {
                out.push(s);
            }
        }
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Combinations {
    Combinations { n, idx: (0..k).collect(), done: k > n }
}

pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Exact chromatic number for graphs on at most 20 vertices.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > CHROMATIC_MAX_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "chromatic number limited to {CHROMATIC_MAX_VERTICES} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    if g.is_bipartite() {
        return Ok(2);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut k = 3;
    loop {
        let mut colors = vec![usize::MAX; n];
        if color_rec(g, &order, 0, k, 0, &mut colors) {
            return Ok(k);
        }
        k += 1;
    }
}

fn color_rec(g: &Graph, order: &[usize], i: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    // New colors are interchangeable, so only the first unused one is tried.
    for c in 0..k.min(used + 1) {
        if Bits(g.row(v)).all(|u| colors[u] != c) {
            colors[v] = c;
            if color_rec(g, order, i + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::graph_from_mask;

    /// Maximum matching by exhaustive search over edge subsets.
    fn matching_brute(g: &Graph) -> usize {
        let edges = g.edges();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used = 0u64;
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used >> u & 1 == 1 || used >> v & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used |= 1 << u | 1 << v;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    fn cover_brute(g: &Graph) -> usize {
        (0u64..1 << g.n()).filter(|&m| g.is_vertex_cover(VertexSet(m))).map(|m| m.count_ones() as usize).min().unwrap()
    }

    fn independent_cover_brute(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .filter(|&m| g.is_vertex_cover(VertexSet(m)) && g.is_independent(VertexSet(m)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching_number(&Graph::matching(3).unwrap()), 3);
        assert_eq!(matching_number(&Graph::empty(5).unwrap()), 0);
        let k3 = Graph::complete(3).unwrap();
        let two_k3 = k3.disjoint_union(&k3).unwrap();
        assert_eq!(matching_brute(&two_k3), 2);
        assert_eq!(matching_number(&two_k3), 2);
        assert_eq!(matching_number(&Graph::cycle(7).unwrap()), 3);
        assert_eq!(matching_number(&Graph::complete(9).unwrap()), 4);
    }

    #[test]
    fn matching_agrees_with_brute_force_on_all_small_graphs() {
        // Every labeled graph on 5 vertices plus a sample on 7 and 8.
        for mask in 0u32..1 << 10 {
            let g = graph_from_mask(5, mask as u64);
            assert_eq!(matching_number(&g), matching_brute(&g), "{g:?}");
        }
        let mut x = 0x9e3779b97f4a7c15u64;
        for _ in 0..300 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let n = if x & 1 == 0 { 7 } else { 8 };
            let g = graph_from_mask(n, x);
            if g.edge_count() <= 16 {
                assert_eq!(matching_number(&g), matching_brute(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn cover_examples() {
        assert_eq!(vertex_cover_number(&Graph::matching(2).unwrap()), 2);
        assert_eq!(vertex_cover_number(&Graph::star(5).unwrap()), 1);
        assert_eq!(vertex_cover_number(&Graph::empty(4).unwrap()), 0);
        assert_eq!(vertex_cover_number(&Graph::cycle(5).unwrap()), 3);
        assert_eq!(vertex_cover_number(&Graph::complete(6).unwrap()), 5);
        for mask in 0u32..1 << 10 {
            let g = graph_from_mask(5, mask as u64);
            assert_eq!(vertex_cover_number(&g), cover_brute(&g));
        }
    }

    #[test]
    fn independent_covering_examples() {
        let star = Graph::star(4).unwrap();
        assert_eq!(independent_covering_number(&star), Ok(1));
        assert_eq!(independent_covering_number(&Graph::path(3).unwrap()), Ok(1));
        assert_eq!(independent_covering_number(&Graph::matching(2).unwrap()), Ok(2));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(independent_cover_brute(&c4), 2);
        assert_eq!(independent_covering_number(&c4), Ok(2));
        assert_eq!(independent_covering_number(&Graph::complete(3).unwrap()), Err(Error::NotBipartite));
    }

    #[test]
    fn independent_covering_matches_brute_force() {
        for mask in 0u32..1 << 10 {
            let g = graph_from_mask(5, mask as u64);
            if g.is_bipartite() {
                let q = independent_covering_number(&g).unwrap();
                assert_eq!(q, independent_cover_brute(&g));
                assert!(q >= vertex_cover_number(&g));
                let listed = independent_coverings_of_size(&g, q).unwrap();
                let brute: Vec<VertexSet> = (0u64..1 << 5)
                    .map(VertexSet)
                    .filter(|&s| s.len() == q && g.is_vertex_cover(s) && g.is_independent(s))
                    .collect();
                let mut brute = brute;
                brute.sort();
                assert_eq!(listed, brute);
            }
        }
    }

    #[test]
    fn coverings_of_size() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(independent_coverings_of_size(&p3, 1).unwrap(), vec![VertexSet::singleton(1)]);
        assert_eq!(independent_coverings_of_size(&Graph::matching(2).unwrap(), 2).unwrap().len(), 4);
        assert!(independent_coverings_of_size(&Graph::complete(2).unwrap(), 2).unwrap().is_empty());
    }

    #[test]
    fn coverings_below() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(coverings_strictly_below(&k3, 3).len(), 3);
        assert!(coverings_strictly_below(&Graph::matching(2).unwrap(), 2).is_empty());
        assert_eq!(coverings_strictly_below(&Graph::star(4).unwrap(), 2), vec![VertexSet::singleton(0)]);
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::complete(4).unwrap()), Ok(4));
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()), Ok(3));
        let t37 = Graph::complete_multipartite(&[3, 2, 2]).unwrap();
        assert_eq!(chromatic_number(&t37), Ok(3));
        assert!(matches!(chromatic_number(&Graph::empty(21).unwrap()), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
