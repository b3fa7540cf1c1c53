//! Canonical labeling by partition refinement and backtracking.
//!
//! The search individualizes vertices of the first non-singleton cell and
//! refines to an equitable partition; every discrete leaf gives a candidate
//! relabeling and the lexicographically largest adjacency wins. Children
//! that are equivalent under automorphisms already known to fix the current
//! path are skipped. Twin transpositions are known before the search starts,
//! which keeps Turán-like graphs with huge automorphism groups cheap.

use crate::graph::{Bits, Graph};
use crate::graph6::graph6_encode;

/// Result of canonical labeling: `labeling[v]` is the canonical position of `v`.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub labeling: Vec<usize>,
    pub graph: Graph,
}

impl CanonicalLabeling {
    /// Relabeling-invariant bytes (graph6 of the canonical graph).
    pub fn form(&self) -> Vec<u8> {
        graph6_encode(&self.graph).into_bytes()
    }
}

pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let n = g.n();
    if n == 0 {
        return CanonicalLabeling { labeling: Vec::new(), graph: g.clone() };
    }
    let mut search = Search { adj: g.rows(), n, best: None, autos: twin_transpositions(g) };
    let cells = vec![crate::graph::low_mask(n)];
    search.descend(cells, &mut Vec::new());
    let (cert, labeling) = search.best.expect("search visits at least one leaf");
    CanonicalLabeling { labeling, graph: Graph::from_adjacency_unchecked(cert) }
}

pub fn canonical_form(g: &Graph) -> Vec<u8> {
    canonical_labeling(g).form()
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_labeling(g).graph
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && {
            let mut dg = g.degrees();
            let mut dh = h.degrees();
            dg.sort_unstable();
            dh.sort_unstable();
            dg == dh
        }
        && canonical_graph(g) == canonical_graph(h)
}

/// Whether two vertices of a twin class are adjacent to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TwinKind {
    /// Same closed neighborhood; the class is a clique.
    True,
    /// Same open neighborhood; the class is independent.
    False,
}

/// Partition of the vertices into twin classes, ordered by smallest vertex.
/// Singletons are reported as `TwinKind::False`.
pub(crate) fn twin_classes(g: &Graph) -> Vec<(u64, TwinKind)> {
    let n = g.n();
    let mut assigned = 0u64;
    let mut out = Vec::new();
    for v in 0..n {
        if assigned >> v & 1 == 1 {
            continue;
        }
        let open = g.row(v);
        let closed = open | 1 << v;
        let mut true_class = 1u64 << v;
        let mut false_class = 1u64 << v;
        for u in v + 1..n {
            if assigned >> u & 1 == 1 {
                continue;
            }
            if g.row(u) | 1 << u == closed {
                true_class |= 1 << u;
            } else if g.row(u) == open {
                false_class |= 1 << u;
            }
        }
        // A vertex cannot have both a true twin and a false twin.
        let (class, kind) =
            if true_class.count_ones() > 1 { (true_class, TwinKind::True) } else { (false_class, TwinKind::False) };
        assigned |= class;
        out.push((class, kind));
    }
    out
}

fn twin_transpositions(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for (class, _) in twin_classes(g) {
        let members: Vec<usize> = Bits(class).collect();
        for w in members.windows(2) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(w[0], w[1]);
            out.push(perm);
        }
    }
    out
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>, fixed: &mut Vec<usize>) {
        refine(self.adj, &mut cells);
        if cells.len() == self.n {
            self.leaf(&cells);
            return;
        }
        let target_idx =
            cells.iter().position(|c| c.count_ones() > 1).expect("non-discrete partition has a non-singleton cell");
        let target = cells[target_idx];
        let mut tried: Vec<usize> = Vec::new();
        for v in Bits(target) {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, fixed) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target_idx]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[target_idx + 1..]);
            fixed.push(v);
            self.descend(child, fixed);
            fixed.pop();
        }
    }

    /// Is `v` in the orbit of a tried vertex under the known automorphisms
    /// that fix every vertex in `fixed`?
    fn equivalent_to_tried(&self, v: usize, tried: &[usize], fixed: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.autos {
            if fixed.iter().any(|&f| a[f] != f) {
                continue;
            }
            for (x, &y) in a.iter().enumerate() {
                let rx = find(&mut parent, x);
                let ry = find(&mut parent, y);
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn leaf(&mut self, cells: &[u64]) {
        let mut lab = vec![0usize; self.n];
        for (pos, &c) in cells.iter().enumerate() {
            lab[c.trailing_zeros() as usize] = pos;
        }
        let mut cert = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for u in Bits(self.adj[v]) {
                row |= 1u64 << lab[u];
            }
            cert[lab[v]] = row;
        }
        match &self.best {
            Some((best_cert, best_lab)) => match cert.cmp(best_cert) {
                std::cmp::Ordering::Greater => self.best = Some((cert, lab)),
                std::cmp::Ordering::Equal => {
                    let mut at_pos = vec![0usize; self.n];
                    for (v, &p) in best_lab.iter().enumerate() {
                        at_pos[p] = v;
                    }
                    let auto: Vec<usize> = lab.iter().map(|&p| at_pos[p]).collect();
                    if auto.iter().enumerate().any(|(i, &j)| i != j) {
                        self.autos.push(auto);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
            None => self.best = Some((cert, lab)),
        }
    }
}

/// Refines an ordered partition until it is equitable. Cells split by
/// neighbor count into each splitter cell, new pieces in ascending count
/// order, so the result depends only on the partition and not on labels.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(8);
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let w = cells[si];
            let mut ci = 0;
            while ci < cells.len() {
                let x = cells[ci];
                if x & (x - 1) != 0 {
                    groups.clear();
                    for v in Bits(x) {
                        let c = (adj[v] & w).count_ones();
                        match groups.iter_mut().find(|(k, _)| *k == c) {
                            Some((_, m)) => *m |= 1 << v,
                            None => groups.push((c, 1 << v)),
                        }
                    }
                    if groups.len() > 1 {
                        groups.sort_unstable_by_key(|&(k, _)| k);
                        let pieces = groups.len();
                        cells.splice(ci..=ci, groups.iter().map(|&(_, m)| m));
                        ci += pieces;
                        changed = true;
                        continue;
                    }
                }
                ci += 1;
            }
            si += 1;
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
        use rand::Rng;
        let mut g = Graph::empty(n).unwrap();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(density) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    /// Isomorphism by trying every permutation.
    fn iso_brute(g: &Graph, h: &Graph) -> bool {
        fn rec(g: &Graph, h: &Graph, perm: &mut Vec<usize>, used: u64) -> bool {
            let k = perm.len();
            if k == g.n() {
                return true;
            }
            for t in 0..h.n() {
                if used >> t & 1 == 1 {
                    continue;
                }
                if (0..k).all(|i| g.has_edge(i, k) == h.has_edge(perm[i], t)) {
                    perm.push(t);
                    if rec(g, h, perm, used | 1 << t) {
                        return true;
                    }
                    perm.pop();
                }
            }
            false
        }
        g.n() == h.n() && rec(g, h, &mut Vec::new(), 0)
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = Graph::path(4).unwrap();
        let s4 = Graph::star(4).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&s4));
        assert!(!is_isomorphic(&p4, &s4));
    }

    #[test]
    fn single_class_of_two_edge_graphs_on_three_vertices() {
        let forms: std::collections::BTreeSet<_> = [[(0, 1), (1, 2)], [(0, 1), (0, 2)], [(0, 2), (1, 2)]]
            .iter()
            .map(|e| canonical_form(&Graph::from_edges(3, e).unwrap()))
            .collect();
        assert_eq!(forms.len(), 1);
    }

    /// Number of isomorphism classes among all labeled graphs on `n`
    /// vertices, by pairwise brute-force isomorphism.
    fn classes_brute(n: usize) -> usize {
        let m = n * (n - 1) / 2;
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u64..1 << m {
            let g = crate::test_support::graph_from_mask(n, mask);
            if !reps.iter().any(|r| iso_brute(r, &g)) {
                reps.push(g);
            }
        }
        reps.len()
    }

    fn classes_canon(n: usize) -> usize {
        let m = n * (n - 1) / 2;
        let forms: std::collections::HashSet<_> =
            (0u64..1 << m).map(|mask| canonical_form(&crate::test_support::graph_from_mask(n, mask))).collect();
        forms.len()
    }

    #[test]
    fn class_counts_match_pairwise_brute_force() {
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            assert_eq!(classes_brute(n), expected);
            assert_eq!(classes_canon(n), expected);
        }
        assert_eq!(classes_canon(6), 156);
        assert_eq!(classes_canon(7), 1044);
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        let t = Graph::complete_multipartite(&[11, 11, 11, 11, 10, 10]).unwrap();
        let perm: Vec<usize> = (0..64).rev().collect();
        assert_eq!(canonical_form(&t), canonical_form(&t.permute(&perm)));
        let e = Graph::empty(64).unwrap();
        assert_eq!(canonical_graph(&e), e);
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut p: Vec<usize> = (0..10).collect();
        p.shuffle(&mut rng);
        assert!(is_isomorphic(&petersen, &petersen.permute(&p)));
    }

    #[test]
    fn twin_classes_of_join() {
        let g = Graph::complete(2).unwrap().join(&Graph::complete_multipartite(&[3, 2]).unwrap()).unwrap();
        let classes = twin_classes(&g);
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0], (VertexSet::from_iter([0, 1]).0, TwinKind::True));
        assert_eq!(classes[1], (VertexSet::from_iter([2, 3, 4]).0, TwinKind::False));
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(n in 1usize..=14, density in 0.1f64..0.9, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, density, &mut rng);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm);
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
            let lab = canonical_labeling(&g);
            prop_assert_eq!(g.permute(&lab.labeling), lab.graph);
        }

        #[test]
        fn distinguishes_like_brute_force(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(6, 0.5, &mut rng);
            let h = random_graph(6, 0.5, &mut rng);
            prop_assert_eq!(is_isomorphic(&g, &h), iso_brute(&g, &h));
        }
    }
}
