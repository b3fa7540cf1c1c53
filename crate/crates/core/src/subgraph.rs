//! Non-induced subgraph containment.
//!
//! Host vertices are first grouped into twin classes (vertices with equal
//! neighborhoods apart from each other). Adjacency between two host vertices
//! is then a function of their classes, so an embedding exists iff there is
//! an assignment of pattern vertices to host classes that respects class
//! capacities and sends every pattern edge to an adjacent pair of classes (or
//! into one clique-type class). The backtracking search runs over such
//! assignments. Twins inside the pattern are assigned in nondecreasing class
//! order and interchangeable host classes are only opened in index order;
//! both restrictions keep the lexicographically smallest assignment of every
//! orbit, so no solution is lost.
//!
//! For hosts without twins every class is a single vertex and the search is
//! ordinary vertex-by-vertex backtracking with bitset candidate filtering.

use crate::canon::{twin_classes, TwinKind};
use crate::graph::{Bits, Graph};

/// True iff `host` contains a (not necessarily induced) copy of `pattern`.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_embedding(host, pattern).is_some()
}

/// An injective map `pattern vertex -> host vertex` preserving edges.
pub fn find_embedding(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    if !degrees_dominated(host, pattern) {
        return None;
    }
    let classes = HostClasses::new(host);
    let plan = Plan::new(pattern, &classes);
    let mut state = State {
        assign: vec![usize::MAX; plan.order.len()],
        used: vec![0; classes.size.len()],
        open: classes.all_mask(),
        unused: classes.all_mask(),
    };
    if !search(&classes, &plan, &mut state, 0) {
        return None;
    }

    let mut map = vec![usize::MAX; pattern.n()];
    let mut next: Vec<Bits> = classes.members.iter().map(|&m| Bits(m)).collect();
    let mut taken = 0u64;
    for (i, &v) in plan.order.iter().enumerate() {
        let h = next[state.assign[i]].next().expect("class capacity respected");
        map[v] = h;
        taken |= 1 << h;
    }
    let mut spare = Bits(crate::graph::low_mask(host.n()) & !taken);
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = spare.next().expect("pattern has at most host.n() vertices");
    }
    Some(map)
}

fn degrees_dominated(host: &Graph, pattern: &Graph) -> bool {
    let mut hd = host.degrees();
    let mut pd = pattern.degrees();
    hd.sort_unstable_by(|a, b| b.cmp(a));
    pd.sort_unstable_by(|a, b| b.cmp(a));
    pd.iter().zip(&hd).all(|(p, h)| p <= h)
}

struct HostClasses {
    members: Vec<u64>,
    size: Vec<usize>,
    /// Class index bitmask of adjacent classes, plus the class itself when
    /// it is a clique.
    reach: Vec<u64>,
    degree: Vec<usize>,
    /// Lower-index classes interchangeable with this one.
    equiv_lower: Vec<u64>,
}

impl HostClasses {
    fn new(host: &Graph) -> Self {
        let tc = twin_classes(host);
        let k = tc.len();
        let members: Vec<u64> = tc.iter().map(|&(m, _)| m).collect();
        let size: Vec<usize> = members.iter().map(|m| m.count_ones() as usize).collect();
        let rep: Vec<usize> = members.iter().map(|m| m.trailing_zeros() as usize).collect();
        let mut reach = vec![0u64; k];
        for i in 0..k {
            for j in 0..k {
                if i != j && host.has_edge(rep[i], rep[j]) {
                    reach[i] |= 1 << j;
                }
            }
            if tc[i].1 == TwinKind::True && size[i] > 1 {
                reach[i] |= 1 << i;
            }
        }
        let degree = rep.iter().map(|&r| host.degree(r)).collect();
        let mut equiv_lower = vec![0u64; k];
        for i in 0..k {
            for j in 0..i {
                let others = !(1u64 << i | 1u64 << j);
                if size[i] == size[j]
                    && (reach[i] >> i & 1) == (reach[j] >> j & 1)
                    && reach[i] & others == reach[j] & others
                {
                    equiv_lower[i] |= 1 << j;
                }
            }
        }
        HostClasses { members, size, reach, degree, equiv_lower }
    }

    fn all_mask(&self) -> u64 {
        crate::graph::low_mask(self.size.len())
    }
}

struct Plan {
    /// Non-isolated pattern vertices in search order.
    order: Vec<usize>,
    /// Positions (in `order`) of earlier neighbors.
    back: Vec<Vec<usize>>,
    /// Position of the previous twin in `order`, if any.
    prev_twin: Vec<Option<usize>>,
    /// Classes whose degree is large enough.
    deg_ok: Vec<u64>,
}

impl Plan {
    fn new(pattern: &Graph, classes: &HostClasses) -> Self {
        let n = pattern.n();
        let mut remaining: u64 = (0..n).filter(|&v| pattern.degree(v) > 0).fold(0, |m, v| m | 1 << v);
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        while remaining != 0 {
            // Most placed neighbors first, then highest degree, then index.
            let v = Bits(remaining)
                .max_by_key(|&v| {
                    let row = pattern.neighbors(v).0;
                    ((row & placed).count_ones(), pattern.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            order.push(v);
            placed |= 1 << v;
            remaining &= !(1 << v);
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| pattern.neighbors(v).iter().map(|u| pos[u]).filter(|&p| p < i).collect())
            .collect();
        let mut twin_of = vec![usize::MAX; n];
        for (ci, (m, _)) in twin_classes(pattern).iter().enumerate() {
            for v in Bits(*m) {
                twin_of[v] = ci;
            }
        }
        let mut last_seen = vec![None; n];
        let mut prev_twin = Vec::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            prev_twin.push(last_seen[twin_of[v]]);
            last_seen[twin_of[v]] = Some(i);
        }
        let deg_ok = order
            .iter()
            .map(|&v| {
                let d = pattern.degree(v);
                classes.degree.iter().enumerate().filter(|(_, &cd)| cd >= d).fold(0u64, |m, (c, _)| m | 1 << c)
            })
            .collect();
        Plan { order, back, prev_twin, deg_ok }
    }
}

struct State {
    assign: Vec<usize>,
    used: Vec<usize>,
    /// Classes with spare capacity.
    open: u64,
    /// Classes not used at all.
    unused: u64,
}

fn search(classes: &HostClasses, plan: &Plan, st: &mut State, i: usize) -> bool {
    if i == plan.order.len() {
        return true;
    }
    let mut allowed = st.open & plan.deg_ok[i];
    for &p in &plan.back[i] {
        allowed &= classes.reach[st.assign[p]];
    }
    if let Some(t) = plan.prev_twin[i] {
        allowed &= !crate::graph::low_mask(st.assign[t]);
    }
    for c in Bits(allowed) {
        if st.unused >> c & 1 == 1 && classes.equiv_lower[c] & st.unused != 0 {
            continue;
        }
        st.assign[i] = c;
        st.used[c] += 1;
        let (open, unused) = (st.open, st.unused);
        st.unused &= !(1 << c);
        if st.used[c] == classes.size[c] {
            st.open &= !(1 << c);
        }
        if search(classes, plan, st, i + 1) {
            return true;
        }
        st.used[c] -= 1;
        st.open = open;
        st.unused = unused;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Containment by trying every injective map.
    fn contains_brute(host: &Graph, pattern: &Graph) -> bool {
        fn rec(h: &Graph, p: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
            let k = map.len();
            if k == p.n() {
                return true;
            }
            for t in 0..h.n() {
                if used >> t & 1 == 0 && (0..k).all(|i| !p.has_edge(i, k) || h.has_edge(map[i], t)) {
                    map.push(t);
                    if rec(h, p, map, used | 1 << t) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        rec(host, pattern, &mut Vec::new(), 0)
    }

    fn check_embedding(host: &Graph, pattern: &Graph, map: &[usize]) {
        let mut seen = 0u64;
        for &h in map {
            assert_eq!(seen >> h & 1, 0, "map not injective");
            seen |= 1 << h;
        }
        for (u, v) in pattern.edges() {
            assert!(host.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn examples() {
        assert!(contains_subgraph(&Graph::complete(4).unwrap(), &Graph::path(3).unwrap()));
        assert!(!contains_subgraph(&Graph::cycle(5).unwrap(), &Graph::complete(3).unwrap()));
        let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let map = find_embedding(&k33, &c4).unwrap();
        check_embedding(&k33, &c4, &map);
    }

    #[test]
    fn reflexive_and_empty_patterns() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert!(contains_subgraph(&g, &g));
        for k in 0..=8 {
            assert_eq!(contains_subgraph(&g, &Graph::empty(k).unwrap()), k <= 6);
        }
    }

    #[test]
    fn blowup_like_host_rejects_by_capacity() {
        // K_1 + T_3(9) has clique number 4 but no two disjoint K_4s.
        let host = Graph::complete(1).unwrap().join(&Graph::complete_multipartite(&[3, 3, 3]).unwrap()).unwrap();
        let k4 = Graph::complete(4).unwrap();
        let two_k4 = k4.disjoint_union(&k4).unwrap();
        assert!(contains_subgraph(&host, &k4));
        assert!(!contains_subgraph(&host, &two_k4));
        let host2 = Graph::complete(2).unwrap().join(&Graph::complete_multipartite(&[3, 3, 3]).unwrap()).unwrap();
        let map = find_embedding(&host2, &two_k4).unwrap();
        check_embedding(&host2, &two_k4, &map);
    }

    #[test]
    fn agrees_with_brute_force_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..600 {
            let hn = rng.gen_range(1..=8);
            let pn = rng.gen_range(1..=hn.min(6));
            let hd = rng.gen_range(0.2..0.95);
            let pd = rng.gen_range(0.1..0.7);
            let host = random(hn, hd, &mut rng);
            let pattern = random(pn, pd, &mut rng);
            let fast = find_embedding(&host, &pattern);
            assert_eq!(fast.is_some(), contains_brute(&host, &pattern), "{host:?} {pattern:?}");
            if let Some(map) = fast {
                check_embedding(&host, &pattern, &map);
            }
        }
    }

    fn random(n: usize, d: f64, rng: &mut ChaCha8Rng) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(d) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    proptest! {
        #[test]
        fn twin_rich_hosts_agree_with_brute_force(
            parts in proptest::collection::vec(1usize..=3, 1..=3),
            top in 0usize..=2,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let host = Graph::complete(top).unwrap()
                .join(&Graph::complete_multipartite(&parts).unwrap()).unwrap();
            let pn = rng.gen_range(1..=host.n().min(6));
            let pattern = random(pn, 0.5, &mut rng);
            prop_assert_eq!(contains_subgraph(&host, &pattern), contains_brute(&host, &pattern));
        }
    }
}
