//! Property tests for the invariants of each module.

use proptest::prelude::*;

use spexlab::blowup::{decomposition_family, edge_blowup, vertex_split};
use spexlab::constructions::{build_h_family, h_base, h_edge_count, turan_part_sizes, Realization};
use spexlab::invariants::{chromatic_number, independent_covering_number, matching_number, vertex_cover_number};
use spexlab::oracle::enumerate::enumerate_graphs_where;
use spexlab::oracle::{ex_bruteforce, spex_bruteforce};
use spexlab::params::{chvatal_hanson, compute_profile, family_u_and_mu};
use spexlab::subgraph::contains_subgraph;
use spexlab::{BlowupSpec, Graph, IsoClassSet, VertexSet};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k % bits.len()] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, prop::collection::vec(any::<bool>(), 1..64)).prop_map(|(n, bits)| graph_from_bits(n, &bits))
}

/// Graphs with at least one edge and no isolated vertices.
fn arb_forbidden(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter_map("needs edges and no isolated vertices", |g| {
        let keep = g.vertices().difference(g.isolated_vertices());
        let h = g.induced_subgraph(keep).ok()?;
        (h.edge_count() > 0).then_some(h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn containment_basics(g in arb_graph(9), k in 0usize..=10) {
        prop_assert!(contains_subgraph(&g, &g));
        prop_assert_eq!(contains_subgraph(&g, &Graph::empty(k).unwrap()), k <= g.n());
    }

    #[test]
    fn matching_and_cover_numbers(g in arb_graph(10)) {
        let (nu, beta) = (matching_number(&g), vertex_cover_number(&g));
        prop_assert!(nu <= beta && beta <= 2 * nu);
        if g.is_bipartite() {
            // König: the cover number equals the matching number.
            prop_assert_eq!(beta, nu);
            prop_assert!(independent_covering_number(&g).unwrap() >= beta);
        } else {
            prop_assert!(independent_covering_number(&g).is_err());
        }
    }

    #[test]
    fn splitting_preserves_edges(f in arb_forbidden(7), mask in any::<u64>()) {
        let u = VertexSet(mask & ((1u64 << f.n()) - 1));
        let s = vertex_split(&f, u).unwrap();
        prop_assert_eq!(s.edge_count(), f.edge_count());
        let all = vertex_split(&f, f.vertices()).unwrap();
        prop_assert!(spexlab::canon::is_isomorphic(&all, &Graph::matching(f.edge_count()).unwrap()));
    }

    #[test]
    fn blowup_order(f in arb_forbidden(6), p in 2usize..=5) {
        let spec = BlowupSpec::new(f.clone(), p).unwrap();
        prop_assume!(spec.blowup_order() <= 64);
        let g = edge_blowup(&spec).unwrap();
        prop_assert_eq!(g.n(), f.n() + (p - 1) * f.edge_count());
        prop_assert_eq!(g.edge_count(), f.edge_count() * (p + 1) * p / 2);
    }

    #[test]
    fn decomposition_family_structure(f in arb_forbidden(6)) {
        let chi = chromatic_number(&f).unwrap();
        let spec = BlowupSpec::new(f.clone(), chi + 1).unwrap();
        let fam = decomposition_family(&spec).unwrap();
        prop_assert!(fam.contains(&f));
        prop_assert!(fam.contains(&Graph::matching(f.edge_count()).unwrap()));
        prop_assert!(fam.iter().any(Graph::is_bipartite));
        // Closed under further splitting.
        for m in fam.iter() {
            for mask in 0..1u64 << m.n().min(8) {
                let s = vertex_split(m, VertexSet(mask & ((1u64 << m.n()) - 1))).unwrap();
                prop_assert!(fam.contains(&s));
            }
        }
    }

    #[test]
    fn profile_invariants(f in arb_forbidden(5)) {
        let chi = chromatic_number(&f).unwrap();
        let prof = compute_profile(&f, chi + 1).unwrap();
        prop_assert!(prof.beta <= prof.q);
        prop_assert!(prof.mu >= 1 && prof.lambda >= 1);
        prop_assert!(!prof.b_family.is_empty());
        let (us, mu) = family_u_and_mu(&prof.f, prof.q).unwrap();
        prop_assert_eq!(mu, prof.mu);
        for u in us {
            prop_assert!(!u.is_empty());
            prop_assert!(prof.f.is_independent(prof.f.vertices().difference(u)));
            prop_assert_eq!(independent_covering_number(&vertex_split(&prof.f, u).unwrap()).unwrap(), prof.q);
        }
    }

    #[test]
    fn chvatal_hanson_bound(nu in 1usize..=20, delta in 1usize..=20) {
        prop_assert!(chvatal_hanson(nu, delta) <= nu * delta + nu);
    }

    #[test]
    fn turan_parts_balanced(n in 0usize..300, p in 1usize..10) {
        let parts = turan_part_sizes(n, p);
        prop_assert_eq!(parts.iter().sum::<usize>(), n);
        prop_assert!(parts.iter().max().unwrap() - parts.iter().min().unwrap() <= 1);
    }

    #[test]
    fn members_extend_the_base(n in 8usize..=40, p in 2usize..=4, q in 1usize..=3, lambda in 1usize..=3) {
        let b: IsoClassSet = [Graph::complete(q).unwrap()].into_iter().collect();
        prop_assume!(n >= q - 1 + p + 2 * lambda);
        let Ok(fam) = build_h_family(n, p, q, lambda, &b) else { return Ok(()) };
        let Realization::Explicit(base) = h_base(n, p, q).unwrap() else { unreachable!() };
        let e = h_edge_count(n, p, q, lambda, &b).unwrap();
        for m in &fam.members {
            let g = m.graph.as_graph().unwrap();
            prop_assert_eq!(g.edge_count(), e);
            prop_assert!(base.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
        }
    }
}

#[test]
fn explicit_and_block_edge_counts_agree() {
    let b: IsoClassSet = [Graph::complete(2).unwrap()].into_iter().collect();
    for n in 40..=64 {
        let fam = build_h_family(n, 4, 2, 2, &b).unwrap();
        let e = h_edge_count(n, 4, 2, 2, &b).unwrap();
        for m in &fam.members {
            let g = m.graph.as_graph().unwrap();
            assert_eq!(g.edge_count(), e);
        }
    }
}

/// Exhaustive `f(ν, Δ)` over graphs on `n` vertices.
fn f_exhaustive(nu: usize, delta: usize, n: usize) -> usize {
    enumerate_graphs_where(n, |g| g.max_degree() <= delta && matching_number(g) <= nu)
        .unwrap()
        .iter()
        .map(Graph::edge_count)
        .max()
        .unwrap()
}

#[test]
fn chvatal_hanson_against_exhaustive_search() {
    // Enumeration reaches 9 vertices; pairs needing more are checked as an
    // upper bound only.
    for nu in 1..=4 {
        for delta in 1..=4 {
            let needed = nu * (delta + 1) + delta;
            let brute = f_exhaustive(nu, delta, needed.min(9));
            let f = chvatal_hanson(nu, delta);
            if needed <= 9 || (nu <= 3 && delta <= 3) {
                assert_eq!(brute, f, "f({nu},{delta})");
            } else {
                assert!(brute <= f, "f({nu},{delta})");
            }
        }
    }
}

#[test]
fn oracle_monotone_and_rayleigh() {
    for (f, p) in [(Graph::path(3).unwrap(), 2), (Graph::complete(2).unwrap(), 3)] {
        let spec = BlowupSpec::new(f, p).unwrap();
        let mut prev = 0;
        for n in 1..=8 {
            let (ex, _) = ex_bruteforce(n, &spec).unwrap();
            assert!(ex >= prev);
            prev = ex;
            let spex = spex_bruteforce(n, &spec, 1e-10).unwrap();
            assert!(spex.value.rho_hat >= 2.0 * ex as f64 / n as f64 - 1e-10);
        }
    }
}
