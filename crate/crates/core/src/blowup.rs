//! Edge blow-ups, vertex splitting, and decomposition families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::IsoClassSet;
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::invariants::chromatic_number;
use crate::oracle::enumerate::enumerate_graphs_where;
use crate::subgraph::contains_subgraph;

/// Default truncation of the constant `t` in the oracle.
pub const ORACLE_T_MAX: usize = 3;
/// Default vertex cap for candidate members in the oracle.
pub const ORACLE_M_VERTEX_MAX: usize = 8;

/// A forbidden graph `F` without isolated vertices and a clique parameter
/// `p >= 2`; together they name the blow-up `F^{p+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSpec {
    #[serde(with = "graph6_serde")]
    pub f: Graph,
    pub p: usize,
}

impl BlowupSpec {
    pub fn new(f: Graph, p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameters(format!("p must be at least 2, got {p}")));
        }
        if f.edge_count() == 0 {
            return Err(Error::EmptyForbiddenGraph);
        }
        if f.min_degree() == 0 {
            return Err(Error::InvalidParameters("forbidden graph has isolated vertices; strip them first".into()));
        }
        Ok(BlowupSpec { f, p })
    }

    /// `|V(F^{p+1})| = |V(F)| + (p-1) e(F)`.
    pub fn blowup_order(&self) -> usize {
        self.f.n() + (self.p - 1) * self.f.edge_count()
    }
}

pub(crate) mod graph6_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::Graph;
    use crate::graph6::{graph6_decode, graph6_encode};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&graph6_encode(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let s = String::deserialize(d)?;
        graph6_decode(&s).map_err(serde::de::Error::custom)
    }
}

/// `F` with its degree-0 vertices deleted.
pub fn strip_isolated(f: &Graph) -> Result<Graph> {
    if f.edge_count() == 0 {
        return Err(Error::EmptyForbiddenGraph);
    }
    f.remove_vertices(f.isolated_vertices())
}

/// `F^{p+1}`: every edge of `F` becomes a `K_{p+1}` on its two endpoints and
/// `p - 1` fresh vertices.
pub fn edge_blowup(spec: &BlowupSpec) -> Result<Graph> {
    let order = spec.blowup_order();
    if order > MAX_VERTICES {
        return Err(Error::CapacityExceeded(order));
    }
    let mut g = Graph::empty(order)?;
    let mut next = spec.f.n();
    for (u, v) in spec.f.edges() {
        let mut clique = vec![u, v];
        clique.extend(next..next + spec.p - 1);
        next += spec.p - 1;
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

/// `F∇U`: every vertex of `U` is replaced by `d_F(v)` independent copies,
/// one per incident edge. All of `U` is split at once, so an edge with both
/// ends in `U` joins a fresh copy at each end.
///
/// Unsplit vertices keep their relative order and come first.
pub fn vertex_split(f: &Graph, u: VertexSet) -> Result<Graph> {
    if !u.is_subset(f.vertices()) {
        let bad = u.difference(f.vertices()).iter().next().unwrap_or(0);
        return Err(Error::InvalidVertex { vertex: bad, n: f.n() });
    }
    let kept: Vec<usize> = f.vertices().difference(u).iter().collect();
    let order = kept.len() + u.iter().map(|v| f.degree(v)).sum::<usize>();
    if order > MAX_VERTICES {
        return Err(Error::CapacityExceeded(order));
    }
    let mut index = vec![usize::MAX; f.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut g = Graph::empty(order)?;
    let mut next = kept.len();
    for (a, b) in f.edges() {
        let mut end = |x: usize| {
            if u.contains(x) {
                next += 1;
                next - 1
            } else {
                index[x]
            }
        };
        let ia = end(a);
        let ib = end(b);
        g.add_edge(ia, ib)?;
    }
    Ok(g)
}

/// The decomposition family of `F^{p+1}`, computed as the split family
/// `{F∇U : U ⊆ V(F)}`. Valid when `2 <= χ(F) <= p - 1`.
pub fn decomposition_family(spec: &BlowupSpec) -> Result<IsoClassSet> {
    let chi = chromatic_number(&spec.f)?;
    if chi < 2 || chi + 1 > spec.p {
        return Err(Error::LemmaInapplicable { chi, p: spec.p });
    }
    split_family(&spec.f)
}

/// `{F∇U : U ⊆ V(F)}` up to isomorphism.
pub fn split_family(f: &Graph) -> Result<IsoClassSet> {
    let n = f.n();
    if n > 20 {
        return Err(Error::BudgetExceeded(format!("split family enumerates 2^{n} subsets; limit is 2^20")));
    }
    let mut out = IsoClassSet::new();
    for mask in 0u64..1 << n {
        out.insert(&vertex_split(f, VertexSet(mask))?);
    }
    Ok(out)
}

/// `(M ∪ E_t) + T_{p-1}((p-1) t)`.
pub fn decomposition_host(m: &Graph, t: usize, p: usize) -> Result<Graph> {
    let left = m.disjoint_union(&Graph::empty(t)?)?;
    let right = Graph::complete_multipartite(&vec![t; p - 1])?;
    left.join(&right)
}

/// Decomposition family straight from the definition: all subgraph-minimal
/// `M` on at most `m_vertex_max` vertices such that `F^{p+1}` embeds in
/// `(M ∪ E_t) + T_{p-1}((p-1)t)` for some `t <= t_max`.
///
/// The host grows with `t`, so only `t = t_max` is tested. The result is
/// exact up to the truncation of `t` and of the member size.
pub fn decomposition_family_oracle(spec: &BlowupSpec, t_max: usize, m_vertex_max: usize) -> Result<IsoClassSet> {
    let pattern_order = spec.blowup_order();
    if pattern_order > 12 || t_max > 4 || m_vertex_max > 8 {
        return Err(Error::BudgetExceeded(format!(
            "oracle limited to |V(F^(p+1))| <= 12, t_max <= 4, m <= 8 \
             (got {pattern_order}, {t_max}, {m_vertex_max})"
        )));
    }
    let pattern = edge_blowup(spec)?;
    let mut minimal: Vec<Graph> = Vec::new();
    for m in 0..=m_vertex_max {
        // Sorted by edge count, so proper subgraphs are always seen first.
        for cand in enumerate_graphs_where(m, |_| true)? {
            if minimal.iter().any(|h| contains_subgraph(&cand, h)) {
                continue;
            }
            let host = decomposition_host(&cand, t_max, spec.p)?;
            if contains_subgraph(&host, &pattern) {
                minimal.push(cand);
            }
        }
    }
    Ok(minimal.into_iter().collect())
}
