//! The parameter profile of a forbidden graph: `β`, `q`, `B`, `U`, `μ`, `λ`,
//! the Chvátal–Hanson function and the `D_{λ-1}` family.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::blowup::{
    decomposition_family, decomposition_family_oracle, strip_isolated, vertex_split, BlowupSpec, ORACLE_M_VERTEX_MAX,
    ORACLE_T_MAX,
};
use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::family::IsoClassSet;
use crate::graph::{Graph, VertexSet};
use crate::invariants::{
    chromatic_number, coverings_strictly_below, independent_covering_number, independent_coverings_of_size,
    vertex_cover_number,
};

/// How the decomposition family was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySource {
    /// Vertex-split closure of `F`.
    Splits,
    /// Exhaustive search from the definition (truncated).
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamProfile {
    #[serde(rename = "F", with = "crate::blowup::graph6_serde")]
    pub f: Graph,
    pub p: usize,
    #[serde(rename = "chi_F")]
    pub chi_f: usize,
    pub beta: usize,
    pub q: usize,
    pub mu: usize,
    pub lambda: usize,
    #[serde(rename = "B")]
    pub b_family: IsoClassSet,
    #[serde(rename = "M")]
    pub m_family: IsoClassSet,
    #[serde(rename = "Mstar")]
    pub m_star: IsoClassSet,
    /// Qualifying vertex subsets of `F`, as bitmasks.
    #[serde(rename = "U")]
    pub u_family: Vec<VertexSet>,
    pub family_source: FamilySource,
}

/// Computes the whole profile for `(F, p)`. Isolated vertices of `F` are
/// dropped first. When `2 <= χ(F) <= p - 1` the decomposition family is the
/// split family; otherwise the definition-based oracle is used with its
/// default truncation.
pub fn compute_profile(f: &Graph, p: usize) -> Result<ParamProfile> {
    let f = strip_isolated(f)?;
    let spec = BlowupSpec::new(f.clone(), p)?;
    let chi_f = chromatic_number(&f)?;
    let (m_family, family_source) = match decomposition_family(&spec) {
        Ok(m) => (m, FamilySource::Splits),
        Err(Error::LemmaInapplicable { .. }) => {
            (decomposition_family_oracle(&spec, ORACLE_T_MAX, ORACLE_M_VERTEX_MAX)?, FamilySource::Oracle)
        }
        Err(e) => return Err(e),
    };
    let beta = param_beta(&m_family)?;
    let q = param_q(&m_family)?;
    let b_family = family_b(&m_family, beta, q)?;
    let m_star = bipartite_subfamily(&m_family, q);
    let (u_family, mu) = family_u_and_mu(&f, q)?;
    let lambda = param_lambda(&m_star, q)?;
    Ok(ParamProfile { f, p, chi_f, beta, q, mu, lambda, b_family, m_family, m_star, u_family, family_source })
}

/// `β = min β(M)` over the family.
pub fn param_beta(family: &IsoClassSet) -> Result<usize> {
    family.iter().map(vertex_cover_number).min().ok_or(Error::EmptyFamily)
}

/// `q = min q(M)` over bipartite members.
pub fn param_q(family: &IsoClassSet) -> Result<usize> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    family
        .iter()
        .filter(|m| m.is_bipartite())
        .map(|m| independent_covering_number(m).expect("member is bipartite"))
        .min()
        .ok_or_else(|| Error::InternalInvariantViolation("decomposition family has no bipartite member".into()))
}

/// Bipartite members with independent covering number exactly `q`.
pub fn bipartite_subfamily(family: &IsoClassSet, q: usize) -> IsoClassSet {
    family.iter().filter(|m| m.is_bipartite() && independent_covering_number(m) == Ok(q)).collect()
}

/// `{K_q}` when `β = q`, otherwise the induced graphs `M[S]` over members
/// `M` and coverings `S` with `|S| < q`, kept isolated vertices included.
pub fn family_b_unreduced(family: &IsoClassSet, beta: usize, q: usize) -> Result<IsoClassSet> {
    if beta == q {
        return Ok([Graph::complete(q)?].into_iter().collect());
    }
    let mut out = IsoClassSet::new();
    for m in family.iter() {
        for s in coverings_strictly_below(m, q) {
            out.insert(&m.induced_subgraph(s)?);
        }
    }
    Ok(out)
}

/// The family `B`, reduced to its subgraph-minimal members.
///
/// `B` only ever appears as a forbidden family (in `EX(q-1, B)`), and a
/// graph avoiding the minimal members avoids all of them, so the reduction
/// does not change any construction.
pub fn family_b(family: &IsoClassSet, beta: usize, q: usize) -> Result<IsoClassSet> {
    Ok(family_b_unreduced(family, beta, q)?.subgraph_minimal())
}

/// All `U ⊆ V(F)` whose complement is independent in `F` and with
/// `q(F∇U) = q`, together with `μ = min_U max_{x∈U} d_F(x)`.
pub fn family_u_and_mu(f: &Graph, q: usize) -> Result<(Vec<VertexSet>, usize)> {
    let n = f.n();
    if n > 20 {
        return Err(Error::BudgetExceeded(format!("2^{n} subsets of V(F)")));
    }
    let mut family = Vec::new();
    let mut mu = usize::MAX;
    for mask in 0u64..1 << n {
        let u = VertexSet(mask);
        if !f.is_independent(f.vertices().difference(u)) {
            continue;
        }
        let split = vertex_split(f, u)?;
        if independent_covering_number(&split)? != q {
            continue;
        }
        let top = u.iter().map(|x| f.degree(x)).max().unwrap_or(0);
        mu = mu.min(top);
        family.push(u);
    }
    if family.is_empty() {
        return Err(Error::InternalInvariantViolation(format!(
            "no vertex subset U with independent complement and q(F∇U) = {q}"
        )));
    }
    Ok((family, mu))
}

/// `λ`: the smallest degree of a vertex lying in some independent covering
/// of size `q` of some member of `M*`.
pub fn param_lambda(m_star: &IsoClassSet, q: usize) -> Result<usize> {
    if m_star.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut best = None;
    for m in m_star.iter() {
        for l in independent_coverings_of_size(m, q)? {
            if let Some(d) = l.iter().map(|x| m.degree(x)).min() {
                best = Some(best.map_or(d, |b: usize| b.min(d)));
            }
        }
    }
    best.ok_or_else(|| {
        Error::InternalInvariantViolation(format!("no member of M* has an independent covering of size {q}"))
    })
}

/// Maximum number of edges in a graph with matching number at most `nu`
/// and maximum degree at most `delta`:
/// `νΔ + ⌊Δ/2⌋·⌊ν/⌈Δ/2⌉⌋`.
pub fn chvatal_hanson(nu: usize, delta: usize) -> usize {
    if nu == 0 || delta == 0 {
        return 0;
    }
    nu * delta + (delta / 2) * (nu / delta.div_ceil(2))
}

/// Largest even `λ` for which `D_{λ-1}` is enumerated.
pub const FAMILY_D_EVEN_MAX: usize = 6;

/// `D_{λ-1}`: the graphs attaining `f(λ-1, λ-1)`.
///
/// * `λ = 1`: the empty graph on zero vertices (nothing to embed).
/// * odd `λ`: `{2K_λ}`.
/// * even `λ`: every graph on `2λ-1` vertices with `λ²-3λ/2` edges and
///   maximum degree `λ-1`. The degree sequence is forced (one vertex of
///   degree `λ-2`, the rest `λ-1`), and all realizations of a degree
///   sequence are connected by 2-switches, so the family is the 2-switch
///   closure of one realization.
pub fn family_d(lambda: usize) -> Result<IsoClassSet> {
    if lambda == 0 {
        return Err(Error::InvalidParameters("lambda must be at least 1".into()));
    }
    if lambda == 1 {
        return Ok([Graph::empty(0)?].into_iter().collect());
    }
    if lambda % 2 == 1 {
        let k = Graph::complete(lambda)?;
        return Ok([k.disjoint_union(&k)?].into_iter().collect());
    }
    if lambda > FAMILY_D_EVEN_MAX {
        return Err(Error::BudgetExceeded(format!(
            "D family for even lambda enumerated up to {FAMILY_D_EVEN_MAX}, got {lambda}"
        )));
    }
    let n = 2 * lambda - 1;
    let mut degrees = vec![lambda - 1; n];
    degrees[n - 1] = lambda - 2;
    let start = havel_hakimi(&degrees)?;
    Ok(switch_closure(&start))
}

/// A realization of a graphical degree sequence.
pub(crate) fn havel_hakimi(degrees: &[usize]) -> Result<Graph> {
    let n = degrees.len();
    let mut g = Graph::empty(n)?;
    let mut rem: Vec<(usize, usize)> = degrees.iter().copied().enumerate().map(|(v, d)| (d, v)).collect();
    loop {
        rem.sort_by(|a, b| b.cmp(a));
        let (d, v) = rem[0];
        if d == 0 {
            return Ok(g);
        }
        if d >= rem.len() {
            return Err(Error::InvalidParameters("degree sequence is not graphical".into()));
        }
        rem[0].0 = 0;
        for item in rem.iter_mut().skip(1).take(d) {
            if item.0 == 0 {
                return Err(Error::InvalidParameters("degree sequence is not graphical".into()));
            }
            item.0 -= 1;
            g.add_edge(v, item.1)?;
        }
    }
}

/// All isomorphism classes reachable from `start` by 2-switches
/// (`ab, cd -> ac, bd` with `ac, bd` absent).
fn switch_closure(start: &Graph) -> IsoClassSet {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut out = IsoClassSet::new();
    let first = canonical_labeling(start);
    seen.insert(first.form());
    out.insert(&first.graph);
    let mut queue = VecDeque::from([first.graph]);
    while let Some(g) = queue.pop_front() {
        let edges = g.edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                for (x, y, z, w) in [(a, c, b, d), (a, d, b, c)] {
                    if x == y || z == w || g.has_edge(x, y) || g.has_edge(z, w) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.remove_edge(a, b);
                    h.remove_edge(c, d);
                    h.toggle_edge(x, y);
                    h.toggle_edge(z, w);
                    let lab = canonical_labeling(&h);
                    if seen.insert(lab.form()) {
                        out.insert(&lab.graph);
                        queue.push_back(lab.graph);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::matching_number;
    use crate::oracle::enumerate::enumerate_graphs_where;

    fn profile(f: Graph, p: usize) -> ParamProfile {
        compute_profile(&f, p).unwrap()
    }

    #[test]
    fn matching_profile() {
        let pr = profile(Graph::matching(2).unwrap(), 3);
        assert_eq!((pr.beta, pr.q, pr.mu, pr.lambda), (2, 2, 1, 1));
        assert!(pr.b_family.contains(&Graph::complete(2).unwrap()) && pr.b_family.len() == 1);
        assert_eq!(pr.family_source, FamilySource::Splits);
    }

    #[test]
    fn star_profile() {
        let pr = profile(Graph::star(4).unwrap(), 3);
        assert_eq!((pr.beta, pr.q, pr.mu, pr.lambda), (1, 1, 1, 3));
        assert_eq!(pr.m_star.len(), 1);
        assert!(pr.m_star.contains(&Graph::star(4).unwrap()));
        assert!(pr.b_family.contains(&Graph::complete(1).unwrap()));
    }

    #[test]
    fn beta_and_q_examples() {
        let fam = |g: Graph, p| decomposition_family(&BlowupSpec::new(g, p).unwrap()).unwrap();
        assert_eq!(param_beta(&fam(Graph::matching(2).unwrap(), 3)), Ok(2));
        assert_eq!(param_beta(&fam(Graph::star(5).unwrap(), 3)), Ok(1));
        let k4 = fam(Graph::complete(4).unwrap(), 5);
        assert_eq!(param_beta(&k4), Ok(3));
        assert_eq!(param_q(&k4), Ok(4));
        assert_eq!(param_q(&fam(Graph::path(6).unwrap(), 6)), Ok(3));
        assert_eq!(param_q(&fam(Graph::cycle(5).unwrap(), 6)), Ok(3));
        assert_eq!(param_beta(&IsoClassSet::new()), Err(Error::EmptyFamily));
    }

    #[test]
    fn k4_families() {
        let pr = profile(Graph::complete(4).unwrap(), 10);
        let k2k1 = Graph::complete(2).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(pr.b_family.len(), 1);
        assert!(pr.b_family.contains(&k2k1));
        // The literal family also holds K_3 (from K_4 itself).
        let raw = family_b_unreduced(&pr.m_family, pr.beta, pr.q).unwrap();
        assert!(raw.contains(&Graph::complete(3).unwrap()));
        // M* = {S_{3,3} ∪ K_2, S_4 ∪ 3K_2}.
        let s33 = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let a = s33.disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        let b = Graph::star(4).unwrap().disjoint_union(&Graph::matching(3).unwrap()).unwrap();
        assert_eq!(pr.m_star.len(), 2);
        assert!(pr.m_star.contains(&a) && pr.m_star.contains(&b));
        assert_eq!((pr.mu, pr.lambda), (3, 1));
    }

    #[test]
    fn u_family_rechecked_by_definition() {
        for f in [Graph::path(5).unwrap(), Graph::cycle(6).unwrap(), Graph::complete(4).unwrap()] {
            let q = param_q(&crate::blowup::split_family(&f).unwrap()).unwrap();
            let (us, _) = family_u_and_mu(&f, q).unwrap();
            for u in us {
                assert!(!u.is_empty());
                assert!(f.is_independent(f.vertices().difference(u)));
                assert_eq!(independent_covering_number(&vertex_split(&f, u).unwrap()), Ok(q));
            }
        }
        let (_, mu) = family_u_and_mu(&Graph::path(5).unwrap(), 2).unwrap();
        assert_eq!(mu, 2);
    }

    #[test]
    fn lambda_examples() {
        let c4 = profile(Graph::cycle(4).unwrap(), 6);
        assert_eq!(c4.lambda, 2);
        assert_eq!(param_lambda(&IsoClassSet::new(), 1), Err(Error::EmptyFamily));
    }

    #[test]
    fn oracle_fallback_for_small_p() {
        let pr = profile(Graph::star(3).unwrap(), 2);
        assert_eq!(pr.family_source, FamilySource::Oracle);
        assert_eq!((pr.q, pr.lambda, pr.mu), (1, 2, 1));
        assert_eq!(pr.m_family.len(), 2);
    }

    /// `max e(G)` over graphs on `n` vertices with `ν(G) <= nu`, `Δ(G) <= delta`.
    fn f_brute(nu: usize, delta: usize, n: usize) -> usize {
        enumerate_graphs_where(n, |g| g.max_degree() <= delta && matching_number(g) <= nu)
            .unwrap()
            .iter()
            .map(Graph::edge_count)
            .max()
            .unwrap()
    }

    #[test]
    fn chvatal_hanson_small_cases() {
        assert_eq!(chvatal_hanson(1, 1), 1);
        assert_eq!(f_brute(1, 1, 3), 1);
        assert_eq!(chvatal_hanson(2, 2), 6);
        assert_eq!(f_brute(2, 2, 8), 6);
        assert_eq!(chvatal_hanson(0, 5), 0);
        for nu in 1..=20 {
            for delta in 1..=20 {
                assert!(chvatal_hanson(nu, delta) <= nu * delta + nu);
            }
        }
    }

    #[test]
    fn d_family() {
        let d3 = family_d(3).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(d3.len(), 1);
        assert!(d3.contains(&k3.disjoint_union(&k3).unwrap()));
        let d2 = family_d(2).unwrap();
        assert_eq!(d2.len(), 1);
        assert!(d2.contains(&Graph::complete(2).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap()));
        let d1 = family_d(1).unwrap();
        assert!(d1.contains(&Graph::empty(0).unwrap()));
        assert!(matches!(family_d(8), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn d_family_even_matches_enumeration() {
        // λ = 4: graphs on 7 vertices, 10 edges, Δ = 3, found two ways.
        let by_switch = family_d(4).unwrap();
        let by_enum: IsoClassSet = enumerate_graphs_where(7, |g| g.max_degree() <= 3)
            .unwrap()
            .into_iter()
            .filter(|g| g.edge_count() == 10)
            .collect();
        assert_eq!(by_switch, by_enum);
        for g in by_switch.iter() {
            assert_eq!(g.edge_count(), chvatal_hanson(3, 3));
            assert!(matching_number(g) <= 3);
        }
    }

    #[test]
    fn d_family_lambda_six() {
        let d5 = family_d(6).unwrap();
        assert!(!d5.is_empty());
        for g in d5.iter() {
            assert_eq!((g.n(), g.edge_count(), g.max_degree()), (11, 27, 5));
            assert_eq!(g.edge_count(), chvatal_hanson(5, 5));
        }
    }

    #[test]
    fn havel_hakimi_rejects_non_graphical() {
        assert!(havel_hakimi(&[3, 1, 1]).is_err());
        assert_eq!(havel_hakimi(&[2, 2, 2]).unwrap().edge_count(), 3);
    }
}
