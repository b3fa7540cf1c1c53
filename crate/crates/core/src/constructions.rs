//! Turán graphs, `H(n,p,q)`, the family `H(n,p,q,λ-1,B)`, and small
//! `EX(m, B)` by exhaustive search.
//!
//! Large members are kept as [`BlockModel`]s: vertex blocks with complete or
//! empty relations between and inside them. Every member is built as a block
//! model first and expanded to an explicit [`Graph`] when it fits.

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::family::IsoClassSet;
use crate::graph::{Graph, MAX_VERTICES};
use crate::oracle::enumerate::enumerate_graphs_where;
use crate::params::{chvatal_hanson, family_d};
use crate::subgraph::contains_subgraph;

/// Largest order accepted by [`ex_small`].
pub const EX_SMALL_MAX_VERTICES: usize = 9;

/// Vertex blocks with a complete/empty relation between every pair of
/// blocks (and inside each block). Blocks carry a group label; blocks of one
/// group form one part of the underlying multipartite skeleton, so any edge
/// between two blocks of the same group is an exceptional edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BlockModelJson", try_from = "BlockModelJson")]
pub struct BlockModel {
    sizes: Vec<usize>,
    groups: Vec<usize>,
    density: Vec<Vec<bool>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct BlockModelJson {
    blocks: Vec<usize>,
    groups: Vec<usize>,
    density: Vec<Vec<u8>>,
    #[serde(default)]
    exceptional_edges: Vec<(usize, usize)>,
}

impl From<BlockModel> for BlockModelJson {
    fn from(m: BlockModel) -> Self {
        let exceptional_edges = m.exceptional_edges();
        BlockModelJson {
            density: m.density.iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect(),
            blocks: m.sizes,
            groups: m.groups,
            exceptional_edges,
        }
    }
}

impl TryFrom<BlockModelJson> for BlockModel {
    type Error = Error;

    fn try_from(j: BlockModelJson) -> Result<Self> {
        let density = j.density.into_iter().map(|r| r.into_iter().map(|b| b != 0).collect()).collect();
        BlockModel::new(j.blocks, j.groups, density)
    }
}

impl BlockModel {
    /// `density[i][i]` makes block `i` a clique; off-diagonal entries must
    /// be symmetric.
    pub fn new(sizes: Vec<usize>, groups: Vec<usize>, density: Vec<Vec<bool>>) -> Result<Self> {
        let k = sizes.len();
        if groups.len() != k || density.len() != k || density.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidParameters("block model dimensions disagree".into()));
        }
        for (i, row) in density.iter().enumerate() {
            for (j, &d) in row.iter().enumerate().take(i) {
                if d != density[j][i] {
                    return Err(Error::InvalidParameters(format!("density not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(BlockModel { sizes, groups, density })
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    pub fn is_complete(&self, i: usize, j: usize) -> bool {
        self.density[i][j]
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn edge_count(&self) -> usize {
        let k = self.sizes.len();
        let mut e = 0;
        for i in 0..k {
            if self.density[i][i] {
                e += self.sizes[i] * self.sizes[i].saturating_sub(1) / 2;
            }
            for j in i + 1..k {
                if self.density[i][j] {
                    e += self.sizes[i] * self.sizes[j];
                }
            }
        }
        e
    }

    /// Complete block pairs inside one group.
    pub fn exceptional_edges(&self) -> Vec<(usize, usize)> {
        let k = self.sizes.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.density[i][j] && self.groups[i] == self.groups[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// First vertex of each block in the explicit labeling.
    pub fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let n = self.n();
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded(n));
        }
        let offsets = self.offsets();
        let mut g = Graph::empty(n)?;
        let k = self.sizes.len();
        for i in 0..k {
            for j in i..k {
                if !self.density[i][j] {
                    continue;
                }
                for a in offsets[i]..offsets[i] + self.sizes[i] {
                    for b in offsets[j]..offsets[j] + self.sizes[j] {
                        if a < b {
                            g.add_edge(a, b)?;
                        }
                    }
                }
            }
        }
        Ok(g)
    }
}

/// A graph in explicit form when it fits in 64 vertices, otherwise as a
/// block model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    Explicit(#[serde(with = "crate::blowup::graph6_serde")] Graph),
    Block(BlockModel),
}

impl Realization {
    fn from_model(model: BlockModel) -> Result<Self> {
        if model.n() <= MAX_VERTICES {
            Ok(Realization::Explicit(model.to_graph()?))
        } else {
            Ok(Realization::Block(model))
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Realization::Explicit(g) => g.n(),
            Realization::Block(m) => m.n(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Realization::Explicit(g) => g.edge_count(),
            Realization::Block(m) => m.edge_count(),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Realization::Explicit(g) => Some(g),
            Realization::Block(_) => None,
        }
    }
}

/// Part sizes of `T_p(n)`, larger parts first.
pub fn turan_part_sizes(n: usize, p: usize) -> Vec<usize> {
    (0..p).map(|i| n / p + usize::from(i < n % p)).collect()
}

/// `e(T_p(n)) = Σ_{i<j} n_i n_j`.
pub fn turan_edge_count(n: usize, p: usize) -> usize {
    let parts = turan_part_sizes(n, p);
    let sq: usize = parts.iter().map(|s| s * s).sum();
    (n * n - sq) / 2
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameters("p must be at least 1".into()));
    }
    Ok(())
}

/// `T_p(n)`.
pub fn turan(n: usize, p: usize) -> Result<Realization> {
    check_p(p)?;
    Realization::from_model(skeleton(0, &turan_part_sizes(n, p), &Graph::empty(0)?, None)?)
}

/// `H(n,p,q) = E_{q-1} + T_p(n-q+1)`.
pub fn h_base(n: usize, p: usize, q: usize) -> Result<Realization> {
    check_p(p)?;
    let parts = base_parts(n, p, q)?;
    Realization::from_model(skeleton(q - 1, &parts, &Graph::empty(q - 1)?, None)?)
}

fn base_parts(n: usize, p: usize, q: usize) -> Result<Vec<usize>> {
    if q == 0 || n + 1 < q + p {
        return Err(Error::InvalidParameters(format!(
            "H(n,p,q) needs q >= 1 and n >= q-1+p, got n = {n}, p = {p}, q = {q}"
        )));
    }
    Ok(turan_part_sizes(n - q + 1, p))
}

/// Block model of `Q + T` where the universal part carries `q_graph` on
/// `universal` singleton blocks and, when given, `(class, d_graph)` places
/// `d_graph` on singleton blocks inside that Turán class.
fn skeleton(
    universal: usize,
    parts: &[usize],
    q_graph: &Graph,
    embedded: Option<(usize, &Graph)>,
) -> Result<BlockModel> {
    debug_assert_eq!(q_graph.n(), universal);
    let mut sizes = Vec::new();
    let mut groups = Vec::new();
    // Local vertex index inside a small graph, per block.
    let mut local: Vec<Option<usize>> = Vec::new();
    for v in 0..universal {
        sizes.push(1);
        groups.push(0);
        local.push(Some(v));
    }
    for (c, &size) in parts.iter().enumerate() {
        let group = c + 1;
        match embedded {
            Some((class, d)) if class == c && d.n() > 0 => {
                if d.n() > size {
                    return Err(Error::InvalidParameters(format!(
                        "class of size {size} cannot hold {} vertices",
                        d.n()
                    )));
                }
                for v in 0..d.n() {
                    sizes.push(1);
                    groups.push(group);
                    local.push(Some(v));
                }
                if size > d.n() {
                    sizes.push(size - d.n());
                    groups.push(group);
                    local.push(None);
                }
            }
            _ => {
                if size > 0 {
                    sizes.push(size);
                    groups.push(group);
                    local.push(None);
                }
            }
        }
    }
    let k = sizes.len();
    let mut density = vec![vec![false; k]; k];
    let d_graph = embedded.map(|(_, d)| d);
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            density[i][j] = if groups[i] != groups[j] {
                true
            } else {
                match (local[i], local[j]) {
                    (Some(a), Some(b)) if groups[i] == 0 => q_graph.has_edge(a, b),
                    (Some(a), Some(b)) => d_graph.is_some_and(|d| d.has_edge(a, b)),
                    _ => false,
                }
            };
        }
    }
    BlockModel::new(sizes, groups, density)
}

/// `ex(m, B)` and all extremal classes, by exhaustive search over graphs on
/// `m` vertices avoiding every member of `forbidden`.
pub fn ex_small(m: usize, forbidden: &IsoClassSet) -> Result<(usize, IsoClassSet)> {
    if m > EX_SMALL_MAX_VERTICES {
        return Err(Error::BudgetExceeded(format!("ex_small limited to {EX_SMALL_MAX_VERTICES} vertices, got {m}")));
    }
    let free = enumerate_graphs_where(m, |g| forbidden.iter().all(|b| !contains_subgraph(g, b)))?;
    let best = free.iter().map(Graph::edge_count).max().ok_or(Error::EmptyFamily)?;
    let classes = free.iter().filter(|g| g.edge_count() == best).collect();
    Ok((best, classes))
}

/// One member of `H(n,p,q,λ-1,B)` with the choices that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HMember {
    pub graph: Realization,
    #[serde(with = "crate::blowup::graph6_serde")]
    pub q_choice: Graph,
    #[serde(with = "crate::blowup::graph6_serde")]
    pub d_choice: Graph,
    pub host_class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionFamily {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub lambda: usize,
    #[serde(rename = "B")]
    pub b_family: IsoClassSet,
    pub q_choices: IsoClassSet,
    pub d_choices: IsoClassSet,
    /// Part sizes of `T_p(n-q+1)`.
    pub class_sizes: Vec<usize>,
    pub members: Vec<HMember>,
}

/// `H(n,p,q,λ-1,B)`: one member per choice of `Q ∈ EX(q-1, B)`,
/// `D ∈ D_{λ-1}` and distinct size of the class receiving `D`, largest
/// class first. Explicit members are deduplicated by isomorphism.
pub fn build_h_family(n: usize, p: usize, q: usize, lambda: usize, b: &IsoClassSet) -> Result<ConstructionFamily> {
    check_p(p)?;
    let parts = base_parts(n, p, q)?;
    let (_, q_choices) = ex_small(q - 1, b)?;
    let d_choices = family_d(lambda)?;
    let mut sizes: Vec<(usize, usize)> = Vec::new();
    for (c, &s) in parts.iter().enumerate() {
        if !sizes.iter().any(|&(_, t)| t == s) {
            sizes.push((c, s));
        }
    }
    let mut members = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for qg in q_choices.iter() {
        for d in d_choices.iter() {
            let usable: Vec<_> = sizes.iter().filter(|&&(_, s)| s >= d.n()).collect();
            if usable.is_empty() {
                return Err(Error::InvalidParameters(format!(
                    "no class of T_{p}({}) holds {} vertices",
                    n - q + 1,
                    d.n()
                )));
            }
            // An edgeless D changes nothing, so the class choice is moot.
            let take = if d.edge_count() == 0 { 1 } else { usable.len() };
            for &&(class, size) in usable.iter().take(take) {
                let graph = Realization::from_model(skeleton(q - 1, &parts, qg, Some((class, d)))?)?;
                if let Realization::Explicit(g) = &graph {
                    if !seen.insert(canonical_form(g)) {
                        continue;
                    }
                }
                members.push(HMember { graph, q_choice: qg.clone(), d_choice: d.clone(), host_class_size: size });
            }
        }
    }
    Ok(ConstructionFamily { n, p, q, lambda, b_family: b.clone(), q_choices, d_choices, class_sizes: parts, members })
}

/// `e(H(n,p,q,λ-1,B)) = (q-1)(n-q+1) + ex(q-1,B) + e(T_p(n-q+1)) + f(λ-1,λ-1)`.
pub fn h_edge_count(n: usize, p: usize, q: usize, lambda: usize, b: &IsoClassSet) -> Result<usize> {
    check_p(p)?;
    base_parts(n, p, q)?;
    if lambda == 0 {
        return Err(Error::InvalidParameters("lambda must be at least 1".into()));
    }
    let (ex_q, _) = ex_small(q - 1, b)?;
    let m = n - q + 1;
    Ok((q - 1) * m + ex_q + turan_edge_count(m, p) + chvatal_hanson(lambda - 1, lambda - 1))
}
