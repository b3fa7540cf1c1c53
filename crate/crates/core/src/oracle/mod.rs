//! Exhaustive and heuristic search for `F^{p+1}`-free graphs.

pub mod enumerate;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blowup::{edge_blowup, BlowupSpec};
use crate::constructions::{build_h_family, h_base, Realization};
use crate::error::{Error, Result};
use crate::family::IsoClassSet;
use crate::graph::Graph;
use crate::params::ParamProfile;
use crate::report::SearchReport;
use crate::spectral::{compare_results, spectral_radius, SpectralOrder, SpectralResult};
use crate::subgraph::contains_subgraph;

use enumerate::enumerate_graphs_where;

/// Default order limit for [`spex_bruteforce`].
pub const SPEX_DEFAULT_MAX_VERTICES: usize = 9;
/// Default iteration count for [`hillclimb_spex`].
pub const HILLCLIMB_DEFAULT_ITERS: usize = 2000;

/// A fixed blow-up pattern, built once and reused across many hosts.
#[derive(Clone, Debug)]
pub struct BlowupPattern {
    order: usize,
    pattern: Option<Graph>,
}

impl BlowupPattern {
    pub fn new(spec: &BlowupSpec) -> Result<Self> {
        let order = spec.blowup_order();
        let pattern = match edge_blowup(spec) {
            Ok(g) => Some(g),
            Err(Error::CapacityExceeded(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(BlowupPattern { order, pattern })
    }

    /// No copy of `F^{p+1}` in `g`.
    pub fn is_free(&self, g: &Graph) -> bool {
        match &self.pattern {
            Some(pat) if g.n() >= self.order => !contains_subgraph(g, pat),
            _ => true,
        }
    }
}

/// `G` contains no copy of `F^{p+1}`.
pub fn is_blowup_free(g: &Graph, spec: &BlowupSpec) -> Result<bool> {
    Ok(BlowupPattern::new(spec)?.is_free(g))
}

/// All `F^{p+1}`-free classes on `n` vertices.
pub fn free_graphs(n: usize, spec: &BlowupSpec) -> Result<Vec<Graph>> {
    let pattern = BlowupPattern::new(spec)?;
    enumerate_graphs_where(n, |g| pattern.is_free(g))
}

/// `ex(n, F^{p+1})` and `EX(n, F^{p+1})`.
pub fn ex_bruteforce(n: usize, spec: &BlowupSpec) -> Result<(usize, IsoClassSet)> {
    Ok(ex_from(&free_graphs(n, spec)?))
}

fn ex_from(free: &[Graph]) -> (usize, IsoClassSet) {
    let best = free.iter().map(Graph::edge_count).max().unwrap_or(0);
    (best, free.iter().filter(|g| g.edge_count() == best).collect())
}

/// Maximum spectral radius over a set of graphs, with every class whose
/// certified interval reaches the maximum's interval.
#[derive(Clone, Debug, PartialEq)]
pub struct SpexOutcome {
    pub value: SpectralResult<f64>,
    pub classes: IsoClassSet,
}

fn spex_from(free: &[Graph], tol: f64) -> Result<SpexOutcome> {
    let radii: Vec<SpectralResult<f64>> = free.par_iter().map(|g| spectral_radius(g, tol)).collect::<Result<_>>()?;
    let best = radii.iter().max_by(|a, b| a.rho_hat.total_cmp(&b.rho_hat)).cloned().ok_or(Error::EmptyFamily)?;
    let classes = free
        .iter()
        .zip(&radii)
        .filter(|(_, r)| compare_results(r, &best) != SpectralOrder::Less)
        .map(|(g, _)| g)
        .collect();
    Ok(SpexOutcome { value: best, classes })
}

/// `spex(n, F^{p+1})` and `SPEX(n, F^{p+1})` for `n <= 9`.
pub fn spex_bruteforce(n: usize, spec: &BlowupSpec, tol: f64) -> Result<SpexOutcome> {
    spex_bruteforce_capped(n, spec, tol, SPEX_DEFAULT_MAX_VERTICES)
}

/// As [`spex_bruteforce`] with an explicit order limit (at most 10).
pub fn spex_bruteforce_capped(n: usize, spec: &BlowupSpec, tol: f64, max_n: usize) -> Result<SpexOutcome> {
    if n > max_n {
        return Err(Error::BudgetExceeded(format!("spex search limited to {max_n} vertices, got {n}")));
    }
    spex_from(&free_graphs(n, spec)?, tol)
}

/// Seeded hill climbing over `F^{p+1}`-free graphs on `n` vertices. A
/// random vertex pair is toggled; the toggle is kept iff the graph stays
/// free and the certified radius strictly increases. Starts from `start`
/// when given, otherwise from the empty graph.
pub fn hillclimb_spex(
    n: usize,
    spec: &BlowupSpec,
    iters: usize,
    seed: u64,
    start: Option<&Graph>,
    tol: f64,
) -> Result<(Graph, SpectralResult<f64>)> {
    if n < 2 {
        let g = Graph::empty(n)?;
        let r = spectral_radius(&g, tol)?;
        return Ok((g, r));
    }
    let pattern = BlowupPattern::new(spec)?;
    let mut current = match start {
        Some(g) if g.n() == n => g.clone(),
        Some(g) => {
            return Err(Error::InvalidParameters(format!("start graph has {} vertices, expected {n}", g.n())));
        }
        None => Graph::empty(n)?,
    };
    if !pattern.is_free(&current) {
        return Err(Error::InvalidParameters("start graph contains the blow-up".into()));
    }
    let mut best = spectral_radius(&current, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..iters {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let mut next = current.clone();
        next.toggle_edge(u, v);
        if !pattern.is_free(&next) {
            continue;
        }
        let r = spectral_radius(&next, tol)?;
        if compare_results(&r, &best) == SpectralOrder::Greater {
            current = next;
            best = r;
        }
    }
    Ok((current, best))
}

fn best_radius<'a, I>(members: I, tol: f64) -> Result<Option<SpectralResult<f64>>>
where
    I: IntoIterator<Item = &'a Realization>,
{
    let mut best: Option<SpectralResult<f64>> = None;
    for m in members {
        let r = spectral_radius(m, tol)?;
        if best.as_ref().is_none_or(|b| r.rho_hat > b.rho_hat) {
            best = Some(r);
        }
    }
    Ok(best)
}

/// Runs the exhaustive oracle at order `n` and checks the constructions
/// of `profile` against it.
///
/// Asserted: the lower constructions `H(n,p,q)` and `H(n,p,q,0,B)` are
/// free, and their radius does not exceed `spex`. Reported: whether
/// `SPEX ⊆ EX`, and whether `spex` lies strictly below the radius of the
/// upper family `H(n,p,q,λ-1,B)`. Construction fields stay empty when
/// `n` is too small for `H(n,p,q)` to exist.
pub fn verify_instance(n: usize, spec: &BlowupSpec, profile: &ParamProfile, tol: f64) -> Result<SearchReport> {
    verify_instance_capped(n, spec, profile, tol, SPEX_DEFAULT_MAX_VERTICES)
}

pub fn verify_instance_capped(
    n: usize,
    spec: &BlowupSpec,
    profile: &ParamProfile,
    tol: f64,
    max_n: usize,
) -> Result<SearchReport> {
    if n > max_n {
        return Err(Error::BudgetExceeded(format!("verification limited to {max_n} vertices, got {n}")));
    }
    let started = Instant::now();
    let pattern = BlowupPattern::new(spec)?;
    let free = enumerate_graphs_where(n, |g| pattern.is_free(g))?;
    let (ex_value, ex_classes) = ex_from(&free);
    let spex = spex_from(&free, tol)?;
    let spex_subset_ex = spex.classes.iter().all(|g| ex_classes.contains(g));

    let (q, p) = (profile.q, spec.p);
    let mut report = SearchReport {
        n,
        p,
        f: spec.f.clone(),
        q,
        lambda: profile.lambda,
        ex_value: Some(ex_value),
        ex_classes,
        spex_value: Some(spex.value.rho_hat),
        spex_residual: Some(spex.value.residual_bound),
        spex_classes: spex.classes,
        spex_subset_ex: Some(spex_subset_ex),
        rho_h_lower: None,
        rho_h_upper: None,
        spex_below_upper: None,
        construction_free_ok: None,
        sandwich_lower_ok: None,
        enumerated_count: free.len(),
        runtime_seconds: None,
    };
    if h_base(n, p, q).is_ok() {
        let lower = build_h_family(n, p, q, 1, &profile.b_family)?;
        let base = h_base(n, p, q)?;
        let mut lower_graphs: Vec<&Realization> = lower.members.iter().map(|m| &m.graph).collect();
        lower_graphs.push(&base);
        let free_ok = lower_graphs.iter().all(|m| m.as_graph().is_some_and(|g| pattern.is_free(g)));
        let lower_best = best_radius(lower_graphs.iter().copied(), tol)?.ok_or(Error::EmptyFamily)?;
        report.construction_free_ok = Some(free_ok);
        report.sandwich_lower_ok = Some(compare_results(&lower_best, &spex.value) != SpectralOrder::Greater);
        report.rho_h_lower = Some(lower_best.rho_hat);
        match build_h_family(n, p, q, profile.lambda, &profile.b_family) {
            Ok(upper) => {
                if let Some(r) = best_radius(upper.members.iter().map(|m| &m.graph), tol)? {
                    report.spex_below_upper = Some(compare_results(&spex.value, &r) == SpectralOrder::Less);
                    report.rho_h_upper = Some(r.rho_hat);
                }
            }
            Err(Error::InvalidParameters(_)) => {}
            Err(e) => return Err(e),
        }
    }
    report.runtime_seconds = Some(started.elapsed().as_secs_f64());
    Ok(report)
}
