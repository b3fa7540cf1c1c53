//! Closed-form parameter values for matchings, stars, paths, cycles and
//! cliques, used as a reference table by tests and the `report` command.

use serde::Serialize;

use crate::error::Result;
use crate::family::IsoClassSet;
use crate::graph::Graph;
use crate::invariants::chromatic_number;
use crate::params::{compute_profile, ParamProfile};

/// Expected parameters for one forbidden graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub q: usize,
    pub beta: usize,
    pub mu: usize,
    pub lambda: usize,
    #[serde(rename = "B")]
    pub b_family: IsoClassSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenCase {
    /// Named token, e.g. `path:5`.
    pub name: String,
    #[serde(with = "crate::blowup::graph6_serde")]
    pub f: Graph,
    pub chi: usize,
    /// `max(4μ - 2, χ + 1)` from the closed forms.
    pub p: usize,
    pub expected: ClosedForm,
}

/// One row of the golden report: expected next to computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenRow {
    pub case: GoldenCase,
    pub computed: ClosedForm,
    pub matches: bool,
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn single(g: Graph) -> IsoClassSet {
    [g].into_iter().collect()
}

/// Smallest `p` covered by the main theorem for the given `μ`, `χ(F)`.
pub fn theorem_p(mu: usize, chi: usize) -> usize {
    (4 * mu).saturating_sub(2).max(chi + 1)
}

fn case(name: String, f: Graph, expected: ClosedForm) -> Result<GoldenCase> {
    let chi = chromatic_number(&f)?;
    let p = theorem_p(expected.mu, chi);
    Ok(GoldenCase { name, f, chi, p, expected })
}

fn uniform(q: usize, lambda: usize, mu: usize) -> Result<ClosedForm> {
    Ok(ClosedForm { q, beta: q, mu, lambda, b_family: single(Graph::complete(q)?) })
}

/// The reference instances: `M_4, M_6`; `S_3, S_4, S_5`; `P_4..P_7`;
/// `C_4..C_7`; `K_3, K_4`. `P_3` is covered as `S_3`.
pub fn golden_cases() -> Result<Vec<GoldenCase>> {
    let mut out = Vec::new();
    for t in [2, 3] {
        out.push(case(format!("matching:{t}"), Graph::matching(t)?, uniform(t, 1, 1)?)?);
    }
    for t in [2, 3, 4] {
        out.push(case(format!("star:{}", t + 1), Graph::star(t + 1)?, uniform(1, t, 1)?)?);
    }
    for t in 4..=7 {
        let lambda = if t % 2 == 1 { 2 } else { 1 };
        out.push(case(format!("path:{t}"), Graph::path(t)?, uniform(t / 2, lambda, 2)?)?);
    }
    for t in 4..=7 {
        let lambda = if t % 2 == 0 { 2 } else { 1 };
        out.push(case(format!("cycle:{t}"), Graph::cycle(t)?, uniform(t.div_ceil(2), lambda, 2)?)?);
    }
    for t in [3, 4] {
        let isolated = Graph::empty(binom2(t - 2))?;
        let expected = ClosedForm {
            q: binom2(t - 1) + 1,
            beta: 2 + binom2(t - 2),
            mu: t - 1,
            lambda: 1,
            b_family: single(Graph::complete(2)?.disjoint_union(&isolated)?),
        };
        out.push(case(format!("clique:{t}"), Graph::complete(t)?, expected)?);
    }
    Ok(out)
}

pub fn closed_form_of(profile: &ParamProfile) -> ClosedForm {
    ClosedForm {
        q: profile.q,
        beta: profile.beta,
        mu: profile.mu,
        lambda: profile.lambda,
        b_family: profile.b_family.clone(),
    }
}

/// Computes the profile of every golden case at its `p`.
pub fn golden_rows() -> Result<Vec<GoldenRow>> {
    golden_cases()?
        .into_iter()
        .map(|case| {
            let computed = closed_form_of(&compute_profile(&case.f, case.p)?);
            let matches = computed == case.expected;
            Ok(GoldenRow { case, computed, matches })
        })
        .collect()
}
