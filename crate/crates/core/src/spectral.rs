//! Spectral radius with a certified error bound.
//!
//! Power iteration runs on `A + I` from the all-ones vector, one connected
//! component at a time. For a unit vector `x` and its Rayleigh quotient `ρ̂`,
//! the residual `‖Ax - ρ̂x‖₂` bounds the distance from `ρ̂` to the spectrum of
//! the symmetric matrix `A`; iteration stops once it drops below the
//! tolerance. Block models are evaluated on a symmetrized quotient matrix
//! whose eigenvectors lift to the full graph with the same norm and
//! residual.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::constructions::{BlockModel, Realization};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

/// Default iteration cap per component.
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;
/// Smallest tolerance accepted.
pub const MIN_TOLERANCE: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult<T> {
    pub rho_hat: T,
    /// `‖Ax - ρ̂x‖₂` for the returned unit vector `x`.
    pub residual_bound: T,
    /// Total iterations over all components.
    pub iterations: usize,
    /// Unit vector, nonnegative, supported on the component attaining `ρ̂`.
    pub perron: Vec<T>,
}

/// JSON view of a [`SpectralResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub rho: f64,
    pub residual: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub perron: Option<Vec<f64>>,
}

impl<T: Float> SpectralResult<T> {
    pub fn lower(&self) -> T {
        self.rho_hat - self.residual_bound
    }

    pub fn upper(&self) -> T {
        self.rho_hat + self.residual_bound
    }

    /// The Perron vector is included only when `verbose`.
    pub fn summary(&self, verbose: bool) -> SpectralSummary {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        SpectralSummary {
            rho: f(self.rho_hat),
            residual: f(self.residual_bound),
            iterations: self.iterations,
            perron: verbose.then(|| self.perron.iter().map(|&x| f(x)).collect()),
        }
    }
}

/// Outcome of comparing two certified intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralOrder {
    Less,
    Greater,
    Indistinguishable,
}

/// Strict order only when the intervals `[ρ̂ ± bound]` are disjoint.
pub fn compare_results<T: Float>(a: &SpectralResult<T>, b: &SpectralResult<T>) -> SpectralOrder {
    if a.upper() < b.lower() {
        SpectralOrder::Less
    } else if a.lower() > b.upper() {
        SpectralOrder::Greater
    } else {
        SpectralOrder::Indistinguishable
    }
}

/// Anything with an adjacency spectrum.
pub trait SpectralSource {
    fn spectral_radius_capped<T: Float>(&self, tol: T, cap: usize) -> Result<SpectralResult<T>>;
}

pub fn spectral_radius<T: Float, S: SpectralSource + ?Sized>(g: &S, tol: T) -> Result<SpectralResult<T>> {
    g.spectral_radius_capped(tol, DEFAULT_ITERATION_CAP)
}

pub fn compare_spectral<T, A, B>(g: &A, h: &B, tol: T) -> Result<SpectralOrder>
where
    T: Float,
    A: SpectralSource + ?Sized,
    B: SpectralSource + ?Sized,
{
    Ok(compare_results(&spectral_radius(g, tol)?, &spectral_radius(h, tol)?))
}

fn check_tol<T: Float>(tol: T) -> Result<()> {
    let floor = T::from(MIN_TOLERANCE).unwrap().max(T::epsilon() * T::from(64).unwrap());
    if tol.is_nan() || tol < floor {
        return Err(Error::InvalidParameters(format!(
            "tolerance {} below {}",
            tol.to_f64().unwrap_or(f64::NAN),
            floor.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

/// Dominant eigenpair of a nonnegative symmetric operator on one connected
/// component. Returns `(ρ̂, residual, iterations, unit vector)`.
fn power_iterate<T, F>(dim: usize, apply: F, tol: T, cap: usize) -> Result<(T, T, usize, Vec<T>)>
where
    T: Float,
    F: Fn(&[T], &mut [T]),
{
    let mut x = vec![T::one() / T::from(dim).unwrap().sqrt(); dim];
    let mut ax = vec![T::zero(); dim];
    let mut residual = T::infinity();
    for it in 1..=cap {
        apply(&x, &mut ax);
        let rho = dot(&x, &ax);
        residual = ax.iter().zip(&x).map(|(&a, &b)| (a - rho * b) * (a - rho * b)).fold(T::zero(), |s, v| s + v).sqrt();
        if residual <= tol {
            return Ok((rho, residual, it, x));
        }
        for (xi, &ai) in x.iter_mut().zip(&ax) {
            *xi = *xi + ai;
        }
        let norm = dot(&x, &x).sqrt();
        for xi in &mut x {
            *xi = *xi / norm;
        }
    }
    Err(Error::ConvergenceFailure { iterations: cap, residual: residual.to_f64().unwrap_or(f64::NAN) })
}

fn dot<T: Float>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

impl SpectralSource for Graph {
    fn spectral_radius_capped<T: Float>(&self, tol: T, cap: usize) -> Result<SpectralResult<T>> {
        check_tol(tol)?;
        let n = self.n();
        let mut best: Option<SpectralResult<T>> = None;
        let mut iterations = 0;
        for comp in self.components() {
            let verts: Vec<usize> = comp.iter().collect();
            let (rho, res, its, local) = if verts.len() == 1 {
                (T::zero(), T::zero(), 0, vec![T::one()])
            } else {
                let mut index = [usize::MAX; 64];
                for (i, &v) in verts.iter().enumerate() {
                    index[v] = i;
                }
                let rows: Vec<Vec<usize>> =
                    verts.iter().map(|&v| Bits(self.neighbors(v).0).map(|u| index[u]).collect()).collect();
                let apply = |x: &[T], y: &mut [T]| {
                    for (yi, row) in y.iter_mut().zip(&rows) {
                        *yi = row.iter().fold(T::zero(), |s, &j| s + x[j]);
                    }
                };
                power_iterate(verts.len(), apply, tol, cap)?
            };
            iterations += its;
            if best.as_ref().is_none_or(|b| rho > b.rho_hat) {
                let mut perron = vec![T::zero(); n];
                for (&v, &xv) in verts.iter().zip(&local) {
                    perron[v] = xv;
                }
                best = Some(SpectralResult { rho_hat: rho, residual_bound: res, iterations: 0, perron });
            }
        }
        let mut out = best.unwrap_or(SpectralResult {
            rho_hat: T::zero(),
            residual_bound: T::zero(),
            iterations: 0,
            perron: Vec::new(),
        });
        out.iterations = iterations;
        Ok(out)
    }
}

/// Symmetrized quotient `S_{XY} = sqrt(|X||Y|)·[X~Y]` (off-diagonal) and
/// `S_{XX} = (|X|-1)·[X clique]` of a block model. `S` is similar to the
/// divisor matrix of the block partition.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMatrix<T> {
    pub sizes: Vec<usize>,
    pub entries: Vec<Vec<T>>,
}

impl<T: Float> QuotientMatrix<T> {
    pub fn from_block_model(m: &BlockModel) -> Self {
        let sizes: Vec<usize> = m.sizes().to_vec();
        let k = sizes.len();
        let mut entries = vec![vec![T::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                if !m.is_complete(i, j) {
                    continue;
                }
                entries[i][j] = if i == j {
                    T::from(sizes[i].saturating_sub(1)).unwrap()
                } else {
                    T::from(sizes[i] * sizes[j]).unwrap().sqrt()
                };
            }
        }
        QuotientMatrix { sizes, entries }
    }

    /// Blocks linked by a nonzero entry, ignoring empty blocks.
    fn components(&self) -> Vec<Vec<usize>> {
        let k = self.sizes.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for s in 0..k {
            if seen[s] || self.sizes[s] == 0 {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let a = comp[i];
                for (b, seen_b) in seen.iter_mut().enumerate() {
                    if !*seen_b && self.sizes[b] > 0 && self.entries[a][b] > T::zero() {
                        *seen_b = true;
                        comp.push(b);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }
}

impl SpectralSource for QuotientMatrix<f64> {
    fn spectral_radius_capped<T: Float>(&self, tol: T, cap: usize) -> Result<SpectralResult<T>> {
        let cast = QuotientMatrix::<T> {
            sizes: self.sizes.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|&v| T::from(v).unwrap()).collect()).collect(),
        };
        quotient_radius(&cast, tol, cap)
    }
}

/// Radius on the quotient; the Perron vector is lifted to all vertices by
/// `x_v = y_X / sqrt(|X|)`.
fn quotient_radius<T: Float>(qm: &QuotientMatrix<T>, tol: T, cap: usize) -> Result<SpectralResult<T>> {
    check_tol(tol)?;
    let mut best: Option<(T, T, Vec<usize>, Vec<T>)> = None;
    let mut iterations = 0;
    for comp in qm.components() {
        let sub: Vec<Vec<T>> = comp.iter().map(|&a| comp.iter().map(|&b| qm.entries[a][b]).collect()).collect();
        let apply = |x: &[T], y: &mut [T]| {
            for (yi, row) in y.iter_mut().zip(&sub) {
                *yi = dot(row, x);
            }
        };
        let (rho, res, its, y) = power_iterate(comp.len(), apply, tol, cap)?;
        iterations += its;
        if best.as_ref().is_none_or(|b| rho > b.0) {
            best = Some((rho, res, comp, y));
        }
    }
    let n: usize = qm.sizes.iter().sum();
    let mut perron = vec![T::zero(); n];
    let Some((rho, res, comp, y)) = best else {
        return Ok(SpectralResult { rho_hat: T::zero(), residual_bound: T::zero(), iterations, perron });
    };
    let offsets: Vec<usize> = qm
        .sizes
        .iter()
        .scan(0, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect();
    for (&block, &yb) in comp.iter().zip(&y) {
        let value = yb / T::from(qm.sizes[block]).unwrap().sqrt();
        perron[offsets[block]..offsets[block] + qm.sizes[block]].fill(value);
    }
    Ok(SpectralResult { rho_hat: rho, residual_bound: res, iterations, perron })
}

impl SpectralSource for BlockModel {
    fn spectral_radius_capped<T: Float>(&self, tol: T, cap: usize) -> Result<SpectralResult<T>> {
        quotient_radius(&QuotientMatrix::<T>::from_block_model(self), tol, cap)
    }
}

impl SpectralSource for Realization {
    fn spectral_radius_capped<T: Float>(&self, tol: T, cap: usize) -> Result<SpectralResult<T>> {
        match self {
            Realization::Explicit(g) => g.spectral_radius_capped(tol, cap),
            Realization::Block(m) => m.spectral_radius_capped(tol, cap),
        }
    }
}
