//! Test states and seeded sampling of manifold coordinates.
//!
//! All randomness goes through [`rng_for`]: a ChaCha8 generator seeded with
//! `seed_from_u64(seed)` and switched to stream `index`. Point `i` of a batch
//! always uses stream `i`, so batches are reproducible regardless of how
//! they are scheduled.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::ManifoldCase;
use crate::error::{Error, Result};
use crate::fano::{decompose, flat_index, BlochVector, DensityMatrix, PSD_TOL};
use crate::lie_basis::{CMatrix, C64};

/// Rejection-sampling budget per group in physical mode.
pub const REJECTION_BUDGET: usize = 100_000;

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `ρ_{A₁} ⊗ … ⊗ ρ_{A_M}` from single-qudit Bloch vectors.
pub fn product_state(blochs: &[BlochVector], levels: usize) -> Result<DensityMatrix> {
    let (first, rest) = blochs
        .split_first()
        .ok_or_else(|| Error::Shape("product state needs at least one factor".into()))?;
    let factor = |b: &BlochVector| -> Result<DensityMatrix> {
        if b.levels != levels {
            return Err(Error::Shape(format!(
                "Bloch vector for {} levels in a {levels}-level product",
                b.levels
            )));
        }
        let rho = b.to_density()?;
        let report = rho.validate();
        if report.min_eig < PSD_TOL {
            return Err(Error::Validation(report));
        }
        Ok(rho)
    };
    let mut acc = factor(first)?;
    for b in rest {
        acc = acc.tensor(&factor(b)?)?;
    }
    Ok(acc)
}

/// Standard qubit fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum NamedState {
    /// `(|00⟩ + |11⟩)/√2`.
    BellPhiPlus,
    /// `(|0…0⟩ + |1…1⟩)/√2`.
    Ghz { qudits: usize },
    /// Equal superposition of the single-excitation kets.
    W { qudits: usize },
    /// `p |Φ⁺⟩⟨Φ⁺| + (1 − p) I/4`.
    Werner { p: f64 },
}

impl NamedState {
    pub fn qudits(&self) -> usize {
        match *self {
            NamedState::BellPhiPlus | NamedState::Werner { .. } => 2,
            NamedState::Ghz { qudits } | NamedState::W { qudits } => qudits,
        }
    }

    /// `bell_phi_plus`, `ghz`, `ghz(4)`, `w`, `w(4)`, `werner(0.5)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, arg) = match spec.split_once('(') {
            Some((name, rest)) => {
                let arg = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownState(spec.into()))?;
                (name, Some(arg.trim()))
            }
            None => (spec, None),
        };
        let count = |default: usize| -> Result<usize> {
            match arg {
                None => Ok(default),
                Some(a) => a.parse().map_err(|_| Error::UnknownState(spec.into())),
            }
        };
        match name {
            "bell_phi_plus" | "bell" if arg.is_none() => Ok(NamedState::BellPhiPlus),
            "ghz" => Ok(NamedState::Ghz { qudits: count(3)? }),
            "w" => Ok(NamedState::W { qudits: count(3)? }),
            "werner" => {
                let p = arg
                    .and_then(|a| a.parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownState(spec.into()))?;
                Ok(NamedState::Werner { p })
            }
            _ => Err(Error::UnknownState(spec.into())),
        }
    }
}

fn projector(levels: usize, qudits: usize, amps: &[(usize, f64)]) -> Result<DensityMatrix> {
    let dim = levels.pow(qudits as u32);
    let mut v = DVector::<C64>::zeros(dim);
    for &(i, a) in amps {
        v[i] = C64::new(a, 0.0);
    }
    DensityMatrix::new(levels, qudits, &v * v.adjoint())
}

pub fn named_state(state: &NamedState) -> Result<DensityMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match *state {
        NamedState::BellPhiPlus => projector(2, 2, &[(0, h), (3, h)]),
        NamedState::Ghz { qudits } => {
            if qudits < 2 {
                return Err(Error::Shape("GHZ needs at least two qubits".into()));
            }
            projector(2, qudits, &[(0, h), ((1 << qudits) - 1, h)])
        }
        NamedState::W { qudits } => {
            if qudits < 2 {
                return Err(Error::Shape("W needs at least two qubits".into()));
            }
            let a = 1.0 / (qudits as f64).sqrt();
            let amps: Vec<(usize, f64)> = (0..qudits).map(|k| (1 << k, a)).collect();
            projector(2, qudits, &amps)
        }
        NamedState::Werner { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Shape(format!("Werner parameter {p} outside [0, 1]")));
            }
            let bell = named_state(&NamedState::BellPhiPlus)?.into_matrix();
            let mixed = CMatrix::identity(4, 4).map(|z| z / 4.0);
            DensityMatrix::new(2, 2, bell * C64::new(p, 0.0) + mixed * C64::new(1.0 - p, 0.0))
        }
    }
}

/// `GG†/tr(GG†)` with i.i.d. standard normal real and imaginary parts.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let w = &g * g.adjoint();
    let t = w.trace().re;
    // Exact Hermiticity regardless of rounding in the product.
    (&w + w.adjoint()).map(|z| z / (2.0 * t))
}

/// Seeded Ginibre-ensemble state of `qudits` qudits with `levels` levels.
pub fn random_density(levels: usize, qudits: usize, seed: u64) -> Result<DensityMatrix> {
    let dim = levels.pow(qudits as u32);
    if dim < 2 {
        return Err(Error::InvalidLevels(levels));
    }
    DensityMatrix::new(levels, qudits, ginibre(dim, &mut rng_for(seed, 0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Every coordinate uniform in `[−1, 1]`.
    #[default]
    Box,
    /// Every group block describes a physical reduced state.
    Physical,
}

impl std::str::FromStr for SampleMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "box" => Ok(SampleMode::Box),
            "physical" => Ok(SampleMode::Physical),
            _ => Err(format!("unknown sampling mode `{s}` (box | physical)")),
        }
    }
}

/// Point `index` of the batch identified by `seed`.
pub fn random_manifold_point(case: &ManifoldCase, mode: SampleMode, seed: u64) -> Result<Vec<f64>> {
    manifold_point_with(case, mode, &mut rng_for(seed, 0), REJECTION_BUDGET)
}

/// `count` points; point `i` uses stream `i` of `seed`.
pub fn sample_points(
    case: &ManifoldCase,
    mode: SampleMode,
    seed: u64,
    count: usize,
) -> Result<Vec<Vec<f64>>> {
    (0..count)
        .into_par_iter()
        .map(|i| manifold_point_with(case, mode, &mut rng_for(seed, i as u64), REJECTION_BUDGET))
        .collect()
}

pub(crate) fn manifold_point_with<R: Rng + ?Sized>(
    case: &ManifoldCase,
    mode: SampleMode,
    rng: &mut R,
    budget: usize,
) -> Result<Vec<f64>> {
    match mode {
        SampleMode::Box => Ok((0..case.dim()).map(|_| rng.random_range(-1.0..=1.0)).collect()),
        SampleMode::Physical => physical_point(case, rng, budget),
    }
}

/// Uniform in the unit ball by rejection from the cube.
fn ball_point<R: Rng + ?Sized>(rng: &mut R, budget: usize) -> Option<[f64; 3]> {
    (0..budget).find_map(|_| {
        let a: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        (a.iter().map(|x| x * x).sum::<f64>() <= 1.0).then_some(a)
    })
}

/// Product of `qudits` qubit states drawn uniformly from the Bloch ball,
/// subsystem `k` from stream `stream + k` of `seed`.
pub fn random_qubit_product(qudits: usize, seed: u64, stream: u64) -> Result<DensityMatrix> {
    let blochs = (0..qudits as u64)
        .map(|k| {
            let a = ball_point(&mut rng_for(seed, stream + k), REJECTION_BUDGET).ok_or(Error::SamplingExhausted {
                group: k as usize,
                attempts: REJECTION_BUDGET,
            })?;
            BlochVector::new(2, a.to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    product_state(&blochs, 2)
}

fn physical_point<R: Rng + ?Sized>(case: &ManifoldCase, rng: &mut R, budget: usize) -> Result<Vec<f64>> {
    let levels = case.levels();
    let radix = levels * levels;
    let blocks = case
        .partition()
        .groups()
        .iter()
        .enumerate()
        .map(|(g, group)| -> Result<Vec<f64>> {
            if group.len() == 1 && levels == 2 {
                let a = ball_point(rng, budget).ok_or(Error::SamplingExhausted { group: g, attempts: budget })?;
                Ok([1.0, a[0], a[1], a[2]].to_vec())
            } else {
                let dim = levels.pow(group.len() as u32);
                let rho = DensityMatrix::new(levels, group.len(), ginibre(dim, rng))?;
                Ok(decompose(&rho)?.into_data())
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let groups = case.partition().groups();
    Ok(case
        .coordinate_order()
        .iter()
        .map(|idx| {
            let g = case.coordinate_group(idx);
            let local: Vec<usize> = groups[g].iter().map(|&k| idx[k - 1]).collect();
            blocks[g][flat_index(radix, &local)]
        })
        .collect())
}
