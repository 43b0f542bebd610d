//! Density matrices of `M` qudits with `N` levels and their Fano coefficient
//! tensors.
//!
//! A state is expanded as `ρ = Σ d_{i₁…i_M} e^{i₁} ⊗ … ⊗ e^{i_M}` over the
//! basis of [`crate::lie_basis`]. Because `tr(eⁱeʲ) = δᵢⱼ/N`, the
//! coefficients are recovered as `d = N^M · tr(ρ · e^{i₁} ⊗ … ⊗ e^{i_M})`.
//!
//! Multi-indices are stored flat with `i₁` most significant. Every module and
//! file format uses this order.

use std::fmt;

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_basis::{trace_product, CMatrix, GeneratorSet, C64};

/// Deviation allowed on Hermiticity and trace.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-10;

/// A Hermitian, unit-trace matrix of dimension `N^M`.
///
/// Positivity is not enforced here; [`validate`] reports it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    levels: usize,
    qudits: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(levels: usize, qudits: usize, matrix: CMatrix) -> Result<Self> {
        check_shape(levels, qudits, &matrix)?;
        let report = validate(&matrix);
        if !report.hermitian || report.trace_dev > TRACE_TOL {
            return Err(Error::Validation(report));
        }
        Ok(Self { levels, qudits, matrix })
    }

    pub(crate) fn from_parts_unchecked(levels: usize, qudits: usize, matrix: CMatrix) -> Self {
        Self { levels, qudits, matrix }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.matrix)
    }

    /// Tensor product `self ⊗ other`, with `self` on the leading subsystems.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        if self.levels != other.levels {
            return Err(Error::Shape(format!(
                "cannot tensor {}-level and {}-level systems",
                self.levels, other.levels
            )));
        }
        Ok(Self {
            levels: self.levels,
            qudits: self.qudits + other.qudits,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }
}

fn check_shape(levels: usize, qudits: usize, matrix: &CMatrix) -> Result<()> {
    if levels < 2 {
        return Err(Error::InvalidLevels(levels));
    }
    if qudits == 0 {
        return Err(Error::Shape("need at least one qudit".into()));
    }
    let dim = checked_pow(levels, qudits)?;
    if matrix.nrows() != dim || matrix.ncols() != dim {
        return Err(Error::Shape(format!(
            "{}x{} matrix does not match {qudits} qudits of {levels} levels (dimension {dim})",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    Ok(())
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32)
        .ok_or_else(|| Error::Shape(format!("{base}^{exp} overflows")))
}

/// Outcome of the physicality checks `ρ† = ρ`, `tr ρ = 1`, `ρ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub hermitian: bool,
    /// Largest `|ρ_ab − conj(ρ_ba)|`.
    pub hermiticity_dev: f64,
    /// `|tr ρ − 1|`.
    pub trace_dev: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eig: f64,
}

impl ValidationReport {
    pub fn is_state(&self) -> bool {
        self.hermitian && self.trace_dev <= TRACE_TOL && self.min_eig >= PSD_TOL
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermitian={} (dev {:.3e}), trace_dev={:.3e}, min_eig={:.6e}",
            self.hermitian, self.hermiticity_dev, self.trace_dev, self.min_eig
        )
    }
}

/// Report Hermiticity, trace and positivity of a square matrix. Never fails;
/// a non-square matrix is reported as non-Hermitian with NaN deviations.
pub fn validate(matrix: &CMatrix) -> ValidationReport {
    if !matrix.is_square() || matrix.nrows() == 0 {
        return ValidationReport {
            hermitian: false,
            hermiticity_dev: f64::NAN,
            trace_dev: f64::NAN,
            min_eig: f64::NAN,
        };
    }
    let n = matrix.nrows();
    let mut herm_dev = 0.0f64;
    for r in 0..n {
        for c in r..n {
            herm_dev = herm_dev.max((matrix[(r, c)] - matrix[(c, r)].conj()).norm());
        }
    }
    let trace = matrix.trace();
    let trace_dev = (trace - C64::new(1.0, 0.0)).norm();
    let hermitian_part = (matrix + matrix.adjoint()).map(|z| z * 0.5);
    let min_eig = SymmetricEigen::new(hermitian_part)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    ValidationReport {
        hermitian: herm_dev <= HERMITIAN_TOL,
        hermiticity_dev: herm_dev,
        trace_dev,
        min_eig,
    }
}

/// Real coefficient tensor `d_{i₁…i_M}`, flat with `i₁` most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct FanoTensor {
    levels: usize,
    qudits: usize,
    data: Vec<f64>,
}

impl FanoTensor {
    pub fn new(levels: usize, qudits: usize, data: Vec<f64>) -> Result<Self> {
        if levels < 2 {
            return Err(Error::InvalidLevels(levels));
        }
        let want = checked_pow(levels * levels, qudits)?;
        if qudits == 0 || data.len() != want {
            return Err(Error::Shape(format!(
                "Fano tensor for {qudits} qudits of {levels} levels needs {want} entries, got {}",
                data.len()
            )));
        }
        Ok(Self { levels, qudits, data })
    }

    /// The tensor of the maximally mixed state: `d_0…0 = 1`, all else 0.
    pub fn identity(levels: usize, qudits: usize) -> Result<Self> {
        let len = checked_pow(levels * levels, qudits)?;
        let mut data = vec![0.0; len];
        data[0] = 1.0;
        Self::new(levels, qudits, data)
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    /// Number of values per index, `N²`.
    pub fn radix(&self) -> usize {
        self.levels * self.levels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        flat_index(self.radix(), index)
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        multi_index(self.radix(), self.qudits, flat)
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        debug_assert_eq!(index.len(), self.qudits);
        self.data[self.flat_index(index)]
    }

    /// Entries other than `d_0…0`, in flat order.
    pub fn nontrivial(&self) -> &[f64] {
        &self.data[1..]
    }
}

/// Row-major flat position of a multi-index with the given radix.
pub fn flat_index(radix: usize, index: &[usize]) -> usize {
    index.iter().fold(0, |acc, &i| {
        debug_assert!(i < radix);
        acc * radix + i
    })
}

pub fn multi_index(radix: usize, len: usize, mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = flat % radix;
        flat /= radix;
    }
    out
}

/// `e^{i₁} ⊗ … ⊗ e^{i_M}`.
fn basis_product(set: &GeneratorSet, index: &[usize]) -> CMatrix {
    let basis = set.basis();
    let mut acc = basis[index[0]].clone();
    for &i in &index[1..] {
        acc = acc.kronecker(&basis[i]);
    }
    acc
}

/// Fano coefficients of `rho`.
pub fn decompose(rho: &DensityMatrix) -> Result<FanoTensor> {
    let set = GeneratorSet::shared(rho.levels)?;
    let radix = rho.levels * rho.levels;
    let len = checked_pow(radix, rho.qudits)?;
    let scale = rho.dim() as f64;
    let data = (0..len)
        .map(|flat| {
            let idx = multi_index(radix, rho.qudits, flat);
            // ρ and every basis product are Hermitian, so the trace is real.
            scale * trace_product(rho.matrix(), &basis_product(&set, &idx)).re
        })
        .collect();
    FanoTensor::new(rho.levels, rho.qudits, data)
}

/// `ρ = Σ d e^{i₁} ⊗ … ⊗ e^{i_M}`. The result is Hermitian with unit trace;
/// positivity is not guaranteed.
pub fn reconstruct(d: &FanoTensor) -> Result<DensityMatrix> {
    if (d.data[0] - 1.0).abs() > TRACE_TOL {
        return Err(Error::Normalization(d.data[0]));
    }
    let set = GeneratorSet::shared(d.levels)?;
    let dim = checked_pow(d.levels, d.qudits)?;
    let mut matrix = CMatrix::zeros(dim, dim);
    for (flat, &coef) in d.data.iter().enumerate() {
        if coef == 0.0 {
            continue;
        }
        let product = basis_product(&set, &d.multi_index(flat));
        matrix.zip_apply(&product, |m, p| *m += p * coef);
    }
    Ok(DensityMatrix::from_parts_unchecked(d.levels, d.qudits, matrix))
}

/// Generalized Bloch vector `a₁ … a_{N²−1}`; the augmented form has `a₀ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub levels: usize,
    pub components: Vec<f64>,
}

impl BlochVector {
    pub fn new(levels: usize, components: Vec<f64>) -> Result<Self> {
        if levels < 2 {
            return Err(Error::InvalidLevels(levels));
        }
        if components.len() != levels * levels - 1 {
            return Err(Error::Shape(format!(
                "Bloch vector for {levels} levels needs {} components, got {}",
                levels * levels - 1,
                components.len()
            )));
        }
        Ok(Self { levels, components })
    }

    pub fn zero(levels: usize) -> Result<Self> {
        Self::new(levels, vec![0.0; levels * levels - 1])
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// `(1, a₁, …, a_{N²−1})`.
    pub fn augmented(&self) -> Vec<f64> {
        std::iter::once(1.0).chain(self.components.iter().copied()).collect()
    }

    /// `ρ = (I + Σ aᵢσⁱ)/N`.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let tensor = FanoTensor::new(self.levels, 1, self.augmented())?;
        reconstruct(&tensor)
    }
}

/// Bloch vector of a single-qudit state, `aᵢ = N·tr(ρ eⁱ) = tr(ρ σⁱ)`.
pub fn bloch_of(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.qudits != 1 {
        return Err(Error::Shape(format!(
            "Bloch vector needs a single qudit, got {}",
            rho.qudits
        )));
    }
    let set = GeneratorSet::shared(rho.levels)?;
    let components = set
        .generators()
        .iter()
        .map(|s| trace_product(rho.matrix(), s).re)
        .collect();
    BlochVector::new(rho.levels, components)
}

/// Bloch vector of subsystem `subsystem` (1-based) read off the tensor:
/// `a_i = d_{0…i…0}`.
pub fn marginal_bloch(d: &FanoTensor, subsystem: usize) -> Result<BlochVector> {
    if subsystem == 0 || subsystem > d.qudits {
        return Err(Error::Shape(format!(
            "subsystem {subsystem} out of range 1..={}",
            d.qudits
        )));
    }
    let mut index = vec![0; d.qudits];
    let components = (1..d.radix())
        .map(|i| {
            index[subsystem - 1] = i;
            d.get(&index)
        })
        .collect();
    BlochVector::new(d.levels, components)
}

/// Reduced state on the 1-based subsystems in `keep`, by direct index
/// contraction over the traced-out subsystems. `keep` is sorted internally.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let m = rho.qudits;
    let n = rho.levels;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.iter().any(|&k| k == 0 || k > m) {
        return Err(Error::Shape(format!(
            "subsystems {keep:?} invalid for {m} qudits"
        )));
    }
    let traced: Vec<usize> = (1..=m).filter(|k| !keep.contains(k)).collect();
    let kept_dim = n.pow(keep.len() as u32);
    let traced_dim = n.pow(traced.len() as u32);

    // Full index from (kept digits, traced digits).
    let compose = |kept_flat: usize, traced_flat: usize| -> usize {
        let kd = multi_index(n, keep.len(), kept_flat);
        let td = multi_index(n, traced.len(), traced_flat);
        let mut digits = vec![0; m];
        for (pos, &sub) in keep.iter().enumerate() {
            digits[sub - 1] = kd[pos];
        }
        for (pos, &sub) in traced.iter().enumerate() {
            digits[sub - 1] = td[pos];
        }
        flat_index(n, &digits)
    };

    let mut out = CMatrix::zeros(kept_dim, kept_dim);
    for x in 0..kept_dim {
        for y in 0..kept_dim {
            let mut acc = C64::new(0.0, 0.0);
            for z in 0..traced_dim {
                acc += rho.matrix[(compose(x, z), compose(y, z))];
            }
            out[(x, y)] = acc;
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(n, keep.len(), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn pure(levels: usize, qudits: usize, amps: &[(usize, f64)]) -> DensityMatrix {
        let dim = levels.pow(qudits as u32);
        let mut v = nalgebra::DVector::<C64>::zeros(dim);
        for &(i, a) in amps {
            v[i] = c(a);
        }
        DensityMatrix::new(levels, qudits, &v * v.adjoint()).unwrap()
    }

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        pure(2, 2, &[(0, h), (3, h)])
    }

    #[test]
    fn maximally_mixed_has_only_leading_coefficient() {
        let rho = DensityMatrix::new(2, 2, CMatrix::identity(4, 4).map(|z| z / 4.0)).unwrap();
        let d = decompose(&rho).unwrap();
        assert_eq!(d.data()[0], 1.0);
        assert!(d.nontrivial().iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn bell_coefficients_match_trace_formula() {
        let d = decompose(&bell()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (0, 0) | (1, 1) | (3, 3) => 1.0,
                    (2, 2) => -1.0,
                    _ => 0.0,
                };
                assert!((d.get(&[i, j]) - want).abs() < 1e-14, "d{i}{j}");
            }
        }
    }

    #[test]
    fn ket_zero_zero_coefficients() {
        let d = decompose(&pure(2, 2, &[(0, 1.0)])).unwrap();
        for flat in 0..16 {
            let idx = d.multi_index(flat);
            let want = if matches!(idx.as_slice(), [0, 0] | [3, 0] | [0, 3] | [3, 3]) { 1.0 } else { 0.0 };
            assert!((d.data()[flat] - want).abs() < 1e-14);
        }
    }

    #[test]
    fn reconstruct_examples() {
        let id = reconstruct(&FanoTensor::identity(2, 2).unwrap()).unwrap();
        let want = CMatrix::identity(4, 4).map(|z| z / 4.0);
        assert!((id.matrix() - want).norm() < 1e-15);

        let mut data = vec![0.0; 16];
        data[0] = 1.0;
        data[12] = 1.0; // d30
        data[3] = 1.0; // d03
        data[15] = 1.0; // d33
        let rho = reconstruct(&FanoTensor::new(2, 2, data).unwrap()).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(0, 0)] = c(1.0);
        assert!((rho.matrix() - want).norm() < 1e-15);
    }

    #[test]
    fn reconstruct_requires_normalization() {
        let mut d = FanoTensor::identity(2, 1).unwrap();
        d.data_mut()[0] = 0.5;
        assert!(matches!(reconstruct(&d), Err(Error::Normalization(_))));
    }

    #[test]
    fn decompose_rejects_non_hermitian_and_bad_shape() {
        let mut m = CMatrix::identity(2, 2).map(|z| z / 2.0);
        m[(0, 1)] = c(0.3);
        assert!(matches!(DensityMatrix::new(2, 1, m), Err(Error::Validation(_))));
        let m = CMatrix::identity(3, 3).map(|z| z / 3.0);
        assert!(matches!(DensityMatrix::new(2, 2, m), Err(Error::Shape(_))));
    }

    #[test]
    fn bloch_examples() {
        let mixed = DensityMatrix::new(3, 1, CMatrix::identity(3, 3).map(|z| z / 3.0)).unwrap();
        assert!(bloch_of(&mixed).unwrap().norm() < 1e-15);

        let zero = pure(2, 1, &[(0, 1.0)]);
        let a = bloch_of(&zero).unwrap();
        assert!((a.components[0]).abs() < 1e-15 && a.components[1].abs() < 1e-15);
        assert!((a.components[2] - 1.0).abs() < 1e-15);

        let half_x = BlochVector::new(2, vec![0.5, 0.0, 0.0]).unwrap().to_density().unwrap();
        assert!((half_x.matrix()[(0, 1)] - c(0.25)).norm() < 1e-15);
        let back = bloch_of(&half_x).unwrap();
        assert!((back.components[0] - 0.5).abs() < 1e-15);
        assert!(bloch_of(&bell()).is_err());
    }

    #[test]
    fn marginal_bloch_examples() {
        let d = decompose(&bell()).unwrap();
        for l in 1..=2 {
            assert!(marginal_bloch(&d, l).unwrap().norm() < 1e-14);
        }
        let d = decompose(&pure(2, 2, &[(0, 1.0)])).unwrap();
        let a = marginal_bloch(&d, 1).unwrap();
        assert!((a.components[2] - 1.0).abs() < 1e-14);
        assert!(marginal_bloch(&FanoTensor::identity(2, 3).unwrap(), 2).unwrap().norm() == 0.0);
        assert!(marginal_bloch(&d, 0).is_err());
        assert!(marginal_bloch(&d, 3).is_err());
    }

    #[test]
    fn validation_examples() {
        let r = validate(&CMatrix::identity(4, 4).map(|z| z / 4.0));
        assert!(r.hermitian && r.trace_dev == 0.0);
        assert!((r.min_eig - 0.25).abs() < 1e-14);
        assert!(r.is_state());

        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.5);
        m[(1, 1)] = c(-0.5);
        let r = validate(&m);
        assert!(r.trace_dev < 1e-15);
        assert!((r.min_eig + 0.5).abs() < 1e-14);
        assert!(!r.is_state());

        let r = bell().validate();
        assert!(r.min_eig.abs() < 1e-14 && r.is_state());
    }

    #[test]
    fn partial_trace_of_product() {
        let a = pure(2, 1, &[(0, 1.0)]);
        let b = BlochVector::new(2, vec![0.3, 0.0, -0.4]).unwrap().to_density().unwrap();
        let ab = a.tensor(&b).unwrap();
        let ra = partial_trace(&ab, &[1]).unwrap();
        let rb = partial_trace(&ab, &[2]).unwrap();
        assert!((ra.matrix() - a.matrix()).norm() < 1e-15);
        assert!((rb.matrix() - b.matrix()).norm() < 1e-15);
        assert!(partial_trace(&ab, &[3]).is_err());
    }

    #[test]
    fn index_helpers_round_trip() {
        for flat in 0..64 {
            assert_eq!(flat_index(4, &multi_index(4, 3, flat)), flat);
        }
        assert_eq!(multi_index(4, 3, 4 * 4 * 2 + 4 + 3), vec![2, 1, 3]);
    }
}
