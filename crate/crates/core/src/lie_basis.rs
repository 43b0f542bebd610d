//! Generators of su(N) and the normalized operator basis used by every
//! Fano expansion.
//!
//! The generators are the generalized Gell-Mann matrices, rescaled so that
//! `tr(σⁱσʲ) = N δᵢⱼ`. The basis is `e⁰ = I/N`, `eⁱ = σⁱ/N`, which gives
//! `tr(eⁱeʲ) = δᵢⱼ/N` for all `i, j`.
//!
//! Ordering is fixed: symmetric off-diagonal pairs `(j, k)` with `j < k` in
//! lexicographic order, then the antisymmetric pairs in the same order, then
//! the `N − 1` diagonal matrices. For `N = 2` this yields the Pauli matrices
//! `σx, σy, σz`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// The su(N) generators and the derived basis for one level count.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    levels: usize,
    generators: Vec<CMatrix>,
    basis: Vec<CMatrix>,
}

impl GeneratorSet {
    pub fn new(levels: usize) -> Result<Self> {
        let generators = su_generators(levels)?;
        let n = levels as f64;
        let mut basis = Vec::with_capacity(levels * levels);
        basis.push(CMatrix::identity(levels, levels).map(|z| z / n));
        basis.extend(generators.iter().map(|s| s.map(|z| z / n)));
        Ok(Self { levels, generators, basis })
    }

    /// Process-wide cached instance; construction happens once per `levels`.
    pub fn shared(levels: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GeneratorSet>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("generator cache poisoned");
        if let Some(set) = guard.get(&levels) {
            return Ok(Arc::clone(set));
        }
        let set = Arc::new(Self::new(levels)?);
        guard.insert(levels, Arc::clone(&set));
        Ok(set)
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `σ¹ … σ^{N²−1}`.
    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// `e⁰ … e^{N²−1}`.
    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }
}

/// Generalized Gell-Mann matrices normalized to `tr(σⁱσʲ) = N δᵢⱼ`.
pub fn su_generators(levels: usize) -> Result<Vec<CMatrix>> {
    if levels < 2 {
        return Err(Error::InvalidLevels(levels));
    }
    let n = levels;
    // Standard Gell-Mann normalization is tr = 2δ; rescale to tr = Nδ.
    let scale = (n as f64 / 2.0).sqrt();
    let one = C64::new(scale, 0.0);
    let i = C64::new(0.0, scale);

    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = one;
            m[(k, j)] = one;
            out.push(m);
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = -i;
            m[(k, j)] = i;
            out.push(m);
        }
    }
    for l in 1..n {
        let lf = l as f64;
        let c = scale * (2.0 / (lf * (lf + 1.0))).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..l {
            m[(j, j)] = C64::new(c, 0.0);
        }
        m[(l, l)] = C64::new(-c * lf, 0.0);
        out.push(m);
    }
    Ok(out)
}

/// `(e⁰, …, e^{N²−1}) = (I, σ¹, …)/N`.
pub fn basis_elements(levels: usize) -> Result<Vec<CMatrix>> {
    Ok(GeneratorSet::shared(levels)?.basis().to_vec())
}

/// `tr(A·B)` without forming the product.
pub(crate) fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}
