//! JSON file layouts shared by the library and the command-line tool.
//!
//! * density matrix: `{"levels": N, "qudits": M, "matrix": [[[re, im], …], …]}`
//! * Fano tensor: `{"levels": N, "qudits": M, "data": [d_0…0, …]}` (row-major,
//!   first index most significant)
//! * manifold point: `{"case": "two-qubit-product", "u": [...]}`

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::embedding::{CaseKind, ManifoldCase};
use crate::error::{Error, Result};
use crate::fano::{DensityMatrix, FanoTensor};
use crate::lie_basis::{CMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub levels: usize,
    pub qudits: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl DensityFile {
    pub fn from_matrix(levels: usize, qudits: usize, m: &CMatrix) -> Self {
        let matrix = (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
            .collect();
        Self { levels, qudits, matrix }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.levels(), rho.qudits(), rho.matrix())
    }

    /// Raw matrix without any physical checks.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.matrix.len();
        if self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("matrix rows have unequal length or matrix is not square".into()));
        }
        let expected = self.levels.checked_pow(self.qudits as u32).unwrap_or(usize::MAX);
        if n != expected {
            return Err(Error::Shape(format!(
                "matrix is {n}×{n}, expected {expected}×{expected} for N={} M={}",
                self.levels, self.qudits
            )));
        }
        Ok(CMatrix::from_fn(n, n, |r, c| {
            let [re, im] = self.matrix[r][c];
            C64::new(re, im)
        }))
    }

    /// Hermitian, unit-trace matrix.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.levels, self.qudits, self.to_matrix()?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanoFile {
    pub levels: usize,
    pub qudits: usize,
    pub data: Vec<f64>,
}

impl FanoFile {
    pub fn from_tensor(d: &FanoTensor) -> Self {
        Self { levels: d.levels(), qudits: d.qudits(), data: d.data().to_vec() }
    }

    pub fn to_tensor(&self) -> Result<FanoTensor> {
        FanoTensor::new(self.levels, self.qudits, self.data.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFile {
    pub case: String,
    pub u: Vec<f64>,
}

impl PointFile {
    /// Named case and its coordinate vector, checked for length.
    pub fn resolve(&self) -> Result<(ManifoldCase, Vec<f64>)> {
        let kind: CaseKind = self.case.parse().map_err(Error::UnsupportedCase)?;
        let case = ManifoldCase::named(kind)
            .ok_or_else(|| Error::UnsupportedCase(format!("`{}` needs explicit levels and partition", self.case)))?;
        if self.u.len() != case.dim() {
            return Err(Error::Shape(format!(
                "case `{}` has {} coordinates, point has {}",
                case.name(),
                case.dim(),
                self.u.len()
            )));
        }
        Ok((case, self.u.clone()))
    }
}

/// Either kind of state file, told apart by its fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Density(DensityFile),
    Fano(FanoFile),
}

impl StateFile {
    pub fn to_tensor(&self) -> Result<FanoTensor> {
        match self {
            StateFile::Density(f) => crate::fano::decompose(&f.to_density()?),
            StateFile::Fano(f) => f.to_tensor(),
        }
    }
}

/// Real matrix as a list of rows.
pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_factory::{named_state, NamedState};

    #[test]
    fn density_round_trip() {
        let rho = named_state(&NamedState::BellPhiPlus).unwrap();
        let text = serde_json::to_string(&DensityFile::from_density(&rho)).unwrap();
        let back: DensityFile = from_json(&text).unwrap();
        assert_eq!(back.to_density().unwrap().matrix(), rho.matrix());
    }

    #[test]
    fn untagged_state_file() {
        let t: StateFile = from_json(r#"{"levels":2,"qudits":1,"data":[1,0,0,1]}"#).unwrap();
        assert!(matches!(t, StateFile::Fano(_)));
        let d: StateFile = from_json(r#"{"levels":2,"qudits":1,"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]}"#).unwrap();
        assert!(matches!(d, StateFile::Density(_)));
        assert_eq!(d.to_tensor().unwrap(), t.to_tensor().unwrap());
    }

    #[test]
    fn point_resolution() {
        let p = PointFile { case: "two-qubit-product".into(), u: vec![0.0; 6] };
        assert_eq!(p.resolve().unwrap().0.dim(), 6);
        let bad = PointFile { case: "two-qubit-product".into(), u: vec![0.0; 5] };
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let f = DensityFile { levels: 2, qudits: 2, matrix: vec![vec![[1.0, 0.0]]] };
        assert!(f.to_matrix().is_err());
    }
}
