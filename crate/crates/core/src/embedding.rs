//! Product-state manifolds as multilinear monomial maps `ℝ^m → ℝ^n`.
//!
//! A point of the manifold for partition `G₁|…|G_P` is given by the
//! non-trivial entries of every group block (`m` coordinates). The image is
//! the full list of non-trivial Fano coefficients (`n = (N²)^M − 1`), each of
//! which is the product of at most `P` distinct coordinates. Every derivative
//! of such a map is again a product of coordinates, so derivatives of any
//! order are exact.
//!
//! The three named cases freeze the coordinate orders used for the two-qubit
//! product map, the three-qubit biproduct map and the three-qubit product
//! map; the closed-form metrics in [`crate::geometry`] depend on them.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fano::{multi_index, FanoTensor};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    TwoQubitProduct,
    ThreeQubitBiproduct,
    ThreeQubitProduct,
    General,
}

impl CaseKind {
    pub fn name(&self) -> &'static str {
        match self {
            CaseKind::TwoQubitProduct => "two-qubit-product",
            CaseKind::ThreeQubitBiproduct => "three-qubit-biproduct",
            CaseKind::ThreeQubitProduct => "three-qubit-product",
            CaseKind::General => "general",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CaseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "two-qubit-product" => Ok(CaseKind::TwoQubitProduct),
            "three-qubit-biproduct" => Ok(CaseKind::ThreeQubitBiproduct),
            "three-qubit-product" => Ok(CaseKind::ThreeQubitProduct),
            "general" => Ok(CaseKind::General),
            _ => Err(format!(
                "unknown case `{s}` (two-qubit-product | three-qubit-biproduct | three-qubit-product | general)"
            )),
        }
    }
}

/// Domain and codomain layout of one product-state manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldCase {
    kind: CaseKind,
    levels: usize,
    qudits: usize,
    partition: Partition,
    coordinate_order: Vec<Vec<usize>>,
    output_order: Vec<Vec<usize>>,
}

/// All multi-indices of length `len` over `0..radix`, lexicographic.
fn lex(radix: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..radix.pow(len as u32)).map(move |flat| multi_index(radix, len, flat))
}

fn nonzero(idx: &[usize]) -> bool {
    idx.iter().any(|&i| i != 0)
}

impl ManifoldCase {
    /// `S₁`: coordinates `(d01,d02,d03,d10,d20,d30)`, outputs every `d_ij ≠ d00`
    /// in lexicographic order. `m = 6`, `n = 15`.
    pub fn two_qubit_product() -> Self {
        let coordinate_order = vec![
            vec![0, 1], vec![0, 2], vec![0, 3],
            vec![1, 0], vec![2, 0], vec![3, 0],
        ];
        Self {
            kind: CaseKind::TwoQubitProduct,
            levels: 2,
            qudits: 2,
            partition: Partition::totally_product(2).expect("valid"),
            coordinate_order,
            output_order: lex(4, 2).filter(|i| nonzero(i)).collect(),
        }
    }

    /// `S₂` for `ρ_{A₁A₂} ⊗ ρ_{A₃}`: coordinates `(d001,d002,d003)` followed by
    /// every `d_ij0 ≠ d000` in lexicographic order. `m = 18`, `n = 63`.
    pub fn three_qubit_biproduct() -> Self {
        let coordinate_order = biproduct_coordinates();
        let output_order = three_qubit_outputs(&coordinate_order);
        Self {
            kind: CaseKind::ThreeQubitBiproduct,
            levels: 2,
            qudits: 3,
            partition: Partition::parse("1,2|3").expect("valid"),
            coordinate_order,
            output_order,
        }
    }

    /// `S₃`: coordinates `(d100,d200,d300,d010,d020,d030,d001,d002,d003)`,
    /// outputs in the same order as the biproduct case. `m = 9`, `n = 63`.
    pub fn three_qubit_product() -> Self {
        let mut coordinate_order = Vec::with_capacity(9);
        for pos in 0..3 {
            for i in 1..4 {
                let mut idx = vec![0; 3];
                idx[pos] = i;
                coordinate_order.push(idx);
            }
        }
        Self {
            kind: CaseKind::ThreeQubitProduct,
            levels: 2,
            qudits: 3,
            partition: Partition::totally_product(3).expect("valid"),
            coordinate_order,
            output_order: three_qubit_outputs(&biproduct_coordinates()),
        }
    }

    /// General P-product manifold. Coordinates run over the groups in
    /// partition order, each block in lexicographic order of its local
    /// multi-index; outputs are all non-zero multi-indices in lexicographic
    /// order.
    pub fn general(levels: usize, qudits: usize, partition: Partition) -> Result<Self> {
        if levels < 2 {
            return Err(Error::InvalidLevels(levels));
        }
        if partition.qudits() != qudits {
            return Err(Error::InvalidPartition(format!(
                "`{partition}` does not cover {qudits} subsystems"
            )));
        }
        let radix = levels * levels;
        let mut coordinate_order = Vec::new();
        for group in partition.groups() {
            for local in lex(radix, group.len()).filter(|i| nonzero(i)) {
                let mut idx = vec![0; qudits];
                for (pos, &k) in group.iter().enumerate() {
                    idx[k - 1] = local[pos];
                }
                coordinate_order.push(idx);
            }
        }
        Ok(Self {
            kind: CaseKind::General,
            levels,
            qudits,
            partition,
            coordinate_order,
            output_order: lex(radix, qudits).filter(|i| nonzero(i)).collect(),
        })
    }

    pub fn named(kind: CaseKind) -> Option<Self> {
        match kind {
            CaseKind::TwoQubitProduct => Some(Self::two_qubit_product()),
            CaseKind::ThreeQubitBiproduct => Some(Self::three_qubit_biproduct()),
            CaseKind::ThreeQubitProduct => Some(Self::three_qubit_product()),
            CaseKind::General => None,
        }
    }

    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Domain dimension `m`.
    pub fn dim(&self) -> usize {
        self.coordinate_order.len()
    }

    /// Codomain dimension `n`.
    pub fn codim(&self) -> usize {
        self.output_order.len()
    }

    pub fn coordinate_order(&self) -> &[Vec<usize>] {
        &self.coordinate_order
    }

    pub fn output_order(&self) -> &[Vec<usize>] {
        &self.output_order
    }

    /// Group owning a coordinate's multi-index (the group of its first
    /// non-zero position).
    pub fn coordinate_group(&self, idx: &[usize]) -> usize {
        let first = idx.iter().position(|&i| i != 0).expect("coordinates are non-zero");
        self.partition.group_of(first + 1).expect("partition covers every subsystem")
    }

    fn check_tensor(&self, d: &FanoTensor) -> Result<()> {
        if d.levels() != self.levels || d.qudits() != self.qudits {
            return Err(Error::Shape(format!(
                "tensor is {} qudits of {} levels, case `{}` needs {} of {}",
                d.qudits(),
                d.levels(),
                self.name(),
                self.qudits,
                self.levels
            )));
        }
        Ok(())
    }

    /// Read the manifold coordinates of `d` (its group-block entries).
    pub fn coordinates_of(&self, d: &FanoTensor) -> Result<Vec<f64>> {
        self.check_tensor(d)?;
        Ok(self.coordinate_order.iter().map(|i| d.get(i)).collect())
    }

    /// Non-trivial entries of `d` in output order.
    pub fn outputs_of(&self, d: &FanoTensor) -> Result<Vec<f64>> {
        self.check_tensor(d)?;
        Ok(self.output_order.iter().map(|i| d.get(i)).collect())
    }
}

fn biproduct_coordinates() -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1..4).map(|k| vec![0, 0, k]).collect();
    out.extend(
        lex(4, 2)
            .filter(|ij| nonzero(ij))
            .map(|ij| vec![ij[0], ij[1], 0]),
    );
    out
}

/// The 18 biproduct coordinates followed by every `d_ijk` with
/// `(i,j) ≠ (0,0)` and `k ≥ 1`, lexicographic.
fn three_qubit_outputs(head: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = head.to_vec();
    out.extend(lex(4, 3).filter(|idx| (idx[0], idx[1]) != (0, 0) && idx[2] != 0));
    out
}

/// `F: ℝ^m → ℝ^n` with `F^α = ∏_{μ ∈ monomials[α]} u^μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMap {
    domain_dim: usize,
    monomials: Vec<Vec<usize>>,
    case: Option<ManifoldCase>,
}

/// Build the monomial map of a manifold case: output `(i₁…i_M)` is the
/// product, over the groups on which its restriction is non-zero, of the
/// coordinate naming that restriction.
pub fn build_map(case: &ManifoldCase) -> EmbeddingMap {
    let lookup: HashMap<&[usize], usize> = case
        .coordinate_order
        .iter()
        .enumerate()
        .map(|(mu, idx)| (idx.as_slice(), mu))
        .collect();
    let monomials = case
        .output_order
        .iter()
        .map(|idx| {
            let mut mono: Vec<usize> = case
                .partition
                .groups()
                .iter()
                .filter_map(|group| {
                    let mut restricted = vec![0; case.qudits];
                    for &k in group {
                        restricted[k - 1] = idx[k - 1];
                    }
                    nonzero(&restricted).then(|| lookup[restricted.as_slice()])
                })
                .collect();
            mono.sort_unstable();
            mono
        })
        .collect();
    EmbeddingMap {
        domain_dim: case.dim(),
        monomials,
        case: Some(case.clone()),
    }
}

/// Numerical rank of the Jacobian at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImmersionReport {
    pub rank: usize,
    pub full_rank: bool,
    pub min_singular_value: f64,
    pub max_singular_value: f64,
}

impl EmbeddingMap {
    /// A map from explicit monomials. Each monomial must be non-empty with
    /// distinct coordinates in `0..domain_dim`.
    pub fn from_monomials(domain_dim: usize, monomials: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(monomials.len());
        for (alpha, mut mono) in monomials.into_iter().enumerate() {
            if mono.is_empty() {
                return Err(Error::InvalidMap(format!("output {alpha} has an empty monomial")));
            }
            mono.sort_unstable();
            if mono.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidMap(format!("output {alpha} repeats a coordinate")));
            }
            if mono.last().is_some_and(|&mu| mu >= domain_dim) {
                return Err(Error::InvalidMap(format!(
                    "output {alpha} uses a coordinate beyond {domain_dim}"
                )));
            }
            clean.push(mono);
        }
        Ok(Self { domain_dim, monomials: clean, case: None })
    }

    pub fn case(&self) -> Option<&ManifoldCase> {
        self.case.as_ref()
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    fn check_point(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.domain_dim {
            return Err(Error::Shape(format!(
                "point has {} coordinates, map expects {}",
                u.len(),
                self.domain_dim
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.check_point(u)?;
        Ok(self
            .monomials
            .iter()
            .map(|mono| mono.iter().map(|&mu| u[mu]).product())
            .collect())
    }

    /// `∂F^α/∂u^μ`, exact.
    pub fn jacobian(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        self.check_point(u)?;
        let mut jac = DMatrix::zeros(self.monomials.len(), self.domain_dim);
        for (alpha, mono) in self.monomials.iter().enumerate() {
            for &mu in mono {
                jac[(alpha, mu)] = product_except(mono, u, &[mu]);
            }
        }
        Ok(jac)
    }

    /// `∂^k F^α / ∂u^{μ₁}…∂u^{μ_k}` for any order. Zero when an index
    /// repeats or lies outside the monomial.
    pub fn partial(&self, u: &[f64], output: usize, wrt: &[usize]) -> Result<f64> {
        self.check_point(u)?;
        let mono = self
            .monomials
            .get(output)
            .ok_or_else(|| Error::Shape(format!("output {output} out of range")))?;
        Ok(monomial_partial(mono, u, wrt))
    }

    /// Second or third derivative of one output component.
    pub fn higher_derivative(&self, u: &[f64], output: usize, wrt: &[usize]) -> Result<f64> {
        if !(2..=3).contains(&wrt.len()) {
            return Err(Error::Shape(format!(
                "higher derivatives are of order 2 or 3, got {}",
                wrt.len()
            )));
        }
        self.partial(u, output, wrt)
    }

    pub fn verify_immersion(&self, u: &[f64]) -> Result<ImmersionReport> {
        let jac = self.jacobian(u)?;
        let sv = jac.singular_values();
        let max = sv.iter().copied().fold(0.0, f64::max);
        let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let rank = sv.iter().filter(|&&s| s > 1e-10 * max).count();
        Ok(ImmersionReport {
            rank,
            full_rank: rank == self.domain_dim,
            min_singular_value: min,
            max_singular_value: max,
        })
    }
}

pub(crate) fn monomial_partial(mono: &[usize], u: &[f64], wrt: &[usize]) -> f64 {
    for (i, mu) in wrt.iter().enumerate() {
        if wrt[..i].contains(mu) || !mono.contains(mu) {
            return 0.0;
        }
    }
    product_except(mono, u, wrt)
}

fn product_except(mono: &[usize], u: &[f64], skip: &[usize]) -> f64 {
    mono.iter()
        .filter(|mu| !skip.contains(mu))
        .map(|&mu| u[mu])
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano::decompose;
    use crate::state_factory::{named_state, product_state, NamedState};
    use crate::fano::BlochVector;

    fn output_of(case: &ManifoldCase, idx: &[usize]) -> usize {
        case.output_order().iter().position(|i| i == idx).unwrap()
    }

    fn coord_of(case: &ManifoldCase, idx: &[usize]) -> usize {
        case.coordinate_order().iter().position(|i| i == idx).unwrap()
    }

    #[test]
    fn named_case_dimensions() {
        let cases = [
            (ManifoldCase::two_qubit_product(), 6, 15),
            (ManifoldCase::three_qubit_biproduct(), 18, 63),
            (ManifoldCase::three_qubit_product(), 9, 63),
        ];
        for (case, m, n) in cases {
            assert_eq!((case.dim(), case.codim()), (m, n), "{}", case.name());
            let mut outs = case.output_order().to_vec();
            outs.sort();
            outs.dedup();
            assert_eq!(outs.len(), n);
        }
        let general = ManifoldCase::general(3, 2, Partition::totally_product(2).unwrap()).unwrap();
        assert_eq!((general.dim(), general.codim()), (16, 80));
    }

    #[test]
    fn frozen_orderings() {
        let k = ManifoldCase::three_qubit_biproduct();
        assert_eq!(k.coordinate_order()[3], vec![0, 1, 0]);
        assert_eq!(k.coordinate_order()[6], vec![1, 0, 0]);
        assert_eq!(k.coordinate_order()[17], vec![3, 3, 0]);
        assert_eq!(k.output_order()[18], vec![0, 1, 1]);
        assert_eq!(k.output_order()[62], vec![3, 3, 3]);
        let l = ManifoldCase::three_qubit_product();
        assert_eq!(l.coordinate_order()[0], vec![1, 0, 0]);
        assert_eq!(l.coordinate_order()[8], vec![0, 0, 3]);
        assert_eq!(l.output_order(), k.output_order());
        let f = ManifoldCase::general(2, 2, Partition::totally_product(2).unwrap()).unwrap();
        assert_eq!(f.coordinate_order()[0], vec![1, 0]);
        assert_eq!(f.coordinate_order()[3], vec![0, 1]);
    }

    #[test]
    fn monomial_examples() {
        let j = ManifoldCase::two_qubit_product();
        let map = build_map(&j);
        let mono = |case: &ManifoldCase, map: &EmbeddingMap, idx: &[usize]| {
            map.monomials()[output_of(case, idx)].clone()
        };
        let mut want = vec![coord_of(&j, &[1, 0]), coord_of(&j, &[0, 1])];
        want.sort();
        assert_eq!(mono(&j, &map, &[1, 1]), want);
        assert_eq!(mono(&j, &map, &[1, 0]), vec![coord_of(&j, &[1, 0])]);

        let l = ManifoldCase::three_qubit_product();
        let map = build_map(&l);
        let mut want = vec![coord_of(&l, &[3, 0, 0]), coord_of(&l, &[0, 1, 0])];
        want.sort();
        assert_eq!(mono(&l, &map, &[3, 1, 0]), want);
        let mut want: Vec<usize> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|i| coord_of(&l, i)).collect();
        want.sort();
        assert_eq!(mono(&l, &map, &[1, 1, 1]), want);

        let k = ManifoldCase::three_qubit_biproduct();
        let map = build_map(&k);
        let mut want = vec![coord_of(&k, &[2, 1, 0]), coord_of(&k, &[0, 0, 3])];
        want.sort();
        assert_eq!(mono(&k, &map, &[2, 1, 3]), want);
    }

    #[test]
    fn structural_invariants() {
        for case in [
            ManifoldCase::two_qubit_product(),
            ManifoldCase::three_qubit_biproduct(),
            ManifoldCase::three_qubit_product(),
            ManifoldCase::general(3, 2, Partition::totally_product(2).unwrap()).unwrap(),
            ManifoldCase::general(2, 4, Partition::parse("1,3|2|4").unwrap()).unwrap(),
        ] {
            let map = build_map(&case);
            let p = case.partition().len();
            for mu in 0..case.dim() {
                let alpha = output_of(&case, &case.coordinate_order()[mu]);
                assert_eq!(map.monomials()[alpha], vec![mu]);
            }
            assert!(map.monomials().iter().all(|m| !m.is_empty() && m.len() <= p));
        }
    }

    #[test]
    fn evaluate_examples() {
        let j = ManifoldCase::two_qubit_product();
        let map = build_map(&j);
        assert!(map.evaluate(&[0.0; 6]).unwrap().iter().all(|&x| x == 0.0));
        let mut u = vec![0.0; 6];
        u[coord_of(&j, &[2, 0])] = 0.5;
        u[coord_of(&j, &[0, 2])] = 0.4;
        let x = map.evaluate(&u).unwrap();
        for (alpha, idx) in j.output_order().iter().enumerate() {
            let want = match idx.as_slice() {
                [2, 0] => 0.5,
                [0, 2] => 0.4,
                [2, 2] => 0.2,
                _ => 0.0,
            };
            assert!((x[alpha] - want).abs() < 1e-15);
        }
        assert!(map.evaluate(&[0.0; 5]).is_err());
    }

    #[test]
    fn coordinates_round_trip_through_product_states() {
        let blochs = [
            BlochVector::new(2, vec![0.3, -0.1, 0.2]).unwrap(),
            BlochVector::new(2, vec![-0.6, 0.2, 0.1]).unwrap(),
            BlochVector::new(2, vec![0.0, 0.5, 0.5]).unwrap(),
        ];
        let d = decompose(&product_state(&blochs, 2).unwrap()).unwrap();
        let l = ManifoldCase::three_qubit_product();
        let x = build_map(&l).evaluate(&l.coordinates_of(&d).unwrap()).unwrap();
        let want = l.outputs_of(&d).unwrap();
        for (a, b) in x.iter().zip(&want) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn coordinates_examples() {
        let j = ManifoldCase::two_qubit_product();
        let up = BlochVector::new(2, vec![0.0, 0.0, 1.0]).unwrap();
        let d = decompose(&product_state(&[up.clone(), up.clone()], 2).unwrap()).unwrap();
        let u = j.coordinates_of(&d).unwrap();
        let want = [0.0, 0.0, 1.0, 0.0, 0.0, 1.0];
        assert!(u.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-14));
        assert!(j
            .coordinates_of(&FanoTensor::identity(2, 2).unwrap())
            .unwrap()
            .iter()
            .all(|&x| x == 0.0));

        let bell = named_state(&NamedState::BellPhiPlus).unwrap();
        let d = decompose(&bell.tensor(&up.to_density().unwrap()).unwrap()).unwrap();
        let k = ManifoldCase::three_qubit_biproduct();
        let u = k.coordinates_of(&d).unwrap();
        assert!(u[..3].iter().zip([0.0, 0.0, 1.0]).all(|(a, b)| (a - b).abs() < 1e-14));
        let bell_d = decompose(&bell).unwrap();
        for (mu, idx) in k.coordinate_order().iter().enumerate().skip(3) {
            assert!((u[mu] - bell_d.get(&idx[..2])).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobian_and_higher_derivatives() {
        let j = ManifoldCase::two_qubit_product();
        let map = build_map(&j);
        let jac0 = map.jacobian(&[0.0; 6]).unwrap();
        assert_eq!(jac0.rank(1e-12), 6);
        for mu in 0..6 {
            let alpha = output_of(&j, &j.coordinate_order()[mu]);
            assert_eq!(jac0[(alpha, mu)], 1.0);
        }
        assert_eq!(jac0.iter().filter(|&&x| x != 0.0).count(), 6);

        let u = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
        let jac = map.jacobian(&u).unwrap();
        let d22 = output_of(&j, &[2, 2]);
        assert_eq!(jac[(d22, coord_of(&j, &[2, 0]))], u[coord_of(&j, &[0, 2])]);
        let second = map
            .higher_derivative(&u, d22, &[coord_of(&j, &[2, 0]), coord_of(&j, &[0, 2])])
            .unwrap();
        assert_eq!(second, 1.0);
        for alpha in 0..map.codomain_dim() {
            for mu in 0..6 {
                assert_eq!(map.higher_derivative(&u, alpha, &[mu, mu]).unwrap(), 0.0);
            }
        }
        assert!(map.higher_derivative(&u, 0, &[1]).is_err());

        let l = ManifoldCase::three_qubit_product();
        let map = build_map(&l);
        let v: Vec<f64> = (0..9).map(|i| 0.1 * i as f64 - 0.3).collect();
        let d111 = output_of(&l, &[1, 1, 1]);
        let wrt = [coord_of(&l, &[1, 0, 0]), coord_of(&l, &[0, 1, 0]), coord_of(&l, &[0, 0, 1])];
        assert_eq!(map.higher_derivative(&v, d111, &wrt).unwrap(), 1.0);
    }

    #[test]
    fn immersion_at_origin() {
        let k = ManifoldCase::three_qubit_biproduct();
        let report = build_map(&k).verify_immersion(&[0.0; 18]).unwrap();
        assert_eq!(report.rank, 18);
        assert!(report.full_rank);
    }

    #[test]
    fn from_monomials_validates() {
        assert!(EmbeddingMap::from_monomials(2, vec![vec![]]).is_err());
        assert!(EmbeddingMap::from_monomials(2, vec![vec![1, 1]]).is_err());
        assert!(EmbeddingMap::from_monomials(2, vec![vec![2]]).is_err());
        let map = EmbeddingMap::from_monomials(2, vec![vec![1, 0], vec![0]]).unwrap();
        assert_eq!(map.monomials()[0], vec![0, 1]);
        assert!(map.case().is_none());
    }

    #[test]
    fn case_names_parse() {
        for kind in [CaseKind::TwoQubitProduct, CaseKind::ThreeQubitBiproduct, CaseKind::ThreeQubitProduct] {
            assert_eq!(kind.name().parse::<CaseKind>().unwrap(), kind);
            assert_eq!(ManifoldCase::named(kind).unwrap().kind(), kind);
        }
        assert!("four-qubit".parse::<CaseKind>().is_err());
    }
}
