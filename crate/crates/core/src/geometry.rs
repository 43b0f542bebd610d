//! Induced metric, Levi-Civita connection and curvature of an embedded
//! product-state manifold.
//!
//! The ambient metric is Euclidean, so `g = JᵀJ` with `J` the Jacobian of the
//! monomial map. Every derivative of `g` comes from exact derivatives of the
//! map; no finite differences are involved.
//!
//! Conventions (indices `λ, μ, ν, κ, ρ, η` all run over `0..m`):
//!
//! * `Γ^λ_{μν} = ½ g^{λκ} (∂_μ g_{νκ} + ∂_ν g_{μκ} − ∂_κ g_{μν})`
//! * `R^κ_{λμν} = ∂_μ Γ^κ_{νλ} − ∂_ν Γ^κ_{μλ} + Γ^η_{νλ} Γ^κ_{μη} − Γ^η_{μλ} Γ^κ_{νη}`
//! * `R_{μν} = R^λ_{μλν}`, `Q = g^{μν} R_{μν}`
//!
//! Array layouts: `dg[[μ, ν, κ]] = ∂_κ g_{μν}`,
//! `ddg[[μ, ν, κ, ρ]] = ∂_κ ∂_ρ g_{μν}`, `christoffel[[λ, μ, ν]] = Γ^λ_{μν}`,
//! `riemann[[κ, λ, μ, ν]] = R^κ_{λμν}`.

use nalgebra::{Cholesky, DMatrix, Dyn, SymmetricEigen};
use ndarray::{Array2, Array3, Array4, Axis};
use serde::Serialize;

use crate::embedding::{monomial_partial, CaseKind, EmbeddingMap, ManifoldCase};
use crate::error::{Error, Result};

/// Induced metric at a point with its first derivatives.
#[derive(Debug, Clone)]
pub struct MetricTensor {
    pub point: Vec<f64>,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    pub dg: Array3<f64>,
}

impl MetricTensor {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `λ_max / λ_min` of `g`.
    pub fn condition_number(&self) -> f64 {
        condition_number(&self.g)
    }
}

pub fn condition_number(g: &DMatrix<f64>) -> f64 {
    let eig = SymmetricEigen::new(g.clone()).eigenvalues;
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}

/// Per-output derivative tables of one monomial, indexed by position in the
/// monomial: `first[a]`, `second[a][b]`, `third[a][b][c]`.
struct LocalDerivatives {
    first: Vec<f64>,
    second: Vec<Vec<f64>>,
    third: Vec<Vec<Vec<f64>>>,
}

impl LocalDerivatives {
    fn new(mono: &[usize], u: &[f64], with_third: bool) -> Self {
        let k = mono.len();
        let first = (0..k).map(|a| monomial_partial(mono, u, &[mono[a]])).collect();
        let second = (0..k)
            .map(|a| (0..k).map(|b| monomial_partial(mono, u, &[mono[a], mono[b]])).collect())
            .collect();
        let third = if with_third {
            (0..k)
                .map(|a| {
                    (0..k)
                        .map(|b| {
                            (0..k)
                                .map(|c| monomial_partial(mono, u, &[mono[a], mono[b], mono[c]]))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        Self { first, second, third }
    }
}

/// `g = JᵀJ` and `∂_κ g_{μν} = Σ_α (∂_κ∂_μ F^α ∂_ν F^α + ∂_μ F^α ∂_κ∂_ν F^α)`.
pub fn induced_metric(map: &EmbeddingMap, u: &[f64]) -> Result<MetricTensor> {
    let jac = map.jacobian(u)?;
    let g = jac.tr_mul(&jac);
    let m = map.domain_dim();
    let mut dg = Array3::<f64>::zeros((m, m, m));
    for mono in map.monomials() {
        if mono.len() < 2 {
            continue;
        }
        let loc = LocalDerivatives::new(mono, u, false);
        let k = mono.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    // μ = a, ν = b, κ = c
                    let v = loc.second[c][a] * loc.first[b] + loc.first[a] * loc.second[c][b];
                    if v != 0.0 {
                        dg[[mono[a], mono[b], mono[c]]] += v;
                    }
                }
            }
        }
    }
    let chol = factor(&g, u)?;
    Ok(MetricTensor {
        point: u.to_vec(),
        g_inv: chol.inverse(),
        g,
        dg,
    })
}

/// `∂_κ∂_ρ g_{μν}` from exact second and third derivatives of the map.
pub fn metric_second_derivatives(map: &EmbeddingMap, u: &[f64]) -> Result<Array4<f64>> {
    if u.len() != map.domain_dim() {
        return Err(Error::Shape(format!(
            "point has {} coordinates, map expects {}",
            u.len(),
            map.domain_dim()
        )));
    }
    let m = map.domain_dim();
    let mut ddg = Array4::<f64>::zeros((m, m, m, m));
    for mono in map.monomials() {
        if mono.len() < 2 {
            continue;
        }
        let loc = LocalDerivatives::new(mono, u, true);
        let k = mono.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for e in 0..k {
                        // μ = a, ν = b, κ = c, ρ = e
                        let v = loc.third[e][c][a] * loc.first[b]
                            + loc.second[c][a] * loc.second[e][b]
                            + loc.second[e][a] * loc.second[c][b]
                            + loc.first[a] * loc.third[e][c][b];
                        if v != 0.0 {
                            ddg[[mono[a], mono[b], mono[c], mono[e]]] += v;
                        }
                    }
                }
            }
        }
    }
    Ok(ddg)
}

fn factor(g: &DMatrix<f64>, u: &[f64]) -> Result<Cholesky<f64, Dyn>> {
    Cholesky::new(g.clone()).ok_or_else(|| Error::SingularMetric { point: u.to_vec() })
}

/// Solve `g X = B` for a row-major `m × cols` right-hand side.
fn solve_rows(chol: &Cholesky<f64, Dyn>, rhs: &[f64], m: usize) -> Vec<f64> {
    let cols = rhs.len() / m;
    let b = DMatrix::from_row_slice(m, cols, rhs);
    let x = chol.solve(&b);
    let mut out = vec![0.0; rhs.len()];
    for r in 0..m {
        for c in 0..cols {
            out[r * cols + c] = x[(r, c)];
        }
    }
    out
}

fn christoffel_from(chol: &Cholesky<f64, Dyn>, dg: &Array3<f64>) -> Array3<f64> {
    let m = dg.shape()[0];
    // First-kind symbols C[κ, μ, ν] = ∂_μ g_{νκ} + ∂_ν g_{μκ} − ∂_κ g_{μν}.
    let mut first_kind = vec![0.0; m * m * m];
    for k in 0..m {
        for mu in 0..m {
            for nu in 0..m {
                first_kind[(k * m + mu) * m + nu] =
                    0.5 * (dg[[nu, k, mu]] + dg[[mu, k, nu]] - dg[[mu, nu, k]]);
            }
        }
    }
    Array3::from_shape_vec((m, m, m), solve_rows(chol, &first_kind, m)).expect("shape")
}

/// `Γ^λ_{μν}` at `u`.
pub fn christoffel(map: &EmbeddingMap, u: &[f64]) -> Result<Array3<f64>> {
    let metric = induced_metric(map, u)?;
    let chol = factor(&metric.g, u)?;
    Ok(christoffel_from(&chol, &metric.dg))
}

/// Full curvature data at one point.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub metric: MetricTensor,
    pub christoffel: Array3<f64>,
    pub riemann: Array4<f64>,
    pub ricci: DMatrix<f64>,
    pub scalar: f64,
    pub metric_condition_number: f64,
}

/// Largest absolute violation of each tensor identity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SymmetryResiduals {
    /// `Γ^λ_{μν} − Γ^λ_{νμ}`
    pub christoffel: f64,
    /// `R^κ_{λμν} + R^κ_{λνμ}`
    pub riemann_last_pair: f64,
    /// `R_{κλμν} + R_{λκμν}`
    pub riemann_first_pair: f64,
    /// `R_{κλμν} − R_{μνκλ}`
    pub pair_exchange: f64,
    /// `R_{κλμν} + R_{κμνλ} + R_{κνλμ}`
    pub bianchi: f64,
    /// `R_{μν} − R_{νμ}`
    pub ricci: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        [
            self.christoffel,
            self.riemann_last_pair,
            self.riemann_first_pair,
            self.pair_exchange,
            self.bianchi,
            self.ricci,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl CurvatureReport {
    pub fn point(&self) -> &[f64] {
        &self.metric.point
    }

    /// `R_{κλμν} = g_{κη} R^η_{λμν}`.
    pub fn lowered_riemann(&self) -> Array4<f64> {
        let m = self.metric.dim();
        let g = to_array2(&self.metric.g);
        let flat = self
            .riemann
            .view()
            .into_shape_with_order((m, m * m * m))
            .expect("contiguous");
        g.dot(&flat).into_shape_with_order((m, m, m, m)).expect("shape")
    }

    pub fn symmetry_residuals(&self) -> SymmetryResiduals {
        let m = self.metric.dim();
        let gam = &self.christoffel;
        let r = &self.riemann;
        let low = self.lowered_riemann();
        let mut s = SymmetryResiduals::default();
        for a in 0..m {
            for b in 0..m {
                s.ricci = s.ricci.max((self.ricci[(a, b)] - self.ricci[(b, a)]).abs());
                for c in 0..m {
                    s.christoffel = s.christoffel.max((gam[[a, b, c]] - gam[[a, c, b]]).abs());
                    for d in 0..m {
                        s.riemann_last_pair = s.riemann_last_pair.max((r[[a, b, c, d]] + r[[a, b, d, c]]).abs());
                        let l = low[[a, b, c, d]];
                        s.riemann_first_pair = s.riemann_first_pair.max((l + low[[b, a, c, d]]).abs());
                        s.pair_exchange = s.pair_exchange.max((l - low[[c, d, a, b]]).abs());
                        s.bianchi = s.bianchi.max((l + low[[a, c, d, b]] + low[[a, d, b, c]]).abs());
                    }
                }
            }
        }
        s
    }
}

fn to_array2(m: &DMatrix<f64>) -> Array2<f64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(r, c)| m[(r, c)])
}

/// Metric, connection, Riemann and Ricci tensors and scalar curvature at `u`.
pub fn curvature(map: &EmbeddingMap, u: &[f64]) -> Result<CurvatureReport> {
    let metric = induced_metric(map, u)?;
    let ddg = metric_second_derivatives(map, u)?;
    let m = metric.dim();
    let chol = factor(&metric.g, u)?;
    let gamma = christoffel_from(&chol, &metric.dg);

    // ∂_ρ Γ^κ_{μν} = g^{κσ} [ ½ ∂_ρ C_{σμν} − ∂_ρ g_{σβ} Γ^β_{μν} ]
    let gamma_mat = gamma
        .view()
        .into_shape_with_order((m, m * m))
        .expect("contiguous");
    let mut rhs = vec![0.0; m * m * m * m]; // [σ, μ, ν, ρ]
    for rho in 0..m {
        let dg_rho = metric.dg.index_axis(Axis(2), rho); // [σ, β]
        let contracted = dg_rho.dot(&gamma_mat); // [σ, (μ ν)]
        for s in 0..m {
            for mu in 0..m {
                for nu in 0..m {
                    let half_dc = 0.5
                        * (ddg[[nu, s, mu, rho]] + ddg[[mu, s, nu, rho]] - ddg[[mu, nu, s, rho]]);
                    rhs[((s * m + mu) * m + nu) * m + rho] = half_dc - contracted[[s, mu * m + nu]];
                }
            }
        }
    }
    let dgamma = Array4::from_shape_vec((m, m, m, m), solve_rows(&chol, &rhs, m)).expect("shape");

    // P[κ, μ, ν, λ] = Σ_η Γ^κ_{μη} Γ^η_{νλ}
    let left = gamma.view().into_shape_with_order((m * m, m)).expect("contiguous");
    let quad = left
        .dot(&gamma_mat)
        .into_shape_with_order((m, m, m, m))
        .expect("shape");

    let mut riemann = Array4::<f64>::zeros((m, m, m, m));
    for k in 0..m {
        for l in 0..m {
            for mu in 0..m {
                for nu in 0..m {
                    riemann[[k, l, mu, nu]] = dgamma[[k, nu, l, mu]] - dgamma[[k, mu, l, nu]]
                        + quad[[k, mu, nu, l]]
                        - quad[[k, nu, mu, l]];
                }
            }
        }
    }
    let ricci = ricci(&riemann);
    let scalar = scalar_from(&metric.g_inv, &ricci);
    let metric_condition_number = metric.condition_number();
    Ok(CurvatureReport {
        metric,
        christoffel: gamma,
        riemann,
        ricci,
        scalar,
        metric_condition_number,
    })
}

/// `R^κ_{λμν}` at `u`.
pub fn riemann(map: &EmbeddingMap, u: &[f64]) -> Result<Array4<f64>> {
    Ok(curvature(map, u)?.riemann)
}

/// `R_{μν} = Σ_λ R^λ_{μλν}`.
pub fn ricci(riemann: &Array4<f64>) -> DMatrix<f64> {
    let m = riemann.shape()[0];
    DMatrix::from_fn(m, m, |mu, nu| (0..m).map(|l| riemann[[l, mu, l, nu]]).sum())
}

fn scalar_from(g_inv: &DMatrix<f64>, ricci: &DMatrix<f64>) -> f64 {
    g_inv.component_mul(ricci).sum()
}

pub fn scalar_curvature(map: &EmbeddingMap, u: &[f64]) -> Result<f64> {
    Ok(curvature(map, u)?.scalar)
}

fn check_case_point(case: &ManifoldCase, u: &[f64]) -> Result<()> {
    if u.len() != case.dim() {
        return Err(Error::Shape(format!(
            "point has {} coordinates, case `{}` expects {}",
            u.len(),
            case.name(),
            case.dim()
        )));
    }
    Ok(())
}

/// Closed-form induced metric of the three named cases, written in terms of
/// the Fano coefficients of the frozen coordinate orders.
pub fn metric_closed_form(case: &ManifoldCase, u: &[f64]) -> Result<DMatrix<f64>> {
    check_case_point(case, u)?;
    match case.kind() {
        CaseKind::TwoQubitProduct => {
            // u = (d01, d02, d03, d10, d20, d30)
            let d0 = |i: usize| if i == 0 { 1.0 } else { u[i - 1] }; // d_{0i}
            let d_0 = |i: usize| if i == 0 { 1.0 } else { u[i + 2] }; // d_{i0}
            let mut g = DMatrix::zeros(6, 6);
            let sum_i0: f64 = (0..4).map(|i| d_0(i).powi(2)).sum();
            let sum_0i: f64 = (0..4).map(|i| d0(i).powi(2)).sum();
            for mu in 0..3 {
                g[(mu, mu)] = sum_i0;
            }
            for mu in 3..6 {
                g[(mu, mu)] = sum_0i;
                for nu in 0..3 {
                    g[(mu, nu)] = d0(nu + 1) * d_0(mu - 2);
                    g[(nu, mu)] = g[(mu, nu)];
                }
            }
            Ok(g)
        }
        CaseKind::ThreeQubitBiproduct => {
            // u = (d001, d002, d003, d010, …, d330); m = (d000, d010, …, d330)
            let d00 = |k: usize| if k == 0 { 1.0 } else { u[k - 1] };
            let m_vec = |k: usize| if k == 0 { 1.0 } else { u[k + 2] };
            let mut g = DMatrix::zeros(18, 18);
            let sum_ij0: f64 = (0..16).map(|k| m_vec(k).powi(2)).sum();
            let sum_00i: f64 = (0..4).map(|i| d00(i).powi(2)).sum();
            for mu in 0..3 {
                g[(mu, mu)] = sum_ij0;
            }
            for mu in 3..18 {
                g[(mu, mu)] = sum_00i;
                for nu in 0..3 {
                    g[(mu, nu)] = d00(nu + 1) * m_vec(mu - 2);
                    g[(nu, mu)] = g[(mu, nu)];
                }
            }
            Ok(g)
        }
        CaseKind::ThreeQubitProduct => {
            // u = (d100, d200, d300, d010, d020, d030, d001, d002, d003)
            let d = |i: usize, j: usize, k: usize| -> f64 {
                match (i, j, k) {
                    (0, 0, 0) => 1.0,
                    (i, 0, 0) => u[i - 1],
                    (0, j, 0) => u[j + 2],
                    (0, 0, k) => u[k + 5],
                    _ => unreachable!("only block coordinates enter the metric"),
                }
            };
            let r1: f64 = (0..4).map(|k| d(0, 0, k).powi(2)).sum();
            let r2: f64 = (0..4).map(|j| d(0, j, 0).powi(2)).sum();
            let r3: f64 = (0..4).map(|i| d(i, 0, 0).powi(2)).sum();
            let mut g = DMatrix::zeros(9, 9);
            for mu in 0..3 {
                g[(mu, mu)] = r1 * r2;
            }
            for mu in 3..6 {
                g[(mu, mu)] = r1 * r3;
            }
            for mu in 6..9 {
                g[(mu, mu)] = r2 * r3;
            }
            for mu in 3..6 {
                for nu in 0..3 {
                    g[(mu, nu)] = r1 * d(0, mu - 2, 0) * d(nu + 1, 0, 0);
                }
            }
            for mu in 6..9 {
                for nu in 0..3 {
                    g[(mu, nu)] = r2 * d(0, 0, mu - 5) * d(nu + 1, 0, 0);
                }
                for nu in 3..6 {
                    g[(mu, nu)] = r3 * d(0, 0, mu - 5) * d(0, nu - 2, 0);
                }
            }
            for mu in 0..9 {
                for nu in 0..mu {
                    g[(nu, mu)] = g[(mu, nu)];
                }
            }
            Ok(g)
        }
        CaseKind::General => Err(Error::UnsupportedCase(case.name().into())),
    }
}

fn sq_sum(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum()
}

fn checked_ratio(num: f64, den: f64) -> Result<f64> {
    if den.abs() < 1e-14 {
        return Err(Error::SingularExpression(den));
    }
    Ok(num / den)
}

/// Reference closed-form scalar curvature for the two-qubit product and
/// three-qubit biproduct cases.
///
/// Two-qubit product, with `q₁ = Σ d_{0i}²`, `q₂ = Σ d_{i0}²`:
/// `Q = −2(3+3q₁+2q₂)(3+2q₁+3q₂) / ((1+q₁)(1+q₂)(1+q₁+q₂))`.
/// This expression coincides with the true curvature only where
/// `q₁ = q₂ = 0`; see [`scalar_curvature_two_qubit_exact`].
///
/// Three-qubit biproduct, with `q₁ = Σ d_{00i}²` and
/// `q₂ = 1 + q₁ + Σ_{(i,j)≠(0,0)} d_{ij0}²`:
/// `Q = −2(q₁−3q₂)(1+q₁+14q₂) / ((1+q₁)(q₁−q₂)q₂²)`.
pub fn scalar_curvature_closed_form(case: &ManifoldCase, u: &[f64]) -> Result<f64> {
    check_case_point(case, u)?;
    match case.kind() {
        CaseKind::TwoQubitProduct => {
            let q1 = sq_sum(&u[0..3]);
            let q2 = sq_sum(&u[3..6]);
            checked_ratio(
                -2.0 * (3.0 + 3.0 * q1 + 2.0 * q2) * (3.0 + 2.0 * q1 + 3.0 * q2),
                (1.0 + q1) * (1.0 + q2) * (1.0 + q1 + q2),
            )
        }
        CaseKind::ThreeQubitBiproduct => {
            let q1 = sq_sum(&u[0..3]);
            let q2 = 1.0 + q1 + sq_sum(&u[3..18]);
            checked_ratio(
                -2.0 * (q1 - 3.0 * q2) * (1.0 + q1 + 14.0 * q2),
                (1.0 + q1) * (q1 - q2) * q2 * q2,
            )
        }
        _ => Err(Error::UnsupportedCase(case.name().into())),
    }
}

/// Scalar curvature of the two-qubit product manifold,
/// `Q = −2(3+3q₁+2q₂)(3+2q₁+3q₂) / ((1+q₁)(1+q₂)(1+q₁+q₂)²)`.
///
/// Same numerator as the reference form but with the last denominator
/// factor squared; this is what the curvature pipeline produces at every
/// point.
pub fn scalar_curvature_two_qubit_exact(u: &[f64]) -> Result<f64> {
    if u.len() != 6 {
        return Err(Error::Shape(format!("two-qubit point needs 6 coordinates, got {}", u.len())));
    }
    let q1 = sq_sum(&u[0..3]);
    let q2 = sq_sum(&u[3..6]);
    let s = 1.0 + q1 + q2;
    checked_ratio(
        -2.0 * (3.0 + 3.0 * q1 + 2.0 * q2) * (3.0 + 2.0 * q1 + 3.0 * q2),
        (1.0 + q1) * (1.0 + q2) * s * s,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LengthCheck {
    /// `‖F(u + εv) − F(u)‖²`
    pub embedded_sq_dist: f64,
    /// `ε² g(v, v)`
    pub metric_sq_form: f64,
}

/// Compare a short chord in the ambient space with the metric's quadratic
/// form. For unit `v` the two agree to `O(ε³)`.
pub fn pullback_length_check(map: &EmbeddingMap, u: &[f64], v: &[f64], eps: f64) -> Result<LengthCheck> {
    if v.len() != u.len() {
        return Err(Error::Shape("direction and point differ in length".into()));
    }
    let moved: Vec<f64> = u.iter().zip(v).map(|(a, b)| a + eps * b).collect();
    let x0 = map.evaluate(u)?;
    let x1 = map.evaluate(&moved)?;
    let embedded_sq_dist = x0.iter().zip(&x1).map(|(a, b)| (b - a).powi(2)).sum();
    let jac = map.jacobian(u)?;
    let g = jac.tr_mul(&jac);
    let vv = nalgebra::DVector::from_column_slice(v);
    let metric_sq_form = eps * eps * (vv.transpose() * g * &vv)[(0, 0)];
    Ok(LengthCheck { embedded_sq_dist, metric_sq_form })
}
