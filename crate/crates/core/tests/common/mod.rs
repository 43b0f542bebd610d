//! Independent oracles used by the integration and acceptance tests.
#![allow(dead_code)]

use fano_geom::fano::{multi_index, partial_trace};
use fano_geom::{CMatrix, DensityMatrix, EmbeddingMap, Partition};
use nalgebra::DMatrix;

/// Five-point central difference of a vector-valued function along axis `k`.
fn five_point<F>(f: &F, u: &[f64], k: usize, h: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let at = |s: f64| {
        let mut p = u.to_vec();
        p[k] += s * h;
        f(&p)
    };
    let (p2, p1, m1, m2) = (at(2.0), at(1.0), at(-1.0), at(-2.0));
    (0..p1.len())
        .map(|i| (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h))
        .collect()
}

fn metric_flat(map: &EmbeddingMap, u: &[f64]) -> Vec<f64> {
    let j = map.jacobian(u).unwrap();
    let g = j.tr_mul(&j);
    let m = g.nrows();
    (0..m * m).map(|i| g[(i / m, i % m)]).collect()
}

/// `Γ^λ_{μν}` flat `[λ][μ][ν]`, with `∂g` by finite differences of `g = JᵀJ`
/// and an explicit inverse.
fn christoffel_fd(map: &EmbeddingMap, u: &[f64], h: f64) -> Vec<f64> {
    let m = u.len();
    let g = metric_flat(map, u);
    let ginv = DMatrix::from_row_slice(m, m, &g).try_inverse().expect("invertible metric");
    let f = |p: &[f64]| metric_flat(map, p);
    let dg: Vec<Vec<f64>> = (0..m).map(|k| five_point(&f, u, k, h)).collect(); // dg[k][μ m + ν]
    let mut gam = vec![0.0; m * m * m];
    for l in 0..m {
        for mu in 0..m {
            for nu in 0..m {
                let mut s = 0.0;
                for k in 0..m {
                    s += ginv[(l, k)] * (dg[mu][nu * m + k] + dg[nu][mu * m + k] - dg[k][mu * m + nu]);
                }
                gam[(l * m + mu) * m + nu] = 0.5 * s;
            }
        }
    }
    gam
}

/// Scalar curvature from finite differences only: `∂g` by differencing the
/// metric, `∂Γ` by differencing the connection.
pub fn scalar_curvature_fd(map: &EmbeddingMap, u: &[f64], h: f64) -> f64 {
    let m = u.len();
    let gam = christoffel_fd(map, u, h);
    let f = |p: &[f64]| christoffel_fd(map, p, h);
    let dgam: Vec<Vec<f64>> = (0..m).map(|r| five_point(&f, u, r, h)).collect();
    let idx = |a: usize, b: usize, c: usize| (a * m + b) * m + c;
    let g = metric_flat(map, u);
    let ginv = DMatrix::from_row_slice(m, m, &g).try_inverse().unwrap();
    let mut q = 0.0;
    for mu in 0..m {
        for nu in 0..m {
            // R_{μν} = R^λ_{μλν}
            let mut ric = 0.0;
            for l in 0..m {
                ric += dgam[l][idx(l, nu, mu)] - dgam[nu][idx(l, l, mu)];
                for e in 0..m {
                    ric += gam[idx(e, nu, mu)] * gam[idx(l, l, e)] - gam[idx(e, l, mu)] * gam[idx(l, nu, e)];
                }
            }
            q += ginv[(mu, nu)] * ric;
        }
    }
    q
}

/// Nested central differences of one output along the listed axes.
pub fn derivative_fd(map: &EmbeddingMap, u: &[f64], output: usize, wrt: &[usize], h: f64) -> f64 {
    match wrt.split_first() {
        None => map.evaluate(u).unwrap()[output],
        Some((&k, rest)) => {
            let mut p = u.to_vec();
            let mut q = u.to_vec();
            p[k] += h;
            q[k] -= h;
            (derivative_fd(map, &p, output, rest, h) - derivative_fd(map, &q, output, rest, h)) / (2.0 * h)
        }
    }
}

/// `max |ρ − ⊗_l ρ_{G_l}|` with the reduced states placed back on their
/// subsystems.
pub fn partial_trace_product_deviation(rho: &DensityMatrix, partition: &Partition) -> f64 {
    let n = rho.levels();
    let m = rho.qudits();
    let reduced: Vec<CMatrix> = partition
        .groups()
        .iter()
        .map(|g| partial_trace(rho, g).unwrap().into_matrix())
        .collect();
    let dim = rho.dim();
    let mut worst = 0.0f64;
    for r in 0..dim {
        let rd = multi_index(n, m, r);
        for c in 0..dim {
            let cd = multi_index(n, m, c);
            let mut v = fano_geom::C64::new(1.0, 0.0);
            for (g, red) in partition.groups().iter().zip(&reduced) {
                let local = |digits: &[usize]| g.iter().fold(0, |acc, &k| acc * n + digits[k - 1]);
                v *= red[(local(&rd), local(&cd))];
            }
            worst = worst.max((v - rho.matrix()[(r, c)]).norm());
        }
    }
    worst
}

pub fn unit_vector(raw: &[f64]) -> Vec<f64> {
    let n = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    raw.iter().map(|x| x / n).collect()
}
