//! Algebraic product conditions on Fano tensors.
//!
//! A state factorizes across a partition `G₁|…|G_P` exactly when
//! `d_{i₁…i_M} = ∏_l d_{I_l}` for every multi-index, where `d_{I_l}` is the
//! entry of `d` that keeps the indices in `G_l` and zeros the rest. The
//! totally-product, biproduct and general P-product systems are all this one
//! condition with a different partition.
//!
//! Residual sign convention: `r = (product of group blocks) − d`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano::{flat_index, multi_index, FanoTensor};
use crate::partition::{set_partitions, Partition};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Largest `M` accepted by [`classify`]; the Bell number B₆ = 203.
pub const MAX_CLASSIFY_QUDITS: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct ProductCheckReport {
    pub partition: Partition,
    /// Frobenius norm of the residual over all multi-indices.
    pub residual_norm: f64,
    /// Largest absolute residual entry.
    pub max_violation: f64,
    pub tolerance: f64,
    pub is_product: bool,
    /// Fano tensor of the reduced state on each group, flat row-major.
    pub group_coefficients: Vec<Vec<f64>>,
}

fn check_partition(d: &FanoTensor, partition: &Partition) -> Result<()> {
    if partition.qudits() != d.qudits() {
        return Err(Error::InvalidPartition(format!(
            "partition `{partition}` is for {} subsystems, tensor has {}",
            partition.qudits(),
            d.qudits()
        )));
    }
    Ok(())
}

/// Entries of `d` supported on each group: the Fano tensor of the reduced
/// state on that group. Each block has leading entry `d_0…0`.
pub fn group_coefficients(d: &FanoTensor, partition: &Partition) -> Result<Vec<FanoTensor>> {
    check_partition(d, partition)?;
    let radix = d.radix();
    partition
        .groups()
        .iter()
        .map(|group| {
            let len = radix.pow(group.len() as u32);
            let mut full = vec![0; d.qudits()];
            let data = (0..len)
                .map(|b| {
                    let local = multi_index(radix, group.len(), b);
                    for (pos, &k) in group.iter().enumerate() {
                        full[k - 1] = local[pos];
                    }
                    d.get(&full)
                })
                .collect();
            FanoTensor::new(d.levels(), group.len(), data)
        })
        .collect()
}

/// `r_{i₁…i_M} = ∏_l d_{I_l} − d_{i₁…i_M}`, flat in the tensor's order.
pub fn product_residual(d: &FanoTensor, partition: &Partition) -> Result<Vec<f64>> {
    let blocks = group_coefficients(d, partition)?;
    Ok(residual_from_blocks(d, partition, &blocks))
}

fn residual_from_blocks(d: &FanoTensor, partition: &Partition, blocks: &[FanoTensor]) -> Vec<f64> {
    let radix = d.radix();
    let mut local = Vec::with_capacity(d.qudits());
    d.data()
        .iter()
        .enumerate()
        .map(|(flat, &value)| {
            let idx = multi_index(radix, d.qudits(), flat);
            let product: f64 = partition
                .groups()
                .iter()
                .zip(blocks)
                .map(|(group, block)| {
                    local.clear();
                    local.extend(group.iter().map(|&k| idx[k - 1]));
                    block.data()[flat_index(radix, &local)]
                })
                .product();
            product - value
        })
        .collect()
}

pub fn is_product(d: &FanoTensor, partition: &Partition, tol: f64) -> Result<ProductCheckReport> {
    let blocks = group_coefficients(d, partition)?;
    let r = residual_from_blocks(d, partition, &blocks);
    let residual_norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    let max_violation = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(ProductCheckReport {
        partition: partition.clone(),
        residual_norm,
        max_violation,
        tolerance: tol,
        is_product: max_violation <= tol,
        group_coefficients: blocks.into_iter().map(FanoTensor::into_data).collect(),
    })
}

/// One report per set partition of `{1,…,M}`, coarsest first.
pub fn classify(d: &FanoTensor, tol: f64) -> Result<Vec<ProductCheckReport>> {
    if d.qudits() > MAX_CLASSIFY_QUDITS {
        return Err(Error::TooManyQudits(d.qudits()));
    }
    set_partitions(d.qudits())
        .par_iter()
        .map(|p| is_product(d, p, tol))
        .collect()
}
