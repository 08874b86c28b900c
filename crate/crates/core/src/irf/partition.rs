//! Partition function of the antiperiodic IRF model on `m` rows.

use super::transfer::build_t_irf_paths;
use crate::error::{Error, Result};
use crate::linalg;
use crate::params::ModelParams;
use num_complex::Complex64 as C64;

/// `tr T(w₁)⋯T(w_m)`.
pub fn partition_function(params: &ModelParams, rows: &[C64]) -> Result<C64> {
    if rows.is_empty() {
        return Err(Error::InvalidArgument("at least one row parameter is required".into()));
    }
    let mut prod = build_t_irf_paths(params, rows[0])?;
    for w in &rows[1..] {
        prod = &prod * &build_t_irf_paths(params, *w)?;
    }
    Ok((0..prod.nrows()).map(|i| prod[(i, i)]).sum())
}

/// Largest relative deviation of the partition function over the given
/// reorderings of the rows.
pub fn permutation_residual(params: &ModelParams, rows: &[C64], perms: &[Vec<usize>]) -> Result<f64> {
    let base = partition_function(params, rows)?;
    let mut worst: f64 = 0.0;
    for p in perms {
        let r: Vec<C64> = p.iter().map(|&i| rows[i]).collect();
        worst = worst.max((partition_function(params, &r)? - base).norm() / base.norm());
    }
    Ok(worst)
}

/// `‖T(w)‖_F` for scale reporting.
pub fn transfer_norm(params: &ModelParams, w: C64) -> Result<f64> {
    Ok(linalg::fro(&build_t_irf_paths(params, w)?))
}
