//! Index bookkeeping for composite systems.
//!
//! A flat index over `dims = [d0, d1, ...]` is row-major in the subsystem
//! digits (subsystem 0 is the most significant), matching `A ⊗ B ⊗ ...`.

use crate::error::{Error, Result};

/// Splits flat indices into the digits of kept and traced subsystems.
#[derive(Debug, Clone)]
pub(crate) struct Split {
    dims: Vec<usize>,
    kept: Vec<bool>,
    pub kept_dim: usize,
}

impl Split {
    /// Validates `keep` against `dims`: nonempty, in range, no duplicates.
    pub fn new(dims: &[usize], keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("keep set must be nonempty".into()));
        }
        let mut kept = vec![false; dims.len()];
        for &k in keep {
            if k >= dims.len() {
                return Err(Error::InvalidArgument(format!(
                    "subsystem index {k} out of range for {} subsystems",
                    dims.len()
                )));
            }
            if kept[k] {
                return Err(Error::InvalidArgument(format!("subsystem index {k} repeated")));
            }
            kept[k] = true;
        }
        let kept_dim = dims.iter().zip(&kept).filter(|(_, &k)| k).map(|(d, _)| d).product();
        Ok(Self {
            dims: dims.to_vec(),
            kept,
            kept_dim,
        })
    }

    /// `(kept index, traced index)` of a flat index.
    pub fn split(&self, mut flat: usize) -> (usize, usize) {
        let (mut kept_idx, mut kept_stride) = (0, 1);
        let (mut traced_idx, mut traced_stride) = (0, 1);
        for (d, &k) in self.dims.iter().zip(&self.kept).rev() {
            let digit = flat % d;
            flat /= d;
            if k {
                kept_idx += digit * kept_stride;
                kept_stride *= d;
            } else {
                traced_idx += digit * traced_stride;
                traced_stride *= d;
            }
        }
        (kept_idx, traced_idx)
    }

    pub fn kept_dims(&self) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.kept)
            .filter(|(_, &k)| k)
            .map(|(&d, _)| d)
            .collect()
    }
}

pub(crate) fn check_dims(dims: &[usize], total: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidDimension(format!("subsystem dims {dims:?}")));
    }
    let product: usize = dims.iter().product();
    if product != total {
        return Err(Error::Validation(format!(
            "subsystem dims {dims:?} multiply to {product}, expected {total}"
        )));
    }
    Ok(())
}
