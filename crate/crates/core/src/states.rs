//! Named states usable without a state file.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::scalar::{Complex, Real};

/// Builds a named state:
///
/// - `pure-ground` : `|0><0|` (dimension `dim`, default 2)
/// - `maximally-mixed` : `I / dim` (default 2)
/// - `bell` : `|Φ+>` on dims (2, 2)
/// - `ghz` : `(|000> + |111>)/√2` on dims (2, 2, 2)
/// - `diag:a,b,...` : `diag(a, b, ...)`
pub fn builtin<T: Real>(name: &str, dim: Option<usize>) -> Result<DensityMatrix<T>> {
    let n = dim.unwrap_or(2);
    match name {
        "pure-ground" => DensityMatrix::basis_state(n, 0),
        "maximally-mixed" => Ok(DensityMatrix::maximally_mixed(n)),
        "bell" => cat_state(2),
        "ghz" => cat_state(3),
        other => {
            if let Some(list) = other.strip_prefix("diag:") {
                let probs = list
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map(T::lit)
                            .map_err(|e| Error::Parse(format!("diag entry {s:?}: {e}")))
                    })
                    .collect::<Result<Vec<T>>>()?;
                DensityMatrix::diagonal(&probs)
            } else {
                Err(Error::InvalidArgument(format!(
                    "unknown builtin state {other:?} (expected pure-ground, maximally-mixed, bell, ghz, diag:a,b,...)"
                )))
            }
        }
    }
}

/// `(|0...0> + |1...1>)/√2` on `qubits` qubits.
fn cat_state<T: Real>(qubits: u32) -> Result<DensityMatrix<T>> {
    let n = 1usize << qubits;
    let mut psi = vec![Complex::zero(); n];
    psi[0] = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    psi[n - 1] = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    DensityMatrix::pure(&psi)?.with_subsystems(vec![2; qubits as usize])
}
