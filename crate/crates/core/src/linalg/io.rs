//! JSON matrix files:
//! `{"dim": N, "subsystem_dims": [..], "entries": [[re, im], ...]}` (row-major).

use serde::{Deserialize, Serialize};

use super::{ComplexMatrix, DensityMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsystem_dims: Option<Vec<usize>>,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn from_matrix<T: Real>(m: &ComplexMatrix<T>, subsystem_dims: Option<Vec<usize>>) -> Self {
        Self {
            dim: m.rows(),
            subsystem_dims,
            entries: m.entries().iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect(),
        }
    }

    pub fn from_density<T: Real>(rho: &DensityMatrix<T>) -> Self {
        Self::from_matrix(rho.matrix(), rho.subsystem_dims().map(<[usize]>::to_vec))
    }

    pub fn to_matrix<T: Real>(&self) -> Result<ComplexMatrix<T>> {
        if self.dim == 0 {
            return Err(Error::InvalidDimension("dim must be >= 1".into()));
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::Validation(format!(
                "entries has {} elements, expected dim^2 = {}",
                self.entries.len(),
                self.dim * self.dim
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|[re, im]| {
                let re = T::from_f64(*re).ok_or_else(|| Error::Parse(format!("bad real part {re}")))?;
                let im = T::from_f64(*im).ok_or_else(|| Error::Parse(format!("bad imaginary part {im}")))?;
                Ok(Complex::new(re, im))
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::new(self.dim, self.dim, entries)
    }

    pub fn to_density<T: Real>(&self) -> Result<DensityMatrix<T>> {
        DensityMatrix::new(self.to_matrix()?, self.subsystem_dims.clone())
    }

    pub fn to_unitary<T: Real>(&self) -> Result<UnitaryMatrix<T>> {
        UnitaryMatrix::new(self.to_matrix()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_validates() {
        let text = r#"{"dim": 2, "subsystem_dims": [2], "entries": [[1,0],[0,0],[0,0],[0,0]]}"#;
        let rho: DensityMatrix<f64> = MatrixFile::parse(text).unwrap().to_density().unwrap();
        assert_eq!(rho.matrix(), &ComplexMatrix::from_diagonal(&[1.0, 0.0]));

        let not_unit_trace = r#"{"dim": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]}"#;
        let err = MatrixFile::parse(not_unit_trace)
            .unwrap()
            .to_density::<f64>()
            .unwrap_err();
        assert!(err.to_string().contains("trace"));

        let short = r#"{"dim": 2, "entries": [[1,0]]}"#;
        assert!(MatrixFile::parse(short).unwrap().to_matrix::<f64>().is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = MatrixFile::parse("{\n \"dim\": 2,\n \"entries\": [[1, 0],\n}").unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
    }

    #[test]
    fn round_trip_preserves_entries() {
        let m = ComplexMatrix::<f64>::from_fn(3, 3, |j, k| Complex::new(j as f64 * 0.1, k as f64 / 3.0));
        let file = MatrixFile::from_matrix(&m, None);
        let text = crate::json::to_json_string(&file);
        assert_eq!(MatrixFile::parse(&text).unwrap().to_matrix::<f64>().unwrap(), m);
    }
}
