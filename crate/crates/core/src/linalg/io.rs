use serde::{Deserialize, Serialize};

use super::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::num::Real;

/// On-disk matrix format: `{"n": 2, "data": [[1.0, 0.5], [0.5, 2.0]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub data: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn to_matrix<T: Real>(&self) -> Result<SymmetricMatrix<T>> {
        if self.data.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, self.data.len()));
        }
        let rows: Vec<Vec<T>> = self.data.iter().map(|r| r.iter().map(|&x| T::lit(x)).collect()).collect();
        SymmetricMatrix::from_rows(&rows)
    }

    pub fn from_matrix<T: Real>(m: &SymmetricMatrix<T>) -> Self {
        MatrixFile {
            n: m.n(),
            data: m.rows().into_iter().map(|r| r.into_iter().map(|x| x.to_f64_lossy()).collect()).collect(),
        }
    }
}

impl<T: Real> Serialize for SymmetricMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile::from_matrix(self).serialize(s)
    }
}

impl<T: Real> SymmetricMatrix<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Argument(format!("malformed matrix file: {e}")))?;
        f.to_matrix()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile::from_matrix(self)).expect("matrix serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let m = SymmetricMatrix::from_rows(&[vec![0.1, 1.0 / 3.0], vec![1.0 / 3.0, 0.1f64.exp()]]).unwrap();
        let back = SymmetricMatrix::<f64>::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(SymmetricMatrix::<f64>::from_json(r#"{"n":2,"data":[[1,2],[3,4]]}"#).is_err());
        assert!(SymmetricMatrix::<f64>::from_json(r#"{"n":3,"data":[[1,0],[0,1]]}"#).is_err());
        assert!(SymmetricMatrix::<f64>::from_json(r#"{"n":2}"#).is_err());
        assert!(SymmetricMatrix::<f64>::from_json(r#"{"n":1,"data":[[5]]}"#).is_ok());
    }
}
