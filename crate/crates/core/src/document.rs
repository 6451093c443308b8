//! JSON wire format for matrices: separate real and imaginary row arrays.
//!
//! ```json
//! { "kind": "siegel_point", "n": 1, "re": [[0.0]], "im": [[1.0]] }
//! ```
//!
//! `n` is the block dimension: symplectic documents are 2n×2n, the other
//! kinds are n×n. Floats are written in shortest round-trip form and parsed
//! with exact rounding, so a document re-parses to a bit-identical matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    Matrix,
    SiegelPoint,
    Symplectic,
}

impl DocumentKind {
    fn side(self, n: usize) -> usize {
        match self {
            DocumentKind::Symplectic => 2 * n,
            _ => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub kind: DocumentKind,
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl MatrixDocument {
    pub fn from_matrix(kind: DocumentKind, m: &ComplexMatrix) -> Result<Self> {
        let side = m.square_dim()?;
        let n = match kind {
            DocumentKind::Symplectic if side % 2 != 0 => return Err(Error::OddDimension { size: side }),
            DocumentKind::Symplectic => side / 2,
            _ => side,
        };
        let rows = |f: fn(num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..side).map(|i| (0..side).map(|j| f(m.get(i, j))).collect()).collect()
        };
        Ok(Self {
            kind,
            n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(doc_err("n must be positive"));
        }
        let side = self.kind.side(self.n);
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != side {
                return Err(doc_err(format!("{name} has {} rows, expected {side}", part.len())));
            }
            for (i, row) in part.iter().enumerate() {
                if row.len() != side {
                    return Err(doc_err(format!(
                        "{name} row {i} has {} entries, expected {side}",
                        row.len()
                    )));
                }
                if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                    return Err(doc_err(format!("{name}[{i}][{j}] is not finite")));
                }
            }
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        let side = self.kind.side(self.n);
        let re: Vec<f64> = self.re.iter().flatten().copied().collect();
        let im: Vec<f64> = self.im.iter().flatten().copied().collect();
        ComplexMatrix::from_parts(side, side, &re, &im)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents hold only finite floats")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn parses_and_validates() {
        let doc = MatrixDocument::from_json(r#"{"kind":"siegel_point","n":1,"re":[[0.0]],"im":[[1.0]]}"#).unwrap();
        assert_eq!(doc.to_matrix().unwrap().get(0, 0), Complex64::new(0.0, 1.0));

        let err = MatrixDocument::from_json(r#"{"kind":"symplectic","n":1,"re":[[1.0]],"im":[[0.0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Document(_)));
        let err = MatrixDocument::from_json(r#"{"kind":"matrix","n":2,"re":[[1,0],[0,1]],"im":[[0,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Document(_)));
        assert!(MatrixDocument::from_json("{not json").is_err());
        assert!(MatrixDocument::from_json(r#"{"kind":"tensor","n":1,"re":[[1]],"im":[[0]]}"#).is_err());
    }

    #[test]
    fn symplectic_documents_carry_block_dimension() {
        let m = ComplexMatrix::identity(4);
        let doc = MatrixDocument::from_matrix(DocumentKind::Symplectic, &m).unwrap();
        assert_eq!(doc.n, 2);
        assert_eq!(doc.re.len(), 4);
        assert_eq!(doc.to_matrix().unwrap(), m);
        assert!(MatrixDocument::from_matrix(DocumentKind::Symplectic, &ComplexMatrix::identity(3)).is_err());
    }
}
