use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Square real matrix. Complex and quaternionic matrices are stored through
/// their real embeddings (see [`super::embed`]).
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix(DMatrix<f64>);

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        RealMatrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        RealMatrix(DMatrix::identity(dim, dim))
    }

    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Dimension { left: m.nrows(), right: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::Param("matrix dimension must be at least 1".into()));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::Param("matrix entries must be finite".into()));
        }
        Ok(RealMatrix(m))
    }

    /// Builds a `dim x dim` matrix from 1-based `(row, col, value)` entries.
    /// Repeated positions accumulate.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        for &(r, c, v) in entries {
            m[(r - 1, c - 1)] += v;
        }
        RealMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn transpose(&self) -> Self {
        RealMatrix(self.0.transpose())
    }

    pub fn scaled(&self, s: f64) -> Self {
        RealMatrix(&self.0 * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(RealMatrix(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(RealMatrix(&self.0 - &other.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(RealMatrix(&self.0 * &other.0))
    }

    /// Frobenius pairing `tr(X Y^t)`.
    pub fn frobenius_dot(&self, other: &Self) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Cartan involution of every realization used here: `X -> -X^t`.
    pub fn cartan_involution(&self) -> Self {
        RealMatrix(-self.0.transpose())
    }

    /// Kronecker product `self ⊗ block`; entry `(a, b)` of `self` becomes the
    /// block at rows `a*d..(a+1)*d`.
    pub fn kron(&self, block: &RealMatrix) -> RealMatrix {
        RealMatrix(self.0.kronecker(&block.0))
    }

    /// Column-major flattening, the coordinate vector used for expansions.
    pub fn flatten(&self) -> DVector<f64> {
        DVector::from_column_slice(self.0.as_slice())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }
}

/// Matrix commutator `XY - YX`.
pub fn bracket(x: &RealMatrix, y: &RealMatrix) -> Result<RealMatrix> {
    x.check_dim(y)?;
    Ok(RealMatrix(&x.0 * &y.0 - &y.0 * &x.0))
}

/// Skew elementary matrix: `+1` at `(i, j)`, `-1` at `(j, i)` (1-based).
pub fn skew_unit(dim: usize, i: usize, j: usize) -> RealMatrix {
    RealMatrix::from_entries(dim, &[(i, j, 1.0), (j, i, -1.0)])
}

/// Symmetric elementary matrix: `+1` at `(i, j)` and `(j, i)` (1-based).
pub fn sym_unit(dim: usize, i: usize, j: usize) -> RealMatrix {
    RealMatrix::from_entries(dim, &[(i, j, 1.0), (j, i, 1.0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_skew_units() {
        let e12 = skew_unit(3, 1, 2);
        let e23 = skew_unit(3, 2, 3);
        let b = bracket(&e12, &e23).unwrap();
        assert_eq!(b, skew_unit(3, 1, 3));
    }

    #[test]
    fn self_bracket_vanishes() {
        let x = RealMatrix::from_entries(4, &[(1, 2, 0.3), (3, 1, -2.0), (4, 4, 1.5)]);
        assert_eq!(bracket(&x, &x).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = bracket(&RealMatrix::identity(2), &RealMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::Dimension { left: 2, right: 3 }));
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = f64::NAN;
        assert!(RealMatrix::from_dmatrix(m).is_err());
    }
}
