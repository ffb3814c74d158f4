use nalgebra::{DMatrix, DVector};

use super::matrix::{bracket, RealMatrix};
use super::structure::BasisSet;
use crate::error::{Error, Result};

/// Bilinear form used by [`gram_matrix`]. For the ambient forms the first
/// `a_block` basis vectors span a and are weighted by 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearForm {
    DeclaredOrthonormal,
    /// `-tr(X σY) = tr(X Y^t)`.
    AmbientTrace { a_block: usize },
    /// `B_σ(X, Y) = -B(X, σY)` with `B` the Killing form of the Lie algebra
    /// generated by the basis and its image under σ.
    AmbientKillingWeighted { a_block: usize },
}

pub fn gram_matrix(basis: &BasisSet, form: BilinearForm) -> Result<DMatrix<f64>> {
    let n = basis.len();
    let els = basis.elements();
    let (raw, a_block) = match form {
        BilinearForm::DeclaredOrthonormal => return Ok(DMatrix::identity(n, n)),
        BilinearForm::AmbientTrace { a_block } => (DMatrix::from_fn(n, n, |i, j| els[i].frobenius_dot(&els[j])), a_block),
        BilinearForm::AmbientKillingWeighted { a_block } => {
            let killing = AmbientKilling::new(els)?;
            let ad: Vec<DMatrix<f64>> = els.iter().map(|x| killing.ad(x)).collect::<Result<_>>()?;
            let ad_sigma: Vec<DMatrix<f64>> = els.iter().map(|x| killing.ad(&x.cartan_involution())).collect::<Result<_>>()?;
            (DMatrix::from_fn(n, n, |i, j| -trace_of_product(&ad[i], &ad_sigma[j])), a_block)
        }
    };
    if a_block > n {
        return Err(Error::Dimension { left: a_block, right: n });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let w = if i < a_block && j < a_block { 2.0 } else { 1.0 };
        w * raw[(i, j)]
    }))
}

fn trace_of_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    // tr(AB) = Σ_ij A_ij B_ji
    a.iter().zip(b.transpose().iter()).map(|(x, y)| x * y).sum()
}

/// Killing form of the real Lie algebra `g` generated by a set of matrices
/// and their σ-images, through a Frobenius-orthonormal basis of `g`.
pub struct AmbientKilling {
    basis: Vec<RealMatrix>,
}

impl AmbientKilling {
    pub fn new(generators: &[RealMatrix]) -> Result<Self> {
        let mut on: Vec<RealMatrix> = Vec::new();
        let mut flat: Vec<DVector<f64>> = Vec::new();
        let scale = generators.iter().map(|g| g.as_dmatrix().norm()).fold(0.0, f64::max).max(1.0);
        let add = |m: RealMatrix, on: &mut Vec<RealMatrix>, flat: &mut Vec<DVector<f64>>| -> bool {
            let mut v = m.flatten();
            // two passes of modified Gram–Schmidt for stability
            for _ in 0..2 {
                for f in flat.iter() {
                    let c = f.dot(&v);
                    v.axpy(-c, f, 1.0);
                }
            }
            let norm = v.norm();
            if norm <= 1e-9 * scale.max(m.as_dmatrix().norm()) {
                return false;
            }
            v /= norm;
            let dim = m.dim();
            on.push(RealMatrix::from_dmatrix(DMatrix::from_column_slice(dim, dim, v.as_slice())).expect("finite"));
            flat.push(v);
            true
        };
        for g in generators {
            add(g.clone(), &mut on, &mut flat);
            add(g.cartan_involution(), &mut on, &mut flat);
        }
        let mut done = 0;
        loop {
            let start = on.len();
            for i in 0..start {
                for j in (i + 1).max(done)..start {
                    let b = bracket(&on[i], &on[j])?;
                    add(b, &mut on, &mut flat);
                }
            }
            if on.len() == start {
                break;
            }
            done = start;
        }
        Ok(AmbientKilling { basis: on })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `ad X` on `g` in the orthonormal basis.
    pub fn ad(&self, x: &RealMatrix) -> Result<DMatrix<f64>> {
        let d = self.basis.len();
        let mut m = DMatrix::zeros(d, d);
        for (b, e) in self.basis.iter().enumerate() {
            let img = bracket(x, e)?;
            for (a, f) in self.basis.iter().enumerate() {
                m[(a, b)] = f.frobenius_dot(&img);
            }
        }
        Ok(m)
    }

    pub fn killing(&self, x: &RealMatrix, y: &RealMatrix) -> Result<f64> {
        Ok(trace_of_product(&self.ad(x)?, &self.ad(y)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::skew_unit;

    #[test]
    fn declared_orthonormal_is_identity() {
        let b = BasisSet::unlabeled(vec![skew_unit(3, 1, 2), skew_unit(3, 2, 3)]).unwrap();
        assert_eq!(gram_matrix(&b, BilinearForm::DeclaredOrthonormal).unwrap(), DMatrix::identity(2, 2));
    }

    #[test]
    fn so3_closure_and_killing() {
        let k = AmbientKilling::new(&[skew_unit(3, 1, 2), skew_unit(3, 2, 3)]).unwrap();
        assert_eq!(k.dim(), 3);
        // Killing form of so(3) is tr(ad X ad Y) = (3-2) tr(XY)
        let x = skew_unit(3, 1, 2);
        let b = k.killing(&x, &x).unwrap();
        assert!((b - x.mul(&x).unwrap().as_dmatrix().trace()).abs() < 1e-12);
    }

    #[test]
    fn sl2_killing_is_four_times_trace() {
        let h = RealMatrix::from_entries(2, &[(1, 1, 1.0), (2, 2, -1.0)]);
        let e = RealMatrix::from_entries(2, &[(1, 2, 1.0)]);
        let k = AmbientKilling::new(&[h.clone(), e]).unwrap();
        assert_eq!(k.dim(), 3);
        assert!((k.killing(&h, &h).unwrap() - 8.0).abs() < 1e-12);
    }
}
