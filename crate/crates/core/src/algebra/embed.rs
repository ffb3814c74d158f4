//! Real embeddings of complex and quaternionic scalars and matrices.
//!
//! A matrix with entries in ℂ (resp. ℍ) is stored as the real matrix whose
//! `(a, b)` block of size 2 (resp. 4) is the left-multiplication matrix of
//! the entry. Both embeddings are ring homomorphisms and send conjugation to
//! transposition, so conjugate-transpose becomes plain transpose.

use std::ops::Mul;

use nalgebra::DMatrix;

use super::matrix::RealMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: Quaternion) -> Quaternion {
        let l = self;
        Quaternion::new(
            l.w * r.w - l.x * r.x - l.y * r.y - l.z * r.z,
            l.w * r.x + l.x * r.w + l.y * r.z - l.z * r.y,
            l.w * r.y - l.x * r.z + l.y * r.w + l.z * r.x,
            l.w * r.z + l.x * r.y - l.y * r.x + l.z * r.w,
        )
    }
}

/// Left multiplication by `q` on ℍ ≅ ℝ⁴ in the basis (1, i, j, k).
pub fn embed_quaternion(q: Quaternion) -> RealMatrix {
    let Quaternion { w: a, x: b, y: c, z: d } = q;
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        a, -b, -c, -d,
        b,  a, -d,  c,
        c,  d,  a, -b,
        d, -c,  b,  a,
    ]);
    RealMatrix::from_dmatrix(m).expect("finite 4x4")
}

/// Image of `q` placed in block `(row, col)` (1-based) of the real embedding
/// of a `size x size` quaternionic matrix.
pub fn embed_quaternion_at(q: Quaternion, row: usize, col: usize, size: usize) -> RealMatrix {
    let mut pattern = DMatrix::zeros(size, size);
    pattern[(row - 1, col - 1)] = 1.0;
    RealMatrix::from_dmatrix(pattern).expect("square").kron(&embed_quaternion(q))
}

/// `x + iy` as the 2x2 block `[[x, -y], [y, x]]`.
pub fn embed_complex(re: f64, im: f64) -> RealMatrix {
    RealMatrix::from_dmatrix(DMatrix::from_row_slice(2, 2, &[re, -im, im, re])).expect("finite 2x2")
}

/// Scalar field of a classical family, with the real unit blocks spanning it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    Real,
    Complex,
    Quaternion,
}

/// One basis unit of a scalar field: the suffix used in generator names
/// (`""` for 1) and its real block.
#[derive(Debug, Clone)]
pub struct ScalarUnit {
    pub suffix: &'static str,
    pub block: RealMatrix,
    pub imaginary: bool,
}

impl ScalarField {
    pub fn block_dim(self) -> usize {
        match self {
            ScalarField::Real => 1,
            ScalarField::Complex => 2,
            ScalarField::Quaternion => 4,
        }
    }

    /// Units `1, i` (ℂ) or `1, i, j, k` (ℍ). The single complex imaginary unit
    /// carries an empty suffix since it is never ambiguous.
    pub fn units(self) -> Vec<ScalarUnit> {
        let unit = |suffix, block, imaginary| ScalarUnit { suffix, block, imaginary };
        match self {
            ScalarField::Real => vec![unit("", RealMatrix::identity(1), false)],
            ScalarField::Complex => vec![
                unit("", embed_complex(1.0, 0.0), false),
                unit("", embed_complex(0.0, 1.0), true),
            ],
            ScalarField::Quaternion => vec![
                unit("", embed_quaternion(Quaternion::ONE), false),
                unit("i", embed_quaternion(Quaternion::I), true),
                unit("j", embed_quaternion(Quaternion::J), true),
                unit("k", embed_quaternion(Quaternion::K), true),
            ],
        }
    }
}

/// Complex matrix accumulated as separate real and imaginary parts, then
/// embedded as a real matrix of twice the size.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    re: DMatrix<f64>,
    im: DMatrix<f64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { re: DMatrix::zeros(dim, dim), im: DMatrix::zeros(dim, dim) }
    }

    /// Adds `(re + i im)` times the skew unit `E_ij` (1-based).
    pub fn add_skew(&mut self, i: usize, j: usize, re: f64, im: f64) -> &mut Self {
        self.add_unit(i, j, re, im);
        self.add_unit(j, i, -re, -im)
    }

    /// Adds `(re + i im)` at the single position `(i, j)` (1-based).
    pub fn add_unit(&mut self, i: usize, j: usize, re: f64, im: f64) -> &mut Self {
        self.re[(i - 1, j - 1)] += re;
        self.im[(i - 1, j - 1)] += im;
        self
    }

    pub fn scale(&mut self, s: f64) -> &mut Self {
        self.re *= s;
        self.im *= s;
        self
    }

    pub fn embed(&self) -> RealMatrix {
        let re = RealMatrix::from_dmatrix(self.re.clone()).expect("square");
        let im = RealMatrix::from_dmatrix(self.im.clone()).expect("square");
        re.kron(&embed_complex(1.0, 0.0))
            .add(&im.kron(&embed_complex(0.0, 1.0)))
            .expect("same size")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units() -> [(Quaternion, &'static str); 4] {
        [(Quaternion::ONE, "1"), (Quaternion::I, "i"), (Quaternion::J, "j"), (Quaternion::K, "k")]
    }

    #[test]
    fn identity_block() {
        assert_eq!(embed_quaternion(Quaternion::ONE), RealMatrix::identity(4));
        assert_eq!(embed_complex(1.0, 0.0), RealMatrix::identity(2));
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        for q in [Quaternion::I, Quaternion::J, Quaternion::K] {
            let e = embed_quaternion(q);
            assert_eq!(e.mul(&e).unwrap(), RealMatrix::identity(4).scaled(-1.0));
        }
        let i = embed_complex(0.0, 1.0);
        assert_eq!(i.mul(&i).unwrap(), RealMatrix::identity(2).scaled(-1.0));
    }

    #[test]
    fn ij_is_k() {
        let ij = embed_quaternion(Quaternion::I).mul(&embed_quaternion(Quaternion::J)).unwrap();
        assert_eq!(ij, embed_quaternion(Quaternion::K));
    }

    // Hamilton's table written out independently of `Mul`.
    #[test]
    fn multiplication_table_is_preserved_exactly() {
        let table: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let u = units();
        for (a, row) in table.iter().enumerate() {
            for (b, &(sign, c)) in row.iter().enumerate() {
                let lhs = embed_quaternion(u[a].0).mul(&embed_quaternion(u[b].0)).unwrap();
                let rhs = embed_quaternion(u[c].0).scaled(sign);
                assert_eq!(lhs, rhs, "{} * {}", u[a].1, u[b].1);
                let prod = u[a].0 * u[b].0;
                assert_eq!(embed_quaternion(prod), rhs);
            }
        }
    }

    #[test]
    fn conjugation_is_transpose() {
        let q = Quaternion::new(0.3, -1.2, 0.7, 2.0);
        assert_eq!(embed_quaternion(q.conj()), embed_quaternion(q).transpose());
    }

    #[test]
    fn block_placement() {
        let m = embed_quaternion_at(Quaternion::J, 2, 1, 3);
        assert_eq!(m.dim(), 12);
        assert_eq!(m.get(4 + 2, 0), 1.0);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn complex_matrix_embedding_is_multiplicative() {
        let mut a = ComplexMatrix::zeros(2);
        a.add_unit(1, 2, 1.0, 2.0).add_unit(2, 2, 0.0, -1.0);
        let mut b = ComplexMatrix::zeros(2);
        b.add_unit(2, 1, 3.0, 1.0);
        // (a b)_{11} = (1+2i)(3+i) = 1 + 7i ; (a b)_{21} = (-i)(3+i) = 1 - 3i
        let mut ab = ComplexMatrix::zeros(2);
        ab.add_unit(1, 1, 1.0, 7.0).add_unit(2, 1, 1.0, -3.0);
        assert_eq!(a.embed().mul(&b.embed()).unwrap(), ab.embed());
    }
}
