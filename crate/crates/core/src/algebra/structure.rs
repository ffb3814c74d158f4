use std::collections::HashSet;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};

use super::matrix::{bracket, RealMatrix};
use crate::error::{Error, Result};

/// Closure residual allowed when expanding a bracket in a basis, relative to
/// the size of the bracket.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Entries below this (relative to the largest constant) are stored as exact zero.
const CHOP: f64 = 1e-13;

/// Ordered, labeled list of matrices of a common size.
#[derive(Debug, Clone)]
pub struct BasisSet {
    elements: Vec<RealMatrix>,
    labels: Vec<String>,
}

impl BasisSet {
    pub fn new(elements: Vec<RealMatrix>, labels: Vec<String>) -> Result<Self> {
        if elements.len() != labels.len() {
            return Err(Error::Dimension { left: elements.len(), right: labels.len() });
        }
        if let Some(first) = elements.first() {
            for e in &elements {
                if e.dim() != first.dim() {
                    return Err(Error::Dimension { left: first.dim(), right: e.dim() });
                }
            }
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Param(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(BasisSet { elements, labels })
    }

    /// Basis with generated labels `x0, x1, ...`.
    pub fn unlabeled(elements: Vec<RealMatrix>) -> Result<Self> {
        let labels = (0..elements.len()).map(|i| format!("x{i}")).collect();
        Self::new(elements, labels)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RealMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ambient_dim(&self) -> usize {
        self.elements.first().map_or(0, RealMatrix::dim)
    }
}

/// Structure constants `[X_i, X_j] = Σ_k c[i][j][k] X_k`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor {
    n: usize,
    data: Vec<f64>,
}

impl StructureTensor {
    pub fn zeros(n: usize) -> Self {
        StructureTensor { n, data: vec![0.0; n * n * n] }
    }

    /// Builds from `(i, j, k, value)` entries with `i != j`; the `(j, i, k)`
    /// entry is set to `-value`. Entries with `i == j` are rejected.
    pub fn from_triples(n: usize, triples: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut t = Self::zeros(n);
        for &(i, j, k, v) in triples {
            if i >= n || j >= n || k >= n {
                return Err(Error::Parse(format!("structure index ({i}, {j}, {k}) out of range for dimension {n}")));
            }
            if i == j {
                if v != 0.0 {
                    return Err(Error::Parse(format!("nonzero self-bracket entry ({i}, {i}, {k})")));
                }
                continue;
            }
            t.set_antisymmetric(i, j, k, v);
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    /// Sets `c[i][j][k] = v` and `c[j][i][k] = -v`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let n = self.n;
        self.data[(i * n + j) * n + k] = v;
        self.data[(j * n + i) * n + k] = -v;
    }

    /// `c[i][j][·]` as a slice.
    pub fn bracket_of_basis(&self, i: usize, j: usize) -> &[f64] {
        let start = (i * self.n + j) * self.n;
        &self.data[start..start + self.n]
    }

    /// `[x, y]` for coordinate vectors in this basis.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                let s = xi * yj;
                for (o, c) in out.iter_mut().zip(self.bracket_of_basis(i, j)) {
                    *o += s * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(X_i)`: column `j` holds the coordinates of `[X_i, X_j]`.
    pub fn ad(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |k, j| self.get(i, j, k))
    }

    /// Matrix of `ad(x)` for a coordinate vector `x`.
    pub fn ad_of(&self, x: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0.0 {
                m += self.ad(i) * xi;
            }
        }
        m
    }

    /// Largest `|c[i][j][k] + c[j][i][k]|`; zero for every tensor built here.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.get(i, j, k) + self.get(j, i, k)).abs());
                }
            }
        }
        worst
    }

    /// Largest component of `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]`
    /// over `i < j < k`.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        let mut acc = vec![0.0; n];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    acc.iter_mut().for_each(|a| *a = 0.0);
                    for m in 0..n {
                        let a = self.get(i, j, m);
                        let b = self.get(j, k, m);
                        let c = self.get(k, i, m);
                        if a == 0.0 && b == 0.0 && c == 0.0 {
                            continue;
                        }
                        for (l, out) in acc.iter_mut().enumerate() {
                            *out += a * self.get(m, k, l) + b * self.get(m, i, l) + c * self.get(m, j, l);
                        }
                    }
                    worst = acc.iter().fold(worst, |w, x| w.max(x.abs()));
                }
            }
        }
        worst
    }

    /// Nonzero entries with `i < j`, in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize, f64)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// `c'[i][j][k] = s(i,j,k) c[i][j][k]` for an arbitrary entry map.
    pub fn map_entries(&self, mut f: impl FnMut(usize, usize, usize, f64) -> f64) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if v != 0.0 {
                        out.data[(i * n + j) * n + k] = f(i, j, k, v);
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).fold(0.0, |w, (a, b)| w.max((a - b).abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |w, x| w.max(x.abs()))
    }

    /// CSV with header `i,j,k,value`, one row per entry of [`Self::triples`].
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,k,value\n");
        for (i, j, k, v) in self.triples() {
            let _ = writeln!(s, "{i},{j},{k},{}", crate::format::fmt12(v));
        }
        s
    }

    /// Zeroes entries smaller than `CHOP` times the largest entry, keeping
    /// antisymmetry exact.
    pub(crate) fn chopped(mut self) -> Self {
        let scale = self.max_abs().max(1.0);
        for v in &mut self.data {
            if v.abs() < CHOP * scale {
                *v = 0.0;
            }
        }
        self
    }
}

/// Structure constants in the basis `e'_p = Σ_i v[p][i] e_i`, where the rows
/// of `v` are orthonormal. The span of the rows must be a subalgebra; the
/// second value is the largest component of a bracket outside the span.
pub fn change_basis(t: &StructureTensor, v: &DMatrix<f64>) -> (StructureTensor, f64) {
    let n = t.dim();
    let k = v.nrows();
    assert_eq!(v.ncols(), n, "basis change has the wrong width");
    let mut out = StructureTensor::zeros(k);
    let mut residual: f64 = 0.0;
    let rows: Vec<Vec<f64>> = (0..k).map(|p| v.row(p).iter().copied().collect()).collect();
    for p in 0..k {
        for q in p + 1..k {
            let b = t.bracket(&rows[p], &rows[q]);
            let coords: Vec<f64> = rows.iter().map(|r| r.iter().zip(&b).map(|(x, y)| x * y).sum()).collect();
            let mut rest = b.clone();
            for (r, &c) in rows.iter().zip(&coords) {
                for (x, y) in rest.iter_mut().zip(r) {
                    *x -= c * y;
                }
            }
            residual = rest.iter().fold(residual, |w, x| w.max(x.abs()));
            for (r, &c) in coords.iter().enumerate() {
                out.set_antisymmetric(p, q, r, c);
            }
        }
    }
    (out.chopped(), residual)
}

/// Coordinates of matrices in a fixed basis by least squares (QR).
pub(crate) struct Expander {
    basis: DMatrix<f64>,
    qr: nalgebra::linalg::QR<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl Expander {
    pub fn new(elements: &[RealMatrix]) -> Result<Self> {
        let cols: Vec<DVector<f64>> = elements.iter().map(RealMatrix::flatten).collect();
        let basis = DMatrix::from_columns(&cols);
        let qr = basis.clone().qr();
        let r = qr.r();
        let scale = r.diagonal().amax().max(f64::MIN_POSITIVE);
        if r.diagonal().iter().any(|d| d.abs() < 1e-10 * scale) {
            return Err(Error::Param("basis elements are not linearly independent".into()));
        }
        Ok(Expander { basis, qr })
    }

    /// Least-squares coordinates of `m` and the relative residual norm.
    pub fn expand(&self, m: &RealMatrix) -> (DVector<f64>, f64) {
        let v = m.flatten();
        let qtv = self.qr.q().transpose() * &v;
        let coeffs = self.qr.r().solve_upper_triangular(&qtv).expect("independent basis");
        let residual = (&v - &self.basis * &coeffs).norm();
        (coeffs, residual / v.norm().max(1.0))
    }
}

/// Structure constants of the span of `basis`, which must be closed under
/// the commutator.
pub fn extract_structure_constants(basis: &BasisSet) -> Result<StructureTensor> {
    let n = basis.len();
    let els = basis.elements();
    let expander = Expander::new(els)?;
    let mut t = StructureTensor::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let b = bracket(&els[i], &els[j])?;
            if b.max_abs() == 0.0 {
                continue;
            }
            let (coeffs, residual) = expander.expand(&b);
            if residual > CLOSURE_TOL {
                return Err(Error::NotClosed { i, j, residual });
            }
            for (k, &v) in coeffs.iter().enumerate() {
                t.set_antisymmetric(i, j, k, v);
            }
        }
    }
    Ok(t.chopped())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::skew_unit;

    fn so3() -> BasisSet {
        BasisSet::unlabeled(vec![skew_unit(3, 1, 2), skew_unit(3, 2, 3), skew_unit(3, 1, 3)]).unwrap()
    }

    #[test]
    fn abelian_basis_gives_zero_tensor() {
        let diag = |k: usize| RealMatrix::from_entries(3, &[(k, k, 1.0)]);
        let basis = BasisSet::unlabeled(vec![diag(1), diag(2), diag(3)]).unwrap();
        let t = extract_structure_constants(&basis).unwrap();
        assert_eq!(t.max_abs(), 0.0);
        assert!(t.triples().is_empty());
    }

    #[test]
    fn so3_is_closed_and_satisfies_jacobi() {
        let t = extract_structure_constants(&so3()).unwrap();
        // [E12, E23] = E13
        assert!((t.get(0, 1, 2) - 1.0).abs() < 1e-14);
        assert_eq!(t.antisymmetry_defect(), 0.0);
        assert!(t.jacobi_defect() < 1e-14);
    }

    #[test]
    fn missing_element_is_not_closed() {
        let basis = BasisSet::unlabeled(vec![skew_unit(3, 1, 2), skew_unit(3, 2, 3)]).unwrap();
        match extract_structure_constants(&basis) {
            Err(Error::NotClosed { i: 0, j: 1, residual }) => assert!(residual > 0.1),
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let e = skew_unit(3, 1, 2);
        let basis = BasisSet::unlabeled(vec![e.clone(), e.scaled(2.0)]).unwrap();
        assert!(matches!(extract_structure_constants(&basis), Err(Error::Param(_))));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let e = skew_unit(3, 1, 2);
        assert!(BasisSet::new(vec![e.clone(), e], vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn triples_round_trip() {
        let t = extract_structure_constants(&so3()).unwrap();
        let back = StructureTensor::from_triples(3, &t.triples()).unwrap();
        assert_eq!(back, t);
    }
}
