use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::algebra::structure::change_basis;
use crate::error::{Error, Result};
use crate::solv::{MetricSolvLieAlgebra, Step};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct AdaptedReport {
    /// Each n-vector is a joint eigenvector of ad(a) (with eigenvalue α(A)
    /// when root data is present).
    pub root_vectors: bool,
    /// Each bracket of two n-vectors is a multiple of a single basis vector.
    pub single_term: bool,
    /// `⟨[X,Y],[X,U]⟩ = 0` for `Y ≠ U`.
    pub orthogonality: bool,
    pub violations: Vec<String>,
}

impl AdaptedReport {
    pub fn passed(&self) -> bool {
        self.root_vectors && self.single_term && self.orthogonality
    }
}

pub fn verify_adapted(s: &MetricSolvLieAlgebra) -> AdaptedReport {
    let t = s.structure();
    let labels = s.labels();
    let mut violations = Vec::new();

    let mut root_vectors = true;
    for p in s.a_range() {
        for i in s.n_range() {
            for k in 0..s.dim() {
                let v = t.get(p, i, k);
                let expected = if k == i { expected_eigenvalue(s, p, i) } else { Some(0.0) };
                let bad = match expected {
                    Some(e) => (v - e).abs() > TOL,
                    None => false,
                };
                if bad {
                    root_vectors = false;
                    violations.push(format!("[{}, {}] has component {v:.3e} on {}", labels[p], labels[i], labels[k]));
                }
            }
        }
    }

    let mut single_term = true;
    for i in s.n_range() {
        for j in s.n_range().filter(|&j| j > i) {
            let nz = t.bracket_of_basis(i, j).iter().filter(|v| v.abs() > TOL).count();
            if nz > 1 {
                single_term = false;
                violations.push(format!("[{}, {}] has {nz} components", labels[i], labels[j]));
            }
        }
    }

    let mut orthogonality = true;
    for x in s.n_range() {
        for y in s.n_range() {
            for u in s.n_range().filter(|&u| u > y) {
                let d: f64 = t.bracket_of_basis(x, y).iter().zip(t.bracket_of_basis(x, u)).map(|(a, b)| a * b).sum();
                if d.abs() > TOL {
                    orthogonality = false;
                    violations.push(format!("<[{0}, {1}], [{0}, {2}]> = {d:.3e}", labels[x], labels[y], labels[u]));
                }
            }
        }
    }

    AdaptedReport { root_vectors, single_term, orthogonality, violations }
}

/// `α(A_p)` for the root of n-vector `i`.
fn expected_eigenvalue(s: &MetricSolvLieAlgebra, p: usize, i: usize) -> Option<f64> {
    let rd = s.root_data()?;
    Some(s.root_of(i)?.eval(&rd.a_omega[p]))
}

#[derive(Debug, Clone, Serialize)]
pub struct IwasawaReport {
    pub abelian: bool,
    pub symmetric: bool,
    pub injective: bool,
    pub positive: bool,
    /// `[n, n] ⊂ n`.
    pub nilradical_closed: bool,
    /// Coordinates (over the a-basis) of an element with ad positive on n.
    pub a0: Option<Vec<f64>>,
    /// Smallest eigenvalue of ad(A_0)|_n for the reported A_0.
    pub min_eigenvalue: Option<f64>,
    pub violations: Vec<String>,
}

impl IwasawaReport {
    pub fn passed(&self) -> bool {
        self.abelian && self.symmetric && self.injective && self.positive && self.nilradical_closed
    }

    /// Conditions (i)-(iii) plus closure of n, which the curvature formulas rely on.
    pub fn structural(&self) -> bool {
        self.abelian && self.symmetric && self.injective && self.nilradical_closed
    }
}

pub fn verify_iwasawa(s: &MetricSolvLieAlgebra) -> IwasawaReport {
    let t = s.structure();
    let labels = s.labels();
    let mut violations = Vec::new();

    let mut abelian = true;
    for p in s.a_range() {
        for q in s.a_range().filter(|&q| q > p) {
            if t.bracket_of_basis(p, q).iter().any(|v| v.abs() > TOL) {
                abelian = false;
                violations.push(format!("[{}, {}] != 0", labels[p], labels[q]));
            }
        }
    }

    let mut symmetric = true;
    for p in s.a_range() {
        let ad = t.ad(p);
        let d = (&ad - ad.transpose()).amax();
        if d > TOL {
            symmetric = false;
            violations.push(format!("ad {} is not symmetric ({d:.3e})", labels[p]));
        }
    }

    let injective = if s.dim_a() == 0 {
        true
    } else {
        let cols: Vec<nalgebra::DVector<f64>> = s.a_range().map(|p| nalgebra::DVector::from_column_slice(t.ad(p).as_slice())).collect();
        let m = DMatrix::from_columns(&cols);
        let sv = m.singular_values();
        let ok = sv.iter().all(|&x| x > TOL);
        if !ok {
            violations.push("ad is not injective on a".into());
        }
        ok
    };

    let mut nilradical_closed = true;
    for i in s.n_range() {
        for j in s.n_range().filter(|&j| j > i) {
            if s.a_range().any(|p| t.get(i, j, p).abs() > TOL) {
                nilradical_closed = false;
                violations.push(format!("[{}, {}] has an a-component", labels[i], labels[j]));
            }
        }
    }

    let mut best: Option<(Vec<f64>, f64)> = None;
    for cand in a0_candidates(s) {
        if let Some(ev) = min_eigen_on_n(s, &cand) {
            if best.as_ref().is_none_or(|(_, b)| ev > *b) {
                best = Some((cand, ev));
            }
        }
    }
    let positive = best.as_ref().is_some_and(|(_, ev)| *ev > TOL);
    if !positive {
        violations.push(if s.dim_a() == 0 { "a = 0: no A_0 exists".to_string() } else { "no A_0 with ad(A_0)|_n positive definite found".to_string() });
    }
    let (a0, min_eigenvalue) = match best {
        Some((a, e)) => (Some(a), Some(e)),
        None => (None, None),
    };
    IwasawaReport { abelian, symmetric, injective, positive, nilradical_closed, a0, min_eigenvalue, violations }
}

/// Σ H^i over the a-part's sources (when root data exists) and the mean
/// curvature direction `tr ad A`.
fn a0_candidates(s: &MetricSolvLieAlgebra) -> Vec<Vec<f64>> {
    if s.dim_a() == 0 || s.dim_n() == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    if let Some(rd) = s.root_data() {
        let g = rd.system.omega_metric();
        let duals = rd.system.dual_basis();
        let mut h = vec![0.0; rd.system.omega_dim()];
        for &src in &rd.a_sources {
            for (x, y) in h.iter_mut().zip(&duals[src]) {
                *x += y;
            }
        }
        // orthonormal a-basis: coordinate p is <a_p, H>
        let coords: Vec<f64> = rd
            .a_omega
            .iter()
            .map(|a| {
                let mut acc = 0.0;
                for k in 0..a.len() {
                    for l in 0..h.len() {
                        acc += a[k] * g[(k, l)] * h[l];
                    }
                }
                acc
            })
            .collect();
        out.push(coords);
    }
    let t = s.structure();
    out.push(s.a_range().map(|p| t.ad(p).trace()).collect());
    out
}

fn min_eigen_on_n(s: &MetricSolvLieAlgebra, a: &[f64]) -> Option<f64> {
    if s.dim_n() == 0 {
        return None;
    }
    let mut x = vec![0.0; s.dim()];
    x[..a.len()].copy_from_slice(a);
    let ad = s.structure().ad_of(&x);
    let n0 = s.dim_a();
    let block = ad.view((n0, n0), (s.dim_n(), s.dim_n())).into_owned();
    let sym = (&block + block.transpose()) * 0.5;
    Some(SymmetricEigen::new(sym).eigenvalues.min())
}

/// The same algebra in a basis where two vectors `u`, `v` are replaced by
/// `cos θ u + sin θ v` and `-sin θ u + cos θ v`.
pub fn rotate_within_root(s: &MetricSolvLieAlgebra, u: &str, v: &str, angle: f64) -> Result<MetricSolvLieAlgebra> {
    let i = s.index_of(u)?;
    let j = s.index_of(v)?;
    if i == j {
        return Err(Error::Param("rotation needs two distinct basis vectors".into()));
    }
    let n = s.dim();
    let mut q = DMatrix::identity(n, n);
    let (c, sn) = (angle.cos(), angle.sin());
    q[(i, i)] = c;
    q[(i, j)] = sn;
    q[(j, i)] = -sn;
    q[(j, j)] = c;
    let (t, _) = change_basis(s.structure(), &q);
    Ok(s.with_structure(t, Step::Input))
}
