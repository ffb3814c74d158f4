//! Levi-Civita connection and curvature of a metric Lie algebra given in an
//! orthonormal basis by its structure constants.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::builders::verify_iwasawa;
use crate::error::{Error, Result};
use crate::roots::Family;
use crate::solv::MetricSolvLieAlgebra;
use crate::transforms::Attached;

/// Sectional curvatures above this count as positive.
pub const POSITIVE_K: f64 = 1e-9;

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `U(X, Y)`, defined by `⟨U(X,Y), Z⟩ = ½⟨[Z,X],Y⟩ + ½⟨[Z,Y],X⟩`.
pub fn u_form(s: &MetricSolvLieAlgebra, x: &[f64], y: &[f64]) -> Vec<f64> {
    let t = s.structure();
    let n = s.dim();
    let mut out = vec![0.0; n];
    for (k, o) in out.iter_mut().enumerate() {
        // ½ Σ_{j,l} c[k][j][l] (x_j y_l + y_j x_l)
        let mut acc = 0.0;
        for j in 0..n {
            let (xj, yj) = (x[j], y[j]);
            if xj == 0.0 && yj == 0.0 {
                continue;
            }
            for (l, &c) in t.bracket_of_basis(k, j).iter().enumerate() {
                if c != 0.0 {
                    acc += c * (xj * y[l] + yj * x[l]);
                }
            }
        }
        *o = 0.5 * acc;
    }
    out
}

/// `∇_X Y = ½[X,Y] + U(X,Y)`.
pub fn levi_civita(s: &MetricSolvLieAlgebra, x: &[f64], y: &[f64]) -> Vec<f64> {
    let b = s.structure().bracket(x, y);
    u_form(s, x, y).iter().zip(&b).map(|(u, b)| u + 0.5 * b).collect()
}

/// Orthonormal pair spanning the plane of `x`, `y` (Gram–Schmidt, `x` first).
pub fn orthonormal_pair(x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let nx = dot(x, x).sqrt();
    let ny = dot(y, y).sqrt();
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::DegeneratePlane(0.0));
    }
    let xu: Vec<f64> = x.iter().map(|v| v / nx).collect();
    let yu: Vec<f64> = y.iter().map(|v| v / ny).collect();
    let c = dot(&xu, &yu);
    let det = 1.0 - c * c;
    if det < 1e-12 {
        return Err(Error::DegeneratePlane(det));
    }
    let mut w: Vec<f64> = yu.iter().zip(&xu).map(|(b, a)| b - c * a).collect();
    let nw = dot(&w, &w).sqrt();
    w.iter_mut().for_each(|v| *v /= nw);
    Ok((xu, w))
}

/// Sectional curvature of the plane spanned by `x` and `y`:
/// `K = -¾|[X,Y]|² - ½⟨[X,[X,Y]],Y⟩ - ½⟨[Y,[Y,X]],X⟩ + |U(X,Y)|² - ⟨U(X,X),U(Y,Y)⟩`
/// for an orthonormal pair.
pub fn sectional(s: &MetricSolvLieAlgebra, x: &[f64], y: &[f64]) -> Result<f64> {
    let (x, y) = orthonormal_pair(x, y)?;
    Ok(sectional_orthonormal(s, &x, &y))
}

fn sectional_orthonormal(s: &MetricSolvLieAlgebra, x: &[f64], y: &[f64]) -> f64 {
    let t = s.structure();
    let xy = t.bracket(x, y);
    let yx: Vec<f64> = xy.iter().map(|v| -v).collect();
    let uxy = u_form(s, x, y);
    let uxx = u_form(s, x, x);
    let uyy = u_form(s, y, y);
    -0.75 * dot(&xy, &xy) - 0.5 * dot(&t.bracket(x, &xy), y) - 0.5 * dot(&t.bracket(y, &yx), x) + dot(&uxy, &uxy) - dot(&uxx, &uyy)
}

fn ad_matrices(s: &MetricSolvLieAlgebra) -> Vec<DMatrix<f64>> {
    (0..s.dim()).map(|i| s.structure().ad(i)).collect()
}

fn trace_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let mut acc = 0.0;
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Killing form of `s` itself: `B_ij = tr(ad X_i ∘ ad X_j)`.
pub fn killing_form_s(s: &MetricSolvLieAlgebra) -> DMatrix<f64> {
    let ad = ad_matrices(s);
    let n = s.dim();
    let mut b = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = trace_product(&ad[i], &ad[j]);
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
    }
    b
}

/// `H_0 = Σ_i U(X_i, X_i)`.
pub fn mean_curvature(s: &MetricSolvLieAlgebra) -> Vec<f64> {
    let n = s.dim();
    let mut h = vec![0.0; n];
    for i in 0..n {
        let e = s.unit(i);
        for (a, b) in h.iter_mut().zip(u_form(s, &e, &e)) {
            *a += b;
        }
    }
    h
}

/// `H_0` from `⟨H_0, A⟩ = tr(ad A|_n)` on the a-part (zero on n).
pub fn mean_curvature_from_traces(s: &MetricSolvLieAlgebra) -> Vec<f64> {
    let mut h = vec![0.0; s.dim()];
    for p in s.a_range() {
        let ad = s.structure().ad(p);
        h[p] = s.n_range().map(|i| ad[(i, i)]).sum();
    }
    h
}

/// Both `H_0` computations; disagreement beyond `1e-9` is an error.
pub fn mean_curvature_checked(s: &MetricSolvLieAlgebra) -> Result<Vec<f64>> {
    let a = mean_curvature(s);
    let b = mean_curvature_from_traces(s);
    let d = a.iter().zip(&b).fold(0.0f64, |w, (x, y)| w.max((x - y).abs()));
    if d > 1e-9 {
        return Err(Error::Internal(format!("mean curvature computations disagree by {d:.3e}")));
    }
    Ok(a)
}

/// Ricci tensor from the general formula for an orthonormal basis:
/// `ric(X,Y) = -½ Σ⟨[X,X_i],X_j⟩⟨[Y,X_i],X_j⟩ - ½B(X,Y)
///             + ¼ Σ⟨[X_i,X_j],X⟩⟨[X_i,X_j],Y⟩ - ⟨U(X,Y),H_0⟩`.
pub fn ricci_full(s: &MetricSolvLieAlgebra) -> DMatrix<f64> {
    let n = s.dim();
    let t = s.structure();
    // rows: c[i][·][·] flattened; columns of `down`: c[·][·][i]
    let rows = DMatrix::from_fn(n, n * n, |i, mk| t.get(i, mk / n, mk % n));
    let down = DMatrix::from_fn(n * n, n, |ab, i| t.get(ab / n, ab % n, i));
    let h0 = mean_curvature(s);
    let u_h0 = DMatrix::from_fn(n, n, |i, j| (0..n).map(|k| 0.5 * (t.get(k, i, j) + t.get(k, j, i)) * h0[k]).sum::<f64>());
    let b = killing_form_s(s);
    let ric = &rows * rows.transpose() * (-0.5) - b * 0.5 + down.transpose() * &down * 0.25 - u_h0;
    (&ric + ric.transpose()) * 0.5
}

/// Ricci tensor of the nilradical with its induced metric:
/// `ric^n(X,Y) = -½ Σ⟨[X,e_i],e_j⟩⟨[Y,e_i],e_j⟩ + ¼ Σ⟨[e_i,e_j],X⟩⟨[e_i,e_j],Y⟩`,
/// sums over an orthonormal basis of n.
pub fn nilradical_ricci(s: &MetricSolvLieAlgebra) -> DMatrix<f64> {
    let t = s.structure();
    let nr: Vec<usize> = s.n_range().collect();
    let m = nr.len();
    let rows = DMatrix::from_fn(m, m * m, |x, ij| t.get(nr[x], nr[ij / m], nr[ij % m]));
    let down = DMatrix::from_fn(m * m, m, |ij, x| t.get(nr[ij / m], nr[ij % m], nr[x]));
    &rows * rows.transpose() * (-0.5) + down.transpose() * &down * 0.25
}

/// Ricci tensor assembled blockwise for Iwasawa-type algebras:
/// `ric(A,A') = -tr(ad A ad A')`, `ric(A,X) = 0`,
/// `ric(X,Y) = ric^n(X,Y) - ⟨[H_0,X],Y⟩`.
pub fn ricci_wolter(s: &MetricSolvLieAlgebra) -> Result<DMatrix<f64>> {
    let report = verify_iwasawa(s);
    if !report.structural() {
        return Err(Error::NotIwasawa(report.violations.join("; ")));
    }
    let t = s.structure();
    let n = s.dim();
    let da = s.dim_a();
    let mut ric = DMatrix::zeros(n, n);
    let ad: Vec<DMatrix<f64>> = s.a_range().map(|p| t.ad(p)).collect();
    for p in 0..da {
        for q in 0..da {
            ric[(p, q)] = -trace_product(&ad[p], &ad[q]);
        }
    }
    let h0 = mean_curvature_from_traces(s);
    let rn = nilradical_ricci(s);
    for (x, i) in s.n_range().enumerate() {
        for (y, j) in s.n_range().enumerate() {
            let h0_term: f64 = s.a_range().map(|p| h0[p] * t.get(p, i, j)).sum();
            ric[(i, j)] = rn[(x, y)] - h0_term;
        }
    }
    Ok(ric)
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct EinsteinCheck {
    /// `tr(Ric) / dim`.
    pub constant: f64,
    /// `max |Ric_ij - c δ_ij|`.
    pub deviation: f64,
    pub pass: bool,
}

pub fn einstein_from_ricci(ric: &DMatrix<f64>, tol: f64) -> EinsteinCheck {
    let n = ric.nrows();
    if n == 0 {
        return EinsteinCheck { constant: 0.0, deviation: 0.0, pass: true };
    }
    let c = ric.trace() / n as f64;
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let e = if i == j { c } else { 0.0 };
            dev = dev.max((ric[(i, j)] - e).abs());
        }
    }
    EinsteinCheck { constant: c, deviation: dev, pass: dev < tol }
}

pub fn einstein_check(s: &MetricSolvLieAlgebra, tol: f64) -> EinsteinCheck {
    einstein_from_ricci(&ricci_full(s), tol)
}

/// `H_0^⊥ ∈ a` of the parent, the mean-curvature contribution of the
/// basis vectors removed by attaching: `⟨H_0^⊥, A⟩ = Σ_E ⟨[A,E],E⟩`.
pub fn dropped_mean_curvature(parent: &MetricSolvLieAlgebra, attached: &Attached) -> Vec<f64> {
    let t = parent.structure();
    let mut h = vec![0.0; parent.dim()];
    for p in parent.a_range() {
        h[p] = attached.dropped.iter().map(|&e| t.get(p, e, e)).sum();
    }
    h
}

/// `max |ric^{n_∅}(X) - ric^{n_Λ′}(X) - [H_0^⊥, X]|` over `samples` random
/// unit vectors `X` of the attached nilradical (as endomorphisms of n).
pub fn tamaru_defect(parent: &MetricSolvLieAlgebra, attached: &Attached, samples: usize, seed: u64) -> f64 {
    let child = &attached.algebra;
    let rp = nilradical_ricci(parent);
    let rc = nilradical_ricci(child);
    let h = dropped_mean_curvature(parent, attached);
    let t = parent.structure();
    // parent n-index of each child n-vector
    let map: Vec<usize> = child
        .n_range()
        .map(|i| (0..parent.dim()).find(|&j| attached.inclusion[(i, j)] == 1.0).expect("n-vectors are kept verbatim"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let da = parent.dim_a();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let mut x: Vec<f64> = (0..child.dim_n()).map(|_| StandardNormal.sample(&mut rng)).collect();
        let nx = dot(&x, &x).sqrt();
        x.iter_mut().for_each(|v| *v /= nx);
        let mut xp = DVector::zeros(parent.dim_n());
        for (k, &j) in map.iter().enumerate() {
            xp[j - da] = x[k];
        }
        let mut lhs = &rp * &xp;
        let rcx = &rc * DVector::from_column_slice(&x);
        for (k, &j) in map.iter().enumerate() {
            lhs[j - da] -= rcx[k];
        }
        let mut full = vec![0.0; parent.dim()];
        for (k, &j) in map.iter().enumerate() {
            full[j] = x[k];
        }
        let rhs = t.bracket(&h, &full);
        for j in parent.n_range() {
            worst = worst.max((lhs[j - da] - rhs[j]).abs());
        }
    }
    worst
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Plane {
    pub description: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneStrategy {
    PaperPreset,
    Random { samples: usize, seed: u64 },
    BasisPairs,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PlaneSearch {
    /// A plane with `K > POSITIVE_K`, the largest found.
    pub found: Option<Plane>,
    pub max_k: f64,
    pub evaluated: usize,
}

/// Coefficient vector for a sum of basis vectors, e.g. `U27+U28` or
/// `0.5*A12-+B12-`. Names are matched greedily (longest first) against
/// full labels and generator names, so names ending in `+`/`-` work.
pub fn parse_vector(s: &MetricSolvLieAlgebra, spec: &str) -> Result<Vec<f64>> {
    let mut names: Vec<(String, usize)> = Vec::new();
    for i in 0..s.dim() {
        names.push((s.labels()[i].clone(), i));
        names.push((s.generator_name(i).to_string(), i));
    }
    names.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    let mut v = vec![0.0; s.dim()];
    let mut rest = spec.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    loop {
        let (coef, after) = match rest.find('*') {
            Some(star) if rest[..star].parse::<f64>().is_ok() => (rest[..star].parse::<f64>().expect("checked"), &rest[star + 1..]),
            _ => (1.0, rest),
        };
        let (_, idx, len) = names
            .iter()
            .filter(|(n, _)| after.starts_with(n.as_str()) && (after.len() == n.len() || after[n.len()..].starts_with('+')))
            .map(|(n, i)| (n, *i, n.len()))
            .next()
            .ok_or_else(|| Error::UnknownLabel(after.split('+').next().unwrap_or(after).to_string()))?;
        v[idx] += coef;
        rest = &after[len..];
        if rest.is_empty() {
            break;
        }
        rest = &rest[1..];
    }
    Ok(v)
}

/// Parses `"<vector>,<vector>"` into two coefficient vectors.
pub fn parse_plane(s: &MetricSolvLieAlgebra, spec: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = spec.split_once(',').ok_or_else(|| Error::Parse(format!("plane `{spec}` needs two comma-separated vectors")))?;
    Ok((parse_vector(s, a)?, parse_vector(s, b)?))
}

fn join_indices(idx: &[usize]) -> String {
    let sep = if idx.iter().any(|&i| i >= 10) { "_" } else { "" };
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}

/// The positive-curvature plane displayed for the algebra's family, as a
/// plane specification, when the family and size admit one.
pub fn paper_plane_spec(s: &MetricSolvLieAlgebra) -> Option<String> {
    match s.family()? {
        Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => {
            if p < 2 || q < p + 2 {
                return None;
            }
            let a = s.association_choice().unwrap_or(1);
            let (i, j) = (2 * p + 1, 2 * p + a + 1);
            let u = |k: usize, m: usize| format!("U{}", join_indices(&[k, m]));
            Some(format!("{}+{},{}+{}", u(p - 1, i), u(p - 1, j), u(p, i), u(p, j)))
        }
        Family::SoStar { n } if n / 2 >= 3 => Some("A12-+B12-,C23-+D23-".into()),
        Family::SlQuaternion { n } if n >= 3 => Some("A12+B12,C23+D23".into()),
        _ => None,
    }
}

pub fn find_positive_plane(s: &MetricSolvLieAlgebra, strategy: PlaneStrategy) -> PlaneSearch {
    let mut best: Option<Plane> = None;
    let mut max_k = f64::NEG_INFINITY;
    let mut evaluated = 0;
    let mut consider = |desc: String, x: Vec<f64>, y: Vec<f64>| {
        if let Ok(k) = sectional(s, &x, &y) {
            evaluated += 1;
            if k > max_k {
                max_k = k;
                if k > POSITIVE_K {
                    best = Some(Plane { description: desc, x, y, k });
                }
            }
        }
    };
    match strategy {
        PlaneStrategy::PaperPreset => {
            if let Some(spec) = paper_plane_spec(s) {
                if let Ok((x, y)) = parse_plane(s, &spec) {
                    consider(spec, x, y);
                }
            }
        }
        PlaneStrategy::BasisPairs => {
            for i in 0..s.dim() {
                for j in i + 1..s.dim() {
                    consider(format!("{},{}", s.labels()[i], s.labels()[j]), s.unit(i), s.unit(j));
                }
            }
        }
        PlaneStrategy::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dim = s.dim();
            let n0 = s.dim_a();
            for sample in 0..samples {
                let mut draw = || {
                    let mut v = vec![0.0; dim];
                    for x in v.iter_mut().skip(n0) {
                        *x = StandardNormal.sample(&mut rng);
                    }
                    v
                };
                let x = draw();
                let y = draw();
                consider(format!("random#{sample}"), x, y);
            }
        }
    }
    if evaluated == 0 {
        max_k = f64::NAN;
    }
    PlaneSearch { found: best, max_k, evaluated }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Fingerprint {
    pub einstein_constant: f64,
    pub dim_a: usize,
    pub dim_n: usize,
    pub nilpotency_class: usize,
    pub derived_series: Vec<usize>,
    /// Sorted eigenvalues of `ad(H_0)|_n`, rounded to 1e-6.
    pub ad_h0_spectrum: Vec<f64>,
    pub min_sectional: f64,
    pub max_sectional: f64,
}

/// Orthonormal basis (columns) of the span of `vectors`.
fn span(vectors: &[Vec<f64>], dim: usize) -> DMatrix<f64> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = DVector::from_column_slice(v);
        let scale = w.norm();
        if scale == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let nw = w.norm();
        if nw > 1e-9 * scale.max(1.0) {
            basis.push(w / nw);
        }
    }
    if basis.is_empty() {
        DMatrix::zeros(dim, 0)
    } else {
        DMatrix::from_columns(&basis)
    }
}

fn bracket_span(s: &MetricSolvLieAlgebra, a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let t = s.structure();
    let mut out = Vec::new();
    for i in 0..a.ncols() {
        let x: Vec<f64> = a.column(i).iter().copied().collect();
        for j in 0..b.ncols() {
            let y: Vec<f64> = b.column(j).iter().copied().collect();
            out.push(t.bracket(&x, &y));
        }
    }
    span(&out, s.dim())
}

pub fn fingerprint(s: &MetricSolvLieAlgebra) -> Fingerprint {
    let einstein = einstein_check(s, f64::INFINITY);
    let dim = s.dim();

    let n_basis = span(&s.n_range().map(|i| s.unit(i)).collect::<Vec<_>>(), dim);
    let mut class = 0;
    let mut lower = n_basis.clone();
    while lower.ncols() > 0 && class <= dim {
        class += 1;
        lower = bracket_span(s, &n_basis, &lower);
    }

    let mut derived = vec![dim];
    let mut cur = span(&(0..dim).map(|i| s.unit(i)).collect::<Vec<_>>(), dim);
    loop {
        let next = bracket_span(s, &cur, &cur);
        if next.ncols() == cur.ncols() {
            break;
        }
        derived.push(next.ncols());
        if next.ncols() == 0 {
            break;
        }
        cur = next;
    }

    let h0 = mean_curvature_from_traces(s);
    let ad = s.structure().ad_of(&h0);
    let m = s.dim_n();
    let mut spectrum: Vec<f64> = if m == 0 {
        vec![]
    } else {
        let block = ad.view((s.dim_a(), s.dim_a()), (m, m)).into_owned();
        let sym = (&block + block.transpose()) * 0.5;
        SymmetricEigen::new(sym).eigenvalues.iter().map(|&e| round6(e)).collect()
    };
    spectrum.sort_by(|a, b| a.total_cmp(b));

    let mut kmin = f64::INFINITY;
    let mut kmax = f64::NEG_INFINITY;
    for i in 0..dim {
        for j in i + 1..dim {
            let k = sectional_orthonormal(s, &s.unit(i), &s.unit(j));
            kmin = kmin.min(k);
            kmax = kmax.max(k);
        }
    }
    if dim < 2 {
        kmin = 0.0;
        kmax = 0.0;
    }

    Fingerprint {
        einstein_constant: einstein.constant,
        dim_a: s.dim_a(),
        dim_n: m,
        nilpotency_class: class,
        derived_series: derived,
        ad_h0_spectrum: spectrum,
        min_sectional: kmin,
        max_sectional: kmax,
    }
}

fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampledPlane {
    pub plane: String,
    pub k: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub ricci: Vec<Vec<f64>>,
    pub einstein_constant: f64,
    pub deviation: f64,
    pub pass: bool,
    /// a-part of `H_0` in the a-basis.
    pub mean_curvature: Vec<f64>,
    /// Largest `|ricci_full - ricci_wolter|`, when the Wolter form applies.
    pub wolter_agreement: Option<f64>,
    pub sampled_planes: Vec<SampledPlane>,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { tol: 1e-9, seed: 0, samples: 64 }
    }
}

pub fn curvature_report(s: &MetricSolvLieAlgebra, opts: ReportOptions) -> Result<CurvatureReport> {
    let ric = ricci_full(s);
    let check = einstein_from_ricci(&ric, opts.tol);
    let h0 = mean_curvature_checked(s)?;
    let wolter_agreement = ricci_wolter(s).ok().map(|w| (&w - &ric).amax());
    let mut sampled_planes = Vec::new();
    let preset = find_positive_plane(s, PlaneStrategy::PaperPreset);
    if let Some(spec) = paper_plane_spec(s) {
        if preset.evaluated > 0 {
            sampled_planes.push(SampledPlane { plane: spec, k: preset.max_k });
        }
    }
    if opts.samples > 0 && s.dim_n() >= 2 {
        let r = find_positive_plane(s, PlaneStrategy::Random { samples: opts.samples, seed: opts.seed });
        sampled_planes.push(SampledPlane { plane: format!("max over {} random planes (seed {})", opts.samples, opts.seed), k: r.max_k });
    }
    Ok(CurvatureReport {
        ricci: (0..ric.nrows()).map(|i| ric.row(i).iter().copied().collect()).collect(),
        einstein_constant: check.constant,
        deviation: check.deviation,
        pass: check.pass,
        mean_curvature: h0[..s.dim_a()].to_vec(),
        wolter_agreement,
        sampled_planes,
        fingerprint: fingerprint(s),
    })
}
