//! Attach (restriction to `a_{Λ′} ⊕ n_{Λ′}`) and associate (sign twist).

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::structure::change_basis;
use crate::algebra::{embed_complex, extract_structure_constants, BasisSet, RealMatrix, StructureTensor, CLOSURE_TOL};
use crate::builders::{a_label, association_flags_for, AmbientRealization, FlagChoice, SignFlagAssignment};
use crate::error::{Error, Result};
use crate::roots::CharacteristicElement;
use crate::solv::{MetricSolvLieAlgebra, RootData, Step};

/// An attached algebra together with its embedding in the parent.
#[derive(Debug, Clone)]
pub struct Attached {
    pub algebra: MetricSolvLieAlgebra,
    /// Row `p` holds the parent coordinates of basis vector `p` of the
    /// attached algebra; rows are orthonormal.
    pub inclusion: DMatrix<f64>,
    /// Parent indices of the n-vectors removed (level 0).
    pub dropped: Vec<usize>,
}

pub fn attach(s: &MetricSolvLieAlgebra, z: &CharacteristicElement) -> Result<MetricSolvLieAlgebra> {
    attach_detailed(s, z).map(|a| a.algebra)
}

pub fn attach_detailed(s: &MetricSolvLieAlgebra, z: &CharacteristicElement) -> Result<Attached> {
    let rd = s.root_data().ok_or_else(|| Error::Param("attach needs root data".into()))?;
    let rs = &rd.system;
    let levels = rs.levels(z)?;
    let support = z.support();
    let g = rs.omega_metric();
    let duals = rs.dual_basis();
    let da = s.dim_a();

    // Express each selected H^i in the (orthonormal) a-basis of s.
    let mut coords: Vec<Vec<f64>> = Vec::new();
    for &src in &support {
        let h = &duals[src];
        let x: Vec<f64> = rd.a_omega.iter().map(|a| omega_dot(a, &g, h)).collect();
        let mut back = vec![0.0; h.len()];
        for (a, &c) in rd.a_omega.iter().zip(&x) {
            for (b, v) in back.iter_mut().zip(a) {
                *b += c * v;
            }
        }
        let diff: Vec<f64> = back.iter().zip(h).map(|(b, v)| b - v).collect();
        if omega_dot(&diff, &g, &diff).sqrt() > 1e-9 {
            return Err(Error::Param(format!("H^{} does not lie in the torus of this algebra", src + 1)));
        }
        coords.push(x);
    }
    let euclid = DMatrix::identity(da, da);
    let frame = crate::builders::gram_schmidt(&coords, &euclid)?;
    let a_omega: Vec<Vec<f64>> = frame
        .iter()
        .map(|x| {
            let mut out = vec![0.0; rs.omega_dim()];
            for (a, &c) in rd.a_omega.iter().zip(x) {
                for (o, v) in out.iter_mut().zip(a) {
                    *o += c * v;
                }
            }
            out
        })
        .collect();

    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for i in s.n_range() {
        let r = rd.n_roots[i - da];
        if levels[r] > 0 {
            kept.push(i);
        } else {
            dropped.push(i);
        }
    }

    let dim = frame.len() + kept.len();
    let mut v = DMatrix::zeros(dim, s.dim());
    for (p, x) in frame.iter().enumerate() {
        for (q, &c) in x.iter().enumerate() {
            v[(p, q)] = c;
        }
    }
    for (p, &i) in kept.iter().enumerate() {
        v[(frame.len() + p, i)] = 1.0;
    }
    let (structure, residual) = change_basis(s.structure(), &v);
    if residual > CLOSURE_TOL {
        let (i, j, r) = worst_closure_pair(s.structure(), &v);
        return Err(Error::ClosureViolation { i, j, residual: r });
    }

    let mut labels: Vec<String> = support.iter().map(|&i| a_label(i)).collect();
    labels.extend(kept.iter().map(|&i| s.labels()[i].clone()));
    let roots = RootData { system: rs.clone(), a_omega, a_sources: support.clone(), n_roots: kept.iter().map(|&i| rd.n_roots[i - da]).collect() };
    let mut provenance = s.provenance().clone();
    provenance.steps.push(Step::Attach { z: z.coeffs.clone() });
    let algebra = MetricSolvLieAlgebra::new(labels, frame.len(), structure, Some(roots), provenance)?;
    Ok(Attached { algebra, inclusion: v, dropped })
}

fn omega_dot(x: &[f64], g: &DMatrix<f64>, y: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..x.len() {
        for l in 0..y.len() {
            s += x[k] * g[(k, l)] * y[l];
        }
    }
    s
}

fn worst_closure_pair(t: &StructureTensor, v: &DMatrix<f64>) -> (usize, usize, f64) {
    let rows: Vec<Vec<f64>> = (0..v.nrows()).map(|p| v.row(p).iter().copied().collect()).collect();
    let mut worst = (0, 0, 0.0);
    for p in 0..rows.len() {
        for q in p + 1..rows.len() {
            let mut b = t.bracket(&rows[p], &rows[q]);
            for r in &rows {
                let c: f64 = r.iter().zip(&b).map(|(x, y)| x * y).sum();
                for (x, y) in b.iter_mut().zip(r) {
                    *x -= c * y;
                }
            }
            let res = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            if res > worst.2 {
                worst = (p, q, res);
            }
        }
    }
    worst
}

/// Replaces the flagged basis vectors by √−1 times themselves:
/// `c'[i][j][k] = -c[i][j][k]` exactly when both `i` and `j` are flagged.
pub fn associate(s: &MetricSolvLieAlgebra, flags: &SignFlagAssignment) -> Result<MetricSolvLieAlgebra> {
    let f = flags.vector_for(s)?;
    check_parity(s, &f)?;
    let t = s.structure().map_entries(|i, j, _, v| if f[i] == 1 && f[j] == 1 { -v } else { v });
    let labels: Vec<String> = (0..s.dim()).filter(|&i| f[i] == 1).map(|i| s.labels()[i].clone()).collect();
    Ok(s.with_structure(t, Step::Associate { flags: labels, preset: flags.preset.clone() }))
}

/// Associates with a preset flag choice computed for the algebra's family.
pub fn associate_preset(s: &MetricSolvLieAlgebra, choice: FlagChoice) -> Result<MetricSolvLieAlgebra> {
    let family = s.family().ok_or_else(|| Error::Param("flag presets need a family; pass explicit labels".into()))?;
    let flags = association_flags_for(s, family, choice)?;
    associate(s, &flags)
}

fn check_parity(s: &MetricSolvLieAlgebra, f: &[u8]) -> Result<()> {
    let t = s.structure();
    for (i, j, k, _) in t.triples() {
        if (f[i] + f[j] + f[k]) % 2 == 1 {
            let l = s.labels();
            return Err(Error::Parity { i: l[i].clone(), j: l[j].clone(), k: l[k].clone() });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct CommuteReport {
    pub commute: bool,
    pub discrepancy: f64,
}

/// Compares `associate(attach(s, Z), flags)` with `attach(associate(s, flags), Z)`.
pub fn commute_check(s: &MetricSolvLieAlgebra, z: &CharacteristicElement, flags: &SignFlagAssignment) -> Result<CommuteReport> {
    let attached = attach(s, z)?;
    let first = associate(&attached, &flags.restrict_to(&attached))?;
    let second = attach(&associate(s, flags)?, z)?;
    if first.labels() != second.labels() {
        return Ok(CommuteReport { commute: false, discrepancy: f64::INFINITY });
    }
    let d = first.structure().max_abs_diff(second.structure());
    Ok(CommuteReport { commute: d == 0.0, discrepancy: d })
}

/// Structure constants of the associate computed in `g ⊗ ℂ`: flagged
/// matrices become `X ⊗ i` and the rest `X ⊗ 1` (2x2 real blocks), then the
/// constants are extracted again.
pub fn associate_via_complexification(realization: &AmbientRealization, flags: &SignFlagAssignment) -> Result<StructureTensor> {
    let labels = realization.basis.labels();
    let one = embed_complex(1.0, 0.0);
    let i = embed_complex(0.0, 1.0);
    let mut mats: Vec<RealMatrix> = Vec::with_capacity(labels.len());
    for (m, l) in realization.basis.elements().iter().zip(labels) {
        let short = crate::solv::short_name(l);
        let flagged = flags.flagged.contains(l) || flags.flagged.iter().any(|f| f == short);
        mats.push(m.kron(if flagged { &i } else { &one }));
    }
    extract_structure_constants(&BasisSet::new(mats, labels.to_vec())?)
}
